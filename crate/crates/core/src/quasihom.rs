//! Defects of set maps between groups, defect groups, the automorphisms a
//! section induces on a normal subgroup, and normalization at the identity.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::rc::Rc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::symbolic::heis::FreeAbelian;

/// Largest number of pairs a defect scan may visit.
pub const DEFAULT_PAIR_BUDGET: u64 = 1_000_000;

/// A group whose elements can be enumerated by word length.
pub trait Window: Group {
    /// All elements of word length at most `radius` (all elements when finite).
    fn ball(&self, radius: usize) -> Vec<Self::Elem>;
    fn radius_of(&self, g: &Self::Elem) -> usize;
    fn is_finite(&self) -> bool;
}

impl Window for FiniteGroup {
    fn ball(&self, _: usize) -> Vec<usize> {
        self.elements().collect()
    }

    fn radius_of(&self, _: &usize) -> usize {
        0
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Window for FreeAbelian {
    fn ball(&self, radius: usize) -> Vec<Vec<i64>> {
        let r = radius as i64;
        let mut out = vec![Vec::new()];
        for _ in 0..self.rank {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-r..=r).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn radius_of(&self, g: &Vec<i64>) -> usize {
        g.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    fn is_finite(&self) -> bool {
        self.rank == 0
    }
}

/// A set map `σ: G → H`.
pub struct SectionMap<'a, D: Group, C: Group> {
    pub name: String,
    pub domain: &'a D,
    pub codomain: &'a C,
    rule: Rc<dyn Fn(&D::Elem) -> C::Elem + 'a>,
}

impl<D: Group, C: Group> Clone for SectionMap<'_, D, C> {
    fn clone(&self) -> Self {
        Self { name: self.name.clone(), domain: self.domain, codomain: self.codomain, rule: self.rule.clone() }
    }
}

impl<'a, D: Group, C: Group> SectionMap<'a, D, C> {
    pub fn new(name: impl Into<String>, domain: &'a D, codomain: &'a C, rule: impl Fn(&D::Elem) -> C::Elem + 'a) -> Self {
        Self { name: name.into(), domain, codomain, rule: Rc::new(rule) }
    }

    pub fn apply(&self, g: &D::Elem) -> C::Elem {
        (self.rule)(g)
    }

    /// `d(g, h) = σ(g)σ(h)σ(gh)^{-1}`
    pub fn d(&self, g: &D::Elem, h: &D::Elem) -> C::Elem {
        let c = self.codomain;
        let gh = self.domain.mul(g, h);
        c.mul(&c.mul(&self.apply(g), &self.apply(h)), &c.inv(&self.apply(&gh)))
    }

    /// `d̄(g, h) = σ(h)^{-1}σ(g)^{-1}σ(gh)`
    pub fn dbar(&self, g: &D::Elem, h: &D::Elem) -> C::Elem {
        let c = self.codomain;
        let gh = self.domain.mul(g, h);
        c.mul(&c.mul(&c.inv(&self.apply(h)), &c.inv(&self.apply(g))), &self.apply(&gh))
    }

    /// `σ̃(1) = 1` and `σ̃ = σ` elsewhere.
    pub fn normalize_at_identity(&self) -> SectionMap<'a, D, C> {
        let inner = self.rule.clone();
        let (domain, codomain) = (self.domain, self.codomain);
        let e = domain.identity();
        SectionMap::new(format!("{} (normalized)", self.name), domain, codomain, move |g: &D::Elem| {
            if *g == e {
                codomain.identity()
            } else {
                inner(g)
            }
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.apply(&self.domain.identity()) == self.codomain.identity()
    }
}

impl<'a, C: Group> SectionMap<'a, FiniteGroup, C> {
    pub fn table(name: impl Into<String>, domain: &'a FiniteGroup, codomain: &'a C, values: Vec<C::Elem>) -> Self {
        assert_eq!(values.len(), domain.order(), "one value per element");
        SectionMap::new(name, domain, codomain, move |g: &usize| values[*g].clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectReport<E> {
    /// Window radius; `0` when the domain was enumerated completely.
    pub radius: usize,
    pub defects: Vec<E>,
    pub dbar: Vec<E>,
    pub exhaustive: bool,
    /// `|D|` over the balls of radius `1..=radius` (a single entry when exhaustive).
    pub growth: Vec<usize>,
    pub dbar_growth: Vec<usize>,
}

impl<E> DefectReport<E> {
    /// True when the series did not grow at the last step.
    pub fn plateaued(series: &[usize]) -> bool {
        match series {
            [.., a, b] => a == b,
            _ => true,
        }
    }

    pub fn strictly_increasing(series: &[usize]) -> bool {
        series.windows(2).all(|w| w[0] < w[1])
    }

    pub fn verdict(&self) -> String {
        if self.exhaustive {
            format!("finite: |D| = {}, |D̄| = {}", self.defects.len(), self.dbar.len())
        } else if Self::plateaued(&self.growth) {
            format!("bounded up to radius {}", self.radius)
        } else {
            format!("growing at radius {}", self.radius)
        }
    }
}

/// `D(σ)` and `D̄(σ)` over the whole domain when finite, else over the radius-`radius` ball.
pub fn defect<D: Window, C: Group>(s: &SectionMap<'_, D, C>, radius: usize, budget: u64) -> Result<DefectReport<C::Elem>> {
    let exhaustive = s.domain.is_finite();
    let ball = s.domain.ball(radius);
    let pairs = (ball.len() as u64).saturating_mul(ball.len() as u64);
    if pairs > budget {
        return Err(Error::WindowTooLarge { radius, pairs, budget });
    }
    let levels: Vec<usize> = ball.iter().map(|g| s.domain.radius_of(g)).collect();
    let mut d_first: BTreeMap<C::Elem, usize> = BTreeMap::new();
    let mut dbar_first: BTreeMap<C::Elem, usize> = BTreeMap::new();
    let record = |map: &mut BTreeMap<C::Elem, usize>, x: C::Elem, lvl: usize| {
        map.entry(x).and_modify(|l| *l = (*l).min(lvl)).or_insert(lvl);
    };
    for (g, &lg) in ball.iter().zip(&levels) {
        for (h, &lh) in ball.iter().zip(&levels) {
            let lvl = lg.max(lh);
            record(&mut d_first, s.d(g, h), lvl);
            record(&mut dbar_first, s.dbar(g, h), lvl);
        }
    }
    let series = |map: &BTreeMap<C::Elem, usize>| -> Vec<usize> {
        if exhaustive {
            vec![map.len()]
        } else {
            (1..=radius).map(|r| map.values().filter(|&&l| l <= r).count()).collect()
        }
    };
    Ok(DefectReport {
        radius: if exhaustive { 0 } else { radius },
        growth: series(&d_first),
        dbar_growth: series(&dbar_first),
        defects: d_first.into_keys().collect(),
        dbar: dbar_first.into_keys().collect(),
        exhaustive,
    })
}

/// The subgroup generated by `gens`, if it has at most `budget` elements.
pub fn defect_group<C: Group>(codomain: &C, gens: &[C::Elem], budget: u64) -> Result<Vec<C::Elem>> {
    let mut seen: BTreeSet<C::Elem> = BTreeSet::from([codomain.identity()]);
    let mut queue = VecDeque::from([codomain.identity()]);
    let step: Vec<C::Elem> = gens.iter().flat_map(|g| [g.clone(), codomain.inv(g)]).collect();
    while let Some(x) = queue.pop_front() {
        for g in &step {
            let y = codomain.mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > budget {
                    return Err(Error::BudgetExceeded { what: "defect group closure", budget });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A normal subgroup `ι(N) ⊴ E`.
pub trait Embedding {
    type N: Group;
    type E: Group;

    fn sub(&self) -> &Self::N;
    fn ext(&self) -> &Self::E;
    fn include(&self, n: &<Self::N as Group>::Elem) -> <Self::E as Group>::Elem;
    fn restrict(&self, e: &<Self::E as Group>::Elem) -> Option<<Self::N as Group>::Elem>;
    /// Elements on which automorphisms are compared (a generating set, or all of `N`).
    fn probes(&self) -> Vec<<Self::N as Group>::Elem>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReport<G, N> {
    /// Each domain element with the images of the probes under `φ_σ(g)`.
    pub actions: Vec<(G, Vec<N>)>,
    pub distinct: usize,
    pub trivial: bool,
}

/// `^{φ_σ(g)} n = ι^{-1}(σ(g) ι(n) σ(g)^{-1})` on the probes, for `g` in the window.
pub fn phi_sigma<D, M>(s: &SectionMap<'_, D, M::E>, emb: &M, radius: usize) -> Result<PhiReport<D::Elem, <M::N as Group>::Elem>>
where
    D: Window,
    M: Embedding,
{
    let probes = emb.probes();
    let mut actions = Vec::new();
    let mut distinct = HashSet::new();
    let mut trivial = true;
    for g in s.domain.ball(radius) {
        let sg = s.apply(&g);
        let mut imgs = Vec::with_capacity(probes.len());
        for n in &probes {
            let x = emb.ext().conj(&sg, &emb.include(n));
            let y = emb
                .restrict(&x)
                .ok_or_else(|| Error::ConjugationEscapesN { g: format!("{g:?}"), n: format!("{n:?}") })?;
            trivial &= &y == n;
            imgs.push(y);
        }
        distinct.insert(imgs.clone());
        actions.push((g, imgs));
    }
    Ok(PhiReport { distinct: distinct.len(), actions, trivial })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck<G> {
    pub checked: usize,
    /// First triple where the identity fails.
    pub witness: Option<(G, G, G)>,
}

impl<G> IdentityCheck<G> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Triples for the defect identity: every triple of a finite domain with at
/// most `samples` triples, otherwise `samples` random triples from the window.
pub fn sample_triples<D: Window>(domain: &D, radius: usize, samples: usize, rng: &mut impl Rng) -> Vec<(D::Elem, D::Elem, D::Elem)> {
    let ball = domain.ball(radius);
    let total = ball.len().checked_pow(3);
    if domain.is_finite() && total.is_some_and(|t| t <= samples) {
        let mut out = Vec::with_capacity(total.unwrap());
        for a in &ball {
            for b in &ball {
                for c in &ball {
                    out.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        return out;
    }
    let pick = |rng: &mut _| ball[Rng::gen_range(rng, 0..ball.len())].clone();
    (0..samples).map(|_| (pick(rng), pick(rng), pick(rng))).collect()
}

/// `^{σ(g)} d(h,i) · d(g,hi) = d(g,h) · d(gh,i)` with `d` supplied by the caller.
pub fn check_qhm_identity_with<D: Group, C: Group>(
    s: &SectionMap<'_, D, C>,
    d: impl Fn(&D::Elem, &D::Elem) -> C::Elem,
    triples: &[(D::Elem, D::Elem, D::Elem)],
) -> IdentityCheck<D::Elem> {
    let (dom, c) = (s.domain, s.codomain);
    for (g, h, i) in triples {
        let lhs = c.mul(&c.conj(&s.apply(g), &d(h, i)), &d(g, &dom.mul(h, i)));
        let rhs = c.mul(&d(g, h), &d(&dom.mul(g, h), i));
        if lhs != rhs {
            return IdentityCheck { checked: triples.len(), witness: Some((g.clone(), h.clone(), i.clone())) };
        }
    }
    IdentityCheck { checked: triples.len(), witness: None }
}

pub fn check_qhm_identity<D: Group, C: Group>(
    s: &SectionMap<'_, D, C>,
    triples: &[(D::Elem, D::Elem, D::Elem)],
) -> IdentityCheck<D::Elem> {
    check_qhm_identity_with(s, |a, b| s.d(a, b), triples)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Containment<G, E> {
    pub holds: bool,
    /// A pair whose normalized defect lies outside the allowed set.
    pub witness: Option<(G, G, E)>,
}

/// Checks `D(σ̃) ⊆ allowed(D(σ))` over the window, where `σ̃` is `σ` normalized at the identity.
fn containment_by<D: Window, C: Group>(
    s: &SectionMap<'_, D, C>,
    radius: usize,
    allowed: impl Fn(&BTreeSet<C::Elem>) -> BTreeSet<C::Elem>,
) -> Containment<D::Elem, C::Elem> {
    let t = s.normalize_at_identity();
    let ball = s.domain.ball(radius);
    let mut d: BTreeSet<C::Elem> = BTreeSet::new();
    for g in &ball {
        for h in &ball {
            d.insert(s.d(g, h));
        }
    }
    let ok = allowed(&d);
    for g in &ball {
        for h in &ball {
            let x = t.d(g, h);
            if !ok.contains(&x) {
                return Containment { holds: false, witness: Some((g.clone(), h.clone(), x)) };
            }
        }
    }
    Containment { holds: true, witness: None }
}

/// `D(σ̃) ⊆ D(σ) ∪ {1}`. This fails in general when `σ(1) ≠ 1`: at `gh = 1`
/// the normalized defect is `d(g, g^{-1}) σ(1)`.
pub fn normalized_containment<D: Window, C: Group>(s: &SectionMap<'_, D, C>, radius: usize) -> Containment<D::Elem, C::Elem> {
    let one = s.codomain.identity();
    containment_by(s, radius, |d| {
        let mut ok = d.clone();
        ok.insert(one.clone());
        ok
    })
}

/// `D(σ̃) ⊆ D(σ) ∪ {1} ∪ D(σ)·σ(1)`, which always holds.
pub fn normalized_containment_corrected<D: Window, C: Group>(
    s: &SectionMap<'_, D, C>,
    radius: usize,
) -> Containment<D::Elem, C::Elem> {
    let one = s.codomain.identity();
    let s1 = s.apply(&s.domain.identity());
    containment_by(s, radius, |d| {
        let mut ok = d.clone();
        ok.insert(one.clone());
        ok.extend(d.iter().map(|x| s.codomain.mul(x, &s1)));
        ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homomorphism_has_trivial_defect() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let s = SectionMap::table("double", &z2, &z4, vec![0, 2]);
        let r = defect(&s, 0, DEFAULT_PAIR_BUDGET).unwrap();
        assert_eq!((r.defects.clone(), r.dbar.clone()), (vec![0], vec![0]));
        assert!(r.exhaustive);
    }

    #[test]
    fn defect_group_of_lift() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let s = SectionMap::table("lift", &z2, &z4, vec![0, 1]);
        let r = defect(&s, 0, DEFAULT_PAIR_BUDGET).unwrap();
        assert_eq!(defect_group(&z4, &r.defects, 100).unwrap(), vec![0, 2]);
    }

    #[test]
    fn corrupted_identity_is_caught() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let s = SectionMap::table("lift", &z2, &z4, vec![0, 1]);
        let triples = sample_triples(&z2, 0, 10_000, &mut rand::thread_rng());
        assert!(check_qhm_identity(&s, &triples).holds());
        let bad = check_qhm_identity_with(&s, |g, h| if (*g, *h) == (0, 1) { 1 } else { s.d(g, h) }, &triples);
        assert!(!bad.holds());
    }

    #[test]
    fn normalization_counterexample() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let s = SectionMap::table("constant", &z2, &z4, vec![1, 1]);
        let c = normalized_containment(&s, 0);
        assert_eq!(c.witness, Some((1, 1, 2)));
        assert!(normalized_containment_corrected(&s, 0).holds);
    }
}
