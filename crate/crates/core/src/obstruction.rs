//! The obstruction class of an outer action `ψ: G → Out(N)`, and the
//! realization of 3-classes of a finite group as obstructions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cochain::{Cochain, Complex};
use crate::coeff::CoeffModule;
use crate::error::{Error, Result};
use crate::extension::{build_extension, Extension, ExtensionProblem, NonAbelianCocycle};
use crate::group::{FiniteGroup, Group};
use crate::symbolic::{MacLane, MixedElement};

pub const DEFAULT_TRIALS: usize = 20;

/// `ζ(g,h)`: the least element of `N` whose conjugation is `φ(g)φ(h)φ(gh)^{-1}`.
pub fn build_zeta(p: &ExtensionProblem, phi: &[usize]) -> Result<Vec<usize>> {
    let (g, n, t) = (&p.g, p.n(), &p.tower);
    let e = g.identity_index();
    let mut zeta = Vec::with_capacity(g.order().pow(2));
    for a in g.elements() {
        for b in g.elements() {
            if a == e || b == e {
                zeta.push(n.identity_index());
                continue;
            }
            let target = p.twist(phi, a, b);
            let x = t.inner_preimage(target).ok_or(Error::NotInner { g: a, h: b })?;
            zeta.push(x);
        }
    }
    Ok(zeta)
}

/// `o(g,h,i) = ^{φ(g)}ζ(h,i) ζ(g,hi) (ζ(g,h) ζ(gh,i))^{-1}`, in coordinates of `Z(N)`.
pub fn obstruction_cochain(p: &ExtensionProblem, phi: &[usize], zeta: &[usize]) -> Result<Cochain> {
    let (g, n, t) = (&p.g, p.n(), &p.tower);
    let z = |a: usize, b: usize| zeta[p.pair(a, b)];
    let cx = p.complex();
    let mut bad = None;
    let o = cx.from_fn(3, |tup| {
        let (a, b, c) = (tup[0], tup[1], tup[2]);
        let lhs = n.mul(t.aut(phi[a]).apply(z(b, c)), z(a, g.mul(b, c)));
        let rhs = n.mul(z(a, b), z(g.mul(a, b), c));
        let x = n.mul(lhs, n.inv(rhs));
        match p.center.to_coords(x) {
            Some(v) => v.clone(),
            None => {
                bad.get_or_insert((a, b, c));
                p.center.module.zero()
            }
        }
    });
    if let Some(w) = bad {
        return Err(Error::NotCentral(format!("o{w:?}")));
    }
    Ok(cx.normalize_flag(o))
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub trials: usize,
    pub agreed: usize,
    /// Trial index of the first disagreement.
    pub first_failure: Option<usize>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.agreed == self.trials
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionResult {
    pub phi: Vec<usize>,
    pub zeta: Vec<usize>,
    pub o: Cochain,
    pub center_invariants: Vec<i64>,
    pub cocycle: bool,
    pub degenerate_zero: bool,
    /// `β` with `δβ = o`.
    pub class_zero: Option<Cochain>,
    /// `e = ζ β^{-1}`, validated, when the class vanishes.
    pub constructed: Option<NonAbelianCocycle>,
    pub invariance: InvarianceReport,
}

impl ObstructionResult {
    pub fn vanishes(&self) -> bool {
        self.class_zero.is_some()
    }
}

/// Obstruction for the canonical lift, with `trials` random re-choices of `(φ, ζ)`.
pub fn obstruction(p: &ExtensionProblem, trials: usize, seed: u64) -> Result<ObstructionResult> {
    let phi = p.lift.clone();
    let zeta = build_zeta(p, &phi)?;
    let o = obstruction_cochain(p, &phi, &zeta)?;
    let cx = p.complex();
    let cocycle = cx.coboundary(&o).is_zero();
    let degenerate_zero = o.normalized;
    let class_zero = if cocycle { cx.coboundary_witness(&o)? } else { None };
    let constructed = match &class_zero {
        Some(beta) => {
            let n = p.n();
            let e = (0..p.g.order().pow(2))
                .map(|k| n.mul(zeta[k], n.inv(p.center.to_element(n, beta.at(k)))))
                .collect();
            let c = NonAbelianCocycle { e, phi: phi.clone() };
            if let Some(v) = c.validate(p) {
                return Err(Error::Input(format!(
                    "ζβ^-1 fails condition ({}) at {:?}",
                    v.condition, v.witness
                )));
            }
            Some(c)
        }
        None => None,
    };
    let invariance = if cocycle { choice_invariance(p, &o, trials, seed)? } else {
        InvarianceReport { trials: 0, agreed: 0, first_failure: None }
    };
    Ok(ObstructionResult {
        phi,
        zeta,
        o,
        center_invariants: p.center.module.torsion().to_vec(),
        cocycle,
        degenerate_zero,
        class_zero,
        constructed,
        invariance,
    })
}

/// `φ'(g) = conj(ν(g)) φ(g)` and `ζ'(g,h) = ζ_{φ'}(g,h) c(g,h)` with `ν`, `c` random
/// and trivial on the identity.
pub fn choice_invariance(p: &ExtensionProblem, o: &Cochain, trials: usize, seed: u64) -> Result<InvarianceReport> {
    let (g, n, t) = (&p.g, p.n(), &p.tower);
    let center = t.center();
    let e = g.identity_index();
    let cx = p.complex();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = InvarianceReport { trials, agreed: 0, first_failure: None };
    for k in 0..trials {
        let phi: Vec<usize> = g
            .elements()
            .map(|x| if x == e { p.lift[x] } else { t.compose(t.conj(rng.gen_range(0..n.order())), p.lift[x]) })
            .collect();
        let mut zeta = build_zeta(p, &phi)?;
        for a in g.non_identity() {
            for b in g.non_identity() {
                let c = center[rng.gen_range(0..center.len())];
                zeta[p.pair(a, b)] = n.mul(zeta[p.pair(a, b)], c);
            }
        }
        let o2 = obstruction_cochain(p, &phi, &zeta)?;
        if cx.class_equal(o, &o2)? {
            report.agreed += 1;
        } else {
            report.first_failure.get_or_insert(k);
        }
    }
    Ok(report)
}

/// `E(α·e_0, φ)` for a 2-cocycle `α` with values in `Z(N)`.
pub fn psi_bijection(p: &ExtensionProblem, alpha: &Cochain, base: &NonAbelianCocycle) -> Result<(NonAbelianCocycle, Extension)> {
    let cx = p.complex();
    cx.check_cocycle(alpha)?;
    if alpha.degree != 2 {
        return Err(Error::Shape(format!("expected a 2-cocycle, got degree {}", alpha.degree)));
    }
    let n = p.n();
    let e = (0..p.g.order().pow(2))
        .map(|k| n.mul(p.center.to_element(n, alpha.at(k)), base.e[k]))
        .collect();
    let c = NonAbelianCocycle { e, phi: base.phi.clone() };
    let ext = build_extension(p, &c)?;
    Ok((c, ext))
}

fn first_degenerate_nonzero(cx: &Complex, a: &Cochain) -> Option<Vec<usize>> {
    let e = cx.g.identity_index();
    (0..a.tuples())
        .map(|i| cx.decode(i, a.degree))
        .find(|t| t.contains(&e) && !cx.m.is_zero(cx.value(a, t)))
}

pub const MAX_REALIZE_ORDER: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct RealizationResult {
    pub m_order: usize,
    pub used_double: bool,
    /// Order of the group the action is built over (`|M|` or `2|M|`).
    pub realized_order: usize,
    /// Rank of the free factor `F`.
    pub alphabet_size: usize,
    /// `⟨g,h⟩` for each letter.
    pub alphabet: Vec<(usize, usize)>,
    /// `^{φ(g)}` on the first letters, as text.
    pub sample_images: Vec<String>,
    pub composition_checks: usize,
    pub composition_holds: bool,
    pub automorphisms: bool,
    /// Rank of `F` is at least 2, so `Z(N)` is the coefficient module.
    pub center_is_module: bool,
    pub obstruction: Cochain,
    pub class_equal: bool,
    /// `β` with `δβ = o - α`.
    pub witness: Option<Cochain>,
}

impl RealizationResult {
    pub fn holds(&self) -> bool {
        self.composition_holds && self.automorphisms && self.center_is_module && self.class_equal
    }
}

/// Realizes a normalized 3-cocycle `α` of `M` as the obstruction of an outer action on `Z × F`.
pub fn realize(m: &FiniteGroup, module: &CoeffModule, alpha: &Cochain) -> Result<RealizationResult> {
    Ok(realize_along(m, module, alpha, None)?.0)
}

/// As `realize`, also recomputing the obstruction of `ψ ∘ Φ` for `Φ: G → M`.
pub fn realize_along(
    m: &FiniteGroup,
    module: &CoeffModule,
    alpha: &Cochain,
    along: Option<(&FiniteGroup, &[usize])>,
) -> Result<(RealizationResult, Option<Cochain>)> {
    if m.order() > MAX_REALIZE_ORDER {
        return Err(Error::SymbolBudgetExceeded { order: m.order() });
    }
    let cx = Complex::new(m, module);
    if alpha.degree != 3 {
        return Err(Error::Shape(format!("expected a 3-cocycle, got degree {}", alpha.degree)));
    }
    cx.check_cocycle(alpha)?;
    if let Some(tuple) = first_degenerate_nonzero(&cx, alpha) {
        return Err(Error::NotNormalized { tuple });
    }
    let used_double = (m.order() - 1).pow(2) == 1;
    // `ι: M → M~` and the realized data
    let (big, iota) = if used_double {
        let e2 = FiniteGroup::cyclic(2);
        let rows = (0..m.order() * 2)
            .map(|x| (0..m.order() * 2).map(|y| m.mul(x / 2, y / 2) * 2 + e2.mul(x % 2, y % 2)).collect())
            .collect();
        (FiniteGroup::from_table(rows)?, m.elements().map(|x| 2 * x).collect::<Vec<_>>())
    } else {
        (m.clone(), m.elements().collect())
    };
    let (big_module, big_alpha) = if used_double {
        let pi: Vec<usize> = big.elements().map(|x| x / 2).collect();
        Complex::pullback(&big, &cx, &pi, alpha)?
    } else {
        (module.clone(), alpha.clone())
    };
    let ml = MacLane::new(&big, &big_module, &big_alpha);
    let grp = ml.group();
    let gens = ml.generators();
    let conj_sym = |s: &MixedElement, x: &MixedElement| grp.mul(&grp.mul(s, x), &grp.inv(s));

    let mut composition_checks = 0;
    let mut composition_holds = true;
    for g1 in big.elements() {
        for g2 in big.elements() {
            let s = ml.symbol_element(g1, g2);
            for x in &gens {
                composition_checks += 1;
                let lhs = ml.apply(g1, &ml.apply(g2, x));
                let rhs = conj_sym(&s, &ml.apply(big.mul(g1, g2), x));
                composition_holds &= lhs == rhs;
            }
        }
    }
    // `φ(g)^{-1} = φ(g^{-1}) ∘ conj(⟨g,g^{-1}⟩^{-1})`, checked on both sides
    let mut automorphisms = true;
    for g in big.elements() {
        let gi = big.inv(g);
        let s_inv = grp.inv(&ml.symbol_element(g, gi));
        let inverse = |x: &MixedElement| ml.apply(gi, &conj_sym(&s_inv, x));
        for x in &gens {
            automorphisms &= ml.apply(g, &inverse(x)) == *x && inverse(&ml.apply(g, x)) == *x;
        }
    }
    let alphabet_size = ml.alphabet_size();
    let center_is_module = alphabet_size >= 2 || big.order() == 1;

    let obstruction = symbolic_obstruction(&ml, m, module, &iota)?;
    let witness = cx.coboundary_witness(&cx.sub(&obstruction, alpha)?)?;
    let along = match along {
        Some((g, f)) => {
            g.check_homomorphism(m, f)?;
            let composite: Vec<usize> = f.iter().map(|&x| iota[x]).collect();
            Some(symbolic_obstruction(&ml, g, &module.pullback(f), &composite)?)
        }
        None => None,
    };

    let sample_images = big
        .non_identity()
        .take(2)
        .flat_map(|g| (0..alphabet_size.min(2)).map(move |s| (g, s)))
        .map(|(g, s)| {
            let (h, i) = ml.pair(s);
            let img = ml.apply(g, &ml.symbol_element(h, i));
            format!("φ({g})<{h},{i}> = ({:?}, {})", img.z, img.word)
        })
        .collect();
    let result = RealizationResult {
        m_order: m.order(),
        used_double,
        realized_order: big.order(),
        alphabet_size,
        alphabet: (0..alphabet_size).map(|s| ml.pair(s)).collect(),
        sample_images,
        composition_checks,
        composition_holds,
        automorphisms,
        center_is_module,
        obstruction,
        class_equal: witness.is_some(),
        witness,
    };
    Ok((result, along))
}

/// Obstruction of `ψ ∘ f` with `ζ(g,h) = (0, ⟨f g, f h⟩)`, computed in `Z × F`.
fn symbolic_obstruction(ml: &MacLane, g: &FiniteGroup, module: &CoeffModule, f: &[usize]) -> Result<Cochain> {
    let grp = ml.group();
    let zeta = |a: usize, b: usize| ml.symbol_element(f[a], f[b]);
    let cx = Complex::new(g, module);
    let mut bad = None;
    let o = cx.from_fn(3, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let lhs = grp.mul(&ml.apply(f[a], &zeta(b, c)), &zeta(a, g.mul(b, c)));
        let rhs = grp.mul(&zeta(a, b), &zeta(g.mul(a, b), c));
        let x = grp.mul(&lhs, &grp.inv(&rhs));
        if !x.word.is_empty() {
            bad.get_or_insert((a, b, c));
        }
        x.z
    });
    if let Some(w) = bad {
        return Err(Error::NotCentral(format!("o{w:?} has a nontrivial free part")));
    }
    Ok(cx.normalize_flag(o))
}

/// `Φ^*α` as a cochain over `G`, with the coefficient module pulled back along `Φ`.
#[derive(Debug, Clone, Serialize)]
pub struct FSetMember {
    pub m_order: usize,
    pub source_alpha: Cochain,
    pub phi: Vec<usize>,
    pub class: Cochain,
}

pub fn f_set_member(g: &FiniteGroup, phi: &[usize], m: &FiniteGroup, module: &CoeffModule, alpha: &Cochain) -> Result<(CoeffModule, FSetMember)> {
    let cx = Complex::new(m, module);
    let (pulled, class) = Complex::pullback(g, &cx, phi, alpha)?;
    Ok((pulled, FSetMember { m_order: m.order(), source_alpha: alpha.clone(), phi: phi.to_vec(), class }))
}

/// Compares `Φ^*α` with the obstruction of the realizing action restricted along `Φ`.
#[derive(Debug, Clone, Serialize)]
pub struct Pipeline {
    pub member: FSetMember,
    pub realization: RealizationResult,
    pub restricted_obstruction: Cochain,
    pub class_equal: bool,
}

pub fn f_set_pipeline(g: &FiniteGroup, phi: &[usize], m: &FiniteGroup, module: &CoeffModule, alpha: &Cochain) -> Result<Pipeline> {
    let (pulled, member) = f_set_member(g, phi, m, module, alpha)?;
    let (realization, restricted) = realize_along(m, module, alpha, Some((g, phi)))?;
    let restricted_obstruction = restricted.expect("requested");
    let class_equal = Complex::new(g, &pulled).class_equal(&member.class, &restricted_obstruction)?;
    Ok(Pipeline { member, realization, restricted_obstruction, class_equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::DEFAULT_COCHAIN_BUDGET;
    use crate::group::{AutTower, OuterMap, DEFAULT_AUT_BUDGET};

    #[test]
    fn abelian_n_has_zero_obstruction() {
        let g = FiniteGroup::cyclic(2);
        let n = FiniteGroup::cyclic(3);
        let t = AutTower::new(&n, DEFAULT_AUT_BUDGET).unwrap();
        let psi = OuterMap::new(&g, &t, vec![0, 1]).unwrap();
        let p = ExtensionProblem::new(g, t, psi).unwrap();
        let r = obstruction(&p, 5, 0).unwrap();
        assert!(r.o.is_zero() && r.vanishes() && r.invariance.holds());
        assert!(r.zeta.iter().all(|&z| z == 0));
    }

    #[test]
    fn realize_generator_over_z3() {
        let m = FiniteGroup::cyclic(3);
        let z = CoeffModule::cyclic(3);
        let cx = Complex::new(&m, &z);
        let h = cx.cohomology(3, true, DEFAULT_COCHAIN_BUDGET).unwrap();
        assert_eq!(h.invariant_factors, vec![3]);
        let r = realize(&m, &z, &h.representatives[0]).unwrap();
        assert!(r.holds() && !r.used_double);
        assert_eq!(r.alphabet_size, 4);
    }

    #[test]
    fn realize_z2_doubles() {
        let m = FiniteGroup::cyclic(2);
        let z = CoeffModule::cyclic(2);
        let cx = Complex::new(&m, &z);
        let h = cx.cohomology(3, true, DEFAULT_COCHAIN_BUDGET).unwrap();
        let r = realize(&m, &z, &h.representatives[0]).unwrap();
        assert!(r.holds() && r.used_double);
        assert_eq!(r.alphabet_size, 9);
    }

    #[test]
    fn realize_rejects_large_and_unnormalized() {
        let m = FiniteGroup::cyclic(7);
        let z = CoeffModule::cyclic(7);
        let a = Complex::new(&m, &z).zero(3);
        assert!(matches!(realize(&m, &z, &a), Err(Error::SymbolBudgetExceeded { order: 7 })));
        let m = FiniteGroup::cyclic(3);
        let z = CoeffModule::integers();
        let cx = Complex::new(&m, &z);
        let beta = cx.from_fn(2, |t| vec![(t[0] + t[1]) as i64]);
        let a = cx.coboundary(&beta);
        assert!(matches!(realize(&m, &z, &a), Err(Error::NotNormalized { .. })));
    }
}
