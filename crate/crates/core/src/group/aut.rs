use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Default number of partial assignments the automorphism search may visit.
pub const DEFAULT_AUT_BUDGET: u64 = 10_000_000;

/// An automorphism stored as the permutation it induces on element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&x| self.perm[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y] = x;
        }
        Automorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Checks bijectivity and multiplicativity on `n`.
    pub fn validate(&self, n: &FiniteGroup) -> Result<()> {
        n.check_homomorphism(n, &self.perm)?;
        if !super::is_permutation(&self.perm) {
            return Err(Error::NotAHomomorphism("map is not bijective".into()));
        }
        Ok(())
    }

    /// Conjugation `x ↦ a x a^-1`.
    pub fn inner(n: &FiniteGroup, a: usize) -> Automorphism {
        let ai = n.inv(a);
        Automorphism { perm: n.elements().map(|x| n.mul(n.mul(a, x), ai)).collect() }
    }
}

impl FiniteGroup {
    /// Every automorphism, sorted lexicographically by permutation.
    pub fn automorphisms(&self, budget: u64) -> Result<Vec<Automorphism>> {
        let plan = super::ExtensionPlan::new(self);
        let mut out = Vec::new();
        let mut visited = 0;
        self.hom_search(self, &plan, &mut Vec::new(), &mut out, &mut visited, budget, true)?;
        out.sort();
        Ok(out.into_iter().map(|perm| Automorphism { perm }).collect())
    }
}

/// `Z(N) → N → Inn(N) → Aut(N) → Out(N)` for a finite group `N`.
#[derive(Debug, Clone)]
pub struct AutTower {
    group: FiniteGroup,
    auts: Vec<Automorphism>,
    index: HashMap<Vec<usize>, usize>,
    /// `conj[n]` is the index of `x ↦ n x n^-1`.
    conj: Vec<usize>,
    inner: Vec<usize>,
    coset_of: Vec<usize>,
    reps: Vec<usize>,
    out: FiniteGroup,
    center: Vec<usize>,
}

impl AutTower {
    pub fn new(n: &FiniteGroup, budget: u64) -> Result<Self> {
        let auts = n.automorphisms(budget)?;
        let index: HashMap<Vec<usize>, usize> =
            auts.iter().enumerate().map(|(i, a)| (a.perm.clone(), i)).collect();
        let conj: Vec<usize> = n.elements().map(|a| index[&Automorphism::inner(n, a).perm]).collect();
        let mut inner = conj.clone();
        inner.sort_unstable();
        inner.dedup();

        // a φ_x a^-1 = φ_{a(x)}
        for a in &auts {
            let ai = a.inverse();
            for x in n.elements() {
                let lhs = a.compose(&auts[conj[x]]).compose(&ai);
                if lhs.perm != auts[conj[a.apply(x)]].perm {
                    return Err(Error::NotAGroup("inner automorphisms are not normal".into()));
                }
            }
        }
        let center = n.center();
        let kernel: Vec<usize> = n.elements().filter(|&x| auts[conj[x]].is_identity()).collect();
        if kernel != center {
            return Err(Error::NotAGroup("kernel of conjugation differs from the center".into()));
        }

        let mut coset_of = vec![usize::MAX; auts.len()];
        let mut reps = Vec::new();
        for (i, a) in auts.iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(i);
            for &j in &inner {
                let k = index[&a.compose(&auts[j]).perm];
                if coset_of[k] != usize::MAX {
                    return Err(Error::NotAGroup("cosets of Inn overlap".into()));
                }
                coset_of[k] = c;
            }
        }
        let rows: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[index[&auts[a].compose(&auts[b]).perm]]).collect())
            .collect();
        let out = FiniteGroup::from_table(rows)?;
        debug_assert_eq!(out.identity_index(), 0);

        Ok(Self { group: n.clone(), auts, index, conj, inner, coset_of, reps, out, center })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn auts(&self) -> &[Automorphism] {
        &self.auts
    }

    pub fn aut(&self, i: usize) -> &Automorphism {
        &self.auts[i]
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.index.get(&a.perm).copied()
    }

    /// Index of the identity automorphism.
    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.index[&self.auts[a].compose(&self.auts[b]).perm]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.auts[a].inverse().perm]
    }

    /// Index of conjugation by `x`.
    pub fn conj(&self, x: usize) -> usize {
        self.conj[x]
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn is_inner(&self, a: usize) -> bool {
        self.inner.binary_search(&a).is_ok()
    }

    /// Least `x` with conjugation by `x` equal to automorphism `a`.
    pub fn inner_preimage(&self, a: usize) -> Option<usize> {
        self.conj.iter().position(|&c| c == a)
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    pub fn coset_of(&self, a: usize) -> usize {
        self.coset_of[a]
    }

    /// Least automorphism in each coset of `Inn(N)`.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn out(&self) -> &FiniteGroup {
        &self.out
    }
}

/// A homomorphism `G → Out(N)`, stored as coset indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterMap {
    pub images: Vec<usize>,
}

impl OuterMap {
    pub fn new(g: &FiniteGroup, tower: &AutTower, images: Vec<usize>) -> Result<Self> {
        g.check_homomorphism(tower.out(), &images)?;
        Ok(Self { images })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self { images: vec![0; g.order()] }
    }

    /// All homomorphisms `G → Out(N)`.
    pub fn all(g: &FiniteGroup, tower: &AutTower, budget: u64) -> Result<Vec<Self>> {
        Ok(g.homomorphisms(tower.out(), budget)?.into_iter().map(|images| Self { images }).collect())
    }

    /// The least automorphism in each image coset; the identity maps to the identity.
    pub fn canonical_lift(&self, tower: &AutTower) -> Vec<usize> {
        self.images.iter().map(|&c| tower.reps()[c]).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn tower_counts() {
        let q8 = FiniteGroup::quaternion();
        let t = AutTower::new(&q8, DEFAULT_AUT_BUDGET).unwrap();
        assert_eq!(t.auts().len(), 24);
        assert_eq!(t.inner().len(), 4);
        assert_eq!(t.out().order(), 6);
        assert_eq!(t.center().len(), 2);

        let s3 = named("S3").unwrap();
        let t = AutTower::new(&s3, DEFAULT_AUT_BUDGET).unwrap();
        assert_eq!((t.auts().len(), t.out().order()), (6, 1));

        let v4 = named("V4").unwrap();
        let t = AutTower::new(&v4, DEFAULT_AUT_BUDGET).unwrap();
        assert_eq!((t.auts().len(), t.inner().len(), t.out().order()), (6, 1, 6));
        assert_eq!(AutTower::new(&FiniteGroup::cyclic(4), 100).unwrap().auts().len(), 2);
    }

    #[test]
    fn identity_coset_is_inn() {
        let d4 = named("D4").unwrap();
        let t = AutTower::new(&d4, DEFAULT_AUT_BUDGET).unwrap();
        assert!(t.aut(0).is_identity());
        let inn: Vec<usize> = (0..t.auts().len()).filter(|&a| t.coset_of(a) == 0).collect();
        assert_eq!(inn, t.inner());
    }

    #[test]
    fn budget() {
        let q8 = FiniteGroup::quaternion();
        assert!(matches!(q8.automorphisms(5), Err(Error::BudgetExceeded { .. })));
    }
}
