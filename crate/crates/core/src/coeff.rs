//! Finitely generated abelian groups `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with a
//! weighted sup-norm and an action of a finite group by integer matrices.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AutTower, FiniteGroup};

/// Coordinates: the free part first, then one coordinate per torsion summand
/// reduced to `[0, d)`.
pub type ModElement = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Trivial,
    /// One `(r+k) x (r+k)` matrix per element of the acting group.
    Matrices(Vec<Vec<Vec<i64>>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffModule {
    rank: usize,
    torsion: Vec<i64>,
    weights: Vec<i64>,
    action: Action,
}

/// Radius of the ball on which validation checks norm invariance.
const INVARIANCE_RADIUS: i64 = 2;

impl CoeffModule {
    pub fn new(rank: usize, torsion: Vec<i64>, weights: Option<Vec<i64>>, action: Action) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidModule(format!("torsion modulus {d} is below 2")));
        }
        let dim = rank + torsion.len();
        let weights = weights.unwrap_or_else(|| vec![1; dim]);
        if weights.len() != dim || weights.iter().any(|&w| w <= 0) {
            return Err(Error::InvalidModule("weights must be positive, one per coordinate".into()));
        }
        Ok(Self { rank, torsion, weights, action })
    }

    /// `Z` with trivial action.
    pub fn integers() -> Self {
        Self::new(1, vec![], None, Action::Trivial).unwrap()
    }

    /// `Z/d` with trivial action.
    pub fn cyclic(d: i64) -> Self {
        Self::new(0, vec![d], None, Action::Trivial).unwrap()
    }

    /// `Z` where `g` acts by `-1` exactly when `sign[g]` is set.
    pub fn sign(sign: &[bool]) -> Self {
        let mats = sign.iter().map(|&s| vec![vec![if s { -1 } else { 1 }]]).collect();
        Self::new(1, vec![], None, Action::Matrices(mats)).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Modulus of coordinate `i`; `0` on the free part.
    pub fn modulus(&self, i: usize) -> i64 {
        if i < self.rank {
            0
        } else {
            self.torsion[i - self.rank]
        }
    }

    pub fn is_trivial_action(&self) -> bool {
        match &self.action {
            Action::Trivial => true,
            Action::Matrices(ms) => ms.iter().all(|m| is_identity(m)),
        }
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().map(|&d| d as u64).product())
    }

    pub fn zero(&self) -> ModElement {
        vec![0; self.dim()]
    }

    pub fn reduce(&self, v: &mut [i64]) {
        for (x, &d) in v[self.rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(d);
        }
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> ModElement {
        let mut v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut v);
        v
    }

    pub fn neg(&self, a: &[i64]) -> ModElement {
        let mut v: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&mut v);
        v
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> ModElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> ModElement {
        let mut v: Vec<i64> = a.iter().map(|x| k * x).collect();
        self.reduce(&mut v);
        v
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        v.iter().all(|&x| x == 0)
    }

    /// Matrix of `g`, or `None` for the identity matrix.
    pub fn matrix(&self, g: usize) -> Option<&[Vec<i64>]> {
        match &self.action {
            Action::Trivial => None,
            Action::Matrices(ms) => Some(&ms[g]),
        }
    }

    pub fn act(&self, g: usize, v: &[i64]) -> ModElement {
        match &self.action {
            Action::Trivial => v.to_vec(),
            Action::Matrices(ms) => {
                let mut w: Vec<i64> = ms[g].iter().map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum()).collect();
                self.reduce(&mut w);
                w
            }
        }
    }

    /// Weighted sup-norm; torsion coordinates use the representative in `(-d/2, d/2]`.
    pub fn norm(&self, v: &[i64]) -> i64 {
        v.iter()
            .enumerate()
            .map(|(i, &x)| {
                let d = self.modulus(i);
                let r = if d == 0 {
                    x.abs()
                } else {
                    let x = x.rem_euclid(d);
                    if 2 * x > d {
                        d - x
                    } else {
                        x
                    }
                };
                self.weights[i] * r
            })
            .max()
            .unwrap_or(0)
    }

    /// Every element of norm at most `k`. Finite because all weights are positive.
    pub fn ball(&self, k: i64) -> Vec<ModElement> {
        let ranges: Vec<Vec<i64>> = (0..self.dim())
            .map(|i| {
                let d = self.modulus(i);
                if d == 0 {
                    let b = k / self.weights[i];
                    (-b..=b).collect()
                } else {
                    (0..d).filter(|&x| self.norm_coord(i, x) <= k).collect()
                }
            })
            .collect();
        let mut out = vec![Vec::new()];
        for r in &ranges {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    r.iter().map(move |&x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn norm_coord(&self, i: usize, x: i64) -> i64 {
        let mut v = self.zero();
        v[i] = x;
        self.norm(&v)
    }

    /// Checks that `g` acts through a module action with invariant norm.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let Action::Matrices(ms) = &self.action else { return Ok(()) };
        let dim = self.dim();
        if ms.len() != g.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                ms.len(),
                g.order()
            )));
        }
        for (x, m) in ms.iter().enumerate() {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidModule(format!("matrix of element {x} has the wrong shape")));
            }
            for j in 0..dim {
                let dj = self.modulus(j);
                for (i, row) in m.iter().enumerate() {
                    let di = self.modulus(i);
                    let ok = match (dj, di) {
                        (0, _) => true,
                        (_, 0) => row[j] == 0,
                        _ => (row[j] * dj) % di == 0,
                    };
                    if !ok {
                        return Err(Error::InvalidModule(format!(
                            "element {x} does not respect torsion in column {j}"
                        )));
                    }
                }
            }
        }
        let basis: Vec<ModElement> = (0..dim)
            .map(|j| {
                let mut e = self.zero();
                e[j] = 1;
                e
            })
            .collect();
        let e = g.identity_index();
        if basis.iter().any(|b| &self.act(e, b) != b) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                for v in &basis {
                    if self.act(a, &self.act(b, v)) != self.act(g.mul(a, b), v) {
                        return Err(Error::InvalidModule(format!("action fails on the pair ({a}, {b})")));
                    }
                }
            }
        }
        for v in self.ball(INVARIANCE_RADIUS) {
            for a in g.elements() {
                if self.norm(&self.act(a, &v)) != self.norm(&v) {
                    return Err(Error::InvalidModule(format!("norm is not invariant under element {a}")));
                }
            }
        }
        Ok(())
    }

    /// The same module with `G` acting through `f: G → H`.
    pub fn pullback(&self, f: &[usize]) -> CoeffModule {
        let action = match &self.action {
            Action::Trivial => Action::Trivial,
            Action::Matrices(ms) => Action::Matrices(f.iter().map(|&h| ms[h].clone()).collect()),
        };
        CoeffModule { action, ..self.clone() }
    }
}

fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == (i == j) as i64))
}

/// `Z(N)` written additively, with the action of `G` induced by an outer action.
#[derive(Debug, Clone)]
pub struct CenterModule {
    pub module: CoeffModule,
    /// Generators of the cyclic summands, as elements of `N`.
    pub gens: Vec<usize>,
    coords: HashMap<usize, ModElement>,
}

impl CenterModule {
    /// `lift[g]` is an automorphism index lifting the outer action of `g`;
    /// inner automorphisms act trivially on the center, so any lift works.
    pub fn new(tower: &AutTower, lift: &[usize]) -> Result<Self> {
        let n = tower.group();
        let center = tower.center().to_vec();
        let (gens, orders) = cyclic_decomposition(n, &center);
        let torsion: Vec<i64> = orders.iter().map(|&d| d as i64).collect();

        let mut coords = HashMap::new();
        let mut counter = vec![0usize; gens.len()];
        loop {
            let mut x = n.identity_index();
            for (&g, &c) in gens.iter().zip(&counter) {
                for _ in 0..c {
                    x = n.mul(x, g);
                }
            }
            let v: ModElement = counter.iter().map(|&c| c as i64).collect();
            if coords.insert(x, v).is_some() {
                return Err(Error::InvalidModule("center decomposition is not injective".into()));
            }
            let mut i = 0;
            while i < counter.len() {
                counter[i] += 1;
                if counter[i] < orders[i] {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == counter.len() {
                break;
            }
        }
        if coords.len() != center.len() {
            return Err(Error::InvalidModule("center decomposition is not surjective".into()));
        }

        let trivial = lift.iter().all(|&a| gens.iter().all(|&z| tower.aut(a).apply(z) == z));
        let action = if trivial {
            Action::Trivial
        } else {
            Action::Matrices(
                lift.iter()
                    .map(|&a| {
                        let cols: Vec<&ModElement> = gens.iter().map(|&z| &coords[&tower.aut(a).apply(z)]).collect();
                        (0..gens.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
                    })
                    .collect(),
            )
        };
        let module = CoeffModule::new(0, torsion, None, action)?;
        Ok(Self { module, gens, coords })
    }

    pub fn to_coords(&self, x: usize) -> Option<&ModElement> {
        self.coords.get(&x)
    }

    pub fn to_element(&self, n: &FiniteGroup, v: &[i64]) -> usize {
        let mut x = n.identity_index();
        for (i, (&g, &c)) in self.gens.iter().zip(v).enumerate() {
            for _ in 0..c.rem_euclid(self.module.torsion()[i]) {
                x = n.mul(x, g);
            }
        }
        x
    }
}

/// Generators `g_i` of orders `d_i` with `A = <g_1> x <g_2> x ...`, for a finite abelian subgroup `A`.
fn cyclic_decomposition(n: &FiniteGroup, a: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    loop {
        let h = n.generated(&gens);
        if h.len() == a.len() {
            return (gens, orders);
        }
        let rel_order = |x: usize| {
            let mut y = x;
            let mut k = 1;
            while h.binary_search(&y).is_err() {
                y = n.mul(y, x);
                k += 1;
            }
            k
        };
        let m = a.iter().map(|&x| rel_order(x)).max().unwrap();
        // a coset of maximal order in A/H has a lift of the same order
        let g = a
            .iter()
            .copied()
            .find(|&x| rel_order(x) == m && n.element_order(x) == m)
            .expect("a pure cyclic complement exists for a maximal-order coset");
        gens.push(g);
        orders.push(m);
    }
}

/// On-disk module description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
    #[serde(default)]
    pub weights: Option<Vec<i64>>,
    #[serde(default)]
    pub action: Option<BTreeMap<String, Vec<Vec<i64>>>>,
}

impl ModuleSpec {
    /// Elements missing from `action` act trivially.
    pub fn build(&self, g: &FiniteGroup) -> Result<CoeffModule> {
        let dim = self.rank + self.torsion.len();
        let action = match &self.action {
            None => Action::Trivial,
            Some(map) => {
                let id: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect();
                let mut ms = vec![id; g.order()];
                for (k, m) in map {
                    let x: usize = k.trim().parse().map_err(|_| Error::Input(format!("bad element key {k:?}")))?;
                    if x >= g.order() {
                        return Err(Error::Input(format!("element {x} out of range")));
                    }
                    ms[x] = m.clone();
                }
                Action::Matrices(ms)
            }
        };
        let m = CoeffModule::new(self.rank, self.torsion.clone(), self.weights.clone(), action)?;
        m.validate(g)?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named, OuterMap, DEFAULT_AUT_BUDGET};

    #[test]
    fn norms_and_balls() {
        let z = CoeffModule::integers();
        assert_eq!(z.norm(&[-5]), 5);
        assert_eq!(z.ball(2).len(), 5);
        let z5 = CoeffModule::cyclic(5);
        assert_eq!(z5.norm(&[4]), 1);
        let z2sq = CoeffModule::new(2, vec![], None, Action::Trivial).unwrap();
        assert_eq!(z2sq.ball(1).len(), 9);
        assert_eq!(CoeffModule::cyclic(3).ball(1).len(), 3);
        assert_eq!(CoeffModule::cyclic(3).ball(7).len(), 3);
    }

    #[test]
    fn sign_action() {
        let g = FiniteGroup::cyclic(2);
        let m = CoeffModule::sign(&[false, true]);
        m.validate(&g).unwrap();
        assert_eq!(m.act(1, &[3]), vec![-3]);
    }

    #[test]
    fn rejects_non_actions() {
        let g = FiniteGroup::cyclic(3);
        let m = CoeffModule::sign(&[false, true, true]);
        assert!(m.validate(&g).is_err());
        let twist = CoeffModule::new(1, vec![], None, Action::Matrices(vec![vec![vec![1]], vec![vec![2]]])).unwrap();
        assert!(twist.validate(&FiniteGroup::cyclic(2)).is_err());
    }

    #[test]
    fn centers_decompose() {
        let q8 = FiniteGroup::quaternion();
        let t = AutTower::new(&q8, DEFAULT_AUT_BUDGET).unwrap();
        let g = FiniteGroup::cyclic(2);
        let c = CenterModule::new(&t, &OuterMap::trivial(&g).canonical_lift(&t)).unwrap();
        assert_eq!(c.module.torsion(), &[2]);

        let n = named("Z4xZ2").unwrap();
        let t = AutTower::new(&n, DEFAULT_AUT_BUDGET).unwrap();
        let c = CenterModule::new(&t, &[0]).unwrap();
        let mut tors = c.module.torsion().to_vec();
        tors.sort();
        assert_eq!(tors, vec![2, 4]);
        for x in n.elements() {
            assert_eq!(c.to_element(&n, c.to_coords(x).unwrap()), x);
        }
    }
}
