//! Finite groups as validated multiplication tables, plus the [`Group`]
//! trait shared with the symbolic (infinite) groups.

mod aut;
mod spec;

pub use aut::{AutTower, Automorphism, OuterMap, DEFAULT_AUT_BUDGET};
pub use spec::GroupSpec;

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Arithmetic interface common to table groups and symbolic groups.
pub trait Group {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `a b a^-1`
    fn conj(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(a, b), &self.inv(a))
    }
}

/// Associativity groups up to this order are checked on every triple.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 100_000;
/// Largest group the permutation closure will build.
pub const CLOSURE_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssocCheck {
    Exhaustive,
    Sampled { triples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    assoc: AssocCheck,
}

impl FiniteGroup {
    /// Validates a square multiplication table.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {x} in row {i} is out of range")));
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;

        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = at(i, j);
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAGroup(format!("row {i} repeats element {x}")));
                }
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let x = at(i, j);
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAGroup(format!("column {j} repeats element {x}")));
                }
            }
        }

        let mut inverse = vec![0; n];
        for (g, inv) in inverse.iter_mut().enumerate() {
            // Latin rows guarantee a unique right inverse
            *inv = (0..n).find(|&h| at(g, h) == identity).unwrap();
            if at(*inv, g) != identity {
                return Err(Error::NotAGroup(format!("element {g} has no two-sided inverse")));
            }
        }

        let assoc_fail = |a: usize, b: usize, c: usize| at(at(a, b), c) != at(a, at(b, c));
        let witness = |(a, b, c): (usize, usize, usize)| {
            Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})"))
        };
        let assoc = if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if assoc_fail(a, b, c) {
                            return Err(witness((a, b, c)));
                        }
                    }
                }
            }
            AssocCheck::Exhaustive
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let t = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if assoc_fail(t.0, t.1, t.2) {
                    return Err(witness(t));
                }
            }
            AssocCheck::Sampled { triples: SAMPLED_TRIPLES }
        };

        Ok(Self { order: n, table, identity, inverse, assoc })
    }

    /// Closure of a set of permutations (each a list of cycles over points `0..`).
    pub fn from_permutations(gens: &[Vec<Vec<usize>>]) -> Result<Self> {
        let degree = gens.iter().flatten().flatten().map(|&p| p + 1).max().unwrap_or(1);
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for cycles in gens {
            let mut p: Vec<usize> = (0..degree).collect();
            let mut moved = vec![false; degree];
            for cycle in cycles {
                for (k, &x) in cycle.iter().enumerate() {
                    if std::mem::replace(&mut moved[x], true) {
                        return Err(Error::Input(format!("point {x} appears twice in a generator")));
                    }
                    p[x] = cycle[(k + 1) % cycle.len()];
                }
            }
            perms.push(p);
        }
        let id: Vec<usize> = (0..degree).collect();
        // (p * q)(x) = p(q(x))
        let compose = |p: &[usize], q: &[usize]| q.iter().map(|&x| p[x]).collect::<Vec<_>>();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &perms {
                let x = compose(&elems[i], g);
                if !index.contains_key(&x) {
                    if elems.len() >= CLOSURE_LIMIT {
                        return Err(Error::BudgetExceeded {
                            what: "permutation closure",
                            budget: CLOSURE_LIMIT as u64,
                        });
                    }
                    index.insert(x.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        // identity first, then lexicographic
        elems[1..].sort();
        let index: HashMap<&[usize], usize> = elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let rows = elems
            .iter()
            .map(|p| elems.iter().map(|q| index[compose(p, q).as_slice()]).collect())
            .collect();
        Self::from_table(rows)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).unwrap()
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `G x H` with `(g, h)` stored at index `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order, h.order);
        let rows = (0..m * n)
            .map(|x| (0..m * n).map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n)).collect())
            .collect();
        let mut p = Self::from_table(rows).unwrap();
        p.relabel_identity_first();
        p
    }

    /// The symmetric group on `k` points.
    pub fn symmetric(k: usize) -> Self {
        if k < 2 {
            return Self::trivial();
        }
        let transposition = vec![vec![0, 1]];
        let cycle = vec![(0..k).collect::<Vec<_>>()];
        Self::from_permutations(&[transposition, cycle]).unwrap()
    }

    /// Dihedral group of order `2k`, symmetries of a `k`-gon.
    pub fn dihedral(k: usize) -> Self {
        let rotation = vec![(0..k).collect::<Vec<_>>()];
        let reflection: Vec<Vec<usize>> = (1..k).filter(|&i| i < k - i).map(|i| vec![i, k - i]).collect();
        Self::from_permutations(&[rotation, reflection]).unwrap()
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`; index `2u + s` is `(-1)^s u` for
    /// `u` in `1, i, j, k`.
    pub fn quaternion() -> Self {
        // unit products: (sign, unit) for u * v
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let rows = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (s, u) = UNIT[a / 2][b / 2];
                        2 * u + ((s + a % 2 + b % 2) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(rows).unwrap()
    }

    fn relabel_identity_first(&mut self) {
        if self.identity == 0 {
            return;
        }
        let e = self.identity;
        let swap = |x: usize| if x == 0 { e } else if x == e { 0 } else { x };
        let n = self.order;
        let rows = (0..n).map(|a| (0..n).map(|b| swap(self.mul(swap(a), swap(b)))).collect()).collect();
        *self = Self::from_table(rows).unwrap();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn assoc_check(&self) -> AssocCheck {
        self.assoc
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Elements other than the identity, in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements().filter(move |&g| g != self.identity)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> Vec<usize> {
        self.elements().filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !std::mem::replace(&mut seen[y], true) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A generating set of least size (exact search up to three elements,
    /// greedy beyond that).
    pub fn small_generating_set(&self) -> Vec<usize> {
        let cand: Vec<usize> = self.non_identity().collect();
        if cand.is_empty() {
            return Vec::new();
        }
        let full = |s: &[usize]| self.generated(s).len() == self.order;
        for &a in &cand {
            if full(&[a]) {
                return vec![a];
            }
        }
        for (i, &a) in cand.iter().enumerate() {
            for &b in &cand[i + 1..] {
                if full(&[a, b]) {
                    return vec![a, b];
                }
            }
        }
        if self.order <= EXHAUSTIVE_ASSOC_LIMIT {
            for (i, &a) in cand.iter().enumerate() {
                for (j, &b) in cand.iter().enumerate().skip(i + 1) {
                    for &c in &cand[j + 1..] {
                        if full(&[a, b, c]) {
                            return vec![a, b, c];
                        }
                    }
                }
            }
        }
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        while span.len() < self.order {
            let best = cand
                .iter()
                .copied()
                .max_by_key(|&c| {
                    let mut s = gens.clone();
                    s.push(c);
                    (self.generated(&s).len(), std::cmp::Reverse(c))
                })
                .unwrap();
            gens.push(best);
            span = self.generated(&gens);
        }
        gens
    }

    /// Checks that `images` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn check_homomorphism(&self, target: &FiniteGroup, images: &[usize]) -> Result<()> {
        if images.len() != self.order {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} entries for a group of order {}",
                images.len(),
                self.order
            )));
        }
        if let Some(&x) = images.iter().find(|&&x| x >= target.order) {
            return Err(Error::NotAHomomorphism(format!("image {x} out of range")));
        }
        for a in self.elements() {
            for b in self.elements() {
                if images[self.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::NotAHomomorphism(format!("fails on the pair ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    /// All homomorphisms `self -> target`, by backtracking over generator images.
    pub fn homomorphisms(&self, target: &FiniteGroup, budget: u64) -> Result<Vec<Vec<usize>>> {
        let plan = ExtensionPlan::new(self);
        let mut out = Vec::new();
        let mut visited = 0u64;
        let mut imgs = Vec::with_capacity(plan.gens.len());
        self.hom_search(target, &plan, &mut imgs, &mut out, &mut visited, budget, false)?;
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn hom_search(
        &self,
        target: &FiniteGroup,
        plan: &ExtensionPlan,
        imgs: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        visited: &mut u64,
        budget: u64,
        bijective: bool,
    ) -> Result<()> {
        *visited += 1;
        if *visited > budget {
            return Err(Error::BudgetExceeded { what: "homomorphism search", budget });
        }
        let k = imgs.len();
        if k == plan.gens.len() {
            if let Some(map) = plan.extend(self, target, imgs) {
                if !bijective || is_permutation(&map) {
                    out.push(map);
                }
            }
            return Ok(());
        }
        let ord = self.element_order(plan.gens[k]);
        for y in target.elements() {
            let oy = target.element_order(y);
            let ok = if bijective { oy == ord } else { ord % oy == 0 };
            if ok {
                imgs.push(y);
                self.hom_search(target, plan, imgs, out, visited, budget, bijective)?;
                imgs.pop();
            }
        }
        Ok(())
    }
}

fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| x < map.len() && !std::mem::replace(&mut seen[x], true))
}

/// Spanning tree of the Cayley graph: every element is `parent * gens[via]`.
struct ExtensionPlan {
    gens: Vec<usize>,
    /// BFS order with `(element, parent, generator slot)`.
    tree: Vec<(usize, usize, usize)>,
}

impl ExtensionPlan {
    fn new(g: &FiniteGroup) -> Self {
        let gens = g.small_generating_set();
        let mut seen = vec![false; g.order()];
        seen[g.identity] = true;
        let mut tree = Vec::with_capacity(g.order());
        let mut queue = VecDeque::from([g.identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if !std::mem::replace(&mut seen[y], true) {
                    tree.push((y, x, k));
                    queue.push_back(y);
                }
            }
        }
        Self { gens, tree }
    }

    /// The unique homomorphism with the given generator images, if one exists.
    fn extend(&self, g: &FiniteGroup, target: &FiniteGroup, imgs: &[usize]) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; g.order()];
        f[g.identity] = target.identity;
        for &(y, x, k) in &self.tree {
            f[y] = target.mul(f[x], imgs[k]);
        }
        for x in g.elements() {
            for (k, &s) in self.gens.iter().enumerate() {
                if f[g.mul(x, s)] != target.mul(f[x], imgs[k]) {
                    return None;
                }
            }
        }
        Some(f)
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::mul(self, *a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        FiniteGroup::inv(self, *a)
    }
}

/// Built-in groups by name: `trivial`, `Z<n>`, `Z2xZ2` style products, `S3`, `D4`, `Q8`.
pub fn named(name: &str) -> Result<FiniteGroup> {
    let parts: Vec<&str> = name.split(['x', '*']).collect();
    if parts.len() > 1 {
        let mut g = named(parts[0])?;
        for p in &parts[1..] {
            g = FiniteGroup::product(&g, &named(p)?);
        }
        return Ok(g);
    }
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "trivial" | "1" => Ok(FiniteGroup::trivial()),
        "v4" => Ok(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))),
        "q8" => Ok(FiniteGroup::quaternion()),
        _ => {
            let (kind, num) = lower.split_at(1);
            let k: usize = num.parse().map_err(|_| Error::Input(format!("unknown group {name:?}")))?;
            match kind {
                "z" | "c" if k >= 1 => Ok(FiniteGroup::cyclic(k)),
                "s" if k >= 1 => Ok(FiniteGroup::symmetric(k)),
                "d" if k >= 3 => Ok(FiniteGroup::dihedral(k)),
                _ => Err(Error::Input(format!("unknown group {name:?}"))),
            }
        }
    }
}
