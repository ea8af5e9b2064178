//! Inhomogeneous cochains of a finite group with values in a [`CoeffModule`],
//! the coboundary, and cohomology computed exactly over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffModule, ModElement};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{self, Int, Overflow, Precision, Smith, Sparse};

/// Largest number of coordinates (tuples times module dimension) a
/// matrix computation may address in its target degree.
pub const DEFAULT_COCHAIN_BUDGET: u64 = 200_000;

/// A map `G^n → M`, stored densely with tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cochain {
    pub degree: usize,
    /// `|G|`
    pub order: usize,
    pub dim: usize,
    pub values: Vec<i64>,
    /// Set when every tuple containing the identity maps to zero.
    pub normalized: bool,
}

impl Cochain {
    pub fn tuples(&self) -> usize {
        self.values.len() / self.dim.max(1)
    }

    pub fn at(&self, idx: usize) -> &[i64] {
        &self.values[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

/// `C^*(G, M)` for a finite group and a module on which it acts.
#[derive(Debug, Clone, Copy)]
pub struct Complex<'a> {
    pub g: &'a FiniteGroup,
    pub m: &'a CoeffModule,
}

impl<'a> Complex<'a> {
    pub fn new(g: &'a FiniteGroup, m: &'a CoeffModule) -> Self {
        Self { g, m }
    }

    pub fn tuple_count(&self, n: usize) -> usize {
        self.g.order().pow(n as u32)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.g.order() + x)
    }

    pub fn decode(&self, mut idx: usize, n: usize) -> Vec<usize> {
        let q = self.g.order();
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = idx % q;
            idx /= q;
        }
        t
    }

    fn degenerate(&self, tuple: &[usize]) -> bool {
        tuple.contains(&self.g.identity_index())
    }

    pub fn zero(&self, n: usize) -> Cochain {
        Cochain {
            degree: n,
            order: self.g.order(),
            dim: self.m.dim(),
            values: vec![0; self.tuple_count(n) * self.m.dim()],
            normalized: true,
        }
    }

    /// Builds a cochain from a function on tuples.
    pub fn from_fn(&self, n: usize, mut f: impl FnMut(&[usize]) -> ModElement) -> Cochain {
        let mut c = self.zero(n);
        let dim = self.m.dim();
        for idx in 0..self.tuple_count(n) {
            let t = self.decode(idx, n);
            let mut v = f(&t);
            assert_eq!(v.len(), dim, "value has the wrong dimension");
            self.m.reduce(&mut v);
            c.values[idx * dim..(idx + 1) * dim].copy_from_slice(&v);
        }
        c.normalized = self.detect_normalized(&c);
        c
    }

    pub fn value<'c>(&self, c: &'c Cochain, tuple: &[usize]) -> &'c [i64] {
        c.at(self.encode(tuple))
    }

    fn check_shape(&self, c: &Cochain) -> Result<()> {
        if c.order != self.g.order() || c.dim != self.m.dim() || c.values.len() != self.tuple_count(c.degree) * c.dim
        {
            return Err(Error::Shape(format!(
                "degree-{} cochain does not match group order {} and module dimension {}",
                c.degree,
                self.g.order(),
                self.m.dim()
            )));
        }
        Ok(())
    }

    fn detect_normalized(&self, c: &Cochain) -> bool {
        (0..c.tuples()).all(|i| !self.degenerate(&self.decode(i, c.degree)) || self.m.is_zero(c.at(i)))
    }

    /// Zero at degenerate tuples and unchanged elsewhere.
    pub fn normalize_flag(&self, mut c: Cochain) -> Cochain {
        c.normalized = self.detect_normalized(&c);
        c
    }

    pub fn add(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        self.check_shape(a)?;
        self.check_shape(b)?;
        if a.degree != b.degree {
            return Err(Error::Shape(format!("degrees {} and {} differ", a.degree, b.degree)));
        }
        let dim = self.m.dim();
        let mut c = a.clone();
        for i in 0..a.tuples() {
            let v = self.m.add(a.at(i), b.at(i));
            c.values[i * dim..(i + 1) * dim].copy_from_slice(&v);
        }
        c.normalized = a.normalized && b.normalized;
        Ok(c)
    }

    pub fn neg(&self, a: &Cochain) -> Cochain {
        let mut c = a.clone();
        let dim = self.m.dim();
        for i in 0..a.tuples() {
            let v = self.m.neg(a.at(i));
            c.values[i * dim..(i + 1) * dim].copy_from_slice(&v);
        }
        c
    }

    pub fn sub(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        self.add(a, &self.neg(b))
    }

    /// `δα(g_1..g_{n+1}) = g_1·α(g_2..) + Σ (-1)^i α(..g_i g_{i+1}..) + (-1)^{n+1} α(g_1..g_n)`
    pub fn coboundary(&self, a: &Cochain) -> Cochain {
        self.check_shape(a).expect("cochain shape");
        let n = a.degree;
        let q = self.g.order();
        let dim = self.m.dim();
        let mut out = self.zero(n + 1);
        let mut acc = vec![0i64; dim];
        let mut merged = vec![0usize; n];
        for idx in 0..self.tuple_count(n + 1) {
            let t = self.decode(idx, n + 1);
            let g1 = t[0];
            acc.copy_from_slice(&self.m.act(g1, a.at(idx % self.tuple_count(n))));
            for i in 1..=n {
                merged[..i - 1].copy_from_slice(&t[..i - 1]);
                merged[i - 1] = self.g.mul(t[i - 1], t[i]);
                merged[i..].copy_from_slice(&t[i + 1..]);
                let v = a.at(self.encode(&merged));
                let sign = if i % 2 == 0 { 1 } else { -1 };
                acc.iter_mut().zip(v).for_each(|(x, y)| *x += sign * y);
            }
            let v = a.at(idx / q);
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            acc.iter_mut().zip(v).for_each(|(x, y)| *x += sign * y);
            self.m.reduce(&mut acc);
            out.values[idx * dim..(idx + 1) * dim].copy_from_slice(&acc);
        }
        out.normalized = a.normalized && self.detect_normalized(&out);
        out
    }

    /// `Ok` when `δα = 0`, else the first tuple where it fails.
    pub fn check_cocycle(&self, a: &Cochain) -> Result<()> {
        let d = self.coboundary(a);
        match (0..d.tuples()).find(|&i| !self.m.is_zero(d.at(i))) {
            None => Ok(()),
            Some(i) => Err(Error::NotACocycle { tuple: self.decode(i, a.degree + 1) }),
        }
    }

    /// Free coordinates uniform in `[-3, 3]`, torsion coordinates uniform.
    pub fn random(&self, n: usize, normalized: bool, rng: &mut impl Rng) -> Cochain {
        let m = self.m;
        let e = self.g.identity_index();
        self.from_fn(n, |t| {
            if normalized && t.contains(&e) {
                return m.zero();
            }
            (0..m.dim())
                .map(|i| match m.modulus(i) {
                    0 => rng.gen_range(-3..=3),
                    d => rng.gen_range(0..d),
                })
                .collect()
        })
    }

    /// Tuple indices spanning `C^n` (or `NC^n`).
    fn basis(&self, n: usize, normalized: bool) -> Basis {
        let all = self.tuple_count(n);
        let tuples: Vec<usize> = if normalized {
            (0..all).filter(|&i| !self.degenerate(&self.decode(i, n))).collect()
        } else {
            (0..all).collect()
        };
        let mut pos = vec![usize::MAX; all];
        for (p, &t) in tuples.iter().enumerate() {
            pos[t] = p;
        }
        Basis { tuples, pos, dim: self.m.dim() }
    }

    fn check_budget(&self, n: usize, normalized: bool, budget: u64) -> Result<()> {
        let q = if normalized { self.g.order() - 1 } else { self.g.order() } as u64;
        let size = q.saturating_pow(n as u32).saturating_mul(self.m.dim() as u64);
        if size > budget {
            return Err(Error::BudgetExceeded { what: "cochain matrix", budget });
        }
        Ok(())
    }

    /// Rows of `δ^n : C^n → C^{n+1}` in coordinates, each with the modulus of its target coordinate.
    fn matrix(&self, n: usize, src: &Basis, dst: &Basis) -> Vec<(Sparse, i64)> {
        let dim = self.m.dim();
        let mut rows = Vec::with_capacity(dst.len());
        let mut merged = vec![0usize; n];
        for &idx in &dst.tuples {
            let t = self.decode(idx, n + 1);
            let mut terms: Vec<(usize, i64)> = Vec::new();
            let mut push = |tuple_idx: usize, sign: i64, action: Option<usize>| {
                let p = src.pos[tuple_idx];
                if p == usize::MAX {
                    return;
                }
                for c in 0..dim {
                    match action.and_then(|g| self.m.matrix(g)) {
                        // target coordinate r gets sign * M[r][c] * α_c; stored per r below
                        Some(mat) => {
                            for (r, row) in mat.iter().enumerate() {
                                if row[c] != 0 {
                                    terms.push((r * src.tuples.len() * dim + p * dim + c, sign * row[c]));
                                }
                            }
                        }
                        None => terms.push((c * src.tuples.len() * dim + p * dim + c, sign)),
                    }
                }
            };
            push(idx % self.tuple_count(n), 1, Some(t[0]));
            for i in 1..=n {
                merged[..i - 1].copy_from_slice(&t[..i - 1]);
                merged[i - 1] = self.g.mul(t[i - 1], t[i]);
                merged[i..].copy_from_slice(&t[i + 1..]);
                push(self.encode(&merged), if i % 2 == 0 { 1 } else { -1 }, None);
            }
            push(idx / self.g.order(), if (n + 1) % 2 == 0 { 1 } else { -1 }, None);

            // split the packed (target coordinate, source column) keys
            let width = src.tuples.len() * dim;
            let mut per_coord: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); dim];
            for (key, v) in terms {
                *per_coord[key / width].entry(key % width).or_insert(0) += v;
            }
            for (r, entries) in per_coord.into_iter().enumerate() {
                let d = self.m.modulus(r);
                let row: Sparse = entries
                    .into_iter()
                    .map(|(j, v)| (j, if d > 0 { v.rem_euclid(d) } else { v }))
                    .filter(|&(_, v)| v != 0)
                    .collect();
                rows.push((row, d));
            }
        }
        rows
    }

    /// Torsion relations `d e_i` of `C^n`.
    fn relations(&self, b: &Basis) -> Vec<Sparse> {
        let dim = self.m.dim();
        let mut out = Vec::new();
        for p in 0..b.len() {
            for c in self.m.rank()..dim {
                out.push(vec![(p * dim + c, self.m.modulus(c))]);
            }
        }
        out
    }

    /// `H^n(G, M)` from the full or the normalized complex.
    pub fn cohomology(&self, n: usize, normalized: bool, budget: u64) -> Result<Cohomology> {
        self.check_budget(n + 1, normalized, budget)?;
        let here = self.basis(n, normalized);
        let next = self.basis(n + 1, normalized);
        let rows = self.matrix(n, &here, &next);
        let mut image = self.relations(&here);
        if n > 0 {
            let prev = self.basis(n - 1, normalized);
            image.extend(transpose(&self.matrix(n - 1, &prev, &here), prev.len() * here.dim));
        }
        let size = here.len() * here.dim;
        let moduli: Vec<i64> = (0..size).map(|i| self.m.modulus(i % here.dim)).collect();
        let q = lattice::exact(|p| match p {
            Precision::Machine => quotient_i64::<i128>(size, &rows, &image, &moduli),
            Precision::Arbitrary => quotient_i64::<BigInt>(size, &rows, &image, &moduli),
        })
        .map_err(|_: QuotientError| Error::CoordinateOverflow)?;

        let representatives = q.1.iter().map(|v| self.expand(n, &here, v, normalized)).collect();
        Ok(Cohomology { degree: n, normalized, invariant_factors: q.0, representatives })
    }

    fn expand(&self, n: usize, b: &Basis, coords: &[i64], normalized: bool) -> Cochain {
        let mut c = self.zero(n);
        let dim = self.m.dim();
        for (p, &t) in b.tuples.iter().enumerate() {
            let mut v = coords[p * dim..(p + 1) * dim].to_vec();
            self.m.reduce(&mut v);
            c.values[t * dim..(t + 1) * dim].copy_from_slice(&v);
        }
        c.normalized = normalized || self.detect_normalized(&c);
        c
    }

    /// A solver for `δβ = α` in degree `n` (so `β` has degree `n - 1`).
    pub fn solver(&self, n: usize, normalized: bool, budget: u64) -> Result<Solver<'a>> {
        if n == 0 {
            return Err(Error::Shape("no coboundaries in degree 0".into()));
        }
        self.check_budget(n, normalized, budget)?;
        let here = self.basis(n, normalized);
        let prev = self.basis(n - 1, normalized);
        let mut cols = transpose(&self.matrix(n - 1, &prev, &here), prev.len() * here.dim);
        cols.extend(self.relations(&here));
        let rows = here.len() * here.dim;
        let mut dense = vec![vec![0i64; cols.len()]; rows];
        for (j, col) in cols.iter().enumerate() {
            for &(i, v) in col {
                dense[i][j] += v;
            }
        }
        let smith = SmithAny::new(&dense, cols.len());
        Ok(Solver { complex: *self, degree: n, normalized, here, prev, dense, smith })
    }

    /// Some `β` with `δβ = α`, normalized when `α` is.
    pub fn coboundary_witness(&self, a: &Cochain) -> Result<Option<Cochain>> {
        if a.degree == 0 {
            self.check_cocycle(a)?;
            return Ok(a.is_zero().then(|| a.clone()));
        }
        self.solver(a.degree, a.normalized, u64::MAX)?.witness(a)
    }

    pub fn class_equal(&self, a: &Cochain, b: &Cochain) -> Result<bool> {
        Ok(self.coboundary_witness(&self.sub(a, b)?)?.is_some())
    }

    /// `(Φ^*α)(g_1..g_n) = α(Φg_1..Φg_n)` with `G` acting on the coefficients through `Φ`.
    pub fn pullback(g: &FiniteGroup, target: &Complex, phi: &[usize], a: &Cochain) -> Result<(CoeffModule, Cochain)> {
        g.check_homomorphism(target.g, phi)?;
        let m = target.m.pullback(phi);
        let c = Complex::new(g, &m);
        let out = c.from_fn(a.degree, |t| {
            let img: Vec<usize> = t.iter().map(|&x| phi[x]).collect();
            target.value(a, &img).to_vec()
        });
        Ok((m.clone(), out))
    }
}

#[derive(Debug, Clone)]
struct Basis {
    tuples: Vec<usize>,
    pos: Vec<usize>,
    dim: usize,
}

impl Basis {
    fn len(&self) -> usize {
        self.tuples.len()
    }
}

fn transpose(rows: &[(Sparse, i64)], cols: usize) -> Vec<Sparse> {
    let mut out = vec![Vec::new(); cols];
    for (i, (row, _)) in rows.iter().enumerate() {
        for &(j, v) in row {
            out[j].push((i, v));
        }
    }
    out
}

/// A value did not fit in `i64`.
#[derive(Debug)]
struct QuotientError;

type QuotientOut = (Vec<i64>, Vec<Vec<i64>>);

fn quotient_i64<T: Int>(
    n: usize,
    rows: &[(Sparse, i64)],
    image: &[Sparse],
    moduli: &[i64],
) -> std::result::Result<std::result::Result<QuotientOut, QuotientError>, Overflow> {
    let kernel = lattice::kernel_mod::<T>(n, rows)?;
    let q = lattice::quotient(n, kernel, image)?;
    let conv = |x: &T| lattice::to_i64(x).ok_or(QuotientError);
    let res = (|| {
        let f = q.factors.iter().map(conv).collect::<std::result::Result<Vec<_>, _>>()?;
        let g = q
            .generators
            .iter()
            .map(|v| {
                v.iter()
                    .zip(moduli)
                    .map(|(x, &d)| if d > 0 { conv(&x.mod_floor(&T::from(d))) } else { conv(x) })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok((f, g))
    })();
    Ok(res)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub degree: usize,
    pub normalized: bool,
    /// `d_1 | d_2 | ...` (all above 1), then `0` for each free summand.
    pub invariant_factors: Vec<i64>,
    /// One cocycle per invariant factor.
    pub representatives: Vec<Cochain>,
}

impl Cohomology {
    /// Number of classes, when finite.
    pub fn order(&self) -> Option<u64> {
        self.invariant_factors.iter().try_fold(1u64, |acc, &d| (d > 0).then(|| acc * d as u64))
    }

    pub fn is_zero(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Every class as `Σ k_i r_i` with `0 <= k_i < d_i`; free summands are skipped.
    pub fn torsion_classes(&self, c: &Complex) -> Vec<Cochain> {
        let mut out = vec![c.zero(self.degree)];
        for (d, r) in self.invariant_factors.iter().zip(&self.representatives) {
            if *d == 0 {
                continue;
            }
            let mut next = Vec::new();
            for base in &out {
                let mut x = base.clone();
                for _ in 0..*d {
                    next.push(x.clone());
                    x = c.add(&x, r).expect("same shape");
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Debug, Clone)]
enum SmithAny {
    Machine(Smith<i128>),
    Big(Smith<BigInt>),
}

impl SmithAny {
    fn new(dense: &[Vec<i64>], cols: usize) -> Self {
        let conv = |f: fn(i64) -> i128| dense.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect::<Vec<_>>();
        match Smith::new(conv(|x| x as i128), cols) {
            Ok(s) => SmithAny::Machine(s),
            Err(Overflow) => SmithAny::Big(Self::big(dense, cols)),
        }
    }

    fn big(dense: &[Vec<i64>], cols: usize) -> Smith<BigInt> {
        let a = dense.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Smith::new(a, cols).expect("arbitrary precision cannot overflow")
    }
}

/// Reusable solver for `δβ = α` in a fixed degree.
#[derive(Debug, Clone)]
pub struct Solver<'a> {
    complex: Complex<'a>,
    degree: usize,
    normalized: bool,
    here: Basis,
    prev: Basis,
    dense: Vec<Vec<i64>>,
    smith: SmithAny,
}

impl<'a> Solver<'a> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Some `β` with `δβ = α`, or `None` when `α` is not a coboundary.
    pub fn witness(&self, a: &Cochain) -> Result<Option<Cochain>> {
        let c = &self.complex;
        c.check_shape(a)?;
        if a.degree != self.degree {
            return Err(Error::Shape(format!("solver is for degree {}, got {}", self.degree, a.degree)));
        }
        c.check_cocycle(a)?;
        if self.normalized && !c.detect_normalized(a) {
            return Err(Error::Shape("normalized solver given a non-normalized cochain".into()));
        }
        let dim = self.here.dim;
        let y: Vec<i64> = self.here.tuples.iter().flat_map(|&t| a.at(t).to_vec()).collect();
        let x = match &self.smith {
            SmithAny::Machine(s) => match s.solve(&y.iter().map(|&v| v as i128).collect::<Vec<_>>()) {
                Ok(x) => x.map(|x| x.iter().map(lattice::to_i64).collect::<Option<Vec<_>>>()),
                Err(Overflow) => big_solve(&self.dense, &y),
            },
            SmithAny::Big(s) => s
                .solve(&y.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
                .expect("arbitrary precision cannot overflow")
                .map(|x| x.iter().map(lattice::to_i64).collect()),
        };
        let Some(x) = x else { return Ok(None) };
        let x = x.ok_or(Error::CoordinateOverflow)?;
        let beta = c.expand(self.degree - 1, &self.prev, &x[..self.prev.len() * dim], self.normalized);
        debug_assert_eq!(c.coboundary(&beta).values, a.values);
        Ok(Some(beta))
    }
}

fn big_solve(dense: &[Vec<i64>], y: &[i64]) -> Option<Option<Vec<i64>>> {
    let cols = dense.first().map_or(0, |r| r.len());
    let s = SmithAny::big(dense, cols);
    s.solve(&y.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
        .expect("arbitrary precision cannot overflow")
        .map(|x| x.iter().map(lattice::to_i64).collect())
}

/// Whether a class lies in the image of the comparison map from bounded cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonVerdict {
    pub in_image: bool,
    pub reason: String,
}

/// Over a finite group every cochain is bounded, so the comparison map is
/// the identity. Infinite groups are only handled by the symbolic examples.
pub fn comparison_image(base: Base<'_>) -> Result<ComparisonVerdict> {
    match base {
        Base::Finite(_) => Ok(ComparisonVerdict {
            in_image: true,
            reason: "finite group: every cochain is bounded".into(),
        }),
        Base::Symbolic(name) => Err(Error::Unsupported(format!(
            "comparison map over the infinite group {name}; see the symbolic examples"
        ))),
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Base<'a> {
    Finite(&'a FiniteGroup),
    Symbolic(&'a str),
}

/// On-disk cochain: `{"degree": n, "values": {"g1,g2": [coords]}}`, missing tuples are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainSpec {
    pub degree: usize,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<i64>>,
}

impl CochainSpec {
    pub fn build(&self, c: &Complex) -> Result<Cochain> {
        let mut out = c.zero(self.degree);
        let dim = c.m.dim();
        for (key, v) in &self.values {
            let tuple: Vec<usize> = if key.trim().is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad tuple key {key:?}"))))
                    .collect::<Result<_>>()?
            };
            if tuple.len() != self.degree || tuple.iter().any(|&x| x >= c.g.order()) {
                return Err(Error::Input(format!("tuple {key:?} does not index G^{}", self.degree)));
            }
            if v.len() != dim {
                return Err(Error::Input(format!("value at {key:?} has {} coordinates, expected {dim}", v.len())));
            }
            let mut v = v.clone();
            c.m.reduce(&mut v);
            let i = c.encode(&tuple);
            out.values[i * dim..(i + 1) * dim].copy_from_slice(&v);
        }
        Ok(c.normalize_flag(out))
    }

    pub fn of(c: &Complex, a: &Cochain) -> Self {
        let values = (0..a.tuples())
            .filter(|&i| !c.m.is_zero(a.at(i)))
            .map(|i| {
                let key = c.decode(i, a.degree).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                (key, a.at(i).to_vec())
            })
            .collect();
        Self { degree: a.degree, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h(g: &FiniteGroup, m: &CoeffModule, n: usize, normalized: bool) -> Vec<i64> {
        Complex::new(g, m).cohomology(n, normalized, DEFAULT_COCHAIN_BUDGET).unwrap().invariant_factors
    }

    #[test]
    fn small_cohomology() {
        let z2 = FiniteGroup::cyclic(2);
        let m2 = CoeffModule::cyclic(2);
        assert_eq!(h(&z2, &m2, 0, false), vec![2]);
        assert_eq!(h(&z2, &m2, 1, false), vec![2]);
        assert_eq!(h(&z2, &m2, 2, true), vec![2]);
        let z = CoeffModule::integers();
        assert_eq!(h(&z2, &z, 0, false), vec![0]);
        assert!(h(&z2, &z, 1, false).is_empty());
        assert_eq!(h(&z2, &z, 2, false), vec![2]);
        let sign = CoeffModule::sign(&[false, true]);
        assert!(h(&z2, &sign, 0, false).is_empty());
        assert_eq!(h(&z2, &sign, 1, false), vec![2]);
        assert!(h(&z2, &sign, 2, false).is_empty());
        assert!(h(&FiniteGroup::trivial(), &m2, 2, false).is_empty());
    }

    #[test]
    fn s3_integral() {
        let s3 = named("S3").unwrap();
        let z = CoeffModule::integers();
        assert_eq!(h(&s3, &z, 2, true), vec![2]);
        assert_eq!(h(&s3, &z, 3, true), Vec::<i64>::new());
        assert_eq!(h(&s3, &z, 4, true), vec![6]);
    }

    #[test]
    fn witness_and_classes() {
        let z2 = FiniteGroup::cyclic(2);
        let m2 = CoeffModule::cyclic(2);
        let c = Complex::new(&z2, &m2);
        let h2 = c.cohomology(2, true, DEFAULT_COCHAIN_BUDGET).unwrap();
        let r = &h2.representatives[0];
        assert_eq!(c.coboundary_witness(r).unwrap(), None);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = c.random(1, true, &mut rng);
        let a = c.coboundary(&b);
        let w = c.coboundary_witness(&a).unwrap().unwrap();
        assert_eq!(c.coboundary(&w), a);
        assert!(c.class_equal(r, &c.add(r, &a).unwrap()).unwrap());
    }

    #[test]
    fn spec_roundtrip() {
        let z3 = FiniteGroup::cyclic(3);
        let m = CoeffModule::integers();
        let c = Complex::new(&z3, &m);
        let a = c.random(2, true, &mut ChaCha8Rng::seed_from_u64(2));
        let s = CochainSpec::of(&c, &a);
        assert_eq!(s.build(&c).unwrap(), a);
        assert!(s.values.keys().all(|k| !k.contains('0')));
    }
}
