//! Exact integer linear algebra: Smith normal form with recorded
//! transforms, kernels of integer maps modulo per-row moduli, and
//! homology of `ker / im` lattices.
//!
//! Everything is generic over [`Int`], a checked integer. Callers run the
//! fast `i128` instantiation first and repeat with `BigInt` when it
//! reports [`Overflow`]; see [`exact`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Res<T> = std::result::Result<T, Overflow>;

pub trait Int:
    Clone + Debug + Ord + Signed + Integer + From<i64> + CheckedAdd + CheckedSub + CheckedMul + Send + Sync
{
    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Runs `f` over `i128` and, if any intermediate value overflowed, again
/// over `BigInt`. The result is always reported as `BigInt`.
pub fn exact<R, F>(f: F) -> R
where
    F: Fn(Precision) -> Res<R>,
{
    match f(Precision::Machine) {
        Ok(r) => r,
        Err(Overflow) => f(Precision::Arbitrary).expect("arbitrary precision cannot overflow"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Machine,
    Arbitrary,
}

fn add<T: Int>(a: &T, b: &T) -> Res<T> {
    a.checked_add(b).ok_or(Overflow)
}

fn sub<T: Int>(a: &T, b: &T) -> Res<T> {
    a.checked_sub(b).ok_or(Overflow)
}

fn mul<T: Int>(a: &T, b: &T) -> Res<T> {
    a.checked_mul(b).ok_or(Overflow)
}

/// `dst -= k * src`, elementwise.
fn axpy_neg<T: Int>(dst: &mut [T], k: &T, src: &[T]) -> Res<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = sub(d, &mul(k, s)?)?;
        }
    }
    Ok(())
}

/// A sparse integer vector: `(index, value)` pairs, indices unique.
pub type Sparse = Vec<(usize, i64)>;

/// Elementary operation on rows (or columns) of a matrix.
#[derive(Debug, Clone)]
pub enum ElemOp<T> {
    Swap(usize, usize),
    /// `line[dst] += k * line[src]`
    AddMul { dst: usize, src: usize, k: T },
    Negate(usize),
}

/// Smith normal form `U A V = D` with `U`, `V` stored as operation logs.
#[derive(Debug, Clone)]
pub struct Smith<T> {
    pub rows: usize,
    pub cols: usize,
    /// Positive diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub diag: Vec<T>,
    row_ops: Vec<ElemOp<T>>,
    col_ops: Vec<ElemOp<T>>,
}

impl<T: Int> Smith<T> {
    pub fn new(mut a: Vec<Vec<T>>, cols: usize) -> Res<Self> {
        let rows = a.len();
        let mut row_ops = Vec::new();
        let mut col_ops = Vec::new();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = min_abs_entry(&a, t, cols) else { break };
            if pi != t {
                a.swap(pi, t);
                row_ops.push(ElemOp::Swap(pi, t));
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(pj, t);
                }
                col_ops.push(ElemOp::Swap(pj, t));
            }
            loop {
                let mut dirty = false;
                // clear column t below the pivot
                for i in t + 1..rows {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&a[t][t]);
                    if !q.is_zero() {
                        let (top, bottom) = a.split_at_mut(i);
                        axpy_neg(&mut bottom[0][t..], &q, &top[t][t..])?;
                        row_ops.push(ElemOp::AddMul { dst: i, src: t, k: -q });
                    }
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..cols {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&a[t][t]);
                    if !q.is_zero() {
                        for row in a.iter_mut().skip(t) {
                            if !row[t].is_zero() {
                                row[j] = sub(&row[j], &mul(&q, &row[t])?)?;
                            }
                        }
                        col_ops.push(ElemOp::AddMul { dst: j, src: t, k: -q });
                    }
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder exists in row/column t: make it the pivot
                    let (pi, pj) = min_abs_in_cross(&a, t, rows, cols);
                    if pi != t {
                        a.swap(pi, t);
                        row_ops.push(ElemOp::Swap(pi, t));
                    }
                    if pj != t {
                        for row in a.iter_mut() {
                            row.swap(pj, t);
                        }
                        col_ops.push(ElemOp::Swap(pj, t));
                    }
                    continue;
                }
                // divisibility of the remaining block
                let piv = a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| a[i][t + 1..cols].iter().any(|x| !x.is_multiple_of(&piv)));
                match bad {
                    Some(i) => {
                        let (top, bottom) = a.split_at_mut(i);
                        for (d, s) in top[t][t..].iter_mut().zip(&bottom[0][t..]) {
                            *d = add(d, s)?;
                        }
                        row_ops.push(ElemOp::AddMul { dst: t, src: i, k: T::from(1) });
                    }
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t][t..].iter_mut() {
                    *x = -x.clone();
                }
                row_ops.push(ElemOp::Negate(t));
            }
            diag.push(a[t][t].clone());
            t += 1;
        }
        Ok(Self { rows, cols, diag, row_ops, col_ops })
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Some `x` with `A x = y`, or `None` when the system has no integer solution.
    pub fn solve(&self, y: &[T]) -> Res<Option<Vec<T>>> {
        assert_eq!(y.len(), self.rows, "right-hand side has wrong length");
        let mut w = y.to_vec();
        for op in &self.row_ops {
            apply_op(&mut w, op)?;
        }
        let mut z = vec![T::zero(); self.cols];
        for (i, d) in self.diag.iter().enumerate() {
            let (q, r) = w[i].div_rem(d);
            if !r.is_zero() {
                return Ok(None);
            }
            z[i] = q;
        }
        if w[self.rank()..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        // x = V z, V = E_1 E_2 ... E_k: apply E_k first
        for op in self.col_ops.iter().rev() {
            match op {
                ElemOp::Swap(i, j) => z.swap(*i, *j),
                ElemOp::Negate(i) => z[*i] = -z[*i].clone(),
                // column op dst += k * src is E = I + k e_src e_dst^T
                ElemOp::AddMul { dst, src, k } => {
                    let v = mul(k, &z[*dst])?;
                    z[*src] = add(&z[*src], &v)?;
                }
            }
        }
        Ok(Some(z))
    }
}

fn apply_op<T: Int>(w: &mut [T], op: &ElemOp<T>) -> Res<()> {
    match op {
        ElemOp::Swap(i, j) => w.swap(*i, *j),
        ElemOp::Negate(i) => w[*i] = -w[*i].clone(),
        ElemOp::AddMul { dst, src, k } => {
            let v = mul(k, &w[*src])?;
            w[*dst] = add(&w[*dst], &v)?;
        }
    }
    Ok(())
}

fn min_abs_entry<T: Int>(a: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|b| ax < b.2) {
                let one = ax == T::from(1);
                best = Some((i, j, ax));
                if one {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn min_abs_in_cross<T: Int>(a: &[Vec<T>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (i, row) in a.iter().enumerate().take(rows).skip(t + 1) {
        if !row[t].is_zero() && row[t].abs() < best.2 {
            best = (i, t, row[t].abs());
        }
    }
    for j in t + 1..cols {
        if !a[t][j].is_zero() && a[t][j].abs() < best.2 {
            best = (t, j, a[t][j].abs());
        }
    }
    (best.0, best.1)
}

/// A basis of `{ x in Z^n : <row_i, x> = 0 mod moduli_i }` (modulus 0 means
/// an exact equation). The result is a list of column vectors.
pub fn kernel_mod<T: Int>(n: usize, rows: &[(Sparse, i64)]) -> Res<Vec<Vec<T>>> {
    let mut basis: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut v = vec![T::zero(); n];
            v[j] = T::from(1);
            v
        })
        .collect();
    let mut values: Vec<T> = Vec::with_capacity(n);
    for (row, modulus) in rows {
        values.clear();
        for col in &basis {
            let mut acc = T::zero();
            for &(i, a) in row {
                if !col[i].is_zero() {
                    acc = add(&acc, &mul(&T::from(a), &col[i])?)?;
                }
            }
            if *modulus > 0 {
                acc = acc.mod_floor(&T::from(*modulus));
            }
            values.push(acc);
        }
        let Some(p) = gcd_reduce(&mut basis, &mut values, *modulus)? else { continue };
        if *modulus == 0 {
            basis.swap_remove(p);
        } else {
            let m = T::from(*modulus);
            let factor = m.clone() / values[p].gcd(&m);
            if factor != T::from(1) {
                for x in basis[p].iter_mut() {
                    *x = mul(x, &factor)?;
                }
            }
        }
    }
    Ok(basis)
}

/// Unimodular column operations on `basis` (mirrored on `values`) until at
/// most one value is nonzero (mod `modulus`, when positive). Returns its index.
fn gcd_reduce<T: Int>(basis: &mut [Vec<T>], values: &mut [T], modulus: i64) -> Res<Option<usize>> {
    let reduce = |x: T| if modulus > 0 { x.mod_floor(&T::from(modulus)) } else { x };
    loop {
        let live: Vec<usize> = (0..values.len()).filter(|&j| !values[j].is_zero()).collect();
        match live.len() {
            0 => return Ok(None),
            1 => return Ok(Some(live[0])),
            _ => {}
        }
        // residues are kept in [0, modulus), so plain magnitude drives Euclid
        let p = *live.iter().min_by_key(|&&j| values[j].abs()).unwrap();
        let pivot_val = values[p].clone();
        let pivot_col = basis[p].clone();
        for &j in &live {
            if j == p {
                continue;
            }
            let q = values[j].div_floor(&pivot_val);
            if q.is_zero() {
                continue;
            }
            axpy_neg(&mut basis[j], &q, &pivot_col)?;
            values[j] = reduce(sub(&values[j], &mul(&q, &pivot_val)?)?);
        }
    }
}

/// Column-echelon basis of a lattice: column `i` has its first nonzero
/// entry (positive) at row `pivots[i]`, with `pivots` strictly increasing.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub cols: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
}

impl<T: Int> Echelon<T> {
    pub fn new(mut cols: Vec<Vec<T>>, dim: usize) -> Res<Self> {
        let mut done = Vec::new();
        let mut pivots = Vec::new();
        for r in 0..dim {
            if cols.is_empty() {
                break;
            }
            let mut values: Vec<T> = cols.iter().map(|c| c[r].clone()).collect();
            let Some(p) = gcd_reduce(&mut cols, &mut values, 0)? else { continue };
            let mut c = cols.swap_remove(p);
            if c[r].is_negative() {
                c.iter_mut().for_each(|x| *x = -x.clone());
            }
            done.push(c);
            pivots.push(r);
        }
        // zero columns (dependent generators) are dropped
        Ok(Self { cols: done, pivots })
    }

    /// Coordinates of `y` in this basis, or `None` if `y` is outside the lattice.
    pub fn coordinates(&self, y: &[T]) -> Res<Option<Vec<T>>> {
        let mut y = y.to_vec();
        let mut c = Vec::with_capacity(self.cols.len());
        for (col, &p) in self.cols.iter().zip(&self.pivots) {
            let (q, r) = y[p].div_rem(&col[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                axpy_neg(&mut y, &q, col)?;
            }
            c.push(q);
        }
        Ok(if y.iter().all(|x| x.is_zero()) { Some(c) } else { None })
    }
}

/// `L / I` for lattices `I <= L <= Z^n`, `L` given by a basis, `I` by generators.
#[derive(Debug, Clone)]
pub struct Quotient<T> {
    /// Invariant factors `d_1 | d_2 | ...` (all > 1), then one `0` per free summand.
    pub factors: Vec<T>,
    /// One generator (a vector of `L`) per entry of `factors`.
    pub generators: Vec<Vec<T>>,
}

pub fn quotient<T: Int>(n: usize, lattice: Vec<Vec<T>>, image: &[Sparse]) -> Res<Quotient<T>> {
    let ech = Echelon::new(lattice, n)?;
    let k = ech.cols.len();
    // coordinates of the image generators: a k x g matrix
    let mut coords: Vec<Vec<T>> = vec![Vec::with_capacity(image.len()); k];
    for gen in image {
        let mut y = vec![T::zero(); n];
        for &(i, v) in gen {
            y[i] = add(&y[i], &T::from(v))?;
        }
        let c = ech
            .coordinates(&y)?
            .expect("image generator outside the kernel lattice: complex is not a complex");
        for (row, x) in coords.iter_mut().zip(c) {
            row.push(x);
        }
    }
    let smith = Smith::new(coords, image.len())?;
    let mut basis = ech.cols;
    // mirror row operations on the basis: B <- B U^{-1}
    for op in &smith.row_ops {
        match op {
            ElemOp::Swap(i, j) => basis.swap(*i, *j),
            ElemOp::Negate(i) => basis[*i].iter_mut().for_each(|x| *x = -x.clone()),
            ElemOp::AddMul { dst, src, k } => {
                let d = basis[*dst].clone();
                axpy_neg(&mut basis[*src], k, &d)?;
            }
        }
    }
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (i, b) in basis.into_iter().enumerate() {
        let d = smith.diag.get(i).cloned().unwrap_or_else(T::zero);
        if d == T::from(1) {
            continue;
        }
        factors.push(d);
        generators.push(b);
    }
    Ok(Quotient { factors, generators })
}

/// Converts to `i64`, failing on values outside its range.
pub fn to_i64<T: Int>(x: &T) -> Option<i64> {
    x.to_big().to_i64()
}
