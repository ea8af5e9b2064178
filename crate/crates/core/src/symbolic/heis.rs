//! The integer Heisenberg group and its two extensions of `Z^2`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::group::Group;

pub type Vec2 = [BigInt; 2];

pub fn vec2(x: i64, y: i64) -> Vec2 {
    [BigInt::from(x), BigInt::from(y)]
}

/// `ω(a, b) = det(a, b)`
pub fn omega(a: &Vec2, b: &Vec2) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn add2(a: &Vec2, b: &Vec2) -> Vec2 {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

fn neg2(a: &Vec2) -> Vec2 {
    [-&a[0], -&a[1]]
}

/// `[c, z]`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HeisElement {
    pub c: BigInt,
    pub z: Vec2,
}

impl HeisElement {
    pub fn new(c: i64, x: i64, y: i64) -> Self {
        Self { c: BigInt::from(c), z: vec2(x, y) }
    }

    pub fn central(c: BigInt) -> Self {
        Self { c, z: vec2(0, 0) }
    }
}

impl std::fmt::Display for HeisElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},({},{})]", self.c, self.z[0], self.z[1])
    }
}

/// `[c1, z1][c2, z2] = [c1 + c2 + ω(z1, z2), z1 + z2]`
#[derive(Debug, Clone, Copy, Default)]
pub struct Heisenberg;

impl Heisenberg {
    /// `^{[c1,z1]}[c2,z2] = [c2 + 2ω(z1,z2), z2]`
    pub fn conj_formula(a: &HeisElement, b: &HeisElement) -> HeisElement {
        HeisElement { c: &b.c + 2 * omega(&a.z, &b.z), z: b.z.clone() }
    }
}

impl Group for Heisenberg {
    type Elem = HeisElement;

    fn identity(&self) -> HeisElement {
        HeisElement::new(0, 0, 0)
    }

    fn mul(&self, a: &HeisElement, b: &HeisElement) -> HeisElement {
        HeisElement { c: &a.c + &b.c + omega(&a.z, &b.z), z: add2(&a.z, &b.z) }
    }

    fn inv(&self, a: &HeisElement) -> HeisElement {
        HeisElement { c: -&a.c, z: neg2(&a.z) }
    }
}

/// `(h, n)` in `Heis × Z^2` or `Heis ⋊ Z^2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SemidirectElement {
    pub h: HeisElement,
    pub n: Vec2,
}

impl SemidirectElement {
    pub fn new(h: HeisElement, n: Vec2) -> Self {
        Self { h, n }
    }
}

impl std::fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},({},{}))", self.h, self.n[0], self.n[1])
    }
}

/// `Heis × Z^2` when `twisted` is false, otherwise `Heis ⋊ Z^2` with
/// `n` acting by conjugation with `[0, n]`: `^n[c, z] = [c + 2ω(n, z), z]`.
#[derive(Debug, Clone, Copy)]
pub struct HeisByZ2 {
    pub twisted: bool,
}

impl HeisByZ2 {
    pub const DIRECT: HeisByZ2 = HeisByZ2 { twisted: false };
    pub const SEMIDIRECT: HeisByZ2 = HeisByZ2 { twisted: true };

    pub fn act(&self, n: &Vec2, h: &HeisElement) -> HeisElement {
        if !self.twisted || (n[0].is_zero() && n[1].is_zero()) {
            return h.clone();
        }
        HeisElement { c: &h.c + 2 * omega(n, &h.z), z: h.z.clone() }
    }

    pub fn name(&self) -> &'static str {
        if self.twisted {
            "Heis ⋊ Z^2"
        } else {
            "Heis × Z^2"
        }
    }
}

impl Group for HeisByZ2 {
    type Elem = SemidirectElement;

    fn identity(&self) -> SemidirectElement {
        SemidirectElement::new(Heisenberg.identity(), vec2(0, 0))
    }

    fn mul(&self, a: &SemidirectElement, b: &SemidirectElement) -> SemidirectElement {
        SemidirectElement { h: Heisenberg.mul(&a.h, &self.act(&a.n, &b.h)), n: add2(&a.n, &b.n) }
    }

    fn inv(&self, a: &SemidirectElement) -> SemidirectElement {
        let n = neg2(&a.n);
        SemidirectElement { h: self.act(&n, &Heisenberg.inv(&a.h)), n }
    }
}

/// `Z^k` with the standard generators; word balls are sup-norm balls.
#[derive(Debug, Clone, Copy)]
pub struct FreeAbelian {
    pub rank: usize,
}

impl Group for FreeAbelian {
    type Elem = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }
}

pub fn to_vec2(g: &[i64]) -> Vec2 {
    vec2(g[0], g[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_inverse() {
        let h = Heisenberg;
        assert_eq!(h.mul(&HeisElement::new(1, 1, 0), &HeisElement::new(0, 0, 1)), HeisElement::new(2, 1, 1));
        assert_eq!(h.inv(&HeisElement::new(3, 2, -1)), HeisElement::new(-3, -2, 1));
        let a = HeisElement::new(0, 1, 0);
        let b = HeisElement::new(0, 0, 1);
        assert_eq!(h.conj(&a, &b), HeisElement::new(2, 0, 1));
        assert_eq!(Heisenberg::conj_formula(&a, &b), HeisElement::new(2, 0, 1));
    }

    #[test]
    fn semidirect_inverse() {
        let g = HeisByZ2::SEMIDIRECT;
        let x = SemidirectElement::new(HeisElement::new(4, -1, 2), vec2(3, 5));
        assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        assert_eq!(g.mul(&g.inv(&x), &x), g.identity());
    }
}
