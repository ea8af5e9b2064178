//! Centers of `Heis`, `Heis × Z^2` and `Heis ⋊ Z^2` from the bilinear
//! commutation form, cross-checked by brute force on a ball.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::heis::{vec2, HeisByZ2, HeisElement, Heisenberg, SemidirectElement};
use crate::group::Group;
use crate::lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Heis,
    Direct,
    Semidirect,
}

impl Family {
    pub fn dim(self) -> usize {
        match self {
            Family::Heis => 3,
            _ => 5,
        }
    }

    pub fn coordinates(self) -> &'static [&'static str] {
        match self {
            Family::Heis => &["c", "z1", "z2"],
            _ => &["c", "z1", "z2", "n1", "n2"],
        }
    }

    fn group(self) -> Option<HeisByZ2> {
        match self {
            Family::Heis => None,
            Family::Direct => Some(HeisByZ2::DIRECT),
            Family::Semidirect => Some(HeisByZ2::SEMIDIRECT),
        }
    }

    fn element(self, x: &[i64]) -> SemidirectElement {
        let h = HeisElement::new(x[0], x[1], x[2]);
        let n = if self == Family::Heis { vec2(0, 0) } else { vec2(x[3], x[4]) };
        SemidirectElement::new(h, n)
    }

    fn mul(self, a: &SemidirectElement, b: &SemidirectElement) -> SemidirectElement {
        match self.group() {
            None => SemidirectElement::new(Heisenberg.mul(&a.h, &b.h), vec2(0, 0)),
            Some(g) => g.mul(a, b),
        }
    }

    /// `c(xy) - c(yx)`; the other coordinates of `xy` and `yx` always agree.
    fn commutator_c(self, a: &SemidirectElement, b: &SemidirectElement) -> Option<BigInt> {
        let (ab, ba) = (self.mul(a, b), self.mul(b, a));
        (ab.h.z == ba.h.z && ab.n == ba.n).then(|| ab.h.c - ba.h.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallCheck {
    pub radius: i64,
    pub ball_size: usize,
    pub central_in_ball: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub family: Family,
    pub coordinates: Vec<String>,
    /// `B[i][j] = c(e_i e_j) - c(e_j e_i)`
    pub form: Vec<Vec<i64>>,
    /// Coordinate vectors of a basis of the center.
    pub generators: Vec<Vec<i64>>,
    /// The center is free abelian of this rank.
    pub rank: usize,
    pub bilinear_on_samples: bool,
    pub cross_check: BallCheck,
}

/// Generators of the center, read off as the left kernel of the commutation form.
pub fn center_criterion_solver(family: Family) -> CenterReport {
    let dim = family.dim();
    let unit = |i: usize| {
        let mut v = vec![0; dim];
        v[i] = 1;
        v
    };
    let basis: Vec<SemidirectElement> = (0..dim).map(|i| family.element(&unit(i))).collect();
    let form: Vec<Vec<i64>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| family.commutator_c(a, b).expect("commutators are central").to_i64().unwrap())
                .collect()
        })
        .collect();
    let bilinear = |x: &[i64], y: &[i64]| -> i64 {
        (0..dim).map(|i| (0..dim).map(|j| x[i] * form[i][j] * y[j]).sum::<i64>()).sum()
    };

    // spot-check that the commutator really is given by the form
    let samples: Vec<Vec<i64>> = (0..40)
        .map(|k: i64| (0..dim as i64).map(|i| ((k * 7 + i * 13) % 9) - 4).collect())
        .collect();
    let bilinear_on_samples = samples.iter().all(|x| {
        samples.iter().take(10).all(|y| {
            family.commutator_c(&family.element(x), &family.element(y)) == Some(BigInt::from(bilinear(x, y)))
        })
    });

    let rows: Vec<(lattice::Sparse, i64)> = (0..dim)
        .map(|j| ((0..dim).filter(|&i| form[i][j] != 0).map(|i| (i, form[i][j])).collect(), 0))
        .collect();
    let kernel = lattice::kernel_mod::<i128>(dim, &rows).expect("small entries");
    let generators: Vec<Vec<i64>> = lattice::Echelon::new(kernel, dim)
        .expect("small entries")
        .cols
        .iter()
        .map(|c| c.iter().map(|&x| x as i64).collect())
        .collect();
    let in_lattice = |x: &[i64]| (0..dim).all(|j| (0..dim).map(|i| x[i] * form[i][j]).sum::<i64>() == 0);

    let radius = 3;
    let ball = cube(dim, radius);
    let elems: Vec<SemidirectElement> = ball.iter().map(|x| family.element(x)).collect();
    // generators first so most non-central elements fail immediately
    let order: Vec<usize> = {
        let mut o: Vec<usize> = (0..ball.len()).collect();
        o.sort_by_key(|&i| ball[i].iter().map(|x| x.abs()).sum::<i64>());
        o
    };
    let mut central = 0;
    let mut agrees = true;
    for (x, ex) in ball.iter().zip(&elems) {
        let commutes = order.iter().all(|&j| family.commutator_c(ex, &elems[j]) == Some(BigInt::from(0)));
        central += commutes as usize;
        agrees &= commutes == in_lattice(x);
    }

    CenterReport {
        family,
        coordinates: family.coordinates().iter().map(|s| s.to_string()).collect(),
        rank: generators.len(),
        form,
        generators,
        bilinear_on_samples,
        cross_check: BallCheck { radius, ball_size: ball.len(), central_in_ball: central, agrees },
    }
}

fn cube(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heis_center_is_rank_one() {
        let r = center_criterion_solver(Family::Heis);
        assert_eq!(r.rank, 1);
        assert_eq!(r.generators, vec![vec![1, 0, 0]]);
        assert!(r.cross_check.agrees && r.bilinear_on_samples);
        assert_eq!(r.cross_check.central_in_ball, 7);
    }
}
