//! Library results against independent brute-force computations.

mod common;

use extlab::cochain::{Complex, DEFAULT_COCHAIN_BUDGET};
use extlab::coeff::CoeffModule;
use extlab::extension::{
    build_extension, cocycle_of_section, enumerate_extensions, equivalent, induced_psi, is_bounded_family,
    random_section, section_with_phi, BoundedVerdict, NonAbelianCocycle, DEFAULT_ENUM_BUDGET,
};
use extlab::group::{named, AutTower, FiniteGroup, OuterMap, DEFAULT_AUT_BUDGET};
use extlab::obstruction::{build_zeta, f_set_member, f_set_pipeline, obstruction, psi_bijection, realize};
use extlab::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{problem, problems};

/// Inhomogeneous coboundary with trivial action on `Z/p`, written out directly.
fn delta(table: &[Vec<usize>], p: u64, n: usize, f: &[u64]) -> Vec<u64> {
    let q = table.len();
    let idx = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * q + x);
    let mut out = Vec::with_capacity(q.pow(n as u32 + 1));
    for k in 0..q.pow(n as u32 + 1) {
        let t: Vec<usize> = (0..=n).rev().map(|i| (k / q.pow(i as u32)) % q).collect();
        let mut s = f[idx(&t[1..])] as i64;
        for i in 1..=n {
            let mut m = t[..i - 1].to_vec();
            m.push(table[t[i - 1]][t[i]]);
            m.extend_from_slice(&t[i + 1..]);
            let v = f[idx(&m)] as i64;
            s += if i % 2 == 0 { v } else { -v };
        }
        let last = f[idx(&t[..n])] as i64;
        s += if (n + 1) % 2 == 0 { last } else { -last };
        out.push(s.rem_euclid(p as i64) as u64);
    }
    out
}

/// `|Z^n| / |B^n|` by enumerating every cochain.
fn brute_force_order(g: &FiniteGroup, p: u64, n: usize) -> u64 {
    let table = g.rows();
    let q = table.len();
    let count_cocycles = |deg: usize| {
        let size = q.pow(deg as u32);
        let total = p.pow(size as u32);
        (0..total)
            .filter(|&code| {
                let f: Vec<u64> = (0..size).map(|i| (code / p.pow(i as u32)) % p).collect();
                delta(&table, p, deg, &f).iter().all(|&x| x == 0)
            })
            .count() as u64
    };
    let z_n = count_cocycles(n);
    // |B^n| = |C^{n-1}| / |Z^{n-1}|
    let b_n = if n == 0 { 1 } else { p.pow(q.pow(n as u32 - 1) as u32) / count_cocycles(n - 1) };
    z_n / b_n
}

#[test]
fn cohomology_orders_match_brute_force() {
    for (name, p, n) in [("Z2", 2, 1), ("Z2", 2, 2), ("Z3", 3, 2), ("Z4", 2, 1), ("Z4", 2, 2), ("S3", 2, 1), ("V4", 2, 2), ("Z3", 2, 2)] {
        let g = named(name).unwrap();
        let m = CoeffModule::cyclic(p as i64);
        let h = Complex::new(&g, &m).cohomology(n, true, DEFAULT_COCHAIN_BUDGET).unwrap();
        assert_eq!(h.order(), Some(brute_force_order(&g, p, n)), "H^{n}({name}, Z/{p})");
    }
}

#[test]
fn known_integral_cohomology() {
    let cases: [(&str, usize, &[i64]); 6] = [
        ("Z2", 2, &[2]),
        ("Z4", 2, &[4]),
        ("V4", 2, &[2, 2]),
        ("V4", 3, &[2]),
        ("S3", 2, &[2]),
        ("S3", 4, &[6]),
    ];
    let z = CoeffModule::integers();
    for (name, n, want) in cases {
        let g = named(name).unwrap();
        let h = Complex::new(&g, &z).cohomology(n, true, DEFAULT_COCHAIN_BUDGET).unwrap();
        assert_eq!(h.invariant_factors, want, "H^{n}({name}, Z)");
    }
    let h0 = Complex::new(&named("S3").unwrap(), &z).cohomology(0, false, DEFAULT_COCHAIN_BUDGET).unwrap();
    assert_eq!(h0.invariant_factors, [0]);
    let h = Complex::new(&FiniteGroup::trivial(), &z).cohomology(2, true, DEFAULT_COCHAIN_BUDGET).unwrap();
    assert!(h.is_zero());
}

#[test]
fn q8_automorphisms_by_exhaustion() {
    let q8 = FiniteGroup::quaternion();
    let rest: Vec<usize> = q8.non_identity().collect();
    let mut count = 0;
    let mut perm = rest.clone();
    // Heap's algorithm over the non-identity elements
    let mut c = vec![0; perm.len()];
    let mut check = |perm: &[usize]| {
        let mut f = vec![q8.identity_index(); 8];
        for (&x, &y) in rest.iter().zip(perm) {
            f[x] = y;
        }
        if q8.elements().all(|a| q8.elements().all(|b| f[q8.mul(a, b)] == q8.mul(f[a], f[b]))) {
            count += 1;
        }
    };
    check(&perm);
    let mut i = 0;
    while i < perm.len() {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    assert_eq!(count, 24);
    let t = AutTower::new(&q8, DEFAULT_AUT_BUDGET).unwrap();
    assert_eq!(t.auts().len(), count);
    assert_eq!(t.inner().len(), 4);
    assert_eq!(t.out().order(), 6);
    assert!(!t.out().is_abelian());
}

#[test]
fn non_associative_loop_is_rejected() {
    let table = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    assert!(matches!(FiniteGroup::from_table(table), Err(Error::NotAGroup(_))));
}

#[test]
fn extensions_of_z2_by_z2_are_z4_and_v4() {
    let p = problem("Z2", "Z2", OuterMap::trivial(&named("Z2").unwrap()));
    let en = enumerate_extensions(&p, DEFAULT_ENUM_BUDGET).unwrap();
    let mut exponents: Vec<usize> = en
        .classes
        .iter()
        .map(|c| {
            let e = build_extension(&p, c).unwrap().e;
            e.elements().map(|x| e.element_order(x)).max().unwrap()
        })
        .collect();
    exponents.sort();
    assert_eq!(exponents, [2, 4]);
}

#[test]
fn extensions_of_z2_by_z3_with_inversion() {
    let g = named("Z2").unwrap();
    let n = named("Z3").unwrap();
    let t = AutTower::new(&n, DEFAULT_AUT_BUDGET).unwrap();
    let psi = OuterMap::new(&g, &t, vec![0, 1]).unwrap();
    let p = extlab::extension::ExtensionProblem::new(g, t, psi).unwrap();
    let en = enumerate_extensions(&p, DEFAULT_ENUM_BUDGET).unwrap();
    assert_eq!(en.classes.len(), 1);
    let e = build_extension(&p, &en.classes[0]).unwrap().e;
    assert!(!e.is_abelian() && e.order() == 6);
}

#[test]
fn induced_psi_ignores_the_section() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in problems("Z2", "Q8").iter().chain(&problems("V4", "D4")) {
        for c in enumerate_extensions(p, DEFAULT_ENUM_BUDGET).unwrap().classes {
            let ext = build_extension(p, &c).unwrap();
            let sigma = ext.sigma.clone().unwrap();
            assert_eq!(induced_psi(p, &ext, &sigma).unwrap(), p.psi);
            for _ in 0..5 {
                let alt = random_section(p, &ext, &sigma, &mut rng);
                assert_eq!(induced_psi(p, &ext, &alt).unwrap(), p.psi);
                let other = cocycle_of_section(p, &ext, &alt).unwrap();
                let back = section_with_phi(p, &ext, &alt, &c.phi).unwrap();
                let c2 = cocycle_of_section(p, &ext, &back).unwrap();
                assert_eq!(c2.phi, c.phi);
                assert!(equivalent(p, &c, &c2).unwrap().is_some());
                assert!(other.is_valid(p));
            }
        }
    }
}

#[test]
fn non_sections_are_rejected() {
    let p = problem("Z2", "Z2", OuterMap::trivial(&named("Z2").unwrap()));
    let c = NonAbelianCocycle::split(&p);
    let ext = build_extension(&p, &c).unwrap();
    let sigma = ext.sigma.clone().unwrap();
    let swapped = vec![sigma[1], sigma[0]];
    assert!(matches!(cocycle_of_section(&p, &ext, &swapped), Err(Error::NotASection(_))));
    let p3 = problem("Z2", "Z3", OuterMap::trivial(&named("Z2").unwrap()));
    let a = NonAbelianCocycle::split(&p3);
    let b = NonAbelianCocycle { e: a.e.clone(), phi: vec![0, 1] };
    assert!(matches!(equivalent(&p3, &a, &b), Err(Error::DifferentPhi { g: 1 })));
}

#[test]
fn cocycle_violations_are_located() {
    let p = problem("Z2", "Z2", OuterMap::trivial(&named("Z2").unwrap()));
    let bad = NonAbelianCocycle { e: vec![0, 1, 0, 0], phi: vec![0, 0] };
    assert_eq!(bad.validate(&p).unwrap().condition, "i");
    let p3 = problem("Z3", "Z3", OuterMap::trivial(&named("Z3").unwrap()));
    let mut e = vec![0; 9];
    e[4] = 1;
    let c = NonAbelianCocycle { e, phi: vec![0; 3] };
    assert_eq!(c.validate(&p3).unwrap().condition, "iii");
}

#[test]
fn zeta_for_q8_satisfies_the_conjugation_identity() {
    for p in problems("Z2", "Q8").iter().chain(&problems("V4", "Q8")) {
        let zeta = build_zeta(p, &p.lift).unwrap();
        for a in p.g.elements() {
            for b in p.g.elements() {
                assert_eq!(p.tower.conj(zeta[p.pair(a, b)]), p.twist(&p.lift, a, b));
            }
        }
    }
}

#[test]
fn non_homomorphic_lift_is_not_inner() {
    // a lift that is not multiplicative modulo inner automorphisms
    let p = problems("Z3", "Q8").into_iter().find(|p| !p.psi.is_trivial()).unwrap();
    let mut phi = p.lift.clone();
    phi[2] = phi[1];
    assert!(matches!(build_zeta(&p, &phi), Err(Error::NotInner { .. })));
}

#[test]
fn outer_map_rejects_non_homomorphisms() {
    let g = named("Z3").unwrap();
    let t = AutTower::new(&FiniteGroup::quaternion(), DEFAULT_AUT_BUDGET).unwrap();
    let involution = (0..t.out().order()).find(|&x| t.out().element_order(x) == 2).unwrap();
    assert!(matches!(OuterMap::new(&g, &t, vec![0, involution, involution]), Err(Error::NotAHomomorphism(_))));
}

#[test]
fn split_actions_give_vanishing_obstructions() {
    for p in problems("Z2", "D4") {
        let r = obstruction(&p, 20, 1).unwrap();
        assert!(r.vanishes());
        assert!(r.constructed.unwrap().is_valid(&p));
    }
    let p = problem("Z2", "Z4", OuterMap::trivial(&named("Z2").unwrap()));
    assert!(obstruction(&p, 5, 0).unwrap().o.is_zero());
}

#[test]
fn psi_twists_are_well_defined() {
    let p = problem("Z2", "Z2", OuterMap::trivial(&named("Z2").unwrap()));
    let base = NonAbelianCocycle::split(&p);
    let cx = p.complex();
    let h2 = cx.cohomology(2, true, DEFAULT_COCHAIN_BUDGET).unwrap();
    let alpha = &h2.representatives[0];
    let z = cx.from_fn(1, |t| vec![(t[0] == 1) as i64]);
    let shifted = cx.add(alpha, &cx.coboundary(&z)).unwrap();
    let (a, _) = psi_bijection(&p, alpha, &base).unwrap();
    let (b, _) = psi_bijection(&p, &shifted, &base).unwrap();
    assert!(equivalent(&p, &a, &b).unwrap().is_some());
    let (zero, _) = psi_bijection(&p, &cx.zero(2), &base).unwrap();
    assert_eq!(zero, base);
}

#[test]
fn realize_zero_over_z3() {
    let m = named("Z3").unwrap();
    let z = CoeffModule::integers();
    let r = realize(&m, &z, &Complex::new(&m, &z).zero(3)).unwrap();
    assert!(r.holds() && r.obstruction.is_zero());
}

#[test]
fn f_set_pipeline_through_z4() {
    let g = named("Z4").unwrap();
    let m = named("Z2").unwrap();
    let module = CoeffModule::cyclic(2);
    let cx = Complex::new(&m, &module);
    let alpha = cx.cohomology(3, true, DEFAULT_COCHAIN_BUDGET).unwrap().representatives[0].clone();
    let phi: Vec<usize> = g.elements().map(|x| x % 2).collect();
    let run = f_set_pipeline(&g, &phi, &m, &module, &alpha).unwrap();
    assert!(run.class_equal && run.realization.used_double);
    // the pullback to Z/4 of the generator of H^3(Z/2, Z/2) is trivial
    let (pulled, member) = f_set_member(&g, &phi, &m, &module, &alpha).unwrap();
    assert!(Complex::new(&g, &pulled).coboundary_witness(&member.class).unwrap().is_some());
    let trivial = vec![0; 4];
    let (pulled, member) = f_set_member(&g, &trivial, &m, &module, &alpha).unwrap();
    assert!(member.class.is_zero());
    assert!(Complex::new(&g, &pulled).coboundary_witness(&member.class).unwrap().is_some());
    let id: Vec<usize> = m.elements().collect();
    assert_eq!(f_set_member(&m, &id, &m, &module, &alpha).unwrap().1.class.values, alpha.values);
}

#[test]
fn registered_families() {
    assert!(matches!(is_bounded_family("heis_over_z").unwrap(), BoundedVerdict::NotBounded { .. }));
    assert!(matches!(is_bounded_family("heis_semidirect").unwrap(), BoundedVerdict::NotBounded { .. }));
    assert!(is_bounded_family("heis_direct").unwrap().is_bounded());
    assert!(matches!(is_bounded_family("wreath"), Err(Error::UnknownFamily(_))));
}
