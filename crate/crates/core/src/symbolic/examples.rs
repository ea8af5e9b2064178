//! The Heisenberg examples: sections, embeddings and scripted transcripts.

use num_bigint::BigInt;
use serde::Serialize;

use super::center::{center_criterion_solver, Family};
use super::heis::{omega, to_vec2, vec2, FreeAbelian, HeisByZ2, HeisElement, Heisenberg, SemidirectElement};
use crate::assertion::Assertion;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::quasihom::{defect, phi_sigma, DefectReport, Embedding, SectionMap, DEFAULT_PAIR_BUDGET};

pub const Z2: FreeAbelian = FreeAbelian { rank: 2 };
pub const Z1: FreeAbelian = FreeAbelian { rank: 1 };

/// `σ_1(g) = (1, g)`
pub fn sigma1<'a>(dom: &'a FreeAbelian, ext: &'a HeisByZ2) -> SectionMap<'a, FreeAbelian, HeisByZ2> {
    SectionMap::new("sigma1", dom, ext, |g: &Vec<i64>| SemidirectElement::new(Heisenberg.identity(), to_vec2(g)))
}

/// `σ_2(g) = ([1, -g], g)`
pub fn sigma2<'a>(dom: &'a FreeAbelian, ext: &'a HeisByZ2) -> SectionMap<'a, FreeAbelian, HeisByZ2> {
    SectionMap::new("sigma2", dom, ext, |g: &Vec<i64>| {
        SemidirectElement::new(HeisElement::new(1, -g[0], -g[1]), to_vec2(g))
    })
}

/// `g ↦ [0, g]` into the Heisenberg group.
pub fn heis_central<'a>(dom: &'a FreeAbelian, heis: &'a Heisenberg) -> SectionMap<'a, FreeAbelian, Heisenberg> {
    SectionMap::new("heis_central", dom, heis, |g: &Vec<i64>| HeisElement::new(0, g[0], g[1]))
}

/// `g ↦ (1, g)` into `Heis × Z^2`.
pub fn direct_product<'a>(dom: &'a FreeAbelian, ext: &'a HeisByZ2) -> SectionMap<'a, FreeAbelian, HeisByZ2> {
    assert!(!ext.twisted, "direct product section needs the untwisted product");
    SectionMap::new("direct_product", dom, ext, |g: &Vec<i64>| {
        SemidirectElement::new(Heisenberg.identity(), to_vec2(g))
    })
}

/// `Heis = Heis × {0}` inside `Heis × Z^2` or `Heis ⋊ Z^2`.
pub struct HeisInProduct<'a> {
    pub ext: &'a HeisByZ2,
}

impl Embedding for HeisInProduct<'_> {
    type N = Heisenberg;
    type E = HeisByZ2;

    fn sub(&self) -> &Heisenberg {
        &Heisenberg
    }

    fn ext(&self) -> &HeisByZ2 {
        self.ext
    }

    fn include(&self, n: &HeisElement) -> SemidirectElement {
        SemidirectElement::new(n.clone(), vec2(0, 0))
    }

    fn restrict(&self, e: &SemidirectElement) -> Option<HeisElement> {
        (e.n == vec2(0, 0)).then(|| e.h.clone())
    }

    fn probes(&self) -> Vec<HeisElement> {
        vec![HeisElement::new(1, 0, 0), HeisElement::new(0, 1, 0), HeisElement::new(0, 0, 1)]
    }
}

/// The center `Z = {[c, 0]}` of the Heisenberg group.
pub struct CenterOfHeis;

impl Embedding for CenterOfHeis {
    type N = FreeAbelian;
    type E = Heisenberg;

    fn sub(&self) -> &FreeAbelian {
        &Z1
    }

    fn ext(&self) -> &Heisenberg {
        &Heisenberg
    }

    fn include(&self, n: &Vec<i64>) -> HeisElement {
        HeisElement::new(n[0], 0, 0)
    }

    fn restrict(&self, e: &HeisElement) -> Option<Vec<i64>> {
        (e.z == vec2(0, 0)).then(|| vec![i64::try_from(&e.c).expect("small central coordinate")])
    }

    fn probes(&self) -> Vec<Vec<i64>> {
        vec![vec![1]]
    }
}

/// Defect of `σ_2` in closed form: `([1 - ω(g,h), 0], 0)`.
pub fn sigma2_defect_derived(g: &[i64], h: &[i64]) -> SemidirectElement {
    let w = omega(&to_vec2(g), &to_vec2(h));
    SemidirectElement::new(HeisElement::central(BigInt::from(1) - w), vec2(0, 0))
}

/// The defect formula as displayed for `σ_2`: `([ω(g,h), 0], 0)`.
pub fn sigma2_defect_stated(g: &[i64], h: &[i64]) -> SemidirectElement {
    SemidirectElement::new(HeisElement::central(omega(&to_vec2(g), &to_vec2(h))), vec2(0, 0))
}

/// First pair in the ball where `s.d` differs from `expected`.
pub fn first_mismatch<C: Group>(
    s: &SectionMap<'_, FreeAbelian, C>,
    radius: usize,
    expected: impl Fn(&[i64], &[i64]) -> C::Elem,
) -> Option<(Vec<i64>, Vec<i64>, C::Elem, C::Elem)> {
    use crate::quasihom::Window;
    let ball = s.domain.ball(radius);
    for g in &ball {
        for h in &ball {
            let got = s.d(g, h);
            let want = expected(g, h);
            if got != want {
                return Some((g.clone(), h.clone(), got, want));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub name: String,
    pub assertions: Vec<Assertion>,
}

impl Transcript {
    pub fn passed(&self) -> bool {
        crate::assertion::all_passed(&self.assertions)
    }

    /// One JSON object per assertion.
    pub fn json_lines(&self) -> String {
        self.assertions.iter().map(|a| serde_json::to_string(a).expect("serializable") + "\n").collect()
    }
}

const DEFECT_RADIUS: usize = 10;
const PHI_RADIUS: usize = 5;

pub fn run_example(name: &str) -> Result<Transcript> {
    let assertions = match name {
        "heis_over_z" | "exmp_5_1" => heis_over_z(),
        "heis_by_heis" | "exmp_5_2" => heis_by_heis(),
        _ => return Err(Error::Input(format!("unknown example {name:?}; expected heis_over_z or heis_by_heis"))),
    }?;
    Ok(Transcript { name: name.to_string(), assertions })
}

fn growth_text(r: &DefectReport<impl Sized>) -> String {
    format!("|D| by radius {:?}, |D̄| by radius {:?}", r.growth, r.dbar_growth)
}

fn heis_over_z() -> Result<Vec<Assertion>> {
    let mut out = Vec::new();
    let heis = Heisenberg;

    // the extension built from e = ω and trivial φ has the Heisenberg law
    let samples: Vec<HeisElement> = (-2..=2)
        .flat_map(|c| (-2..=2).flat_map(move |x| (-2..=2).map(move |y| HeisElement::new(c, x, y))))
        .collect();
    let from_cocycle = |a: &HeisElement, b: &HeisElement| HeisElement {
        c: &a.c + &b.c + omega(&a.z, &b.z),
        z: [&a.z[0] + &b.z[0], &a.z[1] + &b.z[1]],
    };
    let law = samples.iter().all(|a| samples.iter().all(|b| heis.mul(a, b) == from_cocycle(a, b)));
    out.push(Assertion::check(
        "heis_law_from_det_cocycle",
        "Heis is the extension of Z^2 by Z with cocycle ω = det and trivial action",
        law,
        Some(format!("{} sample pairs", samples.len() * samples.len())),
    ));

    let s = heis_central(&Z2, &heis);
    let mismatch = first_mismatch(&s, DEFECT_RADIUS, |g, h| HeisElement::central(omega(&to_vec2(g), &to_vec2(h))));
    out.push(Assertion::check(
        "central_section_defect_is_det",
        "the section g ↦ [0,g] has defect [ω(g,h), 0]",
        mismatch.is_none(),
        Some(match &mismatch {
            None => format!("all pairs in the radius-{DEFECT_RADIUS} ball"),
            Some((g, h, got, want)) => format!("g={g:?} h={h:?}: got {got}, expected {want}"),
        }),
    ));

    let rep = defect(&s, DEFECT_RADIUS, DEFAULT_PAIR_BUDGET)?;
    out.push(Assertion::check(
        "central_section_defect_grows",
        "the section g ↦ [0,g] is not a quasihomomorphism",
        DefectReport::<HeisElement>::strictly_increasing(&rep.growth),
        Some(growth_text(&rep)),
    ));

    let phi = phi_sigma(&s, &CenterOfHeis, PHI_RADIUS)?;
    out.push(Assertion::check(
        "psi_trivial",
        "Z is central in Heis, so the induced action on N = Z is trivial",
        phi.trivial,
        Some(format!("{} window elements, {} distinct actions", phi.actions.len(), phi.distinct)),
    ));

    let zz = FreeAbelian { rank: 3 };
    let split = SectionMap::new("split", &Z2, &zz, |g: &Vec<i64>| vec![0, g[0], g[1]]);
    let split_rep = defect(&split, DEFECT_RADIUS, DEFAULT_PAIR_BUDGET)?;
    out.push(Assertion::check(
        "direct_product_section_is_homomorphism",
        "the direct product Z × Z^2 has a quasihomomorphic section inducing a finite map to Aut(N)",
        split_rep.defects == vec![zz.identity()],
        Some(format!("D = {:?}", split_rep.defects)),
    ));

    let (a, b) = (HeisElement::new(0, 1, 0), HeisElement::new(0, 0, 1));
    let nonabelian = heis.mul(&a, &b) != heis.mul(&b, &a);
    out.push(Assertion::check(
        "heis_not_abelian",
        "Heis is not abelian",
        nonabelian,
        Some(format!("{a}{b} = {}, {b}{a} = {}", heis.mul(&a, &b), heis.mul(&b, &a))),
    ));

    out.push(Assertion::cited("omega_generates_h2", "ω generates H^2(Z^2, Z)"));
    out.push(Assertion::cited(
        "comparison_map_trivial",
        "the comparison map H^2_b(Z^2, Z) → H^2(Z^2, Z) is zero",
    ));
    out.push(Assertion::check(
        "heis_extension_not_bounded",
        "bounded extensions are classified by im(c^2) = 0, so the only one is the abelian direct product; Heis is not abelian, hence not bounded",
        nonabelian && law && split_rep.defects.len() == 1,
        Some("∅ ≠ E_b(Z^2, Z, id) ⊊ E(Z^2, Z, id)".into()),
    ));
    Ok(out)
}

fn heis_by_heis() -> Result<Vec<Assertion>> {
    let mut out = Vec::new();
    let semi = HeisByZ2::SEMIDIRECT;
    let emb = HeisInProduct { ext: &semi };

    let s1 = sigma1(&Z2, &semi);
    let r1 = defect(&s1, DEFECT_RADIUS, DEFAULT_PAIR_BUDGET)?;
    out.push(Assertion::check(
        "sigma1_is_homomorphism",
        "σ_1: g ↦ (1,g) is a homomorphism, hence a quasihomomorphism",
        r1.defects == vec![semi.identity()] && r1.dbar == vec![semi.identity()],
        Some(format!("D = {{identity}} on the radius-{DEFECT_RADIUS} ball: {}", r1.defects.len() == 1)),
    ));

    let p1 = phi_sigma(&s1, &emb, PHI_RADIUS)?;
    let inner = p1.actions.iter().all(|(g, imgs)| {
        let c = HeisElement::new(0, g[0], g[1]);
        emb.probes().iter().zip(imgs).all(|(n, y)| Heisenberg.conj(&c, n) == *y)
    });
    out.push(Assertion::check(
        "sigma1_phi_image_infinite",
        "φ_{σ_1} has the full infinite group of inner automorphisms as image",
        inner && p1.distinct == p1.actions.len() && p1.distinct >= 100,
        Some(format!(
            "{} distinct automorphisms on the radius-{PHI_RADIUS} ball ({} elements), each conjugation by [0,g]",
            p1.distinct,
            p1.actions.len()
        )),
    ));

    let s2 = sigma2(&Z2, &semi);
    let p2 = phi_sigma(&s2, &emb, PHI_RADIUS)?;
    out.push(Assertion::check(
        "sigma2_phi_trivial",
        "σ_2: g ↦ ([1,-g],g) induces a trivial map to Aut(Heis)",
        p2.trivial,
        Some(format!("{} window elements", p2.actions.len())),
    ));

    let stated = first_mismatch(&s2, DEFECT_RADIUS, sigma2_defect_stated);
    out.push(Assertion::check(
        "sigma2_defect_stated_formula",
        "σ_2(g)σ_2(h)σ_2(gh)^{-1} = ([ω(g,h),0],0) as displayed",
        stated.is_none(),
        Some(match &stated {
            None => format!("all pairs in the radius-{DEFECT_RADIUS} ball"),
            Some((g, h, got, want)) => format!("g={g:?} h={h:?}: computed {got}, displayed formula gives {want}"),
        }),
    ));
    let derived = first_mismatch(&s2, DEFECT_RADIUS, sigma2_defect_derived);
    out.push(Assertion::check(
        "sigma2_defect_closed_form",
        "σ_2(g)σ_2(h)σ_2(gh)^{-1} = ([1 - ω(g,h),0],0) under the stated group law",
        derived.is_none(),
        Some(match &derived {
            None => format!("all pairs in the radius-{DEFECT_RADIUS} ball"),
            Some((g, h, got, want)) => format!("g={g:?} h={h:?}: computed {got}, expected {want}"),
        }),
    ));

    let r2 = defect(&s2, DEFECT_RADIUS, DEFAULT_PAIR_BUDGET)?;
    out.push(Assertion::check(
        "sigma2_defect_unbounded",
        "D(σ_2) is unbounded, so σ_2 is not a quasihomomorphism",
        DefectReport::<SemidirectElement>::strictly_increasing(&r2.growth),
        Some(growth_text(&r2)),
    ));

    let direct = center_criterion_solver(Family::Direct);
    let twisted = center_criterion_solver(Family::Semidirect);
    out.push(Assertion::check(
        "center_direct_rank_3",
        "Z(Heis × Z^2) ≅ Z^3",
        direct.rank == 3 && direct.cross_check.agrees,
        Some(format!("generators {:?}; ball check {:?}", direct.generators, direct.cross_check)),
    ));
    out.push(Assertion::check(
        "center_semidirect_rank_1",
        "Z(Heis ⋊ Z^2) = {([c,0],0)} ≅ Z",
        twisted.rank == 1 && twisted.generators == vec![vec![1, 0, 0, 0, 0]] && twisted.cross_check.agrees,
        Some(format!("generators {:?}; ball check {:?}", twisted.generators, twisted.cross_check)),
    ));
    out.push(Assertion::check(
        "products_not_isomorphic",
        "Heis ⋊ Z^2 is not isomorphic to Heis × Z^2, so the extensions are not equivalent",
        direct.rank != twisted.rank,
        None,
    ));

    let fixes_center = p1.actions.iter().all(|(_, imgs)| imgs[0] == HeisElement::new(1, 0, 0));
    out.push(Assertion::check(
        "action_on_center_trivial",
        "Z^2 acts trivially on Z(Heis) since the automorphisms are inner",
        fixes_center,
        None,
    ));
    out.push(Assertion::cited(
        "comparison_map_trivial",
        "the comparison map H^2_b(Z^2, Z) → H^2(Z^2, Z) is zero, so Heis × Z^2 is the only bounded extension",
    ));
    out.push(Assertion::check(
        "no_section_with_both_conditions",
        "σ_1 satisfies the quasihomomorphism condition and σ_2 the finite-image condition, but the extension is not bounded",
        r1.defects.len() == 1 && p1.distinct >= 100 && p2.trivial && direct.rank != twisted.rank,
        Some("σ_1: finite defect, infinite φ image; σ_2: trivial φ, growing defect".into()),
    ));
    Ok(out)
}
