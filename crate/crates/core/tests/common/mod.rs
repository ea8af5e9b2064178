#![allow(dead_code)]

use extlab::extension::{build_extension, enumerate_extensions, random_section, ExtensionProblem, DEFAULT_ENUM_BUDGET};
use extlab::group::{named, AutTower, FiniteGroup, OuterMap, DEFAULT_AUT_BUDGET};
use extlab::quasihom::SectionMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A map between finite groups given by its table of values.
pub struct FiniteSection {
    pub name: String,
    pub domain: FiniteGroup,
    pub codomain: FiniteGroup,
    pub values: Vec<usize>,
}

impl FiniteSection {
    pub fn map(&self) -> SectionMap<'_, FiniteGroup, FiniteGroup> {
        SectionMap::table(self.name.clone(), &self.domain, &self.codomain, self.values.clone())
    }
}

fn all_maps(dom: &FiniteGroup, cod: &FiniteGroup, tag: &str) -> Vec<FiniteSection> {
    let (m, n) = (dom.order(), cod.order());
    (0..n.pow(m as u32))
        .map(|mut k| {
            let values: Vec<usize> = (0..m)
                .map(|_| {
                    let v = k % n;
                    k /= n;
                    v
                })
                .collect();
            FiniteSection { name: format!("{tag}{values:?}"), domain: dom.clone(), codomain: cod.clone(), values }
        })
        .collect()
}

pub fn problem(g: &str, n: &str, psi: OuterMap) -> ExtensionProblem {
    let g = named(g).unwrap();
    let tower = AutTower::new(&named(n).unwrap(), DEFAULT_AUT_BUDGET).unwrap();
    ExtensionProblem::new(g, tower, psi).unwrap()
}

pub fn problems(g: &str, n: &str) -> Vec<ExtensionProblem> {
    let gg = named(g).unwrap();
    let tower = AutTower::new(&named(n).unwrap(), DEFAULT_AUT_BUDGET).unwrap();
    OuterMap::all(&gg, &tower, DEFAULT_ENUM_BUDGET)
        .unwrap()
        .into_iter()
        .map(|psi| ExtensionProblem::new(gg.clone(), tower.clone(), psi).unwrap())
        .collect()
}

/// Every map `Z/2 → Z/4` and `Z/3 → S3`, plus the distinguished and a random
/// section of each extension of `Z/2` by `Q8` and of `Z/2 × Z/2` by `Z/2`.
pub fn finite_suite() -> Vec<FiniteSection> {
    let mut out = all_maps(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4), "z2_to_z4");
    out.extend(all_maps(&FiniteGroup::cyclic(3), &FiniteGroup::symmetric(3), "z3_to_s3"));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (g, n) in [("Z2", "Q8"), ("V4", "Z2")] {
        for p in problems(g, n) {
            for (k, c) in enumerate_extensions(&p, DEFAULT_ENUM_BUDGET).unwrap().classes.iter().enumerate() {
                let ext = build_extension(&p, c).unwrap();
                let sigma = ext.sigma.clone().unwrap();
                let alt = random_section(&p, &ext, &sigma, &mut rng);
                let tag = format!("ext_{g}_{n}_psi{:?}_class{k}", p.psi.images);
                for (name, values) in [(format!("{tag}_sigma"), sigma), (format!("{tag}_random"), alt)] {
                    out.push(FiniteSection { name, domain: p.g.clone(), codomain: ext.e.clone(), values });
                }
            }
        }
    }
    out
}
