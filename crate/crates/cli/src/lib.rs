//! Commands behind the `extlab` binary. Each one produces a [`Report`].

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use extlab::assertion::{all_passed, Assertion};
use extlab::cochain::{Cochain, CochainSpec, Complex, DEFAULT_COCHAIN_BUDGET};
use extlab::coeff::{CoeffModule, ModuleSpec};
use extlab::extension::{
    build_extension, check_equivalence_map, cocycle_of_section, enumerate_extensions, CocycleSpec, Equivalence,
    ExtensionProblem, DEFAULT_ENUM_BUDGET,
};
use extlab::group::{named, AutTower, FiniteGroup, GroupSpec, OuterMap, DEFAULT_AUT_BUDGET};
use extlab::obstruction::{obstruction, psi_bijection, realize};
use extlab::quasihom::{defect, DefectReport, SectionMap, Window, DEFAULT_PAIR_BUDGET};
use extlab::symbolic::examples::{direct_product, heis_central, run_example, sigma1, sigma2, Z2};
use extlab::symbolic::{HeisByZ2, Heisenberg};
use extlab::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "extlab", version, about = "Exact computations with group extensions and cohomology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Options {
    /// Cap on automorphisms enumerated for a group.
    #[arg(long, global = true, default_value_t = DEFAULT_AUT_BUDGET)]
    pub budget_auts: u64,
    /// Cap on search nodes when enumerating extensions.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub budget_enum: u64,
    /// Window radius for defect scans.
    #[arg(long, global = true, default_value_t = 10)]
    pub radius: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Invariant factors of H^n(G, M).
    Cohomology {
        /// Group: a JSON file or `builtin:NAME` (Z4, S3, Q8, D4, V4, Z2xZ2, ...).
        group: String,
        /// Module: a JSON file or `builtin:Z`, `builtin:Z/n`, `builtin:sign`.
        module: String,
        degree: usize,
    },
    /// Equivalence classes of extensions of G by N inducing a given outer action.
    Extensions {
        group: String,
        normal: String,
        /// `trivial`, `index:K`, a JSON list of Out(N) indices, or a file holding one.
        #[arg(default_value = "trivial")]
        psi: String,
    },
    /// The obstruction class of an outer action.
    Obstruction {
        group: String,
        normal: String,
        /// As for `extensions`; `all` runs every outer action.
        #[arg(default_value = "trivial")]
        psi: String,
    },
    /// Defect sets of a section over a window.
    Defect {
        #[arg(value_parser = ["heis_sigma1", "heis_sigma2", "heis_central", "direct_product"])]
        scenario: String,
    },
    /// Realizes a normalized 3-cocycle of a finite group as an obstruction.
    Realize {
        group: String,
        module: String,
        /// A cochain JSON file, `zero`, or `class:K` for the K-th class of H^3.
        alpha: String,
    },
    /// Scripted transcript of a worked example.
    Example {
        #[arg(value_parser = ["heis_over_z", "heis_by_heis", "exmp_5_1", "exmp_5_2"])]
        name: String,
    },
    /// A quick run over small fixed inputs.
    Selftest,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Command,
    pub config: Options,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.error.is_none() && all_passed(&self.assertions)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for a in &self.assertions {
            out.push_str(&a.line());
            out.push('\n');
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        let failed = self.assertions.iter().filter(|a| !a.passed).count();
        out.push_str(&format!(
            "{}: {} assertions, {} failed ({} ms)\n",
            if self.passed() { "OK" } else { "FAILED" },
            self.assertions.len(),
            failed,
            self.timing_ms
        ));
        out
    }
}

pub fn run(cli: &Cli) -> Report {
    let start = Instant::now();
    let mut assertions = Vec::new();
    let res = dispatch(&cli.command, &cli.opts, &mut assertions);
    let (results, error) = match res {
        Ok(v) => (v, None),
        Err(e) => (Value::Null, Some(e.to_string())),
    };
    Report {
        command: cli.command.clone(),
        config: cli.opts.clone(),
        results,
        assertions,
        error,
        timing_ms: start.elapsed().as_millis(),
    }
}

fn dispatch(cmd: &Command, o: &Options, out: &mut Vec<Assertion>) -> Result<Value> {
    match cmd {
        Command::Cohomology { group, module, degree } => {
            let g = load_group(group)?;
            let m = load_module(module, &g)?;
            cmd_cohomology(&g, &m, *degree, out)
        }
        Command::Extensions { group, normal, psi } => {
            let p = load_problem(group, normal, psi, o)?;
            cmd_extensions(&p, o, out)
        }
        Command::Obstruction { group, normal, psi } => {
            let g = load_group(group)?;
            let n = load_group(normal)?;
            let tower = AutTower::new(&n, o.budget_auts)?;
            let psis = if psi == "all" {
                OuterMap::all(&g, &tower, o.budget_enum)?
            } else {
                vec![load_psi(psi, &g, &tower, o)?]
            };
            let mut results = Vec::new();
            for psi in psis {
                let p = ExtensionProblem::new(g.clone(), tower.clone(), psi)?;
                results.push(cmd_obstruction(&p, o, out)?);
            }
            Ok(Value::Array(results))
        }
        Command::Defect { scenario } => cmd_defect(scenario, o.radius, out),
        Command::Realize { group, module, alpha } => {
            let g = load_group(group)?;
            let m = load_module(module, &g)?;
            let a = load_alpha(alpha, &g, &m)?;
            cmd_realize(&g, &m, &a, out)
        }
        Command::Example { name } => {
            let t = run_example(name)?;
            out.extend(t.assertions.iter().cloned());
            Ok(json!({ "example": t.name }))
        }
        Command::Selftest => selftest(o, out),
    }
}

fn context(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| context(path, e))?;
    serde_json::from_str(&text).map_err(|e| context(path, format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn load_group(arg: &str) -> Result<FiniteGroup> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return named(name);
    }
    let path = Path::new(arg);
    if path.exists() {
        let spec: GroupSpec = read_json(path)?;
        return spec.build().map_err(|e| context(path, e));
    }
    named(arg)
}

pub fn load_module(arg: &str, g: &FiniteGroup) -> Result<CoeffModule> {
    let builtin = arg.strip_prefix("builtin:").or((!Path::new(arg).exists()).then_some(arg));
    let m = match builtin {
        Some("Z") => CoeffModule::integers(),
        Some("sign") => {
            let z2 = FiniteGroup::cyclic(2);
            let f = g
                .homomorphisms(&z2, DEFAULT_ENUM_BUDGET)?
                .into_iter()
                .find(|f| f.iter().any(|&x| x != 0))
                .ok_or_else(|| Error::InvalidModule("the group has no nontrivial map to Z/2".into()))?;
            let sign: Vec<bool> = f.iter().map(|&x| x == 1).collect();
            CoeffModule::sign(&sign)
        }
        Some(name) => {
            let d = name
                .strip_prefix("Z/")
                .and_then(|d| d.parse::<i64>().ok())
                .filter(|&d| d >= 1)
                .ok_or_else(|| Error::Input(format!("unknown module {name:?}; expected Z, Z/n, sign or a file")))?;
            CoeffModule::cyclic(d)
        }
        None => {
            let path = Path::new(arg);
            let spec: ModuleSpec = read_json(path)?;
            spec.build(g).map_err(|e| context(path, e))?
        }
    };
    m.validate(g)?;
    Ok(m)
}

pub fn load_psi(arg: &str, g: &FiniteGroup, tower: &AutTower, o: &Options) -> Result<OuterMap> {
    if arg == "trivial" {
        return Ok(OuterMap::trivial(g));
    }
    if let Some(k) = arg.strip_prefix("index:") {
        let k: usize = k.parse().map_err(|_| Error::Input(format!("bad index in {arg:?}")))?;
        let all = OuterMap::all(g, tower, o.budget_enum)?;
        let n = all.len();
        return all.into_iter().nth(k).ok_or_else(|| Error::Input(format!("index {k} out of range ({n} outer actions)")));
    }
    let images: Vec<usize> = if Path::new(arg).exists() {
        read_json(Path::new(arg))?
    } else {
        serde_json::from_str(arg).map_err(|e| Error::Input(format!("psi {arg:?}: {e}")))?
    };
    OuterMap::new(g, tower, images)
}

fn load_problem(group: &str, normal: &str, psi: &str, o: &Options) -> Result<ExtensionProblem> {
    let g = load_group(group)?;
    let n = load_group(normal)?;
    let tower = AutTower::new(&n, o.budget_auts)?;
    let psi = load_psi(psi, &g, &tower, o)?;
    ExtensionProblem::new(g, tower, psi)
}

fn load_alpha(arg: &str, g: &FiniteGroup, m: &CoeffModule) -> Result<Cochain> {
    let c = Complex::new(g, m);
    if arg == "zero" {
        return Ok(c.zero(3));
    }
    if let Some(k) = arg.strip_prefix("class:") {
        let k: usize = k.parse().map_err(|_| Error::Input(format!("bad class index in {arg:?}")))?;
        let h = c.cohomology(3, true, DEFAULT_COCHAIN_BUDGET)?;
        let classes = h.torsion_classes(&c);
        let n = classes.len();
        return classes.into_iter().nth(k).ok_or_else(|| Error::Input(format!("class {k} out of range ({n} classes)")));
    }
    let path = Path::new(arg);
    let spec: CochainSpec = read_json(path)?;
    let a = spec.build(&c).map_err(|e| context(path, e))?;
    Ok(c.normalize_flag(a))
}

fn cmd_cohomology(g: &FiniteGroup, m: &CoeffModule, n: usize, out: &mut Vec<Assertion>) -> Result<Value> {
    let c = Complex::new(g, m);
    let full = c.cohomology(n, false, DEFAULT_COCHAIN_BUDGET)?;
    let norm = c.cohomology(n, true, DEFAULT_COCHAIN_BUDGET)?;
    out.push(Assertion::check(
        "normalized_complex_agrees",
        "normalized and full complexes give the same cohomology",
        full.invariant_factors == norm.invariant_factors,
        Some(format!("full {:?}, normalized {:?}", full.invariant_factors, norm.invariant_factors)),
    ));
    let reps_ok = norm.representatives.iter().all(|r| c.coboundary(r).is_zero());
    out.push(Assertion::check("representatives_are_cocycles", "each generator is a cocycle", reps_ok, None));
    Ok(json!({
        "degree": n,
        "invariant_factors": norm.invariant_factors,
        "order": norm.order(),
        "representatives": norm.representatives.iter().map(|r| CochainSpec::of(&c, r)).collect::<Vec<_>>(),
    }))
}

fn cmd_extensions(p: &ExtensionProblem, o: &Options, out: &mut Vec<Assertion>) -> Result<Value> {
    let en = enumerate_extensions(p, o.budget_enum)?;
    let cx = p.complex();
    let h2 = cx.cohomology(2, true, DEFAULT_COCHAIN_BUDGET)?;
    let ob = obstruction(p, 0, o.seed)?;
    out.push(Assertion::check(
        "existence_matches_obstruction",
        "extensions exist exactly when the obstruction class vanishes",
        ob.vanishes() == !en.classes.is_empty(),
        Some(format!("class zero: {}, classes found: {}", ob.vanishes(), en.classes.len())),
    ));
    if let Some(base) = en.classes.first() {
        out.push(Assertion::check(
            "classes_match_h2",
            "classes correspond bijectively to H^2(G, Z(N))",
            h2.order() == Some(en.classes.len() as u64),
            Some(format!("|H^2| = {:?}, classes = {}", h2.order(), en.classes.len())),
        ));
        let eq = Equivalence::new(p)?;
        let mut images = Vec::new();
        for alpha in h2.torsion_classes(&cx) {
            images.push(psi_bijection(p, &alpha, base)?.0);
        }
        let mut injective = true;
        for i in 0..images.len() {
            for j in 0..i {
                injective &= eq.witness(&images[i], &images[j])?.is_none();
            }
        }
        let mut surjective = true;
        for c in &en.classes {
            let mut hit = false;
            for x in &images {
                hit |= eq.witness(c, x)?.is_some();
            }
            surjective &= hit;
        }
        out.push(Assertion::check(
            "psi_bijection",
            "twisting a base extension by H^2 classes hits every class exactly once",
            injective && surjective,
            Some(format!("injective {injective}, surjective {surjective}")),
        ));
        let mut roundtrip = true;
        for c in &en.classes {
            let ext = build_extension(p, c)?;
            let back = cocycle_of_section(p, &ext, ext.sigma.as_ref().expect("built extensions carry a section"))?;
            let rebuilt = build_extension(p, &back)?;
            roundtrip &= match eq.witness(c, &back)? {
                Some(z) => check_equivalence_map(p, &ext, &rebuilt, &z),
                None => false,
            };
        }
        out.push(Assertion::check(
            "roundtrip",
            "build, extract along the distinguished section, rebuild: equivalent with explicit witness",
            roundtrip,
            None,
        ));
    }
    out.push(Assertion::note(
        "finite_base",
        "comparison map",
        "G is finite, so every cochain is bounded and the image of the comparison map is all of H^2",
    ));
    Ok(json!({
        "classes": en.classes.len(),
        "valid_cocycles": en.valid_cocycles,
        "nodes_visited": en.nodes_visited,
        "h2_invariant_factors": h2.invariant_factors,
        "representatives": en.classes.iter().map(|c| CocycleSpec::of(p, c)).collect::<Vec<_>>(),
    }))
}

fn cmd_obstruction(p: &ExtensionProblem, o: &Options, out: &mut Vec<Assertion>) -> Result<Value> {
    let r = obstruction(p, extlab::obstruction::DEFAULT_TRIALS, o.seed)?;
    let cx = p.complex();
    let psi = &p.psi.images;
    out.push(Assertion::check(format!("cocycle psi={psi:?}"), "the obstruction is a 3-cocycle", r.cocycle, None));
    out.push(Assertion::check(
        format!("degenerate_zero psi={psi:?}"),
        "the obstruction vanishes when an argument is 1",
        r.degenerate_zero,
        None,
    ));
    out.push(Assertion::check(
        format!("choice_invariance psi={psi:?}"),
        "the class does not depend on the lift or on ζ",
        r.invariance.holds(),
        Some(format!("{}/{} trials agree", r.invariance.agreed, r.invariance.trials)),
    ));
    let en = enumerate_extensions(p, o.budget_enum)?;
    out.push(Assertion::check(
        format!("vanishing_iff_existence psi={psi:?}"),
        "the class vanishes exactly when an extension exists",
        r.vanishes() == !en.classes.is_empty(),
        Some(format!("class zero {}, classes {}", r.vanishes(), en.classes.len())),
    ));
    Ok(json!({
        "psi": psi,
        "center_invariants": r.center_invariants,
        "zeta": r.zeta,
        "obstruction": CochainSpec::of(&cx, &r.o),
        "class_zero": r.vanishes(),
        "beta": r.class_zero.as_ref().map(|b| CochainSpec::of(&cx, b)),
        "constructed": r.constructed.as_ref().map(|c| CocycleSpec::of(p, c)),
        "invariance": r.invariance,
    }))
}

fn defect_json<D: Window, C: extlab::group::Group>(s: &SectionMap<'_, D, C>, r: &DefectReport<C::Elem>) -> Value
where
    C::Elem: Serialize,
{
    json!({
        "section": s.name,
        "radius": r.radius,
        "growth": r.growth,
        "dbar_growth": r.dbar_growth,
        "defect_count": r.defects.len(),
        "dbar_count": r.dbar.len(),
        "defects_sample": r.defects.iter().take(8).collect::<Vec<_>>(),
        "verdict": r.verdict(),
    })
}

fn cmd_defect(scenario: &str, radius: usize, out: &mut Vec<Assertion>) -> Result<Value> {
    let semi = HeisByZ2::SEMIDIRECT;
    let direct = HeisByZ2::DIRECT;
    let increasing = DefectReport::<()>::strictly_increasing;
    match scenario {
        "heis_sigma1" => {
            let s = sigma1(&Z2, &semi);
            let r = defect(&s, radius, DEFAULT_PAIR_BUDGET)?;
            let id = extlab::group::Group::identity(&semi);
            out.push(Assertion::check(
                "defect_is_identity",
                "σ_1 is a homomorphism",
                r.defects == [id.clone()] && r.dbar == [id],
                Some(format!("|D| = {}, |D̄| = {}", r.defects.len(), r.dbar.len())),
            ));
            Ok(defect_json(&s, &r))
        }
        "heis_sigma2" => {
            let s = sigma2(&Z2, &semi);
            let r = defect(&s, radius, DEFAULT_PAIR_BUDGET)?;
            out.push(Assertion::check(
                "defect_grows",
                "σ_2 has unbounded defect",
                increasing(&r.growth) && increasing(&r.dbar_growth),
                Some(format!("|D| {:?}, |D̄| {:?}", r.growth, r.dbar_growth)),
            ));
            Ok(defect_json(&s, &r))
        }
        "heis_central" => {
            let s = heis_central(&Z2, &Heisenberg);
            let r = defect(&s, radius, DEFAULT_PAIR_BUDGET)?;
            out.push(Assertion::check(
                "defect_grows",
                "the central section of Heis over Z^2 has unbounded defect",
                increasing(&r.growth),
                Some(format!("|D| {:?}", r.growth)),
            ));
            Ok(defect_json(&s, &r))
        }
        "direct_product" => {
            let s = direct_product(&Z2, &direct);
            let r = defect(&s, radius, DEFAULT_PAIR_BUDGET)?;
            out.push(Assertion::check(
                "defect_is_identity",
                "the product section is a homomorphism",
                r.defects.len() == 1,
                Some(format!("|D| = {}", r.defects.len())),
            ));
            Ok(defect_json(&s, &r))
        }
        other => Err(Error::Input(format!("unknown scenario {other:?}"))),
    }
}

fn cmd_realize(g: &FiniteGroup, m: &CoeffModule, a: &Cochain, out: &mut Vec<Assertion>) -> Result<Value> {
    let r = realize(g, m, a)?;
    out.push(Assertion::check(
        "composition_identity",
        "φ(g1)φ(g2) = conj<g1,g2> φ(g1 g2) on generators",
        r.composition_holds,
        Some(format!("{} checks", r.composition_checks)),
    ));
    out.push(Assertion::check("automorphisms", "each φ(g) is invertible on generators", r.automorphisms, None));
    out.push(Assertion::check(
        "center_is_module",
        "the free factor has rank at least 2, so the center of N is the module",
        r.center_is_module,
        Some(format!("rank {}", r.alphabet_size)),
    ));
    out.push(Assertion::check(
        "roundtrip",
        "the recomputed obstruction is cohomologous to α",
        r.class_equal,
        None,
    ));
    let c = Complex::new(g, m);
    Ok(json!({
        "m_order": r.m_order,
        "used_double": r.used_double,
        "realized_order": r.realized_order,
        "alphabet": r.alphabet,
        "sample_images": r.sample_images,
        "obstruction": CochainSpec::of(&c, &r.obstruction),
    }))
}

fn selftest(o: &Options, out: &mut Vec<Assertion>) -> Result<Value> {
    let z2 = FiniteGroup::cyclic(2);
    let z2_module = CoeffModule::cyclic(2);
    let c = Complex::new(&z2, &z2_module);
    let h = c.cohomology(2, true, DEFAULT_COCHAIN_BUDGET)?;
    out.push(Assertion::check("h2_z2_z2", "H^2(Z/2, Z/2) = Z/2", h.invariant_factors == [2], None));

    let tower = AutTower::new(&z2, o.budget_auts)?;
    let p = ExtensionProblem::new(z2.clone(), tower, OuterMap::trivial(&z2))?;
    let en = enumerate_extensions(&p, o.budget_enum)?;
    out.push(Assertion::check("extensions_z2_z2", "two extensions of Z/2 by Z/2", en.classes.len() == 2, None));

    let q8 = FiniteGroup::quaternion();
    let tower = AutTower::new(&q8, o.budget_auts)?;
    let mut agree = true;
    for psi in OuterMap::all(&z2, &tower, o.budget_enum)? {
        let p = ExtensionProblem::new(z2.clone(), tower.clone(), psi)?;
        let r = obstruction(&p, 5, o.seed)?;
        agree &= r.vanishes() == !enumerate_extensions(&p, o.budget_enum)?.classes.is_empty();
    }
    out.push(Assertion::check("obstruction_q8", "obstruction verdicts match enumeration for Z/2 and Q8", agree, None));

    let z3 = FiniteGroup::cyclic(3);
    let m = CoeffModule::cyclic(3);
    let c3 = Complex::new(&z3, &m);
    let h3 = c3.cohomology(3, true, DEFAULT_COCHAIN_BUDGET)?;
    let r = realize(&z3, &m, &h3.representatives[0])?;
    out.push(Assertion::check("realize_z3", "a generator of H^3(Z/3, Z/3) is realized", r.holds(), None));

    let semi = HeisByZ2::SEMIDIRECT;
    let d = defect(&sigma1(&Z2, &semi), 3, DEFAULT_PAIR_BUDGET)?;
    out.push(Assertion::check("sigma1_defect", "σ_1 has trivial defect", d.defects.len() == 1, None));
    Ok(json!({ "checks": out.len() }))
}
