//! Orchestration: the stages behind each CLI subcommand, sharing intermediate results.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::canon::{
    canonical_relations, hyperelliptic_guard, not_trigonal_check, reference_model, reference_quadrics_text, preserves_span,
    CanonicalModel, QUADRIC_MONOMIALS, RELATION_COUNT,
};
use crate::error::{Error, Result};
use crate::exact::{is_split, NfElem, NumberField, Rationals};
use crate::group::{b0_generators, reference_fingerprint, tau3, MatrixGroup, ProjMatrix, DEFAULT_CLOSURE_BOUND};
use crate::ideals::{expected_basis, gb_string, solve, Solve};
use crate::linalg::{span_equal, SpanTester};
use crate::qexp::{f27_eta, f36_eta, reference_expansions, standard_basis, Newforms, PRECISION_FLOOR};
use crate::verify::{
    check_branches, check_cusps, check_differentials, check_relations, differential_action, full_group, mod_p_suite,
    specialize_u, Check, Involution, VerificationReport,
};

pub const DEFAULT_PRECISION: usize = 150;
pub const DEFAULT_PRIME: u64 = 31;
/// Random products drawn by the closure spot check.
const SPOT_CHECKS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Model,
    Group,
    Solve,
    Verify,
    Modp,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub precision: usize,
    pub prime: u64,
    pub branch: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { precision: DEFAULT_PRECISION, prime: DEFAULT_PRIME, branch: 0, seed: 0 }
    }
}

impl Config {
    /// Preconditions that make a request a usage error rather than a failed check.
    pub fn validate(&self, command: Command) -> Result<()> {
        if self.precision < PRECISION_FLOOR {
            return Err(Error::InsufficientPrecision { got: self.precision, min: PRECISION_FLOOR });
        }
        if self.branch > 2 {
            return Err(Error::InvalidBranch(self.branch));
        }
        if matches!(command, Command::Modp | Command::All) && !is_split(self.prime)? {
            return Err(Error::NotSplit(self.prime));
        }
        Ok(())
    }
}

/// Everything a run produced: the checks plus human-oriented listing lines.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub report: VerificationReport,
    pub listing: Vec<String>,
}

impl Outcome {
    fn absorb(&mut self, stage: &str, r: Result<Outcome>) -> Result<()> {
        match r {
            Ok(o) => {
                self.report.extend(o.report);
                self.listing.extend(o.listing);
                Ok(())
            }
            Err(e) if e.is_usage() => Err(e),
            Err(e) => {
                self.report.push(Check::new(&format!("{stage}.error"), false, json!(e.to_string()), "stage completed"));
                Ok(())
            }
        }
    }
}

/// Lazily built artifacts reused across stages.
struct Context {
    config: Config,
    fixture: Option<CanonicalModel>,
    b0: Option<MatrixGroup<NfElem>>,
    solved: Option<Solve>,
    branches: Option<Vec<Involution>>,
    full: Option<MatrixGroup<NfElem>>,
}

impl Context {
    fn new(config: Config) -> Self {
        Context { config, fixture: None, b0: None, solved: None, branches: None, full: None }
    }

    fn fixture(&mut self) -> Result<&CanonicalModel> {
        if self.fixture.is_none() {
            self.fixture = Some(reference_model(&standard_basis(self.config.precision)?));
        }
        Ok(self.fixture.as_ref().expect("set above"))
    }

    fn b0(&mut self) -> Result<&MatrixGroup<NfElem>> {
        if self.b0.is_none() {
            self.b0 = Some(MatrixGroup::generate(&NumberField, b0_generators().to_vec(), DEFAULT_CLOSURE_BOUND)?);
        }
        Ok(self.b0.as_ref().expect("set above"))
    }

    fn solved(&mut self) -> Result<&Solve> {
        if self.solved.is_none() {
            let s = solve(self.fixture()?)?;
            self.solved = Some(s);
        }
        Ok(self.solved.as_ref().expect("set above"))
    }

    fn branches(&mut self) -> Result<&[Involution]> {
        if self.branches.is_none() {
            let roots: Vec<NfElem> = self.solved()?.solutions.iter().map(|(a, _)| a.clone()).collect();
            let model = self.fixture()?.clone();
            let b = roots.iter().map(|a| specialize_u(a, &model)).collect::<Result<Vec<_>>>()?;
            self.branches = Some(b);
        }
        Ok(self.branches.as_deref().expect("set above"))
    }

    fn u(&mut self) -> Result<Involution> {
        let k = self.config.branch;
        self.branches()?
            .get(k)
            .cloned()
            .ok_or_else(|| Error::UnexpectedVariety(format!("no solution for branch {k}")))
    }
}

fn model_stage(ctx: &mut Context) -> Result<Outcome> {
    let prec = ctx.config.precision;
    let mut r = VerificationReport::default();
    let forms = Newforms::compute(prec);
    for e in reference_expansions() {
        let ok = forms.by_name(&e.name).is_some_and(|s| e.agrees_with(s));
        r.push(Check::new(
            &format!("qexp.{}", e.name),
            ok,
            json!({ "coefficients_checked": e.known_through }),
            &format!("{} matches its reference expansion", e.name),
        ));
    }
    r.push(Check::new(
        "qexp.eta_products",
        f27_eta(prec) == forms.f27 && f36_eta(prec) == forms.f36,
        json!({ "precision": prec }),
        "f27 and f36 equal their eta products",
    ));

    let basis = standard_basis(prec)?;
    let computed = canonical_relations(&basis)?;
    let fixture = ctx.fixture()?.clone();
    let q = Rationals;
    r.push(Check::new(
        "model.relation_count",
        computed.quadrics.len() == RELATION_COUNT,
        json!(computed.quadrics.len()),
        "there are 28 independent quadric relations",
    ));
    r.push(Check::new(
        "model.span_equals_fixture",
        span_equal(&q, &computed.rational_rows(), &fixture.rational_rows()),
        json!({ "precision": prec }),
        "the computed relations span the listed quadrics",
    ));
    r.push(Check::new(
        "model.fixture_vanishes",
        fixture.relations_vanish(),
        json!({ "precision": prec }),
        "every listed quadric vanishes on the basis",
    ));
    let floor = canonical_relations(&standard_basis(PRECISION_FLOOR)?)?;
    r.push(Check::new(
        "model.floor_span",
        span_equal(&q, &floor.rational_rows(), &fixture.rational_rows()),
        json!({ "precision": PRECISION_FLOOR }),
        "precision 38 already determines the span",
    ));
    r.push(Check::value(
        "model.list_equality",
        json!(computed.matches_reference_list()),
        "the reduced basis equals the listed quadrics up to order and sign",
    ));
    r.push(Check::new(
        "model.not_hyperelliptic",
        hyperelliptic_guard(computed.quadrics.len())?,
        json!(computed.quadrics.len()),
        "28 rather than 36 quadrics, so the curve is not hyperelliptic",
    ));
    let t = not_trigonal_check(&fixture);
    r.push(Check::new(
        "model.degree3_rank",
        t.cubic_rank == t.expected_rank,
        json!({ "rank": t.cubic_rank, "expected": t.expected_rank }),
        "cubic multiples of the quadrics have rank 175",
    ));
    r.push(Check::new(
        "model.riemann_roch",
        t.quadric_quotient_dim == QUADRIC_MONOMIALS - RELATION_COUNT && t.not_trigonal,
        json!(t.quadric_quotient_dim),
        "quadrics modulo the ideal have dimension 55 - 28 = 27",
    ));
    let listing = computed.quadrics.iter().map(ToString::to_string).collect();
    Ok(Outcome { report: r, listing })
}

fn group_stage(ctx: &mut Context) -> Result<Outcome> {
    let f = NumberField;
    let model = ctx.fixture()?.clone();
    let b0 = ctx.b0()?;
    let t = tau3();
    let centre = b0.center();
    let expected_centre = [ProjMatrix::identity(&f, 10), t.clone(), t.mul(&f, &t)];
    let fp = b0.fingerprint()?;
    let reference = reference_fingerprint();
    let m = t.matrix();
    let diagonal = (0..10).all(|i| (0..10).all(|j| i == j || m.get(i, j).is_zero()));
    let zeta = NfElem::zeta();
    let roots = [NfElem::one(), zeta.clone(), &zeta * &zeta];
    let shape = diagonal
        && (0..4).all(|i| m.get(i, i).is_one())
        && (4..10).all(|i| roots.contains(m.get(i, i)))
        && (4..10).any(|i| !m.get(i, i).is_one());
    let rows = model.nf_rows();
    let tester = SpanTester::new(&f, &rows);
    let gens_preserve = b0_generators().to_vec().iter().all(|g| preserves_span(&f, &tester, &rows, g.matrix()));

    let mut r = VerificationReport::default();
    r.push(Check::new("group.b0_order", b0.order() == 108, json!(b0.order()), "B0(108) has order 108"));
    r.push(Check::new(
        "group.centre",
        centre.len() == 3 && expected_centre.iter().all(|g| centre.contains(g)),
        json!(centre.len()),
        "the centre is {1, tau3, tau3^2}",
    ));
    r.push(Check::new(
        "group.fingerprint",
        fp == reference,
        serde_json::to_value(&fp).expect("fingerprint serializes"),
        "B0(108) is isomorphic to D6 x (C3 wr C2)",
    ));
    let diag: Vec<String> = (0..10).map(|i| m.get(i, i).to_expr()).collect();
    r.push(Check::new(
        "group.tau3_shape",
        shape,
        json!(diag),
        "tau3 is trivial on x1..x4 and scales x5..x10 by cube roots of unity",
    ));
    r.push(Check::new(
        "group.generators_preserve_span",
        gens_preserve,
        json!(4),
        "w4, w27, S2, S3 preserve the quadric span",
    ));
    let listing = vec![
        format!("order {}", b0.order()),
        format!("centre order {}", centre.len()),
        format!("matches D6 x (C3 wr C2): {}", fp == reference),
    ];
    Ok(Outcome { report: r, listing })
}

fn solve_stage(ctx: &mut Context) -> Result<Outcome> {
    let s = ctx.solved()?.clone();
    let mut r = VerificationReport::default();
    r.push(Check::value(
        "solve.generator_count",
        json!(s.generators.len()),
        "number of polynomial conditions on (a, b)",
    ));
    r.push(Check::new(
        "solve.groebner_basis",
        s.basis == expected_basis(),
        json!(gb_string(&s.basis)),
        "the reduced lex basis is {b - z*a^2, a^3 + 1/2}",
    ));
    let sols: Vec<[String; 2]> = s.solutions.iter().map(|(a, b)| [a.to_serial(), b.to_serial()]).collect();
    r.push(Check::new("solve.solutions", s.solutions.len() == 3, json!(sols), "there are exactly three solutions"));
    r.extend(check_branches(ctx.branches()?));
    let mut listing = vec![format!("generators {}", s.generators.len()), format!("basis {}", gb_string(&s.basis))];
    listing.extend(s.solutions.iter().map(|(a, b)| format!("a = {}  b = {}", a.to_expr(), b.to_expr())));
    Ok(Outcome { report: r, listing })
}

fn verify_stage(ctx: &mut Context) -> Result<Outcome> {
    let model = ctx.fixture()?.clone();
    let branches = ctx.branches()?.to_vec();
    let mut r = VerificationReport::default();
    for (k, b) in branches.iter().enumerate() {
        r.extend(check_relations(&b.proj).prefixed(&format!("b{k}")));
        let cusps = check_cusps(&model, &b.proj)?;
        let disjoint = cusps.get("cusps.disjoint_from_image").cloned();
        if k == ctx.config.branch {
            r.extend(cusps);
        } else if let Some(c) = disjoint {
            r.push(Check { check_id: format!("b{k}.{}", c.check_id), ..c });
        }
    }
    let u = ctx.u()?;
    let (group, g) = full_group(&u.proj, &model)?;
    r.extend(g);
    r.push(spot_check(&group, &model, ctx.config.seed));
    r.extend(check_differentials(&u));
    ctx.full = Some(group);
    Ok(Outcome { report: r, listing: Vec::new() })
}

/// Seeded random products of group elements stay in the group and keep the span.
fn spot_check(group: &MatrixGroup<NfElem>, model: &CanonicalModel, seed: u64) -> Check {
    let f = NumberField;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = model.nf_rows();
    let tester = SpanTester::new(&f, &rows);
    let ok = (0..SPOT_CHECKS).all(|_| {
        let g = group.elements.choose(&mut rng).expect("nonempty");
        let h = group.elements.choose(&mut rng).expect("nonempty");
        let gh = g.mul(&f, h);
        group.contains(&gh) && preserves_span(&f, &tester, &rows, gh.matrix())
    });
    Check::new(
        "group.random_products",
        ok,
        json!({ "seed": seed, "samples": SPOT_CHECKS }),
        "products of random elements stay in the group",
    )
}

fn modp_stage(ctx: &mut Context) -> Result<Outcome> {
    let p = ctx.config.prime;
    let model = ctx.fixture()?.clone();
    let u = ctx.u()?;
    if ctx.full.is_none() {
        ctx.full = Some(full_group(&u.proj, &model)?.0);
    }
    let group = ctx.full.as_ref().expect("set above");
    let res = mod_p_suite(p, group, &model, &u.raw, true)?;
    let id = |s: &str| format!("modp.{p}.{s}");
    let mut r = VerificationReport::default();
    r.push(Check::new(
        &id("distinct"),
        res.distinct == 216 && res.total == 216,
        json!({ "distinct": res.distinct, "zeta": res.zeta_image, "c": res.c_image }),
        "the 216 automorphisms stay distinct mod p (a lower bound for the automorphism count)",
    ));
    r.push(Check::new(
        &id("span_preserved"),
        res.preserved == res.total,
        json!(res.preserved),
        "every reduced automorphism preserves the reduced quadric span",
    ));
    let d = differential_action(&u.raw);
    let r_minus = d.minus_sign.1;
    match &res.census {
        Some(c) => {
            let count = c.fixed_points();
            let dims = (c.plus_dim, c.minus_dim);
            let consistent =
                dims == (d.plus_one, d.minus_one) && d.plus_sign.1 < 0 && count as i64 <= r_minus;
            r.push(Check::new(
                &id("census"),
                consistent,
                json!({
                    "fixed_points": count,
                    "eigenspace_dims": [c.plus_dim, c.minus_dim],
                    "points_searched": c.points_searched,
                    "hurwitz_r": r_minus,
                }),
                "the F_p census, eigenvalue multiplicities and Hurwitz count are consistent",
            ));
            r.push(Check::value(
                &id("fixed_point_discrepancy"),
                json!({ "census": count, "hurwitz_r": r_minus, "claimed": 2 }),
                "u has two fixed points (open discrepancy with r = 6)",
            ));
        }
        None => r.push(Check::value(
            &id("census"),
            json!({ "skipped": true, "limit": crate::verify::CENSUS_LIMIT }),
            "census skipped above the point limit",
        )),
    }
    Ok(Outcome { report: r, listing: Vec::new() })
}

type Stage = fn(&mut Context) -> Result<Outcome>;

/// Run one subcommand. Usage errors come back as `Err`; any other failure is a failed check.
pub fn run(command: Command, config: &Config) -> Result<Outcome> {
    config.validate(command)?;
    let mut ctx = Context::new(config.clone());
    let mut out = Outcome::default();
    let stages: &[(&str, Stage)] = match command {
        Command::Model => &[("model", model_stage)],
        Command::Group => &[("group", group_stage)],
        Command::Solve => &[("solve", solve_stage)],
        Command::Verify => &[("verify", verify_stage)],
        Command::Modp => &[("modp", modp_stage)],
        Command::All => &[
            ("model", model_stage),
            ("group", group_stage),
            ("solve", solve_stage),
            ("verify", verify_stage),
            ("modp", modp_stage),
        ],
    };
    for (name, stage) in stages {
        let r = stage(&mut ctx);
        out.absorb(name, r)?;
    }
    Ok(out)
}

/// The reference quadrics exactly as stored.
pub fn fixture_listing() -> Vec<String> {
    reference_quadrics_text().lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect()
}
