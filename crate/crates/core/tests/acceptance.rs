//! One line per acceptance criterion. Runs without the libtest harness so the lines
//! appear in `cargo test` output; exits nonzero if any criterion regresses.

mod common;

use std::time::{Duration, Instant};

use modcurve::canon::{canonical_relations, not_trigonal_check, reference_model, CanonicalModel};
use modcurve::exact::{NfElem, NumberField, Rationals, ResidueMap};
use modcurve::group::{b0_generators, b0_group, reference_fingerprint, tau3, ProjMatrix};
use modcurve::ideals::{expected_basis, solve};
use modcurve::linalg::span_equal;
use modcurve::qexp::{f27_eta, f36_eta, reference_expansions, standard_basis, Newforms};
use modcurve::verify::{
    check_branches, check_cusps, check_differentials, check_relations, differential_action, fixed_point_census,
    full_group, mod_p_suite, specialize_u, Involution, VerificationReport,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn within(d: Duration, limit: Duration) -> bool {
    d < limit
}

struct Shared {
    model: CanonicalModel,
    branches: Vec<Involution>,
}

fn c1() -> Verdict {
    let ((forms, reference_ok), t) = timed(|| {
        let forms = Newforms::compute(150);
        let ok = reference_expansions().iter().all(|e| forms.by_name(&e.name).is_some_and(|s| e.agrees_with(s)));
        (forms, ok)
    });
    let eta = f27_eta(150) == forms.f27 && f36_eta(150) == forms.f36;
    verdict(
        reference_ok && eta && within(t, Duration::from_secs(1)),
        format!("five forms match reference coefficients, eta identities hold, {t:.2?}"),
    )
}

fn c2() -> Verdict {
    let (res, t) = timed(|| -> modcurve::Result<(usize, bool, bool)> {
        let basis = standard_basis(150)?;
        let fixture = reference_model(&basis);
        let m150 = canonical_relations(&basis)?;
        let m38 = canonical_relations(&standard_basis(38)?)?;
        Ok((
            m150.quadrics.len(),
            span_equal(&Rationals, &m150.rational_rows(), &fixture.rational_rows()),
            span_equal(&Rationals, &m38.rational_rows(), &fixture.rational_rows()),
        ))
    });
    match res {
        Ok((n, s150, s38)) => verdict(
            n == 28 && s150 && s38 && within(t, Duration::from_secs(10)),
            format!("{n} relations, span equal at 150: {s150}, at 38: {s38}, {t:.2?}"),
        ),
        Err(e) => verdict(false, e.to_string()),
    }
}

fn c3(shared: &Shared) -> Verdict {
    let (tc, t) = timed(|| not_trigonal_check(&shared.model));
    verdict(
        tc.cubic_rank == 175 && tc.quadric_quotient_dim == 27 && within(t, Duration::from_secs(30)),
        format!("degree-3 rank {}, quadrics modulo ideal {}, {t:.2?}", tc.cubic_rank, tc.quadric_quotient_dim),
    )
}

fn c4() -> Verdict {
    let f = NumberField;
    let g = match b0_group() {
        Ok(g) => g,
        Err(e) => return verdict(false, e.to_string()),
    };
    let t = tau3();
    let centre = g.center();
    let centre_ok = centre.len() == 3 && [ProjMatrix::identity(&f, 10), t.clone(), t.mul(&f, &t)].iter().all(|x| centre.contains(x));
    let fp_ok = g.fingerprint().map(|fp| fp == reference_fingerprint()).unwrap_or(false);
    let m = t.matrix();
    let zeta = NfElem::zeta();
    let roots = [NfElem::one(), zeta.clone(), &zeta * &zeta];
    let diagonal = (0..10).all(|i| (0..10).all(|j| i == j || m.get(i, j).is_zero()));
    let shape = diagonal && (0..4).all(|i| m.get(i, i).is_one()) && (4..10).all(|i| roots.contains(m.get(i, i)));
    verdict(
        g.order() == 108 && centre_ok && fp_ok && shape,
        format!("order {}, centre {{1, tau3, tau3^2}}: {centre_ok}, fingerprint: {fp_ok}, tau3 shape: {shape}", g.order()),
    )
}

fn c5(shared: &Shared) -> Verdict {
    let (res, t) = timed(|| solve(&shared.model));
    match res {
        Ok(s) => {
            let branches = check_branches(&shared.branches);
            verdict(
                s.basis == expected_basis()
                    && s.solutions.len() == 3
                    && branches.all_passed()
                    && within(t, Duration::from_secs(10)),
                format!("basis {{b - z*a^2, a^3 + 1/2}}, {} solutions, branch 0 is the explicit map, {t:.2?}", s.solutions.len()),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

/// The relations for every branch, with u S3 u in the factor order that holds.
fn c6(shared: &Shared) -> (Verdict, bool) {
    let reports: Vec<VerificationReport> = shared.branches.iter().map(|b| check_relations(&b.proj)).collect();
    let holds = |id: &str| reports.iter().all(|r| r.get(id).is_some_and(|c| c.passed()));
    let others = [
        "relation.u_squared",
        "relation.u_w4_u",
        "relation.u_w27_u",
        "relation.u_s2_u",
        "relation.s3_w27_s3inv",
        "relation.sigma_twist",
        "relation.sigma2_twist",
    ]
    .iter()
    .all(|id| holds(id));
    let corrected = holds("relation.u_s3_u");
    let f = NumberField;
    let g = b0_generators();
    let t = tau3();
    let stated_order = shared
        .branches
        .iter()
        .all(|b| b.proj.mul(&f, &g.s3).mul(&f, &b.proj) == g.s2.mul(&f, &g.w4).mul(&f, &t));
    let commute = g.s2.commutes(&f, &g.w4);
    let detail = format!(
        "other relations hold on all 3 branches: {others}; u S3 u = S2 w4 tau3: {stated_order}; \
         u S3 u = w4 S2 tau3: {corrected}; S2 and w4 commute: {commute}"
    );
    // the only known failure: the stated factor order, with the swapped order holding
    let known = others && corrected && !stated_order && !commute;
    (verdict(others && corrected && stated_order, detail), known)
}

fn c7(shared: &Shared) -> Verdict {
    match full_group(&shared.branches[0].proj, &shared.model) {
        Ok((g, r)) => verdict(
            r.all_passed(),
            format!(
                "order {}, index two: {}, span preserved by {}",
                g.order(),
                r.get("group.index_two").is_some_and(|c| c.passed()),
                r.get("group.span_preserved").map(|c| c.witness.to_string()).unwrap_or_default()
            ),
        ),
        Err(e) => verdict(false, e.to_string()),
    }
}

fn c8(shared: &Shared) -> Verdict {
    let rs: Vec<_> = shared.branches.iter().map(|b| check_cusps(&shared.model, &b.proj)).collect();
    let ok = rs.iter().all(|r| r.as_ref().is_ok_and(VerificationReport::all_passed));
    verdict(ok, "orbit of (1:1:1:1:1:0:1:1:1:1) has 18 points on the curve, disjoint from its image on all 3 branches")
}

fn c9_10(shared: &Shared) -> (Verdict, Verdict) {
    let u = &shared.branches[0];
    let d = differential_action(&u.raw);
    let diff = check_differentials(u);
    let group = match full_group(&u.proj, &shared.model) {
        Ok((g, _)) => g,
        Err(e) => return (verdict(false, e.to_string()), verdict(false, e.to_string())),
    };
    let mut lines = Vec::new();
    let mut distinct_ok = true;
    for p in [31, 43, 109] {
        match mod_p_suite(p, &group, &shared.model, &u.raw, false) {
            Ok(r) => {
                distinct_ok &= r.distinct == 216 && r.preserved == 216;
                lines.push(format!("p={p}: {} distinct, {} preserve", r.distinct, r.preserved));
            }
            Err(e) => {
                distinct_ok = false;
                lines.push(format!("p={p}: {e}"));
            }
        }
    }
    let r31 = ResidueMap::new(31).expect("31 splits");
    let census_in = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("pool");
        timed(|| pool.install(|| fixed_point_census(&r31, &u.raw, &shared.model)))
    };
    let (single, t1) = census_in(1);
    let (_, t8) = census_in(8);
    let census = single.ok().flatten();
    let census_ok = census.is_some() && within(t1, Duration::from_secs(300)) && within(t8, Duration::from_secs(60));
    let count = census.as_ref().map(|c| c.fixed_points() as i64);
    let dims = census.as_ref().map(|c| (c.plus_dim, c.minus_dim));
    let r_minus = d.minus_sign.1;
    let consistent = (d.plus_one, d.minus_one) == (6, 4)
        && d.plus_sign.1 == -2
        && d.minus_sign == (4, 6)
        && dims == Some((d.plus_one, d.minus_one))
        && count.is_some_and(|n| n <= r_minus);
    let v9 = verdict(
        consistent && diff.all_passed(),
        format!(
            "multiplicities ({}, {}); +M gives r = {} (rejected); -M gives g_Y = {}, r = {}; \
             F_31 census {} fixed points (<= r); the claimed count 2 is an open discrepancy",
            d.plus_one,
            d.minus_one,
            d.plus_sign.1,
            d.minus_sign.0,
            r_minus,
            count.map_or("n/a".into(), |n| n.to_string())
        ),
    );
    let v10 = verdict(
        distinct_ok && census_ok,
        format!("{}; census over F_31 {t1:.2?} on 1 thread, {t8:.2?} on 8", lines.join(", ")),
    );
    (v9, v10)
}

fn c11() -> Verdict {
    let results = common::all_suites(common::SEED, 48);
    let failed: Vec<String> =
        results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    verdict(
        failed.is_empty(),
        if failed.is_empty() { format!("{} seeded suites pass", results.len()) } else { failed.join("; ") },
    )
}

fn shared() -> modcurve::Result<Shared> {
    let model = reference_model(&standard_basis(150)?);
    let s = solve(&model)?;
    let branches = s.solutions.iter().map(|(a, _)| specialize_u(a, &model)).collect::<modcurve::Result<Vec<_>>>()?;
    Ok(Shared { model, branches })
}

fn main() {
    let shared = shared().expect("model and solutions build");
    let (v6, known6) = c6(&shared);
    let (v9, v10) = c9_10(&shared);
    let verdicts = vec![
        c1(),
        c2(),
        c3(&shared),
        c4(),
        c5(&shared),
        v6,
        c7(&shared),
        c8(&shared),
        v9,
        v10,
        c11(),
    ];
    let mut unexpected = Vec::new();
    for (i, v) in verdicts.iter().enumerate() {
        let n = i + 1;
        println!("criterion {n:2}: {} {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass && !(n == 6 && known6) {
            unexpected.push(n);
        }
    }
    let passed = verdicts.iter().filter(|v| v.pass).count();
    println!("{passed}/{} criteria pass", verdicts.len());
    if !verdicts[5].pass && known6 {
        println!("criterion 6 fails only on the stated factor order of u S3 u: S2 w4 tau3 never holds, w4 S2 tau3 always does");
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
