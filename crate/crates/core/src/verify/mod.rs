//! End-to-end checks on the involution u and the group it generates with B₀(108).

mod modp;
mod report;

pub use modp::{census_threads, CENSUS_LIMIT, fixed_point_census, mod_p_suite, Census, ModPResult};
pub use report::{Check, Status, VerificationReport};

use std::collections::{HashSet, VecDeque};

use serde_json::json;

use crate::canon::{on_curve, preserves_span, CanonicalModel, ProjPoint};
use crate::error::{Error, Result};
use crate::exact::{Field, NfElem, NumberField};
use crate::group::{b0_generators, tau3, MatrixGroup, ProjMatrix, DEFAULT_CLOSURE_BOUND};
use crate::ideals::symbolic_m;
use crate::linalg::{self, Matrix, SpanTester};

/// The involution for one cube root `a` of -1/2.
#[derive(Clone, Debug)]
pub struct Involution {
    pub a: NfElem,
    pub b: NfElem,
    /// M(a, b) itself, before projective normalization.
    pub raw: Matrix<NfElem>,
    pub proj: ProjMatrix<NfElem>,
}

fn span_tester(model: &CanonicalModel) -> (SpanTester<NumberField>, Vec<Vec<NfElem>>) {
    let rows = model.nf_rows();
    (SpanTester::new(&NumberField, &rows), rows)
}

/// `M(a, z a²)`, rejected unless it maps the quadric span to itself.
pub fn specialize_u(a: &NfElem, model: &CanonicalModel) -> Result<Involution> {
    let b = &NfElem::z() * &(a * a);
    let raw = symbolic_m().specialize(a, &b)?;
    let (tester, rows) = span_tester(model);
    if !preserves_span(&NumberField, &tester, &rows, &raw) {
        return Err(Error::NotAnAutomorphism(format!("M(a, b) with a = {a}")));
    }
    let proj = ProjMatrix::new(&NumberField, raw.clone())?;
    Ok(Involution { a: a.clone(), b, raw, proj })
}

/// The explicit coordinate map `[x1 : z x3 : x2/z : x4 : (c/z) x7 : …]` as a pullback matrix.
pub fn explicit_map() -> ProjMatrix<NfElem> {
    let z = NfElem::z();
    let c = NfElem::c();
    let inv = |x: &NfElem| x.inverse().expect("unit");
    let c2 = &c * &c;
    // (target coordinate i, source coordinate j, coefficient): y_i = coeff · x_j
    let terms = [
        (0, 0, NfElem::one()),
        (1, 2, z.clone()),
        (2, 1, inv(&z)),
        (3, 3, NfElem::one()),
        (4, 6, &c * &inv(&z)),
        (5, 7, &c2 * &inv(&z)),
        (6, 4, &z * &inv(&c)),
        (7, 5, &z * &inv(&c2)),
        (8, 9, -&c),
        (9, 8, -&inv(&c)),
    ];
    let mut m = Matrix::filled(10, 10, NfElem::zero());
    for (i, j, x) in terms {
        // points move by x ↦ Mᵀx, so y_i = Σ_j M_ji x_j
        m.set(j, i, x);
    }
    ProjMatrix::new(&NumberField, m).expect("nonzero")
}

fn mat_json(m: &ProjMatrix<NfElem>) -> serde_json::Value {
    let rows: Vec<Vec<String>> = m.matrix().to_rows().iter().map(|r| r.iter().map(NfElem::to_expr).collect()).collect();
    json!(rows)
}

/// Conjugation relations between u and the generators of B₀(108).
pub fn check_relations(u: &ProjMatrix<NfElem>) -> VerificationReport {
    let f = NumberField;
    let g = b0_generators();
    let t = tau3();
    let t_inv = t.inverse(&f);
    let conj = |x: &ProjMatrix<NfElem>| u.mul(&f, x).mul(&f, u);
    let s3_inv = g.s3.inverse(&f);
    let u_inv = u.inverse(&f);
    let rel = |id: &str, lhs: ProjMatrix<NfElem>, rhs: ProjMatrix<NfElem>, claim: &str| {
        Check::new(id, lhs == rhs, json!({ "holds": lhs == rhs }), claim)
    };
    let s3_w27_s3inv = g.s3.mul(&f, &g.w27).mul(&f, &s3_inv);
    // S2 and w4 do not commute, so the factor order matters
    let other_order = conj(&g.s3) == g.s2.mul(&f, &g.w4).mul(&f, &t);
    let checks = vec![
        rel("relation.u_squared", u.mul(&f, u), ProjMatrix::identity(&f, 10), "u has order 2"),
        rel("relation.u_w4_u", conj(&g.w4), g.w27.clone(), "u w4 u = w27"),
        rel("relation.u_w27_u", conj(&g.w27), g.w4.clone(), "u w27 u = w4"),
        rel("relation.u_s2_u", conj(&g.s2), s3_w27_s3inv.clone(), "u S2 u = S3 w27 S3^-1"),
        rel(
            "relation.s3_w27_s3inv",
            s3_w27_s3inv,
            s3_inv.mul(&f, &t_inv).mul(&f, &g.w27),
            "S3 w27 S3^-1 = S3^-1 tau3^-1 w27",
        ),
        rel("relation.u_s3_u", conj(&g.s3), g.w4.mul(&f, &g.s2).mul(&f, &t), "u S3 u = w4 S2 tau3"),
        Check::value(
            "relation.u_s3_u_order_s2_w4",
            json!({ "holds": other_order, "s2_w4_commute": g.s2.commutes(&f, &g.w4) }),
            "u S3 u = S2 w4 tau3 with the factors in the other order",
        ),
        rel("relation.sigma_twist", u.sigma().mul(&f, &u_inv), t, "u^sigma u^-1 = tau3"),
        rel("relation.sigma2_twist", u.sigma().sigma().mul(&f, &u_inv), t_inv, "u^(sigma^2) u^-1 = tau3^-1"),
    ];
    VerificationReport { checks }
}

/// ⟨B₀(108), u⟩ with its structural checks.
pub fn full_group(u: &ProjMatrix<NfElem>, model: &CanonicalModel) -> Result<(MatrixGroup<NfElem>, VerificationReport)> {
    let f = NumberField;
    let b0 = MatrixGroup::generate(&f, b0_generators().to_vec(), DEFAULT_CLOSURE_BOUND)?;
    let mut gens = b0_generators().to_vec();
    gens.push(u.clone());
    let a0 = MatrixGroup::generate(&f, gens, DEFAULT_CLOSURE_BOUND)?;
    let (tester, rows) = span_tester(model);
    let preserved = a0.elements.iter().filter(|g| preserves_span(&f, &tester, &rows, g.matrix())).count();
    let t = tau3();
    let coset: Vec<&ProjMatrix<NfElem>> = a0.elements.iter().filter(|g| !b0.contains(g)).collect();
    let twisted = coset.iter().filter(|g| g.sigma().mul(&f, &g.inverse(&f)) == t).count();
    let zero_diag = coset.iter().filter(|g| (4..10).all(|i| g.matrix().get(i, i).is_zero())).count();
    let mut r = VerificationReport::default();
    r.push(Check::new("group.order", a0.order() == 216, json!(a0.order()), "the full group has order 216"));
    r.push(Check::new(
        "group.index_two",
        b0.order() == 108 && b0.elements.iter().all(|g| a0.contains(g)) && a0.order() == 2 * b0.order(),
        json!({ "b0": b0.order(), "full": a0.order() }),
        "B0(108) has index two",
    ));
    r.push(Check::new(
        "group.span_preserved",
        preserved == a0.order(),
        json!(preserved),
        "every automorphism preserves the quadric span",
    ));
    r.push(Check::new(
        "group.coset_sigma_twist",
        twisted == coset.len() && coset.len() == 108,
        json!(twisted),
        "every element outside B0(108) satisfies g^sigma g^-1 = tau3",
    ));
    r.push(Check::new(
        "group.coset_w_diagonal",
        zero_diag == coset.len(),
        json!(zero_diag),
        "elements outside B0(108) have zero diagonal on W",
    ));
    Ok((a0, r))
}

/// Σ_{d | n} φ(gcd(d, n/d)).
pub fn cusp_count(n: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    fn phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| phi(gcd(d, n / d))).sum()
}

/// The cusp at infinity: its coordinates are the q¹ coefficients of the basis.
pub fn cusp_at_infinity(model: &CanonicalModel) -> Result<ProjPoint<NfElem>> {
    let coords = model.basis.q1_coefficients().into_iter().map(NfElem::from_rational).collect();
    ProjPoint::new(&NumberField, coords)
}

/// Orbit of `start` under the point action of `gens`.
pub fn orbit(start: ProjPoint<NfElem>, gens: &[ProjMatrix<NfElem>]) -> Vec<ProjPoint<NfElem>> {
    let f = NumberField;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        if !seen.insert(p.clone()) {
            continue;
        }
        for g in gens {
            queue.push_back(p.apply(&f, g.matrix()));
        }
        out.push(p);
    }
    out
}

pub fn cusp_orbit(model: &CanonicalModel) -> Result<Vec<ProjPoint<NfElem>>> {
    let orbit = orbit(cusp_at_infinity(model)?, &b0_generators().to_vec());
    let rows = model.nf_rows();
    if let Some(p) = orbit.iter().find(|p| !on_curve(&NumberField, p, &rows)) {
        return Err(Error::ModelMismatch(format!("cusp {:?} is off the curve", p.coords())));
    }
    Ok(orbit)
}

pub fn check_cusps(model: &CanonicalModel, u: &ProjMatrix<NfElem>) -> Result<VerificationReport> {
    let f = NumberField;
    let cusps = cusp_orbit(model)?;
    let infinity = cusp_at_infinity(model)?;
    let expected = cusp_count(108) as usize;
    let set: HashSet<&ProjPoint<NfElem>> = cusps.iter().collect();
    let images: Vec<ProjPoint<NfElem>> = cusps.iter().map(|p| p.apply(&f, u.matrix())).collect();
    let meets = images.iter().filter(|p| set.contains(p)).count();
    let rows = model.nf_rows();
    let images_on_curve = images.iter().all(|p| on_curve(&f, p, &rows));
    let ones: Vec<String> = infinity.coords().iter().map(NfElem::to_expr).collect();
    let mut r = VerificationReport::default();
    r.push(Check::new(
        "cusps.infinity",
        on_curve(&f, &infinity, &rows),
        json!(ones),
        "the cusp at infinity is (1:1:1:1:1:0:1:1:1:1) and lies on the model",
    ));
    r.push(Check::new(
        "cusps.orbit_size",
        cusps.len() == expected,
        json!({ "orbit": cusps.len(), "cusp_count": expected }),
        "the cusps form one B0(108) orbit of size 18",
    ));
    r.push(Check::new("cusps.on_curve", true, json!(cusps.len()), "every cusp lies on the model"));
    r.push(Check::new(
        "cusps.disjoint_from_image",
        meets == 0 && images_on_curve,
        json!({ "common_points": meets }),
        "u(cusps) and cusps are disjoint",
    ));
    Ok(r)
}

/// Eigenvalue data of M and the Hurwitz count for both signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialAction {
    pub plus_one: usize,
    pub minus_one: usize,
    /// `(g_Y, r)` when u acts by +M.
    pub plus_sign: (i64, i64),
    /// `(g_Y, r)` when u acts by -M.
    pub minus_sign: (i64, i64),
}

pub const GENUS: i64 = 10;

/// Ramification count `r = (2 g_X - 2) - 2 (2 g_Y - 2)` of a degree-2 quotient.
pub fn hurwitz_r(g_y: i64) -> i64 {
    (2 * GENUS - 2) - 2 * (2 * g_y - 2)
}

pub fn differential_action(raw: &Matrix<NfElem>) -> DifferentialAction {
    let f = NumberField;
    let n = raw.rows();
    let shifted = |s: i64| {
        let mut m = raw.clone();
        for i in 0..n {
            let v = f.sub(m.get(i, i), &f.from_i64(s));
            m.set(i, i, v);
        }
        m
    };
    let plus_one = n - linalg::rank(&f, &shifted(1));
    let minus_one = n - linalg::rank(&f, &shifted(-1));
    let plus_g = plus_one as i64;
    let minus_g = minus_one as i64;
    DifferentialAction {
        plus_one,
        minus_one,
        plus_sign: (plus_g, hurwitz_r(plus_g)),
        minus_sign: (minus_g, hurwitz_r(minus_g)),
    }
}

pub fn check_differentials(u: &Involution) -> VerificationReport {
    let f = NumberField;
    let d = differential_action(&u.raw);
    let squared = linalg::mat_mul(&f, &u.raw, &u.raw) == linalg::identity(&f, 10);
    let mut r = VerificationReport::default();
    r.push(Check::new(
        "differentials.multiplicities",
        squared && (d.plus_one, d.minus_one) == (6, 4),
        json!({ "plus_one": d.plus_one, "minus_one": d.minus_one, "m_squared_is_identity": squared }),
        "M has eigenvalue 1 with multiplicity 6 and -1 with multiplicity 4",
    ));
    r.push(Check::new(
        "differentials.plus_sign_rejected",
        d.plus_sign.1 < 0,
        json!({ "g_y": d.plus_sign.0, "r": d.plus_sign.1 }),
        "acting by +M would give r = -2 fixed points",
    ));
    r.push(Check::new(
        "differentials.minus_sign",
        d.minus_sign.1 >= 0,
        json!({ "g_y": d.minus_sign.0, "r": d.minus_sign.1 }),
        "acting by -M gives g_Y = 4",
    ));
    r
}

/// Do all three branches give u, uτ₃ and uτ₃⁻¹?
pub fn check_branches(branches: &[Involution]) -> VerificationReport {
    let f = NumberField;
    let t = tau3();
    let mut r = VerificationReport::default();
    let u = &branches[0].proj;
    let related = branches[1..].iter().all(|b| {
        let x = b.proj.clone();
        x == u.mul(&f, &t) || x == u.mul(&f, &t.inverse(&f))
    });
    r.push(Check::new(
        "solve.branches_differ_by_tau3",
        branches.len() == 3 && related,
        json!(branches.iter().map(|b| b.a.to_expr()).collect::<Vec<_>>()),
        "the other two solutions are u tau3 and u tau3^-1",
    ));
    r.push(Check::new(
        "solve.explicit_map",
        *u == explicit_map(),
        mat_json(u),
        "branch 0 equals the explicit coordinate map up to scalar",
    ));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::reference_model;
    use crate::exact::rat;
    use crate::qexp::standard_basis;

    fn model() -> CanonicalModel {
        reference_model(&standard_basis(40).unwrap())
    }

    #[test]
    fn cusp_counts() {
        assert_eq!(cusp_count(1), 1);
        assert_eq!(cusp_count(31), 2);
        assert_eq!(cusp_count(27), 6);
        assert_eq!(cusp_count(4), 3);
        assert_eq!(cusp_count(108), 18);
    }

    #[test]
    fn hurwitz_arithmetic() {
        assert_eq!(hurwitz_r(4), 6);
        assert_eq!(hurwitz_r(6), -2);
        assert_eq!(hurwitz_r(5), 2);
    }

    #[test]
    fn explicit_map_is_an_involution() {
        let f = NumberField;
        let u = explicit_map();
        assert!(u.mul(&f, &u).is_identity(&f));
        assert!(!u.is_identity(&f));
    }

    #[test]
    fn wrong_parameter_is_rejected() {
        let m = model();
        let err = specialize_u(&NfElem::from_rational(rat(1, 1)), &m).unwrap_err();
        assert!(matches!(err, Error::NotAnAutomorphism(_)));
    }

    #[test]
    fn identity_fails_the_relations() {
        let r = check_relations(&ProjMatrix::identity(&NumberField, 10));
        assert!(r.get("relation.u_squared").unwrap().passed());
        assert!(!r.get("relation.u_w4_u").unwrap().passed());
        assert!(!r.all_passed());
    }

    #[test]
    fn cusp_at_infinity_coordinates() {
        let p = cusp_at_infinity(&model()).unwrap();
        let want: Vec<NfElem> = [1, 1, 1, 1, 1, 0, 1, 1, 1, 1].iter().map(|&x| NfElem::from_int(x)).collect();
        assert_eq!(p.coords(), &want[..]);
    }

    #[test]
    fn differentials_of_identity() {
        let d = differential_action(&linalg::identity(&NumberField, 10));
        assert_eq!((d.plus_one, d.minus_one), (10, 0));
        assert_eq!(d.plus_sign, (10, hurwitz_r(10)));
    }
}
