//! The condition ideal I_{a,b} of the candidate involution M(a, b) and its solution.

mod groebner;
mod poly;

pub use groebner::{buchberger, divide, reduce, Division, GroebnerBasis};
pub use poly::{divides, lcm, LaurentMono, LaurentPoly, LexOrder, Mono, PolyAB};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::canon::{monomial_index, quadric_monomials, CanonicalModel, QUADRIC_MONOMIALS};
use crate::error::{Error, Result};
use crate::exact::{rat, NfElem, Rational};
use crate::linalg::Matrix;

/// A 10×10 matrix whose nonzero entries are Laurent monomials in a, b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub entries: Matrix<Option<LaurentMono>>,
}

impl SymbolicMatrix {
    pub fn from_constant(m: &Matrix<NfElem>) -> Self {
        SymbolicMatrix { entries: m.map(|x| (!x.is_zero()).then(|| LaurentMono::constant(x.clone()))) }
    }

    pub fn specialize(&self, a: &NfElem, b: &NfElem) -> Result<Matrix<NfElem>> {
        self.entries.try_map(|e| match e {
            Some(m) => m.eval(a, b),
            None => Ok(NfElem::zero()),
        })
    }

    /// Nonzero entries of column `i`, as `(row, entry)`.
    fn column(&self, i: usize) -> Vec<(usize, LaurentMono)> {
        (0..self.entries.rows()).filter_map(|j| self.entries.get(j, i).clone().map(|m| (j, m))).collect()
    }
}

/// The candidate matrix M(a, b): a fixed V-block and a W-block in a, b.
pub fn symbolic_m() -> SymbolicMatrix {
    let z = NfElem::z();
    let z_inv = z.inverse().expect("unit");
    let mut e: Matrix<Option<LaurentMono>> = Matrix::filled(10, 10, None);
    let k = |c: &NfElem, da: i32, db: i32| Some(LaurentMono::new(c.clone(), da, db));
    let one = NfElem::one();
    e.set(0, 0, k(&one, 0, 0));
    e.set(1, 2, k(&z_inv, 0, 0));
    e.set(2, 1, k(&z, 0, 0));
    e.set(3, 3, k(&one, 0, 0));
    // W block, rows and columns offset by 4
    e.set(4, 6, k(&-&z, 1, 0));
    e.set(5, 7, k(&one, 0, 1));
    e.set(6, 4, k(&-&z_inv, -1, 0));
    e.set(7, 5, k(&one, 0, -1));
    e.set(8, 9, k(&one, 1, 0));
    e.set(9, 8, k(&one, -1, 0));
    SymbolicMatrix { entries: e }
}

/// Substitute `x_i ↦ Σ_j M_ji x_j` into a quadric given by integer-valued coefficients.
pub fn transform_symbolic(q: &[NfElem], m: &SymbolicMatrix) -> Vec<LaurentPoly> {
    let cols: Vec<Vec<(usize, LaurentMono)>> = (0..10).map(|i| m.column(i)).collect();
    let mut out = vec![LaurentPoly::default(); QUADRIC_MONOMIALS];
    for (&(i, j), c) in quadric_monomials().iter().zip(q) {
        if c.is_zero() {
            continue;
        }
        let scalar = LaurentMono::constant(c.clone());
        for (k, mk) in &cols[i] {
            let ck = scalar.mul(mk);
            for (l, ml) in &cols[j] {
                out[monomial_index(*k, *l)].add_mono(&ck.mul(ml));
            }
        }
    }
    out
}

/// Generators of I_{a,b}: every complement functional applied to every
/// transformed quadric, after clearing powers of a and b. Zero results are dropped.
pub fn condition_ideal(m: &SymbolicMatrix, model: &CanonicalModel) -> Vec<PolyAB> {
    let functionals = model.complement_functionals();
    let mut gens = Vec::new();
    for q in model.nf_rows() {
        let transformed = transform_symbolic(&q, m);
        let shift = transformed
            .iter()
            .filter_map(LaurentPoly::min_degrees)
            .reduce(|x, y| (x.0.min(y.0), x.1.min(y.1)))
            .unwrap_or((0, 0));
        let cleared: Vec<PolyAB> = transformed.iter().map(|p| p.shifted(shift)).collect();
        for phi in &functionals {
            let mut acc = PolyAB::zero();
            for (coef, p) in phi.iter().zip(&cleared) {
                if !coef.is_zero() && !p.is_zero() {
                    acc = acc.add(&p.scale(&NfElem::from_rational(coef.clone())));
                }
            }
            if !acc.is_zero() {
                gens.push(acc);
            }
        }
    }
    gens
}

/// Cube roots in L of a rational number, as `t · c^j` times powers of ζ.
pub fn rational_cube_roots(x: &Rational) -> Vec<NfElem> {
    if x.is_zero() {
        return vec![NfElem::zero()];
    }
    let c = NfElem::c();
    for j in 0..3u32 {
        let y = x / Rational::from_integer(BigInt::from(2).pow(j));
        if let (Some(n), Some(d)) = (int_cube_root(y.numer()), int_cube_root(y.denom())) {
            let r = &NfElem::from_rational(Rational::new(n, d)) * &c.pow(j as i64).expect("c is a unit");
            let zeta = NfElem::zeta();
            let zeta2 = &zeta * &zeta;
            return vec![r.clone(), &r * &zeta, &r * &zeta2];
        }
    }
    Vec::new()
}

fn int_cube_root(n: &BigInt) -> Option<BigInt> {
    let r = n.abs().cbrt();
    let r = if n.is_negative() { -r } else { r };
    (&r * &r * &r == *n).then_some(r)
}

/// The three `(a, b)` with `M(a, b)` an automorphism, read off a basis of shape
/// `{b - h(a), a^3 + κ}` under lex b > a. Branch k has `a = a₀ ζ^k`.
pub fn solve_u_parameters(gb: &GroebnerBasis) -> Result<Vec<(NfElem, NfElem)>> {
    let bad = |why: &str| Error::UnexpectedVariety(format!("{why}: {}", gb_string(gb)));
    if gb.order != LexOrder::BA || gb.polys.len() != 2 {
        return Err(bad("expected two generators under lex b > a"));
    }
    let (linear, cubic) = (&gb.polys[0], &gb.polys[1]);
    if linear.leading(gb.order).map(|(m, _)| m) != Some((0, 1)) || linear.terms().keys().any(|m| *m != (0, 1) && m.1 != 0) {
        return Err(bad("first generator is not b - h(a)"));
    }
    let kappa = cubic.coeff((0, 0));
    let shape_ok = cubic.terms().len() == 2 && cubic.coeff((3, 0)).is_one() && kappa.as_rational().is_some();
    if !shape_ok {
        return Err(bad("second generator is not a^3 + κ"));
    }
    let h = PolyAB::b().sub(linear);
    let minus_kappa = -kappa.as_rational().expect("checked").clone();
    let mut out = Vec::new();
    for a in rational_cube_roots(&minus_kappa) {
        let b = h.eval(&a, &NfElem::zero());
        if a.is_zero() || b.is_zero() {
            continue;
        }
        out.push((a, b));
    }
    if out.len() != 3 {
        return Err(bad("cubic does not split in L"));
    }
    Ok(out)
}

pub fn gb_string(gb: &GroebnerBasis) -> String {
    let parts: Vec<String> = gb.polys.iter().map(|p| p.to_string_in(gb.order)).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Expected basis `{b - z a^2, a^3 + 1/2}`.
pub fn expected_basis() -> GroebnerBasis {
    let z = NfElem::z();
    GroebnerBasis {
        polys: vec![
            PolyAB::from_terms([((0, 1), NfElem::one()), ((2, 0), -&z)]),
            PolyAB::from_terms([((3, 0), NfElem::one()), ((0, 0), NfElem::from_rational(rat(1, 2)))]),
        ],
        order: LexOrder::BA,
    }
}

/// The solved ideal: generators, their reduced basis, and the parameter solutions.
#[derive(Clone, Debug)]
pub struct Solve {
    pub generators: Vec<PolyAB>,
    pub basis: GroebnerBasis,
    pub solutions: Vec<(NfElem, NfElem)>,
}

pub fn solve(model: &CanonicalModel) -> Result<Solve> {
    let generators = condition_ideal(&symbolic_m(), model);
    let basis = buchberger(&generators, LexOrder::BA);
    let solutions = solve_u_parameters(&basis)?;
    Ok(Solve { generators, basis, solutions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::reference_model;
    use crate::exact::NumberField;
    use crate::group::b0_matrices;
    use crate::linalg::{self, identity, mat_mul};
    use crate::qexp::standard_basis;

    fn model() -> CanonicalModel {
        reference_model(&standard_basis(40).unwrap())
    }

    #[test]
    fn v_block_pattern() {
        let m = symbolic_m();
        let z = NfElem::z();
        assert_eq!(m.entries.get(1, 2).as_ref().unwrap().coeff, z.inverse().unwrap());
        assert_eq!(m.entries.get(2, 1).as_ref().unwrap().coeff, z);
        assert!(m.entries.get(1, 1).is_none());
    }

    #[test]
    fn specializations_are_involutions() {
        let f = NumberField;
        let m = symbolic_m();
        for (a, b) in [(NfElem::one(), NfElem::one()), (NfElem::from_int(3), NfElem::c())] {
            let x = m.specialize(&a, &b).unwrap();
            assert!(linalg::inverse(&f, &x).is_some());
            assert_eq!(mat_mul(&f, &x, &x), identity(&f, 10));
        }
    }

    #[test]
    fn generators_vanish_on_solutions() {
        let model = model();
        let gens = condition_ideal(&symbolic_m(), &model);
        assert!(!gens.is_empty());
        assert_eq!(model.complement_functionals().len(), 27);
        let c = NfElem::c();
        let a = (&c * &c).scale(&rat(-1, 2));
        let b = &NfElem::z() * &(&a * &a);
        assert!(gens.iter().all(|g| g.eval(&a, &b).is_zero()));
        assert!(gens.iter().any(|g| !g.eval(&NfElem::one(), &NfElem::one()).is_zero()));
    }

    #[test]
    fn genuine_automorphisms_give_no_conditions() {
        let model = model();
        for g in b0_matrices().to_vec() {
            assert!(condition_ideal(&SymbolicMatrix::from_constant(&g), &model).is_empty());
        }
    }

    #[test]
    fn solve_reproduces_the_basis() {
        let s = solve(&model()).unwrap();
        assert_eq!(s.basis, expected_basis());
        assert_eq!(gb_string(&s.basis), "{b - z*a^2, a^3 + 1/2}");
        assert!(s.basis.is_reduced() && s.basis.is_groebner());
        assert!(s.generators.iter().all(|g| s.basis.contains(g)));
        assert_eq!(s.solutions.len(), 3);
        let half = NfElem::from_frac(-1, 2);
        for (a, b) in &s.solutions {
            assert_eq!(a.pow(3).unwrap(), half);
            assert_eq!(*b, &NfElem::z() * &(a * a));
        }
        let c = NfElem::c();
        assert_eq!(s.solutions[0].0, (&c * &c).scale(&rat(-1, 2)));
    }

    #[test]
    fn other_lex_order_has_the_same_points() {
        let model = model();
        let gens = condition_ideal(&symbolic_m(), &model);
        let ab = buchberger(&gens, LexOrder::AB);
        assert_eq!(gb_string(&ab), "{a - 2/3*b^2, b^3 + 3/4*z}");
        for (a, b) in solve(&model).unwrap().solutions {
            assert!(ab.polys.iter().all(|p| p.eval(&a, &b).is_zero()));
        }
    }

    #[test]
    fn unexpected_shapes_rejected() {
        let gb = GroebnerBasis { polys: vec![PolyAB::a()], order: LexOrder::BA };
        assert!(matches!(solve_u_parameters(&gb), Err(Error::UnexpectedVariety(_))));
        let mut wrong = expected_basis();
        wrong.order = LexOrder::AB;
        assert!(solve_u_parameters(&wrong).is_err());
        // a^3 - 3 has no root in L
        let gb = GroebnerBasis {
            polys: vec![expected_basis().polys[0].clone(), PolyAB::from_terms([((3, 0), NfElem::one()), ((0, 0), NfElem::from_int(-3))])],
            order: LexOrder::BA,
        };
        assert!(solve_u_parameters(&gb).is_err());
    }

    #[test]
    fn cube_roots() {
        let roots = rational_cube_roots(&rat(-1, 2));
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert_eq!(r.pow(3).unwrap(), NfElem::from_frac(-1, 2));
        }
        assert_eq!(rational_cube_roots(&rat(27, 8))[0], NfElem::from_frac(3, 2));
        assert!(rational_cube_roots(&rat(3, 1)).is_empty());
    }
}
