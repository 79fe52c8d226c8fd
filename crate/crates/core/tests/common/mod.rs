//! Seeded property suites shared by the property tests and the acceptance run.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

use modcurve::exact::{rat, Field, Level, NfElem, NumberField, PrimeField, Rational, Rationals, ResidueMap};
use modcurve::ideals::{buchberger, divide, LexOrder, PolyAB};
use modcurve::linalg::{self, is_lll_reduced, lll_reduce, rank_rational, Matrix};
use modcurve::qexp::{ec_ap, newform, EllipticCurve};

pub const SEED: u64 = 0x0108_5eed;

pub fn runner(seed: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn nf_elem() -> impl Strategy<Value = NfElem> {
    prop::collection::vec(rational(), 6).prop_map(|c| NfElem::from_coords(Level::L, c).expect("six coordinates"))
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// Ring axioms, inverses, σ as a ring automorphism of order 3 fixing K, and reduction mod 31.
pub fn field_axioms(seed: u64, cases: u32) -> Result<(), String> {
    let f = NumberField;
    let residue = ResidueMap::new(31).expect("31 splits");
    let fp = residue.field();
    report(runner(seed, cases).run(&(nf_elem(), nf_elem(), nf_elem()), |(a, b, c)| {
        check(&(&a + &b) + &c == &a + &(&b + &c), "additive associativity")?;
        check(&(&a * &b) * &c == &a * &(&b * &c), "multiplicative associativity")?;
        check(&a * &b == &b * &a, "commutativity")?;
        check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity")?;
        let copy = a.clone();
        check((&a - &copy).is_zero() && (&a + &(-&a)).is_zero(), "additive inverse")?;
        if !a.is_zero() {
            let inv = f.inv(&a).expect("nonzero is invertible");
            check((&a * &inv).is_one(), "multiplicative inverse")?;
        }
        check((&a * &b).sigma() == &a.sigma() * &b.sigma(), "sigma multiplicative")?;
        check((&a + &b).sigma() == &a.sigma() + &b.sigma(), "sigma additive")?;
        check(a.sigma().sigma().sigma() == a, "sigma has order dividing 3")?;
        check(NfElem::zeta().sigma() == NfElem::zeta(), "sigma fixes zeta")?;
        check(NfElem::c().sigma() == &NfElem::zeta() * &NfElem::c(), "sigma(c) = zeta c")?;
        // reduction is a ring map wherever it is defined
        if let (Ok(x), Ok(y)) = (residue.apply(&a), residue.apply(&b)) {
            check(residue.apply(&(&a * &b)) == Ok(fp.mul(&x, &y)), "residue map multiplicative")?;
            check(residue.apply(&(&a + &b)) == Ok(fp.add(&x, &y)), "residue map additive")?;
        }
        Ok(())
    }))
}

fn low_rank_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=6, 1usize..=6, 0usize..=4).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(rational(), r * k), prop::collection::vec(rational(), k * c)).prop_map(move |(a, b)| {
            let a = Matrix::from_vec(r, k, a);
            let b = Matrix::from_vec(k, c, b);
            if k == 0 {
                Matrix::filled(r, c, Rational::zero())
            } else {
                linalg::mat_mul(&Rationals, &a, &b)
            }
        })
    })
}

/// rank + nullity = columns, kernel vectors are annihilated, and row rank equals column rank.
pub fn kernel_rank(seed: u64, cases: u32) -> Result<(), String> {
    let q = Rationals;
    let fp = PrimeField { p: 31 };
    report(runner(seed, cases).run(&low_rank_matrix(), |m| {
        let rank = linalg::rank(&q, &m);
        let kernel = linalg::right_kernel(&q, &m);
        check(rank + kernel.len() == m.cols(), "rank-nullity")?;
        check(rank == linalg::rank(&q, &m.transpose()), "row rank = column rank")?;
        check(rank == rank_rational(&m), "fraction-free rank agrees")?;
        for v in &kernel {
            let col = Matrix::from_vec(v.len(), 1, v.clone());
            let prod = linalg::mat_mul(&q, &m, &col);
            check(prod.entries().iter().all(Zero::is_zero), "kernel vector annihilated")?;
        }
        let left = linalg::integer_left_kernel(&m);
        check(left.len() + rank == m.rows(), "left nullity")?;
        // the same duality over F_31, on an integer matrix derived from m
        let red = m.map(|x| {
            let r: BigInt = (x.numer() * BigInt::from(720) / x.denom()) % BigInt::from(31);
            let r: i64 = r.try_into().expect("small");
            r.rem_euclid(31) as u64
        });
        check(linalg::rank(&fp, &red) + linalg::right_kernel(&fp, &red).len() == m.cols(), "rank-nullity mod 31")?;
        Ok(())
    }))
}

fn to_rational(m: &[Vec<BigInt>]) -> Matrix<Rational> {
    Matrix::from_rows(&m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect::<Vec<_>>())
}

fn integral(m: &Matrix<Rational>) -> bool {
    m.entries().iter().all(|x| x.is_integer())
}

/// LLL output generates the same lattice and satisfies the Lovász conditions.
pub fn lll_lattice(seed: u64, cases: u32) -> Result<(), String> {
    let q = Rationals;
    let strategy = (2usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-60i64..=60, n), n));
    report(runner(seed, cases).run(&strategy, |rows| {
        let basis: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let b = to_rational(&basis);
        prop_assume!(linalg::rank(&q, &b) == b.rows());
        let reduced = lll_reduce(&basis).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(is_lll_reduced(&reduced).unwrap_or(false), "Lovász and size conditions")?;
        let r = to_rational(&reduced);
        let b_inv = linalg::inverse(&q, &b).expect("full rank");
        let r_inv = linalg::inverse(&q, &r).ok_or_else(|| TestCaseError::fail("reduced basis singular"))?;
        // R = U B and B = V R with U, V integral: the lattices coincide
        check(integral(&linalg::mat_mul(&q, &r, &b_inv)), "reduced vectors lie in the lattice")?;
        check(integral(&linalg::mat_mul(&q, &b, &r_inv)), "original vectors lie in the reduced lattice")?;
        let norm = |v: &[BigInt]| v.iter().map(|x| x * x).sum::<BigInt>();
        let shortest_in = basis.iter().map(|v| norm(v)).min().expect("nonempty");
        check(norm(&reduced[0]) <= shortest_in.clone() * BigInt::from(1u64 << (b.rows() - 1)), "first vector bound")?;
        Ok(())
    }))
}

fn poly() -> impl Strategy<Value = PolyAB> {
    prop::collection::vec(((0u32..=2, 0u32..=2), -4i64..=4), 1..=3).prop_map(|terms| {
        PolyAB::from_terms(terms.into_iter().map(|(m, c)| (m, NfElem::from_int(c))))
    })
}

/// Anything built from the generators reduces to zero, and division reconstructs its input.
pub fn buchberger_membership(seed: u64, cases: u32) -> Result<(), String> {
    let strategy = (prop::collection::vec(poly(), 1..=3), prop::collection::vec(poly(), 3), poly(), any::<bool>());
    report(runner(seed, cases).run(&strategy, |(gens, mults, other, ab)| {
        let order = if ab { LexOrder::AB } else { LexOrder::BA };
        let gens: Vec<PolyAB> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = buchberger(&gens, order);
        check(gb.is_groebner() && gb.is_reduced(), "reduced Groebner basis")?;
        for g in &gens {
            check(gb.contains(g), "generator in ideal")?;
        }
        let combo = gens.iter().zip(&mults).fold(PolyAB::zero(), |acc, (g, h)| acc.add(&g.mul(h)));
        check(gb.contains(&combo), "combination in ideal")?;
        let d = divide(&other, &gb.polys, order);
        let rebuilt = d.quotients.iter().zip(&gb.polys).fold(d.remainder.clone(), |acc, (q, g)| acc.add(&q.mul(g)));
        check(rebuilt == other, "division identity")?;
        // a remainder that is nonzero is itself outside the ideal
        check(d.remainder.is_zero() == gb.contains(&other), "membership by remainder")?;
        Ok(())
    }))
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// |a_p| ≤ 2√p for every good prime up to 150, and a_p = 0 at p ≡ 2 mod 3 for the CM curves.
pub fn hasse_supersingular() -> Result<(), String> {
    let curves = [
        ("27", EllipticCurve::e27(), true),
        ("36", EllipticCurve::e36(), true),
        ("108", EllipticCurve::e108(), true),
        ("54a", EllipticCurve::e54_1(), false),
        ("54b", EllipticCurve::e54_2(), false),
    ];
    for (name, e, cm) in &curves {
        let f = newform(e, 150);
        for p in primes_up_to(150) {
            if e.conductor % p == 0 {
                continue;
            }
            let ap = ec_ap(e, p);
            if (ap * ap) as u64 > 4 * p {
                return Err(format!("curve {name}: a_{p} = {ap} violates the Hasse bound"));
            }
            if *cm && p % 3 == 2 && ap != 0 {
                return Err(format!("curve {name}: a_{p} = {ap} at a supersingular prime"));
            }
            if *f.coeff(p as usize) != Rational::from_integer(ap.into()) {
                return Err(format!("curve {name}: q^{p} coefficient differs from a_{p}"));
            }
        }
    }
    Ok(())
}

/// Every suite, for the acceptance run.
pub fn all_suites(seed: u64, cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("field axioms and sigma", field_axioms(seed, cases)),
        ("kernel/rank duality", kernel_rank(seed, cases)),
        ("LLL lattice preservation", lll_lattice(seed, cases)),
        ("Buchberger membership", buchberger_membership(seed, cases)),
        ("Hasse bound and supersingular vanishing", hasse_supersingular()),
    ]
}
