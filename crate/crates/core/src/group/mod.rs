//! B₀(108) as a group of projective 10×10 matrices.

mod perm;

pub use perm::{abelian_invariants, reference_fingerprint, reference_group, GroupFingerprint, Perm, PermGroup};

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::exact::{Field, NfElem, NumberField, ResidueMap};
use crate::linalg::{self, Matrix};

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// A matrix up to nonzero scalars, scaled so the first nonzero entry
/// (row-major) is 1. Equality of representatives is equality of classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMatrix<E> {
    m: Matrix<E>,
}

impl<E: Clone + Eq> ProjMatrix<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, m: Matrix<E>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Dimension(format!("{}x{} matrix is not square", m.rows(), m.cols())));
        }
        let lead = m.entries().iter().find(|x| !f.is_zero(x)).ok_or(Error::ZeroPoint)?;
        let inv = f.inv(lead).expect("nonzero");
        if f.is_one(&inv) {
            return Ok(ProjMatrix { m });
        }
        Ok(ProjMatrix { m: m.map(|x| f.mul(x, &inv)) })
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        ProjMatrix { m: linalg::identity(f, n) }
    }

    pub fn matrix(&self) -> &Matrix<E> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        ProjMatrix::new(f, linalg::mat_mul(f, &self.m, &other.m)).expect("product of invertible matrices")
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let inv = linalg::inverse(f, &self.m).expect("projective matrices are invertible");
        ProjMatrix::new(f, inv).expect("nonzero")
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: u32) -> Self {
        let mut out = ProjMatrix::identity(f, self.dim());
        for _ in 0..k {
            out = out.mul(f, self);
        }
        out
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        *self == ProjMatrix::identity(f, self.dim())
    }

    pub fn commutes<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.mul(f, other) == other.mul(f, self)
    }
}

impl ProjMatrix<NfElem> {
    /// Entrywise Galois action.
    pub fn sigma(&self) -> Self {
        ProjMatrix::new(&NumberField, self.m.map(NfElem::sigma)).expect("σ is injective")
    }

    pub fn reduce(&self, r: &ResidueMap) -> Result<ProjMatrix<u64>> {
        ProjMatrix::new(&r.field(), self.m.try_map(|x| r.apply(x))?)
    }
}

/// Result of a breadth-first closure.
pub struct Closure<T> {
    pub elements: Vec<T>,
    /// `right[g][i]` is the index of `elements[i] * gens[g]`.
    pub right: Vec<Vec<usize>>,
    /// For each non-identity element, the BFS parent and generator used.
    pub parent: Vec<Option<(usize, usize)>>,
}

/// Breadth-first closure of `gens` under `mul`, deterministic insertion order.
pub fn closure_by<T: Clone + Eq + Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    bound: usize,
) -> Result<Closure<T>> {
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut parent = vec![None];
    index.insert(identity, 0);
    let mut right = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < elements.len() {
        for (g, gen) in gens.iter().enumerate() {
            let y = mul(&elements[i], gen);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elements.len() >= bound {
                        return Err(Error::GroupTooLarge(bound));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    parent.push(Some((i, g)));
                    elements.len() - 1
                }
            };
            right[g].push(j);
        }
        i += 1;
    }
    Ok(Closure { elements, right, parent })
}

/// A finite group of projective matrices together with its right regular representation.
#[derive(Clone, Debug)]
pub struct MatrixGroup<E> {
    pub generators: Vec<ProjMatrix<E>>,
    pub elements: Vec<ProjMatrix<E>>,
    index: HashMap<ProjMatrix<E>, usize>,
    regular: Vec<Perm>,
}

impl<E: Clone + Eq + Hash> MatrixGroup<E> {
    pub fn generate<F: Field<Elem = E>>(f: &F, generators: Vec<ProjMatrix<E>>, bound: usize) -> Result<Self> {
        let n = generators.first().map_or(0, ProjMatrix::dim);
        let closed = closure_by(ProjMatrix::identity(f, n), &generators, |a, b| a.mul(f, b), bound)?;
        let gen_perms: Vec<Perm> =
            closed.right.iter().map(|r| Perm::from_images(r.iter().map(|&j| j as u32).collect())).collect();
        let mut regular = vec![Perm::identity(closed.elements.len())];
        for p in closed.parent.iter().skip(1) {
            let (i, g) = p.expect("non-identity elements have parents");
            let next = regular[i].then(&gen_perms[g]);
            regular.push(next);
        }
        let index = closed.elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(MatrixGroup { generators, elements: closed.elements, index, regular })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &ProjMatrix<E>) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &ProjMatrix<E>) -> bool {
        self.index.contains_key(g)
    }

    /// Right regular representation; `x ↦ perm` is a homomorphism under [`Perm::then`].
    pub fn regular(&self) -> PermGroup {
        let generators = self.generators.iter().map(|g| self.regular[self.index[g]].clone()).collect();
        PermGroup { generators, elements: self.regular.clone() }
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[ProjMatrix<E>]) -> Vec<ProjMatrix<E>> {
        let targets: Vec<&Perm> = set.iter().map(|g| &self.regular[self.index[g]]).collect();
        self.elements
            .iter()
            .zip(&self.regular)
            .filter(|(_, p)| targets.iter().all(|t| p.commutes_with(t)))
            .map(|(x, _)| x.clone())
            .collect()
    }

    pub fn center(&self) -> Vec<ProjMatrix<E>> {
        self.centralizer(&self.generators)
    }

    pub fn fingerprint(&self) -> Result<GroupFingerprint> {
        self.regular().fingerprint()
    }
}

/// The four generators of B₀(108), in the order w₄, w₂₇, S₂, S₃.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators<T> {
    pub w4: T,
    pub w27: T,
    pub s2: T,
    pub s3: T,
}

impl<T: Clone> Generators<T> {
    pub fn to_vec(&self) -> Vec<T> {
        vec![self.w4.clone(), self.w27.clone(), self.s2.clone(), self.s3.clone()]
    }

    pub fn names() -> [&'static str; 4] {
        ["w4", "w27", "S2", "S3"]
    }
}

fn q(n: i64, d: i64) -> NfElem {
    NfElem::from_frac(n, d)
}

fn block_diag(v: [[NfElem; 4]; 4], w: [[NfElem; 6]; 6]) -> Matrix<NfElem> {
    let mut m = Matrix::filled(10, 10, NfElem::zero());
    for (i, row) in v.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    for (i, row) in w.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            m.set(i + 4, j + 4, x);
        }
    }
    m
}

fn diag<const N: usize>(d: [i64; N]) -> [[NfElem; N]; N] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { q(d[i], 1) } else { q(0, 1) }))
}

/// Unnormalized generator matrices: column `i` holds the image of `e_i`.
pub fn b0_matrices() -> Generators<Matrix<NfElem>> {
    let o = || q(0, 1);
    let h = |n: i64| q(n, 2);
    let zh = NfElem::z().scale(&crate::exact::rat(1, 2));
    let zeta = NfElem::zeta();
    let zeta_inv = zeta.inverse().expect("unit");
    let s3_corner = (&NfElem::one() - &zeta).scale(&crate::exact::rat(-1, 2));
    let s3_diag = zeta_inv.scale(&crate::exact::rat(-1, 2));

    let w4 = block_diag(diag([1, -1, 1, -1]), diag([1, 1, -1, -1, -1, -1]));
    let w27 = block_diag(diag([1, 1, -1, -1]), diag([-1, -1, 1, 1, -1, -1]));
    let s2 = block_diag(
        [
            [h(-1), h(-3), o(), o()],
            [h(-1), h(1), o(), o()],
            [o(), o(), h(-1), h(-3)],
            [o(), o(), h(-1), h(1)],
        ],
        [
            [h(-1), o(), o(), o(), h(-3), o()],
            [o(), q(1, 1), o(), o(), o(), o()],
            [o(), o(), q(-1, 1), o(), o(), o()],
            [o(), o(), o(), q(-1, 1), o(), o()],
            [h(-1), o(), o(), o(), h(1), o()],
            [o(), o(), o(), o(), o(), q(-1, 1)],
        ],
    );
    let s3 = block_diag(
        [
            [h(-1), o(), zh.clone(), o()],
            [o(), h(-1), o(), zh.clone()],
            [zh.clone(), o(), h(-1), o()],
            [o(), zh, o(), h(-1)],
        ],
        [
            [zeta.clone(), o(), o(), o(), o(), o()],
            [o(), zeta_inv, o(), o(), o(), o()],
            [o(), o(), s3_diag.clone(), o(), o(), s3_corner.clone()],
            [o(), o(), o(), zeta.clone(), o(), o()],
            [o(), o(), o(), o(), zeta, o()],
            [o(), o(), s3_corner, o(), o(), s3_diag],
        ],
    );
    Generators { w4, w27, s2, s3 }
}

pub fn b0_generators() -> Generators<ProjMatrix<NfElem>> {
    let m = b0_matrices();
    let p = |x: Matrix<NfElem>| ProjMatrix::new(&NumberField, x).expect("nonzero");
    Generators { w4: p(m.w4), w27: p(m.w27), s2: p(m.s2), s3: p(m.s3) }
}

/// w₁₀₈ = w₄ w₂₇.
pub fn w108() -> ProjMatrix<NfElem> {
    let g = b0_generators();
    g.w4.mul(&NumberField, &g.w27)
}

/// τ₃ = S₃ w₂₇ S₃ w₂₇, the generator of the centre.
pub fn tau3() -> ProjMatrix<NfElem> {
    let f = NumberField;
    let g = b0_generators();
    g.s3.mul(&f, &g.w27).mul(&f, &g.s3).mul(&f, &g.w27)
}

pub fn b0_group() -> Result<MatrixGroup<NfElem>> {
    MatrixGroup::generate(&NumberField, b0_generators().to_vec(), DEFAULT_CLOSURE_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::qexp::{delta, standard_basis, Newforms, QSeries};

    fn f() -> NumberField {
        NumberField
    }

    #[test]
    fn generator_orders() {
        let g = b0_generators();
        for x in [&g.w4, &g.w27, &g.s2] {
            assert!(!x.is_identity(&f()));
            assert!(x.pow(&f(), 2).is_identity(&f()));
        }
        assert!(!g.s3.is_identity(&f()));
        assert!(g.s3.pow(&f(), 3).is_identity(&f()));
    }

    #[test]
    fn w108_is_central_in_its_factors() {
        let g = b0_generators();
        let w = w108();
        assert!(w.commutes(&f(), &g.w4));
        assert!(w.commutes(&f(), &g.w27));
        assert_eq!(w, g.w27.mul(&f(), &g.w4));
    }

    #[test]
    fn tau3_shape() {
        let t = tau3();
        assert!(t.pow(&f(), 3).is_identity(&f()));
        let m = t.matrix();
        let zeta = NfElem::zeta();
        let zeta2 = &zeta * &zeta;
        for i in 0..10 {
            for j in 0..10 {
                let x = m.get(i, j);
                if i != j {
                    assert!(x.is_zero());
                } else if i < 4 {
                    assert!(x.is_one());
                } else {
                    assert!(*x == zeta || *x == zeta2);
                }
            }
        }
    }

    #[test]
    fn normalization_is_scalar_invariant() {
        let g = b0_generators();
        let lambda = &NfElem::c() + &NfElem::zeta();
        let scaled = g.s3.matrix().map(|x| x * &lambda);
        assert_eq!(ProjMatrix::new(&f(), scaled).unwrap(), g.s3);
    }

    #[test]
    fn s3_and_its_w27_conjugate_commute() {
        let g = b0_generators();
        let conj = g.w27.mul(&f(), &g.s3).mul(&f(), &g.w27);
        assert!(g.s3.commutes(&f(), &conj));
    }

    #[test]
    fn b0_structure() {
        let grp = b0_group().unwrap();
        assert_eq!(grp.order(), 108);
        let centre = grp.center();
        assert_eq!(centre.len(), 3);
        let t = tau3();
        assert!(centre.contains(&t) && centre.contains(&t.pow(&f(), 2)));
        assert_eq!(grp.fingerprint().unwrap(), reference_fingerprint());
        let g = b0_generators();
        let cent = grp.centralizer(&[g.w4.clone(), g.w27.clone()]);
        assert_eq!(cent.len(), 12);
        let small = MatrixGroup::generate(&f(), vec![g.w4, g.w27, t], 100).unwrap();
        assert!(cent.iter().all(|x| small.contains(x)));
        assert_eq!(small.order(), 12);
    }

    #[test]
    fn klein_subgroup() {
        let g = b0_generators();
        let grp = MatrixGroup::generate(&f(), vec![g.w4.clone(), g.w27.clone()], 100).unwrap();
        assert_eq!(grp.order(), 4);
        assert_eq!(grp.center().len(), 4);
        let w4 = MatrixGroup::generate(&f(), vec![g.w4], 10).unwrap();
        assert_eq!(w4.center().len(), w4.order());
    }

    #[test]
    fn closure_bound() {
        let g = b0_generators();
        assert_eq!(
            MatrixGroup::generate(&f(), g.to_vec(), 50).unwrap_err(),
            Error::GroupTooLarge(50)
        );
    }

    fn apply_column(m: &Matrix<NfElem>, col: usize, e: &[QSeries]) -> QSeries {
        let mut acc = QSeries::zero(e[0].prec());
        for (j, s) in e.iter().enumerate() {
            let x = m.get(j, col);
            if !x.is_zero() {
                acc = acc.add(&s.scale(x.as_rational().expect("rational block")));
            }
        }
        acc
    }

    #[test]
    fn s2_columns_match_q_expansion_rules() {
        let prec = 60;
        let b = standard_basis(prec).unwrap();
        let nf = Newforms::compute(prec);
        let s2 = b0_matrices().s2;
        let half = rat(1, 2);
        // f27 = (e5 + e9)/2 and f27|S2 = -(f27 + f27|δ4)
        let image = apply_column(&s2, 4, &b.e).add(&apply_column(&s2, 8, &b.e)).scale(&half);
        let expected = nf.f27.add(&delta(&nf.f27, 4)).truncate(prec).scale(&rat(-1, 1));
        assert_eq!(image, expected);
        // level 54 eigenforms: f|S2 = -f + a2 f|δ2, with f = (e1 + e2)/2 and (e3 + e4)/2
        for (cols, form) in [((0, 1), &nf.f54_2), ((2, 3), &nf.f54_1)] {
            let image = apply_column(&s2, cols.0, &b.e).add(&apply_column(&s2, cols.1, &b.e)).scale(&half);
            let a2 = form.coeff(2).clone();
            let expected = form.scale(&rat(-1, 1)).add(&delta(form, 2).scale(&a2)).truncate(prec);
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn galois_action_fixes_generators() {
        for g in b0_generators().to_vec() {
            assert_eq!(g.sigma(), g);
        }
    }
}
