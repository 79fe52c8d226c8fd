//! Dense exact linear algebra over any [`Field`], plus fraction-free routines over Q.

mod bareiss;
mod hermite;
mod lll;

pub use bareiss::{integer_left_kernel, rank_rational};
pub use hermite::saturated_left_kernel;
pub use lll::{is_lll_reduced, lll_reduce, LLL_DELTA};

use crate::exact::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<E>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [E] {
        &mut self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Clone, Er>(&self, f: impl FnMut(&E) -> Result<T, Er>) -> Result<Matrix<T>, Er> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = Matrix::filled(n, n, f.zero());
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "inner dimensions differ");
    let mut out = Matrix::filled(a.rows, b.cols, f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if f.is_zero(y) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = f.add(&out.data[idx], &f.mul(x, y));
            }
        }
    }
    out
}

/// `vᵀ A` for a row vector `v`.
pub fn vec_mat<F: Field>(f: &F, v: &[F::Elem], a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(v.len(), a.rows);
    let mut out = vec![f.zero(); a.cols];
    for (i, x) in v.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            let y = a.get(i, j);
            if !f.is_zero(y) {
                *slot = f.add(slot, &f.mul(x, y));
            }
        }
    }
    out
}

/// Reduced row echelon form and its pivot columns.
pub struct Echelon<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, col))) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, col)).expect("nonzero pivot");
        for j in col..a.cols {
            let v = f.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        let pivot_row: Vec<(usize, F::Elem)> = (col..a.cols)
            .filter(|&j| !f.is_zero(a.get(r, j)))
            .map(|j| (j, a.get(r, j).clone()))
            .collect();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (j, pv) in &pivot_row {
                let v = f.sub(a.get(i, *j), &f.mul(&factor, pv));
                a.set(i, *j, v);
            }
        }
        pivots.push(col);
        r += 1;
    }
    Echelon { matrix: a, pivots }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).pivots.len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows;
    assert_eq!(n, m.cols, "square matrix required");
    let mut aug = Matrix::filled(n, 2 * n, f.zero());
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    let ech = rref(f, &aug);
    if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Matrix::filled(n, n, f.zero());
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, ech.matrix.get(i, n + j).clone());
        }
    }
    Some(out)
}

/// Basis of `{x : A x = 0}`.
pub fn right_kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let ech = rref(f, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols];
            v[free] = f.one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = f.neg(ech.matrix.get(r, free));
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{v : vᵀ A = 0}`.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    right_kernel(f, &m.transpose())
}

pub fn rank_of_vectors<F: Field>(f: &F, vs: &[Vec<F::Elem>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(f, &Matrix::from_rows(vs))
}

/// True iff the two families span the same subspace.
pub fn span_equal<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> bool {
    let ra = rank_of_vectors(f, a);
    let rb = rank_of_vectors(f, b);
    if ra != rb {
        return false;
    }
    let both: Vec<Vec<F::Elem>> = a.iter().chain(b.iter()).cloned().collect();
    rank_of_vectors(f, &both) == ra
}

/// Membership test against a fixed subspace via its reduced echelon basis.
pub struct SpanTester<F: Field> {
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> SpanTester<F> {
    pub fn new(f: &F, vs: &[Vec<F::Elem>]) -> Self {
        if vs.is_empty() {
            return SpanTester { basis: Vec::new(), pivots: Vec::new() };
        }
        let ech = rref(f, &Matrix::from_rows(vs));
        let basis = (0..ech.pivots.len()).map(|r| ech.matrix.row(r).to_vec()).collect();
        SpanTester { basis, pivots: ech.pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let factor = w[p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (slot, x) in w.iter_mut().zip(row) {
                if !f.is_zero(x) {
                    *slot = f.sub(slot, &f.mul(&factor, x));
                }
            }
        }
        w.iter().all(|x| f.is_zero(x))
    }
}
