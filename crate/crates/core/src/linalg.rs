//! Dense matrices and canonical subspaces over an exact field.
//!
//! Operators act on column vectors: column `j` of a [`LinOp`] is the image of
//! the `j`-th basis vector. A [`Subspace`] is stored as the reduced row echelon
//! basis of its row space, so equal subspaces have identical representations
//! and can be hashed, compared and deduplicated directly.

use crate::field::Field;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Square matrix acting on coordinate vectors of an algebra.
pub type LinOp<F> = Matrix<F>;

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.field, self.rows)
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(&self.field, self.cols, self.row_vecs()).dim()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        let id = Self::identity(f, n);
        let mut rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(id.row(i).iter().cloned());
                r
            })
            .collect();
        let pivots = reduce_in_place(f, &mut rows, n);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let inv: Vec<Vec<F::Elem>> = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(f, n, &inv))
    }

    /// Some solution `x` of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = reduce_in_place(f, &mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Some(x)
    }
}

/// Gauss–Jordan elimination in place over the first `ncols` columns.
///
/// On return the first `pivots.len()` rows are the reduced echelon rows (in
/// increasing pivot order) and the remaining rows are zero on those columns.
fn reduce_in_place<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        if !field.is_one(&inv) {
            for v in rows[r].iter_mut() {
                *v = field.mul(v, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(pv) {
                    *v = field.sub(v, &field.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A linear subspace of `F^ambient`, stored in canonical reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

/// Canonical reduced row echelon basis of the span of `rows`.
pub fn rref<F: Field>(field: &F, ambient: usize, mut rows: Vec<Vec<F::Elem>>) -> Subspace<F> {
    for r in &rows {
        assert_eq!(r.len(), ambient, "row length does not match ambient dimension");
    }
    let pivots = reduce_in_place(field, &mut rows, ambient);
    rows.truncate(pivots.len());
    Subspace {
        field: field.clone(),
        ambient,
        basis: rows,
        pivots,
    }
}

/// `{v : op · v = 0}`.
pub fn kernel<F: Field>(op: &Matrix<F>) -> Subspace<F> {
    let f = op.field();
    let n = op.cols();
    let reduced = rref(f, n, op.row_vecs());
    let mut out = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (row, &p) in reduced.basis.iter().zip(&reduced.pivots) {
            v[p] = f.neg(&row[free]);
        }
        out.push(v);
    }
    rref(f, n, out)
}

/// Column space of `op`.
pub fn image<F: Field>(op: &Matrix<F>) -> Subspace<F> {
    rref(op.field(), op.rows(), op.transpose().row_vecs())
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        rref(field, ambient, Vec::new())
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        rref(field, ambient, Matrix::identity(field, ambient).row_vecs())
    }

    pub fn span(field: &F, ambient: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        rref(field, ambient, vectors.into_iter().collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the pivot coordinates; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let factor = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *o = f.sub(o, &f.mul(&factor, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, Error> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(rref(&self.field, self.ambient, rows))
    }

    /// Linear functionals vanishing on the subspace, as a subspace of the dual.
    pub fn annihilator(&self) -> Self {
        kernel(&Matrix::from_rows(&self.field, self.ambient, &self.basis))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, Error> {
        self.check_ambient(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, Error> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// Canonical representations make equality structural.
    pub fn equals(&self, other: &Self) -> Result<bool, Error> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// Image of the subspace under `op`.
    pub fn map(&self, op: &LinOp<F>) -> Self {
        Subspace::span(&self.field, op.rows(), self.basis.iter().map(|v| op.apply(v)))
    }

    /// Every vector of the subspace over a finite field, in lexicographic order
    /// of the coefficient tuple against the canonical basis.
    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let q = f.order().expect("enumeration needs a finite field");
        let k = self.dim();
        let total = (q as usize).pow(k as u32);
        let mut out = Vec::with_capacity(total);
        let mut coeffs = vec![0u64; k];
        for _ in 0..total {
            let mut v = vec![f.zero(); self.ambient];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                if *c == 0 {
                    continue;
                }
                let s = f.nth(*c);
                for (o, r) in v.iter_mut().zip(row) {
                    if !f.is_zero(r) {
                        *o = f.add(o, &f.mul(&s, r));
                    }
                }
            }
            out.push(v);
            for c in coeffs.iter_mut().rev() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, Residue};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn r(v: &[u32]) -> Vec<Residue> {
        v.iter().map(|&x| Residue(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let s = rref(&Rationals, 2, vec![vec![q(2), q(0)], vec![q(0), q(2)]]);
        assert_eq!(s.basis(), &[vec![q(1), q(0)], vec![q(0), q(1)]]);
        let f3 = PrimeField::new(3).unwrap();
        let s = rref(&f3, 2, vec![r(&[1, 1]), r(&[2, 2])]);
        assert_eq!(s.basis(), &[r(&[1, 1])]);
        let s = rref(&f3, 3, vec![]);
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn kernel_and_image_examples() {
        let f = Rationals;
        assert!(kernel(&Matrix::identity(&f, 3)).is_zero());
        assert!(kernel(&Matrix::zeros(&f, 2, 2)).is_full());
        let m = Matrix::from_rows(&f, 2, &[vec![q(1), q(2)], vec![q(2), q(4)]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert!(m.apply(&k.basis()[0]).iter().all(|x| *x == q(0)));
        assert_eq!(image(&m).basis(), &[vec![q(1), q(2)]]);
    }

    #[test]
    fn subspace_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let full = Subspace::full(&f3, 2);
        let x = Subspace::span(&f3, 2, [r(&[1, 0])]);
        let y = Subspace::span(&f3, 2, [r(&[0, 1])]);
        let d = Subspace::span(&f3, 2, [r(&[1, 1])]);
        assert_eq!(full.intersect(&x).unwrap(), x);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(x.sum(&d).unwrap(), full);
        assert!(x.intersect(&d).unwrap().is_zero());
        let other = Subspace::zero(&f3, 3);
        assert!(matches!(x.sum(&other), Err(Error::AmbientMismatch(2, 3))));
        assert_eq!(x.vectors().len(), 3);
        assert_eq!(full.vectors().len(), 9);
    }

    #[test]
    fn inverse_and_solve() {
        let f5 = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(&f5, 2, &[r(&[1, 2]), r(&[3, 4])]);
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
        let sing = Matrix::from_rows(&f5, 2, &[r(&[1, 2]), r(&[2, 4])]);
        assert!(sing.inverse().is_none());
        let x = m.solve(&r(&[1, 0])).unwrap();
        assert_eq!(m.apply(&x), r(&[1, 0]));
        assert!(sing.solve(&r(&[1, 0])).is_none());
    }

    fn random_matrix<F: Field>(field: &F, n: usize, rng: &mut ChaCha8Rng, zero_bias: bool) -> Matrix<F> {
        let rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if zero_bias && rng.gen_bool(0.5) {
                            field.zero()
                        } else {
                            field.from_i64(rng.gen_range(-3..=3))
                        }
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(field, n, &rows)
    }

    fn rank_nullity<F: Field>(field: &F) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..200 {
            let n = 1 + i % 5;
            let m = random_matrix(field, n, &mut rng, i % 2 == 0);
            let k = kernel(&m);
            let im = image(&m);
            assert_eq!(k.dim() + im.dim(), n);
            for v in k.basis() {
                assert!(m.apply(v).iter().all(|x| field.is_zero(x)));
            }
            // Lattice laws against a second random subspace.
            let w = image(&random_matrix(field, n, &mut rng, true));
            let meet = k.intersect(&w).unwrap();
            let join = k.sum(&w).unwrap();
            assert!(meet.is_subspace_of(&k).unwrap() && meet.is_subspace_of(&w).unwrap());
            assert!(k.is_subspace_of(&join).unwrap());
            assert_eq!(meet.dim() + join.dim(), k.dim() + w.dim());
        }
    }

    #[test]
    fn rank_nullity_over_q() {
        rank_nullity(&Rationals);
    }

    #[test]
    fn rank_nullity_over_f3_and_f7() {
        rank_nullity(&PrimeField::new(3).unwrap());
        rank_nullity(&PrimeField::new(7).unwrap());
    }

    #[test]
    fn canonical_form_is_representation_equality() {
        let f = Rationals;
        let a = Subspace::span(&f, 3, [vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]]);
        let b = Subspace::span(&f, 3, [vec![q(1), q(3), q(4)], vec![q(2), q(5), q(7)]]);
        assert!(a.is_subspace_of(&b).unwrap() && b.is_subspace_of(&a).unwrap());
        assert_eq!(a, b);
    }
}
