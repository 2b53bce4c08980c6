//! Solution sets of quadratic systems over an ordered field, certified by
//! semidefinite restriction.
//!
//! A quadratic map `Q : F^n → F^m` is given by one symmetric Gram matrix per
//! output coordinate. If a coordinate form `q_k` is semidefinite on the current
//! domain `W`, the equation `q_k(w) = t` is either impossible (wrong sign of
//! `t`) or, for `t = 0`, equivalent to `G_k w = 0`, which cuts `W` down to a
//! proper subspace. Repeating until every form vanishes on `W` yields the exact
//! solution set; if no form is semidefinite the search stops with an upper
//! bound. Over fields without an order only identically-zero forms are
//! usable, so the analysis degrades to `Bounded`.

use std::cmp::Ordering;

use crate::algebra::JordanAlgebra;
use crate::field::Field;
use crate::linalg::{kernel, Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct QuadraticMap<F: Field> {
    field: F,
    n: usize,
    forms: Vec<Matrix<F>>,
}

/// What is known about `{w ∈ W : Q(w) = target}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preimage<F: Field> {
    /// No solutions.
    Empty,
    /// The solution set is exactly this subspace.
    Exact(Subspace<F>),
    /// All solutions lie in this subspace; membership inside it is undecided.
    Bounded(Subspace<F>),
}

impl<F: Field> QuadraticMap<F> {
    /// Polarizes a quadratic function given on coordinate vectors.
    pub fn from_fn(field: &F, n: usize, q: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Self {
        let unit = |i: usize| {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            v
        };
        let diag: Vec<Vec<F::Elem>> = (0..n).map(|i| q(&unit(i))).collect();
        let m = diag.first().map_or(0, |d| d.len());
        let half = field.half();
        let mut forms = vec![Matrix::zeros(field, n, n); m];
        for i in 0..n {
            for (k, form) in forms.iter_mut().enumerate() {
                form.set(i, i, diag[i][k].clone());
            }
            for j in (i + 1)..n {
                let mut v = unit(i);
                v[j] = field.one();
                let both = q(&v);
                for (k, form) in forms.iter_mut().enumerate() {
                    let cross = field.sub(&field.sub(&both[k], &diag[i][k]), &diag[j][k]);
                    let g = field.mul(&cross, &half);
                    form.set(i, j, g.clone());
                    form.set(j, i, g);
                }
            }
        }
        QuadraticMap { field: field.clone(), n, forms }
    }

    /// `b ↦ b²`.
    pub fn squaring(a: &JordanAlgebra<F>) -> Self {
        Self::from_fn(a.field(), a.dim(), |b| a.mul_coords(b, b))
    }

    /// `z ↦ (z², z(zb_1), …, z(zb_n))`, whose zero set is the set of trivial elements.
    pub fn triviality(a: &JordanAlgebra<F>) -> Self {
        Self::from_fn(a.field(), a.dim(), |z| {
            let mut out = a.mul_coords(z, z);
            for i in 0..a.dim() {
                let zb = a.mul_coords(z, a.basis(i).coords());
                out.extend(a.mul_coords(z, &zb));
            }
            out
        })
    }

    /// Composes with a linear functional family: `w ↦ (φ_r(Q(w)))_r` for rows `φ_r`.
    pub fn compose_rows(&self, functionals: &[Vec<F::Elem>]) -> Self {
        let f = &self.field;
        let forms = functionals
            .iter()
            .map(|phi| {
                let mut acc = Matrix::zeros(f, self.n, self.n);
                for (c, form) in phi.iter().zip(&self.forms) {
                    if !f.is_zero(c) {
                        acc = acc.add(&form.scale(c));
                    }
                }
                acc
            })
            .collect();
        QuadraticMap {
            field: f.clone(),
            n: self.n,
            forms,
        }
    }

    pub fn outputs(&self) -> usize {
        self.forms.len()
    }

    pub fn eval(&self, w: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.forms
            .iter()
            .map(|g| {
                let gw = g.apply(w);
                w.iter()
                    .zip(&gw)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Solutions of `Q(w) = target` with `w ∈ domain`.
    pub fn preimage(&self, target: &[F::Elem], domain: &Subspace<F>) -> Preimage<F> {
        let f = &self.field;
        assert_eq!(target.len(), self.forms.len());
        let mut w = domain.clone();
        'shrink: loop {
            let basis = Matrix::from_rows(f, self.n, w.basis());
            let restricted: Vec<Matrix<F>> = self
                .forms
                .iter()
                .map(|g| basis.matmul(g).matmul(&basis.transpose()))
                .collect();
            let mut all_zero = true;
            for (g, t) in restricted.iter().zip(target) {
                match semidefinite_sign(g) {
                    Some(Ordering::Equal) => {
                        if !f.is_zero(t) {
                            return Preimage::Empty;
                        }
                    }
                    Some(sign) => {
                        all_zero = false;
                        let t_sign = f.sign(t).expect("semidefinite forms only arise over ordered fields");
                        if t_sign == sign.reverse() {
                            return Preimage::Empty;
                        }
                        if t_sign == Ordering::Equal {
                            // q(w) = 0 on a semidefinite form iff G w = 0.
                            let k = kernel(g);
                            let rows: Vec<Vec<F::Elem>> = k
                                .basis()
                                .iter()
                                .map(|coef| basis.transpose().apply(coef))
                                .collect();
                            w = Subspace::span(f, self.n, rows);
                            continue 'shrink;
                        }
                    }
                    None => all_zero = false,
                }
            }
            if all_zero {
                return if target.iter().all(|t| f.is_zero(t)) {
                    Preimage::Exact(w)
                } else {
                    Preimage::Empty
                };
            }
            return Preimage::Bounded(w);
        }
    }

    pub fn zero_set(&self, domain: &Subspace<F>) -> Preimage<F> {
        let zero = vec![self.field.zero(); self.forms.len()];
        self.preimage(&zero, domain)
    }
}

/// `Some(Equal)` for the zero form, `Some(Greater)`/`Some(Less)` for nonzero
/// positive/negative semidefinite forms, `None` if indefinite or the field has
/// no order.
pub fn semidefinite_sign<F: Field>(g: &Matrix<F>) -> Option<Ordering> {
    let f = g.field();
    let n = g.rows();
    let mut m: Vec<Vec<F::Elem>> = g.row_vecs();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sign = Ordering::Equal;
    loop {
        let pivot = active.iter().position(|&i| !f.is_zero(&m[i][i]));
        let Some(pos) = pivot else {
            let off_diag = active
                .iter()
                .any(|&i| active.iter().any(|&j| i != j && !f.is_zero(&m[i][j])));
            return if off_diag { None } else { Some(sign) };
        };
        let p = active.remove(pos);
        let s = f.sign(&m[p][p])?;
        if sign != Ordering::Equal && s != sign {
            return None;
        }
        sign = s;
        let inv = f.inv(&m[p][p]).expect("nonzero pivot");
        let col: Vec<F::Elem> = (0..n).map(|i| m[i][p].clone()).collect();
        for &i in &active {
            if f.is_zero(&col[i]) {
                continue;
            }
            let factor = f.mul(&col[i], &inv);
            for &j in &active {
                if !f.is_zero(&col[j]) {
                    m[i][j] = f.sub(&m[i][j], &f.mul(&factor, &col[j]));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{example2, example3, hermitian_matrix_algebra};
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn definiteness() {
        let f = Rationals;
        let psd = Matrix::from_rows(&f, 2, &[vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert_eq!(semidefinite_sign(&psd), Some(Ordering::Greater));
        let nsd = psd.scale(&q(-1));
        assert_eq!(semidefinite_sign(&nsd), Some(Ordering::Less));
        let hyperbolic = Matrix::from_rows(&f, 2, &[vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert_eq!(semidefinite_sign(&hyperbolic), None);
        let indefinite = Matrix::from_rows(&f, 2, &[vec![q(1), q(0)], vec![q(0), q(-1)]]);
        assert_eq!(semidefinite_sign(&indefinite), None);
        assert_eq!(semidefinite_sign(&Matrix::zeros(&f, 3, 3)), Some(Ordering::Equal));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(semidefinite_sign(&Matrix::identity(&f5, 2)), None);
    }

    #[test]
    fn polarization_reproduces_the_map() {
        let a = hermitian_matrix_algebra(2, 2, Rationals).unwrap();
        let sq = QuadraticMap::squaring(&a);
        let x = a.element_from_ints(&[1, -2, 3, 5]);
        assert_eq!(sq.eval(x.coords()), a.square(&x).into_coords());
    }

    #[test]
    fn e12_has_no_square_root_in_e2() {
        let a = example2(Rationals);
        let sq = QuadraticMap::squaring(&a);
        assert_eq!(sq.preimage(a.basis(1).coords(), &a.full_space()), Preimage::Empty);
        // Negative multiples of 1 are excluded by sign.
        assert_eq!(sq.preimage(&[q(-1), q(0)], &a.full_space()), Preimage::Empty);
        // 1 itself has roots; the analysis cannot shrink below the full space.
        assert!(matches!(sq.preimage(&[q(1), q(0)], &a.full_space()), Preimage::Bounded(_)));
    }

    #[test]
    fn trivial_elements_of_e3_form_the_nil_span() {
        let a = example3(2, Rationals).unwrap();
        let locus = QuadraticMap::triviality(&a).zero_set(&a.full_space());
        let expect = Subspace::span(&Rationals, 3, [a.basis(1).into_coords(), a.basis(2).into_coords()]);
        assert_eq!(locus, Preimage::Exact(expect));
    }

    #[test]
    fn formally_real_algebra_has_no_trivial_elements() {
        let a = hermitian_matrix_algebra(3, 4, Rationals).unwrap();
        let locus = QuadraticMap::triviality(&a).zero_set(&a.full_space());
        assert_eq!(locus, Preimage::Exact(a.zero_space()));
    }
}
