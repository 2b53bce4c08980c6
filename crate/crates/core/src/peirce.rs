//! Peirce decomposition `A = A_1(e) ⊕ A_½(e) ⊕ A_0(e)` relative to an idempotent.
//!
//! With `L = L_e` the projections are `P_1 = U_e = 2L² − L`,
//! `P_0 = U_{1−e} = I − 3L + 2L²` and `P_½ = 4L − 4L²`. None of them needs a
//! unit, so non-unital algebras are handled directly; the formula for `P_0`
//! is what `U_{1−e}` computes in the unital hull.

use crate::algebra::{hull_embed, hull_restrict, unital_hull, Element, JordanAlgebra};
use crate::annihilators::complement_u_op;
use crate::field::Field;
use crate::linalg::{image, LinOp, Matrix, Subspace};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peirce<F: Field> {
    pub one: Subspace<F>,
    pub half: Subspace<F>,
    pub zero: Subspace<F>,
    /// `[P_1, P_½, P_0]`.
    pub projections: [LinOp<F>; 3],
}

impl<F: Field> Peirce<F> {
    /// Projections sum to `I`, are idempotent and annihilate each other.
    pub fn is_decomposition(&self) -> bool {
        let p = &self.projections;
        let n = p[0].rows();
        let sum = p[0].add(&p[1]).add(&p[2]);
        sum.is_identity()
            && (0..3).all(|i| {
                (0..3).all(|j| {
                    let prod = p[i].matmul(&p[j]);
                    if i == j {
                        prod == p[i]
                    } else {
                        prod.is_zero()
                    }
                })
            })
            && self.one.dim() + self.half.dim() + self.zero.dim() == n
    }
}

pub fn peirce<F: Field>(a: &JordanAlgebra<F>, e: &Element<F>) -> Result<Peirce<F>, Error> {
    if e.len() != a.dim() {
        return Err(Error::AlgebraMismatch(format!(
            "element has {} coordinates, algebra has dimension {}",
            e.len(),
            a.dim()
        )));
    }
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let f = a.field();
    let l = a.l_op(e);
    let l2 = l.matmul(&l);
    let p1 = a.u_op(e);
    let p0 = complement_u_op(a, e);
    let four = f.from_i64(4);
    let ph = l.sub(&l2).scale(&four);
    Ok(Peirce {
        one: image(&p1),
        half: image(&ph),
        zero: image(&p0),
        projections: [p1, ph, p0],
    })
}

/// `x ↦ 2{e x (1−e)}` computed with triple products in the unital hull.
/// Equals the `½`-projection; kept as an independent route for checks.
pub fn half_projection_by_triple<F: Field>(a: &JordanAlgebra<F>, e: &Element<F>) -> LinOp<F> {
    let f = a.field();
    let hull = unital_hull(a);
    let he = hull_embed(a, e);
    let one = hull.unit().expect("hull is unital").clone();
    let complement = hull.sub(&one, &he);
    let two = f.from_i64(2);
    let columns: Vec<Vec<F::Elem>> = (0..a.dim())
        .map(|i| {
            let x = hull_embed(a, &a.basis(i));
            let t = hull.scale(&two, &hull.triple(&he, &x, &complement));
            hull_restrict(a, &t).expect("the triple lands in A").into_coords()
        })
        .collect();
    Matrix::from_columns(f, a.dim(), &columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annihilators::idempotents;
    use crate::corpus::{example3, full_matrix_jordan, nonunital_nil};
    use crate::field::PrimeField;
    use crate::DEFAULT_BUDGET;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn unit_gives_trivial_decomposition() {
        let a = example3(2, f3()).unwrap();
        let p = peirce(&a, a.unit().unwrap()).unwrap();
        assert!(p.one.is_full() && p.half.is_zero() && p.zero.is_zero());
    }

    #[test]
    fn matrix_unit_e11() {
        let a = full_matrix_jordan(2, f3()).unwrap();
        let e = a.basis(0);
        let p = peirce(&a, &e).unwrap();
        let span = |xs: &[usize]| Subspace::span(a.field(), 4, xs.iter().map(|&i| a.basis(i).into_coords()));
        assert_eq!(p.one, span(&[0]));
        assert_eq!(p.zero, span(&[3]));
        assert_eq!(p.half, span(&[1, 2]));
        assert!(p.is_decomposition());
    }

    #[test]
    fn every_idempotent_decomposes() {
        let a = full_matrix_jordan(2, f3()).unwrap();
        for e in idempotents(&a, DEFAULT_BUDGET).elements {
            let p = peirce(&a, &e).unwrap();
            assert!(p.is_decomposition());
            assert_eq!(p.projections[1], half_projection_by_triple(&a, &e));
        }
        let nu = nonunital_nil(2, f3()).unwrap();
        let p = peirce(&nu, &nu.zero()).unwrap();
        assert!(p.zero.is_full() && p.is_decomposition());
    }

    #[test]
    fn rejects_non_idempotents() {
        let a = full_matrix_jordan(2, f3()).unwrap();
        assert!(matches!(peirce(&a, &a.basis(1)), Err(Error::NotIdempotent)));
    }
}
