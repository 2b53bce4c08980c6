//! Membership test for the class of Jordan algebras.
//!
//! Commutativity is structural. The Jordan identity `(a²b)a = a²(ba)` is
//! linear in `b`, so it holds iff the operators `L_{a²}` and `L_a` commute.
//!
//! - Over F_p with `p^dim <= budget` the commutator is checked for every `a`.
//! - Otherwise the fully linearized identity
//!   `((xy)w)z + ((yz)w)x + ((zx)w)y = (xy)(wz) + (yz)(wx) + (zx)(wy)`
//!   is checked on basis vectors. It is symmetric in `x, y, z`, so each
//!   multiset `{x, y, z}` is evaluated once, against all `w` at the same time
//!   through operator commutators. Recovering the cubic identity from its
//!   linearization divides by 3, so this route is refused over F_3.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Element, JordanAlgebra};
use crate::enumerate::ElementSpace;
use crate::field::{Field, FieldDesc};
use crate::linalg::LinOp;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationMethod {
    Exhaustive,
    Linearized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation<F: Field> {
    /// `unit · b_i ≠ b_i`.
    UnitAxiom { basis: usize },
    /// `(a²b)a ≠ a²(ba)` for the element `a` and basis vector `b`.
    JordanIdentity { a: Element<F>, b: usize },
    /// The linearized identity fails on basis vectors `x, y, z, w`.
    Linearized { x: usize, y: usize, z: usize, w: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<F: Field> {
    pub field: FieldDesc,
    pub method: ValidationMethod,
    pub checked: u64,
    pub violation: Option<Violation<F>>,
}

impl<F: Field> ValidationReport<F> {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

fn commutator<F: Field>(x: &LinOp<F>, y: &LinOp<F>) -> LinOp<F> {
    x.matmul(y).sub(&y.matmul(x))
}

pub fn validate_jordan<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> Result<ValidationReport<F>, Error> {
    let f = a.field();
    if let Some(u) = a.unit() {
        for i in 0..a.dim() {
            if a.mul(u, &a.basis(i)) != a.basis(i) {
                return Ok(ValidationReport {
                    field: f.desc(),
                    method: ValidationMethod::Exhaustive,
                    checked: i as u64 + 1,
                    violation: Some(Violation::UnitAxiom { basis: i }),
                });
            }
        }
    }
    match ElementSpace::new(a, budget) {
        Ok(space) => Ok(exhaustive(a, &space)),
        Err(_) if f.order() == Some(3) => Err(Error::CharThreeNeedsExhaustive { dim: a.dim(), budget }),
        Err(_) => Ok(linearized(a)),
    }
}

fn exhaustive<F: Field>(a: &JordanAlgebra<F>, space: &ElementSpace<F>) -> ValidationReport<F> {
    let violation = (0..space.len()).into_par_iter().find_map_first(|idx| {
        let x = space.element(idx);
        let l = a.l_op(&x);
        let l_sq = a.l_op(&a.square(&x));
        let c = commutator(&l_sq, &l);
        (0..a.dim())
            .find(|&j| c.column(j).iter().any(|v| !a.field().is_zero(v)))
            .map(|b| Violation::JordanIdentity { a: x, b })
    });
    ValidationReport {
        field: a.field().desc(),
        method: ValidationMethod::Exhaustive,
        checked: space.len() as u64,
        violation,
    }
}

fn linearized<F: Field>(a: &JordanAlgebra<F>) -> ValidationReport<F> {
    let n = a.dim();
    let left: Vec<LinOp<F>> = (0..n).map(|i| a.l_op(&a.basis(i))).collect();
    // L_{b_i b_j} as a combination of the basis operators.
    let pair_op = |i: usize, j: usize| -> LinOp<F> {
        let mut acc = LinOp::zeros(a.field(), n, n);
        for (k, c) in a.basis_product(i, j) {
            acc = acc.add(&left[*k].scale(c));
        }
        acc
    };
    let pairs: Vec<Vec<LinOp<F>>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| if j >= i { pair_op(i, j) } else { LinOp::zeros(a.field(), 0, 0) }).collect())
        .collect();
    let pair = |i: usize, j: usize| if i <= j { &pairs[i][j] } else { &pairs[j][i] };
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|x| (x..n).flat_map(move |y| (y..n).map(move |z| (x, y, z))))
        .collect();
    let violation = triples.par_iter().find_map_first(|&(x, y, z)| {
        let total = commutator(&left[z], pair(x, y))
            .add(&commutator(&left[x], pair(y, z)))
            .add(&commutator(&left[y], pair(z, x)));
        (0..n)
            .find(|&w| total.column(w).iter().any(|v| !a.field().is_zero(v)))
            .map(|w| Violation::Linearized { x, y, z, w })
    });
    ValidationReport {
        field: a.field().desc(),
        method: ValidationMethod::Linearized,
        checked: (n as u64).pow(4),
        violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{example2, hermitian_matrix_algebra};
    use crate::field::{PrimeField, Rationals};
    use crate::DEFAULT_BUDGET;
    use std::collections::BTreeMap;

    #[test]
    fn h2_over_q_is_jordan() {
        let a = hermitian_matrix_algebra(2, 1, Rationals).unwrap();
        let r = validate_jordan(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.method, ValidationMethod::Linearized);
        assert!(r.is_valid());
    }

    #[test]
    fn e2_over_f5_exhaustive() {
        let a = example2(PrimeField::new(5).unwrap());
        let r = validate_jordan(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.method, ValidationMethod::Exhaustive);
        assert_eq!(r.checked, 25);
        assert!(r.is_valid());
    }

    /// E2 with `1 · e12 = 2e12` but `1 · 1 = 1`.
    fn perturbed_e2<F: Field>(f: F) -> JordanAlgebra<F> {
        let mut products = BTreeMap::new();
        products.insert((0, 0), vec![(0, f.one())]);
        products.insert((0, 1), vec![(1, f.from_i64(2))]);
        JordanAlgebra::new(
            "perturbed E2",
            f.clone(),
            vec!["1".into(), "e12".into()],
            products,
            Some(vec![f.one(), f.zero()]),
        )
        .unwrap()
    }

    #[test]
    fn perturbed_e2_is_rejected() {
        let f = Rationals;
        let a = perturbed_e2(f);
        let r = validate_jordan(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.violation, Some(Violation::UnitAxiom { basis: 1 }));

        // Without the unit claim the Jordan identity itself fails at x = 1 + e12, b = 1.
        let a = a.with_unit(None);
        let x = a.element_from_ints(&[1, 1]);
        let b = a.basis(0);
        let lhs = a.mul(&a.mul(&a.square(&x), &b), &x);
        let rhs = a.mul(&a.square(&x), &a.mul(&b, &x));
        assert_ne!(lhs, rhs);
        let r = validate_jordan(&a, DEFAULT_BUDGET).unwrap();
        assert!(matches!(r.violation, Some(Violation::Linearized { .. })));
        let f5 = PrimeField::new(5).unwrap();
        let r = validate_jordan(&perturbed_e2(f5).with_unit(None), DEFAULT_BUDGET).unwrap();
        assert!(matches!(r.violation, Some(Violation::JordanIdentity { .. })));
    }

    #[test]
    fn char_three_beyond_budget_is_refused() {
        let f3 = PrimeField::new(3).unwrap();
        let a = hermitian_matrix_algebra(3, 1, f3).unwrap();
        assert!(matches!(
            validate_jordan(&a, 100),
            Err(Error::CharThreeNeedsExhaustive { dim: 6, budget: 100 })
        ));
        assert!(validate_jordan(&a, DEFAULT_BUDGET).unwrap().is_valid());
    }
}
