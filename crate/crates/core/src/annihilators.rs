//! Squares, U-operator annihilators, inner ideals and idempotents.
//!
//! `⊥S = {x : U_a x = 0 for all a ∈ S}` is an intersection of kernels and so a
//! subspace. `S^⊥ = {a : U_a x = 0 for all x ∈ S}` is quadratic in `a` and is
//! only computed by enumeration.

use rayon::prelude::*;

use crate::algebra::{squares_span, Element, JordanAlgebra};
use crate::enumerate::{ElementSpace, Enumerated};
use crate::field::Field;
use crate::linalg::{kernel, Matrix, Subspace};
use crate::quadratic::{Preimage, QuadraticMap};
use crate::verdict::{Verdict, Witness};
use crate::Error;

/// `A² = {a² : a ∈ A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquaresSet<F: Field> {
    /// Every square, deduplicated, in lexicographic order.
    Exhaustive(Vec<Element<F>>),
    /// Squares are only known to lie in this span; membership goes through
    /// [`has_square_root`].
    Symbolic { span: Subspace<F> },
}

impl<F: Field> SquaresSet<F> {
    pub fn span(&self, a: &JordanAlgebra<F>) -> Subspace<F> {
        match self {
            SquaresSet::Exhaustive(list) => {
                Subspace::span(a.field(), a.dim(), list.iter().map(|x| x.coords().to_vec()))
            }
            SquaresSet::Symbolic { span } => span.clone(),
        }
    }
}

pub fn squares_set<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> SquaresSet<F> {
    match Enumerated::new(a, budget) {
        Ok(en) => SquaresSet::Exhaustive(en.squares().iter().map(|&s| en.element(s as usize)).collect()),
        Err(_) => SquaresSet::Symbolic { span: squares_span(a) },
    }
}

/// Coordinate values tried by the bounded searches over infinite fields.
fn search_values<F: Field>(field: &F, dim: usize) -> Vec<F::Elem> {
    let wide = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];
    let narrow = [(0, 1), (1, 1), (-1, 1)];
    let pick: &[(i64, i64)] = if (wide.len() as f64).powi(dim as i32) <= 120_000.0 {
        &wide
    } else {
        &narrow
    };
    pick.iter()
        .map(|&(n, d)| crate::field::scalar(field, n, d))
        .collect()
}

/// Vectors of a bounded coefficient grid (over `basis`), in grid order.
/// Returns `None` when the grid exceeds `limit`.
fn grid<F: Field>(field: &F, basis: &[Vec<F::Elem>], ambient: usize, limit: usize) -> Option<Vec<Vec<F::Elem>>> {
    let values = search_values(field, basis.len());
    let total = (values.len() as f64).powi(basis.len() as i32);
    if total > limit as f64 {
        return None;
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0usize; basis.len()];
    loop {
        let mut v = vec![field.zero(); ambient];
        for (d, b) in digits.iter().zip(basis) {
            if *d == 0 {
                continue;
            }
            for (c, bc) in v.iter_mut().zip(b) {
                *c = field.add(c, &field.mul(&values[*d], bc));
            }
        }
        out.push(v);
        let mut pos = basis.len();
        loop {
            if pos == 0 {
                return Some(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < values.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

const SEARCH_LIMIT: usize = 250_000;

/// Whether `v ∈ A²`. Exhaustive over small prime fields; otherwise a sign
/// analysis of `b ↦ b²` followed by a bounded search for a root.
pub fn has_square_root<F: Field>(a: &JordanAlgebra<F>, v: &Element<F>, budget: u64) -> Verdict<F> {
    if a.is_zero(v) {
        return Verdict::holds_with(Witness::SquareRoot {
            v: v.clone(),
            root: a.zero(),
        });
    }
    if let Ok(space) = ElementSpace::new(a, budget) {
        let root = (0..space.len()).into_par_iter().find_first(|&i| a.square(&space.element(i)) == *v);
        return match root {
            Some(i) => Verdict::holds_with(Witness::SquareRoot {
                v: v.clone(),
                root: space.element(i),
            }),
            None => Verdict {
                outcome: crate::Outcome::Fails,
                witness: None,
                reason: Some(format!("no element among all {} squares to it", space.len())),
            },
        };
    }
    let sq = QuadraticMap::squaring(a);
    let region = match sq.preimage(v.coords(), &a.full_space()) {
        Preimage::Empty => {
            return Verdict {
                outcome: crate::Outcome::Fails,
                witness: None,
                reason: Some("the squaring map cannot reach this element (sign analysis)".into()),
            }
        }
        Preimage::Exact(w) | Preimage::Bounded(w) => w,
    };
    if let Some(candidates) = grid(a.field(), region.basis(), a.dim(), SEARCH_LIMIT) {
        if let Some(root) = candidates.into_iter().find(|b| a.mul_coords(b, b) == v.coords()) {
            return Verdict::holds_with(Witness::SquareRoot {
                v: v.clone(),
                root: Element::new(root),
            });
        }
    }
    Verdict::unknown(format!(
        "no root found by bounded search; roots confined to a subspace of dimension {}",
        region.dim()
    ))
}

/// `⊥S = ⋂_{a ∈ S} ker U_a`; `⊥∅ = A`.
pub fn left_annihilator<F: Field>(a: &JordanAlgebra<F>, s: &[Element<F>]) -> Subspace<F> {
    if s.is_empty() {
        return a.full_space();
    }
    let rows: Vec<Vec<F::Elem>> = s.iter().flat_map(|x| a.u_op(x).row_vecs()).collect();
    kernel(&Matrix::from_rows(a.field(), a.dim(), &rows))
}

/// `S^⊥ = {a : U_a x = 0 for all x ∈ S}`, in lexicographic order.
pub fn right_annihilator<F: Field>(
    a: &JordanAlgebra<F>,
    s: &[Element<F>],
    budget: u64,
) -> Result<Vec<Element<F>>, Error> {
    let space = ElementSpace::new(a, budget)?;
    let found: Vec<usize> = (0..space.len())
        .into_par_iter()
        .filter(|&i| {
            let u = a.u_op(&space.element(i));
            s.iter().all(|x| u.apply(x.coords()).iter().all(|c| a.field().is_zero(c)))
        })
        .collect();
    Ok(found.into_iter().map(|i| space.element(i)).collect())
}

/// `U_e(A)`.
pub fn inner_ideal<F: Field>(a: &JordanAlgebra<F>, e: &Element<F>) -> Subspace<F> {
    a.inner_ideal(e)
}

/// Operator `U_{1−e} = I − 3L_e + 2L_e²` for an idempotent `e`, evaluated in
/// the unital hull when `A` has no unit; it always maps `A` into `A`.
pub fn complement_u_op<F: Field>(a: &JordanAlgebra<F>, e: &Element<F>) -> Matrix<F> {
    let f = a.field();
    let l = a.l_op(e);
    Matrix::identity(f, a.dim())
        .sub(&l.scale(&f.from_i64(3)))
        .add(&l.matmul(&l).scale(&f.from_i64(2)))
}

/// `U_{1−e}(A)` for an idempotent `e`.
pub fn complement_inner_ideal<F: Field>(a: &JordanAlgebra<F>, e: &Element<F>) -> Subspace<F> {
    crate::linalg::image(&complement_u_op(a, e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotents<F: Field> {
    /// In lexicographic order; always contains 0 and the unit if present.
    pub elements: Vec<Element<F>>,
    /// False when the list came from a bounded search over an infinite field.
    pub complete: bool,
}

pub fn idempotents<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> Idempotents<F> {
    if let Ok(en) = Enumerated::new(a, budget) {
        return Idempotents {
            elements: en.idempotent_elements(),
            complete: true,
        };
    }
    let mut found = vec![a.zero()];
    if let Some(u) = a.unit() {
        found.push(u.clone());
    }
    let basis: Vec<Vec<F::Elem>> = (0..a.dim()).map(|i| a.basis(i).into_coords()).collect();
    let candidates = grid(a.field(), &basis, a.dim(), SEARCH_LIMIT).unwrap_or_else(|| {
        // Too many coordinates for a grid: basis vectors and unit differences only.
        let mut c = basis.clone();
        if let Some(u) = a.unit() {
            c.extend(basis.iter().map(|b| a.sub(u, &Element::new(b.clone())).into_coords()));
        }
        c
    });
    found.extend(
        candidates
            .into_par_iter()
            .filter(|e| a.mul_coords(e, e) == *e)
            .map(Element::new)
            .collect::<Vec<_>>(),
    );
    found.sort();
    found.dedup();
    Idempotents {
        elements: found,
        complete: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{example2, full_matrix_jordan, hermitian_matrix_algebra, nonunital_nil};
    use crate::field::{PrimeField, Rationals};
    use crate::DEFAULT_BUDGET;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn squares_of_small_algebras() {
        let nu = nonunital_nil(2, f3()).unwrap();
        assert_eq!(squares_set(&nu, DEFAULT_BUDGET), SquaresSet::Exhaustive(vec![nu.zero()]));
        let nu_q = nonunital_nil(2, Rationals).unwrap();
        assert_eq!(squares_set(&nu_q, DEFAULT_BUDGET).span(&nu_q), nu_q.zero_space());
        let e2 = example2(f3());
        match squares_set(&e2, DEFAULT_BUDGET) {
            SquaresSet::Exhaustive(list) => assert_eq!(list.len(), 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn square_roots() {
        let a = example2(Rationals);
        assert!(has_square_root(&a, &a.zero(), DEFAULT_BUDGET).is_holds());
        assert!(has_square_root(&a, &a.basis(1), DEFAULT_BUDGET).is_fails());
        let v = a.element_from_ints(&[1, 2]);
        let r = has_square_root(&a, &v, DEFAULT_BUDGET);
        match r.witness {
            Some(Witness::SquareRoot { root, .. }) => assert_eq!(a.square(&root), v),
            other => panic!("{other:?}"),
        }
        let m3 = full_matrix_jordan(3, f3()).unwrap();
        let e13 = m3.basis(2);
        let r = has_square_root(&m3, &e13, DEFAULT_BUDGET);
        match r.witness {
            Some(Witness::SquareRoot { root, .. }) => assert_eq!(m3.square(&root), e13),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn left_annihilators_of_e2() {
        let a = example2(Rationals);
        assert!(left_annihilator(&a, &[a.basis(1)]).is_full());
        assert!(left_annihilator(&a, &[a.zero()]).is_full());
        assert!(left_annihilator(&a, &[a.unit().unwrap().clone()]).is_zero());
        let x = a.element_from_ints(&[3, -7]);
        assert!(left_annihilator(&a, &[x]).is_zero());
        assert!(left_annihilator(&a, &[]).is_full());
    }

    #[test]
    fn right_annihilators() {
        let a = example2(f3());
        let one = a.unit().unwrap().clone();
        let r = right_annihilator(&a, &[one], DEFAULT_BUDGET).unwrap();
        assert_eq!(r, vec![a.zero(), a.basis(1), a.element_from_ints(&[0, 2])]);
        assert_eq!(right_annihilator(&a, &[a.zero()], DEFAULT_BUDGET).unwrap().len(), 9);
        let nu = nonunital_nil(2, f3()).unwrap();
        let s = vec![nu.basis(0), nu.element_from_ints(&[1, 2])];
        assert_eq!(right_annihilator(&nu, &s, DEFAULT_BUDGET).unwrap().len(), 9);
    }

    #[test]
    fn inner_ideals() {
        let a = full_matrix_jordan(2, f3()).unwrap();
        assert!(inner_ideal(&a, a.unit().unwrap()).is_full());
        assert!(inner_ideal(&a, &a.zero()).is_zero());
        let e11 = a.basis(0);
        assert_eq!(inner_ideal(&a, &e11), Subspace::span(a.field(), 4, [e11.into_coords()]));
    }

    #[test]
    fn complement_operator_matches_hull() {
        let a = full_matrix_jordan(2, f3()).unwrap();
        let one = a.unit().unwrap();
        let e11 = a.basis(0);
        let direct = a.u_op(&a.sub(one, &e11));
        assert_eq!(complement_u_op(&a, &e11), direct);
    }

    #[test]
    fn idempotent_lists() {
        let e2 = example2(f3());
        let idem = idempotents(&e2, DEFAULT_BUDGET);
        assert!(idem.complete);
        assert_eq!(idem.elements, vec![e2.zero(), e2.unit().unwrap().clone()]);
        let nu = nonunital_nil(3, f3()).unwrap();
        assert_eq!(idempotents(&nu, DEFAULT_BUDGET).elements, vec![nu.zero()]);
        let m2 = full_matrix_jordan(2, f3()).unwrap();
        let idem = idempotents(&m2, DEFAULT_BUDGET).elements;
        for e in [m2.zero(), m2.unit().unwrap().clone(), m2.basis(0), m2.basis(3)] {
            assert!(idem.contains(&e));
        }
        let h2 = hermitian_matrix_algebra(2, 1, Rationals).unwrap();
        let idem = idempotents(&h2, DEFAULT_BUDGET);
        assert!(!idem.complete);
        assert!(idem.elements.iter().all(|e| h2.is_idempotent(e)));
        // diag(1,0), diag(0,1) and the two rank-one projections with entries ±1/2.
        assert!(idem.elements.len() >= 6);
    }
}
