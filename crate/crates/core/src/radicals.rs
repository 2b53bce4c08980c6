//! Trivial elements, ideals, inverses and the degenerate, nil and Jacobson
//! radicals.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{hull_embed, hull_restrict, is_ideal, quotient, unital_hull, Element, JordanAlgebra};
use crate::enumerate::{ElementSpace, Enumerated};
use crate::field::Field;
use crate::linalg::Subspace;
use crate::quadratic::{Preimage, QuadraticMap};
use crate::verdict::{Outcome, Verdict};
use crate::Error;

/// The trivial elements (`U_z = 0`, `z² = 0`) of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialElements<F: Field> {
    /// Every trivial element found, in element order; includes 0.
    pub elements: Vec<Element<F>>,
    /// Span of the trivial elements found.
    pub span: Subspace<F>,
    /// Whether `elements` lists all trivial elements (exhaustively, or because
    /// the trivial set was shown to equal `span`).
    pub complete: bool,
}

pub fn is_trivial<F: Field>(a: &JordanAlgebra<F>, z: &Element<F>) -> bool {
    a.is_zero(&a.square(z)) && a.u_op(z).is_zero()
}

pub fn trivial_elements<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> TrivialElements<F> {
    let f = a.field();
    if let Ok(space) = ElementSpace::new(a, budget) {
        let elements: Vec<Element<F>> = (0..space.len())
            .into_par_iter()
            .map(|i| space.element(i))
            .filter(|z| is_trivial(a, z))
            .collect();
        let span = Subspace::span(f, a.dim(), elements.iter().map(|z| z.coords().to_vec()));
        return TrivialElements {
            elements,
            span,
            complete: true,
        };
    }
    match QuadraticMap::triviality(a).zero_set(&a.full_space()) {
        Preimage::Exact(w) => TrivialElements {
            elements: std::iter::once(a.zero())
                .chain(w.basis().iter().map(|b| Element::new(b.clone())))
                .collect(),
            span: w,
            complete: true,
        },
        Preimage::Empty => TrivialElements {
            elements: vec![a.zero()],
            span: a.zero_space(),
            complete: true,
        },
        Preimage::Bounded(w) => {
            let found: Vec<Element<F>> = w
                .basis()
                .iter()
                .map(|b| Element::new(b.clone()))
                .filter(|z| is_trivial(a, z))
                .collect();
            let span = Subspace::span(f, a.dim(), found.iter().map(|z| z.coords().to_vec()));
            TrivialElements {
                elements: std::iter::once(a.zero()).chain(found).collect(),
                span,
                complete: false,
            }
        }
    }
}

/// Smallest subspace containing `s` and closed under every `L_{b_i}`.
pub fn ideal_closure<F: Field>(a: &JordanAlgebra<F>, s: &[Element<F>]) -> Subspace<F> {
    let f = a.field();
    let ops: Vec<_> = (0..a.dim()).map(|i| a.l_op(&a.basis(i))).collect();
    let mut v = Subspace::span(f, a.dim(), s.iter().map(|x| x.coords().to_vec()));
    loop {
        let images = v
            .basis()
            .iter()
            .flat_map(|b| ops.iter().map(move |l| l.apply(b)))
            .chain(v.basis().iter().cloned());
        let next = Subspace::span(f, a.dim(), images.collect::<Vec<_>>());
        if next.dim() == v.dim() {
            return v;
        }
        v = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalKind {
    Deg,
    Nil,
    Rad,
}

/// One round of the degenerate-radical fixpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    /// Nonzero trivial elements of the current quotient, when enumerated.
    pub trivial_count: Option<usize>,
    /// Dimension of the ideal after this round.
    pub ideal_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport<F: Field> {
    pub kind: RadicalKind,
    pub subspace: Subspace<F>,
    pub chain: Vec<ChainStep>,
    /// `Holds` once the defining property was re-checked on the result.
    pub verification: Verdict<F>,
    pub method: String,
    pub notes: Vec<String>,
}

/// `Deg(A)`: the ideal generated by trivial elements, repeated on quotients
/// until the quotient has no nonzero trivial elements.
pub fn deg_radical<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> RadicalReport<F> {
    let mut ideal = a.zero_space();
    let mut chain = Vec::new();
    let mut notes = Vec::new();
    let mut exact = true;
    loop {
        if ideal.is_full() {
            notes.push("the ideal is the whole algebra; the quotient is zero".into());
            break;
        }
        let (q, proj) = quotient(a, &ideal).expect("the ideal is closed under multiplication");
        let t = trivial_elements(&q, budget);
        exact &= t.complete;
        if t.span.is_zero() {
            break;
        }
        let generated = ideal_closure(&q, &t.elements);
        let lifted = generated.basis().iter().map(|b| proj.lift(&Element::new(b.clone())).into_coords());
        ideal = ideal
            .sum(&Subspace::span(a.field(), a.dim(), lifted.collect::<Vec<_>>()))
            .expect("same ambient");
        chain.push(ChainStep {
            trivial_count: (t.complete && q.field().order().is_some()).then(|| t.elements.len() - 1),
            ideal_dim: ideal.dim(),
        });
    }
    let verification = if !is_ideal(a, &ideal) {
        Verdict::unknown("result is not an ideal")
    } else if !exact {
        Verdict::unknown("trivial elements of some quotient were found by bounded search; the result is a lower bound")
    } else if ideal.is_full() {
        Verdict::holds().with_reason("ideal and quotient re-checked")
    } else {
        let (q, _) = quotient(a, &ideal).expect("ideal");
        let t = trivial_elements(&q, budget);
        if t.complete && t.span.is_zero() {
            Verdict::holds().with_reason("ideal re-checked; quotient has no nonzero trivial elements")
        } else {
            Verdict::unknown("quotient non-degeneracy could not be re-verified")
        }
    };
    RadicalReport {
        kind: RadicalKind::Deg,
        subspace: ideal,
        chain,
        verification,
        method: if exact { "fixpoint".into() } else { "fixpoint-partial".into() },
        notes,
    }
}

/// Solves `U_x y = x`; `x` is invertible iff `U_x` is.
pub fn inverse<F: Field>(a: &JordanAlgebra<F>, x: &Element<F>) -> Result<Element<F>, Error> {
    if a.unit().is_none() {
        return Err(Error::NotUnital);
    }
    let u = a.u_op(x);
    let inv = u.inverse().ok_or(Error::NotInvertible)?;
    Ok(Element::new(inv.apply(x.coords())))
}

pub fn is_invertible<F: Field>(a: &JordanAlgebra<F>, x: &Element<F>) -> Result<bool, Error> {
    if a.unit().is_none() {
        return Err(Error::NotUnital);
    }
    Ok(a.u_op(x).rank() == a.dim())
}

/// `w` with `(1 − z)^{-1} = 1 − w`. Non-unital algebras are handled in the
/// unital hull; the result always lies in `A`.
pub fn quasi_inverse<F: Field>(a: &JordanAlgebra<F>, z: &Element<F>) -> Result<Element<F>, Error> {
    match a.unit() {
        Some(one) => {
            let inv = inverse(a, &a.sub(one, z))?;
            Ok(a.sub(one, &inv))
        }
        None => {
            let hull = unital_hull(a);
            let w = quasi_inverse(&hull, &hull_embed(a, z))?;
            hull_restrict(a, &w).ok_or(Error::NotInvertible)
        }
    }
}

pub fn is_quasi_invertible<F: Field>(a: &JordanAlgebra<F>, z: &Element<F>) -> bool {
    match a.unit() {
        Some(one) => a.u_op(&a.sub(one, z)).rank() == a.dim(),
        None => {
            let hull = unital_hull(a);
            is_quasi_invertible(&hull, &hull_embed(a, z))
        }
    }
}

/// Number of subspaces of `F_q^n` (sum of Gaussian binomials), saturating.
fn subspace_count(q: u64, n: usize) -> u64 {
    let mut total: u64 = 0;
    // [n choose k]_q via the recurrence on rows of the q-Pascal triangle.
    let mut row: Vec<u64> = vec![1];
    for m in 1..=n {
        let mut next = vec![1u64; m + 1];
        for k in 1..m {
            let shifted = q.saturating_pow(k as u32).saturating_mul(row[k]);
            next[k] = row[k - 1].saturating_add(shifted);
        }
        row = next;
    }
    for c in row {
        total = total.saturating_add(c);
    }
    total
}

/// Every subspace of `F_p^n` as a canonical reduced basis.
fn all_subspaces<F: Field>(f: &F, n: usize) -> Vec<Subspace<F>> {
    let q = f.order().expect("finite field");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|&c| mask & (1 << c) != 0).collect();
        // Free positions: right of the row's pivot and not a pivot column.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|c| mask & (1 << c) == 0).map(move |c| (r, c)))
            .collect();
        let combos = q.pow(free.len() as u32);
        for mut code in 0..combos {
            let mut rows = vec![vec![f.zero(); n]; pivots.len()];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = f.one();
            }
            for &(r, c) in &free {
                rows[r][c] = f.nth(code % q);
                code /= q;
            }
            out.push(Subspace::span(f, n, rows));
        }
    }
    out
}

/// All ideals over a finite field, sorted by dimension then canonical basis.
pub fn enumerate_ideals<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> Result<Vec<Subspace<F>>, Error> {
    let q = a.field().order().ok_or(Error::InfiniteField)?;
    let count = subspace_count(q, a.dim());
    if count > budget || a.dim() > 31 {
        return Err(Error::TooLarge {
            p: q,
            dim: a.dim(),
            budget,
        });
    }
    let mut ideals: Vec<Subspace<F>> = all_subspaces(a.field(), a.dim())
        .into_par_iter()
        .filter(|v| is_ideal(a, v))
        .collect();
    ideals.sort_by(|x, y| x.dim().cmp(&y.dim()).then_with(|| x.cmp(y)));
    Ok(ideals)
}

fn elements_of<F: Field>(a: &JordanAlgebra<F>, v: &Subspace<F>) -> Vec<Element<F>> {
    let f = a.field();
    let space = ElementSpace::for_dim(f, v.dim(), u64::MAX).expect("finite field");
    (0..space.len())
        .map(|i| {
            let c = space.element(i);
            let mut x = vec![f.zero(); a.dim()];
            for (coef, b) in c.coords().iter().zip(v.basis()) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi = f.add(xi, &f.mul(coef, bi));
                }
            }
            Element::new(x)
        })
        .collect()
}

/// Sum of the ideals all of whose elements satisfy `pred`, re-checked.
fn radical_by_enumeration<F: Field>(
    a: &JordanAlgebra<F>,
    kind: RadicalKind,
    budget: u64,
    pred: impl Fn(&Element<F>) -> bool + Sync,
) -> Result<RadicalReport<F>, Error> {
    let ideals = enumerate_ideals(a, budget)?;
    let good: Vec<&Subspace<F>> = ideals
        .par_iter()
        .filter(|v| elements_of(a, v).iter().all(&pred))
        .collect();
    let sum = good
        .iter()
        .fold(a.zero_space(), |acc, v| acc.sum(v).expect("same ambient"));
    let verification = if is_ideal(a, &sum) && elements_of(a, &sum).iter().all(&pred) {
        Verdict::holds().with_reason("the sum of qualifying ideals is itself qualifying")
    } else {
        Verdict::unknown("the sum of qualifying ideals does not qualify")
    };
    Ok(RadicalReport {
        kind,
        subspace: sum,
        chain: Vec::new(),
        verification,
        method: "ideal-enumeration".into(),
        notes: vec![format!("{} ideals, {} qualifying", ideals.len(), good.len())],
    })
}

/// The degenerate radical standing in for a radical whose ideals cannot be
/// enumerated, with the defining property checked on a spanning sample.
fn radical_fallback<F: Field>(
    a: &JordanAlgebra<F>,
    kind: RadicalKind,
    budget: u64,
    pred: impl Fn(&Element<F>) -> bool,
) -> RadicalReport<F> {
    let mut deg = deg_radical(a, budget);
    let basis: Vec<Element<F>> = deg.subspace.basis().iter().map(|b| Element::new(b.clone())).collect();
    let mut sample = basis.clone();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            sample.push(a.add(&basis[i], &basis[j]));
        }
    }
    let ok = sample.iter().all(pred);
    deg.kind = kind;
    deg.method = "deg-fallback".into();
    deg.verification = if ok {
        Verdict::unknown("ideals not enumerable; Deg(A) returned and the property verified on a spanning sample only")
    } else {
        Verdict::unknown("ideals not enumerable and Deg(A) fails the property on a sample")
    };
    deg
}

pub fn nil_radical<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> RadicalReport<F> {
    let pred = |x: &Element<F>| a.is_nilpotent(x);
    radical_by_enumeration(a, RadicalKind::Nil, budget, pred)
        .unwrap_or_else(|_| radical_fallback(a, RadicalKind::Nil, budget, pred))
}

pub fn jacobson_radical<F: Field>(a: &JordanAlgebra<F>, budget: u64) -> RadicalReport<F> {
    let pred = |x: &Element<F>| is_quasi_invertible(a, x);
    radical_by_enumeration(a, RadicalKind::Rad, budget, pred)
        .unwrap_or_else(|_| radical_fallback(a, RadicalKind::Rad, budget, pred))
}

pub fn radical<F: Field>(a: &JordanAlgebra<F>, kind: RadicalKind, budget: u64) -> RadicalReport<F> {
    match kind {
        RadicalKind::Deg => deg_radical(a, budget),
        RadicalKind::Nil => nil_radical(a, budget),
        RadicalKind::Rad => jacobson_radical(a, budget),
    }
}

/// A nonzero square lying in `v`, first in element order.
pub fn square_in<F: Field>(a: &JordanAlgebra<F>, v: &Subspace<F>, budget: u64) -> Result<Option<Element<F>>, Error> {
    let en = Enumerated::new(a, budget)?;
    let hits = en.square_elements(&en.squares_in(v));
    Ok(hits.into_iter().find(|&i| i != 0).map(|i| en.element(i)))
}

/// Whether the quotient by `v` has no nonzero trivial elements.
pub fn quotient_is_nondegenerate<F: Field>(a: &JordanAlgebra<F>, v: &Subspace<F>, budget: u64) -> Result<Outcome, Error> {
    if v.is_full() {
        return Ok(Outcome::Holds);
    }
    let (q, _) = quotient(a, v)?;
    let t = trivial_elements(&q, budget);
    Ok(match (t.complete, t.span.is_zero()) {
        (_, false) => Outcome::Fails,
        (true, true) => Outcome::Holds,
        (false, true) => Outcome::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{example2, example3, full_matrix_jordan, hermitian_matrix_algebra, nonunital_nil};
    use crate::field::{PrimeField, Rationals};
    use crate::DEFAULT_BUDGET;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn span<F: Field>(a: &JordanAlgebra<F>, xs: &[Element<F>]) -> Subspace<F> {
        Subspace::span(a.field(), a.dim(), xs.iter().map(|x| x.coords().to_vec()))
    }

    #[test]
    fn trivial_elements_of_e2() {
        let a = example2(f3());
        let t = trivial_elements(&a, DEFAULT_BUDGET);
        assert!(t.complete);
        assert_eq!(t.elements.len(), 3);
        assert_eq!(t.span, span(&a, &[a.basis(1)]));
        let q = example2(Rationals);
        let t = trivial_elements(&q, DEFAULT_BUDGET);
        assert!(t.complete);
        assert_eq!(t.span, span(&q, &[q.basis(1)]));
    }

    #[test]
    fn hull_keeps_trivial_generator() {
        let nu = nonunital_nil(1, f3()).unwrap();
        let hull = unital_hull(&nu);
        let t = trivial_elements(&hull, DEFAULT_BUDGET);
        assert_eq!(t.span, span(&hull, &[hull_embed(&nu, &nu.basis(0))]));
    }

    #[test]
    fn closures() {
        let a = example2(f3());
        assert_eq!(ideal_closure(&a, &[a.basis(1)]), span(&a, &[a.basis(1)]));
        assert!(ideal_closure(&a, &[a.unit().unwrap().clone()]).is_full());
        let m = full_matrix_jordan(2, f3()).unwrap();
        assert!(ideal_closure(&m, &[m.basis(0)]).is_full());
    }

    #[test]
    fn degenerate_radicals() {
        let a = example2(f3());
        let d = deg_radical(&a, DEFAULT_BUDGET);
        assert_eq!(d.subspace, span(&a, &[a.basis(1)]));
        assert!(d.verification.is_holds());
        let h = hermitian_matrix_algebra(2, 1, f3()).unwrap();
        assert!(deg_radical(&h, DEFAULT_BUDGET).subspace.is_zero());
        for k in 1..=3 {
            let e = example3(k, f3()).unwrap();
            let d = deg_radical(&e, DEFAULT_BUDGET);
            let nil: Vec<_> = (1..=k).map(|i| e.basis(i)).collect();
            assert_eq!(d.subspace, span(&e, &nil));
        }
        let nu = nonunital_nil(2, f3()).unwrap();
        assert!(deg_radical(&nu, DEFAULT_BUDGET).subspace.is_full());
    }

    #[test]
    fn inverses_in_e2() {
        let a = example2(f3());
        let one = a.unit().unwrap().clone();
        assert_eq!(inverse(&a, &one).unwrap(), one);
        let x = a.element_from_ints(&[1, 1]);
        assert_eq!(inverse(&a, &x).unwrap(), a.element_from_ints(&[1, -1]));
        assert_eq!(quasi_inverse(&a, &a.basis(1)).unwrap(), a.element_from_ints(&[0, -1]));
        assert!(matches!(inverse(&a, &a.basis(1)), Err(Error::NotInvertible)));
        let nu = nonunital_nil(2, f3()).unwrap();
        assert!(matches!(inverse(&nu, &nu.basis(0)), Err(Error::NotUnital)));
        assert_eq!(quasi_inverse(&nu, &nu.basis(0)).unwrap(), nu.element_from_ints(&[-1, 0]));
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(subspace_count(3, 2), 6);
        assert_eq!(subspace_count(2, 3), 16);
        assert_eq!(all_subspaces(&f3(), 3).len() as u64, subspace_count(3, 3));
    }

    #[test]
    fn ideal_lists() {
        let nu = nonunital_nil(2, f3()).unwrap();
        assert_eq!(enumerate_ideals(&nu, DEFAULT_BUDGET).unwrap().len(), 6);
        let a = example2(f3());
        let ideals = enumerate_ideals(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(ideals, vec![a.zero_space(), span(&a, &[a.basis(1)]), a.full_space()]);
        let m = full_matrix_jordan(2, f3()).unwrap();
        assert_eq!(enumerate_ideals(&m, DEFAULT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn radicals_agree_on_e2() {
        let a = example2(f3());
        let nil = nil_radical(&a, DEFAULT_BUDGET);
        let rad = jacobson_radical(&a, DEFAULT_BUDGET);
        assert_eq!(nil.subspace, span(&a, &[a.basis(1)]));
        assert_eq!(rad.subspace, nil.subspace);
        assert!(nil.verification.is_holds() && rad.verification.is_holds());
        assert_eq!(square_in(&a, &nil.subspace, DEFAULT_BUDGET).unwrap(), None);
    }
}
