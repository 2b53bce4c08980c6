//! Composition algebras of degree 1, 2, 4 and 8 over an exact field, built by
//! Cayley–Dickson doubling.
//!
//! A degree-`2n` element is a pair `(a, b)` of degree-`n` elements with
//!
//! ```text
//! (a, b)(c, d) = (ac - d̄b, da + bc̄),    conj(a, b) = (ā, -b).
//! ```
//!
//! Coordinates are ordered so that the first half is `a` and the second half
//! is `b`; for quaternions that is `[1, i, j, k]` with `ij = k`.

use crate::field::Field;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionScalar<F: Field> {
    coords: Vec<F::Elem>,
}

fn check_degree(degree: usize) -> Result<(), Error> {
    match degree {
        1 | 2 | 4 | 8 => Ok(()),
        _ => Err(Error::DegreeMismatch(format!(
            "composition degree must be 1, 2, 4 or 8, got {degree}"
        ))),
    }
}

impl<F: Field> CompositionScalar<F> {
    pub fn new(coords: Vec<F::Elem>) -> Result<Self, Error> {
        check_degree(coords.len())?;
        Ok(CompositionScalar { coords })
    }

    pub fn zero(field: &F, degree: usize) -> Result<Self, Error> {
        Self::new(vec![field.zero(); degree])
    }

    pub fn one(field: &F, degree: usize) -> Result<Self, Error> {
        Self::unit(field, degree, 0)
    }

    /// The `k`-th basis unit.
    pub fn unit(field: &F, degree: usize, k: usize) -> Result<Self, Error> {
        let mut coords = vec![field.zero(); degree];
        if k >= degree {
            return Err(Error::DegreeMismatch(format!("unit {k} out of range for degree {degree}")));
        }
        coords[k] = field.one();
        Self::new(coords)
    }

    pub fn from_scalar(field: &F, degree: usize, s: F::Elem) -> Result<Self, Error> {
        let mut x = Self::zero(field, degree)?;
        x.coords[0] = s;
        Ok(x)
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn real_part(&self) -> &F::Elem {
        &self.coords[0]
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    pub fn add(&self, field: &F, other: &Self) -> Result<Self, Error> {
        self.same_degree(other)?;
        Ok(CompositionScalar {
            coords: add_slices(field, &self.coords, &other.coords),
        })
    }

    pub fn neg(&self, field: &F) -> Self {
        CompositionScalar {
            coords: self.coords.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, field: &F, s: &F::Elem) -> Self {
        CompositionScalar {
            coords: self.coords.iter().map(|c| field.mul(c, s)).collect(),
        }
    }

    pub fn conjugate(&self, field: &F) -> Self {
        CompositionScalar {
            coords: conj_slice(field, &self.coords),
        }
    }

    /// Sum of squares of the coordinates.
    pub fn norm(&self, field: &F) -> F::Elem {
        self.coords
            .iter()
            .fold(field.zero(), |acc, c| field.add(&acc, &field.mul(c, c)))
    }

    fn same_degree(&self, other: &Self) -> Result<(), Error> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(format!(
                "degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(())
    }
}

/// Cayley–Dickson product of two composition scalars of equal degree.
pub fn cd_mul<F: Field>(
    field: &F,
    x: &CompositionScalar<F>,
    y: &CompositionScalar<F>,
) -> Result<CompositionScalar<F>, Error> {
    x.same_degree(y)?;
    Ok(CompositionScalar {
        coords: mul_slices(field, &x.coords, &y.coords),
    })
}

fn add_slices<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

fn sub_slices<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

fn conj_slice<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { c.clone() } else { field.neg(c) })
        .collect()
}

fn mul_slices<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    if x.len() == 1 {
        return vec![field.mul(&x[0], &y[0])];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let d_conj = conj_slice(field, d);
    let c_conj = conj_slice(field, c);
    let mut first = sub_slices(field, &mul_slices(field, a, c), &mul_slices(field, &d_conj, b));
    let second = add_slices(field, &mul_slices(field, d, a), &mul_slices(field, b, &c_conj));
    first.extend(second);
    first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn units<F: Field>(field: &F, degree: usize) -> Vec<CompositionScalar<F>> {
        (0..degree)
            .map(|k| CompositionScalar::unit(field, degree, k).unwrap())
            .collect()
    }

    fn m<F: Field>(f: &F, x: &CompositionScalar<F>, y: &CompositionScalar<F>) -> CompositionScalar<F> {
        cd_mul(f, x, y).unwrap()
    }

    #[test]
    fn quaternion_ij_is_k() {
        let f = Rationals;
        let u = units(&f, 4);
        assert_eq!(m(&f, &u[1], &u[2]), u[3]);
        assert_eq!(m(&f, &u[2], &u[1]), u[3].neg(&f));
        assert_eq!(m(&f, &u[1], &u[1]), u[0].neg(&f));
    }

    #[test]
    fn degree_mismatch() {
        let f = Rationals;
        let a = CompositionScalar::one(&f, 2).unwrap();
        let b = CompositionScalar::one(&f, 4).unwrap();
        assert!(matches!(cd_mul(&f, &a, &b), Err(Error::DegreeMismatch(_))));
        assert!(CompositionScalar::<Rationals>::zero(&f, 3).is_err());
    }

    #[test]
    fn octonions_are_not_associative() {
        // Brute-force scan over basis triples for the first associator witness.
        let f = Rationals;
        let u = units(&f, 8);
        let mut witness = None;
        'scan: for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    let left = m(&f, &m(&f, &u[a], &u[b]), &u[c]);
                    let right = m(&f, &u[a], &m(&f, &u[b], &u[c]));
                    if left != right {
                        witness = Some((a, b, c));
                        break 'scan;
                    }
                }
            }
        }
        let (a, b, c) = witness.expect("octonions are nonassociative");
        assert!(a != 0 && b != 0 && c != 0);
        // Basis units of an alternative algebra associate up to sign.
        let left = m(&f, &m(&f, &u[a], &u[b]), &u[c]);
        let right = m(&f, &u[a], &m(&f, &u[b], &u[c]));
        assert_eq!(left, right.neg(&f));
    }

    fn basis_pairs<F: Field>(field: &F, degree: usize) -> Vec<CompositionScalar<F>> {
        let mut v = units(field, degree);
        for i in 0..degree {
            for j in (i + 1)..degree {
                v.push(v[i].add(field, &v[j]).unwrap());
                v.push(v[i].add(field, &v[j].scale(field, &field.from_i64(2))).unwrap());
            }
        }
        v
    }

    fn composition_laws<F: Field>(field: &F) {
        for degree in [1usize, 2, 4, 8] {
            let xs = basis_pairs(field, degree);
            let one = CompositionScalar::one(field, degree).unwrap();
            for x in &xs {
                // x · x̄ = N(x) · 1
                let xx = m(field, x, &x.conjugate(field));
                assert_eq!(xx, one.scale(field, &x.norm(field)));
                for y in &xs {
                    let xy = m(field, x, y);
                    assert_eq!(xy.norm(field), field.mul(&x.norm(field), &y.norm(field)));
                    assert_eq!(
                        xy.conjugate(field),
                        m(field, &y.conjugate(field), &x.conjugate(field))
                    );
                    // Left alternative law.
                    assert_eq!(m(field, x, &m(field, x, y)), m(field, &m(field, x, x), y));
                    if degree <= 4 {
                        for z in units(field, degree).iter() {
                            assert_eq!(m(field, &xy, z), m(field, x, &m(field, y, z)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_laws_over_q() {
        composition_laws(&Rationals);
    }

    #[test]
    fn composition_laws_over_f5() {
        composition_laws(&PrimeField::new(5).unwrap());
    }
}
