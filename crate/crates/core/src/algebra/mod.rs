//! Commutative algebras given by structure constants, with the Jordan
//! operators used throughout the crate.
//!
//! Products are stored once per unordered basis pair `i <= j`, so
//! commutativity holds by construction. Whether the Jordan identity holds is
//! a separate question answered by [`validate::validate_jordan`].

pub mod construct;
pub mod validate;

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;
use crate::linalg::{image, LinOp, Matrix, Subspace};
use crate::Error;

pub use construct::{
    direct_sum, find_unit, hull_embed, hull_restrict, ideal_violation, is_ideal, quotient, special_from_associative,
    squares_span, unital_hull,
    AssociativeTable, Projection,
};
pub use validate::{validate_jordan, ValidationMethod, ValidationReport, Violation};

/// A coefficient vector against the basis of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> Element<F> {
    pub fn new(coords: Vec<F::Elem>) -> Self {
        Element { coords }
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F::Elem> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_strings(&self, field: &F) -> Vec<String> {
        self.coords.iter().map(|c| field.format(c)).collect()
    }
}

/// Sparse product vector `b_i b_j = Σ_k c^k b_k`, sorted by `k`, zero terms omitted.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanAlgebra<F: Field> {
    name: String,
    field: F,
    dim: usize,
    /// Indexed by [`tri`]`(i, j)` for `i <= j`.
    sc: Vec<SparseVec<F>>,
    unit: Option<Element<F>>,
    labels: Vec<String>,
}

#[inline]
fn tri(i: usize, j: usize) -> usize {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    hi * (hi + 1) / 2 + lo
}

fn sparsify<F: Field>(field: &F, dense: Vec<F::Elem>) -> SparseVec<F> {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .collect()
}

impl<F: Field> JordanAlgebra<F> {
    /// Builds an algebra from products of basis pairs `(i, j)` with `i <= j`.
    /// Missing pairs multiply to zero.
    pub fn new(
        name: impl Into<String>,
        field: F,
        labels: Vec<String>,
        products: BTreeMap<(usize, usize), Vec<(usize, F::Elem)>>,
        unit: Option<Vec<F::Elem>>,
    ) -> Result<Self, Error> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut sc = vec![Vec::new(); dim * (dim + 1) / 2];
        for ((i, j), terms) in products {
            if i > j {
                return Err(Error::InvalidAlgebra(format!(
                    "product ({i}, {j}) must be stored with i <= j"
                )));
            }
            if j >= dim {
                return Err(Error::IndexOutOfRange(format!("product ({i}, {j}) with dim {dim}")));
            }
            let mut dense = vec![field.zero(); dim];
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::IndexOutOfRange(format!(
                        "basis index {k} in product ({i}, {j}) with dim {dim}"
                    )));
                }
                dense[k] = field.add(&dense[k], &c);
            }
            sc[tri(i, j)] = sparsify(&field, dense);
        }
        let unit = match unit {
            Some(u) if u.len() != dim => {
                return Err(Error::AlgebraMismatch(format!(
                    "unit has {} coordinates, algebra has dimension {dim}",
                    u.len()
                )))
            }
            Some(u) => Some(Element::new(u)),
            None => None,
        };
        Ok(JordanAlgebra {
            name: name.into(),
            field,
            dim,
            sc,
            unit,
            labels,
        })
    }

    /// Builds an algebra from a function giving the dense product `b_i b_j` for `i <= j`.
    pub fn from_fn(
        name: impl Into<String>,
        field: F,
        labels: Vec<String>,
        unit: Option<Vec<F::Elem>>,
        mut product: impl FnMut(usize, usize) -> Vec<F::Elem>,
    ) -> Result<Self, Error> {
        let dim = labels.len();
        let mut products = BTreeMap::new();
        for j in 0..dim {
            for i in 0..=j {
                let dense = product(i, j);
                if dense.len() != dim {
                    return Err(Error::AlgebraMismatch(format!(
                        "product ({i}, {j}) has {} coordinates, expected {dim}",
                        dense.len()
                    )));
                }
                let sparse = sparsify(&field, dense);
                if !sparse.is_empty() {
                    products.insert((i, j), sparse);
                }
            }
        }
        Self::new(name, field, labels, products, unit)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_unit(mut self, unit: Option<Element<F>>) -> Self {
        self.unit = unit;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&Element<F>> {
        self.unit.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.sc[tri(i, j)]
    }

    /// Every stored product `(i, j, b_i b_j)` with `i <= j`, in increasing order.
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, &[(usize, F::Elem)])> + '_ {
        (0..self.dim).flat_map(move |i| {
            (i..self.dim).filter_map(move |j| {
                let p = self.basis_product(i, j);
                (!p.is_empty()).then_some((i, j, p))
            })
        })
    }

    fn check(&self, a: &Element<F>) -> Result<(), Error> {
        if a.len() != self.dim {
            return Err(Error::AlgebraMismatch(format!(
                "element has {} coordinates, algebra {} has dimension {}",
                a.len(),
                self.name,
                self.dim
            )));
        }
        Ok(())
    }

    pub fn element(&self, coords: Vec<F::Elem>) -> Result<Element<F>, Error> {
        let e = Element::new(coords);
        self.check(&e)?;
        Ok(e)
    }

    /// Element from small integer coordinates.
    pub fn element_from_ints(&self, coords: &[i64]) -> Element<F> {
        assert_eq!(coords.len(), self.dim);
        Element::new(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn zero(&self) -> Element<F> {
        Element::new(vec![self.field.zero(); self.dim])
    }

    pub fn basis(&self, i: usize) -> Element<F> {
        let mut e = self.zero();
        e.coords[i] = self.field.one();
        e
    }

    pub fn is_zero(&self, a: &Element<F>) -> bool {
        a.coords.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let f = &self.field;
        Element::new(a.coords.iter().zip(&b.coords).map(|(x, y)| f.add(x, y)).collect())
    }

    pub fn sub(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let f = &self.field;
        Element::new(a.coords.iter().zip(&b.coords).map(|(x, y)| f.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &Element<F>) -> Element<F> {
        Element::new(a.coords.iter().map(|x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, s: &F::Elem, a: &Element<F>) -> Element<F> {
        Element::new(a.coords.iter().map(|x| self.field.mul(s, x)).collect())
    }

    /// The Jordan product `a · b`.
    pub fn mul(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        Element::new(self.mul_coords(&a.coords, &b.coords))
    }

    pub fn try_mul(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul_coords(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (k, s) in &self.sc[tri(i, j)] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn square(&self, a: &Element<F>) -> Element<F> {
        self.mul(a, a)
    }

    /// Left-normed power: `a^1 = a`, `a^(n+1) = a · a^n`.
    pub fn power(&self, a: &Element<F>, n: usize) -> Element<F> {
        assert!(n >= 1, "powers start at 1");
        let mut acc = a.clone();
        for _ in 1..n {
            acc = self.mul(a, &acc);
        }
        acc
    }

    /// Matrix of `b ↦ a · b`.
    pub fn l_op(&self, a: &Element<F>) -> LinOp<F> {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for (i, ai) in a.coords.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for j in 0..self.dim {
                for (k, s) in &self.sc[tri(i, j)] {
                    let v = f.add(m.get(*k, j), &f.mul(ai, s));
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// Matrix of `U_a : b ↦ 2(ab)a − a²b`, computed as `2L_a² − L_{a²}`.
    pub fn u_op(&self, a: &Element<F>) -> LinOp<F> {
        let l = self.l_op(a);
        let l_sq = self.l_op(&self.square(a));
        let two = self.field.from_i64(2);
        l.matmul(&l).scale(&two).sub(&l_sq)
    }

    /// `U_a x` evaluated directly from products.
    pub fn u_apply(&self, a: &Element<F>, x: &Element<F>) -> Element<F> {
        let ax = self.mul(a, x);
        let two = self.field.from_i64(2);
        self.sub(&self.scale(&two, &self.mul(&ax, a)), &self.mul(&self.square(a), x))
    }

    /// Jordan triple product `{abc} = (ab)c + (cb)a − (ac)b`.
    pub fn triple(&self, a: &Element<F>, b: &Element<F>, c: &Element<F>) -> Element<F> {
        let abc = self.mul(&self.mul(a, b), c);
        let cba = self.mul(&self.mul(c, b), a);
        let acb = self.mul(&self.mul(a, c), b);
        self.sub(&self.add(&abc, &cba), &acb)
    }

    /// Matrix of `x ↦ {a x c}`.
    pub fn triple_op(&self, a: &Element<F>, c: &Element<F>) -> LinOp<F> {
        let columns: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|j| self.triple(a, &self.basis(j), c).into_coords())
            .collect();
        Matrix::from_columns(&self.field, self.dim, &columns)
    }

    /// `U_a(A)`, the image of the U-operator.
    pub fn inner_ideal(&self, a: &Element<F>) -> Subspace<F> {
        image(&self.u_op(a))
    }

    pub fn is_idempotent(&self, e: &Element<F>) -> bool {
        self.square(e) == *e
    }

    /// Nilpotency via powers up to index `dim + 1`: the powers of a nilpotent
    /// element span a nil subalgebra of dimension at most `dim`.
    pub fn is_nilpotent(&self, a: &Element<F>) -> bool {
        let mut acc = a.clone();
        for _ in 0..=self.dim {
            if self.is_zero(&acc) {
                return true;
            }
            acc = self.mul(a, &acc);
        }
        self.is_zero(&acc)
    }

    pub fn full_space(&self) -> Subspace<F> {
        Subspace::full(&self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace<F> {
        Subspace::zero(&self.field, self.dim)
    }

    /// Renders an element as a sum of labelled basis vectors.
    pub fn display(&self, a: &Element<F>) -> String {
        let f = &self.field;
        let mut out = String::new();
        for (c, l) in a.coords.iter().zip(&self.labels).filter(|(c, _)| !f.is_zero(c)) {
            let negative = f.sign(c) == Some(std::cmp::Ordering::Less);
            let c = if negative { f.neg(c) } else { c.clone() };
            out += match (out.is_empty(), negative) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            if !f.is_one(&c) {
                let s = f.format(&c);
                out += s.strip_suffix("/1").unwrap_or(&s);
                out.push('*');
            }
            out += l;
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<F: Field> fmt::Display for JordanAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, over {}, {})",
            self.name,
            self.dim,
            self.field.desc(),
            if self.unit.is_some() { "unital" } else { "non-unital" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{example2, full_matrix_jordan, hermitian_matrix_algebra};
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element<F: Field>(a: &JordanAlgebra<F>, rng: &mut ChaCha8Rng) -> Element<F> {
        let coords: Vec<i64> = (0..a.dim()).map(|_| rng.gen_range(-3..=3)).collect();
        a.element_from_ints(&coords)
    }

    #[test]
    fn e2_products() {
        let a = example2(Rationals);
        let e12 = a.basis(1);
        assert!(a.is_zero(&a.square(&e12)));
        let one = a.unit().unwrap().clone();
        let x = a.element_from_ints(&[3, -2]);
        assert_eq!(a.mul(&one, &x), x);
        assert!(a.u_op(&one).is_identity());
        assert!(a.u_op(&e12).is_zero());
    }

    #[test]
    fn m3_powers_of_remark_nilpotent() {
        let f3 = PrimeField::new(3).unwrap();
        let a = full_matrix_jordan(3, f3).unwrap();
        // Basis is row-major matrix units e11, e12, e13, e21, ...
        let n = a.element_from_ints(&[0, 1, 1, 0, 0, 1, 0, 0, 0]);
        let e13 = a.basis(2);
        assert_eq!(a.power(&n, 2), e13);
        assert!(a.is_zero(&a.power(&n, 4)));
        assert!(a.is_nilpotent(&n));
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let a = example2(Rationals);
        let bad = Element::new(vec![Rationals.one()]);
        assert!(matches!(a.try_mul(&bad, &a.basis(0)), Err(Error::AlgebraMismatch(_))));
        assert!(a.element(vec![Rationals.one(); 3]).is_err());
    }

    #[test]
    fn triple_identities() {
        let a = hermitian_matrix_algebra(3, 2, Rationals).unwrap();
        let one = a.unit().unwrap().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x = random_element(&a, &mut rng);
            let b = random_element(&a, &mut rng);
            let c = random_element(&a, &mut rng);
            assert_eq!(a.triple(&one, &b, &one), b);
            assert_eq!(a.triple(&x, &b, &x), Element::new(a.u_op(&x).apply(b.coords())));
            assert_eq!(a.u_apply(&x, &b), a.triple(&x, &b, &x));
            assert_eq!(a.triple(&x, &b, &c), a.triple(&c, &b, &x));
        }
    }

    #[test]
    fn u_operator_is_quadratic() {
        let f = PrimeField::new(7).unwrap();
        let a = hermitian_matrix_algebra(2, 4, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_element(&a, &mut rng);
            let y = random_element(&a, &mut rng);
            let lam = f.from_i64(rng.gen_range(0..7));
            let mu = f.from_i64(rng.gen_range(0..7));
            // U_{λx} = λ² U_x
            assert_eq!(a.u_op(&a.scale(&lam, &x)), a.u_op(&x).scale(&f.mul(&lam, &lam)));
            // U_{λx+μy} = λ²U_x + λμ·(c ↦ 2{x c y}) + μ²U_y
            let lhs = a.u_op(&a.add(&a.scale(&lam, &x), &a.scale(&mu, &y)));
            let cross = a.triple_op(&x, &y).scale(&f.from_i64(2));
            let rhs = a
                .u_op(&x)
                .scale(&f.mul(&lam, &lam))
                .add(&cross.scale(&f.mul(&lam, &mu)))
                .add(&a.u_op(&y).scale(&f.mul(&mu, &mu)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn power_associativity() {
        let f = PrimeField::new(5).unwrap();
        for a in [
            full_matrix_jordan(3, f).unwrap(),
            hermitian_matrix_algebra(3, 8, f).unwrap(),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..20 {
                let x = random_element(&a, &mut rng);
                for m in 1..4 {
                    for n in 1..4 {
                        assert_eq!(
                            a.power(&x, m + n),
                            a.mul(&a.power(&x, m), &a.power(&x, n)),
                            "power associativity in {}",
                            a.name()
                        );
                    }
                }
            }
        }
    }
}
