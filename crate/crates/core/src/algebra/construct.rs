//! Constructions on algebras: unital hull, direct sums, quotients by ideals,
//! and symmetrization of associative structure constants.

use std::collections::BTreeMap;

use super::{Element, JordanAlgebra, SparseVec};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::Error;

/// Full (non-symmetric) structure constants of an associative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativeTable<F: Field> {
    field: F,
    labels: Vec<String>,
    /// Indexed by `i * dim + j`.
    c: Vec<SparseVec<F>>,
}

impl<F: Field> AssociativeTable<F> {
    pub fn from_fn(
        field: F,
        labels: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, F::Elem)>,
    ) -> Result<Self, Error> {
        let dim = labels.len();
        let mut c = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut dense = vec![field.zero(); dim];
                for (k, v) in product(i, j) {
                    if k >= dim {
                        return Err(Error::IndexOutOfRange(format!(
                            "basis index {k} in associative product ({i}, {j})"
                        )));
                    }
                    dense[k] = field.add(&dense[k], &v);
                }
                c.push(
                    dense
                        .into_iter()
                        .enumerate()
                        .filter(|(_, v)| !field.is_zero(v))
                        .collect(),
                );
            }
        }
        Ok(AssociativeTable { field, labels, c })
    }

    /// Matrix units `e_{rs}` of `M_n`, ordered row-major and labelled `e{r}{s}` (1-based).
    pub fn matrix_units(n: usize, field: F) -> Self {
        let labels = (0..n * n)
            .map(|k| format!("e{}{}", k / n + 1, k % n + 1))
            .collect();
        let one = field.one();
        Self::from_fn(field, labels, |a, b| {
            let (r, s) = (a / n, a % n);
            let (t, u) = (b / n, b % n);
            if s == t {
                vec![(r * n + u, one.clone())]
            } else {
                vec![]
            }
        })
        .expect("matrix unit indices are in range")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Associative product of coordinate vectors.
    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let dim = self.dim();
        let mut out = vec![f.zero(); dim];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let s = f.mul(ai, bj);
                for (k, v) in &self.c[i * dim + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&s, v));
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// First basis triple violating associativity, in lexicographic order.
    pub fn check_associative(&self) -> Result<(), Error> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..n {
                    let jk = self.mul(&self.basis(j), &self.basis(k));
                    if self.mul(&ij, &self.basis(k)) != self.mul(&self.basis(i), &jk) {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Jordan algebra `x · y = ½(xy + yx)` of an associative algebra.
pub fn special_from_associative<F: Field>(
    name: impl Into<String>,
    table: &AssociativeTable<F>,
) -> Result<JordanAlgebra<F>, Error> {
    table.check_associative()?;
    let f = table.field.clone();
    let half = f.half();
    let dim = table.dim();
    let algebra = JordanAlgebra::from_fn(name, f.clone(), table.labels.clone(), None, |i, j| {
        let bi = table.basis(i);
        let bj = table.basis(j);
        table
            .mul(&bi, &bj)
            .iter()
            .zip(table.mul(&bj, &bi))
            .map(|(x, y)| f.mul(&half, &f.add(x, &y)))
            .collect()
    })?;
    debug_assert_eq!(algebra.dim(), dim);
    let unit = find_unit(&algebra);
    Ok(algebra.with_unit(unit))
}

/// The unit of the algebra if one exists, found by solving `u · b_i = b_i` for all `i`.
pub fn find_unit<F: Field>(a: &JordanAlgebra<F>) -> Option<Element<F>> {
    let f = a.field();
    let n = a.dim();
    // Unknown u; equation rows indexed by (i, m): Σ_k u_k (b_k b_i)_m = δ_im.
    let mut m = Matrix::zeros(f, n * n, n);
    let mut rhs = vec![f.zero(); n * n];
    for i in 0..n {
        rhs[i * n + i] = f.one();
        for k in 0..n {
            for (coord, c) in a.basis_product(k, i) {
                m.set(i * n + coord, k, c.clone());
            }
        }
    }
    m.solve(&rhs).map(Element::new)
}

/// `Â = F1̂ ⊕ A` with `(α1̂ ⊕ x)(β1̂ ⊕ y) = αβ1̂ ⊕ (αy + βx + xy)`.
///
/// The adjoined unit is basis vector 0; basis vector `i + 1` is `b_i` of `A`.
pub fn unital_hull<F: Field>(a: &JordanAlgebra<F>) -> JordanAlgebra<F> {
    let f = a.field().clone();
    let n = a.dim();
    let mut labels = vec!["1^".to_string()];
    labels.extend(a.labels().iter().cloned());
    let mut products = BTreeMap::new();
    products.insert((0, 0), vec![(0, f.one())]);
    for i in 0..n {
        products.insert((0, i + 1), vec![(i + 1, f.one())]);
    }
    for (i, j, p) in a.products() {
        products.insert((i + 1, j + 1), p.iter().map(|(k, c)| (k + 1, c.clone())).collect());
    }
    let mut unit = vec![f.zero(); n + 1];
    unit[0] = f.one();
    JordanAlgebra::new(format!("hull({})", a.name()), f, labels, products, Some(unit))
        .expect("hull products are in range")
}

/// Embeds `x ∈ A` into the unital hull.
pub fn hull_embed<F: Field>(a: &JordanAlgebra<F>, x: &Element<F>) -> Element<F> {
    let mut coords = vec![a.field().zero()];
    coords.extend(x.coords().iter().cloned());
    Element::new(coords)
}

/// Restricts a hull element back to `A`; `None` if it has a unit component.
pub fn hull_restrict<F: Field>(a: &JordanAlgebra<F>, y: &Element<F>) -> Option<Element<F>> {
    if !a.field().is_zero(&y.coords()[0]) {
        return None;
    }
    Some(Element::new(y.coords()[1..].to_vec()))
}

/// Componentwise direct sum; the basis of `b` follows the basis of `a`.
pub fn direct_sum<F: Field>(a: &JordanAlgebra<F>, b: &JordanAlgebra<F>) -> Result<JordanAlgebra<F>, Error> {
    if a.field() != b.field() {
        return Err(Error::AlgebraMismatch("direct sum over different fields".into()));
    }
    let f = a.field().clone();
    let shift = a.dim();
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("({l},0)")).collect();
    labels.extend(b.labels().iter().map(|l| format!("(0,{l})")));
    let mut products = BTreeMap::new();
    for (i, j, p) in a.products() {
        products.insert((i, j), p.to_vec());
    }
    for (i, j, p) in b.products() {
        products.insert(
            (i + shift, j + shift),
            p.iter().map(|(k, c)| (k + shift, c.clone())).collect(),
        );
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => {
            let mut c = u.coords().to_vec();
            c.extend(v.coords().iter().cloned());
            Some(c)
        }
        _ => None,
    };
    JordanAlgebra::new(format!("{} (+) {}", a.name(), b.name()), f, labels, products, unit)
}

/// First failure of `L_{b_i}(v) ∈ I` over basis vectors `b_i` and basis vectors `v` of `I`.
pub fn ideal_violation<F: Field>(a: &JordanAlgebra<F>, ideal: &Subspace<F>) -> Option<(usize, usize)> {
    for i in 0..a.dim() {
        let l = a.l_op(&a.basis(i));
        for (r, v) in ideal.basis().iter().enumerate() {
            if !ideal.contains(&l.apply(v)) {
                return Some((i, r));
            }
        }
    }
    None
}

pub fn is_ideal<F: Field>(a: &JordanAlgebra<F>, ideal: &Subspace<F>) -> bool {
    ideal.ambient() == a.dim() && ideal_violation(a, ideal).is_none()
}

/// Quotient map `A → A/I`, presented on the non-pivot coordinates of `I`'s canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection<F: Field> {
    ideal: Subspace<F>,
    complement: Vec<usize>,
}

impl<F: Field> Projection<F> {
    pub fn ideal(&self) -> &Subspace<F> {
        &self.ideal
    }

    /// Basis indices of `A` whose images form the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn apply(&self, x: &Element<F>) -> Element<F> {
        let reduced = self.ideal.reduce(x.coords());
        Element::new(self.complement.iter().map(|&c| reduced[c].clone()).collect())
    }

    /// The coset representative supported on the complement coordinates.
    pub fn lift(&self, y: &Element<F>) -> Element<F> {
        let f = self.ideal.field();
        let mut coords = vec![f.zero(); self.ideal.ambient()];
        for (&c, v) in self.complement.iter().zip(y.coords()) {
            coords[c] = v.clone();
        }
        Element::new(coords)
    }
}

/// `A/I` together with the projection; errors if `I` is not an ideal.
pub fn quotient<F: Field>(
    a: &JordanAlgebra<F>,
    ideal: &Subspace<F>,
) -> Result<(JordanAlgebra<F>, Projection<F>), Error> {
    if ideal.ambient() != a.dim() {
        return Err(Error::AmbientMismatch(ideal.ambient(), a.dim()));
    }
    if let Some((i, r)) = ideal_violation(a, ideal) {
        return Err(Error::NotAnIdeal(format!(
            "{} times ideal basis vector {r} leaves the subspace",
            a.labels()[i]
        )));
    }
    if ideal.is_full() {
        return Err(Error::NotAnIdeal("quotient by the whole algebra is zero-dimensional".into()));
    }
    let mut is_pivot = vec![false; a.dim()];
    for &p in ideal.pivots() {
        is_pivot[p] = true;
    }
    let complement: Vec<usize> = (0..a.dim()).filter(|&c| !is_pivot[c]).collect();
    let proj = Projection {
        ideal: ideal.clone(),
        complement,
    };
    let labels = proj
        .complement
        .iter()
        .map(|&c| format!("[{}]", a.labels()[c]))
        .collect();
    let unit = a.unit().map(|u| proj.apply(u).into_coords());
    let q = JordanAlgebra::from_fn(
        format!("{}/I", a.name()),
        a.field().clone(),
        labels,
        unit,
        |i, j| {
            let bi = a.basis(proj.complement[i]);
            let bj = a.basis(proj.complement[j]);
            proj.apply(&a.mul(&bi, &bj)).into_coords()
        },
    )?;
    // Homomorphism check on every basis pair of A.
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let lhs = proj.apply(&a.mul(&a.basis(i), &a.basis(j)));
            let rhs = q.mul(&proj.apply(&a.basis(i)), &proj.apply(&a.basis(j)));
            if lhs != rhs {
                return Err(Error::NotAnIdeal(format!(
                    "projection is not multiplicative on basis pair ({i}, {j})"
                )));
            }
        }
    }
    Ok((q, proj))
}

/// Span of `{b_i², (b_i + b_j)²}`, which contains every square.
pub fn squares_span<F: Field>(a: &JordanAlgebra<F>) -> Subspace<F> {
    let mut vectors = Vec::new();
    for i in 0..a.dim() {
        let bi = a.basis(i);
        vectors.push(a.square(&bi).into_coords());
        for j in (i + 1)..a.dim() {
            let s = a.add(&bi, &a.basis(j));
            vectors.push(a.square(&s).into_coords());
        }
    }
    Subspace::span(a.field(), a.dim(), vectors)
}
