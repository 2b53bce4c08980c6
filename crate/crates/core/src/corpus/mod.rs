//! Constructors for the example algebra families and the claims suite.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{direct_sum, find_unit, special_from_associative, AssociativeTable, Element, JordanAlgebra};
use crate::composition::{cd_mul, CompositionScalar};
use crate::field::{Field, PrimeField, Rationals};
use crate::format::AnyAlgebra;
use crate::linalg::Subspace;
use crate::Error;

pub mod claims;

pub use claims::{run_corpus, ClaimsReport};

/// `F·1 + F·e12` inside 2×2 matrices: `e12² = 0`.
pub fn example2<F: Field>(field: F) -> JordanAlgebra<F> {
    let mut products = BTreeMap::new();
    products.insert((0, 0), vec![(0, field.one())]);
    products.insert((0, 1), vec![(1, field.one())]);
    let unit = vec![field.one(), field.zero()];
    JordanAlgebra::new("E2", field, vec!["1".into(), "e12".into()], products, Some(unit))
        .expect("fixed structure constants")
}

fn nil_labels(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("e{}{}", 2 * i - 1, 2 * i)).collect()
}

/// `F·1 + Σ_{i≤k} F·e_{2i−1,2i}` inside `2k × 2k` matrices.
pub fn example3<F: Field>(k: usize, field: F) -> Result<JordanAlgebra<F>, Error> {
    if k == 0 {
        return Err(Error::InvalidAlgebra("k must be at least 1".into()));
    }
    let mut labels = vec!["1".to_string()];
    labels.extend(nil_labels(k));
    let mut products = BTreeMap::new();
    for i in 0..=k {
        products.insert((0, i), vec![(i, field.one())]);
    }
    let mut unit = vec![field.zero(); k + 1];
    unit[0] = field.one();
    JordanAlgebra::new(format!("E3({k})"), field, labels, products, Some(unit))
}

/// `Σ_{i≤k} F·e_{2i−1,2i}` with every product zero.
pub fn nonunital_nil<F: Field>(k: usize, field: F) -> Result<JordanAlgebra<F>, Error> {
    if k == 0 {
        return Err(Error::InvalidAlgebra("k must be at least 1".into()));
    }
    JordanAlgebra::new(format!("NU({k})"), field, nil_labels(k), BTreeMap::new(), None)
}

/// `M_n(F)` with `x · y = ½(xy + yx)`, on matrix units in row-major order.
pub fn full_matrix_jordan<F: Field>(n: usize, field: F) -> Result<JordanAlgebra<F>, Error> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("n must be at least 1".into()));
    }
    special_from_associative(format!("M_{n}^+"), &AssociativeTable::matrix_units(n, field))
}

/// One basis matrix of the hermitian algebra: a real diagonal unit, or
/// `u e_ij + conj(u) e_ji` for a composition unit `u`.
#[derive(Clone, Copy, Debug)]
enum HermitianUnit {
    Diagonal(usize),
    OffDiagonal { i: usize, j: usize, k: usize },
}

type CMatrix<F> = Vec<Vec<CompositionScalar<F>>>;

fn hermitian_units(n: usize, degree: usize) -> Vec<HermitianUnit> {
    let mut units: Vec<HermitianUnit> = (0..n).map(HermitianUnit::Diagonal).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            units.extend((0..degree).map(|k| HermitianUnit::OffDiagonal { i, j, k }));
        }
    }
    units
}

fn unit_matrix<F: Field>(field: &F, n: usize, degree: usize, unit: HermitianUnit) -> Result<CMatrix<F>, Error> {
    let zero = CompositionScalar::zero(field, degree)?;
    let mut m = vec![vec![zero; n]; n];
    match unit {
        HermitianUnit::Diagonal(i) => m[i][i] = CompositionScalar::one(field, degree)?,
        HermitianUnit::OffDiagonal { i, j, k } => {
            let u = CompositionScalar::unit(field, degree, k)?;
            m[j][i] = u.conjugate(field);
            m[i][j] = u;
        }
    }
    Ok(m)
}

fn cmatrix_mul<F: Field>(field: &F, x: &CMatrix<F>, y: &CMatrix<F>) -> Result<CMatrix<F>, Error> {
    let n = x.len();
    let degree = x[0][0].degree();
    let mut out = vec![vec![CompositionScalar::zero(field, degree)?; n]; n];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            for m in 0..n {
                *entry = entry.add(field, &cd_mul(field, &x[r][m], &y[m][c])?)?;
            }
        }
    }
    Ok(out)
}

/// Self-adjoint `n × n` matrices over the composition algebra of the given
/// degree (1, 2, 4 or 8), with `x · y = ½(xy + yx)`.
///
/// Basis: diagonal units `e_ii`, then for `i < j` the elements
/// `u_k e_ij + conj(u_k) e_ji` for each composition unit `u_k`.
pub fn hermitian_matrix_algebra<F: Field>(n: usize, degree: usize, field: F) -> Result<JordanAlgebra<F>, Error> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("n must be at least 1".into()));
    }
    CompositionScalar::zero(&field, degree)?;
    if degree == 8 && n > 3 {
        return Err(Error::InvalidOctonionSize(n));
    }
    let units = hermitian_units(n, degree);
    let labels: Vec<String> = units
        .iter()
        .map(|u| match *u {
            HermitianUnit::Diagonal(i) => format!("e{}{}", i + 1, i + 1),
            HermitianUnit::OffDiagonal { i, j, k } => format!("u{k}e{}{}", i + 1, j + 1),
        })
        .collect();
    let matrices: Vec<CMatrix<F>> = units
        .iter()
        .map(|&u| unit_matrix(&field, n, degree, u))
        .collect::<Result<_, _>>()?;
    let half = field.half();
    let mut unit = vec![field.zero(); units.len()];
    for c in unit.iter_mut().take(n) {
        *c = field.one();
    }
    let f = field.clone();
    let mut failure = None;
    let algebra = JordanAlgebra::from_fn(format!("H_{n}(d{degree})"), field, labels, Some(unit), |a, b| {
        let product = cmatrix_mul(&f, &matrices[a], &matrices[b])
            .and_then(|xy| cmatrix_mul(&f, &matrices[b], &matrices[a]).map(|yx| (xy, yx)));
        match product {
            Ok((xy, yx)) => units
                .iter()
                .map(|u| {
                    let (r, c, k) = match *u {
                        HermitianUnit::Diagonal(i) => (i, i, 0),
                        HermitianUnit::OffDiagonal { i, j, k } => (i, j, k),
                    };
                    f.mul(&half, &f.add(&xy[r][c].coords()[k], &yx[r][c].coords()[k]))
                })
                .collect(),
            Err(e) => {
                failure.get_or_insert(e);
                vec![f.zero(); units.len()]
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(algebra),
    }
}

/// `⊕_{i≤m} H_n`, a finite truncation of the algebra of sequences with
/// entries in `H_n`.
pub fn truncated_sequence_algebra<F: Field>(
    m: usize,
    n: usize,
    degree: usize,
    field: F,
) -> Result<JordanAlgebra<F>, Error> {
    if m == 0 {
        return Err(Error::InvalidAlgebra("m must be at least 1".into()));
    }
    let h = hermitian_matrix_algebra(n, degree, field)?;
    let mut sum = h.clone();
    for _ in 1..m {
        sum = direct_sum(&sum, &h)?;
    }
    Ok(sum.with_name(format!("H_{n}(d{degree})^{m}")))
}

/// A Jordan subalgebra of `M_n(F)^+` together with its basis matrices, so
/// that products can be checked against matrix multiplication.
#[derive(Clone, Debug)]
pub struct RandomSpecial<F: Field> {
    pub algebra: JordanAlgebra<F>,
    /// Matrix size.
    pub n: usize,
    /// Row-major `n × n` matrix of each basis vector.
    pub basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> RandomSpecial<F> {
    /// The matrix of an element.
    pub fn matrix(&self, x: &Element<F>) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let mut out = vec![f.zero(); self.n * self.n];
        for (c, b) in x.coords().iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o = f.add(o, &f.mul(c, v));
            }
        }
        out
    }

    /// Associative matrix product.
    pub fn matmul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        square_matmul(self.algebra.field(), self.n, x, y)
    }
}

fn square_matmul<F: Field>(f: &F, n: usize, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n * n];
    for r in 0..n {
        for m in 0..n {
            let a = &x[r * n + m];
            if f.is_zero(a) {
                continue;
            }
            for c in 0..n {
                out[r * n + c] = f.add(&out[r * n + c], &f.mul(a, &y[m * n + c]));
            }
        }
    }
    out
}

fn jordan_matmul<F: Field>(f: &F, n: usize, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    let half = f.half();
    square_matmul(f, n, x, y)
        .iter()
        .zip(square_matmul(f, n, y, x))
        .map(|(a, b)| f.mul(&half, &f.add(a, &b)))
        .collect()
}

/// Jordan closure of the span of `gens` in `M_n`, or `None` once the
/// dimension exceeds `bound`.
fn jordan_closure<F: Field>(f: &F, n: usize, gens: Vec<Vec<F::Elem>>, bound: usize) -> Option<Subspace<F>> {
    let mut span = Subspace::span(f, n * n, gens);
    loop {
        if span.dim() > bound {
            return None;
        }
        let basis = span.basis().to_vec();
        let mut grown = span.clone();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let p = jordan_matmul(f, n, &basis[i], &basis[j]);
                if !grown.contains(&p) {
                    grown = Subspace::span(f, n * n, grown.basis().iter().cloned().chain([p]));
                }
            }
        }
        if grown.dim() == span.dim() {
            return Some(span);
        }
        span = grown;
    }
}

/// A seeded random special Jordan algebra of dimension `1..=dim_bound`: the
/// Jordan closure of one or two sparse random matrices in `M_2` or `M_3`.
/// Deterministic in `seed`.
pub fn random_special_algebra<F: Field>(seed: u64, field: F, dim_bound: usize) -> Result<RandomSpecial<F>, Error> {
    if dim_bound == 0 {
        return Err(Error::InvalidAlgebra("dimension bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = &field;
    let (n, basis) = loop {
        let n = if rng.gen_bool(0.7) { 2 } else { 3 };
        let count = rng.gen_range(1..=2);
        let gens: Vec<Vec<F::Elem>> = (0..count)
            .map(|_| {
                (0..n * n)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            f.zero()
                        } else {
                            f.from_i64(rng.gen_range(-2..=2))
                        }
                    })
                    .collect()
            })
            .collect();
        if let Some(span) = jordan_closure(f, n, gens, dim_bound) {
            if !span.is_zero() {
                break (n, span.basis().to_vec());
            }
        }
    };
    let pivots: Vec<usize> = Subspace::span(f, n * n, basis.clone()).pivots().to_vec();
    let labels = (0..basis.len()).map(|i| format!("m{i}")).collect();
    let algebra = JordanAlgebra::from_fn(format!("random({seed})"), field.clone(), labels, None, |i, j| {
        // The canonical basis has a unit entry at each pivot, so coordinates
        // are read off the pivot columns.
        let p = jordan_matmul(f, n, &basis[i], &basis[j]);
        pivots.iter().map(|&c| p[c].clone()).collect()
    })?;
    let unit = find_unit(&algebra);
    Ok(RandomSpecial {
        algebra: algebra.with_unit(unit),
        n,
        basis,
    })
}

/// A named algebra of the shipped corpus.
#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub description: &'static str,
    build: fn() -> Result<AnyAlgebra, Error>,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<AnyAlgebra, Error> {
        (self.build)().map(|a| a.with_name(self.id))
    }
}

fn fp(p: u32) -> PrimeField {
    PrimeField::new(p).expect("prime")
}

macro_rules! entry {
    ($id:literal, $desc:literal, Fp($p:literal), $ctor:expr) => {
        CorpusEntry {
            id: $id,
            description: $desc,
            build: || {
                let f = fp($p);
                $ctor(f).map(AnyAlgebra::Fp)
            },
        }
    };
    ($id:literal, $desc:literal, Q, $ctor:expr) => {
        CorpusEntry {
            id: $id,
            description: $desc,
            build: || $ctor(Rationals).map(AnyAlgebra::Q),
        }
    };
}

/// Every algebra shipped as a data file, in a fixed order.
pub fn entries() -> Vec<CorpusEntry> {
    vec![
        entry!("e2_f3", "F1 + Fe12 over F_3", Fp(3), |f| Ok(example2(f))),
        entry!("e2_f5", "F1 + Fe12 over F_5", Fp(5), |f| Ok(example2(f))),
        entry!("e2_q", "F1 + Fe12 over Q", Q, |f| Ok(example2(f))),
        entry!("e3_1_f3", "F1 + Fe12 (k = 1) over F_3", Fp(3), |f| example3(1, f)),
        entry!("e3_2_f3", "F1 + Fe12 + Fe34 over F_3", Fp(3), |f| example3(2, f)),
        entry!("e3_3_f3", "F1 + Fe12 + Fe34 + Fe56 over F_3", Fp(3), |f| example3(3, f)),
        entry!("e3_2_q", "F1 + Fe12 + Fe34 over Q", Q, |f| example3(2, f)),
        entry!("nu_2_f3", "zero-product Fe12 + Fe34 over F_3", Fp(3), |f| nonunital_nil(2, f)),
        entry!("nu_3_f3", "zero-product Fe12 + Fe34 + Fe56 over F_3", Fp(3), |f| nonunital_nil(3, f)),
        entry!("nu_2_q", "zero-product Fe12 + Fe34 over Q", Q, |f| nonunital_nil(2, f)),
        entry!("m2_f3", "M_2 with the symmetrized product over F_3", Fp(3), |f| full_matrix_jordan(2, f)),
        entry!("m2_f5", "M_2 with the symmetrized product over F_5", Fp(5), |f| full_matrix_jordan(2, f)),
        entry!("m2_q", "M_2 with the symmetrized product over Q", Q, |f| full_matrix_jordan(2, f)),
        entry!("m3_f3", "M_3 with the symmetrized product over F_3", Fp(3), |f| full_matrix_jordan(3, f)),
        entry!("h2_f3", "symmetric 2x2 matrices over F_3", Fp(3), |f| hermitian_matrix_algebra(2, 1, f)),
        entry!("h2_f5", "symmetric 2x2 matrices over F_5", Fp(5), |f| hermitian_matrix_algebra(2, 1, f)),
        entry!("h2_q", "symmetric 2x2 matrices over Q", Q, |f| hermitian_matrix_algebra(2, 1, f)),
        entry!("h3_oct_q", "hermitian 3x3 octonion matrices over Q", Q, |f| hermitian_matrix_algebra(3, 8, f)),
        entry!("seq2_h2_f3", "H_2(F_3) + H_2(F_3)", Fp(3), |f| truncated_sequence_algebra(2, 2, 1, f)),
    ]
}

pub fn entry(id: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate::validate_jordan;
    use crate::DEFAULT_BUDGET;

    fn f3() -> PrimeField {
        fp(3)
    }

    #[test]
    fn dimensions() {
        assert_eq!(example2(f3()).dim(), 2);
        assert_eq!(example3(3, f3()).unwrap().dim(), 4);
        assert_eq!(nonunital_nil(2, f3()).unwrap().dim(), 2);
        assert_eq!(full_matrix_jordan(3, f3()).unwrap().dim(), 9);
        for (n, d) in [(2, 1), (3, 1), (2, 2), (3, 4), (2, 8)] {
            let h = hermitian_matrix_algebra(n, d, Rationals).unwrap();
            assert_eq!(h.dim(), n + d * n * (n - 1) / 2);
        }
        assert!(matches!(
            hermitian_matrix_algebra(4, 8, Rationals),
            Err(Error::InvalidOctonionSize(4))
        ));
        assert_eq!(truncated_sequence_algebra(2, 2, 1, f3()).unwrap().dim(), 6);
    }

    #[test]
    fn e2_products() {
        let a = example2(f3());
        let e12 = a.basis(1);
        assert!(a.is_zero(&a.square(&e12)));
        assert_eq!(a.mul(a.unit().unwrap(), &e12), e12);
    }

    #[test]
    fn hermitian_unit_acts_as_identity() {
        for d in [1, 2, 4] {
            let h = hermitian_matrix_algebra(3, d, Rationals).unwrap();
            let u = h.unit().unwrap().clone();
            for i in 0..h.dim() {
                assert_eq!(h.mul(&u, &h.basis(i)), h.basis(i));
            }
        }
    }

    #[test]
    fn small_constructions_validate() {
        let budget = DEFAULT_BUDGET;
        assert!(validate_jordan(&example2(f3()), budget).unwrap().is_valid());
        assert!(validate_jordan(&example3(2, f3()).unwrap(), budget).unwrap().is_valid());
        assert!(validate_jordan(&full_matrix_jordan(2, fp(5)).unwrap(), budget).unwrap().is_valid());
        assert!(validate_jordan(&hermitian_matrix_algebra(2, 4, Rationals).unwrap(), budget).unwrap().is_valid());
        assert!(validate_jordan(&truncated_sequence_algebra(2, 2, 1, f3()).unwrap(), budget).unwrap().is_valid());
    }

    #[test]
    fn random_algebras_are_deterministic_and_special() {
        let a = random_special_algebra(0, f3(), 4).unwrap();
        let b = random_special_algebra(0, f3(), 4).unwrap();
        assert_eq!(a.algebra, b.algebra);
        assert!(a.algebra.dim() <= 4);
        assert!(validate_jordan(&a.algebra, DEFAULT_BUDGET).unwrap().is_valid());
        for i in 0..a.algebra.dim() {
            for j in 0..a.algebra.dim() {
                let x = a.algebra.basis(i);
                let y = a.algebra.basis(j);
                let u = a.algebra.u_apply(&x, &y);
                let mx = a.matrix(&x);
                assert_eq!(a.matrix(&u), a.matmul(&a.matmul(&mx, &a.matrix(&y)), &mx));
            }
        }
    }

    #[test]
    fn entries_build() {
        for e in entries() {
            let a = e.build().unwrap();
            assert_eq!(a.name(), e.id);
        }
    }
}
