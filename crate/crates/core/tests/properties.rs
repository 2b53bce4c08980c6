//! Property tests for invariants that hold in every algebra: linear algebra
//! identities, Jordan identities, constructions and the file format.

use proptest::prelude::*;

use jordan_core::algebra::validate_jordan;
use jordan_core::composition::{cd_mul, CompositionScalar};
use jordan_core::corpus::{hermitian_matrix_algebra, random_special_algebra};
use jordan_core::deciders::Analysis;
use jordan_core::format::{parse_algebra, AnyAlgebra};
use jordan_core::linalg::{image, kernel};
use jordan_core::peirce::peirce;
use jordan_core::{Element, Field, JordanAlgebra, Matrix, PrimeField, Rationals, Subspace, DEFAULT_BUDGET};

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn element<F: Field>(a: &JordanAlgebra<F>, c: &[i64]) -> Element<F> {
    Element::new(c.iter().take(a.dim()).map(|&v| a.field().from_i64(v)).collect())
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_kernels(rows in prop::collection::vec(coeffs(5), 1..6)) {
        check_kernel(f5(), &rows);
        check_kernel(Rationals, &rows);
    }

    #[test]
    fn subspace_dimension_formula(u in prop::collection::vec(coeffs(4), 0..4), v in prop::collection::vec(coeffs(4), 0..4)) {
        let f = f5();
        let conv = |rows: &Vec<Vec<i64>>| rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>();
        let u = Subspace::span(&f, 4, conv(&u));
        let v = Subspace::span(&f, 4, conv(&v));
        let sum = u.sum(&v).unwrap();
        let meet = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && u.is_subspace_of(&sum).unwrap());
        // Canonical form: the span of a basis in reverse order is identical.
        let reversed = Subspace::span(&f, 4, u.basis().iter().rev().cloned());
        prop_assert_eq!(reversed, u);
    }

    #[test]
    fn jordan_identities_in_hermitian_algebras(x in coeffs(15), y in coeffs(15), degree in prop::sample::select(vec![1usize, 2, 4])) {
        let a = hermitian_matrix_algebra(3, degree, Rationals).unwrap();
        let (x, y) = (element(&a, &x), element(&a, &y));
        let x2 = a.square(&x);
        prop_assert_eq!(a.mul(&x, &y), a.mul(&y, &x));
        prop_assert_eq!(a.mul(&a.mul(&x2, &y), &x), a.mul(&x2, &a.mul(&y, &x)));
        // U_x y = 2x(xy) − x²y.
        let two = a.field().from_i64(2);
        let expect = a.sub(&a.scale(&two, &a.mul(&x, &a.mul(&x, &y))), &a.mul(&x2, &y));
        prop_assert_eq!(a.u_apply(&x, &y), expect);
    }

    #[test]
    fn fundamental_formula(x in coeffs(9), y in coeffs(9)) {
        // U_{U_x y} = U_x U_y U_x
        let a = hermitian_matrix_algebra(3, 1, f5()).unwrap();
        let (x, y) = (element(&a, &x), element(&a, &y));
        let lhs = a.u_op(&a.u_apply(&x, &y));
        let rhs = a.u_op(&x).matmul(&a.u_op(&y)).matmul(&a.u_op(&x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hermitian_product_is_symmetrized_matrix_product(x in coeffs(12), y in coeffs(12), degree in prop::sample::select(vec![1usize, 2, 4])) {
        let f = Rationals;
        let a = hermitian_matrix_algebra(2, degree, f).unwrap();
        let (x, y) = (element(&a, &x), element(&a, &y));
        let (mx, my) = (to_matrix(&f, 2, degree, &x), to_matrix(&f, 2, degree, &y));
        let xy = mat_mul(&f, &mx, &my);
        let yx = mat_mul(&f, &my, &mx);
        let half = f.half();
        let sym: Vec<Vec<Vec<_>>> = xy
            .iter()
            .zip(&yx)
            .map(|(r, s)| r.iter().zip(s).map(|(p, q)| p.iter().zip(q).map(|(u, v)| f.mul(&half, &f.add(u, v))).collect()).collect())
            .collect();
        prop_assert_eq!(to_matrix(&f, 2, degree, &a.mul(&x, &y)), sym);
    }

    #[test]
    fn random_algebras_round_trip_through_json(seed in 0u64..500) {
        let a = random_special_algebra(seed, f5(), 4).unwrap().algebra;
        let any = AnyAlgebra::Fp(a);
        let json = any.to_json();
        let back = parse_algebra(&json).unwrap();
        prop_assert_eq!(&back, &any);
        prop_assert_eq!(back.to_json(), json);
    }

    #[test]
    fn random_algebras_are_jordan_and_decompose(seed in 0u64..500) {
        let a = random_special_algebra(seed, PrimeField::new(3).unwrap(), 4).unwrap().algebra;
        prop_assert!(validate_jordan(&a, DEFAULT_BUDGET).unwrap().is_valid());
        let an = Analysis::new(&a, DEFAULT_BUDGET).unwrap();
        for e in an.idempotent_elements() {
            let p = peirce(&a, &e).unwrap();
            prop_assert!(p.is_decomposition());
            prop_assert_eq!(p.one.dim() + p.half.dim() + p.zero.dim(), a.dim());
        }
        prop_assert!(an.square_signature_collision().is_none());
    }
}

fn check_kernel<F: Field>(f: F, rows: &[Vec<i64>]) {
    let rows: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
    let m = Matrix::from_rows(&f, 5, &rows);
    assert_eq!(m.rank() + kernel(&m).dim(), m.cols());
    assert_eq!(image(&m).dim(), m.rank());
    for v in kernel(&m).basis() {
        assert!(m.apply(v).iter().all(|c| f.is_zero(c)));
    }
}

/// Coordinates to an `n × n` matrix of composition scalars, written out
/// directly from the basis description: `e_ii`, then `u_k e_ij` for `i < j`
/// with the conjugate entry `(j, i)`. Conjugation negates imaginary parts.
fn to_matrix<F: Field>(f: &F, n: usize, degree: usize, x: &Element<F>) -> Vec<Vec<Vec<F::Elem>>> {
    let mut m = vec![vec![vec![f.zero(); degree]; n]; n];
    let c = x.coords();
    for i in 0..n {
        m[i][i][0] = c[i].clone();
    }
    let mut pos = n;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..degree {
                m[i][j][k] = c[pos].clone();
                m[j][i][k] = if k == 0 { c[pos].clone() } else { f.neg(&c[pos]) };
                pos += 1;
            }
        }
    }
    m
}

fn mat_mul<F: Field>(f: &F, x: &[Vec<Vec<F::Elem>>], y: &[Vec<Vec<F::Elem>>]) -> Vec<Vec<Vec<F::Elem>>> {
    let n = x.len();
    let degree = x[0][0].len();
    let mut out = vec![vec![vec![f.zero(); degree]; n]; n];
    for r in 0..n {
        for c in 0..n {
            for m in 0..n {
                let p = cd_mul(
                    f,
                    &CompositionScalar::new(x[r][m].clone()).unwrap(),
                    &CompositionScalar::new(y[m][c].clone()).unwrap(),
                )
                .unwrap();
                for (o, v) in out[r][c].iter_mut().zip(p.coords()) {
                    *o = f.add(o, v);
                }
            }
        }
    }
    out
}
