//! The claims suite: executable statements about the corpus algebras.
//!
//! Each claim is `Asserted` (a published statement about the example, tested
//! over F_p exhaustively or over ℚ three-valued) or `Pinned` (a value observed
//! by this library and kept as a regression check). Claims are grouped by
//! topic; a filter selects claims whose id or group contains a substring.
//!
//! Statements made over ℝ are tested over F_3, F_5 and ℚ: they are algebraic
//! identities and set equalities, and the field used is recorded per claim.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{squares_span, validate_jordan, Element, JordanAlgebra};
use crate::annihilators::{idempotents, left_annihilator};
use crate::corpus::{
    example2, example3, full_matrix_jordan, hermitian_matrix_algebra, nonunital_nil, truncated_sequence_algebra,
};
use crate::deciders::{check, Analysis, Settings};
use crate::enumerate::{ElementSpace, Enumerated};
use crate::field::{Field, FieldDesc, PrimeField, Rationals};
use crate::lattice::IdemLattice;
use crate::linalg::Subspace;
use crate::radicals::{deg_radical, nil_radical};
use crate::report::describe_witness;
use crate::verdict::{Outcome, Property};
use crate::{Error, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Asserted,
    Pinned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

struct Observation {
    observed: String,
    detail: Option<String>,
}

impl Observation {
    fn new(observed: impl Into<String>) -> Self {
        Observation {
            observed: observed.into(),
            detail: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

type Check = Box<dyn Fn() -> Result<Observation, Error> + Send + Sync>;

pub struct Claim {
    pub id: String,
    pub group: &'static str,
    pub algebra: String,
    pub field: FieldDesc,
    pub statement: String,
    pub expectation: Expectation,
    pub expected: &'static str,
    check: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub group: &'static str,
    pub algebra: String,
    pub field: FieldDesc,
    pub statement: String,
    pub expectation: Expectation,
    pub expected: &'static str,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub status: Status,
}

/// A place where the observed results contradict an implication that the
/// asserted statements would predict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub id: String,
    pub claims: Vec<String>,
    pub summary: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
    pub findings: Vec<Finding>,
}

impl ClaimsReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn get(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// Process exit code: 1 if any claim failed, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::Fails => "fails",
        Outcome::Unknown => "unknown",
    }
}

fn tri(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

fn f3() -> PrimeField {
    PrimeField::new(3).expect("prime")
}

fn f5() -> PrimeField {
    PrimeField::new(5).expect("prime")
}

fn tag<F: Field>(f: &F) -> String {
    match f.desc() {
        FieldDesc::Rationals => "q".into(),
        FieldDesc::PrimeField { p } => format!("f{p}"),
    }
}

/// Squares exhibited by a cheap search, used to refute set equalities over ℚ.
fn sample_squares<F: Field>(a: &JordanAlgebra<F>) -> Vec<Element<F>> {
    let mut out = Vec::new();
    for i in 0..a.dim() {
        out.push(a.square(&a.basis(i)));
        for j in (i + 1)..a.dim() {
            out.push(a.square(&a.add(&a.basis(i), &a.basis(j))));
            out.push(a.square(&a.sub(&a.basis(i), &a.basis(j))));
        }
    }
    out
}

/// `⊥S ∩ A² = U_e(A) ∩ A²`: exact by enumeration over F_p; over ℚ equal
/// intersections with the span of the squares prove it and a sampled square
/// in one side only refutes it.
fn left_matches_inner<F: Field>(a: &JordanAlgebra<F>, s: &[Element<F>], e: &Element<F>) -> Option<bool> {
    let left = left_annihilator(a, s);
    let inner = a.inner_ideal(e);
    match Enumerated::new(a, DEFAULT_BUDGET) {
        Ok(en) => Some(en.squares_in(&left) == en.squares_in(&inner)),
        Err(_) => {
            let span = squares_span(a);
            if left.intersect(&span).ok()? == inner.intersect(&span).ok()? {
                return Some(true);
            }
            let split = sample_squares(a)
                .iter()
                .any(|sq| left.contains(sq.coords()) != inner.contains(sq.coords()));
            if split {
                Some(false)
            } else {
                None
            }
        }
    }
}

fn all_of(values: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut unknown = false;
    for v in values {
        match v {
            Some(false) => return Some(false),
            None => unknown = true,
            Some(true) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

/// Every nonzero scalar over F_p, a fixed sample over ℚ.
fn nonzero_scalars<F: Field>(f: &F) -> Vec<F::Elem> {
    f.sample_nonzero()
}

/// All coordinate vectors of length `n` over F_p, or a grid over ℚ.
fn coordinate_grid<F: Field>(f: &F, n: usize) -> Vec<Vec<F::Elem>> {
    match ElementSpace::for_dim(f, n, DEFAULT_BUDGET) {
        Ok(space) => space.iter().map(Element::into_coords).collect(),
        Err(_) => {
            let values: Vec<F::Elem> = [0, 1, -1, 2]
                .iter()
                .map(|&v| f.from_i64(v))
                .chain([f.half()])
                .collect();
            let mut out = vec![Vec::new()];
            for _ in 0..n {
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        values.iter().map(move |v| {
                            let mut p = prefix.clone();
                            p.push(v.clone());
                            p
                        })
                    })
                    .collect();
            }
            out
        }
    }
}

fn is_exhaustive<F: Field>(f: &F) -> bool {
    f.order().is_some()
}

fn scope<F: Field>(f: &F, what: &str) -> String {
    if is_exhaustive(f) {
        format!("all {what}")
    } else {
        format!("sampled {what}")
    }
}

struct Builder {
    claims: Vec<Claim>,
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn add(
        &mut self,
        id: String,
        group: &'static str,
        algebra: String,
        field: FieldDesc,
        statement: String,
        expectation: Expectation,
        expected: &'static str,
        check: impl Fn() -> Result<Observation, Error> + Send + Sync + 'static,
    ) {
        self.claims.push(Claim {
            id,
            group,
            algebra,
            field,
            statement,
            expectation,
            expected,
            check: Box::new(check),
        });
    }
}

fn property_claim<F: Field>(
    b: &mut Builder,
    id: String,
    group: &'static str,
    a: JordanAlgebra<F>,
    property: Property,
    expectation: Expectation,
    expected: &'static str,
) {
    let statement = format!("{} check on {} over {}", property.name(), a.name(), a.field().desc());
    b.add(
        id,
        group,
        a.name().to_string(),
        a.field().desc(),
        statement,
        expectation,
        expected,
        move || {
            let r = check(&a, property, &Settings::new(DEFAULT_BUDGET))?;
            let mut obs = Observation::new(outcome_name(r.outcome()));
            if let Some(w) = &r.verdict.witness {
                obs = obs.with_detail(describe_witness(&a, w));
            }
            Ok(obs)
        },
    );
}

/// Claims shared by `F·1 + Σ F·e_{2i−1,2i}` for k = 1 (written E2) and k ≥ 1.
fn nil_extension_claims<F: Field>(b: &mut Builder, a: JordanAlgebra<F>, prefix: String, group: &'static str) {
    let f = a.field().clone();
    let k = a.dim() - 1;
    let desc = f.desc();
    let name = a.name().to_string();
    let one = a.unit().expect("unital").clone();
    let nil: Vec<Element<F>> = (1..=k).map(|i| a.basis(i)).collect();
    let asserted = Expectation::Asserted;

    let cases: Vec<(&str, String, Vec<Element<F>>, Element<F>)> = vec![
        ("perp-zero", "⊥{0} ∩ A² = U_1(A) ∩ A²".into(), vec![a.zero()], one.clone()),
        ("perp-unit", "⊥{1} ∩ A² = U_0(A) ∩ A²".into(), vec![one.clone()], a.zero()),
    ];
    for (suffix, statement, s, e) in cases {
        let a = a.clone();
        b.add(format!("{prefix}-{suffix}"), group, name.clone(), desc, statement, asserted, "true", move || {
            Ok(Observation::new(tri(left_matches_inner(&a, &s, &e))))
        });
    }
    {
        let (a, one, nil) = (a.clone(), one.clone(), nil.clone());
        b.add(
            format!("{prefix}-perp-nil-generators"),
            group,
            name.clone(),
            desc,
            "⊥{e_{2i−1,2i}} ∩ A² = U_1(A) ∩ A² for every i".into(),
            asserted,
            "true",
            move || Ok(Observation::new(tri(all_of(nil.iter().map(|x| left_matches_inner(&a, std::slice::from_ref(x), &one)))))),
        );
    }
    {
        let (a, f) = (a.clone(), f.clone());
        let one = one.clone();
        b.add(
            format!("{prefix}-perp-scaled-unit"),
            group,
            name.clone(),
            desc,
            format!("⊥{{λ1}} ∩ A² = U_0(A) ∩ A² for {}", scope(&f, "nonzero λ")),
            asserted,
            "true",
            move || {
                let results = nonzero_scalars(&f)
                    .into_iter()
                    .map(|l| left_matches_inner(&a, &[a.scale(&l, &one)], &a.zero()));
                Ok(Observation::new(tri(all_of(results))))
            },
        );
    }
    {
        let (a, f, one) = (a.clone(), f.clone(), one.clone());
        b.add(
            format!("{prefix}-perp-nil-combinations"),
            group,
            name.clone(),
            desc,
            format!("⊥{{Σ λ_i e_{{2i−1,2i}}}} ∩ A² = U_1(A) ∩ A² for {}", scope(&f, "λ_i")),
            asserted,
            "true",
            move || {
                let results = coordinate_grid(&f, k).into_iter().map(|lambdas| {
                    let mut c = vec![f.zero()];
                    c.extend(lambdas);
                    left_matches_inner(&a, &[Element::new(c)], &one)
                });
                Ok(Observation::new(tri(all_of(results))))
            },
        );
    }
    {
        let (a, f) = (a.clone(), f.clone());
        b.add(
            format!("{prefix}-u-formula"),
            group,
            name.clone(),
            desc,
            format!(
                "U_{{λ1 + Σλ_i e_i}}(α1 + Σα_i e_i) = λ²α1 + Σ(2λαλ_i + λ²α_i)e_i for {}",
                scope(&f, "coefficients")
            ),
            asserted,
            "true",
            move || {
                let ok = coordinate_grid(&f, 2 * (k + 1)).into_par_iter().all(|c| {
                    let x = Element::new(c[..=k].to_vec());
                    let y = Element::new(c[k + 1..].to_vec());
                    let (l, al) = (&c[0], &c[k + 1]);
                    let l2 = f.mul(l, l);
                    let mut expect = vec![f.mul(&l2, al)];
                    for i in 1..=k {
                        let cross = f.mul(&f.from_i64(2), &f.mul(&f.mul(l, al), &c[i]));
                        expect.push(f.add(&cross, &f.mul(&l2, &c[k + 1 + i])));
                    }
                    a.u_apply(&x, &y).into_coords() == expect
                });
                Ok(Observation::new(tri(Some(ok))))
            },
        );
    }
    {
        let (a, f) = (a.clone(), f.clone());
        b.add(
            format!("{prefix}-perp-generic"),
            group,
            name.clone(),
            desc,
            format!("⊥{{λ1 + Σλ_i e_i}} ∩ A = U_0(A) ∩ A for {}", scope(&f, "λ ≠ 0 and λ_i")),
            asserted,
            "true",
            move || {
                let ok = coordinate_grid(&f, k + 1)
                    .into_iter()
                    .filter(|c| !f.is_zero(&c[0]))
                    .all(|c| left_annihilator(&a, &[Element::new(c)]).is_zero());
                Ok(Observation::new(tri(Some(ok))))
            },
        );
    }
    if is_exhaustive(&f) {
        property_claim(b, format!("{prefix}-rj"), group, a.clone(), Property::Rj, asserted, "holds");
        property_claim(b, format!("{prefix}-bj"), "bj-verdicts", a.clone(), Property::Bj, asserted, "holds");
    }
    {
        let a = a.clone();
        b.add(
            format!("{prefix}-trivial"),
            group,
            name.clone(),
            desc,
            "the algebra is degenerate, with e12 a trivial element".into(),
            asserted,
            "fails",
            move || {
                let r = check(&a, Property::Nondegenerate, &Settings::new(DEFAULT_BUDGET))?;
                let mut obs = Observation::new(outcome_name(r.outcome()));
                if let Some(w) = &r.verdict.witness {
                    obs = obs.with_detail(describe_witness(&a, w));
                }
                Ok(obs)
            },
        );
    }
    {
        let (a, nil) = (a.clone(), nil.clone());
        b.add(
            format!("{prefix}-nil-radical"),
            group,
            name,
            desc,
            "the nil radical is Σ F·e_{2i−1,2i}".into(),
            asserted,
            "true",
            move || {
                let r = nil_radical(&a, DEFAULT_BUDGET);
                let expect = Subspace::span(a.field(), a.dim(), nil.iter().map(|x| x.coords().to_vec()));
                Ok(Observation::new(tri(Some(r.subspace == expect))).with_detail(r.method))
            },
        );
    }
}

fn nonunital_claims<F: Field>(b: &mut Builder, a: JordanAlgebra<F>) {
    let f = a.field().clone();
    let prefix = format!("nu{}-{}", a.dim(), tag(&f));
    let name = a.name().to_string();
    let desc = f.desc();
    let group = "nonunital-nil";
    {
        let a = a.clone();
        b.add(
            format!("{prefix}-idempotents"),
            group,
            name.clone(),
            desc,
            "0 is the only idempotent".into(),
            Expectation::Asserted,
            "true",
            move || {
                // Over ℚ: every square is 0, so e = e² forces e = 0.
                if squares_span(&a).is_zero() {
                    return Ok(Observation::new("true").with_detail("all squares vanish"));
                }
                let idem = idempotents(&a, DEFAULT_BUDGET);
                Ok(Observation::new(tri(Some(idem.elements == vec![a.zero()]))))
            },
        );
    }
    {
        let a = a.clone();
        b.add(
            format!("{prefix}-perp-zero-squares"),
            group,
            name.clone(),
            desc,
            "⊥{0} ∩ A² = U_0(A) ∩ A²".into(),
            Expectation::Asserted,
            "true",
            move || Ok(Observation::new(tri(left_matches_inner(&a, &[a.zero()], &a.zero())))),
        );
    }
    {
        let a = a.clone();
        b.add(
            format!("{prefix}-perp-zero-literal"),
            group,
            name.clone(),
            desc,
            "⊥{0} = U_0(A) ∩ A², read without intersecting the left side with A²".into(),
            Expectation::Pinned,
            "false",
            move || {
                let left = left_annihilator(&a, &[a.zero()]);
                let right = a.inner_ideal(&a.zero()).intersect(&squares_span(&a))?;
                Ok(Observation::new(tri(Some(left == right))).with_detail(format!("⊥{{0}} has dimension {}", left.dim())))
            },
        );
    }
    if is_exhaustive(&f) {
        property_claim(b, format!("{prefix}-rj"), group, a.clone(), Property::Rj, Expectation::Asserted, "holds");
        property_claim(b, format!("{prefix}-bj"), "bj-verdicts", a.clone(), Property::Bj, Expectation::Asserted, "holds");
        property_claim(
            b,
            format!("{prefix}-rickart"),
            group,
            a,
            Property::RickartJordan,
            Expectation::Pinned,
            "fails",
        );
    }
}

fn m3_claims<F: Field>(b: &mut Builder, f: F) {
    let a = full_matrix_jordan(3, f.clone()).expect("M_3");
    let prefix = format!("m3-{}", tag(&f));
    let group = "nilpotent-square-root-obstruction";
    let name = a.name().to_string();
    let desc = f.desc();
    {
        let a = a.clone();
        b.add(
            format!("{prefix}-matrix"),
            group,
            name.clone(),
            desc,
            "N = e12 + e13 + e23 has N² = e13 ≠ 0 and N⁴ = (N²)² = 0".into(),
            Expectation::Asserted,
            "true",
            move || {
                let n = a.element_from_ints(&[0, 1, 1, 0, 0, 1, 0, 0, 0]);
                let n2 = a.square(&n);
                let ok = n2 == a.basis(2) && a.is_zero(&a.power(&n, 4)) && a.is_zero(&a.square(&n2));
                Ok(Observation::new(tri(Some(ok))))
            },
        );
    }
    if is_exhaustive(&f) {
        property_claim(
            b,
            format!("{prefix}-nil-sqrt"),
            group,
            a.clone(),
            Property::NoNilpotentWithSquareRoot,
            Expectation::Asserted,
            "fails",
        );
        property_claim(b, format!("{prefix}-bj"), "bj-verdicts", a.clone(), Property::Bj, Expectation::Asserted, "fails");
    }
    property_claim(b, format!("{prefix}-rj"), group, a, Property::Rj, Expectation::Asserted, "fails");
}

fn m2_claims<F: Field>(b: &mut Builder, f: F) {
    let a = full_matrix_jordan(2, f.clone()).expect("M_2");
    let prefix = format!("m2-{}", tag(&f));
    let group = "two-by-two-matrices";
    if is_exhaustive(&f) {
        property_claim(
            b,
            format!("{prefix}-nil-sqrt"),
            group,
            a.clone(),
            Property::NoNilpotentWithSquareRoot,
            Expectation::Asserted,
            "holds",
        );
        property_claim(b, format!("{prefix}-bj"), group, a.clone(), Property::Bj, Expectation::Pinned, "fails");
    }
    property_claim(b, format!("{prefix}-rj"), group, a, Property::Rj, Expectation::Pinned, "fails");
}

fn hermitian_claims(b: &mut Builder) {
    let group = "hermitian";
    for (f, rj, bj) in [(f3(), "holds", "holds"), (f5(), "fails", "fails")] {
        let a = hermitian_matrix_algebra(2, 1, f).expect("H_2");
        let prefix = format!("h2-{}", tag(&f));
        property_claim(b, format!("{prefix}-rj"), group, a.clone(), Property::Rj, Expectation::Pinned, rj);
        property_claim(b, format!("{prefix}-bj"), group, a.clone(), Property::Bj, Expectation::Pinned, bj);
        property_claim(
            b,
            format!("{prefix}-nil-sqrt"),
            group,
            a.clone(),
            Property::NoNilpotentWithSquareRoot,
            Expectation::Pinned,
            "holds",
        );
        let desc = f.desc();
        b.add(
            format!("{prefix}-deg"),
            group,
            a.name().to_string(),
            desc,
            "the degenerate radical is zero".into(),
            Expectation::Pinned,
            "true",
            move || Ok(Observation::new(tri(Some(deg_radical(&a, DEFAULT_BUDGET).subspace.is_zero())))),
        );
    }
    let albert = hermitian_matrix_algebra(3, 8, Rationals).expect("H_3 over the octonions");
    b.add(
        "h3-oct-q-validate".into(),
        group,
        albert.name().to_string(),
        FieldDesc::Rationals,
        "hermitian 3×3 octonion matrices form a 27-dimensional Jordan algebra".into(),
        Expectation::Asserted,
        "true",
        move || {
            let r = validate_jordan(&albert, DEFAULT_BUDGET)?;
            Ok(Observation::new(tri(Some(albert.dim() == 27 && r.is_valid())))
                .with_detail(format!("{} basis multisets checked", r.checked)))
        },
    );
}

fn sequence_claims(b: &mut Builder) {
    let group = "sequence-truncation";
    let a = truncated_sequence_algebra(2, 2, 1, f3()).expect("H_2 ⊕ H_2");
    property_claim(b, "seq2-f3-bj".into(), group, a.clone(), Property::Bj, Expectation::Pinned, "holds");
    let name = a.name().to_string();
    b.add(
        "seq2-f3-top".into(),
        group,
        name,
        FieldDesc::PrimeField { p: 3 },
        "the idempotent lattice has top (1, 1)".into(),
        Expectation::Asserted,
        "true",
        move || {
            let an = Analysis::new(&a, DEFAULT_BUDGET)?;
            let l: IdemLattice<PrimeField> = an.lattice();
            let top = l.top().map(|t| l.elements()[t].clone());
            Ok(Observation::new(tri(Some(top.as_ref() == a.unit()))))
        },
    );
}

/// The full list of claims, in report order.
pub fn claims() -> Vec<Claim> {
    let mut b = Builder { claims: Vec::new() };
    nil_extension_claims(&mut b, example2(f3()), "e2-f3".into(), "e2-annihilators");
    nil_extension_claims(&mut b, example2(f5()), "e2-f5".into(), "e2-annihilators");
    nil_extension_claims(&mut b, example2(Rationals), "e2-q".into(), "e2-annihilators");
    for k in 1..=3 {
        let a = example3(k, f3()).expect("E3");
        nil_extension_claims(&mut b, a, format!("e3-{k}-f3"), "e3-annihilators");
    }
    nil_extension_claims(&mut b, example3(2, Rationals).expect("E3"), "e3-2-q".into(), "e3-annihilators");
    for k in 2..=3 {
        nonunital_claims(&mut b, nonunital_nil(k, f3()).expect("NU"));
    }
    nonunital_claims(&mut b, nonunital_nil(2, Rationals).expect("NU"));
    m3_claims(&mut b, f3());
    m3_claims(&mut b, Rationals);
    m2_claims(&mut b, f3());
    m2_claims(&mut b, f5());
    m2_claims(&mut b, Rationals);
    hermitian_claims(&mut b);
    sequence_claims(&mut b);
    b.claims
}

fn findings(results: &[ClaimResult]) -> Vec<Finding> {
    let get = |id: &str| results.iter().find(|c| c.id == id);
    let mut out = Vec::new();
    for t in ["f3", "f5"] {
        let (Some(nil), Some(rj)) = (get(&format!("m2-{t}-nil-sqrt")), get(&format!("m2-{t}-rj"))) else {
            continue;
        };
        if nil.observed == "holds" && rj.observed == "fails" {
            out.push(Finding {
                id: format!("m2-{t}-rj-without-nilpotent-roots"),
                claims: vec![nil.id.clone(), rj.id.clone()],
                summary: format!(
                    "M_2^+ over {} has no nonzero nilpotent element with a square root, yet the RJ condition fails \
                     ({}). Absence of such elements does not imply RJ for this algebra.",
                    nil.field,
                    rj.detail.as_deref().unwrap_or("no witness")
                ),
            });
        }
    }
    if let Some(q) = get("m2-q-rj") {
        if q.observed == "fails" {
            out.push(Finding {
                id: "m2-q-rj-fails".into(),
                claims: vec![q.id.clone()],
                summary: format!(
                    "the RJ condition also fails for M_2^+ over Q ({})",
                    q.detail.as_deref().unwrap_or("no witness")
                ),
            });
        }
    }
    for c in results.iter().filter(|c| c.id.ends_with("-perp-zero-literal") && c.observed == "false") {
        out.push(Finding {
            id: c.id.clone(),
            claims: vec![c.id.clone()],
            summary: format!(
                "for {} the identity ⊥{{0}} = U_0(A) ∩ A² only holds after intersecting the left side with A² ({})",
                c.algebra,
                c.detail.as_deref().unwrap_or("")
            ),
        });
    }
    out
}

/// Runs every claim whose id or group contains `filter` (all when `None`).
/// The report is identical across runs and thread counts.
pub fn run_corpus(filter: Option<&str>) -> ClaimsReport {
    let selected: Vec<Claim> = claims()
        .into_iter()
        .filter(|c| filter.is_none_or(|s| c.id.contains(s) || c.group.contains(s)))
        .collect();
    let results: Vec<ClaimResult> = selected
        .par_iter()
        .map(|c| {
            let (observed, detail) = match (c.check)() {
                Ok(o) => (o.observed, o.detail),
                Err(e) => (format!("error: {e}"), None),
            };
            let status = if observed == c.expected {
                Status::Pass
            } else if observed == "unknown" {
                Status::Unknown
            } else {
                Status::Fail
            };
            ClaimResult {
                id: c.id.clone(),
                group: c.group,
                algebra: c.algebra.clone(),
                field: c.field,
                statement: c.statement.clone(),
                expectation: c.expectation,
                expected: c.expected,
                observed,
                detail,
                status,
            }
        })
        .collect();
    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Unknown => summary.unknown += 1,
        }
    }
    let findings = findings(&results);
    ClaimsReport {
        claims: results,
        summary,
        findings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let all = claims();
        let mut ids: Vec<&str> = all.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn e2_claims_pass() {
        let r = run_corpus(Some("e2-f3"));
        assert!(!r.claims.is_empty());
        for c in &r.claims {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
    }

    #[test]
    fn filter_selects_group() {
        let r = run_corpus(Some("nilpotent-square-root"));
        assert!(r.claims.iter().all(|c| c.id.starts_with("m3-")));
        assert!(!r.claims.is_empty());
    }
}
