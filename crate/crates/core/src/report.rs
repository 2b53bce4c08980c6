//! Serializable reports. Elements appear as vectors of canonical coefficient
//! strings; subspaces as their reduced bases. Reports carry no timing, so the
//! same input always gives the same bytes.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, JordanAlgebra, ValidationMethod, ValidationReport, Violation};
use crate::field::{Field, FieldDesc};
use crate::lattice::IdemLattice;
use crate::linalg::Subspace;
use crate::peirce::Peirce;
use crate::radicals::{ChainStep, RadicalKind, RadicalReport};
use crate::verdict::{Bound, ClassReport, Mode, Outcome, Property, Witness};
use crate::Error;

pub type Coords = Vec<String>;

pub fn coords<F: Field>(a: &JordanAlgebra<F>, x: &Element<F>) -> Coords {
    x.to_strings(a.field())
}

/// Parses coordinate strings into an element of `a`.
pub fn element_from_coords<F: Field>(a: &JordanAlgebra<F>, c: &[String]) -> Result<Element<F>, Error> {
    if c.len() != a.dim() {
        return Err(Error::AlgebraMismatch(format!(
            "{} coordinates for dimension {}",
            c.len(),
            a.dim()
        )));
    }
    let f = a.field();
    c.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>, _>>().map(Element::new)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceReport {
    pub dim: usize,
    pub basis: Vec<Coords>,
}

impl SubspaceReport {
    pub fn new<F: Field>(v: &Subspace<F>) -> Self {
        let f = v.field();
        SubspaceReport {
            dim: v.dim(),
            basis: v
                .basis()
                .iter()
                .map(|b| b.iter().map(|c| f.format(c)).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub x: Coords,
    pub e: Coords,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub algebra: String,
    pub field: FieldDesc,
    pub dim: usize,
    pub property: Property,
    pub method: String,
    pub mode: Mode,
    pub budget: u64,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness<Coords>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub idempotent_map: Vec<MapEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new<F: Field>(a: &JordanAlgebra<F>, r: &ClassReport<F>, budget: u64) -> Self {
        CheckReport {
            algebra: a.name().to_string(),
            field: r.field,
            dim: a.dim(),
            property: r.property,
            method: r.method.clone(),
            mode: r.mode,
            budget,
            outcome: r.verdict.outcome,
            witness: r.verdict.witness.clone().map(|w| w.map(|x| coords(a, &x))),
            reason: r.verdict.reason.clone(),
            idempotent_map: r
                .idempotent_map
                .iter()
                .map(|(x, e)| MapEntry {
                    x: coords(a, x),
                    e: coords(a, e),
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

/// A witness file: either a full check report or a bare witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessFile {
    Report(Box<CheckReport>),
    Bare(Witness<Coords>),
}

impl WitnessFile {
    pub fn witness(&self) -> Option<&Witness<Coords>> {
        match self {
            WitnessFile::Report(r) => r.witness.as_ref(),
            WitnessFile::Bare(w) => Some(w),
        }
    }
}

pub fn parse_witness_file(text: &str) -> Result<WitnessFile, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Converts a serialized witness into elements of `a`.
pub fn witness_elements<F: Field>(a: &JordanAlgebra<F>, w: &Witness<Coords>) -> Result<Witness<Element<F>>, Error> {
    w.clone().try_map(|c| element_from_coords(a, &c))
}

/// One-line human-readable description of a witness.
pub fn describe_witness<F: Field>(a: &JordanAlgebra<F>, w: &Witness<Element<F>>) -> String {
    let d = |x: &Element<F>| a.display(x);
    match w {
        Witness::NoIdempotentForElement { x } => format!("no idempotent for x = {}", d(x)),
        Witness::NoIdempotentForSubset { subset } => {
            format!("no idempotent for S = {{{}}}", subset.iter().map(d).collect::<Vec<_>>().join(", "))
        }
        Witness::NoIdempotentForRightAnnihilator { x, root } => {
            format!("no idempotent for {{x}}^perp, x = {} = ({})^2", d(x), d(root))
        }
        Witness::NoIdempotentForRightSubset { subset, .. } => format!(
            "no idempotent for S^perp, S = {{{}}}",
            subset.iter().map(d).collect::<Vec<_>>().join(", ")
        ),
        Witness::TrivialElement { z } => format!("trivial element {}", d(z)),
        Witness::TrivialSquare { b, square } => format!("({})^2 = {} is trivial", d(b), d(square)),
        Witness::NilpotentSquare { b, square } => format!("({})^2 = {} is nilpotent", d(b), d(square)),
        Witness::LatticeIncomplete { subset, missing } => format!(
            "{{{}}} has no {:?}",
            subset.iter().map(d).collect::<Vec<_>>().join(", "),
            missing
        ),
        Witness::SquareRoot { v, root } => format!("{} = ({})^2", d(v), d(root)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalJson {
    pub algebra: String,
    pub field: FieldDesc,
    pub kind: String,
    pub method: String,
    pub subspace: SubspaceReport,
    pub chain: Vec<ChainJson>,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial_count: Option<usize>,
    pub ideal_dim: usize,
}

impl From<&ChainStep> for ChainJson {
    fn from(s: &ChainStep) -> Self {
        ChainJson {
            trivial_count: s.trivial_count,
            ideal_dim: s.ideal_dim,
        }
    }
}

impl RadicalJson {
    pub fn new<F: Field>(a: &JordanAlgebra<F>, r: &RadicalReport<F>) -> Self {
        RadicalJson {
            algebra: a.name().to_string(),
            field: a.field().desc(),
            kind: match r.kind {
                RadicalKind::Deg => "deg",
                RadicalKind::Nil => "nil",
                RadicalKind::Rad => "rad",
            }
            .into(),
            method: r.method.clone(),
            subspace: SubspaceReport::new(&r.subspace),
            chain: r.chain.iter().map(ChainJson::from).collect(),
            outcome: r.verification.outcome,
            reason: r.verification.reason.clone(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub algebra: String,
    pub field: FieldDesc,
    pub elements: Vec<Coords>,
    /// Pairs `[i, j]` with `elements[i] < elements[j]`.
    pub order: Vec<[usize; 2]>,
    pub top: Option<usize>,
    pub bottom: Option<usize>,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapJson>,
    /// Whether the idempotent list is known to be complete.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapJson {
    pub subset: Vec<Coords>,
    pub missing: Bound,
}

impl LatticeJson {
    pub fn new<F: Field>(a: &JordanAlgebra<F>, l: &IdemLattice<F>, exhaustive: bool) -> Self {
        let n = l.len();
        LatticeJson {
            algebra: a.name().to_string(),
            field: a.field().desc(),
            elements: l.elements().iter().map(|e| coords(a, e)).collect(),
            order: (0..n)
                .flat_map(|i| (0..n).filter(move |&j| i != j).map(move |j| [i, j]))
                .filter(|&[i, j]| l.leq(i, j))
                .collect(),
            top: l.top(),
            bottom: l.bottom(),
            complete: l.is_complete(),
            gap: l.gap().map(|(subset, missing)| GapJson {
                subset: subset.iter().map(|e| coords(a, e)).collect(),
                missing,
            }),
            exhaustive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeirceJson {
    pub algebra: String,
    pub field: FieldDesc,
    pub idempotent: Coords,
    pub one: SubspaceReport,
    pub half: SubspaceReport,
    pub zero: SubspaceReport,
    pub decomposition_verified: bool,
}

impl PeirceJson {
    pub fn new<F: Field>(a: &JordanAlgebra<F>, e: &Element<F>, p: &Peirce<F>) -> Self {
        PeirceJson {
            algebra: a.name().to_string(),
            field: a.field().desc(),
            idempotent: coords(a, e),
            one: SubspaceReport::new(&p.one),
            half: SubspaceReport::new(&p.half),
            zero: SubspaceReport::new(&p.zero),
            decomposition_verified: p.is_decomposition(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationJson {
    UnitAxiom { basis: usize },
    JordanIdentity { a: Coords, b: usize },
    Linearized { x: usize, y: usize, z: usize, w: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateJson {
    pub algebra: String,
    pub field: FieldDesc,
    pub dim: usize,
    pub method: ValidationMethod,
    pub checked: u64,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationJson>,
}

impl ValidateJson {
    pub fn new<F: Field>(a: &JordanAlgebra<F>, r: &ValidationReport<F>) -> Self {
        ValidateJson {
            algebra: a.name().to_string(),
            field: r.field,
            dim: a.dim(),
            method: r.method,
            checked: r.checked,
            valid: r.is_valid(),
            violation: r.violation.as_ref().map(|v| match v {
                Violation::UnitAxiom { basis } => ViolationJson::UnitAxiom { basis: *basis },
                Violation::JordanIdentity { a: x, b } => ViolationJson::JordanIdentity { a: coords(a, x), b: *b },
                Violation::Linearized { x, y, z, w } => ViolationJson::Linearized {
                    x: *x,
                    y: *y,
                    z: *z,
                    w: *w,
                },
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoJson {
    pub algebra: String,
    pub field: FieldDesc,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Coords>,
    /// `p^dim`, when finite and representable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<u64>,
    /// Whether exhaustive deciders fit the budget.
    pub enumerable: bool,
    pub squares_span: SubspaceReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorJson {
    pub algebra: String,
    pub field: FieldDesc,
    pub side: Side,
    pub subset: Vec<Coords>,
    /// `⊥S`, a subspace (left side only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<SubspaceReport>,
    /// `S^⊥` as a set of elements (right side only; needs enumeration).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Coords>>,
    /// An idempotent `e` with `⊥S ∩ A² = U_e(A) ∩ A²` (left) or `S^⊥ = U_e(A)` (right).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching_idempotent: Option<Coords>,
    /// Whether the idempotent search was exhaustive.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent_map_verified: Option<bool>,
    pub verified: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::example2;
    use crate::field::PrimeField;

    #[test]
    fn witness_round_trip() {
        let a = example2(PrimeField::new(3).unwrap());
        let w = Witness::TrivialElement { z: a.basis(1) };
        let json = serde_json::to_string(&w.clone().map(|x| coords(&a, &x))).unwrap();
        assert_eq!(json, r#"{"kind":"trivial_element","z":["0","1"]}"#);
        let parsed = parse_witness_file(&json).unwrap();
        assert_eq!(witness_elements(&a, parsed.witness().unwrap()).unwrap(), w);
        assert!(parse_witness_file("[").is_err());
        assert!(witness_elements(&a, &Witness::TrivialElement { z: vec!["1".into()] }).is_err());
    }
}
