//! Three-valued verdicts with checkable witnesses.

use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::field::{Field, FieldDesc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl Outcome {
    /// Process exit code: 0 holds, 1 fails, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Unknown => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `⊥{x} ∩ A² = U_e(A) ∩ A²` for every element `x`.
    Rj,
    /// `⊥S ∩ A² = U_e(A) ∩ A²` for every subset `S`.
    Bj,
    /// `{x}^⊥ = U_e(A)` for every `x ∈ A²`.
    RickartJordan,
    /// `S^⊥ = U_e(A)` for every `S ⊆ A²`.
    BaerJordan,
    Nondegenerate,
    QuadraticNondegenerate,
    /// No element `b` with `b²` nonzero and nilpotent.
    NoNilpotentWithSquareRoot,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Rj,
        Property::Bj,
        Property::RickartJordan,
        Property::BaerJordan,
        Property::Nondegenerate,
        Property::QuadraticNondegenerate,
        Property::NoNilpotentWithSquareRoot,
    ];

    /// Inverse of [`Property::name`].
    pub fn from_name(name: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Rj => "rj",
            Property::Bj => "bj",
            Property::RickartJordan => "rickart",
            Property::BaerJordan => "baer",
            Property::Nondegenerate => "nondeg",
            Property::QuadraticNondegenerate => "quad-nondeg",
            Property::NoNilpotentWithSquareRoot => "nil-sqrt",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every element of the algebra was enumerated.
    Exhaustive,
    /// Sound linear-algebra and sign arguments; may end in `Unknown`.
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Sup,
    Inf,
}

/// Evidence attached to a verdict. Generic over the element representation so
/// the same shape serves typed elements and their serialized coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness<T> {
    /// No idempotent `e` has `⊥{x} ∩ A² = U_e(A) ∩ A²`.
    NoIdempotentForElement { x: T },
    /// No idempotent `e` has `⊥S ∩ A² = U_e(A) ∩ A²`.
    NoIdempotentForSubset { subset: Vec<T> },
    /// No idempotent `e` has `{x}^⊥ = U_e(A)`; `root² = x`.
    NoIdempotentForRightAnnihilator { x: T, root: T },
    /// No idempotent `e` has `S^⊥ = U_e(A)`; `roots[i]² = subset[i]`.
    NoIdempotentForRightSubset { subset: Vec<T>, roots: Vec<T> },
    /// Nonzero `z` with `U_z = 0` and `z² = 0`.
    TrivialElement { z: T },
    /// `square = b²` is nonzero and trivial.
    TrivialSquare { b: T, square: T },
    /// `square = b²` is nonzero and nilpotent.
    NilpotentSquare { b: T, square: T },
    /// The idempotent poset lacks a supremum or infimum of `subset`.
    LatticeIncomplete { subset: Vec<T>, missing: Bound },
    /// `root² = v`.
    SquareRoot { v: T, root: T },
}

impl<T> Witness<T> {
    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Witness<U> {
        let mut all = |v: Vec<T>| v.into_iter().map(&mut f).collect::<Vec<U>>();
        match self {
            Witness::NoIdempotentForElement { x } => Witness::NoIdempotentForElement { x: f(x) },
            Witness::NoIdempotentForSubset { subset } => Witness::NoIdempotentForSubset { subset: all(subset) },
            Witness::NoIdempotentForRightAnnihilator { x, root } => {
                let x = f(x);
                Witness::NoIdempotentForRightAnnihilator { x, root: f(root) }
            }
            Witness::NoIdempotentForRightSubset { subset, roots } => {
                let subset = all(subset);
                Witness::NoIdempotentForRightSubset { subset, roots: all(roots) }
            }
            Witness::TrivialElement { z } => Witness::TrivialElement { z: f(z) },
            Witness::TrivialSquare { b, square } => {
                let b = f(b);
                Witness::TrivialSquare { b, square: f(square) }
            }
            Witness::NilpotentSquare { b, square } => {
                let b = f(b);
                Witness::NilpotentSquare { b, square: f(square) }
            }
            Witness::LatticeIncomplete { subset, missing } => Witness::LatticeIncomplete {
                subset: all(subset),
                missing,
            },
            Witness::SquareRoot { v, root } => {
                let v = f(v);
                Witness::SquareRoot { v, root: f(root) }
            }
        }
    }

    pub fn try_map<U, E>(self, mut f: impl FnMut(T) -> Result<U, E>) -> Result<Witness<U>, E> {
        let mut err = None;
        let out = self.map(|t| match f(t) {
            Ok(u) => Some(u),
            Err(e) => {
                err.get_or_insert(e);
                None
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        Ok(out.map(|u| u.expect("no error recorded")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<F: Field> {
    pub outcome: Outcome,
    pub witness: Option<Witness<Element<F>>>,
    pub reason: Option<String>,
}

impl<F: Field> Verdict<F> {
    pub fn holds() -> Self {
        Verdict {
            outcome: Outcome::Holds,
            witness: None,
            reason: None,
        }
    }

    pub fn holds_with(witness: Witness<Element<F>>) -> Self {
        Verdict {
            outcome: Outcome::Holds,
            witness: Some(witness),
            reason: None,
        }
    }

    pub fn fails(witness: Witness<Element<F>>) -> Self {
        Verdict {
            outcome: Outcome::Fails,
            witness: Some(witness),
            reason: None,
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            outcome: Outcome::Unknown,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport<F: Field> {
    pub property: Property,
    /// Which procedure produced the verdict, e.g. `"direct"` or `"lattice"` for BJ.
    pub method: String,
    pub field: FieldDesc,
    pub mode: Mode,
    pub verdict: Verdict<F>,
    /// RJ only: `x ↦ e` with `⊥{x} ∩ A² = U_e(A) ∩ A²`, in element order.
    pub idempotent_map: Vec<(Element<F>, Element<F>)>,
    pub notes: Vec<String>,
}

impl<F: Field> ClassReport<F> {
    pub fn new(property: Property, method: &str, field: FieldDesc, mode: Mode, verdict: Verdict<F>) -> Self {
        ClassReport {
            property,
            method: method.to_string(),
            field,
            mode,
            verdict,
            idempotent_map: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        self.verdict.outcome
    }
}
