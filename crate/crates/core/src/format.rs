//! The JSON algebra file format.
//!
//! ```json
//! {"name": "E2", "field": {"kind": "Fp", "p": 3}, "dim": 2, "basis": ["1", "e12"],
//!  "unit": ["1", "0"],
//!  "products": [{"i": 0, "j": 0, "v": [["1", 0]]}, {"i": 0, "j": 1, "v": [["1", 1]]}]}
//! ```
//!
//! Each product record gives `b_i b_j` (with `i <= j`) as a list of
//! `[coefficient, k]` terms. Missing pairs multiply to zero. Coefficients are
//! `num/den` or integers over ℚ and integers over F_p, reduced on load.
//! Saving is canonical: records sorted by `(i, j)`, terms by `k`, zero terms
//! dropped, coefficients in canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::JordanAlgebra;
use crate::field::{Field, FieldDesc, PrimeField, Rationals};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldDesc,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    pub products: Vec<ProductRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductRecord {
    pub i: usize,
    pub j: usize,
    pub v: Vec<(String, usize)>,
}

/// An algebra over one of the supported fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyAlgebra {
    Q(JordanAlgebra<Rationals>),
    Fp(JordanAlgebra<PrimeField>),
}

/// Runs a generic expression against whichever algebra is inside.
#[macro_export]
macro_rules! with_algebra {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::format::AnyAlgebra::Q($a) => $body,
            $crate::format::AnyAlgebra::Fp($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn name(&self) -> &str {
        with_algebra!(self, a => a.name())
    }

    pub fn dim(&self) -> usize {
        with_algebra!(self, a => a.dim())
    }

    pub fn field(&self) -> FieldDesc {
        with_algebra!(self, a => a.field().desc())
    }

    pub fn with_name(self, name: impl Into<String>) -> Self {
        match self {
            AnyAlgebra::Q(a) => AnyAlgebra::Q(a.with_name(name)),
            AnyAlgebra::Fp(a) => AnyAlgebra::Fp(a.with_name(name)),
        }
    }

    pub fn to_file(&self) -> AlgebraFile {
        with_algebra!(self, a => to_file(a))
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn to_file<F: Field>(a: &JordanAlgebra<F>) -> AlgebraFile {
    let f = a.field();
    let products = a
        .products()
        .filter(|(_, _, p)| !p.is_empty())
        .map(|(i, j, p)| ProductRecord {
            i,
            j,
            v: p.iter().map(|(k, c)| (f.format(c), *k)).collect(),
        })
        .collect();
    AlgebraFile {
        name: a.name().to_string(),
        field: f.desc(),
        dim: a.dim(),
        basis: a.labels().to_vec(),
        unit: a.unit().map(|u| u.to_strings(f)),
        products,
    }
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn coefficient<F: Field>(field: &F, s: &str, location: &str) -> Result<F::Elem, Error> {
    field
        .parse(s)
        .map_err(|_| Error::BadCoefficient(format!("{location}: {s:?}")))
}

fn build<F: Field>(field: F, file: &AlgebraFile) -> Result<JordanAlgebra<F>, Error> {
    if file.dim == 0 {
        return Err(parse_error("dim", "dimension must be positive"));
    }
    if file.basis.len() != file.dim {
        return Err(parse_error(
            "basis",
            format!("{} labels for dimension {}", file.basis.len(), file.dim),
        ));
    }
    let mut seen = BTreeSet::new();
    let mut products = BTreeMap::new();
    for (r, rec) in file.products.iter().enumerate() {
        let loc = format!("products[{r}]");
        if rec.i > rec.j {
            return Err(parse_error(loc, format!("i = {} exceeds j = {}", rec.i, rec.j)));
        }
        if rec.j >= file.dim {
            return Err(Error::IndexOutOfRange(format!("{loc}: j = {} with dim {}", rec.j, file.dim)));
        }
        if !seen.insert((rec.i, rec.j)) {
            return Err(Error::DuplicateProduct(rec.i, rec.j));
        }
        let mut ks = BTreeSet::new();
        let mut terms = Vec::with_capacity(rec.v.len());
        for (t, (c, k)) in rec.v.iter().enumerate() {
            let tloc = format!("{loc}.v[{t}]");
            if *k >= file.dim {
                return Err(Error::IndexOutOfRange(format!("{tloc}: k = {k} with dim {}", file.dim)));
            }
            if !ks.insert(*k) {
                return Err(parse_error(tloc, format!("basis index {k} repeated")));
            }
            terms.push((*k, coefficient(&field, c, &tloc)?));
        }
        products.insert((rec.i, rec.j), terms);
    }
    let unit = match &file.unit {
        None => None,
        Some(u) if u.len() != file.dim => {
            return Err(parse_error("unit", format!("{} coordinates for dimension {}", u.len(), file.dim)))
        }
        Some(u) => Some(
            u.iter()
                .enumerate()
                .map(|(t, c)| coefficient(&field, c, &format!("unit[{t}]")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    JordanAlgebra::new(file.name.clone(), field, file.basis.clone(), products, unit)
}

impl AlgebraFile {
    pub fn into_algebra(self) -> Result<AnyAlgebra, Error> {
        match self.field {
            FieldDesc::Rationals => build(Rationals, &self).map(AnyAlgebra::Q),
            FieldDesc::PrimeField { p } => {
                let f = PrimeField::new(p).map_err(|e| parse_error("field", e.to_string()))?;
                build(f, &self).map(AnyAlgebra::Fp)
            }
        }
    }
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<AnyAlgebra, Error> {
    let file: AlgebraFile = serde_json::from_str(text)
        .map_err(|e| parse_error(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    file.into_algebra()
}

pub fn load(path: impl AsRef<Path>) -> Result<AnyAlgebra, Error> {
    parse_algebra(&std::fs::read_to_string(path)?)
}

pub fn save(a: &AnyAlgebra, path: impl AsRef<Path>) -> Result<(), Error> {
    std::fs::write(path, a.to_json())?;
    Ok(())
}

/// Parses a single coefficient and returns its canonical form.
pub fn canonical_coefficient(field: FieldDesc, s: &str) -> Result<String, Error> {
    match field {
        FieldDesc::Rationals => Rationals.parse(s).map(|c| Rationals.format(&c)),
        FieldDesc::PrimeField { p } => {
            let f = PrimeField::new(p)?;
            f.parse(s).map(|c| f.format(&c))
        }
    }
}
