use std::path::Path;

use serde::{Deserialize, Serialize};

use super::scheme::CutProjectScheme;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, ExactMatrix, QuadraticField, QuadraticNumber};

/// A rational literal in a scheme file: `"p/q"` or a JSON integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatLiteral {
    Int(i64),
    Text(String),
}

impl RatLiteral {
    fn parse(&self) -> Result<crate::exact::Rational> {
        match self {
            RatLiteral::Int(n) => Ok(crate::exact::integer(*n)),
            RatLiteral::Text(t) => parse_rational(t),
        }
    }
}

impl Default for RatLiteral {
    fn default() -> Self {
        RatLiteral::Int(0)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub a: RatLiteral,
    #[serde(default)]
    pub b: RatLiteral,
}

/// On-disk scheme description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeFile {
    pub name: String,
    pub sqrt: Option<u64>,
    pub physical_dim: usize,
    pub internal_dim: usize,
    pub basis: Vec<Vec<EntryFile>>,
}

impl SchemeFile {
    pub fn into_scheme(self) -> Result<CutProjectScheme> {
        let field = QuadraticField::from_option(self.sqrt)?;
        let rows = self
            .basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| QuadraticNumber::new(e.a.parse()?, e.b.parse()?, field))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let basis = ExactMatrix::from_rows(field, rows)?;
        CutProjectScheme::new(self.name, self.physical_dim, self.internal_dim, basis)
    }

    pub fn from_scheme(s: &CutProjectScheme) -> Self {
        let b = s.basis();
        let basis = (0..b.rows())
            .map(|i| {
                b.row(i)
                    .iter()
                    .map(|e| EntryFile { a: RatLiteral::Text(e.a().to_string()), b: RatLiteral::Text(e.b().to_string()) })
                    .collect()
            })
            .collect();
        SchemeFile {
            name: s.name().to_string(),
            sqrt: s.field().as_option(),
            physical_dim: s.physical_dim(),
            internal_dim: s.internal_dim(),
            basis,
        }
    }
}

pub fn parse_scheme(text: &str) -> Result<CutProjectScheme> {
    serde_json::from_str::<SchemeFile>(text)?.into_scheme()
}

pub fn scheme_to_json(s: &CutProjectScheme) -> String {
    serde_json::to_string_pretty(&SchemeFile::from_scheme(s)).expect("scheme serializes")
}

/// Reads a scheme file. IO failures are reported as [`std::io::Error`] so
/// callers can tell them apart from malformed content.
pub fn load_scheme(path: &Path) -> std::result::Result<Result<CutProjectScheme>, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_scheme(&text).map_err(|e| match e {
        Error::Json(j) => Error::InvalidScheme(format!("{}: {j}", path.display())),
        other => other,
    }))
}
