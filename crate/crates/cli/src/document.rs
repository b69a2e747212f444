//! JSON input document for a Weierstrass triple.
//!
//! Entry `i` of `p` (resp. `q`) is the coefficient of `u^i v^(d-i)`, so the
//! list is in ascending powers of `u` and reading it backwards gives the
//! chart at `∞`. Coefficients are exact strings, `"n"` or `"n/d"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use ellsurf_core::arith::{format_rational, parse_rational, BinForm};
use ellsurf_core::error::WeierstrassError;
use ellsurf_core::weierstrass::WeierstrassTriple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDocument {
    pub k: u32,
    pub p: Vec<String>,
    pub q: Vec<String>,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Json(String),
    #[error("parse error: {field}[{index}] = {text:?} is not an exact rational")]
    Rational { field: &'static str, index: usize, text: String },
    #[error("invalid Weierstrass data: {0}")]
    Invalid(#[from] WeierstrassError),
}

fn parse_form(field: &'static str, coeffs: &[String]) -> Result<BinForm, InputError> {
    let parsed = coeffs
        .iter()
        .enumerate()
        .map(|(index, text)| {
            parse_rational(text).ok_or_else(|| InputError::Rational { field, index, text: text.clone() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(InputError::Json(format!("{field} has no coefficients")));
    }
    Ok(BinForm::new(parsed))
}

fn format_form(f: &BinForm) -> Vec<String> {
    f.coeffs().iter().map(format_rational).collect()
}

impl TripleDocument {
    pub fn from_triple(t: &WeierstrassTriple) -> Self {
        TripleDocument { k: t.k(), p: format_form(t.p()), q: format_form(t.q()) }
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))
    }

    pub fn read(path: &str) -> Result<Self, InputError> {
        let text = if path == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        }
        .map_err(|e| InputError::Io { path: path.to_string(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Parses and validates.
    pub fn to_triple(&self) -> Result<WeierstrassTriple, InputError> {
        let p = parse_form("p", &self.p)?;
        let q = parse_form("q", &self.q)?;
        Ok(WeierstrassTriple::validate(self.k, p, q)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(k: u32, p: &[&str], q: &[&str]) -> TripleDocument {
        TripleDocument {
            k,
            p: p.iter().map(|s| s.to_string()).collect(),
            q: q.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn canonical_round_trip() {
        let d = doc(1, &["-3", "0", "0", "0", "0"], &["2", "0", "1/2", "0", "0", "0", "-7/3"]);
        let t = d.to_triple().unwrap();
        assert_eq!(TripleDocument::from_triple(&t), d);
        assert_eq!(TripleDocument::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn rejects_bad_rationals_and_degrees() {
        let d = doc(1, &["1/0", "0", "0", "0", "1"], &["1", "0", "0", "0", "0", "0", "1"]);
        assert!(matches!(d.to_triple(), Err(InputError::Rational { field: "p", index: 0, .. })));
        let d = doc(1, &["0.5", "0", "0", "0", "1"], &["1", "0", "0", "0", "0", "0", "1"]);
        assert!(matches!(d.to_triple(), Err(InputError::Rational { .. })));
        let d = doc(1, &["1", "0", "1"], &["1", "0", "0", "0", "0", "0", "1"]);
        assert!(matches!(d.to_triple(), Err(InputError::Invalid(WeierstrassError::DegreeMismatch { .. }))));
        assert!(TripleDocument::from_json("{\"k\": 1, \"p\": [1]}").is_err());
    }
}
