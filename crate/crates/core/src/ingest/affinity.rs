//! Binding-affinity strings such as `>0.5`, `<=100.0 nM` or `42`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_UNIT: &str = "nm";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AffinityOp {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl AffinityOp {
    pub fn symbol(self) -> &'static str {
        match self {
            AffinityOp::Lt => "<",
            AffinityOp::Le => "<=",
            AffinityOp::Eq => "=",
            AffinityOp::Gt => ">",
            AffinityOp::Ge => ">=",
        }
    }
}

impl fmt::Display for AffinityOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Affinity {
    pub operator: AffinityOp,
    pub value: f64,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse affinity {text:?}: {reason}")]
pub struct AffinityError {
    pub text: String,
    pub reason: &'static str,
}

pub fn parse_affinity(text: &str) -> Result<Affinity, AffinityError> {
    let fail = |reason| AffinityError {
        text: text.to_string(),
        reason,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(fail("empty"));
    }
    let (operator, rest) = [
        (">=", AffinityOp::Ge),
        ("<=", AffinityOp::Le),
        (">", AffinityOp::Gt),
        ("<", AffinityOp::Lt),
        ("=", AffinityOp::Eq),
    ]
    .into_iter()
    .find_map(|(sym, op)| s.strip_prefix(sym).map(|r| (op, r)))
    .unwrap_or((AffinityOp::Eq, s));
    let rest = rest.trim_start();

    let num_len = rest
        .find(|c: char| !(c.is_ascii_digit() || c == '.'))
        .unwrap_or(rest.len());
    let number = &rest[..num_len];
    if !number.bytes().any(|b| b.is_ascii_digit()) {
        return Err(fail("no number"));
    }
    let value: f64 = number.parse().map_err(|_| fail("malformed number"))?;
    if !value.is_finite() {
        return Err(fail("value is not finite"));
    }

    let unit = rest[num_len..].trim();
    let unit = if unit.is_empty() {
        DEFAULT_UNIT.to_string()
    } else if unit.chars().all(char::is_alphabetic) {
        unit.to_lowercase()
    } else {
        return Err(fail("trailing text after the number"));
    };
    Ok(Affinity {
        operator,
        value,
        unit,
    })
}

/// Canonical text: `=` and the default unit are left implicit.
pub fn format_affinity(a: &Affinity) -> String {
    let mut out = String::new();
    if a.operator != AffinityOp::Eq {
        out.push_str(a.operator.symbol());
    }
    out.push_str(&a.value.to_string());
    if a.unit != DEFAULT_UNIT {
        out.push(' ');
        out.push_str(&a.unit);
    }
    out
}

impl FromStr for Affinity {
    type Err = AffinityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_affinity(s)
    }
}

impl fmt::Display for Affinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_affinity(self))
    }
}
