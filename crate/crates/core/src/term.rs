//! RDF terms: IRIs, typed literals and the union of both.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("malformed IRI {0:?}")]
    BadIri(String),
    #[error("lexical form {lexical:?} is not a valid {datatype}")]
    BadLexical { lexical: String, datatype: Datatype },
}

/// An absolute IRI. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, TermError> {
        let value = value.as_ref();
        if is_valid_iri(value) {
            Ok(Iri(Arc::from(value)))
        } else {
            Err(TermError::BadIri(value.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The segment after the last `/`, `#` or `:`; used for display labels.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        match s.rfind(['/', '#', ':']) {
            Some(i) if i + 1 < s.len() => &s[i + 1..],
            _ => s,
        }
    }
}

fn is_valid_iri(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let scheme_ok = scheme
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic())
        && scheme
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    scheme_ok
        && value.len() > colon + 1
        && !value.chars().any(|c| {
            c.is_whitespace()
                || c.is_control()
                || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
        })
}

impl TryFrom<String> for Iri {
    type Error = TermError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> Self {
        iri.0.to_string()
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Datatype {
    String,
    Integer,
    Decimal,
    Boolean,
}

pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

impl Datatype {
    pub fn iri(self) -> String {
        format!("{XSD}{}", self.name())
    }

    pub fn name(self) -> &'static str {
        match self {
            Datatype::String => "string",
            Datatype::Integer => "integer",
            Datatype::Decimal => "decimal",
            Datatype::Boolean => "boolean",
        }
    }

    pub fn from_iri(iri: &str) -> Option<Self> {
        Self::from_name(iri.strip_prefix(XSD)?)
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "string" => Some(Datatype::String),
            "integer" => Some(Datatype::Integer),
            "decimal" => Some(Datatype::Decimal),
            "boolean" => Some(Datatype::Boolean),
            _ => None,
        }
    }
}

impl fmt::Display for Datatype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A literal with one of four datatypes. Numeric lexical forms are validated
/// at construction so comparisons never see garbage.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Datatype,
}

/// Numeric view of an integer or decimal literal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Numeric {
    Integer(i128),
    Decimal(f64),
}

impl Numeric {
    pub fn as_f64(self) -> f64 {
        match self {
            Numeric::Integer(i) => i as f64,
            Numeric::Decimal(d) => d,
        }
    }

    pub fn compare(self, other: Numeric) -> Option<Ordering> {
        match (self, other) {
            (Numeric::Integer(a), Numeric::Integer(b)) => Some(a.cmp(&b)),
            (a, b) => a.as_f64().partial_cmp(&b.as_f64()),
        }
    }
}

impl Literal {
    pub fn new(lexical: impl Into<String>, datatype: Datatype) -> Result<Self, TermError> {
        let lexical = lexical.into();
        let ok = match datatype {
            Datatype::String => true,
            Datatype::Integer => is_integer_lexical(&lexical),
            Datatype::Decimal => is_decimal_lexical(&lexical),
            Datatype::Boolean => lexical == "true" || lexical == "false",
        };
        if ok {
            Ok(Literal { lexical, datatype })
        } else {
            Err(TermError::BadLexical { lexical, datatype })
        }
    }

    pub fn string(value: impl Into<String>) -> Self {
        Literal {
            lexical: value.into(),
            datatype: Datatype::String,
        }
    }

    pub fn integer(value: i64) -> Self {
        Literal {
            lexical: value.to_string(),
            datatype: Datatype::Integer,
        }
    }

    /// Panics on non-finite input.
    pub fn decimal(value: f64) -> Self {
        assert!(value.is_finite(), "decimal literal must be finite");
        Literal {
            lexical: format!("{value}"),
            datatype: Datatype::Decimal,
        }
    }

    pub fn boolean(value: bool) -> Self {
        Literal {
            lexical: value.to_string(),
            datatype: Datatype::Boolean,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Datatype {
        self.datatype
    }

    pub fn numeric(&self) -> Option<Numeric> {
        match self.datatype {
            Datatype::Integer => Some(
                self.lexical
                    .parse::<i128>()
                    .map(Numeric::Integer)
                    .unwrap_or_else(|_| Numeric::Decimal(self.lexical.parse().unwrap_or(f64::NAN))),
            ),
            Datatype::Decimal => self.lexical.parse::<f64>().ok().map(Numeric::Decimal),
            _ => None,
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.datatype, Datatype::Integer | Datatype::Decimal)
    }
}

fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let all_digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
    match frac {
        None => !int.is_empty() && all_digits(int),
        Some(f) => all_digits(int) && all_digits(f) && !(int.is_empty() && f.is_empty()),
    }
}

/// Subject, predicate or object position value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            Term::Iri(_) => None,
        }
    }

    /// Plain text rendering: IRI string or literal lexical form.
    pub fn text(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::Literal(lit) => lit.lexical(),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

/// JSON form `{"type": "iri"|"literal", "value": ..., "datatype": ...}`.
impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            Term::Iri(iri) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("type", "iri")?;
                m.serialize_entry("value", iri.as_str())?;
                m.end()
            }
            Term::Literal(l) => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("type", "literal")?;
                m.serialize_entry("value", l.lexical())?;
                m.serialize_entry("datatype", &l.datatype().iri())?;
                m.end()
            }
        }
    }
}

/// N-Triples rendering.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal(lit) => {
                f.write_str("\"")?;
                for c in lit.lexical.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        '\r' => f.write_str("\\r")?,
                        '\t' => f.write_str("\\t")?,
                        c => write!(f, "{c}")?,
                    }
                }
                write!(f, "\"^^<{}>", lit.datatype.iri())
            }
        }
    }
}

/// Total order used by ORDER BY: unbound, IRIs, numbers (by value),
/// booleans, strings.
pub fn value_order(a: Option<&Term>, b: Option<&Term>) -> Ordering {
    fn rank(t: Option<&Term>) -> u8 {
        match t {
            None => 0,
            Some(Term::Iri(_)) => 1,
            Some(Term::Literal(l)) => match l.datatype() {
                Datatype::Integer | Datatype::Decimal => 2,
                Datatype::Boolean => 3,
                Datatype::String => 4,
            },
        }
    }
    rank(a).cmp(&rank(b)).then_with(|| match (a, b) {
        (Some(Term::Literal(x)), Some(Term::Literal(y))) if x.is_numeric() && y.is_numeric() => {
            let (nx, ny) = (x.numeric().unwrap(), y.numeric().unwrap());
            nx.compare(ny)
                .unwrap_or(Ordering::Equal)
                .then_with(|| x.cmp(y))
        }
        _ => a.cmp(&b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_validation() {
        assert!(Iri::new("http://bio2rdf.org/drugbank_drugs:DB01224").is_ok());
        assert!(Iri::new("").is_err());
        assert!(Iri::new("no-scheme").is_err());
        assert!(Iri::new("http://a b").is_err());
        assert!(Iri::new("http://a<b").is_err());
        assert!(Iri::new("1http://a").is_err());
    }

    #[test]
    fn local_name() {
        let iri = Iri::new("http://lodchem.org/id/uniprot/P00533").unwrap();
        assert_eq!(iri.local_name(), "P00533");
    }

    #[test]
    fn literal_lexical_forms() {
        assert!(Literal::new("123631", Datatype::Integer).is_ok());
        assert!(Literal::new("-4", Datatype::Integer).is_ok());
        assert!(Literal::new("4.", Datatype::Decimal).is_ok());
        assert!(Literal::new(".5", Datatype::Decimal).is_ok());
        assert!(Literal::new(".", Datatype::Decimal).is_err());
        assert!(Literal::new("1e5", Datatype::Decimal).is_err());
        assert!(Literal::new("1.5", Datatype::Integer).is_err());
        assert!(Literal::new("yes", Datatype::Boolean).is_err());
    }

    #[test]
    fn numeric_comparison_coerces() {
        let a = Literal::integer(10000).numeric().unwrap();
        let b = Literal::decimal(9999.5).numeric().unwrap();
        assert_eq!(a.compare(b), Some(Ordering::Greater));
    }

    #[test]
    fn ntriples_rendering_escapes() {
        let t = Term::Literal(Literal::string("a \"q\"\n"));
        assert_eq!(
            t.to_string(),
            "\"a \\\"q\\\"\\n\"^^<http://www.w3.org/2001/XMLSchema#string>"
        );
    }

    #[test]
    fn value_order_numbers_before_strings() {
        let two = Term::Literal(Literal::integer(2));
        let ten = Term::Literal(Literal::decimal(10.0));
        let s = Term::Literal(Literal::string("1"));
        assert_eq!(value_order(Some(&two), Some(&ten)), Ordering::Less);
        assert_eq!(value_order(Some(&ten), Some(&s)), Ordering::Less);
        assert_eq!(value_order(None, Some(&two)), Ordering::Less);
    }
}
