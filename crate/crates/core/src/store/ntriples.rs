//! Line-oriented N-Triples subset: IRIs in angle brackets, literals with an
//! optional `^^<xsd:...>` suffix (string, integer, decimal, boolean). No
//! blank nodes, no language tags.

use super::StoreError;
use crate::term::{Datatype, Iri, Literal, Term};

pub type Statement = (Iri, Iri, Term);

pub fn parse_document(doc: &str) -> Result<Vec<Statement>, StoreError> {
    doc.lines()
        .enumerate()
        .filter_map(|(i, line)| match parse_line(line) {
            Ok(None) => None,
            Ok(Some(stmt)) => Some(Ok(stmt)),
            Err(message) => Some(Err(StoreError::Parse {
                line: i + 1,
                message,
            })),
        })
        .collect()
}

/// `Ok(None)` for blank and comment lines.
pub fn parse_line(line: &str) -> Result<Option<Statement>, String> {
    let mut cur = Cursor { rest: line.trim() };
    if cur.rest.is_empty() || cur.rest.starts_with('#') {
        return Ok(None);
    }
    let subject = cur.iri().map_err(|e| format!("subject: {e}"))?;
    cur.skip_ws();
    let predicate = cur.iri().map_err(|e| format!("predicate: {e}"))?;
    cur.skip_ws();
    let object = if cur.rest.starts_with('<') {
        Term::Iri(cur.iri().map_err(|e| format!("object: {e}"))?)
    } else if cur.rest.starts_with('"') {
        Term::Literal(cur.literal()?)
    } else {
        return Err(format!("expected IRI or literal object, found {:?}", cur.rest));
    };
    cur.skip_ws();
    cur.rest = cur
        .rest
        .strip_prefix('.')
        .ok_or_else(|| "missing terminating ' .'".to_string())?;
    cur.skip_ws();
    if !cur.rest.is_empty() && !cur.rest.starts_with('#') {
        return Err(format!("trailing content {:?}", cur.rest));
    }
    Ok(Some((subject, predicate, object)))
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn iri(&mut self) -> Result<Iri, String> {
        let body = self
            .rest
            .strip_prefix('<')
            .ok_or_else(|| format!("expected '<', found {:?}", self.rest))?;
        let end = body.find('>').ok_or("unterminated IRI")?;
        let iri = Iri::new(&body[..end]).map_err(|e| e.to_string())?;
        self.rest = &body[end + 1..];
        Ok(iri)
    }

    fn literal(&mut self) -> Result<Literal, String> {
        let body = &self.rest[1..];
        let mut lexical = String::new();
        let mut chars = body.char_indices();
        let close = loop {
            let Some((i, c)) = chars.next() else {
                return Err("unterminated literal".into());
            };
            match c {
                '"' => break i,
                '\\' => {
                    let (_, esc) = chars.next().ok_or("dangling escape")?;
                    match esc {
                        '"' => lexical.push('"'),
                        '\\' => lexical.push('\\'),
                        'n' => lexical.push('\n'),
                        'r' => lexical.push('\r'),
                        't' => lexical.push('\t'),
                        'u' | 'U' => {
                            let len = if esc == 'u' { 4 } else { 8 };
                            let hex: String = (0..len).filter_map(|_| chars.next().map(|(_, c)| c)).collect();
                            let code = u32::from_str_radix(&hex, 16)
                                .ok()
                                .filter(|_| hex.len() == len)
                                .and_then(char::from_u32)
                                .ok_or_else(|| format!("bad unicode escape \\{esc}{hex}"))?;
                            lexical.push(code);
                        }
                        other => return Err(format!("unknown escape \\{other}")),
                    }
                }
                c => lexical.push(c),
            }
        };
        self.rest = &body[close + 1..];
        let datatype = if let Some(rest) = self.rest.strip_prefix("^^") {
            self.rest = rest;
            let dt = self.iri()?;
            Datatype::from_iri(dt.as_str()).ok_or_else(|| format!("unsupported datatype {dt}"))?
        } else if self.rest.starts_with('@') {
            return Err("language tags are not supported".into());
        } else {
            Datatype::String
        };
        Literal::new(lexical, datatype).map_err(|e| e.to_string())
    }
}
