use super::ast::CompareOp;
use super::QueryError;

#[derive(Debug, Clone, PartialEq)]
pub(super) enum Tok {
    Var(String),
    Iri(String),
    PName(String, String),
    Str(String),
    Integer(String),
    Decimal(String),
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Dot,
    Comma,
    Semi,
    Star,
    Op(CompareOp),
    Carets,
    Eof,
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub(super) fn tokenize(text: &str) -> Result<Vec<Token>, QueryError> {
    let mut lx = Lexer { text, pos: 0 };
    let mut out = Vec::new();
    loop {
        lx.skip_ws_and_comments();
        let pos = lx.pos;
        let Some(c) = lx.peek() else {
            out.push(Token { tok: Tok::Eof, pos });
            return Ok(out);
        };
        let tok = match c {
            '{' => lx.single(Tok::LBrace),
            '}' => lx.single(Tok::RBrace),
            '(' => lx.single(Tok::LParen),
            ')' => lx.single(Tok::RParen),
            ',' => lx.single(Tok::Comma),
            ';' => lx.single(Tok::Semi),
            '*' => lx.single(Tok::Star),
            '.' if !lx.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => lx.single(Tok::Dot),
            '?' | '$' => {
                lx.bump();
                let name = lx.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if name.is_empty() {
                    return Err(QueryError::parse(pos, "empty variable name"));
                }
                Tok::Var(name.to_string())
            }
            '<' => match lx.try_iri() {
                Some(iri) => Tok::Iri(iri),
                None => {
                    lx.bump();
                    if lx.eat('=') {
                        Tok::Op(CompareOp::Le)
                    } else {
                        Tok::Op(CompareOp::Lt)
                    }
                }
            },
            '>' => {
                lx.bump();
                if lx.eat('=') {
                    Tok::Op(CompareOp::Ge)
                } else {
                    Tok::Op(CompareOp::Gt)
                }
            }
            '=' => lx.single(Tok::Op(CompareOp::Eq)),
            '!' => {
                lx.bump();
                if !lx.eat('=') {
                    return Err(QueryError::parse(pos, "expected '!='"));
                }
                Tok::Op(CompareOp::Ne)
            }
            '^' => {
                lx.bump();
                if !lx.eat('^') {
                    return Err(QueryError::parse(pos, "expected '^^'"));
                }
                Tok::Carets
            }
            '"' | '\'' => Tok::Str(lx.string(c)?),
            c if c.is_ascii_digit() || c == '.' || c == '+' || c == '-' => lx.number()?,
            c if c.is_ascii_alphabetic() || c == '_' || c == ':' => lx.name()?,
            other => return Err(QueryError::parse(pos, format!("unexpected character {other:?}"))),
        };
        out.push(Token { tok, pos });
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn single(&mut self, tok: Tok) -> Tok {
        self.bump();
        tok
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        &self.text[start..self.pos]
    }

    fn skip_ws_and_comments(&mut self) {
        loop {
            self.take_while(char::is_whitespace);
            if self.peek() == Some('#') {
                self.take_while(|c| c != '\n');
            } else {
                break;
            }
        }
    }

    /// An IRI reference is `<...>` with no whitespace or forbidden
    /// characters inside and a scheme colon; anything else starting with `<`
    /// is the less-than operator.
    fn try_iri(&mut self) -> Option<String> {
        let body = &self.rest()[1..];
        let end = body.find(|c: char| {
            c == '>' || c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
        })?;
        if !body[end..].starts_with('>') || !body[..end].contains(':') {
            return None;
        }
        let iri = body[..end].to_string();
        self.pos += end + 2;
        Some(iri)
    }

    fn string(&mut self, quote: char) -> Result<String, QueryError> {
        let start = self.pos;
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(QueryError::parse(start, "unterminated string")),
                Some(c) if c == quote => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some('r') => out.push('\r'),
                    Some(c @ ('"' | '\'' | '\\')) => out.push(c),
                    _ => return Err(QueryError::parse(self.pos, "bad escape sequence")),
                },
                Some(c) => out.push(c),
            }
        }
    }

    fn number(&mut self) -> Result<Tok, QueryError> {
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.bump();
        }
        let int = self.take_while(|c| c.is_ascii_digit());
        let mut frac = None;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            frac = Some(self.take_while(|c| c.is_ascii_digit()));
        }
        if int.is_empty() && frac.is_none() {
            return Err(QueryError::parse(start, "expected a number"));
        }
        let lexical = self.text[start..self.pos].to_string();
        Ok(if frac.is_some() {
            Tok::Decimal(lexical)
        } else {
            Tok::Integer(lexical)
        })
    }

    fn name(&mut self) -> Result<Tok, QueryError> {
        let prefix = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if self.peek() != Some(':') {
            return Ok(Tok::Ident(prefix.to_string()));
        }
        self.bump();
        let start = self.pos;
        self.take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
        // a trailing dot ends the triple, not the name
        while self.text[start..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        Ok(Tok::PName(
            prefix.to_string(),
            self.text[start..self.pos].to_string(),
        ))
    }
}
