use std::collections::BTreeSet;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::QueryError;
use crate::namespace::Namespaces;
use crate::term::{Datatype, Iri, Literal, Term};
use crate::vocab;

pub fn parse_query(text: &str, namespaces: &Namespaces) -> Result<QueryAst, QueryError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        idx: 0,
        namespaces: namespaces.clone(),
    };
    let ast = p.query()?;
    validate(&ast)?;
    Ok(ast)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    namespaces: Namespaces,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.idx].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.idx].pos
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.idx].clone();
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, QueryError> {
        Err(QueryError::parse(self.pos(), message))
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s.eq_ignore_ascii_case(kw))
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), QueryError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            self.error(format!("expected {kw}, found {}", describe(self.peek())))
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), QueryError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn var(&mut self) -> Result<Var, QueryError> {
        match self.peek().clone() {
            Tok::Var(name) => {
                self.next();
                Ok(Var(name))
            }
            other => self.error(format!("expected a variable, found {}", describe(&other))),
        }
    }

    fn query(&mut self) -> Result<QueryAst, QueryError> {
        while self.eat_keyword("PREFIX") {
            let pos = self.pos();
            let Tok::PName(prefix, local) = self.next().tok else {
                return Err(QueryError::parse(pos, "expected 'prefix:' after PREFIX"));
            };
            if !local.is_empty() {
                return Err(QueryError::parse(pos, "prefix declaration must end with ':'"));
            }
            let Tok::Iri(ns) = self.next().tok else {
                return Err(QueryError::parse(pos, "expected namespace IRI"));
            };
            self.namespaces.insert(&prefix, &ns);
        }
        self.expect_keyword("SELECT")?;
        let distinct = self.eat_keyword("DISTINCT");
        let projection = self.projection()?;
        self.eat_keyword("WHERE");
        let pattern = self.group()?;

        let mut group_by = Vec::new();
        if self.eat_keyword("GROUP") {
            self.expect_keyword("BY")?;
            while let Tok::Var(_) = self.peek() {
                group_by.push(self.var()?);
            }
            if group_by.is_empty() {
                return self.error("GROUP BY needs at least one variable");
            }
        }
        let mut order_by = Vec::new();
        if self.eat_keyword("ORDER") {
            self.expect_keyword("BY")?;
            loop {
                if let Tok::Var(_) = self.peek() {
                    order_by.push(OrderKey {
                        var: self.var()?,
                        descending: false,
                    });
                } else if self.is_keyword("ASC") || self.is_keyword("DESC") {
                    let descending = self.is_keyword("DESC");
                    self.next();
                    self.expect(Tok::LParen, "'('")?;
                    let var = self.var()?;
                    self.expect(Tok::RParen, "')'")?;
                    order_by.push(OrderKey { var, descending });
                } else {
                    break;
                }
            }
            if order_by.is_empty() {
                return self.error("ORDER BY needs at least one key");
            }
        }
        let mut limit = None;
        if self.eat_keyword("LIMIT") {
            let pos = self.pos();
            match self.next().tok {
                Tok::Integer(n) => match n.parse::<usize>() {
                    Ok(n) if n > 0 => limit = Some(n),
                    _ => return Err(QueryError::parse(pos, "LIMIT must be a positive integer")),
                },
                _ => return Err(QueryError::parse(pos, "LIMIT must be a positive integer")),
            }
        }
        if *self.peek() != Tok::Eof {
            return self.error(format!("unexpected {}", describe(self.peek())));
        }
        Ok(QueryAst {
            distinct,
            projection,
            pattern,
            group_by,
            order_by,
            limit,
        })
    }

    fn projection(&mut self) -> Result<Projection, QueryError> {
        if *self.peek() == Tok::Star {
            self.next();
            return Ok(Projection::All);
        }
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Tok::Var(_) => items.push(ProjectionItem::Var(self.var()?)),
                Tok::LParen => {
                    self.next();
                    self.expect_keyword("COUNT")?;
                    self.expect(Tok::LParen, "'('")?;
                    let distinct = self.eat_keyword("DISTINCT");
                    let arg = if *self.peek() == Tok::Star {
                        self.next();
                        CountArg::Star
                    } else {
                        CountArg::Var(self.var()?)
                    };
                    self.expect(Tok::RParen, "')'")?;
                    self.expect_keyword("AS")?;
                    let alias = self.var()?;
                    self.expect(Tok::RParen, "')'")?;
                    items.push(ProjectionItem::Count {
                        arg,
                        distinct,
                        alias,
                    });
                }
                _ => break,
            }
        }
        if items.is_empty() {
            return self.error("expected '*' or a projection list");
        }
        Ok(Projection::Items(items))
    }

    fn group(&mut self) -> Result<GroupPattern, QueryError> {
        let open = self.pos();
        self.expect(Tok::LBrace, "'{'")?;
        let mut group = GroupPattern::default();
        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.next();
                    break;
                }
                Tok::Dot => {
                    self.next();
                }
                Tok::LBrace => {
                    let mut chain = vec![self.group()?];
                    while self.eat_keyword("UNION") {
                        chain.push(self.group()?);
                    }
                    group.unions.push(chain);
                }
                Tok::Ident(s) if s.eq_ignore_ascii_case("FILTER") => {
                    self.next();
                    group.filters.push(self.filter()?);
                }
                Tok::Eof => return self.error("unterminated group, expected '}'"),
                _ => self.triples_block(&mut group.triples)?,
            }
        }
        if group.is_empty() {
            return Err(QueryError::parse(open, "empty group pattern"));
        }
        Ok(group)
    }

    fn triples_block(&mut self, out: &mut Vec<TriplePattern>) -> Result<(), QueryError> {
        let subject = self.pattern_term()?;
        loop {
            let predicate = if self.is_keyword("a") {
                self.next();
                PatternTerm::Iri(Iri::new(vocab::RDF_TYPE).unwrap())
            } else {
                self.pattern_term()?
            };
            loop {
                let object = self.pattern_term()?;
                out.push(TriplePattern::new(
                    subject.clone(),
                    predicate.clone(),
                    object,
                ));
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
            if *self.peek() == Tok::Semi {
                self.next();
                if matches!(self.peek(), Tok::Dot | Tok::RBrace) {
                    break;
                }
            } else {
                break;
            }
        }
        Ok(())
    }

    fn pattern_term(&mut self) -> Result<PatternTerm, QueryError> {
        if let Tok::Var(_) = self.peek() {
            return Ok(PatternTerm::Var(self.var()?));
        }
        match self.constant()? {
            Term::Iri(iri) => Ok(PatternTerm::Iri(iri)),
            Term::Literal(l) => Ok(PatternTerm::Literal(l)),
        }
    }

    fn iri_token(&mut self) -> Result<Option<Iri>, QueryError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Iri(s) => {
                self.next();
                Iri::new(&s)
                    .map(Some)
                    .map_err(|e| QueryError::parse(pos, e.to_string()))
            }
            Tok::PName(prefix, local) => {
                self.next();
                let expanded = self
                    .namespaces
                    .expand(&prefix, &local)
                    .ok_or(QueryError::Prefix {
                        prefix: prefix.clone(),
                        position: pos,
                    })?;
                Iri::new(expanded)
                    .map(Some)
                    .map_err(|e| QueryError::parse(pos, e.to_string()))
            }
            _ => Ok(None),
        }
    }

    fn constant(&mut self) -> Result<Term, QueryError> {
        if let Some(iri) = self.iri_token()? {
            return Ok(Term::Iri(iri));
        }
        let pos = self.pos();
        let lit = match self.next().tok {
            Tok::Integer(n) => Literal::new(n, Datatype::Integer),
            Tok::Decimal(n) => Literal::new(n, Datatype::Decimal),
            Tok::Ident(s) if s == "true" || s == "false" => Literal::new(s, Datatype::Boolean),
            Tok::Str(s) => {
                if *self.peek() == Tok::Carets {
                    self.next();
                    let dt_pos = self.pos();
                    let dt = self
                        .iri_token()?
                        .ok_or_else(|| QueryError::parse(dt_pos, "expected datatype IRI"))?;
                    let dt = Datatype::from_iri(dt.as_str()).ok_or_else(|| {
                        QueryError::parse(dt_pos, format!("unsupported datatype {dt}"))
                    })?;
                    Literal::new(s, dt)
                } else {
                    Ok(Literal::string(s))
                }
            }
            other => {
                return Err(QueryError::parse(
                    pos,
                    format!("expected a term, found {}", describe(&other)),
                ))
            }
        };
        lit.map(Term::Literal)
            .map_err(|e| QueryError::parse(pos, e.to_string()))
    }

    fn filter(&mut self) -> Result<FilterExpr, QueryError> {
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.next();
        }
        let expr = if self.is_keyword("regex") {
            self.next();
            self.expect(Tok::LParen, "'('")?;
            let var = self.var()?;
            self.expect(Tok::Comma, "','")?;
            let pat_pos = self.pos();
            let Tok::Str(pattern) = self.next().tok else {
                return Err(QueryError::parse(pat_pos, "regex pattern must be a string"));
            };
            let mut case_insensitive = false;
            if *self.peek() == Tok::Comma {
                self.next();
                let flag_pos = self.pos();
                match self.next().tok {
                    Tok::Str(flags) if flags.is_empty() => {}
                    Tok::Str(flags) if flags == "i" => case_insensitive = true,
                    _ => return Err(QueryError::parse(flag_pos, "only the \"i\" regex flag is supported")),
                }
            }
            self.expect(Tok::RParen, "')'")?;
            super::eval::compile_regex(&pattern, case_insensitive)
                .map_err(|e| QueryError::parse(pat_pos, e))?;
            FilterExpr::Regex {
                var,
                pattern,
                case_insensitive,
            }
        } else if parenthesized {
            if let Tok::Var(_) = self.peek() {
                let var = self.var()?;
                let op = self.compare_op()?;
                let value = self.constant()?;
                FilterExpr::Compare { var, op, value }
            } else {
                let value = self.constant()?;
                let op = self.compare_op()?.flipped();
                let var = self.var()?;
                FilterExpr::Compare { var, op, value }
            }
        } else {
            return self.error("expected '(' or regex after FILTER");
        };
        if parenthesized {
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(expr)
    }

    fn compare_op(&mut self) -> Result<CompareOp, QueryError> {
        match self.peek().clone() {
            Tok::Op(op) => {
                self.next();
                Ok(op)
            }
            other => self.error(format!("expected a comparison operator, found {}", describe(&other))),
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Var(v) => format!("?{v}"),
        Tok::Iri(i) => format!("<{i}>"),
        Tok::PName(p, l) => format!("{p}:{l}"),
        Tok::Str(s) => format!("{s:?}"),
        Tok::Integer(n) | Tok::Decimal(n) => n.clone(),
        Tok::Ident(s) => s.clone(),
        Tok::LBrace => "'{'".into(),
        Tok::RBrace => "'}'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Dot => "'.'".into(),
        Tok::Comma => "','".into(),
        Tok::Semi => "';'".into(),
        Tok::Star => "'*'".into(),
        Tok::Op(op) => format!("'{}'", op.symbol()),
        Tok::Carets => "'^^'".into(),
        Tok::Eof => "end of query".into(),
    }
}

fn validate(ast: &QueryAst) -> Result<(), QueryError> {
    let invalid = |m: String| Err(QueryError::Invalid(m));
    let pattern_vars: BTreeSet<Var> = ast.pattern.variables().into_iter().collect();
    let grouped = ast.is_grouped();

    for v in &ast.group_by {
        if !pattern_vars.contains(v) {
            return invalid(format!("GROUP BY variable {v} does not appear in WHERE"));
        }
    }
    let mut outputs = BTreeSet::new();
    if let Projection::Items(items) = &ast.projection {
        for item in items {
            match item {
                ProjectionItem::Var(v) => {
                    if grouped && !ast.group_by.contains(v) {
                        return invalid(format!("{v} must appear in GROUP BY when aggregating"));
                    }
                    if !pattern_vars.contains(v) {
                        return invalid(format!("projected variable {v} does not appear in WHERE"));
                    }
                }
                ProjectionItem::Count { arg, alias, .. } => {
                    if let CountArg::Var(v) = arg {
                        if !pattern_vars.contains(v) {
                            return invalid(format!("COUNT argument {v} does not appear in WHERE"));
                        }
                    }
                    if pattern_vars.contains(alias) {
                        return invalid(format!("aggregate alias {alias} is not a fresh variable"));
                    }
                }
            }
            if !outputs.insert(item.output_var().clone()) {
                return invalid(format!("{} is projected twice", item.output_var()));
            }
        }
    }
    let header: BTreeSet<Var> = ast.header().into_iter().collect();
    for key in &ast.order_by {
        if !header.contains(&key.var) {
            return invalid(format!("ORDER BY variable {} is not in the result", key.var));
        }
    }
    Ok(())
}
