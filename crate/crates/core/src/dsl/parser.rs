use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Expr, Item, Query, ScenarioDoc, StateDecl, Value};
use super::lexer::{lex, Tok, Token};
use super::{DslError, ParseError};
use crate::scenarios;

/// Parses a scenario file and checks that every name it uses has been
/// declared earlier in the file.
pub fn parse(src: &str) -> Result<ScenarioDoc, DslError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, doc: ScenarioDoc::default() };
    while p.peek().tok != Tok::Eof {
        p.statement()?;
    }
    Ok(p.doc)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    doc: ScenarioDoc,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> DslError {
        let t = self.peek();
        ParseError { line: t.line, column: t.column, expected: expected.into(), found: t.tok.describe() }.into()
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn punct(&mut self, c: char) -> Result<(), DslError> {
        if self.at_punct(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn name(&mut self, expected: &str) -> Result<(String, usize, usize), DslError> {
        match &self.peek().tok {
            Tok::Name(n) => {
                let n = n.clone();
                let t = self.bump();
                Ok((n, t.line, t.column))
            }
            _ => Err(self.error(expected)),
        }
    }

    /// Comma-separated list closed by `close`; empty when `allow_empty`.
    fn list<T>(
        &mut self,
        close: char,
        allow_empty: bool,
        mut item: impl FnMut(&mut Self) -> Result<T, DslError>,
    ) -> Result<Vec<T>, DslError> {
        let mut out = Vec::new();
        if allow_empty && self.at_punct(close) {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.at_punct(',') {
                self.bump();
            } else {
                self.punct(close)?;
                return Ok(out);
            }
        }
    }

    fn statement(&mut self) -> Result<(), DslError> {
        let (kw, line, column) = self.name("a statement")?;
        match kw.as_str() {
            "dim" => self.dim_decl(),
            "state" => self.state_decl(),
            "compare" | "compose" => {
                let a = self.state_ref()?;
                let b = self.state_ref()?;
                let q = if kw == "compare" { Query::Compare(a, b) } else { Query::Compose(a, b) };
                self.doc.queries.push(q);
                Ok(())
            }
            "incompat" => {
                let agent = self.state_ref()?;
                self.punct('.')?;
                let dim = self.dim_ref()?;
                self.punct('@')?;
                let value = self.value()?;
                let human = self.state_ref()?;
                self.doc.queries.push(Query::Incompat { agent, dim, value, human });
                Ok(())
            }
            "meta" => {
                let s = self.state_ref()?;
                self.doc.queries.push(Query::Meta(s));
                Ok(())
            }
            "iota" | "hasse" => {
                let d = self.dim_ref()?;
                self.doc.queries.push(if kw == "iota" { Query::Iota(d) } else { Query::Hasse(d) });
                Ok(())
            }
            "run" => {
                let (n, line, column) = self.name("a scenario name")?;
                if !scenarios::NAMES.contains(&n.as_str()) {
                    return Err(DslError::UnknownName { name: n, line, column });
                }
                self.doc.queries.push(Query::Run(n));
                Ok(())
            }
            _ => Err(ParseError { line, column, expected: "a statement".into(), found: kw }.into()),
        }
    }

    fn has_dim(&self, n: &str) -> bool {
        self.doc.dims.iter().any(|(d, _)| d == n)
    }

    fn has_state(&self, n: &str) -> bool {
        self.doc.states.iter().any(|s| s.name == n)
    }

    fn dim_ref(&mut self) -> Result<String, DslError> {
        let (n, line, column) = self.name("a dimension name")?;
        if !self.has_dim(&n) {
            return Err(DslError::UnknownName { name: n, line, column });
        }
        Ok(n)
    }

    fn state_ref(&mut self) -> Result<String, DslError> {
        let (n, line, column) = self.name("a state name")?;
        if !self.has_state(&n) {
            return Err(DslError::UnknownName { name: n, line, column });
        }
        Ok(n)
    }

    fn dim_decl(&mut self) -> Result<(), DslError> {
        let (name, line, column) = self.name("a dimension name")?;
        if self.has_dim(&name) {
            return Err(DslError::DuplicateName { name, line, column });
        }
        self.punct('=')?;
        let e = self.expr()?;
        self.doc.dims.push((name, e));
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let Tok::Name(kw) = self.peek().tok.clone() else {
            return Err(self.error("an expression"));
        };
        let opens = |p: &Self, c| p.tokens.get(p.pos + 1).is_some_and(|t| t.tok == Tok::Punct(c));
        match kw.as_str() {
            "base" if opens(self, '{') => {
                self.bump();
                self.bump();
                let elements = self.list('}', false, |p| Ok(p.name("an element name")?.0))?;
                let elements: BTreeSet<String> = elements.into_iter().collect();
                let mut order = BTreeSet::new();
                if matches!(&self.peek().tok, Tok::Name(n) if n == "order") && opens(self, '{') {
                    self.bump();
                    self.bump();
                    let pairs = self.list('}', false, |p| {
                        let a = p.name("an element name")?.0;
                        p.punct('<')?;
                        let b = p.name("an element name")?.0;
                        Ok((a, b))
                    })?;
                    order.extend(pairs);
                }
                Ok(Expr::Base { elements, order })
            }
            "power" if opens(self, '(') => {
                self.bump();
                self.bump();
                let inner = self.expr()?;
                self.punct(')')?;
                Ok(Expr::Power(Box::new(inner)))
            }
            "product" | "disjoint" | "union" if opens(self, '(') => {
                self.bump();
                self.bump();
                let parts = self.list(')', false, Self::expr)?;
                Ok(match kw.as_str() {
                    "product" => Expr::Product(parts),
                    "disjoint" => Expr::Disjoint(parts),
                    _ => Expr::Union(parts),
                })
            }
            "atoms" if opens(self, '(') => {
                self.bump();
                self.bump();
                let items = self.list(')', false, |p| {
                    let name = p.name("an atom name")?.0;
                    let source = if p.at_punct('=') {
                        p.bump();
                        Some(p.expr()?)
                    } else {
                        None
                    };
                    Ok(Item { name, source })
                })?;
                Ok(Expr::Atoms(items))
            }
            _ => Ok(Expr::Ref(self.dim_ref()?)),
        }
    }

    fn state_decl(&mut self) -> Result<(), DslError> {
        let (name, line, column) = self.name("a state name")?;
        if self.has_state(&name) {
            return Err(DslError::DuplicateName { name, line, column });
        }
        self.punct('=')?;
        self.punct('{')?;
        let pairs = self.list('}', true, |p| {
            let (d, line, column) = p.name("a dimension name")?;
            if !p.has_dim(&d) {
                return Err(DslError::UnknownName { name: d, line, column });
            }
            p.punct(':')?;
            Ok((d, p.value()?, line, column))
        })?;
        let mut entries = BTreeMap::new();
        for (d, v, line, column) in pairs {
            if entries.insert(d.clone(), v).is_some() {
                return Err(DslError::DuplicateName { name: d, line, column });
            }
        }
        self.doc.states.push(StateDecl { name, entries });
        Ok(())
    }

    fn value(&mut self) -> Result<Value, DslError> {
        if self.at_punct('{') {
            self.bump();
            let items = self.list('}', true, Self::value)?;
            Ok(Value::Set(items.into_iter().collect()))
        } else if self.at_punct('(') {
            self.bump();
            Ok(Value::Tuple(self.list(')', false, Self::value)?))
        } else {
            match &self.peek().tok {
                Tok::Name(_) => Ok(Value::Name(self.name("a value")?.0)),
                _ => Err(self.error("a value")),
            }
        }
    }
}
