//! Recursive-descent parser for density expressions and assertions.
//!
//! Precedence, tightest first: `*` between expressions, a leading
//! `rational *` scaling the rest of its term, `+`/`-`; then comparisons,
//! `!`, `&`, `|`, and the right-associative `=>`.

use crate::error::{Error, Result};
use crate::flag::Flag;
use crate::graph::Graph;
use crate::rational::{parse_rational, Rational};

use super::expr::{Assertion, DensityExpr};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Graph(Graph),
    Flag(Flag),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Ge,
    Le,
    Eq,
    Gt,
    Lt,
    Bang,
    Pipe,
    Amp,
    Implies,
    True,
    False,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &src[i..];
        let tok = if rest.starts_with("g:") {
            let (g, end) = Graph::scan(src, i, "g:")?;
            i = end;
            Tok::Graph(g)
        } else if rest.starts_with("f:") {
            let (f, end) = Flag::scan(src, i)?;
            i = end;
            Tok::Flag(f)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j < bytes.len() && bytes[j] == b'/' {
                j += 1;
                let den_start = j;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == den_start {
                    return Err(Error::parse(den_start, "expected a denominator after `/`"));
                }
            }
            if j < bytes.len() && (bytes[j] == b'.' || bytes[j] == b'e' || bytes[j] == b'E') {
                return Err(Error::parse(j, "decimal constants are not allowed; write a fraction"));
            }
            let r = parse_rational(&src[i..j]).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(start, msg),
                other => other,
            })?;
            i = j;
            Tok::Num(r)
        } else if rest.starts_with("true") {
            i += 4;
            Tok::True
        } else if rest.starts_with("false") {
            i += 5;
            Tok::False
        } else {
            let (t, len) = match (c, bytes.get(i + 1)) {
                (b'>', Some(b'=')) => (Tok::Ge, 2),
                (b'<', Some(b'=')) => (Tok::Le, 2),
                (b'=', Some(b'>')) => (Tok::Implies, 2),
                (b'>', _) => (Tok::Gt, 1),
                (b'<', _) => (Tok::Lt, 1),
                (b'=', _) => (Tok::Eq, 1),
                (b'+', _) => (Tok::Plus, 1),
                (b'-', _) => (Tok::Minus, 1),
                (b'*', _) => (Tok::Star, 1),
                (b'(', _) => (Tok::LParen, 1),
                (b')', _) => (Tok::RParen, 1),
                (b'!', _) => (Tok::Bang, 1),
                (b'|', _) => (Tok::Pipe, 1),
                (b'&', _) => (Tok::Amp, 1),
                _ => {
                    let ch = rest.chars().next().unwrap();
                    return Err(Error::parse(i, format!("unexpected character `{ch}`")));
                }
            };
            i += len;
            t
        };
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.pos + ahead).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let msg = msg.into();
        match self.peek() {
            None => Error::parse(self.end, format!("{msg}, found end of input")),
            Some(_) => Error::parse(self.offset(), msg),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<DensityExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = DensityExpr::add(acc, self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = DensityExpr::sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    /// A term opening with `rational *` scales the rest of the term.
    fn term(&mut self) -> Result<DensityExpr> {
        let scalar = match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::Num(r)), Some(Tok::Star), _) => Some((r.clone(), 2)),
            (Some(Tok::Minus), Some(Tok::Num(r)), Some(Tok::Star)) => Some((-r.clone(), 3)),
            _ => None,
        };
        if let Some((r, len)) = scalar {
            self.pos += len;
            return Ok(DensityExpr::scale(r, self.product()?));
        }
        self.product()
    }

    fn product(&mut self) -> Result<DensityExpr> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Star) {
            acc = DensityExpr::mul(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<DensityExpr> {
        if self.eat(&Tok::Minus) {
            if let Some(Tok::Num(r)) = self.peek() {
                let r = -r.clone();
                self.pos += 1;
                return Ok(DensityExpr::constant(r));
            }
            return Ok(DensityExpr::neg(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<DensityExpr> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(DensityExpr::constant(r))
            }
            Some(Tok::Graph(g)) => {
                self.pos += 1;
                Ok(DensityExpr::graph(g))
            }
            Some(Tok::Flag(f)) => {
                self.pos += 1;
                Ok(DensityExpr::flag(f))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.error("expected a graph, flag, number or `(`")),
        }
    }

    fn implication(&mut self) -> Result<Assertion> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            return Ok(Assertion::implies(lhs, self.implication()?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Assertion> {
        let mut acc = self.conjunction()?;
        while self.eat(&Tok::Pipe) {
            acc = Assertion::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Assertion> {
        let mut acc = self.negation()?;
        while self.eat(&Tok::Amp) {
            acc = Assertion::and(acc, self.negation()?);
        }
        Ok(acc)
    }

    fn negation(&mut self) -> Result<Assertion> {
        if self.eat(&Tok::Bang) {
            return Ok(Assertion::not(self.negation()?));
        }
        self.atomic()
    }

    fn atomic(&mut self) -> Result<Assertion> {
        if self.eat(&Tok::True) {
            return Ok(Assertion::True);
        }
        if self.eat(&Tok::False) {
            return Ok(Assertion::False);
        }
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            self.pos += 1;
            if let Ok(a) = self.implication() {
                let continues_expr = matches!(
                    self.peek_at(1),
                    Some(Tok::Plus | Tok::Minus | Tok::Star | Tok::Ge | Tok::Le | Tok::Eq | Tok::Gt | Tok::Lt)
                );
                if self.peek() == Some(&Tok::RParen) && !continues_expr {
                    self.pos += 1;
                    return Ok(a);
                }
            }
            self.pos = save;
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<Assertion> {
        let lhs = self.expr()?;
        let op = self.peek().cloned();
        let build: fn(DensityExpr, DensityExpr) -> Assertion = match op {
            Some(Tok::Ge) => Assertion::geq,
            Some(Tok::Le) => Assertion::leq,
            Some(Tok::Eq) => Assertion::eq,
            Some(Tok::Gt) => Assertion::gt,
            Some(Tok::Lt) => Assertion::lt,
            _ => return Err(self.error("expected a comparison (`>=`, `<=`, `=`, `>`, `<`)")),
        };
        self.pos += 1;
        let rhs = self.expr()?;
        Ok(build(lhs, rhs))
    }
}

/// Parses a density expression and checks that its atoms share one type.
pub fn parse_expr(src: &str) -> Result<DensityExpr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    e.expr_type()?;
    Ok(e)
}

/// Parses an assertion; comparisons must relate expressions of one type.
pub fn parse_assertion(src: &str) -> Result<Assertion> {
    let mut p = Parser::new(src)?;
    let a = p.implication()?;
    p.finish()?;
    a.check_types()?;
    Ok(a)
}
