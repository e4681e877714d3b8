//! Parser for scalar literals and wedge expressions.
//!
//! Scalars: integers, parameter names, `+ - * /`, `^` with an integer
//! exponent, parentheses, e.g. `-(1+a^2)/b`. Forms additionally allow
//! dual-basis names joined by `^`, e.g. `e0^e1 + -(1+a^2)/b * e1^e3`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exterior::KForm;
use crate::scalars::{Params, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits parse")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError {
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(Scalar),
    Form(KForm),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    params: &'a Params,
    basis: Option<&'a [String]>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let col = self.column();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.combine_add(acc, rhs, false, col)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.combine_add(acc, rhs, true, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let col = self.column();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.product(acc, rhs, col)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = match rhs {
                    Value::Scalar(s) if s.is_zero() => return self.err(col, "division by zero"),
                    Value::Scalar(s) => {
                        let inv = Value::Scalar(s.inv().expect("nonzero"));
                        self.product(acc, inv, col)?
                    }
                    Value::Form(_) => return self.err(col, "cannot divide by a form"),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(match v {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Form(f) => Value::Form(-f),
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.primary()?;
        loop {
            let col = self.column();
            if *self.peek() != Tok::Sym('^') {
                return Ok(acc);
            }
            let exponent = match (self.peek_at(1).clone(), self.peek_at(2).clone()) {
                (Tok::Int(n), _) => {
                    self.bump();
                    self.bump();
                    Some(n)
                }
                (Tok::Sym('-'), Tok::Int(n)) => {
                    self.bump();
                    self.bump();
                    self.bump();
                    Some(-n)
                }
                _ => None,
            };
            match exponent {
                Some(n) => {
                    let Value::Scalar(s) = acc else {
                        return self.err(col, "only scalars can be raised to a power");
                    };
                    let e: i32 = match i32::try_from(n) {
                        Ok(e) => e,
                        Err(_) => return self.err(col, "exponent too large"),
                    };
                    acc = match s.pow(e) {
                        Ok(p) => Value::Scalar(p),
                        Err(_) => return self.err(col, "zero raised to a negative power"),
                    };
                }
                None => {
                    self.bump();
                    let rhs = self.primary()?;
                    acc = self.product(acc, rhs, col)?;
                }
            }
        }
    }

    fn primary(&mut self) -> Result<Value, ParseError> {
        let col = self.column();
        match self.bump() {
            Tok::Int(n) => Ok(Value::Scalar(Scalar::from_rational(n.into()))),
            Tok::Ident(name) => self.ident(&name, col),
            Tok::Sym('(') => {
                let v = self.expr()?;
                let close = self.column();
                if !self.eat(')') {
                    return self.err(close, format!("expected `)`, found {}", self.peek()));
                }
                Ok(v)
            }
            t => self.err(col, format!("expected a number, name or `(`, found {t}")),
        }
    }

    fn ident(&self, name: &str, col: usize) -> Result<Value, ParseError> {
        if let Some(basis) = self.basis {
            if let Some(i) = basis.iter().position(|b| b == name) {
                return Ok(Value::Form(KForm::basis_1form(basis.len(), i)));
            }
        }
        match self.params.index_of(name) {
            Some(i) => Ok(Value::Scalar(Scalar::param(i))),
            None => self.err(col, format!("unknown identifier `{name}`")),
        }
    }

    fn n(&self) -> usize {
        self.basis.map_or(0, <[String]>::len)
    }

    fn as_form(&self, v: Value) -> KForm {
        match v {
            Value::Form(f) => f,
            Value::Scalar(s) => KForm::constant(self.n(), s),
        }
    }

    fn product(&self, a: Value, b: Value, _col: usize) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Scalar(x), Value::Form(f)) | (Value::Form(f), Value::Scalar(x)) => {
                Value::Form(f.scale(&x))
            }
            (Value::Form(f), Value::Form(g)) => Value::Form(f.wedge(&g)),
        })
    }

    fn combine_add(&self, a: Value, b: Value, sub: bool, col: usize) -> Result<Value, ParseError> {
        if let (Value::Scalar(x), Value::Scalar(y)) = (&a, &b) {
            return Ok(Value::Scalar(if sub { x - y } else { x + y }));
        }
        let (f, g) = (self.as_form(a), self.as_form(b));
        if f.degree() != g.degree() {
            return self.err(
                col,
                format!(
                    "cannot add forms of degree {} and {}",
                    f.degree(),
                    g.degree()
                ),
            );
        }
        Ok(Value::Form(if sub { &f - &g } else { &f + &g }))
    }

    fn finish(&mut self, v: Value) -> Result<Value, ParseError> {
        if *self.peek() != Tok::End {
            return self.err(self.column(), format!("unexpected {}", self.peek()));
        }
        Ok(v)
    }
}

fn run(src: &str, params: &Params, basis: Option<&[String]>) -> Result<Value, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        params,
        basis,
    };
    if *p.peek() == Tok::End {
        return p.err(1, "empty expression");
    }
    let v = p.expr()?;
    p.finish(v)
}

pub fn parse_scalar(src: &str, params: &Params) -> Result<Scalar, ParseError> {
    match run(src, params, None)? {
        Value::Scalar(s) => Ok(s),
        Value::Form(_) => unreachable!("no basis names without an algebra"),
    }
}

/// Parses a form over the given dual-basis names. A bare scalar is a 0-form.
pub fn parse_form(src: &str, params: &Params, basis: &[String]) -> Result<KForm, ParseError> {
    match run(src, params, Some(basis))? {
        Value::Scalar(s) => Ok(KForm::constant(basis.len(), s)),
        Value::Form(f) => Ok(f),
    }
}
