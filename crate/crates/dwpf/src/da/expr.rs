//! The restricted arithmetic expression language used by plugin weight-table
//! files.
//!
//! A formula is an expression over the symbols `alpha`, `beta`, `x` and `rho`
//! with the operators `+ - * / ^` and the function `sqrt()` (principal
//! branch). `^` binds tightest, then unary minus, then `* /`, then `+ -`;
//! exponents must be constant expressions that evaluate to integers, so that
//! powers never pick a branch at evaluation time.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::principal_sqrt;

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("malformed number at byte {0}")]
    BadNumber(usize),
    #[error("unknown symbol {0:?} (allowed: alpha, beta, x, rho, sqrt)")]
    UnknownSymbol(String),
    #[error("unexpected end of formula")]
    UnexpectedEnd,
    #[error("expected {expected} at byte {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("exponent must be a constant integer expression")]
    NonIntegerExponent,
    #[error("trailing input at byte {0}")]
    TrailingInput(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Alpha,
    Beta,
    X,
    Rho,
}

/// Parsed formula tree.
#[derive(Clone, Debug)]
pub enum Formula {
    Number(f64),
    Symbol(Symbol),
    Neg(Box<Formula>),
    Add(Box<Formula>, Box<Formula>),
    Sub(Box<Formula>, Box<Formula>),
    Mul(Box<Formula>, Box<Formula>),
    Div(Box<Formula>, Box<Formula>),
    Pow(Box<Formula>, i32),
    Sqrt(Box<Formula>),
}

impl Formula {
    pub fn parse(src: &str) -> Result<Self, FormulaError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let f = p.expr()?;
        match p.peek() {
            None => Ok(f),
            Some(t) => Err(FormulaError::TrailingInput(t.at)),
        }
    }

    pub fn eval(&self, alpha: Complex64, beta: Complex64, x: Complex64, rho: Complex64) -> Complex64 {
        match self {
            Formula::Number(v) => Complex64::new(*v, 0.0),
            Formula::Symbol(Symbol::Alpha) => alpha,
            Formula::Symbol(Symbol::Beta) => beta,
            Formula::Symbol(Symbol::X) => x,
            Formula::Symbol(Symbol::Rho) => rho,
            Formula::Neg(f) => -f.eval(alpha, beta, x, rho),
            Formula::Add(a, b) => a.eval(alpha, beta, x, rho) + b.eval(alpha, beta, x, rho),
            Formula::Sub(a, b) => a.eval(alpha, beta, x, rho) - b.eval(alpha, beta, x, rho),
            Formula::Mul(a, b) => a.eval(alpha, beta, x, rho) * b.eval(alpha, beta, x, rho),
            Formula::Div(a, b) => a.eval(alpha, beta, x, rho) / b.eval(alpha, beta, x, rho),
            Formula::Pow(f, k) => f.eval(alpha, beta, x, rho).powi(*k),
            Formula::Sqrt(f) => principal_sqrt(f.eval(alpha, beta, x, rho)),
        }
    }

    /// Value of a constant subtree, if it contains no symbols or sqrt.
    fn const_value(&self) -> Option<f64> {
        match self {
            Formula::Number(v) => Some(*v),
            Formula::Neg(f) => f.const_value().map(|v| -v),
            Formula::Add(a, b) => Some(a.const_value()? + b.const_value()?),
            Formula::Sub(a, b) => Some(a.const_value()? - b.const_value()?),
            Formula::Mul(a, b) => Some(a.const_value()? * b.const_value()?),
            Formula::Div(a, b) => Some(a.const_value()? / b.const_value()?),
            Formula::Pow(f, k) => Some(f.const_value()?.powi(*k)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum TokKind {
    Number(f64),
    Sym(Symbol),
    Sqrt,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Clone, Copy, Debug)]
struct Token {
    kind: TokKind,
    at: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, FormulaError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let at = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '(' | ')' | '+' | '-' | '*' | '/' | '^' => {
                let kind = match c {
                    '(' => TokKind::LParen,
                    ')' => TokKind::RParen,
                    '+' => TokKind::Plus,
                    '-' => TokKind::Minus,
                    '*' => TokKind::Star,
                    '/' => TokKind::Slash,
                    _ => TokKind::Caret,
                };
                out.push(Token { kind, at });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let v: f64 = src[start..i].parse().map_err(|_| FormulaError::BadNumber(start))?;
                out.push(Token {
                    kind: TokKind::Number(v),
                    at,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let kind = match &src[start..i] {
                    "alpha" => TokKind::Sym(Symbol::Alpha),
                    "beta" => TokKind::Sym(Symbol::Beta),
                    "x" => TokKind::Sym(Symbol::X),
                    "rho" => TokKind::Sym(Symbol::Rho),
                    "sqrt" => TokKind::Sqrt,
                    other => return Err(FormulaError::UnknownSymbol(other.to_string())),
                };
                out.push(Token { kind, at });
            }
            other => return Err(FormulaError::UnexpectedChar(other, at)),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokKind, expected: &'static str) -> Result<(), FormulaError> {
        match self.next() {
            Some(t) if t.kind == kind => Ok(()),
            Some(t) => Err(FormulaError::Expected { expected, at: t.at }),
            None => Err(FormulaError::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.kind {
                TokKind::Plus => {
                    self.pos += 1;
                    acc = Formula::Add(Box::new(acc), Box::new(self.term()?));
                }
                TokKind::Minus => {
                    self.pos += 1;
                    acc = Formula::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t.kind {
                TokKind::Star => {
                    self.pos += 1;
                    acc = Formula::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                TokKind::Slash => {
                    self.pos += 1;
                    acc = Formula::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if let Some(t) = self.peek() {
            if t.kind == TokKind::Minus {
                self.pos += 1;
                return Ok(Formula::Neg(Box::new(self.unary()?)));
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Formula, FormulaError> {
        let base = self.atom()?;
        if let Some(t) = self.peek() {
            if t.kind == TokKind::Caret {
                self.pos += 1;
                let exp = self.unary()?;
                let v = exp.const_value().ok_or(FormulaError::NonIntegerExponent)?;
                if v.fract().abs() > 1e-9 || v.abs() > 64.0 {
                    return Err(FormulaError::NonIntegerExponent);
                }
                return Ok(Formula::Pow(Box::new(base), v.round() as i32));
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        match self.next() {
            Some(Token {
                kind: TokKind::Number(v),
                ..
            }) => Ok(Formula::Number(v)),
            Some(Token {
                kind: TokKind::Sym(s),
                ..
            }) => Ok(Formula::Symbol(s)),
            Some(Token {
                kind: TokKind::Sqrt, ..
            }) => {
                self.expect(TokKind::LParen, "'(' after sqrt")?;
                let inner = self.expr()?;
                self.expect(TokKind::RParen, "')'")?;
                Ok(Formula::Sqrt(Box::new(inner)))
            }
            Some(Token {
                kind: TokKind::LParen,
                ..
            }) => {
                let inner = self.expr()?;
                self.expect(TokKind::RParen, "')'")?;
                Ok(inner)
            }
            Some(t) => Err(FormulaError::Expected {
                expected: "number, symbol, '(' or sqrt(",
                at: t.at,
            }),
            None => Err(FormulaError::UnexpectedEnd),
        }
    }
}
