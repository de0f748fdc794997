//! Expressions over the modes and the scalar indeterminates.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' nat)*
//! atom   := integer | ident | gen | '(' expr ')'
//! gen    := ('L' | 'G') '[' ['+' | '-'] integer ['/' integer] ']'
//! ```
//!
//! Division is allowed only by scalars, so `1/2*L[1]` and
//! `(mu+1)/(mu-1)` both parse.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Generator, HalfInt, Kind};
use crate::scalar::{Field, Rational, Var};
use crate::{Element, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("index parity error at {pos}: {text} (L needs an integer index, G a half-odd one)")]
    IndexParityError { pos: usize, text: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("odd mode power {gen}^{exp} is not allowed; rewrite using {gen}^2 = {square}")]
    OddPower {
        gen: Generator,
        exp: u32,
        square: Generator,
    },
    #[error("division by a non-scalar expression")]
    NonScalarDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a scalar, got {0}")]
    NotScalar(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Integer(BigInt),
    Ident(String),
    Gen(Generator),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Integer(n) => write!(f, "{n}"),
            ExprAst::Ident(s) => f.write_str(s),
            ExprAst::Gen(g) => write!(f, "{g}"),
            ExprAst::Neg(a) => write!(f, "(-{a})"),
            ExprAst::Add(a, b) => write!(f, "({a} + {b})"),
            ExprAst::Sub(a, b) => write!(f, "({a} - {b})"),
            ExprAst::Mul(a, b) => write!(f, "({a} * {b})"),
            ExprAst::Div(a, b) => write!(f, "({a} / {b})"),
            ExprAst::Pow(a, n) => write!(f, "({a}^{n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Gen(Generator),
    Sym(char),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek_char(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().unwrap())
    }

    fn syntax(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError::SyntaxError { pos, msg: msg.into() }
    }

    fn generator(&mut self, kind: Kind, start: usize) -> Result<Generator, ParseError> {
        // positioned just after '['
        self.skip_ws();
        let mut negative = false;
        if let Some(c @ ('+' | '-')) = self.peek_char() {
            negative = c == '-';
            self.pos += 1;
            self.skip_ws();
        }
        let num = self
            .digits()
            .ok_or_else(|| self.syntax(self.pos, "expected an index"))?;
        self.skip_ws();
        let mut den = BigInt::one();
        if self.peek_char() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            den = self
                .digits()
                .ok_or_else(|| self.syntax(self.pos, "expected a denominator"))?;
            self.skip_ws();
        }
        if self.peek_char() != Some(']') {
            return Err(self.syntax(self.pos, "expected `]`"));
        }
        self.pos += 1;
        let text = self.src[start..self.pos].to_string();
        let parity = || ParseError::IndexParityError { pos: start, text: text.clone() };
        if den.is_zero() {
            return Err(parity());
        }
        let mut q = Rational::new(num, den);
        if negative {
            q = -q;
        }
        let doubled = q.clone() * Rational::from_integer(2.into());
        if !doubled.is_integer() {
            return Err(parity());
        }
        let doubled: i64 = doubled
            .to_integer()
            .try_into()
            .map_err(|_| self.syntax(start, "index out of range"))?;
        Generator::try_new(kind, HalfInt::from_doubled(doubled)).map_err(|_| parity())
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let Some(c) = self.peek_char() else { break };
            if c.is_ascii_digit() {
                out.push((start, Tok::Int(self.digits().unwrap())));
            } else if c.is_ascii_alphabetic() || c == '_' {
                while matches!(self.peek_char(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                    self.pos += 1;
                }
                let word = &self.src[start..self.pos];
                let kind = match word {
                    "L" => Some(Kind::L),
                    "G" => Some(Kind::G),
                    _ => None,
                };
                let save = self.pos;
                self.skip_ws();
                match kind {
                    Some(kind) if self.peek_char() == Some('[') => {
                        self.pos += 1;
                        out.push((start, Tok::Gen(self.generator(kind, start)?)));
                    }
                    _ => {
                        self.pos = save;
                        out.push((start, Tok::Ident(word.to_string())));
                    }
                }
            } else if "+-*/^()".contains(c) {
                self.pos += 1;
                out.push((start, Tok::Sym(c)));
            } else {
                return Err(self.syntax(start, format!("unexpected character `{c}`")));
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.i) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::SyntaxError {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.i += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                ExprAst::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprAst::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.i += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' {
                ExprAst::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                ExprAst::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek_sym() {
            Some('-') => {
                self.i += 1;
                Ok(ExprAst::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let mut base = self.atom()?;
        while self.peek_sym() == Some('^') {
            self.i += 1;
            let n = match self.toks.get(self.i) {
                Some((_, Tok::Int(n))) => u32::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            };
            self.i += 1;
            base = ExprAst::Pow(Box::new(base), n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let Some((_, tok)) = self.toks.get(self.i).cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        self.i += 1;
        match tok {
            Tok::Int(n) => Ok(ExprAst::Integer(n)),
            Tok::Ident(s) => Ok(ExprAst::Ident(s)),
            Tok::Gen(g) => Ok(ExprAst::Gen(g)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                Ok(e)
            }
            Tok::Sym(c) => {
                self.i -= 1;
                Err(self.err(&format!("unexpected `{c}`")))
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ExprAst, ParseError> {
    let toks = Lexer { src: text, pos: 0 }.tokens()?;
    let mut p = Parser {
        toks,
        i: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Elaborates with identifiers resolved by `env` first, then as scalar
/// indeterminates.
pub fn elaborate_with(
    ast: &ExprAst,
    env: &dyn Fn(&str) -> Option<Element>,
) -> Result<Element, ParseError> {
    Ok(match ast {
        ExprAst::Integer(n) => Element::scalar(Scalar::from_rational(&Rational::from_integer(n.clone()))),
        ExprAst::Ident(s) => match env(s) {
            Some(e) => e,
            None => match Var::from_name(s) {
                Some(v) => Element::scalar(Scalar::var(v)),
                None => return Err(ParseError::UnknownIdentifier(s.clone())),
            },
        },
        ExprAst::Gen(g) => Element::generator(*g),
        ExprAst::Neg(a) => -elaborate_with(a, env)?,
        ExprAst::Add(a, b) => elaborate_with(a, env)? + elaborate_with(b, env)?,
        ExprAst::Sub(a, b) => elaborate_with(a, env)? - elaborate_with(b, env)?,
        ExprAst::Mul(a, b) => elaborate_with(a, env)? * elaborate_with(b, env)?,
        ExprAst::Div(a, b) => {
            let d = as_scalar(&elaborate_with(b, env)?).ok_or(ParseError::NonScalarDivisor)?;
            if d.is_zero() {
                return Err(ParseError::DivisionByZero);
            }
            elaborate_with(a, env)?.scale(&(Scalar::one() / d))
        }
        ExprAst::Pow(a, n) => {
            if let ExprAst::Gen(g) = a.as_ref() {
                if g.is_odd() && *n > 1 {
                    return Err(ParseError::OddPower {
                        gen: *g,
                        exp: *n,
                        square: g.odd_square().unwrap(),
                    });
                }
            }
            elaborate_with(a, env)?.pow(*n)
        }
    })
}

pub fn elaborate(ast: &ExprAst) -> Result<Element, ParseError> {
    elaborate_with(ast, &|_| None)
}

/// Parses and elaborates in one step.
pub fn parse_element(text: &str) -> Result<Element, ParseError> {
    elaborate(&parse_expr(text)?)
}

/// Parses an expression that must be a scalar.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let e = parse_element(text)?;
    as_scalar(&e).ok_or_else(|| ParseError::NotScalar(e.to_string()))
}

/// The coefficient of the unit if `e` has no other terms.
pub fn as_scalar(e: &Element) -> Option<Scalar> {
    match e.len() {
        0 => Some(Scalar::zero()),
        1 => {
            let (m, c) = e.terms().next().unwrap();
            m.is_one().then(|| c.clone())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn lemma3_operator() {
        let e = parse_element("L[-1]*G[-1/2]*(1/2*L[1]*G[1/2]-G[3/2])").unwrap();
        let l = |n| Element::generator(Generator::l(n));
        let g = |d| Element::generator(Generator::g(d));
        let half = Element::scalar(Scalar::from_rational(&rat(1, 2)));
        assert_eq!(e, l(-1) * g(-1) * (half * l(1) * g(1) - g(3)));
    }

    #[test]
    fn parity_errors() {
        assert!(matches!(parse_expr("G[1]"), Err(ParseError::IndexParityError { .. })));
        assert!(matches!(parse_expr("L[1/2]"), Err(ParseError::IndexParityError { .. })));
        assert!(matches!(parse_expr("L[1/3]"), Err(ParseError::IndexParityError { .. })));
        assert!(matches!(parse_expr("2 + * 3"), Err(ParseError::SyntaxError { pos: 4, .. })));
        assert!(matches!(parse_element("G[1/2]^2"), Err(ParseError::OddPower { .. })));
        assert!(matches!(parse_element("L[0]/L[1]"), Err(ParseError::NonScalarDivisor)));
        assert!(matches!(parse_element("foo"), Err(ParseError::UnknownIdentifier(_))));
    }

    #[test]
    fn renders_round_trip() {
        for text in [
            "-1*G[-1/2]*G[1/2] + 2*L[0]",
            "2*L[0]^2 - 3*L[0]",
            "((2*mu^2 + mu - 1)/(mu - 1))*G[3/2] - (2/3*chat)",
            "(-tau)*G[-3/2]*L[2]",
        ] {
            let e = parse_element(text).unwrap();
            assert_eq!(parse_element(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
        assert_eq!(parse_scalar("(mu+1)*(2*mu-1)/(mu-1)").unwrap().to_string(), "(2*mu^2 + mu - 1)/(mu - 1)");
    }
}
