//! Textual gateway: parse and pretty-print polynomial and rational expressions.
//!
//! Grammar (whitespace insignificant, implicit multiplication rejected):
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := ('-')? base ('^' uint)?
//! base     := rational | 'i' | var | '(' expr ')'
//! rational := int ('/' uint)?
//! var      := 'z' uint | 't' | 's'
//! ```
//!
//! This grammar is the wire format everywhere: CLI arguments, JSON payloads
//! and golden files all carry polynomials in exactly this form, and
//! [`format_expr`] prints canonically (graded-lex term order) so that
//! `parse ∘ format` is the identity.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{GaussianRational, Rational};
use crate::poly::{MultiPoly, PolyError, RatFunc, VarSet};

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("division by the zero polynomial at byte {pos}")]
    ZeroDenominator { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownVariable { pos, .. }
            | ParseError::ZeroDenominator { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => k += 1,
            '+' => { out.push((k, Tok::Plus)); k += 1; }
            '-' => { out.push((k, Tok::Minus)); k += 1; }
            '*' => { out.push((k, Tok::Star)); k += 1; }
            '/' => { out.push((k, Tok::Slash)); k += 1; }
            '^' => { out.push((k, Tok::Caret)); k += 1; }
            '(' => { out.push((k, Tok::LParen)); k += 1; }
            ')' => { out.push((k, Tok::RParen)); k += 1; }
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n: BigInt = text[start..k].parse().expect("digit run parses");
                out.push((start, Tok::Int(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = k;
                k += 1;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                out.push((start, Tok::Ident(text[start..k].to_string())));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: k,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a VarSet,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.here(), msg: msg.into() }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let op_pos = self.here();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).map_err(|e| match e {
                        PolyError::ZeroDenominator => ParseError::ZeroDenominator { pos: op_pos },
                        other => ParseError::Syntax { pos: op_pos, msg: other.to_string() },
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        let negate = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            true
        } else {
            false
        };
        let mut value = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some((pos, Tok::Int(e))) => {
                    if e > BigInt::from(MAX_EXPONENT) {
                        return Err(ParseError::Syntax { pos, msg: "exponent too large".into() });
                    }
                    let e: u32 = e.try_into().expect("bounded exponent");
                    value = value.pow(e);
                }
                other => {
                    let pos = other.map(|(p, _)| p).unwrap_or(self.end);
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected nonnegative integer exponent".into(),
                    });
                }
            }
        }
        Ok(if negate { value.neg() } else { value })
    }

    fn base(&mut self) -> Result<RatFunc, ParseError> {
        match self.bump() {
            Some((_, Tok::Int(n))) => {
                // Greedy rational literal: int '/' uint, only when a digit follows.
                if matches!(self.peek(), Some(Tok::Slash)) && matches!(self.peek2(), Some(Tok::Int(_))) {
                    self.bump();
                    let Some((dpos, Tok::Int(d))) = self.bump() else { unreachable!() };
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos: dpos });
                    }
                    let r = Rational::new(n, d).expect("nonzero denominator");
                    Ok(RatFunc::constant(self.vars, GaussianRational::from_rational(r)))
                } else {
                    let r = Rational::new(n, BigInt::from(1)).expect("unit denominator");
                    Ok(RatFunc::constant(self.vars, GaussianRational::from_rational(r)))
                }
            }
            Some((pos, Tok::Ident(name))) => {
                if name == "i" {
                    return Ok(RatFunc::constant(self.vars, GaussianRational::i()));
                }
                match self.vars.index_of(&name) {
                    Some(idx) => Ok(RatFunc::var(self.vars, idx)),
                    None => Err(ParseError::UnknownVariable { pos, name }),
                }
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((pos, _)) => Err(ParseError::Syntax { pos, msg: "expected `)`".into() }),
                    None => Err(ParseError::Syntax { pos: self.end, msg: "unbalanced parenthesis".into() }),
                }
            }
            Some((pos, tok)) => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected token {tok:?}"),
            }),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parse `text` as a normalized rational function over `vars`.
pub fn parse_expr(text: &str, vars: &VarSet) -> Result<RatFunc, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, vars, end: text.len() };
    let value = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(parser.syntax("trailing input (implicit multiplication is not allowed)"));
    }
    Ok(value)
}

/// Parse `text` and require a polynomial (denominator 1).
pub fn parse_poly(text: &str, vars: &VarSet) -> Result<MultiPoly, ParseError> {
    let f = parse_expr(text, vars)?;
    if !f.is_polynomial() {
        return Err(ParseError::Syntax { pos: 0, msg: "expected a polynomial expression".into() });
    }
    Ok(f.num().clone())
}

fn rational_string(r: &Rational) -> String {
    r.to_string()
}

/// One rendered additive term: `(negated, body)` with the sign pulled out
/// whenever the coefficient is real or purely imaginary.
fn term_string(coeff: &GaussianRational, mono: &crate::poly::Monomial, vars: &VarSet) -> (bool, String) {
    let mono_str = {
        let mut parts = Vec::new();
        for (v, &e) in mono.0.iter().enumerate() {
            if e == 1 {
                parts.push(vars.name(v).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", vars.name(v), e));
            }
        }
        parts.join("*")
    };
    if coeff.im.is_zero() {
        let neg = coeff.re.is_negative();
        let mag = coeff.re.abs();
        let body = if mono_str.is_empty() {
            rational_string(&mag)
        } else if mag.is_one() {
            mono_str
        } else {
            format!("{}*{}", rational_string(&mag), mono_str)
        };
        (neg, body)
    } else if coeff.re.is_zero() {
        let neg = coeff.im.is_negative();
        let mag = coeff.im.abs();
        let ipart = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rational_string(&mag))
        };
        let body = if mono_str.is_empty() {
            ipart
        } else {
            format!("{}*{}", ipart, mono_str)
        };
        (neg, body)
    } else {
        // Mixed coefficient: keep it intact inside parentheses.
        let inner = coeff.to_string();
        let body = if mono_str.is_empty() {
            format!("({inner})")
        } else {
            format!("({inner})*{}", mono_str)
        };
        (false, body)
    }
}

/// Canonical polynomial rendering: terms in descending graded-lex order.
pub fn poly_to_string(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (k, (m, c)) in terms.iter().rev().enumerate() {
        let (neg, body) = term_string(c, m, p.vars());
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

/// Does this monic polynomial print as a single grammar factor?
fn is_single_factor(p: &MultiPoly) -> bool {
    if p.term_count() != 1 {
        return false;
    }
    let (m, c) = p.terms().next().expect("one term");
    c.is_one() && m.0.iter().filter(|&&e| e > 0).count() <= 1
}

/// Canonical rendering of a rational function; reparses to the same value.
pub fn format_expr(f: &RatFunc) -> String {
    let num = poly_to_string(f.num());
    if f.is_polynomial() {
        return num;
    }
    let num_wrapped = if f.num().term_count() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = poly_to_string(f.den());
    let den_wrapped = if is_single_factor(f.den()) {
        den
    } else {
        format!("({den})")
    };
    format!("{num_wrapped}/{den_wrapped}")
}
