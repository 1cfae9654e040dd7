//! Text form of polynomials.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := ['-'] atom ['^' nat]
//! atom     := rational | var | '(' expr ')'
//! rational := int ['/' nat]
//! var      := 'x' nat
//! ```
//!
//! `^` binds tighter than unary `-`, so `-x1^2` is `-(x1^2)`. Implicit
//! multiplication (`2x1`), division of expressions and decimal literals are
//! rejected. Powers of compound expressions are expanded eagerly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Constant(Rational),
    /// 0-based variable index (`x1` is `Variable(0)`).
    Variable(usize),
    Neg(Box<ExprAst>),
    Add(Vec<ExprAst>),
    Mul(Vec<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

impl ExprAst {
    /// Highest variable index used, plus one.
    pub fn min_nvars(&self) -> usize {
        match self {
            ExprAst::Constant(_) => 0,
            ExprAst::Variable(i) => i + 1,
            ExprAst::Neg(a) | ExprAst::Pow(a, _) => a.min_nvars(),
            ExprAst::Add(v) | ExprAst::Mul(v) => v.iter().map(ExprAst::min_nvars).max().unwrap_or(0),
        }
    }

    /// Canonical expansion over `nvars` variables.
    pub fn to_polynomial(&self, nvars: usize) -> Result<Polynomial> {
        Ok(match self {
            ExprAst::Constant(c) => Polynomial::constant(nvars, c.clone()),
            ExprAst::Variable(i) => {
                if *i >= nvars {
                    return Err(Error::Dimension {
                        expected: nvars,
                        found: i + 1,
                    });
                }
                Polynomial::var(nvars, *i)
            }
            ExprAst::Neg(a) => -a.to_polynomial(nvars)?,
            ExprAst::Add(v) => {
                let mut acc = Polynomial::zero(nvars);
                for a in v {
                    acc = &acc + &a.to_polynomial(nvars)?;
                }
                acc
            }
            ExprAst::Mul(v) => {
                let mut acc = Polynomial::one(nvars);
                for a in v {
                    acc = &acc * &a.to_polynomial(nvars)?;
                }
                acc
            }
            ExprAst::Pow(a, k) => a.to_polynomial(nvars)?.pow(*k),
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: Option<usize>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            // digits are ASCII
            Some((start, std::str::from_utf8(&self.src[start..self.pos]).unwrap()))
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(ExprAst::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            ExprAst::Add(terms)
        })
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(b'/') => return self.err(self.pos, "division is not supported"),
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    return self.err(self.pos, "implicit multiplication is not allowed; use '*'")
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            ExprAst::Mul(factors)
        })
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut node = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = {
                self.skip_ws();
                self.pos
            };
            match self.src.get(at) {
                Some(b'-') => return self.err(at, "negative exponents are not supported"),
                Some(c) if c.is_ascii_digit() => {}
                _ => return self.err(at, "expected a nonnegative integer exponent"),
            }
            let (start, text) = self.digits().unwrap();
            if matches!(self.src.get(self.pos), Some(b'.') | Some(b'/')) {
                return self.err(start, "fractional exponents are not supported");
            }
            let k: u32 = match text.parse() {
                Ok(k) => k,
                Err(_) => return self.err(start, "exponent too large"),
            };
            node = ExprAst::Pow(Box::new(node), k);
        }
        Ok(if negate {
            ExprAst::Neg(Box::new(node))
        } else {
            node
        })
    }

    fn atom(&mut self) -> Result<ExprAst> {
        let at = match self.peek() {
            Some(_) => self.pos,
            None => return self.err(self.src.len(), "unexpected end of input"),
        };
        match self.src[at] {
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            b'x' => {
                self.pos += 1;
                let (start, text) = match self.digits() {
                    Some(d) => d,
                    None => return self.err(self.pos, "expected variable index after 'x'"),
                };
                let index: usize = match text.parse() {
                    Ok(i) if i >= 1 => i,
                    _ => return self.err(start, format!("unknown variable x{text}")),
                };
                if let Some(n) = self.nvars {
                    if index > n {
                        return self.err(at, format!("unknown variable x{index} (only {n} variables)"));
                    }
                }
                Ok(ExprAst::Variable(index - 1))
            }
            c if c.is_ascii_digit() => {
                let (_, num) = self.digits().unwrap();
                let num: BigInt = num.parse().unwrap();
                if self.src.get(self.pos) == Some(&b'.') {
                    return self.err(self.pos, "decimal literals are not supported");
                }
                let mut value = Rational::from_integer(num);
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    let slash = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    match self.digits() {
                        Some((start, den)) => {
                            let den: BigInt = den.parse().unwrap();
                            if den.is_zero() {
                                return self.err(start, "zero denominator");
                            }
                            value = Rational::new(value.numer().clone(), den);
                        }
                        None => return self.err(slash, "division is not supported"),
                    }
                } else {
                    self.pos = save;
                }
                Ok(ExprAst::Constant(value))
            }
            c => self.err(at, format!("unexpected character '{}'", c as char)),
        }
    }
}

fn parse_with(text: &str, nvars: Option<usize>) -> Result<ExprAst> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let ast = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected character '{}'", c as char));
    }
    Ok(ast)
}

/// Parses `text` into an expression tree without fixing the variable universe.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    parse_with(text, None)
}

/// Parses and expands `text` into a polynomial over `nvars` variables.
pub fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
    parse_with(text, Some(nvars))?.to_polynomial(nvars)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
    /// Plain layout with coefficients rounded to 6 decimals; not parseable back
    /// exactly, meant for floating results.
    Decimal,
}

fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn latex_monomial(alpha: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in alpha.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("x_{{{}}}", i + 1)),
            _ => parts.push(format!("x_{{{}}}^{{{}}}", i + 1, a)),
        }
    }
    parts.join(" ")
}

/// Renders terms in ascending grlex order. `parse(format(p, Plain), n) == p`.
pub fn format(p: &Polynomial, style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let body = match style {
            Style::Decimal => {
                let d = decimal(&mag);
                if e.is_constant() {
                    d
                } else if d == "1" {
                    e.to_string()
                } else {
                    format!("{d}*{e}")
                }
            }
            Style::Plain => {
                if e.is_constant() {
                    mag.to_string()
                } else if mag.is_one() {
                    e.to_string()
                } else {
                    format!("{mag}*{e}")
                }
            }
            Style::Latex => {
                if e.is_constant() {
                    latex_rational(&mag)
                } else if mag.is_one() {
                    latex_monomial(e.as_slice())
                } else {
                    format!("{} {}", latex_rational(&mag), latex_monomial(e.as_slice()))
                }
            }
        };
        out.push_str(&body);
    }
    out
}

fn decimal(r: &Rational) -> String {
    let s = format!("{:.6}", crate::poly::rational_to_f64(r));
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}
