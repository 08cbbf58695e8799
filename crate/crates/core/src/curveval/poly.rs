//! Multivariate polynomials with rational coefficients in `x1..xm`.
//!
//! Grammar (whitespace ignored between tokens):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer ("/" integer)? | "x" integer | "(" expr ")"
//! ```
//!
//! Parse errors carry the 1-based column of the offending character.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::series::Series;
use crate::error::{Error, Result};

/// Exponent vector to coefficient; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn monomial(exponents: Vec<u32>) -> Self {
        let vars = exponents.len();
        let mut p = Self::zero(vars);
        p.terms.insert(exponents, BigRational::one());
        p
    }

    /// `x_{i+1}` for 0-based `i`.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(e)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out = out.add(&Poly {
                    vars: self.vars,
                    terms: BTreeMap::from([(e, c1 * c2)]),
                });
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(self.vars, BigRational::one()), |acc, _| acc.mul(self))
    }

    /// Substitutes one truncated series per variable.
    pub fn eval_series(&self, substitution: &[Series]) -> Series {
        let truncation = substitution.first().map_or(1, Series::truncation);
        let mut out = Series::zero(truncation);
        for (e, c) in &self.terms {
            let mut term = Series::one(truncation).scale(c);
            for (s, &k) in substitution.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&s.pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn parse(src: &str, vars: usize) -> Result<Poly> {
        let mut parser = Parser {
            chars: src.chars().collect(),
            pos: 0,
            vars,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            match (factors.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    vars: usize,
}

impl Parser {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e = u32::try_from(e).ok().filter(|&e| e <= 1024).ok_or_else(|| Error::Parse {
                line: 1,
                column: at + 1,
                message: "exponent must be an integer between 0 and 1024".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some('x') => {
                let at = self.pos;
                self.pos += 1;
                if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("expected variable index after 'x'"));
                }
                let i = self.integer()?;
                if i < 1 || i as usize > self.vars {
                    return Err(Error::Parse {
                        line: 1,
                        column: at + 1,
                        message: format!("variable x{i} outside x1..x{}", self.vars),
                    });
                }
                Ok(Poly::var(self.vars, i as usize - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer_big()?;
                let den = if self.eat('/') {
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.integer_big()?;
                    if den.is_zero() {
                        return Err(Error::Parse {
                            line: 1,
                            column: at + 1,
                            message: "zero denominator".into(),
                        });
                    }
                    den
                } else {
                    BigInt::one()
                };
                Ok(Poly::constant(self.vars, BigRational::new(num, den)))
            }
            Some(_) => Err(self.error("expected a number, a variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<i64> {
        let at = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| Error::Parse {
            line: 1,
            column: at + 1,
            message: "integer too large".into(),
        })
    }

    fn integer_big(&mut self) -> Result<BigInt> {
        let s = self.digits()?;
        Ok(s.parse().expect("ascii digits"))
    }
}
