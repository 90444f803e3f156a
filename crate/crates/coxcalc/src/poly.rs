//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(coeff: Rat, exps: Monomial) -> Self {
        let mut p = Self::zero(exps.len());
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Rat, Monomial)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(c, e);
        }
        Ok(p)
    }

    fn add_term(&mut self, c: Rat, e: Monomial) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(c.clone(), e.clone());
        }
        p
    }

    pub fn scale(&self, k: &Rat) -> Polynomial {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(c * k, e.clone());
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(c1 * c2, e);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut p = Self::monomial(Rat::one(), vec![0; self.nvars]);
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Substitutes `images[i]` for the `i`-th variable; all images must share
    /// one variable count.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let n = images.first().map_or(0, |p| p.nvars);
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut t = Self::monomial(c.clone(), vec![0; n]);
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&img.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Inserts a fresh variable (exponent zero everywhere) at position `at`.
    pub fn insert_var(&self, at: usize) -> Polynomial {
        let mut p = Self::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.insert(at, 0);
            p.terms.insert(e2, c.clone());
        }
        p
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[perm[i]] = k;
            }
            p.terms.insert(e2, c.clone());
        }
        p
    }

    /// Maps every term's exponent vector through `f`.
    pub fn map_exponents(&self, nvars: usize, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            p.add_term(c.clone(), f(e));
        }
        p
    }

    /// Scales so that the leading (last) coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.values().next_back() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Parses expressions like `T1*T2^5 + 3*T3^3 - 1/2*T4^2`.
    pub fn parse(s: &str, vars: &[String]) -> Result<Polynomial> {
        Parser { s: s.as_bytes(), pos: 0, vars }.parse()
    }

    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        Shown { p: self, vars }
    }
}

struct Shown<'a> {
    p: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mut factors = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], x)),
                }
            }
            if !a.is_one() || factors.is_empty() {
                factors.insert(0, a.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("T{i}")).collect();
        let shown = Shown { p: self, vars: &names };
        write!(f, "{shown}")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Malformed(format!("polynomial at byte {}: {msg}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        txt.parse().map_err(|_| self.err("bad number"))
    }

    fn parse(mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut p = Polynomial::zero(n);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'+') => {
                    self.pos += 1;
                    Rat::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rat::one()
                }
                Some(_) if first => Rat::one(),
                Some(_) => return Err(self.err("expected + or -")),
            };
            first = false;
            let (c, e) = self.term()?;
            p.add_term(sign * c, e);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Rat, Monomial)> {
        let mut coeff = Rat::one();
        let mut e = vec![0u32; self.vars.len()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.number()?;
                    let mut q = Rat::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.number()?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        q /= Rat::from_integer(den);
                    }
                    coeff *= q;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.s.len()
                        && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                    let i = self
                        .vars
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| self.err(&format!("unknown variable {name}")))?;
                    let mut k = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        k = u32::try_from(self.number()?).map_err(|_| self.err("exponent too large"))?;
                    }
                    e[i] += k;
                }
                _ => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, e))
    }
}
