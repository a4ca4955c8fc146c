//! Univariate polynomials in `z` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![BigRational::from_integer(c.into())])
    }

    /// Builds from ascending coefficients.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `C(z + shift, k)` as a polynomial in `z`.
    pub fn binomial(shift: &BigInt, k: u64) -> Self {
        let mut acc = Poly::constant(1);
        let mut denom = BigInt::one();
        for i in 0..k {
            let root = shift - BigInt::from(i);
            acc = acc.mul_linear(&BigRational::from_integer(root));
            denom *= BigInt::from(i + 1);
        }
        acc.scale(&BigRational::new(BigInt::one(), denom))
    }

    /// Interpolates the unique polynomial of degree `< values.len()` taking
    /// `values[i]` at `z = start + i`.
    pub fn interpolate(start: i64, values: &[BigInt]) -> Self {
        // Newton forward differences at `start`.
        let mut diffs: Vec<BigInt> = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
            if diffs.is_empty() {
                break;
            }
        }
        let shift = BigInt::from(-start);
        let mut acc = Poly::zero();
        for (k, d) in leading.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            acc = &acc
                + &Poly::binomial(&shift, k as u64).scale(&BigRational::from_integer(d.clone()));
        }
        acc
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, z: &BigInt) -> BigRational {
        let z = BigRational::from_integer(z.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &z + c)
    }

    /// Value at an integer, which must be an integer.
    pub fn eval_int(&self, z: i64) -> BigInt {
        let v = self.eval(&BigInt::from(z));
        debug_assert!(v.is_integer(), "non-integral value at {z}");
        v.to_integer()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn mul_linear(&self, root: &BigRational) -> Self {
        // self * (z + root)
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] += c * root;
        }
        Self::from_coeffs(out)
    }

    /// `p(z + c)`.
    pub fn shift(&self, c: i64) -> Self {
        let c = BigRational::from_integer(c.into());
        let mut acc = Poly::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul_linear(&c);
            acc = &acc + &Poly::from_coeffs(vec![coeff.clone()]);
        }
        acc
    }

    /// First difference `p(z) - p(z - 1)`.
    pub fn delta(&self) -> Self {
        self - &self.shift(-1)
    }

    /// `P(z) = sum_{i=0}^{z} p(i)` as a polynomial.
    pub fn partial_sums(&self) -> Self {
        let d = self.degree().map_or(0, |d| d + 1);
        let mut running = BigRational::zero();
        let mut values = Vec::with_capacity(d + 1);
        for i in 0..=d as i64 {
            running += self.eval(&BigInt::from(i));
            values.push(running.clone());
        }
        // Values are integral when p is integer-valued; fall back to the
        // rational route otherwise.
        if values.iter().all(|v| v.is_integer()) {
            let ints: Vec<BigInt> = values.iter().map(|v| v.to_integer()).collect();
            Self::interpolate(0, &ints)
        } else {
            let lcm = values
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints: Vec<BigInt> = values
                .iter()
                .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            Self::interpolate(0, &ints).scale(&BigRational::new(BigInt::one(), lcm))
        }
    }

    /// True when every integer argument gives an integer value.
    pub fn is_integer_valued(&self) -> bool {
        let d = self.degree().unwrap_or(0);
        (0..=d as i64).all(|t| self.eval(&BigInt::from(t)).is_integer())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    /// Compact form such as `2z^3-6z^2+29z-20` or `1/3z^3+2z^2+14/3z-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            if deg == 0 || !a.is_one() {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            match deg {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Parses polynomial text.
///
/// Accepted: signed terms `c z^k` with integer or `a/b` coefficients
/// (optionally parenthesised, optionally followed by `*`), e.g.
/// `2z^3-6z^2+29z-20`, `1/3z^3+2z^2+14/3z-4`, `7`; or a bracketed
/// descending coefficient list `[c_k,...,c_0]`. Whitespace is ignored.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if let Some(inner) = cleaned.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("unterminated coefficient list".into()))?;
        if inner.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let mut coeffs = inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        coeffs.reverse();
        return Ok(Poly::from_coeffs(coeffs));
    }
    TermParser::new(&cleaned).parse()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn new(src: &'a str) -> Self {
        TermParser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {}", self.pos))
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// Unsigned coefficient `n`, `n/d`, or `(±n/d)`; `None` when absent.
    fn coefficient(&mut self) -> Result<Option<BigRational>> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let c = self
                .fraction()?
                .ok_or_else(|| self.err("expected number"))?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
            return Ok(Some(if neg { -c } else { c }));
        }
        self.fraction()
    }

    fn fraction(&mut self) -> Result<Option<BigRational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().unwrap();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            let den: BigInt = den.parse().unwrap();
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(Some(BigRational::new(num, den)));
        }
        Ok(Some(BigRational::from_integer(num)))
    }

    fn parse(mut self) -> Result<Poly> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut first = true;
        while self.pos < self.src.len() {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            let coeff = self.coefficient()?;
            if coeff.is_some() && self.peek() == Some(b'*') {
                self.pos += 1;
            }
            let degree = if matches!(self.peek(), Some(b'z') | Some(b'Z')) {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                    d.parse::<usize>().map_err(|_| self.err("exponent too large"))?
                } else {
                    1
                }
            } else {
                if coeff.is_none() {
                    return Err(self.err("expected coefficient or `z`"));
                }
                0
            };
            let mut c = coeff.unwrap_or_else(BigRational::one);
            if neg {
                c = -c;
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigRational::zero());
            }
            coeffs[degree] += c;
        }
        if first {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}
