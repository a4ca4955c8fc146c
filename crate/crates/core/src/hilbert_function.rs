//! Eventually polynomial numerical functions and the minimal Hilbert functions.
//!
//! A [`HilbertFunction`] is stored canonically as a finite prefix followed by a
//! polynomial tail; the prefix length is the regularity of the function, the
//! least degree from which it agrees with its polynomial.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binomial::{lower, raise};
use crate::error::{Error, Result};
use crate::hilbert_poly::AdmissiblePolynomial;
use crate::poly::{parse_poly, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertFunction {
    prefix: Vec<BigInt>,
    tail: Poly,
}

/// First `t >= from` with `q(t) < 0`, or `None` when `q` is nonnegative on
/// every integer `t >= from`.
///
/// Stops at the first `t0` where `q(t0)` and all forward differences of `q`
/// at `t0` are nonnegative; the Newton forward form then certifies `q >= 0`
/// from `t0` on.
pub(crate) fn first_negative(q: &Poly, from: u64) -> Option<u64> {
    let d = q.degree()?;
    let mut t0 = from;
    loop {
        let start = t0 as i64;
        let mut row: Vec<BigInt> = (0..=d as i64).map(|i| q.eval_int(start + i)).collect();
        if row[0].is_negative() {
            return Some(t0);
        }
        let mut certified = true;
        while row.len() > 1 {
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
            if row[0].is_negative() {
                certified = false;
                break;
            }
        }
        if certified {
            return None;
        }
        t0 += 1;
    }
}

impl HilbertFunction {
    /// Builds a function equal to `prefix[t]` for `t < prefix.len()` and
    /// `tail(t)` afterwards; the result is canonicalized.
    pub fn new(prefix: Vec<BigInt>, tail: Poly) -> Result<Self> {
        if let Some((t, _)) = prefix.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidArgument(format!("negative value in degree {t}")));
        }
        if !tail.is_integer_valued() {
            return Err(Error::InvalidArgument(format!("tail {tail} is not integer-valued")));
        }
        if let Some(t) = first_negative(&tail, prefix.len() as u64) {
            return Err(Error::InvalidArgument(format!("tail {tail} is negative in degree {t}")));
        }
        Ok(Self::canonical(prefix, tail))
    }

    pub(crate) fn canonical(mut prefix: Vec<BigInt>, tail: Poly) -> Self {
        while let Some(last) = prefix.last() {
            if *last == tail.eval_int(prefix.len() as i64 - 1) {
                prefix.pop();
            } else {
                break;
            }
        }
        HilbertFunction { prefix, tail }
    }

    /// The function equal to `p` in every degree.
    pub fn polynomial(p: &Poly) -> Result<Self> {
        Self::new(Vec::new(), p.clone())
    }

    pub fn value(&self, t: u64) -> BigInt {
        match self.prefix.get(t as usize) {
            Some(v) => v.clone(),
            None => self.tail.eval_int(t as i64),
        }
    }

    pub fn values(&self, upto: u64) -> Vec<BigInt> {
        (0..=upto).map(|t| self.value(t)).collect()
    }

    /// The regularity: least `s` with `h(t) = tail(t)` for all `t >= s`.
    pub fn regularity(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn prefix(&self) -> &[BigInt] {
        &self.prefix
    }

    pub fn tail(&self) -> &Poly {
        &self.tail
    }

    pub fn is_artinian(&self) -> bool {
        self.tail.is_zero()
    }

    /// The tail as an admissible polynomial, when it is one.
    pub fn hilbert_polynomial(&self) -> Option<AdmissiblePolynomial> {
        AdmissiblePolynomial::new(self.tail.clone()).ok()
    }

    /// First derivative: `1` in degree 0, `h(t) - h(t-1)` afterwards.
    pub fn delta(&self) -> Result<Self> {
        let s = self.regularity();
        let mut prefix = Vec::with_capacity(s as usize + 1);
        prefix.push(BigInt::one());
        for t in 1..=s {
            let d = self.value(t) - self.value(t - 1);
            if d.is_negative() {
                return Err(Error::NegativeDerivative { degree: t as usize });
            }
            prefix.push(d);
        }
        let tail = self.tail.delta();
        if let Some(t) = first_negative(&tail, s + 1) {
            return Err(Error::NegativeDerivative { degree: t as usize });
        }
        Ok(Self::canonical(prefix, tail))
    }

    /// Integral: `1` in degree 0, then running sums.
    pub fn sigma(&self) -> Result<Self> {
        if !self.value(0).is_one() {
            return Err(Error::SigmaNeedsUnitStart);
        }
        let s = self.regularity();
        let mut prefix = Vec::with_capacity(s as usize);
        let mut running = BigInt::zero();
        for t in 0..s {
            running += self.value(t);
            prefix.push(running.clone());
        }
        let sums = self.tail.partial_sums();
        let correction = &running - sums.eval_int(s as i64 - 1);
        let tail = &sums + &Poly::constant(correction);
        Ok(Self::canonical(prefix, tail))
    }

    /// The pointwise order: `self(t) <= other(t)` for every `t`.
    pub fn leq(&self, other: &Self) -> bool {
        let bound = self.regularity().max(other.regularity());
        if (0..bound).any(|t| self.value(t) > other.value(t)) {
            return false;
        }
        let gap = &other.tail - &self.tail;
        first_negative(&gap, bound).is_none()
    }

    /// Macaulay's condition `h(0) = 1` and `h(t+1) <= (h(t)_t)^+_+` for `t >= 1`.
    pub fn is_admissible(&self) -> bool {
        if !self.value(0).is_one() {
            return false;
        }
        let s = self.regularity();
        let horizon = if self.tail.is_zero() {
            s
        } else {
            let Some(p) = self.hilbert_polynomial() else {
                return false;
            };
            s.max(rho_min(&p).max(1))
        };
        (1..=horizon).all(|t| self.value(t + 1) <= raise(&self.value(t), t))
    }

    /// Whether the function and its first derivative are both admissible, the
    /// numerical characterization of Hilbert functions of projective schemes.
    pub fn is_scheme_function(&self) -> bool {
        self.is_admissible()
            && match self.delta() {
                Ok(d) => d.is_admissible(),
                Err(_) => false,
            }
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.prefix.iter().map(ToString::to_string).collect();
        if vals.is_empty() {
            write!(f, "; {}", self.tail)
        } else {
            write!(f, "{} ; {}", vals.join(","), self.tail)
        }
    }
}

impl FromStr for HilbertFunction {
    type Err = Error;

    /// `v0,v1,...,v{s-1} ; <polynomial>`.
    fn from_str(text: &str) -> Result<Self> {
        let (head, tail) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse("Hilbert function needs `values ; polynomial`".into()))?;
        let head = head.trim();
        let prefix = if head.is_empty() {
            Vec::new()
        } else {
            head.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad value `{}`", v.trim())))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let tail = parse_poly(tail)?;
        HilbertFunction::new(prefix, tail).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::Parse(m),
            other => other,
        })
    }
}

fn clamp_to_gotzmann(p: &AdmissiblePolynomial, rho: u64) -> u64 {
    match p.gotzmann_u64() {
        Some(r) if rho >= r => r - 1,
        _ => rho,
    }
}

/// Backward recursion from `start_value` at degree `start` down to degree 0.
fn backward_from(start: u64, start_value: BigInt) -> Vec<BigInt> {
    let mut vals = vec![BigInt::zero(); start as usize + 1];
    vals[start as usize] = start_value;
    for t in (0..start).rev() {
        vals[t as usize] = lower(&vals[t as usize + 1], t + 1);
    }
    vals
}

/// `f^rho_p` without the lower-bound check on `rho`.
pub(crate) fn minimal_f_unchecked(p: &AdmissiblePolynomial, rho: u64) -> HilbertFunction {
    let rho = clamp_to_gotzmann(p, rho);
    let mut vals = backward_from(rho, p.eval(rho as i64));
    vals.pop();
    HilbertFunction::canonical(vals, p.poly().clone())
}

/// `g^rho_p` without the lower-bound check on `rho`; needs `rho >= 1`.
pub(crate) fn minimal_g_unchecked(p: &AdmissiblePolynomial, rho: u64) -> HilbertFunction {
    let vals = backward_from(rho - 1, p.eval(rho as i64 - 1) + 1);
    HilbertFunction::canonical(vals, p.poly().clone())
}

/// `f^rho_p`: `p(t)` from `rho` on, `(f(t+1)_{t+1})^-_-` below.
pub fn minimal_f(p: &AdmissiblePolynomial, rho: u64) -> Result<HilbertFunction> {
    let min = rho_min(p);
    if rho < min {
        return Err(Error::RhoTooSmall { rho, min });
    }
    Ok(minimal_f_unchecked(p, rho))
}

/// `g^rho_p`: like `f^rho_p` but with value `p(rho-1) + 1` in degree `rho - 1`.
pub fn minimal_g(p: &AdmissiblePolynomial, rho: u64) -> Result<HilbertFunction> {
    let min = rho_min(p).max(1);
    if rho < min {
        return Err(Error::RhoTooSmall { rho, min });
    }
    Ok(minimal_g_unchecked(p, rho))
}

/// `Σ f^t_{Δp}(t-1) <= p(t-1)`, with `Σ h(0) = 1`.
fn integral_fits(dp: &AdmissiblePolynomial, p: &AdmissiblePolynomial, t: u64) -> bool {
    let f = minimal_f_unchecked(dp, t);
    let total: BigInt = BigInt::one() + (1..t).map(|i| f.value(i)).sum::<BigInt>();
    total <= p.eval(t as i64 - 1)
}

/// `σ - 1` where `σ = min{t >= max(ρ_{Δp}, 1) : Σ f^t_{Δp}(t-1) <= p(t-1)}`.
fn sigma_search(p: &AdmissiblePolynomial, dp: &AdmissiblePolynomial, rho_dp: u64) -> u64 {
    let mut t = rho_dp.max(1);
    // σ - 1 never exceeds the Gotzmann number.
    let cap = p.gotzmann_u64().map(|r| r + 2);
    loop {
        if integral_fits(dp, p, t) {
            return t - 1;
        }
        t += 1;
        if let Some(cap) = cap {
            assert!(t <= cap, "integral test found no degree up to the Gotzmann number of {p}");
        }
    }
}

/// Regularity 0 means `h = p` in every degree, which needs `p(0) = h(0) = 1`.
fn floor_at_zero(p: &AdmissiblePolynomial, rho: u64) -> u64 {
    if rho == 0 && !p.eval(0).is_one() {
        1
    } else {
        rho
    }
}

/// Minimal regularity of admissible functions with Hilbert polynomial `p`.
///
/// Recurses on `Δp`, then scans downward from `ρ̄_p`, never over all degrees
/// up to the Gotzmann number.
pub fn rho_min(p: &AdmissiblePolynomial) -> u64 {
    let Some(dp) = p.derivative() else {
        return 1;
    };
    let rho_dp = rho_min(&dp);
    let mut rho = sigma_search(p, &dp, rho_dp);
    if rho + 1 > rho_dp {
        return floor_at_zero(p, rho);
    }
    while rho > 1 {
        let prev = p.eval(rho as i64 - 1);
        if prev.is_positive() && raise(&prev, rho - 1) >= p.eval(rho as i64) {
            rho -= 1;
        } else {
            break;
        }
    }
    if rho == 1 && p.eval(0).is_one() {
        rho = 0;
    }
    floor_at_zero(p, rho)
}

/// Minimal regularity of Hilbert functions of schemes with Hilbert polynomial `p`.
pub fn rho_bar(p: &AdmissiblePolynomial) -> u64 {
    let Some(dp) = p.derivative() else {
        return 1;
    };
    let rho_dp = rho_min(&dp);
    floor_at_zero(p, sigma_search(p, &dp, rho_dp))
}

/// `f̄ = f^{ρ̄}_p`.
pub fn f_bar(p: &AdmissiblePolynomial) -> HilbertFunction {
    minimal_f_unchecked(p, rho_bar(p))
}

/// The least element of `F(p, rho)`, or `None` when no scheme with Hilbert
/// polynomial `p` has a Hilbert function of regularity `rho`.
pub fn scheme_hf_minimum(p: &AdmissiblePolynomial, rho: u64) -> Option<HilbertFunction> {
    let bar = rho_bar(p);
    if rho < bar {
        return None;
    }
    if rho == bar {
        return Some(minimal_f_unchecked(p, bar));
    }
    let f = minimal_f_unchecked(p, rho);
    let candidate = if f.regularity() == rho {
        f
    } else {
        minimal_g_unchecked(p, rho)
    };
    candidate.is_scheme_function().then_some(candidate)
}

/// Convenience wrapper for [`HilbertFunction::delta`].
pub fn delta(h: &HilbertFunction) -> Result<HilbertFunction> {
    h.delta()
}

/// Convenience wrapper for [`HilbertFunction::sigma`].
pub fn sigma(h: &HilbertFunction) -> Result<HilbertFunction> {
    h.sigma()
}

pub fn leq(a: &HilbertFunction, b: &HilbertFunction) -> bool {
    a.leq(b)
}

pub fn is_admissible(h: &HilbertFunction) -> bool {
    h.is_admissible()
}
