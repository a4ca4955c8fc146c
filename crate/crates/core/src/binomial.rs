//! Exact binomial coefficients and Macaulay expansions.
//!
//! A positive integer `a` has a unique expansion in base `t`
//!
//! ```text
//! a = C(k(t), t) + C(k(t-1), t-1) + ... + C(k(j), j),   k(t) > ... > k(j) >= j >= 1
//! ```
//!
//! and the two shift operators `(a_t)^+_+` and `(a_t)^-_-` raise, resp. lower,
//! both entries of every binomial by one. They bound the growth of Hilbert
//! functions (Macaulay) and drive the backward recursion for minimal functions.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `C(n, m)`, zero whenever `n < m` or `m < 0`, and `C(n, 0) = 1` for `n >= 0`.
pub fn binom(n: i64, m: i64) -> BigUint {
    if m < 0 || n < m || n < 0 {
        return BigUint::zero();
    }
    binom_big(&BigUint::from(n as u64), m as u64)
}

/// `C(n, m)` for a big top entry and a machine-sized bottom entry.
pub(crate) fn binom_big(n: &BigUint, m: u64) -> BigUint {
    let big_m = BigUint::from(m);
    if *n < big_m {
        return BigUint::zero();
    }
    let rest = n - &big_m;
    // Use the shorter product.
    let k = match rest.to_u64() {
        Some(r) if r < m => r,
        _ => m,
    };
    let mut acc = BigUint::one();
    let mut top = n.clone();
    for d in 1..=k {
        acc *= &top;
        acc /= BigUint::from(d);
        top -= 1u32;
    }
    acc
}

/// One binomial `C(top, bottom)` of an expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialTerm {
    pub top: BigUint,
    pub bottom: u64,
}

/// The Macaulay expansion of a positive integer in a given base.
///
/// Binomials with `top > bottom` are kept explicitly; the trailing run of
/// `C(i, i) = 1` terms is stored as a count since it can be as long as the
/// base itself and both shift operators map it to itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialExpansion {
    base: u64,
    head: Vec<BinomialTerm>,
    unit_run: u64,
}

impl BinomialExpansion {
    pub fn base(&self) -> u64 {
        self.base
    }

    /// Number of binomials in the expansion, `t - j + 1`.
    pub fn len(&self) -> u64 {
        self.head.len() as u64 + self.unit_run
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The lowest bottom index `j`.
    pub fn lowest_index(&self) -> u64 {
        self.base + 1 - self.len()
    }

    /// All binomials, from bottom index `t` down to `j`.
    pub fn terms(&self) -> impl Iterator<Item = BinomialTerm> + '_ {
        let start = self.base - self.head.len() as u64;
        self.head.iter().cloned().chain((0..self.unit_run).map(move |s| {
            let i = start - s;
            BinomialTerm {
                top: BigUint::from(i),
                bottom: i,
            }
        }))
    }

    /// The top entry `k(i)` paired with bottom index `i`, if present.
    pub fn top_at(&self, i: u64) -> Option<BigUint> {
        if i > self.base || i < self.lowest_index() {
            return None;
        }
        let pos = (self.base - i) as usize;
        Some(match self.head.get(pos) {
            Some(term) => term.top.clone(),
            None => BigUint::from(i),
        })
    }

    pub fn value(&self) -> BigUint {
        let head: BigUint = self.head.iter().map(|b| binom_big(&b.top, b.bottom)).sum();
        head + self.unit_run
    }

    /// `(a_t)^+_+`.
    pub fn plus_plus(&self) -> BigUint {
        let head: BigUint = self
            .head
            .iter()
            .map(|b| binom_big(&(&b.top + 1u32), b.bottom + 1))
            .sum();
        head + self.unit_run
    }

    /// `(a_t)^-_-`.
    pub fn minus_minus(&self) -> BigUint {
        let head: BigUint = self
            .head
            .iter()
            .map(|b| binom_big(&(&b.top - 1u32), b.bottom - 1))
            .sum();
        head + self.unit_run
    }
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for term in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "C({},{})", term.top, term.bottom)?;
        }
        Ok(())
    }
}

fn positive(a: &BigInt) -> Result<BigUint> {
    match a.sign() {
        Sign::Plus => Ok(a.magnitude().clone()),
        _ => Err(Error::InvalidArgument(format!(
            "Macaulay expansion needs a positive integer, got {a}"
        ))),
    }
}

/// Largest `k >= i` with `C(k, i) <= rem`; requires `rem >= 1`.
fn largest_top(rem: &BigUint, i: u64) -> BigUint {
    let low = BigUint::from(i);
    // Exponential search for an upper bracket.
    let mut gap = BigUint::one();
    while binom_big(&(&low + &gap), i) <= *rem {
        gap <<= 1;
    }
    // Invariant: C(low + lo, i) <= rem < C(low + hi, i).
    let mut lo = BigUint::zero();
    let mut hi = gap;
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if binom_big(&(&low + &mid), i) <= *rem {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    low + lo
}

/// Greedy top-down Macaulay expansion of `a >= 1` in base `t >= 1`.
pub fn macaulay_expand(a: &BigInt, t: u64) -> Result<BinomialExpansion> {
    let mut rem = positive(a)?;
    if t == 0 {
        return Err(Error::InvalidArgument(
            "Macaulay expansion needs a positive base".into(),
        ));
    }
    let mut head = Vec::new();
    let mut i = t;
    loop {
        if rem <= BigUint::from(i) {
            // rem ones: C(i,i) + C(i-1,i-1) + ...
            let unit_run = rem.to_u64().expect("bounded by the base");
            return Ok(BinomialExpansion {
                base: t,
                head,
                unit_run,
            });
        }
        let top = largest_top(&rem, i);
        rem -= binom_big(&top, i);
        head.push(BinomialTerm { top, bottom: i });
        if rem.is_zero() {
            return Ok(BinomialExpansion {
                base: t,
                head,
                unit_run: 0,
            });
        }
        // The greedy remainder is below C(k(i), i-1), so i - 1 >= 1 here.
        debug_assert!(i > 1);
        i -= 1;
    }
}

/// `(a_t)^+_+` for `a >= 1`, `t >= 1`.
pub fn plus_plus(a: &BigInt, t: u64) -> Result<BigInt> {
    Ok(BigInt::from(macaulay_expand(a, t)?.plus_plus()))
}

/// `(a_t)^-_-` for `a >= 1`, `t >= 1`.
pub fn minus_minus(a: &BigInt, t: u64) -> Result<BigInt> {
    Ok(BigInt::from(macaulay_expand(a, t)?.minus_minus()))
}

/// `(a_t)^+_+` extended by `0 -> 0`; used where Hilbert function values may vanish.
pub(crate) fn raise(a: &BigInt, t: u64) -> BigInt {
    if a.sign() != Sign::Plus {
        return BigInt::zero();
    }
    plus_plus(a, t).expect("positive value and base")
}

/// `(a_t)^-_-` extended by `0 -> 0`.
pub(crate) fn lower(a: &BigInt, t: u64) -> BigInt {
    if a.sign() != Sign::Plus {
        return BigInt::zero();
    }
    minus_minus(a, t).expect("positive value and base")
}
