//! Admissible Hilbert polynomials and their Gotzmann decomposition
//!
//! ```text
//! p(z) = C(z+k_1, k_1) + C(z+k_2-1, k_2) + ... + C(z+k_r-(r-1), k_r),   k_1 >= ... >= k_r >= 0
//! ```
//!
//! The decomposition is stored in run-length form. A run of `m` equal values
//! `k` starting after `a` earlier terms sums to
//! `C(z+k-a+1, k+1) - C(z+k-a-m+1, k+1)`, and `m` is forced to be `k!` times
//! the leading coefficient of the current remainder, so the whole
//! decomposition costs `deg p + 1` polynomial subtractions however large `r`
//! is.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, Poly};

/// `multiplicity` consecutive entries equal to `k` in the Gotzmann k-vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GotzmannRun {
    pub k: u64,
    pub multiplicity: BigUint,
}

/// A Hilbert polynomial of some projective scheme, with its Gotzmann form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePolynomial {
    poly: Poly,
    runs: Vec<GotzmannRun>,
    gotzmann: BigUint,
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * x)
}

/// Sum of the Gotzmann binomials for indices `offset+1 ..= offset+m`, all with value `k`.
fn run_polynomial(k: u64, offset: &BigInt, m: &BigInt) -> Poly {
    if k == 0 {
        return Poly::from_coeffs(vec![BigRational::from_integer(m.clone())]);
    }
    let kk = BigInt::from(k);
    let upper = &kk - offset + 1;
    let lower = &kk - offset - m + 1;
    &Poly::binomial(&upper, k + 1) - &Poly::binomial(&lower, k + 1)
}

impl AdmissiblePolynomial {
    /// Validates `poly` by computing its Gotzmann decomposition.
    ///
    /// Accepts every admissible polynomial including linear varieties (`r = 1`);
    /// user-facing entry points reject those through [`parse_polynomial`].
    pub fn new(poly: Poly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::NotAdmissible(
                "the zero polynomial has no Gotzmann decomposition".into(),
            ));
        }
        if !poly.is_integer_valued() {
            return Err(Error::NotAdmissible(format!(
                "{poly} does not take integer values at integers"
            )));
        }
        let mut rem = poly.clone();
        let mut runs = Vec::new();
        let mut offset = BigInt::zero();
        while let Some(k) = rem.degree() {
            let lc = rem.leading_coefficient();
            if !lc.is_positive() {
                return Err(Error::NotAdmissible(format!(
                    "remainder {rem} after {offset} Gotzmann terms has non-positive leading coefficient"
                )));
            }
            let m = lc * BigRational::from_integer(factorial(k as u64));
            if !m.is_integer() {
                return Err(Error::NotAdmissible(format!(
                    "remainder {rem} is not a sum of Gotzmann binomials"
                )));
            }
            let m = m.to_integer();
            rem = &rem - &run_polynomial(k as u64, &offset, &m);
            if rem.degree().is_some_and(|d| d >= k) {
                return Err(Error::InternalInconsistency(format!(
                    "Gotzmann run for k = {k} did not lower the degree"
                )));
            }
            offset += &m;
            runs.push(GotzmannRun {
                k: k as u64,
                multiplicity: m.to_biguint().expect("positive"),
            });
        }
        let gotzmann = offset.to_biguint().expect("positive");
        Ok(AdmissiblePolynomial {
            poly,
            runs,
            gotzmann,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonzero")
    }

    pub fn gotzmann_runs(&self) -> &[GotzmannRun] {
        &self.runs
    }

    pub fn gotzmann_number(&self) -> &BigUint {
        &self.gotzmann
    }

    /// `r` as a machine integer, when it fits.
    pub fn gotzmann_u64(&self) -> Option<u64> {
        u64::try_from(&self.gotzmann).ok()
    }

    pub fn is_linear_variety(&self) -> bool {
        self.gotzmann.is_one()
    }

    pub fn eval(&self, t: i64) -> BigInt {
        self.poly.eval_int(t)
    }

    /// `p(z) - p(z-1)`; `None` for constants.
    pub fn derivative(&self) -> Option<AdmissiblePolynomial> {
        if self.degree() == 0 {
            return None;
        }
        let d = self.poly.delta();
        Some(AdmissiblePolynomial::new(d).expect("first difference of an admissible polynomial is admissible"))
    }

    /// `p(z) + c` for `c >= 0`.
    pub fn add_constant(&self, c: u64) -> AdmissiblePolynomial {
        let p = &self.poly + &Poly::constant(c);
        AdmissiblePolynomial::new(p).expect("adding a point keeps admissibility")
    }

    /// Rebuilds `p(z)` from the runs, independently of the stored coefficients.
    pub fn gotzmann_form(&self) -> Poly {
        let mut acc = Poly::zero();
        let mut offset = BigInt::zero();
        for run in &self.runs {
            let m = BigInt::from(run.multiplicity.clone());
            acc = &acc + &run_polynomial(run.k, &offset, &m);
            offset += m;
        }
        acc
    }

    /// The first `limit` entries of the flattened k-vector.
    pub fn k_vector_prefix(&self, limit: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for run in &self.runs {
            let mut left = run.multiplicity.clone();
            while !left.is_zero() && out.len() < limit {
                out.push(run.k);
                left -= 1u32;
            }
        }
        out
    }
}

impl fmt::Display for AdmissiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Parses and validates a Hilbert polynomial, rejecting linear varieties.
pub fn parse_polynomial(text: &str) -> Result<AdmissiblePolynomial> {
    let p = AdmissiblePolynomial::new(parse_poly(text)?)?;
    if p.is_linear_variety() {
        return Err(Error::LinearVariety);
    }
    Ok(p)
}

pub fn gotzmann_number(p: &AdmissiblePolynomial) -> BigUint {
    p.gotzmann_number().clone()
}

pub fn derivative(p: &AdmissiblePolynomial) -> Option<AdmissiblePolynomial> {
    p.derivative()
}

pub fn evaluate(p: &AdmissiblePolynomial, t: i64) -> BigInt {
    p.eval(t)
}
