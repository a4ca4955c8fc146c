//! Minimal Castelnuovo-Mumford regularities.
//!
//! Every query reduces to `m_u` for a Hilbert function `u`: with `ρ` the
//! regularity of `u` and `ρ̃ = min{t ≥ ρ̄_{Δp} : f^t_{Δp} ⪯ Δu}`,
//! `m_u = max(ρ + 1, m_{f^ρ̃_{Δp}})`, and `m_u = ρ + 1` for constant `p`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert_function::{
    minimal_f_unchecked, rho_bar, rho_min, scheme_hf_minimum, HilbertFunction,
};
use crate::hilbert_poly::AdmissiblePolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Query {
    Global,
    PerRho { rho: u64 },
    PerHf { hf: String },
    Ambient { n: u64, rho_n: u64 },
}

/// One level of the recursion on `Δ^i p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub polynomial: String,
    pub gotzmann_number: String,
    pub rho_min: u64,
    pub rho_bar: u64,
    /// Regularity of the Hilbert function handled at this level.
    pub rho: u64,
    pub rho_tilde: Option<u64>,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub polynomial: String,
    pub gotzmann_number: String,
    pub rho_min: u64,
    pub rho_bar: u64,
    pub query: Query,
    /// The Hilbert function whose minimal regularity is the answer.
    pub hilbert_function: String,
    pub answer: u64,
    /// `M + 1 <= answer <= M + 2`.
    pub lower_bound: u64,
    pub upper_bound: u64,
    pub trace: Vec<TraceRow>,
}

/// `ρ̃_u = min{t ≥ ρ̄_{Δp} : f^t_{Δp} ⪯ Δu}`, searched up to
/// `max(ρ_u + 1, ρ̄_{Δp})` where the inequality is forced.
pub fn rho_tilde(dp: &AdmissiblePolynomial, du: &HilbertFunction, rho_u: u64) -> Result<u64> {
    let start = rho_bar(dp);
    let cap = start.max(rho_u + 1);
    (start..=cap)
        .find(|&t| minimal_f_unchecked(dp, t).leq(du))
        .ok_or_else(|| {
            Error::InternalInconsistency(format!(
                "no f^t of {dp} below {du} for t in {start}..={cap}"
            ))
        })
}

fn row_for(p: &AdmissiblePolynomial, rho: u64) -> TraceRow {
    TraceRow {
        polynomial: p.to_string(),
        gotzmann_number: p.gotzmann_number().to_string(),
        rho_min: rho_min(p),
        rho_bar: rho_bar(p),
        rho,
        rho_tilde: None,
        m: 0,
    }
}

fn descend(u: &HilbertFunction, p: &AdmissiblePolynomial, trace: &mut Vec<TraceRow>) -> Result<u64> {
    let rho = u.regularity();
    let at = trace.len();
    trace.push(row_for(p, rho));
    let m = match p.derivative() {
        None => rho + 1,
        Some(dp) => {
            let du = u.delta()?;
            let b = rho_tilde(&dp, &du, rho)?;
            trace[at].rho_tilde = Some(b);
            let sub = minimal_f_unchecked(&dp, b);
            (rho + 1).max(descend(&sub, &dp, trace)?)
        }
    };
    trace[at].m = m;
    Ok(m)
}

/// `M = max(ρ, ρ̄_{Δp}, ..., ρ̄_{Δ^k p})`.
fn bound_base(p: &AdmissiblePolynomial, rho: u64) -> u64 {
    let mut m = rho;
    let mut cur = p.derivative();
    while let Some(q) = cur {
        m = m.max(rho_bar(&q));
        cur = q.derivative();
    }
    m
}

fn admissible_tail(u: &HilbertFunction) -> Result<AdmissiblePolynomial> {
    let p = AdmissiblePolynomial::new(u.tail().clone())?;
    if p.is_linear_variety() {
        return Err(Error::LinearVariety);
    }
    Ok(p)
}

fn report(p: &AdmissiblePolynomial, u: &HilbertFunction, query: Query) -> Result<RegularityReport> {
    let mut trace = Vec::new();
    let answer = descend(u, p, &mut trace)?;
    let base = bound_base(p, u.regularity());
    if answer < base + 1 || answer > base + 2 {
        return Err(Error::InternalInconsistency(format!(
            "m = {answer} outside [{}, {}] for {u}",
            base + 1,
            base + 2
        )));
    }
    if BigUint::from(answer) > *p.gotzmann_number() {
        return Err(Error::InternalInconsistency(format!(
            "m = {answer} exceeds the Gotzmann number of {p}"
        )));
    }
    Ok(RegularityReport {
        polynomial: p.to_string(),
        gotzmann_number: p.gotzmann_number().to_string(),
        rho_min: rho_min(p),
        rho_bar: rho_bar(p),
        query,
        hilbert_function: u.to_string(),
        answer,
        lower_bound: base + 1,
        upper_bound: base + 2,
        trace,
    })
}

/// `m_u` for the Hilbert function `u` of a scheme.
pub fn min_reg_for_hf(u: &HilbertFunction) -> Result<RegularityReport> {
    if !u.is_admissible() {
        return Err(Error::NotSchemeHf(format!("{u} violates Macaulay's bound")));
    }
    match u.delta() {
        Ok(d) if d.is_admissible() => {}
        Ok(d) => return Err(Error::NotSchemeHf(format!("first difference {d} violates Macaulay's bound"))),
        Err(e) => return Err(Error::NotSchemeHf(e.to_string())),
    }
    let p = admissible_tail(u)?;
    report(&p, u, Query::PerHf { hf: u.to_string() })
}

/// `m_{p(z)}`: the minimal regularity of a scheme with Hilbert polynomial `p`.
pub fn min_reg(p: &AdmissiblePolynomial) -> Result<RegularityReport> {
    if p.is_linear_variety() {
        return Err(Error::LinearVariety);
    }
    let f = minimal_f_unchecked(p, rho_bar(p));
    report(p, &f, Query::Global)
}

/// The closed form for `m^ρ_p` in terms of `m̄`.
pub fn closed_form(p: &AdmissiblePolynomial, rho: u64, m_bar: u64) -> u64 {
    if rho + 2 <= m_bar {
        m_bar
    } else if minimal_f_unchecked(p, rho).regularity() == rho {
        rho + 1
    } else {
        rho + 2
    }
}

/// `m^ρ_p`: minimal regularity of schemes with Hilbert polynomial `p` whose
/// Hilbert function has regularity `rho`.
pub fn min_reg_for_rho(p: &AdmissiblePolynomial, rho: u64) -> Result<RegularityReport> {
    if p.is_linear_variety() {
        return Err(Error::LinearVariety);
    }
    let u = scheme_hf_minimum(p, rho).ok_or(Error::EmptyClass { rho })?;
    let rep = report(p, &u, Query::PerRho { rho })?;
    let m_bar = min_reg(p)?.answer;
    let expected = closed_form(p, rho, m_bar);
    if expected != rep.answer {
        return Err(Error::InternalInconsistency(format!(
            "recursion gives {} but the closed form gives {expected} for {p} at rho = {rho}",
            rep.answer
        )));
    }
    Ok(rep)
}

/// `ρ_n = min{ρ ≥ ρ̄ : f^ρ(1) ≤ n + 1}`, using that `f^ρ(1)` does not increase with `ρ`.
fn rho_for_ambient(p: &AdmissiblePolynomial, n: u64) -> u64 {
    let fits = |rho: u64| minimal_f_unchecked(p, rho).value(1) <= (n + 1).into();
    let lo = rho_bar(p);
    if fits(lo) {
        return lo;
    }
    // Exponential then binary search in (lo, hi].
    let mut step = 1u64;
    let mut bad = lo;
    let mut hi = lo + 1;
    while !fits(hi) {
        bad = hi;
        step *= 2;
        hi = lo + step;
        if let Some(r) = p.gotzmann_u64() {
            hi = hi.min(r - 1);
        }
    }
    while hi - bad > 1 {
        let mid = bad + (hi - bad) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            bad = mid;
        }
    }
    hi
}

/// Minimal regularity of a subscheme of `P^n` with Hilbert polynomial `p`.
pub fn min_reg_in_ambient(p: &AdmissiblePolynomial, n: u64) -> Result<RegularityReport> {
    if p.is_linear_variety() {
        return Err(Error::LinearVariety);
    }
    let k = p.degree() as u64;
    // The lex-segment ideal of p lives in P^{k+1}, so f^{r-1}(1) = k + 2 and
    // n >= k + 1 is also sufficient.
    if n < k + 1 {
        return Err(Error::AmbientTooSmall {
            n,
            reason: format!("a scheme with Hilbert polynomial of degree {k} needs n >= {}", k + 1),
        });
    }
    let rho_n = rho_for_ambient(p, n);
    let mut rep = min_reg_for_rho(p, rho_n)?;
    rep.query = Query::Ambient { n, rho_n };
    Ok(rep)
}

impl fmt::Display for TraceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = self.rho_tilde.map_or("-".to_string(), |t| t.to_string());
        write!(
            f,
            "{:<24} {:>8} {:>5} {:>5} {:>5} {:>5} {:>5}",
            self.polynomial, self.gotzmann_number, self.rho_min, self.rho_bar, self.rho, tilde, self.m
        )
    }
}

/// Text layout of a recursion trace: one row per derivative.
pub fn format_trace(trace: &[TraceRow]) -> String {
    let mut out = format!(
        "{:<24} {:>8} {:>5} {:>5} {:>5} {:>5} {:>5}\n",
        "p(z)", "r", "rho", "rho_", "rho", "rho~", "m"
    );
    for row in trace {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}
