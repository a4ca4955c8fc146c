//! Explicit saturated strongly stable ideals with prescribed Hilbert function
//! and regularity: single-term removal, expanded lifting, ideal graft, and
//! the recursive witness for `m_u`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::borel::{cmp_degrevlex, lex_ideal_from_values, terms_of_degree, IdealJson, StronglyStableIdeal, Term};
use crate::error::{Error, Result};
use crate::hilbert_function::{minimal_f_unchecked, HilbertFunction};
use crate::hilbert_poly::AdmissiblePolynomial;
use crate::poly::Poly;
use crate::regularity::{min_reg_for_hf, rho_tilde};

/// Version of the certificate JSON layout.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    ArtinianLex { vars: usize, hilbert_function: String },
    Lift { vars: usize },
    Extend { from: usize, to: usize },
    Lgh { degree: u32 },
    Removal { degree: u32, t_bar: u32, term: String },
    Truncate { degree: u32 },
    Graft { m: u32, s: u32 },
    SubWitness { hilbert_function: String, regularity: u32 },
}

/// A saturated strongly stable ideal with the Hilbert function and regularity
/// it is claimed to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub ideal: StronglyStableIdeal,
    pub claimed_hf: HilbertFunction,
    pub claimed_reg: u32,
    pub log: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema: u32,
    pub ideal: IdealJson,
    pub hilbert_function: String,
    pub regularity: u32,
    pub log: Vec<Step>,
}

impl WitnessCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            schema: SCHEMA,
            ideal: self.ideal.to_json(),
            hilbert_function: self.claimed_hf.to_string(),
            regularity: self.claimed_reg,
            log: self.log.clone(),
        }
    }

    pub fn from_json(c: &CertificateJson) -> Result<Self> {
        if c.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported certificate schema {}", c.schema)));
        }
        Ok(WitnessCertificate {
            ideal: StronglyStableIdeal::from_json(&c.ideal)?,
            claimed_hf: c.hilbert_function.parse()?,
            claimed_reg: c.regularity,
            log: c.log.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// The first failed check, if any.
    pub fn failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, result: std::result::Result<(), String>) -> bool {
        let passed = result.is_ok();
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: result.err().unwrap_or_default(),
        });
        passed
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn member(gens: &[Vec<u32>], t: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, t))
}

fn show(e: &[u32]) -> String {
    Term::new(e.to_vec()).to_string()
}

/// Recomputes everything a certificate claims directly from its raw data.
pub fn verify_certificate(c: &CertificateJson) -> VerificationReport {
    let mut checks = Checks(Vec::new());
    let n = c.ideal.vars;
    let gens = &c.ideal.generators;

    let shape_ok = checks.push(
        "exponent vectors",
        match gens.iter().find(|g| g.len() != n) {
            Some(g) => Err(format!("generator {g:?} does not have {n} exponents")),
            None => Ok(()),
        },
    );
    if !shape_ok {
        return VerificationReport {
            passed: false,
            checks: checks.0,
        };
    }

    let mut minimal = Ok(());
    'outer: for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            if i != j && divides(a, b) {
                minimal = Err(format!("{} divides {}", show(a), show(b)));
                break 'outer;
            }
        }
    }
    checks.push("minimal generators", minimal);

    let mut stable = Ok(());
    'stable: for g in gens {
        for j in 0..n {
            if g[j] == 0 {
                continue;
            }
            for i in j + 1..n {
                let mut moved = g.clone();
                moved[j] -= 1;
                moved[i] += 1;
                if !member(gens, &moved) {
                    stable = Err(format!("{} is missing although {} is a generator", show(&moved), show(g)));
                    break 'stable;
                }
            }
        }
    }
    let stable_ok = checks.push("strongly stable", stable);

    checks.push(
        "saturated",
        match gens.iter().find(|g| g.first().is_some_and(|&a| a > 0)) {
            Some(g) => Err(format!("generator {} involves x0", show(g))),
            None => Ok(()),
        },
    );

    let reg = gens.iter().map(|g| g.iter().sum::<u32>()).max().unwrap_or(0);
    checks.push(
        "regularity",
        if reg == c.regularity {
            Ok(())
        } else {
            Err(format!("generators reach degree {reg}, claimed {}", c.regularity))
        },
    );

    let claimed: std::result::Result<HilbertFunction, String> =
        c.hilbert_function.parse().map_err(|e: Error| e.to_string());
    match &claimed {
        Err(e) => {
            checks.push("hilbert function", Err(e.clone()));
        }
        Ok(h) => {
            let top = (reg + 3).max(h.regularity() as u32 + 1);
            let mut by_count = Ok(());
            for d in 0..=top {
                let count = terms_of_degree(n, d)
                    .iter()
                    .filter(|t| !member(gens, t.exponents()))
                    .count();
                if BigInt::from(count) != h.value(d as u64) {
                    by_count = Err(format!(
                        "degree {d}: {count} terms outside the ideal, claimed {}",
                        h.value(d as u64)
                    ));
                    break;
                }
            }
            checks.push("hilbert function by enumeration", by_count);
            let by_vectors = if stable_ok {
                StronglyStableIdeal::from_json(&c.ideal)
                    .and_then(|i| i.hilbert_function())
                    .map_err(|e| e.to_string())
                    .and_then(|g| {
                        if &g == h {
                            Ok(())
                        } else {
                            Err(format!("height vectors give {g}, claimed {h}"))
                        }
                    })
            } else {
                Err("skipped: ideal is not strongly stable".into())
            };
            checks.push("hilbert function by height vectors", by_vectors);
        }
    }

    VerificationReport {
        passed: checks.0.iter().all(|c| c.passed),
        checks: checks.0,
    }
}

pub fn verify_witness(c: &WitnessCertificate) -> VerificationReport {
    verify_certificate(&c.to_json())
}

fn certify(ideal: StronglyStableIdeal, claimed_hf: HilbertFunction, claimed_reg: u32, log: Vec<Step>) -> Result<WitnessCertificate> {
    let cert = WitnessCertificate {
        ideal,
        claimed_hf,
        claimed_reg,
        log,
    };
    let report = verify_witness(&cert);
    match report.failure() {
        None => Ok(cert),
        Some(check) => Err(Error::VerificationFailure(format!("{}: {}", check.name, check.detail))),
    }
}

/// `h + 1` in every degree `>= from`.
fn plus_one_from(h: &HilbertFunction, from: u64) -> Result<HilbertFunction> {
    let top = h.regularity().max(from);
    let prefix = (0..top)
        .map(|t| h.value(t) + if t >= from { 1 } else { 0 })
        .collect();
    HilbertFunction::new(prefix, h.tail() + &Poly::constant(1))
}

/// The degrevlex-least Borel-minimal term `x^β x0^b` of `J_s` with `|β| = t_bar`, `b > 0`,
/// and the saturation of the ideal generated by the rest of `J_s`.
fn remove_in_slice(j: &StronglyStableIdeal, s: u32, t_bar: u32) -> Result<(StronglyStableIdeal, Term)> {
    let no_term = Error::NoRemovableTerm {
        degree: t_bar,
        slice: s,
    };
    if t_bar >= s {
        return Err(no_term);
    }
    let slice = j.degree_slice(s);
    let tau = slice
        .iter()
        .filter(|t| t.exponents()[0] == s - t_bar && slice.is_minimal(t))
        .min_by(|a, b| cmp_degrevlex(a, b))
        .cloned()
        .ok_or(no_term)?;
    let rest: Vec<Term> = slice.iter().filter(|t| **t != tau).cloned().collect();
    let ideal = StronglyStableIdeal::new(j.nvars(), rest)
        .map_err(|e| Error::InternalInconsistency(format!("removing {tau}: {e}")))?;
    Ok((ideal.saturate(), tau))
}

/// Removes a Borel-minimal term of `J_s` whose `x0`-free part has degree
/// `t_bar`; the Hilbert function rises by one from `t_bar` on.
pub fn remove_minimal_term(j: &StronglyStableIdeal, s: u32, t_bar: u32) -> Result<WitnessCertificate> {
    if !j.is_saturated() {
        return Err(Error::NotSaturated(j.to_string()));
    }
    let m = j.regularity();
    if s < m {
        return Err(Error::PreconditionViolation(format!("slice degree {s} is below the regularity {m}")));
    }
    let before = j.hilbert_function()?;
    let (ideal, tau) = remove_in_slice(j, s, t_bar)?;
    let claimed_hf = plus_one_from(&before, t_bar as u64)?;
    let claimed_reg = if t_bar == m { m + 1 } else { m };
    let log = vec![Step::Removal {
        degree: s,
        t_bar,
        term: tau.to_string(),
    }];
    certify(ideal, claimed_hf, claimed_reg, log)
}

fn scheme_tail(f: &HilbertFunction) -> Result<AdmissiblePolynomial> {
    if !f.is_scheme_function() {
        return Err(Error::NotSchemeHf(f.to_string()));
    }
    AdmissiblePolynomial::new(f.tail().clone())
}

fn lift_expanded(f: &HilbertFunction, jz: &StronglyStableIdeal, log: &mut Vec<Step>) -> Result<StronglyStableIdeal> {
    let pre = |msg: String| Error::PreconditionViolation(msg);
    let p = scheme_tail(f).map_err(|e| pre(e.to_string()))?;
    if !jz.is_saturated() {
        return Err(pre(format!("{jz} is not saturated")));
    }
    let g = jz.hilbert_function()?;
    let df = f.delta()?;
    let dp = p.poly().delta();
    if g.tail() != &dp {
        return Err(pre(format!("section polynomial {} differs from {dp}", g.tail())));
    }
    if !g.leq(&df) {
        return Err(pre(format!("{g} is not below {df}")));
    }
    if f.value(1) > BigInt::from(jz.nvars() + 1) {
        return Err(pre(format!("{f} needs more than {} variables", jz.nvars() + 1)));
    }
    let rho = f.regularity() as u32;
    let m = jz.regularity().max(rho + 1);

    let mut j = jz.artinian_lift();
    log.push(Step::Lift { vars: j.nvars() });
    let gap = (f.tail() - j.hilbert_function()?.tail()).constant_term();
    let gap = gap
        .to_integer()
        .to_u64()
        .filter(|_| gap.is_integer())
        .ok_or_else(|| pre(format!("{f} does not exceed the lifted function by a constant")))?;
    for _ in 0..=gap {
        let slice = j.degree_slice(m).lgh()?;
        log.push(Step::Lgh { degree: m });
        let i = StronglyStableIdeal::generated_by(&slice).saturate();
        let h = i.hilbert_function()?;
        if &h == f {
            if i.regularity() != m {
                return Err(Error::InternalInconsistency(format!(
                    "expanded lifting ended with regularity {} instead of {m}",
                    i.regularity()
                )));
            }
            return Ok(i);
        }
        let t_bar = (0..m)
            .find(|&t| h.value(t as u64) < f.value(t as u64))
            .ok_or_else(|| Error::InternalInconsistency(format!("{h} is not below {f} before degree {m}")))?;
        let (next, tau) = remove_in_slice(&i, m, t_bar)?;
        log.push(Step::Removal {
            degree: m,
            t_bar,
            term: tau.to_string(),
        });
        j = next;
    }
    Err(Error::InternalInconsistency(format!(
        "expanded lifting did not reach {f} after {gap} removals"
    )))
}

/// A saturated strongly stable ideal with Hilbert function `f` and regularity
/// `max(reg(Jz), ρ_f + 1)`, built over the section ideal `jz` in `x1..xn`.
pub fn expanded_lifting(f: &HilbertFunction, jz: &StronglyStableIdeal) -> Result<WitnessCertificate> {
    let mut log = Vec::new();
    let ideal = lift_expanded(f, jz, &mut log)?;
    let reg = jz.regularity().max(f.regularity() as u32 + 1);
    certify(ideal, f.clone(), reg, log)
}

fn witness_ideal(u: &HilbertFunction, log: &mut Vec<Step>) -> Result<StronglyStableIdeal> {
    let p = AdmissiblePolynomial::new(u.tail().clone())?;
    let rho = u.regularity();
    let n = u
        .value(1)
        .to_usize()
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(|| Error::InvalidArgument(format!("{u} has no usable value in degree 1")))?;
    let du = u.delta()?;
    match p.derivative() {
        None => {
            let a = lex_ideal_from_values(n, &du.values(rho + 1))?;
            log.push(Step::ArtinianLex {
                vars: n,
                hilbert_function: du.to_string(),
            });
            let j = a.artinian_lift();
            log.push(Step::Lift { vars: j.nvars() });
            Ok(j)
        }
        Some(dp) => {
            let b = rho_tilde(&dp, &du, rho)?;
            let sub = minimal_f_unchecked(&dp, b);
            let w = witness_ideal(&sub, log)?;
            log.push(Step::SubWitness {
                hilbert_function: sub.to_string(),
                regularity: w.regularity(),
            });
            let jz = if w.nvars() < n {
                log.push(Step::Extend { from: w.nvars(), to: n });
                w.extend_variables(n, true)?
            } else {
                w
            };
            lift_expanded(u, &jz, log)
        }
    }
}

/// A verified ideal realizing `u` with the least possible regularity `m_u`.
pub fn witness_min_reg(u: &HilbertFunction) -> Result<WitnessCertificate> {
    let expected = min_reg_for_hf(u)?.answer;
    let mut log = Vec::new();
    let ideal = witness_ideal(u, &mut log)?;
    if ideal.regularity() as u64 != expected {
        return Err(Error::InternalInconsistency(format!(
            "witness for {u} has regularity {}, expected {expected}",
            ideal.regularity()
        )));
    }
    certify(ideal, u.clone(), expected as u32, log)
}

/// A saturated strongly stable ideal whose Hilbert function is `w` below
/// degree `m` and `q` from `m` on, with regularity at most `max(m, reg(Iq))`.
pub fn ideal_graft(iq: &StronglyStableIdeal, iw: &StronglyStableIdeal, m: u32) -> Result<WitnessCertificate> {
    let pre = |msg: String| Error::PreconditionViolation(msg);
    if m <= 1 {
        return Err(pre(format!("graft degree {m} must exceed 1")));
    }
    if !iq.is_saturated() || !iw.is_saturated() {
        return Err(pre("both ideals must be saturated".into()));
    }
    let q = iq.hilbert_function()?;
    let w = iw.hilbert_function()?;
    let (a, b) = ((m - 1) as u64, (m - 2) as u64);
    if w.value(a) != q.value(a) || w.value(b) > q.value(b) {
        return Err(pre(format!(
            "need w({a}) = q({a}) and w({b}) <= q({b}) for w = {w}, q = {q}"
        )));
    }
    let mut log = Vec::new();
    let n = iq.nvars().max(iw.nvars());
    let widen = |i: &StronglyStableIdeal, log: &mut Vec<Step>| -> Result<StronglyStableIdeal> {
        if i.nvars() < n {
            log.push(Step::Extend { from: i.nvars(), to: n });
            i.extend_variables(n, true)
        } else {
            Ok(i.clone())
        }
    };
    let iq = widen(iq, &mut log)?;
    let mut iw = widen(iw, &mut log)?;
    let s = m.max(iq.regularity());
    if iw.regularity() > s {
        iw = iw.truncate_below(s);
        log.push(Step::Truncate { degree: s });
    }
    let normal = |i: &StronglyStableIdeal, log: &mut Vec<Step>| -> Result<StronglyStableIdeal> {
        let l = i.degree_slice(s).lgh()?;
        log.push(Step::Lgh { degree: s });
        Ok(StronglyStableIdeal::generated_by(&l).saturate())
    };
    let i = normal(&iq, &mut log)?;
    let i2 = normal(&iw, &mut log)?;
    if i2.hilbert_function()?.values(a) != w.values(a) {
        return Err(pre("truncation changed w below the graft degree".into()));
    }
    let mut gens = Vec::new();
    for k in 1..=s {
        let source = if k < m { &i2 } else { &i };
        for t in terms_of_degree(n - 1, k) {
            let mut e = Vec::with_capacity(n);
            e.push(0);
            e.extend_from_slice(t.exponents());
            let t = Term::new(e);
            if source.contains(&t) {
                gens.push(t);
            }
        }
    }
    let j = StronglyStableIdeal::new(n, gens)
        .map_err(|e| Error::InternalInconsistency(format!("grafted ideal: {e}")))?;
    log.push(Step::Graft { m, s });
    let top = (m as u64).max(q.regularity());
    let prefix = (0..top)
        .map(|t| if t < m as u64 { w.value(t) } else { q.value(t) })
        .collect();
    let h = HilbertFunction::new(prefix, q.tail().clone())?;
    let reg = j.regularity();
    if reg > s {
        return Err(Error::InternalInconsistency(format!("grafted ideal has regularity {reg} > {s}")));
    }
    certify(j, h, reg, log)
}
