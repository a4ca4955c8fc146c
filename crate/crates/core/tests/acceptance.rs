//! Acceptance suite: one PASS/FAIL line per criterion, exact integers only.
//! Exits non-zero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cmreg::borel::StronglyStableIdeal;
use cmreg::constructions::{expanded_lifting, verify_witness, witness_min_reg};
use cmreg::hilbert_function::{minimal_f, minimal_g, rho_bar, scheme_hf_minimum, HilbertFunction};
use cmreg::hilbert_poly::{parse_polynomial, AdmissiblePolynomial};
use cmreg::regularity::{closed_form, min_reg, min_reg_for_hf, min_reg_for_rho, RegularityReport};
use cmreg::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// `(p, r, ρ_p, ρ̄_p, ρ, ρ̃, m)` for one level of the recursion.
type ChainRow = (String, String, u64, u64, u64, Option<u64>, u64);
type ExpectedRow = (&'static str, &'static str, u64, u64, u64, Option<u64>, u64);

fn p(text: &str) -> AdmissiblePolynomial {
    parse_polynomial(text).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_chain(poly: &str, rows: &[ExpectedRow]) -> Outcome {
    let rep = min_reg(&p(poly)).map_err(|e| e.to_string())?;
    let got: Vec<ChainRow> = rep
        .trace
        .iter()
        .map(|r| (r.polynomial.clone(), r.gotzmann_number.clone(), r.rho_min, r.rho_bar, r.rho, r.rho_tilde, r.m))
        .collect();
    let want: Vec<ChainRow> = rows
        .iter()
        .map(|&(q, r, a, b, c, d, e)| (q.to_string(), r.to_string(), a, b, c, d, e))
        .collect();
    ensure(got == want, || format!("{poly}: got {got:?}"))?;
    Ok(format!("m = {}", rep.answer))
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn table_one() -> Outcome {
    let start = Instant::now();
    let out = check_chain(
        "1/3z^3+2z^2+14/3z-4",
        &[
            ("1/3z^3+2z^2+14/3z-4", "10", 3, 3, 3, Some(4), 5),
            ("z^2+3z+3", "6", 1, 1, 4, Some(2), 5),
            ("2z+2", "3", 1, 1, 2, Some(1), 3),
            ("2", "2", 1, 1, 1, None, 2),
        ],
    )?;
    within(Duration::from_secs(1), start)?;
    Ok(out)
}

fn table_two() -> Outcome {
    let start = Instant::now();
    let out = check_chain(
        "2z^3-6z^2+29z-20",
        &[
            ("2z^3-6z^2+29z-20", "218498", 2, 2, 2, Some(4), 7),
            ("6z^2-18z+37", "678", 1, 4, 4, Some(5), 7),
            ("12z-24", "42", 5, 5, 5, Some(6), 7),
            ("12", "12", 1, 1, 6, None, 7),
        ],
    )?;
    within(Duration::from_secs(5), start)?;
    Ok(out)
}

fn values(h: &HilbertFunction, upto: u64) -> Vec<i64> {
    (0..=upto).map(|t| i64::try_from(h.value(t)).unwrap()).collect()
}

fn empty_class() -> Outcome {
    let q = p("5z-3");
    ensure(scheme_hf_minimum(&q, 4).is_none(), || "F(5z-3, 4) is not empty".into())?;
    ensure(
        min_reg_for_rho(&q, 4) == Err(Error::EmptyClass { rho: 4 }),
        || "per-rho query does not report EmptyClass".into(),
    )?;
    let g = minimal_g(&q, 4).map_err(|e| e.to_string())?;
    ensure(values(&g, 3) == [1, 4, 8, 13] && g.tail() == q.poly(), || format!("g^4 = {g}"))?;
    let d = g.delta().map_err(|e| e.to_string())?;
    ensure(values(&d, 6) == [1, 3, 4, 5, 4, 5, 5], || format!("delta g^4 = {d}"))?;
    ensure(!d.is_admissible(), || "delta g^4 is reported admissible".into())?;
    Ok(format!("g^4 = {g}, delta = {d} not admissible"))
}

fn twelve_z_minus_25() -> Outcome {
    let q = p("12z-25");
    let m7 = min_reg_for_rho(&q, 7).map_err(|e| e.to_string())?.answer;
    let m6 = min_reg_for_rho(&q, 6).map_err(|e| e.to_string())?.answer;
    ensure(m7 == 9 && m6 == 8, || format!("m^7 = {m7}, m^6 = {m6}"))?;
    let g7 = minimal_g(&q, 7).map_err(|e| e.to_string())?;
    ensure(values(&g7, 6) == [1, 4, 9, 16, 25, 36, 48] && g7.regularity() == 7, || format!("g^7 = {g7}"))?;
    Ok(format!("m^7 = {m7}, m^6 = {m6}, g^7 = {g7}"))
}

fn ideal(n: usize, text: &str) -> StronglyStableIdeal {
    StronglyStableIdeal::parse(n, text).unwrap()
}

fn lgh_example() -> Outcome {
    let j = ideal(5, "x4^2, x4*x3, x3^2, x4*x2, x3*x2^3, x2^5");
    let l = j.degree_slice(5).lgh().map_err(|e| e.to_string())?;
    let gv = l.growth_vector();
    let hv = l.height_vector();
    ensure(gv == [42, 26, 15, 5, 1], || format!("gv = {gv:?}"))?;
    ensure(hv == [47, 26, 12, 4, 0, 0], || format!("hv = {hv:?}"))?;
    let sat = StronglyStableIdeal::generated_by(&l).saturate();
    let printed = ideal(5, "x4^2, x3*x4, x2*x4, x1*x4, x3^3, x2*x3^2, x1^3*x3^2, x2^4*x3, x2^5");
    if sat.generator_set() == printed.generator_set() {
        return Ok(format!("gv {gv:?}, hv {hv:?}, saturation {sat}"));
    }
    let hf = |i: &StronglyStableIdeal| i.hilbert_function().map(|h| h.to_string()).unwrap_or_default();
    Err(format!(
        "gv and hv match; saturation is {sat} with HF {}, the expected ideal {printed} has HF {} (HF of J is {})",
        hf(&sat),
        hf(&printed),
        hf(&j)
    ))
}

fn expanded_lifting_example() -> Outcome {
    let jz = ideal(4, "x2^5, x2^4*x1, x1^2*x2^3, x1^3*x2^2, x2*x1^4, x1^5, x3");
    let f: HilbertFunction = "1,5,11 ; 15z-24".parse().unwrap();
    let cert = expanded_lifting(&f, &jz).map_err(|e| e.to_string())?;
    let printed = ideal(5, "x4^2, x4*x3, x4*x2, x4*x1, x3^5, x3^4*x2, x3^3*x2^2, x3^2*x2^3, x3*x2^4, x2^5");
    ensure(cert.ideal.generator_set() == printed.generator_set(), || format!("got {}", cert.ideal))?;
    ensure(cert.ideal.regularity() == 5 && cert.claimed_reg == 5, || "regularity is not 5".into())?;
    let report = verify_witness(&cert);
    ensure(report.passed, || format!("verification: {:?}", report.failure()))?;
    Ok(format!("{} with regularity 5, verified", cert.ideal))
}

/// `M = max(ρ_u, ρ̄ of every Δ^i p)`.
fn bound_base(q: &AdmissiblePolynomial, u: &HilbertFunction) -> u64 {
    let mut m = u.regularity();
    let mut cur = Some(q.clone());
    while let Some(d) = cur {
        m = m.max(rho_bar(&d));
        cur = d.derivative();
    }
    m
}

fn cross_validation() -> Outcome {
    let start = Instant::now();
    let fixtures = [
        "5z-3", "9z-7", "12z-24", "12z-25", "15z-24", "2z+2", "z^2+3z+3", "6z^2-18z+37", "2", "3", "4", "5", "6",
    ];
    let mut checked = 0;
    for text in fixtures {
        let q = p(text);
        let r = q.gotzmann_u64().unwrap();
        let lo = rho_bar(&q);
        let m_bar = min_reg(&q).map_err(|e| e.to_string())?.answer;
        for rho in lo..=(r - 1).min(lo + 4) {
            let Some(u) = scheme_hf_minimum(&q, rho) else {
                continue;
            };
            let rep: RegularityReport = min_reg_for_rho(&q, rho).map_err(|e| format!("{text} rho={rho}: {e}"))?;
            let closed = closed_form(&q, rho, m_bar);
            let cert = witness_min_reg(&u).map_err(|e| format!("{text} rho={rho}: {e}"))?;
            let witnessed = cert.ideal.regularity() as u64;
            ensure(rep.answer == closed && closed == witnessed, || {
                format!("{text} rho={rho}: recursion {}, closed form {closed}, witness {witnessed}", rep.answer)
            })?;
            let report = verify_witness(&cert);
            ensure(report.passed, || format!("{text} rho={rho}: {:?}", report.failure()))?;
            let m = bound_base(&q, &u);
            ensure(m < rep.answer && rep.answer <= m + 2, || {
                format!("{text} rho={rho}: {} outside [{}, {}]", rep.answer, m + 1, m + 2)
            })?;
            checked += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{checked} (p, rho) pairs agree"))
}

fn oracle_suites() -> Outcome {
    let start = Instant::now();
    let a = common::macaulay_identities(500, 8)?;
    let b = common::borel_order(4, 5)?;
    let mut ideals = common::fixture_ideals();
    for text in ["1,5,11 ; 15z-24", "1,4,9,16,25,36,48 ; 12z-25", "1,3 ; 4"] {
        let u: HilbertFunction = text.parse().unwrap();
        ideals.push(witness_min_reg(&u).map_err(|e| e.to_string())?.ideal);
    }
    for i in &ideals {
        common::hf_matches_enumeration(i)?;
    }
    let d = common::lgh_on_random_sets(200, 4, 6, 0x5eed)?;
    within(Duration::from_secs(120), start)?;
    Ok(format!("{a}; {b}; {} fixture ideals; {d}", ideals.len()))
}

fn constants() -> Outcome {
    for d in 2u64..=30 {
        let q = p(&d.to_string());
        ensure(q.gotzmann_u64() == Some(d), || format!("r of {d}"))?;
        let m = min_reg(&q).map_err(|e| e.to_string())?.answer;
        ensure(m == 2, || format!("m of {d} is {m}"))?;
        for rho in 1..d {
            let f = minimal_f(&q, rho).map_err(|e| e.to_string())?;
            let mu = min_reg_for_hf(&f).map_err(|e| e.to_string())?.answer;
            ensure(mu == rho + 1, || format!("m of f^{rho}_{d} is {mu}"))?;
        }
    }
    for d in 2u64..=6 {
        let f = minimal_f(&p(&d.to_string()), d - 1).unwrap();
        let cert = witness_min_reg(&f).map_err(|e| e.to_string())?;
        ensure(cert.claimed_reg as u64 == d, || format!("witness for f^{}_{d}", d - 1))?;
    }
    Ok("d = 2..30".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cubic chain", table_one),
        ("large cubic chain", table_two),
        ("empty class for 5z-3 at rho 4", empty_class),
        ("m^7 and m^6 of 12z-25", twelve_z_minus_25),
        ("lgh example in degree 5", lgh_example),
        ("expanded lifting example", expanded_lifting_example),
        ("witness and recursion cross-validation", cross_validation),
        ("oracle suites", oracle_suites),
        ("constant polynomials", constants),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let spent = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} ({spent:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({spent:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
