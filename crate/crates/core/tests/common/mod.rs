//! Brute-force oracles shared by the oracle and acceptance suites.
//!
//! Nothing here calls into the code path it checks: expansions are redone
//! greedily over `u128`, Borel order by explicit move closure, Hilbert
//! functions by counting monomials outside the ideal.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use cmreg::binomial::{macaulay_expand, minus_minus, plus_plus};
use cmreg::borel::{borel_leq, BorelSet, StronglyStableIdeal, Term};
use cmreg::hilbert_function::HilbertFunction;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub fn c(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Greedy binomial expansion: tops `k(t), k(t-1), ...` down to `k(j)`.
pub fn greedy(a: u128, t: u128) -> Vec<u128> {
    let mut tops = Vec::new();
    let mut rest = a;
    let mut i = t;
    while rest > 0 && i > 0 {
        let mut k = i;
        while c(k + 1, i) <= rest {
            k += 1;
        }
        tops.push(k);
        rest -= c(k, i);
        i -= 1;
    }
    assert_eq!(rest, 0);
    tops
}

fn pp(tops: &[u128], t: u128) -> u128 {
    tops.iter().enumerate().map(|(s, &k)| c(k + 1, t - s as u128 + 1)).sum()
}

fn mm(tops: &[u128], t: u128) -> u128 {
    tops.iter()
        .enumerate()
        .map(|(s, &k)| {
            let i = t - s as u128;
            if k == 0 { 0 } else { c(k - 1, i - 1) }
        })
        .sum()
}

fn big(a: u128) -> BigInt {
    BigInt::from(a)
}

/// Shift operators, the double action, the increment rules and monotonicity
/// for every `1 <= a <= a_max`, `1 <= t <= t_max`.
pub fn macaulay_identities(a_max: u128, t_max: u128) -> Check {
    let mut cases = 0;
    for t in 1..=t_max {
        let mut prev: Option<(u128, u128)> = None;
        for a in 1..=a_max {
            let tops = greedy(a, t);
            let j = t + 1 - tops.len() as u128;
            let exp = macaulay_expand(&big(a), t as u64).map_err(|e| e.to_string())?;
            let got: Vec<u128> = exp.terms().map(|b| b.top.try_into().unwrap()).collect();
            if got != tops || exp.lowest_index() as u128 != j {
                return Err(format!("expansion of {a} in base {t}: {got:?} vs {tops:?}"));
            }
            let up = pp(&tops, t);
            let down = mm(&tops, t);
            if plus_plus(&big(a), t as u64).unwrap() != big(up) {
                return Err(format!("plus_plus({a}, {t})"));
            }
            if minus_minus(&big(a), t as u64).unwrap() != big(down) {
                return Err(format!("minus_minus({a}, {t})"));
            }
            if t >= 2 {
                let back = plus_plus(&big(down), t as u64 - 1).unwrap();
                let want = if j > 1 {
                    a
                } else {
                    let k = |i: u128| tops[(t - i) as usize];
                    a + k(2) - k(1)
                };
                if back != big(want) || back < big(a) {
                    return Err(format!("double action at ({a}, {t}): {back} vs {want}"));
                }
            }
            let next = greedy(a + 1, t);
            let k1 = if j == 1 { *tops.last().unwrap() } else { 0 };
            if pp(&next, t) != up + 1 + k1 {
                return Err(format!("increment rule for plus_plus at ({a}, {t})"));
            }
            let want_down = if j > 1 { down + 1 } else { down };
            if mm(&next, t) != want_down {
                return Err(format!("increment rule for minus_minus at ({a}, {t})"));
            }
            if let Some((pu, pd)) = prev {
                if pu > up || pd > down {
                    return Err(format!("monotonicity fails at ({a}, {t})"));
                }
            }
            prev = Some((up, down));
            cases += 1;
        }
    }
    Ok(format!("{cases} (a, t) pairs"))
}

/// Every writing `a = Σ C(h(i), i)` with strictly decreasing `h` and
/// `h(t) < k(t)` is the alternative writing of a pure binomial.
pub fn alternative_writings(a_max: u128, t_max: u128) -> Check {
    fn search(a: u128, i: i64, below: u128, sum: u128, path: &mut Vec<u128>, out: &mut Vec<Vec<u128>>) {
        if sum == a && !path.is_empty() {
            out.push(path.clone());
        }
        if i < 0 || sum >= a {
            return;
        }
        for h in 0..below {
            let v = c(h, i as u128);
            if sum + v > a {
                break;
            }
            path.push(h);
            search(a, i - 1, h, sum + v, path, out);
            path.pop();
        }
    }
    let mut found = 0;
    for t in 1..=t_max {
        for a in 1..=a_max {
            let k = greedy(a, t)[0];
            let mut writings = Vec::new();
            search(a, t as i64, k, 0, &mut Vec::new(), &mut writings);
            // Trailing zero binomials do not change the writing, and any
            // h(0) < h(1) contributes the same C(h(0), 0) = 1.
            let nonzero: BTreeSet<Vec<u128>> = writings
                .into_iter()
                .map(|w| {
                    let keep = w.iter().enumerate().filter(|(s, &h)| c(h, t - *s as u128) > 0).count();
                    let mut w = w[..keep].to_vec();
                    if w.len() as u128 == t + 1 && t >= 1 {
                        w[t as usize] = w[t as usize - 1] - 1;
                    }
                    w
                })
                .collect();
            // For k(t) = t there is no writing with h(t) < t at all.
            let pure = c(k, t) == a && k > t;
            let expected: Vec<u128> = if pure { (0..=t).map(|i| k - 1 - i).collect() } else { Vec::new() };
            match (pure, nonzero.len()) {
                (_, 0) if !pure => {}
                (true, 1) if nonzero.contains(&expected) => found += 1,
                _ => return Err(format!("a = {a}, t = {t}: writings {nonzero:?}")),
            }
        }
    }
    Ok(format!("{found} pure binomials with their alternative writing"))
}

/// All terms reachable from `a` by single moves `x_j -> x_{j+1}`.
pub fn move_closure(a: &Term) -> HashSet<Term> {
    let mut seen = HashSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(u) = queue.pop_front() {
        for j in 0..u.nvars().saturating_sub(1) {
            if let Some(v) = u.moved(j, j + 1) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

pub fn monomials(nvars: usize, d: u32) -> Vec<Term> {
    fn go(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Term>) {
        if cur.len() + 1 == nvars {
            cur.push(left);
            out.push(Term::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Term::new(Vec::new()));
        }
        return out;
    }
    go(nvars, d, &mut Vec::new(), &mut out);
    out
}

pub fn borel_order(max_n: usize, max_t: u32) -> Check {
    let mut pairs = 0;
    for nvars in 1..=max_n + 1 {
        for t in 0..=max_t {
            let terms = monomials(nvars, t);
            for a in &terms {
                let up = move_closure(a);
                for b in &terms {
                    if borel_leq(a, b).unwrap() != up.contains(b) {
                        return Err(format!("borel_leq({a}, {b}) disagrees with move closure"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

pub fn outside_count(ideal: &StronglyStableIdeal, d: u32) -> usize {
    let gens: Vec<&[u32]> = ideal.generators().iter().map(|g| g.exponents()).collect();
    monomials(ideal.nvars(), d)
        .iter()
        .filter(|m| !gens.iter().any(|g| g.iter().zip(m.exponents()).all(|(x, y)| x <= y)))
        .count()
}

/// Hilbert function of `ideal` against enumeration through `reg + 3`.
pub fn hf_matches_enumeration(ideal: &StronglyStableIdeal) -> Result<HilbertFunction, String> {
    let hf = ideal.hilbert_function().map_err(|e| e.to_string())?;
    for d in 0..=ideal.regularity() + 3 {
        let count = outside_count(ideal, d);
        if hf.value(d as u64) != BigInt::from(count) {
            return Err(format!("{ideal}: degree {d} has {count} standard monomials, function says {hf}"));
        }
    }
    Ok(hf)
}

pub fn fixture_ideals() -> Vec<StronglyStableIdeal> {
    let parse = |n: usize, s: &str| StronglyStableIdeal::parse(n, s).unwrap();
    let mut out = vec![
        parse(5, "x4^2, x4*x3, x3^2, x4*x2, x3*x2^3, x2^5"),
        parse(5, "x4^2, x3*x4, x2*x4, x1*x4, x3^3, x2*x3^2, x1^2*x3^2, x2^4*x3, x2^5"),
        parse(5, "x3^5, x3^4*x2, x2^2*x3^3, x2^3*x3^2, x3*x2^4, x2^5, x4"),
        parse(5, "x4^2, x4*x3, x4*x2, x4*x1, x3^5, x3^4*x2, x3^3*x2^2, x3^2*x2^3, x3*x2^4, x2^5"),
        parse(4, "x3, x2"),
        parse(4, "x3^2, x3*x2, x2^2"),
        parse(3, "x2^3"),
        StronglyStableIdeal::unit(3),
    ];
    for p in ["5z-3", "2z+2", "4", "12z-25", "z^2+3z+3"] {
        let p = cmreg::hilbert_poly::parse_polynomial(p).unwrap();
        out.push(cmreg::borel::lex_segment_ideal(&p).unwrap());
    }
    out
}

pub fn random_borel_set(rng: &mut ChaCha8Rng, max_n: usize, max_t: u32) -> BorelSet {
    let nvars = rng.gen_range(2..=max_n + 1);
    let t = rng.gen_range(1..=max_t);
    let all = monomials(nvars, t);
    let seeds: Vec<Term> = (0..rng.gen_range(1..=4))
        .map(|_| all[rng.gen_range(0..all.len())].clone())
        .collect();
    BorelSet::closure_of(nvars, t, seeds).unwrap()
}

/// `lgh` keeps the growth and height vectors, yields a Borel set, and the
/// saturations have the same Hilbert function.
pub fn lgh_on_random_sets(count: usize, max_n: usize, max_t: u32, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let b = random_borel_set(&mut rng, max_n, max_t);
        let l = b.lgh().map_err(|e| format!("set {k}: {e}"))?;
        if l.growth_vector() != b.growth_vector() || l.height_vector() != b.height_vector() {
            return Err(format!("set {k}: vectors changed"));
        }
        for u in l.iter() {
            if !move_closure(u).iter().all(|v| l.contains(v)) {
                return Err(format!("set {k}: lgh result is not closed above {u}"));
            }
        }
        let sat_b = StronglyStableIdeal::generated_by(&b).saturate();
        let sat_l = StronglyStableIdeal::generated_by(&l).saturate();
        let hb = hf_matches_enumeration(&sat_b).map_err(|e| format!("set {k}: {e}"))?;
        let hl = hf_matches_enumeration(&sat_l).map_err(|e| format!("set {k}: {e}"))?;
        if hb != hl {
            return Err(format!("set {k}: saturations have {hb} and {hl}"));
        }
    }
    Ok(format!("{count} random Borel sets"))
}
