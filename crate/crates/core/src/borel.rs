//! Terms, Borel sets and strongly stable ideals.
//!
//! Variables are ordered `x0 < x1 < ... < xn`; a Borel move replaces a
//! variable by a larger one. Saturation, regularity and the Hilbert function
//! of a strongly stable ideal are read off its minimal generators and degree
//! slices, so no Gröbner machinery is needed.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::binomial::binom;
use crate::error::{Error, Result};
use crate::hilbert_function::HilbertFunction;
use crate::poly::Poly;

/// A power product `x0^a0 * ... * xn^an`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Vec<u32>);

impl Term {
    pub fn new(exponents: Vec<u32>) -> Self {
        Term(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Term(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Term(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Least index with a positive exponent; `None` for the unit term.
    pub fn min_var(&self) -> Option<usize> {
        self.0.iter().position(|&a| a > 0)
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Term) -> Term {
        Term(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `(x_to / x_from) * self`, if `x_from` divides `self`.
    pub fn moved(&self, from: usize, to: usize) -> Option<Term> {
        if self.0[from] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[from] -= 1;
        e[to] += 1;
        Some(Term(e))
    }

    /// The same term with the `x0` factor dropped.
    pub fn without_x0(&self) -> Term {
        let mut e = self.0.clone();
        if let Some(a) = e.first_mut() {
            *a = 0;
        }
        Term(e)
    }

    /// Parses `x1^3*x3^2`, `x1^3x3^2` or `1` in a ring with `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Term> {
        let s: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut e = vec![0u32; nvars];
        if s == "1" {
            return Ok(Term(e));
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let number = |i: &mut usize| -> Option<u32> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            s[start..*i].parse().ok()
        };
        if bytes.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        while i < bytes.len() {
            if bytes[i] != b'x' {
                return Err(Error::Parse(format!("bad term `{text}`")));
            }
            i += 1;
            let v = number(&mut i).ok_or_else(|| Error::Parse(format!("bad term `{text}`")))?;
            let mut pow = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                pow = number(&mut i).ok_or_else(|| Error::Parse(format!("bad term `{text}`")))?;
            }
            let v = v as usize;
            if v >= nvars {
                return Err(Error::Parse(format!("variable x{v} outside x0..x{}", nvars - 1)));
            }
            e[v] += pow;
        }
        Ok(Term(e))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{a}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Degree-lexicographic order: degree first, then the larger exponent at the
/// highest differing variable wins.
pub fn cmp_deglex(a: &Term, b: &Term) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Degree-reverse-lexicographic order: degree first, then the term with the
/// smaller exponent at the lowest differing variable is larger.
pub fn cmp_degrevlex(a: &Term, b: &Term) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

/// Whether `b` is reachable from `a` by moves `x_j -> x_i`, `j < i`.
pub fn borel_leq(a: &Term, b: &Term) -> Result<bool> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    let (mut sa, mut sb) = (0u32, 0u32);
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        sa += x;
        sb += y;
        if sb < sa {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All terms of degree `d` in `nvars` variables.
pub fn terms_of_degree(nvars: usize, d: u32) -> Vec<Term> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Term>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Term(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(prefix, left - a, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Term(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), d, nvars, &mut out);
    out
}

/// A Borel-closed set of terms of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelSet {
    nvars: usize,
    degree: u32,
    terms: BTreeSet<Term>,
}

impl BorelSet {
    pub fn new(nvars: usize, degree: u32, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let set = Self::unchecked(nvars, degree, terms)?;
        if let Some((tau, moved)) = set.closure_violation() {
            return Err(Error::NotBorel(format!("{tau} is in the set but {moved} is not")));
        }
        Ok(set)
    }

    fn unchecked(nvars: usize, degree: u32, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let terms: BTreeSet<Term> = terms.into_iter().collect();
        for t in &terms {
            if t.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: t.nvars(),
                });
            }
            if t.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: t.degree(),
                });
            }
        }
        Ok(BorelSet {
            nvars,
            degree,
            terms,
        })
    }

    /// Smallest Borel set containing `seeds`.
    pub fn closure_of(nvars: usize, degree: u32, seeds: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut set = Self::unchecked(nvars, degree, seeds)?;
        let mut stack: Vec<Term> = set.terms.iter().cloned().collect();
        while let Some(t) = stack.pop() {
            for j in 0..nvars.saturating_sub(1) {
                if let Some(u) = t.moved(j, j + 1) {
                    if set.terms.insert(u.clone()) {
                        stack.push(u);
                    }
                }
            }
        }
        Ok(set)
    }

    /// Adjacent moves generate all Borel moves, so these suffice.
    fn closure_violation(&self) -> Option<(Term, Term)> {
        for t in &self.terms {
            for j in 0..self.nvars.saturating_sub(1) {
                if let Some(u) = t.moved(j, j + 1) {
                    if !self.terms.contains(&u) {
                        return Some((t.clone(), u));
                    }
                }
            }
        }
        None
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    /// `|B^(i)|` for `i = 0..=n`, by least variable.
    pub fn growth_vector(&self) -> Vec<usize> {
        let mut gv = vec![0; self.nvars];
        for t in &self.terms {
            if let Some(i) = t.min_var() {
                gv[i] += 1;
            }
        }
        gv
    }

    /// `|B(j)|` for `j = 0..=t`, by exponent of `x0`.
    pub fn height_vector(&self) -> Vec<usize> {
        let mut hv = vec![0; self.degree as usize + 1];
        for t in &self.terms {
            hv[t.0.first().copied().unwrap_or(0) as usize] += 1;
        }
        hv
    }

    /// Whether `t` is Borel-minimal here: no other member lies strictly below it.
    pub fn is_minimal(&self, t: &Term) -> bool {
        (1..self.nvars).all(|i| match t.moved(i, i - 1) {
            Some(u) => !self.terms.contains(&u),
            None => true,
        })
    }

    /// The growth-height-lexicographic Borel set with the same growth and
    /// height vectors.
    ///
    /// Built as the union of deglex lex-segments in the growth classes of
    /// growth `1..=n` and in the height classes of height `1..=t`; the growth
    /// class of growth 0 is the union of the latter.
    pub fn lgh(&self) -> Result<BorelSet> {
        let gv = self.growth_vector();
        let hv = self.height_vector();
        let mut all = terms_of_degree(self.nvars, self.degree);
        all.sort_by(|a, b| cmp_deglex(b, a));
        let mut taken_g = vec![0usize; self.nvars];
        let mut taken_h = vec![0usize; self.degree as usize + 1];
        let mut out = BTreeSet::new();
        for t in all {
            let h = t.0.first().copied().unwrap_or(0) as usize;
            if h > 0 {
                if taken_h[h] < hv[h] {
                    taken_h[h] += 1;
                    out.insert(t);
                }
            } else if let Some(i) = t.min_var() {
                if taken_g[i] < gv[i] {
                    taken_g[i] += 1;
                    out.insert(t);
                }
            } else if !self.terms.is_empty() {
                // the unit term in degree 0
                out.insert(t);
            }
        }
        let l = BorelSet {
            nvars: self.nvars,
            degree: self.degree,
            terms: out,
        };
        if let Some((tau, moved)) = l.closure_violation() {
            return Err(Error::InternalInconsistency(format!(
                "growth-height-lexicographic set is not Borel: {tau} in, {moved} out"
            )));
        }
        if l.growth_vector() != gv || l.height_vector() != hv {
            return Err(Error::InternalInconsistency(
                "growth-height-lexicographic set changed the growth or height vector".into(),
            ));
        }
        Ok(l)
    }
}

/// Drops every term divisible by another one, and duplicates.
fn minimalize(mut gens: Vec<Term>) -> Vec<Term> {
    gens.sort_by(cmp_deglex);
    gens.dedup();
    let mut kept: Vec<Term> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A strongly stable monomial ideal, stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StronglyStableIdeal {
    nvars: usize,
    gens: Vec<Term>,
}

/// JSON form: exponent vectors ascending in `x0..xn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: usize,
    pub generators: Vec<Vec<u32>>,
}

impl StronglyStableIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Term>) -> Result<Self> {
        let gens: Vec<Term> = gens.into_iter().collect();
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        let ideal = StronglyStableIdeal {
            nvars,
            gens: minimalize(gens),
        };
        if let Some((g, moved)) = ideal.stability_violation() {
            return Err(Error::NotStronglyStable(format!(
                "{moved} is missing although {g} is a generator"
            )));
        }
        Ok(ideal)
    }

    /// Parses a comma-separated generator list such as `x4^2, x3*x4, x2^5`.
    pub fn parse(nvars: usize, text: &str) -> Result<Self> {
        let gens = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| Term::parse(s, nvars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nvars, gens)
    }

    pub fn zero(nvars: usize) -> Self {
        StronglyStableIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        StronglyStableIdeal {
            nvars,
            gens: vec![Term::one(nvars)],
        }
    }

    /// The ideal generated by a Borel set.
    pub fn generated_by(b: &BorelSet) -> Self {
        StronglyStableIdeal {
            nvars: b.nvars,
            gens: minimalize(b.terms.iter().cloned().collect()),
        }
    }

    fn stability_violation(&self) -> Option<(Term, Term)> {
        for g in &self.gens {
            for j in 0..self.nvars {
                for i in j + 1..self.nvars {
                    if let Some(u) = g.moved(j, i) {
                        if !self.contains(&u) {
                            return Some((g.clone(), u));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators, sorted by deglex.
    pub fn generators(&self) -> &[Term] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == 0)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.gens.iter().any(|g| g.divides(t))
    }

    /// The Borel set `J ∩ T_t`.
    pub fn degree_slice(&self, t: u32) -> BorelSet {
        let terms = terms_of_degree(self.nvars, t)
            .into_iter()
            .filter(|u| self.contains(u));
        BorelSet {
            nvars: self.nvars,
            degree: t,
            terms: terms.collect(),
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.gens.iter().all(|g| g.0.first().copied().unwrap_or(0) == 0)
    }

    /// Sets `x0 = 1` in every generator.
    pub fn saturate(&self) -> Self {
        if self.nvars == 0 {
            return self.clone();
        }
        StronglyStableIdeal {
            nvars: self.nvars,
            gens: minimalize(self.gens.iter().map(Term::without_x0).collect()),
        }
    }

    /// Castelnuovo-Mumford regularity: the top degree of a minimal generator,
    /// 0 for the zero ideal.
    pub fn regularity(&self) -> u32 {
        self.gens.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// The ideal generated by the elements of degree at most `t`.
    pub fn truncate_below(&self, t: u32) -> Self {
        StronglyStableIdeal {
            nvars: self.nvars,
            gens: self.gens.iter().filter(|g| g.degree() <= t).cloned().collect(),
        }
    }

    /// The same ideal in `new_nvars >= nvars` variables, new ones on top;
    /// with `add_generators` the new variables join the ideal, which keeps
    /// the zero locus inside the original linear subspace.
    pub fn extend_variables(&self, new_nvars: usize, add_generators: bool) -> Result<Self> {
        if new_nvars < self.nvars {
            return Err(Error::InvalidArgument(format!(
                "cannot shrink from {} to {new_nvars} variables",
                self.nvars
            )));
        }
        let pad = |t: &Term| {
            let mut e = t.0.clone();
            e.resize(new_nvars, 0);
            Term(e)
        };
        let mut gens: Vec<Term> = self.gens.iter().map(pad).collect();
        if add_generators {
            gens.extend((self.nvars..new_nvars).map(|i| Term::var(new_nvars, i)));
        }
        Ok(StronglyStableIdeal {
            nvars: new_nvars,
            gens: minimalize(gens),
        })
    }

    /// Extension by a new least variable `x0`; the old `x_i` becomes `x_{i+1}`.
    pub fn artinian_lift(&self) -> Self {
        let shift = |t: &Term| {
            let mut e = Vec::with_capacity(t.0.len() + 1);
            e.push(0);
            e.extend_from_slice(&t.0);
            Term(e)
        };
        StronglyStableIdeal {
            nvars: self.nvars + 1,
            gens: self.gens.iter().map(shift).collect(),
        }
    }

    /// Number of terms of degree `d` outside the ideal, by enumeration.
    pub fn sous_escalier_count(&self, d: u32) -> usize {
        terms_of_degree(self.nvars, d)
            .into_iter()
            .filter(|u| !self.contains(u))
            .count()
    }

    /// Hilbert function of the quotient, from the growth and height vectors
    /// of the slice in degree `reg`.
    pub fn hilbert_function(&self) -> Result<HilbertFunction> {
        if !self.is_saturated() {
            return Err(Error::NotSaturated(format!("{self}")));
        }
        if self.is_unit() {
            return HilbertFunction::new(Vec::new(), Poly::zero());
        }
        if self.nvars == 0 {
            return HilbertFunction::new(vec![BigInt::from(1)], Poly::zero());
        }
        let n = self.nvars as i64 - 1;
        let t = self.regularity();
        let slice = self.degree_slice(t);
        let hv = slice.height_vector();
        let gv = slice.growth_vector();
        let full = |j: i64| BigInt::from(binom(j + n, n));
        let prefix: Vec<BigInt> = (0..t as i64)
            .map(|j| {
                let inside: usize = hv[(t as i64 - j) as usize..].iter().sum();
                full(j) - inside
            })
            .collect();
        let mut tail = Poly::binomial(&BigInt::from(n), n as u64);
        for (i, &count) in gv.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = Poly::binomial(&BigInt::from(i as i64 - t as i64), i as u64)
                .scale(&BigRational::from_integer(BigInt::from(count)));
            tail = &tail - &term;
        }
        HilbertFunction::new(prefix, tail)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: self.nvars,
            generators: self.gens.iter().map(|g| g.0.clone()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        Self::new(j.vars, j.generators.iter().map(|g| Term(g.clone())))
    }

    /// Generators as a set, for order-independent comparison.
    pub fn generator_set(&self) -> HashSet<Term> {
        self.gens.iter().cloned().collect()
    }
}

impl fmt::Display for StronglyStableIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// The lex ideal in `nvars` variables whose quotient has values `h(t)` in
/// degrees `t <= top`, generated by the deglex-initial segments of each slice.
///
/// `h` must satisfy Macaulay's bound; above `top` the quotient grows by the
/// Macaulay bound as well.
pub(crate) fn lex_ideal_from_values(nvars: usize, h: &[BigInt]) -> Result<StronglyStableIdeal> {
    let n = nvars as i64 - 1;
    let mut gens: Vec<Term> = Vec::new();
    for (t, v) in h.iter().enumerate().skip(1) {
        let total = BigInt::from(binom(t as i64 + n, n));
        let size = total - v;
        let size: usize = size.try_into().map_err(|_| {
            Error::InvalidArgument(format!("value {v} in degree {t} exceeds the slice size"))
        })?;
        let mut slice = terms_of_degree(nvars, t as u32);
        slice.sort_by(|a, b| cmp_deglex(b, a));
        let fresh: Vec<Term> = slice
            .into_iter()
            .take(size)
            .filter(|u| !gens.iter().any(|g| g.divides(u)))
            .collect();
        gens.extend(fresh);
    }
    StronglyStableIdeal::new(nvars, gens)
}

/// The saturated lex-segment ideal with Hilbert polynomial `p`; its quotient
/// has Hilbert function `f^{r-1}_p` and regularity `r`.
pub fn lex_segment_ideal(
    p: &crate::hilbert_poly::AdmissiblePolynomial,
) -> Result<StronglyStableIdeal> {
    let r = p.gotzmann_u64().filter(|&r| r > 1).ok_or_else(|| {
        Error::InvalidArgument(format!("lex-segment ideal of {p} needs 1 < r < 2^64"))
    })?;
    let f = crate::hilbert_function::minimal_f_unchecked(p, r - 1);
    let nvars: usize = f
        .value(1)
        .try_into()
        .map_err(|_| Error::InvalidArgument("ambient too large".into()))?;
    let values = f.values(r);
    Ok(lex_ideal_from_values(nvars, &values)?.saturate())
}
