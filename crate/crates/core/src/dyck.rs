//! The Dyck shift on `N` bracket pairs: monoid reduction, periodic points,
//! the two measures of maximal entropy and the mod-`N` primeness argument.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::budget::Limits;
use crate::counts::CountSequence;
use crate::error::{Error, Result};
use crate::factorize::count_sequence_factorizations;
use crate::numtheory::{binomial, is_prime_u64, ln_big};

/// A bracket: `Alpha(i)` opens type `i`, `Beta(i)` closes it. Types are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Alpha(u32),
    Beta(u32),
}

impl Letter {
    fn code(self) -> i32 {
        match self {
            Letter::Alpha(i) => i as i32,
            Letter::Beta(i) => -(i as i32),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Alpha(i) => write!(f, "a{i}"),
            Letter::Beta(i) => write!(f, "b{i}"),
        }
    }
}

/// A finite word over `N` bracket pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckWord {
    n: u32,
    letters: Vec<Letter>,
}

impl DyckWord {
    pub fn new(n: u32, letters: Vec<Letter>) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("the Dyck shift needs at least 2 bracket types"));
        }
        for l in &letters {
            let (Letter::Alpha(i) | Letter::Beta(i)) = *l;
            if i == 0 || i > n {
                return Err(Error::invalid(format!("bracket type {i} outside 1..={n}")));
            }
        }
        Ok(DyckWord { n, letters })
    }

    /// Parse space-separated tokens `a<i>` / `b<i>`.
    pub fn parse(n: u32, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|t| {
                let bad = || Error::parse(format!("bad Dyck token `{t}` (expected a<i> or b<i>)"));
                let (kind, num) = t.split_at(1);
                let i: u32 = num.parse().map_err(|_| bad())?;
                match kind {
                    "a" => Ok(Letter::Alpha(i)),
                    "b" => Ok(Letter::Beta(i)),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        DyckWord::new(n, letters)
    }

    pub fn brackets(&self) -> u32 {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `#α − #β`.
    pub fn excess(&self) -> i64 {
        self.letters.iter().map(|l| if matches!(l, Letter::Alpha(_)) { 1 } else { -1 }).sum()
    }

    pub fn concat(&self, other: &DyckWord) -> DyckWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        DyckWord { n: self.n, letters }
    }

    pub fn repeat(&self, k: usize) -> DyckWord {
        DyckWord { n: self.n, letters: self.letters.repeat(k) }
    }

    fn codes(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.code()).collect()
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Normal form in the bracket monoid: unmatched closers then unmatched openers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ReducedForm {
    Zero,
    Word { betas: Vec<u32>, alphas: Vec<u32> },
}

impl ReducedForm {
    pub fn is_zero(&self) -> bool {
        matches!(self, ReducedForm::Zero)
    }

    pub fn to_word(&self, n: u32) -> Option<DyckWord> {
        match self {
            ReducedForm::Zero => None,
            ReducedForm::Word { betas, alphas } => {
                let letters = betas.iter().map(|&i| Letter::Beta(i)).chain(alphas.iter().map(|&i| Letter::Alpha(i))).collect();
                Some(DyckWord { n, letters })
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ReducedForm::Zero => json!("zero"),
            ReducedForm::Word { betas, alphas } => json!({
                "betas": betas.iter().map(|i| format!("b{i}")).collect::<Vec<_>>(),
                "alphas": alphas.iter().map(|i| format!("a{i}")).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Stack reduction on signed codes (`+i` opens, `−i` closes). Returns
/// `false` on a type mismatch; otherwise leaves the unmatched closers in
/// `betas` and the open stack in `stack`.
fn reduce_codes(codes: impl IntoIterator<Item = i32>, betas: &mut Vec<i32>, stack: &mut Vec<i32>) -> bool {
    for c in codes {
        if c > 0 {
            stack.push(c);
        } else {
            match stack.pop() {
                None => betas.push(-c),
                Some(top) if top == -c => {}
                Some(_) => return false,
            }
        }
    }
    true
}

pub fn reduce(w: &DyckWord) -> ReducedForm {
    let mut betas = Vec::new();
    let mut stack = Vec::new();
    if !reduce_codes(w.codes(), &mut betas, &mut stack) {
        return ReducedForm::Zero;
    }
    ReducedForm::Word {
        betas: betas.into_iter().map(|x| x as u32).collect(),
        alphas: stack.into_iter().map(|x| x as u32).collect(),
    }
}

/// `reduce(w^k) ≠ 0` for every `k ≤ |w| + 2`, evaluated incrementally.
fn periodic_admissible_codes(codes: &[i32], betas: &mut Vec<i32>, stack: &mut Vec<i32>) -> bool {
    betas.clear();
    stack.clear();
    for _ in 0..codes.len() + 2 {
        if !reduce_codes(codes.iter().copied(), betas, stack) {
            return false;
        }
    }
    true
}

/// Whether the bi-infinite repetition of `w` lies in the Dyck shift.
pub fn is_periodic_admissible(w: &DyckWord) -> bool {
    if w.is_empty() {
        return false;
    }
    periodic_admissible_codes(&w.codes(), &mut Vec::new(), &mut Vec::new())
}

fn check_class(n: u64, j: i64) -> Result<()> {
    if n == 0 || j.unsigned_abs() > n || (n as i64 - j).rem_euclid(2) != 0 {
        return Err(Error::Parity { period: n, excess: j });
    }
    Ok(())
}

/// `C(n, (n+j)/2) · N^{(n+|j|)/2}` periodic points of period `n` and excess `j`.
pub fn periodic_count_closed_form(brackets: u32, n: u64, j: i64) -> Result<BigUint> {
    check_class(n, j)?;
    let k = ((n as i64 + j) / 2) as u64;
    let e = ((n as i64 + j.abs()) / 2) as u32;
    Ok(binomial(n, k) * BigUint::from(brackets).pow(e))
}

/// All period-`n` points, summed over the excess.
pub fn periodic_count_total(brackets: u32, n: u64) -> BigUint {
    (-(n as i64)..=n as i64)
        .step_by(2)
        .map(|j| periodic_count_closed_form(brackets, n, j).expect("valid class"))
        .sum()
}

/// Brute-force count of periodic-admissible words of length `n`, by excess.
pub fn periodic_count_oracle(brackets: u32, n: u64, limits: &Limits) -> Result<BTreeMap<i64, BigUint>> {
    if brackets < 2 || n == 0 {
        return Err(Error::invalid("need at least 2 bracket types and n ≥ 1"));
    }
    let alpha = 2 * brackets as u64;
    let total = alpha
        .checked_pow(n as u32)
        .filter(|&t| t <= limits.max_nodes)
        .ok_or_else(|| Error::budget("Dyck word enumeration", limits.max_nodes))?;
    let letter = |x: u64| -> i32 {
        let t = (x / 2) as i32 + 1;
        if x % 2 == 0 { t } else { -t }
    };
    let chunk = alpha.pow((n as u32).min(2));
    let tail = total / chunk;
    let partials: Vec<BTreeMap<i64, u64>> = limits.install(|| {
        (0..chunk)
            .into_par_iter()
            .map(|head| {
                let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
                let mut codes = vec![0i32; n as usize];
                let (mut betas, mut stack) = (Vec::new(), Vec::new());
                for rest in 0..tail {
                    let mut idx = head * tail + rest;
                    for c in codes.iter_mut().rev() {
                        *c = letter(idx % alpha);
                        idx /= alpha;
                    }
                    if periodic_admissible_codes(&codes, &mut betas, &mut stack) {
                        let j: i64 = codes.iter().map(|&c| if c > 0 { 1 } else { -1 }).sum();
                        *counts.entry(j).or_default() += 1;
                    }
                }
                counts
            })
            .collect()
    });
    let mut out: BTreeMap<i64, BigUint> = BTreeMap::new();
    for p in partials {
        for (j, c) in p {
            *out.entry(j).or_default() += BigUint::from(c);
        }
    }
    Ok(out)
}

/// `(unmatched β, unmatched α)` from a left-to-right stack scan.
pub fn unmatched_counts(w: &DyckWord) -> (u64, u64) {
    let mut depth = 0u64;
    let mut unmatched_beta = 0u64;
    for l in &w.letters {
        match l {
            Letter::Alpha(_) => depth += 1,
            Letter::Beta(_) if depth > 0 => depth -= 1,
            Letter::Beta(_) => unmatched_beta += 1,
        }
    }
    (unmatched_beta, depth)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Side::Plus),
            "minus" | "-" => Ok(Side::Minus),
            _ => Err(Error::parse(format!("side must be plus or minus, got `{s}`"))),
        }
    }
}

/// Cylinder measure `(N+1)^{-|w|} · N^{-u}`, with `u` the unmatched β count
/// for the plus measure and the unmatched α count for the minus measure.
/// Words that reduce to zero carry measure 0.
pub fn mu_cylinder(w: &DyckWord, side: Side) -> BigRational {
    if reduce(w).is_zero() {
        return BigRational::zero();
    }
    let (ub, ua) = unmatched_counts(w);
    let u = match side {
        Side::Plus => ub,
        Side::Minus => ua,
    };
    let n = BigInt::from(w.n);
    let den = (&n + 1u32).pow(w.len() as u32) * n.pow(u as u32);
    BigRational::new(BigInt::one(), den)
}

/// `h = log(N+1) + coeff · log N`, exact in the rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalEntropy {
    pub brackets: u32,
    pub slope: BigRational,
    pub plus_coeff: BigRational,
    pub minus_coeff: BigRational,
}

impl LocalEntropy {
    fn eval(&self, coeff: &BigRational) -> f64 {
        let n = self.brackets as f64;
        (n + 1.0).ln() + coeff.to_f64().unwrap_or(f64::NAN) * n.ln()
    }

    pub fn h_plus(&self) -> f64 {
        self.eval(&self.plus_coeff)
    }

    pub fn h_minus(&self) -> f64 {
        self.eval(&self.minus_coeff)
    }

    /// `min(h₊, h₋)` has zero `log N` coefficient.
    pub fn min_is_log_n_plus_one(&self) -> bool {
        self.plus_coeff.is_zero() || self.minus_coeff.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "slope": self.slope.to_string(),
            "h_plus": { "log_n_plus_1": 1, "log_n": self.plus_coeff.to_string(), "value": self.h_plus() },
            "h_minus": { "log_n_plus_1": 1, "log_n": self.minus_coeff.to_string(), "value": self.h_minus() },
        })
    }
}

/// Decay exponents of the two cylinder measures along the periodic orbit of `w`.
///
/// The closed form is confirmed against the unmatched counts of two
/// consecutive long powers of `w`.
pub fn local_entropy(w: &DyckWord) -> Result<LocalEntropy> {
    if !is_periodic_admissible(w) {
        return Err(Error::invalid(format!("`{w}` is not periodic-admissible")));
    }
    let len = w.len() as i64;
    let j = w.excess();
    let slope = BigRational::new(BigInt::from(j), BigInt::from(len));
    let zero = BigRational::zero();
    let neg = -slope.clone();
    let plus_coeff = if neg > zero { neg.clone() } else { zero.clone() };
    let minus_coeff = if slope > zero { slope.clone() } else { zero };
    let k = w.len() + 2;
    let (b1, a1) = unmatched_counts(&w.repeat(k));
    let (b2, a2) = unmatched_counts(&w.repeat(k + 1));
    let (db, da) = (b2 as i64 - b1 as i64, a2 as i64 - a1 as i64);
    if db != (-j).max(0) || da != j.max(0) {
        return Err(Error::Internal(format!("unmatched growth of `{w}` disagrees with its excess")));
    }
    Ok(LocalEntropy { brackets: w.n, slope, plus_coeff, minus_coeff })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub n: u64,
    pub count: BigUint,
    pub rate: f64,
}

/// `(n, |D_N^(n)|, (1/n) log |D_N^(n)|)` for `n = 1..=n_max`.
pub fn growth_rate_table(brackets: u32, n_max: u64) -> Vec<GrowthRow> {
    (1..=n_max)
        .map(|n| {
            let count = periodic_count_total(brackets, n);
            let rate = ln_big(&count) / n as f64;
            GrowthRow { n, count, rate }
        })
        .collect()
}

/// Sample a word of the given length from the plus measure: uniform symbols
/// in `0..=N`, nonzero `i` an opener of type `i`, zero a closer typed by its
/// matching opener in the window or uniformly when unmatched in the window.
pub fn sample_mu_plus(brackets: u32, length: usize, seed: u64) -> Result<DyckWord> {
    if length == 0 {
        return Err(Error::invalid("sample length must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stack: Vec<u32> = Vec::new();
    let mut letters = Vec::with_capacity(length);
    for _ in 0..length {
        let s: u32 = rng.gen_range(0..=brackets);
        if s > 0 {
            stack.push(s);
            letters.push(Letter::Alpha(s));
        } else {
            let t = match stack.pop() {
                Some(t) => t,
                None => rng.gen_range(1..=brackets),
            };
            letters.push(Letter::Beta(t));
        }
    }
    DyckWord::new(brackets, letters)
}

/// Why a candidate factor sequence was eliminated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `z ≡ 1`: the trivial splitting.
    Trivial,
    /// Some `x_k ≢ x_0 (mod N)` on one of the two sides.
    Congruence { k: usize },
    /// Not produced by the orbit-realizability engine.
    Realizability,
    /// `z_k` does not divide the count at the smallest excess.
    Divisibility { k: usize },
    /// `z_k` exceeds the count at the smallest excess.
    Comparison { k: usize },
    Survives,
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::Trivial => "trivial".into(),
            Verdict::Congruence { k } => format!("congruence mod N fails at k={k}"),
            Verdict::Realizability => "not orbit-realizable".into(),
            Verdict::Divisibility { k } => format!("z_k does not divide the balanced count at k={k}"),
            Verdict::Comparison { k } => format!("z_k exceeds the balanced count at k={k}"),
            Verdict::Survives => "survives".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CandidateVerdict {
    /// `z_k = N^{exponents[k]}`.
    pub exponents: Vec<u64>,
    pub verdict: Verdict,
}

/// Outcome of the graded periodic-point argument for `D_N`.
#[derive(Debug, Clone)]
pub struct DyckCertificate {
    pub brackets: u32,
    pub k_max: u32,
    pub periods: Vec<u64>,
    /// `|D^(N^k, 1)| = N^{N^k}`.
    pub top_counts: Vec<BigUint>,
    /// Count at the smallest excess of the same parity as `N^k`.
    pub balanced_counts: Vec<BigUint>,
    pub balanced_excess: Vec<i64>,
    pub engine_pairs: usize,
    pub candidates: Vec<CandidateVerdict>,
    pub holds: bool,
}

impl DyckCertificate {
    pub fn to_json(&self) -> Value {
        let s = |v: &[BigUint]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut tally: BTreeMap<String, usize> = BTreeMap::new();
        for c in &self.candidates {
            let key = match c.verdict {
                Verdict::Congruence { .. } => "congruence".to_string(),
                Verdict::Divisibility { .. } => "divisibility".to_string(),
                Verdict::Comparison { .. } => "comparison".to_string(),
                ref v => v.label(),
            };
            *tally.entry(key).or_default() += 1;
        }
        let nontrivial: Vec<Value> = self
            .candidates
            .iter()
            .filter(|c| c.verdict != Verdict::Trivial && !matches!(c.verdict, Verdict::Congruence { .. }))
            .map(|c| json!({ "z_exponents": c.exponents, "verdict": c.verdict.label() }))
            .collect();
        json!({
            "n_brackets": self.brackets,
            "k_max": self.k_max,
            "periods": self.periods,
            "top_counts": s(&self.top_counts),
            "balanced_counts": s(&self.balanced_counts),
            "balanced_excess": self.balanced_excess,
            "engine_pairs": self.engine_pairs,
            "candidates": self.candidates.len(),
            "eliminated_by": tally,
            "candidates_past_congruence": nontrivial,
            "holds": self.holds,
        })
    }
}

/// For prime `N`, a splitting `D_N = Y × Z` would give `|Y^(n,1)| |Z^(n)| =
/// N^n` at `n = N^k`, so `z_k = N^{l_k}`. Every such candidate is tested
/// against the mod-`N` congruence, orbit-realizability (via the factorization
/// engine), divisibility of the balanced count, and the size comparison.
/// The certificate holds when only `z ≡ 1` survives.
pub fn dyck_prime_certificate(brackets: u32, k_max: u32, limits: &Limits) -> Result<DyckCertificate> {
    if !is_prime_u64(brackets as u64) {
        return Err(Error::invalid(format!("N = {brackets} is not prime")));
    }
    let nb = BigUint::from(brackets);
    let periods: Vec<u64> = (0..=k_max).map(|k| (brackets as u64).pow(k)).collect();
    let top_counts: Vec<BigUint> = periods
        .iter()
        .map(|&p| periodic_count_closed_form(brackets, p, p as i64))
        .collect::<Result<_>>()?;
    let balanced_excess: Vec<i64> = periods.iter().map(|&p| (p % 2) as i64).collect();
    let balanced_counts: Vec<BigUint> = periods
        .iter()
        .zip(&balanced_excess)
        .map(|(&p, &j)| periodic_count_closed_form(brackets, p, j))
        .collect::<Result<_>>()?;
    let seq = CountSequence::from_period_pairs(periods.iter().copied().zip(top_counts.iter().cloned()));
    let engine = count_sequence_factorizations(&seq, *periods.last().unwrap(), limits)?;
    let realizable: std::collections::BTreeSet<Vec<BigUint>> = engine.pairs.iter().map(|p| p.b.clone()).collect();

    let mut candidates = Vec::new();
    let mut exps = vec![0u64; periods.len()];
    loop {
        let z: Vec<BigUint> = exps.iter().map(|&l| nb.pow(l as u32)).collect();
        let y: Vec<BigUint> = top_counts.iter().zip(&z).map(|(t, z)| t / z).collect();
        let verdict = if exps.iter().all(|&l| l == 0) {
            Verdict::Trivial
        } else if let Some(k) = (1..periods.len()).find(|&k| {
            (&y[k] % &nb) != (&y[0] % &nb) || (&z[k] % &nb) != (&z[0] % &nb)
        }) {
            Verdict::Congruence { k }
        } else if !realizable.contains(&z) {
            Verdict::Realizability
        } else if let Some(k) = (0..periods.len()).find(|&k| !(&balanced_counts[k] % &z[k]).is_zero()) {
            Verdict::Divisibility { k }
        } else if let Some(k) = (0..periods.len()).find(|&k| z[k] > balanced_counts[k]) {
            Verdict::Comparison { k }
        } else {
            Verdict::Survives
        };
        candidates.push(CandidateVerdict { exponents: exps.clone(), verdict });
        let mut i = 0;
        loop {
            if i == exps.len() {
                let holds = candidates.iter().all(|c| c.verdict != Verdict::Survives);
                return Ok(DyckCertificate {
                    brackets,
                    k_max,
                    periods,
                    top_counts,
                    balanced_counts,
                    balanced_excess,
                    engine_pairs: engine.pairs.len(),
                    candidates,
                    holds,
                });
            }
            if exps[i] < periods[i] {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u32, s: &str) -> DyckWord {
        DyckWord::parse(n, s).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce(&w(2, "a1 b1")), ReducedForm::Word { betas: vec![], alphas: vec![] });
        assert!(reduce(&w(2, "a1 b2")).is_zero());
        assert_eq!(reduce(&w(2, "b2 a1 a1 b1")), ReducedForm::Word { betas: vec![2], alphas: vec![1] });
        assert!(DyckWord::parse(2, "a3").is_err());
        assert!(DyckWord::parse(2, "c1").is_err());
        assert_eq!(w(2, "b2 a1").to_string(), "b2 a1");
    }

    /// Independent admissibility test: every closer in the doubled-up
    /// periodic word is scanned back to its matching opener.
    fn scan_admissible(word: &DyckWord) -> bool {
        let codes = word.codes();
        let n = codes.len();
        let long: Vec<i32> = codes.iter().copied().cycle().take(4 * n + 4).collect();
        for (pos, &c) in long.iter().enumerate() {
            if c >= 0 {
                continue;
            }
            let mut depth = 0i64;
            for q in (0..pos).rev() {
                if long[q] < 0 {
                    depth += 1;
                } else if depth == 0 {
                    if long[q] != -c {
                        return false;
                    }
                    break;
                } else {
                    depth -= 1;
                }
            }
        }
        true
    }

    #[test]
    fn periodic_admissibility_matches_scan() {
        assert!(is_periodic_admissible(&w(2, "a1")));
        assert!(!is_periodic_admissible(&w(2, "a1 b2")));
        assert!(is_periodic_admissible(&w(2, "b1 a1")));
        for len in 1..=5u32 {
            let total = 4u64.pow(len);
            for idx in 0..total {
                let mut letters = Vec::new();
                let mut r = idx;
                for _ in 0..len {
                    let x = r % 4;
                    r /= 4;
                    let t = (x / 2) as u32 + 1;
                    letters.push(if x % 2 == 0 { Letter::Alpha(t) } else { Letter::Beta(t) });
                }
                let word = DyckWord::new(2, letters).unwrap();
                assert_eq!(is_periodic_admissible(&word), scan_admissible(&word), "{word}");
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(periodic_count_closed_form(2, 4, 0).unwrap(), BigUint::from(24u32));
        assert_eq!(periodic_count_closed_form(2, 2, 0).unwrap(), BigUint::from(4u32));
        assert_eq!(periodic_count_closed_form(3, 5, 5).unwrap(), BigUint::from(243u32));
        assert!(matches!(periodic_count_closed_form(2, 3, 0), Err(Error::Parity { .. })));
        assert_eq!(periodic_count_total(2, 2), BigUint::from(12u32));
        let l = Limits::default();
        let o = periodic_count_oracle(2, 1, &l).unwrap();
        assert_eq!(o.values().sum::<BigUint>(), BigUint::from(4u32));
        for n in 1..=6 {
            let o = periodic_count_oracle(2, n, &l).unwrap();
            for (j, c) in &o {
                assert_eq!(c, &periodic_count_closed_form(2, n, *j).unwrap());
            }
            assert_eq!(o.get(&(n as i64)), o.get(&-(n as i64)));
        }
    }

    #[test]
    fn cylinders_and_entropy() {
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        assert_eq!(mu_cylinder(&w(2, "a1"), Side::Plus), third);
        assert_eq!(mu_cylinder(&w(2, "b1"), Side::Plus), BigRational::new(BigInt::one(), BigInt::from(6)));
        assert_eq!(mu_cylinder(&w(2, "a1 b2"), Side::Plus), BigRational::zero());
        assert_eq!(unmatched_counts(&w(2, "b1 a1 a2")), (1, 2));
        assert_eq!(unmatched_counts(&w(2, "b1 b2")), (2, 0));
        let e = local_entropy(&w(2, "a1 a2")).unwrap();
        assert!((e.h_plus() - 3f64.ln()).abs() < 1e-12);
        assert!((e.h_minus() - 6f64.ln()).abs() < 1e-12);
        let b = local_entropy(&w(2, "a1 b1")).unwrap();
        assert_eq!(b.h_plus(), b.h_minus());
        assert!(local_entropy(&w(2, "a1 b2")).is_err());
    }

    #[test]
    fn monoid_morphism() {
        let words = ["a1 b1 b2", "a2 a1", "b1 a2 b2", "b2", "a1 a1 b1"];
        for u in words {
            for v in words {
                let (u, v) = (w(2, u), w(2, v));
                let direct = reduce(&u.concat(&v));
                let via = match (reduce(&u).to_word(2), reduce(&v).to_word(2)) {
                    (Some(a), Some(b)) => reduce(&a.concat(&b)),
                    _ => ReducedForm::Zero,
                };
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn sampler() {
        let a = sample_mu_plus(2, 500, 7).unwrap();
        assert_eq!(a, sample_mu_plus(2, 500, 7).unwrap());
        assert!(!reduce(&a).is_zero());
    }

    #[test]
    fn certificates() {
        let l = Limits::default();
        let c2 = dyck_prime_certificate(2, 3, &l).unwrap();
        assert!(c2.holds);
        assert_eq!(c2.top_counts, [2u32, 4, 16, 256].map(BigUint::from).to_vec());
        let c3 = dyck_prime_certificate(3, 2, &l).unwrap();
        assert!(c3.holds);
        assert!(dyck_prime_certificate(4, 2, &l).is_err());
    }
}
