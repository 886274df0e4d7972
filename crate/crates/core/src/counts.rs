//! Periodic-point count data and the orbit-realizability test.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, mobius};
use crate::sft::Sublattice;

/// What a count is indexed by.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeriodIndex {
    /// Points with `σ^n x = x` (one-dimensional systems).
    Period(u64),
    /// Points fixed by every shift in a sublattice.
    Lattice(Sublattice),
}

impl PeriodIndex {
    pub fn to_json(&self) -> Value {
        match self {
            PeriodIndex::Period(n) => json!(n),
            PeriodIndex::Lattice(l) => json!(l.rows()),
        }
    }
}

/// Fixed-point counts indexed by period or by sublattice.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountSequence {
    entries: Vec<(PeriodIndex, BigUint)>,
}

impl CountSequence {
    pub fn new(entries: Vec<(PeriodIndex, BigUint)>) -> Self {
        CountSequence { entries }
    }

    /// Counts for periods `1..=counts.len()`.
    pub fn from_periods<T: Into<BigUint>>(counts: impl IntoIterator<Item = T>) -> Self {
        CountSequence {
            entries: counts
                .into_iter()
                .enumerate()
                .map(|(i, c)| (PeriodIndex::Period(i as u64 + 1), c.into()))
                .collect(),
        }
    }

    /// Counts for an explicit list of periods.
    pub fn from_period_pairs(pairs: impl IntoIterator<Item = (u64, BigUint)>) -> Self {
        CountSequence {
            entries: pairs.into_iter().map(|(n, c)| (PeriodIndex::Period(n), c)).collect(),
        }
    }

    /// `c_n = f(n)` for `n = 1..=horizon`.
    pub fn from_fn(horizon: u64, f: impl Fn(u64) -> BigUint) -> Self {
        CountSequence::from_period_pairs((1..=horizon).map(|n| (n, f(n))))
    }

    pub fn entries(&self) -> &[(PeriodIndex, BigUint)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The count at period `n`, if present.
    pub fn period(&self, n: u64) -> Option<&BigUint> {
        self.entries.iter().find_map(|(k, c)| match k {
            PeriodIndex::Period(m) if *m == n => Some(c),
            _ => None,
        })
    }

    /// Period-indexed entries sorted by period; fails on lattice entries.
    pub fn periods(&self) -> Result<Vec<(u64, BigUint)>> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (k, c) in &self.entries {
            match k {
                PeriodIndex::Period(n) => out.push((*n, c.clone())),
                PeriodIndex::Lattice(_) => {
                    return Err(Error::invalid("expected a period-indexed (one-dimensional) count sequence"))
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Number of orbits of exact length `n`, per period present whose
    /// divisors are all present: `(1/n) Σ_{m|n} μ(n/m) c_m`. `None` where the
    /// Möbius sum is negative or not divisible by `n`.
    pub fn orbit_counts(&self) -> Result<Vec<(u64, Option<BigUint>)>> {
        let periods = self.periods()?;
        let lookup = |m: u64| periods.iter().find(|(p, _)| *p == m).map(|(_, c)| c);
        let mut out = Vec::new();
        for (n, _) in &periods {
            let mut sum = BigInt::zero();
            let mut complete = true;
            for m in divisors(*n) {
                match lookup(m) {
                    Some(c) => sum += BigInt::from(mobius(n / m)) * BigInt::from(c.clone()),
                    None => complete = false,
                }
            }
            if !complete {
                continue;
            }
            let (q, r) = sum.div_rem(&BigInt::from(*n));
            let value = if q.is_negative() || !r.is_zero() { None } else { q.to_biguint() };
            out.push((*n, value));
        }
        Ok(out)
    }

    /// Möbius sums nonnegative and divisible by the period, wherever defined.
    pub fn is_orbit_realizable(&self) -> Result<bool> {
        Ok(self.orbit_counts()?.iter().all(|(_, v)| v.is_some()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(k, c)| match k {
                    PeriodIndex::Period(n) => json!({ "period": n, "count": c.to_string() }),
                    PeriodIndex::Lattice(l) => json!({ "lattice": l.rows(), "count": c.to_string() }),
                })
                .collect(),
        )
    }

    /// Parse a count file: either one count per line (periods 1, 2, ...) or
    /// `period count` pairs per line. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut next = 1u64;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line
                .split(|c: char| c.is_whitespace() || c == ':' || c == ',')
                .filter(|t| !t.is_empty())
                .collect();
            let bad = || Error::parse(format!("line {}: expected `count` or `period count`", i + 1));
            let (n, c) = match toks.as_slice() {
                [c] => (next, c.parse::<BigUint>().map_err(|_| bad())?),
                [n, c] => (n.parse::<u64>().map_err(|_| bad())?, c.parse::<BigUint>().map_err(|_| bad())?),
                _ => return Err(bad()),
            };
            if n == 0 {
                return Err(Error::parse(format!("line {}: periods start at 1", i + 1)));
            }
            next = n + 1;
            pairs.push((n, c));
        }
        if pairs.is_empty() {
            return Err(Error::parse("count file is empty"));
        }
        Ok(CountSequence::from_period_pairs(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_counts_of_two_shift() {
        let c = CountSequence::from_fn(6, |n| BigUint::from(2u32).pow(n as u32));
        let orbits: Vec<u64> = c
            .orbit_counts()
            .unwrap()
            .into_iter()
            .map(|(_, v)| v.unwrap().try_into().unwrap())
            .collect();
        // binary necklaces of exact period n
        assert_eq!(orbits, vec![2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn realizability_rejects_bad_sequences() {
        assert!(!CountSequence::from_periods([2u32, 3]).is_orbit_realizable().unwrap());
        assert!(!CountSequence::from_periods([3u32, 1]).is_orbit_realizable().unwrap());
        assert!(CountSequence::from_periods([1u32, 3, 4, 7, 11]).is_orbit_realizable().unwrap());
    }

    #[test]
    fn parse_formats() {
        let a = CountSequence::parse("2\n4\n8\n").unwrap();
        let b = CountSequence::parse("1 2\n2: 4\n# c\n3,8\n").unwrap();
        assert_eq!(a, b);
        assert!(CountSequence::parse("x\n").is_err());
        assert!(CountSequence::parse("").is_err());
    }
}
