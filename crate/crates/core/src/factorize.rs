//! Splitting a periodic-point count sequence into two orbit-realizable factors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::budget::{Limits, NodeCounter};
use crate::counts::CountSequence;
use crate::error::{Error, Result};
use crate::numtheory::{divisors_big, mobius};

/// One candidate splitting `c_n = a_n · b_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorPair {
    pub a: Vec<BigUint>,
    pub b: Vec<BigUint>,
}

impl FactorPair {
    /// One side is identically 1.
    pub fn is_trivial(&self) -> bool {
        self.a.iter().all(BigUint::is_one) || self.b.iter().all(BigUint::is_one)
    }
}

/// All realizable splittings of a count sequence up to a horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSearch {
    pub periods: Vec<u64>,
    pub counts: Vec<BigUint>,
    /// Sorted lexicographically by `a`.
    pub pairs: Vec<FactorPair>,
    pub nodes: u64,
}

impl FactorSearch {
    pub fn nontrivial(&self) -> impl Iterator<Item = &FactorPair> {
        self.pairs.iter().filter(|p| !p.is_trivial())
    }

    /// No nontrivial pair survived: a direct-primeness certificate at this horizon.
    pub fn only_trivial(&self) -> bool {
        self.nontrivial().next().is_none()
    }

    pub fn to_json(&self) -> Value {
        let seq = |v: &[BigUint]| Value::Array(v.iter().map(|x| json!(x.to_string())).collect());
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|p| json!({ "a": seq(&p.a), "b": seq(&p.b), "trivial": p.is_trivial() }))
            .collect();
        json!({
            "periods": self.periods,
            "counts": seq(&self.counts),
            "pairs": pairs,
            "pair_count": self.pairs.len(),
            "nontrivial_count": self.nontrivial().count(),
            "only_trivial": self.only_trivial(),
        })
    }
}

/// Möbius data for each position: `(coefficient, earlier position)` pairs
/// whose sum gives `n` times the number of orbits of exact length `n`, or
/// `None` when some divisor of `n` is missing from the sequence.
fn mobius_plan(periods: &[u64]) -> Vec<Option<Vec<(i64, usize)>>> {
    periods
        .iter()
        .map(|&n| {
            let mut terms = Vec::new();
            for (j, &m) in periods.iter().enumerate() {
                if n % m == 0 {
                    let mu = mobius(n / m);
                    if mu != 0 {
                        terms.push((mu, j));
                    }
                }
            }
            let needed = crate::numtheory::divisors(n).into_iter().filter(|d| mobius(n / d) != 0).count();
            (terms.len() == needed).then_some(terms)
        })
        .collect()
}

fn realizable_at(plan: &[(i64, usize)], n: u64, values: &[BigUint]) -> bool {
    let s: BigInt = plan.iter().map(|&(mu, j)| BigInt::from(mu) * BigInt::from(values[j].clone())).sum();
    !s.is_negative() && s.is_multiple_of(&BigInt::from(n))
}

struct Ctx<'a> {
    periods: &'a [u64],
    counts: &'a [BigUint],
    divisors: &'a [Vec<BigUint>],
    plan: &'a [Option<Vec<(i64, usize)>>],
    nodes: &'a NodeCounter,
}

impl Ctx<'_> {
    fn extend(&self, a: &mut Vec<BigUint>, b: &mut Vec<BigUint>, out: &mut Vec<FactorPair>) -> Result<()> {
        let i = a.len();
        if i == self.periods.len() {
            out.push(FactorPair { a: a.clone(), b: b.clone() });
            return Ok(());
        }
        for d in &self.divisors[i] {
            self.nodes.charge(1)?;
            a.push(d.clone());
            b.push(&self.counts[i] / d);
            if self.admissible(i, a, b) {
                self.extend(a, b, out)?;
            }
            a.pop();
            b.pop();
        }
        Ok(())
    }

    fn admissible(&self, i: usize, a: &[BigUint], b: &[BigUint]) -> bool {
        match &self.plan[i] {
            Some(plan) => realizable_at(plan, self.periods[i], a) && realizable_at(plan, self.periods[i], b),
            None => true,
        }
    }
}

/// Every pair `(a, b)` of count sequences over the periods of `c` up to
/// `horizon` with `a_n b_n = c_n` and both sides orbit-realizable.
///
/// The search branches on divisors period by period, pruning as soon as a
/// Möbius sum fails. First-level branches run in parallel; output order is
/// lexicographic in `a` regardless of the worker count.
pub fn count_sequence_factorizations(c: &CountSequence, horizon: u64, limits: &Limits) -> Result<FactorSearch> {
    let entries: Vec<(u64, BigUint)> = c.periods()?.into_iter().filter(|(n, _)| *n <= horizon).collect();
    if entries.is_empty() {
        return Err(Error::invalid("no periods within the horizon"));
    }
    if entries.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::invalid("duplicate period in count sequence"));
    }
    if let Some((n, _)) = entries.iter().find(|(_, v)| v.is_zero()) {
        return Err(Error::invalid(format!(
            "count at period {n} is zero; zero counts admit unboundedly many splittings"
        )));
    }
    let periods: Vec<u64> = entries.iter().map(|(n, _)| *n).collect();
    let counts: Vec<BigUint> = entries.iter().map(|(_, v)| v.clone()).collect();
    let plan = mobius_plan(&periods);
    for (i, p) in plan.iter().enumerate() {
        if let Some(p) = p {
            if !realizable_at(p, periods[i], &counts) {
                return Err(Error::invalid(format!("counts are not orbit-realizable at period {}", periods[i])));
            }
        }
    }
    let divisors: Vec<Vec<BigUint>> = counts.iter().map(|v| divisors_big(v, limits.max_nodes)).collect::<Result<_>>()?;
    let nodes = NodeCounter::new(limits.max_nodes, "count-sequence factorization");
    let ctx = Ctx { periods: &periods, counts: &counts, divisors: &divisors, plan: &plan, nodes: &nodes };
    let branches: Vec<Result<Vec<FactorPair>>> = limits.install(|| {
        divisors[0]
            .par_iter()
            .map(|d| {
                let mut a = vec![d.clone()];
                let mut b = vec![&counts[0] / d];
                let mut out = Vec::new();
                nodes.charge(1)?;
                if ctx.admissible(0, &a, &b) {
                    ctx.extend(&mut a, &mut b, &mut out)?;
                }
                Ok(out)
            })
            .collect()
    });
    let mut pairs = Vec::new();
    for br in branches {
        pairs.extend(br?);
    }
    Ok(FactorSearch { periods, counts, pairs, nodes: nodes.used() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powers(base: u64, horizon: u64) -> CountSequence {
        CountSequence::from_fn(horizon, |n| BigUint::from(base).pow(n as u32))
    }

    #[test]
    fn splittings_of_composite_full_shifts() {
        let l = Limits::default();
        let six = count_sequence_factorizations(&powers(6, 4), 4, &l).unwrap();
        let two: Vec<BigUint> = (1..=4).map(|n| BigUint::from(2u32).pow(n)).collect();
        let three: Vec<BigUint> = (1..=4).map(|n| BigUint::from(3u32).pow(n)).collect();
        assert!(six.pairs.contains(&FactorPair { a: two.clone(), b: three.clone() }));
        assert!(six.pairs.contains(&FactorPair { a: three, b: two.clone() }));
        let four = count_sequence_factorizations(&powers(4, 4), 4, &l).unwrap();
        assert!(four.pairs.contains(&FactorPair { a: two.clone(), b: two }));
        let mut sorted = six.pairs.clone();
        sorted.sort();
        assert_eq!(sorted, six.pairs);
    }

    #[test]
    fn every_pair_is_checked_independently() {
        let l = Limits::default();
        let res = count_sequence_factorizations(&powers(2, 6), 6, &l).unwrap();
        for p in &res.pairs {
            for n in 1..=6usize {
                assert_eq!(&p.a[n - 1] * &p.b[n - 1], BigUint::from(2u32).pow(n as u32));
            }
            for side in [&p.a, &p.b] {
                let seq = CountSequence::from_periods(side.iter().cloned());
                assert!(seq.is_orbit_realizable().unwrap());
            }
        }
        assert!(res.pairs.iter().filter(|p| p.is_trivial()).count() == 2);
    }

    #[test]
    fn deterministic_across_jobs() {
        let c = powers(6, 5);
        let one = count_sequence_factorizations(&c, 5, &Limits::default().with_jobs(1)).unwrap();
        let eight = count_sequence_factorizations(&c, 5, &Limits::default().with_jobs(8)).unwrap();
        assert_eq!(one.pairs, eight.pairs);
    }

    #[test]
    fn rejects_bad_input() {
        let l = Limits::default();
        assert!(count_sequence_factorizations(&CountSequence::from_periods([2u32, 3]), 2, &l).is_err());
        assert!(count_sequence_factorizations(&CountSequence::from_periods([0u32, 2]), 2, &l).is_err());
        let tight = Limits::default().with_max_nodes(10);
        assert!(count_sequence_factorizations(&powers(6, 6), 6, &tight).unwrap_err().is_budget());
    }
}
