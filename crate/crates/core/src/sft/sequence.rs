use num_bigint::BigUint;

use super::lattice::{sublattices_up_to, Sublattice};
use super::spec::SftSpec;
use super::torus::count_fixed_points;
use crate::budget::Limits;
use crate::counts::{CountSequence, PeriodIndex};
use crate::error::{Error, Result};

/// Fixed-point counts up to `horizon`: per period for d = 1, per sublattice
/// of index at most `horizon` for d ≥ 2.
pub fn periodic_count_sequence(x: &SftSpec, horizon: u64, limits: &Limits) -> Result<CountSequence> {
    if horizon == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let mut entries = Vec::new();
    for l in sublattices_up_to(x.dim(), horizon)? {
        let count = count_fixed_points(x, &l, limits)?;
        let key = if x.dim() == 1 { PeriodIndex::Period(l.index()) } else { PeriodIndex::Lattice(l) };
        entries.push((key, count));
    }
    Ok(CountSequence::new(entries))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// Every sublattice of index at most `horizon` has equal counts.
    UpToHorizon { horizon: u64, sublattices_checked: usize },
    /// First sublattice (by index, then basis) where the counts differ.
    Counterexample { lattice: Sublattice, left: BigUint, right: BigUint },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::UpToHorizon { .. })
    }
}

pub fn periodically_equivalent(x: &SftSpec, y: &SftSpec, horizon: u64, limits: &Limits) -> Result<Equivalence> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    if horizon == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let lattices = sublattices_up_to(x.dim(), horizon)?;
    for l in &lattices {
        let left = count_fixed_points(x, l, limits)?;
        let right = count_fixed_points(y, l, limits)?;
        if left != right {
            return Ok(Equivalence::Counterexample { lattice: l.clone(), left, right });
        }
    }
    Ok(Equivalence::UpToHorizon { horizon, sublattices_checked: lattices.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::spec::{full_shift, golden_mean, product_sft};

    #[test]
    fn sequences() {
        let lim = Limits::default();
        let f = periodic_count_sequence(&full_shift(2, 1).unwrap(), 4, &lim).unwrap();
        assert_eq!(f, CountSequence::from_periods([2u32, 4, 8, 16]));
        let g = periodic_count_sequence(&golden_mean(), 4, &lim).unwrap();
        assert_eq!(g, CountSequence::from_periods([1u32, 3, 4, 7]));
        let c2 = periodic_count_sequence(&full_shift(2, 2).unwrap(), 3, &lim).unwrap();
        assert_eq!(c2.len(), 1 + 3 + 4);
    }

    #[test]
    fn equivalence_verdicts() {
        let lim = Limits::default();
        let six = full_shift(6, 1).unwrap();
        let prod = product_sft(&full_shift(2, 1).unwrap(), &full_shift(3, 1).unwrap()).unwrap();
        assert!(periodically_equivalent(&six, &prod, 6, &lim).unwrap().is_equivalent());
        let v = periodically_equivalent(&full_shift(2, 1).unwrap(), &golden_mean(), 5, &lim).unwrap();
        assert_eq!(
            v,
            Equivalence::Counterexample {
                lattice: Sublattice::scaled(1, 1).unwrap(),
                left: BigUint::from(2u32),
                right: BigUint::from(1u32)
            }
        );
        let g = golden_mean();
        assert!(periodically_equivalent(&g, &g, 7, &lim).unwrap().is_equivalent());
    }
}
