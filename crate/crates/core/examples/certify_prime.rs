// Splitting periodic-point count sequences: the 2-shift admits only trivial
// splittings, the 6-shift splits as 2^n · 3^n.

use num_bigint::BigUint;
use shiftlab::factorize::count_sequence_factorizations;
use shiftlab::{CountSequence, Limits, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();
    for (base, horizon) in [(2u32, 8u64), (4, 6), (6, 6)] {
        let c = CountSequence::from_fn(horizon, |n| BigUint::from(base).pow(n as u32));
        let res = count_sequence_factorizations(&c, horizon, &limits)?;
        println!(
            "{base}^n up to {horizon}: {} pairs, {} nontrivial, {} search nodes",
            res.pairs.len(),
            res.nontrivial().count(),
            res.nodes
        );
        let powers = |b: u32| (1..=horizon as u32).map(|n| BigUint::from(b).pow(n)).collect::<Vec<_>>();
        if base == 6 {
            let found = res.pairs.iter().any(|p| p.a == powers(2) && p.b == powers(3));
            println!("  (2^n, 3^n) found: {found}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
