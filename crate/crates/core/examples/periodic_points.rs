// Periodic points of Z^d shifts of finite type: sublattice counts, the
// product law and periodic equivalence.

use shiftlab::sft::{self, Equivalence};
use shiftlab::{Limits, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();

    let full = sft::full_shift(3, 2)?;
    for lat in sft::sublattices_of_index(2, 4)? {
        let c = sft::count_fixed_points(&full, &lat, &limits)?;
        println!("full(3,2) on {:?}: {c}", lat.rows());
    }

    let chess = sft::chessboard(2)?;
    let torus = sft::Sublattice::scaled(2, 2)?;
    println!("proper colorings of the 2x2 torus: {}", sft::count_fixed_points(&chess, &torus, &limits)?);

    let golden = sft::golden_mean();
    let seq = sft::periodic_count_sequence(&golden, 8, &limits)?;
    let counts: Vec<String> = seq.periods()?.iter().map(|(_, c)| c.to_string()).collect();
    println!("golden mean counts: {}", counts.join(", "));
    println!("orbit-realizable: {}", seq.is_orbit_realizable()?);

    let six = sft::full_shift(6, 1)?;
    let prod = sft::product_sft(&sft::full_shift(2, 1)?, &sft::full_shift(3, 1)?)?;
    match sft::periodically_equivalent(&six, &prod, 6, &limits)? {
        Equivalence::UpToHorizon { sublattices_checked, .. } => {
            println!("full(6,1) ~ full(2,1) x full(3,1) on {sublattices_checked} periods")
        }
        Equivalence::Counterexample { lattice, left, right } => {
            println!("differ on {:?}: {left} vs {right}", lattice.rows())
        }
    }

    for n in 1..=3 {
        println!("chessboard(2) entropy bound, radius {n}: {:.6}", sft::entropy_box_estimate(&chess, n, &limits)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
