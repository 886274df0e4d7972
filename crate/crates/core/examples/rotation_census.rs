// Orbit censuses of finite rotations and of F_p[x]-modules.

use shiftlab::rotations::{self as rot, FiniteRotation};
use shiftlab::{Limits, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();

    let shift = FiniteRotation::new(vec![5; 4], vec![0; 4], 1)?;
    println!("5-symbol shift on Z/4: {}", rot::orbit_census(&shift, &limits)?);

    let odo = FiniteRotation::new(vec![2, 3, 5], vec![1, 1, 1], 0)?;
    println!("rotation by 1 on Z2 x Z3 x Z5: {}", rot::orbit_census(&odo, &limits)?);

    let d = rot::decompose_with(5, 4, vec![vec![4, 0, 1], vec![1, 0, 1]], &limits)?;
    for (m, c) in &d.summands {
        println!("F_5[x]/({}): {c}", rot::fp_to_string(&m.modulus));
    }
    println!("summands reassemble: {}", d.reassembles);

    let fs = rot::rotation_factorizations(&[2, 3, 5], &limits)?;
    println!("factorizations over {{2,3,5}}: {fs:?}");
    for row in rot::odometer_truncations(11) {
        println!("primes <= {}: {} blocks, {} factorizations", row.bound, row.finest_blocks, row.factorizations);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
