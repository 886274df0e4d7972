// Transfer matrices, zeta coefficients and certified Perron roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use shiftlab::perron::{self, FactorBounds, PerronNumber};
use shiftlab::poly::IntPoly;
use shiftlab::{sft, zeta, Limits, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();
    let a = zeta::to_transfer_matrix(&sft::golden_mean(), &limits)?;
    let coeffs: Vec<String> = zeta::zeta_series(&a, 6)?.iter().map(ToString::to_string).collect();
    println!("golden mean zeta: {}", coeffs.join(", "));

    let width = BigRational::new(BigInt::from(1), BigInt::from(10).pow(9));
    let phi = perron::perron_root(&a, &width)?;
    let (lo, hi) = phi.bounds();
    println!("Perron root {} in [{lo}, {hi}]", phi.min_poly());

    let chess = zeta::to_transfer_matrix(&sft::chessboard(1)?, &limits)?;
    println!("chessboard(1) spectral radius: {}", perron::perron_root(&chess, &width)?);

    for p in ["x - 2", "x^2 - x - 1", "x^2 - 2"] {
        println!("is_perron({p}) = {}", perron::is_perron(&IntPoly::parse(p)?, None)?);
    }

    let sq = perron::perron_multiply(&phi, &phi)?;
    println!("phi * phi has minimal polynomial {}", sq.min_poly());

    for target in ["x - 6", "x - 12", "x^2 - x - 1"] {
        let lam = PerronNumber::from_poly(&IntPoly::parse(target)?)?;
        let f = perron::perron_factorizations(&lam, FactorBounds::default())?;
        println!("{target}: {:?} (irreducible within bounds: {})", f.signatures(), f.irreducible);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
