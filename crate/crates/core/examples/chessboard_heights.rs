// Height functions of the 3-colored chessboard: lifting, cocycles, max-slope
// points, periodic extension and symmetry signs.

use shiftlab::chessboard::{self as cb, Grid, Symmetry};
use shiftlab::sft::Sublattice;
use shiftlab::{Limits, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();

    let slope = Grid::centered(2, 2, |n| (n[0] + n[1]).rem_euclid(3));
    let h = cb::lift_height(&slope, slope.values[0] - 3 * 2)?;
    println!("slope coloring on [-2,2]^2:\n{}\nheights:\n{}", slope.to_text(), h.to_text());

    let pts = cb::max_slope_points(&Sublattice::scaled(2, 3)?, &limits)?;
    println!("max-slope points on the 3x3 torus: {}", pts.len());
    for x in &pts {
        println!("  Ht(x, (3,3)) = {}", cb::height_cocycle(x, &[3, 3])?);
    }

    let p = Grid::parse("010\n202\n010", Some(vec![-1, -1]))?;
    let e = cb::periodic_extension(&p, None, &limits)?;
    println!("extension of the plus pattern: period {} via {:?}", e.period, e.method);

    for name in ["identity", "rot1", "neg"] {
        let s = cb::aut_slope_sign(&Symmetry::named(name, vec![0, 0])?, 2, &limits)?;
        println!("slope sign of {name}: {s:+}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
