// The Dyck shift: reduction, periodic counts, growth, cylinder measures,
// sampling and the primeness certificate.

use shiftlab::dyck::{self, DyckWord, Side};
use shiftlab::{Limits, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();

    let w = DyckWord::parse(2, "b2 a1 a1 b1")?;
    println!("reduce({w}) = {:?}", dyck::reduce(&w));

    let oracle = dyck::periodic_count_oracle(2, 4, &limits)?;
    for (j, c) in &oracle {
        println!("N=2 n=4 excess {j:+}: oracle {c}, closed form {}", dyck::periodic_count_closed_form(2, 4, *j)?);
    }

    for row in dyck::growth_rate_table(2, 14).iter().step_by(4) {
        println!("n={:>2} |D^(n)|={:>12} rate {:.4} (log 3 = {:.4})", row.n, row.count, row.rate, 3f64.ln());
    }

    let b = DyckWord::parse(2, "b1")?;
    println!("mu+([b1]) = {}, mu-([b1]) = {}", dyck::mu_cylinder(&b, Side::Plus), dyck::mu_cylinder(&b, Side::Minus));
    let h = dyck::local_entropy(&DyckWord::parse(2, "a1 a2 b2")?)?;
    println!("local entropies of (a1 a2 b2)^inf: h+ = {:.4}, h- = {:.4}", h.h_plus(), h.h_minus());

    println!("sample: {}", dyck::sample_mu_plus(2, 24, 42)?);

    let cert = dyck::dyck_prime_certificate(2, 3, &limits)?;
    println!("certificate for N=2, k<=3 holds: {}", cert.holds);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
