// Driving the command line from code and reading its JSON report.

use shiftlab::Result;

pub fn run_example() -> Result<()> {
    let out = shiftlab::cli::run(["shiftlab", "count", "--system", "full(3,2)", "--index", "4"]);
    let report: serde_json::Value = serde_json::from_str(&out.json).expect("valid JSON");
    println!("exit {}, count {}", out.code, report["result"]["count"]);

    let bad = shiftlab::cli::run(["shiftlab", "dyck", "count", "--period", "3", "--excess", "0"]);
    println!("exit {}: {}", bad.code, bad.human);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
