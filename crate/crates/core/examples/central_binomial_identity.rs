//! The convolution of central binomial coefficients sums to 4^n. Checked by
//! exact arithmetic for large n, and by splitting every path at its last
//! visit to the axis for small n.

use lattice_reflect::{verify_identity, IdentityMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [0, 1, 2, 10, 100, 2000] {
        let r = verify_identity(n, IdentityMode::Arithmetic)?;
        let digits = r.identity_lhs.to_string().len();
        println!("n = {n:>4}: sum equals 4^n ({digits} digits): {}", r.identity_ok);
        assert!(r.passed());
    }
    for n in 0..=6 {
        let r = verify_identity(n, IdentityMode::Structural)?;
        let tallies: Vec<String> = r.split_tallies.iter().map(|t| t.to_string()).collect();
        println!("n = {n}: last-zero split tallies [{}] sum {}", tallies.join(", "), r.total_paths);
        assert!(r.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
