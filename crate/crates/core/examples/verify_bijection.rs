//! Exhaustively check that the map is a bijection for every path of length
//! 2n. Pass n (1..=10) and a partition count on the command line.
//!
//!     cargo run --release --example verify_bijection -- 10 16

use lattice_reflect::verify_bijection;

fn check(n: u32, partitions: usize) -> Result<(), Box<dyn std::error::Error>> {
    let report = verify_bijection(n, partitions)?;
    print!("{}", report.to_kv_text());
    println!("elapsed_ms={:.1}", report.elapsed.as_secs_f64() * 1e3);
    if !report.passed() {
        return Err(format!("verification failed for n = {n}").into());
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    check(6, 4)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n = args.next().map(|a| a.parse()).transpose()?.unwrap_or(8);
    let partitions = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4);
    check(n, partitions)
}
