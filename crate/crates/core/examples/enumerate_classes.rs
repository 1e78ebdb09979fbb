//! Count paths of each class by length. Balanced and unbalanced paths of
//! length 2n are equinumerous, both C(2n, n).

use lattice_reflect::{binomial, enumerate_class, ClassFilter, PathClass};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>4} {:>8} {:>8} {:>8} {:>10}", "len", "bal", "up", "down", "C(2n,n)");
    for n in 1..=8u64 {
        let len = 2 * n as usize;
        let count = |f: ClassFilter| enumerate_class(len, f).map(|it| it.count());
        let bal = count(PathClass::Balanced.into())?;
        let up = count(PathClass::UpUnbalanced.into())?;
        let down = count(PathClass::DownUnbalanced.into())?;
        let central = binomial(2 * n, n)?;
        println!("{len:>4} {bal:>8} {up:>8} {down:>8} {central:>10}");
        assert_eq!(central, (bal as u64).into());
        assert_eq!(bal, up + down);
    }
    let listed: Vec<String> = enumerate_class(4, PathClass::UpUnbalanced)?
        .map(|p| p.to_string())
        .collect();
    println!("up-unbalanced of length 4: {}", listed.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
