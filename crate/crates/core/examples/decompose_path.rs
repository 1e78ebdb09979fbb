//! Split an up-starting balanced path into up runs and down segments
//! hanging off its successive maxima, then put it back together.

use lattice_reflect::{decompose, recompose, LatticePath};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["UUDD", "UDUD", "UDUUDD", "UDUUUDDD", "UDUDUUDD", "UUDUDDUUUDDDDU"] {
        let t: LatticePath = text.parse()?;
        let d = decompose(&t)?;
        println!("{t}");
        for part in &d.parts {
            println!(
                "  {:>2} up, then {:<10} {} from index {}",
                part.uprun_length,
                part.segment.steps.to_string(),
                part.segment.kind.name(),
                part.segment.start_index
            );
        }
        assert_eq!(recompose(&d)?, t);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
