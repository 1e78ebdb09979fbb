//! Map a few balanced paths to their unbalanced images and back, printing
//! the peak points and reflection levels found along the way.

use lattice_reflect::{phi, phi_inverse, LatticePath};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["UD", "UDUD", "UDDU", "UDUUDD", "DUDDUU", "UUDDUDUUUDDD"] {
        let t: LatticePath = text.parse()?;
        let (image, fwd) = phi(&t)?;
        let (back, inv) = phi_inverse(&image)?;
        assert_eq!(back, t);
        assert_eq!(inv.b_points, fwd.b_points);

        let peaks: Vec<String> = fwd
            .b_points
            .iter()
            .map(|b| format!("({},{})", b.index, b.height))
            .collect();
        println!(
            "{t:>14} -> {image:<14} {:<15} peaks {} lines {:?}",
            image.classify().to_string(),
            peaks.join(" "),
            fwd.reflection_lines
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
