//! Draw a path, its decomposition peaks, and its image. Text goes to stdout;
//! SVG files go to the directory given as the first argument (default: the
//! system temp directory).

use std::path::PathBuf;

use lattice_reflect::{phi, render_ascii, render_svg, LatticePath, RenderSpec};

fn draw(dir: &std::path::Path) -> Result<(), Box<dyn std::error::Error>> {
    let t: LatticePath = "UUDUDDUUUDDDDU".parse()?;
    let (image, fwd) = phi(&t)?;

    let before = RenderSpec::new(t.clone()).with_trace(fwd.clone());
    let after = RenderSpec::new(image.clone()).with_trace(fwd);
    println!("{t}\n{}", render_ascii(&before)?);
    println!("{image}\n{}", render_ascii(&after)?);

    std::fs::create_dir_all(dir)?;
    for (name, spec) in [("path.svg", &before), ("image.svg", &after)] {
        let file = dir.join(name);
        std::fs::write(&file, render_svg(spec))?;
        println!("wrote {}", file.display());
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    draw(&std::env::temp_dir().join("lattice-reflect-figures"))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(dir) => draw(&PathBuf::from(dir)),
        None => run_example(),
    }
}
