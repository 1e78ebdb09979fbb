//! Appending a balanced path that stays no higher than the first part just
//! appends its mirror image to the first part's image.

use lattice_reflect::{compose_law_check, phi, LatticePath};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [("UD", "UD"), ("UUDD", "UD"), ("UUDD", "DUUD"), ("UUUDDD", "UDDUUD")];
    for (a, b) in pairs {
        let (t1, t2): (LatticePath, LatticePath) = (a.parse()?, b.parse()?);
        let whole = phi(&t1.concat(&t2))?.0;
        let parts = phi(&t1)?.0.concat(&t2.reflect_all());
        println!("phi({a}+{b}) = {whole}   phi({a})+mirror({b}) = {parts}");
        assert!(compose_law_check(&t1, &t2)?);
    }
    // t2 rising above t1 breaks the precondition
    let err = compose_law_check(&"UD".parse()?, &"UUDD".parse()?).unwrap_err();
    println!("UD + UUDD: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
