//! The twisted product of 3-cyclic complexes on stalk and acyclic classes.

use cyclic_hall::cyclic::{htw_multiply, ComplexClass};
use cyclic_hall::quiverrep::{IsoClass, Quiver};
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(1), 2)?;
    let k = IsoClass::new(vec![1], 0);
    let pairs = [
        (ComplexClass::stalk(3, k.clone(), 1), ComplexClass::stalk(3, k.clone(), 0)),
        (ComplexClass::stalk(3, k.clone(), 0), ComplexClass::stalk(3, k.clone(), 1)),
        (ComplexClass::contractible(3, k.clone(), 0), ComplexClass::stalk(3, k.clone(), 0)),
    ];
    for (x, y) in &pairs {
        let terms: Vec<String> = htw_multiply(&s, x, y)?.iter().map(|(c, z)| format!("({c}) {z}")).collect();
        println!("{x} * {y} = {}", terms.join(" + "));
    }
    Ok(())
}
