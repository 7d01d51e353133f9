//! Straightening words in the periodic lattice algebra, with a fixed and a randomized rewrite order.

use cyclic_hall::latticeheis::{LatticeEngine, Letter};
use cyclic_hall::quiverrep::{GClass, IsoClass, Quiver};
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(2), 2)?;
    let s1 = IsoClass::new(vec![1, 0], 0);
    let s2 = IsoClass::new(vec![0, 1], 0);
    let word = vec![
        Letter::Z(1, s1.clone()),
        Letter::Z(0, s2.clone()),
        Letter::K(2, GClass(vec![0, 1])),
        Letter::Z(2, s1),
    ];
    let fixed = LatticeEngine::new(&s, 3).evaluate(&word)?;
    let random = LatticeEngine::randomized(&s, 3, 42).evaluate(&word)?;
    println!("{fixed}");
    assert_eq!(fixed, random);
    Ok(())
}
