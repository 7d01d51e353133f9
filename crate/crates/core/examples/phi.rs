//! Phi sends lattice products to products in the localized algebra.

use cyclic_hall::bridgeland::dh_multiply;
use cyclic_hall::latticeheis::{lat_multiply, phi_map, LatticeElement};
use cyclic_hall::quiverrep::{IsoClass, Quiver};
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(2), 3)?;
    let p = IsoClass::new(vec![1, 1], 0);
    let s2 = IsoClass::new(vec![0, 1], 0);
    let x = LatticeElement::z(&s, 3, &p, 0);
    let y = LatticeElement::z(&s, 3, &s2, 1);
    let lhs = phi_map(&s, &lat_multiply(&s, &x, &y)?)?;
    let rhs = dh_multiply(&s, &phi_map(&s, &x)?, &phi_map(&s, &y)?)?;
    println!("Phi(xy) = {lhs}");
    assert_eq!(lhs, rhs);
    Ok(())
}
