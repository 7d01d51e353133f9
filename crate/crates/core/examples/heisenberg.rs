//! Heisenberg double generators and their images under J'_i and J_i.

use cyclic_hall::latticeheis::{heis_multiply, j_embedding, j_prime, HeisElement, LatticeEngine};
use cyclic_hall::quiverrep::{IsoClass, Quiver};
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(1), 2)?;
    let k = IsoClass::new(vec![1], 0);
    let x = heis_multiply(&s, &HeisElement::z_minus(2, &k), &HeisElement::z_plus(2, &k))?;
    println!("Z-_S * Z+_S = {x}");
    let engine = LatticeEngine::new(&s, 3);
    println!("J'_0 = {}", j_prime(&engine, 0, &x)?);
    println!("J_0  = {}", j_embedding(&s, 3, 0, &x)?);
    Ok(())
}
