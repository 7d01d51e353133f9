//! The smallest exchange relation in the localized algebra: e_{S,1} e_{S,0} = e_{S,0} e_{S,1} + K_{S,0}.

use cyclic_hall::bridgeland::{dh_multiply, e_generator, k_monomial};
use cyclic_hall::quiverrep::{GClass, IsoClass, Quiver};
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(1), 2)?;
    let k = IsoClass::new(vec![1], 0);
    let e1 = e_generator(&s, 3, &k, 1)?;
    let e0 = e_generator(&s, 3, &k, 0)?;
    let lhs = dh_multiply(&s, &e1, &e0)?;
    let rhs = dh_multiply(&s, &e0, &e1)?.add(&k_monomial(&s, 3, &GClass(vec![1]), 0));
    println!("e1 * e0       = {lhs}");
    println!("e0 * e1 + K_0 = {rhs}");
    assert_eq!(lhs, rhs);
    Ok(())
}
