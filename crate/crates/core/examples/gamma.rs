//! The counts gamma^{X,Y}_{M,N} entering the exchange relation.

use cyclic_hall::hallcore::gamma_table;
use cyclic_hall::quiverrep::{IsoClass, Quiver};
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(2), 3)?;
    let s1 = IsoClass::new(vec![1, 0], 0);
    let s2 = IsoClass::new(vec![0, 1], 0);
    for (m, n) in [(&s1, &s2), (&s2, &s1)] {
        for ((x, y), g) in gamma_table(&s, m, n)?.iter() {
            println!("gamma^{{{x},{y}}}_{{{m},{n}}} = {g}");
        }
    }
    Ok(())
}
