//! Isoclasses of A2 representations and their Hall numbers over F_2.

use cyclic_hall::hallcore::{hall_numbers, riedtmann_value};
use cyclic_hall::quiverrep::Quiver;
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(2), 2)?;
    let classes = s.classes_up_to(1)?;
    for c in &classes {
        println!("{c}: |Aut| = {}", s.aut_order(c)?);
    }
    for m in &classes {
        for n in &classes {
            for (l, f) in hall_numbers(&s, m, n)?.iter() {
                let r = riedtmann_value(&s, l, m, n)?;
                println!("F^{l}_{{{m},{n}}} = {f} (Riedtmann {r})");
            }
        }
    }
    Ok(())
}
