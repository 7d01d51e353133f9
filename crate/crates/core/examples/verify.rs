//! Runs every verification suite on A2 over F_2 with period 3.

use cyclic_hall::latticeheis::{verify_suite, SuiteConfig, SUITES};
use cyclic_hall::quiverrep::Quiver;
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(2), 2)?;
    let cfg = SuiteConfig { samples: 20, ..SuiteConfig::new(3, 2) };
    for name in SUITES {
        let r = verify_suite(name, &s, &cfg)?;
        println!("{name:10} {:5} checked, {} failures", r.instances_checked, r.failures.len());
    }
    Ok(())
}
