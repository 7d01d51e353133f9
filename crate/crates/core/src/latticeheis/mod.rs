//! The m-periodic lattice algebra and the Heisenberg double as rewriting
//! engines, the maps into the localized Hall algebra, and the verification
//! suites.

mod heis;
mod lattice;
mod phi;
mod verify;

pub use heis::{heis_multiply, j_embedding, j_prime, HeisElement, HeisEngine, HeisKey, HeisLetter};
pub use lattice::{lat_multiply, word_of, LatKey, LatticeElement, LatticeEngine, Letter};
pub use phi::phi_map;
pub use verify::{
    all_complexes, exchange_expansion, ext_order_brute, verify_suite, window_slots, Failure, Report, ReportConfig,
    SuiteConfig, SUITES,
};
