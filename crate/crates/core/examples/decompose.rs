//! Canonical decomposition of random 3-cyclic complexes of projectives.

use cyclic_hall::cyclic::{canonical_decompose, random_complex, random_term_automorphisms};
use cyclic_hall::quiverrep::Quiver;
use cyclic_hall::Session;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(2), 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let x = random_complex(&s, 3, 3, 2, &mut rng)?;
        let g = random_term_automorphisms(&s, &x, &mut rng);
        let a = canonical_decompose(&s, &x)?;
        let b = canonical_decompose(&s, &x.conjugate(&g))?;
        println!("{a}  (conjugate: {b})");
    }
    Ok(())
}
