//! Rank of the ordered products on a small graded piece.

use cyclic_hall::bridgeland::{pbw_matrix_rank, PbwGrade};
use cyclic_hall::quiverrep::Quiver;
use cyclic_hall::Session;

fn main() -> cyclic_hall::Result<()> {
    let s = Session::new(Quiver::linear_a(2), 2)?;
    let grade = PbwGrade { slots: vec![0, 1, 2], module_dim: 1, alpha_bound: 1 };
    let r = pbw_matrix_rank(&s, 3, &grade)?;
    println!("{} products, rank {}", r.products, r.rank);
    Ok(())
}
