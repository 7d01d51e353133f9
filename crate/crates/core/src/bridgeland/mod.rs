//! The localized Hall algebra of m-cyclic complexes: K-monomials, the
//! generators `e_{M,r}`, and multiplication in the geometric basis.

mod element;
mod pbw;
mod product;

pub use element::{e_generator, k_monomial, DhElement, DhKey};
pub use pbw::{alpha_box, pbw_matrix_rank, PbwGrade, PbwRank};
pub use product::{
    adjacency, delta, dh_multiply, dh_product, merge_monomials, multiply_keys, normalize_class, normalize_complex,
};
