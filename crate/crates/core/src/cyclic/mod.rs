//! m-cyclic complexes of projectives, their canonical decomposition and the
//! twisted Hall product on their isoclasses.

mod complex;
mod decompose;
mod homs;
mod product;

pub use complex::{
    build_cf, build_cm, build_kp, check_period, random_complex, random_projective, random_term_automorphisms, reduce,
    CyclicComplex,
};
pub use decompose::{canonical_decompose, class_direct_sum, homology, rebuild, term_classes, ComplexClass};
pub use homs::{
    chain_map_basis, ext_data, extension_middle, find_chain_isomorphism, for_each_extension, hom_dims, is_chain_map,
    ExtData,
};
pub use product::{htw_multiply, htw_multiply_complexes, termwise_euler};
