//! Acyclic quivers, representations over `F_q`, isomorphism classes and
//! projective resolutions.

mod classes;
mod quiver;
mod rep;
mod resolution;

pub use classes::{
    aut_order, dims_up_to, enumerate_orbits, find_isomorphism, is_isomorphic, module_label, random_conjugate,
    IsoClass, ModuleLabel, Orbit,
};
pub use quiver::{GClass, Path, Quiver};
pub use rep::{
    cokernel, flat_len, hom_basis, hom_dim, image_spaces, is_arrow_stable, kernel, kernel_spaces, quotient,
    subquotient, subrepresentation, Morphism, Representation,
};
pub use resolution::{min_proj_resolution, projective_cover, ProjResolution};
