//! Projective covers and minimal projective resolutions `0 → Ω_M → P_M → M → 0`.

use serde::Serialize;

use super::quiver::Quiver;
use super::rep::{kernel, Morphism, Representation};
use crate::exactnum::FFMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct ProjResolution {
    /// `Ω_M`, in standard form `⊕_v P_v^{n_v}`.
    pub omega: Representation,
    /// `P_M`, in standard form.
    pub cover: Representation,
    /// `δ_M: Ω_M → P_M`.
    #[serde(skip)]
    pub delta: Morphism,
    /// `ε_M: P_M → M`.
    #[serde(skip)]
    pub eps: Morphism,
    pub omega_mult: Vec<usize>,
    pub cover_mult: Vec<usize>,
}

/// Projective cover `⊕_v P_v^{t_v} → M` where `t = dim top(M)`. The generators
/// at each vertex are the standard basis vectors that complete `rad M`, taken
/// in order.
pub fn projective_cover(quiver: &Quiver, m: &Representation, q: u32) -> (Representation, Morphism, Vec<usize>) {
    let nv = quiver.num_vertices();
    let rad = m.radical(quiver, q);
    let mut gens: Vec<Vec<Vec<u32>>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let d = m.dims()[v];
        let std: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .collect();
        gens.push(rad[v].complement_from(&std));
    }
    let mult: Vec<usize> = gens.iter().map(|g| g.len()).collect();
    let cover = Representation::projective_sum(quiver, &mult, q);
    let mut cols: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nv];
    for (v, gv) in gens.iter().enumerate() {
        let paths = quiver.paths_from(v);
        for x in gv {
            for p in &paths {
                let img = m.path_map(&p.arrows, v, q).mul_vec(x);
                cols[p.target].push(img);
            }
        }
    }
    let eps = Morphism::new(
        cols.iter()
            .enumerate()
            .map(|(w, c)| FFMatrix::from_columns(c, m.dims()[w], q))
            .collect(),
    );
    (cover, eps, mult)
}

pub fn min_proj_resolution(quiver: &Quiver, m: &Representation, q: u32) -> ProjResolution {
    let (cover, eps, cover_mult) = projective_cover(quiver, m, q);
    let (raw, incl) = kernel(quiver, &eps, &cover, q);
    let (omega, iso, omega_mult) = projective_cover(quiver, &raw, q);
    debug_assert!(iso.is_invertible(), "submodules of projectives are projective");
    let delta = incl.compose(&iso);
    ProjResolution { omega, cover, delta, eps, omega_mult, cover_mult }
}
