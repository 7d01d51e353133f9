//! Quiver representations over `F_q`, morphisms between them, and the
//! subrepresentation / quotient machinery built on vertexwise linear algebra.

use serde::Serialize;

use super::quiver::{GClass, Quiver};
use crate::error::{Error, Result};
use crate::exactnum::{FFMatrix, Subspace};

/// A representation: one vector space `F_q^{dims[v]}` per vertex and one
/// matrix per arrow `a: i → j` of shape `dims[j] × dims[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<FFMatrix>,
}

/// A morphism given by one matrix per vertex (`dst_v × src_v`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    blocks: Vec<FFMatrix>,
}

impl Representation {
    pub fn new(quiver: &Quiver, dims: Vec<usize>, maps: Vec<FFMatrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch("representation does not match quiver".into()));
        }
        for (m, &(s, t)) in maps.iter().zip(quiver.arrows()) {
            if m.shape() != (dims[t], dims[s]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {s}->{t} has shape {:?}, expected {:?}",
                    m.shape(),
                    (dims[t], dims[s])
                )));
            }
        }
        Ok(Representation { dims, maps })
    }

    pub(crate) fn from_parts(dims: Vec<usize>, maps: Vec<FFMatrix>) -> Self {
        Representation { dims, maps }
    }

    pub fn zero(quiver: &Quiver, q: u32) -> Self {
        let dims = vec![0; quiver.num_vertices()];
        Self::with_zero_maps(quiver, dims, q)
    }

    pub fn with_zero_maps(quiver: &Quiver, dims: Vec<usize>, q: u32) -> Self {
        let maps = quiver.arrows().iter().map(|&(s, t)| FFMatrix::zeros(dims[t], dims[s], q)).collect();
        Representation { dims, maps }
    }

    pub fn simple(quiver: &Quiver, v: usize, q: u32) -> Self {
        let mut dims = vec![0; quiver.num_vertices()];
        dims[v] = 1;
        Self::with_zero_maps(quiver, dims, q)
    }

    /// The indecomposable projective `P_v`: basis = paths out of `v`, arrows act by extension.
    pub fn projective(quiver: &Quiver, v: usize, q: u32) -> Self {
        let paths = quiver.paths_from(v);
        let n = quiver.num_vertices();
        let mut index = vec![Vec::new(); n];
        for (pi, p) in paths.iter().enumerate() {
            index[p.target].push(pi);
        }
        let dims: Vec<usize> = index.iter().map(|v| v.len()).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, &(s, t))| {
                let mut m = FFMatrix::zeros(dims[t], dims[s], q);
                for (col, &pi) in index[s].iter().enumerate() {
                    let mut ext = paths[pi].arrows.clone();
                    ext.push(ai);
                    let row = index[t]
                        .iter()
                        .position(|&pj| paths[pj].arrows == ext)
                        .expect("extended path exists");
                    m.set(row, col, 1);
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// `⊕_v P_v^{mult[v]}` in vertex order.
    pub fn projective_sum(quiver: &Quiver, mult: &[usize], q: u32) -> Self {
        let mut out = Self::zero(quiver, q);
        for (v, &k) in mult.iter().enumerate() {
            for _ in 0..k {
                out = out.direct_sum(&Self::projective(quiver, v, q));
            }
        }
        out
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[FFMatrix] {
        &self.maps
    }

    pub fn class(&self) -> GClass {
        GClass::from_dims(&self.dims)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| FFMatrix::block_diag(a, b)).collect();
        Representation { dims, maps }
    }

    /// The subspace `Σ_{a: i → v} im(M_a)` at every vertex.
    pub fn radical(&self, quiver: &Quiver, q: u32) -> Vec<Subspace> {
        (0..self.dims.len())
            .map(|v| {
                let mut vecs = Vec::new();
                for (m, &(_, t)) in self.maps.iter().zip(quiver.arrows()) {
                    if t == v {
                        vecs.extend(m.columns());
                    }
                }
                Subspace::span(&vecs, self.dims[v], q)
            })
            .collect()
    }

    /// Dimension vector of `top(M) = M / rad M`.
    pub fn top_dims(&self, quiver: &Quiver, q: u32) -> Vec<usize> {
        self.radical(quiver, q).iter().zip(&self.dims).map(|(r, &d)| d - r.dim()).collect()
    }

    /// Dimension vector of the socle `∩ ker(outgoing arrows)`.
    pub fn socle_dims(&self, quiver: &Quiver, q: u32) -> Vec<usize> {
        (0..self.dims.len())
            .map(|v| {
                let mut stacked = FFMatrix::zeros(0, self.dims[v], q);
                for (m, &(s, _)) in self.maps.iter().zip(quiver.arrows()) {
                    if s == v {
                        stacked = stacked.vstack(m);
                    }
                }
                self.dims[v] - stacked.rank()
            })
            .collect()
    }

    /// For path algebras: `M` is projective iff it has the dimension of its projective cover.
    pub fn is_projective(&self, quiver: &Quiver, q: u32) -> bool {
        let top = self.top_dims(quiver, q);
        let mut cover = vec![0usize; self.dims.len()];
        for (v, &t) in top.iter().enumerate() {
            for (w, d) in quiver.projective_dims(v).into_iter().enumerate() {
                cover[w] += t * d;
            }
        }
        cover == self.dims
    }

    /// Matrix of the composite arrow maps along a path.
    pub fn path_map(&self, arrows: &[usize], source: usize, q: u32) -> FFMatrix {
        let mut m = FFMatrix::identity(self.dims[source], q);
        for &a in arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }
}

impl Morphism {
    pub fn new(blocks: Vec<FFMatrix>) -> Self {
        Morphism { blocks }
    }

    pub fn zero(src: &Representation, dst: &Representation, q: u32) -> Self {
        Morphism {
            blocks: src.dims.iter().zip(&dst.dims).map(|(&s, &d)| FFMatrix::zeros(d, s, q)).collect(),
        }
    }

    pub fn identity(rep: &Representation, q: u32) -> Self {
        Morphism { blocks: rep.dims.iter().map(|&d| FFMatrix::identity(d, q)).collect() }
    }

    pub fn blocks(&self) -> &[FFMatrix] {
        &self.blocks
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, k: u32) -> Morphism {
        Morphism { blocks: self.blocks.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn neg(&self) -> Morphism {
        Morphism { blocks: self.blocks.iter().map(|a| a.neg()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn inverse(&self) -> Option<Morphism> {
        self.blocks.iter().map(|b| b.inverse()).collect::<Option<Vec<_>>>().map(|blocks| Morphism { blocks })
    }

    /// `[[self, 0], [0, other]]` vertexwise.
    pub fn direct_sum(&self, other: &Morphism) -> Morphism {
        Morphism {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| FFMatrix::block_diag(a, b)).collect(),
        }
    }

    /// Row-major entries of all blocks, concatenated.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    /// Inverse of [`Morphism::flatten`] for the given source/target dimensions.
    pub fn unflatten(flat: &[u32], src: &[usize], dst: &[usize], q: u32) -> Morphism {
        let mut off = 0;
        let blocks = src
            .iter()
            .zip(dst)
            .map(|(&s, &d)| {
                let b = FFMatrix::from_vec(d, s, q, flat[off..off + d * s].to_vec());
                off += d * s;
                b
            })
            .collect();
        Morphism { blocks }
    }

    pub fn is_hom(&self, quiver: &Quiver, src: &Representation, dst: &Representation) -> bool {
        quiver.arrows().iter().enumerate().all(|(a, &(i, j))| {
            self.blocks[j].mul(&src.maps[a]) == dst.maps[a].mul(&self.blocks[i])
        })
    }
}

/// Number of entries of a vertexwise map `src → dst`.
pub fn flat_len(src: &[usize], dst: &[usize]) -> usize {
    src.iter().zip(dst).map(|(s, d)| s * d).sum()
}

/// Basis of `Hom_A(M, N)`: all `(f_v)` with `f_j M_a = N_a f_i` for each arrow `a: i → j`.
pub fn hom_basis(quiver: &Quiver, m: &Representation, n: &Representation, q: u32) -> Vec<Morphism> {
    let nv = quiver.num_vertices();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = offset[nv];
    let eqs: usize = quiver.arrows().iter().map(|&(i, j)| n.dims[j] * m.dims[i]).sum();
    let mut sys = FFMatrix::zeros(eqs, unknowns, q);
    let mut row = 0;
    for (a, &(i, j)) in quiver.arrows().iter().enumerate() {
        let ma = &m.maps[a];
        let na = &n.maps[a];
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                // (f_j M_a)[r,c] = Σ_k f_j[r,k] M_a[k,c]
                for k in 0..m.dims[j] {
                    let coef = ma.get(k, c);
                    if coef != 0 {
                        let col = offset[j] + r * m.dims[j] + k;
                        sys.set(row, col, (sys.get(row, col) + coef) % q);
                    }
                }
                // −(N_a f_i)[r,c] = −Σ_k N_a[r,k] f_i[k,c]
                for k in 0..n.dims[i] {
                    let coef = na.get(r, k);
                    if coef != 0 {
                        let col = offset[i] + k * m.dims[i] + c;
                        sys.set(row, col, (sys.get(row, col) + q - coef) % q);
                    }
                }
                row += 1;
            }
        }
    }
    sys.kernel()
        .into_iter()
        .map(|flat| Morphism::unflatten(&flat, &m.dims, &n.dims, q))
        .collect()
}

pub fn hom_dim(quiver: &Quiver, m: &Representation, n: &Representation, q: u32) -> usize {
    hom_basis(quiver, m, n, q).len()
}

/// A subrepresentation given by a column basis at each vertex, with its
/// inclusion morphism.
pub fn subrepresentation(
    quiver: &Quiver,
    rep: &Representation,
    bases: &[Vec<Vec<u32>>],
    q: u32,
) -> (Representation, Morphism) {
    let incl: Vec<FFMatrix> = bases
        .iter()
        .zip(&rep.dims)
        .map(|(b, &d)| FFMatrix::from_columns(b, d, q))
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| {
            let img = rep.maps[a].mul(&incl[i]);
            let mut m = FFMatrix::zeros(dims[j], dims[i], q);
            for c in 0..dims[i] {
                let sol = incl[j]
                    .solve(&img.column(c))
                    .expect("shapes agree")
                    .expect("subspace is arrow-stable");
                for r in 0..dims[j] {
                    m.set(r, c, sol.particular[r]);
                }
            }
            m
        })
        .collect();
    (Representation { dims, maps }, Morphism { blocks: incl })
}

/// Quotient `rep / sub` where `sub` is an arrow-stable subspace tuple, with
/// the projection morphism. The quotient basis at each vertex is the greedy
/// complement of `sub` among the standard basis vectors.
pub fn quotient(
    quiver: &Quiver,
    rep: &Representation,
    sub: &[Subspace],
    q: u32,
) -> (Representation, Morphism) {
    let nv = rep.dims.len();
    let mut comp: Vec<Vec<Vec<u32>>> = Vec::with_capacity(nv);
    // full[v] = [sub basis | complement] as columns; projection = last block of its inverse
    let mut proj: Vec<FFMatrix> = Vec::with_capacity(nv);
    for v in 0..nv {
        let d = rep.dims[v];
        let std: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .collect();
        let c = sub[v].complement_from(&std);
        let mut cols: Vec<Vec<u32>> = sub[v].basis().to_vec();
        cols.extend(c.iter().cloned());
        let full = FFMatrix::from_columns(&cols, d, q);
        let inv = full.inverse().expect("basis of ambient space");
        let k = sub[v].dim();
        proj.push(inv.submatrix(k..d, 0..d));
        comp.push(c);
    }
    let dims: Vec<usize> = comp.iter().map(|c| c.len()).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| {
            let lift = FFMatrix::from_columns(&comp[i], rep.dims[i], q);
            proj[j].mul(&rep.maps[a].mul(&lift))
        })
        .collect();
    (Representation { dims, maps }, Morphism { blocks: proj })
}

/// Kernel subspaces of a morphism at each vertex.
pub fn kernel_spaces(f: &Morphism, src: &Representation, q: u32) -> Vec<Subspace> {
    f.blocks
        .iter()
        .zip(&src.dims)
        .map(|(b, &d)| Subspace::span(&b.kernel(), d, q))
        .collect()
}

/// Image subspaces of a morphism at each vertex.
pub fn image_spaces(f: &Morphism, dst: &Representation, q: u32) -> Vec<Subspace> {
    f.blocks
        .iter()
        .zip(&dst.dims)
        .map(|(b, &d)| Subspace::span(&b.columns(), d, q))
        .collect()
}

pub fn kernel(quiver: &Quiver, f: &Morphism, src: &Representation, q: u32) -> (Representation, Morphism) {
    let spaces = kernel_spaces(f, src, q);
    let bases: Vec<Vec<Vec<u32>>> = spaces.iter().map(|s| s.basis().to_vec()).collect();
    subrepresentation(quiver, src, &bases, q)
}

pub fn cokernel(quiver: &Quiver, f: &Morphism, dst: &Representation, q: u32) -> (Representation, Morphism) {
    quotient(quiver, dst, &image_spaces(f, dst, q), q)
}

/// `U / V` for arrow-stable subspace tuples `V ⊆ U` of `rep`.
pub fn subquotient(
    quiver: &Quiver,
    rep: &Representation,
    upper: &[Subspace],
    lower: &[Subspace],
    q: u32,
) -> Representation {
    let bases: Vec<Vec<Vec<u32>>> = upper.iter().map(|s| s.basis().to_vec()).collect();
    let (u, incl) = subrepresentation(quiver, rep, &bases, q);
    // Express the lower subspace in the coordinates of the upper one.
    let lower_in_u: Vec<Subspace> = lower
        .iter()
        .enumerate()
        .map(|(v, l)| {
            let coords: Vec<Vec<u32>> = l
                .basis()
                .iter()
                .map(|x| incl.blocks[v].solve(x).expect("shape").expect("lower ⊆ upper").particular)
                .collect();
            Subspace::span(&coords, u.dims[v], q)
        })
        .collect();
    quotient(quiver, &u, &lower_in_u, q).0
}

/// True iff the subspace tuple is stable under every arrow.
pub fn is_arrow_stable(quiver: &Quiver, rep: &Representation, sub: &[Subspace]) -> bool {
    quiver
        .arrows()
        .iter()
        .enumerate()
        .all(|(a, &(i, j))| sub[i].basis().iter().all(|x| sub[j].contains(&rep.maps[a].mul_vec(x))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::linear_a(2)
    }

    #[test]
    fn projective_of_a2() {
        let q = a2();
        let p1 = Representation::projective(&q, 0, 2);
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.maps()[0].get(0, 0), 1);
        assert_eq!(Representation::projective(&q, 1, 2).dims(), &[0, 1]);
    }

    #[test]
    fn hom_dims_a2() {
        let q = a2();
        let p1 = Representation::projective(&q, 0, 2);
        let p2 = Representation::projective(&q, 1, 2);
        let s1 = Representation::simple(&q, 0, 2);
        let s2 = Representation::simple(&q, 1, 2);
        assert_eq!(hom_dim(&q, &p2, &p1, 2), 1);
        assert_eq!(hom_dim(&q, &p1, &p2, 2), 0);
        assert_eq!(hom_dim(&q, &s1, &s2, 2), 0);
        assert_eq!(hom_dim(&q, &p1, &p1, 2), 1);
        let (p1, p2) = (Representation::projective(&q, 0, 3), Representation::projective(&q, 1, 3));
        for f in hom_basis(&q, &p2, &p1, 3) {
            assert!(f.is_hom(&q, &p2, &p1));
        }
    }

    #[test]
    fn hom_space_of_a3_projectives() {
        let q = Quiver::linear_a(3);
        for a in 0..3 {
            let pa = Representation::projective(&q, a, 3);
            for b in 0..3 {
                let pb = Representation::projective(&q, b, 3);
                // Hom(P_a, P_b) ≅ (P_b)_a
                assert_eq!(hom_dim(&q, &pa, &pb, 3), pb.dims()[a]);
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_of_inclusion() {
        let q = a2();
        let p1 = Representation::projective(&q, 0, 2);
        let p2 = Representation::projective(&q, 1, 2);
        let f = hom_basis(&q, &p2, &p1, 2).remove(0);
        let (k, _) = kernel(&q, &f, &p2, 2);
        assert!(k.is_zero());
        let (c, proj) = cokernel(&q, &f, &p1, 2);
        assert_eq!(c.dims(), &[1, 0]);
        assert!(proj.is_hom(&q, &p1, &c));
    }

    #[test]
    fn top_socle_projectivity() {
        let q = a2();
        let p1 = Representation::projective(&q, 0, 2);
        assert_eq!(p1.top_dims(&q, 2), vec![1, 0]);
        assert_eq!(p1.socle_dims(&q, 2), vec![0, 1]);
        assert!(p1.is_projective(&q, 2));
        assert!(!Representation::simple(&q, 0, 2).is_projective(&q, 2));
        let s12 = Representation::with_zero_maps(&q, vec![1, 1], 2);
        assert!(!s12.is_projective(&q, 2));
    }
}
