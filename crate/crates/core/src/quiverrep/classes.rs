//! Isomorphism classes: orbit enumeration, isomorphism search, automorphism counts.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::quiver::{GClass, Quiver};
use super::rep::{hom_basis, Morphism, Representation};
use crate::error::Result;
use crate::exactnum::{check_budget, combine, inv_mod, primitive_root, FFMatrix, VectorIter};

/// Handle of an interned isomorphism class: the dimension vector plus the
/// position of the class in the canonical enumeration for that vector.
///
/// Classes are ordered by total dimension, then dimension vector, then index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IsoClass {
    dims: Vec<usize>,
    index: usize,
}

impl IsoClass {
    pub fn new(dims: Vec<usize>, index: usize) -> Self {
        IsoClass { dims, index }
    }

    pub fn zero(n: usize) -> Self {
        IsoClass { dims: vec![0; n], index: 0 }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn class(&self) -> GClass {
        GClass::from_dims(&self.dims)
    }
}

impl Ord for IsoClass {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.total_dim(), &self.dims, self.index).cmp(&(o.total_dim(), &o.dims, o.index))
    }
}

impl PartialOrd for IsoClass {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.dims.iter().map(|x| x.to_string()).collect();
        write!(f, "({})#{}", d.join(","), self.index)
    }
}

impl fmt::Debug for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IsoClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Cheap isomorphism invariants used to narrow down candidates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleLabel {
    pub top: Vec<usize>,
    pub socle: Vec<usize>,
}

pub fn module_label(quiver: &Quiver, rep: &Representation, q: u32) -> ModuleLabel {
    ModuleLabel { top: rep.top_dims(quiver, q), socle: rep.socle_dims(quiver, q) }
}

/// One orbit found by [`enumerate_orbits`].
#[derive(Clone, Debug)]
pub struct Orbit {
    pub representative: Representation,
    pub size: u128,
}

struct TupleCodec {
    shapes: Vec<(usize, usize)>,
    len: usize,
    q: u32,
}

impl TupleCodec {
    fn encode(&self, maps: &[FFMatrix]) -> usize {
        let mut idx = 0usize;
        for m in maps {
            for &x in m.data() {
                idx = idx * self.q as usize + x as usize;
            }
        }
        idx
    }

    fn decode(&self, mut idx: usize) -> Vec<FFMatrix> {
        let mut flat = vec![0u32; self.len];
        for k in (0..self.len).rev() {
            flat[k] = (idx % self.q as usize) as u32;
            idx /= self.q as usize;
        }
        let mut off = 0;
        self.shapes
            .iter()
            .map(|&(r, c)| {
                let m = FFMatrix::from_vec(r, c, self.q, flat[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect()
    }
}

/// A generator of `GL_d(F_q)` acting at one vertex.
enum VertexGen {
    /// `I + E_{rs}`.
    Transvection(usize, usize),
    /// `diag(ω, 1, …, 1)`.
    Scale(u32),
}

fn gen_matrix(g: &VertexGen, d: usize, q: u32, inverse: bool) -> FFMatrix {
    let mut m = FFMatrix::identity(d, q);
    match *g {
        VertexGen::Transvection(r, s) => m.set(r, s, if inverse { q - 1 } else { 1 }),
        VertexGen::Scale(w) => m.set(0, 0, if inverse { inv_mod(w, q) } else { w }),
    }
    m
}

/// Enumerates the orbits of `Π_v GL_{d_v}` on all arrow-matrix tuples with the
/// given dimension vector. Each representative is the lexicographically
/// smallest tuple of its orbit; orbits are returned in the order of their
/// representatives.
pub fn enumerate_orbits(quiver: &Quiver, dims: &[usize], q: u32, budget: u64) -> Result<Vec<Orbit>> {
    let shapes: Vec<(usize, usize)> = quiver.arrows().iter().map(|&(s, t)| (dims[t], dims[s])).collect();
    let len: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = check_budget(q, len, budget, "arrow-matrix tuples")? as usize;
    let codec = TupleCodec { shapes, len, q };

    let w = primitive_root(q);
    let mut gens: Vec<(usize, FFMatrix, FFMatrix)> = Vec::new();
    for (v, &d) in dims.iter().enumerate() {
        let mut local = Vec::new();
        for r in 0..d {
            for s in 0..d {
                if r != s {
                    local.push(VertexGen::Transvection(r, s));
                }
            }
        }
        if d > 0 && q > 2 {
            local.push(VertexGen::Scale(w));
        }
        for g in local {
            gens.push((v, gen_matrix(&g, d, q, false), gen_matrix(&g, d, q, true)));
        }
    }

    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut orbits = Vec::new();
    for start in 0..total {
        if seen[start / 64] >> (start % 64) & 1 == 1 {
            continue;
        }
        seen[start / 64] |= 1 << (start % 64);
        let mut queue = VecDeque::from([start]);
        let mut size = 0u128;
        while let Some(idx) = queue.pop_front() {
            size += 1;
            let maps = codec.decode(idx);
            for (v, g, ginv) in &gens {
                let moved: Vec<FFMatrix> = maps
                    .iter()
                    .zip(quiver.arrows())
                    .map(|(m, &(s, t))| {
                        let mut m = m.clone();
                        if t == *v {
                            m = g.mul(&m);
                        }
                        if s == *v {
                            m = m.mul(ginv);
                        }
                        m
                    })
                    .collect();
                let j = codec.encode(&moved);
                if seen[j / 64] >> (j % 64) & 1 == 0 {
                    seen[j / 64] |= 1 << (j % 64);
                    queue.push_back(j);
                }
            }
        }
        orbits.push(Orbit {
            representative: Representation::from_parts(dims.to_vec(), codec.decode(start)),
            size,
        });
    }
    Ok(orbits)
}

fn invertible_blocks(flat: &[u32], src: &[usize], q: u32) -> bool {
    let mut off = 0;
    for &d in src {
        let b = FFMatrix::from_vec(d, d, q, flat[off..off + d * d].to_vec());
        off += d * d;
        if !b.is_invertible() {
            return false;
        }
    }
    true
}

/// Searches `Hom(m, n)` for an invertible element: a few seeded random
/// combinations first, then the exhaustive enumeration (budget-checked).
pub fn find_isomorphism(
    quiver: &Quiver,
    m: &Representation,
    n: &Representation,
    q: u32,
    budget: u64,
) -> Result<Option<Morphism>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let basis = hom_basis(quiver, m, n, q);
    let flat: Vec<Vec<u32>> = basis.iter().map(|f| f.flatten()).collect();
    let len: usize = m.dims().iter().map(|d| d * d).sum();
    let to_morphism = |v: &[u32]| Morphism::unflatten(v, m.dims(), n.dims(), q);
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..32 {
        let coeffs: Vec<u32> = (0..flat.len()).map(|_| rng.gen_range(0..q)).collect();
        let v = combine(&flat, &coeffs, len, q);
        if invertible_blocks(&v, m.dims(), q) {
            return Ok(Some(to_morphism(&v)));
        }
    }
    check_budget(q, flat.len(), budget, "homomorphisms")?;
    for coeffs in VectorIter::new(flat.len(), q) {
        let v = combine(&flat, &coeffs, len, q);
        if invertible_blocks(&v, m.dims(), q) {
            return Ok(Some(to_morphism(&v)));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(quiver: &Quiver, m: &Representation, n: &Representation, q: u32, budget: u64) -> Result<bool> {
    if m.dims() != n.dims() || module_label(quiver, m, q) != module_label(quiver, n, q) {
        return Ok(false);
    }
    Ok(find_isomorphism(quiver, m, n, q, budget)?.is_some())
}

/// `|Aut(M)|` by counting invertible endomorphisms.
pub fn aut_order(quiver: &Quiver, m: &Representation, q: u32, budget: u64) -> Result<u128> {
    let basis: Vec<Vec<u32>> = hom_basis(quiver, m, m, q).iter().map(|f| f.flatten()).collect();
    check_budget(q, basis.len(), budget, "endomorphisms")?;
    let len: usize = m.dims().iter().map(|d| d * d).sum();
    let mut count = 0u128;
    for coeffs in VectorIter::new(basis.len(), q) {
        if invertible_blocks(&combine(&basis, &coeffs, len, q), m.dims(), q) {
            count += 1;
        }
    }
    Ok(count)
}

/// All dimension vectors with `n` entries and total at most `bound`, ordered
/// by total and then lexicographically.
pub fn dims_up_to(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 0..=bound {
        let mut cur = vec![0; n];
        compositions(total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: usize, pos: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = rest;
            out.push(cur.clone());
        } else if rest == 0 {
            out.push(vec![]);
        }
        return;
    }
    for k in (0..=rest).rev() {
        cur[pos] = k;
        compositions(rest - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Random orbit element: the representative moved by random invertible matrices.
pub fn random_conjugate<R: Rng>(quiver: &Quiver, rep: &Representation, q: u32, rng: &mut R) -> Representation {
    let gs: Vec<FFMatrix> = rep
        .dims()
        .iter()
        .map(|&d| loop {
            let data = (0..d * d).map(|_| rng.gen_range(0..q)).collect();
            let g = FFMatrix::from_vec(d, d, q, data);
            if g.is_invertible() {
                break g;
            }
        })
        .collect();
    let maps = rep
        .maps()
        .iter()
        .zip(quiver.arrows())
        .map(|(m, &(s, t))| gs[t].mul(m).mul(&gs[s].inverse().expect("invertible")))
        .collect();
    Representation::from_parts(rep.dims().to_vec(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{gl_order, DEFAULT_BUDGET};

    #[test]
    fn a1_has_one_class_per_dimension() {
        let q = Quiver::linear_a(1);
        for d in 0..3 {
            assert_eq!(enumerate_orbits(&q, &[d], 2, DEFAULT_BUDGET).unwrap().len(), 1);
        }
    }

    #[test]
    fn a2_dims_11_has_two_classes() {
        let q = Quiver::linear_a(2);
        let orbits = enumerate_orbits(&q, &[1, 1], 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(orbits.len(), 2);
        assert!(orbits[0].representative.maps()[0].is_zero());
    }

    #[test]
    fn orbit_stabilizer() {
        let quiver = Quiver::linear_a(2);
        for q in [2u32, 3] {
            for dims in [[1usize, 1], [2, 1], [2, 2], [1, 2]] {
                let orbits = enumerate_orbits(&quiver, &dims, q, DEFAULT_BUDGET).unwrap();
                let group: u128 = dims.iter().map(|&d| gl_order(d, q)).product();
                let mut total = 0u128;
                for o in &orbits {
                    let a = aut_order(&quiver, &o.representative, q, DEFAULT_BUDGET).unwrap();
                    assert_eq!(o.size * a, group);
                    total += o.size;
                }
                assert_eq!(total, (q as u128).pow((dims[0] * dims[1]) as u32));
            }
        }
    }

    #[test]
    fn aut_orders() {
        let a1 = Quiver::linear_a(1);
        let k2 = Representation::with_zero_maps(&a1, vec![2], 2);
        assert_eq!(aut_order(&a1, &k2, 2, DEFAULT_BUDGET).unwrap(), 6);
        assert_eq!(aut_order(&a1, &Representation::zero(&a1, 2), 2, DEFAULT_BUDGET).unwrap(), 1);
        let a2 = Quiver::linear_a(2);
        let p1 = Representation::projective(&a2, 0, 2);
        assert_eq!(aut_order(&a2, &p1, 2, DEFAULT_BUDGET).unwrap(), 1);
    }

    #[test]
    fn iso_test_separates_split_and_nonsplit() {
        let a2 = Quiver::linear_a(2);
        let split = Representation::with_zero_maps(&a2, vec![1, 1], 2);
        let p1 = Representation::projective(&a2, 0, 2);
        assert!(!is_isomorphic(&a2, &split, &p1, 2, DEFAULT_BUDGET).unwrap());
        assert!(is_isomorphic(&a2, &p1, &p1, 2, DEFAULT_BUDGET).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let big = Representation::projective(&a2, 0, 3).direct_sum(&Representation::with_zero_maps(&a2, vec![1, 1], 3));
        let moved = random_conjugate(&a2, &big, 3, &mut rng);
        assert!(is_isomorphic(&a2, &big, &moved, 3, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn dims_enumeration_order() {
        assert_eq!(dims_up_to(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(dims_up_to(1, 2), vec![vec![0], vec![1], vec![2]]);
    }
}
