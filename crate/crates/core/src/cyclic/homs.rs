//! Chain maps, homotopies and extensions between cyclic complexes.

use std::collections::BTreeMap;

use super::complex::CyclicComplex;
use crate::error::{Error, Result};
use crate::exactnum::{check_budget, combine, FFMatrix, Subspace, VectorIter};
use crate::quiverrep::{flat_len, hom_basis, Morphism, Quiver};

/// Graded maps `X_i → Y_{i+k}` parametrised by a basis of each `Hom_A(X_i, Y_{i+k})`.
struct Graded {
    blocks: Vec<(i64, Vec<Morphism>)>,
}

impl Graded {
    fn new(quiver: &Quiver, x: &CyclicComplex, y: &CyclicComplex, k: i64) -> Self {
        let blocks = x
            .support()
            .into_iter()
            .map(|i| (i, hom_basis(quiver, x.term(i), y.term(i + k), x.q())))
            .filter(|(_, b)| !b.is_empty())
            .collect();
        Graded { blocks }
    }

    fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.len()).sum()
    }

    /// The element with coordinate vector `c`.
    fn element(&self, c: &[u32]) -> BTreeMap<i64, Morphism> {
        let mut out = BTreeMap::new();
        let mut off = 0;
        for (i, basis) in &self.blocks {
            let coeffs = &c[off..off + basis.len()];
            off += basis.len();
            let mut acc: Option<Morphism> = None;
            for (b, &a) in basis.iter().zip(coeffs) {
                if a == 0 {
                    continue;
                }
                let t = b.scale(a);
                acc = Some(match acc {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
            if let Some(m) = acc {
                out.insert(*i, m);
            } else {
                out.insert(*i, basis[0].scale(0));
            }
        }
        out
    }

    /// Elements given by single basis vectors, in coordinate order.
    fn basis_elements(&self) -> Vec<BTreeMap<i64, Morphism>> {
        let mut out = Vec::new();
        for (i, basis) in &self.blocks {
            for b in basis {
                let mut e = BTreeMap::new();
                e.insert(*i, b.clone());
                out.push(e);
            }
        }
        out
    }
}

/// Flat coordinates of graded maps `X_i → Y_{i+k}` over `supp X`.
fn flatten_graded(x: &CyclicComplex, y: &CyclicComplex, k: i64, f: &BTreeMap<i64, Morphism>) -> Vec<u32> {
    let mut out = Vec::new();
    for i in x.support() {
        let (s, t) = (x.term(i).dims(), y.term(i + k).dims());
        match f.get(&i) {
            Some(m) => out.extend(m.flatten()),
            None => out.extend(std::iter::repeat(0).take(flat_len(s, t))),
        }
    }
    out
}

fn component(x: &CyclicComplex, y: &CyclicComplex, k: i64, f: &BTreeMap<i64, Morphism>, i: i64) -> Morphism {
    let i = x.pos(i);
    f.get(&i).cloned().unwrap_or_else(|| Morphism::zero(x.term(i), y.term(i + k), x.q()))
}

/// `(f_{i+1} d^X_i − d^Y_{i+k} f_i)_i` for `f` of degree `k`, or with `+` when `plus`.
fn commutator(x: &CyclicComplex, y: &CyclicComplex, k: i64, f: &BTreeMap<i64, Morphism>, plus: bool) -> BTreeMap<i64, Morphism> {
    let mut out = BTreeMap::new();
    for i in x.support() {
        let a = component(x, y, k, f, i + 1).compose(&x.diff(i));
        let b = y.diff(i + k).compose(&component(x, y, k, f, i));
        out.insert(i, if plus { a.add(&b) } else { a.sub(&b) });
    }
    out
}

fn matrix_of(cols: Vec<Vec<u32>>, rows: usize, q: u32) -> FFMatrix {
    FFMatrix::from_columns(&cols, rows, q)
}

/// Flat basis of the chain maps `X → Y` (in the coordinates of [`flatten_graded`] with `k = 0`).
pub fn chain_map_basis(quiver: &Quiver, x: &CyclicComplex, y: &CyclicComplex) -> Vec<BTreeMap<i64, Morphism>> {
    let q = x.q();
    let g = Graded::new(quiver, x, y, 0);
    if g.dim() == 0 {
        return Vec::new();
    }
    let cols: Vec<Vec<u32>> =
        g.basis_elements().iter().map(|e| flatten_graded(x, y, 1, &commutator(x, y, 0, e, false))).collect();
    let rows = cols[0].len();
    matrix_of(cols, rows, q).kernel().iter().map(|c| g.element(c)).collect()
}

/// `(dim Hom_C(X, Y), dim Hom_K(X, Y))`.
pub fn hom_dims(quiver: &Quiver, x: &CyclicComplex, y: &CyclicComplex) -> (usize, usize) {
    let q = x.q();
    let chain = chain_map_basis(quiver, x, y).len();
    // Null-homotopic maps: s ↦ s_{i+1} d^X_i + d^Y_{i−1} s_i with s of degree −1.
    let g = Graded::new(quiver, x, y, -1);
    if g.dim() == 0 {
        return (chain, chain);
    }
    let cols: Vec<Vec<u32>> =
        g.basis_elements().iter().map(|e| flatten_graded(x, y, 0, &commutator(x, y, -1, e, true))).collect();
    let rows = cols[0].len();
    let null = matrix_of(cols, rows, q).rank();
    (chain, chain - null)
}

/// Representatives of `Ext¹_C(X, Y)`: a basis of a complement of the
/// coboundaries inside the cocycles, as graded maps `h_i: X_i → Y_{i+1}`
/// with `d^Y_{i+1} h_i + h_{i+1} d^X_i = 0`.
pub struct ExtData {
    pub classes: Vec<BTreeMap<i64, Morphism>>,
    flat: Vec<Vec<u32>>,
    shapes: Vec<(i64, Vec<usize>, Vec<usize>)>,
    q: u32,
}

impl ExtData {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Cocycle `Σ c_j h_j`.
    pub fn combination(&self, c: &[u32]) -> BTreeMap<i64, Morphism> {
        let len = self.shapes.iter().map(|(_, s, t)| flat_len(s, t)).sum();
        let flat = combine(&self.flat, c, len, self.q);
        let mut out = BTreeMap::new();
        let mut off = 0;
        for (i, s, t) in &self.shapes {
            let n = flat_len(s, t);
            out.insert(*i, Morphism::unflatten(&flat[off..off + n], s, t, self.q));
            off += n;
        }
        out
    }
}

pub fn ext_data(quiver: &Quiver, x: &CyclicComplex, y: &CyclicComplex) -> ExtData {
    let q = x.q();
    let shapes: Vec<(i64, Vec<usize>, Vec<usize>)> =
        x.support().into_iter().map(|i| (i, x.term(i).dims().to_vec(), y.term(i + 1).dims().to_vec())).collect();
    let ambient: usize = shapes.iter().map(|(_, s, t)| flat_len(s, t)).sum();
    let g = Graded::new(quiver, x, y, 1);
    let mut out = ExtData { classes: Vec::new(), flat: Vec::new(), shapes, q };
    if g.dim() == 0 {
        return out;
    }
    let elems = g.basis_elements();
    let cols: Vec<Vec<u32>> = elems.iter().map(|e| flatten_graded(x, y, 2, &commutator(x, y, 1, e, true))).collect();
    let rows = cols[0].len();
    let cocycles: Vec<Vec<u32>> = matrix_of(cols, rows, q)
        .kernel()
        .iter()
        .map(|c| flatten_graded(x, y, 1, &g.element(c)))
        .collect();
    let h0 = Graded::new(quiver, x, y, 0);
    let coboundaries: Vec<Vec<u32>> = h0
        .basis_elements()
        .iter()
        .map(|e| flatten_graded(x, y, 1, &commutator(x, y, 0, e, false)))
        .collect();
    let b = Subspace::span(&coboundaries, ambient, q);
    out.flat = b.complement_from(&cocycles);
    out.classes = (0..out.flat.len())
        .map(|j| {
            let mut c = vec![0; out.flat.len()];
            c[j] = 1;
            out.combination(&c)
        })
        .collect();
    out
}

/// The middle term `L` of the extension `0 → Y → L → X → 0` given by the cocycle `h`:
/// `L_i = Y_i ⊕ X_i`, `d^L_i = [[d^Y_i, h_i], [0, d^X_i]]`.
pub fn extension_middle(x: &CyclicComplex, y: &CyclicComplex, h: &BTreeMap<i64, Morphism>) -> CyclicComplex {
    let q = x.q();
    let base = y.direct_sum(x);
    let mut diffs = BTreeMap::new();
    for i in base.positions() {
        if base.term(i).is_zero() || base.term(i + 1).is_zero() {
            continue;
        }
        let dy = y.diff(i);
        let dx = x.diff(i);
        let hi = component(x, y, 1, h, i);
        let blocks = (0..dy.blocks().len())
            .map(|v| {
                let top = dy.blocks()[v].hstack(&hi.blocks()[v]);
                let (xr, yc) = (dx.blocks()[v].rows(), dy.blocks()[v].cols());
                let bottom = FFMatrix::zeros(xr, yc, q).hstack(&dx.blocks()[v]);
                top.vstack(&bottom)
            })
            .collect();
        diffs.insert(base.pos(i), Morphism::new(blocks));
    }
    base.with_diffs(diffs)
}

/// Enumerates all `q^{dim Ext}` extension middles, calling `visit` on each.
pub fn for_each_extension(
    quiver: &Quiver,
    x: &CyclicComplex,
    y: &CyclicComplex,
    budget: u64,
    mut visit: impl FnMut(CyclicComplex) -> Result<()>,
) -> Result<usize> {
    let data = ext_data(quiver, x, y);
    check_budget(x.q(), data.dim(), budget, "extension classes")?;
    for c in VectorIter::new(data.dim(), x.q()) {
        visit(extension_middle(x, y, &data.combination(&c)))?;
    }
    Ok(data.dim())
}

/// An explicit chain isomorphism `X → Y`, searched exhaustively over `Hom_C(X, Y)`.
pub fn find_chain_isomorphism(
    quiver: &Quiver,
    x: &CyclicComplex,
    y: &CyclicComplex,
    budget: u64,
) -> Result<Option<BTreeMap<i64, Morphism>>> {
    if x.term_classes() != y.term_classes() {
        return Ok(None);
    }
    let basis = chain_map_basis(quiver, x, y);
    check_budget(x.q(), basis.len(), budget, "chain map search")?;
    let q = x.q();
    for c in VectorIter::new(basis.len(), q) {
        let mut f: BTreeMap<i64, Morphism> = BTreeMap::new();
        for (b, &a) in basis.iter().zip(&c) {
            for (i, m) in b {
                let t = m.scale(a);
                let e = f.remove(i).map(|s| s.add(&t)).unwrap_or(t);
                f.insert(*i, e);
            }
        }
        if x.support().iter().all(|i| f.get(i).is_some_and(|m| m.is_invertible())) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Checks `f_{i+1} d^X_i = d^Y_i f_i` at every position.
pub fn is_chain_map(x: &CyclicComplex, y: &CyclicComplex, f: &BTreeMap<i64, Morphism>) -> bool {
    commutator(x, y, 0, f, false).values().all(|m| m.is_zero())
}

pub(crate) fn require_same_period(x: &CyclicComplex, y: &CyclicComplex) -> Result<()> {
    if x.period() != y.period() {
        return Err(Error::PeriodMismatch(x.period(), y.period()));
    }
    if x.q() != y.q() {
        return Err(Error::FieldMismatch(x.q(), y.q()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::complex::{build_cm, build_kp};
    use crate::quiverrep::IsoClass;
    use crate::session::Session;

    #[test]
    fn a1_hom_and_ext_between_stalks() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let c = build_cm(&s, 3, &k).unwrap();
        assert_eq!(hom_dims(s.quiver(), &c, &c), (1, 1));
        assert_eq!(hom_dims(s.quiver(), &c, &c.shift(1)), (0, 0));
        // Ext¹(C_k[1], C_k): the map k → k at position 2 → 0 is a nonsplit cocycle.
        let d = ext_data(s.quiver(), &c.shift(1), &c);
        assert_eq!(d.dim(), 1);
        let kp = build_kp(s.quiver(), 3, 2, &s.rep(&k).unwrap()).unwrap();
        let mid = extension_middle(&c.shift(1), &c, &d.classes[0]);
        assert!(find_chain_isomorphism(s.quiver(), &mid, &kp, 1 << 20).unwrap().is_some());
    }

    #[test]
    fn acyclic_complexes_are_contractible() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        for p in s.indecomposable_projectives().unwrap() {
            let kp = build_kp(s.quiver(), 4, 2, &s.rep(&p).unwrap()).unwrap();
            let (c, k) = hom_dims(s.quiver(), &kp, &kp);
            assert!(c > 0);
            assert_eq!(k, 0);
        }
    }

    #[test]
    fn bounded_homs_match_module_ext() {
        let s = Session::new(Quiver::linear_a(2), 3).unwrap();
        let s1 = s.simple_class(0).unwrap();
        let s2 = s.simple_class(1).unwrap();
        let c1 = build_cm(&s, 0, &s1).unwrap();
        let c2 = build_cm(&s, 0, &s2).unwrap();
        // Ext¹(S1, S2) = 1 and Hom(S1, S2) = 0.
        assert_eq!(hom_dims(s.quiver(), &c1, &c2.shift(1)).1, 1);
        assert_eq!(hom_dims(s.quiver(), &c1, &c2).1, 0);
        assert_eq!(hom_dims(s.quiver(), &c1.shift(1), &c1.shift(1)).1, 1);
    }
}
