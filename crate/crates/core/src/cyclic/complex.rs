//! m-cyclic complexes of projective representations.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::{combine, FFMatrix, Subspace};
use crate::quiverrep::{hom_basis, GClass, IsoClass, Morphism, Quiver, Representation};
use crate::session::Session;

/// Checks that `m` is an allowed period: `0` (bounded complexes) or `≥ 3`.
pub fn check_period(m: i64) -> Result<u32> {
    if m == 0 || m >= 3 {
        u32::try_from(m).map_err(|_| Error::InvalidPeriod(m))
    } else {
        Err(Error::InvalidPeriod(m))
    }
}

/// Index arithmetic in `Z_m` (`Z` when `m = 0`).
pub fn reduce(m: u32, i: i64) -> i64 {
    if m == 0 {
        i
    } else {
        i.rem_euclid(m as i64)
    }
}

/// A complex `(M_i, d_i: M_i → M_{i+1})` indexed by `Z_m`, or by `Z` with finite
/// support when `m = 0`. Only nonzero terms are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicComplex {
    m: u32,
    q: u32,
    zero: Representation,
    terms: BTreeMap<i64, Representation>,
    diffs: BTreeMap<i64, Morphism>,
}

impl CyclicComplex {
    pub fn zero(quiver: &Quiver, m: u32, q: u32) -> Self {
        CyclicComplex {
            m,
            q,
            zero: Representation::zero(quiver, q),
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// Builds a complex from explicit terms and differentials, checking shapes,
    /// projectivity and `d_{i+1} d_i = 0`.
    pub fn from_parts(
        quiver: &Quiver,
        m: u32,
        q: u32,
        terms: BTreeMap<i64, Representation>,
        diffs: BTreeMap<i64, Morphism>,
    ) -> Result<Self> {
        check_period(m as i64)?;
        let mut c = CyclicComplex::zero(quiver, m, q);
        for (i, t) in terms {
            if !t.is_projective(quiver, q) {
                return Err(Error::NotProjective(format!("term at position {i}")));
            }
            if !t.is_zero() {
                c.terms.insert(reduce(m, i), t);
            }
        }
        for (i, d) in diffs {
            let i = reduce(m, i);
            let (src, dst) = (c.term(i), c.term(i + 1));
            let ok = d.blocks().len() == src.dims().len()
                && d.blocks().iter().zip(src.dims().iter().zip(dst.dims())).all(|(b, (&s, &t))| b.shape() == (t, s));
            if !ok || !d.is_hom(quiver, src, dst) {
                return Err(Error::DimensionMismatch(format!("differential at position {i}")));
            }
            if !src.is_zero() && !dst.is_zero() && !d.is_zero() {
                c.diffs.insert(i, d);
            }
        }
        for &i in c.diffs.keys() {
            if !c.diff(i + 1).compose(&c.diff(i)).is_zero() {
                return Err(Error::DimensionMismatch(format!("d_{} d_{i} is not zero", i + 1)));
            }
        }
        Ok(c)
    }

    pub fn period(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pos(&self, i: i64) -> i64 {
        reduce(self.m, i)
    }

    pub fn term(&self, i: i64) -> &Representation {
        self.terms.get(&self.pos(i)).unwrap_or(&self.zero)
    }

    pub fn diff(&self, i: i64) -> Morphism {
        match self.diffs.get(&self.pos(i)) {
            Some(d) => d.clone(),
            None => Morphism::zero(self.term(i), self.term(i + 1), self.q),
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Representation> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Positions carrying a nonzero term.
    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Positions where some term or homology can live: all of `Z_m`, or the
    /// support and its right neighbours when `m = 0`.
    pub fn positions(&self) -> Vec<i64> {
        if self.m > 0 {
            (0..self.m as i64).collect()
        } else {
            let set: BTreeSet<i64> = self.terms.keys().flat_map(|&i| [i, i + 1]).collect();
            set.into_iter().collect()
        }
    }

    /// Classes `M̂_i` of the nonzero terms.
    pub fn term_classes(&self) -> BTreeMap<i64, GClass> {
        self.terms.iter().map(|(&i, t)| (i, t.class())).collect()
    }

    /// `M[t]`: `X_i = M_{i+t}`, `f_i = (−1)^t d_{i+t}`.
    pub fn shift(&self, t: i64) -> Self {
        let negate = t.rem_euclid(2) == 1;
        let terms = self.terms.iter().map(|(&i, r)| (self.pos(i - t), r.clone())).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| (self.pos(i - t), if negate { d.neg() } else { d.clone() }))
            .collect();
        CyclicComplex { m: self.m, q: self.q, zero: self.zero.clone(), terms, diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut keys: BTreeSet<i64> = self.terms.keys().copied().collect();
        keys.extend(other.terms.keys().copied());
        let terms: BTreeMap<i64, Representation> =
            keys.iter().map(|&i| (i, self.term(i).direct_sum(other.term(i)))).collect();
        let mut diffs = BTreeMap::new();
        for &i in &keys {
            let d = self.diff(i).direct_sum(&other.diff(i));
            if !d.is_zero() {
                diffs.insert(i, d);
            }
        }
        CyclicComplex { m: self.m, q: self.q, zero: self.zero.clone(), terms, diffs }
    }

    /// Replaces the differentials, keeping terms; used for extension middles.
    pub(crate) fn with_diffs(&self, diffs: BTreeMap<i64, Morphism>) -> Self {
        let diffs = diffs.into_iter().filter(|(_, d)| !d.is_zero()).collect();
        CyclicComplex { diffs, ..self.clone() }
    }

    /// Transport along termwise isomorphisms `g_i: M_i → M'_i`: `d'_i = g_{i+1} d_i g_i^{-1}`.
    pub fn conjugate(&self, g: &BTreeMap<i64, Morphism>) -> Self {
        let mut diffs = BTreeMap::new();
        for &i in self.diffs.keys() {
            let gi_inv = g[&i].inverse().expect("termwise isomorphism");
            let gj = &g[&self.pos(i + 1)];
            diffs.insert(i, gj.compose(&self.diff(i)).compose(&gi_inv));
        }
        CyclicComplex { diffs, ..self.clone() }
    }
}

/// `C_f`: `Q` at position `m − 1`, `P` at position `0`, `d_{m−1} = f`.
pub fn build_cf(quiver: &Quiver, m: u32, q: u32, f: &Morphism, src: &Representation, dst: &Representation) -> Result<CyclicComplex> {
    check_period(m as i64)?;
    for (name, r) in [("source", src), ("target", dst)] {
        if !r.is_projective(quiver, q) {
            return Err(Error::NotProjective(name.into()));
        }
    }
    let top = reduce(m, m as i64 - 1);
    let mut terms = BTreeMap::new();
    terms.insert(top, src.clone());
    if top == 0 {
        unreachable!("period is 0 or at least 3");
    }
    terms.insert(0, dst.clone());
    let mut diffs = BTreeMap::new();
    diffs.insert(top, f.clone());
    CyclicComplex::from_parts(quiver, m, q, terms, diffs)
}

/// `K_P = C_{id_P}`.
pub fn build_kp(quiver: &Quiver, m: u32, q: u32, p: &Representation) -> Result<CyclicComplex> {
    build_cf(quiver, m, q, &Morphism::identity(p, q), p, p)
}

/// `C_M = C_{δ_M}` for the fixed minimal resolution of the class `M`.
pub fn build_cm(s: &Session, m: u32, class: &IsoClass) -> Result<CyclicComplex> {
    let res = s.resolution(class)?;
    build_cf(s.quiver(), m, s.q(), &res.delta, &res.omega, &res.cover)
}

/// Random projective `⊕ P_v^{n_v}` with total dimension at most `max_dim`.
pub fn random_projective<R: Rng>(s: &Session, max_dim: usize, rng: &mut R) -> Representation {
    let nv = s.num_vertices();
    let pdims: Vec<usize> = (0..nv).map(|v| s.quiver().projective_dims(v).iter().sum()).collect();
    let mut mult = vec![0usize; nv];
    let mut budget = max_dim;
    for _ in 0..(2 * max_dim) {
        let v = rng.gen_range(0..nv);
        if pdims[v] <= budget && rng.gen_bool(0.6) {
            mult[v] += 1;
            budget -= pdims[v];
        }
    }
    Representation::projective_sum(s.quiver(), &mult, s.q())
}

/// A random complex with random projective terms of total dimension at most
/// `max_dim` at each position of `Z_m` (positions `0..window` when `m = 0`),
/// and differentials drawn uniformly from the solutions of the linear
/// constraints `d_{i+1} d_i = 0` imposed by the differentials already chosen.
pub fn random_complex<R: Rng>(s: &Session, m: u32, window: usize, max_dim: usize, rng: &mut R) -> Result<CyclicComplex> {
    let q = s.q();
    let len = if m > 0 { m as i64 } else { window as i64 };
    let mut terms = BTreeMap::new();
    for i in 0..len {
        terms.insert(i, random_projective(s, max_dim, rng));
    }
    let zero = s.zero_rep();
    let term = |i: i64| -> &Representation {
        let key = if m > 0 { i.rem_euclid(m as i64) } else { i };
        terms.get(&key).unwrap_or(&zero)
    };
    let mut diffs: BTreeMap<i64, Morphism> = BTreeMap::new();
    let last = if m > 0 { len } else { len - 1 };
    for i in 0..last {
        let (src, dst) = (term(i), term(i + 1));
        let basis = hom_basis(s.quiver(), src, dst, q);
        if basis.is_empty() {
            continue;
        }
        let prev = if m > 0 || i > 0 { diffs.get(&reduce(m, i - 1)).cloned() } else { None };
        let next = if m > 0 { diffs.get(&reduce(m, i + 1)).cloned() } else { None };
        // Columns: the constraint values of each basis map.
        let cols: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| {
                let mut v = Vec::new();
                if let Some(p) = &prev {
                    v.extend(b.compose(p).flatten());
                }
                if let Some(n) = &next {
                    v.extend(n.compose(b).flatten());
                }
                v
            })
            .collect();
        let rows = cols.first().map_or(0, |c| c.len());
        let sys = FFMatrix::from_columns(&cols, rows, q);
        let ker = sys.kernel();
        if ker.is_empty() {
            continue;
        }
        let coeffs: Vec<u32> = (0..ker.len()).map(|_| rng.gen_range(0..q)).collect();
        let c = combine(&ker, &coeffs, basis.len(), q);
        let flat: Vec<Vec<u32>> = basis.iter().map(|b| b.flatten()).collect();
        let d = Morphism::unflatten(&combine(&flat, &c, flat[0].len(), q), src.dims(), dst.dims(), q);
        diffs.insert(reduce(m, i), d);
    }
    CyclicComplex::from_parts(s.quiver(), m, q, terms, diffs)
}

/// Random termwise automorphisms (module automorphisms of each term).
pub fn random_term_automorphisms<R: Rng>(s: &Session, c: &CyclicComplex, rng: &mut R) -> BTreeMap<i64, Morphism> {
    let q = s.q();
    c.terms()
        .iter()
        .map(|(&i, t)| {
            let basis: Vec<Vec<u32>> = hom_basis(s.quiver(), t, t, q).iter().map(|f| f.flatten()).collect();
            let len: usize = t.dims().iter().map(|d| d * d).sum();
            let g = loop {
                let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..q)).collect();
                let g = Morphism::unflatten(&combine(&basis, &coeffs, len, q), t.dims(), t.dims(), q);
                if g.is_invertible() {
                    break g;
                }
            };
            (i, g)
        })
        .collect()
}

/// Per-vertex subspace tuple helpers shared by homology computations.
pub(crate) fn kernel_of(d: &Morphism, src: &Representation, q: u32) -> Vec<Subspace> {
    crate::quiverrep::kernel_spaces(d, src, q)
}

pub(crate) fn image_of(d: &Morphism, dst: &Representation, q: u32) -> Vec<Subspace> {
    crate::quiverrep::image_spaces(d, dst, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a1() -> Session {
        Session::new(Quiver::linear_a(1), 2).unwrap()
    }

    #[test]
    fn period_validation() {
        assert!(check_period(2).is_err());
        assert!(check_period(1).is_err());
        assert_eq!(check_period(0).unwrap(), 0);
        assert_eq!(check_period(4).unwrap(), 4);
    }

    #[test]
    fn shift_moves_terms_and_signs() {
        let s = Session::new(Quiver::linear_a(1), 3).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let ck = build_cm(&s, 3, &k).unwrap();
        assert_eq!(ck.support(), vec![0]);
        assert_eq!(ck.shift(1).support(), vec![2]);
        let kp = build_kp(s.quiver(), 3, 3, &s.rep(&k).unwrap()).unwrap();
        assert_eq!(kp.shift(1).shift(1), kp.shift(2));
        let three = kp.shift(3);
        assert_eq!(three.terms(), kp.terms());
        assert_eq!(three.diff(2), kp.diff(2).neg());
        assert_eq!(kp.shift(6), kp);
    }

    #[test]
    fn cf_of_zero_map_splits() {
        let s = a1();
        let k = s.rep(&IsoClass::new(vec![1], 0)).unwrap();
        let f = Morphism::zero(&k, &k, 2);
        let c = build_cf(s.quiver(), 3, 2, &f, &k, &k).unwrap();
        assert!(c.diff(2).is_zero());
        assert_eq!(c.support(), vec![0, 2]);
    }

    #[test]
    fn a2_cm_of_simple_top() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let s1 = s.simple_class(0).unwrap();
        let c = build_cm(&s, 4, &s1).unwrap();
        assert_eq!(c.term(3).dims(), &[0, 1]);
        assert_eq!(c.term(0).dims(), &[1, 1]);
        assert!(!c.diff(3).is_zero());
        let c0 = build_cm(&s, 0, &s1).unwrap();
        assert_eq!(c0.support(), vec![-1, 0]);
    }

    #[test]
    fn rejects_non_projective_terms_and_bad_differentials() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let s1 = s.rep(&s.simple_class(0).unwrap()).unwrap();
        let f = Morphism::identity(&s1, 2);
        assert!(matches!(build_cf(s.quiver(), 3, 2, &f, &s1, &s1), Err(Error::NotProjective(_))));
        let k = a1();
        let kr = k.rep(&IsoClass::new(vec![1], 0)).unwrap();
        let id = Morphism::identity(&kr, 2);
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for i in 0..3 {
            terms.insert(i, kr.clone());
            diffs.insert(i, id.clone());
        }
        assert!(CyclicComplex::from_parts(k.quiver(), 3, 2, terms, diffs).is_err());
    }

    #[test]
    fn random_complexes_are_complexes() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [0u32, 3, 4] {
            for _ in 0..20 {
                let c = random_complex(&s, m, 4, 2, &mut rng).unwrap();
                for i in c.positions() {
                    assert!(c.diff(i + 1).compose(&c.diff(i)).is_zero());
                }
            }
        }
    }
}
