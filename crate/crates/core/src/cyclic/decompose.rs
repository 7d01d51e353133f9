//! Canonical decomposition `X ≅ ⊕_r C_{H_{−r}}[r] ⊕ ⊕_r K_{T_r}[r]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::complex::{build_cm, build_kp, image_of, kernel_of, CyclicComplex};
use crate::error::{Error, Result};
use crate::quiverrep::{subquotient, GClass, IsoClass, Representation};
use crate::session::Session;

/// Isomorphism class of a complex: homology classes by position and
/// acyclic summands `K_{T_r}[r]` keyed by shift `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComplexClass {
    pub period: u32,
    pub homology: BTreeMap<i64, IsoClass>,
    pub acyclic: BTreeMap<i64, IsoClass>,
}

impl ComplexClass {
    pub fn zero(period: u32) -> Self {
        ComplexClass { period, homology: BTreeMap::new(), acyclic: BTreeMap::new() }
    }

    /// `C_M[r]`, homology `M` at position `−r`.
    pub fn stalk(period: u32, m: IsoClass, r: i64) -> Self {
        let mut c = Self::zero(period);
        if !m.is_zero() {
            c.homology.insert(super::complex::reduce(period, -r), m);
        }
        c
    }

    /// `K_P[r]`.
    pub fn contractible(period: u32, p: IsoClass, r: i64) -> Self {
        let mut c = Self::zero(period);
        if !p.is_zero() {
            c.acyclic.insert(super::complex::reduce(period, r), p);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.homology.is_empty() && self.acyclic.is_empty()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology.is_empty()
    }

    /// The same class without its acyclic part.
    pub fn homology_part(&self) -> Self {
        ComplexClass { period: self.period, homology: self.homology.clone(), acyclic: BTreeMap::new() }
    }

    pub fn reduce(&self, i: i64) -> i64 {
        super::complex::reduce(self.period, i)
    }
}

impl fmt::Display for ComplexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.homology.iter().map(|(p, m)| format!("C{}[{}]", m, self.reduce(-p))).collect();
        parts.extend(self.acyclic.iter().map(|(r, t)| format!("K{}[{}]", t, r)));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Homology `H_i = ker d_i / im d_{i−1}` at every position where it can be nonzero.
pub fn homology(s: &Session, x: &CyclicComplex) -> BTreeMap<i64, Representation> {
    let q = x.q();
    let mut out = BTreeMap::new();
    for i in x.positions() {
        let t = x.term(i);
        if t.is_zero() {
            continue;
        }
        let ker = kernel_of(&x.diff(i), t, q);
        let im = image_of(&x.diff(i - 1), t, q);
        let h = subquotient(s.quiver(), t, &ker, &im, q);
        if !h.is_zero() {
            out.insert(i, h);
        }
    }
    out
}

fn add_at(map: &mut BTreeMap<i64, GClass>, i: i64, g: &GClass) {
    if g.is_zero() {
        return;
    }
    let e = map.entry(i).or_insert_with(|| GClass::zero(g.len()));
    *e = &*e + g;
    if e.is_zero() {
        map.remove(&i);
    }
}

/// Term classes `X̂_i` of any complex in the class, computed from the class alone.
pub fn term_classes(s: &Session, c: &ComplexClass) -> Result<BTreeMap<i64, GClass>> {
    let mut out = BTreeMap::new();
    for (&p, h) in &c.homology {
        add_at(&mut out, p, &s.cover_class(h)?);
        add_at(&mut out, c.reduce(p - 1), &s.omega_class(h)?);
    }
    for (&r, t) in &c.acyclic {
        add_at(&mut out, c.reduce(-r), &t.class());
        add_at(&mut out, c.reduce(-r - 1), &t.class());
    }
    Ok(out)
}

/// Reads off the canonical decomposition of `x`.
pub fn canonical_decompose(s: &Session, x: &CyclicComplex) -> Result<ComplexClass> {
    let q = x.q();
    let m = x.period();
    let mut class = ComplexClass::zero(m);
    for (i, h) in homology(s, x) {
        class.homology.insert(i, s.classify(&h)?);
    }
    for i in x.positions() {
        let t = x.term(i);
        if t.is_zero() {
            continue;
        }
        let im: GClass = GClass(image_of(&x.diff(i - 1), t, q).iter().map(|sp| sp.dim() as i64).collect());
        let omega = match class.homology.get(&i) {
            Some(h) => s.omega_class(h)?,
            None => GClass::zero(s.num_vertices()),
        };
        let tr = &im - &omega;
        if tr.is_zero() {
            continue;
        }
        let p = s
            .projective_of_class(&tr)?
            .ok_or_else(|| Error::Bookkeeping(format!("acyclic part at position {i} has non-projective class {tr:?}")))?;
        class.acyclic.insert(class.reduce(-i), p);
    }
    if term_classes(s, &class)? != x.term_classes() {
        return Err(Error::Bookkeeping(format!("term classes of {class} do not match the complex")));
    }
    Ok(class)
}

/// Class of `X ⊕ Y` from the classes of `X` and `Y`.
pub fn class_direct_sum(s: &Session, x: &ComplexClass, y: &ComplexClass) -> Result<ComplexClass> {
    if x.period != y.period {
        return Err(Error::PeriodMismatch(x.period, y.period));
    }
    let merge = |a: &BTreeMap<i64, IsoClass>, b: &BTreeMap<i64, IsoClass>| -> Result<BTreeMap<i64, IsoClass>> {
        let mut out = a.clone();
        for (k, m) in b {
            let v = match out.remove(k) {
                Some(old) => s.classify(&s.rep(&old)?.direct_sum(&s.rep(m)?))?,
                None => m.clone(),
            };
            out.insert(*k, v);
        }
        Ok(out)
    };
    Ok(ComplexClass { period: x.period, homology: merge(&x.homology, &y.homology)?, acyclic: merge(&x.acyclic, &y.acyclic)? })
}

/// The canonical representative `⊕ C_{H_p}[−p] ⊕ ⊕ K_{T_r}[r]`.
pub fn rebuild(s: &Session, c: &ComplexClass) -> Result<CyclicComplex> {
    let m = c.period;
    let mut out = CyclicComplex::zero(s.quiver(), m, s.q());
    for (&p, h) in &c.homology {
        out = out.direct_sum(&build_cm(s, m, h)?.shift(-p));
    }
    for (&r, t) in &c.acyclic {
        out = out.direct_sum(&build_kp(s.quiver(), m, s.q(), &s.rep(t)?)?.shift(r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::complex::{random_complex, random_term_automorphisms};
    use crate::cyclic::homs::{find_chain_isomorphism, hom_dims};
    use crate::quiverrep::Quiver;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn stalks_and_contractibles_round_trip() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        for m in [0u32, 3, 4] {
            for c in s.classes_up_to(2).unwrap().into_iter().filter(|c| !c.is_zero()) {
                for r in [0i64, 1, 2] {
                    let st = ComplexClass::stalk(m, c.clone(), r);
                    assert_eq!(canonical_decompose(&s, &rebuild(&s, &st).unwrap()).unwrap(), st);
                }
            }
            for p in s.indecomposable_projectives().unwrap() {
                let k = ComplexClass::contractible(m, p, 1);
                let x = rebuild(&s, &k).unwrap();
                assert_eq!(canonical_decompose(&s, &x).unwrap(), k);
                assert_eq!(x.term_classes().len(), 2);
            }
        }
    }

    #[test]
    fn random_complexes_are_isomorphic_to_their_rebuild() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [0u32, 3] {
            for _ in 0..25 {
                let x = random_complex(&s, m, 3, 2, &mut rng).unwrap();
                let c = canonical_decompose(&s, &x).unwrap();
                let y = rebuild(&s, &c).unwrap();
                assert!(find_chain_isomorphism(s.quiver(), &x, &y, 1 << 22).unwrap().is_some(), "{c}");
                let g = random_term_automorphisms(&s, &x, &mut rng);
                assert_eq!(canonical_decompose(&s, &x.conjugate(&g)).unwrap(), c);
                let (_, hk) = hom_dims(s.quiver(), &x, &y);
                assert_eq!(hk > 0, !c.is_acyclic());
            }
        }
    }

    #[test]
    fn display_form() {
        let c = ComplexClass::stalk(3, IsoClass::new(vec![1], 0), 1);
        assert_eq!(c.to_string(), "C(1)#0[1]");
        assert_eq!(ComplexClass::zero(3).to_string(), "0");
    }
}
