//! Elements of the extended Ringel–Hall algebra in the basis `K_α * [M]`.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::counting::hall_numbers;
use crate::error::{Error, Result};
use crate::exactnum::Coefficient;
use crate::quiverrep::{GClass, IsoClass};
use crate::session::Session;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    q: u32,
    terms: BTreeMap<(GClass, IsoClass), Coefficient>,
}

impl HallElement {
    pub fn zero(q: u32) -> Self {
        HallElement { q, terms: BTreeMap::new() }
    }

    pub fn one(s: &Session) -> Self {
        Self::basis(s, GClass::zero(s.num_vertices()), s.zero_class())
    }

    /// `K_α * [M]`.
    pub fn basis(s: &Session, alpha: GClass, m: IsoClass) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((alpha, m), Coefficient::one(s.q()));
        HallElement { q: s.q(), terms }
    }

    /// `[M]`.
    pub fn module(s: &Session, m: IsoClass) -> Self {
        Self::basis(s, GClass::zero(s.num_vertices()), m)
    }

    /// `K_α`.
    pub fn k(s: &Session, alpha: GClass) -> Self {
        Self::basis(s, alpha, s.zero_class())
    }

    pub fn terms(&self) -> &BTreeMap<(GClass, IsoClass), Coefficient> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &GClass, m: &IsoClass) -> Coefficient {
        self.terms.get(&(alpha.clone(), m.clone())).cloned().unwrap_or_else(|| Coefficient::zero(self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: GClass, m: IsoClass, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, m);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, m), c) in &other.terms {
            out.add_term(a.clone(), m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.q);
        for ((a, m), x) in &self.terms {
            out.add_term(a.clone(), m.clone(), x * c);
        }
        out
    }
}

impl Serialize for HallElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: &'a Coefficient,
            k: &'a GClass,
            module: &'a IsoClass,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for ((k, module), coefficient) in &self.terms {
            seq.serialize_element(&Term { coefficient, k, module })?;
        }
        seq.end()
    }
}

/// `[M] ⋄ [N] = Σ F^L_{MN} [L]`, or the twisted `[M] * [N] = v^{⟨M̂,N̂⟩} [M] ⋄ [N]`,
/// extended bilinearly. Both inputs must lie in the plain algebra.
pub fn rh_multiply(s: &Session, x: &HallElement, y: &HallElement, twisted: bool) -> Result<HallElement> {
    if x.terms.keys().chain(y.terms.keys()).any(|(a, _)| !a.is_zero()) {
        return Err(Error::Config("rh_multiply takes elements without K-part; use extended_multiply".into()));
    }
    module_product(s, x, y, twisted)
}

fn module_product(s: &Session, x: &HallElement, y: &HallElement, twisted: bool) -> Result<HallElement> {
    let mut out = HallElement::zero(s.q());
    for ((a, m), c) in &x.terms {
        for ((b, n), d) in &y.terms {
            let base = c * d;
            let twist = if twisted { s.euler(&m.class(), &n.class()) } else { 0 };
            let k = a + b;
            for (l, f) in hall_numbers(s, m, n)?.iter() {
                let coeff = base.scale_int(*f as i64).mul_v_pow(twist);
                out.add_term(k.clone(), l.clone(), coeff);
            }
        }
    }
    Ok(out)
}

/// Product in the extended algebra:
/// `(K_α [M]) (K_β [N]) = v^{−c(β, M̂)} K_{α+β} [M] * [N]`.
pub fn extended_multiply(s: &Session, x: &HallElement, y: &HallElement) -> Result<HallElement> {
    let form = s.conventions().commutation;
    let mut out = HallElement::zero(s.q());
    for ((a, m), c) in &x.terms {
        for ((b, n), d) in &y.terms {
            let shift = -s.form(form, b, &m.class());
            let piece = module_product(
                s,
                &HallElement::basis(s, a + b, m.clone()),
                &HallElement::module(s, n.clone()),
                true,
            )?;
            out = out.add(&piece.scale(&(c * d).mul_v_pow(shift)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::Quiver;

    #[test]
    fn a1_square_of_k() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = HallElement::module(&s, IsoClass::new(vec![1], 0));
        let p = rh_multiply(&s, &k, &k, true).unwrap();
        assert_eq!(p.coefficient(&GClass(vec![0]), &IsoClass::new(vec![2], 0)), Coefficient::from_pair(0, 3, 2));
        assert_eq!(rh_multiply(&s, &k, &HallElement::one(&s), true).unwrap(), k);
    }

    #[test]
    fn a2_simples() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let s1 = s.simple_class(0).unwrap();
        let s2 = s.simple_class(1).unwrap();
        let p1 = s.indecomposable_projectives().unwrap()[0].clone();
        let split = s.classify(&s.rep(&s1).unwrap().direct_sum(&s.rep(&s2).unwrap())).unwrap();
        let z = GClass(vec![0, 0]);
        let a = rh_multiply(&s, &HallElement::module(&s, s1.clone()), &HallElement::module(&s, s2.clone()), true).unwrap();
        assert_eq!(a.coefficient(&z, &split), Coefficient::v_pow(-1, 2));
        assert_eq!(a.coefficient(&z, &p1), Coefficient::v_pow(-1, 2));
        let b = rh_multiply(&s, &HallElement::module(&s, s2), &HallElement::module(&s, s1), true).unwrap();
        assert_eq!(b, HallElement::module(&s, split));
    }

    #[test]
    fn k_symbols() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let g = GClass(vec![1]);
        let kk = extended_multiply(&s, &HallElement::k(&s, g.clone()), &HallElement::k(&s, g.clone())).unwrap();
        assert_eq!(kk, HallElement::k(&s, GClass(vec![2])));
        let k = IsoClass::new(vec![1], 0);
        // [k] * K_k = v^{-2} K_k [k]; so K_k [k] = v^2 [k] K_k = 2 [k] K_k at q = 2.
        let right = extended_multiply(&s, &HallElement::module(&s, k.clone()), &HallElement::k(&s, g.clone())).unwrap();
        assert_eq!(right.coefficient(&g, &k), Coefficient::v_pow(-2, 2));
        assert!(rh_multiply(&s, &HallElement::k(&s, g), &HallElement::one(&s), true).is_err());
    }
}
