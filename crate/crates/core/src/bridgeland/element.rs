//! Elements of the localized Hall algebra in the geometric basis
//! `K-monomial * [reduced complex]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cyclic::{reduce, ComplexClass};
use crate::error::{Error, Result};
use crate::exactnum::Coefficient;
use crate::quiverrep::{GClass, IsoClass};
use crate::session::Session;

/// The word `(Π_r K_{κ_r, r}) * [⊕_r C_{c_r}[r]]`, both maps keyed by shift `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DhKey {
    pub kappa: BTreeMap<i64, GClass>,
    pub complex: BTreeMap<i64, IsoClass>,
}

impl DhKey {
    pub fn unit() -> Self {
        DhKey { kappa: BTreeMap::new(), complex: BTreeMap::new() }
    }

    /// The reduced complex as a class (homology keyed by position `−r`).
    pub fn complex_class(&self, period: u32) -> ComplexClass {
        let mut c = ComplexClass::zero(period);
        for (&r, m) in &self.complex {
            c.homology.insert(reduce(period, -r), m.clone());
        }
        c
    }

    /// Shift-keyed module map of a reduced class.
    pub fn shifts_of(class: &ComplexClass) -> BTreeMap<i64, IsoClass> {
        class.homology.iter().map(|(&p, m)| (class.reduce(-p), m.clone())).collect()
    }
}

impl fmt::Display for DhKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.kappa.iter().map(|(r, a)| format!("K[{a:?},{r}]")).collect();
        parts.extend(self.complex.iter().map(|(r, m)| format!("C[{m},{r}]")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhElement {
    q: u32,
    period: u32,
    terms: BTreeMap<DhKey, Coefficient>,
}

impl DhElement {
    pub fn zero(q: u32, period: u32) -> Self {
        DhElement { q, period, terms: BTreeMap::new() }
    }

    pub fn one(q: u32, period: u32) -> Self {
        Self::term(q, period, DhKey::unit(), Coefficient::one(q))
    }

    pub fn term(q: u32, period: u32, key: DhKey, c: Coefficient) -> Self {
        let mut out = Self::zero(q, period);
        out.add_term(key, c);
        out
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn terms(&self) -> &BTreeMap<DhKey, Coefficient> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &DhKey) -> Coefficient {
        self.terms.get(key).cloned().unwrap_or_else(|| Coefficient::zero(self.q))
    }

    pub fn add_term(&mut self, key: DhKey, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Coefficient::from_int(-1, self.q)))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.q, self.period);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch(self.q, other.q));
        }
        if self.period != other.period {
            return Err(Error::PeriodMismatch(self.period, other.period));
        }
        Ok(())
    }
}

impl fmt::Display for DhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c}) {k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for DhElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: &'a Coefficient,
            kappa: &'a BTreeMap<i64, GClass>,
            complex: &'a BTreeMap<i64, IsoClass>,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, coefficient) in &self.terms {
            seq.serialize_element(&Term { coefficient, kappa: &k.kappa, complex: &k.complex })?;
        }
        seq.end()
    }
}

/// `K_{α,r}`.
pub fn k_monomial(s: &Session, period: u32, alpha: &GClass, r: i64) -> DhElement {
    let mut key = DhKey::unit();
    if !alpha.is_zero() {
        key.kappa.insert(reduce(period, r), alpha.clone());
    }
    DhElement::term(s.q(), period, key, Coefficient::one(s.q()))
}

/// `e_{M,r} = a_M^{-1} v^{c(Ω̂_M, M̂)} K_{−Ω̂_M, r} * [C_M[r]]`.
pub fn e_generator(s: &Session, period: u32, m: &IsoClass, r: i64) -> Result<DhElement> {
    if m.is_zero() {
        return Ok(DhElement::one(s.q(), period));
    }
    let r = reduce(period, r);
    let omega = s.omega_class(m)?;
    let exp = s.form(s.conventions().generator, &omega, &m.class());
    let coeff = Coefficient::from_ratio(1, s.aut_order(m)? as i64, s.q()).mul_v_pow(exp);
    let mut key = DhKey::unit();
    if !omega.is_zero() {
        key.kappa.insert(r, omega.scale(-1));
    }
    key.complex.insert(r, m.clone());
    Ok(DhElement::term(s.q(), period, key, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::Quiver;
    use crate::session::{Conventions, Form};

    #[test]
    fn a1_generator_has_unit_coefficient() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let e = e_generator(&s, 3, &k, 0).unwrap();
        let mut key = DhKey::unit();
        key.complex.insert(0, k);
        assert_eq!(e, DhElement::term(2, 3, key, Coefficient::one(2)));
        assert_eq!(e_generator(&s, 3, &s.zero_class(), 2).unwrap(), DhElement::one(2, 3));
    }

    #[test]
    fn a2_simple_top_generator_under_both_forms() {
        let base = Session::new(Quiver::linear_a(2), 2).unwrap();
        let s1 = base.simple_class(0).unwrap();
        let mut key = DhKey::unit();
        key.kappa.insert(0, GClass(vec![0, -1]));
        key.complex.insert(0, s1.clone());
        // ⟨P̂₂, Ŝ₁⟩ = 0 and (P̂₂, Ŝ₁) = −1.
        assert_eq!(e_generator(&base, 3, &s1, 0).unwrap().coefficient(&key), Coefficient::one(2));
        let sym = Session::new(Quiver::linear_a(2), 2)
            .unwrap()
            .with_conventions(Conventions { generator: Form::Symmetric, ..Conventions::default() });
        assert_eq!(e_generator(&sym, 3, &s1, 0).unwrap().coefficient(&key), Coefficient::v_pow(-1, 2));
    }

    #[test]
    fn arithmetic() {
        let s = Session::new(Quiver::linear_a(1), 3).unwrap();
        let k = k_monomial(&s, 3, &GClass(vec![1]), 4);
        assert_eq!(k.terms().keys().next().unwrap().kappa.keys().copied().collect::<Vec<_>>(), vec![1]);
        assert!(k.sub(&k).is_zero());
        assert_eq!(k.add(&k), k.scale(&Coefficient::from_int(2, 3)));
        assert_eq!(k_monomial(&s, 3, &GClass(vec![0]), 1), DhElement::one(3, 3));
    }
}
