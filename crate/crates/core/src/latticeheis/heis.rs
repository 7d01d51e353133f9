//! The Heisenberg double of the extended Hall algebra, with its own relation
//! table, and its embeddings into the lattice and localized Hall algebras.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::lattice::{LatticeEngine, LatticeElement, Letter};
use crate::bridgeland::{dh_product, e_generator, k_monomial, DhElement};
use crate::error::{Error, Result};
use crate::exactnum::Coefficient;
use crate::hallcore::{gamma_table, hall_numbers};
use crate::quiverrep::{GClass, IsoClass};
use crate::session::Session;

/// Generators `K_α`, `Z⁺_M`, `K⁻_α`, `Z⁻_M`; the variant order is the normal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HeisLetter {
    K(GClass),
    ZPlus(IsoClass),
    KMinus(GClass),
    ZMinus(IsoClass),
}

impl HeisLetter {
    fn rank(&self) -> u8 {
        match self {
            HeisLetter::K(_) => 0,
            HeisLetter::ZPlus(_) => 1,
            HeisLetter::KMinus(_) => 2,
            HeisLetter::ZMinus(_) => 3,
        }
    }

    fn is_unit(&self) -> bool {
        match self {
            HeisLetter::K(a) | HeisLetter::KMinus(a) => a.is_zero(),
            HeisLetter::ZPlus(m) | HeisLetter::ZMinus(m) => m.is_zero(),
        }
    }
}

impl fmt::Display for HeisLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeisLetter::K(a) => write!(f, "K{a:?}"),
            HeisLetter::ZPlus(m) => write!(f, "Z+[{m}]"),
            HeisLetter::KMinus(a) => write!(f, "K-{a:?}"),
            HeisLetter::ZMinus(m) => write!(f, "Z-[{m}]"),
        }
    }
}

/// Normal-form word `K_α Z⁺_M K⁻_β Z⁻_N`, units omitted.
pub type HeisKey = Vec<HeisLetter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisElement {
    q: u32,
    terms: BTreeMap<HeisKey, Coefficient>,
}

impl HeisElement {
    pub fn zero(q: u32) -> Self {
        HeisElement { q, terms: BTreeMap::new() }
    }

    pub fn one(q: u32) -> Self {
        Self::letter(q, None)
    }

    fn letter(q: u32, l: Option<HeisLetter>) -> Self {
        let mut out = Self::zero(q);
        let key = l.into_iter().filter(|l| !l.is_unit()).collect();
        out.add_term(key, Coefficient::one(q));
        out
    }

    pub fn k(q: u32, a: &GClass) -> Self {
        Self::letter(q, Some(HeisLetter::K(a.clone())))
    }

    pub fn k_minus(q: u32, a: &GClass) -> Self {
        Self::letter(q, Some(HeisLetter::KMinus(a.clone())))
    }

    pub fn z_plus(q: u32, m: &IsoClass) -> Self {
        Self::letter(q, Some(HeisLetter::ZPlus(m.clone())))
    }

    pub fn z_minus(q: u32, m: &IsoClass) -> Self {
        Self::letter(q, Some(HeisLetter::ZMinus(m.clone())))
    }

    pub fn terms(&self) -> &BTreeMap<HeisKey, Coefficient> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: HeisKey, c: Coefficient) {
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

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.q);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let w: Vec<String> = k.iter().map(|l| l.to_string()).collect();
                format!("({c}) {}", if w.is_empty() { "1".to_string() } else { w.join("*") })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for HeisElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: &'a Coefficient,
            word: Vec<String>,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, coefficient) in &self.terms {
            seq.serialize_element(&Term { coefficient, word: k.iter().map(|l| l.to_string()).collect() })?;
        }
        seq.end()
    }
}

type Expansion = Vec<(Coefficient, Vec<HeisLetter>)>;

/// Straightening engine for the Heisenberg double; one relation per
/// out-of-order or mergeable pair of generator kinds.
pub struct HeisEngine<'a> {
    s: &'a Session,
    memo: Mutex<HashMap<Vec<HeisLetter>, Arc<Vec<(Coefficient, HeisKey)>>>>,
}

impl<'a> HeisEngine<'a> {
    pub fn new(s: &'a Session) -> Self {
        HeisEngine { s, memo: Mutex::new(HashMap::new()) }
    }

    fn v(&self, e: i64) -> Coefficient {
        self.s.v_pow(e)
    }

    fn comm(&self, a: &GClass, b: &GClass) -> i64 {
        self.s.form(self.s.conventions().commutation, a, b)
    }

    fn twisted_hall(&self, m: &IsoClass, n: &IsoClass, wrap: fn(IsoClass) -> HeisLetter) -> Result<Expansion> {
        let q = self.s.q();
        let twist = self.s.euler(&m.class(), &n.class());
        Ok(hall_numbers(self.s, m, n)?
            .iter()
            .map(|(l, f)| (Coefficient::from_int(*f as i64, q).mul_v_pow(twist), vec![wrap(l.clone())]))
            .collect())
    }

    fn rewrite(&self, a: &HeisLetter, b: &HeisLetter) -> Result<Option<Expansion>> {
        use HeisLetter::*;
        let s = self.s;
        let q = s.q();
        if a.rank() < b.rank() {
            return Ok(None);
        }
        let swap = |e: i64| vec![(self.v(e), vec![b.clone(), a.clone()])];
        let out = match (a, b) {
            (K(x), K(y)) => vec![(Coefficient::one(q), vec![K(x + y)])],
            (KMinus(x), KMinus(y)) => vec![(Coefficient::one(q), vec![KMinus(x + y)])],
            (ZPlus(m), ZPlus(n)) => self.twisted_hall(m, n, ZPlus)?,
            (ZMinus(m), ZMinus(n)) => self.twisted_hall(m, n, ZMinus)?,
            // K_α Z⁺_M = v^{(α,M)} Z⁺_M K_α.
            (ZPlus(m), K(x)) => swap(-self.comm(x, &m.class())),
            // K_α K⁻_β = v^{−(α,β)} K⁻_β K_α.
            (KMinus(y), K(x)) => swap(self.comm(x, y)),
            // K_α Z⁻_M = v^{−(α,M)} Z⁻_M K_α.
            (ZMinus(m), K(x)) => swap(self.comm(x, &m.class())),
            // K⁻_α Z⁺_M = Z⁺_M K⁻_α.
            (KMinus(_), ZPlus(_)) => swap(0),
            // K⁻_α Z⁻_M = v^{(α,M)} Z⁻_M K⁻_α.
            (ZMinus(m), KMinus(x)) => swap(-self.comm(x, &m.class())),
            // Z⁻_M Z⁺_N = Σ v^{⟨M̂−X̂, X̂−Ŷ⟩} γ^{XY}_{MN} K_{M̂−X̂} Z⁺_Y Z⁻_X.
            (ZMinus(m), ZPlus(n)) => {
                let form = s.conventions().exchange;
                gamma_table(s, m, n)?
                    .iter()
                    .map(|((x, y), g)| {
                        let mx = &m.class() - &x.class();
                        let e = s.form(form, &mx, &(&x.class() - &y.class()));
                        (
                            Coefficient::from_rational(g.clone(), q).mul_v_pow(e),
                            vec![K(mx), ZPlus(y.clone()), ZMinus(x.clone())],
                        )
                    })
                    .collect()
            }
            _ => unreachable!("pairs in normal order are filtered above"),
        };
        Ok(Some(out))
    }

    pub fn straighten(&self, word: &[HeisLetter]) -> Result<Arc<Vec<(Coefficient, HeisKey)>>> {
        let word: Vec<HeisLetter> = word.iter().filter(|l| !l.is_unit()).cloned().collect();
        if let Some(hit) = self.memo.lock().expect("memo").get(&word) {
            return Ok(hit.clone());
        }
        let p = (0..word.len().saturating_sub(1)).find(|&p| word[p].rank() >= word[p + 1].rank());
        let result = match p {
            None => Arc::new(vec![(Coefficient::one(self.s.q()), word.clone())]),
            Some(p) => {
                let mut acc: BTreeMap<HeisKey, Coefficient> = BTreeMap::new();
                for (c, middle) in self.rewrite(&word[p], &word[p + 1])?.expect("pair rewrites") {
                    let mut w = word[..p].to_vec();
                    w.extend(middle);
                    w.extend_from_slice(&word[p + 2..]);
                    for (d, k) in self.straighten(&w)?.iter() {
                        let e = acc.remove(k).map(|x| x + &(&c * d)).unwrap_or_else(|| &c * d);
                        if !e.is_zero() {
                            acc.insert(k.clone(), e);
                        }
                    }
                }
                Arc::new(acc.into_iter().map(|(k, c)| (c, k)).collect())
            }
        };
        self.memo.lock().expect("memo").insert(word, result.clone());
        Ok(result)
    }

    pub fn multiply(&self, x: &HeisElement, y: &HeisElement) -> Result<HeisElement> {
        if x.q != y.q {
            return Err(Error::FieldMismatch(x.q, y.q));
        }
        let mut out = HeisElement::zero(x.q);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let w: Vec<HeisLetter> = a.iter().chain(b).cloned().collect();
                let cd = c * d;
                for (e, k) in self.straighten(&w)?.iter() {
                    out.add_term(k.clone(), e * &cd);
                }
            }
        }
        Ok(out)
    }
}

pub fn heis_multiply(s: &Session, x: &HeisElement, y: &HeisElement) -> Result<HeisElement> {
    HeisEngine::new(s).multiply(x, y)
}

fn lattice_letter(l: &HeisLetter, i: i64) -> Letter {
    match l {
        HeisLetter::K(a) => Letter::K(i, a.clone()),
        HeisLetter::ZPlus(m) => Letter::Z(i, m.clone()),
        HeisLetter::KMinus(a) => Letter::K(i + 1, a.clone()),
        HeisLetter::ZMinus(m) => Letter::Z(i + 1, m.clone()),
    }
}

/// `J′_i`: `Z⁺ ↦ Z^{(i)}`, `Z⁻ ↦ Z^{(i+1)}`, `K ↦ K^{(i)}`, `K⁻ ↦ K^{(i+1)}`, straightened in the lattice algebra.
pub fn j_prime(engine: &LatticeEngine, i: i64, x: &HeisElement) -> Result<LatticeElement> {
    let mut out = LatticeElement::zero(engine.session().q(), engine.period());
    for (k, c) in &x.terms {
        let w: Vec<Letter> = k.iter().map(|l| lattice_letter(l, i)).collect();
        out = out.add(&engine.evaluate(&w)?.scale(c));
    }
    Ok(out)
}

/// `J_i`: `Z⁺_M ↦ e_{M,i}`, `Z⁻_M ↦ e_{M,i+1}`, `K_α ↦ K_{α,i}`, `K⁻_α ↦ K_{α,i+1}`.
pub fn j_embedding(s: &Session, period: u32, i: i64, x: &HeisElement) -> Result<DhElement> {
    let mut out = DhElement::zero(s.q(), period);
    for (k, c) in &x.terms {
        let factors: Vec<DhElement> = k
            .iter()
            .map(|l| match l {
                HeisLetter::K(a) => Ok(k_monomial(s, period, a, i)),
                HeisLetter::ZPlus(m) => e_generator(s, period, m, i),
                HeisLetter::KMinus(a) => Ok(k_monomial(s, period, a, i + 1)),
                HeisLetter::ZMinus(m) => e_generator(s, period, m, i + 1),
            })
            .collect::<Result<_>>()?;
        out = out.add(&dh_product(s, period, &factors)?.scale(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::Quiver;

    #[test]
    fn smallest_heis_exchange() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let zm = HeisElement::z_minus(2, &k);
        let zp = HeisElement::z_plus(2, &k);
        let lhs = heis_multiply(&s, &zm, &zp).unwrap();
        let rhs = heis_multiply(&s, &zp, &zm).unwrap().add(&HeisElement::k(2, &GClass(vec![1])));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_k_minus_factor() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let a = HeisElement::k(2, &GClass(vec![1, 0]));
        let b = HeisElement::k_minus(2, &GClass(vec![0, 1]));
        let ab = heis_multiply(&s, &a, &b).unwrap();
        let ba = heis_multiply(&s, &b, &a).unwrap();
        // −(e₁, e₂) = 1.
        assert_eq!(ab, ba.scale(&Coefficient::v_pow(1, 2)));
    }

    #[test]
    fn j_prime_is_multiplicative_on_generators() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let heis = HeisEngine::new(&s);
        let classes = s.classes_up_to(1).unwrap();
        let mut gens = Vec::new();
        for m in &classes {
            gens.push(HeisElement::z_plus(2, m));
            gens.push(HeisElement::z_minus(2, m));
        }
        gens.push(HeisElement::k(2, &GClass(vec![1, 0])));
        gens.push(HeisElement::k_minus(2, &GClass(vec![0, -1])));
        for i in 0..3 {
            let lat = LatticeEngine::new(&s, 3);
            for x in &gens {
                for y in &gens {
                    let lhs = j_prime(&lat, i, &heis.multiply(x, y).unwrap()).unwrap();
                    let rhs = lat.multiply(&j_prime(&lat, i, x).unwrap(), &j_prime(&lat, i, y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "slot {i}: {x} * {y}");
                }
            }
        }
    }
}
