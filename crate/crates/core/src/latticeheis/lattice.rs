//! The m-periodic lattice algebra as a straightening engine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::bridgeland::adjacency;
use crate::cyclic::reduce;
use crate::error::{Error, Result};
use crate::exactnum::Coefficient;
use crate::hallcore::{gamma_table, hall_numbers};
use crate::quiverrep::{GClass, IsoClass};
use crate::session::Session;

/// A generator `K^{(i)}_α` or `Z^{(i)}_{[M]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    K(i64, GClass),
    Z(i64, IsoClass),
}

impl Letter {
    pub fn slot(&self) -> i64 {
        match self {
            Letter::K(i, _) | Letter::Z(i, _) => *i,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Letter::K(_, a) => a.is_zero(),
            Letter::Z(_, m) => m.is_zero(),
        }
    }

    /// Position in the normal order: slot, then `K` before `Z`.
    fn order(&self) -> (i64, u8) {
        match self {
            Letter::K(i, _) => (*i, 0),
            Letter::Z(i, _) => (*i, 1),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::K(i, a) => write!(f, "K{i}{a:?}"),
            Letter::Z(i, m) => write!(f, "Z{i}[{m}]"),
        }
    }
}

/// Normal-form word `Π→_i K^{(i)}_{α_i} Z^{(i)}_{[M_i]}`.
pub type LatKey = BTreeMap<i64, (GClass, IsoClass)>;

/// The letters of a normal-form word, in order.
pub fn word_of(key: &LatKey) -> Vec<Letter> {
    let mut w = Vec::new();
    for (&i, (a, m)) in key {
        if !a.is_zero() {
            w.push(Letter::K(i, a.clone()));
        }
        if !m.is_zero() {
            w.push(Letter::Z(i, m.clone()));
        }
    }
    w
}

/// The normal-form key of a word already in normal order.
fn key_of(s: &Session, word: &[Letter]) -> LatKey {
    let nv = s.num_vertices();
    let mut key = LatKey::new();
    for l in word {
        let e = key.entry(l.slot()).or_insert_with(|| (GClass::zero(nv), s.zero_class()));
        match l {
            Letter::K(_, a) => e.0 = &e.0 + a,
            Letter::Z(_, m) => e.1 = m.clone(),
        }
    }
    key
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeElement {
    q: u32,
    period: u32,
    terms: BTreeMap<LatKey, Coefficient>,
}

impl LatticeElement {
    pub fn zero(q: u32, period: u32) -> Self {
        LatticeElement { q, period, terms: BTreeMap::new() }
    }

    pub fn one(q: u32, period: u32) -> Self {
        let mut out = Self::zero(q, period);
        out.add_term(LatKey::new(), Coefficient::one(q));
        out
    }

    /// `K^{(i)}_α`.
    pub fn k(s: &Session, period: u32, alpha: &GClass, i: i64) -> Self {
        let i = reduce(period, i);
        let mut out = Self::zero(s.q(), period);
        out.add_term(key_of(s, &[Letter::K(i, alpha.clone())]), Coefficient::one(s.q()));
        out.prune_units(s)
    }

    /// `Z^{(i)}_{[M]}`.
    pub fn z(s: &Session, period: u32, m: &IsoClass, i: i64) -> Self {
        let i = reduce(period, i);
        let mut out = Self::zero(s.q(), period);
        out.add_term(key_of(s, &[Letter::Z(i, m.clone())]), Coefficient::one(s.q()));
        out.prune_units(s)
    }

    fn prune_units(self, s: &Session) -> Self {
        let mut out = Self::zero(self.q, self.period);
        for (k, c) in self.terms {
            out.add_term(key_of(s, &word_of(&k)), c);
        }
        out
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn terms(&self) -> &BTreeMap<LatKey, Coefficient> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, key: LatKey, c: Coefficient) {
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
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let w: Vec<String> = word_of(k).iter().map(|l| l.to_string()).collect();
                format!("({c}) {}", if w.is_empty() { "1".to_string() } else { w.join("*") })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for LatticeElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Slot<'a> {
            k: &'a GClass,
            z: &'a IsoClass,
        }
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: &'a Coefficient,
            word: BTreeMap<i64, Slot<'a>>,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, coefficient) in &self.terms {
            let word = k.iter().map(|(&i, (a, m))| (i, Slot { k: a, z: m })).collect();
            seq.serialize_element(&Term { coefficient, word })?;
        }
        seq.end()
    }
}

type Expansion = Vec<(Coefficient, Vec<Letter>)>;
type Straightened = Arc<Vec<(Coefficient, LatKey)>>;

/// Rewriting engine. In the default mode the leftmost applicable pair is
/// rewritten and results are memoised by word; in random mode a uniformly
/// random applicable pair is rewritten and nothing is memoised.
pub struct LatticeEngine<'a> {
    s: &'a Session,
    period: u32,
    memo: Mutex<HashMap<Vec<Letter>, Straightened>>,
    rng: Option<Mutex<ChaCha8Rng>>,
    steps: AtomicUsize,
    step_limit: usize,
}

impl<'a> LatticeEngine<'a> {
    pub fn new(s: &'a Session, period: u32) -> Self {
        LatticeEngine {
            s,
            period,
            memo: Mutex::new(HashMap::new()),
            rng: None,
            steps: AtomicUsize::new(0),
            step_limit: 10_000_000,
        }
    }

    pub fn randomized(s: &'a Session, period: u32, seed: u64) -> Self {
        LatticeEngine { rng: Some(Mutex::new(ChaCha8Rng::seed_from_u64(seed))), ..Self::new(s, period) }
    }

    pub fn with_step_limit(mut self, limit: usize) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn session(&self) -> &Session {
        self.s
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    fn v(&self, e: i64) -> Coefficient {
        self.s.v_pow(e)
    }

    fn comm(&self, a: &GClass, b: &GClass) -> i64 {
        self.s.form(self.s.conventions().commutation, a, b)
    }

    /// `c'(i, j)` in `K^{(i)}_α Z^{(j)}_M = v^{c'(i,j)·c(α, M̂)} Z^{(j)}_M K^{(i)}_α`.
    fn kz_sign(&self, i: i64, j: i64) -> i64 {
        if reduce(self.period, i - j) == 0 {
            1
        } else if reduce(self.period, i - j + 1) == 0 {
            -1
        } else {
            0
        }
    }

    fn is_wrap(&self, r: i64, t: i64) -> bool {
        self.period > 0 && r == self.period as i64 - 1 && t == 0
    }

    /// The rewrite of an adjacent pair `a b`, or `None` when it is already normal.
    fn rewrite(&self, a: &Letter, b: &Letter) -> Result<Option<Expansion>> {
        let s = self.s;
        let q = s.q();
        if a.order() < b.order() {
            return Ok(None);
        }
        let out = match (a, b) {
            (Letter::K(r, x), Letter::K(t, y)) => {
                if r == t {
                    vec![(Coefficient::one(q), vec![Letter::K(*r, x + y)])]
                } else {
                    let e = adjacency(self.period, *r, *t) * self.comm(x, y);
                    vec![(self.v(e), vec![b.clone(), a.clone()])]
                }
            }
            (Letter::K(r, x), Letter::Z(t, m)) => {
                let e = self.kz_sign(*r, *t) * self.comm(x, &m.class());
                vec![(self.v(e), vec![b.clone(), a.clone()])]
            }
            (Letter::Z(r, m), Letter::K(t, x)) => {
                let e = -self.kz_sign(*t, *r) * self.comm(x, &m.class());
                vec![(self.v(e), vec![b.clone(), a.clone()])]
            }
            (Letter::Z(r, m), Letter::Z(t, n)) if r == t => {
                let twist = s.euler(&m.class(), &n.class());
                hall_numbers(s, m, n)?
                    .iter()
                    .map(|(l, f)| (Coefficient::from_int(*f as i64, q).mul_v_pow(twist), vec![Letter::Z(*r, l.clone())]))
                    .collect()
            }
            (Letter::Z(r, m), Letter::Z(t, n)) if reduce(self.period, r - t - 1) == 0 && !self.is_wrap(*r, *t) => {
                self.exchange(*t, m, n, false)?
            }
            (Letter::Z(r, m), Letter::Z(t, n)) if self.is_wrap(*r, *t) => {
                // Z^{(0)}_N Z^{(m−1)}_M = Z^{(m−1)}_M Z^{(0)}_N + (lower terms); solve for the left side.
                let mut out = vec![(Coefficient::one(q), vec![b.clone(), a.clone()])];
                out.extend(self.exchange(*r, n, m, true)?);
                out
            }
            (Letter::Z(..), Letter::Z(..)) => vec![(Coefficient::one(q), vec![b.clone(), a.clone()])],
        };
        Ok(Some(out))
    }

    /// `Z^{(j+1)}_M Z^{(j)}_N = Σ v^{⟨M̂−X̂, X̂−Ŷ⟩} γ^{XY}_{MN} K^{(j)}_{M̂−X̂} Z^{(j)}_Y Z^{(j+1)}_X`;
    /// with `negate_rest` the leading `(X, Y) = (M, N)` term is dropped and the rest negated.
    fn exchange(&self, j: i64, m: &IsoClass, n: &IsoClass, negate_rest: bool) -> Result<Expansion> {
        let s = self.s;
        let q = s.q();
        let form = s.conventions().exchange;
        let up = reduce(self.period, j + 1);
        let mut out = Vec::new();
        for ((x, y), g) in gamma_table(s, m, n)?.iter() {
            if negate_rest && x == m && y == n {
                continue;
            }
            let mx = &m.class() - &x.class();
            let e = s.form(form, &mx, &(&x.class() - &y.class()));
            let mut c = Coefficient::from_rational(g.clone(), q).mul_v_pow(e);
            if negate_rest {
                c = -c;
            }
            out.push((c, vec![Letter::K(j, mx), Letter::Z(j, y.clone()), Letter::Z(up, x.clone())]));
        }
        Ok(out)
    }

    fn tick(&self) -> Result<()> {
        if self.steps.fetch_add(1, Ordering::Relaxed) >= self.step_limit {
            return Err(Error::NonTermination(self.step_limit));
        }
        Ok(())
    }

    /// Normal form of an arbitrary word.
    pub fn straighten(&self, word: &[Letter]) -> Result<Straightened> {
        let word: Vec<Letter> = word
            .iter()
            .filter(|l| !l.is_unit())
            .map(|l| match l {
                Letter::K(i, a) => Letter::K(reduce(self.period, *i), a.clone()),
                Letter::Z(i, m) => Letter::Z(reduce(self.period, *i), m.clone()),
            })
            .collect();
        if self.rng.is_none() {
            if let Some(hit) = self.memo.lock().expect("memo").get(&word) {
                return Ok(hit.clone());
            }
        }
        let candidates: Vec<usize> = (0..word.len().saturating_sub(1))
            .filter(|&p| word[p].order() >= word[p + 1].order())
            .collect();
        let result: Straightened = if candidates.is_empty() {
            Arc::new(vec![(Coefficient::one(self.s.q()), key_of(self.s, &word))])
        } else {
            let p = match &self.rng {
                Some(rng) => candidates[rng.lock().expect("rng").gen_range(0..candidates.len())],
                None => candidates[0],
            };
            self.tick()?;
            let expansion = self.rewrite(&word[p], &word[p + 1])?.expect("candidate pair rewrites");
            let mut acc: BTreeMap<LatKey, Coefficient> = BTreeMap::new();
            for (c, middle) in expansion {
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
        };
        if self.rng.is_none() {
            self.memo.lock().expect("memo").insert(word, result.clone());
        }
        Ok(result)
    }

    /// Straightened value of a word, as an element.
    pub fn evaluate(&self, word: &[Letter]) -> Result<LatticeElement> {
        let mut out = LatticeElement::zero(self.s.q(), self.period);
        for (c, k) in self.straighten(word)?.iter() {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &LatticeElement, y: &LatticeElement) -> Result<LatticeElement> {
        if x.q != y.q {
            return Err(Error::FieldMismatch(x.q, y.q));
        }
        if x.period != self.period || y.period != self.period {
            return Err(Error::PeriodMismatch(x.period, y.period));
        }
        let mut out = LatticeElement::zero(x.q, self.period);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let mut w = word_of(a);
                w.extend(word_of(b));
                let cd = c * d;
                for (e, k) in self.straighten(&w)?.iter() {
                    out.add_term(k.clone(), e * &cd);
                }
            }
        }
        Ok(out)
    }
}

/// `x * y` in the lattice algebra with a fresh engine.
pub fn lat_multiply(s: &Session, x: &LatticeElement, y: &LatticeElement) -> Result<LatticeElement> {
    LatticeEngine::new(s, x.period).multiply(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::Quiver;

    #[test]
    fn smallest_exchange() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let eng = LatticeEngine::new(&s, 3);
        let z1 = LatticeElement::z(&s, 3, &k, 1);
        let z0 = LatticeElement::z(&s, 3, &k, 0);
        let lhs = eng.multiply(&z1, &z0).unwrap();
        let rhs = eng.multiply(&z0, &z1).unwrap().add(&LatticeElement::k(&s, 3, &GClass(vec![1]), 0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn far_slots_commute_and_k_merges() {
        let s = Session::new(Quiver::linear_a(1), 3).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let eng = LatticeEngine::new(&s, 5);
        let a = LatticeElement::z(&s, 5, &k, 3);
        let b = LatticeElement::z(&s, 5, &k, 0);
        assert_eq!(eng.multiply(&a, &b).unwrap(), eng.multiply(&b, &a).unwrap());
        let g = GClass(vec![1]);
        let kk = eng.multiply(&LatticeElement::k(&s, 5, &g, 2), &LatticeElement::k(&s, 5, &g, 2)).unwrap();
        assert_eq!(kk, LatticeElement::k(&s, 5, &GClass(vec![2]), 2));
    }

    #[test]
    fn wrap_pair_inverts_exchange() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let eng = LatticeEngine::new(&s, 3);
        let classes = s.classes_up_to(2).unwrap();
        for m in &classes {
            for n in &classes {
                // Z^{(0)}_N Z^{(2)}_M computed directly must equal the (3.4) expansion at j = 2.
                let lhs = eng.evaluate(&[Letter::Z(0, n.clone()), Letter::Z(2, m.clone())]).unwrap();
                let mut rhs = LatticeElement::zero(2, 3);
                for (c, w) in eng.exchange(2, n, m, false).unwrap() {
                    rhs = rhs.add(&eng.evaluate(&w).unwrap().scale(&c));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn random_order_agrees() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let classes = s.classes_up_to(2).unwrap();
        let word = vec![
            Letter::Z(2, classes[3].clone()),
            Letter::K(1, GClass(vec![1, -1])),
            Letter::Z(1, classes[2].clone()),
            Letter::Z(0, classes[1].clone()),
        ];
        let base = LatticeEngine::new(&s, 3).evaluate(&word).unwrap();
        for seed in 0..5 {
            assert_eq!(LatticeEngine::randomized(&s, 3, seed).evaluate(&word).unwrap(), base);
        }
    }

    #[test]
    fn step_limit_is_reported() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let eng = LatticeEngine::new(&s, 3).with_step_limit(0);
        assert!(matches!(eng.evaluate(&[Letter::Z(1, k.clone()), Letter::Z(0, k)]), Err(Error::NonTermination(0))));
    }
}
