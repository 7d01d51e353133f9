//! A computation context: quiver, field size, budget, sign conventions and
//! the shared memo tables behind every counting oracle.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use serde::Serialize;

use crate::cyclic::ComplexClass;
use crate::error::{Error, Result};
use crate::exactnum::{gl_order, is_prime, Coefficient, DEFAULT_BUDGET};
use crate::quiverrep::{
    dims_up_to, enumerate_orbits, find_isomorphism, min_proj_resolution, module_label, GClass, IsoClass,
    ModuleLabel, ProjResolution, Quiver, Representation,
};

/// Which bilinear form an exponent uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `⟨α, β⟩`.
    Euler,
    /// `(α, β) = ⟨α, β⟩ + ⟨β, α⟩`.
    Symmetric,
}

/// Exponent conventions for the places where more than one reading is possible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Conventions {
    /// Form in `K_α [M] = v^{c(α, M̂)} [M] K_α` and in the K/K and K/Z
    /// commutations of the lattice algebra.
    pub commutation: Form,
    /// Form in the exponent `⟨M̂ − X̂, X̂ − Ŷ⟩` of the adjacent-slot exchange.
    pub exchange: Form,
    /// Form in the normalising power `v^{c(Ω̂_M, M̂)}` of `E_{M,r}`.
    pub generator: Form,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { commutation: Form::Symmetric, exchange: Form::Euler, generator: Form::Euler }
    }
}

/// A concurrent memo table; the first value inserted for a key wins.
pub struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Memo { map: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, k: &K) -> Option<V> {
        self.map.read().expect("memo lock").get(k).cloned()
    }

    pub fn get_or_try_insert(&self, k: &K, f: impl FnOnce() -> Result<V>) -> Result<V> {
        if let Some(v) = self.get(k) {
            return Ok(v);
        }
        let v = f()?;
        Ok(self.map.write().expect("memo lock").entry(k.clone()).or_insert(v).clone())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub rep: Representation,
    pub label: ModuleLabel,
    pub orbit_size: u128,
}

/// Weighted list of normal-form pieces `coefficient · K^τ [R]` produced by
/// multiplying two reduced complexes.
pub type ReducedProduct = Arc<Vec<(Coefficient, BTreeMap<i64, GClass>, BTreeMap<i64, IsoClass>)>>;

pub struct Session {
    quiver: Quiver,
    q: u32,
    budget: u64,
    conventions: Conventions,
    classes: Memo<Vec<usize>, Arc<Vec<ClassData>>>,
    classified: Memo<Representation, IsoClass>,
    resolutions: Memo<IsoClass, Arc<ProjResolution>>,
    pub(crate) hall_table: Memo<(IsoClass, IsoClass), Arc<BTreeMap<IsoClass, u128>>>,
    pub(crate) gamma_table: Memo<(IsoClass, IsoClass), Arc<BTreeMap<(IsoClass, IsoClass), BigRational>>>,
    pub(crate) htw_table: Memo<(u32, ComplexClass, ComplexClass), Arc<Vec<(Coefficient, ComplexClass)>>>,
    pub(crate) reduced_table: Memo<(u32, BTreeMap<i64, IsoClass>, BTreeMap<i64, IsoClass>), ReducedProduct>,
}

impl Session {
    pub fn new(quiver: Quiver, q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Session {
            quiver,
            q,
            budget: DEFAULT_BUDGET,
            conventions: Conventions::default(),
            classes: Memo::new(),
            classified: Memo::new(),
            resolutions: Memo::new(),
            hall_table: Memo::new(),
            gamma_table: Memo::new(),
            htw_table: Memo::new(),
            reduced_table: Memo::new(),
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_conventions(mut self, conventions: Conventions) -> Self {
        self.conventions = conventions;
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn euler(&self, a: &GClass, b: &GClass) -> i64 {
        self.quiver.euler_form(a, b)
    }

    pub fn sym(&self, a: &GClass, b: &GClass) -> i64 {
        self.quiver.sym_euler_form(a, b)
    }

    pub fn form(&self, f: Form, a: &GClass, b: &GClass) -> i64 {
        match f {
            Form::Euler => self.euler(a, b),
            Form::Symmetric => self.sym(a, b),
        }
    }

    pub fn v_pow(&self, e: i64) -> Coefficient {
        Coefficient::v_pow(e, self.q)
    }

    pub fn zero_class(&self) -> IsoClass {
        IsoClass::zero(self.num_vertices())
    }

    pub fn zero_rep(&self) -> Representation {
        Representation::zero(&self.quiver, self.q)
    }

    /// All classes with the given dimension vector, in canonical order.
    pub fn class_data(&self, dims: &[usize]) -> Result<Arc<Vec<ClassData>>> {
        self.classes.get_or_try_insert(&dims.to_vec(), || {
            let orbits = enumerate_orbits(&self.quiver, dims, self.q, self.budget)?;
            Ok(Arc::new(
                orbits
                    .into_iter()
                    .map(|o| ClassData {
                        label: module_label(&self.quiver, &o.representative, self.q),
                        rep: o.representative,
                        orbit_size: o.size,
                    })
                    .collect(),
            ))
        })
    }

    pub fn classes_of_dims(&self, dims: &[usize]) -> Result<Vec<IsoClass>> {
        let n = self.class_data(dims)?.len();
        Ok((0..n).map(|i| IsoClass::new(dims.to_vec(), i)).collect())
    }

    /// Every class of total dimension at most `bound`, in canonical order.
    pub fn classes_up_to(&self, bound: usize) -> Result<Vec<IsoClass>> {
        let mut out = Vec::new();
        for dims in dims_up_to(self.num_vertices(), bound) {
            out.extend(self.classes_of_dims(&dims)?);
        }
        Ok(out)
    }

    pub fn rep(&self, c: &IsoClass) -> Result<Representation> {
        let data = self.class_data(c.dims())?;
        data.get(c.index())
            .map(|d| d.rep.clone())
            .ok_or_else(|| Error::Config(format!("no class {c}")))
    }

    pub fn orbit_size(&self, c: &IsoClass) -> Result<u128> {
        Ok(self.class_data(c.dims())?[c.index()].orbit_size)
    }

    /// The class of an arbitrary representation.
    pub fn classify(&self, rep: &Representation) -> Result<IsoClass> {
        if let Some(c) = self.classified.get(rep) {
            return Ok(c);
        }
        let data = self.class_data(rep.dims())?;
        let label = module_label(&self.quiver, rep, self.q);
        let candidates: Vec<usize> = (0..data.len()).filter(|&i| data[i].label == label).collect();
        let mut found = None;
        for (k, &i) in candidates.iter().enumerate() {
            if k + 1 == candidates.len()
                || find_isomorphism(&self.quiver, &data[i].rep, rep, self.q, self.budget)?.is_some()
            {
                found = Some(i);
                break;
            }
        }
        let i = found.ok_or_else(|| Error::Bookkeeping(format!("no class matches dims {:?}", rep.dims())))?;
        let c = IsoClass::new(rep.dims().to_vec(), i);
        self.classified.get_or_try_insert(rep, || Ok(c))
    }

    /// `|Aut M| = Π_v |GL_{d_v}(F_q)| / |orbit of M|`.
    pub fn aut_order(&self, c: &IsoClass) -> Result<u128> {
        let group: u128 = c.dims().iter().map(|&d| gl_order(d, self.q)).product();
        Ok(group / self.orbit_size(c)?)
    }

    pub fn resolution(&self, c: &IsoClass) -> Result<Arc<ProjResolution>> {
        self.resolutions
            .get_or_try_insert(c, || Ok(Arc::new(min_proj_resolution(&self.quiver, &self.rep(c)?, self.q))))
    }

    /// `Ω̂_M`.
    pub fn omega_class(&self, c: &IsoClass) -> Result<GClass> {
        Ok(self.resolution(c)?.omega.class())
    }

    /// `P̂_M`.
    pub fn cover_class(&self, c: &IsoClass) -> Result<GClass> {
        Ok(self.resolution(c)?.cover.class())
    }

    /// The class of `⊕_v P_v^{mult[v]}`.
    pub fn projective_class(&self, mult: &[usize]) -> Result<IsoClass> {
        self.classify(&Representation::projective_sum(&self.quiver, mult, self.q))
    }

    pub fn simple_class(&self, v: usize) -> Result<IsoClass> {
        self.classify(&Representation::simple(&self.quiver, v, self.q))
    }

    /// Indecomposable projective classes `P_v`, in vertex order.
    pub fn indecomposable_projectives(&self) -> Result<Vec<IsoClass>> {
        (0..self.num_vertices())
            .map(|v| {
                let mut mult = vec![0; self.num_vertices()];
                mult[v] = 1;
                self.projective_class(&mult)
            })
            .collect()
    }

    /// Projective class with the given Grothendieck class, if there is one.
    pub fn projective_of_class(&self, g: &GClass) -> Result<Option<IsoClass>> {
        match self.quiver.projective_multiplicities(g) {
            Some(m) if m.iter().all(|&k| k >= 0) => {
                let mult: Vec<usize> = m.iter().map(|&k| k as usize).collect();
                Ok(Some(self.projective_class(&mult)?))
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::aut_order;

    #[test]
    fn rejects_non_prime() {
        assert!(matches!(Session::new(Quiver::linear_a(1), 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn a1_enumeration() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        assert_eq!(s.classes_up_to(2).unwrap().len(), 3);
    }

    #[test]
    fn a2_enumeration_counts() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        assert_eq!(s.classes_of_dims(&[1, 1]).unwrap().len(), 2);
        assert_eq!(s.classes_of_dims(&[0, 0]).unwrap().len(), 1);
        assert_eq!(s.classes_up_to(2).unwrap().len(), 7);
    }

    #[test]
    fn classify_is_stable_and_matches_orbits() {
        let s = Session::new(Quiver::linear_a(2), 3).unwrap();
        for c in s.classes_up_to(3).unwrap() {
            let r = s.rep(&c).unwrap();
            assert_eq!(s.classify(&r).unwrap(), c);
            let brute = aut_order(s.quiver(), &s.rep(&c).unwrap(), 3, DEFAULT_BUDGET).unwrap();
            assert_eq!(s.aut_order(&c).unwrap(), brute);
        }
    }

    #[test]
    fn projective_and_simple_classes() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let p = s.indecomposable_projectives().unwrap();
        assert_eq!(p[0].dims(), &[1, 1]);
        assert_eq!(p[1], s.simple_class(1).unwrap());
        assert_eq!(s.omega_class(&s.simple_class(0).unwrap()).unwrap(), GClass(vec![0, 1]));
    }
}
