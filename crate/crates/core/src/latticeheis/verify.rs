//! Named verification suites. Each suite checks one family of identities
//! exhaustively (or on seeded random samples) and reports every mismatch with
//! both computed sides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::heis::{heis_multiply, j_embedding, j_prime, HeisElement};
use super::lattice::{LatticeElement, LatticeEngine};
use super::phi::phi_map;
use crate::bridgeland::{
    delta, dh_multiply, dh_product, e_generator, k_monomial, normalize_class, pbw_matrix_rank, DhElement,
    PbwGrade,
};
use crate::cyclic::{
    build_cm, build_kp, canonical_decompose, class_direct_sum, ext_data, find_chain_isomorphism, hom_dims, htw_multiply, random_complex,
    random_term_automorphisms, rebuild, reduce, term_classes, ComplexClass, CyclicComplex,
};
use crate::error::{Error, Result};
use crate::exactnum::{check_budget, combine, Coefficient, VectorIter};
use crate::hallcore::{gamma_table, hall_number, riedtmann_value};
use crate::quiverrep::{hom_basis, GClass, IsoClass, Morphism, Representation};
use crate::session::Session;

/// Suite identifiers accepted by [`verify_suite`].
pub const SUITES: [&str; 10] =
    ["lemma2.1", "lemma2.3", "lemma2.5", "riedtmann", "prop2.7", "eq3.6", "eq3.7", "thm3.2", "cor3.3", "x5"];

/// Bounds shared by all suites. `dim` bounds the total dimension of modules
/// (and of complex terms); `samples` and `seed` drive the randomized suites.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub period: u32,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(period: u32, dim: usize) -> Self {
        SuiteConfig { period, dim, samples: 200, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub lhs: String,
    pub rhs: String,
    pub context: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportConfig {
    pub quiver: String,
    pub q: u32,
    pub m: u32,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: ReportConfig,
    pub instances_checked: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Tally {
    fn record(&mut self, outcome: Option<Failure>) {
        self.instances += 1;
        self.failures.extend(outcome);
    }

    fn extend(&mut self, outcomes: Vec<Option<Failure>>) {
        for o in outcomes {
            self.record(o);
        }
    }
}

fn compare<T: PartialEq + fmt::Display>(lhs: &T, rhs: &T, context: impl FnOnce() -> String) -> Option<Failure> {
    (lhs != rhs).then(|| Failure { lhs: lhs.to_string(), rhs: rhs.to_string(), context: context() })
}

/// Runs the named suite against the session's quiver and field.
pub fn verify_suite(name: &str, s: &Session, cfg: &SuiteConfig) -> Result<Report> {
    if cfg.period != 0 {
        crate::cyclic::check_period(cfg.period as i64)?;
    }
    let tally = match name {
        "lemma2.1" => ext_vs_homotopy(s, cfg)?,
        "lemma2.3" => decomposition(s, cfg)?,
        "lemma2.5" => acyclic_commutation(s, cfg)?,
        "riedtmann" => riedtmann(s, cfg)?,
        "prop2.7" => pbw(s, cfg)?,
        "eq3.6" => k_past_generator(s, cfg)?,
        "eq3.7" => far_slots(s, cfg)?,
        "thm3.2" => phi_homomorphism(s, cfg)?,
        "cor3.3" => heis_embedding(s, cfg)?,
        "x5" => exchange_coefficients(s, cfg)?,
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(Report {
        suite: name.to_string(),
        config: ReportConfig {
            quiver: s.quiver().content_hash(),
            q: s.q(),
            m: cfg.period,
            dim: cfg.dim,
            samples: cfg.samples,
            seed: cfg.seed,
        },
        instances_checked: tally.instances,
        failures: tally.failures,
        notes: tally.notes,
    })
}

/// Slots exercised by the suites: `Z_m`, or the window `−1..=3` when `m = 0`.
pub fn window_slots(period: u32) -> Vec<i64> {
    if period > 0 {
        (0..period as i64).collect()
    } else {
        (-1..=3).collect()
    }
}

fn nonzero_classes(s: &Session, dim: usize) -> Result<Vec<IsoClass>> {
    Ok(s.classes_up_to(dim)?.into_iter().filter(|c| !c.is_zero()).collect())
}

fn unit_vectors(s: &Session) -> Vec<GClass> {
    let n = s.num_vertices();
    (0..n).flat_map(|v| [GClass::unit(n, v), GClass::unit(n, v).scale(-1)]).collect()
}

// ---------------------------------------------------------------------------
// Hall numbers against the Riedtmann formula.

fn riedtmann(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let classes = s.classes_up_to(cfg.dim)?;
    let mut triples = Vec::new();
    for m in &classes {
        for n in &classes {
            if m.total_dim() + n.total_dim() > cfg.dim {
                continue;
            }
            let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
            for l in s.classes_of_dims(&dims)? {
                triples.push((l, m.clone(), n.clone()));
            }
        }
    }
    let outcomes: Vec<Option<Failure>> = triples
        .par_iter()
        .map(|(l, m, n)| {
            let lhs = hall_number(s, l, m, n)?;
            let rhs = riedtmann_value(s, l, m, n)?;
            Ok(compare(&num_rational::BigRational::from_integer(lhs.into()), &rhs, || format!("L={l} M={m} N={n}")))
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    t.extend(outcomes);
    Ok(t)
}

// ---------------------------------------------------------------------------
// |Ext¹(N, M)| against q^{dim Hom_K(N, M[1])}.

fn span(basis: &[Morphism], coeffs: &[u32], src: &Representation, dst: &Representation, q: u32) -> Morphism {
    if basis.is_empty() {
        return Morphism::zero(src, dst, q);
    }
    let flat: Vec<Vec<u32>> = basis.iter().map(|b| b.flatten()).collect();
    Morphism::unflatten(&combine(&flat, coeffs, flat[0].len(), q), src.dims(), dst.dims(), q)
}

fn joint_positions(x: &CyclicComplex, y: &CyclicComplex) -> Vec<i64> {
    if x.period() > 0 {
        return (0..x.period() as i64).collect();
    }
    let all: BTreeSet<i64> = x.support().into_iter().chain(y.support()).collect();
    match (all.first(), all.last()) {
        (Some(&a), Some(&b)) => (a - 2..=b + 1).collect(),
        _ => Vec::new(),
    }
}

/// Number of coefficient vectors `c ∈ F_q^k` with `Σ c_j · columns_j = 0`,
/// by walking all `q^k` vectors and updating the running sum one column at a time.
fn count_zero_combinations(columns: &[Vec<u32>], q: u32, budget: u64, what: &str) -> Result<u128> {
    check_budget(q, columns.len(), budget, what)?;
    let len = columns.first().map_or(0, Vec::len);
    let mut sum = vec![0u32; len];
    let mut digits = vec![0u32; columns.len()];
    let mut zeros: u128 = 0;
    loop {
        if sum.iter().all(|&x| x == 0) {
            zeros += 1;
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(zeros);
            }
            for (s, &c) in sum.iter_mut().zip(&columns[k]) {
                *s = (*s + c) % q;
            }
            digits[k] += 1;
            if digits[k] < q {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// `|Ext¹(X, Y)|` by counting graded maps `h_i: X_i → Y_{i+1}` with
/// `d^Y h + h d^X = 0`, and dividing by the number of distinct maps
/// `d^Y s − s d^X` (the size of the source of `s` over its kernel).
pub fn ext_order_brute(s: &Session, x: &CyclicComplex, y: &CyclicComplex) -> Result<u128> {
    let (quiver, q) = (s.quiver(), s.q());
    let pos = joint_positions(x, y);
    let zero = |i: i64, shift: i64| Morphism::zero(x.term(i), y.term(i + shift), q);

    // Each basis map at position i, pushed through the constraint at every position.
    let mut z_cols = Vec::new();
    let mut b_cols = Vec::new();
    for &i in &pos {
        for h in hom_basis(quiver, x.term(i), y.term(i + 1), q) {
            let mut col = Vec::new();
            for &j in &pos {
                let hj = if x.pos(j) == x.pos(i) { h.clone() } else { zero(j, 1) };
                let hj1 = if x.pos(j + 1) == x.pos(i) { h.clone() } else { zero(j + 1, 1) };
                col.extend(y.diff(j + 1).compose(&hj).add(&hj1.compose(&x.diff(j))).flatten());
            }
            z_cols.push(col);
        }
        for g in hom_basis(quiver, x.term(i), y.term(i), q) {
            let mut col = Vec::new();
            for &j in &pos {
                let gj = if x.pos(j) == x.pos(i) { g.clone() } else { zero(j, 0) };
                let gj1 = if x.pos(j + 1) == x.pos(i) { g.clone() } else { zero(j + 1, 0) };
                col.extend(y.diff(j).compose(&gj).sub(&gj1.compose(&x.diff(j))).flatten());
            }
            b_cols.push(col);
        }
    }
    let cocycles = count_zero_combinations(&z_cols, q, s.budget(), "cocycle candidates")?;
    let kernel = count_zero_combinations(&b_cols, q, s.budget(), "coboundary candidates")?;
    let boundaries = (q as u128).pow(b_cols.len() as u32) / kernel;
    if cocycles % boundaries != 0 {
        return Err(Error::Bookkeeping(format!("{boundaries} coboundaries do not divide {cocycles} cocycles")));
    }
    Ok(cocycles / boundaries)
}

fn ext_vs_homotopy(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pairs = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let n = random_complex(s, cfg.period, 3, cfg.dim, &mut rng)?;
        let m = random_complex(s, cfg.period, 3, cfg.dim, &mut rng)?;
        pairs.push((n, m));
    }
    let outcomes: Vec<Option<Failure>> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, (n, m))| {
            let lhs = ext_order_brute(s, n, m)?;
            let rhs = (s.q() as u128).pow(hom_dims(s.quiver(), n, &m.shift(1)).1 as u32);
            Ok(compare(&lhs, &rhs, || format!("sample {k}: N terms {:?}, M terms {:?}", n.term_classes(), m.term_classes())))
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    t.extend(outcomes);
    Ok(t)
}

// ---------------------------------------------------------------------------
// Canonical decomposition: recovery of acyclic sums and completeness.

fn projective_classes(s: &Session, dim: usize) -> Result<Vec<IsoClass>> {
    let mut out = Vec::new();
    for c in s.classes_up_to(dim)? {
        if s.rep(&c)?.is_projective(s.quiver(), s.q()) {
            out.push(c);
        }
    }
    Ok(out)
}

fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for v in &frontier {
            let start = v.last().copied().unwrap_or(0);
            for k in start..n {
                let mut w: Vec<usize> = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn assembled_acyclics(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let summands: Vec<(IsoClass, i64)> = s
        .indecomposable_projectives()?
        .into_iter()
        .flat_map(|p| window_slots(cfg.period).into_iter().map(move |r| (p.clone(), r)))
        .collect();
    let combos = multisets(summands.len(), 3);
    let outcomes: Vec<Option<Failure>> = combos
        .par_iter()
        .enumerate()
        .map(|(k, combo)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
            let mut x = CyclicComplex::zero(s.quiver(), cfg.period, s.q());
            let mut mult: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for &c in combo {
                let (p, r) = &summands[c];
                x = x.direct_sum(&build_kp(s.quiver(), cfg.period, s.q(), &s.rep(p)?)?.shift(*r));
                let e = mult.entry(reduce(cfg.period, *r)).or_insert_with(|| vec![0; s.num_vertices()]);
                let v = s.indecomposable_projectives()?.iter().position(|i| i == p).unwrap_or(0);
                e[v] += 1;
            }
            let g = random_term_automorphisms(s, &x, &mut rng);
            let got = canonical_decompose(s, &x.conjugate(&g))?;
            let mut want = ComplexClass::zero(cfg.period);
            for (r, m) in mult {
                want.acyclic.insert(r, s.projective_class(&m)?);
            }
            Ok(compare(&got, &want, || format!("assembled from {combo:?}")))
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    t.extend(outcomes);
    Ok(t)
}

/// Every complex whose terms are projectives of total dimension at most `dim`
/// on the positions of `Z_m` (or `0..4` when `m = 0`).
pub fn all_complexes(s: &Session, period: u32, dim: usize) -> Result<Vec<CyclicComplex>> {
    let (quiver, q) = (s.quiver(), s.q());
    let reps: Vec<Representation> = projective_classes(s, dim)?.iter().map(|c| s.rep(c)).collect::<Result<_>>()?;
    let len = if period > 0 { period as usize } else { 4 };
    let mut out = Vec::new();
    let mut count: u64 = 0;
    for choice in VectorIter::new(len, reps.len() as u32) {
        let terms: Vec<&Representation> = choice.iter().map(|&c| &reps[c as usize]).collect();
        let n_diffs = if period > 0 { len } else { len - 1 };
        let bases: Vec<Vec<Morphism>> =
            (0..n_diffs).map(|i| hom_basis(quiver, terms[i], terms[(i + 1) % len], q)).collect();
        let total: usize = bases.iter().map(Vec::len).sum();
        count += check_budget(q, total, s.budget(), "complexes")?;
        if count > s.budget() {
            return Err(Error::BudgetExceeded { requested: format!("{count} complexes"), budget: s.budget() });
        }
        let mut partial: Vec<Morphism> = Vec::new();
        extend_diffs(s, &terms, &bases, period, &mut partial, &mut out)?;
    }
    Ok(out)
}

fn extend_diffs(
    s: &Session,
    terms: &[&Representation],
    bases: &[Vec<Morphism>],
    period: u32,
    partial: &mut Vec<Morphism>,
    out: &mut Vec<CyclicComplex>,
) -> Result<()> {
    let q = s.q();
    let len = terms.len();
    let i = partial.len();
    if i == bases.len() {
        if period > 0 && !partial[0].compose(&partial[len - 1]).is_zero() {
            return Ok(());
        }
        let t: BTreeMap<i64, Representation> = terms.iter().enumerate().map(|(k, r)| (k as i64, (*r).clone())).collect();
        let d: BTreeMap<i64, Morphism> = partial.iter().enumerate().map(|(k, m)| (k as i64, m.clone())).collect();
        out.push(CyclicComplex::from_parts(s.quiver(), period, q, t, d)?);
        return Ok(());
    }
    let (src, dst) = (terms[i], terms[(i + 1) % len]);
    for c in VectorIter::new(bases[i].len(), q) {
        let d = span(&bases[i], &c, src, dst, q);
        if i > 0 && !d.compose(&partial[i - 1]).is_zero() {
            continue;
        }
        partial.push(d);
        extend_diffs(s, terms, bases, period, partial, out)?;
        partial.pop();
    }
    Ok(())
}

fn decomposition(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let mut t = assembled_acyclics(s, cfg)?;
    let complexes = all_complexes(s, cfg.period, cfg.dim)?;
    let budget = s.budget();
    let classified: Vec<(ComplexClass, Option<Failure>)> = complexes
        .par_iter()
        .map(|x| {
            let class = canonical_decompose(s, x)?;
            let canon = rebuild(s, &class)?;
            let iso = find_chain_isomorphism(s.quiver(), x, &canon, budget)?;
            let fail = iso.is_none().then(|| Failure {
                lhs: format!("complex with terms {:?}", x.term_classes()),
                rhs: class.to_string(),
                context: "no chain isomorphism to the canonical representative".into(),
            });
            Ok((class, fail))
        })
        .collect::<Result<_>>()?;
    let mut classes: BTreeSet<ComplexClass> = BTreeSet::new();
    for (c, f) in classified {
        t.record(f);
        classes.insert(c);
    }
    let mut by_terms: BTreeMap<BTreeMap<i64, GClass>, Vec<ComplexClass>> = BTreeMap::new();
    for c in classes {
        by_terms.entry(term_classes(s, &c)?).or_default().push(c);
    }
    let mut pairs = Vec::new();
    for group in by_terms.values() {
        for a in 0..group.len() {
            for b in a + 1..group.len() {
                pairs.push((&group[a], &group[b]));
            }
        }
    }
    let outcomes: Vec<Option<Failure>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let iso = find_chain_isomorphism(s.quiver(), &rebuild(s, a)?, &rebuild(s, b)?, budget)?;
            Ok(iso.is_some().then(|| Failure {
                lhs: a.to_string(),
                rhs: b.to_string(),
                context: "distinct classes are isomorphic".into(),
            }))
        })
        .collect::<Result<_>>()?;
    t.extend(outcomes);
    t.notes.push(format!(
        "{} complexes in {} classes, {} same-term class pairs",
        complexes.len(),
        by_terms.values().map(Vec::len).sum::<usize>(),
        pairs.len()
    ));
    Ok(t)
}

// ---------------------------------------------------------------------------
// Acyclic summands commute with everything up to a power of v.

#[derive(Clone, PartialEq)]
struct Linear(BTreeMap<ComplexClass, Coefficient>);

impl Linear {
    fn of(terms: &[(Coefficient, ComplexClass)]) -> Self {
        let mut out: BTreeMap<ComplexClass, Coefficient> = BTreeMap::new();
        for (c, l) in terms {
            let e = out.remove(l).map(|x| x + c).unwrap_or_else(|| c.clone());
            if !e.is_zero() {
                out.insert(l.clone(), e);
            }
        }
        Linear(out)
    }

    fn scale(&self, c: &Coefficient) -> Self {
        Linear(self.0.iter().map(|(k, x)| (k.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect())
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, c)| format!("({c}) [{k}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn htw(s: &Session, x: &ComplexClass, y: &ComplexClass) -> Result<Linear> {
    Ok(Linear::of(&htw_multiply(s, x, y)?))
}

fn single(s: &Session, c: ComplexClass, e: i64) -> Linear {
    Linear([(c, s.v_pow(e))].into_iter().collect())
}

struct Agreement {
    name: &'static str,
    instances: usize,
    printed: usize,
}

impl Agreement {
    fn note(&self) -> String {
        format!(
            "{}: computed exponent equals the symmetric form in {n}/{n} instances and the printed Euler form in {}/{n}",
            self.name,
            self.printed,
            n = self.instances
        )
    }
}

fn acyclic_commutation(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let period = cfg.period;
    let nv = s.num_vertices();
    let slots = window_slots(period);
    let projectives = s.indecomposable_projectives()?;
    let modules = nonzero_classes(s, cfg.dim)?;
    let mut objects: Vec<(String, ComplexClass)> = Vec::new();
    for &t in &slots {
        for m in &modules {
            objects.push((format!("C{m}[{t}]"), ComplexClass::stalk(period, m.clone(), t)));
        }
        for p in &projectives {
            objects.push((format!("K{p}[{t}]"), ComplexClass::contractible(period, p.clone(), t)));
        }
    }
    let last = if period > 0 { period as i64 - 1 } else { -1 };
    let mut t = Tally::default();
    let mut agree = [
        Agreement { name: "general commutation", instances: 0, printed: 0 },
        Agreement { name: "with K_Q", instances: 0, printed: 0 },
        Agreement { name: "with C_M", instances: 0, printed: 0 },
    ];
    for p in &projectives {
        let ph = p.class();
        for &r in &slots {
            let kp = ComplexClass::contractible(period, p.clone(), r);
            for (label, x) in &objects {
                let ctx = |what: &str| format!("{what}: P={p}, r={r}, X={label}");
                let d = delta(period, &term_classes(s, x)?, r, nv);
                let sum = class_direct_sum(s, &kp, x)?;
                let left = htw(s, &kp, x)?;
                let right = htw(s, x, &kp)?;
                t.record(compare(&left, &single(s, sum.clone(), s.euler(&ph, &d)), || ctx("K_P[r] * X")));
                t.record(compare(&right, &single(s, sum, -s.euler(&d, &ph)), || ctx("X * K_P[r]")));

                // Case-split exponents, with the form left open.
                let printed = |form: &dyn Fn(&GClass, &GClass) -> i64| -> Result<Option<(usize, i64)>> {
                    if x.acyclic.len() == 1 && x.homology.is_empty() && x.acyclic.contains_key(&0) {
                        let q = x.acyclic[&0].class();
                        let rr = reduce(period, r);
                        let e = if rr == reduce(period, 1) {
                            form(&ph, &q)
                        } else if rr == reduce(period, last) {
                            -form(&ph, &q)
                        } else {
                            0
                        };
                        return Ok(Some((1, e)));
                    }
                    if x.acyclic.is_empty() && x.homology.len() == 1 && x.homology.contains_key(&0) {
                        let m = &x.homology[&0];
                        let rr = reduce(period, r);
                        let e = if rr == 0 {
                            form(&ph, &m.class())
                        } else if rr == reduce(period, 1) {
                            form(&ph, &s.omega_class(m)?)
                        } else if rr == reduce(period, last) {
                            -form(&ph, &s.cover_class(m)?)
                        } else {
                            0
                        };
                        return Ok(Some((2, e)));
                    }
                    Ok(None)
                };
                let sym = |a: &GClass, b: &GClass| s.sym(a, b);
                let eul = |a: &GClass, b: &GClass| s.euler(a, b);
                t.record(compare(&left, &right.scale(&s.v_pow(s.sym(&ph, &d))), || ctx("commutation")));
                agree[0].instances += 1;
                if left == right.scale(&s.v_pow(s.euler(&ph, &d))) {
                    agree[0].printed += 1;
                }
                if let (Some((k, e_sym)), Some((_, e_eul))) = (printed(&sym)?, printed(&eul)?) {
                    t.record(compare(&left, &right.scale(&s.v_pow(e_sym)), || ctx("case-split commutation")));
                    agree[k].instances += 1;
                    if left == right.scale(&s.v_pow(e_eul)) {
                        agree[k].printed += 1;
                    }
                }
            }
        }
    }
    t.notes.extend(agree.iter().map(Agreement::note));
    Ok(t)
}

// ---------------------------------------------------------------------------
// Prop 2.7 style rank check.

fn pbw(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let slots = if cfg.period > 0 { (0..cfg.period as i64).collect() } else { vec![0, 1, 2] };
    let grade = PbwGrade { slots: slots.clone(), module_dim: cfg.dim, alpha_bound: 1 };
    let r = pbw_matrix_rank(s, cfg.period, &grade)?;
    let mut t = Tally::default();
    t.instances = r.products;
    if r.rank != r.products {
        t.failures.push(Failure {
            lhs: format!("rank {}", r.rank),
            rhs: format!("{} products", r.products),
            context: format!("slots {slots:?}"),
        });
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Theorem 3.2 ingredients.

fn stalk_generator(s: &Session, period: u32, m: &IsoClass, t: i64) -> Result<DhElement> {
    let k = k_monomial(s, period, &s.omega_class(m)?.scale(-1), t);
    dh_multiply(s, &k, &normalize_class(s, &ComplexClass::stalk(period, m.clone(), t))?)
}

fn k_past_generator(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let period = cfg.period;
    let slots = window_slots(period);
    let last = if period > 0 { period as i64 - 1 } else { -1 };
    let mut cases = Vec::new();
    for p in s.indecomposable_projectives()? {
        for m in nonzero_classes(s, cfg.dim)? {
            for &r in &slots {
                for &t in &slots {
                    cases.push((p.clone(), m.clone(), r, t));
                }
            }
        }
    }
    let outcomes: Vec<Option<Failure>> = cases
        .par_iter()
        .map(|(p, m, r, t)| {
            let kp = normalize_class(s, &ComplexClass::contractible(period, p.clone(), *r))?;
            let e = stalk_generator(s, period, m, *t)?;
            let rel = reduce(period, r - t);
            let pm = s.sym(&p.class(), &m.class());
            let exp = if rel == 0 {
                pm
            } else if rel == reduce(period, last) {
                -pm
            } else {
                0
            };
            let lhs = dh_multiply(s, &kp, &e)?;
            let rhs = dh_multiply(s, &e, &kp)?.scale(&s.v_pow(exp));
            Ok(compare(&lhs, &rhs, || format!("P={p}, M={m}, r={r}, t={t}")))
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    t.extend(outcomes);
    Ok(t)
}

fn far_slots(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let period = cfg.period;
    let quiver = s.quiver();
    let last = if period > 0 { period as i64 - 1 } else { -1 };
    let slots: Vec<i64> = if period > 0 { (0..period as i64).collect() } else { (-3..=3).collect() };
    let modules = nonzero_classes(s, cfg.dim)?;
    let mut cases = Vec::new();
    for m in &modules {
        for n in &modules {
            for &r in &slots {
                cases.push((m.clone(), n.clone(), r));
            }
        }
    }
    let is = |r: i64, k: i64| reduce(period, r) == reduce(period, k);
    let outcomes: Vec<Vec<Option<Failure>>> = cases
        .par_iter()
        .map(|(m, n, r)| {
            let r = *r;
            let mut out = Vec::new();
            let ctx = |what: &str| format!("{what}: M={m}, N={n}, r={r}");
            let cm = build_cm(s, period, m)?;
            let cn = build_cm(s, period, n)?;
            let cmr = cm.shift(r);
            if !is(r, 0) && !is(r, 1) {
                out.push(compare(&ext_data(quiver, &cmr, &cn).dim(), &0, || ctx("Ext(C_M[r], C_N)")));
                out.push(compare(&hom_dims(quiver, &cmr, &cn.shift(1)).1, &0, || ctx("Hom_K(C_M[r], C_N[1])")));
                out.push(compare(&hom_dims(quiver, &cm.shift(r - 1), &cn).1, &0, || ctx("Hom_K(C_M[r-1], C_N)")));
            }
            if !is(r, 0) && !is(r, last) {
                out.push(compare(&ext_data(quiver, &cn, &cmr).dim(), &0, || ctx("Ext(C_N, C_M[r])")));
            }
            if !is(r, 0) && !is(r, 1) && !is(r, last) {
                let (x, y) = (ComplexClass::stalk(period, m.clone(), r), ComplexClass::stalk(period, n.clone(), 0));
                let sum = single(s, class_direct_sum(s, &x, &y)?, 0);
                out.push(compare(&htw(s, &x, &y)?, &sum, || ctx("[C_M[r]] * [C_N]")));
                out.push(compare(&htw(s, &y, &x)?, &sum, || ctx("[C_N] * [C_M[r]]")));
                let (em, en) = (stalk_generator(s, period, m, r)?, stalk_generator(s, period, n, 0)?);
                out.push(compare(&dh_multiply(s, &em, &en)?, &dh_multiply(s, &en, &em)?, || ctx("E_{M,r} E_N")));
                let (em, en) = (e_generator(s, period, m, r)?, e_generator(s, period, n, 0)?);
                out.push(compare(&dh_multiply(s, &em, &en)?, &dh_multiply(s, &en, &em)?, || ctx("e_{M,r} e_N")));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for o in outcomes {
        t.extend(o);
    }
    Ok(t)
}

fn lattice_generators(s: &Session, period: u32, dim: usize) -> Result<Vec<(String, LatticeElement)>> {
    let mut out = Vec::new();
    let alphas = unit_vectors(s);
    let modules = nonzero_classes(s, dim)?;
    for i in window_slots(period) {
        for a in &alphas {
            out.push((format!("K{a:?}^({i})"), LatticeElement::k(s, period, a, i)));
        }
        for m in &modules {
            out.push((format!("Z[{m}]^({i})"), LatticeElement::z(s, period, m, i)));
        }
    }
    Ok(out)
}

fn phi_homomorphism(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let period = cfg.period;
    let engine = LatticeEngine::new(s, period);
    let gens = lattice_generators(s, period, cfg.dim)?;
    let images: Vec<DhElement> = gens.par_iter().map(|(_, g)| phi_map(s, g)).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..gens.len()).flat_map(|a| (0..gens.len()).map(move |b| (a, b))).collect();
    let outcomes: Vec<Option<Failure>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let lhs = phi_map(s, &engine.multiply(&gens[a].1, &gens[b].1)?)?;
            let rhs = dh_multiply(s, &images[a], &images[b])?;
            Ok(compare(&lhs, &rhs, || format!("{} * {}", gens[a].0, gens[b].0)))
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    t.extend(outcomes);
    Ok(t)
}

fn heis_generators(s: &Session, dim: usize) -> Result<Vec<(String, HeisElement)>> {
    let q = s.q();
    let mut out = Vec::new();
    for a in unit_vectors(s) {
        out.push((format!("K{a:?}"), HeisElement::k(q, &a)));
        out.push((format!("K-{a:?}"), HeisElement::k_minus(q, &a)));
    }
    for m in nonzero_classes(s, dim)? {
        out.push((format!("Z+[{m}]"), HeisElement::z_plus(q, &m)));
        out.push((format!("Z-[{m}]"), HeisElement::z_minus(q, &m)));
    }
    Ok(out)
}

fn heis_embedding(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let period = cfg.period;
    let slots: Vec<i64> = if period > 0 { (0..period as i64).collect() } else { (-1..=2).collect() };
    let gens = heis_generators(s, cfg.dim)?;
    let engine = LatticeEngine::new(s, period);
    let mut t = Tally::default();
    let pairs: Vec<(usize, usize)> = (0..gens.len()).flat_map(|a| (0..gens.len()).map(move |b| (a, b))).collect();
    let products: Vec<HeisElement> =
        pairs.par_iter().map(|&(a, b)| heis_multiply(s, &gens[a].1, &gens[b].1)).collect::<Result<_>>()?;
    for &i in &slots {
        let images: Vec<DhElement> =
            gens.par_iter().map(|(_, g)| j_embedding(s, period, i, g)).collect::<Result<_>>()?;
        let lat: Vec<LatticeElement> = gens.par_iter().map(|(_, g)| j_prime(&engine, i, g)).collect::<Result<_>>()?;
        let outcomes: Vec<Vec<Option<Failure>>> = pairs
            .par_iter()
            .zip(&products)
            .map(|(&(a, b), prod)| {
                let ctx = |what: &str| format!("{what}, i={i}: {} * {}", gens[a].0, gens[b].0);
                let lhs = j_embedding(s, period, i, prod)?;
                let rhs = dh_multiply(s, &images[a], &images[b])?;
                let lhs2 = j_prime(&engine, i, prod)?;
                let rhs2 = engine.multiply(&lat[a], &lat[b])?;
                Ok(vec![compare(&lhs, &rhs, || ctx("J")), compare(&lhs2, &rhs2, || ctx("J'"))])
            })
            .collect::<Result<_>>()?;
        for o in outcomes {
            t.extend(o);
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Coefficients of the exchange product.

/// `Σ_{X,Y} v^{⟨M̂−X̂, X̂−Ŷ⟩} γ^{XY}_{MN} K_{M̂−X̂,0} e_{Y,0} e_{X,1}`.
pub fn exchange_expansion(s: &Session, period: u32, m: &IsoClass, n: &IsoClass) -> Result<DhElement> {
    let form = s.conventions().exchange;
    let mut out = DhElement::zero(s.q(), period);
    for ((x, y), g) in gamma_table(s, m, n)?.iter() {
        let mx = &m.class() - &x.class();
        let e = s.form(form, &mx, &(&x.class() - &y.class()));
        let term = dh_product(
            s,
            period,
            &[k_monomial(s, period, &mx, 0), e_generator(s, period, y, 0)?, e_generator(s, period, x, 1)?],
        )?;
        out = out.add(&term.scale(&Coefficient::from_rational(g.clone(), s.q()).mul_v_pow(e)));
    }
    Ok(out)
}

fn exchange_coefficients(s: &Session, cfg: &SuiteConfig) -> Result<Tally> {
    let period = cfg.period;
    let classes = s.classes_up_to(cfg.dim)?;
    let pairs: Vec<(&IsoClass, &IsoClass)> = classes.iter().flat_map(|m| classes.iter().map(move |n| (m, n))).collect();
    let outcomes: Vec<Vec<Option<Failure>>> = pairs
        .par_iter()
        .map(|(m, n)| {
            let lhs = dh_multiply(s, &e_generator(s, period, m, 1)?, &e_generator(s, period, n, 0)?)?;
            let rhs = exchange_expansion(s, period, m, n)?;
            let keys: BTreeSet<_> = lhs.terms().keys().chain(rhs.terms().keys()).cloned().collect();
            Ok(keys
                .into_iter()
                .map(|k| {
                    let (a, b) = (lhs.coefficient(&k), rhs.coefficient(&k));
                    compare(&a, &b, || format!("M={m}, N={n}, term {k}"))
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for o in outcomes {
        t.extend(o);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::Quiver;

    #[test]
    fn unknown_suite_is_an_error() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        assert!(matches!(verify_suite("no-such-suite", &s, &SuiteConfig::new(3, 2)), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(6, 3).len(), 1 + 6 + 21 + 56);
    }

    #[test]
    fn brute_ext_of_a1_stalks() {
        let s = Session::new(Quiver::linear_a(1), 3).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let c = build_cm(&s, 3, &k).unwrap();
        assert_eq!(ext_order_brute(&s, &c.shift(1), &c).unwrap(), 3);
        assert_eq!(ext_order_brute(&s, &c, &c.shift(1)).unwrap(), 1);
    }

    #[test]
    fn a1_exhaustive_complexes() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let all = all_complexes(&s, 3, 1).unwrap();
        // Empty, three single terms, three adjacent pairs with d ∈ F_2, and
        // the full pattern with at most one nonzero differential.
        assert_eq!(all.len(), 1 + 3 + 6 + 4);
    }

    #[test]
    fn small_suites_pass() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        for name in ["lemma2.5", "x5", "eq3.6", "eq3.7"] {
            let r = verify_suite(name, &s, &SuiteConfig::new(3, 2)).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert!(r.instances_checked > 0);
        }
    }
}
