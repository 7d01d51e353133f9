//! Multiplication in the geometric basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::element::{DhElement, DhKey};
use crate::cyclic::{canonical_decompose, htw_multiply, reduce, term_classes, ComplexClass, CyclicComplex};
use crate::error::Result;
use crate::exactnum::Coefficient;
use crate::quiverrep::GClass;
use crate::session::{ReducedProduct, Session};

/// `c(r, s)` in `K_{α,r} K_{β,s} = v^{c(r,s)(α,β)} K_{β,s} K_{α,r}`.
pub fn adjacency(period: u32, r: i64, s: i64) -> i64 {
    if reduce(period, r - s - 1) == 0 {
        1
    } else if reduce(period, r - s + 1) == 0 {
        -1
    } else {
        0
    }
}

/// `Δ_r = X̂_{−r} − X̂_{−r−1}` from term classes.
pub fn delta(period: u32, terms: &BTreeMap<i64, GClass>, r: i64, nv: usize) -> GClass {
    let at = |i: i64| terms.get(&reduce(period, i)).cloned().unwrap_or_else(|| GClass::zero(nv));
    &at(-r) - &at(-r - 1)
}

/// `K^{κ¹} K^{κ²} = v^{e} K^{κ¹+κ²}` with both sides in increasing slot order.
pub fn merge_monomials(s: &Session, period: u32, k1: &BTreeMap<i64, GClass>, k2: &BTreeMap<i64, GClass>) -> (BTreeMap<i64, GClass>, i64) {
    let mut exp = 0;
    for (&r, a) in k1 {
        for (&t, b) in k2.range(..r) {
            exp += adjacency(period, r, t) * s.sym(a, b);
        }
    }
    let mut out = k1.clone();
    for (&t, b) in k2 {
        let e = out.entry(t).or_insert_with(|| GClass::zero(b.len()));
        *e = &*e + b;
        if e.is_zero() {
            out.remove(&t);
        }
    }
    (out, exp)
}

/// `[L] = v^n K^κ * [reduced part]`, peeling acyclic summands in slot order.
pub fn normalize_class(s: &Session, class: &ComplexClass) -> Result<DhElement> {
    let (exp, kappa, reduced) = normalize_parts(s, class)?;
    let key = DhKey { kappa, complex: DhKey::shifts_of(&reduced) };
    Ok(DhElement::term(s.q(), class.period, key, s.v_pow(exp)))
}

/// [`normalize_class`] for an explicit complex.
pub fn normalize_complex(s: &Session, x: &CyclicComplex) -> Result<DhElement> {
    normalize_class(s, &canonical_decompose(s, x)?)
}

fn normalize_parts(s: &Session, class: &ComplexClass) -> Result<(i64, BTreeMap<i64, GClass>, ComplexClass)> {
    let nv = s.num_vertices();
    let mut rest = class.clone();
    let mut exp = 0;
    let mut kappa = BTreeMap::new();
    for (&r, t) in &class.acyclic {
        rest.acyclic.remove(&r);
        let d = delta(class.period, &term_classes(s, &rest)?, r, nv);
        exp -= s.euler(&t.class(), &d);
        kappa.insert(r, t.class());
    }
    Ok((exp, kappa, rest))
}

/// `[R¹] * [R²]` for reduced classes, each output normalised.
fn reduced_product(s: &Session, period: u32, r1: &DhKey, r2: &DhKey) -> Result<ReducedProduct> {
    let key = (period, r1.complex.clone(), r2.complex.clone());
    s.reduced_table.get_or_try_insert(&key, || {
        let prod = htw_multiply(s, &r1.complex_class(period), &r2.complex_class(period))?;
        let mut out = Vec::with_capacity(prod.len());
        for (c, l) in prod.iter() {
            let (exp, kappa, red) = normalize_parts(s, l)?;
            out.push((c.mul_v_pow(exp), kappa, DhKey::shifts_of(&red)));
        }
        Ok(Arc::new(out))
    })
}

/// Product of two basis words.
pub fn multiply_keys(s: &Session, period: u32, x: &DhKey, y: &DhKey) -> Result<Vec<(Coefficient, DhKey)>> {
    let nv = s.num_vertices();
    // Move [R¹] right past K^{κ²}: [R] K_{β,t} = v^{−(β, Δ_t(R))} K_{β,t} [R].
    let mut exp = 0;
    if !x.complex.is_empty() {
        let t1 = term_classes(s, &x.complex_class(period))?;
        for (&t, b) in &y.kappa {
            exp -= s.sym(b, &delta(period, &t1, t, nv));
        }
    }
    let (kappa, e) = merge_monomials(s, period, &x.kappa, &y.kappa);
    exp += e;
    if x.complex.is_empty() || y.complex.is_empty() {
        let complex = if x.complex.is_empty() { y.complex.clone() } else { x.complex.clone() };
        return Ok(vec![(s.v_pow(exp), DhKey { kappa, complex })]);
    }
    let x_red = DhKey { kappa: BTreeMap::new(), complex: x.complex.clone() };
    let y_red = DhKey { kappa: BTreeMap::new(), complex: y.complex.clone() };
    let prod = reduced_product(s, period, &x_red, &y_red)?;
    Ok(prod
        .iter()
        .map(|(c, kl, red)| {
            let (k, e2) = merge_monomials(s, period, &kappa, kl);
            (c.mul_v_pow(exp + e2), DhKey { kappa: k, complex: red.clone() })
        })
        .collect())
}

/// Bilinear product; term pairs are evaluated in parallel and summed in key order.
pub fn dh_multiply(s: &Session, x: &DhElement, y: &DhElement) -> Result<DhElement> {
    x.check_compatible(y)?;
    let period = x.period();
    let pairs: Vec<(&DhKey, &Coefficient, &DhKey, &Coefficient)> =
        x.terms().iter().flat_map(|(a, c)| y.terms().iter().map(move |(b, d)| (a, c, b, d))).collect();
    let parts: Vec<Vec<(Coefficient, DhKey)>> = pairs
        .par_iter()
        .map(|(a, c, b, d)| {
            let cd = *c * *d;
            Ok(multiply_keys(s, period, a, b)?.into_iter().map(|(e, k)| (&e * &cd, k)).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = DhElement::zero(x.q(), period);
    for part in parts {
        for (c, k) in part {
            out.add_term(k, c);
        }
    }
    Ok(out)
}

/// Left-to-right product of a list of elements.
pub fn dh_product(s: &Session, period: u32, factors: &[DhElement]) -> Result<DhElement> {
    let mut acc = DhElement::one(s.q(), period);
    for f in factors {
        acc = dh_multiply(s, &acc, f)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridgeland::element::{e_generator, k_monomial};
    use crate::quiverrep::{IsoClass, Quiver};

    fn a1(q: u32) -> Session {
        Session::new(Quiver::linear_a(1), q).unwrap()
    }

    #[test]
    fn adjacency_signs() {
        assert_eq!(adjacency(3, 1, 0), 1);
        assert_eq!(adjacency(3, 0, 1), -1);
        assert_eq!(adjacency(3, 0, 2), 1);
        assert_eq!(adjacency(4, 2, 0), 0);
        assert_eq!(adjacency(0, 5, 4), 1);
        assert_eq!(adjacency(0, -1, 0), -1);
    }

    #[test]
    fn normalize_peels_with_euler_exponent() {
        let s = a1(2);
        let k = IsoClass::new(vec![1], 0);
        let mut l = ComplexClass::stalk(3, k.clone(), 0);
        l.acyclic.insert(0, k.clone());
        let n = normalize_class(&s, &l).unwrap();
        let mut key = DhKey::unit();
        key.kappa.insert(0, GClass(vec![1]));
        key.complex.insert(0, k.clone());
        assert_eq!(n, DhElement::term(2, 3, key, Coefficient::v_pow(-1, 2)));
        let pure = normalize_class(&s, &ComplexClass::contractible(3, k.clone(), 2)).unwrap();
        assert_eq!(pure, k_monomial(&s, 3, &GClass(vec![1]), 2));
    }

    #[test]
    fn smallest_exchange() {
        let s = a1(2);
        let k = IsoClass::new(vec![1], 0);
        let e1 = e_generator(&s, 3, &k, 1).unwrap();
        let e0 = e_generator(&s, 3, &k, 0).unwrap();
        let lhs = dh_multiply(&s, &e1, &e0).unwrap();
        let rhs = dh_multiply(&s, &e0, &e1).unwrap().add(&k_monomial(&s, 3, &GClass(vec![1]), 0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_commutes_with_far_generator() {
        let s = a1(2);
        let k = IsoClass::new(vec![1], 0);
        let kk = k_monomial(&s, 3, &GClass(vec![1]), 1);
        let e0 = e_generator(&s, 3, &k, 0).unwrap();
        assert_eq!(dh_multiply(&s, &kk, &e0).unwrap(), dh_multiply(&s, &e0, &kk).unwrap());
        let inv = k_monomial(&s, 3, &GClass(vec![-1]), 1);
        assert_eq!(dh_multiply(&s, &kk, &inv).unwrap(), DhElement::one(2, 3));
    }

    #[test]
    fn unit_laws() {
        let s = Session::new(Quiver::linear_a(2), 3).unwrap();
        let one = DhElement::one(3, 4);
        for m in s.classes_up_to(2).unwrap() {
            let e = e_generator(&s, 4, &m, 1).unwrap();
            assert_eq!(dh_multiply(&s, &one, &e).unwrap(), e);
            assert_eq!(dh_multiply(&s, &e, &one).unwrap(), e);
        }
    }
}
