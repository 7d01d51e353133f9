//! Counting oracles on module classes: Hall numbers, extension classes by
//! middle term, and the exact-sequence counts `γ^{XY}_{MN}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::exactnum::{check_budget, combine, subspaces_of_dim, FFMatrix, Subspace, VectorIter};
use crate::quiverrep::{
    cokernel, hom_basis, is_arrow_stable, kernel, quotient, subrepresentation, IsoClass, Morphism, Representation,
};
use crate::session::Session;

fn sum_dims(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Arrow-stable subspace tuples of `rep` with the given dimension vector.
pub fn subrepresentations(s: &Session, rep: &Representation, dims: &[usize]) -> Result<Vec<Vec<Subspace>>> {
    let per_vertex: Vec<Vec<Subspace>> = rep
        .dims()
        .iter()
        .zip(dims)
        .map(|(&n, &k)| subspaces_of_dim(n, k, s.q()))
        .collect();
    let total: u128 = per_vertex.iter().map(|v| v.len() as u128).product();
    if total > s.budget() as u128 {
        return Err(crate::error::Error::BudgetExceeded {
            requested: format!("{total} subspace tuples"),
            budget: s.budget(),
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    if per_vertex.iter().any(|v| v.is_empty()) {
        return Ok(out);
    }
    loop {
        let tuple: Vec<Subspace> = idx.iter().zip(&per_vertex).map(|(&i, v)| v[i].clone()).collect();
        if is_arrow_stable(s.quiver(), rep, &tuple) {
            out.push(tuple);
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_vertex[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `F^L_{MN}`: subrepresentations `U ⊆ L` with `U ≅ N` and `L/U ≅ M`.
pub fn hall_number(s: &Session, l: &IsoClass, m: &IsoClass, n: &IsoClass) -> Result<u128> {
    if l.dims() != sum_dims(m.dims(), n.dims()) {
        return Ok(0);
    }
    Ok(hall_numbers(s, m, n)?.get(l).copied().unwrap_or(0))
}

/// All nonzero `F^L_{MN}` for fixed `M, N`.
pub fn hall_numbers(s: &Session, m: &IsoClass, n: &IsoClass) -> Result<Arc<BTreeMap<IsoClass, u128>>> {
    s.hall_table.get_or_try_insert(&(m.clone(), n.clone()), || {
        let mut out = BTreeMap::new();
        let dims = sum_dims(m.dims(), n.dims());
        for l in s.classes_of_dims(&dims)? {
            let lrep = s.rep(&l)?;
            let mut count = 0u128;
            for sub in subrepresentations(s, &lrep, n.dims())? {
                let bases: Vec<Vec<Vec<u32>>> = sub.iter().map(|x| x.basis().to_vec()).collect();
                let (u, _) = subrepresentation(s.quiver(), &lrep, &bases, s.q());
                if &s.classify(&u)? != n {
                    continue;
                }
                let (quot, _) = quotient(s.quiver(), &lrep, &sub, s.q());
                if &s.classify(&quot)? == m {
                    count += 1;
                }
            }
            if count > 0 {
                out.insert(l, count);
            }
        }
        Ok(Arc::new(out))
    })
}

pub fn hom_dim(s: &Session, m: &IsoClass, n: &IsoClass) -> Result<usize> {
    Ok(hom_basis(s.quiver(), &s.rep(m)?, &s.rep(n)?, s.q()).len())
}

/// `Ext¹_A(M, N)` realised as `Hom(Ω_M, N)` modulo restrictions of `Hom(P_M, N)`.
/// Returns `dim Ext¹` and, for every class, the middle term of its pushout
/// extension `0 → N → L → M → 0`, tallied by class of `L`.
pub fn ext_middle_counts(s: &Session, m: &IsoClass, n: &IsoClass) -> Result<(usize, BTreeMap<IsoClass, u128>)> {
    let q = s.q();
    let quiver = s.quiver();
    let nrep = s.rep(n)?;
    let res = s.resolution(m)?;
    let hom_on: Vec<Morphism> = hom_basis(quiver, &res.omega, &nrep, q);
    let restricted: Vec<Vec<u32>> = hom_basis(quiver, &res.cover, &nrep, q)
        .iter()
        .map(|g| g.compose(&res.delta).flatten())
        .collect();
    let len: usize = res.omega.dims().iter().zip(nrep.dims()).map(|(a, b)| a * b).sum();
    let image = Subspace::span(&restricted, len, q);
    let flat_basis: Vec<Vec<u32>> = hom_on.iter().map(|f| f.flatten()).collect();
    let complement = image.complement_from(&flat_basis);
    let k = complement.len();
    check_budget(q, k, s.budget(), "extension classes")?;
    let mut tally = BTreeMap::new();
    for coeffs in VectorIter::new(k, q) {
        let phi = Morphism::unflatten(&combine(&complement, &coeffs, len, q), res.omega.dims(), nrep.dims(), q);
        let l = pushout_middle(s, &phi, &res.delta, &nrep, &res.cover)?;
        *tally.entry(s.classify(&l)?).or_insert(0u128) += 1;
    }
    Ok((k, tally))
}

/// `(N ⊕ P) / {(φ(x), −δ(x))}`.
fn pushout_middle(
    s: &Session,
    phi: &Morphism,
    delta: &Morphism,
    n: &Representation,
    p: &Representation,
) -> Result<Representation> {
    let sum = n.direct_sum(p);
    let blocks: Vec<FFMatrix> = phi
        .blocks()
        .iter()
        .zip(delta.blocks())
        .map(|(f, d)| f.vstack(&d.neg()))
        .collect();
    let map = Morphism::new(blocks);
    Ok(cokernel(s.quiver(), &map, &sum, s.q()).0)
}

/// `|Ext¹_A(M, N)_L|`.
pub fn ext_middle_count(s: &Session, m: &IsoClass, n: &IsoClass, l: &IsoClass) -> Result<u128> {
    Ok(ext_middle_counts(s, m, n)?.1.get(l).copied().unwrap_or(0))
}

/// `γ^{XY}_{MN}` for all `(X, Y)`: the sum over `f ∈ Hom(M, N)` with
/// `ker f ≅ X`, `coker f ≅ Y` of `a_X a_Y`, divided by `a_M a_N`.
pub fn gamma_table(s: &Session, m: &IsoClass, n: &IsoClass) -> Result<Arc<BTreeMap<(IsoClass, IsoClass), BigRational>>> {
    s.gamma_table.get_or_try_insert(&(m.clone(), n.clone()), || {
        let q = s.q();
        let quiver = s.quiver();
        let (mrep, nrep) = (s.rep(m)?, s.rep(n)?);
        let basis: Vec<Vec<u32>> = hom_basis(quiver, &mrep, &nrep, q).iter().map(|f| f.flatten()).collect();
        check_budget(q, basis.len(), s.budget(), "homomorphisms")?;
        let len: usize = mrep.dims().iter().zip(nrep.dims()).map(|(a, b)| a * b).sum();
        let mut counts: BTreeMap<(IsoClass, IsoClass), u128> = BTreeMap::new();
        for coeffs in VectorIter::new(basis.len(), q) {
            let f = Morphism::unflatten(&combine(&basis, &coeffs, len, q), mrep.dims(), nrep.dims(), q);
            let x = s.classify(&kernel(quiver, &f, &mrep, q).0)?;
            let y = s.classify(&cokernel(quiver, &f, &nrep, q).0)?;
            *counts.entry((x, y)).or_insert(0) += 1;
        }
        let denom = BigInt::from(s.aut_order(m)?) * BigInt::from(s.aut_order(n)?);
        let mut out = BTreeMap::new();
        for ((x, y), c) in counts {
            let w = BigInt::from(c) * BigInt::from(s.aut_order(&x)?) * BigInt::from(s.aut_order(&y)?);
            out.insert((x, y), BigRational::new(w, denom.clone()));
        }
        Ok(Arc::new(out))
    })
}

pub fn gamma_count(s: &Session, m: &IsoClass, n: &IsoClass, x: &IsoClass, y: &IsoClass) -> Result<BigRational> {
    Ok(gamma_table(s, m, n)?
        .get(&(x.clone(), y.clone()))
        .cloned()
        .unwrap_or_else(|| BigRational::from_integer(0.into())))
}

/// Right-hand side of the Riedtmann formula
/// `|Ext¹(M,N)_L| · a_L / (|Hom(M,N)| · a_M · a_N)`.
pub fn riedtmann_value(s: &Session, l: &IsoClass, m: &IsoClass, n: &IsoClass) -> Result<BigRational> {
    let ext = ext_middle_count(s, m, n, l)?;
    let hom = BigInt::from(s.q()).pow(hom_dim(s, m, n)? as u32);
    let num = BigInt::from(ext) * BigInt::from(s.aut_order(l)?);
    let den = hom * BigInt::from(s.aut_order(m)?) * BigInt::from(s.aut_order(n)?);
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::Quiver;

    fn a1(q: u32) -> (Session, IsoClass, IsoClass) {
        let s = Session::new(Quiver::linear_a(1), q).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let k2 = IsoClass::new(vec![2], 0);
        (s, k, k2)
    }

    #[test]
    fn lines_in_a_plane() {
        let (s, k, k2) = a1(2);
        assert_eq!(hall_number(&s, &k2, &k, &k).unwrap(), 3);
        assert_eq!(hall_number(&s, &k, &k, &s.zero_class()).unwrap(), 1);
    }

    #[test]
    fn a2_hall_numbers() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let s1 = s.simple_class(0).unwrap();
        let s2 = s.simple_class(1).unwrap();
        let p1 = s.indecomposable_projectives().unwrap()[0].clone();
        assert_eq!(hall_number(&s, &p1, &s1, &s2).unwrap(), 1);
        assert_eq!(hall_number(&s, &p1, &s2, &s1).unwrap(), 0);
        assert_eq!(ext_middle_count(&s, &s1, &s2, &p1).unwrap(), 1);
        let split = s.classify(&s.rep(&s1).unwrap().direct_sum(&s.rep(&s2).unwrap())).unwrap();
        assert_eq!(ext_middle_count(&s, &s2, &s1, &p1).unwrap(), 0);
        assert_eq!(ext_middle_count(&s, &s2, &s1, &split).unwrap(), 1);
    }

    #[test]
    fn split_extension_of_a1() {
        let (s, k, k2) = a1(3);
        let (dim, tally) = ext_middle_counts(&s, &k, &k).unwrap();
        assert_eq!(dim, 0);
        assert_eq!(tally.get(&k2), Some(&1));
    }

    #[test]
    fn gamma_examples() {
        let (s, k, _) = a1(2);
        let z = s.zero_class();
        let one = BigRational::from_integer(1.into());
        assert_eq!(gamma_count(&s, &k, &k, &z, &z).unwrap(), one);
        assert_eq!(gamma_count(&s, &k, &k, &k, &k).unwrap(), one);
        assert_eq!(gamma_count(&s, &z, &z, &z, &z).unwrap(), one);
        let (s3, k3, _) = a1(3);
        assert_eq!(gamma_count(&s3, &k3, &k3, &z, &z).unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn riedtmann_a2_small() {
        for q in [2u32, 3] {
            let s = Session::new(Quiver::linear_a(2), q).unwrap();
            let classes = s.classes_up_to(2).unwrap();
            for m in &classes {
                for n in &classes {
                    let dims = sum_dims(m.dims(), n.dims());
                    for l in s.classes_of_dims(&dims).unwrap() {
                        let f = BigRational::from_integer(hall_number(&s, &l, m, n).unwrap().into());
                        assert_eq!(f, riedtmann_value(&s, &l, m, n).unwrap(), "{l} {m} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn ext_dimension_matches_euler_form() {
        let s = Session::new(Quiver::linear_a(3), 2).unwrap();
        let classes = s.classes_up_to(2).unwrap();
        for m in &classes {
            for n in &classes {
                let (ext, tally) = ext_middle_counts(&s, m, n).unwrap();
                let hom = hom_dim(&s, m, n).unwrap() as i64;
                assert_eq!(hom - ext as i64, s.euler(&m.class(), &n.class()));
                assert_eq!(tally.values().sum::<u128>(), 2u128.pow(ext as u32));
                for l in tally.keys() {
                    assert_eq!(l.class(), &m.class() + &n.class());
                }
            }
        }
    }
}
