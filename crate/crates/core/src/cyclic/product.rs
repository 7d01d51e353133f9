//! The twisted Hall product on isoclasses of complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::complex::CyclicComplex;
use super::decompose::{canonical_decompose, rebuild, term_classes, ComplexClass};
use super::homs::{for_each_extension, hom_dims, require_same_period};
use crate::error::{Error, Result};
use crate::exactnum::Coefficient;
use crate::session::Session;

/// `Σ_i ⟨X̂_i, Ŷ_i⟩`.
pub fn termwise_euler(s: &Session, x: &ComplexClass, y: &ComplexClass) -> Result<i64> {
    let (tx, ty) = (term_classes(s, x)?, term_classes(s, y)?);
    Ok(tx.iter().filter_map(|(i, a)| ty.get(i).map(|b| s.euler(a, b))).sum())
}

/// `[X] * [Y] = v^{Σ⟨X̂_i, Ŷ_i⟩} Σ_L |Ext¹_C(X,Y)_L| / |Hom_C(X,Y)| [L]`.
pub fn htw_multiply(s: &Session, x: &ComplexClass, y: &ComplexClass) -> Result<Arc<Vec<(Coefficient, ComplexClass)>>> {
    if x.period != y.period {
        return Err(Error::PeriodMismatch(x.period, y.period));
    }
    let key = (x.period, x.clone(), y.clone());
    s.htw_table.get_or_try_insert(&key, || {
        let (cx, cy) = (rebuild(s, x)?, rebuild(s, y)?);
        let raw = htw_multiply_complexes(s, &cx, &cy)?;
        let twist = termwise_euler(s, x, y)?;
        Ok(Arc::new(raw.into_iter().map(|(c, l)| (c.mul_v_pow(twist), l)).collect()))
    })
}

/// The untwisted sum `Σ_L |Ext_L| / |Hom_C| [L]` for explicit complexes.
pub fn htw_multiply_complexes(
    s: &Session,
    x: &CyclicComplex,
    y: &CyclicComplex,
) -> Result<Vec<(Coefficient, ComplexClass)>> {
    require_same_period(x, y)?;
    let mut tally: BTreeMap<ComplexClass, u64> = BTreeMap::new();
    for_each_extension(s.quiver(), x, y, s.budget(), |l| {
        *tally.entry(canonical_decompose(s, &l)?).or_insert(0) += 1;
        Ok(())
    })?;
    let (hom_c, _) = hom_dims(s.quiver(), x, y);
    let denom = BigInt::from(s.q()).pow(hom_c as u32);
    Ok(tally
        .into_iter()
        .map(|(l, n)| (Coefficient::from_rational(BigRational::new(BigInt::from(n), denom.clone()), s.q()), l))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::{IsoClass, Quiver};

    #[test]
    fn a1_stalk_product() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let c1 = ComplexClass::stalk(3, k.clone(), 1);
        let c0 = ComplexClass::stalk(3, k.clone(), 0);
        let prod = htw_multiply(&s, &c1, &c0).unwrap();
        let split = ComplexClass { period: 3, homology: c1.homology.iter().chain(&c0.homology).map(|(a, b)| (*a, b.clone())).collect(), acyclic: BTreeMap::new() };
        let kk = ComplexClass::contractible(3, k.clone(), 0);
        let get = |c: &ComplexClass| prod.iter().find(|(_, l)| l == c).map(|(x, _)| x.clone());
        assert_eq!(get(&split), Some(Coefficient::one(2)));
        assert_eq!(get(&kk), Some(Coefficient::from_int(1, 2)));
        assert_eq!(prod.len(), 2);
        // The other order splits.
        let rev = htw_multiply(&s, &c0, &c1).unwrap();
        assert_eq!(rev.len(), 1);
        assert_eq!(rev[0], (Coefficient::one(2), split));
    }

    #[test]
    fn zero_is_unit() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let z = ComplexClass::zero(4);
        for c in s.classes_up_to(2).unwrap().into_iter().filter(|c| !c.is_zero()) {
            let x = ComplexClass::stalk(4, c, 1);
            assert_eq!(*htw_multiply(&s, &z, &x).unwrap(), vec![(Coefficient::one(2), x.clone())]);
            assert_eq!(*htw_multiply(&s, &x, &z).unwrap(), vec![(Coefficient::one(2), x.clone())]);
        }
    }
}
