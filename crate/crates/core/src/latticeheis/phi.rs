//! The map `Φ: L_m(A) → DH_m(A)`.

use super::lattice::LatticeElement;
use crate::bridgeland::{dh_product, e_generator, k_monomial, DhElement};
use crate::error::Result;
use crate::session::Session;

/// `Φ(K^{(i)}_α) = K_{α,i}`, `Φ(Z^{(i)}_M) = e_{M,i}`, extended to normal-form words in window order.
pub fn phi_map(s: &Session, x: &LatticeElement) -> Result<DhElement> {
    let period = x.period();
    let mut out = DhElement::zero(s.q(), period);
    for (key, c) in x.terms() {
        let mut factors = Vec::with_capacity(2 * key.len());
        for (&i, (a, m)) in key {
            factors.push(k_monomial(s, period, a, i));
            factors.push(e_generator(s, period, m, i)?);
        }
        out = out.add(&dh_product(s, period, &factors)?.scale(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latticeheis::lat_multiply;
    use crate::bridgeland::dh_multiply;
    use crate::quiverrep::{GClass, IsoClass, Quiver};

    #[test]
    fn generators_map_to_generators() {
        let s = Session::new(Quiver::linear_a(2), 3).unwrap();
        let m = s.simple_class(0).unwrap();
        assert_eq!(phi_map(&s, &LatticeElement::z(&s, 3, &m, 0)).unwrap(), e_generator(&s, 3, &m, 0).unwrap());
        let a = GClass(vec![1, -1]);
        assert_eq!(phi_map(&s, &LatticeElement::k(&s, 3, &a, 2)).unwrap(), k_monomial(&s, 3, &a, 2));
    }

    #[test]
    fn smallest_homomorphism_instance() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let k = IsoClass::new(vec![1], 0);
        let (z1, z0) = (LatticeElement::z(&s, 3, &k, 1), LatticeElement::z(&s, 3, &k, 0));
        let lhs = phi_map(&s, &lat_multiply(&s, &z1, &z0).unwrap()).unwrap();
        let rhs = dh_multiply(&s, &phi_map(&s, &z1).unwrap(), &phi_map(&s, &z0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
