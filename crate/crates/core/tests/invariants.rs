//! Randomized invariants across the engines.

use cyclic_hall::bridgeland::{dh_multiply, e_generator, k_monomial, DhElement};
use cyclic_hall::cyclic::{
    build_cm, canonical_decompose, hom_dims, random_complex, random_term_automorphisms,
};
use cyclic_hall::exactnum::{Coefficient, FFMatrix};
use cyclic_hall::hallcore::{ext_middle_counts, hom_dim, rh_multiply, HallElement};
use cyclic_hall::latticeheis::{LatticeEngine, Letter};
use cyclic_hall::quiverrep::{GClass, IsoClass, Quiver};
use cyclic_hall::Session;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coefficient() -> impl Strategy<Value = Coefficient> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| Coefficient::from_pair(a, b, 3))
}

fn a2(q: u32) -> Session {
    Session::new(Quiver::linear_a(2), q).unwrap()
}

fn classes(s: &Session) -> Vec<IsoClass> {
    s.classes_up_to(2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coefficients_form_a_field(a in coefficient(), b in coefficient(), c in coefficient()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(entries in prop::collection::vec(0u32..5, 12), rows in 1usize..4) {
        let cols = 12 / rows;
        let m = FFMatrix::from_vec(rows, cols, 5, entries[..rows * cols].to_vec());
        let ker = m.kernel();
        prop_assert_eq!(ker.len() + m.rank(), cols);
        for v in ker {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn euler_form_is_hom_minus_ext(i in 0usize..7, j in 0usize..7, q in prop::sample::select(vec![2u32, 3])) {
        let s = a2(q);
        let cs = classes(&s);
        let (m, n) = (&cs[i], &cs[j]);
        let hom = hom_dim(&s, m, n).unwrap() as i64;
        let ext = ext_middle_counts(&s, m, n).unwrap().0 as i64;
        prop_assert_eq!(s.euler(&m.class(), &n.class()), hom - ext);
        // The same Ext through the homotopy category of 3-cyclic complexes.
        let (cm, cn) = (build_cm(&s, 3, m).unwrap(), build_cm(&s, 3, n).unwrap());
        prop_assert_eq!(hom_dims(s.quiver(), &cm, &cn.shift(1)).1 as i64, ext);
    }

    #[test]
    fn twisted_hall_product_is_associative(i in 1usize..7, j in 1usize..7, k in 1usize..7) {
        let s = a2(2);
        let cs = classes(&s);
        let [x, y, z] = [i, j, k].map(|t| HallElement::module(&s, cs[t].clone()));
        let left = rh_multiply(&s, &rh_multiply(&s, &x, &y, true).unwrap(), &z, true).unwrap();
        let right = rh_multiply(&s, &x, &rh_multiply(&s, &y, &z, true).unwrap(), true).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn decomposition_is_a_conjugation_invariant(seed in any::<u64>(), m in prop::sample::select(vec![3u32, 4])) {
        let s = a2(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&s, m, 3, 2, &mut rng).unwrap();
        let g = random_term_automorphisms(&s, &x, &mut rng);
        prop_assert_eq!(canonical_decompose(&s, &x).unwrap(), canonical_decompose(&s, &x.conjugate(&g)).unwrap());
    }

    #[test]
    fn localized_product_is_associative(picks in prop::collection::vec((0usize..11, 0i64..3), 3)) {
        let s = a2(2);
        let cs = classes(&s);
        let gen = |(k, slot): (usize, i64)| -> DhElement {
            match k {
                0..=3 => {
                    let a = GClass::unit(2, k % 2).scale(if k < 2 { 1 } else { -1 });
                    k_monomial(&s, 3, &a, slot)
                }
                _ => e_generator(&s, 3, &cs[k - 4], slot).unwrap(),
            }
        };
        let [x, y, z] = [picks[0], picks[1], picks[2]].map(gen);
        let left = dh_multiply(&s, &dh_multiply(&s, &x, &y).unwrap(), &z).unwrap();
        let right = dh_multiply(&s, &x, &dh_multiply(&s, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn straightening_is_confluent(word in prop::collection::vec((1usize..7, -1i64..4), 2..5), seed in any::<u64>()) {
        let s = Session::new(Quiver::linear_a(2), 3).unwrap();
        let cs = classes(&s);
        let letters: Vec<Letter> = word.iter().map(|&(k, i)| Letter::Z(i, cs[k].clone())).collect();
        let fixed = LatticeEngine::new(&s, 0).evaluate(&letters).unwrap();
        let random = LatticeEngine::randomized(&s, 0, seed).evaluate(&letters).unwrap();
        prop_assert_eq!(fixed, random);
    }
}
