//! Rank of the ordered products `Π→_i K_{α_i,i} * e_{M_i,i}` on a graded piece.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::element::{e_generator, k_monomial, DhElement, DhKey};
use super::product::{dh_multiply, dh_product};
use crate::cyclic::reduce;
use crate::error::{Error, Result};
use crate::exactnum::{rank, Coefficient};
use crate::quiverrep::{GClass, IsoClass};
use crate::session::Session;

/// A graded piece: the slots in window order, a bound on the total dimension
/// of each slot's module, and a bound on the absolute value of each coordinate
/// of each slot's `α`.
#[derive(Clone, Debug, Serialize)]
pub struct PbwGrade {
    pub slots: Vec<i64>,
    pub module_dim: usize,
    pub alpha_bound: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PbwRank {
    pub products: usize,
    pub rank: usize,
}

/// All vectors in `[−b, b]^n`.
pub fn alpha_box(n: usize, b: i64) -> Vec<GClass> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<i64>| (-b..=b).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.into_iter().map(GClass).collect()
}

fn tuples(n_slots: usize, n_choices: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n_slots {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..n_choices).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn add_at(map: &mut BTreeMap<i64, GClass>, i: i64, g: &GClass) {
    let e = map.entry(i).or_insert_with(|| GClass::zero(g.len()));
    *e = &*e + g;
    if e.is_zero() {
        map.remove(&i);
    }
}

/// The value of `e_{M,i} K_{α,j} = λ K_{α,j} e_{M,i}`.
fn swap_scalar(s: &Session, period: u32, m: &IsoClass, i: i64, alpha: &GClass, j: i64) -> Result<Coefficient> {
    let e = e_generator(s, period, m, i)?;
    let k = k_monomial(s, period, alpha, j);
    let (ek, ke) = (dh_multiply(s, &e, &k)?, dh_multiply(s, &k, &e)?);
    let (Some((key1, c1)), Some((key2, c2))) = (ek.terms().iter().next(), ke.terms().iter().next()) else {
        return Ok(Coefficient::one(s.q()));
    };
    if ek.len() != 1 || ke.len() != 1 || key1 != key2 {
        return Err(Error::Bookkeeping(format!("e_{{{m},{i}}} and K_{{{alpha:?},{j}}} do not skew-commute")));
    }
    Ok(c1 / c2)
}

/// Counts the ordered products in the graded piece and the rank of their
/// expansions in the geometric basis.
pub fn pbw_matrix_rank(s: &Session, period: u32, grade: &PbwGrade) -> Result<PbwRank> {
    let slots: Vec<i64> = grade.slots.iter().map(|&i| reduce(period, i)).collect();
    if slots.is_empty() {
        return Ok(PbwRank { products: 1, rank: 1 });
    }
    let modules = s.classes_up_to(grade.module_dim)?;
    let alphas = alpha_box(s.num_vertices(), grade.alpha_bound);
    let module_tuples = tuples(slots.len(), modules.len());
    let alpha_tuples = tuples(slots.len(), alphas.len());

    let e_gens: Vec<Vec<DhElement>> = slots
        .iter()
        .map(|&i| modules.iter().map(|m| e_generator(s, period, m, i)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let e_products: Vec<DhElement> = module_tuples
        .par_iter()
        .map(|t| {
            let f: Vec<DhElement> = t.iter().enumerate().map(|(k, &c)| e_gens[k][c].clone()).collect();
            dh_product(s, period, &f)
        })
        .collect::<Result<_>>()?;
    let k_products: Vec<DhElement> = alpha_tuples
        .par_iter()
        .map(|t| {
            let f: Vec<DhElement> =
                t.iter().enumerate().map(|(k, &c)| k_monomial(s, period, &alphas[c], slots[k])).collect();
            dh_product(s, period, &f)
        })
        .collect::<Result<_>>()?;

    // λ for e_{M, slot a} K_{α, slot b}, a < b.
    let mut swaps: HashMap<(usize, usize, usize, usize), Coefficient> = HashMap::new();
    for a in 0..slots.len() {
        for b in a + 1..slots.len() {
            for (mi, m) in modules.iter().enumerate() {
                for (ai, al) in alphas.iter().enumerate() {
                    swaps.insert((a, mi, b, ai), swap_scalar(s, period, m, slots[a], al, slots[b])?);
                }
            }
        }
    }

    let grade_of = |mt: &[usize], at: &[usize]| -> BTreeMap<i64, GClass> {
        let mut g = BTreeMap::new();
        for (k, &i) in slots.iter().enumerate() {
            add_at(&mut g, reduce(period, -i), &modules[mt[k]].class());
            add_at(&mut g, reduce(period, -i), &alphas[at[k]]);
            add_at(&mut g, reduce(period, -i - 1), &alphas[at[k]]);
        }
        g
    };
    let mut groups: HashMap<BTreeMap<i64, GClass>, Vec<(usize, usize)>> = HashMap::new();
    for (mi, mt) in module_tuples.iter().enumerate() {
        for (ai, at) in alpha_tuples.iter().enumerate() {
            groups.entry(grade_of(mt, at)).or_default().push((mi, ai));
        }
    }
    let mut groups: Vec<Vec<(usize, usize)>> = groups.into_values().collect();
    groups.sort();

    let ranks: Vec<usize> = groups
        .par_iter()
        .map(|members| {
            let rows: Vec<BTreeMap<DhKey, Coefficient>> = members
                .iter()
                .map(|&(mi, ai)| {
                    let (mt, at) = (&module_tuples[mi], &alpha_tuples[ai]);
                    let mut lambda = Coefficient::one(s.q());
                    for a in 0..slots.len() {
                        for b in a + 1..slots.len() {
                            lambda = &lambda * &swaps[&(a, mt[a], b, at[b])];
                        }
                    }
                    let v = dh_multiply(s, &k_products[ai], &e_products[mi])?.scale(&lambda);
                    Ok(v.terms().clone())
                })
                .collect::<Result<_>>()?;
            Ok(rank(&rows, s.q()))
        })
        .collect::<Result<_>>()?;
    Ok(PbwRank { products: module_tuples.len() * alpha_tuples.len(), rank: ranks.iter().sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::Quiver;

    #[test]
    fn empty_grade_is_the_unit() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let g = PbwGrade { slots: vec![], module_dim: 2, alpha_bound: 1 };
        assert_eq!(pbw_matrix_rank(&s, 3, &g).unwrap(), PbwRank { products: 1, rank: 1 });
    }

    #[test]
    fn single_slot_is_independent() {
        let s = Session::new(Quiver::linear_a(2), 2).unwrap();
        let g = PbwGrade { slots: vec![1], module_dim: 2, alpha_bound: 1 };
        let r = pbw_matrix_rank(&s, 3, &g).unwrap();
        assert_eq!(r.products, 7 * 9);
        assert_eq!(r.rank, r.products);
    }

    #[test]
    fn a1_two_slots_full_rank() {
        let s = Session::new(Quiver::linear_a(1), 2).unwrap();
        let g = PbwGrade { slots: vec![0, 1], module_dim: 2, alpha_bound: 1 };
        let r = pbw_matrix_rank(&s, 3, &g).unwrap();
        assert_eq!(r, PbwRank { products: 81, rank: 81 });
    }

    #[test]
    fn alpha_box_size() {
        assert_eq!(alpha_box(2, 1).len(), 9);
        assert_eq!(alpha_box(1, 2).len(), 5);
    }
}
