//! Rank of sparse matrices over `Q(√q)`.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::coeff::Coefficient;
use super::ffmat::{is_prime, pow_mod};

/// Exact rank by incremental sparse elimination.
pub fn rank_exact<K: Ord + Clone>(rows: &[BTreeMap<K, Coefficient>]) -> usize {
    let mut pivots: BTreeMap<K, BTreeMap<K, Coefficient>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<K, Coefficient> = row.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect();
        while let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            match pivots.get(&lead) {
                Some(p) => {
                    for (k, x) in p {
                        let v = r.get(k).cloned().unwrap_or_else(|| Coefficient::zero(c.q())) - &(&c * x);
                        if v.is_zero() {
                            r.remove(k);
                        } else {
                            r.insert(k.clone(), v);
                        }
                    }
                }
                None => {
                    let inv = c.inverse().expect("nonzero");
                    let normed = r.iter().map(|(k, x)| (k.clone(), x * &inv)).collect();
                    pivots.insert(lead, normed);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// A prime `p ≡ 3 (mod 4)` in which `q` is a square, with a square root of `q`.
fn modulus_for(q: u32) -> (u64, u64) {
    let mut p: u32 = (1 << 31) - 1;
    loop {
        if p % 4 == 3 && is_prime(p) && pow_mod(q % p, (p - 1) / 2, p) == 1 {
            let s = pow_mod(q % p, (p + 1) / 4, p);
            return (p as u64, s as u64);
        }
        p -= 2;
    }
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("reduced")
}

fn inv_mod64(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut out) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            out = out * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    out
}

/// Image of `a + b√q` under `√q ↦ s` in `F_p`, if the denominators are units.
fn reduce_mod(c: &Coefficient, p: u64, s: u64) -> Option<u64> {
    let part = |r: &num_rational::BigRational| -> Option<u64> {
        let d = big_mod(r.denom(), p);
        if d == 0 {
            return None;
        }
        Some(big_mod(r.numer(), p) * inv_mod64(d, p) % p)
    };
    let a = part(c.rational_part())?;
    let b = part(c.radical_part())?;
    Some((a + b * s % p) % p)
}

/// Rank of the image modulo a large prime; a lower bound for the exact rank.
pub fn rank_mod_p<K: Eq + Hash + Clone>(rows: &[BTreeMap<K, Coefficient>], q: u32) -> Option<usize> {
    let (p, s) = modulus_for(q);
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut dense: Vec<Vec<(usize, u64)>> = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::new();
        for (k, c) in row {
            let n = index.len();
            let j = *index.entry(k.clone()).or_insert(n);
            let x = reduce_mod(c, p, s)?;
            if x != 0 {
                r.push((j, x));
            }
        }
        dense.push(r);
    }
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let width = index.len();
    for row in dense {
        let mut v = vec![0u64; width];
        for (j, x) in row {
            v[j] = x;
        }
        let mut lead = v.iter().position(|&x| x != 0);
        while let Some(j) = lead {
            match pivots.get(&j) {
                Some(pv) => {
                    let c = v[j];
                    for (t, &y) in pv.iter().enumerate().skip(j) {
                        if y != 0 {
                            v[t] = (v[t] + p - c * y % p) % p;
                        }
                    }
                    lead = v.iter().skip(j + 1).position(|&x| x != 0).map(|t| t + j + 1);
                }
                None => {
                    let inv = inv_mod64(v[j], p);
                    for x in v.iter_mut().skip(j) {
                        *x = *x * inv % p;
                    }
                    pivots.insert(j, v);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Exact rank, using the modular rank as a certificate when it is already full.
pub fn rank<K: Ord + Hash + Clone>(rows: &[BTreeMap<K, Coefficient>], q: u32) -> usize {
    if rows.is_empty() {
        return 0;
    }
    match rank_mod_p(rows, q) {
        Some(r) if r == rows.len() => r,
        _ => rank_exact(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(u32, Coefficient)]) -> BTreeMap<u32, Coefficient> {
        entries.iter().cloned().collect()
    }

    #[test]
    fn ranks_agree() {
        let q = 2;
        let v = Coefficient::v_pow(1, q);
        let one = Coefficient::one(q);
        let rows = vec![
            row(&[(0, one.clone()), (1, v.clone())]),
            row(&[(0, v.clone()), (1, Coefficient::from_int(2, q))]),
            row(&[(2, one.clone())]),
        ];
        // Second row is v times the first.
        assert_eq!(rank_exact(&rows), 2);
        assert_eq!(rank_mod_p(&rows, q), Some(2));
        assert_eq!(rank(&rows, q), 2);
        let full = vec![row(&[(0, one.clone())]), row(&[(0, v.clone()), (1, one.clone())])];
        assert_eq!(rank(&full, q), 2);
        assert_eq!(rank::<u32>(&[], q), 0);
    }

    #[test]
    fn modulus_has_root() {
        for q in [2u32, 3, 5, 7] {
            let (p, s) = modulus_for(q);
            assert_eq!(s * s % p, q as u64);
        }
    }
}
