//! Exact scalars: the coefficient ring `Q(√q)` and linear algebra over `F_q`.

mod coeff;
mod ffmat;
mod sparse;

pub use coeff::Coefficient;
pub use sparse::{rank, rank_exact, rank_mod_p};
pub use ffmat::{
    combine, gl_order, inv_mod, is_prime, pow_mod, primitive_root, subspaces_of_dim, FFMatrix, Rref,
    Solution, Subspace, VectorIter,
};

use crate::error::{Error, Result};

/// Default cap on the number of objects any single brute-force enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// `q^exponent` if it does not exceed `budget`, otherwise a budget error.
pub fn check_budget(q: u32, exponent: usize, budget: u64, what: &str) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..exponent {
        total = match total.checked_mul(q as u64) {
            Some(t) if t <= budget => t,
            _ => {
                return Err(Error::BudgetExceeded {
                    requested: format!("{q}^{exponent} {what}"),
                    budget,
                })
            }
        };
    }
    if total > budget {
        return Err(Error::BudgetExceeded { requested: format!("{total} {what}"), budget });
    }
    Ok(total)
}

/// Every tuple of matrices `(X_k)` with `X_k` of shape `dst_dims[k] × src_dims[k]`,
/// in lexicographic order of the concatenated row-major entries.
pub struct MapTuples {
    shapes: Vec<(usize, usize)>,
    q: u32,
    inner: VectorIter,
}

impl Iterator for MapTuples {
    type Item = Vec<FFMatrix>;
    fn next(&mut self) -> Option<Vec<FFMatrix>> {
        let flat = self.inner.next()?;
        let mut out = Vec::with_capacity(self.shapes.len());
        let mut off = 0;
        for &(r, c) in &self.shapes {
            out.push(FFMatrix::from_vec(r, c, self.q, flat[off..off + r * c].to_vec()));
            off += r * c;
        }
        Some(out)
    }
}

/// Enumerates all matrix tuples between the given dimensions, failing loudly
/// when the count `q^(Σ src·dst)` exceeds `budget`.
pub fn ff_enumerate_maps(src_dims: &[usize], dst_dims: &[usize], q: u32, budget: u64) -> Result<MapTuples> {
    if src_dims.len() != dst_dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} source and {} target dimensions",
            src_dims.len(),
            dst_dims.len()
        )));
    }
    let shapes: Vec<(usize, usize)> = dst_dims.iter().copied().zip(src_dims.iter().copied()).collect();
    let n: usize = shapes.iter().map(|(r, c)| r * c).sum();
    check_budget(q, n, budget, "matrix tuples")?;
    Ok(MapTuples { shapes, q, inner: VectorIter::new(n, q) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_two_by_two_over_f2() {
        assert_eq!(ff_enumerate_maps(&[2], &[2], 2, DEFAULT_BUDGET).unwrap().count(), 16);
    }

    #[test]
    fn invertible_two_by_two_over_f2() {
        let n = ff_enumerate_maps(&[2], &[2], 2, DEFAULT_BUDGET)
            .unwrap()
            .filter(|t| t[0].is_invertible())
            .count();
        assert_eq!(n, 6);
    }

    #[test]
    fn empty_spaces_give_one_tuple() {
        let all: Vec<_> = ff_enumerate_maps(&[0, 3], &[2, 0], 5, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0][0].shape(), (2, 0));
    }

    #[test]
    fn budget_is_enforced() {
        let err = ff_enumerate_maps(&[3], &[3], 3, 1000).err().unwrap();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn lexicographic_order() {
        let all: Vec<_> = ff_enumerate_maps(&[1, 1], &[1, 1], 2, 100).unwrap().collect();
        assert_eq!(all[1][1].get(0, 0), 1);
        assert_eq!(all[2][0].get(0, 0), 1);
    }
}
