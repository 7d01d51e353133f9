//! Dense matrices over a prime field `F_q` with deterministic Gaussian elimination.
//!
//! Pivoting always takes the leftmost available pivot column and, within it,
//! the smallest row index holding a nonzero entry, so every derived basis is
//! reproducible.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0);
    pow_mod(a, q - 2, q)
}

pub fn pow_mod(mut base: u32, mut exp: u32, q: u32) -> u32 {
    let mut acc = 1u64 % q as u64;
    let mut b = base as u64 % q as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % q as u64;
        }
        b = b * b % q as u64;
        exp >>= 1;
    }
    base = acc as u32;
    base
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest generator of the multiplicative group of `F_q`.
pub fn primitive_root(q: u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let n = q - 1;
    let mut factors = vec![];
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&p| pow_mod(g, n / p, q) != 1))
        .expect("prime field has a primitive root")
}

/// `|GL_n(F_q)|`.
pub fn gl_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| qn - q.pow(i)).product()
}

/// A matrix over `F_q`, entries stored row-major and reduced to `0..q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    q: u32,
    data: Vec<u32>,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]_{}x{}", self.rows, self.cols)
    }
}

/// Output of [`FFMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FFMatrix,
    pub pivots: Vec<usize>,
}

/// A solution of `m·x = rhs`: one particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

impl FFMatrix {
    pub fn zeros(rows: usize, cols: usize, q: u32) -> Self {
        FFMatrix { rows, cols, q, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, q: u32) -> Self {
        let mut m = Self::zeros(n, n, q);
        for i in 0..n {
            m.data[i * n + i] = 1 % q;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, q: u32, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        let data = data.into_iter().map(|x| x % q).collect();
        FFMatrix { rows, cols, q, data }
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize, q: u32) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| x.rem_euclid(q as i64) as u32));
        }
        FFMatrix { rows: rows.len(), cols, q, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<u32>], rows: usize, q: u32) -> Self {
        let mut m = Self::zeros(rows, cols.len(), q);
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, &x) in v.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x % self.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.q);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let q = self.q as u64;
        let mut out = Self::zeros(self.rows, other.cols, self.q);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % q) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let q = self.q as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % q) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        let q = self.q;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + b) % q).collect();
        FFMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape");
        let q = self.q;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + q - b) % q).collect();
        FFMatrix { data, ..*self }
    }

    pub fn scale(&self, k: u32) -> Self {
        let q = self.q as u64;
        let data = self.data.iter().map(|&a| ((a as u64 * k as u64) % q) as u32).collect();
        FFMatrix { data, ..*self }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.q - 1)
    }

    /// Block matrix `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols, a.q);
        m.paste(0, 0, a);
        m.paste(a.rows, a.cols, b);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols, self.q);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zeros(self.rows + other.rows, self.cols, self.q);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len(), self.q);
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let q = self.q as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if r != prow {
                for k in 0..m.cols {
                    m.data.swap(r * m.cols + k, prow * m.cols + k);
                }
            }
            let inv = inv_mod(m.get(prow, c), self.q) as u64;
            for k in 0..m.cols {
                let idx = prow * m.cols + k;
                m.data[idx] = ((m.data[idx] as u64 * inv) % q) as u32;
            }
            for r2 in 0..m.rows {
                if r2 == prow {
                    continue;
                }
                let f = m.get(r2, c) as u64;
                if f == 0 {
                    continue;
                }
                for k in 0..m.cols {
                    let sub = (f * m.get(prow, k) as u64) % q;
                    let idx = r2 * m.cols + k;
                    m.data[idx] = ((m.data[idx] as u64 + q - sub) % q) as u32;
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let Rref { matrix, pivots } = self.rref();
        let q = self.q;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1 % q;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = (q - matrix.get(row, free)) % q;
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = rhs`; `Ok(None)` when inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Result<Option<Solution>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} for a matrix with {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&FFMatrix::from_columns(&[rhs.to_vec()], self.rows, self.q));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(row, self.cols);
        }
        Ok(Some(Solution { particular: x, kernel: self.kernel() }))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0, self.q));
        }
        let aug = self.hstack(&Self::identity(n, self.q));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(matrix.submatrix(0..n, n..2 * n))
    }
}

/// A subspace of `F_q^n` held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    q: u32,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, q: u32) -> Self {
        Subspace { ambient, q, basis: vec![], pivots: vec![] }
    }

    pub fn span(vectors: &[Vec<u32>], ambient: usize, q: u32) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient, q);
        }
        let rows: Vec<u32> = vectors.iter().flat_map(|v| v.iter().copied()).collect();
        let Rref { matrix, pivots } = FFMatrix::from_vec(vectors.len(), ambient, q, rows).rref();
        let basis = (0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect();
        Subspace { ambient, q, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Reduces `v` against the echelon basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let q = self.q as u64;
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let f = w[p] as u64;
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = ((*x as u64 + q - f * y as u64 % q) % q) as u32;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Greedy extension: vectors from `candidates` (in order) that are
    /// independent modulo `self` and of each other.
    pub fn complement_from(&self, candidates: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut running = self.clone();
        let mut out = Vec::new();
        for c in candidates {
            if !running.contains(c) {
                out.push(c.clone());
                let mut all = running.basis.clone();
                all.push(c.clone());
                running = Subspace::span(&all, self.ambient, self.q);
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(&all, self.ambient, self.q)
    }
}

/// Every `k`-dimensional subspace of `F_q^n`, enumerated through its reduced
/// row-echelon basis (pivot sets in lexicographic order, then free entries).
pub fn subspaces_of_dim(n: usize, k: usize, q: u32) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free slots: (row, column) with column right of the row pivot and not a pivot column.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        for vals in VectorIter::new(free.len(), q) {
            let mut basis = vec![vec![0u32; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r][p] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&vals) {
                basis[r][c] = x;
            }
            out.push(Subspace { ambient: n, q, basis, pivots: pivots.clone() });
        }
        // Next k-combination of 0..n.
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < n - k + i) else {
            break;
        };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out
}

/// All vectors of `F_q^n` in lexicographic order (first coordinate most significant).
pub struct VectorIter {
    q: u32,
    cur: Option<Vec<u32>>,
}

impl VectorIter {
    pub fn new(n: usize, q: u32) -> Self {
        VectorIter { q, cur: Some(vec![0; n]) }
    }
}

impl Iterator for VectorIter {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.q {
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

/// `Σ c_i · basis_i` for coefficient vector `c`.
pub fn combine(basis: &[Vec<u32>], coeffs: &[u32], len: usize, q: u32) -> Vec<u32> {
    let q64 = q as u64;
    let mut out = vec![0u64; len];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(b) {
            *o = (*o + c as u64 * x as u64) % q64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        assert_eq!(subspaces_of_dim(2, 1, 2).len(), 3);
        assert_eq!(subspaces_of_dim(3, 1, 2).len(), 7);
        assert_eq!(subspaces_of_dim(4, 2, 2).len(), 35);
        assert_eq!(subspaces_of_dim(3, 2, 3).len(), 13);
        assert_eq!(subspaces_of_dim(3, 0, 3).len(), 1);
        assert_eq!(subspaces_of_dim(0, 0, 3).len(), 1);
        let all = subspaces_of_dim(3, 2, 3);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(Subspace::span(a.basis(), 3, 3), *a);
            assert!(all[i + 1..].iter().all(|b| b != a));
        }
    }

    #[test]
    fn identity_solve() {
        let id = FFMatrix::identity(3, 5);
        let s = id.solve(&[1, 4, 2]).unwrap().unwrap();
        assert_eq!(s.particular, vec![1, 4, 2]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_unsolvable() {
        let z = FFMatrix::zeros(1, 1, 2);
        assert_eq!(z.solve(&[1]).unwrap(), None);
    }

    #[test]
    fn small_solve_mod_three() {
        let m = FFMatrix::from_rows(&[vec![1, 1], vec![0, 2]], 2, 3);
        let s = m.solve(&[0, 1]).unwrap().unwrap();
        assert_eq!(s.particular, vec![1, 2]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        let m = FFMatrix::identity(2, 3);
        assert!(matches!(m.solve(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kernel_vectors_map_to_zero() {
        let m = FFMatrix::from_rows(&[vec![1, 2, 0, 1], vec![2, 4, 1, 0]], 4, 5);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = FFMatrix::from_rows(&[vec![1, 2], vec![3, 4]], 2, 5);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FFMatrix::identity(2, 5));
        assert!(FFMatrix::from_rows(&[vec![1, 2], vec![2, 4]], 2, 5).inverse().is_none());
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(gl_order(0, 7), 1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(2), 1);
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
    }

    #[test]
    fn subspace_complement() {
        let s = Subspace::span(&[vec![1, 1, 0]], 3, 2);
        let c = s.complement_from(&[vec![1, 1, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(c, vec![vec![1, 0, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn vector_iter_lex() {
        let all: Vec<_> = VectorIter::new(2, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(VectorIter::new(0, 3).count(), 1);
    }
}
