//! Acyclic quivers, their Grothendieck group and Euler forms.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A class in the Grothendieck group `K(A) ≅ Z^{vertices}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GClass(pub Vec<i64>);

impl GClass {
    pub fn zero(n: usize) -> Self {
        GClass(vec![0; n])
    }

    pub fn unit(n: usize, v: usize) -> Self {
        let mut c = vec![0; n];
        c[v] = 1;
        GClass(c)
    }

    pub fn from_dims(dims: &[usize]) -> Self {
        GClass(dims.iter().map(|&d| d as i64).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn to_dims(&self) -> Option<Vec<usize>> {
        self.0.iter().map(|&x| usize::try_from(x).ok()).collect()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        GClass(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Debug for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &GClass {
    type Output = GClass;
    fn add(self, o: &GClass) -> GClass {
        assert_eq!(self.0.len(), o.0.len());
        GClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GClass {
    type Output = GClass;
    fn sub(self, o: &GClass) -> GClass {
        assert_eq!(self.0.len(), o.0.len());
        GClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for GClass {
    type Output = GClass;
    fn add(self, o: GClass) -> GClass {
        &self + &o
    }
}

impl Sub for GClass {
    type Output = GClass;
    fn sub(self, o: GClass) -> GClass {
        &self - &o
    }
}

impl AddAssign<&GClass> for GClass {
    fn add_assign(&mut self, o: &GClass) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }
}

impl Neg for &GClass {
    type Output = GClass;
    fn neg(self) -> GClass {
        GClass(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for GClass {
    type Output = GClass;
    fn neg(self) -> GClass {
        -&self
    }
}

/// A path in the quiver, as a sequence of arrow indices starting at `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    vertices: Vec<String>,
    arrows: Vec<ArrowFile>,
}

#[derive(Serialize, Deserialize)]
struct ArrowFile {
    from: String,
    to: String,
}

/// A finite quiver without oriented cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(labels: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= n || t >= n) {
            return Err(Error::InvalidQuiver(format!("arrow {s}->{t} refers to a missing vertex")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return Err(Error::InvalidQuiver(format!("duplicate vertex label {dup}")));
        }
        let quiver = Quiver { labels, arrows };
        quiver.topological_order().ok_or(Error::CyclicQuiver)?;
        Ok(quiver)
    }

    /// Linearly oriented `A_n`: `1 → 2 → … → n`.
    pub fn linear_a(n: usize) -> Self {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Quiver::new(labels, arrows).expect("linear quiver is acyclic")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: QuiverFile = serde_json::from_str(text)?;
        let index: BTreeMap<&str, usize> =
            file.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut arrows = Vec::new();
        for a in &file.arrows {
            let s = *index
                .get(a.from.as_str())
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {}", a.from)))?;
            let t = *index
                .get(a.to.as_str())
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {}", a.to)))?;
            arrows.push((s, t));
        }
        Quiver::new(file.vertices.clone(), arrows)
    }

    pub fn to_json(&self) -> String {
        let file = QuiverFile {
            vertices: self.labels.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| ArrowFile { from: self.labels[s].clone(), to: self.labels[t].clone() })
                .collect(),
        };
        serde_json::to_string(&file).expect("quiver serializes")
    }

    /// Hex SHA-256 of the canonical JSON encoding.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.labels.len();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// ⟨α, β⟩ = Σ_v α_v β_v − Σ_{a: i→j} α_i β_j.
    pub fn euler_form(&self, a: &GClass, b: &GClass) -> i64 {
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(i, j)| a.0[i] * b.0[j]).sum();
        diag - off
    }

    /// (α, β) = ⟨α, β⟩ + ⟨β, α⟩.
    pub fn sym_euler_form(&self, a: &GClass, b: &GClass) -> i64 {
        self.euler_form(a, b) + self.euler_form(b, a)
    }

    /// All paths starting at `v` (including the trivial one), ordered by
    /// length and then by arrow sequence.
    pub fn paths_from(&self, v: usize) -> Vec<Path> {
        let mut out = vec![Path { source: v, target: v, arrows: vec![] }];
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, &(s, t)) in self.arrows.iter().enumerate() {
                    if s == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: v, target: t, arrows });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Dimension vector of the indecomposable projective `P_v` (paths out of `v`).
    pub fn projective_dims(&self, v: usize) -> Vec<usize> {
        let mut d = vec![0; self.num_vertices()];
        for p in self.paths_from(v) {
            d[p.target] += 1;
        }
        d
    }

    /// Multiplicities `n` with `Σ n_v P̂_v = class`, if integral (they may be negative).
    pub fn projective_multiplicities(&self, class: &GClass) -> Option<Vec<i64>> {
        let n = self.num_vertices();
        let order = self.topological_order().expect("acyclic");
        let mut rest = class.0.clone();
        let mut mult = vec![0i64; n];
        // P_v is supported on vertices reachable from v with (P_v)_v = 1, so peel in topological order.
        for &v in &order {
            let k = rest[v];
            mult[v] = k;
            if k != 0 {
                for (w, d) in self.projective_dims(v).into_iter().enumerate() {
                    rest[w] -= k * d as i64;
                }
            }
        }
        rest.iter().all(|&x| x == 0).then_some(mult)
    }

    /// True iff `class` is the dimension vector of a projective module.
    pub fn is_projective_class(&self, class: &GClass) -> bool {
        self.projective_multiplicities(class).is_some_and(|m| m.iter().all(|&k| k >= 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, v: usize) -> GClass {
        GClass::unit(n, v)
    }

    #[test]
    fn euler_form_a2() {
        let q = Quiver::linear_a(2);
        assert_eq!(q.euler_form(&e(2, 0), &e(2, 1)), -1);
        assert_eq!(q.euler_form(&e(2, 1), &e(2, 0)), 0);
        assert_eq!(q.euler_form(&GClass(vec![1, 1]), &GClass(vec![1, 1])), 1);
    }

    #[test]
    fn symmetric_form_a2() {
        let q = Quiver::linear_a(2);
        assert_eq!(q.sym_euler_form(&e(2, 0), &e(2, 1)), -1);
        assert_eq!(q.sym_euler_form(&e(2, 0), &e(2, 0)), 2);
    }

    #[test]
    fn rejects_cycles() {
        let r = Quiver::new(vec!["a".into(), "b".into()], vec![(0, 1), (1, 0)]);
        assert!(matches!(r, Err(Error::CyclicQuiver)));
    }

    #[test]
    fn json_roundtrip_keeps_vertex_order() {
        let text = r#"{"vertices": ["x", "y", "z"], "arrows": [{"from": "z", "to": "x"}, {"from": "y", "to": "x"}]}"#;
        let q = Quiver::from_json(text).unwrap();
        assert_eq!(q.arrows(), &[(2, 0), (1, 0)]);
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        assert_eq!(q.content_hash().len(), 64);
    }

    #[test]
    fn projective_dims_and_multiplicities() {
        let q = Quiver::linear_a(3);
        assert_eq!(q.projective_dims(0), vec![1, 1, 1]);
        assert_eq!(q.projective_dims(2), vec![0, 0, 1]);
        assert_eq!(q.projective_multiplicities(&GClass(vec![1, 2, 2])), Some(vec![1, 1, 0]));
        assert!(q.is_projective_class(&GClass(vec![0, 1, 2])));
        assert!(!q.is_projective_class(&GClass(vec![1, 0, 0])));
    }
}
