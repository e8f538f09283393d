//! Root systems over simple-root coordinates, the G₂ instance, and the
//! fundamental gradations attached to subsets of simple roots.
//!
//! Inner products come from a rational Gram matrix of the simple roots, so the
//! grading function is a plain dot product of coefficient vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::par::{self, Exec};
use crate::rational::{q, qr, Q};

/// A root written in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    /// Fails on the zero vector.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::domain("a root must be nonzero"));
        }
        Ok(Root { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Sum of two roots, `None` if it vanishes.
    pub fn checked_add(&self, other: &Root) -> Option<Root> {
        let coeffs: Vec<i64> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Root::new(coeffs).ok()
    }

    /// Parses `k1*a1+k2*a2` (terms may be omitted or reordered).
    pub fn parse(s: &str, rank: usize) -> Result<Root> {
        let mut coeffs = vec![0i64; rank];
        let cleaned = s.replace(' ', "").replace('-', "+-");
        for term in cleaned.split('+').filter(|t| !t.is_empty()) {
            let (k, name) = match term.split_once('*') {
                Some((k, n)) => (
                    k.parse::<i64>()
                        .map_err(|_| Error::domain(format!("bad coefficient in `{s}`")))?,
                    n,
                ),
                None if term.starts_with('-') => (-1, &term[1..]),
                None => (1, term),
            };
            let idx = parse_simple_name(name, rank)?;
            coeffs[idx] += k;
        }
        Root::new(coeffs)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.coeffs.iter().enumerate() {
            if i == 0 {
                write!(f, "{k}*a1")?;
            } else {
                write!(f, "{k:+}*a{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// `a1` -> 0, `a2` -> 1, ...
pub fn parse_simple_name(name: &str, rank: usize) -> Result<usize> {
    let idx: usize = name
        .strip_prefix('a')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::domain(format!("bad simple root name `{name}`")))?;
    if idx == 0 || idx > rank {
        return Err(Error::domain(format!(
            "simple root `{name}` out of range 1..={rank}"
        )));
    }
    Ok(idx - 1)
}

pub fn simple_name(idx: usize) -> String {
    format!("a{}", idx + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    rank: usize,
    gram: QMatrix,
    positive_roots: Vec<Root>,
}

impl RootSystem {
    /// Validates the Gram matrix (symmetric, positive diagonal, integral
    /// nonpositive off-diagonal Cartan integers) and the sign pattern of the
    /// positive roots.
    pub fn new(gram: QMatrix, positive_roots: Vec<Root>) -> Result<Self> {
        let rank = gram.rows();
        if rank == 0 || !gram.is_symmetric() {
            return Err(Error::domain("gram matrix must be square, symmetric and nonempty"));
        }
        for i in 0..rank {
            if !gram.get(i, i).is_positive() {
                return Err(Error::domain("gram matrix must have positive diagonal"));
            }
            for j in 0..rank {
                let c = q(2) * gram.get(i, j) / gram.get(j, j);
                let ok = if i == j {
                    c == q(2)
                } else {
                    c.is_integer() && !c.is_positive()
                };
                if !ok {
                    return Err(Error::domain(format!("invalid Cartan integer at ({i},{j})")));
                }
            }
        }
        for r in &positive_roots {
            if r.rank() != rank || !r.is_positive() {
                return Err(Error::domain(format!("`{r}` is not a positive root of rank {rank}")));
            }
        }
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            if !positive_roots.iter().any(|r| r.coeffs == e) {
                return Err(Error::domain("every simple root must be listed"));
            }
        }
        Ok(RootSystem {
            rank,
            gram,
            positive_roots,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Positive roots followed by their negatives, in matching order.
    pub fn roots(&self) -> Vec<Root> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(Root::neg));
        all
    }

    pub fn contains(&self, r: &Root) -> bool {
        r.rank() == self.rank
            && (self.positive_roots.contains(r) || self.positive_roots.contains(&r.neg()))
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut c = vec![0; self.rank];
        c[i] = 1;
        Root { coeffs: c }
    }

    /// `(a, b)` from the Gram matrix.
    pub fn inner(&self, a: &Root, b: &Root) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let k = a.coeffs[i] * b.coeffs[j];
                if k != 0 {
                    s += q(k) * self.gram.get(i, j);
                }
            }
        }
        s
    }

    /// `2(a, b) / (b, b)`.
    pub fn cartan_pairing(&self, a: &Root, b: &Root) -> Q {
        q(2) * self.inner(a, b) / self.inner(b, b)
    }

    /// The positive root of greatest height.
    pub fn maximal_root(&self) -> Root {
        self.positive_roots
            .iter()
            .max_by_key(|r| r.coeffs.iter().sum::<i64>())
            .cloned()
            .expect("root system has at least one positive root")
    }
}

/// Gram matrix of `α₁ = −ε₂`, `α₂ = ε₂ − ε₃` where `ε₁ + ε₂ + ε₃ = 0`,
/// `εᵢ² = 2/3` and `(εᵢ, εⱼ) = −1/3` for `i ≠ j`.
///
/// ```
/// use g2mae::rational::{q, qr};
/// let g = g2mae::rootsys::g2_gram_from_epsilon();
/// assert_eq!(*g.get(0, 0), qr(2, 3));
/// assert_eq!(*g.get(1, 1), q(2));
/// // the off-diagonal entry is forced to be negative
/// assert_eq!(*g.get(0, 1), q(-1));
/// ```
pub fn g2_gram_from_epsilon() -> QMatrix {
    let eps = |i: usize, j: usize| if i == j { qr(2, 3) } else { qr(-1, 3) };
    let simple: [[i64; 3]; 2] = [[0, -1, 0], [0, 1, -1]];
    let mut g = QMatrix::zeros(2, 2);
    for a in 0..2 {
        for b in 0..2 {
            let mut s = Q::zero();
            for i in 0..3 {
                for j in 0..3 {
                    let k = simple[a][i] * simple[b][j];
                    if k != 0 {
                        s += q(k) * eps(i, j);
                    }
                }
            }
            g.set(a, b, s);
        }
    }
    g
}

/// The G₂ root system with positive roots in the order
/// `α₁, α₂, α₁+α₂, 2α₁+α₂, 3α₁+α₂, 3α₁+2α₂`.
pub fn build_g2() -> RootSystem {
    let pos = [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]]
        .iter()
        .map(|c| Root { coeffs: c.to_vec() })
        .collect();
    RootSystem::new(g2_gram_from_epsilon(), pos).expect("G2 data is valid")
}

/// The rank-one system A₁.
pub fn build_a1() -> RootSystem {
    RootSystem::new(QMatrix::from_i64(&[&[2]]), vec![Root { coeffs: vec![1] }])
        .expect("A1 data is valid")
}

/// `d(α) = Σ kᵢ d(αᵢ)` with `d = 1` on `pi1` and `0` on the other simple roots.
pub fn grading_function(rs: &RootSystem, pi1: &[usize], alpha: &Root) -> Result<i64> {
    if !rs.contains(alpha) {
        return Err(Error::domain(format!("`{alpha}` is not a root")));
    }
    Ok(pi1.iter().map(|&i| alpha.coeffs[i]).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gradation {
    pub pi1: Vec<usize>,
    pub level_sets: BTreeMap<i64, Vec<Root>>,
    pub depth: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradationJson {
    pub pi1: Vec<String>,
    pub levels: BTreeMap<i64, Vec<String>>,
}

impl Gradation {
    pub fn new(rs: &RootSystem, pi1: &[usize]) -> Result<Gradation> {
        if pi1.is_empty() || pi1.iter().any(|&i| i >= rs.rank()) {
            return Err(Error::domain("pi1 must be a nonempty subset of the simple roots"));
        }
        let mut pi1 = pi1.to_vec();
        pi1.sort_unstable();
        pi1.dedup();
        let mut level_sets: BTreeMap<i64, Vec<Root>> = BTreeMap::new();
        for r in rs.roots() {
            let d = grading_function(rs, &pi1, &r)?;
            level_sets.entry(d).or_default().push(r);
        }
        let depth = level_sets.keys().map(|k| k.abs()).max().unwrap_or(0);
        Ok(Gradation {
            pi1,
            level_sets,
            depth,
        })
    }

    /// Roots of degree `i` (empty when none).
    pub fn level(&self, i: i64) -> &[Root] {
        self.level_sets.get(&i).map_or(&[], Vec::as_slice)
    }

    /// Dimension of the graded piece `gⁱ`; the Cartan subalgebra sits in degree 0.
    pub fn graded_dim(&self, i: i64, rank: usize) -> usize {
        self.level(i).len() + if i == 0 { rank } else { 0 }
    }

    pub fn to_json(&self) -> GradationJson {
        GradationJson {
            pi1: self.pi1.iter().map(|&i| simple_name(i)).collect(),
            levels: (-self.depth..=self.depth)
                .map(|i| (i, self.level(i).iter().map(Root::to_string).collect()))
                .collect(),
        }
    }
}

/// One gradation per nonempty subset of simple roots, largest subsets first.
pub fn enumerate_gradations(rs: &RootSystem) -> Vec<Gradation> {
    let l = rs.rank();
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << l))
        .map(|mask| (0..l).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    subsets
        .iter()
        .map(|s| Gradation::new(rs, s).expect("subset is valid"))
        .collect()
}

/// Graded dimensions of `sl(V)` for a flag `V = V¹ ⊕ … ⊕ Vᵏ` with block sizes
/// `dims`, together with the number of bracket-closure violations found on
/// the matrix-unit basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlGradation {
    pub dims: Vec<usize>,
    pub graded_dims: BTreeMap<i64, usize>,
    pub violations: usize,
}

pub fn sl_flag_gradation(dims: &[usize]) -> Result<SlGradation> {
    sl_flag_gradation_with(dims, Exec::default())
}

pub fn sl_flag_gradation_with(dims: &[usize], exec: Exec) -> Result<SlGradation> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::domain("flag dimensions must be positive"));
    }
    let n: usize = dims.iter().sum();
    if n < 2 {
        return Err(Error::domain("sl(V) needs dim V >= 2"));
    }
    let k = dims.len() as i64;
    let block: Vec<i64> = dims
        .iter()
        .enumerate()
        .flat_map(|(b, &d)| std::iter::repeat_n(b as i64, d))
        .collect();

    let mut graded_dims = BTreeMap::new();
    for i in -(k - 1)..=(k - 1) {
        let d = if i == 0 {
            dims.iter().map(|d| d * d).sum::<usize>() - 1
        } else {
            (0..dims.len())
                .filter_map(|p| {
                    let q = p as i64 - i;
                    (0..k).contains(&q).then(|| dims[p] * dims[q as usize])
                })
                .sum()
        };
        graded_dims.insert(i, d);
    }

    // basis: off-diagonal units and H_a = E_aa - E_{a+1,a+1}
    let mut basis: Vec<(i64, Vec<Vec<i64>>)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let mut m = vec![vec![0; n]; n];
                m[a][b] = 1;
                basis.push((block[a] - block[b], m));
            }
        }
    }
    for a in 0..n - 1 {
        let mut m = vec![vec![0; n]; n];
        m[a][a] = 1;
        m[a + 1][a + 1] = -1;
        basis.push((0, m));
    }

    let per_x = par::map(exec, &basis, |(dx, x)| {
        basis
            .iter()
            .filter(|(dy, y)| {
                let target = dx + dy;
                let c = int_commutator(x, y);
                let misplaced = (0..n).any(|a| {
                    (0..n).any(|b| c[a][b] != 0 && block[a] - block[b] != target)
                });
                misplaced || (target.abs() >= k && c.iter().flatten().any(|&v| v != 0))
            })
            .count()
    });
    Ok(SlGradation {
        dims: dims.to_vec(),
        graded_dims,
        violations: per_x.into_iter().sum(),
    })
}

fn int_commutator(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = x.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for l in 0..n {
                s += x[i][l] * y[l][j] - y[i][l] * x[l][j];
            }
            c[i][j] = s;
        }
    }
    c
}

/// All compositions (ordered partitions) of `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(c: &[i64]) -> Root {
        Root::new(c.to_vec()).unwrap()
    }

    #[test]
    fn g2_inner_products() {
        let g2 = build_g2();
        let delta = g2.maximal_root();
        assert_eq!(delta, r(&[3, 2]));
        assert_eq!(g2.inner(&delta, &delta), q(2));
        assert_eq!(g2.inner(&r(&[1, 0]), &delta), q(0));
        for k in 0..4 {
            assert_eq!(g2.inner(&r(&[k, 1]), &delta), q(1));
        }
    }

    #[test]
    fn grading_examples() {
        let g2 = build_g2();
        let delta = r(&[3, 2]);
        assert_eq!(grading_function(&g2, &[1], &delta), Ok(2));
        assert_eq!(grading_function(&g2, &[0, 1], &delta), Ok(5));
        assert_eq!(grading_function(&g2, &[1], &r(&[1, 0])), Ok(0));
        assert!(grading_function(&g2, &[1], &r(&[1, 2])).is_err());
    }

    #[test]
    fn gradation_case_two() {
        let g2 = build_g2();
        let gr = Gradation::new(&g2, &[0]).unwrap();
        assert_eq!(gr.level(3), &[r(&[3, 1]), r(&[3, 2])]);
        assert_eq!(gr.depth, 3);
    }

    #[test]
    fn a1_has_single_gradation() {
        let gs = enumerate_gradations(&build_a1());
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].level(1), &[r(&[1])]);
    }

    #[test]
    fn root_rendering_round_trip() {
        let x = r(&[-3, 2]);
        assert_eq!(x.to_string(), "-3*a1+2*a2");
        assert_eq!(Root::parse(&x.to_string(), 2).unwrap(), x);
        assert_eq!(Root::parse("a2", 2).unwrap(), r(&[0, 1]));
        assert!(Root::new(vec![0, 0]).is_err());
    }

    #[test]
    fn invalid_gram_rejected() {
        let bad = QMatrix::from_i64(&[&[2, 1], &[1, 2]]);
        assert!(RootSystem::new(bad, vec![r(&[1, 0]), r(&[0, 1])]).is_err());
    }

    #[test]
    fn sl_small_cases() {
        let s = sl_flag_gradation(&[1, 1]).unwrap();
        assert_eq!(s.graded_dims.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
        let s = sl_flag_gradation(&[3]).unwrap();
        assert_eq!(s.graded_dims, BTreeMap::from([(0, 8)]));
        assert!(sl_flag_gradation(&[1]).is_err());
        assert_eq!(compositions(4).len(), 8);
    }
}
