use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{self, q, Q};

use super::poly::PolyU;

/// Scalars an [`ExteriorForm`] can carry.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn from_q(x: &Q) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale_q(&self, x: &Q) -> Self;
}

impl Coefficient for Q {
    fn zero_coeff() -> Self {
        <Q as Zero>::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_q(&self, x: &Q) -> Self {
        self * x
    }
}

impl Coefficient for PolyU {
    fn zero_coeff() -> Self {
        PolyU::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        PolyU::is_zero(self)
    }
    fn from_q(x: &Q) -> Self {
        PolyU::constant(x.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_q(&self, x: &Q) -> Self {
        self.scale(x)
    }
}

/// Strictly increasing basis indices `i₁ < … < i_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Fails unless `idx` is strictly increasing with entries below `dim`.
    pub fn new(idx: Vec<usize>, dim: usize) -> Result<Self> {
        if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= dim) {
            return Err(Error::domain(format!("invalid multi-index {idx:?} for dim {dim}")));
        }
        Ok(MultiIndex(idx))
    }

    /// Sorts an arbitrary word of indices, returning the sign of the sorting
    /// permutation; `None` when an index repeats.
    pub fn sort_word(word: &[usize]) -> Option<(MultiIndex, bool)> {
        let mut v = word.to_vec();
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((MultiIndex(v), odd))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All multi-indices of length `k` in `0..dim`, lexicographically.
    pub fn all(dim: usize, k: usize) -> Vec<MultiIndex> {
        fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == k {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..dim {
                cur.push(i);
                rec(i + 1, dim, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= dim {
            rec(0, dim, k, &mut Vec::with_capacity(k), &mut out);
        }
        out
    }
}

/// An alternating `k`-tensor over an ordered basis of size `dim`.
#[derive(Clone, PartialEq)]
pub struct ExteriorForm<S: Coefficient = Q> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, S>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    pub idx: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: usize,
    pub terms: Vec<FormTermJson>,
}

impl<S: Coefficient> ExteriorForm<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExteriorForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `c · e_{w₁} ∧ … ∧ e_{w_k}` for an arbitrary word `w`.
    pub fn from_word(dim: usize, word: &[usize], c: S) -> Result<Self> {
        if word.iter().any(|&i| i >= dim) {
            return Err(Error::domain(format!("index out of range in {word:?}")));
        }
        let mut f = Self::zero(dim, word.len());
        if let Some((idx, odd)) = MultiIndex::sort_word(word) {
            let c = if odd { c.scale_q(&q(-1)) } else { c };
            f.add_term(idx, c);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> S {
        self.terms
            .get(&MultiIndex(idx.to_vec()))
            .cloned()
            .unwrap_or_else(S::zero_coeff)
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: S) {
        debug_assert_eq!(idx.len(), self.degree);
        if c.is_zero_coeff() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(slot) => {
                slot.add_assign_ref(&c);
                if slot.is_zero_coeff() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::domain("forms differ in dimension or degree"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, x: &Q) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c.scale_q(x));
        }
        out
    }

    pub fn map_coeffs<T: Coefficient>(&self, f: impl Fn(&S) -> T) -> ExteriorForm<T> {
        let mut out = ExteriorForm::zero(self.dim, self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), f(c));
        }
        out
    }

    /// Exterior product. Degrees beyond `dim` give the zero form.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::domain("wedge of forms over different spaces"));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let word: Vec<usize> = i.0.iter().chain(&j.0).copied().collect();
                if let Some((idx, odd)) = MultiIndex::sort_word(&word) {
                    let c = a.mul_ref(b);
                    out.add_term(idx, if odd { c.scale_q(&q(-1)) } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Leibniz extension of the endomorphism `x` (column `j` = image of `e_j`):
    /// `X(v₁∧…∧v_k) = Σᵢ v₁∧…∧Xvᵢ∧…∧v_k`.
    pub fn derivation_extend(&self, x: &QMatrix) -> Result<Self> {
        if !x.is_square() || x.rows() != self.dim {
            return Err(Error::domain("operator and form differ in dimension"));
        }
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            for pos in 0..idx.len() {
                let src = idx.0[pos];
                for dst in 0..self.dim {
                    let a = x.get(dst, src);
                    if Zero::is_zero(a) {
                        continue;
                    }
                    let mut word = idx.0.clone();
                    word[pos] = dst;
                    if let Some((sorted, odd)) = MultiIndex::sort_word(&word) {
                        let s = if odd { -a.clone() } else { a.clone() };
                        out.add_term(sorted, c.scale_q(&s));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Replaces every basis covector `e_a` by `s·e_a = Σ_b s[b][a] e_b` and
    /// re-expands, so `pullback(s₁·s₂, Ω) = pullback(s₁, pullback(s₂, Ω))`.
    pub fn pullback(&self, s: &QMatrix) -> Result<Self> {
        if !s.is_square() || s.rows() != self.dim {
            return Err(Error::domain("substitution matrix and form differ in dimension"));
        }
        if s.rank() < self.dim {
            return Err(Error::Singular);
        }
        let rows: Vec<Vec<(usize, Q)>> = (0..self.dim)
            .map(|a| {
                (0..self.dim)
                    .filter(|&b| !Zero::is_zero(s.get(b, a)))
                    .map(|b| (b, s.get(b, a).clone()))
                    .collect()
            })
            .collect();
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            // expand factor by factor, keeping partial words sorted
            let mut partial: BTreeMap<Vec<usize>, Q> = BTreeMap::from([(vec![], Q::one())]);
            for &a in &idx.0 {
                let mut next: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
                for (word, coef) in &partial {
                    for (b, sab) in &rows[a] {
                        let mut w = word.clone();
                        w.push(*b);
                        if let Some((sorted, odd)) = MultiIndex::sort_word(&w) {
                            let v = coef * sab;
                            let e = next.entry(sorted.0).or_insert_with(Q::zero);
                            if odd {
                                *e -= v;
                            } else {
                                *e += v;
                            }
                        }
                    }
                }
                next.retain(|_, v| !Zero::is_zero(v));
                partial = next;
            }
            for (word, coef) in partial {
                out.add_term(MultiIndex(word), c.scale_q(&coef));
            }
        }
        Ok(out)
    }

    /// Total weight `Σ h_i` of a multi-index for diagonal weights `h`.
    pub fn index_weight(idx: &MultiIndex, diag: &[Q]) -> Q {
        idx.0.iter().fold(Q::zero(), |acc, &i| acc + &diag[i])
    }

    /// The common weight of all terms under diagonal weights, if there is one.
    pub fn weight(&self, diag: &[Q]) -> Option<Q> {
        let mut ws = self.terms.keys().map(|i| Self::index_weight(i, diag));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }
}

impl ExteriorForm<Q> {
    /// Coordinates against `basis` (a list of multi-indices of the right degree).
    pub fn to_coords(&self, basis: &[MultiIndex]) -> Vec<Q> {
        basis
            .iter()
            .map(|i| self.terms.get(i).cloned().unwrap_or_else(Q::zero))
            .collect()
    }

    pub fn from_coords(dim: usize, basis: &[MultiIndex], coords: &[Q]) -> Self {
        let degree = basis.first().map_or(0, MultiIndex::len);
        let mut f = Self::zero(dim, degree);
        for (i, c) in basis.iter().zip(coords) {
            f.add_term(i.clone(), c.clone());
        }
        f
    }

    /// `r` with `self = r · other`, if proportional by a nonzero rational.
    pub fn ratio_to(&self, other: &Self) -> Option<Q> {
        if self.dim != other.dim || self.degree != other.degree {
            return None;
        }
        let (i, c) = other.terms.iter().next()?;
        let r = self.terms.get(i)? / c;
        (*self == other.scale(&r)).then_some(r)
    }

    /// Rescaled to a primitive integer form with positive first coefficient.
    pub fn normalized(&self) -> Self {
        let coeffs: Vec<Q> = self.terms.values().cloned().collect();
        let prim = rational::primitive(&coeffs);
        let mut out = Self::zero(self.dim, self.degree);
        for (i, c) in self.terms.keys().zip(prim) {
            out.add_term(i.clone(), c);
        }
        out
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| FormTermJson {
                    idx: i.0.clone(),
                    coeff: rational::to_string(c),
                })
                .collect(),
        }
    }

    pub fn from_json(dim: usize, json: &FormJson) -> Result<Self> {
        let mut f = Self::zero(dim, json.degree);
        for t in &json.terms {
            if t.idx.len() != json.degree {
                return Err(Error::domain("term length differs from degree"));
            }
            let c = rational::parse(&t.coeff)
                .ok_or_else(|| Error::domain(format!("bad coefficient `{}`", t.coeff)))?;
            f.add_term(MultiIndex::new(t.idx.clone(), dim)?, c);
        }
        Ok(f)
    }

    /// Human-readable rendering with the given basis labels and wedge symbol.
    pub fn render(&self, labels: &[&str], wedge: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if !abs.is_one() {
                out.push_str(&rational::to_string(&abs));
                out.push(' ');
            }
            let names: Vec<&str> = idx.0.iter().map(|&i| labels[i]).collect();
            out.push_str(&names.join(wedge));
        }
        out
    }
}

impl<S: Coefficient> fmt::Debug for ExteriorForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorForm(dim={}, degree={}, ", self.dim, self.degree)?;
        f.debug_map()
            .entries(self.terms.iter().map(|(i, c)| (&i.0, c)))
            .finish()?;
        write!(f, ")")
    }
}
