//! Polynomials in the fifteen symmetric Hessian variables `u_ij`, `i ≤ j ≤ 4`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

/// Size of the symmetric matrix `(u_ij)`.
pub const N: usize = 5;
/// Number of independent entries of `(u_ij)`.
pub const NVARS: usize = 15;

/// Index of `u_ij` after canonicalizing to `i ≤ j`; ordering is
/// `u00, u01, …, u04, u11, …, u44`.
pub fn var(i: usize, j: usize) -> usize {
    assert!(i < N && j < N, "u_{i}{j} out of range");
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * N - i * (i + 1) / 2 + j
}

/// Inverse of [`var`].
pub fn var_pair(v: usize) -> (usize, usize) {
    (0..N)
        .flat_map(|i| (i..N).map(move |j| (i, j)))
        .nth(v)
        .expect("variable index out of range")
}

pub fn var_name(v: usize) -> String {
    let (i, j) = var_pair(v);
    format!("u{i}{j}")
}

/// Parses `u03` (or `u30`, canonicalized).
pub fn parse_var(s: &str) -> Result<usize> {
    let b = s.as_bytes();
    if b.len() == 3 && b[0] == b'u' && b[1].is_ascii_digit() && b[2].is_ascii_digit() {
        let (i, j) = ((b[1] - b'0') as usize, (b[2] - b'0') as usize);
        if i < N && j < N {
            return Ok(var(i, j));
        }
    }
    Err(Error::domain(format!("bad variable name `{s}`")))
}

/// Exponent vector over the fifteen variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u8; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn from_vars(vars: &[usize]) -> Self {
        let mut e = [0u8; NVARS];
        for &v in vars {
            e[v] += 1;
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, v: usize) -> u8 {
        self.0[v]
    }

    /// Variables with multiplicity, in index order.
    pub fn vars(&self) -> Vec<usize> {
        (0..NVARS)
            .flat_map(|v| std::iter::repeat_n(v, self.0[v] as usize))
            .collect()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// Display order: higher degree first, then larger exponents on earlier
    /// variables first.
    fn display_key(&self) -> (std::cmp::Reverse<u32>, std::cmp::Reverse<[u8; NVARS]>) {
        (std::cmp::Reverse(self.degree()), std::cmp::Reverse(self.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..NVARS)
            .filter(|&v| self.0[v] > 0)
            .map(|v| match self.0[v] {
                1 => var_name(v),
                e => format!("{}^{e}", var_name(v)),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A sparse polynomial with rational coefficients; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct PolyU {
    terms: BTreeMap<Monomial, Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub monomial: Vec<String>,
    pub coeff: String,
}

impl PolyU {
    pub fn zero() -> Self {
        PolyU::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = PolyU::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    /// The variable `u_ij` (`u_ji` is the same variable).
    pub fn u(i: usize, j: usize) -> Self {
        PolyU::monomial(Monomial::from_vars(&[var(i, j)]), q(1))
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = PolyU::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn scale(&self, c: &Q) -> PolyU {
        if c.is_zero() {
            return PolyU::zero();
        }
        PolyU {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Evaluates at a point given as the fifteen values in variable order.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), NVARS);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..NVARS {
                for _ in 0..m.0[v] {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Partial derivative with the fifteen variables treated as independent.
    pub fn derivative(&self, v: usize) -> PolyU {
        let mut out = PolyU::zero();
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[v] -= 1;
            out.add_term(m2, c * q(e as i64));
        }
        out
    }

    /// `r` with `self = r · other`, if the two are proportional by a nonzero
    /// rational. Two zero polynomials are not considered proportional.
    pub fn ratio_to(&self, other: &PolyU) -> Option<Q> {
        let (m, c) = other.terms.iter().next()?;
        let r = self.terms.get(m)? / c;
        (*self == other.scale(&r)).then_some(r)
    }

    pub fn is_proportional(&self, other: &PolyU) -> bool {
        self.ratio_to(other).is_some()
    }

    /// Rescaled to coprime integer coefficients with a positive leading term
    /// (leading in display order).
    pub fn normalized(&self) -> PolyU {
        let ordered = self.ordered_terms();
        let coeffs: Vec<Q> = ordered.iter().map(|(_, c)| (*c).clone()).collect();
        let prim = rational::primitive(&coeffs);
        PolyU {
            terms: ordered
                .into_iter()
                .zip(prim)
                .map(|((m, _), c)| (*m, c))
                .collect(),
        }
    }

    fn ordered_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by_key(|(m, _)| m.display_key());
        t
    }

    pub fn to_json(&self) -> Vec<PolyTermJson> {
        self.ordered_terms()
            .into_iter()
            .map(|(m, c)| PolyTermJson {
                monomial: m.vars().into_iter().map(var_name).collect(),
                coeff: rational::to_string(c),
            })
            .collect()
    }

    pub fn from_json(terms: &[PolyTermJson]) -> Result<PolyU> {
        let mut p = PolyU::zero();
        for t in terms {
            let vars = t
                .monomial
                .iter()
                .map(|s| parse_var(s))
                .collect::<Result<Vec<_>>>()?;
            let c = rational::parse(&t.coeff)
                .ok_or_else(|| Error::domain(format!("bad coefficient `{}`", t.coeff)))?;
            p.add_term(Monomial::from_vars(&vars), c);
        }
        Ok(p)
    }

    /// Parses expressions such as `3*u03^2 - 10*u02*u13 + u11`.
    pub fn parse(s: &str) -> Result<PolyU> {
        let bad = || Error::domain(format!("cannot parse polynomial `{s}`"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut p = PolyU::zero();
        let mut term = String::new();
        let mut chunks = Vec::new();
        for (k, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && k > 0 && !cleaned[..k].ends_with('^') {
                chunks.push(std::mem::take(&mut term));
            }
            term.push(ch);
        }
        chunks.push(term);
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(b) => (q(-1), b),
                None => (q(1), chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let mut coeff = sign;
            let mut vars = Vec::new();
            for factor in body.split('*') {
                if factor.starts_with('u') {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<usize>().map_err(|_| bad())?),
                        None => (factor, 1),
                    };
                    let v = parse_var(name)?;
                    vars.extend(std::iter::repeat_n(v, exp));
                } else {
                    coeff *= rational::parse(factor).ok_or_else(bad)?;
                }
            }
            p.add_term(Monomial::from_vars(&vars), coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for PolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.ordered_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                f.write_str(&rational::to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::to_string(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyU({self})")
    }
}

impl Add for &PolyU {
    type Output = PolyU;

    fn add(self, rhs: &PolyU) -> PolyU {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PolyU {
    type Output = PolyU;

    fn sub(self, rhs: &PolyU) -> PolyU {
        self + &(-rhs)
    }
}

impl Neg for &PolyU {
    type Output = PolyU;

    fn neg(self) -> PolyU {
        self.scale(&q(-1))
    }
}

impl Mul for &PolyU {
    type Output = PolyU;

    fn mul(self, rhs: &PolyU) -> PolyU {
        let mut out = PolyU::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Entries of the symbolic symmetric matrix `(u_ij)`.
pub fn symbolic_u() -> Vec<Vec<PolyU>> {
    (0..N)
        .map(|i| (0..N).map(|j| PolyU::u(i, j)).collect())
        .collect()
}

/// Fifteen point coordinates from a full symmetric 5×5 matrix.
pub fn point_from_matrix(m: &[Vec<Q>]) -> Vec<Q> {
    (0..NVARS)
        .map(|v| {
            let (i, j) = var_pair(v);
            m[i][j].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variables_are_symmetric() {
        assert_eq!(var(3, 0), var(0, 3));
        assert_eq!(var(4, 4), NVARS - 1);
        for v in 0..NVARS {
            let (i, j) = var_pair(v);
            assert_eq!(var(i, j), v);
        }
        assert_eq!(PolyU::u(2, 1), PolyU::u(1, 2));
    }

    #[test]
    fn arithmetic_and_display() {
        let a = &PolyU::u(0, 3) + &PolyU::u(1, 2);
        let sq = &a * &a;
        assert_eq!(sq.to_string(), "u03^2 + 2*u03*u12 + u12^2");
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert!((&a - &a).is_zero());
        assert_eq!(PolyU::constant(q(-2)).to_string(), "-2");
    }

    #[test]
    fn parse_round_trip() {
        let p = PolyU::parse("3*u03^2 + 3*u12^2 - 10*u02*u13 - 3*u11*u22 + 10*u01*u23 - 3*u00*u33").unwrap();
        assert_eq!(p.num_terms(), 6);
        assert_eq!(PolyU::parse(&p.to_string()).unwrap(), p);
        assert_eq!(PolyU::from_json(&p.to_json()).unwrap(), p);
        assert!(PolyU::parse("u55").is_err());
    }

    #[test]
    fn proportionality() {
        let p = PolyU::parse("u03 + u12").unwrap();
        let r = p.scale(&q(-6));
        assert_eq!(r.ratio_to(&p), Some(q(-6)));
        assert_eq!(r.normalized(), p);
        assert!(!p.is_proportional(&PolyU::u(0, 3)));
        assert!(!PolyU::zero().is_proportional(&PolyU::zero()));
    }

    #[test]
    fn derivative_and_eval() {
        let p = PolyU::parse("u00*u33 - u03^2").unwrap();
        assert_eq!(p.derivative(var(0, 3)), PolyU::parse("-2*u03").unwrap());
        let mut pt = vec![Q::zero(); NVARS];
        pt[var(0, 0)] = q(2);
        pt[var(3, 3)] = q(5);
        pt[var(0, 3)] = q(1);
        assert_eq!(p.eval(&pt), q(9));
    }
}
