//! The ten-dimensional module `m = n₊ ⊕ n₋` spanned by the root vectors
//! `E_{±γᵢ}, E_{±δ}` (`γᵢ = α₂ + iα₁`), the action of the stabilizer algebra
//! `h = ℝH_δ + sl₂` on it, and the invariant pairing `ω_Z` for `Z = H_δ`.
//!
//! Basis order (indices 0..9):
//! `E_γ₀, E_γ₁, E_γ₂, E_γ₃, E_δ, E_−γ₀, E_−γ₁, E_−γ₂, E_−γ₃, E_−δ`.
//! Matrices act on coordinate columns: column `j` holds the image of basis
//! vector `j`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{q, to_i64, Q};
use crate::rootsys::{build_g2, Root, RootSystem};

pub const DIM: usize = 10;

/// A basis vector of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MLabel {
    pub index: usize,
    pub root: Root,
    /// Eigenvalue of `ad_Z`.
    pub degree: i64,
    pub unicode: &'static str,
    pub ascii: &'static str,
}

const UNICODE: [&str; DIM] = [
    "E_γ₀", "E_γ₁", "E_γ₂", "E_γ₃", "E_δ", "E_−γ₀", "E_−γ₁", "E_−γ₂", "E_−γ₃", "E_−δ",
];
const ASCII: [&str; DIM] = [
    "E_g0", "E_g1", "E_g2", "E_g3", "E_d", "E_-g0", "E_-g1", "E_-g2", "E_-g3", "E_-d",
];

/// The roots labelling the basis, in basis order.
pub fn basis_roots() -> Vec<Root> {
    let pos: Vec<Root> = (0..4)
        .map(|i| Root::new(vec![i, 1]).unwrap())
        .chain(std::iter::once(Root::new(vec![3, 2]).unwrap()))
        .collect();
    let neg: Vec<Root> = pos.iter().map(Root::neg).collect();
    pos.into_iter().chain(neg).collect()
}

/// The ten basis labels with their `ad_Z` degrees `⟨β|δ⟩ = 2(β,δ)/(δ,δ)`.
pub fn m_basis() -> Vec<MLabel> {
    let g2 = build_g2();
    let delta = g2.maximal_root();
    basis_roots()
        .into_iter()
        .enumerate()
        .map(|(index, root)| {
            let degree = to_i64(&g2.cartan_pairing(&root, &delta)).expect("integral degree");
            MLabel {
                index,
                root,
                degree,
                unicode: UNICODE[index],
                ascii: ASCII[index],
            }
        })
        .collect()
}

/// Looks up a basis index by ASCII or Unicode label.
pub fn basis_index(name: &str) -> Result<usize> {
    ASCII
        .iter()
        .position(|n| *n == name)
        .or_else(|| UNICODE.iter().position(|n| *n == name))
        .ok_or_else(|| Error::unknown("basis vector", name, &ASCII))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdName {
    HDelta,
    HAlpha1,
    EAlpha1,
    EMinusAlpha1,
}

impl AdName {
    pub const ALL: [AdName; 4] = [
        AdName::HDelta,
        AdName::HAlpha1,
        AdName::EAlpha1,
        AdName::EMinusAlpha1,
    ];

    pub fn ascii(self) -> &'static str {
        match self {
            AdName::HDelta => "H_d",
            AdName::HAlpha1 => "H_a1",
            AdName::EAlpha1 => "E_a1",
            AdName::EMinusAlpha1 => "E_-a1",
        }
    }
}

impl fmt::Display for AdName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdName::HDelta => "H_δ",
            AdName::HAlpha1 => "H_α₁",
            AdName::EAlpha1 => "E_α₁",
            AdName::EMinusAlpha1 => "E_−α₁",
        })
    }
}

impl FromStr for AdName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AdName::ALL
            .into_iter()
            .find(|n| n.ascii() == s || n.to_string() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = AdName::ALL.iter().map(|n| n.ascii()).collect();
                Error::unknown("operator", s, &valid)
            })
    }
}

/// Nonzero structure constants `N_{α₁,β}` as (source, target, value).
const N_PLUS: [(usize, usize, i64); 6] = [(0, 1, 1), (1, 2, 2), (2, 3, 3), (6, 5, -3), (7, 6, -2), (8, 7, -1)];
/// Nonzero structure constants `N_{−α₁,β}`.
const N_MINUS: [(usize, usize, i64); 6] = [(1, 0, 3), (2, 1, 2), (3, 2, 1), (5, 6, -1), (6, 7, -2), (7, 8, -3)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdOperator {
    pub name: AdName,
    pub matrix: QMatrix,
}

pub fn ad_operator(name: AdName) -> AdOperator {
    let g2 = build_g2();
    let roots = basis_roots();
    let matrix = match name {
        AdName::HDelta => {
            let delta = g2.maximal_root();
            diagonal_action(&g2, &roots, &delta)
        }
        AdName::HAlpha1 => diagonal_action(&g2, &roots, &g2.simple_root(0)),
        AdName::EAlpha1 => structure_matrix(&N_PLUS),
        AdName::EMinusAlpha1 => structure_matrix(&N_MINUS),
    };
    AdOperator { name, matrix }
}

/// Parses the operator name first; unknown names are a domain error.
pub fn ad_operator_by_name(name: &str) -> Result<AdOperator> {
    Ok(ad_operator(name.parse()?))
}

/// `ad_{H_β} E_γ = 2(β, γ)/(β, β) E_γ`.
fn diagonal_action(rs: &RootSystem, roots: &[Root], beta: &Root) -> QMatrix {
    let diag: Vec<Q> = roots.iter().map(|r| rs.cartan_pairing(r, beta)).collect();
    QMatrix::diagonal(&diag)
}

fn structure_matrix(table: &[(usize, usize, i64)]) -> QMatrix {
    let mut m = QMatrix::zeros(DIM, DIM);
    for &(src, dst, n) in table {
        m.set(dst, src, q(n));
    }
    m
}

/// The matrix of `ω_Z` on `m`: `ω_Z(E_β, E_−β) = ⟨β|δ⟩ · 2/(β, β)` for
/// positive `β`, antisymmetrized; all other basis pairings vanish.
///
/// The factor `2/(β, β)` is the Killing-form normalization `(E_β, E_−β)` that
/// matches the structure constants above, giving `(1, 3, 3, 1, 2)` on the
/// pairs `γ₀, γ₁, γ₂, γ₃, δ`.
pub fn pairing_matrix() -> QMatrix {
    let g2 = build_g2();
    let basis = m_basis();
    let mut m = QMatrix::zeros(DIM, DIM);
    for l in basis.iter().take(5) {
        let norm = q(2) / g2.inner(&l.root, &l.root);
        let v = q(l.degree) * norm;
        m.set(l.index, l.index + 5, v.clone());
        m.set(l.index + 5, l.index, -v);
    }
    m
}

pub fn pairing(i: usize, j: usize) -> Result<Q> {
    if i >= DIM || j >= DIM {
        return Err(Error::domain(format!("basis index out of range: ({i}, {j})")));
    }
    Ok(pairing_matrix().get(i, j).clone())
}

/// Eigenvalue of `op` on `v`; fails unless `v` is a nonzero eigenvector with
/// integral eigenvalue.
pub fn weight_of(v: &[Q], op: &AdOperator) -> Result<i64> {
    if v.len() != DIM {
        return Err(Error::domain("vector must have 10 coordinates"));
    }
    let not_eigen = || Error::NotAnEigenvector(op.name.to_string());
    let k = v.iter().position(|x| !x.is_zero()).ok_or_else(not_eigen)?;
    let image = op.matrix.apply(v);
    let lambda = &image[k] / &v[k];
    if image.iter().zip(v).any(|(a, b)| *a != &lambda * b) {
        return Err(not_eigen());
    }
    to_i64(&lambda).ok_or_else(not_eigen)
}

/// Unit coordinate vector of basis index `i`.
pub fn unit(i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); DIM];
    v[i] = q(1);
    v
}

/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f` for `e, f, h = E_α₁, E_−α₁, H_α₁`.
pub fn sl2_triple_holds() -> bool {
    let e = ad_operator(AdName::EAlpha1).matrix;
    let f = ad_operator(AdName::EMinusAlpha1).matrix;
    let h = ad_operator(AdName::HAlpha1).matrix;
    e.commutator(&f) == h && h.commutator(&e) == e.scale(&q(2)) && h.commutator(&f) == f.scale(&q(-2))
}

/// `ω(Xv, w) + ω(v, Xw) = 0` for all `v, w`, i.e. `XᵀΩ + ΩX = 0`.
pub fn preserves_pairing(x: &QMatrix, omega: &QMatrix) -> bool {
    (&(&x.transpose() * omega) + &(omega * x)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn degrees_in_basis_order() {
        let d: Vec<i64> = m_basis().iter().map(|l| l.degree).collect();
        assert_eq!(d, vec![1, 1, 1, 1, 2, -1, -1, -1, -1, -2]);
    }

    #[test]
    fn structure_constant_targets_are_roots_shifted_by_alpha1() {
        let roots = basis_roots();
        let a1 = Root::new(vec![1, 0]).unwrap();
        for &(s, t, _) in &N_PLUS {
            assert_eq!(roots[s].checked_add(&a1).unwrap(), roots[t]);
        }
        for &(s, t, _) in &N_MINUS {
            assert_eq!(roots[s].checked_add(&a1.neg()).unwrap(), roots[t]);
        }
    }

    #[test]
    fn operator_examples() {
        let e = ad_operator(AdName::EAlpha1).matrix;
        assert_eq!(e.apply(&unit(1)), unit(2).iter().map(|x| x * q(2)).collect::<Vec<_>>());
        assert!(e.apply(&unit(4)).iter().all(Zero::is_zero));
        let g2 = build_g2();
        let h = ad_operator(AdName::HAlpha1);
        let expected = q(3) * g2.inner(&g2.simple_root(0), &g2.simple_root(1));
        assert_eq!(weight_of(&unit(0), &h), to_i64(&expected).ok_or(Error::Singular));
        assert_eq!(weight_of(&unit(0), &h), Ok(-3));
    }

    #[test]
    fn weights() {
        let hd = ad_operator(AdName::HDelta);
        assert_eq!(weight_of(&unit(4), &hd), Ok(2));
        assert_eq!(weight_of(&unit(2), &ad_operator(AdName::HAlpha1)), Ok(1));
        let scaled: Vec<Q> = unit(0).iter().map(|x| x * qr(-7, 3)).collect();
        assert_eq!(weight_of(&scaled, &hd), Ok(1));
        let mixed: Vec<Q> = unit(0).iter().zip(unit(4)).map(|(a, b)| a + b).collect();
        assert!(matches!(weight_of(&mixed, &hd), Err(Error::NotAnEigenvector(_))));
        assert!(weight_of(&vec![Q::zero(); DIM], &hd).is_err());
    }

    #[test]
    fn names() {
        assert_eq!("E_-a1".parse::<AdName>(), Ok(AdName::EMinusAlpha1));
        assert_eq!("H_δ".parse::<AdName>(), Ok(AdName::HDelta));
        assert!(ad_operator_by_name("E_a2").is_err());
        assert_eq!(basis_index("E_-d"), Ok(9));
    }

    #[test]
    fn pairing_values() {
        assert_eq!(pairing(0, 5), Ok(q(1)));
        assert_eq!(pairing(1, 6), Ok(q(3)));
        assert_eq!(pairing(4, 9), Ok(q(2)));
        assert_eq!(pairing(9, 4), Ok(q(-2)));
        assert_eq!(pairing(1, 2), Ok(q(0)));
        assert!(pairing(10, 0).is_err());
    }

    #[test]
    fn certificates() {
        assert!(sl2_triple_holds());
        let omega = pairing_matrix();
        for name in AdName::ALL {
            assert!(preserves_pairing(&ad_operator(name).matrix, &omega), "{name}");
        }
        assert_eq!(omega.rank(), DIM);
    }
}
