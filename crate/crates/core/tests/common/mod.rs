//! Property checks shared by the proptest suite and the acceptance gate.
//! Every suite runs a fixed-seed `TestRunner`, so failures reproduce.

#![allow(dead_code)]

use g2mae::equivalence::conjugation_identity;
use g2mae::exterior::{ExteriorForm, PolyU};
use g2mae::g2rep::{ad_operator, pairing_matrix, AdName, DIM};
use g2mae::linalg::QMatrix;
use g2mae::mae::restrict_to_lagrangian;
use g2mae::parakahler::{kaehler_form, metric_from_symplectic, BilinearForm, ParaComplexOp};
use g2mae::rational::q;
use g2mae::Q;
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 256;
const SEED: [u8; 32] = *b"g2-invariant monge-ampere seed!!";

pub fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

/// Runs `check` on `CASES` inputs drawn from `strategy`.
pub fn run<S, F>(strategy: S, check: F) -> Result<u32, String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    runner()
        .run(&strategy, check)
        .map(|_| CASES)
        .map_err(|e| e.to_string())
}

/// Laplace expansion along the first row.
pub fn laplace(m: &[Vec<PolyU>]) -> PolyU {
    if m.is_empty() {
        return PolyU::constant(q(1));
    }
    let mut out = PolyU::zero();
    for c in 0..m.len() {
        if m[0][c].is_zero() {
            continue;
        }
        let sub: Vec<Vec<PolyU>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * &laplace(&sub);
        out = if c % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// Symmetric Hessian entry `u_ij`.
pub fn u(i: usize, j: usize) -> PolyU {
    PolyU::u(i.min(j), i.max(j))
}

/// `M^{cols}_{rows}` by cofactor expansion of the kept block.
pub fn minor_laplace(rows: &[usize], cols: &[usize]) -> PolyU {
    let m: Vec<Vec<PolyU>> = (0..5)
        .filter(|i| !rows.contains(i))
        .map(|i| (0..5).filter(|j| !cols.contains(j)).map(|j| u(i, j)).collect())
        .collect();
    laplace(&m)
}

// ---- generators ----

fn form_terms(dim: usize, k: usize) -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((subsequence((0..dim).collect::<Vec<_>>(), k), -5i64..=5), 1..4)
}

pub fn build_form(dim: usize, k: usize, terms: &[(Vec<usize>, i64)]) -> ExteriorForm {
    terms.iter().fold(ExteriorForm::zero(dim, k), |acc, (w, c)| {
        acc.add(&ExteriorForm::from_word(dim, w, q(*c)).unwrap()).unwrap()
    })
}

fn int_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, n), n)
}

fn to_q(m: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
}

/// `L·U` with unit diagonals on both triangles: always invertible.
pub fn unimodular(lower: &[Vec<i64>], upper: &[Vec<i64>]) -> QMatrix {
    let n = lower.len();
    let mut l = QMatrix::identity(n);
    let mut u = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                l.set(i, j, q(lower[i][j]));
            } else if i < j {
                u.set(i, j, q(upper[i][j]));
            }
        }
    }
    &l * &u
}

fn invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    (int_matrix(n, -3, 3), int_matrix(n, -3, 3), prop::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], n))
        .prop_map(|(l, u, d)| {
            let dq: Vec<Q> = d.iter().map(|&x| q(x)).collect();
            &unimodular(&l, &u) * &QMatrix::diagonal(&dq)
        })
}

// ---- suites ----

/// `α∧β = (−1)^{pq} β∧α`.
pub fn wedge_anticommutativity() -> Result<u32, String> {
    let dim = 7;
    let strat = (0usize..=3, 0usize..=3).prop_flat_map(move |(p, r)| (Just(p), Just(r), form_terms(dim, p), form_terms(dim, r)));
    run(strat, |(p, r, a, b)| {
        let (a, b) = (build_form(dim, p, &a), build_form(dim, r, &b));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let sign = if p * r % 2 == 1 { q(-1) } else { q(1) };
        prop_assert_eq!(ab, ba.scale(&sign));
        Ok(())
    })
}

/// `X(α∧β) = Xα∧β + α∧Xβ`.
pub fn leibniz_rule() -> Result<u32, String> {
    let dim = 6;
    let strat = (1usize..=3, 1usize..=3).prop_flat_map(move |(p, r)| {
        (Just(p), Just(r), form_terms(dim, p), form_terms(dim, r), int_matrix(dim, -2, 2))
    });
    run(strat, |(p, r, a, b, x)| {
        let (a, b, x) = (build_form(dim, p, &a), build_form(dim, r, &b), to_q(&x));
        let lhs = a.wedge(&b).unwrap().derivation_extend(&x).unwrap();
        let rhs = a
            .derivation_extend(&x)
            .unwrap()
            .wedge(&b)
            .unwrap()
            .add(&a.wedge(&b.derivation_extend(&x).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// `pullback(S₁S₂) = pullback(S₁) ∘ pullback(S₂)` and `pullback(1) = id`.
pub fn pullback_functoriality() -> Result<u32, String> {
    let dim = 6;
    let strat = (1usize..=4).prop_flat_map(move |k| (Just(k), form_terms(dim, k), invertible(dim), invertible(dim)));
    run(strat, |(k, a, s1, s2)| {
        let a = build_form(dim, k, &a);
        let lhs = a.pullback(&(&s1 * &s2)).unwrap();
        let rhs = a.pullback(&s2).unwrap().pullback(&s1).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.pullback(&QMatrix::identity(dim)).unwrap(), a);
        Ok(())
    })
}

/// `ω_Z(Xv, w) + ω_Z(v, Xw) = 0` for each of the four operators.
pub fn pairing_ad_invariance() -> Result<u32, String> {
    let omega = pairing_matrix();
    let ops: Vec<QMatrix> = AdName::ALL.iter().map(|&n| ad_operator(n).matrix).collect();
    let vec10 = || prop::collection::vec(-7i64..=7, DIM);
    run((vec10(), vec10()), move |(v, w)| {
        let v: Vec<Q> = v.into_iter().map(q).collect();
        let w: Vec<Q> = w.into_iter().map(q).collect();
        let pair = |a: &[Q], b: &[Q]| -> Q {
            let ob = omega.apply(b);
            a.iter().zip(&ob).map(|(x, y)| x * y).sum()
        };
        for x in &ops {
            let total = pair(&x.apply(&v), &w) + pair(&v, &x.apply(&w));
            prop_assert_eq!(total, q(0));
        }
        Ok(())
    })
}

/// `I = P·diag(1ⁿ, −1ⁿ)·P⁻¹`, `ω = P⁻ᵀ [[0, B], [−Bᵀ, 0]] P⁻¹` with `B`
/// invertible: both round trips return the input, `g` is symmetric, and the
/// eigenspaces are Lagrangian for `ω` and isotropic for `g`.
pub fn parakahler_round_trip() -> Result<u32, String> {
    let strat = (1usize..=3).prop_flat_map(|n| (Just(n), invertible(2 * n), invertible(n)));
    run(strat, |(n, p, b)| {
        let d: Vec<Q> = (0..2 * n).map(|k| q(if k < n { 1 } else { -1 })).collect();
        let pinv = p.inverse().unwrap();
        let i = ParaComplexOp::new(&(&p * &QMatrix::diagonal(&d)) * &pinv).unwrap();
        let mut seed = QMatrix::zeros(2 * n, 2 * n);
        seed.paste(0, n, &b);
        seed.paste(n, 0, &-&b.transpose());
        let omega = BilinearForm::antisymmetric(&(&pinv.transpose() * &seed) * &pinv).unwrap();
        let g = metric_from_symplectic(&omega, &i).unwrap();
        prop_assert!(g.matrix().is_symmetric());
        prop_assert!(g.is_nondegenerate());
        let back = kaehler_form(&g, &i).unwrap();
        prop_assert_eq!(back.matrix(), omega.matrix());
        let g2 = metric_from_symplectic(&back, &i).unwrap();
        prop_assert_eq!(g2.matrix(), g.matrix());
        for positive in [true, false] {
            let e = i.eigenspace(positive);
            prop_assert_eq!(e.len(), n);
            prop_assert!(omega.vanishes_on(&e));
            prop_assert!(g.vanishes_on(&e));
        }
        Ok(())
    })
}

/// A 5-form built from words with exactly `q` `du`-factors restricts to a
/// nonzero polynomial, homogeneous of degree `q`.
pub fn restriction_degree_law() -> Result<u32, String> {
    let strat = (0usize..=5).prop_flat_map(|qd| {
        let word = (subsequence((0..5).collect::<Vec<_>>(), 5 - qd), subsequence((5..10).collect::<Vec<_>>(), qd))
            .prop_map(|(a, b)| a.into_iter().chain(b).collect::<Vec<usize>>());
        (Just(qd), prop::collection::vec((word, 1i64..=4), 1..4))
    });
    run(strat, |(qd, words)| {
        let form = build_form(DIM, 5, &words);
        prop_assume!(!form.is_zero());
        let p = restrict_to_lagrangian(&form).unwrap();
        prop_assert!(!p.is_zero());
        prop_assert_eq!(p.homogeneous_degree(), Some(qd as u32));
        Ok(())
    })
}

/// `d_o g·τ = τ·d_o ḡ` for `g = diag(A, A⁻ᵀ)`.
pub fn conjugation() -> Result<u32, String> {
    run(invertible(5), |a| {
        prop_assert!(conjugation_identity(&a).unwrap());
        Ok(())
    })
}

pub type Suite = fn() -> Result<u32, String>;

pub const SUITES: [(&str, Suite); 7] = [
    ("wedge anticommutativity", wedge_anticommutativity),
    ("Leibniz rule for derivation_extend", leibniz_rule),
    ("pullback functoriality", pullback_functoriality),
    ("ad-invariance of the orbit pairing", pairing_ad_invariance),
    ("para-Kaehler round trips", parakahler_round_trip),
    ("restriction degree law", restriction_degree_law),
    ("tau conjugation identity", conjugation),
];
