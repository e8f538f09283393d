//! Independent re-derivations compared with the library.

mod common;

use g2mae::equivalence::{tau, xi};
use g2mae::exterior::{in_span, joint_invariants, ExteriorForm, MultiIndex, PolyU};
use g2mae::exterior::solve::invariance_matrix;
use g2mae::g2rep::{ad_operator, AdName, DIM};
use g2mae::invariants::{generator, invariant_basis, DIMENSIONS};
use g2mae::linalg::QMatrix;
use g2mae::mae::{catalogue, minor, restrict_to_lagrangian};
use g2mae::rational::q;
use g2mae::{Exec, Q};
use num_traits::Zero;

use common::{laplace, minor_laplace, u};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn restriction_matches_cofactor_expansion_on_every_word() {
    for idx in MultiIndex::all(DIM, 5) {
        let m: Vec<Vec<PolyU>> = idx
            .as_slice()
            .iter()
            .map(|&a| {
                (0..5)
                    .map(|b| match a {
                        a if a < 5 && a == b => PolyU::constant(q(1)),
                        a if a < 5 => PolyU::zero(),
                        a => u(b, a - 5),
                    })
                    .collect()
            })
            .collect();
        let f = ExteriorForm::from_coords(DIM, std::slice::from_ref(&idx), &[q(1)]);
        assert_eq!(restrict_to_lagrangian(&f).unwrap(), laplace(&m), "{:?}", idx.as_slice());
    }
}

#[test]
fn minors_match_cofactor_expansion() {
    for k in 0..=4 {
        for rows in MultiIndex::all(5, k) {
            for cols in MultiIndex::all(5, k) {
                let (r, c) = (rows.as_slice(), cols.as_slice());
                assert_eq!(minor(r, c).unwrap(), minor_laplace(r, c));
            }
        }
    }
    let m034_124 = PolyU::parse("u01*u23 - u02*u13").unwrap();
    assert_eq!(minor(&[1, 2, 4], &[0, 3, 4]).unwrap(), m034_124);
}

/// Termwise substitution for a matrix with one nonzero entry per column.
fn substitute(word: &[usize], s: &QMatrix) -> ExteriorForm {
    let mut image = Vec::new();
    let mut c = q(1);
    for &a in word {
        let b = (0..DIM).find(|&b| !s.get(b, a).is_zero()).unwrap();
        c *= s.get(b, a);
        image.push(b);
    }
    ExteriorForm::from_word(DIM, &image, c).unwrap()
}

#[test]
fn monomial_pullbacks_match_substitution() {
    for s in [tau().matrix, xi().matrix] {
        for k in [2, 5] {
            for idx in MultiIndex::all(DIM, k) {
                let f = ExteriorForm::from_coords(DIM, std::slice::from_ref(&idx), &[q(1)]);
                assert_eq!(f.pullback(&s).unwrap(), substitute(idx.as_slice(), &s));
            }
        }
    }
    // dx⁰∧dx¹∧dx²∧dx³∧du₄ ↦ du₀∧du₁∧du₂∧du₃∧dx⁴
    let f = ExteriorForm::from_word(DIM, &[0, 1, 2, 3, 9], q(1)).unwrap();
    let g = ExteriorForm::from_word(DIM, &[5, 6, 7, 8, 4], q(1)).unwrap();
    assert_eq!(f.pullback(&tau().matrix).unwrap(), g);
}

#[test]
fn hand_leibniz_example() {
    let e = ad_operator(AdName::EAlpha1).matrix;
    let f = ExteriorForm::from_word(DIM, &[0, 3], q(1)).unwrap();
    let want = ExteriorForm::from_word(DIM, &[1, 3], q(1)).unwrap();
    assert_eq!(f.derivation_extend(&e).unwrap(), want);
    // both terms of ω₊² map to ±3E_γ₁∧E_γ₃
    let w = generator("w2+").unwrap().form;
    assert!(w.derivation_extend(&e).unwrap().is_zero());
}

#[test]
fn kernel_plus_rank_is_binomial() {
    let ops = [ad_operator(AdName::EAlpha1).matrix, ad_operator(AdName::EMinusAlpha1).matrix];
    for k in 1..=5 {
        let m = invariance_matrix(&ops, k, Exec::Sequential).unwrap();
        let kernel = joint_invariants(&ops, k, Exec::Sequential).unwrap();
        assert_eq!(kernel.len() + m.rank(), binom(DIM, k));
        assert_eq!(kernel.len(), DIMENSIONS[k - 1]);
    }
}

#[test]
fn no_operators_no_constraints() {
    // zero operator on a 4-space: all 2-forms are invariant
    let ops = [QMatrix::zeros(4, 4)];
    assert_eq!(joint_invariants(&ops, 2, Exec::Sequential).unwrap().len(), 6);
}

#[test]
fn hdelta_weights() {
    let h: Vec<Q> = [1, 1, 1, 1, 2, -1, -1, -1, -1, -2].iter().map(|&x| q(x)).collect();
    let w = |name: &str| generator(name).unwrap().form.weight(&h);
    assert_eq!(w("E_d"), Some(q(2)));
    assert_eq!(w("w2+"), Some(q(2)));
    assert_eq!(w("w2"), Some(q(0)));
    assert_eq!(w("w4-"), Some(q(-4)));
    let mixed = ExteriorForm::from_word(DIM, &[0], q(1)).unwrap().add(&ExteriorForm::from_word(DIM, &[4], q(1)).unwrap()).unwrap();
    assert_eq!(mixed.weight(&h), None);
    for nf in invariant_basis(5).unwrap() {
        assert_eq!(nf.form.weight(&h), Some(q(nf.hdelta_weight)));
    }
}

#[test]
fn product_term_counts() {
    let p = generator("w2+").unwrap().wedge(&generator("w2-").unwrap());
    assert_eq!(p.form.num_terms(), 4);
    assert_eq!(p.form.coeff(&[0, 3, 5, 8]), q(9));
    assert_eq!(p.form.coeff(&[1, 2, 6, 7]), q(1));
}

#[test]
fn tau_links_catalogue_pairs() {
    let cat = catalogue().unwrap();
    let t = tau();
    // w4+∧E_-d ↦ ±w4-∧E_d: the u44 row goes to the M⁴₄ row
    let img = t.pullback(&cat[7].form).unwrap();
    assert!(img.ratio_to(&cat[8].form).is_some());
    let p = restrict_to_lagrangian(&img).unwrap();
    assert!(p.is_proportional(&cat[8].poly));
    // τ is an involution up to sign on 5-forms
    for e in &cat {
        let back = t.pullback(&t.pullback(&e.form).unwrap()).unwrap();
        assert_eq!(back, e.form.scale(&q(-1)));
    }
    // every image stays inside the invariant 5-forms
    let basis: Vec<ExteriorForm> = invariant_basis(5).unwrap().into_iter().map(|n| n.form).collect();
    for e in &cat {
        assert!(in_span(&basis, &t.pullback(&e.form).unwrap()));
        assert!(in_span(&basis, &xi().pullback(&e.form).unwrap()));
    }
}
