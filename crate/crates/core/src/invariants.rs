//! The invariant forms of `Λᵏ(m)` under `h′ = sl₂`, named after their
//! generators, and the twelve invariant 5-forms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{self, ExteriorForm, FormJson};
use crate::g2rep::{ad_operator, AdName, DIM};
use crate::par::{self, Exec};
use crate::rational::{q, to_i64, Q};

/// Invariant dimensions for `k = 1..5`.
pub const DIMENSIONS: [usize; 5] = [2, 4, 6, 9, 12];

#[derive(Clone, Debug, PartialEq)]
pub struct NamedForm {
    pub name: String,
    pub ascii: String,
    pub form: ExteriorForm,
    pub hdelta_weight: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedFormJson {
    pub name: String,
    pub hdelta_weight: i64,
    pub form: FormJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantSpaceJson {
    pub degree: usize,
    pub dimension: usize,
    pub generators: Vec<NamedFormJson>,
}

impl NamedForm {
    fn new(name: &str, ascii: &str, form: ExteriorForm) -> NamedForm {
        let diag: Vec<Q> = ad_operator(AdName::HDelta).matrix.diagonal_entries();
        let w = form.weight(&diag).expect("named forms are H_δ-eigenforms");
        NamedForm {
            name: name.into(),
            ascii: ascii.into(),
            form,
            hdelta_weight: to_i64(&w).expect("integral weight"),
        }
    }

    /// `self ∧ other` with the names joined.
    pub fn wedge(&self, other: &NamedForm) -> NamedForm {
        NamedForm::new(
            &format!("{}∧{}", self.name, other.name),
            &format!("{}^{}", self.ascii, other.ascii),
            self.form.wedge(&other.form).expect("same ambient space"),
        )
    }

    pub fn to_json(&self) -> NamedFormJson {
        NamedFormJson {
            name: self.ascii.clone(),
            hdelta_weight: self.hdelta_weight,
            form: self.form.to_json(),
        }
    }
}

fn sum(terms: &[(i64, &[usize])]) -> ExteriorForm {
    terms.iter().fold(ExteriorForm::zero(DIM, terms[0].1.len()), |acc, (c, w)| {
        acc.add(&ExteriorForm::from_word(DIM, w, q(*c)).unwrap()).unwrap()
    })
}

/// The eight generators `E_δ, E_−δ, ω₊², ω₋², ω², ω₊⁴, ω₋⁴, ω⁴`.
pub fn generators() -> Vec<NamedForm> {
    vec![
        NamedForm::new("E_δ", "E_d", sum(&[(1, &[4])])),
        NamedForm::new("E_−δ", "E_-d", sum(&[(1, &[9])])),
        NamedForm::new("ω₊²", "w2+", sum(&[(1, &[1, 2]), (-3, &[0, 3])])),
        NamedForm::new("ω₋²", "w2-", sum(&[(1, &[6, 7]), (-3, &[5, 8])])),
        NamedForm::new(
            "ω²",
            "w2",
            sum(&[(3, &[0, 5]), (1, &[1, 6]), (1, &[2, 7]), (3, &[3, 8])]),
        ),
        NamedForm::new("ω₊⁴", "w4+", sum(&[(1, &[0, 1, 2, 3])])),
        NamedForm::new("ω₋⁴", "w4-", sum(&[(1, &[5, 6, 7, 8])])),
        NamedForm::new(
            "ω⁴",
            "w4",
            sum(&[
                (1, &[0, 1, 5, 6]),
                (1, &[0, 2, 5, 7]),
                (1, &[0, 3, 6, 7]),
                (1, &[1, 2, 5, 8]),
                (1, &[1, 3, 6, 8]),
                (1, &[2, 3, 7, 8]),
            ]),
        ),
    ]
}

/// Looks up a generator by Unicode or ASCII name.
pub fn generator(name: &str) -> Result<NamedForm> {
    let gens = generators();
    let names: Vec<&str> = gens.iter().map(|g| g.ascii.as_str()).collect();
    gens.iter()
        .find(|g| g.name == name || g.ascii == name)
        .cloned()
        .ok_or_else(|| Error::unknown("generator", name, &names))
}

fn g(name: &str) -> NamedForm {
    generator(name).unwrap()
}

fn products(names: &[&[&str]]) -> Vec<NamedForm> {
    names
        .iter()
        .map(|factors| {
            let mut it = factors.iter().map(|n| g(n));
            let first = it.next().unwrap();
            it.fold(first, |acc, f| acc.wedge(&f))
        })
        .collect()
}

/// The named spanning products in degree `k`, without verification.
pub fn named_products(k: usize) -> Result<Vec<NamedForm>> {
    let list: &[&[&str]] = match k {
        1 => &[&["E_d"], &["E_-d"]],
        2 => &[&["E_d", "E_-d"], &["w2+"], &["w2-"], &["w2"]],
        3 => &[
            &["E_d", "w2+"],
            &["E_-d", "w2+"],
            &["E_d", "w2-"],
            &["E_-d", "w2-"],
            &["E_d", "w2"],
            &["E_-d", "w2"],
        ],
        4 => &[
            &["E_d", "E_-d", "w2+"],
            &["E_d", "E_-d", "w2-"],
            &["E_d", "E_-d", "w2"],
            &["w2+", "w2-"],
            &["w2+", "w2"],
            &["w2-", "w2"],
            &["w4+"],
            &["w4-"],
            &["w4"],
        ],
        5 => return Ok(twelve_five_forms_unchecked()),
        _ => return Err(Error::domain(format!("degree {k} outside 1..5"))),
    };
    Ok(products(list))
}

fn twelve_five_forms_unchecked() -> Vec<NamedForm> {
    products(&[
        &["w2+", "w2-", "E_d"],
        &["w2+", "w2-", "E_-d"],
        &["w2+", "w2", "E_d"],
        &["w2+", "w2", "E_-d"],
        &["w2-", "w2", "E_d"],
        &["w2-", "w2", "E_-d"],
        &["w4+", "E_d"],
        &["w4+", "E_-d"],
        &["w4-", "E_d"],
        &["w4-", "E_-d"],
        &["w4", "E_d"],
        &["w4", "E_-d"],
    ])
}

fn h_prime() -> [crate::linalg::QMatrix; 2] {
    [
        ad_operator(AdName::EAlpha1).matrix,
        ad_operator(AdName::EMinusAlpha1).matrix,
    ]
}

/// Checks that `named` is an `h′`-invariant basis of the solver's kernel in
/// degree `k`.
fn certify(k: usize, named: &[NamedForm], exec: Exec) -> Result<()> {
    let ops = h_prime();
    let solved = exterior::joint_invariants(&ops, k, exec)?;
    if solved.len() != DIMENSIONS[k - 1] {
        return Err(Error::Certificate(format!(
            "degree {k}: kernel has dimension {}, expected {}",
            solved.len(),
            DIMENSIONS[k - 1]
        )));
    }
    let h = ad_operator(AdName::HAlpha1).matrix;
    for nf in named {
        if !exterior::annihilates(&ops, &nf.form)? || !exterior::annihilates(std::slice::from_ref(&h), &nf.form)? {
            return Err(Error::Certificate(format!("{} is not invariant", nf.name)));
        }
        if !exterior::in_span(&solved, &nf.form) {
            return Err(Error::Certificate(format!("{} not in the kernel", nf.name)));
        }
    }
    let forms: Vec<ExteriorForm> = named.iter().map(|n| n.form.clone()).collect();
    if exterior::span_rank(&forms) != solved.len() || forms.len() != solved.len() {
        return Err(Error::Certificate(format!("degree {k}: named forms do not form a basis")));
    }
    Ok(())
}

/// Basis of `Λᵏ(m)^{h′}` made of named generator products, certified
/// against the linear solver.
pub fn invariant_basis(k: usize) -> Result<Vec<NamedForm>> {
    invariant_basis_with(k, Exec::default())
}

pub fn invariant_basis_with(k: usize, exec: Exec) -> Result<Vec<NamedForm>> {
    let named = named_products(k)?;
    certify(k, &named, exec)?;
    Ok(named)
}

/// All five degrees; degrees run concurrently under `exec`.
pub fn all_invariant_bases(exec: Exec) -> Result<Vec<Vec<NamedForm>>> {
    par::map_range(exec, 5, |i| invariant_basis_with(i + 1, Exec::Sequential))
        .into_iter()
        .collect()
}

/// The twelve invariant 5-forms in their standard order.
pub fn twelve_five_forms() -> Result<Vec<NamedForm>> {
    invariant_basis(5)
}

/// `H_δ`-weights of the eight generators and the twelve 5-forms, by ASCII name.
pub fn conformal_weights() -> BTreeMap<String, i64> {
    generators()
        .into_iter()
        .chain(twelve_five_forms_unchecked())
        .map(|n| (n.ascii, n.hdelta_weight))
        .collect()
}

pub fn space_json(k: usize, basis: &[NamedForm]) -> InvariantSpaceJson {
    InvariantSpaceJson {
        degree: k,
        dimension: basis.len(),
        generators: basis.iter().map(NamedForm::to_json).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_ladder() {
        for k in 1..=5 {
            assert_eq!(invariant_basis(k).unwrap().len(), DIMENSIONS[k - 1]);
        }
        assert!(invariant_basis(0).is_err());
        assert!(invariant_basis(6).is_err());
    }

    #[test]
    fn weights() {
        let w = conformal_weights();
        assert_eq!(w["E_d"], 2);
        assert_eq!(w["E_-d"], -2);
        assert_eq!(w["w2"], 0);
        assert_eq!(w["w4"], 0);
        assert_eq!(w["w4+"], 4);
        assert_eq!(w["w4-"], -4);
        assert_eq!(w["w2+^w2-^E_d"], 2);
        assert_eq!(w.len(), 20);
    }

    #[test]
    fn top_dx_form_is_single_term() {
        let f = &twelve_five_forms().unwrap()[6];
        assert_eq!(f.ascii, "w4+^E_d");
        assert_eq!(f.form.num_terms(), 1);
        assert_eq!(f.form.coeff(&[0, 1, 2, 3, 4]), q(1));
    }

    #[test]
    fn omega_plus_minus_product() {
        // E_γ₁∧E_γ₂∧E_−γ₁∧E_−γ₂ − 3(…) + 9E_γ₀∧E_γ₃∧E_−γ₀∧E_−γ₃
        let p = g("w2+").wedge(&g("w2-")).form;
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coeff(&[1, 2, 6, 7]), q(1));
        assert_eq!(p.coeff(&[0, 3, 5, 8]), q(9));
        assert_eq!(p.coeff(&[1, 2, 5, 8]), q(-3));
        assert_eq!(p.coeff(&[0, 3, 6, 7]), q(-3));
    }

    #[test]
    fn unknown_generator() {
        assert!(matches!(generator("w6"), Err(Error::UnknownName { .. })));
    }
}
