use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::par::{self, Exec};
use crate::rational::{self, Q};

use super::form::{ExteriorForm, MultiIndex};

/// Stacked matrices of the derivation extensions of `ops` on `Λ^k`, in the
/// lexicographic multi-index basis.
pub fn invariance_matrix(ops: &[QMatrix], k: usize, exec: Exec) -> Result<QMatrix> {
    let dim = ops
        .first()
        .map(QMatrix::rows)
        .ok_or_else(|| Error::domain("no operators given"))?;
    if ops.iter().any(|x| !x.is_square() || x.rows() != dim) {
        return Err(Error::domain("operators differ in dimension"));
    }
    let basis = MultiIndex::all(dim, k);
    let n = basis.len();
    // one column per basis k-vector
    let cols: Vec<Result<Vec<Vec<Q>>>> = par::map(exec, &basis, |idx| {
        let f = ExteriorForm::from_coords(dim, std::slice::from_ref(idx), &[Q::from_integer(1.into())]);
        ops.iter()
            .map(|x| Ok(f.derivation_extend(x)?.to_coords(&basis)))
            .collect()
    });
    let mut m = QMatrix::zeros(ops.len() * n, n);
    for (j, col) in cols.into_iter().enumerate() {
        for (o, image) in col?.into_iter().enumerate() {
            for (i, v) in image.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(o * n + i, j, v);
                }
            }
        }
    }
    Ok(m)
}

/// Basis of the `k`-forms annihilated by every operator in `ops`.
///
/// The basis is canonical: the reduced echelon basis of the kernel with each
/// vector scaled to a primitive integer vector with positive leading entry.
pub fn joint_invariants(ops: &[QMatrix], k: usize, exec: Exec) -> Result<Vec<ExteriorForm>> {
    let m = invariance_matrix(ops, k, exec)?;
    let dim = ops[0].rows();
    let basis = MultiIndex::all(dim, k);
    let kernel = m.nullspace(exec);
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let (r, pivots) = QMatrix::from_rows(kernel).rref(exec);
    Ok(r.to_rows()
        .into_iter()
        .take(pivots.len())
        .map(|row| ExteriorForm::from_coords(dim, &basis, &rational::primitive(&row)))
        .collect())
}

/// True when every operator kills `form`.
pub fn annihilates(ops: &[QMatrix], form: &ExteriorForm) -> Result<bool> {
    for x in ops {
        if !form.derivation_extend(x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn coords_of(forms: &[ExteriorForm]) -> Vec<Vec<Q>> {
    let Some(first) = forms.first() else {
        return Vec::new();
    };
    let basis = MultiIndex::all(first.dim(), first.degree());
    forms.iter().map(|f| f.to_coords(&basis)).collect()
}

/// Dimension of the span of `forms` (all of one degree and dimension).
pub fn span_rank(forms: &[ExteriorForm]) -> usize {
    linalg::rank_of(&coords_of(forms))
}

/// True when `f` lies in the span of `forms`.
pub fn in_span(forms: &[ExteriorForm], f: &ExteriorForm) -> bool {
    let mut all = forms.to_vec();
    all.push(f.clone());
    span_rank(&all) == span_rank(forms)
}

/// Basis of the weight-`w` components of `forms` under the diagonal operator `h`.
pub fn eigen_filter(h: &QMatrix, w: i64, forms: &[ExteriorForm]) -> Result<Vec<ExteriorForm>> {
    if !h.is_square() || !h.is_diagonal() {
        return Err(Error::domain("weight operator must be diagonal"));
    }
    let diag = h.diagonal_entries();
    let target = Q::from_integer(w.into());
    let Some(first) = forms.first() else {
        return Ok(Vec::new());
    };
    if first.dim() != diag.len() {
        return Err(Error::domain("weight operator and forms differ in dimension"));
    }
    let (dim, k) = (first.dim(), first.degree());
    let basis = MultiIndex::all(dim, k);
    let rows: Vec<Vec<Q>> = forms
        .iter()
        .map(|f| {
            basis
                .iter()
                .map(|i| {
                    if ExteriorForm::<Q>::index_weight(i, &diag) == target {
                        f.coeff(i.as_slice())
                    } else {
                        Q::zero()
                    }
                })
                .collect()
        })
        .collect();
    let (r, pivots) = QMatrix::from_rows(rows).rref(Exec::Sequential);
    Ok(r.to_rows()
        .into_iter()
        .take(pivots.len())
        .map(|row| ExteriorForm::from_coords(dim, &basis, &rational::primitive(&row)))
        .collect())
}
