//! Pointwise dictionary between para-Hermitian data `(g, I)` and
//! bi-Lagrangian data `(ω, I)` on a single vector space.
//!
//! Bilinear forms are matrices with `B(v, w) = vᵀ B w`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::par::Exec;
use crate::rational::Q;

/// An involution `I` with `I² = 1` whose `±1` eigenspaces have equal dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParaComplexOp {
    matrix: QMatrix,
}

impl ParaComplexOp {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        let n = matrix.rows();
        if !matrix.is_square() || !n.is_multiple_of(2) || n == 0 {
            return Err(Error::Precondition("I must be a square matrix of even size".into()));
        }
        if &matrix * &matrix != QMatrix::identity(n) {
            return Err(Error::Precondition("I² ≠ identity".into()));
        }
        if !matrix.trace().is_zero() {
            return Err(Error::Precondition("trace(I) ≠ 0: eigenspaces of unequal dimension".into()));
        }
        Ok(ParaComplexOp { matrix })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Basis of the `+1` (`positive = true`) or `−1` eigenspace.
    pub fn eigenspace(&self, positive: bool) -> Vec<Vec<Q>> {
        let id = QMatrix::identity(self.dim());
        let shifted = if positive {
            &self.matrix - &id
        } else {
            &self.matrix + &id
        };
        shifted.nullspace(Exec::Sequential)
    }

    /// `Iᵀ B I == sign · B`.
    fn conjugates_to(&self, b: &QMatrix, negate: bool) -> bool {
        let c = &(&self.matrix.transpose() * b) * &self.matrix;
        if negate {
            c == -b
        } else {
            c == *b
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Antisymmetric,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: QMatrix,
    kind: FormKind,
}

impl BilinearForm {
    pub fn new(matrix: QMatrix, kind: FormKind) -> Result<Self> {
        let ok = match kind {
            FormKind::Symmetric => matrix.is_symmetric(),
            FormKind::Antisymmetric => matrix.is_antisymmetric(),
        };
        if !ok {
            return Err(Error::Precondition(format!("matrix is not {kind:?}")));
        }
        Ok(BilinearForm { matrix, kind })
    }

    pub fn symmetric(matrix: QMatrix) -> Result<Self> {
        Self::new(matrix, FormKind::Symmetric)
    }

    pub fn antisymmetric(matrix: QMatrix) -> Result<Self> {
        Self::new(matrix, FormKind::Antisymmetric)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.matrix.rows()
    }

    pub fn eval(&self, v: &[Q], w: &[Q]) -> Q {
        v.iter()
            .zip(self.matrix.apply(w))
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    /// True when the form vanishes on the span of `basis`.
    pub fn vanishes_on(&self, basis: &[Vec<Q>]) -> bool {
        basis
            .iter()
            .all(|v| basis.iter().all(|w| self.eval(v, w).is_zero()))
    }
}

fn check_dims(b: &BilinearForm, i: &ParaComplexOp) -> Result<()> {
    if b.matrix.rows() != i.dim() {
        return Err(Error::domain("form and para-complex structure differ in dimension"));
    }
    Ok(())
}

/// `ω(v, w) = g(v, I w)`.
pub fn kaehler_form(g: &BilinearForm, i: &ParaComplexOp) -> Result<BilinearForm> {
    check_dims(g, i)?;
    if g.kind != FormKind::Symmetric || !g.is_nondegenerate() {
        return Err(Error::Precondition("g must be symmetric and nondegenerate".into()));
    }
    // eigenspaces are g-isotropic iff g(Iv, Iw) = −g(v, w)
    if !i.conjugates_to(&g.matrix, true) {
        return Err(Error::Precondition("eigenspaces of I are not g-isotropic".into()));
    }
    BilinearForm::antisymmetric(&g.matrix * &i.matrix)
}

/// `g(v, w) = −ω(I v, w)`; inverse of [`kaehler_form`].
pub fn metric_from_symplectic(omega: &BilinearForm, i: &ParaComplexOp) -> Result<BilinearForm> {
    check_dims(omega, i)?;
    if omega.kind != FormKind::Antisymmetric || !omega.is_nondegenerate() {
        return Err(Error::Precondition("ω must be antisymmetric and nondegenerate".into()));
    }
    if !i.conjugates_to(&omega.matrix, true) {
        return Err(Error::Precondition("eigenspaces of I are not ω-Lagrangian".into()));
    }
    BilinearForm::symmetric(-&(&i.matrix.transpose() * &omega.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn standard_i(n: usize) -> ParaComplexOp {
        let d: Vec<Q> = (0..2 * n).map(|k| if k < n { q(1) } else { q(-1) }).collect();
        ParaComplexOp::new(QMatrix::diagonal(&d)).unwrap()
    }

    #[test]
    fn two_by_two_examples() {
        let i = standard_i(1);
        let g = BilinearForm::symmetric(QMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let w = kaehler_form(&g, &i).unwrap();
        assert_eq!(*w.matrix(), QMatrix::from_i64(&[&[0, -1], &[1, 0]]));
        let back = metric_from_symplectic(&w, &i).unwrap();
        assert_eq!(back, g);
        assert!(w.vanishes_on(&i.eigenspace(true)));
        assert!(w.vanishes_on(&i.eigenspace(false)));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(ParaComplexOp::new(QMatrix::identity(2)).is_err());
        assert!(ParaComplexOp::new(QMatrix::from_i64(&[&[1, 1], &[0, -1]])).is_ok());
        assert!(ParaComplexOp::new(QMatrix::from_i64(&[&[1, 1], &[1, -1]])).is_err());
        let i = standard_i(1);
        let not_isotropic = BilinearForm::symmetric(QMatrix::identity(2)).unwrap();
        assert!(matches!(kaehler_form(&not_isotropic, &i), Err(Error::Precondition(_))));
        assert!(BilinearForm::antisymmetric(QMatrix::identity(2)).is_err());
    }
}
