//! Exterior algebra over an ordered basis, with rational or polynomial
//! coefficients, and the linear algebra of invariant forms.

pub mod form;
pub mod poly;
pub mod solve;

pub use form::{Coefficient, ExteriorForm, FormJson, FormTermJson, MultiIndex};
pub use poly::{Monomial, PolyTermJson, PolyU};
pub use solve::{annihilates, eigen_filter, in_span, joint_invariants, span_rank};
