//! Sparse multivariate polynomials, parametric coefficients and Gröbner bases.

mod groebner;
mod monomial;
mod param;
mod polynomial;

pub use groebner::{
    buchberger, ideal_is_trivial, projective_emptiness, projective_zero_set_empty, EmptinessCertificate,
    GroebnerBasis, MonomialOrder,
};
pub use monomial::Monomial;
pub use param::ParamScalar;
pub use polynomial::{Coefficient, Polynomial};
