use std::fmt;

use crate::cyclotomic::{Cyclotomic, Rational};

use super::{Coefficient, Monomial, Polynomial};

/// Number of parameters `y1, y2, y3`.
pub const NPARAMS: usize = 3;

/// A polynomial in the parameters `y1, y2, y3` with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamScalar(Polynomial<Cyclotomic>);

impl ParamScalar {
    pub fn from_poly(p: Polynomial<Cyclotomic>) -> Self {
        assert_eq!(p.nvars(), NPARAMS, "parameter polynomials use exactly three variables");
        ParamScalar(p)
    }

    /// The parameter `y_{i+1}`.
    pub fn param(i: usize) -> Self {
        ParamScalar(Polynomial::var(NPARAMS, i))
    }

    pub fn constant(c: Cyclotomic) -> Self {
        ParamScalar(Polynomial::constant(NPARAMS, c))
    }

    pub fn monomial(exps: [u32; NPARAMS], c: Cyclotomic) -> Self {
        ParamScalar(Polynomial::term(Monomial::new(exps.to_vec()), c))
    }

    pub fn as_poly(&self) -> &Polynomial<Cyclotomic> {
        &self.0
    }

    pub fn specialize(&self, y: &[Rational; NPARAMS]) -> Cyclotomic {
        let point: Vec<Cyclotomic> = y.iter().cloned().map(Cyclotomic::from_rational).collect();
        self.0.evaluate(&point).expect("three parameters")
    }
}

impl Coefficient for ParamScalar {
    fn zero() -> Self {
        ParamScalar(Polynomial::zero(NPARAMS))
    }
    fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        ParamScalar(&self.0 + &rhs.0)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        ParamScalar(&self.0 - &rhs.0)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        ParamScalar(&self.0 * &rhs.0)
    }
    fn neg_ref(&self) -> Self {
        ParamScalar(-&self.0)
    }
    fn from_cyclotomic(c: Cyclotomic) -> Self {
        Self::constant(c)
    }
    fn mul_cyclotomic(&self, c: &Cyclotomic) -> Self {
        ParamScalar(self.0.scale(c))
    }
    fn mul_zeta(&self, level: u8, exp: i64) -> Self {
        ParamScalar(self.0.map_coefficients(|c| c.mul_zeta(level, exp)))
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        self.0.fmt_with(f, &|i| format!("y{}", i + 1))?;
        write!(f, ")")
    }
}

impl Polynomial<ParamScalar> {
    /// Replaces the parameters by concrete rationals.
    pub fn specialize(&self, y: &[Rational; NPARAMS]) -> Polynomial<Cyclotomic> {
        self.map_coefficients(|c| c.specialize(y))
    }

    /// Evaluates at a point after specializing the parameters.
    pub fn evaluate_at(&self, point: &[Cyclotomic], y: &[Rational; NPARAMS]) -> crate::error::Result<Cyclotomic> {
        self.specialize(y).evaluate(point)
    }

    /// Flattens into `(x-monomial, y-monomial, coefficient)` triples.
    pub fn flat_terms(&self) -> Vec<(Monomial, Monomial, Cyclotomic)> {
        self.terms()
            .flat_map(|(xm, c)| c.as_poly().terms().map(move |(ym, k)| (xm.clone(), ym.clone(), k.clone())))
            .collect()
    }
}
