use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::monomial::MonomialMatrix;

use super::Monomial;

/// Coefficient ring of a [`Polynomial`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_cyclotomic(c: Cyclotomic) -> Self;
    fn mul_cyclotomic(&self, c: &Cyclotomic) -> Self;
    /// Multiplies by `zeta_{2^level}^exp`.
    fn mul_zeta(&self, level: u8, exp: i64) -> Self;
}

impl Coefficient for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_cyclotomic(c: Cyclotomic) -> Self {
        c
    }
    fn mul_cyclotomic(&self, c: &Cyclotomic) -> Self {
        self * c
    }
    fn mul_zeta(&self, level: u8, exp: i64) -> Self {
        Cyclotomic::mul_zeta(self, level, exp)
    }
}

/// Sparse polynomial in a fixed number of variables; terms are kept in
/// degree-reverse-lexicographic order with no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::RingMismatch(nvars, e.len()));
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True for the zero polynomial and for polynomials whose terms share one degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d.mul_ref(c))).filter(|(_, d)| !d.is_zero()).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let terms =
            self.terms.iter().map(|(n, d)| (n.mul(m), d.mul_ref(c))).filter(|(_, d)| !d.is_zero()).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c.mul_cyclotomic(&Cyclotomic::from_int(i64::from(e))));
        }
        out
    }

    /// Pullback under the substitution `x_j -> zeta_N^phase_j * x_{perm(j)}`.
    pub fn pullback(&self, g: &MonomialMatrix) -> Result<Self> {
        if g.size() != self.nvars {
            return Err(Error::RingMismatch(self.nvars, g.size()));
        }
        let level = crate::cyclotomic::level_of_order(u64::from(g.root_order()))?;
        let n = i64::from(g.root_order());
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.nvars];
            let mut phase = 0i64;
            for (j, &e) in m.exponents().iter().enumerate() {
                exps[g.perm()[j]] += e;
                phase += i64::from(g.phases()[j]) * i64::from(e);
            }
            out.add_term(Monomial::new(exps), c.mul_zeta(level, phase.rem_euclid(n)));
        }
        Ok(out)
    }

    /// Substitutes `x_i -> images[i]`; the result lives in the ring of the images.
    pub fn compose(&self, images: &[Polynomial<C>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::RingMismatch(target, bad.nvars));
        }
        let mut powers: Vec<Vec<Polynomial<C>>> = images.iter().map(|p| vec![Self::constant(target, C::one()), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().expect("nonempty").checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                acc = acc.checked_mul(&powers[i][e])?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!("point of length {} for {} variables", point.len(), self.nvars)));
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Renders terms in descending order as `coeff*monomial` joined by ` + `.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*")?;
                m.fmt_with(f, name)?;
            }
        }
        Ok(())
    }

    pub fn display_with<'a>(&'a self, prefix: &'a str) -> impl fmt::Display + 'a {
        struct Named<'a, C>(&'a Polynomial<C>, &'a str);
        impl<C: Coefficient> fmt::Display for Named<'_, C> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, &|i| format!("{}{i}", self.1))
            }
        }
        Named(self, prefix)
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{i}"))
    }
}

/// The operator forms panic on mismatched rings; use the `checked_*` methods to recover.
impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect();
        Polynomial { nvars: self.nvars, terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;

    type P = Polynomial<Cyclotomic>;

    fn x(i: usize) -> P {
        P::var(8, i)
    }

    #[test]
    fn arithmetic_examples() {
        let p = &x(0) + &x(4);
        assert_eq!(&p + &P::zero(8), p);
        let prod = &(&x(0) + &x(4)) * &(&x(0) - &x(4));
        assert_eq!(prod, &(&x(0) * &x(0)) - &(&x(4) * &x(4)));
        assert!(matches!(x(0).checked_add(&P::var(3, 0)), Err(Error::RingMismatch(8, 3))));
    }

    #[test]
    fn derivatives() {
        let q = &(&x(0) * &x(0)) + &(&x(4) * &x(4));
        assert_eq!(q.partial_derivative(0), x(0).scale(&Cyclotomic::from_int(2)));
        assert!((&x(1) * &x(7)).partial_derivative(3).is_zero());
    }

    #[test]
    fn pullback_by_tau_fixes_x1x7() {
        let tau = MonomialMatrix::diagonal((0..8).map(|i| -i).collect(), 8).unwrap();
        let p = &x(1) * &x(7);
        assert_eq!(p.pullback(&tau).unwrap(), p);
        // oracle: tau(x1) tau(x3) = zeta^-4 x1 x3 = -x1 x3
        let p = &x(1) * &x(3);
        assert_eq!(p.pullback(&tau).unwrap(), -&p);
        let identity = MonomialMatrix::identity(8, 8);
        assert_eq!(p.pullback(&identity).unwrap(), p);
    }

    #[test]
    fn pullback_matches_evaluation_contract() {
        let g = MonomialMatrix::new(vec![3, 0, 1, 2, 5, 7, 4, 6], vec![1, 0, 5, 3, 0, 2, 7, 4], 8).unwrap();
        let q = &(&x(0) * &x(5)).scale(&root_of_unity(8, 3).unwrap()) + &(&x(2) * &x(2));
        let p: Vec<Cyclotomic> = (0..8).map(|i| Cyclotomic::from_int(i + 2)).collect();
        let lhs = q.pullback(&g).unwrap().evaluate(&p).unwrap();
        let rhs = q.evaluate(&g.apply_to_point(&p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_with_linear_forms() {
        // (s0 + s1)^2 restricted from x0^2
        let s0 = P::var(2, 0);
        let s1 = P::var(2, 1);
        let q = &x(0) * &x(0);
        let mut images = vec![P::zero(2); 8];
        images[0] = &s0 + &s1;
        let r = q.compose(&images).unwrap();
        let expected = &(&(&s0 * &s0) + &(&s0 * &s1).scale(&Cyclotomic::from_int(2))) + &(&s1 * &s1);
        assert_eq!(r, expected);
    }

    #[test]
    fn rendering_is_descending() {
        let q = &(&x(4) * &x(4)) + &(&x(0) * &x(0)).scale(&Cyclotomic::from_int(3));
        assert_eq!(q.to_string(), "3*x0^2 + 1*x4^2");
        assert_eq!(q.display_with("s").to_string(), "3*s0^2 + 1*s4^2");
    }
}
