//! Buchberger's algorithm over the cyclotomic fields, degree-reverse-lexicographic order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

use super::{Monomial, Polynomial};

type Poly = Polynomial<Cyclotomic>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum MonomialOrder {
    /// Degree-reverse-lexicographic with `x0 > x1 > ...`; the only order in use.
    #[default]
    DegRevLex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    nvars: usize,
    generators: Vec<Poly>,
    order: MonomialOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    /// Remainder of `f` under full reduction by the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        reduce(f, &self.generators)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        ideal_is_trivial(self)
    }

    /// Reduces every S-polynomial of basis pairs and reports whether all vanish.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| reduce(&s_polynomial(&g[i], &g[j]), g).is_zero()))
    }

    /// True if leading coefficients are 1 and no term of a generator is divisible
    /// by another generator's leading monomial.
    pub fn satisfies_reducedness(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            g.leading_term().is_some_and(|(_, c)| c.is_one())
                && g.terms().all(|(m, _)| lms.iter().enumerate().all(|(k, l)| k == i || !l.divides(m)))
        })
    }
}

fn monic(p: &Poly) -> Poly {
    match p.leading_term() {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv().expect("leading coefficient is nonzero")),
        _ => p.clone(),
    }
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).expect("lcm"), gc);
    let b = g.mul_term(&l.div(gm).expect("lcm"), fc);
    &a - &b
}

/// Full reduction; the divisors need not be monic.
fn reduce(f: &Poly, divisors: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut remainder = Poly::zero(f.nvars());
    let leads: Vec<(&Monomial, Cyclotomic)> = divisors
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (m, c.inv().expect("nonzero"))))
        .collect();
    let live: Vec<&Poly> = divisors.iter().filter(|g| !g.is_zero()).collect();
    while let Some((m, c)) = p.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        match leads.iter().position(|(l, _)| l.divides(&m)) {
            Some(k) => {
                let factor = &c * &leads[k].1;
                let quotient = m.div(leads[k].0).expect("divides");
                p = &p - &live[k].mul_term(&quotient, &factor);
            }
            None => {
                remainder.add_term(m.clone(), c.clone());
                p.add_term(m, -c);
            }
        }
    }
    remainder
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (smallest lcm, ties by lowest
/// index pair); the coprime and chain criteria discard pairs. All-zero input
/// yields the empty basis of the zero ideal.
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(0, Poly::nvars);
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::RingMismatch(nvars, bad.nvars()));
    }
    let mut basis: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(monic).collect();
    if basis.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one)) {
        return Ok(GroebnerBasis { nvars, generators: vec![Poly::constant(nvars, Cyclotomic::one())], order, reduced: true });
    }
    let mut pending: BTreeSet<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();

    while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
        let la = lm(&basis[a.0]).lcm(lm(&basis[a.1]));
        let lb = lm(&basis[b.0]).lcm(lm(&basis[b.1]));
        la.cmp(&lb).then(a.cmp(b))
    }) {
        pending.remove(&(i, j));
        let (mi, mj) = (lm(&basis[i]), lm(&basis[j]));
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = monic(&r);
        if lm(&r).is_one() {
            return Ok(GroebnerBasis { nvars, generators: vec![r], order, reduced: true });
        }
        let n = basis.len();
        basis.push(r);
        pending.extend((0..n).map(|k| (k, n)));
    }

    Ok(GroebnerBasis { nvars, generators: interreduce(basis), order, reduced: true })
}

fn lm(p: &Poly) -> &Monomial {
    p.leading_monomial().expect("basis elements are nonzero")
}

fn interreduce(basis: Vec<Poly>) -> Vec<Poly> {
    // keep only generators whose leading monomial is not divisible by another's
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && lm(h).divides(lm(g)) && (lm(h) != lm(g) || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Poly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly> =
                minimal.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, h)| h.clone()).collect();
            monic(&reduce(&minimal[i], &others))
        })
        .collect();
    out.sort_by(|a, b| lm(a).cmp(lm(b)));
    out
}

/// True iff the reduced basis contains a nonzero constant.
pub fn ideal_is_trivial(gb: &GroebnerBasis) -> bool {
    gb.generators.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
}

/// Outcome of the pure-power test on a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct EmptinessCertificate {
    pub empty: bool,
    pub basis: GroebnerBasis,
    /// Variables with no pure power among the leading monomials.
    pub missing_pure_powers: Vec<usize>,
}

/// Decides whether homogeneous `gens` have a common projective zero over the
/// algebraic closure: the zero set is empty iff the leading monomials of the
/// reduced basis include a pure power of every variable.
pub fn projective_emptiness(gens: &[Poly]) -> Result<EmptinessCertificate> {
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let basis = buchberger(gens, MonomialOrder::DegRevLex)?;
    let nvars = basis.nvars;
    let missing_pure_powers: Vec<usize> = if ideal_is_trivial(&basis) {
        Vec::new()
    } else {
        let lms = basis.leading_monomials();
        (0..nvars).filter(|&v| !lms.iter().any(|m| m.pure_power_of() == Some(v))).collect()
    };
    Ok(EmptinessCertificate { empty: missing_pure_powers.is_empty(), basis, missing_pure_powers })
}

pub fn projective_zero_set_empty(gens: &[Poly]) -> Result<bool> {
    projective_emptiness(gens).map(|c| c.empty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn c(k: i64, n: usize) -> Poly {
        Poly::constant(n, Cyclotomic::from_int(k))
    }

    fn gb(gens: &[Poly]) -> GroebnerBasis {
        let b = buchberger(gens, MonomialOrder::DegRevLex).unwrap();
        assert!(b.s_pairs_reduce_to_zero());
        assert!(b.satisfies_reducedness());
        b
    }

    #[test]
    fn monomial_ideal_is_already_reduced() {
        let b = gb(&[v(3, 1), v(3, 2)]);
        assert_eq!(b.generators().len(), 2);
        assert!(b.generators().contains(&v(3, 1)) && b.generators().contains(&v(3, 2)));
        assert!(!ideal_is_trivial(&b));
    }

    #[test]
    fn coprime_leading_terms() {
        let (x, y) = (v(2, 0), v(2, 1));
        let f = &x - &y;
        let g = &y * &y;
        let b = gb(&[f.clone(), g.clone()]);
        assert_eq!(b.generators(), &[f, g]);
    }

    #[test]
    fn inconsistent_system_gives_unit_ideal() {
        // (x^2 + 1) - (x + 1)(x - 1) = 2
        let x = v(1, 0);
        let b = gb(&[&(&x * &x) + &c(1, 1), &x - &c(1, 1)]);
        assert_eq!(b.generators(), &[c(1, 1)]);
        assert!(ideal_is_trivial(&b));
        assert!(!ideal_is_trivial(&gb(&[v(3, 1), v(3, 2)])));
    }

    #[test]
    fn zero_ideal() {
        let b = gb(&[Poly::zero(2), Poly::zero(2)]);
        assert!(b.generators().is_empty());
        assert!(!b.is_trivial());
    }

    #[test]
    fn projective_emptiness_examples() {
        let (s0, s1) = (v(2, 0), v(2, 1));
        assert!(projective_zero_set_empty(&[&s0 * &s0, &s1 * &s1]).unwrap());
        let cert = projective_emptiness(&[&s0 * &s1]).unwrap();
        assert!(!cert.empty);
        assert_eq!(cert.missing_pure_powers, vec![0, 1]);
        assert!(matches!(projective_zero_set_empty(&[&s0 + &c(1, 2)]), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn cyclic_three_roots_in_projective_form() {
        // x^2 - yz, y^2 - xz, z^2 - xy has the projective zeros (1:w:w^2)
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let gens = [&(&x * &x) - &(&y * &z), &(&y * &y) - &(&x * &z), &(&z * &z) - &(&x * &y)];
        assert!(!projective_zero_set_empty(&gens).unwrap());
        let gens = [&x * &x, &y * &y, &(&z * &z) - &(&x * &y)];
        assert!(projective_zero_set_empty(&gens).unwrap());
    }
}
