use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::monomial::MonomialMatrix;
use crate::poly::{Coefficient, Monomial, ParamScalar, Polynomial};

pub const NCOORDS: usize = 8;

/// Quadrics in `x0..x7` whose coefficients are polynomials in `y1, y2, y3`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSystem {
    quadrics: Vec<Polynomial<ParamScalar>>,
}

impl QuadricSystem {
    pub fn new(quadrics: Vec<Polynomial<ParamScalar>>) -> Result<Self> {
        if quadrics.is_empty() {
            return Err(Error::Invalid("a quadric system needs at least one polynomial".into()));
        }
        if let Some(q) = quadrics.iter().find(|q| q.nvars() != NCOORDS) {
            return Err(Error::RingMismatch(NCOORDS, q.nvars()));
        }
        Ok(QuadricSystem { quadrics })
    }

    /// A system with constant coefficients.
    pub fn from_constant(polys: Vec<Polynomial<Cyclotomic>>) -> Result<Self> {
        Self::new(polys.iter().map(|p| p.map_coefficients(|c| ParamScalar::constant(c.clone()))).collect())
    }

    pub fn quadrics(&self) -> &[Polynomial<ParamScalar>] {
        &self.quadrics
    }

    pub fn len(&self) -> usize {
        self.quadrics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quadrics.is_empty()
    }

    pub fn specialize(&self, y: &[Rational; 3]) -> Vec<Polynomial<Cyclotomic>> {
        self.quadrics.iter().map(|q| q.specialize(y)).collect()
    }

    /// The point `(0 : y1 : y2 : y3 : 0 : -y3 : -y2 : -y1)` with symbolic coordinates.
    pub fn symbolic_base_point() -> Vec<ParamScalar> {
        let y = |i: usize| ParamScalar::param(i);
        let z = ParamScalar::zero();
        vec![z.clone(), y(0), y(1), y(2), z, y(2).neg_ref(), y(1).neg_ref(), y(0).neg_ref()]
    }

    pub fn base_point(y: &[Rational; 3]) -> Vec<Cyclotomic> {
        Self::symbolic_base_point().iter().map(|c| c.specialize(y)).collect()
    }
}

/// The four quadrics `q_k`, `k = 0..3`:
/// `y1 y3 (x_k^2 + x_{k+4}^2) - y2^2 (x_{k+1} x_{k+7} + x_{k+3} x_{k+5}) + (y1^2 + y3^2) x_{k+2} x_{k+6}`,
/// indices mod 8.
pub fn build_quadrics() -> QuadricSystem {
    let one = || Cyclotomic::one();
    let square = ParamScalar::monomial([1, 0, 1], one());
    let cross = ParamScalar::monomial([0, 2, 0], Cyclotomic::from_int(-1));
    let middle = ParamScalar::monomial([2, 0, 0], one()).add_ref(&ParamScalar::monomial([0, 0, 2], one()));
    let x = |i: usize| Polynomial::<ParamScalar>::var(NCOORDS, i % NCOORDS);
    let quadrics = (0..4)
        .map(|k| {
            let squares = &(&x(k) * &x(k)) + &(&x(k + 4) * &x(k + 4));
            let crosses = &(&x(k + 1) * &x(k + 7)) + &(&x(k + 3) * &x(k + 5));
            let mid = &x(k + 2) * &x(k + 6);
            &(&squares.scale(&square) + &crosses.scale(&cross)) + &mid.scale(&middle)
        })
        .collect();
    QuadricSystem { quadrics }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InvarianceOutcome {
    /// `pullback(q_i) = sum_j matrix[i][j] q_j` identically in `x` and `y`.
    Invariant { matrix: ExactMatrix },
    /// No scalar combination matches `pullback(q_quadric)`; the coefficient of
    /// this `(x, y)` monomial is the first one that cannot be matched.
    Failure { quadric: usize, x_monomial: Monomial, y_monomial: Monomial },
}

impl InvarianceOutcome {
    pub fn is_invariant(&self) -> bool {
        matches!(self, InvarianceOutcome::Invariant { .. })
    }
}

/// Matches the pullback of every quadric against the span of the system,
/// treating each `(x-monomial, y-monomial)` pair as an independent coordinate.
pub fn check_ideal_invariance(g: &MonomialMatrix, sys: &QuadricSystem) -> Result<InvarianceOutcome> {
    let flats: Vec<Vec<(Monomial, Monomial, Cyclotomic)>> = sys.quadrics.iter().map(|q| q.flat_terms()).collect();
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::with_capacity(sys.len());
    for (i, q) in sys.quadrics.iter().enumerate() {
        let target = q.pullback(g)?.flat_terms();
        let mut coords: Vec<(Monomial, Monomial)> =
            flats.iter().flatten().chain(&target).map(|(xm, ym, _)| (xm.clone(), ym.clone())).collect();
        coords.sort_by(|a, b| b.cmp(a));
        coords.dedup();
        let lookup = |terms: &[(Monomial, Monomial, Cyclotomic)], key: &(Monomial, Monomial)| {
            terms
                .iter()
                .find(|(xm, ym, _)| xm == &key.0 && ym == &key.1)
                .map_or_else(Cyclotomic::zero, |(_, _, c)| c.clone())
        };
        let a_rows: Vec<Vec<Cyclotomic>> =
            coords.iter().map(|k| flats.iter().map(|f| lookup(f, k)).collect()).collect();
        let b: Vec<Cyclotomic> = coords.iter().map(|k| lookup(&target, k)).collect();
        let a = ExactMatrix::from_rows(a_rows.clone())?;
        match a.solve(&b)? {
            Some(m) => rows.push(m),
            None => {
                let bad = (1..=coords.len())
                    .find(|&r| {
                        let prefix = ExactMatrix::from_rows(a_rows[..r].to_vec()).expect("rectangular");
                        matches!(prefix.solve(&b[..r]), Ok(None))
                    })
                    .expect("the full system is inconsistent");
                let (x_monomial, y_monomial) = coords[bad - 1].clone();
                return Ok(InvarianceOutcome::Failure { quadric: i, x_monomial, y_monomial });
            }
        }
    }
    Ok(InvarianceOutcome::Invariant { matrix: ExactMatrix::from_rows(rows)? })
}

/// One term of a quadric in the custom system file format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricTerm {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub coeff: Cyclotomic,
}

/// A custom system: one list of terms per polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuadricFile(pub Vec<Vec<QuadricTerm>>);

impl QuadricFile {
    pub fn into_system(self) -> Result<QuadricSystem> {
        if self.0.len() != 4 {
            return Err(Error::Invalid(format!("expected 4 polynomials, found {}", self.0.len())));
        }
        let quadrics = self
            .0
            .into_iter()
            .map(|terms| {
                let mut p = Polynomial::<ParamScalar>::zero(NCOORDS);
                for t in terms {
                    if t.x.len() != NCOORDS || t.y.len() != 3 {
                        return Err(Error::Dimension(format!(
                            "term needs 8 x-exponents and 3 y-exponents, got {} and {}",
                            t.x.len(),
                            t.y.len()
                        )));
                    }
                    let y = [t.y[0], t.y[1], t.y[2]];
                    p.add_term(Monomial::new(t.x), ParamScalar::monomial(y, t.coeff));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        QuadricSystem::new(quadrics)
    }

    pub fn from_system(sys: &QuadricSystem) -> Self {
        QuadricFile(
            sys.quadrics()
                .iter()
                .map(|q| {
                    q.flat_terms()
                        .into_iter()
                        .map(|(xm, ym, coeff)| QuadricTerm { x: xm.exponents().to_vec(), y: ym.exponents().to_vec(), coeff })
                        .collect()
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{rational, root_of_unity};
    use crate::group::{make_sigma, make_tau};

    fn xm(pairs: &[(usize, u32)]) -> Monomial {
        let mut e = vec![0; 8];
        for &(i, k) in pairs {
            e[i] += k;
        }
        Monomial::new(e)
    }

    fn y(a: i64, b: i64, c: i64) -> [Rational; 3] {
        [rational(a, 1), rational(b, 1), rational(c, 1)]
    }

    fn ym(e: [u32; 3]) -> ParamScalar {
        ParamScalar::monomial(e, Cyclotomic::one())
    }

    #[test]
    fn quadric_coefficients_match_the_display() {
        let sys = build_quadrics();
        let q = sys.quadrics();
        let mid = ym([2, 0, 0]).add_ref(&ym([0, 0, 2]));
        assert_eq!(q[0].coefficient(&xm(&[(2, 1), (6, 1)])), mid);
        assert_eq!(q[3].coefficient(&xm(&[(5, 1), (1, 1)])), mid);
        assert_eq!(q[0].coefficient(&xm(&[(0, 2)])), ym([1, 0, 1]));
        assert_eq!(q[1].coefficient(&xm(&[(2, 1), (0, 1)])), ym([0, 2, 0]).neg_ref());
        for (k, qk) in q.iter().enumerate() {
            // square pair, two crosses, middle term
            assert_eq!(qk.len(), 5);
            assert!(qk.is_homogeneous() && qk.total_degree() == Some(2));
            let at = |pairs: &[(usize, u32)]| qk.coefficient(&xm(pairs));
            let s = |i: usize| (k + i) % 8;
            assert_eq!(at(&[(s(0), 2)]), ym([1, 0, 1]));
            assert_eq!(at(&[(s(4), 2)]), ym([1, 0, 1]));
            assert_eq!(at(&[(s(1), 1), (s(7), 1)]), ym([0, 2, 0]).neg_ref());
            assert_eq!(at(&[(s(3), 1), (s(5), 1)]), ym([0, 2, 0]).neg_ref());
            assert_eq!(at(&[(s(2), 1), (s(6), 1)]), mid);
        }
    }

    #[test]
    fn evaluation_examples() {
        let sys = build_quadrics();
        let mut e0 = vec![Cyclotomic::zero(); 8];
        e0[0] = Cyclotomic::one();
        assert_eq!(sys.quadrics()[0].evaluate_at(&e0, &y(1, 2, 3)).unwrap(), Cyclotomic::from_int(3));
        let p0 = QuadricSystem::base_point(&y(1, 2, 3));
        assert!(sys.quadrics()[0].evaluate_at(&p0, &y(1, 2, 3)).unwrap().is_zero());
    }

    #[test]
    fn base_point_lies_on_the_system_symbolically() {
        let sys = build_quadrics();
        let p = QuadricSystem::symbolic_base_point();
        for q in sys.quadrics() {
            assert!(q.evaluate(&p).unwrap().is_zero());
        }
    }

    #[test]
    fn sigma_shifts_the_quadrics() {
        let sys = build_quadrics();
        for k in 0..4 {
            assert_eq!(sys.quadrics()[k].pullback(&make_sigma()).unwrap(), sys.quadrics()[(k + 1) % 4]);
        }
    }

    #[test]
    fn invariance_under_tau_is_diagonal() {
        let InvarianceOutcome::Invariant { matrix } = check_ideal_invariance(&make_tau(), &build_quadrics()).unwrap()
        else {
            panic!("tau preserves the ideal");
        };
        let mut expected = ExactMatrix::zeros(4, 4);
        for i in 0..4 {
            expected[(i, i)] = root_of_unity(8, -2 * i as i64).unwrap();
        }
        assert_eq!(matrix, expected);
    }

    #[test]
    fn identity_gives_identity_matrix() {
        let id = MonomialMatrix::identity(8, 8);
        assert_eq!(
            check_ideal_invariance(&id, &build_quadrics()).unwrap(),
            InvarianceOutcome::Invariant { matrix: ExactMatrix::identity(4) }
        );
    }

    #[test]
    fn sign_flip_breaks_invariance() {
        let g = MonomialMatrix::diagonal(vec![0, 0, 0, 0, 4, 4, 4, 4], 8).unwrap();
        let InvarianceOutcome::Failure { quadric, x_monomial, y_monomial } =
            check_ideal_invariance(&g, &build_quadrics()).unwrap()
        else {
            panic!("negative control must fail");
        };
        assert_eq!(quadric, 0);
        // a cross term of q1, whose sign flips while x0^2 keeps its sign
        assert!([xm(&[(1, 1), (7, 1)]), xm(&[(3, 1), (5, 1)])].contains(&x_monomial), "{x_monomial}");
        assert_eq!(y_monomial, Monomial::new(vec![0, 2, 0]));
    }

    #[test]
    fn quadric_file_round_trip() {
        let sys = build_quadrics();
        let file = QuadricFile::from_system(&sys);
        let json = serde_json::to_string(&file).unwrap();
        let back: QuadricFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_system().unwrap(), sys);
        assert!(QuadricFile(vec![vec![]; 3]).into_system().is_err());
    }
}
