use std::collections::HashSet;

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::ExactMatrix;
use crate::monomial::{point_matrix, MonomialMatrix};
use crate::poly::Polynomial;

use super::genericity::ParameterPoint;
use super::quadrics::{QuadricSystem, NCOORDS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPoint {
    pub coordinates: Vec<Cyclotomic>,
    /// Group element carrying the base point here.
    pub element: MonomialMatrix,
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub(crate) fn projective_key(p: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let Some(first) = p.iter().find(|c| !c.is_zero()) else {
        return p.to_vec();
    };
    let inv = first.inv().expect("nonzero");
    p.iter().map(|c| (c * &inv).reduced()).collect()
}

/// Images of the base point under every element of `group`, deduplicated
/// projectively; the identity's image comes first.
pub fn singular_orbit(group: &FiniteGroup, y: &ParameterPoint) -> Result<Vec<OrbitPoint>> {
    let base = QuadricSystem::base_point(y.values());
    orbit_of(group, &base)
}

pub(crate) fn orbit_of(group: &FiniteGroup, base: &[Cyclotomic]) -> Result<Vec<OrbitPoint>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in group.elements() {
        let p = point_matrix(g).apply_to_point(base)?;
        if seen.insert(projective_key(&p)) {
            out.push(OrbitPoint { coordinates: p, element: g.clone() });
        }
    }
    Ok(out)
}

/// The matrix of partial derivatives `d q_i / d x_j` evaluated at `point`.
pub fn jacobian(polys: &[Polynomial<Cyclotomic>], point: &[Cyclotomic]) -> Result<ExactMatrix> {
    let rows = polys
        .iter()
        .map(|q| (0..q.nvars()).map(|j| q.partial_derivative(j).evaluate(point)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(rows)
}

fn hessian(q: &Polynomial<Cyclotomic>) -> Result<ExactMatrix> {
    let n = q.nvars();
    let origin = vec![Cyclotomic::zero(); n];
    let rows = (0..n)
        .map(|a| {
            let da = q.partial_derivative(a);
            (0..n).map(|b| da.partial_derivative(b).evaluate(&origin)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OdpCertificate {
    pub point: Vec<Cyclotomic>,
    pub on_variety: bool,
    /// `None` when the point is off the variety.
    pub jacobian_rank: Option<usize>,
    /// Rank of the Hessian of the singular combination on the Jacobian kernel.
    pub hessian_restricted_rank: Option<usize>,
    pub null_combination: Option<Vec<Cyclotomic>>,
    pub passed: bool,
}

/// Certifies an ordinary double point of a complete intersection of four quadrics:
/// the point lies on every quadric, the Jacobian has rank 3, and the Hessian of
/// the singular combination `sum c_i q_i` (with `c J = 0`) has rank 4 on the
/// 5-dimensional kernel of the Jacobian, which contains the point itself.
pub fn verify_odp(point: &[Cyclotomic], sys: &QuadricSystem, y: &ParameterPoint) -> Result<OdpCertificate> {
    let polys = sys.specialize(y.values());
    verify_odp_specialized(point, &polys)
}

pub(crate) fn verify_odp_specialized(point: &[Cyclotomic], polys: &[Polynomial<Cyclotomic>]) -> Result<OdpCertificate> {
    let mut cert = OdpCertificate {
        point: point.to_vec(),
        on_variety: false,
        jacobian_rank: None,
        hessian_restricted_rank: None,
        null_combination: None,
        passed: false,
    };
    for q in polys {
        if !q.evaluate(point)?.is_zero() {
            return Ok(cert);
        }
    }
    cert.on_variety = true;
    let jac = jacobian(polys, point)?;
    let rank = jac.rank();
    cert.jacobian_rank = Some(rank);
    if polys.len() != 4 || rank != 3 {
        return Ok(cert);
    }
    let combination = jac.left_kernel().remove(0);
    let mut singular = Polynomial::zero(NCOORDS);
    for (c, q) in combination.iter().zip(polys) {
        singular = &singular + &q.scale(c);
    }
    cert.null_combination = Some(combination);
    let h = hessian(&singular)?;
    let tangent = ExactMatrix::from_columns(&jac.kernel())?;
    let restricted = tangent.transpose().mul(&h)?.mul(&tangent)?;
    let annihilates = h.mul_vec(point)?.iter().all(Cyclotomic::is_zero);
    let hrank = restricted.rank();
    cert.hessian_restricted_rank = Some(hrank);
    cert.passed = annihilates && hrank == 4;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{rational, Rational};
    use crate::group::Preset;
    use crate::variety::quadrics::build_quadrics;

    fn y123() -> ParameterPoint {
        ParameterPoint::new([rational(1, 1), rational(2, 1), rational(3, 1)])
    }

    /// Independent rank over Q by fraction-based elimination.
    fn rational_rank(rows: Vec<Vec<Rational>>) -> usize {
        let mut m = rows;
        let mut rank = 0;
        let cols = m.first().map_or(0, Vec::len);
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != rational(0, 1)) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && m[r][c] != rational(0, 1) {
                    let f = &m[r][c] / &m[rank][c];
                    let pivot = m[rank].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn base_point_is_an_ordinary_double_point() {
        let sys = build_quadrics();
        let p0 = QuadricSystem::base_point(y123().values());
        let cert = verify_odp(&p0, &sys, &y123()).unwrap();
        assert!(cert.on_variety);
        assert_eq!(cert.jacobian_rank, Some(3));
        assert_eq!(cert.hessian_restricted_rank, Some(4));
        assert!(cert.passed);
        let jac = jacobian(&sys.specialize(y123().values()), &p0).unwrap();
        let rows = jac.to_rows().into_iter().map(|r| r.iter().map(|c| c.to_rational().unwrap()).collect()).collect();
        assert_eq!(rational_rank(rows), 3);
    }

    #[test]
    fn point_off_the_variety_fails_fast() {
        let sys = build_quadrics();
        let p: Vec<Cyclotomic> = (1..=8).map(Cyclotomic::from_int).collect();
        let cert = verify_odp(&p, &sys, &y123()).unwrap();
        assert!(!cert.on_variety && !cert.passed);
        assert_eq!(cert.jacobian_rank, None);
        // generic point: the Jacobian still has full rank 4
        assert_eq!(jacobian(&sys.specialize(y123().values()), &p).unwrap().rank(), 4);
    }

    #[test]
    fn orbit_has_64_distinct_points() {
        let g = Preset::G.group();
        let orbit = singular_orbit(&g, &y123()).unwrap();
        assert_eq!(orbit.len(), 64);
        assert!(orbit[0].element.is_identity());
        // oracle: pairwise proportionality via 2x2 minors
        for (i, a) in orbit.iter().enumerate() {
            for b in &orbit[i + 1..] {
                let proportional = (0..8).all(|r| {
                    (0..8).all(|s| (&a.coordinates[r] * &b.coordinates[s] - &a.coordinates[s] * &b.coordinates[r]).is_zero())
                });
                assert!(!proportional);
            }
        }
        // stability: every group element permutes the orbit
        let keys: HashSet<_> = orbit.iter().map(|p| projective_key(&p.coordinates)).collect();
        for g in g.generators() {
            for p in &orbit {
                assert!(keys.contains(&projective_key(&g.apply_to_point(&p.coordinates).unwrap())));
            }
        }
    }
}
