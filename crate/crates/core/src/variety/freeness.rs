use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Preset};
use crate::monomial::{point_matrix, EigenspaceComponent, MonomialMatrix};
use crate::poly::{projective_emptiness, Polynomial};

use super::genericity::{genericity_screen, ParameterPoint, ScreenResult};
use super::orbit::projective_key;
use super::quadrics::{QuadricSystem, NCOORDS};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    #[default]
    Involutions,
    All,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Involutions => "involutions",
            Scope::All => "all",
        })
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "involutions" => Ok(Scope::Involutions),
            "all" => Ok(Scope::All),
            _ => Err(Error::Parse(format!("unknown scope {s:?} (expected involutions or all)"))),
        }
    }
}

/// Projectivized eigenspaces of the point matrix of `g`; their union is the fixed locus.
pub fn fixed_locus_components(g: &MonomialMatrix) -> Result<Vec<EigenspaceComponent>> {
    point_matrix(g).eigenspaces()
}

/// Substitutes `x = sum_j s_j b_j` into each polynomial, giving polynomials in `s_0..s_{m-1}`.
pub fn restrict_to_component(polys: &[Polynomial<Cyclotomic>], basis: &[Vec<Cyclotomic>]) -> Result<Vec<Polynomial<Cyclotomic>>> {
    let m = basis.len();
    let images: Vec<Polynomial<Cyclotomic>> = (0..NCOORDS)
        .map(|i| {
            let mut p = Polynomial::zero(m);
            for (j, b) in basis.iter().enumerate() {
                if !b[i].is_zero() {
                    p = &p + &Polynomial::var(m, j).scale(&b[i]);
                }
            }
            p
        })
        .collect();
    polys.iter().map(|q| q.compose(&images)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ComponentVerdict {
    /// The restricted system has no projective zeros.
    Empty,
    /// A one-dimensional component whose point misses the variety.
    OffVariety,
    /// A fixed point on the variety.
    FixedPoint { witness: Vec<Cyclotomic> },
    /// The restricted system has projective zeros but none was located explicitly.
    NonEmpty { missing_pure_powers: Vec<usize> },
    Inconclusive { reason: String },
}

impl ComponentVerdict {
    pub fn is_fixed(&self) -> bool {
        matches!(self, ComponentVerdict::FixedPoint { .. } | ComponentVerdict::NonEmpty { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub eigenvalue: Cyclotomic,
    pub multiplicity: usize,
    /// Size of the Groebner basis of the restricted system, when one was computed.
    pub groebner_size: Option<usize>,
    #[serde(flatten)]
    pub verdict: ComponentVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub element: MonomialMatrix,
    pub order: usize,
    pub components: Vec<ComponentRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free,
    NotFree,
    Inconclusive,
}

impl FreenessVerdict {
    fn combine(self, other: Self) -> Self {
        use FreenessVerdict::*;
        match (self, other) {
            (NotFree, _) | (_, NotFree) => NotFree,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Free,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationRecord {
    pub y: ParameterPoint,
    pub screen: ScreenResult,
    pub verdict: FreenessVerdict,
    pub elements: Vec<ElementRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub group: String,
    pub scope: Scope,
    pub elements_examined: usize,
    pub verdict: FreenessVerdict,
    pub specializations: Vec<SpecializationRecord>,
}

impl FreenessReport {
    /// Every fixed point found, with the element fixing it.
    pub fn witnesses(&self) -> Vec<(&ParameterPoint, &MonomialMatrix, &[Cyclotomic])> {
        let mut out = Vec::new();
        for s in &self.specializations {
            for e in &s.elements {
                for c in &e.components {
                    if let ComponentVerdict::FixedPoint { witness } = &c.verdict {
                        out.push((&s.y, &e.element, witness.as_slice()));
                    }
                }
            }
        }
        out
    }
}

fn combine_basis(basis: &[Vec<Cyclotomic>], s: &[Cyclotomic]) -> Vec<Cyclotomic> {
    (0..NCOORDS)
        .map(|i| basis.iter().zip(s).fold(Cyclotomic::zero(), |acc, (b, c)| acc + &b[i] * c))
        .collect()
}

fn vanishes(polys: &[Polynomial<Cyclotomic>], s: &[Cyclotomic]) -> Result<bool> {
    for p in polys {
        if !p.evaluate(s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tries unit vectors, then `e_i + c e_j` for small roots of unity `c`.
fn search_witness(restricted: &[Polynomial<Cyclotomic>], m: usize) -> Result<Option<Vec<Cyclotomic>>> {
    let unit = |i: usize| (0..m).map(|k| if k == i { Cyclotomic::one() } else { Cyclotomic::zero() }).collect::<Vec<_>>();
    for i in 0..m {
        let s = unit(i);
        if vanishes(restricted, &s)? {
            return Ok(Some(s));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..8 {
                let mut s = unit(i);
                s[j] = Cyclotomic::zeta_power(3, k);
                if vanishes(restricted, &s)? {
                    return Ok(Some(s));
                }
            }
        }
    }
    Ok(None)
}

fn examine_component(polys: &[Polynomial<Cyclotomic>], comp: &EigenspaceComponent) -> Result<ComponentRecord> {
    let record = |groebner_size, verdict| ComponentRecord {
        eigenvalue: comp.eigenvalue.clone(),
        multiplicity: comp.multiplicity(),
        groebner_size,
        verdict,
    };
    if comp.multiplicity() == 1 {
        let v = &comp.basis[0];
        return Ok(if vanishes(polys, v)? {
            record(None, ComponentVerdict::FixedPoint { witness: projective_key(v) })
        } else {
            record(None, ComponentVerdict::OffVariety)
        });
    }
    let restricted: Vec<_> = restrict_to_component(polys, &comp.basis)?.into_iter().filter(|p| !p.is_zero()).collect();
    if restricted.is_empty() {
        let witness = projective_key(&comp.basis[0]);
        return Ok(record(None, ComponentVerdict::FixedPoint { witness }));
    }
    let cert = projective_emptiness(&restricted)?;
    let size = Some(cert.basis.generators().len());
    if !cert.basis.s_pairs_reduce_to_zero() {
        let reason = "S-pair post-check failed on the emitted basis".into();
        return Ok(record(size, ComponentVerdict::Inconclusive { reason }));
    }
    if cert.empty {
        return Ok(record(size, ComponentVerdict::Empty));
    }
    Ok(match search_witness(&restricted, comp.multiplicity())? {
        Some(s) => record(size, ComponentVerdict::FixedPoint { witness: projective_key(&combine_basis(&comp.basis, &s)) }),
        None => record(size, ComponentVerdict::NonEmpty { missing_pure_powers: cert.missing_pure_powers }),
    })
}

fn examine_element(g: &FiniteGroup, e: &MonomialMatrix, polys: &[Polynomial<Cyclotomic>]) -> Result<ElementRecord> {
    let components = fixed_locus_components(e)?
        .iter()
        .map(|c| examine_component(polys, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(ElementRecord { element: e.clone(), order: g.element_order(e), components })
}

fn element_verdict(e: &ElementRecord) -> FreenessVerdict {
    e.components.iter().fold(FreenessVerdict::Free, |acc, c| {
        acc.combine(match c.verdict {
            ComponentVerdict::Empty | ComponentVerdict::OffVariety => FreenessVerdict::Free,
            ComponentVerdict::FixedPoint { .. } | ComponentVerdict::NonEmpty { .. } => FreenessVerdict::NotFree,
            ComponentVerdict::Inconclusive { .. } => FreenessVerdict::Inconclusive,
        })
    })
}

/// Checks that no element in scope fixes a point of the variety, per specialization.
///
/// Each `y` is screened against the closure of `tau, sigma`, whose orbit of the
/// base point is the singular locus; a failed screen marks that specialization
/// inconclusive and its elements are not examined.
pub fn check_freeness(
    name: &str,
    group: &FiniteGroup,
    sys: &QuadricSystem,
    ys: &[ParameterPoint],
    scope: Scope,
) -> Result<FreenessReport> {
    if ys.is_empty() {
        return Err(Error::Invalid("freeness needs at least one specialization".into()));
    }
    let elements: Vec<MonomialMatrix> = match scope {
        Scope::Involutions => group.involutions(),
        Scope::All => group.elements().iter().filter(|e| !group.is_identity(e)).cloned().collect(),
    };
    let screen_group = Preset::G.group();
    let screens: Vec<ScreenResult> = ys.par_iter().map(|y| genericity_screen(y, sys, &screen_group)).collect();
    let specialized: Vec<Vec<Polynomial<Cyclotomic>>> = ys.iter().map(|y| sys.specialize(y.values())).collect();
    let jobs: Vec<(usize, &MonomialMatrix)> = screens
        .iter()
        .enumerate()
        .filter(|(_, s)| s.passed)
        .flat_map(|(i, _)| elements.iter().map(move |e| (i, e)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(i, e)| examine_element(group, e, &specialized[i]).map(|r| (i, r)))
        .collect::<Result<Vec<_>>>()?;
    let mut specializations: Vec<SpecializationRecord> = ys
        .iter()
        .zip(screens)
        .map(|(y, screen)| SpecializationRecord {
            y: y.clone(),
            verdict: if screen.passed { FreenessVerdict::Free } else { FreenessVerdict::Inconclusive },
            screen,
            elements: Vec::new(),
        })
        .collect();
    for (i, r) in records {
        let s = &mut specializations[i];
        s.verdict = s.verdict.combine(element_verdict(&r));
        s.elements.push(r);
    }
    let verdict = specializations.iter().fold(FreenessVerdict::Free, |acc, s| acc.combine(s.verdict));
    Ok(FreenessReport { group: name.to_string(), scope, elements_examined: elements.len(), verdict, specializations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GeneratorTable;
    use crate::variety::quadrics::build_quadrics;

    fn tau_pow(k: i64) -> MonomialMatrix {
        GeneratorTable::presets().get("tau").unwrap().pow(k)
    }

    #[test]
    fn fixed_locus_examples() {
        let c = fixed_locus_components(&tau_pow(4)).unwrap();
        assert_eq!(c.iter().map(EigenspaceComponent::multiplicity).collect::<Vec<_>>(), [4, 4]);
        assert_eq!(fixed_locus_components(&tau_pow(1)).unwrap().len(), 8);
        let s4 = GeneratorTable::presets().evaluate("sigma^4").unwrap();
        let c = fixed_locus_components(&s4).unwrap();
        assert_eq!(c.len(), 2);
        for comp in &c {
            assert_eq!(comp.multiplicity(), 4);
            for b in &comp.basis {
                for i in 0..4 {
                    let sign = if comp.eigenvalue.is_one() { Cyclotomic::one() } else { Cyclotomic::from_int(-1) };
                    assert_eq!(b[i + 4], &b[i] * &sign);
                }
            }
        }
    }

    #[test]
    fn planted_control_has_the_first_unit_vector_as_witness() {
        let x = |i| Polynomial::<Cyclotomic>::var(NCOORDS, i);
        let planted = QuadricSystem::from_constant((0..4).map(|k| &x(k) * &x(k + 4)).collect()).unwrap();
        let g = crate::group::closure(&[tau_pow(4)], crate::group::ClosureMode::Projective, 10).unwrap();
        let y = ParameterPoint::from_ints(1, 2, 3);
        let report = check_freeness("control", &g, &planted, std::slice::from_ref(&y), Scope::Involutions).unwrap();
        assert_eq!(report.verdict, FreenessVerdict::NotFree);
        let e0: Vec<Cyclotomic> = (0..8).map(|i| Cyclotomic::from_int((i == 0) as i64)).collect();
        let witnesses = report.witnesses();
        assert!(witnesses.iter().any(|(_, _, w)| *w == e0.as_slice()));
        for (_, _, w) in witnesses {
            for q in planted.specialize(y.values()) {
                assert!(q.evaluate(w).unwrap().is_zero());
            }
            let image = point_matrix(&tau_pow(4)).apply_to_point(w).unwrap();
            assert_eq!(projective_key(&image), projective_key(w));
        }
    }

    #[test]
    fn preset_groups_act_freely_at_one_two_three() {
        let sys = build_quadrics();
        let y = [ParameterPoint::from_ints(1, 2, 3)];
        for p in [Preset::G, Preset::G1, Preset::G2] {
            let r = check_freeness(p.name(), &p.group(), &sys, &y, Scope::Involutions).unwrap();
            assert_eq!(r.elements_examined, 3, "{}", p.name());
            assert_eq!(r.verdict, FreenessVerdict::Free, "{}", p.name());
        }
    }

    #[test]
    fn degenerate_specialization_is_inconclusive() {
        let sys = build_quadrics();
        let ys = [ParameterPoint::from_ints(1, 0, 3)];
        let r = check_freeness("G", &Preset::G.group(), &sys, &ys, Scope::Involutions).unwrap();
        assert_eq!(r.verdict, FreenessVerdict::Inconclusive);
        assert!(r.specializations[0].elements.is_empty());
    }
}
