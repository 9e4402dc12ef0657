//! Certification of the quadric complete intersection: ideal invariance under
//! the group generators, the singular orbit and its double points, and
//! fixed-point-freeness of group elements.

mod freeness;
mod genericity;
mod orbit;
mod quadrics;

pub use freeness::{
    check_freeness, fixed_locus_components, restrict_to_component, ComponentRecord, ComponentVerdict, ElementRecord,
    FreenessReport, FreenessVerdict, Scope, SpecializationRecord,
};
pub use genericity::{genericity_screen, seeded_specializations, ParameterPoint, ScreenResult};
pub use orbit::{jacobian, singular_orbit, verify_odp, OdpCertificate, OrbitPoint};
pub use quadrics::{build_quadrics, check_ideal_invariance, InvarianceOutcome, QuadricSystem, QuadricFile, QuadricTerm};
