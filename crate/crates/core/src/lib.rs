//! Exact certification of the structure and fixed-point-free action of three
//! order-64 projective monomial groups on a complete intersection of four
//! quadrics in P^7, together with its 64-point orbit of ordinary double points.

pub mod campaign;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod report;
pub mod variety;

pub use campaign::{run, CheckKind, CustomGroupFile, VerificationConfig};
pub use cyclotomic::{root_of_unity, Cyclotomic, Rational};
pub use error::{Error, Result};
pub use group::{closure, normalize, ClosureMode, FiniteGroup, Preset, ProjectiveElement};
pub use linalg::ExactMatrix;
pub use monomial::{point_matrix, EigenspaceComponent, MonomialMatrix};
pub use poly::{buchberger, GroebnerBasis, MonomialOrder, ParamScalar, Polynomial};
pub use report::{render_report, CheckRecord, Format, Verdict, VerificationReport};
pub use variety::{
    build_quadrics, check_freeness, check_ideal_invariance, genericity_screen, singular_orbit, verify_odp, FreenessReport,
    OdpCertificate, OrbitPoint, ParameterPoint, QuadricSystem, Scope,
};
