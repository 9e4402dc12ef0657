use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{parse_rational, rational, Rational};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::orbit::{jacobian, orbit_of, verify_odp_specialized};
use super::quadrics::QuadricSystem;

/// Largest numerator and denominator drawn for a seeded specialization.
pub const SAMPLE_BOUND: i64 = 97;
const MAX_ATTEMPTS: usize = 10_000;

/// A rational specialization `(y1, y2, y3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterPoint([Rational; 3]);

impl ParameterPoint {
    pub fn new(values: [Rational; 3]) -> Self {
        ParameterPoint(values)
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        ParameterPoint([rational(a, 1), rational(b, 1), rational(c, 1)])
    }

    pub fn values(&self) -> &[Rational; 3] {
        &self.0
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "{a},{b},{c}")
    }
}

impl FromStr for ParameterPoint {
    type Err = Error;

    /// Parses `a/b,c/d,e/f`; integer entries may omit the denominator.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected three comma-separated rationals, got {s:?}")));
        };
        Ok(ParameterPoint([parse_rational(a)?, parse_rational(b)?, parse_rational(c)?]))
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ParameterPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScreenResult {
    pub passed: bool,
    /// Violated conditions; empty iff `passed`.
    pub reasons: Vec<String>,
    pub notes: Vec<String>,
}

/// Necessary conditions for `y` to be in general position.
///
/// The orbit conditions are only checked when the base point lies on `sys`;
/// custom systems that miss it are screened on the parameter conditions alone.
pub fn genericity_screen(y: &ParameterPoint, sys: &QuadricSystem, group: &FiniteGroup) -> ScreenResult {
    let [y1, y2, y3] = y.values();
    let mut reasons = Vec::new();
    let mut notes = Vec::new();
    for (name, v) in [("y1", y1), ("y2", y2), ("y3", y3)] {
        if v.is_zero() {
            reasons.push(format!("{name} = 0"));
        }
    }
    if (y1 * y1 + y3 * y3).is_zero() {
        reasons.push("y1^2 + y3^2 = 0".into());
    }
    let (p, q) = (y1 * y3, y2 * y2);
    if !q.is_zero() && p.abs() == q {
        reasons.push(format!("y1*y3 = {}y2^2", if p.is_negative() { "-" } else { "" }));
    }
    if reasons.is_empty() {
        if let Err(e) = screen_orbit(y, sys, group, &mut reasons, &mut notes) {
            reasons.push(format!("internal error during screening: {e}"));
        }
    }
    ScreenResult { passed: reasons.is_empty(), reasons, notes }
}

fn screen_orbit(
    y: &ParameterPoint,
    sys: &QuadricSystem,
    group: &FiniteGroup,
    reasons: &mut Vec<String>,
    notes: &mut Vec<String>,
) -> Result<()> {
    let polys = sys.specialize(y.values());
    let base = QuadricSystem::base_point(y.values());
    for q in &polys {
        if !q.evaluate(&base)?.is_zero() {
            notes.push("base point is not on the system; orbit conditions skipped".into());
            return Ok(());
        }
    }
    let orbit = orbit_of(group, &base)?;
    if orbit.len() != group.order() {
        reasons.push(format!("orbit has {} distinct points, expected {}", orbit.len(), group.order()));
    }
    let rank = jacobian(&polys, &base)?.rank();
    if rank != 3 {
        reasons.push(format!("Jacobian rank {rank} at the base point, expected 3"));
    } else if !verify_odp_specialized(&base, &polys)?.passed {
        reasons.push("base point is not an ordinary double point".into());
    }
    Ok(())
}

fn sample(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.random_range(1..=SAMPLE_BOUND);
    let d = rng.random_range(1..=SAMPLE_BOUND);
    let r = rational(n, d);
    if rng.random_bool(0.5) {
        -r
    } else {
        r
    }
}

/// Draws `count` specializations from a seeded stream, rejecting those that fail the screen.
pub fn seeded_specializations(seed: u64, count: usize, sys: &QuadricSystem, group: &FiniteGroup) -> Result<Vec<ParameterPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(Error::CapExceeded(MAX_ATTEMPTS));
        }
        let y = ParameterPoint([sample(&mut rng), sample(&mut rng), sample(&mut rng)]);
        if !out.contains(&y) && genericity_screen(&y, sys, group).passed {
            out.push(y);
        }
    }
    Ok(out)
}
