//! Verification campaigns: configuration, custom inputs and check orchestration.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{
    certify_structure, closure, involution_localization, Claim, ClosureMode, FiniteGroup, GeneratorTable, Preset,
    DEFAULT_CAP,
};
use crate::linalg::ExactMatrix;
use crate::monomial::MonomialMatrix;
use crate::poly::Monomial;
use crate::report::{CheckRecord, Verdict, VerificationReport};
use crate::variety::{
    build_quadrics, check_freeness, check_ideal_invariance, genericity_screen, seeded_specializations, singular_orbit,
    verify_odp, ComponentVerdict, FreenessVerdict, InvarianceOutcome, ParameterPoint, QuadricFile, QuadricSystem, Scope,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Groups,
    Invariance,
    Orbit,
    Freeness,
}

impl CheckKind {
    /// Dependency order.
    pub const ALL: [CheckKind; 4] = [CheckKind::Groups, CheckKind::Invariance, CheckKind::Orbit, CheckKind::Freeness];
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Groups => "groups",
            CheckKind::Invariance => "invariance",
            CheckKind::Orbit => "orbit",
            CheckKind::Freeness => "freeness",
        })
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerificationConfig {
    pub group: Preset,
    /// Replaces `group` when set.
    pub custom_group: Option<PathBuf>,
    pub custom_quadrics: Option<PathBuf>,
    /// Explicit specializations; when empty, `specializations` are drawn from `seed`.
    pub y: Vec<ParameterPoint>,
    pub specializations: usize,
    pub seed: u64,
    pub scope: Scope,
    pub checks: Vec<CheckKind>,
    /// Not echoed into the report.
    #[serde(skip_serializing)]
    pub output: Option<PathBuf>,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            group: Preset::G,
            custom_group: None,
            custom_quadrics: None,
            y: Vec::new(),
            specializations: 3,
            seed: 0,
            scope: Scope::Involutions,
            checks: CheckKind::ALL.to_vec(),
            output: None,
        }
    }
}

impl VerificationConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&read(path)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedGenerator {
    pub name: String,
    pub matrix: MonomialMatrix,
}

/// A user-supplied group: named generators, optional structural claims, and
/// optionally the subgroup expected to contain every involution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomGroupFile {
    pub name: String,
    pub generators: Vec<NamedGenerator>,
    #[serde(default)]
    pub claims: Vec<Claim>,
    #[serde(default)]
    pub involution_subgroup: Option<Vec<String>>,
}

struct Target {
    name: String,
    group: FiniteGroup,
    table: GeneratorTable,
    generator_names: Vec<String>,
    claims: Vec<Claim>,
    involution_subgroup: Option<Vec<String>>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_target(config: &VerificationConfig) -> Result<Target> {
    let mut table = GeneratorTable::presets();
    let Some(path) = &config.custom_group else {
        let p = config.group;
        return Ok(Target {
            name: p.name().into(),
            group: p.group(),
            table,
            generator_names: p.generator_names().iter().map(ToString::to_string).collect(),
            claims: p.claims(),
            involution_subgroup: (p != Preset::G).then(|| p.involution_subgroup()),
        });
    };
    let file: CustomGroupFile = serde_json::from_str(&read(path)?)?;
    if file.generators.is_empty() {
        return Err(Error::Invalid("custom group has no generators".into()));
    }
    let n = file.generators.iter().map(|g| g.matrix.root_order()).max().unwrap_or(1);
    let gens = file.generators.iter().map(|g| g.matrix.with_root_order(n)).collect::<Result<Vec<_>>>()?;
    for (g, m) in file.generators.iter().zip(&gens) {
        table.insert(&g.name, m.clone());
    }
    Ok(Target {
        group: closure(&gens, ClosureMode::Projective, DEFAULT_CAP)?,
        name: file.name,
        table,
        generator_names: file.generators.into_iter().map(|g| g.name).collect(),
        claims: file.claims,
        involution_subgroup: file.involution_subgroup,
    })
}

fn load_system(config: &VerificationConfig) -> Result<QuadricSystem> {
    match &config.custom_quadrics {
        Some(path) => serde_json::from_str::<QuadricFile>(&read(path)?)?.into_system(),
        None => Ok(build_quadrics()),
    }
}

fn monomial_text(m: &Monomial, prefix: &'static str, offset: usize) -> String {
    struct Named<'a>(&'a Monomial, &'static str, usize);
    impl fmt::Display for Named<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            self.0.fmt_with(f, &|i| format!("{}{}", self.1, i + self.2))
        }
    }
    Named(m, prefix, offset).to_string()
}

fn matrix_text(m: &ExactMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn point_text(p: &[Cyclotomic]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

fn timed(f: impl FnOnce() -> Result<Vec<CheckRecord>>, check: CheckKind, target: &str) -> Vec<CheckRecord> {
    let start = Instant::now();
    let mut records = f().unwrap_or_else(|e| {
        vec![CheckRecord::new(&check.to_string(), target, Verdict::Inconclusive, format!("internal error: {e}"))]
    });
    let ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    // a check's wall time is split evenly over its records
    let share = ms / records.len().max(1) as u64;
    for r in &mut records {
        r.timing_ms = share;
    }
    records
}

fn groups_check(t: &Target) -> Result<Vec<CheckRecord>> {
    let cert = certify_structure(&t.group, &t.table, &t.claims)?;
    let linear_gens = t.table.evaluate_all(&t.generator_names)?;
    let linear = closure(&linear_gens, ClosureMode::Linear, DEFAULT_CAP).ok();
    let linear_details = linear.as_ref().map(|l| {
        json!({
            "order": l.order(),
            "scalar_count": l.scalar_count(),
            "projective_order": t.group.order(),
            "consistent": l.order() == t.group.order() * l.scalar_count(),
        })
    });
    let linear_ok = linear.as_ref().is_none_or(|l| l.order() == t.group.order() * l.scalar_count());
    let passed = cert.passed() && linear_ok;
    let failed: Vec<_> = cert.claims.iter().filter(|c| !c.passed).cloned().collect();
    let summary = format!(
        "order {}, {}, {}/{} claims hold",
        cert.order,
        if cert.is_abelian { "abelian" } else { "nonabelian" },
        cert.claims.len() - failed.len(),
        cert.claims.len()
    );
    let mut record = CheckRecord::new("groups", &t.name, Verdict::from_bool(passed), summary)
        .with_details(json!({ "structure": cert, "linear_closure": linear_details }));
    for f in failed {
        record = record.with_witness(f);
    }
    let mut out = vec![record];
    if let Some(words) = &t.involution_subgroup {
        let designated = t.table.evaluate_all(words)?;
        let ambient = Preset::G.generators();
        let inv = involution_localization(&t.group, &designated, &ambient)?;
        let summary = format!(
            "{} involutions, {} outside <{}>, subgroup of order {} {} G",
            inv.involution_count,
            inv.outside_subgroup.len(),
            words.join(", "),
            inv.subgroup_order,
            if inv.subgroup_in_ambient { "inside" } else { "not inside" }
        );
        let mut record = CheckRecord::new("groups", format!("{}/involutions", t.name), Verdict::from_bool(inv.passed), summary);
        for g in &inv.outside_subgroup {
            record = record.with_witness(g);
        }
        out.push(record.with_details(inv));
    }
    Ok(out)
}

fn invariance_check(t: &Target, sys: &QuadricSystem) -> Result<Vec<CheckRecord>> {
    let gens = t.table.evaluate_all(&t.generator_names)?;
    let mut out = Vec::new();
    for (name, g) in t.generator_names.iter().zip(&gens) {
        let target = format!("{}:{name}", t.name);
        out.push(match check_ideal_invariance(g, sys)? {
            InvarianceOutcome::Invariant { matrix } => {
                CheckRecord::new("invariance", target, Verdict::Pass, "pullbacks lie in the span of the system")
                    .with_details(json!({ "element": g, "matrix": matrix_text(&matrix) }))
            }
            InvarianceOutcome::Failure { quadric, x_monomial, y_monomial } => {
                let witness = json!({
                    "quadric": quadric + 1,
                    "x_monomial": monomial_text(&x_monomial, "x", 0),
                    "y_monomial": monomial_text(&y_monomial, "y", 1),
                });
                let summary = format!("pullback of q{} leaves the span", quadric + 1);
                CheckRecord::new("invariance", target, Verdict::Fail, summary)
                    .with_witness(witness)
                    .with_details(json!({ "element": g }))
            }
        });
    }
    Ok(out)
}

fn orbit_check(t: &Target, sys: &QuadricSystem, ys: &[ParameterPoint]) -> Result<Vec<CheckRecord>> {
    let screen_group = Preset::G.group();
    let mut out = Vec::new();
    for y in ys {
        let target = format!("{}@{y}", t.name);
        let screen = genericity_screen(y, sys, &screen_group);
        if !screen.passed {
            let summary = format!("specialization rejected: {}", screen.reasons.join("; "));
            out.push(CheckRecord::new("orbit", target, Verdict::Inconclusive, summary).with_details(json!({ "screen": screen })));
            continue;
        }
        let orbit = singular_orbit(&t.group, y)?;
        let mut points = Vec::with_capacity(orbit.len());
        let mut bad = Vec::new();
        for p in &orbit {
            let cert = verify_odp(&p.coordinates, sys, y)?;
            let entry = json!({
                "coordinates": point_text(&p.coordinates),
                "element": p.element,
                "on_variety": cert.on_variety,
                "jacobian_rank": cert.jacobian_rank,
                "hessian_restricted_rank": cert.hessian_restricted_rank,
                "null_combination": cert.null_combination.as_deref().map(point_text),
            });
            if !cert.passed {
                bad.push(entry.clone());
            }
            points.push(entry);
        }
        let expected = t.group.order();
        let passed = orbit.len() == expected && bad.is_empty();
        let summary = format!("{} distinct points (expected {expected}), {} ordinary double points", orbit.len(), orbit.len() - bad.len());
        let mut record = CheckRecord::new("orbit", target, Verdict::from_bool(passed), summary);
        for b in bad {
            record = record.with_witness(b);
        }
        out.push(record.with_details(json!({ "screen": screen, "points": points })));
    }
    Ok(out)
}

fn freeness_check(t: &Target, sys: &QuadricSystem, ys: &[ParameterPoint], scope: Scope) -> Result<Vec<CheckRecord>> {
    let report = check_freeness(&t.name, &t.group, sys, ys, scope)?;
    let verdict = match report.verdict {
        FreenessVerdict::Free => Verdict::Pass,
        FreenessVerdict::NotFree => Verdict::Fail,
        FreenessVerdict::Inconclusive => Verdict::Inconclusive,
    };
    let components: usize = report.specializations.iter().flat_map(|s| &s.elements).map(|e| e.components.len()).sum();
    let summary = format!(
        "{} elements in scope {} x {} specializations, {components} components: {}",
        report.elements_examined,
        scope,
        ys.len(),
        match report.verdict {
            FreenessVerdict::Free => "no fixed points",
            FreenessVerdict::NotFree => "fixed points found",
            FreenessVerdict::Inconclusive => "inconclusive",
        }
    );
    let rejected: Vec<String> = report
        .specializations
        .iter()
        .filter(|s| !s.screen.passed)
        .map(|s| format!("y=({}) rejected: {}", s.y, s.screen.reasons.join(", ")))
        .collect();
    let summary = if rejected.is_empty() { summary } else { format!("{summary}; {}", rejected.join("; ")) };
    let mut record = CheckRecord::new("freeness", format!("{}/{scope}", t.name), verdict, summary);
    for s in &report.specializations {
        for e in &s.elements {
            for c in &e.components {
                match &c.verdict {
                    ComponentVerdict::FixedPoint { witness } => {
                        record = record.with_witness(json!({ "y": s.y, "element": e.element, "point": point_text(witness) }));
                    }
                    ComponentVerdict::NonEmpty { missing_pure_powers } => {
                        record = record.with_witness(json!({
                            "y": s.y,
                            "element": e.element,
                            "eigenvalue": c.eigenvalue,
                            "missing_pure_powers": missing_pure_powers,
                        }));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(vec![record.with_details(report)])
}

/// Runs the selected checks in dependency order. Unreadable or malformed
/// inputs are errors; failures inside a check become inconclusive records.
pub fn run(config: &VerificationConfig) -> Result<VerificationReport> {
    let target = load_target(config)?;
    let sys = load_system(config)?;
    let mut checks = config.checks.clone();
    checks.sort();
    checks.dedup();
    let needs_y = checks.iter().any(|c| matches!(c, CheckKind::Orbit | CheckKind::Freeness));
    let ys = if !needs_y {
        Vec::new()
    } else if config.y.is_empty() {
        seeded_specializations(config.seed, config.specializations, &sys, &Preset::G.group())?
    } else {
        config.y.clone()
    };
    let mut report = VerificationReport::new(config);
    for check in checks {
        let records = match check {
            CheckKind::Groups => timed(|| groups_check(&target), check, &target.name),
            CheckKind::Invariance => timed(|| invariance_check(&target, &sys), check, &target.name),
            CheckKind::Orbit => timed(|| orbit_check(&target, &sys, &ys), check, &target.name),
            CheckKind::Freeness => timed(|| freeness_check(&target, &sys, &ys, config.scope), check, &target.name),
        };
        for r in records {
            report.push(r);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(k.to_string().parse::<CheckKind>().unwrap(), k);
        }
        assert!("all".parse::<CheckKind>().is_err());
    }

    #[test]
    fn config_defaults_and_echo() {
        let c: VerificationConfig = serde_json::from_str(r#"{"group":"G1","y":["1,2,3"]}"#).unwrap();
        assert_eq!(c.group, Preset::G1);
        assert_eq!(c.specializations, 3);
        assert_eq!(c.checks, CheckKind::ALL);
        assert!(serde_json::from_str::<VerificationConfig>(r#"{"groupp":"G"}"#).is_err());
        let echo = serde_json::to_value(VerificationConfig { output: Some("x.json".into()), ..c }).unwrap();
        assert!(echo.get("output").is_none());
    }

    #[test]
    fn groups_and_invariance_for_g2() {
        let config = VerificationConfig { group: Preset::G2, checks: vec![CheckKind::Invariance, CheckKind::Groups], ..Default::default() };
        let report = run(&config).unwrap();
        let ids: Vec<_> = report.checks.iter().map(|c| (c.check.as_str(), c.target.as_str())).collect();
        assert_eq!(
            ids,
            [
                ("groups", "G2"),
                ("groups", "G2/involutions"),
                ("invariance", "G2:tau"),
                ("invariance", "G2:sigma2"),
                ("invariance", "G2:sigma3")
            ]
        );
        assert_eq!(report.overall, Verdict::Pass);
    }

    #[test]
    fn degenerate_explicit_y_is_inconclusive() {
        let config = VerificationConfig {
            checks: vec![CheckKind::Freeness],
            y: vec![ParameterPoint::from_ints(1, 0, 3)],
            ..Default::default()
        };
        let report = run(&config).unwrap();
        assert_eq!(report.overall, Verdict::Inconclusive);
        assert_eq!(report.exit_code(), 2);
    }
}
