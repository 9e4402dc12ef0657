//! Finite groups of monomial matrices, taken linearly or modulo scalars.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::MonomialMatrix;

pub const DEFAULT_CAP: usize = 10_000;

/// A monomial matrix scaled so that the phase at index 0 is zero; two matrices
/// differing by a scalar root of unity have the same representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectiveElement(MonomialMatrix);

impl ProjectiveElement {
    pub fn rep(&self) -> &MonomialMatrix {
        &self.0
    }

    pub fn into_inner(self) -> MonomialMatrix {
        self.0
    }
}

pub fn normalize(g: &MonomialMatrix) -> ProjectiveElement {
    match g.phases().first() {
        Some(&k) if k != 0 => ProjectiveElement(g.scaled(-i64::from(k))),
        _ => ProjectiveElement(g.clone()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    Projective,
    Linear,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    mode: ClosureMode,
    size: usize,
    n: u32,
    generators: Vec<MonomialMatrix>,
    elements: Vec<MonomialMatrix>,
    index: HashMap<MonomialMatrix, usize>,
}

/// Breadth-first closure of `generators`; in projective mode every product is
/// normalized. Fails once more than `cap` elements have been found.
pub fn closure(generators: &[MonomialMatrix], mode: ClosureMode, cap: usize) -> Result<FiniteGroup> {
    let first = generators.first().ok_or_else(|| Error::Invalid("closure needs at least one generator".into()))?;
    let (size, n) = (first.size(), first.root_order());
    for g in generators {
        if g.root_order() != n {
            return Err(Error::MismatchedOrder(n, g.root_order()));
        }
        if g.size() != size {
            return Err(Error::Dimension(format!("generator sizes {} and {}", size, g.size())));
        }
    }
    let canon = |g: MonomialMatrix| match mode {
        ClosureMode::Projective => normalize(&g).into_inner(),
        ClosureMode::Linear => g,
    };
    let generators: Vec<MonomialMatrix> = generators.iter().cloned().map(canon).collect();
    let identity = MonomialMatrix::identity(size, n);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &generators {
            let h = canon(elements[i].compose_unchecked(g));
            if index.contains_key(&h) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            index.insert(h.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(h);
        }
    }
    Ok(FiniteGroup { mode, size, n, generators, elements, index })
}

impl FiniteGroup {
    pub fn mode(&self) -> ClosureMode {
        self.mode
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in breadth-first discovery order; the identity comes first.
    pub fn elements(&self) -> &[MonomialMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[MonomialMatrix] {
        &self.generators
    }

    pub fn canonical(&self, g: &MonomialMatrix) -> MonomialMatrix {
        match self.mode {
            ClosureMode::Projective => normalize(g).into_inner(),
            ClosureMode::Linear => g.clone(),
        }
    }

    pub fn contains(&self, g: &MonomialMatrix) -> bool {
        g.size() == self.size && g.root_order() == self.n && self.index.contains_key(&self.canonical(g))
    }

    pub fn multiply(&self, a: &MonomialMatrix, b: &MonomialMatrix) -> MonomialMatrix {
        self.canonical(&a.compose_unchecked(b))
    }

    pub fn is_identity(&self, g: &MonomialMatrix) -> bool {
        self.canonical(g).is_identity()
    }

    /// Least `k >= 1` with `g^k` the identity in this group's mode.
    pub fn element_order(&self, g: &MonomialMatrix) -> usize {
        let mut acc = self.canonical(g);
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.multiply(&acc, g);
            k += 1;
            assert!(k <= DEFAULT_CAP, "element of unbounded order");
        }
        k
    }

    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut spectrum = BTreeMap::new();
        for g in &self.elements {
            *spectrum.entry(self.element_order(g)).or_insert(0) += 1;
        }
        spectrum
    }

    pub fn involutions(&self) -> Vec<MonomialMatrix> {
        self.elements.iter().filter(|g| self.element_order(g) == 2).cloned().collect()
    }

    fn commute(&self, a: &MonomialMatrix, b: &MonomialMatrix) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    /// Generator pairs commuting is sufficient for the whole group to be abelian.
    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.commute(&g[i], &g[j])))
    }

    pub fn is_abelian_exhaustive(&self) -> bool {
        let e = &self.elements;
        (0..e.len()).all(|i| (i + 1..e.len()).all(|j| self.commute(&e[i], &e[j])))
    }

    pub fn center_order(&self) -> usize {
        self.elements.iter().filter(|z| self.generators.iter().all(|g| self.commute(z, g))).count()
    }

    /// Elements that are scalar matrices (only nontrivial in linear mode).
    pub fn scalar_count(&self) -> usize {
        self.elements.iter().filter(|g| g.is_scalar()).count()
    }

    /// Closure of `gens` in the same mode.
    pub fn subgroup(&self, gens: &[MonomialMatrix]) -> Result<FiniteGroup> {
        if gens.is_empty() {
            return closure(&[MonomialMatrix::identity(self.size, self.n)], self.mode, DEFAULT_CAP);
        }
        closure(gens, self.mode, DEFAULT_CAP)
    }

    pub fn is_subset_of(&self, other: &FiniteGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// First `(g, h)` with `g h g^-1` outside `sub`, for `g` in this group and
    /// `h` a generator of `sub`; `None` means `sub` is normal.
    pub fn normality_witness(&self, sub: &FiniteGroup) -> Option<(MonomialMatrix, MonomialMatrix)> {
        for g in &self.elements {
            let g_inv = g.inverse();
            for h in &sub.generators {
                let conj = self.multiply(&self.multiply(g, h), &g_inv);
                if !sub.contains(&conj) {
                    return Some((g.clone(), h.clone()));
                }
            }
        }
        None
    }

    pub fn intersection_order(&self, other: &FiniteGroup) -> usize {
        self.elements.iter().filter(|g| other.contains(g)).count()
    }
}

pub fn make_tau() -> MonomialMatrix {
    MonomialMatrix::diagonal((0..8).map(|i| -i).collect(), 8).expect("valid preset")
}

pub fn make_sigma() -> MonomialMatrix {
    MonomialMatrix::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]], 8).expect("valid preset")
}

pub fn make_sigma1() -> MonomialMatrix {
    MonomialMatrix::from_cycles(8, &[&[0, 7, 2, 1, 4, 3, 6, 5]], 8).expect("valid preset")
}

pub fn make_sigma2() -> MonomialMatrix {
    MonomialMatrix::from_cycles(8, &[&[0, 2, 4, 6], &[1, 3, 5, 7]], 8).expect("valid preset")
}

pub fn make_sigma3() -> MonomialMatrix {
    MonomialMatrix::from_cycles(8, &[&[0, 1, 4, 5], &[3, 2, 7, 6]], 8).expect("valid preset")
}

/// Named generators usable in words such as `sigma1 tau sigma1^-1`.
#[derive(Clone, Debug, Default)]
pub struct GeneratorTable {
    entries: Vec<(String, MonomialMatrix)>,
}

impl GeneratorTable {
    /// `tau`, `sigma`, `sigma1`, `sigma2`, `sigma3`.
    pub fn presets() -> Self {
        let mut t = GeneratorTable::default();
        t.insert("tau", make_tau());
        t.insert("sigma", make_sigma());
        t.insert("sigma1", make_sigma1());
        t.insert("sigma2", make_sigma2());
        t.insert("sigma3", make_sigma3());
        t
    }

    /// Inserts or replaces a named generator.
    pub fn insert(&mut self, name: &str, g: MonomialMatrix) {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = g,
            None => self.entries.push((name.to_string(), g)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&MonomialMatrix> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    fn any(&self) -> Result<&MonomialMatrix> {
        self.entries.first().map(|(_, g)| g).ok_or_else(|| Error::Invalid("empty generator table".into()))
    }

    /// Evaluates a word: factors separated by spaces or `*`, each `name` or
    /// `name^k` with `k` possibly negative; `1` is the identity.
    pub fn evaluate(&self, word: &str) -> Result<MonomialMatrix> {
        let any = self.any()?;
        let mut acc = MonomialMatrix::identity(any.size(), any.root_order());
        for factor in word.split(|c: char| c.is_whitespace() || c == '*' || c == '·').filter(|s| !s.is_empty()) {
            if factor == "1" {
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            let g = self.get(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            let n = acc.root_order().max(g.root_order());
            acc = acc.with_root_order(n)?.compose(&g.pow(exp).with_root_order(n)?)?;
        }
        Ok(acc)
    }

    pub fn evaluate_all(&self, words: &[String]) -> Result<Vec<MonomialMatrix>> {
        words.iter().map(|w| self.evaluate(w)).collect()
    }
}

/// Checks `lhs = rhs` for a relation written as `"lhs = rhs"`, comparing projectively.
pub fn verify_relation(relation: &str, table: &GeneratorTable) -> Result<bool> {
    let (lhs, rhs) = relation.split_once('=').ok_or_else(|| Error::Parse(format!("relation `{relation}` has no `=`")))?;
    let l = table.evaluate(lhs)?;
    let r = table.evaluate(rhs)?;
    Ok(normalize(&l) == normalize(&r))
}

/// A structural claim about a group; subgroups are lists of generator words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    Order { value: usize },
    Abelian { value: bool },
    Normal { subgroup: Vec<String> },
    QuotientOrder { subgroup: Vec<String>, value: usize },
    /// The subgroup generated by `subgroup` lies inside the closure of `ambient`.
    Contains { subgroup: Vec<String>, ambient: Vec<String> },
    TrivialIntersection { first: Vec<String>, second: Vec<String> },
    OrderSpectrum { subgroup: Vec<String>, spectrum: BTreeMap<usize, usize> },
    Relation { relation: String },
    /// `c b c^-1 = b^a` for some `a`; checks `exponent` when given, records the `a` found.
    Conjugation { conjugator: String, base: String, exponent: Option<i64> },
    InvolutionsIn { subgroup: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimOutcome {
    pub claim: Claim,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalSubgroupData {
    pub subgroup: Vec<String>,
    pub subgroup_order: usize,
    pub quotient_order: usize,
    pub conjugation_exponent: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureCertificate {
    pub order: usize,
    pub is_abelian: bool,
    pub order_spectrum: BTreeMap<usize, usize>,
    pub verified_relations: Vec<(String, bool)>,
    pub normal_subgroup_data: Option<NormalSubgroupData>,
    pub claims: Vec<ClaimOutcome>,
}

impl StructureCertificate {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

fn conjugation_exponent(g: &FiniteGroup, conjugator: &MonomialMatrix, base: &MonomialMatrix) -> Option<i64> {
    let conj = g.multiply(&g.multiply(conjugator, base), &conjugator.inverse());
    let ord = g.element_order(base) as i64;
    (0..ord).find(|&a| g.canonical(&base.pow(a)) == g.canonical(&conj))
}

/// Checks every claim by enumeration. Failed claims are reported, not raised;
/// malformed words in a claim are errors.
pub fn certify_structure(group: &FiniteGroup, table: &GeneratorTable, claims: &[Claim]) -> Result<StructureCertificate> {
    let sub = |words: &[String]| -> Result<FiniteGroup> { group.subgroup(&table.evaluate_all(words)?) };
    let mut outcomes = Vec::new();
    let mut relations = Vec::new();
    let mut normal_data: Option<NormalSubgroupData> = None;
    for claim in claims {
        let (passed, detail) = match claim {
            Claim::Order { value } => (group.order() == *value, format!("order {}", group.order())),
            Claim::Abelian { value } => {
                let ab = group.is_abelian();
                let detail = match (ab, first_noncommuting(group)) {
                    (false, Some((a, b))) => format!("nonabelian: {a} and {b} do not commute"),
                    _ => format!("abelian = {ab}"),
                };
                (ab == *value, detail)
            }
            Claim::Normal { subgroup } => {
                let h = sub(subgroup)?;
                let witness = group.normality_witness(&h);
                let detail = match &witness {
                    Some((g, x)) => format!("conjugating {x} by {g} leaves the subgroup"),
                    None => format!("normal subgroup of order {}", h.order()),
                };
                // the first normal subgroup named is the one recorded
                if witness.is_none() && h.is_subset_of(group) && normal_data.is_none() {
                    normal_data = Some(NormalSubgroupData {
                        subgroup: subgroup.clone(),
                        subgroup_order: h.order(),
                        quotient_order: group.order() / h.order(),
                        conjugation_exponent: None,
                    });
                }
                (witness.is_none() && h.is_subset_of(group), detail)
            }
            Claim::QuotientOrder { subgroup, value } => {
                let h = sub(subgroup)?;
                let q = group.order() / h.order();
                (group.order().is_multiple_of(h.order()) && q == *value, format!("|G|/|H| = {}/{}", group.order(), h.order()))
            }
            Claim::Contains { subgroup, ambient } => {
                let h = sub(subgroup)?;
                let a = sub(ambient)?;
                let outside = h.elements().iter().find(|g| !a.contains(g));
                match outside {
                    Some(g) => (false, format!("{g} lies outside the ambient group")),
                    None => (true, format!("subgroup of order {} inside ambient of order {}", h.order(), a.order())),
                }
            }
            Claim::TrivialIntersection { first, second } => {
                let k = sub(first)?.intersection_order(&sub(second)?);
                (k == 1, format!("intersection order {k}"))
            }
            Claim::OrderSpectrum { subgroup, spectrum } => {
                let found = sub(subgroup)?.order_spectrum();
                (found == *spectrum, format!("spectrum {found:?}"))
            }
            Claim::Relation { relation } => {
                let ok = verify_relation(relation, table)?;
                relations.push((relation.clone(), ok));
                (ok, format!("{relation}: {ok}"))
            }
            Claim::Conjugation { conjugator, base, exponent } => {
                let c = table.evaluate(conjugator)?;
                let b = table.evaluate(base)?;
                let found = conjugation_exponent(group, &c, &b);
                if let Some(d) = normal_data.as_mut() {
                    d.conjugation_exponent = found;
                }
                let passed = match (found, exponent) {
                    (Some(a), Some(e)) => a == e.rem_euclid(group.element_order(&b) as i64),
                    (Some(_), None) => true,
                    (None, _) => false,
                };
                let detail = match found {
                    Some(a) => format!("{conjugator} {base} {conjugator}^-1 = {base}^{a}"),
                    None => format!("{conjugator} does not normalize <{base}>"),
                };
                (passed, detail)
            }
            Claim::InvolutionsIn { subgroup } => {
                let h = sub(subgroup)?;
                let inv = group.involutions();
                let outside = inv.iter().find(|g| !h.contains(g));
                match outside {
                    Some(g) => (false, format!("involution {g} lies outside the subgroup")),
                    None => (true, format!("all {} involutions lie in a subgroup of order {}", inv.len(), h.order())),
                }
            }
        };
        outcomes.push(ClaimOutcome { claim: claim.clone(), passed, detail });
    }
    Ok(StructureCertificate {
        order: group.order(),
        is_abelian: group.is_abelian(),
        order_spectrum: group.order_spectrum(),
        verified_relations: relations,
        normal_subgroup_data: normal_data,
        claims: outcomes,
    })
}

fn first_noncommuting(group: &FiniteGroup) -> Option<(MonomialMatrix, MonomialMatrix)> {
    let g = group.generators();
    (0..g.len())
        .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !group.commute(&g[i], &g[j]))
        .map(|(i, j)| (g[i].clone(), g[j].clone()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvolutionCertificate {
    pub involution_count: usize,
    pub involutions: Vec<MonomialMatrix>,
    pub subgroup_order: usize,
    pub outside_subgroup: Vec<MonomialMatrix>,
    pub subgroup_in_ambient: bool,
    pub passed: bool,
}

/// Enumerates the involutions of `group`, checks each lies in the subgroup
/// generated by `designated`, and that this subgroup lies in the closure of `ambient`.
pub fn involution_localization(
    group: &FiniteGroup,
    designated: &[MonomialMatrix],
    ambient: &[MonomialMatrix],
) -> Result<InvolutionCertificate> {
    let h = group.subgroup(designated)?;
    let a = group.subgroup(ambient)?;
    let involutions = group.involutions();
    let outside_subgroup: Vec<MonomialMatrix> = involutions.iter().filter(|g| !h.contains(g)).cloned().collect();
    let subgroup_in_ambient = h.is_subset_of(&a);
    Ok(InvolutionCertificate {
        involution_count: involutions.len(),
        passed: outside_subgroup.is_empty() && subgroup_in_ambient,
        involutions,
        subgroup_order: h.order(),
        outside_subgroup,
        subgroup_in_ambient,
    })
}

/// The three groups of order 64 acting on the quadric system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    G,
    G1,
    G2,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::G => "G",
            Preset::G1 => "G1",
            Preset::G2 => "G2",
        }
    }

    pub fn generator_names(self) -> &'static [&'static str] {
        match self {
            Preset::G => &["tau", "sigma"],
            Preset::G1 => &["tau", "sigma1"],
            Preset::G2 => &["tau", "sigma2", "sigma3"],
        }
    }

    pub fn generators(self) -> Vec<MonomialMatrix> {
        let t = GeneratorTable::presets();
        self.generator_names().iter().map(|n| t.get(n).expect("preset").clone()).collect()
    }

    pub fn group(self) -> FiniteGroup {
        closure(&self.generators(), ClosureMode::Projective, DEFAULT_CAP).expect("presets close")
    }

    /// Subgroup generators expected to contain every involution.
    pub fn involution_subgroup(self) -> Vec<String> {
        match self {
            Preset::G => vec!["tau".into(), "sigma".into()],
            Preset::G1 => vec!["tau".into(), "sigma1^4".into()],
            Preset::G2 => vec!["tau".into(), "sigma2^2".into()],
        }
    }

    pub fn claims(self) -> Vec<Claim> {
        let w = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let tau = w(&["tau"]);
        let mut claims = vec![Claim::Order { value: 64 }];
        match self {
            Preset::G => claims.extend([
                Claim::Abelian { value: true },
                Claim::Normal { subgroup: tau.clone() },
                Claim::QuotientOrder { subgroup: tau.clone(), value: 8 },
                Claim::TrivialIntersection { first: tau, second: w(&["sigma"]) },
                Claim::Relation { relation: "tau^8 = 1".into() },
                Claim::Relation { relation: "sigma^8 = 1".into() },
                Claim::Relation { relation: "sigma tau sigma^-1 = tau".into() },
            ]),
            Preset::G1 => claims.extend([
                Claim::Abelian { value: false },
                Claim::Normal { subgroup: tau.clone() },
                Claim::QuotientOrder { subgroup: tau.clone(), value: 8 },
                Claim::TrivialIntersection { first: tau, second: w(&["sigma1"]) },
                Claim::Relation { relation: "tau^8 = 1".into() },
                Claim::Relation { relation: "sigma1^8 = 1".into() },
                Claim::Conjugation { conjugator: "sigma1".into(), base: "tau".into(), exponent: None },
                Claim::InvolutionsIn { subgroup: Preset::G1.involution_subgroup() },
                Claim::Contains { subgroup: Preset::G1.involution_subgroup(), ambient: w(&["tau", "sigma"]) },
            ]),
            Preset::G2 => claims.extend([
                Claim::Abelian { value: false },
                Claim::Normal { subgroup: tau.clone() },
                Claim::QuotientOrder { subgroup: tau.clone(), value: 8 },
                Claim::TrivialIntersection { first: tau, second: w(&["sigma2", "sigma3"]) },
                Claim::OrderSpectrum {
                    subgroup: w(&["sigma2", "sigma3"]),
                    spectrum: BTreeMap::from([(1, 1), (2, 1), (4, 6)]),
                },
                Claim::Relation { relation: "tau^8 = 1".into() },
                Claim::Relation { relation: "sigma3 sigma2 sigma3^-1 = sigma2^-1".into() },
                Claim::Relation { relation: "sigma2^2 = sigma3^2".into() },
                Claim::InvolutionsIn { subgroup: Preset::G2.involution_subgroup() },
                Claim::Contains { subgroup: Preset::G2.involution_subgroup(), ambient: w(&["tau", "sigma"]) },
            ]),
        }
        claims
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(Preset::G),
            "G1" | "g1" => Ok(Preset::G1),
            "G2" | "g2" => Ok(Preset::G2),
            _ => Err(Error::Parse(format!("unknown group `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn proj(gens: &[MonomialMatrix]) -> FiniteGroup {
        closure(gens, ClosureMode::Projective, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn normalization_absorbs_scalars() {
        let id = MonomialMatrix::identity(8, 8);
        assert_eq!(normalize(&id), normalize(&MonomialMatrix::scalar(8, 8, 1)));
        let ts = make_tau().compose(&make_sigma()).unwrap();
        let st = make_sigma().compose(&make_tau()).unwrap();
        assert_ne!(ts, st);
        // the per-index phases differ by one constant
        let diff: Vec<i64> =
            ts.phases().iter().zip(st.phases()).map(|(a, b)| (i64::from(*a) - i64::from(*b)).rem_euclid(8)).collect();
        assert!(diff.windows(2).all(|w| w[0] == w[1]) && diff[0] != 0);
        assert_eq!(normalize(&ts), normalize(&st));
        assert_eq!(normalize(normalize(&ts).rep()), normalize(&ts));
    }

    #[test]
    fn closure_orders() {
        assert_eq!(proj(&[make_tau()]).order(), 8);
        assert_eq!(proj(&[make_tau(), make_sigma()]).order(), 64);
        let lin = closure(&[make_tau(), make_sigma()], ClosureMode::Linear, DEFAULT_CAP).unwrap();
        assert_eq!(lin.order(), 512);
        assert_eq!(lin.scalar_count(), 8);
        assert_eq!(lin.center_order(), 8);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = closure(&[make_tau(), make_sigma()], ClosureMode::Linear, 100).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(100)));
    }

    #[test]
    fn element_orders() {
        let g = proj(&[make_tau(), make_sigma()]);
        assert_eq!(g.element_order(&MonomialMatrix::identity(8, 8)), 1);
        assert_eq!(g.element_order(&make_tau().pow(4)), 2);
        let h = proj(&[make_sigma2(), make_sigma3()]);
        assert_eq!(h.order_spectrum(), BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
    }

    #[test]
    fn abelianness() {
        assert!(proj(&[make_tau()]).is_abelian());
        let g = proj(&[make_tau(), make_sigma()]);
        assert!(g.is_abelian() && g.is_abelian_exhaustive());
        assert!(!proj(&[make_tau(), make_sigma1()]).is_abelian());
    }

    #[test]
    fn relations() {
        let t = GeneratorTable::presets();
        assert!(verify_relation("tau^8 = 1", &t).unwrap());
        let holding: Vec<i64> = [3, 5, 7]
            .into_iter()
            .filter(|a| verify_relation(&format!("sigma1 tau sigma1^-1 = tau^{a}"), &t).unwrap())
            .collect();
        assert_eq!(holding, vec![5]);
        assert!(verify_relation("sigma3 sigma2 sigma3^-1 = sigma2^-1", &t).unwrap());
        assert!(matches!(verify_relation("rho = 1", &t), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn preset_structure_claims_hold() {
        let t = GeneratorTable::presets();
        for p in [Preset::G, Preset::G1, Preset::G2] {
            let cert = certify_structure(&p.group(), &t, &p.claims()).unwrap();
            for c in &cert.claims {
                assert!(c.passed, "{}: {:?} failed: {}", p.name(), c.claim, c.detail);
            }
        }
        let cert = certify_structure(&Preset::G1.group(), &t, &Preset::G1.claims()).unwrap();
        assert_eq!(cert.normal_subgroup_data.unwrap().conjugation_exponent, Some(5));
    }

    #[test]
    fn failing_claims_carry_details() {
        let t = GeneratorTable::presets();
        let g1 = Preset::G1.group();
        let cert = certify_structure(&g1, &t, &[Claim::Abelian { value: true }, Claim::Normal { subgroup: vec!["sigma1".into()] }]).unwrap();
        assert!(!cert.passed());
        assert!(cert.claims[0].detail.contains("do not commute"));
        assert!(!cert.claims[1].passed);
    }

    #[test]
    fn involutions_localize() {
        let t = GeneratorTable::presets();
        let ambient = t.evaluate_all(&["tau".into(), "sigma".into()]).unwrap();
        assert_eq!(Preset::G.group().involutions().len(), 3);
        for p in [Preset::G1, Preset::G2] {
            let designated = t.evaluate_all(&p.involution_subgroup()).unwrap();
            let cert = involution_localization(&p.group(), &designated, &ambient).unwrap();
            assert_eq!(cert.involution_count, 3);
            assert!(cert.passed);
        }
    }

    #[test]
    fn convention_and_generator_order_independence() {
        for p in [Preset::G, Preset::G1, Preset::G2] {
            let gens = p.generators();
            let base = p.group();
            let mut rev = gens.clone();
            rev.reverse();
            let inv: Vec<_> = gens.iter().map(MonomialMatrix::inverse).collect();
            for other in [proj(&rev), proj(&inv)] {
                assert_eq!(other.order(), base.order());
                assert!(other.is_subset_of(&base));
            }
        }
    }

    #[test]
    fn word_parsing() {
        let t = GeneratorTable::presets();
        assert_eq!(t.evaluate("sigma^-1").unwrap(), make_sigma().inverse());
        assert_eq!(t.evaluate("tau*tau").unwrap(), make_tau().pow(2));
        assert!(t.evaluate("1").unwrap().is_identity());
        assert!(t.evaluate("tau^x").is_err());
    }
}
