//! Monomial (permutation-with-phases) matrices.
//!
//! A [`MonomialMatrix`] with permutation `perm` and phases `phases` over the
//! `n`-th roots of unity is the matrix `S` with `S[j][perm[j]] = zeta_n^phases[j]`
//! and zeros elsewhere. It acts on coordinate functions by the substitution
//! `x_j -> zeta_n^phases[j] * x_{perm[j]}` and on points by `p -> S p`, so that
//! `(pullback of q)(p) = q(S p)`. Composition is the matrix product.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{level_of_order, Cyclotomic, MAX_LEVEL};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMonomial", into = "RawMonomial")]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    phases: Vec<u32>,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawMonomial {
    perm: Vec<usize>,
    phases: Vec<i64>,
    #[serde(rename = "N")]
    n: u32,
}

impl TryFrom<RawMonomial> for MonomialMatrix {
    type Error = Error;
    fn try_from(raw: RawMonomial) -> Result<Self> {
        MonomialMatrix::new(raw.perm, raw.phases, raw.n)
    }
}

impl From<MonomialMatrix> for RawMonomial {
    fn from(m: MonomialMatrix) -> Self {
        RawMonomial { perm: m.perm, phases: m.phases.into_iter().map(i64::from).collect(), n: m.n }
    }
}

/// One eigenvalue of a monomial matrix with an explicit eigenbasis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenspaceComponent {
    pub eigenvalue: Cyclotomic,
    /// The eigenvalue as `zeta_64^exponent`.
    pub exponent64: u32,
    pub basis: Vec<Vec<Cyclotomic>>,
}

impl EigenspaceComponent {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, phases: Vec<i64>, n: u32) -> Result<Self> {
        level_of_order(u64::from(n)).map_err(|_| Error::InvalidMonomial(format!("N = {n} is not a power of two in 2..=64")))?;
        if phases.len() != perm.len() {
            return Err(Error::InvalidMonomial(format!("{} phases for {} indices", phases.len(), perm.len())));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidMonomial(format!("{perm:?} is not a permutation")));
            }
        }
        let phases = phases.into_iter().map(|k| k.rem_euclid(i64::from(n)) as u32).collect();
        Ok(MonomialMatrix { perm, phases, n })
    }

    pub fn identity(size: usize, n: u32) -> Self {
        MonomialMatrix { perm: (0..size).collect(), phases: vec![0; size], n }
    }

    pub fn diagonal(phases: Vec<i64>, n: u32) -> Result<Self> {
        Self::new((0..phases.len()).collect(), phases, n)
    }

    /// Builds a permutation from disjoint cycles, reading `(a0 a1 ... ak)` as
    /// the substitution `x_{a_t} -> x_{a_{t+1}}`.
    pub fn from_cycles(size: usize, cycles: &[&[usize]], n: u32) -> Result<Self> {
        let mut perm: Vec<usize> = (0..size).collect();
        let mut touched = vec![false; size];
        for cycle in cycles {
            for (t, &a) in cycle.iter().enumerate() {
                if a >= size || std::mem::replace(&mut touched[a], true) {
                    return Err(Error::InvalidMonomial(format!("cycles {cycles:?} are not disjoint")));
                }
                perm[a] = cycle[(t + 1) % cycle.len()];
            }
        }
        Self::new(perm, vec![0; size], n)
    }

    /// The scalar matrix `zeta_n^k * I`.
    pub fn scalar(size: usize, n: u32, k: i64) -> Self {
        MonomialMatrix { perm: (0..size).collect(), phases: vec![k.rem_euclid(i64::from(n)) as u32; size], n }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[u32] {
        &self.phases
    }

    /// Order `N` of the root of unity the phases refer to.
    pub fn root_order(&self) -> u32 {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.phases.iter().all(|&k| k == 0)
    }

    pub fn is_scalar(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.phases.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Matrix product `self * other`; as substitutions, `other` is applied to
    /// the image of `self`, so pullbacks compose contravariantly.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::MismatchedOrder(self.n, other.n));
        }
        if self.size() != other.size() {
            return Err(Error::Dimension(format!("sizes {} and {}", self.size(), other.size())));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let phases = self.perm.iter().zip(&self.phases).map(|(&p, &k)| (k + other.phases[p]) % self.n).collect();
        MonomialMatrix { perm, phases, n: self.n }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.size()];
        let mut phases = vec![0; self.size()];
        for (j, (&p, &k)) in self.perm.iter().zip(&self.phases).enumerate() {
            perm[p] = j;
            phases[p] = (self.n - k) % self.n;
        }
        MonomialMatrix { perm, phases, n: self.n }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.size(), self.n);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose_unchecked(&base);
        }
        acc
    }

    /// The same matrix with phases expressed over `zeta_n`; `n` must be a multiple of the current order.
    pub fn with_root_order(&self, n: u32) -> Result<Self> {
        level_of_order(u64::from(n))?;
        if !n.is_multiple_of(self.n) {
            return Err(Error::MismatchedOrder(self.n, n));
        }
        let f = n / self.n;
        Ok(MonomialMatrix { perm: self.perm.clone(), phases: self.phases.iter().map(|&k| k * f).collect(), n })
    }

    /// Multiplies by the scalar `zeta_n^k`.
    pub fn scaled(&self, k: i64) -> Self {
        let n = i64::from(self.n);
        let phases = self.phases.iter().map(|&p| (i64::from(p) + k).rem_euclid(n) as u32).collect();
        MonomialMatrix { perm: self.perm.clone(), phases, n: self.n }
    }

    fn level(&self) -> u8 {
        level_of_order(u64::from(self.n)).expect("validated at construction")
    }

    pub fn phase_value(&self, j: usize) -> Cyclotomic {
        Cyclotomic::zeta_power(self.level(), i64::from(self.phases[j])).reduced()
    }

    /// `S p`, i.e. `(S p)_j = zeta^phases[j] * p_{perm[j]}`.
    pub fn apply_to_point(&self, p: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if p.len() != self.size() {
            return Err(Error::Dimension(format!("point of length {} for size {}", p.len(), self.size())));
        }
        let level = self.level();
        Ok(self.perm.iter().zip(&self.phases).map(|(&q, &k)| p[q].mul_zeta(level, i64::from(k))).collect())
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.size(), self.size());
        for j in 0..self.size() {
            m[(j, self.perm[j])] = self.phase_value(j);
        }
        m
    }

    /// Disjoint cycles of the permutation, each starting at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.perm[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.perm[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Exact eigen-decomposition of `S`.
    ///
    /// A cycle `j_0 -> ... -> j_{L-1}` with phase sum `k` contributes the `L`
    /// eigenvalues `zeta_{N L}^{k + N t}`, each with an eigenvector supported on
    /// the cycle. Eigenvectors from different cycles sharing an eigenvalue are
    /// merged into one component. Fails unless `N L` divides 64.
    pub fn eigenspaces(&self) -> Result<Vec<EigenspaceComponent>> {
        let top = 1u64 << MAX_LEVEL;
        let n = u64::from(self.n);
        let mut components: Vec<EigenspaceComponent> = Vec::new();
        let mut by_exponent: HashMap<u32, usize> = HashMap::new();
        for cycle in self.cycles() {
            let len = cycle.len() as u64;
            if !top.is_multiple_of(n * len) {
                return Err(Error::UnsupportedOrder(n * len));
            }
            let unit = (top / n) as i64; // zeta_N = zeta_64^unit
            let step = (top / (n * len)) as i64; // zeta_{NL} = zeta_64^step
            let k: i64 = cycle.iter().map(|&j| i64::from(self.phases[j])).sum();
            for t in 0..len as i64 {
                let e = ((k + n as i64 * t) * step).rem_euclid(top as i64);
                let mut v = vec![Cyclotomic::zero(); self.size()];
                let mut partial = 0i64;
                for (s, &j) in cycle.iter().enumerate() {
                    v[j] = Cyclotomic::zeta_power(MAX_LEVEL, s as i64 * e - unit * partial).reduced();
                    partial += i64::from(self.phases[j]);
                }
                let idx = *by_exponent.entry(e as u32).or_insert_with(|| {
                    components.push(EigenspaceComponent {
                        eigenvalue: Cyclotomic::zeta_power(MAX_LEVEL, e).reduced(),
                        exponent64: e as u32,
                        basis: Vec::new(),
                    });
                    components.len() - 1
                });
                components[idx].basis.push(v);
            }
        }
        Ok(components)
    }
}

/// The matrix acting on point coordinates: `(pullback of q under g)(p) = q(point_matrix(g) p)`.
/// With the storage convention of [`MonomialMatrix`] this is `g` itself.
pub fn point_matrix(g: &MonomialMatrix) -> MonomialMatrix {
    g.clone()
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(ToString::to_string).collect::<String>()))
            .collect();
        let perm = if cycles.is_empty() { "()".to_string() } else { cycles.concat() };
        let phases: Vec<String> = self.phases.iter().map(ToString::to_string).collect();
        write!(f, "{perm} phases [{}] mod {}", phases.join(","), self.n)
    }
}
