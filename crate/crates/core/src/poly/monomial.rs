use std::cmp::Ordering;
use std::fmt;

/// Exponent vector. `Ord` is degree-reverse-lexicographic with `x0 > x1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        other.divides(self).then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `Some(i)` if this is `x_i^d` with `d >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // the larger monomial has the smaller exponent in the last differing variable
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("x{i}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_order() {
        // x^2 > xy > y^2 > xz > yz > z^2 in three variables
        let seq = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in seq.windows(2) {
            assert!(w[0] > w[1], "{} > {}", w[0], w[1]);
        }
        assert!(m(&[0, 0, 1]) > m(&[0, 0, 0]));
        // grlex would put x0*x2^2 first
        assert!(m(&[1, 0, 2]) < m(&[0, 2, 1]));
    }

    #[test]
    fn divisibility_helpers() {
        assert!(m(&[1, 0, 1]).divides(&m(&[2, 1, 1])));
        assert_eq!(m(&[2, 1, 1]).div(&m(&[1, 0, 1])), Some(m(&[1, 1, 0])));
        assert_eq!(m(&[2, 0, 0]).lcm(&m(&[1, 3, 0])), m(&[2, 3, 0]));
        assert_eq!(m(&[0, 3, 0]).pure_power_of(), Some(1));
        assert_eq!(m(&[1, 3, 0]).pure_power_of(), None);
        assert_eq!(m(&[0, 0, 0]).pure_power_of(), None);
        assert_eq!(m(&[2, 0, 1]).to_string(), "x0^2*x2");
    }
}
