//! Dense exact matrices over the cyclotomic fields.

use std::fmt;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(cols: &[Vec<Cyclotomic>]) -> Result<Self> {
        let m = Self::from_rows(cols.to_vec())?;
        Ok(m.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Cyclotomic::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    /// Gauss-Jordan elimination with exact division.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = &m[(i, j)] - &(&f * &m[(r, j)]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Cyclotomic>> {
        let Echelon { matrix, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic::zero(); self.cols];
                v[f] = Cyclotomic::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Basis of `{c : c^T M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Cyclotomic>> {
        self.transpose().kernel()
    }

    /// One solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Cyclotomic]) -> Result<Option<Vec<Cyclotomic>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let aug = self.augment(b);
        let Echelon { matrix, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Cyclotomic::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    fn augment(&self, b: &[Cyclotomic]) -> Self {
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        Self::from_rows(rows).expect("rectangular")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{rational, root_of_unity};
    use proptest::prelude::*;

    fn int(i: i64) -> Cyclotomic {
        Cyclotomic::from_int(i)
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(4).kernel().is_empty());
        assert_eq!(ExactMatrix::zeros(2, 3).kernel().len(), 3);
        let z = root_of_unity(8, 1).unwrap();
        let z7 = root_of_unity(8, 7).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![int(1), z.clone()], vec![z7, int(1)]]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).unwrap().iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(8).rank(), 8);
        let u = [int(1), int(-2), root_of_unity(8, 3).unwrap()];
        let v = [int(3), Cyclotomic::from_rational(rational(1, 5)), root_of_unity(16, 1).unwrap()];
        let outer = ExactMatrix::from_rows(u.iter().map(|a| v.iter().map(|b| a * b).collect()).collect()).unwrap();
        assert_eq!(outer.rank(), 1);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = ExactMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(2), int(2)]]).unwrap();
        assert!(m.solve(&[int(1), int(3)]).unwrap().is_none());
        let x = m.solve(&[int(1), int(2)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![int(1), int(2)]);
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-2i64..=2, 0i64..8), r * c).prop_map(move |cells| {
                let rows = cells
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(a, k)| root_of_unity(8, k).unwrap().scale(&rational(a, 1))).collect())
                    .collect();
                ExactMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let ker = m.kernel();
            prop_assert_eq!(m.rank() + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Cyclotomic::is_zero));
            }
        }
    }
}
