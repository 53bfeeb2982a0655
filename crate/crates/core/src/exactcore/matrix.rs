use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::ExactScalar;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        let n = rows.len();
        Ok(ExactMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: ExactScalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(ExactScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Integer row echelon form by Bareiss fraction-free elimination.
    ///
    /// Each row is first cleared of denominators. Every intermediate entry is a
    /// minor of that integer matrix, so the division by the previous pivot is
    /// exact. Returns the echelon rows and their pivot columns.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();

        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(found) = (pr..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(pr, found);
            let (top, rest) = a.split_at_mut(pr + 1);
            let pivot_row = &top[pr];
            let pivot = &pivot_row[col];
            for row in rest.iter_mut() {
                let lead = row[col].clone();
                for j in col + 1..self.cols {
                    let num = pivot * &row[j] - &lead * &pivot_row[j];
                    debug_assert!((&num % &prev).is_zero());
                    row[j] = num / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = pivot.clone();
            pivots.push(col);
            pr += 1;
        }
        a.truncate(pr);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Kernel basis `{v : Mv = 0}` read off the reduced echelon form: one
    /// vector per free column, with a 1 in that column and 0 in the other
    /// free columns.
    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let (echelon, pivots) = self.bareiss_echelon();
        let mut reduced: Vec<Vec<ExactScalar>> = echelon
            .into_iter()
            .zip(&pivots)
            .map(|(row, &pc)| {
                let p = row[pc].clone();
                row.into_iter()
                    .map(|x| ExactScalar::new(x, p.clone()))
                    .collect()
            })
            .collect();
        for k in (0..reduced.len()).rev() {
            let pc = pivots[k];
            let (above, below) = reduced.split_at_mut(k);
            let pivot_row = &below[0];
            for row in above.iter_mut() {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }

        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[free] = ExactScalar::one();
                for (row, &pc) in reduced.iter().zip(&pivots) {
                    v[pc] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}
