use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::quadratic::{QuadraticField, QuadraticNumber};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over a single quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: QuadraticField,
    entries: Vec<QuadraticNumber>,
}

impl ExactMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        field: QuadraticField,
        entries: Vec<QuadraticNumber>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| {
                if e.is_rational() {
                    Ok(QuadraticNumber::from_rational(e.a().clone(), field))
                } else if e.field() == field {
                    Ok(e)
                } else {
                    Err(Error::FieldMismatch(field.radicand(), e.field().radicand()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows, cols, field, entries })
    }

    pub fn from_rows(field: QuadraticField, rows: Vec<Vec<QuadraticNumber>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(n, cols, field, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, field: QuadraticField) -> Self {
        let entries = (0..n * n)
            .map(|i| QuadraticNumber::from_int(i64::from(i / n == i % n), field))
            .collect();
        ExactMatrix { rows: n, cols: n, field, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadraticNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[QuadraticNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> ExactMatrix {
        ExactMatrix {
            rows: end - start,
            cols: self.cols,
            field: self.field,
            entries: self.entries[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> ExactMatrix {
        ExactMatrix {
            entries: self.entries.iter().map(|e| e.scale(factor)).collect(),
            ..self.clone()
        }
    }

    /// `self * z` for an integer vector.
    pub fn mul_int_vec(&self, z: &[i64]) -> Vec<QuadraticNumber> {
        assert_eq!(z.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = QuadraticNumber::zero(self.field);
                for (e, &zj) in self.row(i).iter().zip(z) {
                    if zj != 0 {
                        acc += &e.mul_int(zj);
                    }
                }
                acc
            })
            .collect()
    }

    /// Splits every row into its rational and irrational coefficient rows.
    /// An entry `a + b sqrt D` vanishes iff `a` and `b` both vanish, so the
    /// integer kernel of `self` is the rational kernel of the split matrix.
    pub fn split_rational(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::with_capacity(2 * self.rows);
        for i in 0..self.rows {
            out.push(self.row(i).iter().map(|e| e.a().clone()).collect());
            out.push(self.row(i).iter().map(|e| e.b().clone()).collect());
        }
        out
    }

    /// Rank over the field `Q(sqrt D)`, which equals the rank over `R`.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<QuadraticNumber>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().expect("nonzero pivot");
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                for c in col..self.cols {
                    let t = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse over the field via Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let id = ExactMatrix::identity(n, self.field);
        let mut m: Vec<Vec<QuadraticNumber>> = (0..n)
            .map(|i| self.row(i).iter().chain(id.row(i)).cloned().collect())
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, p);
            let inv = m[col][col].inv().expect("nonzero pivot");
            for c in 0..2 * n {
                m[col][c] = &m[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..2 * n {
                    let t = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        let entries = m.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some(ExactMatrix { rows: n, cols: n, field: self.field, entries })
    }
}

/// Rank over `Q` of the split rational system (see
/// [`ExactMatrix::split_rational`]), by fraction-free integer elimination.
pub fn rational_rank(m: &ExactMatrix) -> usize {
    integer_rank(&m.split_rational())
}

fn integer_rank(rows: &[Vec<Rational>]) -> usize {
    // clear denominators row by row, then eliminate with gcd-normalised rows
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let pivot = m[rank][col].clone();
            let lead = m[r][col].clone();
            let mut g = BigInt::zero();
            for c in 0..cols {
                let v = &m[r][c] * &pivot - &m[rank][c] * &lead;
                g = g.gcd(&v);
                m[r][c] = v;
            }
            if !g.is_zero() && !g.is_one() {
                for v in m[r].iter_mut() {
                    *v = &*v / &g;
                }
            }
        }
        rank += 1;
    }
    rank
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
