//! Dense row-major matrices of exact scalars.

use std::fmt;

use super::echelon::Vector;
use super::scalar::{Field, Scalar};
use super::KernelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Mat, KernelError> {
        if entries.len() != rows * cols {
            return Err(KernelError::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Mat { rows, cols, entries })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, entries: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Mat, KernelError> {
        let cols = rows.first().map_or(0, Vec::len);
        Mat::from_rows_with_cols(cols, rows)
    }

    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vector>) -> Result<Mat, KernelError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(KernelError::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r);
        }
        Ok(Mat { rows: n, cols, entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Mat {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(Field::Rational, x)).collect())
            .collect();
        Mat::from_rows(v).expect("rectangular")
    }

    /// Coordinate-list constructor; repeated coordinates accumulate.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Mat, KernelError> {
        let mut m = Mat::zeros(field, rows, cols);
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(KernelError::IndexOutOfRange { row: i, col: j });
            }
            if v.field() != field {
                return Err(KernelError::MixedFields);
            }
            let cur = &m.entries[i * cols + j] + &v;
            m.entries[i * cols + j] = cur;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// The common field of all entries. Empty matrices report None.
    pub fn field(&self) -> Result<Option<Field>, KernelError> {
        let Some(first) = self.entries.first() else {
            return Ok(None);
        };
        let f = first.field();
        if self.entries.iter().any(|x| x.field() != f) {
            return Err(KernelError::MixedFields);
        }
        Ok(Some(f))
    }

    pub fn transpose(&self) -> Mat {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, KernelError> {
        if self.cols != other.rows {
            return Err(KernelError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let field = match (self.field()?, other.field()?) {
            (Some(a), Some(b)) if a != b => return Err(KernelError::MixedFields),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => Field::Rational,
        };
        let mut out = Mat::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(v.first().map_or(Field::Rational, Scalar::field));
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
