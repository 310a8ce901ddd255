//! Exact reduced row echelon forms over a field, built incrementally.

use super::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vec(field: Field, n: usize) -> Vector {
    vec![Scalar::zero(field); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(field, n);
    v[i] = Scalar::one(field);
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// a += c * b
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}

/// Reduced row echelon basis of a row space. Rows stay sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub field: Field,
    pub ncols: usize,
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a Vector>>(field: Field, ncols: usize, vs: I) -> Self {
        let mut e = Echelon::new(field, ncols);
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of v modulo the row space.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !v[pc].is_zero() {
                let c = -&v[pc];
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v.to_vec()))
    }

    /// Coefficients of v in the echelon basis, if v lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[pc].is_zero() {
                let c = -&row[pc];
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        true
    }

    /// Basis of the right nullspace of the rows, itself in reduced echelon form.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut out = Echelon::new(self.field, self.ncols);
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut x = unit_vec(self.field, self.ncols, f);
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                x[pc] = -&row[f];
            }
            out.insert(x);
        }
        out.rows
    }

    /// Indices of non-pivot columns: coordinates of a canonical complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}
