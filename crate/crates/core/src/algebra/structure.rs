//! Algebras given by structure constants, their graded versions, and
//! subspaces kept in reduced echelon form.

use std::collections::BTreeSet;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::AlgebraError;
use crate::kernel::{is_zero_vec, unit_vec, zero_vec, Echelon, Field, Mat, Scalar, Vector};
use crate::semigroups::FiniteSemigroup;

/// A subspace of F^n stored by its reduced echelon basis, so equality of
/// subspaces is equality of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ech: Echelon,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Self {
        Subspace { ech: Echelon::new(field, n) }
    }

    pub fn full(field: Field, n: usize) -> Self {
        Subspace::span(field, n, (0..n).map(|i| unit_vec(field, n, i)))
    }

    pub fn span(field: Field, n: usize, vecs: impl IntoIterator<Item = Vector>) -> Self {
        let mut ech = Echelon::new(field, n);
        for v in vecs {
            ech.insert(v);
        }
        Subspace { ech }
    }

    pub fn field(&self) -> Field {
        self.ech.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.ncols
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &[Vector] {
        &self.ech.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.ech.pivots
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.ech.contains(v)
    }

    pub fn reduce(&self, v: Vector) -> Vector {
        self.ech.reduce(v)
    }

    /// Coordinates in the echelon basis.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.ech.coords(v)
    }

    pub fn insert(&mut self, v: Vector) -> bool {
        self.ech.insert(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.ech.insert(v.clone());
        }
        s
    }

    /// The annihilator in the dual: all x with b.x = 0 for every basis row b.
    pub fn perp(&self) -> Vec<Vector> {
        self.ech.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim();
        let mut both = Echelon::new(self.field(), n);
        for v in self.perp().into_iter().chain(other.perp()) {
            both.insert(v);
        }
        Subspace::span(self.field(), n, both.kernel())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn free_columns(&self) -> Vec<usize> {
        self.ech.free_columns()
    }
}

/// True when the dimensions of the parts add up to the dimension of their sum.
pub fn is_direct(parts: &[&Subspace]) -> bool {
    let Some(first) = parts.first() else {
        return true;
    };
    let mut total = Subspace::zero(first.field(), first.ambient_dim());
    let mut d = 0;
    for p in parts {
        total = total.sum(p);
        d += p.dim();
    }
    total.dim() == d
}

pub fn sum_all(field: Field, n: usize, parts: &[Subspace]) -> Subspace {
    parts.iter().fold(Subspace::zero(field, n), |acc, p| acc.sum(p))
}

/// An associative algebra by structure constants: b_i b_j = table[i*dim+j].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Vec<Vector>,
    sparse: Vec<Vec<(usize, Scalar)>>,
}

impl Algebra {
    pub fn new(field: Field, dim: usize, table: Vec<Vector>) -> Result<Self, AlgebraError> {
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) {
            return Err(AlgebraError::Shape(format!("expected {dim}x{dim} products of length {dim}")));
        }
        if table.iter().flatten().any(|x| x.field() != field) {
            return Err(AlgebraError::Shape("mixed scalar fields".into()));
        }
        let sparse = table
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect())
            .collect();
        Ok(Algebra { field, dim, table, sparse })
    }

    /// Closes a family of linearly independent square matrices under the
    /// matrix product and reads off structure constants.
    pub fn from_matrices(field: Field, basis: &[Mat]) -> Result<Self, AlgebraError> {
        let dim = basis.len();
        let flat: Vec<Vector> = basis.iter().map(|m| m.entries().to_vec()).collect();
        let span = Echelon::from_vectors(field, flat.first().map_or(0, Vec::len), flat.iter());
        if span.rank() != dim {
            return Err(AlgebraError::Shape("matrix basis is linearly dependent".into()));
        }
        let mut table = Vec::with_capacity(dim * dim);
        for a in basis {
            for b in basis {
                let prod = a.mul(b).map_err(|e| AlgebraError::Shape(e.to_string()))?;
                let c = crate::kernel::solve_or_member(&flat, prod.entries())
                    .map_err(|e| AlgebraError::Shape(e.to_string()))?
                    .ok_or_else(|| AlgebraError::Shape("matrix span is not closed under products".into()))?;
                table.push(c);
            }
        }
        Algebra::new(field, dim, table)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn basis_product_sparse(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn zero_vec(&self) -> Vector {
        zero_vec(self.field, self.dim)
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit_vec(self.field, self.dim, i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.sparse[i * self.dim + j] {
                    out[*k] = &out[*k] + &(&c * v);
                }
            }
        }
        out
    }

    pub fn mul3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.mul(&self.mul(x, y), z)
    }

    /// Matrix of y -> x y.
    pub fn left_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.unit(j))).collect();
        Mat::from_rows_with_cols(self.dim, cols).expect("square").transpose()
    }

    /// Matrix of y -> y x.
    pub fn right_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.unit(j), x)).collect();
        Mat::from_rows_with_cols(self.dim, cols).expect("square").transpose()
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn span(&self, vecs: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace::span(self.field, self.dim, vecs)
    }

    /// span{u w : u in U, w in W}
    pub fn product_space(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field, self.dim);
        for a in u.basis() {
            for b in w.basis() {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    pub fn left_multiple(&self, x: &[Scalar], w: &Subspace) -> Subspace {
        self.span(w.basis().iter().map(|b| self.mul(x, b)))
    }

    pub fn right_multiple(&self, w: &Subspace, x: &[Scalar]) -> Subspace {
        self.span(w.basis().iter().map(|b| self.mul(b, x)))
    }

    /// All failing associativity triples of basis elements.
    pub fn associativity_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let left = self.mul(ij, &self.unit(k));
                    let right = self.mul(&self.unit(i), self.basis_product(j, k));
                    if left != right {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// Two-sided identity, if one exists.
    pub fn identity(&self) -> Option<Vector> {
        // Solve e b_i = b_i and b_i e = b_i, linear in e.
        let n = self.dim;
        if n == 0 {
            return Some(vec![]);
        }
        let mut cols: Vec<Vector> = vec![Vec::with_capacity(2 * n * n); n];
        let mut rhs = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for (k, col) in cols.iter_mut().enumerate() {
                col.extend(self.basis_product(k, i).iter().cloned());
                col.extend(self.basis_product(i, k).iter().cloned());
            }
            let ui = self.unit(i);
            rhs.extend(ui.iter().cloned());
            rhs.extend(ui);
        }
        crate::kernel::solve_or_member(&cols, &rhs).expect("shapes agree")
    }

    /// Some e in K with k e = k for every k in K.
    pub fn right_identity_in(&self, k: &Subspace) -> Option<Vector> {
        self.one_sided_identity(k, true)
    }

    /// Some e in K with e k = k for every k in K.
    pub fn left_identity_in(&self, k: &Subspace) -> Option<Vector> {
        self.one_sided_identity(k, false)
    }

    fn one_sided_identity(&self, k: &Subspace, right: bool) -> Option<Vector> {
        let basis = k.basis();
        if basis.is_empty() {
            return Some(self.zero_vec());
        }
        let cols: Vec<Vector> = basis
            .iter()
            .map(|kb| {
                basis.iter().flat_map(|ka| if right { self.mul(ka, kb) } else { self.mul(kb, ka) }).collect()
            })
            .collect();
        let rhs: Vector = basis.iter().flatten().cloned().collect();
        let c = crate::kernel::solve_or_member(&cols, &rhs).expect("shapes agree")?;
        let mut e = self.zero_vec();
        for (ci, b) in c.iter().zip(basis) {
            crate::kernel::axpy(&mut e, ci, b);
        }
        Some(e)
    }

    /// {z : z b = b z for every basis b}
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Echelon::new(self.field, n);
        for i in 0..n {
            for l in 0..n {
                let row: Vector = (0..n).map(|k| &self.basis_product(k, i)[l] - &self.basis_product(i, k)[l]).collect();
                rows.insert(row);
            }
        }
        Subspace::span(self.field, n, rows.kernel())
    }

    /// Structure constants of a subspace closed under multiplication, in
    /// the subspace's echelon basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<Algebra, AlgebraError> {
        let b = s.basis();
        let mut table = Vec::with_capacity(b.len() * b.len());
        for x in b {
            for y in b {
                let p = self.mul(x, y);
                table.push(s.coords(&p).ok_or_else(|| AlgebraError::Shape("subspace not closed".into()))?);
            }
        }
        Algebra::new(self.field, b.len(), table)
    }

    /// Structure constants in an arbitrary basis of a subalgebra.
    pub fn in_basis(&self, basis: &[Vector]) -> Result<Algebra, AlgebraError> {
        if self.span(basis.iter().cloned()).dim() != basis.len() {
            return Err(AlgebraError::Shape("basis is linearly dependent".into()));
        }
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for x in basis {
            for y in basis {
                let c = crate::kernel::solve_or_member(basis, &self.mul(x, y))
                    .map_err(|e| AlgebraError::Shape(e.to_string()))?
                    .ok_or_else(|| AlgebraError::Shape("span is not closed under products".into()))?;
                table.push(c);
            }
        }
        Algebra::new(self.field, basis.len(), table)
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }

    pub fn power_is_zero(&self, s: &Subspace, max: usize) -> Option<usize> {
        let mut p = s.clone();
        for k in 1..=max {
            if p.is_zero() {
                return Some(k - 1);
            }
            p = self.product_space(&p, s);
        }
        p.is_zero().then_some(max)
    }
}

/// An algebra whose basis is partitioned by semigroup elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub alg: Algebra,
    pub semigroup: FiniteSemigroup,
    pub degree: Vec<usize>,
    pub names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    /// b_i b_j has a nonzero coordinate on b_k outside degree deg(i)deg(j).
    Grading { i: usize, j: usize, k: usize },
    ZeroDegree { i: usize },
}

impl GradedAlgebra {
    pub fn new(
        alg: Algebra,
        semigroup: FiniteSemigroup,
        degree: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        if degree.len() != alg.dim() {
            return Err(AlgebraError::Shape("one degree per basis element".into()));
        }
        if let Some(&d) = degree.iter().find(|&&d| d >= semigroup.size()) {
            return Err(AlgebraError::Shape(format!("degree {d} outside the semigroup")));
        }
        let names = names.unwrap_or_else(|| (0..alg.dim()).map(|i| format!("b{i}")).collect());
        if names.len() != alg.dim() {
            return Err(AlgebraError::Shape("one name per basis element".into()));
        }
        Ok(GradedAlgebra { alg, semigroup, degree, names })
    }

    /// Trivial grading by the one-element semigroup.
    pub fn trivially_graded(alg: Algebra) -> Self {
        let n = alg.dim();
        GradedAlgebra { alg, semigroup: crate::semigroups::trivial(), degree: vec![0; n], names: default_names(n) }
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn component(&self, t: usize) -> Subspace {
        let alg = &self.alg;
        alg.span((0..self.dim()).filter(|&i| self.degree[i] == t).map(|i| alg.unit(i)))
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.degree.iter().copied().collect()
    }

    /// Every associativity failure and grading-axiom failure.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if let Some(z) = self.semigroup.zero() {
            for (i, &d) in self.degree.iter().enumerate() {
                if d == z {
                    out.push(Violation::ZeroDegree { i });
                }
            }
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let st = self.semigroup.mul(self.degree[i], self.degree[j]);
                let zero_target = self.semigroup.is_zero_elem(st);
                for (k, _) in self.alg.basis_product_sparse(i, j) {
                    if zero_target || self.degree[*k] != st {
                        out.push(Violation::Grading { i, j, k: *k });
                    }
                }
            }
        }
        out.extend(self.alg.associativity_violations().into_iter().map(|(i, j, k)| Violation::Associativity { i, j, k }));
        out
    }

    /// SHA-256 over field, semigroup, degrees and structure constants.
    pub fn content_hash(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(self.field().to_string().as_bytes());
        h.update((self.semigroup.size() as u64).to_le_bytes());
        for &x in self.semigroup.table() {
            h.update((x as u64).to_le_bytes());
        }
        h.update(format!("{:?}", self.semigroup.zero()).as_bytes());
        for &d in &self.degree {
            h.update((d as u64).to_le_bytes());
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, v) in self.alg.basis_product_sparse(i, j) {
                    h.update(format!("{i},{j},{k}={v};").as_bytes());
                }
            }
        }
        h.finalize().into()
    }

    /// Same algebra, new grading.
    pub fn regrade(&self, semigroup: FiniteSemigroup, degree: Vec<usize>) -> Result<Self, AlgebraError> {
        GradedAlgebra::new(self.alg.clone(), semigroup, degree, Some(self.names.clone()))
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("b{i}")).collect()
}
