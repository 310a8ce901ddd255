//! The radical via the trace form, radical quotients, and the simplicity
//! tests: plain, faithful, and graded.

use std::collections::BTreeSet;

use serde::Serialize;

use super::spectral::{field_roots, min_poly};
use super::structure::{Algebra, GradedAlgebra, Subspace};
use super::AlgebraError;
use crate::kernel::{Echelon, Field, Scalar, Vector};
use crate::semigroups::{self, FiniteSemigroup, ReesCoordinates};

/// J(A) = {x : tr(L_x L_y) = 0 for all y}. Valid in characteristic 0 and
/// for primes larger than the dimension.
pub fn jacobson_radical(a: &Algebra) -> Result<Subspace, AlgebraError> {
    let n = a.dim();
    if let Field::Prime(p) = a.field() {
        if p as u128 <= n as u128 {
            return Err(AlgebraError::SmallCharacteristic);
        }
    }
    // (L_i)_{kl} is the b_k coordinate of b_i b_l.
    let mut gram = vec![Scalar::zero(a.field()); n * n];
    for i in 0..n {
        for l in 0..n {
            for (k, cilk) in a.basis_product_sparse(i, l) {
                for j in 0..n {
                    let cjkl = &a.basis_product(j, *k)[l];
                    if !cjkl.is_zero() {
                        gram[i * n + j] = &gram[i * n + j] + &(cilk * cjkl);
                    }
                }
            }
        }
    }
    let mut rows = Echelon::new(a.field(), n);
    for i in 0..n {
        rows.insert(gram[i * n..(i + 1) * n].to_vec());
    }
    let j = a.span(rows.kernel());
    if a.power_is_zero(&j, n + 1).is_none() {
        return Err(AlgebraError::Internal("trace-form radical is not nilpotent".into()));
    }
    Ok(j)
}

/// A/I for a two-sided ideal I. The quotient basis is the images of the
/// standard basis vectors at the non-pivot columns of I.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub alg: Algebra,
    pub ideal: Subspace,
    cols: Vec<usize>,
    ambient: usize,
}

impl Quotient {
    pub fn new(a: &Algebra, ideal: &Subspace) -> Result<Quotient, AlgebraError> {
        let cols = ideal.free_columns();
        let q = Quotient { alg: Algebra::new(a.field(), 0, vec![])?, ideal: ideal.clone(), cols, ambient: a.dim() };
        let d = q.cols.len();
        let mut table = Vec::with_capacity(d * d);
        for &x in &q.cols {
            for &y in &q.cols {
                table.push(q.project(a.basis_product(x, y)));
            }
        }
        Ok(Quotient { alg: Algebra::new(a.field(), d, table)?, ..q })
    }

    pub fn project(&self, x: &[Scalar]) -> Vector {
        let r = self.ideal.reduce(x.to_vec());
        self.cols.iter().map(|&c| r[c].clone()).collect()
    }

    /// The representative supported on the complement columns.
    pub fn lift(&self, y: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(self.alg.field()); self.ambient];
        for (&c, v) in self.cols.iter().zip(y) {
            out[c] = v.clone();
        }
        out
    }

    pub fn project_space(&self, s: &Subspace) -> Subspace {
        self.alg.span(s.basis().iter().map(|v| self.project(v)))
    }

    /// A preimage of y inside the subspace s, if any.
    pub fn preimage_in(&self, s: &Subspace, y: &[Scalar]) -> Option<Vector> {
        let images: Vec<Vector> = s.basis().iter().map(|v| self.project(v)).collect();
        let c = crate::kernel::solve_or_member(&images, y).ok()??;
        let mut out = vec![Scalar::zero(self.alg.field()); self.ambient];
        for (ci, v) in c.iter().zip(s.basis()) {
            crate::kernel::axpy(&mut out, ci, v);
        }
        Some(out)
    }
}

/// True when every homogeneous component meets the radical trivially.
pub fn homogeneous_components_meet_radical(a: &GradedAlgebra) -> Result<bool, AlgebraError> {
    let j = jacobson_radical(&a.alg)?;
    Ok(a.support().iter().all(|&t| a.component(t).intersect(&j).is_zero()))
}

/// Left and right annihilators both vanish.
pub fn is_faithful(a: &GradedAlgebra) -> bool {
    let alg = &a.alg;
    let n = alg.dim();
    if n == 0 {
        return true;
    }
    let mut left = Echelon::new(alg.field(), n);
    let mut right = Echelon::new(alg.field(), n);
    for j in 0..n {
        let rm = alg.right_matrix(&alg.unit(j));
        let lm = alg.left_matrix(&alg.unit(j));
        for r in 0..n {
            left.insert(rm.row(r).to_vec());
            right.insert(lm.row(r).to_vec());
        }
    }
    left.rank() == n && right.rank() == n
}

/// Decides whether a semisimple algebra is simple. Center of dimension 1
/// means split simple; a larger center is refuted by a central element
/// with an eigenvalue in the field, otherwise the answer is indeterminate.
pub fn semisimple_is_simple(q: &Algebra) -> Result<bool, AlgebraError> {
    if q.dim() == 0 {
        return Ok(false);
    }
    let z = q.center();
    if z.dim() == 1 {
        return Ok(true);
    }
    let one = q.identity().ok_or_else(|| AlgebraError::Internal("semisimple algebra without identity".into()))?;
    for c in z.basis() {
        let mp = min_poly(q, &one, c);
        if mp.len() > 2 {
            if let Some(roots) = field_roots(&mp) {
                if !roots.is_empty() {
                    return Ok(false);
                }
            }
        }
    }
    Err(AlgebraError::Indeterminate)
}

/// A is simple: nonzero, radical zero, simple semisimple part.
pub fn is_simple(a: &Algebra) -> Result<bool, AlgebraError> {
    if a.dim() == 0 || a.is_zero_algebra() {
        return Ok(false);
    }
    if !jacobson_radical(a)?.is_zero() {
        return Ok(false);
    }
    semisimple_is_simple(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedSimpleReport {
    pub graded_simple: bool,
    pub square_is_whole: bool,
    pub components_avoid_radical: bool,
    pub quotient_simple: bool,
    /// The first condition that failed.
    pub failed: Option<String>,
    pub radical_dim: usize,
}

/// A grading rewritten over a completely 0-simple semigroup with trivial
/// subgroups, together with its Rees coordinates.
#[derive(Clone, Debug)]
pub struct ReesGrading {
    pub algebra: GradedAlgebra,
    pub coords: ReesCoordinates,
}

impl ReesGrading {
    pub fn n(&self) -> usize {
        self.coords.pres.n
    }

    pub fn m(&self) -> usize {
        self.coords.pres.m
    }

    /// A_{ij}
    pub fn block(&self, i: usize, j: usize) -> Subspace {
        self.algebra.component(self.coords.element_at(i, j))
    }

    pub fn column_ideal(&self, j: usize) -> Subspace {
        let a = &self.algebra;
        let parts: Vec<Subspace> = (0..self.n()).map(|i| self.block(i, j)).collect();
        super::structure::sum_all(a.field(), a.dim(), &parts)
    }

    pub fn row_ideal(&self, i: usize) -> Subspace {
        let a = &self.algebra;
        let parts: Vec<Subspace> = (0..self.m()).map(|j| self.block(i, j)).collect();
        super::structure::sum_all(a.field(), a.dim(), &parts)
    }
}

pub enum Reduction {
    Rees(ReesGrading),
    /// A homogeneous ideal was found directly.
    NotGradedSimple(String),
}

/// Restricts the grading to the semigroup generated by the support, drops
/// the ideal of elements that cannot reach the support, and reads off Rees
/// coordinates when the result is completely 0-simple.
pub fn reduce_grading(a: &GradedAlgebra) -> Result<Reduction, AlgebraError> {
    let s = &a.semigroup;
    let supp = a.support();
    if supp.is_empty() {
        return Ok(Reduction::NotGradedSimple("A = 0".into()));
    }
    let (s, supp, degree) = match s.zero() {
        Some(z) if supp.contains(&z) => {
            if supp.len() > 1 {
                return Ok(Reduction::NotGradedSimple("A^(theta) is a proper homogeneous ideal".into()));
            }
            // Everything sits in degree zero: regrade by the one-element band.
            (semigroups::trivial(), BTreeSet::from([0]), vec![0; a.dim()])
        }
        _ => (s.clone(), supp, a.degree.clone()),
    };
    let (t, map) = semigroups::support_closure(&s, &supp)?;
    let supp_t: BTreeSet<usize> = supp.iter().map(|&x| map[x].expect("support survives")).collect();
    for &x in &supp_t {
        let ideal = t.principal_ideal(x);
        if !supp_t.is_subset(&ideal) {
            return Ok(Reduction::NotGradedSimple(format!(
                "components over the ideal generated by element {x} form a proper homogeneous ideal"
            )));
        }
    }
    let dead: BTreeSet<usize> =
        (0..t.size()).filter(|&x| t.principal_ideal(x).is_disjoint(&supp_t)).collect();
    let (q, qmap): (FiniteSemigroup, Vec<usize>) = t.rees_quotient(&dead);
    let coords = match semigroups::green_trivial_rees_coordinates(&q) {
        Ok(c) => c,
        Err(e) => return Err(AlgebraError::Unsupported(e.to_string())),
    };
    let new_degree = degree.iter().map(|&d| qmap[map[d].unwrap()]).collect();
    Ok(Reduction::Rees(ReesGrading { algebra: a.regrade(q, new_degree)?, coords }))
}

/// Graded simplicity by the criterion: A^2 = A, every component meets the
/// radical trivially, and A/J(A) is simple.
pub fn is_graded_simple(a: &GradedAlgebra) -> Result<GradedSimpleReport, AlgebraError> {
    let alg = &a.alg;
    let radical = jacobson_radical(alg)?;
    let mut rep = GradedSimpleReport {
        graded_simple: false,
        square_is_whole: false,
        components_avoid_radical: false,
        quotient_simple: false,
        failed: None,
        radical_dim: radical.dim(),
    };
    rep.square_is_whole = alg.dim() > 0 && alg.product_space(&alg.whole(), &alg.whole()).dim() == alg.dim();
    let meets: Vec<usize> = a.support().iter().map(|&t| a.component(t).intersect(&radical).dim()).collect();
    rep.components_avoid_radical = meets.iter().all(|&d| d == 0);
    // A^2 is always a homogeneous ideal, and so is J(A) when it is spanned
    // by its homogeneous parts.
    if !rep.square_is_whole {
        rep.failed = Some("A^2 != A".into());
        return Ok(rep);
    }
    if !radical.is_zero() && meets.iter().sum::<usize>() == radical.dim() {
        rep.failed = Some("J(A) is a proper homogeneous ideal".into());
        return Ok(rep);
    }
    if let Reduction::NotGradedSimple(why) = reduce_grading(a)? {
        rep.failed = Some(why);
        return Ok(rep);
    }
    let q = Quotient::new(alg, &radical)?;
    rep.quotient_simple = semisimple_is_simple(&q.alg)?;
    rep.failed = if !rep.square_is_whole {
        Some("A^2 != A".into())
    } else if !rep.components_avoid_radical {
        Some("a homogeneous component meets J(A)".into())
    } else if !rep.quotient_simple {
        Some("A/J(A) is not simple".into())
    } else {
        None
    };
    rep.graded_simple = rep.failed.is_none();
    Ok(rep)
}
