//! Graded Wedderburn-Malcev decomposition for gradings by completely
//! 0-simple semigroups with trivial subgroups, when A J(A) A = 0.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::radical::{jacobson_radical, reduce_grading, Quotient, Reduction, ReesGrading};
use super::structure::{is_direct, sum_all, Algebra, GradedAlgebra, Subspace};
use super::AlgebraError;
use crate::kernel::{add_vec, axpy, is_zero_vec, scale_vec, solve_or_member, sub_vec, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMDecomposition {
    /// Graded maximal semisimple subalgebra.
    pub b: Subspace,
    pub unit_of_b: Vector,
    /// f'_1..f'_n, f'_i in R_i.
    pub row_idempotents: Vec<Vector>,
    /// f_1..f_m, f_j in L_j.
    pub column_idempotents: Vec<Vector>,
    pub radical: Subspace,
    /// Whether A J(A) A = 0 held.
    pub aja_vanishes: bool,
}

type Cache = Mutex<HashMap<[u8; 32], Result<WMDecomposition, AlgebraError>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn fail<T>(msg: impl Into<String>) -> Result<T, AlgebraError> {
    Err(AlgebraError::NoGradedDecomposition(msg.into()))
}

/// Decomposes v along a direct sum of subspaces.
pub fn split_along(a: &Algebra, parts: &[Subspace], v: &[Scalar]) -> Option<Vec<Vector>> {
    let span: Vec<Vector> = parts.iter().flat_map(|p| p.basis().iter().cloned()).collect();
    let c = solve_or_member(&span, v).ok()??;
    let mut out = Vec::with_capacity(parts.len());
    let mut at = 0;
    for p in parts {
        let mut x = a.zero_vec();
        for b in p.basis() {
            axpy(&mut x, &c[at], b);
            at += 1;
        }
        out.push(x);
    }
    Some(out)
}

/// x <- 3x^2 - 2x^3 until x is idempotent.
pub fn lift_idempotent(a: &Algebra, mut x: Vector) -> Result<Vector, AlgebraError> {
    let three = Scalar::from_int(a.field(), 3);
    let two = Scalar::from_int(a.field(), 2);
    for _ in 0..a.dim() + 2 {
        let x2 = a.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = a.mul(&x2, &x);
        x = sub_vec(&scale_vec(&three, &x2), &scale_vec(&two, &x3));
    }
    Err(AlgebraError::Internal("idempotent lifting did not converge".into()))
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Columns,
    Rows,
}

/// Idempotents omega_l in spaces[l] whose images decompose 1 along
/// complements of the images of the spaces.
fn lifted_family(a: &Algebra, q: &Quotient, spaces: &[Subspace], side: Side) -> Result<Vec<Vector>, AlgebraError> {
    let qa = &q.alg;
    let mut acc = Subspace::zero(qa.field(), qa.dim());
    let mut tildes = Vec::with_capacity(spaces.len());
    for s in spaces {
        let bar = q.project_space(s);
        let k = bar.intersect(&acc);
        let tilde = match side {
            Side::Columns => {
                let e = qa.right_identity_in(&k).ok_or_else(|| AlgebraError::Internal("no right identity".into()))?;
                qa.span(bar.basis().iter().map(|x| sub_vec(x, &qa.mul(x, &e))))
            }
            Side::Rows => {
                let e = qa.left_identity_in(&k).ok_or_else(|| AlgebraError::Internal("no left identity".into()))?;
                qa.span(bar.basis().iter().map(|x| sub_vec(x, &qa.mul(&e, x))))
            }
        };
        acc = acc.sum(&bar);
        tildes.push(tilde);
    }
    let refs: Vec<&Subspace> = tildes.iter().collect();
    if !is_direct(&refs) || acc.dim() != qa.dim() {
        return fail("complements do not decompose the quotient");
    }
    let one = qa.identity().ok_or_else(|| AlgebraError::NoGradedDecomposition("quotient has no identity".into()))?;
    let bars = split_along(qa, &tildes, &one).expect("complements span the quotient");
    bars.iter()
        .zip(spaces)
        .map(|(w, s)| {
            let y = q.preimage_in(s, w).ok_or_else(|| AlgebraError::Internal("no preimage in the ideal".into()))?;
            lift_idempotent(a, y)
        })
        .collect()
}

pub fn wm_graded_decomposition(a: &GradedAlgebra) -> Result<WMDecomposition, AlgebraError> {
    let key = a.content_hash();
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let out = compute(a);
    if !matches!(out, Err(AlgebraError::Internal(_))) {
        cache().lock().unwrap().insert(key, out.clone());
    }
    out
}

fn compute(a: &GradedAlgebra) -> Result<WMDecomposition, AlgebraError> {
    let rg = match reduce_grading(a)? {
        Reduction::Rees(r) => r,
        Reduction::NotGradedSimple(why) => return Err(AlgebraError::Unsupported(why)),
    };
    let alg = &a.alg;
    let radical = jacobson_radical(alg)?;
    let q = Quotient::new(alg, &radical)?;
    let whole = alg.whole();
    let aja = alg.product_space(&alg.product_space(&whole, &radical), &whole);
    let (n, m) = (rg.n(), rg.m());
    let cols: Vec<Subspace> = (0..m).map(|j| rg.column_ideal(j)).collect();
    let rows: Vec<Subspace> = (0..n).map(|i| rg.row_ideal(i)).collect();
    let omega = lifted_family(alg, &q, &cols, Side::Columns)?;
    let omega_p = lifted_family(alg, &q, &rows, Side::Rows)?;

    let sandwich = |i: usize, j: usize| -> Subspace {
        alg.span(whole.basis().iter().map(|x| alg.mul3(&omega_p[i], x, &omega[j])))
    };
    let blocks: Vec<Vec<Subspace>> = (0..n).map(|i| (0..m).map(|j| sandwich(i, j)).collect()).collect();
    let flat: Vec<Subspace> = blocks.iter().flatten().cloned().collect();
    let b = sum_all(alg.field(), alg.dim(), &flat);
    let b_alg = alg.subalgebra(&b).map_err(|_| AlgebraError::NoGradedDecomposition("B is not closed".into()))?;
    let unit_coords = b_alg
        .identity()
        .ok_or_else(|| AlgebraError::NoGradedDecomposition("B has no identity".into()))?;
    let mut unit = alg.zero_vec();
    for (c, v) in unit_coords.iter().zip(b.basis()) {
        axpy(&mut unit, c, v);
    }
    let col_spaces: Vec<Subspace> =
        (0..m).map(|j| sum_all(alg.field(), alg.dim(), &(0..n).map(|i| blocks[i][j].clone()).collect::<Vec<_>>())).collect();
    let row_spaces: Vec<Subspace> = (0..n).map(|i| sum_all(alg.field(), alg.dim(), &blocks[i])).collect();
    let direct = |ps: &[Subspace]| is_direct(&ps.iter().collect::<Vec<_>>());
    if !direct(&col_spaces) || !direct(&row_spaces) {
        return fail("Peirce spaces of B are not direct");
    }
    let f = split_along(alg, &col_spaces, &unit).ok_or_else(|| AlgebraError::NoGradedDecomposition("1_B outside B".into()))?;
    let fp = split_along(alg, &row_spaces, &unit).ok_or_else(|| AlgebraError::NoGradedDecomposition("1_B outside B".into()))?;
    let d = WMDecomposition {
        b,
        unit_of_b: unit,
        row_idempotents: fp,
        column_idempotents: f,
        radical,
        aja_vanishes: aja.is_zero(),
    };
    if let Some(why) = first_violation(a, &rg, &d) {
        return fail(why);
    }
    Ok(d)
}

fn orthogonal_family(alg: &Algebra, fam: &[Vector], unit: &[Scalar]) -> bool {
    let total = fam.iter().fold(alg.zero_vec(), |acc, f| add_vec(&acc, f));
    if total != unit {
        return false;
    }
    fam.iter().enumerate().all(|(x, f)| {
        fam.iter().enumerate().all(|(y, g)| {
            let p = alg.mul(f, g);
            if x == y {
                p == *f
            } else {
                is_zero_vec(&p)
            }
        })
    })
}

/// Every invariant of a graded decomposition, or the first that fails.
pub fn first_violation(a: &GradedAlgebra, rg: &ReesGrading, d: &WMDecomposition) -> Option<String> {
    let alg = &a.alg;
    if !alg.product_space(&d.b, &d.b).is_subspace_of(&d.b) {
        return Some("B is not a subalgebra".into());
    }
    let graded: usize = a.support().iter().map(|&t| a.component(t).intersect(&d.b).dim()).sum();
    if graded != d.b.dim() {
        return Some("B is not graded".into());
    }
    if !d.b.intersect(&d.radical).is_zero() || d.b.dim() + d.radical.dim() != alg.dim() {
        return Some("A != B + J(A) directly".into());
    }
    for x in d.b.basis() {
        if alg.mul(&d.unit_of_b, x) != *x || alg.mul(x, &d.unit_of_b) != *x {
            return Some("1_B is not the identity of B".into());
        }
    }
    if !orthogonal_family(alg, &d.column_idempotents, &d.unit_of_b) {
        return Some("column idempotents are not orthogonal with sum 1_B".into());
    }
    if !orthogonal_family(alg, &d.row_idempotents, &d.unit_of_b) {
        return Some("row idempotents are not orthogonal with sum 1_B".into());
    }
    for (j, f) in d.column_idempotents.iter().enumerate() {
        if !rg.column_ideal(j).contains(f) || !d.b.contains(f) {
            return Some(format!("f_{} is not in B and L_{}", j + 1, j + 1));
        }
    }
    for (i, f) in d.row_idempotents.iter().enumerate() {
        if !rg.row_ideal(i).contains(f) || !d.b.contains(f) {
            return Some(format!("f'_{} is not in B and R_{}", i + 1, i + 1));
        }
    }
    None
}

/// Rees coordinates for a decomposed algebra.
pub fn rees_grading(a: &GradedAlgebra) -> Result<ReesGrading, AlgebraError> {
    match reduce_grading(a)? {
        Reduction::Rees(r) => Ok(r),
        Reduction::NotGradedSimple(why) => Err(AlgebraError::Unsupported(why)),
    }
}
