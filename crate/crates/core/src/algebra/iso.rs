//! Explicit isomorphisms: a split simple quotient onto M_k(F), and lifting
//! a quotient isomorphism to a graded isomorphism.

use super::ideals::flat_mul;
use super::radical::{jacobson_radical, Quotient};
use super::spectral::{field_roots, min_poly};
use super::structure::{Algebra, GradedAlgebra, Subspace};
use super::AlgebraError;
use crate::kernel::{inverse, rank, sub_vec, Echelon, Mat, Scalar, Vector};

/// psi : Q -> M_k(F) as a k^2 x dim matrix, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitIso {
    pub k: usize,
    pub psi: Mat,
    pub psi_inv: Mat,
}

impl SplitIso {
    /// Flattened k x k matrix of x.
    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.psi.mul_vec(x)
    }

    pub fn apply_inv(&self, m: &[Scalar]) -> Vector {
        self.psi_inv.mul_vec(m)
    }

    /// Composes with conjugation m -> P^{-1} m P.
    pub fn conjugated(&self, p: &Mat) -> Result<SplitIso, AlgebraError> {
        let k = self.k;
        let p_inv = inverse(p).map_err(|e| AlgebraError::Shape(e.to_string()))?;
        let conj = |q: &Mat, qi: &Mat| -> Mat {
            let cols: Vec<Vector> = (0..k * k)
                .map(|u| super::ideals::conjugate(k, q, qi, &crate::kernel::unit_vec(p.get(0, 0).field(), k * k, u)))
                .collect();
            Mat::from_rows_with_cols(k * k, cols).unwrap().transpose()
        };
        let c = conj(p, &p_inv);
        let c_inv = conj(&p_inv, p);
        Ok(SplitIso {
            k,
            psi: c.mul(&self.psi).map_err(|e| AlgebraError::Shape(e.to_string()))?,
            psi_inv: self.psi_inv.mul(&c_inv).map_err(|e| AlgebraError::Shape(e.to_string()))?,
        })
    }
}

fn isqrt(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k > n {
        k -= 1;
    }
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k
}

/// An idempotent e with Q e minimal, found by splitting e Q e with
/// eigenvalues in the field.
fn primitive_idempotent(q: &Algebra, k: usize) -> Result<Vector, AlgebraError> {
    let whole = q.whole();
    let mut e = q.identity().ok_or(AlgebraError::NonSplit)?;
    for _ in 0..=q.dim() {
        if q.right_multiple(&whole, &e).dim() == k {
            return Ok(e);
        }
        let c_space = q.span(whole.basis().iter().map(|b| q.mul3(&e, b, &e)));
        let mut next = None;
        for c in c_space.basis() {
            let mp = min_poly(q, &e, c);
            if mp.len() <= 2 {
                continue;
            }
            let Some(lambda) = field_roots(&mp).and_then(|r| r.into_iter().next()) else {
                continue;
            };
            let x = sub_vec(c, &crate::kernel::scale_vec(&lambda, &e));
            let ideal = q.span(c_space.basis().iter().map(|y| q.mul(y, &x)));
            next = q.right_identity_in(&ideal);
            if next.is_some() {
                break;
            }
        }
        e = next.ok_or(AlgebraError::NonSplit)?;
    }
    Err(AlgebraError::Internal("idempotent search did not terminate".into()))
}

/// Realizes psi as the left regular action on a minimal left ideal L (the
/// distinguished one when given). The basis of L starts with the right
/// identity e of L, so psi(L) is the first column block.
pub fn split_iso_to_matrix(q: &Algebra, distinguished: Option<&Subspace>) -> Result<SplitIso, AlgebraError> {
    if q.dim() == 0 || q.center().dim() != 1 {
        return Err(AlgebraError::NonSplit);
    }
    let k = isqrt(q.dim());
    if k * k != q.dim() {
        return Err(AlgebraError::NotSquare(q.dim()));
    }
    let whole = q.whole();
    let (e, l) = match distinguished {
        Some(l) => {
            if l.dim() != k || !q.product_space(&whole, l).is_subspace_of(l) {
                return Err(AlgebraError::NotMinimalLeftIdeal);
            }
            let e = q.right_identity_in(l).ok_or(AlgebraError::NotMinimalLeftIdeal)?;
            (e, l.clone())
        }
        None => {
            let e = primitive_idempotent(q, k)?;
            let l = q.right_multiple(&whole, &e);
            (e, l)
        }
    };
    // {x in L : e x = 0}
    let lb = l.basis();
    let mut conds = Echelon::new(q.field(), lb.len());
    for r in 0..q.dim() {
        conds.insert(lb.iter().map(|x| q.mul(&e, x)[r].clone()).collect());
    }
    let mut basis = vec![e.clone()];
    let kernel_space = q.span(conds.kernel().into_iter().map(|c| {
        let mut v = q.zero_vec();
        for (ci, b) in c.iter().zip(lb) {
            crate::kernel::axpy(&mut v, ci, b);
        }
        v
    }));
    basis.extend(kernel_space.basis().iter().cloned());
    if basis.len() != k {
        return Err(AlgebraError::NonSplit);
    }
    let lspace = Subspace::span(q.field(), q.dim(), basis.iter().cloned());
    if lspace.dim() != k {
        return Err(AlgebraError::NonSplit);
    }
    let coords = |v: &Vector| -> Vector {
        crate::kernel::solve_or_member(&basis, v).expect("shapes").expect("L is a left ideal")
    };
    let mut psi = Mat::zeros(q.field(), k * k, q.dim());
    for b in 0..q.dim() {
        for (c, lc) in basis.iter().enumerate() {
            let col = coords(&q.mul(&q.unit(b), lc));
            for (r, v) in col.into_iter().enumerate() {
                psi.set(r * k + c, b, v);
            }
        }
    }
    let psi_inv = inverse(&psi).map_err(|_| AlgebraError::NonSplit)?;
    let iso = SplitIso { k, psi, psi_inv };
    for x in 0..q.dim() {
        for y in 0..q.dim() {
            let lhs = iso.apply(q.basis_product(x, y));
            let rhs = flat_mul(k, &iso.apply(&q.unit(x)), &iso.apply(&q.unit(y)));
            if lhs != rhs {
                return Err(AlgebraError::Internal("psi is not multiplicative".into()));
            }
        }
    }
    Ok(iso)
}

/// Lifts an isomorphism of radical quotients (given on the quotient bases)
/// to the map r -> (pi_2 restricted to A_2^(s))^{-1} phibar pi_1 (r) on each
/// component, and checks that it is a graded algebra isomorphism.
pub fn graded_iso_check(a1: &GradedAlgebra, a2: &GradedAlgebra, quotient_map: &Mat) -> Result<bool, AlgebraError> {
    if a1.dim() != a2.dim() || a1.semigroup.size() != a2.semigroup.size() {
        return Ok(false);
    }
    let profile = |a: &GradedAlgebra| (0..a.semigroup.size()).map(|t| a.component(t).dim()).collect::<Vec<_>>();
    if profile(a1) != profile(a2) {
        return Ok(false);
    }
    let q1 = Quotient::new(&a1.alg, &jacobson_radical(&a1.alg)?)?;
    let q2 = Quotient::new(&a2.alg, &jacobson_radical(&a2.alg)?)?;
    if quotient_map.rows() != q2.alg.dim() || quotient_map.cols() != q1.alg.dim() {
        return Err(AlgebraError::Shape("quotient map has the wrong shape".into()));
    }
    let mut phi_cols = Vec::with_capacity(a1.dim());
    for r in 0..a1.dim() {
        let t = a1.degree[r];
        let image = quotient_map.mul_vec(&q1.project(&a1.alg.unit(r)));
        let comp = a2.component(t);
        let lifted = q2.preimage_in(&comp, &image).ok_or(AlgebraError::NotComponentCompatible)?;
        phi_cols.push(lifted);
    }
    let phi = Mat::from_rows_with_cols(a2.dim(), phi_cols.clone()).unwrap().transpose();
    if rank(&phi).map_err(|e| AlgebraError::Shape(e.to_string()))? != a1.dim() {
        return Ok(false);
    }
    for x in 0..a1.dim() {
        for y in 0..a1.dim() {
            let lhs = phi.mul_vec(a1.alg.basis_product(x, y));
            let rhs = a2.alg.mul(&phi_cols[x], &phi_cols[y]);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, munn_algebra};
    use crate::kernel::Field;

    #[test]
    fn matrix_algebra_is_split() {
        let m2 = fixture("m2-trivial").unwrap().alg;
        let iso = split_iso_to_matrix(&m2, None).unwrap();
        assert_eq!(iso.k, 2);
        let col1 = m2.span([m2.unit(0), m2.unit(2)]);
        let iso = split_iso_to_matrix(&m2, Some(&col1)).unwrap();
        // the distinguished ideal lands in the first column
        for b in col1.basis() {
            let img = iso.apply(b);
            assert!(img[1].is_zero() && img[3].is_zero());
        }
    }

    #[test]
    fn non_split_quotients() {
        let ut2 = fixture("ut2-trivial").unwrap().alg;
        let q = Quotient::new(&ut2, &jacobson_radical(&ut2).unwrap()).unwrap();
        assert_eq!(split_iso_to_matrix(&q.alg, None), Err(AlgebraError::NonSplit));
    }

    #[test]
    fn munn_quotient_is_the_entry_sum() {
        let a = munn_algebra(2, 2, &Mat::from_ints(&[&[1, 1], &[1, 1]])).unwrap().alg;
        let q = Quotient::new(&a, &jacobson_radical(&a).unwrap()).unwrap();
        let iso = split_iso_to_matrix(&q.alg, None).unwrap();
        assert_eq!(iso.k, 1);
        for b in 0..4 {
            assert_eq!(iso.apply(&q.project(&a.unit(b))), vec![Scalar::one(Field::Rational)]);
        }
    }

    #[test]
    fn relabelled_band_is_isomorphic() {
        let a1 = fixture("ft-rzb2").unwrap();
        let a2 = a1.regrade(a1.semigroup.clone(), vec![1, 0]).unwrap();
        assert!(a2.validate().is_empty());
        let one = Mat::identity(Field::Rational, 1);
        assert!(graded_iso_check(&a1, &a2, &one).unwrap());
        assert!(graded_iso_check(&a1, &a1, &one).unwrap());
    }
}
