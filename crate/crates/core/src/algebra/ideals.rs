//! Left and right ideals of M_k(F), with matrices flattened row-major
//! (entry (r, c) at index r*k + c).

use super::structure::{Algebra, Subspace};
use super::AlgebraError;
use crate::kernel::{inverse, Echelon, Field, Mat, Scalar, Vector};

/// M_k(F) on its matrix-unit basis.
pub fn matrix_algebra(field: Field, k: usize) -> Algebra {
    let n = k * k;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut v = vec![Scalar::zero(field); n];
            let (r, c) = (a / k, a % k);
            let (r2, c2) = (b / k, b % k);
            if c == r2 {
                v[r * k + c2] = Scalar::one(field);
            }
            table.push(v);
        }
    }
    Algebra::new(field, n, table).expect("well formed")
}

pub fn flat_mul(k: usize, a: &[Scalar], b: &[Scalar]) -> Vector {
    let field = a.first().map_or(Field::Rational, Scalar::field);
    let mut out = vec![Scalar::zero(field); k * k];
    for r in 0..k {
        for t in 0..k {
            let x = &a[r * k + t];
            if x.is_zero() {
                continue;
            }
            for c in 0..k {
                let y = &b[t * k + c];
                if !y.is_zero() {
                    out[r * k + c] = &out[r * k + c] + &(x * y);
                }
            }
        }
    }
    out
}

pub fn to_mat(k: usize, a: &[Scalar]) -> Mat {
    Mat::new(k, k, a.to_vec()).expect("k*k entries")
}

fn row_of(k: usize, a: &[Scalar], r: usize) -> Vector {
    a[r * k..(r + 1) * k].to_vec()
}

/// Ann W = {a in M_k : a w = 0 for all w in W}, a left ideal.
pub fn ann_duality(k: usize, w: &Subspace) -> Subspace {
    let field = w.field();
    let perp = w.perp();
    let mut out = Subspace::zero(field, k * k);
    for r in 0..k {
        for p in &perp {
            let mut m = vec![Scalar::zero(field); k * k];
            m[r * k..(r + 1) * k].clone_from_slice(p);
            out.insert(m);
        }
    }
    out
}

/// The common kernel of the matrices in a left ideal.
pub fn ann_inverse(k: usize, ideal: &Subspace) -> Subspace {
    let field = ideal.field();
    let mut rows = Echelon::new(field, k);
    for a in ideal.basis() {
        for r in 0..k {
            rows.insert(row_of(k, a, r));
        }
    }
    Subspace::span(field, k, rows.kernel())
}

pub fn is_left_ideal(k: usize, ideal: &Subspace) -> bool {
    let field = ideal.field();
    (0..k * k).all(|u| {
        let e = crate::kernel::unit_vec(field, k * k, u);
        ideal.basis().iter().all(|x| ideal.contains(&flat_mul(k, &e, x)))
    })
}

pub fn is_right_ideal(k: usize, ideal: &Subspace) -> bool {
    let field = ideal.field();
    (0..k * k).all(|u| {
        let e = crate::kernel::unit_vec(field, k * k, u);
        ideal.basis().iter().all(|x| ideal.contains(&flat_mul(k, x, &e)))
    })
}

/// P^{-1} a P
pub fn conjugate(k: usize, p: &Mat, p_inv: &Mat, a: &[Scalar]) -> Vector {
    let m = p_inv.mul(&to_mat(k, a)).and_then(|x| x.mul(p)).expect("square");
    m.entries().to_vec()
}

/// For left ideals with I_1 + ... + I_s = M_k direct, an invertible P such
/// that each P^{-1} I_i P is supported on its own block of columns, the
/// blocks laid out left to right in the given order.
pub fn simultaneous_column_form(k: usize, ideals: &[Subspace]) -> Result<Mat, AlgebraError> {
    let field = ideals.first().map_or(Field::Rational, Subspace::field);
    let refs: Vec<&Subspace> = ideals.iter().collect();
    let total: usize = ideals.iter().map(Subspace::dim).sum();
    if !super::structure::is_direct(&refs) || total != k * k {
        return Err(AlgebraError::NotDirect);
    }
    if ideals.iter().any(|i| i.dim() % k != 0 || !is_left_ideal(k, i)) {
        return Err(AlgebraError::NotDirect);
    }
    let v: Vec<Subspace> = ideals.iter().map(|i| ann_inverse(k, i)).collect();
    let mut cols: Vec<Vector> = Vec::new();
    let mut blocks = Vec::new();
    for i in 0..ideals.len() {
        let w = (0..ideals.len())
            .filter(|&j| j != i)
            .fold(Subspace::full(field, k), |acc, j| acc.intersect(&v[j]));
        if w.dim() != ideals[i].dim() / k {
            return Err(AlgebraError::NotDirect);
        }
        blocks.push(cols.len()..cols.len() + w.dim());
        cols.extend(w.basis().iter().cloned());
    }
    let p = Mat::from_rows_with_cols(k, cols).map_err(|e| AlgebraError::Shape(e.to_string()))?.transpose();
    let p_inv = inverse(&p).map_err(|_| AlgebraError::NotDirect)?;
    for (ideal, block) in ideals.iter().zip(&blocks) {
        for a in ideal.basis() {
            let c = conjugate(k, &p, &p_inv, a);
            let outside = (0..k * k).any(|u| !block.contains(&(u % k)) && !c[u].is_zero());
            if outside {
                return Err(AlgebraError::Internal("column form check failed".into()));
            }
        }
    }
    Ok(p)
}

/// The row (mu_1..mu_k) with I = span{sum_j mu_j e_ij}, first nonzero entry 1.
pub fn minimal_left_ideal_row(ideal: &Subspace, k: usize) -> Result<Vector, AlgebraError> {
    if ideal.dim() != k || !is_left_ideal(k, ideal) {
        return Err(AlgebraError::NotMinimalLeftIdeal);
    }
    let field = ideal.field();
    let a = &ideal.basis()[0];
    let r = (0..k).find(|&r| row_of(k, a, r).iter().any(|x| !x.is_zero())).expect("nonzero basis vector");
    let row = row_of(k, a, r);
    let lead = row.iter().find(|x| !x.is_zero()).unwrap().inv().unwrap();
    let mu: Vector = row.iter().map(|x| x * &lead).collect();
    let expect = Subspace::span(
        field,
        k * k,
        (0..k).map(|i| {
            let mut m = vec![Scalar::zero(field); k * k];
            m[i * k..(i + 1) * k].clone_from_slice(&mu);
            m
        }),
    );
    if expect != *ideal {
        return Err(AlgebraError::NotMinimalLeftIdeal);
    }
    Ok(mu)
}

/// The left ideal of M_k whose matrices have every row proportional to mu.
pub fn left_ideal_from_row(k: usize, mu: &[Scalar]) -> Subspace {
    let field = mu[0].field();
    Subspace::span(
        field,
        k * k,
        (0..k).map(|i| {
            let mut m = vec![Scalar::zero(field); k * k];
            m[i * k..(i + 1) * k].clone_from_slice(mu);
            m
        }),
    )
}

/// Column block c0..c1 of M_k, a left ideal.
pub fn column_block(field: Field, k: usize, cols: std::ops::Range<usize>) -> Subspace {
    let mut s = Subspace::zero(field, k * k);
    for r in 0..k {
        for c in cols.clone() {
            s.insert(crate::kernel::unit_vec(field, k * k, r * k + c));
        }
    }
    s
}

/// Row block of M_k, a right ideal.
pub fn row_block(field: Field, k: usize, rows: std::ops::Range<usize>) -> Subspace {
    let mut s = Subspace::zero(field, k * k);
    for r in rows {
        for c in 0..k {
            s.insert(crate::kernel::unit_vec(field, k * k, r * k + c));
        }
    }
    s
}

/// span{x y : x in V, y in I} inside M_k.
pub fn product_span(k: usize, v: &Subspace, i: &Subspace) -> Subspace {
    let mut out = Subspace::zero(v.field(), k * k);
    for x in v.basis() {
        for y in i.basis() {
            out.insert(flat_mul(k, x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::unit_vec;

    const Q: Field = Field::Rational;

    fn qv(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(Q, x)).collect()
    }

    #[test]
    fn duality_examples() {
        assert_eq!(ann_duality(2, &Subspace::zero(Q, 2)).dim(), 4);
        assert_eq!(ann_duality(2, &Subspace::full(Q, 2)).dim(), 0);
        let w = Subspace::span(Q, 2, [qv(&[0, 1])]);
        let i = ann_duality(2, &w);
        assert_eq!(i, column_block(Q, 2, 0..1));
        assert_eq!(ann_inverse(2, &i), w);
    }

    #[test]
    fn column_form_examples() {
        let c1 = column_block(Q, 2, 0..1);
        let c2 = column_block(Q, 2, 1..2);
        assert_eq!(simultaneous_column_form(2, &[c1.clone(), c2]).unwrap(), Mat::identity(Q, 2));
        assert_eq!(simultaneous_column_form(2, &[Subspace::full(Q, 4)]).unwrap(), Mat::identity(Q, 2));
        let i1 = ann_duality(2, &Subspace::span(Q, 2, [qv(&[1, 1])]));
        let i2 = ann_duality(2, &Subspace::span(Q, 2, [qv(&[1, -1])]));
        let p = simultaneous_column_form(2, &[i1, i2]).unwrap();
        assert_eq!(crate::kernel::rank(&p).unwrap(), 2);
        assert!(simultaneous_column_form(2, &[c1.clone(), c1]).is_err());
    }

    #[test]
    fn minimal_rows() {
        assert_eq!(minimal_left_ideal_row(&column_block(Q, 2, 0..1), 2).unwrap(), qv(&[1, 0]));
        assert_eq!(minimal_left_ideal_row(&column_block(Q, 2, 1..2), 2).unwrap(), qv(&[0, 1]));
        let i = ann_duality(2, &Subspace::span(Q, 2, [qv(&[1, -1])]));
        assert_eq!(minimal_left_ideal_row(&i, 2).unwrap(), qv(&[1, 1]));
        let not_ideal = Subspace::span(Q, 4, [unit_vec(Q, 4, 0), unit_vec(Q, 4, 1)]);
        assert!(minimal_left_ideal_row(&not_ideal, 2).is_err());
    }

    fn span_of(k: usize, vs: &[Vec<i64>]) -> Subspace {
        Subspace::span(Q, k, vs.iter().map(|v| qv(&v[..k])))
    }

    fn mat_of(k: usize, v: &[i64]) -> Vector {
        qv(&v[..k * k])
    }

    fn vecs() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..4)
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn duality_laws(k in 1usize..=4, a in vecs(), b in vecs()) {
            let (w1, w2) = (span_of(k, &a), span_of(k, &b));
            let (i1, i2) = (ann_duality(k, &w1), ann_duality(k, &w2));
            prop_assert!(is_left_ideal(k, &i1));
            prop_assert_eq!(i1.dim(), k * (k - w1.dim()));
            prop_assert_eq!(&ann_inverse(k, &i1), &w1);
            prop_assert_eq!(ann_duality(k, &w1.intersect(&w2)), i1.sum(&i2));
            prop_assert_eq!(ann_duality(k, &w1.sum(&w2)), i1.intersect(&i2));
        }

        #[test]
        fn product_dimension_law(k in 1usize..=3, x in prop::collection::vec(-2i64..=2, 9), y in prop::collection::vec(-2i64..=2, 9)) {
            // V = x M_k is a right ideal, I = M_k y a left ideal.
            let (x, y) = (mat_of(k, &x), mat_of(k, &y));
            let units: Vec<Vector> = (0..k * k).map(|u| unit_vec(Q, k * k, u)).collect();
            let v = Subspace::span(Q, k * k, units.iter().map(|e| flat_mul(k, &x, e)));
            let i = Subspace::span(Q, k * k, units.iter().map(|e| flat_mul(k, e, &y)));
            prop_assert!(is_right_ideal(k, &v) && is_left_ideal(k, &i));
            prop_assert_eq!(product_span(k, &v, &i).dim() * k * k, v.dim() * i.dim());
        }

        #[test]
        fn column_form_property(k in 1usize..=4, p in prop::collection::vec(-3i64..=3, 16), cuts in prop::collection::vec(0usize..=4, 0..3)) {
            let p = Mat::new(k, k, mat_of(k, &p)).unwrap();
            prop_assume!(crate::kernel::rank(&p).unwrap() == k);
            let p_inv = inverse(&p).unwrap();
            let mut bounds: Vec<usize> = cuts.into_iter().map(|c| c.min(k)).collect();
            bounds.push(0);
            bounds.push(k);
            bounds.sort_unstable();
            bounds.dedup();
            // P C P^{-1} for column blocks C: left ideals summing directly to M_k.
            let ideals: Vec<Subspace> = bounds
                .windows(2)
                .map(|w| {
                    let c = column_block(Q, k, w[0]..w[1]);
                    Subspace::span(Q, k * k, c.basis().iter().map(|a| conjugate(k, &p_inv, &p, a)))
                })
                .collect();
            let found = simultaneous_column_form(k, &ideals).unwrap();
            let found_inv = inverse(&found).unwrap();
            for (w, ideal) in bounds.windows(2).zip(&ideals) {
                let block = column_block(Q, k, w[0]..w[1]);
                let moved = Subspace::span(Q, k * k, ideal.basis().iter().map(|a| conjugate(k, &found, &found_inv, a)));
                prop_assert_eq!(moved, block);
            }
        }
    }
}

