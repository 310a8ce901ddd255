//! Exact scalars and linear algebra.
//!
//! Rank over Q goes through a random word-sized prime. A modular rank can
//! only undershoot, so a full modular rank is final; otherwise the modular
//! nullspace is lifted back to Q and checked against the exact matrix, and
//! fraction-free elimination takes over if that lift fails.

mod echelon;
mod mat;
pub mod modular;
mod scalar;

pub use echelon::{add_vec, axpy, is_zero_vec, scale_vec, sub_vec, unit_vec, zero_vec, Echelon, Vector};
pub use mat::Mat;
pub use scalar::{Field, Scalar};

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("mixed scalar fields in one matrix")]
    MixedFields,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index ({row}, {col}) out of range")]
    IndexOutOfRange { row: usize, col: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("matrix is not invertible")]
    Singular,
}

fn common_field(m: &Mat) -> Result<Field, KernelError> {
    Ok(m.field()?.unwrap_or(Field::Rational))
}

/// Rank over the field of the entries.
pub fn rank(m: &Mat) -> Result<usize, KernelError> {
    match common_field(m)? {
        Field::Prime(p) => Ok(rank_mod(m, p)),
        Field::Rational => Ok(rank_rational(m)),
    }
}

/// Rank by exact fraction-free elimination only, skipping the modular path.
pub fn rank_exact(m: &Mat) -> Result<usize, KernelError> {
    match common_field(m)? {
        Field::Prime(p) => Ok(rank_mod(m, p)),
        Field::Rational => {
            let rows: Vec<Vec<BigRational>> = (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| x.as_rational().expect("rational").clone()).collect())
                .collect();
            Ok(modular::bareiss_rank(&rows, m.cols()))
        }
    }
}

fn rank_mod(m: &Mat, p: u64) -> usize {
    let mut e = modular::ModEchelon::new(p, m.cols());
    for i in 0..m.rows() {
        e.insert(m.row(i).iter().map(|x| x.residue(p).expect("same prime")).collect());
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

fn rank_rational(m: &Mat) -> usize {
    // Orient so the nullspace we certify lives in the shorter dimension.
    let owned;
    let m = if m.rows() < m.cols() {
        owned = m.transpose();
        &owned
    } else {
        m
    };
    let full = m.cols();
    if full == 0 {
        return 0;
    }
    let mut rng = rand::thread_rng();
    for _attempt in 0..4 {
        let p = modular::random_prime(&mut rng);
        let mut e = modular::ModEchelon::new(p, full);
        let mut good = true;
        for i in 0..m.rows() {
            let row: Option<Vec<u64>> = m.row(i).iter().map(|x| x.residue(p)).collect();
            let Some(row) = row else {
                good = false;
                break;
            };
            e.insert(row);
            if e.is_full() {
                break;
            }
        }
        if !good {
            continue;
        }
        if e.is_full() {
            return full;
        }
        if certify_kernel(m, &e, p) {
            return e.rank();
        }
        break;
    }
    rank_exact(m).expect("rational matrix")
}

/// Lifts the modular nullspace to Q and checks every vector exactly.
fn certify_kernel(m: &Mat, e: &modular::ModEchelon, p: u64) -> bool {
    let mut lifted = Vec::new();
    for v in e.kernel() {
        let q: Option<Vec<BigRational>> = v.iter().map(|&a| modular::reconstruct(a, p)).collect();
        match q {
            Some(q) => lifted.push(q),
            None => return false,
        }
    }
    (0..m.rows()).all(|i| {
        let row = m.row(i);
        lifted.iter().all(|v| {
            let mut acc = BigRational::zero();
            for (a, b) in row.iter().zip(v) {
                if !b.is_zero() {
                    let a = a.as_rational().expect("rational");
                    if !a.is_zero() {
                        acc += a * b;
                    }
                }
            }
            acc.is_zero()
        })
    })
}

/// Reduced echelon rows and pivot columns of m.
pub fn rref(m: &Mat) -> Result<Echelon, KernelError> {
    let field = common_field(m)?;
    let mut e = Echelon::new(field, m.cols());
    for i in 0..m.rows() {
        e.insert(m.row(i).to_vec());
    }
    Ok(e)
}

/// Basis of the right nullspace, in reduced echelon normal form.
pub fn kernel_basis(m: &Mat) -> Result<Vec<Vector>, KernelError> {
    Ok(rref(m)?.kernel())
}

/// Coefficients expressing target in the given spanning list, or None.
/// Free coefficients are set to zero, so the answer is deterministic.
pub fn solve_or_member(span: &[Vector], target: &[Scalar]) -> Result<Option<Vector>, KernelError> {
    let dim = target.len();
    if let Some(bad) = span.iter().find(|v| v.len() != dim) {
        return Err(KernelError::DimensionMismatch { expected: dim, found: bad.len() });
    }
    let field = match target.first().or_else(|| span.iter().flatten().next()) {
        Some(s) => s.field(),
        None => return Ok(Some(vec![])),
    };
    if span.iter().flatten().chain(target).any(|x| x.field() != field) {
        return Err(KernelError::MixedFields);
    }
    let k = span.len();
    let mut e = Echelon::new(field, k + 1);
    for r in 0..dim {
        let mut row: Vector = span.iter().map(|v| v[r].clone()).collect();
        row.push(target[r].clone());
        e.insert(row);
    }
    if e.pivots.contains(&k) {
        return Ok(None);
    }
    let mut c = zero_vec(field, k);
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        c[pc] = row[k].clone();
    }
    Ok(Some(c))
}

pub fn inverse(m: &Mat) -> Result<Mat, KernelError> {
    let n = m.rows();
    if m.cols() != n {
        return Err(KernelError::DimensionMismatch { expected: n, found: m.cols() });
    }
    let field = common_field(m)?;
    let mut e = Echelon::new(field, 2 * n);
    for i in 0..n {
        let mut row = m.row(i).to_vec();
        row.extend(unit_vec(field, n, i));
        e.insert(row);
    }
    // The identity block keeps the rank at n; M is invertible iff every pivot lands in M.
    if e.pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(KernelError::Singular);
    }
    Mat::from_rows_with_cols(n, e.rows.iter().take(n).map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(Field::Rational, x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Mat::identity(Field::Rational, 2)).unwrap(), 2);
        assert_eq!(rank(&Mat::zeros(Field::Rational, 2, 2)).unwrap(), 0);
        assert_eq!(rank(&Mat::from_ints(&[&[1, 2], &[2, 4]])).unwrap(), 1);
    }

    #[test]
    fn rank_rejects_mixed_fields() {
        let m = Mat::new(1, 2, vec![Scalar::from_int(Field::Rational, 1), Scalar::from_int(Field::Prime(5), 1)])
            .unwrap();
        assert_eq!(rank(&m), Err(KernelError::MixedFields));
    }

    #[test]
    fn rank_mod_small_prime() {
        let f = Field::Prime(3);
        let m = Mat::new(2, 2, [1, 2, 2, 1].iter().map(|&x| Scalar::from_int(f, x)).collect()).unwrap();
        // det = -3 = 0 mod 3
        assert_eq!(rank(&m).unwrap(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(Field::Rational, 3)).unwrap().is_empty());
        assert_eq!(kernel_basis(&Mat::from_ints(&[&[1, -1]])).unwrap(), vec![qv(&[1, 1])]);
        assert_eq!(
            kernel_basis(&Mat::zeros(Field::Rational, 2, 2)).unwrap(),
            vec![qv(&[1, 0]), qv(&[0, 1])]
        );
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_or_member(&[qv(&[1, 0])], &qv(&[2, 0])).unwrap(), Some(qv(&[2])));
        assert_eq!(solve_or_member(&[qv(&[1, 0])], &qv(&[0, 1])).unwrap(), None);
        assert_eq!(solve_or_member(&[], &qv(&[0, 0])).unwrap(), Some(vec![]));
        assert!(solve_or_member(&[qv(&[1])], &qv(&[0, 1])).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(Field::Rational, 2));
        assert_eq!(inverse(&Mat::from_ints(&[&[1, 2], &[2, 4]])), Err(KernelError::Singular));
    }

    #[test]
    fn deficient_rank_takes_certified_path() {
        // 6x4 of rank 2 with fractional entries.
        let a = Mat::from_ints(&[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let mut rows = a.row_vecs();
        for k in 1..5i64 {
            let c = Scalar::from_ratio(Field::Rational, k, 7).unwrap();
            let mut r = scale_vec(&c, &rows[0]);
            axpy(&mut r, &Scalar::from_int(Field::Rational, -k), &rows[1]);
            rows.push(r);
        }
        let m = Mat::from_rows(rows).unwrap();
        assert_eq!(rank(&m).unwrap(), 2);
        assert_eq!(rank_exact(&m).unwrap(), 2);
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                Mat::new(r, c, v.into_iter().map(|x| Scalar::from_int(Field::Rational, x)).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn modular_rank_matches_exact(m in small_mat()) {
            prop_assert_eq!(rank(&m).unwrap(), rank_exact(&m).unwrap());
        }

        #[test]
        fn rank_nullity(m in small_mat()) {
            let k = kernel_basis(&m).unwrap();
            prop_assert_eq!(rank(&m).unwrap() + k.len(), m.cols());
            for v in &k {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }

        #[test]
        fn low_rank_products(a in proptest::collection::vec(-9i64..=9, 12), b in proptest::collection::vec(-9i64..=9, 8)) {
            // (6x2)(2x4) has rank at most 2, exercising certification.
            let q = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(Field::Rational, x)).collect::<Vec<_>>();
            let l = Mat::new(6, 2, q(&a)).unwrap();
            let r = Mat::new(2, 4, q(&b)).unwrap();
            let m = l.mul(&r).unwrap();
            prop_assert_eq!(rank(&m).unwrap(), rank_exact(&m).unwrap());
        }
    }
}
