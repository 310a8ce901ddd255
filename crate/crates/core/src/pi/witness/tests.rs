use super::*;
use crate::algebra::flat_mul;
use crate::constructions::{fixture, m2_family};
use crate::kernel::{scale_vec, zero_vec};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn q(n: i64) -> Scalar {
    Scalar::from_int(Q, n)
}

fn mat(v: [i64; 4]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

/// Evaluates words directly in M_2(Q), ignoring labels.
fn eval_m2(words: &Words, subs: &[Vector]) -> Vector {
    let mut out = zero_vec(Q, 4);
    for (w, c) in words {
        let m = w.iter().skip(1).fold(subs[w[0]].clone(), |acc, &v| flat_mul(2, &acc, &subs[v]));
        crate::kernel::axpy(&mut out, c, &m);
    }
    out
}

fn rows_of(r: [i64; 2]) -> [Vector; 2] {
    [mat([r[0], r[1], 0, 0]), mat([0, 0, r[0], r[1]])]
}

fn units() -> Vec<Vector> {
    (0..4).map(|u| crate::kernel::unit_vec(Q, 4, u)).collect()
}

fn identity_times(c: i64) -> Vector {
    mat([c, 0, 0, c])
}

#[test]
fn f0_on_matrix_units_is_central() {
    let a = fixture("m2-trivial").unwrap();
    let f = witness_f0(Q, 0);
    let mut subs = units();
    subs.extend(units());
    let v = f.evaluate(&a, &subs).unwrap();
    assert!(v[1].is_zero() && v[2].is_zero());
    assert!(!v[0].is_zero());
    assert_eq!(v[0], v[3]);
    // alternating in the x's
    subs[1] = subs[0].clone();
    assert!(is_zero_vec(&f.evaluate(&a, &subs).unwrap()));
}

#[test]
fn f0_vanishes_on_the_field() {
    let a = fixture("field-trivial").unwrap();
    let f = witness_f0(Q, 0);
    let subs = vec![vec![q(1)]; 8];
    assert!(is_zero_vec(&f.evaluate(&a, &subs).unwrap()));
}

#[test]
fn pair_and_triple_examples() {
    let [a1, a2] = rows_of([1, 0]);
    let [b1, b2] = rows_of([0, 1]);
    let v = eval_m2(&pair_words(Q, &[0, 1, 2, 3]), &[a1.clone(), a2.clone(), b1.clone(), b2.clone()]);
    assert_eq!(v, identity_times(-1));
    // proportional rows give zero
    let [c1, c2] = rows_of([2, 0]);
    let v = eval_m2(&pair_words(Q, &[0, 1, 2, 3]), &[a1.clone(), a2.clone(), c1, c2]);
    assert!(is_zero_vec(&v));
    let [d1, d2] = rows_of([2, 3]);
    let v = eval_m2(&triple_words(Q, &[0, 1, 2, 3, 4, 5]), &[a1, a2, b1, b2, d1, d2]);
    assert_eq!(v, identity_times(-6));
    assert_eq!(witness_pair(Q, 1, 1).unwrap_err(), PiError::RepeatedLabels);
    assert_eq!(witness_triple(Q, 1, 2, 1).unwrap_err(), PiError::RepeatedLabels);
    assert_eq!(witness_pair(Q, 0, 1).unwrap().n(), 4);
    assert_eq!(witness_triple(Q, 0, 1, 2).unwrap().len(), 16);
}

#[test]
fn pairing_examples() {
    let p = triangle_pairing(&[vec![0, 1], vec![2], vec![3]]).unwrap();
    assert_eq!(p.len(), 4);
    assert!(p.contains(&0) && p.contains(&1));
    let p = triangle_pairing(&[vec![0, 1], vec![2, 3], vec![4]]).unwrap();
    assert_eq!(p.len(), 5);
    assert!(triangle_pairing(&[vec![0, 1, 2], vec![3]]).is_err());
    assert!(triangle_pairing(&[vec![0]]).is_err());
    assert_eq!(triangle_pairing(&[]).unwrap(), Vec::<usize>::new());
}

fn matrix_value(a: &GradedAlgebra, w: &Witness) -> Vector {
    let cls = m2_classify(a).unwrap();
    cls.iso.apply(&cls.quotient.project(&w.value))
}

#[test]
fn non_triangle_example() {
    let a = m2_family(3, 0, &[2, 1]).unwrap();
    let w = build_alternating_nonidentity(&a, 4).unwrap();
    assert_eq!(w.case, WitnessCase::NonTriangle);
    assert_eq!(w.partition.parts(), &[2, 2]);
    assert_eq!(w.polynomial.n(), 4);
    assert_eq!(w.alternating_sets.len(), 2);
    let m = matrix_value(&a, &w);
    assert!(!m[0].is_zero());
    assert!(m[1].is_zero() && m[2].is_zero() && m[3].is_zero());
}

#[test]
fn non_triangle_witnesses_are_nonzero() {
    let cases: &[(usize, usize, &[usize], &[usize])] =
        &[(3, 0, &[2, 1], &[2, 3, 4, 5, 6]), (3, 1, &[3], &[2, 4, 6]), (1, 1, &[1], &[1, 2, 3, 4, 5]), (2, 1, &[2], &[4])];
    for &(t0, t1, classes, ns) in cases {
        let a = m2_family(t0, t1, classes).unwrap();
        for &n in ns {
            let w = build_alternating_nonidentity(&a, n).unwrap_or_else(|e| panic!("({t0},{t1},{classes:?}) n = {n}: {e}"));
            assert!(!is_zero_vec(&w.value));
            assert_eq!(w.tableau.shape(), &w.partition);
            assert_eq!(w.partition.n(), n);
        }
    }
}

#[test]
fn triangle_witnesses() {
    let a = m2_family(2, 0, &[1, 1]).unwrap();
    let w = build_alternating_nonidentity(&a, 8).unwrap();
    assert_eq!(w.case, WitnessCase::Triangle);
    assert_eq!(w.partition.parts(), &[2, 2, 2, 2]);
    assert!(!is_zero_vec(&w.value));
    assert!(matches!(build_alternating_nonidentity(&a, 6), Err(PiError::NotApplicable(_))));

    let m2 = fixture("m2-trivial").unwrap();
    let w = build_alternating_nonidentity(&m2, 8).unwrap();
    let m = matrix_value(&m2, &w);
    assert!(m[1].is_zero() && m[2].is_zero() && !m[0].is_zero() && m[0] == m[3]);

    let odd = m2_family(3, 0, &[1, 1, 1]).unwrap();
    let w = build_alternating_nonidentity(&odd, 12).unwrap();
    let m = matrix_value(&odd, &w);
    assert!(m[1].is_zero() && m[2].is_zero() && !m[0].is_zero() && m[0] == m[3]);
}

#[test]
fn not_applicable_outside_m2() {
    for name in ["ft-rzb2", "ut2-z2", "field-trivial", "zero-1"] {
        let a = fixture(name).unwrap();
        assert!(matches!(build_alternating_nonidentity(&a, 4), Err(PiError::NotApplicable(_))), "{name}");
    }
}

#[test]
fn witnesses_alternate_in_their_sets() {
    let a = m2_family(3, 0, &[2, 1]).unwrap();
    for n in [4, 6] {
        let w = build_alternating_nonidentity(&a, n).unwrap();
        for set in w.alternating_sets.iter().filter(|s| s.len() > 1) {
            let mut subs = w.substitution.clone();
            subs[set[1]] = subs[set[0]].clone();
            let labels_match = w.polynomial.terms().next().is_some_and(|(m, _)| m.labels[set[0]] == m.labels[set[1]]);
            if labels_match {
                assert!(is_zero_vec(&w.polynomial.evaluate(&a, &subs).unwrap()));
            }
        }
    }
}

proptest! {
    #[test]
    fn pair_is_minus_determinant_squared(r in prop::array::uniform4(-4i64..5)) {
        let [x1, x2] = rows_of([r[0], r[1]]);
        let [y1, y2] = rows_of([r[2], r[3]]);
        let det = r[0] * r[3] - r[1] * r[2];
        let v = eval_m2(&pair_words(Q, &[0, 1, 2, 3]), &[x1, x2, y1, y2]);
        prop_assert_eq!(v, scale_vec(&q(-det * det), &identity_times(1)));
    }

    #[test]
    fn triple_is_minus_alpha_beta(al in -4i64..5, be in -4i64..5) {
        let [a1, a2] = rows_of([1, 0]);
        let [b1, b2] = rows_of([0, 1]);
        let [c1, c2] = rows_of([al, be]);
        let v = eval_m2(&triple_words(Q, &[0, 1, 2, 3, 4, 5]), &[a1, a2, b1, b2, c1, c2]);
        prop_assert_eq!(v, identity_times(-al * be));
    }
}

