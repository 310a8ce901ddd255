use super::*;
use crate::constructions::{fixture, m2_family};
use proptest::prelude::*;

fn gamma_of(a: &GradedAlgebra) -> Vec<i64> {
    theta_profile(a).unwrap().gamma
}

#[test]
fn gamma_examples() {
    assert_eq!(gamma_of(&fixture("m2-trivial").unwrap()), vec![-1, 0, 0, 1]);
    assert_eq!(gamma_of(&m2_family(3, 0, &[2, 1]).unwrap()), vec![-1, 0, 0, 0, 1, 1]);
    assert_eq!(gamma_of(&m2_family(0, 1, &[]).unwrap()), vec![-1, 0, 0, 1]);
    assert_eq!(gamma_of(&m2_family(1, 1, &[1]).unwrap()), vec![-1, 0, 0, 0, 1, 1]);
    let p = theta_profile(&m2_family(2, 0, &[1, 1]).unwrap()).unwrap();
    assert_eq!(p.beta, vec![-1, -1, -1, 0]);
    assert!(p.gamma1_ok);
}

#[test]
fn zeta_examples() {
    let z = zeta_root(&[-1, 1]).unwrap();
    assert!(z.exact && z.lo == BigRational::one());
    let z = zeta_root(&[-1, 1, 1]).unwrap();
    assert!(!z.exact);
    assert!(q_to_f64(&z.width()) <= ZETA_WIDTH);
    assert!((z.midpoint() - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(zeta_root(&[-1, -1, 0]).unwrap_err(), ExponentError::NoRoot);
    assert!(matches!(zeta_root(&[0, 1]), Err(ExponentError::Inapplicable(_))));
    assert!(matches!(zeta_root(&[1, -1]), Err(ExponentError::Inapplicable(_))));
}

#[test]
fn phi_examples() {
    assert!((phi(&[1.0 / 3.0; 3]) - 3.0).abs() < 1e-12);
    assert!((phi(&[1.0, 0.0]) - 1.0).abs() < 1e-12);
    let m = phi_max(&[0, 0, 0]).unwrap();
    assert!((m.d - 3.0).abs() < 1e-12);
    let m = phi_max(&[-1, 1]).unwrap();
    assert!((m.d - 2.0).abs() < 1e-12);
    let m = phi_max(&[-1, 1, 1]).unwrap();
    assert!((m.d - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    for (x, y) in m.argmax.iter().zip([0.5, 0.25, 0.25]) {
        assert!((x - y).abs() < 1e-9);
    }
    assert!((phi(&m.argmax) - m.d).abs() < 1e-9);
    assert!(m.searched <= m.d + 1e-6);
}

#[test]
fn upper_bound_examples() {
    let r = upper_bound_report(&m2_family(3, 0, &[2, 1]).unwrap()).unwrap();
    let b = r.upper_bound.unwrap();
    assert!(b.lo <= 3.0 + 2.0 * 2f64.sqrt() && 3.0 + 2.0 * 2f64.sqrt() <= b.hi);
    let r = upper_bound_report(&fixture("m2-trivial").unwrap()).unwrap();
    assert_eq!(r.upper_bound.unwrap().value, 4.0);
    assert!(r.zeta.unwrap().exact);
    // UT_2 with the Z_2 grading: J(A) is spanned by e12, so theta is undefined
    assert!(upper_bound_report(&fixture("ut2-z2").unwrap()).is_err());
}

#[test]
fn classification_examples() {
    let c = m2_classify(&m2_family(3, 1, &[2, 1]).unwrap()).unwrap();
    assert_eq!(c.t0, vec![0, 1, 2]);
    assert_eq!(c.t1, vec![3]);
    assert_eq!(c.classes, vec![vec![0, 1], vec![2]]);
    assert_eq!(c.largest_class(), &[0, 1]);
    assert!(!c.triangle_holds());
    assert_eq!(c.class_of(2), Some(1));
    let q = |n| Scalar::from_int(Field::Rational, n);
    assert_eq!(c.rows[&0], [q(1), q(0)]);
    let c = m2_classify(&m2_family(4, 0, &[2, 1, 1]).unwrap()).unwrap();
    assert!(c.triangle_holds());
    assert!(matches!(m2_classify(&fixture("ut2-z2").unwrap()), Err(ExponentError::NotRightZeroBand)));
    assert!(m2_classify(&fixture("ft-rzb2").unwrap()).is_err());
}

#[test]
fn m2_exponent_examples() {
    let r = m2_exponent(&m2_family(3, 0, &[2, 1]).unwrap()).unwrap();
    let m = r.m2.unwrap();
    assert_eq!(m.exponent_exact, "3 + 2*sqrt(2)");
    assert!(m.exponent_decimal < m.dim as f64);
    assert!(m.matches_upper_bound);
    assert_eq!(m.zeta_matches_closed_form, Some(true));

    let m = m2_exponent(&m2_family(2, 1, &[1, 1]).unwrap()).unwrap().m2.unwrap();
    assert!(m.triangle_holds);
    assert_eq!(m.exponent_exact, "8");
    let m = m2_exponent(&fixture("m2-trivial").unwrap()).unwrap().m2.unwrap();
    assert_eq!(m.exponent_exact, "4");
    assert!(m.matches_upper_bound);
}

#[test]
fn exact_exponent_rendering() {
    assert_eq!(ExactExponent::from_ac(2, 1).render(), "3 + 2*sqrt(2)");
    assert_eq!(ExactExponent::from_ac(4, 1).render(), "9");
    assert_eq!(ExactExponent::from_ac(8, 1).render(), "9 + 4*sqrt(2)");
    assert_eq!(ExactExponent::integer(6).value(), 6.0);
}

#[test]
fn column_sums_are_bounded() {
    for (t0, t1, cs) in [(3, 0, vec![2, 1]), (3, 1, vec![3]), (1, 1, vec![1]), (4, 2, vec![3, 1]), (2, 0, vec![1, 1])] {
        let a = m2_family(t0, t1, &cs).unwrap();
        let cls = m2_classify(&a).unwrap();
        let g = gamma_of(&a);
        let cap = 3 * t0 as i64 + 4 * t1 as i64 - 2 * cls.largest_class().len() as i64;
        for m in 0..=g.len() {
            assert!(m as i64 - g[..m].iter().sum::<i64>() <= cap, "({t0},{t1},{cs:?}) m = {m}");
        }
    }
}

#[test]
fn growth_table_for_ut2() {
    let t = growth_table(&fixture("ut2-z2").unwrap(), 2, pi::DEFAULT_BUDGET).unwrap();
    let got: Vec<(usize, u128)> = t.rows.iter().map(|r| (r.n, r.codim)).collect();
    assert_eq!(got, vec![(1, 2), (2, 5)]);
    assert!(t.rows.iter().all(|r| r.cap_ok && r.witness_partition.is_none()));
    assert!(t.to_csv().starts_with("n,codim_graded,root,upper_bound,cap_ok,witness_partition,witness_dim,witness_ok\n1,2,"));
}

proptest! {
    #[test]
    fn enclosure_brackets_the_root(neg in 1usize..4, zeros in 0usize..3, pos in 1usize..6) {
        let mut g = vec![-1i64; neg];
        g.extend(std::iter::repeat_n(0, zeros));
        g.extend(std::iter::repeat_n(1, pos));
        let s: i64 = g.iter().sum();
        match zeta_root(&g) {
            Ok(z) if z.exact => prop_assert!(p_eval(&g, &z.lo).is_zero()),
            Ok(z) => {
                prop_assert!(p_eval(&g, &z.lo).is_negative());
                prop_assert!(p_eval(&g, &z.hi).is_positive());
                let closed = (neg as f64 / pos as f64).sqrt();
                prop_assert!((z.midpoint() - closed).abs() < 1e-10);
            }
            Err(e) => prop_assert!(s < 0 && e == ExponentError::NoRoot),
        }
    }
}
