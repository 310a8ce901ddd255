//! Minimal polynomials of algebra elements and their roots in the base field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::structure::Algebra;
use crate::kernel::{solve_or_member, Field, Scalar, Vector};

/// Monic minimal polynomial of x (coefficients low to high), given the identity.
pub fn min_poly(a: &Algebra, one: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
    let mut powers: Vec<Vector> = vec![one.to_vec()];
    loop {
        let next = a.mul(powers.last().unwrap(), x);
        if let Some(c) = solve_or_member(&powers, &next).expect("same length") {
            let mut poly: Vec<Scalar> = c.iter().map(|v| -v).collect();
            poly.push(Scalar::one(a.field()));
            return poly;
        }
        powers.push(next);
    }
}

pub fn eval_poly(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(x.field());
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Roots of a polynomial in its coefficient field, found by the rational
/// root test over Q or exhaustively over small prime fields. Returns None
/// when the search is out of reach.
pub fn field_roots(poly: &[Scalar]) -> Option<Vec<Scalar>> {
    let field = poly.first()?.field();
    match field {
        Field::Prime(p) => {
            if p > 100_000 {
                return None;
            }
            Some((0..p).map(|v| Scalar::Fp { v, p }).filter(|x| eval_poly(poly, x).is_zero()).collect())
        }
        Field::Rational => {
            let qs: Vec<&BigRational> = poly.iter().map(|c| c.as_rational().unwrap()).collect();
            let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let mut ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
            let mut roots = Vec::new();
            if ints.iter().all(Zero::is_zero) {
                return Some(roots);
            }
            if ints[0].is_zero() {
                roots.push(Scalar::zero(field));
                while ints[0].is_zero() {
                    ints.remove(0);
                }
            }
            if ints.len() == 1 {
                return Some(roots);
            }
            let ps = divisors(&ints[0])?;
            let qd = divisors(ints.last().unwrap())?;
            let mut cands: Vec<BigRational> = Vec::new();
            for &p in &ps {
                for &q in &qd {
                    for s in [1i64, -1] {
                        let c = BigRational::new(BigInt::from(p) * s, BigInt::from(q));
                        if !cands.contains(&c) {
                            cands.push(c);
                        }
                    }
                }
            }
            cands.sort();
            for c in cands {
                let x = Scalar::from_rational(c);
                if eval_poly(poly, &x).is_zero() {
                    roots.push(x);
                }
            }
            Some(roots)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(Field::Rational, x)).collect()
    }

    #[test]
    fn rational_roots() {
        // (x-1)(2x+3) = 2x^2 + x - 3
        let r = field_roots(&q(&[-3, 1, 2])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&Scalar::from_ratio(Field::Rational, -3, 2).unwrap()));
        assert!(field_roots(&q(&[1, 0, 1])).unwrap().is_empty());
        assert_eq!(field_roots(&q(&[0, 0, 1])).unwrap(), q(&[0]));
    }
}
