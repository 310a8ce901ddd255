//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::KernelError;

/// The coefficient field of a matrix or algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // p is prime, so Fermat.
    Some(powmod(a, p - 2, p))
}

/// Reduce a big integer into [0, p).
pub(crate) fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = x % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().expect("residue fits in u64")
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { v: bigint_mod(&BigInt::from(n), p), p },
        }
    }

    pub fn from_ratio(field: Field, num: i64, den: i64) -> Result<Scalar, KernelError> {
        if den == 0 {
            return Err(KernelError::ZeroDenominator);
        }
        Scalar::from_bigs(field, BigInt::from(num), BigInt::from(den))
    }

    pub fn from_bigs(field: Field, num: BigInt, den: BigInt) -> Result<Scalar, KernelError> {
        if den.is_zero() {
            return Err(KernelError::ZeroDenominator);
        }
        match field {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::Prime(p) => {
                let d = invmod(bigint_mod(&den, p), p).ok_or(KernelError::ZeroDenominator)?;
                Ok(Scalar::Fp { v: mulmod(bigint_mod(&num, p), d, p), p })
            }
        }
    }

    pub fn from_rational(q: BigRational) -> Scalar {
        Scalar::Q(q)
    }

    /// Parses "a", "-a" or "a/b".
    pub fn parse(field: Field, s: &str) -> Result<Scalar, KernelError> {
        let bad = || KernelError::Parse(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        Scalar::from_bigs(field, num, den)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(q) if q.is_zero() => None,
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
            Scalar::Fp { v, p } => invmod(*v, *p).map(|v| Scalar::Fp { v, p: *p }),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// Lossy conversion for display and numerics.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Q(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Fp { v, .. } => *v as f64,
        }
    }

    /// Residue modulo p, or None when p divides the denominator.
    pub fn residue(&self, p: u64) -> Option<u64> {
        match self {
            Scalar::Q(q) => {
                let d = bigint_mod(q.denom(), p);
                let inv = invmod(d, p)?;
                Some(mulmod(bigint_mod(q.numer(), p), inv, p))
            }
            Scalar::Fp { v, p: q } if *q == p => Some(*v),
            Scalar::Fp { .. } => None,
        }
    }

    fn check(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("scalar field mismatch: {} vs {}", self.field(), other.field());
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => {
                self.check(rhs);
                unreachable!()
            }
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => {
                self.check(rhs);
                unreachable!()
            }
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: mulmod(*a, *b, *p), p: *p }
            }
            _ => {
                self.check(rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (*p - *v) % *p, p: *p },
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
