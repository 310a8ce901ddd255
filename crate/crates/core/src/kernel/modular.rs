//! Arithmetic modulo word-sized primes: incremental echelon forms,
//! rational reconstruction and the exact Bareiss fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::scalar::{invmod, mulmod, powmod};

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly random prime in [2^61, 2^62).
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(c) {
            return c;
        }
    }
}

/// Row space of a set of vectors over F_p, kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModEchelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        ModEchelon { p, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = ((*x as u128 + mulmod(neg, r, p) as u128) % p as u128) as u64;
                }
            }
        }
    }

    /// Adds a vector; returns true when it raised the rank.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let p = self.p;
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = invmod(v[pc], p).expect("nonzero residue");
        for x in v.iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (x, &r) in row.iter_mut().zip(&v) {
                if r != 0 {
                    *x = ((*x as u128 + mulmod(neg, r, p) as u128) % p as u128) as u64;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// Rows sorted by pivot column.
    pub fn sorted(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        (
            idx.iter().map(|&i| self.rows[i].clone()).collect(),
            idx.iter().map(|&i| self.pivots[i]).collect(),
        )
    }

    /// Basis of {x : row·x = 0 for every row}, in reduced echelon form.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut out = ModEchelon::new(p, self.ncols);
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0u64; self.ncols];
            x[f] = 1;
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                x[pc] = (p - row[f]) % p;
            }
            out.insert(x);
        }
        out.sorted().0
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Recovers r/s from a residue when |r|, s <= sqrt(p/2).
pub fn reconstruct(a: u64, p: u64) -> Option<BigRational> {
    let bound = isqrt(p as u128 / 2) as i128;
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    if t1 < 0 {
        r1 = -r1;
        t1 = -t1;
    }
    if r1.gcd(&t1) != 1 {
        return None;
    }
    Some(BigRational::new(BigInt::from(r1), BigInt::from(t1)))
}

/// Exact rank by fraction-free elimination. Rows are rational and get
/// their denominators cleared first.
pub fn bareiss_rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for r in rows {
        let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = r.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        if ints.iter().any(|x| !x.is_zero()) && !m.contains(&ints) {
            m.push(ints);
        }
    }
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..ncols {
                let v = &row[j] * &prow[col] - &lead * &prow[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn prime_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_prime(&mut rng);
        assert!(((1 << 61)..(1 << 62)).contains(&p) && is_prime_u64(p));
    }

    #[test]
    fn reconstruct_roundtrip() {
        let p = (1u64 << 61) - 1;
        for (n, d) in [(1i64, 2i64), (-7, 3), (0, 1), (123456, 789)] {
            let a = super::super::Scalar::from_ratio(super::super::Field::Rational, n, d)
                .unwrap()
                .residue(p)
                .unwrap();
            assert_eq!(reconstruct(a, p), Some(BigRational::new(n.into(), d.into())));
        }
    }

    #[test]
    fn echelon_kernel() {
        let p = 101;
        let mut e = ModEchelon::new(p, 3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 6]));
        let k = e.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            let dot = (v[0] + 2 * v[1] + 3 * v[2]) % p;
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn bareiss_simple() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]];
        assert_eq!(bareiss_rank(&rows, 2), 2);
        assert_eq!(bareiss_rank(&rows[..2], 2), 1);
    }
}
