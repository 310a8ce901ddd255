//! theta/gamma profiles, the root zeta, the maximum of Phi, the upper bound
//! sum zeta^gamma_i and the closed-form exponent when A/J(A) = M_2(F).
//!
//! zeta is located by bisection with exact rational sign tests; floats only
//! appear in decimal output and in the random search that double-checks
//! the maximum of Phi.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{
    jacobson_radical, minimal_left_ideal_row, split_iso_to_matrix, AlgebraError, GradedAlgebra, Quotient, SplitIso,
    Subspace,
};
use crate::kernel::{Field, Mat, Scalar, Vector};
use crate::pi::{self, hook_dimension, PiError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExponentError {
    #[error("quotient is not M_2(F): {0}")]
    NotM2(String),
    #[error("support is not a right zero band")]
    NotRightZeroBand,
    #[error("bound machinery inapplicable: {0}")]
    Inapplicable(String),
    #[error("no root in (0,1]: P < 0 on [0,1]")]
    NoRoot,
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Pi(#[from] PiError),
}

fn q_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// classification

/// T_0, T_1 and the equivalence classes of T_0 for A/J(A) = M_2(F), with
/// psi normalized so that I_t = psi^{-1}<e11, e21> for t in the largest class.
#[derive(Clone, Debug)]
pub struct M2Classification {
    pub t0: Vec<usize>,
    pub t1: Vec<usize>,
    /// Classes of T_0, each sorted, ordered by their elements.
    pub classes: Vec<Vec<usize>>,
    /// Index in `classes` of the largest class (first one on ties).
    pub largest: usize,
    /// (alpha_t, beta_t) with psi(I_t) = <alpha e_i1 + beta e_i2>.
    pub rows: BTreeMap<usize, [Scalar; 2]>,
    pub quotient: Quotient,
    pub iso: SplitIso,
    /// pi(A^(t)) for every t in T_0 and T_1.
    images: BTreeMap<usize, Subspace>,
}

impl M2Classification {
    pub fn largest_class(&self) -> &[usize] {
        self.classes.get(self.largest).map_or(&[], Vec::as_slice)
    }

    pub fn class_of(&self, t: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&t))
    }

    /// No class exceeds the sum of the others (or T_0 is empty).
    pub fn triangle_holds(&self) -> bool {
        let total: usize = self.classes.iter().map(Vec::len).sum();
        self.classes.iter().all(|c| 2 * c.len() <= total)
    }

    /// The same classification under psi' = c o psi.
    pub fn with_iso(&self, iso: SplitIso) -> Result<Self, ExponentError> {
        let rows = rows_for(&self.images, &self.t0, &iso)?;
        Ok(M2Classification { rows, iso, ..self.clone() })
    }

    pub fn image(&self, t: usize) -> Option<&Subspace> {
        self.images.get(&t)
    }

    /// The element of A^(t) mapped to the flattened matrix m by psi o pi.
    pub fn lift(&self, a: &GradedAlgebra, t: usize, m: &[Scalar]) -> Result<Vector, ExponentError> {
        let y = self.iso.apply_inv(m);
        self.quotient
            .preimage_in(&a.component(t), &y)
            .ok_or_else(|| ExponentError::Internal(format!("no preimage in component {t}")))
    }
}

fn rows_for(
    images: &BTreeMap<usize, Subspace>,
    t0: &[usize],
    iso: &SplitIso,
) -> Result<BTreeMap<usize, [Scalar; 2]>, ExponentError> {
    let mut rows = BTreeMap::new();
    for &t in t0 {
        let im = &images[&t];
        let field = im.field();
        let in_m2 = Subspace::span(field, 4, im.basis().iter().map(|v| iso.apply(v)));
        let mu = minimal_left_ideal_row(&in_m2, 2)?;
        rows.insert(t, [mu[0].clone(), mu[1].clone()]);
    }
    Ok(rows)
}

pub fn m2_classify(a: &GradedAlgebra) -> Result<M2Classification, ExponentError> {
    let supp: Vec<usize> = a.support().into_iter().collect();
    for &s in &supp {
        for &t in &supp {
            if a.semigroup.mul(s, t) != t {
                return Err(ExponentError::NotRightZeroBand);
            }
        }
    }
    let j = jacobson_radical(&a.alg)?;
    let quotient = Quotient::new(&a.alg, &j)?;
    if quotient.alg.dim() != 4 {
        return Err(ExponentError::NotM2(format!("dim A/J(A) = {}", quotient.alg.dim())));
    }
    let mut images = BTreeMap::new();
    let (mut t0, mut t1) = (Vec::new(), Vec::new());
    for &t in &supp {
        let comp = a.component(t);
        let im = quotient.project_space(&comp);
        if im.dim() != comp.dim() {
            return Err(ExponentError::Inapplicable(format!("component {t} meets the radical")));
        }
        match im.dim() {
            2 => t0.push(t),
            4 => t1.push(t),
            d => return Err(ExponentError::NotM2(format!("component {t} has image of dimension {d}"))),
        }
        images.insert(t, im);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &t in &t0 {
        match classes.iter_mut().find(|c| images[&c[0]] == images[&t]) {
            Some(c) => c.push(t),
            None => classes.push(vec![t]),
        }
    }
    let largest = (0..classes.len()).fold(0, |best, i| if classes[i].len() > classes[best].len() { i } else { best });
    let distinguished = classes.get(largest).map(|c| images[&c[0]].clone());
    let iso = split_iso_to_matrix(&quotient.alg, distinguished.as_ref()).map_err(|e| match e {
        AlgebraError::NonSplit | AlgebraError::NotSquare(_) => ExponentError::NotM2(e.to_string()),
        e => e.into(),
    })?;
    if iso.k != 2 {
        return Err(ExponentError::NotM2(format!("k = {}", iso.k)));
    }
    let rows = rows_for(&images, &t0, &iso)?;
    Ok(M2Classification { t0, t1, classes, largest, rows, quotient, iso, images })
}

// ---------------------------------------------------------------------------
// canonical basis and theta

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Role {
    /// alpha e_i1 + beta e_i2 for t in T_0 (i = 1, 2).
    Row(usize),
    /// e_ij for t in T_1.
    Unit(usize, usize),
    /// A basis vector of A outside the M_2 setting.
    Plain(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalElement {
    pub t: usize,
    pub role: Role,
    /// psi(pi(b)) flattened row-major.
    pub image: Vector,
    pub vector: Vector,
    pub theta: i64,
}

/// min{i - j : m_ij != 0}; None for the zero matrix.
pub fn theta_of_matrix(k: usize, m: &[Scalar]) -> Option<i64> {
    (0..k * k).filter(|&u| !m[u].is_zero()).map(|u| (u / k) as i64 - (u % k) as i64).min()
}

/// The homogeneous basis: for t in T_0 the two row elements, for t in T_1
/// the four matrix-unit preimages.
pub fn canonical_basis(a: &GradedAlgebra, cls: &M2Classification) -> Result<Vec<CanonicalElement>, ExponentError> {
    let field = a.field();
    let zero = Scalar::zero(field);
    let mut out = Vec::new();
    let mut ts: Vec<usize> = cls.t0.iter().chain(&cls.t1).copied().collect();
    ts.sort_unstable();
    for t in ts {
        let mats: Vec<(Role, Vector)> = if let Some([al, be]) = cls.rows.get(&t) {
            vec![
                (Role::Row(1), vec![al.clone(), be.clone(), zero.clone(), zero.clone()]),
                (Role::Row(2), vec![zero.clone(), zero.clone(), al.clone(), be.clone()]),
            ]
        } else {
            (0..4).map(|u| (Role::Unit(u / 2 + 1, u % 2 + 1), crate::kernel::unit_vec(field, 4, u))).collect()
        };
        for (role, image) in mats {
            let vector = cls.lift(a, t, &image)?;
            let theta = theta_of_matrix(2, &image).expect("nonzero");
            out.push(CanonicalElement { t, role, image, vector, theta });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaProfile {
    pub k: usize,
    pub psi_choice: String,
    pub theta: Vec<i64>,
    pub gamma: Vec<i64>,
    pub beta: Vec<i64>,
    /// gamma_1 = 1 - k, expected whenever k >= 2.
    pub gamma1_ok: bool,
}

impl ThetaProfile {
    fn from_theta(k: usize, psi_choice: String, theta: Vec<i64>) -> Self {
        let mut gamma = theta.clone();
        gamma.sort_unstable();
        let beta = gamma
            .iter()
            .scan(0i64, |s, g| {
                *s += g;
                Some(*s)
            })
            .collect();
        let gamma1_ok = k < 2 || gamma.first() == Some(&(1 - k as i64));
        ThetaProfile { k, psi_choice, theta, gamma, beta, gamma1_ok }
    }
}

pub fn theta_profile(a: &GradedAlgebra) -> Result<ThetaProfile, ExponentError> {
    match m2_classify(a) {
        Ok(cls) => {
            let basis = canonical_basis(a, &cls)?;
            let choice = match cls.largest_class().first() {
                Some(t) => format!("canonical M2 basis; psi(I_{t}) = <e11, e21>"),
                None => "canonical M2 basis; T0 empty, psi from the left regular action".to_string(),
            };
            Ok(ThetaProfile::from_theta(2, choice, basis.iter().map(|b| b.theta).collect()))
        }
        Err(ExponentError::Algebra(e)) => Err(e.into()),
        Err(_) => {
            let j = jacobson_radical(&a.alg)?;
            let q = Quotient::new(&a.alg, &j)?;
            if q.alg.dim() == 0 {
                return Err(ExponentError::Inapplicable("A is nilpotent".into()));
            }
            let iso = split_iso_to_matrix(&q.alg, None)?;
            let theta = (0..a.dim())
                .map(|i| {
                    theta_of_matrix(iso.k, &iso.apply(&q.project(&a.alg.unit(i))))
                        .ok_or_else(|| ExponentError::Inapplicable(format!("basis element {i} lies in J(A)")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ThetaProfile::from_theta(iso.k, "algebra basis; psi from the left regular action".into(), theta))
        }
    }
}

// ---------------------------------------------------------------------------
// zeta

/// P(x) = sum gamma_i x^(gamma_i - gamma_1), exactly.
fn p_eval(gamma: &[i64], x: &BigRational) -> BigRational {
    let g1 = gamma[0];
    gamma.iter().map(|&g| q_int(g) * pow_q(x, (g - g1) as u32)).sum()
}

fn pow_q(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// x^e for an integer exponent of either sign.
fn zpow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        pow_q(x, e as u32)
    } else {
        pow_q(x, (-e) as u32).recip()
    }
}

pub(crate) fn q_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn q_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// An enclosure lo <= zeta <= hi with P(lo) < 0 < P(hi), or the exact root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: bool,
}

pub const ZETA_WIDTH: f64 = 1e-12;

impl ZetaRoot {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        q_to_f64(&((&self.lo + &self.hi) / q_int(2)))
    }
}

pub fn zeta_root(gamma: &[i64]) -> Result<ZetaRoot, ExponentError> {
    if gamma.is_empty() || gamma[0] >= 0 {
        return Err(ExponentError::Inapplicable("gamma_1 must be negative".into()));
    }
    if gamma.windows(2).any(|w| w[0] > w[1]) {
        return Err(ExponentError::Inapplicable("gamma must be sorted".into()));
    }
    let s: i64 = gamma.iter().sum();
    if s < 0 {
        return Err(ExponentError::NoRoot);
    }
    if s == 0 {
        return Ok(ZetaRoot { lo: BigRational::one(), hi: BigRational::one(), exact: true });
    }
    // 2^-41 < 1e-12
    let width = BigRational::new(BigInt::one(), BigInt::one() << 41);
    let (mut lo, mut hi) = (BigRational::zero(), BigRational::one());
    while &hi - &lo > width {
        let mid = (&lo + &hi) / q_int(2);
        let v = p_eval(gamma, &mid);
        if v.is_zero() {
            return Ok(ZetaRoot { lo: mid.clone(), hi: mid, exact: true });
        }
        if v.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ZetaRoot { lo, hi, exact: false })
}

// ---------------------------------------------------------------------------
// Phi and the bound

/// Phi(alpha) = prod alpha_i^(-alpha_i) with 0^0 = 1.
pub fn phi(alpha: &[f64]) -> f64 {
    (-alpha.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()).exp()
}

/// Sum zeta^gamma_i, enclosed from the zeta enclosure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

fn bound_from(gamma: &[i64], z: &ZetaRoot) -> Result<Bound, ExponentError> {
    if z.lo.is_zero() {
        return Err(ExponentError::Internal("zeta enclosure touches 0".into()));
    }
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for &g in gamma {
        // x^g is increasing in x for g >= 0 and decreasing otherwise
        let (a, b) = if g >= 0 { (&z.lo, &z.hi) } else { (&z.hi, &z.lo) };
        lo += zpow(a, g);
        hi += zpow(b, g);
    }
    let mid = (&lo + &hi) / q_int(2);
    Ok(Bound { lo: q_to_f64(&lo).next_down(), hi: q_to_f64(&hi).next_up(), value: q_to_f64(&mid) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiMax {
    pub d: f64,
    pub argmax: Vec<f64>,
    /// Largest Phi found by the random-start search.
    pub searched: f64,
}

pub const PHI_SEARCH_STARTS: usize = 20;

/// max Phi over {alpha descending, alpha >= 0, sum alpha = 1, sum gamma alpha <= 0}.
pub fn phi_max(gamma: &[i64]) -> Result<PhiMax, ExponentError> {
    let r = gamma.len();
    if r == 0 {
        return Err(ExponentError::Inapplicable("empty gamma".into()));
    }
    let s: i64 = gamma.iter().sum();
    let (d, argmax) = if s <= 0 {
        (r as f64, vec![1.0 / r as f64; r])
    } else {
        let z = zeta_root(gamma)?;
        let zf = z.midpoint();
        let w: Vec<f64> = gamma.iter().map(|&g| zf.powi((g - gamma[0]) as i32)).collect();
        let total: f64 = w.iter().sum();
        (bound_from(gamma, &z)?.value, w.iter().map(|x| x / total).collect())
    };
    let searched = search_phi(gamma, PHI_SEARCH_STARTS);
    if searched > d + 1e-6 {
        return Err(ExponentError::Internal(format!("search found Phi = {searched} above the maximum {d}")));
    }
    Ok(PhiMax { d, argmax, searched })
}

fn in_omega(gamma: &[i64], a: &[f64]) -> bool {
    a.iter().all(|&x| x >= 0.0)
        && a.windows(2).all(|w| w[0] >= w[1])
        && gamma.iter().zip(a).map(|(&g, &x)| g as f64 * x).sum::<f64>() <= 1e-12
}

/// Random feasible starts followed by pairwise mass transfers that keep
/// the point in Omega; returns the best value seen.
pub fn search_phi(gamma: &[i64], starts: usize) -> f64 {
    let mut seed = [0u8; 32];
    let digest = Sha256::digest(format!("{gamma:?}").as_bytes());
    seed.copy_from_slice(&digest);
    let r = gamma.len();
    (0..starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::from_seed(seed);
            rng.set_stream(s as u64);
            let mut a: Vec<f64> = (0..r).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
            let total: f64 = a.iter().sum();
            a.iter_mut().for_each(|x| *x /= total);
            a.sort_by(|x, y| y.partial_cmp(x).unwrap());
            // pull toward (1, 0, ..., 0), which lies in Omega, until feasible
            let mut t = 0.0;
            while !in_omega(gamma, &a) {
                if t >= 1.0 {
                    return 0.0;
                }
                t = (t * 2.0f64).clamp(1.0 / 64.0, 1.0);
                for (i, x) in a.iter_mut().enumerate() {
                    *x = (1.0 - t) * *x + if i == 0 { t } else { 0.0 };
                }
            }
            let mut best = phi(&a);
            let mut step = 0.25;
            while step > 1e-9 {
                let mut improved = false;
                for _ in 0..4 * r * r {
                    let i = rng.gen_range(0..r);
                    let j = rng.gen_range(0..r);
                    if i == j {
                        continue;
                    }
                    let delta = step * rng.gen::<f64>().min(a[j]);
                    let mut b = a.clone();
                    b[i] += delta;
                    b[j] -= delta;
                    if in_omega(gamma, &b) {
                        let v = phi(&b);
                        if v > best {
                            best = v;
                            a = b;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    step /= 2.0;
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaReport {
    pub lo: String,
    pub hi: String,
    pub decimal: f64,
    pub exact: bool,
}

/// a + c + 2 s sqrt(f) with f squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactExponent {
    pub integer_part: u64,
    pub sqrt_coefficient: u64,
    pub radicand: u64,
}

impl ExactExponent {
    pub fn from_ac(a: u64, c: u64) -> Self {
        let mut s = 1;
        let mut f = a * c;
        let mut p = 2;
        while p * p <= f {
            while f % (p * p) == 0 {
                f /= p * p;
                s *= p;
            }
            p += 1;
        }
        if f == 1 {
            return ExactExponent { integer_part: a + c + 2 * s, sqrt_coefficient: 0, radicand: 1 };
        }
        ExactExponent { integer_part: a + c, sqrt_coefficient: 2 * s, radicand: f }
    }

    pub fn integer(n: u64) -> Self {
        ExactExponent { integer_part: n, sqrt_coefficient: 0, radicand: 1 }
    }

    pub fn value(&self) -> f64 {
        self.integer_part as f64 + self.sqrt_coefficient as f64 * (self.radicand as f64).sqrt()
    }

    pub fn render(&self) -> String {
        match self.sqrt_coefficient {
            0 => self.integer_part.to_string(),
            s => format!("{} + {}*sqrt({})", self.integer_part, s, self.radicand),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct M2Report {
    pub t0_size: usize,
    pub t1_size: usize,
    pub class_sizes: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub largest_class_size: usize,
    pub triangle_holds: bool,
    pub dim: usize,
    pub exponent_exact: String,
    pub exponent: ExactExponent,
    pub exponent_decimal: f64,
    /// The exponent lies in the enclosure of the upper bound.
    pub matches_upper_bound: bool,
    /// |zeta - sqrt(c/a)| <= 1e-10, when the quotient formula applies.
    pub zeta_matches_closed_form: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentReport {
    pub k: usize,
    pub r: usize,
    pub psi_choice: String,
    pub gamma: Vec<i64>,
    pub gamma_sum: i64,
    pub zeta: Option<ZetaReport>,
    pub upper_bound: Option<Bound>,
    pub notes: Vec<String>,
    pub m2: Option<M2Report>,
}

pub fn upper_bound_report(a: &GradedAlgebra) -> Result<ExponentReport, ExponentError> {
    let prof = theta_profile(a)?;
    upper_bound_from_profile(&prof)
}

fn upper_bound_from_profile(prof: &ThetaProfile) -> Result<ExponentReport, ExponentError> {
    let gamma = prof.gamma.clone();
    let r = gamma.len();
    let s: i64 = gamma.iter().sum();
    let mut notes = Vec::new();
    if !prof.gamma1_ok {
        notes.push(format!("gamma_1 = {:?}, expected {}", gamma.first(), 1 - prof.k as i64));
    }
    let exact_r = Bound { lo: r as f64, hi: r as f64, value: r as f64 };
    let (zeta, upper_bound) = if gamma.iter().all(|&g| g == 0) {
        notes.push("all gamma are 0: d = r".into());
        (None, Some(exact_r))
    } else {
        match zeta_root(&gamma) {
            Ok(z) => {
                let b = bound_from(&gamma, &z)?;
                let zr = ZetaReport { lo: q_str(&z.lo), hi: q_str(&z.hi), decimal: z.midpoint(), exact: z.exact };
                (Some(zr), Some(b))
            }
            Err(ExponentError::NoRoot) => {
                notes.push("sum of gamma < 0: P < 0 on (0,1]; the bound does not apply, max Phi = r".into());
                (None, Some(exact_r))
            }
            Err(e) => return Err(e),
        }
    };
    Ok(ExponentReport {
        k: prof.k,
        r,
        psi_choice: prof.psi_choice.clone(),
        gamma,
        gamma_sum: s,
        zeta,
        upper_bound,
        notes,
        m2: None,
    })
}

pub fn m2_exponent(a: &GradedAlgebra) -> Result<ExponentReport, ExponentError> {
    let cls = m2_classify(a)?;
    let prof = theta_profile(a)?;
    let mut report = upper_bound_from_profile(&prof)?;
    let t0 = cls.t0.len() as u64;
    let t1 = cls.t1.len() as u64;
    let big = cls.largest_class().len() as u64;
    let dim = (2 * t0 + 4 * t1) as usize;
    let triangle = cls.triangle_holds();
    let (aa, cc) = (t1 + big, t0 + t1 - big);
    let exponent = if triangle { ExactExponent::integer(dim as u64) } else { ExactExponent::from_ac(aa, cc) };
    let value = exponent.value();
    let matches_upper_bound = report.upper_bound.as_ref().is_some_and(|b| b.lo - 1e-9 <= value && value <= b.hi + 1e-9);
    let zeta_matches_closed_form = if triangle || cc == 0 {
        None
    } else {
        let closed = (cc as f64 / aa as f64).sqrt();
        report.zeta.as_ref().map(|z| (z.decimal - closed).abs() <= 1e-10)
    };
    report.m2 = Some(M2Report {
        t0_size: t0 as usize,
        t1_size: t1 as usize,
        class_sizes: cls.classes.iter().map(Vec::len).collect(),
        classes: cls.classes.clone(),
        largest_class_size: big as usize,
        triangle_holds: triangle,
        dim,
        exponent_exact: exponent.render(),
        exponent,
        exponent_decimal: value,
        matches_upper_bound,
        zeta_matches_closed_form,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// growth table

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub codim: u128,
    pub root: f64,
    pub d: Option<f64>,
    /// c_n <= (dim A)^(n+1).
    pub cap_ok: bool,
    /// The partition of the alternating witness at this n, when one exists.
    pub witness_partition: Option<Vec<usize>>,
    pub witness_dim: Option<u128>,
    /// c_n >= dim M(lambda) for the witness partition (observed, not claimed).
    pub witness_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    /// Why the table stops before n_max, if it does.
    pub truncated: Option<String>,
}

pub fn growth_table(a: &GradedAlgebra, n_max: usize, budget: u128) -> Result<GrowthTable, ExponentError> {
    let d = upper_bound_report(a).ok().and_then(|r| r.upper_bound.map(|b| b.value));
    let mut rows = Vec::new();
    let mut truncated = None;
    let dim = a.dim() as u128;
    for n in 1..=n_max {
        let c = match pi::codimension(a, n, pi::CodimMode::Graded, budget) {
            Ok(c) => c.value,
            Err(PiError::Budget { required, budget }) => {
                truncated = Some(format!("n = {n} needs {required} operations, budget {budget}"));
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let cap = dim.checked_pow(n as u32 + 1).is_none_or(|cap| c <= cap);
        let witness = pi::build_alternating_nonidentity(a, n).ok();
        let witness_partition = witness.as_ref().map(|w| w.partition.parts().to_vec());
        let witness_dim = witness.as_ref().map(|w| hook_dimension(&w.partition));
        rows.push(GrowthRow {
            n,
            codim: c,
            root: (c as f64).powf(1.0 / n as f64),
            d,
            cap_ok: cap,
            witness_ok: witness_dim.map(|h| c >= h),
            witness_partition,
            witness_dim,
        });
    }
    Ok(GrowthTable { rows, truncated })
}

impl GrowthTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,codim_graded,root,upper_bound,cap_ok,witness_partition,witness_dim,witness_ok\n");
        let opt = |x: Option<String>| x.unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{:.10},{},{},{},{},{}",
                r.n,
                r.codim,
                r.root,
                opt(r.d.map(|d| format!("{d:.10}"))),
                r.cap_ok,
                opt(r.witness_partition.as_ref().map(|p| p.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))),
                opt(r.witness_dim.map(|x| x.to_string())),
                opt(r.witness_ok.map(|x| x.to_string())),
            );
        }
        s
    }
}

/// Conjugation matrix P with (1,0)P = (1,0) and (alpha,beta)P = (0,1).
pub(crate) fn normalizing_conjugation(field: Field, alpha: &Scalar, beta: &Scalar) -> Result<Mat, ExponentError> {
    let inv = beta.inv().ok_or_else(|| ExponentError::Internal("beta = 0".into()))?;
    Ok(Mat::new(2, 2, vec![Scalar::one(field), Scalar::zero(field), -&(alpha * &inv), inv])?)
}

impl From<crate::kernel::KernelError> for ExponentError {
    fn from(e: crate::kernel::KernelError) -> Self {
        ExponentError::Algebra(e.into())
    }
}

#[cfg(test)]
mod tests;
