//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed:
//! `cargo test -p gpi-cli --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gpi_core::algebra::*;
use gpi_core::constructions::*;
use gpi_core::exponent::*;
use gpi_core::kernel::{self, inverse, is_zero_vec, scale_vec, unit_vec};
use gpi_core::pi::{self, oracle, CodimMode};
use gpi_core::{Field, Mat, Scalar, Vector};

const Q: Field = Field::Rational;

fn q(x: i64) -> Scalar {
    Scalar::from_int(Q, x)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_vec(r: &mut ChaCha8Rng, k: usize) -> Vector {
    (0..k).map(|_| q(r.gen_range(-2..=2))).collect()
}

/// Span of up to k random vectors in F^k; often degenerate on purpose.
fn rand_subspace(r: &mut ChaCha8Rng, k: usize) -> Subspace {
    let d = r.gen_range(0..=k);
    Subspace::span(Q, k, (0..d).map(|_| rand_vec(r, k)))
}

fn rand_invertible(r: &mut ChaCha8Rng, k: usize) -> (Mat, Mat) {
    loop {
        let p = Mat::new(k, k, rand_vec(r, k * k)).unwrap();
        if let Ok(inv) = inverse(&p) {
            return (p, inv);
        }
    }
}

/// {a in M_k : every column of a lies in U}, a right ideal.
fn right_ideal(k: usize, u: &Subspace) -> Subspace {
    let mut out = Subspace::zero(Q, k * k);
    for b in u.basis() {
        for c in 0..k {
            let mut m = vec![q(0); k * k];
            for row in 0..k {
                m[row * k + c] = b[row].clone();
            }
            out.insert(m);
        }
    }
    out
}

fn mats(k: usize, s: &Subspace) -> Vec<Mat> {
    s.basis().iter().map(|v| to_mat(k, v)).collect()
}

fn column_space(m: &Mat) -> Subspace {
    Subspace::span(Q, m.rows(), (0..m.cols()).map(|c| m.column(c)))
}

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn run(&mut self, name: &str, limit: Duration, suite: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let res = suite();
        let took = start.elapsed();
        let (ok, detail) = match res {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {} s limit", limit.as_secs())),
            Err(e) => (false, e),
        };
        let line = format!("{} {name} ({:.2} s): {detail}", if ok { "PASS" } else { "FAIL" }, took.as_secs_f64());
        println!("{line}");
        self.lines.push((ok, line));
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($fmt)+)),
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn structure_suite() -> Result<String, String> {
    for name in FIXTURES {
        let a = fixture(name).map_err(err)?;
        let simple = is_simple(&a.alg).map_err(err)?;
        let gs = is_graded_simple(&a).map_err(err)?.graded_simple;
        let faithful = is_faithful(&a);
        ensure!(simple == (gs && faithful), "{name}: simple {simple}, graded-simple {gs}, faithful {faithful}");
    }
    let ft = fixture("ft-rzb2").map_err(err)?;
    ensure!(is_graded_simple(&ft).map_err(err)?.graded_simple && !is_faithful(&ft), "ft-rzb2 misclassified");
    let dual = fixture("m2-dual-numbers").map_err(err)?;
    ensure!(!is_graded_simple(&dual).map_err(err)?.graded_simple, "m2-dual-numbers reported graded-simple");
    ensure!(wm_graded_decomposition(&dual).is_err(), "m2-dual-numbers has a WM decomposition");

    let mut r = rng(1);
    let mut done = 0;
    while done < 10 {
        let (n, m) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let p = Mat::new(m, n, (0..m * n).map(|_| q(r.gen_range(-1..=2))).collect()).unwrap();
        let Ok(a) = munn_algebra(n, m, &p) else { continue };
        let j = jacobson_radical(&a.alg).map_err(err)?;
        ensure!(j == munn_radical_formula(n, m, &p), "J(Munn) differs from the formula for {n}x{m} sandwich {p:?}");
        done += 1;
    }
    Ok(format!("{} fixtures, 10 Munn sandwiches", FIXTURES.len()))
}

/// An orthogonal family of `count` idempotents of M_2 summing to 1, some
/// possibly zero: P diag-units P^{-1} distributed over random slots.
fn idempotent_family(r: &mut ChaCha8Rng, count: usize) -> Vec<Mat> {
    let (p, p_inv) = rand_invertible(r, 2);
    let conj = |u: usize| p.mul(&to_mat(2, &unit_vec(Q, 4, u))).and_then(|x| x.mul(&p_inv)).unwrap();
    let mut fam = vec![Mat::zeros(Q, 2, 2); count];
    let (s1, s2) = (r.gen_range(0..count), r.gen_range(0..count));
    let add = |a: &Mat, b: &Mat| Mat::new(2, 2, kernel::add_vec(a.entries(), b.entries())).unwrap();
    fam[s1] = add(&fam[s1], &conj(0));
    fam[s2] = add(&fam[s2], &conj(3));
    fam
}

fn random_existence(r: &mut ChaCha8Rng) -> ExistenceInput {
    let (n, m) = loop {
        let (n, m) = (r.gen_range(1..=3), r.gen_range(1..=3));
        if n * m <= 6 {
            break (n, m);
        }
    };
    let rows = idempotent_family(r, n);
    let cols = idempotent_family(r, m);
    // phi(J10_*j) = Ann W with W containing the image of f_j
    let left_modules = cols
        .iter()
        .map(|f| {
            if r.gen_bool(0.4) {
                return vec![];
            }
            let w = column_space(f).sum(&rand_subspace(r, 2));
            mats(2, &ann_duality(2, &w))
        })
        .collect();
    // phi(J01_i*): columns inside a subspace of ker f'_i
    let right_modules = rows
        .iter()
        .map(|f| {
            if r.gen_bool(0.4) {
                return vec![];
            }
            let ker = Subspace::span(Q, 2, kernel::kernel_basis(f).unwrap());
            let u = if r.gen_bool(0.5) { ker.clone() } else { ker.intersect(&rand_subspace(r, 2)) };
            mats(2, &right_ideal(2, &u))
        })
        .collect();
    ExistenceInput { k: 2, n, m, row_idempotents: rows, column_idempotents: cols, left_modules, right_modules }
}

/// B_ij = R_i ∩ L_j for random right ideals R_i and left ideals L_j, all
/// sandwich entries e; retried until the blocks span M_2.
fn random_decomposition(r: &mut ChaCha8Rng) -> DecompositionInput {
    loop {
        let (n, m) = (r.gen_range(1..=3), r.gen_range(1..=3));
        if n * m > 6 {
            continue;
        }
        let (p, p_inv) = rand_invertible(r, 2);
        let conj = |s: &Subspace| Subspace::span(Q, 4, s.basis().iter().map(|a| conjugate(2, &p_inv, &p, a)));
        let rs: Vec<Subspace> = (0..n).map(|_| conj(&right_ideal(2, &rand_subspace(r, 2)))).collect();
        let ls: Vec<Subspace> = (0..m).map(|_| conj(&ann_duality(2, &rand_subspace(r, 2)))).collect();
        let blocks: Vec<Vec<Subspace>> = rs.iter().map(|ri| ls.iter().map(|lj| ri.intersect(lj)).collect()).collect();
        let all: Vec<Subspace> = blocks.iter().flatten().cloned().collect();
        if sum_all(Q, 4, &all).dim() != 4 {
            continue;
        }
        return DecompositionInput {
            k: 2,
            n,
            m,
            blocks: blocks.iter().map(|row| row.iter().map(|b| mats(2, b)).collect()).collect(),
            sandwich: vec![vec![true; n]; m],
        };
    }
}

fn check_constructed(c: &Constructed, n: usize, m: usize) -> Result<(), String> {
    let a = &c.algebra;
    ensure!(is_graded_simple(a).map_err(err)?.graded_simple, "not graded-simple");
    let d = wm_graded_decomposition(a).map_err(err)?;
    let rep = radical_square_layers(a, &d).map_err(err)?;
    ensure!(rep.ok(), "layer failures {:?}", rep.failures);
    let j = jacobson_radical(&a.alg).map_err(err)?.dim();
    ensure!(j <= (n * m - 1) * d.b.dim(), "dim J = {j} > ({n}{m} - 1) * {}", d.b.dim());
    Ok(())
}

fn construction_suite() -> Result<String, String> {
    let mut r = rng(2);
    let (mut built, mut rejected) = (0, 0);
    while built < 20 {
        let inp = random_existence(&mut r);
        match existence_construct(&inp) {
            Ok(c) => {
                check_constructed(&c, inp.n, inp.m).map_err(|e| format!("existence input {inp:?}: {e}"))?;
                built += 1;
            }
            Err(ConstructionError::Invalid(_)) => rejected += 1,
            Err(e) => return Err(format!("existence input {inp:?}: {e}")),
        }
    }
    for _ in 0..20 {
        let inp = random_decomposition(&mut r);
        let c = grading_from_decomposition(&inp).map_err(|e| format!("decomposition {inp:?}: {e}"))?;
        check_constructed(&c, inp.n, inp.m).map_err(|e| format!("decomposition {inp:?}: {e}"))?;
    }
    Ok(format!("20 existence inputs ({rejected} invalid draws skipped), 20 decompositions"))
}

fn matrix_ideal_suite() -> Result<String, String> {
    let mut r = rng(3);
    for case in 0..100 {
        let k = r.gen_range(1..=4);
        let w1 = rand_subspace(&mut r, k);
        let w2 = rand_subspace(&mut r, k);
        let i1 = ann_duality(k, &w1);
        let i2 = ann_duality(k, &w2);
        // round trip both ways
        ensure!(ann_inverse(k, &i1) == w1, "case {case}: Ann^-1 Ann W != W");
        ensure!(ann_duality(k, &ann_inverse(k, &i1)) == i1, "case {case}: Ann Ann^-1 I != I");
        ensure!(is_left_ideal(k, &i1), "case {case}: Ann W is not a left ideal");
        ensure!(i1.dim() == k * (k - w1.dim()), "case {case}: dim I = {} for dim W = {}", i1.dim(), w1.dim());
        ensure!(ann_duality(k, &w1.sum(&w2)) == i1.intersect(&i2), "case {case}: Ann(W1 + W2)");
        ensure!(ann_duality(k, &w1.intersect(&w2)) == i1.sum(&i2), "case {case}: Ann(W1 ∩ W2)");

        // simultaneous column form for P C_i P^-1 with random column blocks
        let (p, p_inv) = rand_invertible(&mut r, k);
        let mut cuts: Vec<usize> = (1..k).filter(|_| r.gen_bool(0.5)).collect();
        cuts.insert(0, 0);
        cuts.push(k);
        let ranges: Vec<_> = cuts.windows(2).map(|w| w[0]..w[1]).collect();
        let ideals: Vec<Subspace> = ranges
            .iter()
            .map(|c| Subspace::span(Q, k * k, column_block(Q, k, c.clone()).basis().iter().map(|a| conjugate(k, &p_inv, &p, a))))
            .collect();
        let s = simultaneous_column_form(k, &ideals).map_err(|e| format!("case {case}: {e}"))?;
        let s_inv = inverse(&s).map_err(err)?;
        for (ideal, c) in ideals.iter().zip(&ranges) {
            let moved = Subspace::span(Q, k * k, ideal.basis().iter().map(|a| conjugate(k, &s, &s_inv, a)));
            ensure!(moved == column_block(Q, k, c.clone()), "case {case}: block {c:?} is not in column form");
        }

        // dim(V I) = dim V dim I / k^2 for V right, I left
        let v = right_ideal(k, &rand_subspace(&mut r, k));
        let vi = product_span(k, &v, &i1);
        ensure!(vi.dim() * k * k == v.dim() * i1.dim(), "case {case}: dim VI = {} for {} and {}", vi.dim(), v.dim(), i1.dim());
    }
    Ok("100 cases, k <= 4".into())
}

fn codim_oracle_suite() -> Result<String, String> {
    let budget = pi::DEFAULT_BUDGET;
    let cases = [("ut2-z2", fixture("ut2-z2").map_err(err)?, 5), ("ft-rzb2", fixture("ft-rzb2").map_err(err)?, 6), ("m2_family(1,1,[1])", m2_family(1, 1, &[1]).map_err(err)?, 4)];
    for (name, a, n_max) in &cases {
        let t = a.semigroup.size() as u128;
        let d = a.dim() as u128;
        for n in 1..=*n_max {
            let gr = pi::codimension(a, n, CodimMode::Graded, budget).map_err(err)?.value;
            let ord = pi::codimension(a, n, CodimMode::Ordinary, budget).map_err(err)?.value;
            let direct = oracle::direct_codimension(a, n, true).map_err(err)?;
            ensure!(gr == direct, "{name} n = {n}: engine {gr}, oracle {direct}");
            ensure!(ord <= gr && gr <= t.pow(n as u32) * ord, "{name} n = {n}: sandwich fails ({ord}, {gr}, |T| = {t})");
            ensure!(gr <= d.pow(n as u32 + 1), "{name} n = {n}: {gr} above the cap");
        }
    }
    let c2 = pi::graded_codimension(&cases[0].1, 2).map_err(err)?;
    ensure!(c2 == 5, "c2(ut2-z2) = {c2}");
    Ok("ut2-z2 n<=5, ft-rzb2 n<=6, m2_family(1,1,[1]) n<=4".into())
}

/// A random partition of n with more than `rows` parts.
fn tall_partition(r: &mut ChaCha8Rng, n: usize, rows: usize) -> pi::Partition {
    let mut parts = vec![1; rows + 1];
    for _ in rows + 1..n {
        let i = r.gen_range(0..parts.len());
        parts[i] += 1;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    pi::Partition::new(parts).unwrap()
}

/// e*_T applied to a random multilinear monomial, evaluated on random basis
/// elements whose degrees match the variable labels.
fn vanishing_triple(r: &mut ChaCha8Rng, a: &GradedAlgebra, lambda: &pi::Partition) -> Result<bool, String> {
    let n = lambda.n();
    let mut word: Vec<usize> = (0..n).collect();
    word.shuffle(r);
    let subs: Vec<usize> = (0..n).map(|_| r.gen_range(0..a.dim())).collect();
    let labels = subs.iter().map(|&i| a.degree[i]).collect();
    let f = pi::MultilinearGradedPolynomial::monomial(a.field(), word, labels).map_err(err)?;
    let t = pi::YoungTableau::column_filling(lambda);
    let g = pi::apply_e_star(&t, &f).map_err(err)?;
    let x: Vec<Vector> = subs.iter().map(|&i| a.alg.unit(i)).collect();
    Ok(is_zero_vec(&g.evaluate(a, &x).map_err(err)?))
}

fn young_suite() -> Result<String, String> {
    for n in 1..=8 {
        let s: u128 = pi::partitions(n).iter().map(|l| pi::hook_dimension(l).pow(2)).sum();
        ensure!(s == (1..=n as u128).product::<u128>(), "sum of squares at n = {n} is {s}");
    }
    for n in 1..=7 {
        for l in pi::partitions(n) {
            ensure!(pi::hook_dimension(&l) == pi::count_standard_tableaux(&l), "hook dimension of {:?}", l.parts());
        }
    }
    let mut r = rng(5);
    let mut used = Vec::new();
    for name in FIXTURES {
        let a = fixture(name).map_err(err)?;
        let d = a.dim();
        let prof = theta_profile(&a).ok();
        for case in 0..50 {
            let n = d + 1 + r.gen_range(0..=usize::from(d < 5));
            let lambda = tall_partition(&mut r, n, d);
            if let Some(p) = &prof {
                ensure!(pi::vanishing_partition(&lambda, &p.gamma, p.k, p.gamma.len()), "{name}: criterion misses {:?}", lambda.parts());
            }
            ensure!(vanishing_triple(&mut r, &a, &lambda)?, "{name} case {case}: nonzero for {:?}", lambda.parts());
        }
        used.push(*name);
    }
    // sum gamma_i lambda_i >= k with no column longer than dim A
    let a = m2_family(2, 1, &[2]).map_err(err)?;
    let p = theta_profile(&a).map_err(err)?;
    let lambda = pi::Partition::new(vec![1; 8]).unwrap();
    ensure!(lambda.part(p.gamma.len()) == 0 && pi::vanishing_partition(&lambda, &p.gamma, p.k, p.gamma.len()), "theta case is not a theta case");
    for case in 0..50 {
        ensure!(vanishing_triple(&mut r, &a, &lambda)?, "m2_family(2,1,[2]) case {case}: nonzero");
    }
    Ok(format!("n <= 8; 50 triples on each of {used:?}; 50 on m2_family(2,1,[2]) with lambda = 1^8"))
}

fn witness_suite() -> Result<String, String> {
    let a = m2_family(0, 2, &[]).map_err(err)?;
    let cls = m2_classify(&a).map_err(err)?;
    let f = pi::witness_pair(Q, 0, 1).map_err(err)?;
    let mut r = rng(6);
    for case in 0..50 {
        let v: Vec<i64> = (0..4).map(|_| r.gen_range(-9..=9)).collect();
        let row = |t: usize, x: i64, y: i64| -> Result<[Vector; 2], String> {
            let top = [q(x), q(y), q(0), q(0)];
            let bottom = [q(0), q(0), q(x), q(y)];
            Ok([cls.lift(&a, t, &top).map_err(err)?, cls.lift(&a, t, &bottom).map_err(err)?])
        };
        let [x1, x2] = row(0, v[0], v[1])?;
        let [y1, y2] = row(1, v[2], v[3])?;
        let val = f.evaluate(&a, &[x1, x2, y1, y2]).map_err(err)?;
        let m = cls.iso.apply(&cls.quotient.project(&val));
        let det = v[0] * v[3] - v[1] * v[2];
        let want = scale_vec(&q(-det * det), &[q(1), q(0), q(0), q(1)]);
        ensure!(m == want, "case {case}: {v:?} gave {m:?}");
    }

    let m2 = fixture("m2-trivial").map_err(err)?;
    let f0 = pi::witness_f0(Q, 0);
    let units: Vec<Vector> = (0..4).chain(0..4).map(|u| m2.alg.unit(u)).collect();
    let val = f0.evaluate(&m2, &units).map_err(err)?;
    ensure!(!val[0].is_zero() && val[0] == val[3] && val[1].is_zero() && val[2].is_zero(), "f0 gave {val:?}");

    for (t0, t1, classes, n) in [(2, 0, vec![1, 1], 8), (3, 0, vec![2, 1], 4)] {
        let a = m2_family(t0, t1, &classes).map_err(err)?;
        let w = pi::build_alternating_nonidentity(&a, n).map_err(|e| format!("({t0},{t1},{classes:?}) n = {n}: {e}"))?;
        let again = w.polynomial.evaluate(&a, &w.substitution).map_err(err)?;
        ensure!(!is_zero_vec(&again) && again == w.value, "({t0},{t1},{classes:?}) witness does not re-evaluate to its value");
    }
    Ok("50 determinant cases; f0 central; witnesses at n = 8 and n = 4".into())
}

fn exponent_suite() -> Result<String, String> {
    let m = m2_exponent(&m2_family(3, 0, &[2, 1]).map_err(err)?).map_err(err)?.m2.ok_or_else(|| "no M2 report".to_string())?;
    ensure!(m.exponent_exact == "3 + 2*sqrt(2)", "exponent {}", m.exponent_exact);
    ensure!((m.exponent_decimal - 5.8284271247).abs() <= 1e-9 && m.exponent_decimal < 6.0, "decimal {}", m.exponent_decimal);
    let m = m2_exponent(&m2_family(2, 1, &[1, 1]).map_err(err)?).map_err(err)?.m2.ok_or_else(|| "no M2 report".to_string())?;
    ensure!(m.exponent_exact == "8" && m.dim == 8, "exponent {} with dim {}", m.exponent_exact, m.dim);

    for a in 1..=6usize {
        for c in 1..a {
            let mut g = vec![-1i64; c];
            g.extend(std::iter::repeat_n(1, a));
            let z = zeta_root(&g).map_err(err)?;
            let closed = (c as f64 / a as f64).sqrt();
            ensure!((z.midpoint() - closed).abs() <= 1e-10, "zeta for (a, c) = ({a}, {c}): {} vs {closed}", z.midpoint());
        }
    }

    let mut r = rng(7);
    let mut done = 0;
    while done < 30 {
        let len = r.gen_range(2..=8);
        let mut g: Vec<i64> = (0..len).map(|_| r.gen_range(-2..=2)).collect();
        g.sort_unstable();
        if g[0] >= 0 || g.iter().sum::<i64>() < 0 {
            continue;
        }
        let z = zeta_root(&g).map_err(err)?;
        let zf = z.midpoint();
        let bound: f64 = g.iter().map(|&x| zf.powi(x as i32)).sum();
        let found = search_phi(&g, PHI_SEARCH_STARTS);
        ensure!(found <= bound + 1e-6, "gamma {g:?}: search found {found} above {bound}");
        done += 1;
    }
    Ok("3 + 2*sqrt(2), 8, 15 zeta pairs, 30 random profiles".into())
}

fn determinism_suite() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(err)?;
    let path = |s: &str| dir.path().join(s).to_str().unwrap().to_string();
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let o = Command::new(env!("CARGO_BIN_EXE_gpi")).args(args).env_remove("GPI_CACHE_DIR").output().map_err(err)?;
        ensure!(o.status.success(), "gpi {args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
        Ok(o.stdout)
    };
    let twice = |args: &[&str], files: &[&str]| -> Result<(), String> {
        let first = run(args)?;
        let first_files: Vec<Vec<u8>> = files.iter().map(std::fs::read).collect::<Result<_, _>>().map_err(err)?;
        let second = run(args)?;
        let second_files: Vec<Vec<u8>> = files.iter().map(std::fs::read).collect::<Result<_, _>>().map_err(err)?;
        ensure!(first == second && first_files == second_files, "gpi {args:?} is not deterministic");
        Ok(())
    };
    let doc = path("m2.json");
    twice(&["construct", "m2-family", "--json", r#"{"t0": 3, "classes": [2, 1]}"#, "--out", &doc], &[&doc])?;
    let ut2 = path("ut2.json");
    twice(&["construct", "fixture", "--json", r#"{"name": "ut2-z2"}"#, "--out", &ut2], &[&ut2])?;
    twice(&["construct", "munn", "--json", r#"{"n": 2, "m": 2, "sandwich": [["1", "1"], ["1", "1"]]}"#], &[])?;
    for d in [&doc, &ut2] {
        twice(&["check", d], &[])?;
        twice(&["analyze", d], &[])?;
        twice(&["codim", d, "--n", "3", "--graded"], &[])?;
        twice(&["codim", d, "--n", "3"], &[])?;
    }
    let csv = path("growth.csv");
    twice(&["exponent", &doc, "--n", "3", "--out", &csv], &[&csv])?;
    Ok("construct, check, analyze, codim and exponent each run twice".into())
}

fn main() {
    let mut report = Report { lines: Vec::new() };
    let secs = Duration::from_secs;
    report.run("1 structure", secs(10), structure_suite);
    report.run("2 construction", secs(60), construction_suite);
    report.run("3 matrix ideals", secs(30), matrix_ideal_suite);
    report.run("4 codimension oracle", secs(300), codim_oracle_suite);
    report.run("5 young", secs(60), young_suite);
    report.run("6 witness", secs(60), witness_suite);
    report.run("7 exponent", secs(60), exponent_suite);
    report.run("8 determinism", secs(120), determinism_suite);
    let failed = report.lines.iter().filter(|(ok, _)| !ok).count();
    println!("{} of {} criteria passed", report.lines.len() - failed, report.lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
