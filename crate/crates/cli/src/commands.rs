//! The five commands as pure functions from input text to output text and
//! an exit code, so that tests can drive them without a process.

use serde::{Deserialize, Serialize};

use gpi_core::algebra::{
    is_faithful, is_graded_simple, is_simple, jacobson_radical, radical_square_layers, wm_graded_decomposition,
    GradedAlgebra, GradedSimpleReport, LayerReport, Violation,
};
use gpi_core::constructions::{
    existence_construct, fixture, grading_from_decomposition, m2_family, munn_algebra, DecompositionInput,
    ExistenceInput,
};
use gpi_core::exponent::{growth_table, m2_classify, m2_exponent, upper_bound_report, ExponentReport};
use gpi_core::pi::{codimension, CodimMode};
use gpi_core::{Field, Mat, Scalar, Vector};

use crate::document::{scalar_str, AlgebraDocument, DocumentError};
use crate::store::Store;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    /// Extra file output (the growth CSV of `exponent`).
    pub side: Option<String>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK, side: None }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        stderr.push('\n');
        Outcome { stdout: String::new(), stderr, code, side: None }
    }
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

fn vec_strs(v: &Vector) -> Vec<String> {
    v.iter().map(scalar_str).collect()
}

enum Loaded {
    Ok(GradedAlgebra, String),
    Invalid(CheckReport),
    Parse(String),
}

/// Parses a document; the canonical re-serialization is used as a cache key.
fn load(text: &str) -> Loaded {
    let doc = match AlgebraDocument::from_json(text) {
        Ok(d) => d,
        Err(e) => return Loaded::Parse(e.to_string()),
    };
    match doc.to_algebra() {
        Ok(a) => {
            let violations = a.validate();
            if violations.is_empty() {
                let canon = AlgebraDocument::from_algebra(&a).to_json();
                Loaded::Ok(a, canon)
            } else {
                Loaded::Invalid(CheckReport::invalid(Some(&a), violations, None))
            }
        }
        Err(DocumentError::Semigroup(e)) => Loaded::Invalid(CheckReport::invalid(None, vec![], Some(e.to_string()))),
        Err(e) => Loaded::Parse(e.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub radical_dim: usize,
    pub simple: Option<bool>,
    pub graded_simple: bool,
    pub faithful: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub valid: bool,
    pub dim: Option<usize>,
    pub field: Option<String>,
    pub semigroup_size: Option<usize>,
    pub content_hash: Option<String>,
    pub violations: Vec<Violation>,
    pub semigroup_error: Option<String>,
    pub summary: Option<Summary>,
}

impl CheckReport {
    fn invalid(a: Option<&GradedAlgebra>, violations: Vec<Violation>, semigroup_error: Option<String>) -> Self {
        CheckReport {
            valid: false,
            dim: a.map(GradedAlgebra::dim),
            field: a.map(|a| a.field().to_string()),
            semigroup_size: a.map(|a| a.semigroup.size()),
            content_hash: a.map(|a| hex::encode(a.content_hash())),
            violations,
            semigroup_error,
            summary: None,
        }
    }
}

macro_rules! load_or_return {
    ($text:expr) => {
        match load($text) {
            Loaded::Ok(a, canon) => (a, canon),
            Loaded::Invalid(r) => {
                let mut o = Outcome::ok(json(&r));
                o.code = EXIT_INVALID;
                return o;
            }
            Loaded::Parse(e) => return Outcome::fail(EXIT_PARSE, e),
        }
    };
}

/// Stored result for `key`, or the output of `run`, stored when it succeeds.
fn cached(store: Option<&Store>, canon: &str, command: &str, params: &str, run: impl FnOnce() -> Outcome) -> Outcome {
    let key = Store::key(canon, command, params);
    if let Some(hit) = store.and_then(|s| s.get(&key)) {
        return Outcome::ok(hit);
    }
    let out = run();
    if out.code == EXIT_OK {
        if let Some(s) = store {
            if let Err(e) = s.put(&key, &out.stdout) {
                let mut out = out;
                out.stderr.push_str(&format!("warning: report store: {e}\n"));
                return out;
            }
        }
    }
    out
}

pub fn check(text: &str) -> Outcome {
    let (a, _) = load_or_return!(text);
    let summary = match summarize(&a) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_INVALID, e),
    };
    let mut r = CheckReport::invalid(Some(&a), vec![], None);
    r.valid = true;
    r.summary = Some(summary);
    Outcome::ok(json(&r))
}

fn summarize(a: &GradedAlgebra) -> Result<Summary, String> {
    let j = jacobson_radical(&a.alg).map_err(|e| e.to_string())?;
    Ok(Summary {
        radical_dim: j.dim(),
        simple: is_simple(&a.alg).ok(),
        graded_simple: is_graded_simple(a).map_err(|e| e.to_string())?.graded_simple,
        faithful: is_faithful(a),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WmSummary {
    pub exists: bool,
    pub reason: Option<String>,
    pub b_dim: Option<usize>,
    pub b_basis: Vec<Vec<String>>,
    pub unit_of_b: Option<Vec<String>>,
    pub row_idempotents: Vec<Vec<String>>,
    pub column_idempotents: Vec<Vec<String>>,
    pub aja_vanishes: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub dim: usize,
    pub content_hash: String,
    pub support: Vec<usize>,
    pub radical_dim: usize,
    pub radical_basis: Vec<Vec<String>>,
    pub simple: Option<bool>,
    pub graded_simple: GradedSimpleReport,
    pub faithful: bool,
    pub wm: WmSummary,
    pub layers: Option<LayerReport>,
}

pub fn analyze(text: &str, store: Option<&Store>) -> Outcome {
    let (a, canon) = load_or_return!(text);
    cached(store, &canon, "analyze", "", || match analyze_report(&a) {
        Ok(r) => Outcome::ok(json(&r)),
        Err(e) => Outcome::fail(EXIT_INVALID, e),
    })
}

fn analyze_report(a: &GradedAlgebra) -> Result<AnalyzeReport, String> {
    let j = jacobson_radical(&a.alg).map_err(|e| e.to_string())?;
    let gs = is_graded_simple(a).map_err(|e| e.to_string())?;
    let (wm, layers) = match wm_graded_decomposition(a) {
        Ok(d) => {
            let layers = radical_square_layers(a, &d).ok();
            let wm = WmSummary {
                exists: true,
                reason: None,
                b_dim: Some(d.b.dim()),
                b_basis: d.b.basis().iter().map(vec_strs).collect(),
                unit_of_b: Some(vec_strs(&d.unit_of_b)),
                row_idempotents: d.row_idempotents.iter().map(vec_strs).collect(),
                column_idempotents: d.column_idempotents.iter().map(vec_strs).collect(),
                aja_vanishes: Some(d.aja_vanishes),
            };
            (wm, layers)
        }
        Err(e) => {
            let wm = WmSummary {
                exists: false,
                reason: Some(e.to_string()),
                b_dim: None,
                b_basis: vec![],
                unit_of_b: None,
                row_idempotents: vec![],
                column_idempotents: vec![],
                aja_vanishes: None,
            };
            (wm, None)
        }
    };
    Ok(AnalyzeReport {
        dim: a.dim(),
        content_hash: hex::encode(a.content_hash()),
        support: a.support().into_iter().collect(),
        radical_dim: j.dim(),
        radical_basis: j.basis().iter().map(vec_strs).collect(),
        simple: is_simple(&a.alg).ok(),
        graded_simple: gs,
        faithful: is_faithful(a),
        wm,
        layers,
    })
}

/// CSV with columns n, mode, codim for n = 1..=n_max.
pub fn codim(text: &str, n_max: usize, graded: bool, budget: u128, store: Option<&Store>) -> Outcome {
    let (a, canon) = load_or_return!(text);
    if n_max == 0 {
        return Outcome::fail(EXIT_PARSE, "--n must be at least 1");
    }
    let mode = if graded { CodimMode::Graded } else { CodimMode::Ordinary };
    let params = format!("n={n_max};graded={graded};budget={budget}");
    cached(store, &canon, "codim", &params, || {
        let mut csv = String::from("n,mode,codim\n");
        for n in 1..=n_max {
            match codimension(&a, n, mode, budget) {
                Ok(r) => csv.push_str(&format!("{n},{},{}\n", if graded { "graded" } else { "ordinary" }, r.value)),
                Err(e) => return Outcome::fail(EXIT_INVALID, format!("n = {n}: {e}")),
            }
        }
        Outcome::ok(csv)
    })
}

/// The M_2 report when A/J(A) = M_2(F) and the grading is by a right zero
/// band, else the general upper bound. With `growth = Some(n)`, also the
/// growth table up to n as CSV in `side`.
pub fn exponent(text: &str, growth: Option<usize>, budget: u128, store: Option<&Store>) -> Outcome {
    let (a, canon) = load_or_return!(text);
    let mut out = cached(store, &canon, "exponent", "", || {
        let report: Result<ExponentReport, _> =
            if m2_classify(&a).is_ok() { m2_exponent(&a) } else { upper_bound_report(&a) };
        match report {
            Ok(r) => Outcome::ok(json(&r)),
            Err(e) => Outcome::fail(EXIT_INVALID, e.to_string()),
        }
    });
    if let (EXIT_OK, Some(n)) = (out.code, growth) {
        let params = format!("n={n};budget={budget}");
        let g = cached(store, &canon, "growth", &params, || match growth_table(&a, n, budget) {
            Ok(t) => Outcome::ok(t.to_csv()),
            Err(e) => Outcome::fail(EXIT_INVALID, e.to_string()),
        });
        if g.code != EXIT_OK {
            return g;
        }
        out.side = Some(g.stdout);
    }
    out
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureParams {
    name: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct M2FamilyParams {
    t0: usize,
    #[serde(default)]
    classes: Vec<usize>,
    #[serde(default)]
    t1: usize,
}

type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MunnParams {
    n: usize,
    m: usize,
    /// m x n
    sandwich: MatrixDoc,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExistenceParams {
    k: usize,
    n: usize,
    m: usize,
    row_idempotents: Vec<MatrixDoc>,
    column_idempotents: Vec<MatrixDoc>,
    left_modules: Vec<Vec<MatrixDoc>>,
    right_modules: Vec<Vec<MatrixDoc>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionParams {
    k: usize,
    n: usize,
    m: usize,
    blocks: Vec<Vec<Vec<MatrixDoc>>>,
    sandwich: Vec<Vec<u8>>,
}

fn matrix(m: &MatrixDoc) -> Result<Mat, String> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix".into());
    }
    let entries = m
        .iter()
        .flatten()
        .map(|s| Scalar::parse(Field::Rational, s).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Mat::new(rows, cols, entries).map_err(|e| e.to_string())
}

fn matrices(ms: &[MatrixDoc]) -> Result<Vec<Mat>, String> {
    ms.iter().map(matrix).collect()
}

pub const CONSTRUCT_KINDS: &[&str] = &["fixture", "m2-family", "munn", "existence", "decomposition"];

/// Builds an algebra from a JSON parameter object and prints its document.
pub fn construct(kind: &str, params: &str) -> Outcome {
    fn parse<T: for<'de> Deserialize<'de>>(p: &str) -> Result<T, Outcome> {
        serde_json::from_str(p).map_err(|e| Outcome::fail(EXIT_PARSE, format!("parse error: {e}")))
    }
    let built: Result<GradedAlgebra, String> = match kind {
        "fixture" => match parse::<FixtureParams>(params) {
            Ok(p) => fixture(&p.name).map_err(|e| e.to_string()),
            Err(o) => return o,
        },
        "m2-family" => match parse::<M2FamilyParams>(params) {
            Ok(p) => m2_family(p.t0, p.t1, &p.classes).map_err(|e| e.to_string()),
            Err(o) => return o,
        },
        "munn" => match parse::<MunnParams>(params) {
            Ok(p) => matrix(&p.sandwich).and_then(|s| munn_algebra(p.n, p.m, &s).map_err(|e| e.to_string())),
            Err(o) => return o,
        },
        "existence" => match parse::<ExistenceParams>(params) {
            Ok(p) => (|| {
                let inp = ExistenceInput {
                    k: p.k,
                    n: p.n,
                    m: p.m,
                    row_idempotents: matrices(&p.row_idempotents)?,
                    column_idempotents: matrices(&p.column_idempotents)?,
                    left_modules: p.left_modules.iter().map(|v| matrices(v)).collect::<Result<_, _>>()?,
                    right_modules: p.right_modules.iter().map(|v| matrices(v)).collect::<Result<_, _>>()?,
                };
                existence_construct(&inp).map(|c| c.algebra).map_err(|e| e.to_string())
            })(),
            Err(o) => return o,
        },
        "decomposition" => match parse::<DecompositionParams>(params) {
            Ok(p) => (|| {
                let inp = DecompositionInput {
                    k: p.k,
                    n: p.n,
                    m: p.m,
                    blocks: p
                        .blocks
                        .iter()
                        .map(|row| row.iter().map(|b| matrices(b)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<_, _>>()?,
                    sandwich: p.sandwich.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect(),
                };
                grading_from_decomposition(&inp).map(|c| c.algebra).map_err(|e| e.to_string())
            })(),
            Err(o) => return o,
        },
        _ => return Outcome::fail(EXIT_PARSE, format!("unknown kind {kind:?}; expected one of {}", CONSTRUCT_KINDS.join(", "))),
    };
    match built {
        Ok(a) => Outcome::ok(AlgebraDocument::from_algebra(&a).to_json()),
        Err(e) => Outcome::fail(EXIT_INVALID, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(name: &str) -> String {
        construct("fixture", &format!(r#"{{"name": "{name}"}}"#)).stdout
    }

    #[test]
    fn check_codes() {
        assert_eq!(check(&doc("ut2-z2")).code, EXIT_OK);
        assert_eq!(check("{\"field\": ").code, EXIT_PARSE);
        let broken = r#"{"field": "Q", "semigroup": {"ref": "trivial"}, "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
                         "products": [[0, 0, [[1, "1/1"]]], [0, 1, [[0, "1/1"]]]]}"#;
        let o = check(broken);
        assert_eq!(o.code, EXIT_INVALID);
        assert!(o.stdout.contains("Associativity"), "{}", o.stdout);
    }

    #[test]
    fn analyze_examples() {
        let v: serde_json::Value = serde_json::from_str(&analyze(&doc("ft-rzb2"), None).stdout).unwrap();
        assert_eq!(v["radical_dim"], 1);
        assert_eq!(v["graded_simple"]["graded_simple"], true);
        assert_eq!(v["faithful"], false);
        let v: serde_json::Value = serde_json::from_str(&analyze(&doc("m2-dual-numbers"), None).stdout).unwrap();
        assert_eq!(v["graded_simple"]["graded_simple"], false);
        assert_eq!(v["wm"]["exists"], false);
        let v: serde_json::Value = serde_json::from_str(&analyze(&doc("m2-trivial"), None).stdout).unwrap();
        assert_eq!(v["radical_dim"], 0);
        assert_eq!(v["simple"], true);
    }

    #[test]
    fn codim_csv() {
        let o = codim(&doc("ut2-z2"), 2, true, gpi_core::pi::DEFAULT_BUDGET, None);
        assert_eq!(o.stdout, "n,mode,codim\n1,graded,2\n2,graded,5\n");
        let o = codim(&doc("field-trivial"), 3, false, gpi_core::pi::DEFAULT_BUDGET, None);
        assert_eq!(o.stdout, "n,mode,codim\n1,ordinary,1\n2,ordinary,1\n3,ordinary,1\n");
        assert_eq!(codim(&doc("m2-trivial"), 12, false, 1000, None).code, EXIT_INVALID);
    }

    #[test]
    fn construct_examples() {
        let o = construct("m2-family", r#"{"t0": 3, "classes": [2, 1], "t1": 0}"#);
        let a = AlgebraDocument::from_json(&o.stdout).unwrap().to_algebra().unwrap();
        assert_eq!(a.dim(), 6);
        let o = construct("munn", r#"{"n": 2, "m": 2, "sandwich": [["1", "0"], ["0", "0"]]}"#);
        assert_eq!(o.code, EXIT_INVALID);
        assert_eq!(construct("munn", "[").code, EXIT_PARSE);
        assert_eq!(construct("nope", "{}").code, EXIT_PARSE);
    }

    #[test]
    fn exponent_report() {
        let o = exponent(&construct("m2-family", r#"{"t0": 3, "classes": [2, 1]}"#).stdout, Some(2), 1_000_000, None);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["m2"]["exponent_exact"], "3 + 2*sqrt(2)");
        assert!(o.side.unwrap().starts_with("n,codim_graded,"));
    }

    #[test]
    fn store_serves_repeats() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::new(dir.path());
        let d = doc("ut2-z2");
        let first = codim(&d, 2, true, 1_000_000, Some(&store));
        let second = codim(&d, 2, true, 1_000_000, Some(&store));
        assert_eq!(first, second);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
