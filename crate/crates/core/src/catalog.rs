//! Batch construction and verification over all real roots of a family up to
//! a height bound.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::family::{build_family, construct, predicted_end_dim, FamilyParams, Stage};
use crate::functor::{maximal_rank_report, mechanism_report, sigma_bar, sigma_bar_inv, sigma_under, sigma_under_inv};
use crate::linalg::Field;
use crate::quiver::{classify_root, enumerate_real_roots, DimVector, RootClass};
use crate::rep::{end_dim, ext_dim, find_isomorphism, hom_dim, is_indecomposable_oracle, simple_rep, Representation, Verdict};
use crate::tree::{coefficient_quiver, is_tree};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_ORACLE_BUDGET: u64 = 729;

#[derive(Debug, Clone)]
pub struct CatalogConfig {
    pub params: FamilyParams,
    pub bound: i64,
    pub field: Field,
    pub jobs: usize,
    pub oracle_budget: u64,
    /// Also run the σ̄/σ̲ inverse roundtrips against every simple representation.
    pub roundtrips: bool,
}

impl CatalogConfig {
    pub fn new(params: FamilyParams, bound: i64) -> CatalogConfig {
        CatalogConfig {
            params,
            bound,
            field: Field::Rational,
            jobs: 1,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            roundtrips: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RankSummary {
    pub subsets_checked: usize,
    pub violations: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeSummary {
    pub nodes: usize,
    pub edges: usize,
    pub is_tree: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EndSummary {
    pub predicted: i64,
    pub computed: usize,
    pub self_ext: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MechanismSummary {
    pub insertions_checked: usize,
    pub failures: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    /// `None` over the rationals, where the oracle does not run.
    pub verdict: Option<Verdict>,
    pub candidates_checked: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundtripSummary {
    /// Simple representations `S` for which `σ̄_S` applied.
    pub bar_checked: Vec<String>,
    /// Simple representations `S` for which `σ̲_S` applied.
    pub under_checked: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructedChecks {
    pub word: Option<String>,
    pub start_vertex: Option<String>,
    pub star_form: Option<String>,
    pub stages: Vec<Stage>,
    pub dims_match: bool,
    pub maximal_rank: RankSummary,
    pub tree: TreeSummary,
    pub end_dim: EndSummary,
    pub mechanism: MechanismSummary,
    pub oracle: OracleSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roundtrip: Option<RoundtripSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootRecord {
    pub root: DimVector,
    pub class: RootClass,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<ConstructedChecks>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogSummary {
    pub roots: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub schema_version: u32,
    pub family: FamilyParams,
    pub bound: i64,
    pub field: Field,
    pub oracle_budget: u64,
    pub pass: bool,
    pub summary: CatalogSummary,
    pub records: Vec<RootRecord>,
    pub total_elapsed_ms: u64,
}

impl CatalogReport {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One line per failing root plus a totals line.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for r in self.records.iter().filter(|r| !r.pass) {
            let why = r.error.clone().unwrap_or_else(|| "check failed".into());
            out.push_str(&format!("FAIL {} {}\n", r.root, why));
        }
        out.push_str(&format!(
            "{} bound {} over {}: {} roots, {} passed, {} failed\n",
            self.family, self.bound, self.field, self.summary.roots, self.summary.passed, self.summary.failed
        ));
        out
    }
}

/// Removes every `elapsed_ms` / `total_elapsed_ms` key, recursively.
pub fn strip_timing(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.shift_remove("elapsed_ms");
            map.shift_remove("total_elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// `σ̄_S^{-1} σ̄_S X ≅ X` and `σ̲_S^{-1} σ̲_S X ≅ X` for every simple `S` where
/// the functor is defined on `X`.
pub fn roundtrip_check(x: &Representation) -> Result<RoundtripSummary> {
    let q = x.quiver();
    let mut summary = RoundtripSummary { bar_checked: Vec::new(), under_checked: Vec::new(), pass: true };
    for v in 0..q.vertex_count() {
        let s = simple_rep(q, x.field(), v)?;
        let id = q.vertex_id(v).to_string();
        if hom_dim(x, &s)? == 0 {
            let z = sigma_bar(&s, x)?;
            let back = sigma_bar_inv(&s, &z)?;
            summary.pass &= find_isomorphism(&back, x)?.is_some();
            summary.bar_checked.push(id.clone());
        }
        if hom_dim(&s, x)? == 0 {
            let u = sigma_under(&s, x)?;
            let back = sigma_under_inv(&s, &u)?;
            summary.pass &= find_isomorphism(&back, x)?.is_some();
            summary.under_checked.push(id);
        }
    }
    Ok(summary)
}

/// Runs the full check battery on one constructed representation.
pub fn check_constructed(
    x: &Representation,
    trace: &crate::family::ConstructionTrace,
    alpha: &DimVector,
    oracle_budget: u64,
    roundtrips: bool,
) -> Result<ConstructedChecks> {
    let rank = maximal_rank_report(x);
    let coeff = coefficient_quiver(x);
    let tree_ok = is_tree(&coeff);
    let total = x.total_dim();
    let predicted = predicted_end_dim(trace);
    let computed = end_dim(x);
    let self_ext = ext_dim(x, x)?;
    let mech = mechanism_report(x)?;
    let oracle = match x.field() {
        Field::Rational => OracleSummary { verdict: None, candidates_checked: 0, pass: true },
        Field::Prime(_) => {
            let out = is_indecomposable_oracle(x, oracle_budget)?;
            OracleSummary {
                verdict: Some(out.verdict),
                candidates_checked: out.candidates_checked,
                pass: out.verdict != Verdict::Decomposable,
            }
        }
    };
    let roundtrip = if roundtrips { Some(roundtrip_check(x)?) } else { None };
    Ok(ConstructedChecks {
        word: trace.word.clone(),
        start_vertex: trace.start_vertex.clone(),
        star_form: trace.star_form.clone(),
        stages: trace.stages.clone(),
        dims_match: x.dim_vector() == *alpha,
        maximal_rank: RankSummary {
            subsets_checked: rank.subsets_checked,
            violations: rank.violations.len(),
            pass: rank.is_maximal_rank(),
        },
        tree: TreeSummary {
            nodes: coeff.nodes.len(),
            edges: coeff.edges.len(),
            is_tree: tree_ok,
            pass: tree_ok && coeff.edges.len() + 1 == total,
        },
        end_dim: EndSummary { predicted, computed, self_ext, pass: predicted == computed as i64 },
        mechanism: MechanismSummary {
            insertions_checked: mech.insertions_checked,
            failures: mech.failures.len(),
            pass: mech.failures.is_empty(),
        },
        oracle,
        roundtrip,
    })
}

impl ConstructedChecks {
    pub fn pass(&self) -> bool {
        self.dims_match
            && self.maximal_rank.pass
            && self.tree.pass
            && self.end_dim.pass
            && self.mechanism.pass
            && self.oracle.pass
            && self.roundtrip.as_ref().is_none_or(|r| r.pass)
    }
}

fn run_root(config: &CatalogConfig, alpha: &DimVector) -> (RootRecord, Option<Representation>) {
    let start = Instant::now();
    let q = build_family(config.params);
    let class = classify_root(&q, alpha).unwrap_or(RootClass::NotARoot);
    let outcome = construct(alpha, config.params, config.field).and_then(|(x, trace)| {
        let checks = check_constructed(&x, &trace, alpha, config.oracle_budget, config.roundtrips)?;
        Ok((x, checks))
    });
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok((x, checks)) => (
            RootRecord { root: alpha.clone(), class, pass: checks.pass(), error: None, checks: Some(checks), elapsed_ms },
            Some(x),
        ),
        Err(e) => (
            RootRecord { root: alpha.clone(), class, pass: false, error: Some(e.to_string()), checks: None, elapsed_ms },
            None,
        ),
    }
}

/// Constructs and checks every real root; returns the report and the
/// constructed representations (in report order, `None` where construction failed).
pub fn run_catalog_with_reps(config: &CatalogConfig) -> Result<(CatalogReport, Vec<Option<Representation>>)> {
    if config.bound < 1 {
        return Err(Error::input("height bound must be at least 1"));
    }
    if config.jobs == 0 {
        return Err(Error::input("--jobs must be at least 1"));
    }
    let start = Instant::now();
    let q = build_family(config.params);
    let roots = enumerate_real_roots(&q, config.bound);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::input(format!("cannot start worker pool: {e}")))?;
    let mut results: Vec<(RootRecord, Option<Representation>)> =
        pool.install(|| roots.par_iter().map(|alpha| run_root(config, alpha)).collect());
    results.sort_by(|a, b| a.0.root.cmp(&b.0.root));
    let (records, reps): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let passed = records.iter().filter(|r| r.pass).count();
    let report = CatalogReport {
        schema_version: SCHEMA_VERSION,
        family: config.params,
        bound: config.bound,
        field: config.field,
        oracle_budget: config.oracle_budget,
        pass: passed == records.len(),
        summary: CatalogSummary { roots: records.len(), passed, failed: records.len() - passed },
        records,
        total_elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Ok((report, reps))
}

pub fn run_catalog(config: &CatalogConfig) -> Result<CatalogReport> {
    run_catalog_with_reps(config).map(|(report, _)| report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog_passes_and_is_job_independent() {
        let mut config = CatalogConfig::new(FamilyParams::new(1, 1, 1).unwrap(), 5);
        let one = run_catalog(&config).unwrap();
        assert!(one.pass, "{}", one.summary_text());
        config.jobs = 3;
        let three = run_catalog(&config).unwrap();
        let (mut a, mut b) = (one.to_value(), three.to_value());
        strip_timing(&mut a);
        strip_timing(&mut b);
        assert_eq!(a, b);
    }

    #[test]
    fn prime_field_catalog_runs_oracle() {
        let mut config = CatalogConfig::new(FamilyParams::new(1, 1, 1).unwrap(), 4);
        config.field = Field::Prime(2);
        let report = run_catalog(&config).unwrap();
        assert!(report.pass, "{}", report.summary_text());
        let verdicts: Vec<_> = report.records.iter().map(|r| r.checks.as_ref().unwrap().oracle.verdict).collect();
        assert!(verdicts.iter().all(|v| *v == Some(Verdict::Indecomposable)));
    }

    #[test]
    fn bad_config_is_rejected() {
        let mut config = CatalogConfig::new(FamilyParams::new(1, 1, 1).unwrap(), 0);
        assert!(run_catalog(&config).is_err());
        config.bound = 3;
        config.jobs = 0;
        assert!(run_catalog(&config).is_err());
    }
}
