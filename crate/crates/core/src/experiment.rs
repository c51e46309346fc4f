//! Monte Carlo sweeps over X(n, n^-alpha).

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::collapse::{collapse_to_dim, verify_certificate, CollapseOutcome, Strategy};
use crate::complex::{CliqueComplex, DEFAULT_FACE_BUDGET, UNBOUNDED};
use crate::condition::{check_condition, ConditionStatus};
use crate::error::ExperimentError;
use crate::graph::Graph;
use crate::homology::{homology_profile, HomologyProfile, SimplicialComplex};
use crate::relevant::facet_adjacency_components;
use crate::sampler::{child_seed, p_from_alpha, sample_xnp_with_budget, SamplerConfig};

fn default_dim_cap() -> usize {
    UNBOUNDED
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub k: usize,
    pub alphas: Vec<f64>,
    pub ns: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default)]
    pub measure_homology: bool,
    #[serde(default = "default_dim_cap")]
    pub dim_cap: usize,
    #[serde(default)]
    pub face_budget: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.alphas.is_empty() || self.ns.is_empty() {
            return bad("alphas and ns must be nonempty".into());
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return bad(format!("alpha must be positive, got {a}"));
        }
        if self.ns.contains(&0) {
            return bad("n must be at least 1".into());
        }
        Ok(())
    }

    pub fn options(&self) -> TrialOptions {
        TrialOptions {
            strategy: self.strategy,
            measure_homology: self.measure_homology,
            dim_cap: self.dim_cap,
            face_budget: self.face_budget.unwrap_or(DEFAULT_FACE_BUDGET),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOptions {
    pub strategy: Strategy,
    pub measure_homology: bool,
    pub dim_cap: usize,
    pub face_budget: usize,
}

impl Default for TrialOptions {
    fn default() -> Self {
        TrialOptions {
            strategy: Strategy::Theorem,
            measure_homology: false,
            dim_cap: UNBOUNDED,
            face_budget: DEFAULT_FACE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CollapseStatus {
    Success,
    Failure,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    pub seed: u64,
    pub condition: Option<ConditionStatus>,
    pub collapse: CollapseStatus,
    pub final_dim: Option<usize>,
    pub max_support: Option<usize>,
    pub betti: Option<Vec<usize>>,
    pub connected: Option<bool>,
    pub bouquet_certified: Option<bool>,
    pub wall_time_ms: f64,
    pub reason: Option<String>,
}

impl TrialRecord {
    pub fn is_success(&self) -> bool {
        self.collapse == CollapseStatus::Success
    }
}

/// One row of `results.csv`.
#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    alpha: f64,
    p: f64,
    seed: u64,
    condition: &'a str,
    collapse: &'a str,
    final_dim: Option<usize>,
    max_support: Option<usize>,
    betti: String,
    connected: Option<bool>,
    wall_time_ms: String,
    reason: &'a str,
}

impl<'a> From<&'a TrialRecord> for CsvRow<'a> {
    fn from(r: &'a TrialRecord) -> Self {
        CsvRow {
            n: r.n,
            alpha: r.alpha,
            p: r.p,
            seed: r.seed,
            condition: match r.condition {
                Some(ConditionStatus::Satisfied) => "satisfied",
                Some(ConditionStatus::Violated) => "violated",
                None => "",
            },
            collapse: match r.collapse {
                CollapseStatus::Success => "success",
                CollapseStatus::Failure => "failure",
                CollapseStatus::Error => "error",
            },
            final_dim: r.final_dim,
            max_support: r.max_support,
            betti: r
                .betti
                .as_ref()
                .map(|b| {
                    b.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default(),
            connected: r.connected,
            wall_time_ms: format!("{:.3}", r.wall_time_ms),
            reason: r.reason.as_deref().unwrap_or(""),
        }
    }
}

pub fn connectivity_check(g: &Graph) -> bool {
    g.is_connected()
}

/// Samples X(n, n^-alpha) with `seed` and runs the condition check and the
/// collapse on it. Errors are recorded in the returned row.
pub fn run_trial(n: usize, alpha: f64, k: usize, seed: u64, options: &TrialOptions) -> TrialRecord {
    let start = Instant::now();
    let mut rec = TrialRecord {
        n,
        alpha,
        p: f64::NAN,
        seed,
        condition: None,
        collapse: CollapseStatus::Error,
        final_dim: None,
        max_support: None,
        betti: None,
        connected: None,
        bouquet_certified: None,
        wall_time_ms: 0.0,
        reason: None,
    };
    if let Err(reason) = fill_trial(&mut rec, k, options) {
        rec.collapse = CollapseStatus::Error;
        rec.reason = Some(reason);
    }
    rec.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

fn fill_trial(rec: &mut TrialRecord, k: usize, options: &TrialOptions) -> Result<(), String> {
    rec.p = p_from_alpha(rec.n, rec.alpha).map_err(|e| e.to_string())?;
    let cfg = SamplerConfig::new(rec.n, rec.p, rec.seed).map_err(|e| e.to_string())?;
    let c = sample_xnp_with_budget(&cfg, options.dim_cap, options.face_budget)
        .map_err(|e| e.to_string())?;

    rec.connected = Some(connectivity_check(c.graph()));
    rec.max_support = Some(
        facet_adjacency_components(&c, k + 1)
            .iter()
            .map(|r| r.support().len())
            .max()
            .unwrap_or(0),
    );
    let condition = check_condition(&c, k).status;
    rec.condition = Some(condition);

    let profile = if options.measure_homology {
        let p = sample_profile(&c, k)?;
        rec.betti = Some(p.betti.clone());
        Some(p)
    } else {
        None
    };

    let outcome = collapse_to_dim(&c, k, options.strategy).map_err(|e| e.to_string())?;
    match outcome {
        CollapseOutcome::Success(cert) => {
            let v =
                verify_certificate(&c, &cert).map_err(|e| format!("certificate rejected: {e}"))?;
            rec.collapse = CollapseStatus::Success;
            rec.final_dim = Some(v.final_dim);
            if let Some(before) = &profile {
                let after = homology_profile(&v.final_complex, k + 1).map_err(|e| e.to_string())?;
                if after.betti != before.betti || after.torsion != before.torsion {
                    return Err("homology changed under collapse".into());
                }
                if k == 1 && rec.connected == Some(true) && before.betti_at(1) > 0 {
                    rec.bouquet_certified =
                        Some(v.final_dim <= 1 && after.betti_at(0) == 1 && after.betti_at(1) > 0);
                }
            }
        }
        CollapseOutcome::Failure { .. } => {
            rec.collapse = CollapseStatus::Failure;
            if options.strategy == Strategy::Theorem && condition == ConditionStatus::Satisfied {
                rec.reason = Some("theorem strategy failed although the condition holds".into());
            }
        }
    }
    Ok(())
}

fn sample_profile(c: &CliqueComplex, k: usize) -> Result<HomologyProfile, String> {
    homology_profile(&SimplicialComplex::from(c), k + 1).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    pub trials: usize,
    pub errors: usize,
    pub condition_satisfied_fraction: f64,
    pub collapse_success_fraction: f64,
    pub mean_final_dim: Option<f64>,
    pub mean_max_support: Option<f64>,
    pub max_max_support: Option<usize>,
    /// Among successes with homology measured.
    pub betti_k_nonzero_fraction: Option<f64>,
    pub connected_fraction: Option<f64>,
    pub bouquet_certified: Option<usize>,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

pub fn summarize_cell(k: usize, records: &[TrialRecord]) -> CellSummary {
    let first = &records[0];
    let trials = records.len();
    let frac = |pred: &dyn Fn(&TrialRecord) -> bool| {
        records.iter().filter(|r| pred(r)).count() as f64 / trials as f64
    };
    let successes: Vec<&TrialRecord> = records.iter().filter(|r| r.is_success()).collect();
    let with_betti: Vec<&&TrialRecord> = successes.iter().filter(|r| r.betti.is_some()).collect();
    CellSummary {
        n: first.n,
        alpha: first.alpha,
        p: first.p,
        trials,
        errors: records
            .iter()
            .filter(|r| r.collapse == CollapseStatus::Error)
            .count(),
        condition_satisfied_fraction: frac(&|r| r.condition == Some(ConditionStatus::Satisfied)),
        collapse_success_fraction: frac(&|r| r.is_success()),
        mean_final_dim: mean(
            successes
                .iter()
                .filter_map(|r| r.final_dim)
                .map(|d| d as f64),
        ),
        mean_max_support: mean(
            records
                .iter()
                .filter_map(|r| r.max_support)
                .map(|s| s as f64),
        ),
        max_max_support: records.iter().filter_map(|r| r.max_support).max(),
        betti_k_nonzero_fraction: (!with_betti.is_empty()).then(|| {
            with_betti
                .iter()
                .filter(|r| {
                    r.betti
                        .as_ref()
                        .is_some_and(|b| b.get(k).copied().unwrap_or(0) > 0)
                })
                .count() as f64
                / with_betti.len() as f64
        }),
        connected_fraction: mean(records.iter().filter_map(|r| r.connected).map(|c| {
            if c {
                1.0
            } else {
                0.0
            }
        })),
        bouquet_certified: (k == 1 && records.iter().any(|r| r.betti.is_some())).then(|| {
            records
                .iter()
                .filter(|r| r.bouquet_certified == Some(true))
                .count()
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub cells: Vec<CellSummary>,
}

impl SweepResult {
    /// Records of the cell `(n, alpha)`, in trial order.
    pub fn cell(&self, n: usize, alpha: f64) -> Vec<&TrialRecord> {
        self.records
            .iter()
            .filter(|r| r.n == n && r.alpha == alpha)
            .collect()
    }

    pub fn write_to(&self, out_dir: &Path) -> Result<(), ExperimentError> {
        fs::create_dir_all(out_dir)?;
        let mut w = csv::Writer::from_path(out_dir.join("results.csv"))?;
        for r in &self.records {
            w.serialize(CsvRow::from(r))?;
        }
        w.flush()?;
        #[derive(Serialize)]
        struct Summary<'a> {
            config: &'a ExperimentConfig,
            cells: &'a [CellSummary],
        }
        let summary = Summary {
            config: &self.config,
            cells: &self.cells,
        };
        fs::write(
            out_dir.join("summary.json"),
            serde_json::to_string_pretty(&summary)?,
        )?;
        Ok(())
    }
}

/// Runs every (n, alpha, trial) on a pool of `workers` threads. Trial `i`
/// of every cell uses `child_seed(master_seed, i)`.
pub fn run_sweep(cfg: &ExperimentConfig, workers: usize) -> Result<SweepResult, ExperimentError> {
    cfg.validate()?;
    let options = cfg.options();
    let tasks: Vec<(usize, f64, u64)> = cfg
        .ns
        .iter()
        .flat_map(|&n| {
            cfg.alphas.iter().flat_map(move |&a| {
                (0..cfg.trials as u64).map(move |i| (n, a, child_seed(cfg.master_seed, i)))
            })
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let records: Vec<TrialRecord> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(n, a, seed)| run_trial(n, a, cfg.k, seed, &options))
            .collect()
    });
    let cells = records
        .chunks(cfg.trials)
        .map(|chunk| summarize_cell(cfg.k, chunk))
        .collect();
    Ok(SweepResult {
        config: cfg.clone(),
        records,
        cells,
    })
}
