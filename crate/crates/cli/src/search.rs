//! Parallel grid search over `(p, lambda, mu)`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use weylhom::homspace::{all_hold, theorem31_conditions, DivisibilityCondition, ZeroReason};
use weylhom::tableaux::partitions;
use weylhom::{HomSolver, Partition, PrimeField, Straightener};

use crate::error::CliError;

pub const DEFAULT_R_MAX: u32 = 14;
pub const THREADS_ENV: &str = "WEYLHOM_THREADS";

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub primes: Vec<u32>,
    pub r_min: u32,
    pub r_max: u32,
    /// Largest number of parts of `lambda`.
    pub m_max: usize,
    pub require_mu2_le_lambda1: bool,
    pub require_thm31: bool,
    pub min_dim: usize,
    /// Restrict to this `lambda` only.
    pub lambda: Option<Partition>,
    pub output: PathBuf,
    /// CSV summary path; defaults to `output` with a `.csv` extension.
    pub summary: Option<PathBuf>,
    /// Worker count; falls back to `WEYLHOM_THREADS`, then to the number of CPUs.
    pub threads: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            primes: vec![2],
            r_min: 1,
            r_max: DEFAULT_R_MAX,
            m_max: 4,
            require_mu2_le_lambda1: false,
            require_thm31: false,
            min_dim: 0,
            lambda: None,
            output: PathBuf::from("search.jsonl"),
            summary: None,
            threads: None,
        }
    }
}

impl SearchConfig {
    pub fn summary_path(&self) -> PathBuf {
        self.summary.clone().unwrap_or_else(|| self.output.with_extension("csv"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub p: u32,
    pub r: u32,
    pub lambda: Partition,
    pub mu: Partition,
    pub tableau_count: usize,
    /// Present when `m >= 2` and `mu_2 <= lambda_1 <= mu_1`.
    pub thm31: Option<Vec<DivisibilityCondition>>,
    pub thm31_holds: Option<bool>,
    pub dim: usize,
    pub reason: Option<ZeroReason>,
    /// Wall time of this item; kept out of the JSON lines so reruns compare equal.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    p: u32,
    r: u32,
    lambda: String,
    mu: String,
    tableau_count: usize,
    thm31_holds: &'a str,
    dim: usize,
    elapsed_ms: f64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub examined: usize,
    pub records: Vec<SearchRecord>,
    pub output: PathBuf,
    pub summary: PathBuf,
}

#[derive(Clone, Debug)]
struct WorkItem {
    p: u32,
    lambda: Partition,
    mu: Partition,
    thm31: Option<Vec<DivisibilityCondition>>,
}

fn resolve_threads(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v:?} is not a worker count"))),
        Err(_) => Ok(0),
    }
}

fn work_items(config: &SearchConfig) -> Result<Vec<WorkItem>, CliError> {
    let mut items = Vec::new();
    for &p in &config.primes {
        let field = PrimeField::new(p)?;
        for r in config.r_min.max(1)..=config.r_max {
            let lambdas = match &config.lambda {
                Some(l) if l.degree() == r => vec![l.clone()],
                Some(_) => continue,
                None => partitions(r, config.m_max),
            };
            for lambda in &lambdas {
                for mu in partitions(r, 2) {
                    let (mu1, mu2, l1) = (mu.part(0), mu.part(1), lambda.part(0));
                    if config.require_mu2_le_lambda1 && mu2 > l1 {
                        continue;
                    }
                    let thm31 = if lambda.len() >= 2 && mu2 <= l1 && l1 <= mu1 {
                        Some(theorem31_conditions(lambda, &mu, field)?)
                    } else {
                        None
                    };
                    if config.require_thm31 && !thm31.as_deref().is_some_and(all_hold) {
                        continue;
                    }
                    items.push(WorkItem { p, lambda: lambda.clone(), mu, thm31 });
                }
            }
        }
    }
    Ok(items)
}

fn sort_key(r: &SearchRecord) -> (u32, u32, Vec<u32>, Vec<u32>) {
    (r.p, r.r, r.lambda.parts().to_vec(), r.mu.parts().to_vec())
}

/// Compute every record passing the filters, sorted by `(p, r, lambda, mu)`.
/// Returns the number of examined items alongside the records.
pub fn compute(config: &SearchConfig) -> Result<(usize, Vec<SearchRecord>), CliError> {
    if config.m_max == 0 {
        return Err(CliError::Usage("m_max must be at least 1".into()));
    }
    let items = work_items(config)?;
    let mut straighteners = BTreeMap::new();
    for &p in &config.primes {
        straighteners.insert(p, Arc::new(Straightener::new(PrimeField::new(p)?)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolve_threads(config.threads)?)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start workers: {e}")))?;
    let results: Vec<Result<SearchRecord, CliError>> = pool.install(|| {
        items
            .par_iter()
            .map(|item| {
                let start = Instant::now();
                let solver = HomSolver::with_straightener(&item.lambda, &item.mu, Arc::clone(&straighteners[&item.p]))?;
                let res = solver.hom_space()?;
                Ok(SearchRecord {
                    p: item.p,
                    r: item.lambda.degree(),
                    lambda: item.lambda.clone(),
                    mu: item.mu.clone(),
                    tableau_count: res.tableaux.len(),
                    thm31_holds: item.thm31.as_deref().map(all_hold),
                    thm31: item.thm31.clone(),
                    dim: res.dimension,
                    reason: res.reason,
                    elapsed: start.elapsed(),
                })
            })
            .collect()
    });
    let mut records = Vec::new();
    for r in results {
        let r = r?;
        if r.dim >= config.min_dim {
            records.push(r);
        }
    }
    records.sort_by_key(sort_key);
    Ok((items.len(), records))
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

pub fn write_jsonl(records: &[SearchRecord], path: &Path) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(|e| io_err(path)(e.into()))?;
        w.write_all(b"\n").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn write_csv(records: &[SearchRecord], path: &Path) -> Result<(), CliError> {
    let csv_err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in records {
        let holds = match r.thm31_holds {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        w.serialize(CsvRow {
            p: r.p,
            r: r.r,
            lambda: r.lambda.to_string(),
            mu: r.mu.to_string(),
            tableau_count: r.tableau_count,
            thm31_holds: holds,
            dim: r.dim,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        })
        .map_err(csv_err)?;
    }
    w.flush().map_err(io_err(path))
}

/// Run the search and write the JSON lines and CSV summary.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome, CliError> {
    let (examined, records) = compute(config)?;
    let summary = config.summary_path();
    write_jsonl(&records, &config.output)?;
    write_csv(&records, &summary)?;
    Ok(SearchOutcome { examined, records, output: config.output.clone(), summary })
}
