//! Bound verification over a seeded family of generated tensors.
//!
//! Instance `k` uses seed `base_seed + k`. Instances run in parallel and
//! are reported in index order. The first instance with a violated
//! inequality halts the run: its seed and tensor are written to a
//! reproducer file and an error is returned.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{verify_bounds, BoundConfig, BoundReport, Inequality};
use crate::error::{Error, Result};
use crate::gen::GeneratorSpec;
use crate::io::write_json;
use crate::tensor::Tensor;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub seed: u64,
    pub report: BoundReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl Stats {
    fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        Some(Stats {
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            mean: values.iter().sum::<f64>() / values.len() as f64,
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub count: usize,
    /// Instances whose two chains have no violated link.
    pub chains_hold: usize,
    /// Instances where the computed `delta_H` equals the smallest diagonal
    /// entry to within `1e-9`.
    pub delta_h_is_min_diag: usize,
    pub alpha_t: Option<Stats>,
    pub alpha_f: Option<Stats>,
    pub min_alpha_t_lower_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub spec: GeneratorSpec,
    pub base_seed: u64,
    pub instances: Vec<InstanceRecord>,
    pub summary: BatchSummary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Reproducer {
    pub spec: GeneratorSpec,
    pub index: usize,
    pub seed: u64,
    pub tensor: Tensor,
    pub violations: Vec<Inequality>,
}

/// Where a batch writes its files.
#[derive(Debug, Clone)]
pub struct BatchOutput {
    pub dir: PathBuf,
}

impl BatchOutput {
    pub fn report_path(&self) -> PathBuf {
        self.dir.join("report.json")
    }

    pub fn summary_path(&self) -> PathBuf {
        self.dir.join("summary.txt")
    }

    pub fn reproducer_path(&self, seed: u64) -> PathBuf {
        self.dir.join(format!("reproducer-seed-{seed}.json"))
    }
}

pub fn batch_experiment(
    spec: &GeneratorSpec,
    count: usize,
    base_seed: u64,
    cfg: &BoundConfig,
    out: Option<&BatchOutput>,
) -> Result<BatchReport> {
    let results: Vec<(u64, Tensor, BoundReport)> = (0..count)
        .into_par_iter()
        .map(|k| -> Result<(u64, Tensor, BoundReport)> {
            let seed = base_seed.wrapping_add(k as u64);
            let tensor = spec.generate(seed)?;
            let bcfg = BoundConfig { seed, ..*cfg };
            let report = verify_bounds(&tensor, &bcfg)?;
            Ok((seed, tensor, report))
        })
        .collect::<Result<_>>()?;

    if let Some((index, (seed, tensor, report))) = results
        .iter()
        .enumerate()
        .find(|(_, (_, _, r))| !r.violations().is_empty())
    {
        let violations: Vec<Inequality> = report.violations().into_iter().cloned().collect();
        let names: Vec<&str> = violations.iter().map(|v| v.name.as_str()).collect();
        let mut msg = format!("instance {index} (seed {seed}) violates: {}", names.join("; "));
        if let Some(out) = out {
            std::fs::create_dir_all(&out.dir)?;
            let path = out.reproducer_path(*seed);
            write_json(
                &path,
                &Reproducer {
                    spec: *spec,
                    index,
                    seed: *seed,
                    tensor: tensor.clone(),
                    violations,
                },
            )?;
            let _ = write!(msg, "; reproducer written to {}", path.display());
        }
        return Err(Error::Violation(msg));
    }

    let instances: Vec<InstanceRecord> = results
        .into_iter()
        .enumerate()
        .map(|(index, (seed, _, report))| InstanceRecord { index, seed, report })
        .collect();
    let summary = summarize(&instances);
    let report = BatchReport {
        spec: *spec,
        base_seed,
        instances,
        summary,
    };
    if let Some(out) = out {
        std::fs::create_dir_all(&out.dir)?;
        write_json(out.report_path(), &report)?;
        std::fs::write(out.summary_path(), summary_table(&report))?;
    }
    Ok(report)
}

fn summarize(instances: &[InstanceRecord]) -> BatchSummary {
    let at: Vec<f64> = instances.iter().map(|i| i.report.alpha_t.value).collect();
    let af: Vec<f64> = instances
        .iter()
        .filter_map(|i| i.report.alpha_f.as_ref().map(|r| r.value))
        .collect();
    BatchSummary {
        count: instances.len(),
        chains_hold: instances.iter().filter(|i| i.report.chains_hold()).count(),
        delta_h_is_min_diag: instances
            .iter()
            .filter(|i| i.report.delta_h.is_some_and(|d| (d - i.report.min_diag).abs() <= 1e-9))
            .count(),
        alpha_t: Stats::of(&at),
        alpha_f: Stats::of(&af),
        min_alpha_t_lower_bound: instances
            .iter()
            .filter_map(|i| i.report.alpha_t.lower_bound)
            .reduce(f64::min),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"))
}

/// Plain-text table: one row per instance, then the aggregate lines.
pub fn summary_table(report: &BatchReport) -> String {
    let mut s = String::new();
    let spec = &report.spec;
    let _ = writeln!(
        s,
        "generator {} m={} n={} base_seed={} count={}",
        spec.kind.name(),
        spec.m,
        spec.n,
        report.base_seed,
        report.summary.count
    );
    let _ = writeln!(
        s,
        "{:>5} {:>8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>7}",
        "index", "seed", "alpha_T", "alpha_F", "delta_H", "delta_Z", "min_diag", "chains"
    );
    for inst in &report.instances {
        let r = &inst.report;
        let _ = writeln!(
            s,
            "{:>5} {:>8} {:>10} {:>10} {:>10} {:>10} {:>10.6} {:>7}",
            inst.index,
            inst.seed,
            format!("{:.6}", r.alpha_t.value),
            fmt_opt(r.alpha_f.as_ref().map(|a| a.value)),
            fmt_opt(r.delta_h),
            fmt_opt(r.delta_z),
            r.min_diag,
            if r.chains_hold() { "hold" } else { "FAIL" }
        );
    }
    let sm = &report.summary;
    let _ = writeln!(s, "chains hold: {}/{}", sm.chains_hold, sm.count);
    let _ = writeln!(s, "delta_H == min diagonal: {}/{}", sm.delta_h_is_min_diag, sm.count);
    for (name, st) in [("alpha_T", sm.alpha_t), ("alpha_F", sm.alpha_f)] {
        if let Some(st) = st {
            let _ = writeln!(s, "{name}: min {:.6} mean {:.6} max {:.6}", st.min, st.mean, st.max);
        }
    }
    if let Some(lb) = sm.min_alpha_t_lower_bound {
        let _ = writeln!(s, "smallest certified alpha_T lower bound: {lb:.6}");
    }
    s
}

/// Convenience for callers holding only a directory path.
pub fn output_in(dir: impl AsRef<Path>) -> BatchOutput {
    BatchOutput {
        dir: dir.as_ref().to_path_buf(),
    }
}
