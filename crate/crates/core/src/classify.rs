//! P / P0 classification.
//!
//! `A` is a P-tensor iff `alpha(T_A) > 0`. For the weaker P0 property the
//! pointwise condition only looks at indices with `x_i != 0`, and a zero
//! component contributes a product of exactly `0` to `max_i x_i (T_A x)_i`,
//! so `alpha(T_A) >= 0` alone does not certify P0 (`diag(1, -1)` with
//! `m = 2` has `alpha = 0`). Instead:
//!
//! `A` is P0  iff  `alpha(T_{A_J}) >= 0` for every nonempty principal
//! sub-tensor `A_J`.
//!
//! If some `alpha(T_{A_J}) < 0` its minimizer has no zero component on `J`,
//! and padding it with zeros gives an `x` whose products are negative on
//! the whole support.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpha::{alpha_with_target, AlphaConfig, AlphaMode, AlphaResult, Certification, GapTarget, OperatorKind, MAX_GRID_DIM};
use crate::error::{Error, Result};
use crate::tensor::{norm_inf, SubsetIndex, Tensor};

/// Acceptance threshold for `max_i x_i (A x^{m-1})_i <= 0`.
pub const WITNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PStatus {
    P,
    P0NotP,
    NotP0,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictCertification {
    Certified,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PVerdict {
    pub status: PStatus,
    /// For `P0NotP`/`NotP0`: `||x||_inf = 1` and `max_i x_i (A x^{m-1})_i <= 1e-9`;
    /// for `NotP0` additionally every product on the support is negative.
    pub witness: Option<Vec<f64>>,
    pub alpha_t_value: f64,
    pub alpha_t_lower_bound: Option<f64>,
    /// Sign cross-check value for even orders.
    pub alpha_f_value: Option<f64>,
    /// 1-based indices with a nonpositive diagonal entry.
    pub diag_violations: Vec<usize>,
    pub certification: VerdictCertification,
    pub note: String,
}

/// 1-based indices `i` with `a_{i..i} <= 0`. Nonempty output rules out P.
pub fn diag_check(a: &Tensor) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.diag(i) <= 0.0).map(|i| i + 1).collect()
}

/// `max_i x_i (A x^{m-1})_i`.
pub fn witness_value(a: &Tensor, x: &[f64]) -> Result<f64> {
    let f = a.apply(x)?;
    Ok(x.iter().zip(&f).map(|(u, v)| u * v).fold(f64::NEG_INFINITY, f64::max))
}

/// `x` is a feasible point showing `A` is not P.
pub fn is_not_p_witness(a: &Tensor, x: &[f64]) -> bool {
    (norm_inf(x) - 1.0).abs() <= 1e-12 && witness_value(a, x).is_ok_and(|v| v <= WITNESS_TOL)
}

/// `x` is a feasible point showing `A` is not P0: every product on the
/// support of `x` is negative.
pub fn is_not_p0_witness(a: &Tensor, x: &[f64]) -> bool {
    if (norm_inf(x) - 1.0).abs() > 1e-12 {
        return false;
    }
    let Ok(f) = a.apply(x) else { return false };
    x.iter().zip(&f).filter(|(u, _)| **u != 0.0).all(|(u, v)| u * v < 0.0)
}

fn alpha_sign(a: &Tensor, kind: OperatorKind, cfg: &AlphaConfig) -> Result<AlphaResult> {
    let mut cfg = *cfg;
    if a.dim() > MAX_GRID_DIM {
        cfg.mode = AlphaMode::Heuristic;
    }
    alpha_with_target(a, kind, &cfg, GapTarget::Sign)
}

/// Certified lower bound when available, otherwise the attained value.
fn floor(r: &AlphaResult) -> f64 {
    r.lower_bound.unwrap_or(r.value)
}

pub fn classify(a: &Tensor, cfg: &AlphaConfig) -> Result<PVerdict> {
    cfg.validate()?;
    let n = a.dim();
    let violations = diag_check(a);
    let full = alpha_sign(a, OperatorKind::T, cfg)?;
    let certification = match full.certification {
        Certification::GridCertified => VerdictCertification::Certified,
        Certification::Heuristic => VerdictCertification::Heuristic,
    };
    let alpha_f = if a.order() % 2 == 0 {
        Some(alpha_sign(a, OperatorKind::F, cfg)?)
    } else {
        None
    };
    let mut verdict = PVerdict {
        status: PStatus::Undetermined,
        witness: None,
        alpha_t_value: full.value,
        alpha_t_lower_bound: full.lower_bound,
        alpha_f_value: alpha_f.as_ref().map(|r| r.value),
        diag_violations: violations.clone(),
        certification,
        note: String::new(),
    };

    // a negative diagonal entry refutes P0 with a unit vector
    if let Some(&i) = violations.iter().find(|&&i| a.diag(i - 1) < 0.0) {
        verdict.status = PStatus::NotP0;
        verdict.witness = Some(unit_vector(n, i - 1));
        verdict.note = format!("diagonal entry {i} is negative");
        return Ok(verdict);
    }

    let positive = floor(&full) > 0.0 && violations.is_empty();
    if positive {
        let f_agrees = alpha_f.as_ref().is_none_or(|r| floor(r) > 0.0);
        if f_agrees {
            verdict.status = PStatus::P;
            verdict.note = "alpha(T_A) is positive".into();
        } else {
            verdict.note = "alpha(T_A) and alpha(F_A) disagree in sign".into();
        }
        return Ok(verdict);
    }

    // not P (or not provably P): examine every principal sub-tensor
    let subsets = SubsetIndex::all_nonempty(n);
    let subs: Vec<(SubsetIndex, AlphaResult)> = subsets
        .into_par_iter()
        .map(|j| -> Result<(SubsetIndex, AlphaResult)> {
            if j.len() == n {
                return Ok((j, full.clone()));
            }
            let sub = a.principal_subtensor(&j)?;
            let r = alpha_sign(&sub, OperatorKind::T, cfg)?;
            Ok((j, r))
        })
        .collect::<Result<_>>()?;

    let not_p_witness = violations
        .first()
        .map(|&i| unit_vector(n, i - 1))
        .into_iter()
        .chain(subs.iter().map(|(j, r)| j.pad(&r.minimizer, n)))
        .find(|x| is_not_p_witness(a, x));
    let not_p0_witness = subs
        .iter()
        .filter(|(_, r)| r.value < 0.0)
        .map(|(j, r)| j.pad(&r.minimizer, n))
        .find(|x| is_not_p0_witness(a, x));

    if let Some(x) = not_p0_witness {
        verdict.status = PStatus::NotP0;
        verdict.witness = Some(x);
        verdict.note = "a principal sub-tensor has negative alpha(T)".into();
    } else if let Some(x) = not_p_witness {
        let p0 = subs.iter().all(|(_, r)| floor(r) >= -cfg.tol);
        verdict.witness = Some(x);
        if p0 {
            verdict.status = PStatus::P0NotP;
            verdict.note = "alpha(T) vanishes but no principal sub-tensor goes negative".into();
        } else {
            verdict.note = "not P; P0 status within numerical resolution".into();
        }
    } else {
        verdict.note = "alpha(T_A) within numerical resolution of zero".into();
    }
    Ok(verdict)
}

fn unit_vector(n: usize, i: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    x[i] = 1.0;
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessConfig {
    /// Random starts per support set.
    pub starts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            starts: 24,
            max_iters: 400,
            seed: 0,
        }
    }
}

/// Direct search for `x` with `||x||_inf = 1` and
/// `max_i x_i (A x^{m-1})_i <= 1e-9`.
///
/// Works on the raw products, restricted in turn to every support set, with
/// a compass search; it shares no code with the alpha machinery.
pub fn witness_search(a: &Tensor, cfg: &WitnessConfig) -> Result<Option<Vec<f64>>> {
    if cfg.starts == 0 || cfg.max_iters == 0 {
        return Err(Error::invalid("witness search needs at least one start and one iteration"));
    }
    let n = a.dim();
    if n > 12 {
        return Err(Error::invalid(format!("witness search enumerates supports; n = {n} is too large")));
    }
    // singletons first: they catch nonpositive diagonal entries exactly
    let found = SubsetIndex::all_nonempty(n)
        .into_par_iter()
        .enumerate()
        .map(|(k, j)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
            let r = j.len();
            for s in 0..cfg.starts {
                let y0: Vec<f64> = if s == 0 {
                    vec![1.0; r]
                } else {
                    (0..r).map(|_| rng.random_range(-1.0..=1.0)).collect()
                };
                let y = compass(a, &j, y0, cfg.max_iters);
                let x = j.pad(&y, n);
                if is_not_p_witness(a, &x) {
                    return Some(x);
                }
            }
            None
        })
        .collect::<Vec<_>>();
    Ok(found.into_iter().flatten().next())
}

fn sphere_project(y: &mut [f64]) -> bool {
    let s = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if s == 0.0 {
        return false;
    }
    y.iter_mut().for_each(|v| *v /= s);
    true
}

fn compass(a: &Tensor, j: &SubsetIndex, mut y: Vec<f64>, max_iters: usize) -> Vec<f64> {
    let n = a.dim();
    let h = |y: &[f64]| -> f64 {
        let x = j.pad(y, n);
        let f = a.apply_unchecked(&x);
        j.positions().map(|p| x[p] * f[p]).fold(f64::NEG_INFINITY, f64::max)
    };
    if !sphere_project(&mut y) {
        y[0] = 1.0;
    }
    let mut val = h(&y);
    let mut step = 0.25;
    for _ in 0..max_iters {
        if val <= -1e-6 || step < 1e-12 {
            break;
        }
        let mut moved = false;
        'dirs: for k in 0..y.len() {
            for dir in [1.0, -1.0] {
                let mut cand = y.clone();
                cand[k] = (cand[k] + dir * step).clamp(-1.0, 1.0);
                if !sphere_project(&mut cand) {
                    continue;
                }
                let v = h(&cand);
                if v < val {
                    y = cand;
                    val = v;
                    moved = true;
                    break 'dirs;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    y
}
