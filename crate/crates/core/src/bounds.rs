//! Numerical check of the bound chains
//!
//! ```text
//! alpha(F_A) <= delta_H(A)^{1/(m-1)} <= (min_i a_{i..i})^{1/(m-1)}
//! alpha(T_A) <= delta_Z(A)           <=  min_i a_{i..i}
//! ```
//!
//! for P-tensors of even order, plus sub-tensor monotonicity and row-sum
//! boundedness of both alpha constants and sampled operator norm bounds.
//!
//! An alpha value is attained, hence an upper bound on the true constant;
//! its certified lower bound sits `gap` below. A link `lhs <= rhs` is
//! therefore only `Violated` when even the lower end of `lhs` exceeds `rhs`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alpha::{alpha, operator, operator_norm_bound, AlphaConfig, AlphaMode, AlphaResult, Certification, OperatorKind, MAX_GRID_DIM};
use crate::eigen::{Completeness, EigConfig};
use crate::error::Result;
use crate::spectral::spectral_constants;
use crate::tensor::{norm_inf, odd_real_root, SubsetIndex, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// `rhs - lhs` exceeds the certification gap.
    HoldsWithMargin,
    /// Holds, but only within the certification gap (near-tight cases).
    HoldsWithinGap,
    Violated,
    /// An ingredient is missing or the statement does not apply.
    NotApplicable,
}

impl Outcome {
    pub fn holds(self) -> bool {
        matches!(self, Outcome::HoldsWithMargin | Outcome::HoldsWithinGap)
    }
}

/// One link `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// `rhs - lhs`.
    pub margin: Option<f64>,
    /// Uncertainty of `lhs` towards smaller values.
    pub gap: f64,
    pub outcome: Outcome,
}

impl Inequality {
    fn check(name: impl Into<String>, lhs: Option<f64>, rhs: Option<f64>, gap: f64, tol: f64) -> Self {
        let (margin, outcome) = match (lhs, rhs) {
            (Some(l), Some(r)) => {
                let margin = r - l;
                let outcome = if margin > gap {
                    Outcome::HoldsWithMargin
                } else if margin + gap + tol >= 0.0 {
                    Outcome::HoldsWithinGap
                } else {
                    Outcome::Violated
                };
                (Some(margin), outcome)
            }
            _ => (None, Outcome::NotApplicable),
        };
        Inequality {
            name: name.into(),
            lhs,
            rhs,
            margin,
            gap,
            outcome,
        }
    }

    fn not_applicable(name: impl Into<String>) -> Self {
        Inequality::check(name, None, None, 0.0, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRecord {
    pub op: OperatorKind,
    pub subset: SubsetIndex,
    pub alpha_sub: f64,
    /// `alpha(A) <= alpha(A_J)`.
    pub check: Inequality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormSample {
    pub op: OperatorKind,
    pub samples: usize,
    pub bound: f64,
    /// Largest observed `||op(x)||_inf / ||x||_inf`.
    pub worst_ratio: f64,
    pub check: Inequality,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConfig {
    pub alpha: AlphaConfig,
    pub eig: EigConfig,
    pub norm_samples: usize,
    pub seed: u64,
    /// Slack for the chain links.
    pub tol: f64,
    /// Slack for sub-tensor monotonicity of the attained alpha values.
    pub monotonicity_tol: f64,
    /// Slack for the sampled norm bounds.
    pub norm_tol: f64,
    pub check_monotonicity: bool,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            alpha: AlphaConfig::default(),
            eig: EigConfig::default(),
            norm_samples: 1000,
            seed: 0,
            tol: 1e-9,
            monotonicity_tol: 1e-6,
            norm_tol: 1e-10,
            check_monotonicity: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowSumBounds {
    pub t: f64,
    pub f: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub order: usize,
    pub dim: usize,
    pub alpha_t: AlphaResult,
    pub alpha_f: Option<AlphaResult>,
    pub delta_h: Option<f64>,
    pub delta_z: Option<f64>,
    pub delta_completeness: Completeness,
    pub min_diag: f64,
    pub row_sum_bounds: RowSumBounds,
    /// `alpha(F) <= delta_H^{1/(m-1)} <= min_diag^{1/(m-1)}`.
    pub h_chain: Vec<Inequality>,
    /// `alpha(T) <= delta_Z <= min_diag`.
    pub z_chain: Vec<Inequality>,
    pub monotonicity: Vec<MonotonicityRecord>,
    pub boundedness: Vec<Inequality>,
    pub norm_bounds: Vec<NormSample>,
    pub certification: Certification,
}

impl BoundReport {
    pub fn all_inequalities(&self) -> impl Iterator<Item = &Inequality> {
        self.h_chain
            .iter()
            .chain(&self.z_chain)
            .chain(self.monotonicity.iter().map(|m| &m.check))
            .chain(&self.boundedness)
            .chain(self.norm_bounds.iter().map(|s| &s.check))
    }

    pub fn violations(&self) -> Vec<&Inequality> {
        self.all_inequalities().filter(|i| i.outcome == Outcome::Violated).collect()
    }

    pub fn chains_hold(&self) -> bool {
        self.h_chain.iter().chain(&self.z_chain).all(|i| i.outcome != Outcome::Violated)
    }
}

fn root(v: f64, order: usize) -> f64 {
    odd_real_root(v, order as i64 - 1)
}

fn alpha_auto(a: &Tensor, kind: OperatorKind, cfg: &AlphaConfig) -> Result<AlphaResult> {
    let mut cfg = *cfg;
    if a.dim() > MAX_GRID_DIM {
        cfg.mode = AlphaMode::Heuristic;
    }
    alpha(a, kind, &cfg)
}

fn gap_of(r: &AlphaResult) -> f64 {
    r.grid_gap.unwrap_or(0.0)
}

/// Evaluates every bound for one tensor. The chains are meaningful for
/// P-tensors of even order; for odd order they are marked not applicable.
pub fn verify_bounds(a: &Tensor, cfg: &BoundConfig) -> Result<BoundReport> {
    let m = a.order();
    let n = a.dim();
    let even = m % 2 == 0;
    let alpha_t = alpha_auto(a, OperatorKind::T, &cfg.alpha)?;
    let alpha_f = if even {
        Some(alpha_auto(a, OperatorKind::F, &cfg.alpha)?)
    } else {
        None
    };
    let spectral = spectral_constants(a, &cfg.eig)?;
    let min_diag = a.min_diagonal();
    let bound_t = operator_norm_bound(a, OperatorKind::T)?;
    let bound_f = if even {
        Some(operator_norm_bound(a, OperatorKind::F)?)
    } else {
        None
    };

    let (h_chain, z_chain) = if even {
        let af = alpha_f.as_ref().expect("even order");
        let dh = spectral.delta_h.map(|d| root(d, m));
        let md = root(min_diag, m);
        let h = vec![
            Inequality::check("alpha(F) <= delta_H^(1/(m-1))", Some(af.value), dh, gap_of(af), cfg.tol),
            Inequality::check("delta_H^(1/(m-1)) <= min_diag^(1/(m-1))", dh, Some(md), 0.0, cfg.tol),
        ];
        let z = vec![
            Inequality::check("alpha(T) <= delta_Z", Some(alpha_t.value), spectral.delta_z, gap_of(&alpha_t), cfg.tol),
            Inequality::check("delta_Z <= min_diag", spectral.delta_z, Some(min_diag), 0.0, cfg.tol),
        ];
        (h, z)
    } else {
        (
            vec![
                Inequality::not_applicable("alpha(F) <= delta_H^(1/(m-1))"),
                Inequality::not_applicable("delta_H^(1/(m-1)) <= min_diag^(1/(m-1))"),
            ],
            vec![
                Inequality::not_applicable("alpha(T) <= delta_Z"),
                Inequality::not_applicable("delta_Z <= min_diag"),
            ],
        )
    };

    let mut monotonicity = Vec::new();
    if cfg.check_monotonicity {
        let full: Vec<(OperatorKind, &AlphaResult)> = std::iter::once((OperatorKind::T, &alpha_t))
            .chain(alpha_f.as_ref().map(|r| (OperatorKind::F, r)))
            .collect();
        for subset in SubsetIndex::all_nonempty(n).into_iter().filter(|j| j.len() < n) {
            let sub = a.principal_subtensor(&subset)?;
            for &(kind, whole) in &full {
                let r = alpha_auto(&sub, kind, &cfg.alpha)?;
                let check = Inequality::check(
                    format!("alpha({kind:?}) <= alpha({kind:?} on {subset})"),
                    Some(whole.value),
                    Some(r.value),
                    gap_of(whole),
                    cfg.monotonicity_tol,
                );
                monotonicity.push(MonotonicityRecord {
                    op: kind,
                    subset: subset.clone(),
                    alpha_sub: r.value,
                    check,
                });
            }
        }
    }

    let mut boundedness = vec![Inequality::check(
        "alpha(T) <= row-sum bound",
        Some(alpha_t.value),
        Some(bound_t),
        gap_of(&alpha_t),
        cfg.tol,
    )];
    if let (Some(af), Some(bf)) = (&alpha_f, bound_f) {
        boundedness.push(Inequality::check(
            "alpha(F) <= row-sum bound^(1/(m-1))",
            Some(af.value),
            Some(bf),
            gap_of(af),
            cfg.tol,
        ));
    }

    let mut norm_bounds = vec![sample_norm(a, OperatorKind::T, bound_t, cfg)?];
    if let Some(bf) = bound_f {
        norm_bounds.push(sample_norm(a, OperatorKind::F, bf, cfg)?);
    }

    let certification = if alpha_t.certification == Certification::GridCertified
        && alpha_f.as_ref().is_none_or(|r| r.certification == Certification::GridCertified)
    {
        Certification::GridCertified
    } else {
        Certification::Heuristic
    };

    Ok(BoundReport {
        order: m,
        dim: n,
        delta_h: spectral.delta_h,
        delta_z: spectral.delta_z,
        delta_completeness: spectral.completeness,
        min_diag,
        row_sum_bounds: RowSumBounds { t: bound_t, f: bound_f },
        h_chain,
        z_chain,
        monotonicity,
        boundedness,
        norm_bounds,
        certification,
        alpha_t,
        alpha_f,
    })
}

/// Largest `||op(x)||_inf / ||x||_inf` over seeded random `x` of varied scale.
pub fn sample_norm(a: &Tensor, kind: OperatorKind, bound: f64, cfg: &BoundConfig) -> Result<NormSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (kind as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut worst = 0.0f64;
    for _ in 0..cfg.norm_samples {
        let scale = 10f64.powf(rng.random_range(-2.0..2.0));
        let x: Vec<f64> = (0..a.dim()).map(|_| scale * rng.random_range(-1.0..=1.0)).collect();
        let nx = norm_inf(&x);
        if nx == 0.0 {
            continue;
        }
        worst = worst.max(norm_inf(&operator(a, kind, &x)?) / nx);
    }
    Ok(NormSample {
        op: kind,
        samples: cfg.norm_samples,
        bound,
        worst_ratio: worst,
        check: Inequality::check(format!("||{kind:?}(x)||/||x|| <= bound"), Some(worst), Some(bound), 0.0, cfg.norm_tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> BoundConfig {
        BoundConfig {
            norm_samples: 200,
            ..BoundConfig::default()
        }
    }

    #[test]
    fn unit_tensor_chains_are_tight() {
        let r = verify_bounds(&Tensor::unit(4, 2).unwrap(), &quick()).unwrap();
        assert!((r.alpha_f.as_ref().unwrap().value - 1.0).abs() < 1e-12);
        assert!((r.delta_h.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.alpha_t.value - 0.5).abs() < 1e-12);
        assert!(r.delta_z.unwrap() <= 1.0 + 1e-12);
        assert_eq!(r.h_chain[0].outcome, Outcome::HoldsWithinGap);
        assert_eq!(r.h_chain[1].outcome, Outcome::HoldsWithinGap);
        assert!(r.violations().is_empty());
    }

    #[test]
    fn diagonal_z_chain() {
        let r = verify_bounds(&Tensor::diagonal(4, &[2.0, 3.0]).unwrap(), &quick()).unwrap();
        assert!((r.delta_z.unwrap() - 1.2).abs() < 1e-9);
        assert!(r.z_chain.iter().all(|i| i.outcome.holds()));
        assert_eq!(r.min_diag, 2.0);
        assert!(r.violations().is_empty());
    }

    #[test]
    fn matrix_z_chain() {
        let a = Tensor::from_matrix(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let r = verify_bounds(&a, &quick()).unwrap();
        assert!((r.delta_z.unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(r.z_chain[1].outcome, Outcome::HoldsWithMargin);
        assert!(r.violations().is_empty());
    }

    #[test]
    fn odd_order_chains_not_applicable() {
        let r = verify_bounds(&Tensor::unit(3, 2).unwrap(), &quick()).unwrap();
        assert!(r.h_chain.iter().chain(&r.z_chain).all(|i| i.outcome == Outcome::NotApplicable));
        assert!(r.alpha_f.is_none());
    }

    #[test]
    fn outcome_classification() {
        assert_eq!(Inequality::check("", Some(1.0), Some(2.0), 0.1, 0.0).outcome, Outcome::HoldsWithMargin);
        assert_eq!(Inequality::check("", Some(1.05), Some(1.0), 0.1, 0.0).outcome, Outcome::HoldsWithinGap);
        assert_eq!(Inequality::check("", Some(1.2), Some(1.0), 0.1, 0.0).outcome, Outcome::Violated);
        assert_eq!(Inequality::check("", None, Some(1.0), 0.1, 0.0).outcome, Outcome::NotApplicable);
    }
}
