//! Seeded test-instance generators.
//!
//! Every generator is a pure function of `(kind, m, n, seed)` and uses a
//! ChaCha stream, so outputs are identical across platforms and runs.
//!
//! P-property guarantees hold for even `m`:
//! - `diagonal-positive`: positive diagonal, zero elsewhere.
//! - `identity-plus-perturbation`: `I + P` with every row-abs-sum of `P`
//!   at most `eps < 1`; at an index where `|x_k| = ||x||_inf` the product
//!   `x_k (A x^{m-1})_k` is at least `(1 - eps) |x_k|^m`.
//! - `diagonally-dominant`: `a_{i..i}` strictly exceeds the abs-sum of the
//!   other entries in row `i`, by the same argument.
//!
//! `symmetric-gaussian` carries no guarantee.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorKind {
    DiagonalPositive { lo: f64, hi: f64 },
    IdentityPlusPerturbation { eps: f64 },
    SymmetricGaussian { sigma: f64 },
    DiagonallyDominant { offdiag_scale: f64, margin: f64 },
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::DiagonalPositive { .. } => "diagonal-positive",
            GeneratorKind::IdentityPlusPerturbation { .. } => "identity-plus-perturbation",
            GeneratorKind::SymmetricGaussian { .. } => "symmetric-gaussian",
            GeneratorKind::DiagonallyDominant { .. } => "diagonally-dominant",
        }
    }

    /// Whether instances are P-tensors for the given order.
    pub fn guarantees_p(&self, order: usize) -> bool {
        order % 2 == 0 && !matches!(self, GeneratorKind::SymmetricGaussian { .. })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            GeneratorKind::DiagonalPositive { lo, hi } => {
                if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
                    return Err(Error::invalid(format!("diagonal range [{lo}, {hi}] must satisfy 0 < lo <= hi")));
                }
            }
            GeneratorKind::IdentityPlusPerturbation { eps } => {
                if !(0.0..1.0).contains(&eps) {
                    return Err(Error::invalid(format!("perturbation eps = {eps} must lie in [0, 1)")));
                }
            }
            GeneratorKind::SymmetricGaussian { sigma } => {
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return Err(Error::invalid(format!("sigma = {sigma} must be positive")));
                }
            }
            GeneratorKind::DiagonallyDominant { offdiag_scale, margin } => {
                if !(offdiag_scale >= 0.0 && offdiag_scale.is_finite() && margin > 0.0 && margin.is_finite()) {
                    return Err(Error::invalid("diagonally-dominant needs offdiag_scale >= 0 and margin > 0"));
                }
            }
        }
        Ok(())
    }
}

/// A generator kind together with the tensor shape it produces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub m: usize,
    pub n: usize,
}

impl GeneratorSpec {
    pub fn generate(&self, seed: u64) -> Result<Tensor> {
        gen_random(self.kind, self.m, self.n, seed)
    }
}

pub fn gen_random(kind: GeneratorKind, m: usize, n: usize, seed: u64) -> Result<Tensor> {
    kind.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Tensor::zeros(m, n)?;
    let len = base.entries().len();
    match kind {
        GeneratorKind::DiagonalPositive { lo, hi } => {
            let diag: Vec<f64> = (0..n).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
            Tensor::diagonal(m, &diag)
        }
        GeneratorKind::IdentityPlusPerturbation { eps } => {
            let unit = Tensor::unit(m, n)?;
            if eps == 0.0 {
                return Ok(unit);
            }
            let raw: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
            let pert = Tensor::new(m, n, raw)?;
            let widest = pert.max_row_abs_sum();
            let scale = if widest > 0.0 { eps / widest } else { 0.0 };
            let entries = unit
                .entries()
                .iter()
                .zip(pert.entries())
                .map(|(u, p)| u + scale * p)
                .collect();
            Tensor::new(m, n, entries)
        }
        GeneratorKind::SymmetricGaussian { sigma } => {
            let raw: Vec<f64> = (0..len).map(|_| sigma * rng.sample::<f64, _>(StandardNormal)).collect();
            Ok(Tensor::new(m, n, raw)?.symmetrize())
        }
        GeneratorKind::DiagonallyDominant { offdiag_scale, margin } => {
            let entries: Vec<f64> = (0..len)
                .map(|_| offdiag_scale * rng.random_range(-1.0..1.0))
                .collect();
            let mut t = Tensor::new(m, n, entries)?;
            let sums = t.row_abs_sums();
            for (i, sum) in sums.into_iter().enumerate() {
                let off = sum - t.diag(i).abs();
                t.set_diag(i, off + margin * rng.random_range(0.5..1.5));
            }
            Ok(t)
        }
    }
}
