//! `delta_H(A)` and `delta_Z(A)`: the smallest real H-/Z-eigenvalue over
//! every principal sub-tensor `A_r^J`, minimized over all nonempty `J`.
//!
//! Sub-tensors for which no eigenvalue of the requested kind is found do not
//! participate. When none participates the constant is absent.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{completeness, eigenpairs, Completeness, EigConfig, EigenKind, Eigenpair};
use crate::error::{Error, Result};
use crate::tensor::{SubsetIndex, Tensor};

/// Largest dimension accepted for exhaustive subset enumeration.
pub const MAX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetSpectrum {
    pub subset: SubsetIndex,
    pub smallest_h: Option<f64>,
    pub smallest_z: Option<f64>,
    pub completeness: Completeness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    /// Eigenvalue kinds that were computed.
    pub kinds: Vec<EigenKind>,
    pub delta_h: Option<f64>,
    pub delta_z: Option<f64>,
    pub argmin_subset_h: Option<SubsetIndex>,
    pub argmin_subset_z: Option<SubsetIndex>,
    /// Eigenvector attaining `delta_h`, padded with zeros off its subset.
    pub witness_h: Option<Vec<f64>>,
    /// Eigenvector attaining `delta_z`, padded with zeros off its subset.
    pub witness_z: Option<Vec<f64>>,
    pub per_subset: Vec<SubsetSpectrum>,
    /// `Heuristic` as soon as any sub-tensor was solved heuristically.
    pub completeness: Completeness,
}

pub fn delta_h(a: &Tensor, cfg: &EigConfig) -> Result<DeltaReport> {
    delta_report(a, cfg, &[EigenKind::H])
}

pub fn delta_z(a: &Tensor, cfg: &EigConfig) -> Result<DeltaReport> {
    delta_report(a, cfg, &[EigenKind::Z])
}

/// Both constants in one pass over the sub-tensors.
pub fn spectral_constants(a: &Tensor, cfg: &EigConfig) -> Result<DeltaReport> {
    delta_report(a, cfg, &[EigenKind::H, EigenKind::Z])
}

struct SubsetResult {
    spectrum: SubsetSpectrum,
    h: Option<Eigenpair>,
    z: Option<Eigenpair>,
}

pub fn delta_report(a: &Tensor, cfg: &EigConfig, kinds: &[EigenKind]) -> Result<DeltaReport> {
    cfg.validate()?;
    let n = a.dim();
    if n > MAX_DIM {
        return Err(Error::invalid(format!(
            "subset enumeration is limited to n <= {MAX_DIM}, got {n}"
        )));
    }
    let subsets = SubsetIndex::all_nonempty(n);
    let results: Vec<SubsetResult> = subsets
        .into_par_iter()
        .map(|subset| -> Result<SubsetResult> {
            let sub = a.principal_subtensor(&subset)?;
            let smallest = |kind| -> Result<Option<Eigenpair>> {
                if !kinds.contains(&kind) {
                    return Ok(None);
                }
                Ok(eigenpairs(&sub, kind, cfg)?.into_iter().next())
            };
            let h = smallest(EigenKind::H)?;
            let z = smallest(EigenKind::Z)?;
            Ok(SubsetResult {
                spectrum: SubsetSpectrum {
                    completeness: completeness(subset.len()),
                    smallest_h: h.as_ref().map(|p| p.lambda),
                    smallest_z: z.as_ref().map(|p| p.lambda),
                    subset,
                },
                h,
                z,
            })
        })
        .collect::<Result<_>>()?;

    let argmin = |pick: fn(&SubsetResult) -> Option<&Eigenpair>| {
        let mut best: Option<&SubsetResult> = None;
        for r in &results {
            let Some(p) = pick(r) else { continue };
            if best.is_none_or(|b| p.lambda < pick(b).unwrap().lambda) {
                best = Some(r);
            }
        }
        best.map(|r| {
            let p = pick(r).unwrap();
            (p.lambda, r.spectrum.subset.clone(), r.spectrum.subset.pad(&p.x, n))
        })
    };
    let h = argmin(|r| r.h.as_ref());
    let z = argmin(|r| r.z.as_ref());
    let agg = if results.iter().any(|r| r.spectrum.completeness == Completeness::Heuristic) {
        Completeness::Heuristic
    } else {
        Completeness::Exhaustive
    };
    Ok(DeltaReport {
        kinds: kinds.to_vec(),
        delta_h: h.as_ref().map(|v| v.0),
        delta_z: z.as_ref().map(|v| v.0),
        argmin_subset_h: h.as_ref().map(|v| v.1.clone()),
        argmin_subset_z: z.as_ref().map(|v| v.1.clone()),
        witness_h: h.map(|v| v.2),
        witness_z: z.map(|v| v.2),
        per_subset: results.into_iter().map(|r| r.spectrum).collect(),
        completeness: agg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EigConfig {
        EigConfig::default()
    }

    #[test]
    fn diagonal_examples() {
        let d = Tensor::diagonal(4, &[2.0, 3.0]).unwrap();
        let r = spectral_constants(&d, &cfg()).unwrap();
        assert_eq!(r.delta_h, Some(2.0));
        assert_eq!(r.argmin_subset_h.unwrap().members(), &[1]);
        assert!((r.delta_z.unwrap() - 1.2).abs() < 1e-10);
        assert_eq!(r.argmin_subset_z.unwrap().members(), &[1, 2]);
        assert_eq!(r.per_subset.len(), 3);
        assert_eq!(r.completeness, Completeness::Exhaustive);
    }

    #[test]
    fn unit_tensor_examples() {
        let r = delta_h(&Tensor::unit(4, 3).unwrap(), &cfg()).unwrap();
        assert!((r.delta_h.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.delta_z, None);
        assert_eq!(r.per_subset.len(), 7);
        assert_eq!(r.completeness, Completeness::Heuristic);

        let r = delta_z(&Tensor::unit(4, 2).unwrap(), &cfg()).unwrap();
        let dz = r.delta_z.unwrap();
        assert!(dz <= 1.0);
        let min_sub = r
            .per_subset
            .iter()
            .filter_map(|s| s.smallest_z)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(dz, min_sub);
    }

    #[test]
    fn matrix_examples() {
        let a = Tensor::from_matrix(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let r = spectral_constants(&a, &cfg()).unwrap();
        assert!((r.delta_h.unwrap() - 1.0).abs() < 1e-10);
        assert!((r.delta_z.unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(r.argmin_subset_h.unwrap().members(), &[1, 2]);
    }

    #[test]
    fn witness_vector_is_padded_eigenvector() {
        let d = Tensor::diagonal(4, &[3.0, 2.0, 5.0]).unwrap();
        let r = delta_h(&d, &cfg()).unwrap();
        assert_eq!(r.delta_h, Some(2.0));
        assert_eq!(r.witness_h.unwrap(), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn rejects_large_dimension() {
        let a = Tensor::unit(2, 7).unwrap();
        assert!(delta_h(&a, &cfg()).is_err());
    }
}
