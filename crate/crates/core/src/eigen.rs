//! Real H- and Z-eigenpairs of small tensors.
//!
//! H-eigenpairs solve `A x^{m-1} = lambda x^{[m-1]}` and are reported with
//! `||x||_inf = 1`. Z-eigenpairs solve `A x^{m-1} = lambda x` with
//! `||x||_2 = 1`.
//!
//! Strategy by dimension:
//! - `n = 1`: closed form.
//! - `n = 2`: dense angular scan of `x = (cos t, sin t)` with sign-change
//!   bracketing of the defining determinant, then Newton polish. This finds
//!   every real eigenpair whose angle is isolated at the scan resolution.
//! - `n >= 3`: multi-start damped Newton on the square system augmented by
//!   a normalization equation. Completeness is not guaranteed.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{norm2, norm_inf, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EigenKind {
    H,
    Z,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub kind: EigenKind,
    pub lambda: f64,
    pub x: Vec<f64>,
    /// Infinity norm of the defining equation's mismatch.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigConfig {
    pub residual_tol: f64,
    pub dedup_tol: f64,
    pub starts: usize,
    pub max_newton_iters: usize,
    pub seed: u64,
    /// Angular resolution of the `n = 2` scan, in radians.
    pub scan_step: f64,
}

impl Default for EigConfig {
    fn default() -> Self {
        EigConfig {
            residual_tol: 1e-9,
            dedup_tol: 1e-6,
            starts: 200,
            max_newton_iters: 100,
            seed: 0,
            scan_step: 1e-4,
        }
    }
}

impl EigConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.residual_tol) || !positive(self.dedup_tol) || !positive(self.scan_step) {
            return Err(Error::invalid("eigensolver tolerances and scan step must be positive"));
        }
        if self.starts == 0 || self.max_newton_iters == 0 {
            return Err(Error::invalid("eigensolver needs at least one start and one iteration"));
        }
        Ok(())
    }
}

/// How much trust a returned eigenpair list deserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// Every real eigenvalue was located (closed form or dense scan).
    Exhaustive,
    /// Multi-start search; eigenvalues may be missing.
    Heuristic,
}

pub fn completeness(dim: usize) -> Completeness {
    if dim <= 2 {
        Completeness::Exhaustive
    } else {
        Completeness::Heuristic
    }
}

/// `||A x^{m-1} - lambda x^{[m-1]}||_inf`.
pub fn h_residual(a: &Tensor, lambda: f64, x: &[f64]) -> f64 {
    let f = a.apply_unchecked(x);
    let m = a.order() as i32;
    f.iter()
        .zip(x)
        .map(|(fi, xi)| (fi - lambda * xi.powi(m - 1)).abs())
        .fold(0.0, f64::max)
}

/// `||A x^{m-1} - lambda x||_inf`.
pub fn z_residual(a: &Tensor, lambda: f64, x: &[f64]) -> f64 {
    let f = a.apply_unchecked(x);
    f.iter().zip(x).map(|(fi, xi)| (fi - lambda * xi).abs()).fold(0.0, f64::max)
}

impl Eigenpair {
    /// Recomputes the residual from scratch against `a`.
    pub fn verify(&self, a: &Tensor) -> f64 {
        match self.kind {
            EigenKind::H => h_residual(a, self.lambda, &self.x),
            EigenKind::Z => z_residual(a, self.lambda, &self.x),
        }
    }
}

pub fn h_eigenpairs(a: &Tensor, cfg: &EigConfig) -> Result<Vec<Eigenpair>> {
    cfg.validate()?;
    let pairs = match a.dim() {
        1 => vec![one_dim_h(a)],
        2 => scan_2d(a, EigenKind::H, cfg),
        _ => multistart(a, EigenKind::H, cfg),
    };
    Ok(finish(a, EigenKind::H, pairs, cfg))
}

pub fn z_eigenpairs(a: &Tensor, cfg: &EigConfig) -> Result<Vec<Eigenpair>> {
    cfg.validate()?;
    let pairs = match a.dim() {
        1 => one_dim_z(a),
        2 => scan_2d(a, EigenKind::Z, cfg),
        _ => multistart(a, EigenKind::Z, cfg),
    };
    Ok(finish(a, EigenKind::Z, pairs, cfg))
}

/// Multi-start Newton regardless of dimension; used to cross-check the scan.
pub fn h_eigenpairs_multistart(a: &Tensor, cfg: &EigConfig) -> Result<Vec<Eigenpair>> {
    cfg.validate()?;
    Ok(finish(a, EigenKind::H, multistart(a, EigenKind::H, cfg), cfg))
}

pub fn z_eigenpairs_multistart(a: &Tensor, cfg: &EigConfig) -> Result<Vec<Eigenpair>> {
    cfg.validate()?;
    Ok(finish(a, EigenKind::Z, multistart(a, EigenKind::Z, cfg), cfg))
}

pub fn eigenpairs(a: &Tensor, kind: EigenKind, cfg: &EigConfig) -> Result<Vec<Eigenpair>> {
    match kind {
        EigenKind::H => h_eigenpairs(a, cfg),
        EigenKind::Z => z_eigenpairs(a, cfg),
    }
}

/// Smallest H-eigenvalue found, if any.
pub fn smallest_h(a: &Tensor, cfg: &EigConfig) -> Result<Option<f64>> {
    Ok(h_eigenpairs(a, cfg)?.first().map(|p| p.lambda))
}

/// Smallest Z-eigenvalue found, if any.
pub fn smallest_z(a: &Tensor, cfg: &EigConfig) -> Result<Option<f64>> {
    Ok(z_eigenpairs(a, cfg)?.first().map(|p| p.lambda))
}

fn one_dim_h(a: &Tensor) -> Eigenpair {
    Eigenpair {
        kind: EigenKind::H,
        lambda: a.diag(0),
        x: vec![1.0],
        residual: 0.0,
    }
}

fn one_dim_z(a: &Tensor) -> Vec<Eigenpair> {
    // a x^{m-1} = lambda x with x = +-1 gives lambda = a x^{m-2}
    let v = a.diag(0);
    let sign = if a.order() % 2 == 0 { 1.0 } else { -1.0 };
    [(v, 1.0), (sign * v, -1.0)]
        .into_iter()
        .map(|(lambda, x)| Eigenpair {
            kind: EigenKind::Z,
            lambda,
            x: vec![x],
            residual: 0.0,
        })
        .collect()
}

/// Normalizes, filters by residual, sorts by `(lambda, x)` and removes
/// duplicates.
fn finish(a: &Tensor, kind: EigenKind, raw: Vec<Eigenpair>, cfg: &EigConfig) -> Vec<Eigenpair> {
    let even = a.order() % 2 == 0;
    let mut pairs: Vec<Eigenpair> = raw
        .into_iter()
        .filter_map(|p| normalize(a, kind, p.lambda, p.x))
        .map(|mut p| {
            if kind == EigenKind::H || even {
                canonical_sign(&mut p.x);
            }
            p
        })
        .filter(|p| p.residual <= cfg.residual_tol)
        .collect();
    pairs.sort_by(|p, q| {
        p.lambda
            .total_cmp(&q.lambda)
            .then_with(|| lex_cmp(&p.x, &q.x))
    });
    let mut kept: Vec<Eigenpair> = Vec::new();
    for p in pairs {
        let dup = kept.iter().any(|q| {
            (p.lambda - q.lambda).abs() <= cfg.dedup_tol && sign_distance(&p.x, &q.x) <= 100.0 * cfg.dedup_tol
        });
        if !dup {
            kept.push(p);
        }
    }
    kept
}

fn lex_cmp(x: &[f64], y: &[f64]) -> std::cmp::Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.total_cmp(b))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn sign_distance(x: &[f64], y: &[f64]) -> f64 {
    let plus = x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let minus = x.iter().zip(y).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
    plus.min(minus)
}

fn canonical_sign(x: &mut [f64]) {
    let k = argmax_abs(x);
    if x[k] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

fn argmax_abs(x: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    best
}

/// Rescales a candidate to the kind's normalization and recomputes lambda
/// and the residual. Near-zero candidates are discarded.
fn normalize(a: &Tensor, kind: EigenKind, lambda: f64, x: Vec<f64>) -> Option<Eigenpair> {
    if x.iter().any(|v| !v.is_finite()) || !lambda.is_finite() {
        return None;
    }
    let big = norm_inf(&x);
    if big < 1e-8 {
        return None;
    }
    let m = a.order() as i32;
    match kind {
        EigenKind::H => {
            let x: Vec<f64> = x.iter().map(|v| v / big).collect();
            let k = argmax_abs(&x);
            let f = a.apply_unchecked(&x);
            let lambda = f[k] / x[k].powi(m - 1);
            let residual = h_residual(a, lambda, &x);
            Some(Eigenpair {
                kind,
                lambda,
                x,
                residual,
            })
        }
        EigenKind::Z => {
            let len = norm2(&x);
            let x: Vec<f64> = x.iter().map(|v| v / len).collect();
            let f = a.apply_unchecked(&x);
            let lambda = f.iter().zip(&x).map(|(fi, xi)| fi * xi).sum();
            let residual = z_residual(a, lambda, &x);
            Some(Eigenpair {
                kind,
                lambda,
                x,
                residual,
            })
        }
    }
}

fn initial_lambda(a: &Tensor, kind: EigenKind, x: &[f64]) -> f64 {
    let f = a.apply_unchecked(x);
    let m = a.order() as i32;
    match kind {
        EigenKind::H => {
            let num: f64 = f.iter().zip(x).map(|(fi, xi)| fi * xi).sum();
            let den: f64 = x.iter().map(|xi| xi.powi(m)).sum();
            if den.abs() > 1e-12 {
                num / den
            } else {
                let k = argmax_abs(x);
                f[k] / x[k].powi(m - 1)
            }
        }
        EigenKind::Z => {
            let sq: f64 = x.iter().map(|v| v * v).sum();
            f.iter().zip(x).map(|(fi, xi)| fi * xi).sum::<f64>() / sq
        }
    }
}

/// Residual of the augmented system: the eigen-equation plus one
/// normalization row (`x_k = 1` for H, `(x^T x - 1) / 2` for Z).
fn system_residual(a: &Tensor, kind: EigenKind, x: &[f64], lambda: f64, active: usize) -> Vec<f64> {
    let f = a.apply_unchecked(x);
    let m = a.order() as i32;
    let mut r: Vec<f64> = match kind {
        EigenKind::H => f.iter().zip(x).map(|(fi, xi)| fi - lambda * xi.powi(m - 1)).collect(),
        EigenKind::Z => f.iter().zip(x).map(|(fi, xi)| fi - lambda * xi).collect(),
    };
    r.push(match kind {
        EigenKind::H => x[active] - 1.0,
        EigenKind::Z => 0.5 * (x.iter().map(|v| v * v).sum::<f64>() - 1.0),
    });
    r
}

fn system_jacobian(a: &Tensor, kind: EigenKind, x: &[f64], lambda: f64, active: usize) -> DMatrix<f64> {
    let n = a.dim();
    let m = a.order() as i32;
    let jf = a.jacobian_unchecked(x);
    let mut jac = DMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            jac[(i, j)] = jf[i * n + j];
        }
        match kind {
            EigenKind::H => {
                jac[(i, i)] -= lambda * (m - 1) as f64 * x[i].powi(m - 2);
                jac[(i, n)] = -x[i].powi(m - 1);
            }
            EigenKind::Z => {
                jac[(i, i)] -= lambda;
                jac[(i, n)] = -x[i];
            }
        }
    }
    match kind {
        EigenKind::H => jac[(n, active)] = 1.0,
        EigenKind::Z => {
            for j in 0..n {
                jac[(n, j)] = x[j];
            }
        }
    }
    jac
}

pub(crate) fn solve_linear(jac: DMatrix<f64>, rhs: DVector<f64>) -> Option<DVector<f64>> {
    if let Some(sol) = jac.clone().lu().solve(&rhs) {
        if sol.iter().all(|v| v.is_finite()) {
            return Some(sol);
        }
    }
    let sol = jac.svd(true, true).solve(&rhs, 1e-14).ok()?;
    sol.iter().all(|v| v.is_finite()).then_some(sol)
}

/// Damped Newton on the augmented eigen-system from `(x0, lambda0)`.
fn newton(a: &Tensor, kind: EigenKind, x0: &[f64], lambda0: f64, max_iters: usize) -> Option<(Vec<f64>, f64)> {
    let n = a.dim();
    let mut x = x0.to_vec();
    let mut lambda = lambda0;
    let mut active = argmax_abs(&x);
    if kind == EigenKind::H {
        let pivot = x[active];
        if pivot.abs() < 1e-8 {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= pivot);
    }
    let scale = 1.0 + a.max_row_abs_sum();
    let mut res = system_residual(a, kind, &x, lambda, active);
    let mut rnorm = norm_inf(&res);
    for _ in 0..max_iters {
        if rnorm <= 1e-15 * scale {
            break;
        }
        let jac = system_jacobian(a, kind, &x, lambda, active);
        let rhs = DVector::from_iterator(n + 1, res.iter().map(|v| -v));
        let step = solve_linear(jac, rhs)?;
        let mut t = 1.0;
        let mut accepted = None;
        while t >= 1.0 / 4096.0 {
            let xt: Vec<f64> = x.iter().zip(step.iter()).map(|(xi, di)| xi + t * di).collect();
            let lt = lambda + t * step[n];
            let rt = system_residual(a, kind, &xt, lt, active);
            let nt = norm_inf(&rt);
            if nt.is_finite() && nt <= (1.0 - 1e-4 * t) * rnorm {
                accepted = Some((xt, lt, rt, nt));
                break;
            }
            t *= 0.5;
        }
        let Some((xt, lt, rt, nt)) = accepted else {
            break;
        };
        let moved = t * step.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        x = xt;
        lambda = lt;
        res = rt;
        rnorm = nt;
        if kind == EigenKind::H {
            // keep ||x||_inf = 1 with x_active = 1
            let k = argmax_abs(&x);
            if x[k].abs() > x[active].abs() * (1.0 + 1e-12) || x[active] <= 0.0 {
                let pivot = x[k];
                if pivot.abs() < 1e-8 {
                    return None;
                }
                x.iter_mut().for_each(|v| *v /= pivot);
                active = k;
                res = system_residual(a, kind, &x, lambda, active);
                rnorm = norm_inf(&res);
            }
        }
        if moved <= 1e-15 {
            break;
        }
    }
    Some((x, lambda))
}

fn vertex_starts(n: usize, both_signs: bool) -> Vec<Vec<f64>> {
    let total = 3usize.pow(n as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut c = code;
        let x: Vec<f64> = (0..n)
            .map(|_| {
                let d = c % 3;
                c /= 3;
                d as f64 - 1.0
            })
            .collect();
        let first = x.iter().find(|v| **v != 0.0).copied().unwrap_or(0.0);
        if both_signs || first > 0.0 {
            out.push(x);
        }
    }
    out
}

fn multistart(a: &Tensor, kind: EigenKind, cfg: &EigConfig) -> Vec<Eigenpair> {
    let n = a.dim();
    let both_signs = kind == EigenKind::Z && a.order() % 2 == 1;
    let mut starts = if n <= 6 { vertex_starts(n, both_signs) } else { Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.starts {
        let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        starts.push(x);
    }
    starts
        .par_iter()
        .filter_map(|x0| {
            let big = norm_inf(x0);
            if big < 1e-8 {
                return None;
            }
            let x0: Vec<f64> = match kind {
                EigenKind::H => x0.iter().map(|v| v / big).collect(),
                EigenKind::Z => {
                    let len = norm2(x0);
                    x0.iter().map(|v| v / len).collect()
                }
            };
            let l0 = initial_lambda(a, kind, &x0);
            let (x, lambda) = newton(a, kind, &x0, l0, cfg.max_newton_iters)?;
            Some(Eigenpair {
                kind,
                lambda,
                x,
                residual: f64::NAN,
            })
        })
        .collect()
}

/// Scalar whose zeros on `x = (cos t, sin t)` are exactly the eigenvector
/// directions: `f1 s^{m-1} - f2 c^{m-1}` for H, `c f2 - s f1` for Z.
fn angular_det(a: &Tensor, kind: EigenKind, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let f = a.apply_unchecked(&[c, s]);
    let m = a.order() as i32;
    match kind {
        EigenKind::H => f[0] * s.powi(m - 1) - f[1] * c.powi(m - 1),
        EigenKind::Z => c * f[1] - s * f[0],
    }
}

fn angular_lambda(a: &Tensor, kind: EigenKind, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    initial_lambda(a, kind, &[c, s])
}

fn scan_2d(a: &Tensor, kind: EigenKind, cfg: &EigConfig) -> Vec<Eigenpair> {
    use std::f64::consts::PI;
    let steps = (PI / cfg.scan_step).ceil() as usize;
    let dt = PI / steps as f64;
    let vals: Vec<f64> = (0..steps).map(|k| angular_det(a, kind, k as f64 * dt)).collect();
    // det(t + pi) = det(t) for H; (-1)^m det(t) for Z
    let wrap = if kind == EigenKind::Z && a.order() % 2 == 1 { -vals[0] } else { vals[0] };
    let value_at = |k: usize| if k == steps { wrap } else { vals[k] };
    let scale = vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tensor_scale = a.max_row_abs_sum();

    let mut thetas = Vec::new();
    if scale <= 1e-13 * tensor_scale.max(1e-300) || tensor_scale == 0.0 {
        // every direction is an eigenvector; report the extremes of lambda(t)
        thetas.extend(lambda_extremes(a, kind, steps, dt));
    } else {
        for k in 0..steps {
            let (v0, v1) = (value_at(k), value_at(k + 1));
            if v0 == 0.0 {
                thetas.push(k as f64 * dt);
            } else if v0 * v1 < 0.0 {
                thetas.push(bisect(|t| angular_det(a, kind, t), k as f64 * dt, (k + 1) as f64 * dt, v0));
            }
            // tangential roots show up as small local minima of |det|
            let prev = if k == 0 { wrap.abs() } else { vals[k - 1].abs() };
            let cur = v0.abs();
            if cur <= prev && cur <= v1.abs() && cur > 0.0 && cur <= 1e-3 * scale {
                thetas.push(golden_min(|t| angular_det(a, kind, t).abs(), (k as f64 - 1.0) * dt, (k as f64 + 1.0) * dt));
            }
        }
    }

    let mut out = Vec::new();
    for theta in thetas {
        let (s, c) = theta.sin_cos();
        let x = vec![c, s];
        let lambda = angular_lambda(a, kind, theta);
        if let Some((xp, lp)) = newton(a, kind, &x, lambda, cfg.max_newton_iters) {
            out.push(Eigenpair {
                kind,
                lambda: lp,
                x: xp,
                residual: f64::NAN,
            });
        }
        out.push(Eigenpair {
            kind,
            lambda,
            x: x.clone(),
            residual: f64::NAN,
        });
        if kind == EigenKind::Z {
            let sign = if a.order() % 2 == 0 { 1.0 } else { -1.0 };
            out.push(Eigenpair {
                kind,
                lambda: sign * lambda,
                x: x.iter().map(|v| -v).collect(),
                residual: f64::NAN,
            });
        }
    }
    out
}

/// Local extrema of `lambda(t)` over a half-turn, refined by golden section.
fn lambda_extremes(a: &Tensor, kind: EigenKind, steps: usize, dt: f64) -> Vec<f64> {
    let lam: Vec<f64> = (0..steps).map(|k| angular_lambda(a, kind, k as f64 * dt)).collect();
    let odd_z = kind == EigenKind::Z && a.order() % 2 == 1;
    let at = |k: isize| -> f64 {
        let len = steps as isize;
        let wrapped = k.rem_euclid(len) as usize;
        let flip = odd_z && (k < 0 || k >= len);
        if flip {
            -lam[wrapped]
        } else {
            lam[wrapped]
        }
    };
    let lo_val = lam.iter().copied().fold(f64::INFINITY, f64::min);
    let hi_val = lam.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi_val - lo_val <= 1e-13 * (1.0 + a.max_row_abs_sum()) {
        return vec![0.0];
    }
    let mut out = Vec::new();
    for k in 0..steps as isize {
        let (p, c, n) = (at(k - 1), at(k), at(k + 1));
        let lo = (k as f64 - 1.0) * dt;
        let hi = (k as f64 + 1.0) * dt;
        if c <= p && c < n {
            out.push(golden_min(|t| angular_lambda(a, kind, t), lo, hi));
        }
        if c >= p && c > n {
            out.push(golden_min(|t| -angular_lambda(a, kind, t), lo, hi));
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|x, y| (*x - *y).abs() < 0.5 * dt);
    out
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..100 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
