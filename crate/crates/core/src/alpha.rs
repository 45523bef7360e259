//! The operators `T_A`, `F_A` and the constants
//! `alpha(op) = min_{||x||_inf = 1} max_i x_i op(x)_i`.
//!
//! The unit sphere of the infinity norm is the union of the faces
//! `{x_j = s, |x_k| <= 1}`. For even `m` both objectives are even in `x`,
//! so only the `s = +1` faces are searched; odd `m` needs all `2n`.
//!
//! Grid-certified mode evaluates a uniform grid on every face, polishes the
//! best local minima with Nelder-Mead, and then bounds the objective from
//! below on every grid cell with interval arithmetic. Cells whose bound is
//! too weak are split best-first until the bound is within the requested
//! gap of the attained value or the split budget runs out. The reported
//! value is always attained by the reported minimizer.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{odd_real_root, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorKind {
    T,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaMode {
    GridCertified,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaConfig {
    pub mode: AlphaMode,
    pub grid_resolution: f64,
    /// Nelder-Mead iterations per local refinement.
    pub refine_iters: usize,
    /// Random starts in heuristic mode.
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
    /// Target width of the certified interval `[lower_bound, value]`.
    pub gap_target: f64,
    /// Maximum number of cell splits spent tightening the lower bound.
    pub bound_budget: usize,
}

impl Default for AlphaConfig {
    fn default() -> Self {
        AlphaConfig {
            mode: AlphaMode::GridCertified,
            grid_resolution: 0.02,
            refine_iters: 200,
            starts: 500,
            seed: 0,
            tol: 1e-8,
            gap_target: 1e-3,
            bound_budget: 20_000,
        }
    }
}

impl AlphaConfig {
    pub fn heuristic() -> Self {
        AlphaConfig {
            mode: AlphaMode::Heuristic,
            ..AlphaConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.grid_resolution > 0.0 && self.grid_resolution <= 2.0) {
            return Err(Error::invalid(format!(
                "grid resolution must lie in (0, 2], got {}",
                self.grid_resolution
            )));
        }
        if self.starts == 0 || self.refine_iters == 0 {
            return Err(Error::invalid("alpha search needs at least one start and one iteration"));
        }
        if !(self.tol > 0.0 && self.gap_target > 0.0) {
            return Err(Error::invalid("alpha tolerances must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    GridCertified,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub value: f64,
    pub minimizer: Vec<f64>,
    pub objective_kind: OperatorKind,
    pub certification: Certification,
    pub grid_resolution: Option<f64>,
    /// Certified lower bound on the true minimum (grid mode only).
    pub lower_bound: Option<f64>,
    /// `value - lower_bound`.
    pub grid_gap: Option<f64>,
}

/// Largest dimension accepted in grid-certified mode.
pub const MAX_GRID_DIM: usize = 3;

fn require_even(a: &Tensor) -> Result<()> {
    if a.order() % 2 != 0 {
        return Err(Error::invalid(format!("F_A needs an even order, got {}", a.order())));
    }
    Ok(())
}

fn check_len(a: &Tensor, x: &[f64]) -> Result<()> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// `T_A(x) = ||x||_2^{2-m} A x^{m-1}`, with `T_A(0) = 0`.
pub fn t_operator(a: &Tensor, x: &[f64]) -> Result<Vec<f64>> {
    check_len(a, x)?;
    Ok(t_unchecked(a, x))
}

/// `F_A(x) = (A x^{m-1})^{[1/(m-1)]}` with sign-preserving real roots.
pub fn f_operator(a: &Tensor, x: &[f64]) -> Result<Vec<f64>> {
    require_even(a)?;
    check_len(a, x)?;
    Ok(f_unchecked(a, x))
}

fn t_unchecked(a: &Tensor, x: &[f64]) -> Vec<f64> {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    if sq == 0.0 {
        return vec![0.0; x.len()];
    }
    let scale = norm_sq_power(sq, a.order());
    a.apply_unchecked(x).into_iter().map(|v| v * scale).collect()
}

fn f_unchecked(a: &Tensor, x: &[f64]) -> Vec<f64> {
    let k = a.order() as i64 - 1;
    a.apply_unchecked(x).into_iter().map(|v| odd_real_root(v, k)).collect()
}

/// `(||x||_2^2)^{(2-m)/2}`.
fn norm_sq_power(sq: f64, order: usize) -> f64 {
    if order % 2 == 0 {
        sq.powi((2 - order as i32) / 2)
    } else {
        sq.powf((2.0 - order as f64) / 2.0)
    }
}

pub fn operator(a: &Tensor, kind: OperatorKind, x: &[f64]) -> Result<Vec<f64>> {
    match kind {
        OperatorKind::T => t_operator(a, x),
        OperatorKind::F => f_operator(a, x),
    }
}

/// `max_i x_i op(x)_i`.
pub fn objective(a: &Tensor, kind: OperatorKind, x: &[f64]) -> Result<f64> {
    let op = operator(a, kind, x)?;
    Ok(max_product(x, &op))
}

fn max_product(x: &[f64], op: &[f64]) -> f64 {
    x.iter().zip(op).map(|(a, b)| a * b).fold(f64::NEG_INFINITY, f64::max)
}

/// Row-abs-sum bound on `||op||_inf`, raised to `1/(m-1)` for `F`.
pub fn operator_norm_bound(a: &Tensor, kind: OperatorKind) -> Result<f64> {
    let widest = a.max_row_abs_sum();
    match kind {
        OperatorKind::T => Ok(widest),
        OperatorKind::F => {
            require_even(a)?;
            Ok(widest.powf(1.0 / (a.order() - 1) as f64))
        }
    }
}

pub fn alpha_t(a: &Tensor, cfg: &AlphaConfig) -> Result<AlphaResult> {
    alpha(a, OperatorKind::T, cfg)
}

pub fn alpha_f(a: &Tensor, cfg: &AlphaConfig) -> Result<AlphaResult> {
    alpha(a, OperatorKind::F, cfg)
}

pub fn alpha(a: &Tensor, kind: OperatorKind, cfg: &AlphaConfig) -> Result<AlphaResult> {
    alpha_with_target(a, kind, cfg, GapTarget::Absolute(cfg.gap_target))
}

/// How far the lower bound should be pushed.
#[derive(Debug, Clone, Copy)]
pub(crate) enum GapTarget {
    Absolute(f64),
    /// Only the sign matters: stop once the bound is above `value / 2`
    /// (positive values) or above `-tol` (non-positive values).
    Sign,
}

pub(crate) fn alpha_with_target(a: &Tensor, kind: OperatorKind, cfg: &AlphaConfig, target: GapTarget) -> Result<AlphaResult> {
    cfg.validate()?;
    if kind == OperatorKind::F {
        require_even(a)?;
    }
    let obj = Objective::new(a, kind);
    match cfg.mode {
        AlphaMode::GridCertified => {
            if a.dim() > MAX_GRID_DIM {
                return Err(Error::invalid(format!(
                    "grid-certified mode supports n <= {MAX_GRID_DIM}, got {}; use heuristic mode",
                    a.dim()
                )));
            }
            Ok(grid_search(&obj, cfg, target))
        }
        AlphaMode::Heuristic => Ok(heuristic_search(&obj, cfg)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Face {
    axis: usize,
    sign: f64,
}

struct Objective<'a> {
    a: &'a Tensor,
    kind: OperatorKind,
    /// Per-row Lipschitz constant of `x -> (A x^{m-1})_i` on the unit cube
    /// with respect to the infinity norm.
    row_lipschitz: Vec<f64>,
    even: bool,
}

impl<'a> Objective<'a> {
    fn new(a: &'a Tensor, kind: OperatorKind) -> Self {
        let k = (a.order() - 1) as f64;
        Objective {
            a,
            kind,
            row_lipschitz: a.row_abs_sums().into_iter().map(|s| k * s).collect(),
            even: a.order() % 2 == 0,
        }
    }

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let op = match self.kind {
            OperatorKind::T => t_unchecked(self.a, x),
            OperatorKind::F => f_unchecked(self.a, x),
        };
        max_product(x, &op)
    }

    fn faces(&self) -> Vec<Face> {
        let signs: &[f64] = if self.even { &[1.0] } else { &[1.0, -1.0] };
        signs
            .iter()
            .flat_map(|&sign| (0..self.dim()).map(move |axis| Face { axis, sign }))
            .collect()
    }

    fn embed(&self, face: Face, y: &[f64]) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim());
        x.extend_from_slice(&y[..face.axis]);
        x.push(face.sign);
        x.extend_from_slice(&y[face.axis..]);
        x
    }

    fn eval_face(&self, face: Face, y: &[f64]) -> (f64, Vec<f64>) {
        let clamped: Vec<f64> = y.iter().map(|v| v.clamp(-1.0, 1.0)).collect();
        let x = self.embed(face, &clamped);
        (self.eval(&x), x)
    }

    /// Lower bound of the objective over the face box `center +- radius`,
    /// together with the objective at the center.
    fn cell_bound(&self, face: Face, center: &[f64], radius: f64) -> (f64, f64, Vec<f64>) {
        let xc = self.embed(face, center);
        let f = self.a.apply_unchecked(&xc);
        let value = max_product(&xc, &self.op_from_f(&xc, &f));
        let m = self.a.order();
        let mut xs = Vec::with_capacity(xc.len());
        for (i, &c) in xc.iter().enumerate() {
            if i == face.axis {
                xs.push(Interval::point(c));
            } else {
                xs.push(Interval::new((c - radius).max(-1.0), (c + radius).min(1.0)));
            }
        }
        let fs: Vec<Interval> = f
            .iter()
            .zip(&self.row_lipschitz)
            .map(|(&v, &l)| Interval::new(v - l * radius, v + l * radius))
            .collect();
        let ops: Vec<Interval> = match self.kind {
            OperatorKind::T => {
                let sq = xs.iter().fold(Interval::point(0.0), |acc, x| acc.add(x.square()));
                // (2-m)/2 <= 0, so the power is decreasing in sq
                let phi = Interval::new(norm_sq_power(sq.hi, m), norm_sq_power(sq.lo, m));
                fs.iter().map(|fi| fi.mul(phi)).collect()
            }
            OperatorKind::F => {
                let k = m as i64 - 1;
                fs.iter()
                    .map(|fi| Interval::new(odd_real_root(fi.lo, k), odd_real_root(fi.hi, k)))
                    .collect()
            }
        };
        let lb = xs
            .iter()
            .zip(&ops)
            .map(|(x, op)| x.mul(*op).lo)
            .fold(f64::NEG_INFINITY, f64::max);
        let slack = 1e-13 * (1.0 + self.row_lipschitz.iter().fold(0.0f64, |a, b| a.max(*b)));
        (lb - slack, value, xc)
    }

    fn op_from_f(&self, x: &[f64], f: &[f64]) -> Vec<f64> {
        match self.kind {
            OperatorKind::T => {
                let sq: f64 = x.iter().map(|v| v * v).sum();
                let s = norm_sq_power(sq, self.a.order());
                f.iter().map(|v| v * s).collect()
            }
            OperatorKind::F => {
                let k = self.a.order() as i64 - 1;
                f.iter().map(|&v| odd_real_root(v, k)).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    fn add(self, o: Interval) -> Interval {
        Interval::new(self.lo + o.lo, self.hi + o.hi)
    }

    fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Interval::new(
            p.iter().copied().fold(f64::INFINITY, f64::min),
            p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }

    fn square(self) -> Interval {
        let (a, b) = (self.lo * self.lo, self.hi * self.hi);
        if self.lo <= 0.0 && self.hi >= 0.0 {
            Interval::new(0.0, a.max(b))
        } else {
            Interval::new(a.min(b), a.max(b))
        }
    }
}

/// Best point seen so far; ties are broken towards the lexicographically
/// smaller vector.
#[derive(Debug, Clone)]
struct Best {
    value: f64,
    x: Vec<f64>,
}

impl Best {
    fn none() -> Self {
        Best {
            value: f64::INFINITY,
            x: Vec::new(),
        }
    }

    fn offer(&mut self, value: f64, x: &[f64]) {
        let better = match value.total_cmp(&self.value) {
            Ordering::Less => true,
            Ordering::Equal => lex_less(x, &self.x),
            Ordering::Greater => false,
        };
        if better {
            self.value = value;
            self.x = x.to_vec();
        }
    }

    fn merge(mut self, other: Best) -> Best {
        if !other.x.is_empty() {
            self.offer(other.value, &other.x);
        }
        self
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    if b.is_empty() {
        return true;
    }
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    false
}

struct Cell {
    lb: f64,
    face: Face,
    center: Vec<f64>,
    radius: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.lb.total_cmp(&other.lb) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    // BinaryHeap is a max-heap; the weakest (smallest) bound must pop first
    fn cmp(&self, other: &Self) -> Ordering {
        other.lb.total_cmp(&self.lb)
    }
}

fn grid_axis(resolution: f64) -> (usize, f64) {
    let mut intervals = (2.0 / resolution).ceil() as usize;
    if intervals % 2 == 1 {
        intervals += 1;
    }
    (intervals, 2.0 / intervals as f64)
}

fn grid_coord(l: usize, intervals: usize) -> f64 {
    (2.0 * l as f64 - intervals as f64) / intervals as f64
}

fn grid_search(obj: &Objective, cfg: &AlphaConfig, target: GapTarget) -> AlphaResult {
    let n = obj.dim();
    let d = n - 1;
    let (intervals, step) = grid_axis(cfg.grid_resolution);
    let per_axis = intervals + 1;
    let per_face = per_axis.pow(d as u32);
    let faces = obj.faces();
    let total = faces.len() * per_face;

    let decode = |idx: usize| -> (Face, Vec<usize>) {
        let face = faces[idx / per_face];
        let mut rest = idx % per_face;
        let mut ls = vec![0usize; d];
        for l in ls.iter_mut().rev() {
            *l = rest % per_axis;
            rest /= per_axis;
        }
        (face, ls)
    };

    // one pass: objective at each grid point and a bound on its cell
    let evals: Vec<(f64, f64)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let (face, ls) = decode(idx);
            let y: Vec<f64> = ls.iter().map(|&l| grid_coord(l, intervals)).collect();
            let (lb, value, _) = obj.cell_bound(face, &y, 0.5 * step);
            (value, lb)
        })
        .collect();

    let mut best = Best::none();
    let mut minima: Vec<usize> = Vec::new();
    for idx in 0..total {
        let (face, ls) = decode(idx);
        let value = evals[idx].0;
        let y: Vec<f64> = ls.iter().map(|&l| grid_coord(l, intervals)).collect();
        best.offer(value, &obj.embed(face, &y));
        let mut stride = 1;
        let mut local_min = true;
        for p in (0..d).rev() {
            let l = ls[p];
            if l > 0 && evals[idx - stride].0 < value {
                local_min = false;
            }
            if l + 1 < per_axis && evals[idx + stride].0 < value {
                local_min = false;
            }
            stride *= per_axis;
        }
        if local_min {
            minima.push(idx);
        }
    }
    minima.sort_by(|&i, &j| evals[i].0.total_cmp(&evals[j].0).then(i.cmp(&j)));
    minima.truncate(8);

    let refined = minima
        .par_iter()
        .map(|&idx| {
            let (face, ls) = decode(idx);
            let y: Vec<f64> = ls.iter().map(|&l| grid_coord(l, intervals)).collect();
            refine(obj, face, &y, step, cfg.refine_iters)
        })
        .reduce(Best::none, Best::merge);
    best = best.merge(refined);

    // best-first tightening of the lower bound
    let mut heap: BinaryHeap<Cell> = (0..total)
        .map(|idx| {
            let (face, ls) = decode(idx);
            Cell {
                lb: evals[idx].1,
                face,
                center: ls.iter().map(|&l| grid_coord(l, intervals)).collect(),
                radius: 0.5 * step,
            }
        })
        .collect();
    let mut splits = 0;
    while let Some(top) = heap.peek() {
        let goal = match target {
            GapTarget::Absolute(tau) => best.value - tau,
            GapTarget::Sign if best.value > cfg.tol => 0.5 * best.value,
            GapTarget::Sign => -cfg.tol,
        };
        if top.lb >= goal || splits >= cfg.bound_budget || d == 0 {
            break;
        }
        let cell = heap.pop().unwrap();
        splits += 1;
        let r = cell.radius / 3.0;
        let children: Vec<Vec<f64>> = (0..3usize.pow(d as u32))
            .map(|code| {
                let mut c = code;
                cell.center
                    .iter()
                    .map(|&v| {
                        let off = (c % 3) as f64 - 1.0;
                        c /= 3;
                        v + 2.0 * r * off
                    })
                    .collect::<Vec<f64>>()
            })
            // children of boundary cells may fall outside the face
            .filter(|c: &Vec<f64>| c.iter().all(|v| v.abs() - r <= 1.0))
            .map(|c| c.iter().map(|v| v.clamp(-1.0, 1.0)).collect())
            .collect();
        for child in children {
            let (lb, value, x) = obj.cell_bound(cell.face, &child, r);
            best.offer(value, &x);
            heap.push(Cell {
                lb,
                face: cell.face,
                center: child,
                radius: r,
            });
        }
    }
    let lower = heap.peek().map_or(best.value, |c| c.lb).min(best.value);
    AlphaResult {
        value: best.value,
        minimizer: best.x,
        objective_kind: obj.kind,
        certification: Certification::GridCertified,
        grid_resolution: Some(step),
        lower_bound: Some(lower),
        grid_gap: Some(best.value - lower),
    }
}

/// Nelder-Mead on a face, restarted from its own optimum and following the
/// iterate onto neighbouring faces when it reaches a face boundary.
fn refine(obj: &Objective, face: Face, y0: &[f64], step: f64, iters: usize) -> Best {
    let mut best = Best::none();
    let (v0, x0) = obj.eval_face(face, y0);
    best.offer(v0, &x0);
    if y0.is_empty() {
        return best;
    }
    let mut face = face;
    let mut y = y0.to_vec();
    for _switch in 0..4 {
        let mut simplex_step = step;
        let mut current = obj.eval_face(face, &y).0;
        for _restart in 0..8 {
            let f = |p: &[f64]| obj.eval_face(face, p).0;
            let (yn, vn) = nelder_mead(&f, &y, simplex_step, iters);
            let improved = vn < current - 1e-15 * (1.0 + current.abs());
            if vn <= current {
                y = yn.iter().map(|v| v.clamp(-1.0, 1.0)).collect();
                current = vn;
            }
            if !improved {
                if simplex_step < 1e-6 {
                    break;
                }
                simplex_step *= 0.1;
            }
        }
        let x = obj.embed(face, &y);
        best.offer(current, &x);
        // hop onto another face touched by the iterate
        let next = (0..x.len())
            .filter(|&k| k != face.axis)
            .find(|&k| x[k].abs() >= 1.0 - 1e-12);
        let Some(k) = next else { break };
        let mut x = x;
        let mut sign = x[k].signum();
        if obj.even && sign < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
            sign = 1.0;
        }
        face = Face { axis: k, sign };
        y = x.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| *v).collect();
    }
    best
}

fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, start: &[f64], step: f64, max_iters: usize) -> (Vec<f64>, f64) {
    let d = start.len();
    let mut pts: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..d {
        let mut p = start.to_vec();
        p[i] += if p[i] + step <= 1.0 { step } else { -step };
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
    for _ in 0..max_iters {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        let spread = vals[d] - vals[0];
        let size = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= 1e-16 * (1.0 + vals[0].abs()) && size <= 1e-13 {
            break;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|k| pts[..d].iter().map(|p| p[k]).sum::<f64>() / d as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[d])
                .map(|(c, w)| (c + t * (c - w)).clamp(-1.0, 1.0))
                .collect()
        };
        let xr = along(1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = f(&xe);
            if fe < fr {
                pts[d] = xe;
                vals[d] = fe;
            } else {
                pts[d] = xr;
                vals[d] = fr;
            }
        } else if fr < vals[d - 1] {
            pts[d] = xr;
            vals[d] = fr;
        } else {
            let (xc, fc) = if fr < vals[d] {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < vals[d].min(fr) {
                pts[d] = xc;
                vals[d] = fc;
            } else {
                for i in 1..=d {
                    let shrunk: Vec<f64> = pts[i].iter().zip(&pts[0]).map(|(p, b)| b + 0.5 * (p - b)).collect();
                    vals[i] = f(&shrunk);
                    pts[i] = shrunk;
                }
            }
        }
    }
    let best = (0..=d).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    (pts[best].clone(), vals[best])
}

fn heuristic_search(obj: &Objective, cfg: &AlphaConfig) -> AlphaResult {
    let n = obj.dim();
    let faces = obj.faces();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts: Vec<(Face, Vec<f64>)> = Vec::new();
    // sign vertices and face centres
    for &face in &faces {
        starts.push((face, vec![0.0; n - 1]));
        for code in 0..(1usize << (n - 1).min(10)) {
            let y = (0..n - 1).map(|b| if code >> b & 1 == 1 { 1.0 } else { -1.0 }).collect();
            starts.push((face, y));
        }
    }
    for _ in 0..cfg.starts {
        let face = faces[rng.random_range(0..faces.len())];
        let y = (0..n - 1).map(|_| rng.random_range(-1.0..=1.0)).collect();
        starts.push((face, y));
    }
    let best = starts
        .par_iter()
        .map(|(face, y)| refine(obj, *face, y, 0.1, cfg.refine_iters))
        .reduce(Best::none, Best::merge);
    AlphaResult {
        value: best.value,
        minimizer: best.x,
        objective_kind: obj.kind,
        certification: Certification::Heuristic,
        grid_resolution: None,
        lower_bound: None,
        grid_gap: None,
    }
}
