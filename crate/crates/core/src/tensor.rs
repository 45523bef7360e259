//! Dense real hypermatrices of order `m` and dimension `n`.
//!
//! Entries are stored row-major over index tuples `(i1, ..., im)` with `i1`
//! varying slowest. Indices are 0-based in code; documentation and file
//! formats speak of 1-based indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `m`-order `n`-dimensional real tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TensorFile", into = "TensorFile")]
pub struct Tensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

/// On-disk layout: `{ "m": .., "n": .., "entries": [..] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorFile {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<f64>,
}

impl TryFrom<TensorFile> for Tensor {
    type Error = Error;

    fn try_from(file: TensorFile) -> Result<Self> {
        Tensor::new(file.m, file.n, file.entries)
    }
}

impl From<Tensor> for TensorFile {
    fn from(t: Tensor) -> Self {
        TensorFile {
            m: t.order,
            n: t.dim,
            entries: t.entries,
        }
    }
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    let mut len: usize = 1;
    for _ in 0..order {
        len = len
            .checked_mul(dim)
            .ok_or_else(|| Error::invalid(format!("tensor of order {order} and dimension {dim} is too large")))?;
    }
    Ok(len)
}

impl Tensor {
    pub fn new(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self> {
        if order < 2 {
            return Err(Error::invalid(format!("order must be at least 2, got {order}")));
        }
        if dim < 1 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let len = checked_len(order, dim)?;
        if entries.len() != len {
            return Err(Error::invalid(format!(
                "order {order} dimension {dim} tensor needs {len} entries, got {}",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("entry {pos} is not finite")));
        }
        Ok(Tensor { order, dim, entries })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Self::filled(order, dim, 0.0)
    }

    pub fn filled(order: usize, dim: usize, value: f64) -> Result<Self> {
        let len = checked_len(order, dim)?;
        Tensor::new(order, dim, vec![value; len])
    }

    /// Diagonal tensor with `a_{i...i} = diag[i]`.
    pub fn diagonal(order: usize, diag: &[f64]) -> Result<Self> {
        let mut t = Self::zeros(order, diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            let k = t.diagonal_offset(i);
            t.entries[k] = d;
        }
        if t.entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("diagonal entries must be finite"));
        }
        Ok(t)
    }

    /// The unit tensor `I`, acting as `I x^{m-1} = x^{[m-1]}`.
    pub fn unit(order: usize, dim: usize) -> Result<Self> {
        Self::diagonal(order, &vec![1.0; dim])
    }

    /// Order-2 tensor from matrix rows.
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square"));
        }
        Tensor::new(2, n, rows.concat())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn offset(&self, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    fn diagonal_offset(&self, i: usize) -> usize {
        // (n^m - 1) / (n - 1) stride, written without division for n = 1
        let mut stride = 0;
        for _ in 0..self.order {
            stride = stride * self.dim + 1;
        }
        i * stride
    }

    /// Entry at a 0-based index tuple.
    pub fn get(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.order, "index tuple length must equal the order");
        self.entries[self.offset(index)]
    }

    /// Diagonal entry `a_{i...i}` (0-based `i`).
    pub fn diag(&self, i: usize) -> f64 {
        self.entries[self.diagonal_offset(i)]
    }

    pub(crate) fn set_diag(&mut self, i: usize, value: f64) {
        let k = self.diagonal_offset(i);
        self.entries[k] = value;
    }

    pub fn diagonal_entries(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.diag(i)).collect()
    }

    pub fn min_diagonal(&self) -> f64 {
        self.diagonal_entries().into_iter().fold(f64::INFINITY, f64::min)
    }

    fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// `A x^{m-1}`, with `(A x^{m-1})_i = sum a_{i i2 ... im} x_{i2} ... x_{im}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut buf = self.contract_last(&self.entries, x);
        for _ in 2..self.order {
            buf = self.contract_last(&buf, x);
        }
        debug_assert_eq!(buf.len(), n);
        buf
    }

    fn contract_last(&self, data: &[f64], x: &[f64]) -> Vec<f64> {
        data.chunks_exact(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Jacobian of `x -> A x^{m-1}`, row-major `n x n`.
    pub fn jacobian(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        Ok(self.jacobian_unchecked(x))
    }

    pub(crate) fn jacobian_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let k = self.order - 1;
        let mut jac = vec![0.0; n * n];
        let mut tail = vec![0usize; k];
        let mut prefix = vec![1.0; k + 1];
        let mut suffix = vec![1.0; k + 1];
        for (flat, &a) in self.entries.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let i = flat / n.pow(k as u32);
            let mut rest = flat % n.pow(k as u32);
            for p in (0..k).rev() {
                tail[p] = rest % n;
                rest /= n;
            }
            for p in 0..k {
                prefix[p + 1] = prefix[p] * x[tail[p]];
            }
            for p in (0..k).rev() {
                suffix[p] = suffix[p + 1] * x[tail[p]];
            }
            for p in 0..k {
                jac[i * n + tail[p]] += a * prefix[p] * suffix[p + 1];
            }
        }
        jac
    }

    /// Principal sub-tensor `A_r^J`, re-indexed by position in `J`.
    pub fn principal_subtensor(&self, subset: &SubsetIndex) -> Result<Tensor> {
        subset.check_dim(self.dim)?;
        let idx: Vec<usize> = subset.positions().collect();
        let r = idx.len();
        let len = checked_len(self.order, r)?;
        let mut entries = Vec::with_capacity(len);
        let mut local = vec![0usize; self.order];
        let mut global = vec![0usize; self.order];
        for _ in 0..len {
            for (g, &l) in global.iter_mut().zip(&local) {
                *g = idx[l];
            }
            entries.push(self.entries[self.offset(&global)]);
            for p in (0..self.order).rev() {
                local[p] += 1;
                if local[p] < r {
                    break;
                }
                local[p] = 0;
            }
        }
        Tensor::new(self.order, r, entries)
    }

    /// `sum_{i2..im} |a_{i i2 ... im}|` for every row `i`.
    pub fn row_abs_sums(&self) -> Vec<f64> {
        let row_len = self.entries.len() / self.dim;
        self.entries
            .chunks_exact(row_len)
            .map(|row| row.iter().map(|v| v.abs()).sum())
            .collect()
    }

    pub fn max_row_abs_sum(&self) -> f64 {
        self.row_abs_sums().into_iter().fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Tensor {
        Tensor {
            order: self.order,
            dim: self.dim,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// `A + shift * I`.
    pub fn shift_diagonal(&self, shift: f64) -> Tensor {
        let mut out = self.clone();
        for i in 0..self.dim {
            let k = out.diagonal_offset(i);
            out.entries[k] += shift;
        }
        out
    }

    /// Averages every entry over all permutations of its index tuple.
    ///
    /// Never applied implicitly; tensors are used exactly as given elsewhere.
    pub fn symmetrize(&self) -> Tensor {
        let n = self.dim;
        let mut out = vec![0.0; self.entries.len()];
        let mut seen = vec![false; self.entries.len()];
        let mut index = vec![0usize; self.order];
        for flat in 0..self.entries.len() {
            if seen[flat] {
                continue;
            }
            let mut rest = flat;
            for p in (0..self.order).rev() {
                index[p] = rest % n;
                rest /= n;
            }
            let orbit = permutation_orbit(&index)
                .into_iter()
                .map(|perm| self.offset(&perm))
                .collect::<Vec<_>>();
            let mean = orbit.iter().map(|&k| self.entries[k]).sum::<f64>() / orbit.len() as f64;
            for k in orbit {
                out[k] = mean;
                seen[k] = true;
            }
        }
        Tensor {
            order: self.order,
            dim: self.dim,
            entries: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0.0)
    }
}

/// Distinct permutations of a multi-index.
fn permutation_orbit(index: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = index.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next_permutation over the sorted multiset
    loop {
        let Some(i) = (0..sorted.len().saturating_sub(1)).rev().find(|&i| sorted[i] < sorted[i + 1]) else {
            break;
        };
        let j = (i + 1..sorted.len()).rev().find(|&j| sorted[j] > sorted[i]).unwrap();
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// A nonempty subset `J` of `{1..n}`, stored 1-based, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SubsetIndex {
    members: Vec<usize>,
}

impl TryFrom<Vec<usize>> for SubsetIndex {
    type Error = Error;

    fn try_from(members: Vec<usize>) -> Result<Self> {
        SubsetIndex::new(members)
    }
}

impl From<SubsetIndex> for Vec<usize> {
    fn from(s: SubsetIndex) -> Self {
        s.members
    }
}

impl SubsetIndex {
    /// Builds a subset from 1-based members.
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::invalid("subset must be nonempty"));
        }
        if members[0] == 0 {
            return Err(Error::invalid("subset members are 1-based"));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("subset members must be strictly increasing"));
        }
        Ok(SubsetIndex { members })
    }

    pub fn full(n: usize) -> Self {
        SubsetIndex {
            members: (1..=n).collect(),
        }
    }

    pub fn singleton(i: usize) -> Self {
        SubsetIndex { members: vec![i + 1] }
    }

    /// Subset from a bitmask over 0-based positions.
    pub fn from_mask(mask: u64) -> Result<Self> {
        let members = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        SubsetIndex::new(members)
    }

    /// All `2^n - 1` nonempty subsets, ordered by size then lexicographically.
    pub fn all_nonempty(n: usize) -> Vec<SubsetIndex> {
        assert!(n < 64, "subset enumeration limited to n < 64");
        let mut all: Vec<SubsetIndex> = (1u64..(1u64 << n))
            .map(|mask| SubsetIndex::from_mask(mask).expect("nonzero mask"))
            .collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        all
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// 0-based positions.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|m| m - 1)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        match self.members.last() {
            Some(&last) if last <= n => Ok(()),
            _ => Err(Error::invalid(format!("subset {:?} out of range for dimension {n}", self.members))),
        }
    }

    /// `x_J`.
    pub fn restrict(&self, x: &[f64]) -> Vec<f64> {
        self.positions().map(|p| x[p]).collect()
    }

    /// Embeds `x_J` into `R^n`, zero off `J`.
    pub fn pad(&self, sub: &[f64], n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (p, &v) in self.positions().zip(sub) {
            x[p] = v;
        }
        x
    }
}

impl std::fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Componentwise `x_i^p`.
///
/// Positive integer powers are left-fold products `((x x) x) ..`, the same
/// rounding as contracting the unit tensor. For `p = 1/k` with `k` odd the real
/// root keeps the sign of `x_i`; any other fractional power requires
/// nonnegative components.
pub fn power_vector(x: &[f64], p: f64) -> Result<Vec<f64>> {
    if !p.is_finite() {
        return Err(Error::Domain(format!("exponent {p} is not finite")));
    }
    if p.fract() == 0.0 && (1.0..=64.0).contains(&p) {
        return Ok(x.iter().map(|&v| (1..p as usize).fold(v, |acc, _| acc * v)).collect());
    }
    if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
        return Ok(x.iter().map(|v| v.powi(p as i32)).collect());
    }
    let inv = 1.0 / p;
    let odd_root = inv.fract() == 0.0 && (inv as i64) % 2 != 0;
    if odd_root {
        return Ok(x.iter().map(|&v| odd_real_root(v, inv as i64)).collect());
    }
    if let Some(v) = x.iter().find(|v| **v < 0.0) {
        return Err(Error::Domain(format!("cannot take real power {p} of negative component {v}")));
    }
    Ok(x.iter().map(|v| v.powf(p)).collect())
}

/// Sign-preserving real `k`-th root for odd `k`.
pub fn odd_real_root(v: f64, k: i64) -> f64 {
    match k {
        1 => v,
        3 => v.cbrt(),
        _ => v.signum() * v.abs().powf(1.0 / k as f64),
    }
}

/// `E x^{m-1} = ||x||_2^{m-2} x` for the even-order tensor `E = I_2^{m/2}`,
/// evaluated without materializing `E`.
pub fn e_apply(x: &[f64], order: usize) -> Result<Vec<f64>> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::invalid(format!("E tensor needs an even order, got {order}")));
    }
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let scale = sq.powi((order as i32 - 2) / 2);
    Ok(x.iter().map(|v| v * scale).collect())
}

pub fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
