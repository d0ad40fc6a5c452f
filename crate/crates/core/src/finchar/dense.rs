//! Dense characters of finite-dimensional modules.
//!
//! A character with highest weight `top` is stored on the box of exponents
//! `k` with `0 <= k_i <= extent_i - 1`, the cell `k` holding the multiplicity
//! of `top - sum_i k_i alpha_i`. Cells are laid out row-major with the last
//! simple root contiguous, so every weight lies lexicographically after the
//! weights above it in dominance order.

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DenseChar {
    pub top: Vec<i64>,
    pub extent: Vec<usize>,
    pub strides: Vec<usize>,
    pub data: Vec<i64>,
}

impl DenseChar {
    pub fn zeros(top: Vec<i64>, extent: Vec<usize>) -> Self {
        let strides = strides_for(&extent);
        let len = extent.iter().product();
        Self {
            top,
            extent,
            strides,
            data: vec![0; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.extent.len()
    }

    pub fn unravel(&self, mut idx: usize, k: &mut [usize]) {
        for (i, s) in self.strides.iter().enumerate() {
            k[i] = idx / s;
            idx %= s;
        }
    }

    /// Fundamental coordinates of the weight at exponent `k`.
    pub fn weight_at(&self, rs: &RootSystem, k: &[usize]) -> Vec<i64> {
        let cartan = rs.cartan();
        let mut v = self.top.clone();
        for (j, &kj) in k.iter().enumerate() {
            if kj != 0 {
                for (i, x) in v.iter_mut().enumerate() {
                    *x -= cartan[i][j] * kj as i64;
                }
            }
        }
        v
    }

    /// Nonzero cells as `(exponent, multiplicity)`.
    pub fn cells(&self) -> impl Iterator<Item = (Vec<usize>, i64)> + '_ {
        let mut k = vec![0usize; self.rank()];
        self.data.iter().enumerate().filter(|(_, &m)| m != 0).map(move |(idx, &m)| {
            self.unravel(idx, &mut k);
            (k.clone(), m)
        })
    }

    /// Adds `factor * other` with `other`'s origin placed at exponent `offset`;
    /// cells falling outside `self` are dropped.
    pub fn add_scaled_at(&mut self, other: &DenseChar, offset: &[usize], factor: i64) {
        let r = self.rank();
        let mut count = vec![0usize; r];
        for i in 0..r {
            if offset[i] >= self.extent[i] {
                return;
            }
            count[i] = other.extent[i].min(self.extent[i] - offset[i]);
        }
        let row = count[r - 1];
        let base: usize = offset.iter().zip(&self.strides).map(|(o, s)| o * s).sum();
        let mut prefix = vec![0usize; r - 1];
        loop {
            let src: usize = prefix.iter().zip(&other.strides).map(|(p, s)| p * s).sum();
            let dst = base + prefix.iter().zip(&self.strides).map(|(p, s)| p * s).sum::<usize>();
            let (d, s) = (&mut self.data[dst..dst + row], &other.data[src..src + row]);
            match factor {
                1 => d.iter_mut().zip(s).for_each(|(a, b)| *a += b),
                -1 => d.iter_mut().zip(s).for_each(|(a, b)| *a -= b),
                f => d.iter_mut().zip(s).for_each(|(a, b)| *a += f * b),
            }
            if !advance(&mut prefix, &count[..r - 1]) {
                return;
            }
        }
    }
}

pub(crate) fn strides_for(extent: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; extent.len()];
    for i in (0..extent.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * extent[i + 1];
    }
    strides
}

/// Odometer increment; false once every index has wrapped.
fn advance(idx: &mut [usize], extent: &[usize]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < extent[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Scaled form `(x, y) * D` with `D` clearing all denominators.
fn form(rs: &RootSystem, x: &[i64], y: &[i64]) -> i64 {
    let f = rs.int_form();
    let mut acc = 0;
    for (i, &xi) in x.iter().enumerate() {
        if xi != 0 {
            for (j, &yj) in y.iter().enumerate() {
                acc += xi * yj * f[i][j];
            }
        }
    }
    acc
}

/// Weight multiplicities of `V_lambda` by Freudenthal's recursion
///
/// `((lambda+rho, lambda+rho) - (nu+rho, nu+rho)) m(nu)
///     = 2 sum_{alpha > 0} sum_{j >= 1} m(nu + j alpha) (nu + j alpha, alpha)`,
///
/// with the inner string sums memoized per positive root so each cell costs
/// `O(|Delta_+| * rank)`.
pub(crate) fn freudenthal(rs: &RootSystem, lam: &[i64], lowest_depth: &[i64]) -> Result<DenseChar> {
    let n = rs.rank();
    let extent: Vec<usize> = lowest_depth.iter().map(|&k| k as usize + 1).collect();
    let mut ch = DenseChar::zeros(lam.to_vec(), extent);
    let roots: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|r| r.to_i64s().expect("integral root"))
        .collect();
    let root_depth = rs.positive_root_coords();
    let nroots = roots.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| rs.cartan()[i][j]).collect()).collect();

    // (alpha_j, alpha)_s and (alpha, alpha)_s for each positive alpha.
    let simple_dot_root: Vec<Vec<i64>> = simple
        .iter()
        .map(|s| roots.iter().map(|a| form(rs, s, a)).collect())
        .collect();
    let root_norm: Vec<i64> = roots.iter().map(|a| form(rs, a, a)).collect();
    let lam_dot_root: Vec<i64> = roots.iter().map(|a| form(rs, lam, a)).collect();
    let lam_rho: Vec<i64> = lam.iter().map(|x| x + 1).collect();
    let top_norm = form(rs, &lam_rho, &lam_rho);
    let root_offset: Vec<usize> = root_depth
        .iter()
        .map(|c| c.iter().zip(&ch.strides).map(|(&ci, s)| ci as usize * s).sum())
        .collect();

    let len = ch.data.len();
    let extent = ch.extent.clone();
    let mut strings = vec![0i64; len * nroots];
    let mut k = vec![0usize; n];
    let mut nu_rho = lam_rho.clone();
    for idx in 0..len {
        if idx > 0 {
            // Odometer step: the last coordinate moves unless it wraps.
            let mut i = n - 1;
            loop {
                k[i] += 1;
                if k[i] < extent[i] {
                    nu_rho.iter_mut().zip(&simple[i]).for_each(|(x, s)| *x -= s);
                    break;
                }
                nu_rho.iter_mut().zip(&simple[i]).for_each(|(x, s)| *x += s * (k[i] as i64 - 1));
                k[i] = 0;
                i -= 1;
            }
        }
        let mut rhs: i64 = 0;
        for a in 0..nroots {
            let depth = &root_depth[a];
            if k.iter().zip(depth).all(|(&ki, &ci)| ki as i64 >= ci) {
                let prev = idx - root_offset[a];
                // (nu + alpha, alpha) with nu = lambda - sum k_j alpha_j
                let mut nu_dot = lam_dot_root[a];
                for (j, &kj) in k.iter().enumerate() {
                    nu_dot -= kj as i64 * simple_dot_root[j][a];
                }
                let term = ch.data[prev]
                    .checked_mul(nu_dot + root_norm[a])
                    .and_then(|t| t.checked_add(strings[prev * nroots + a]))
                    .ok_or(Error::Overflow("freudenthal"))?;
                strings[idx * nroots + a] = term;
                rhs = rhs.checked_add(term).ok_or(Error::Overflow("freudenthal"))?;
            }
        }
        if idx == 0 {
            ch.data[0] = 1;
            continue;
        }
        let denom = top_norm - form(rs, &nu_rho, &nu_rho);
        if denom == 0 {
            if rhs != 0 {
                return Err(Error::Inconsistency("Freudenthal recursion on a null denominator".into()));
            }
            continue;
        }
        let num = rhs.checked_mul(2).ok_or(Error::Overflow("freudenthal"))?;
        let m = num / denom;
        if m * denom != num || m < 0 {
            return Err(Error::Inconsistency(format!(
                "Freudenthal recursion produced {num}/{denom}"
            )));
        }
        ch.data[idx] = m;
    }
    Ok(ch)
}

/// Dense product `a * b` by direct convolution, iterating rows of the larger
/// factor and keeping only exponents below `limit`.
pub(crate) fn convolve(a: &DenseChar, b: &DenseChar, limit: &[usize]) -> DenseChar {
    let (big, small) = if a.data.len() >= b.data.len() { (a, b) } else { (b, a) };
    let top: Vec<i64> = a.top.iter().zip(&b.top).map(|(x, y)| x + y).collect();
    let mut extent: Vec<usize> = a.extent.iter().zip(&b.extent).map(|(x, y)| x + y - 1).collect();
    extent.iter_mut().zip(limit).for_each(|(e, l)| *e = (*e).min(*l));
    let mut out = DenseChar::zeros(top, extent);
    for (k, m) in small.cells() {
        out.add_scaled_at(big, &k, m);
    }
    out
}
