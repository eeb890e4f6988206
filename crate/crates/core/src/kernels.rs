//! Numeric kernels on graph Laplacians and p-norms.
//!
//! Vectors are plain `f64` slices whose length must equal the vertex count
//! of the graph they are paired with. `p = f64::INFINITY` denotes the max
//! norm wherever an exponent accepts it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{powf, signed_pow, sqrt};

fn check_len(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `F_G(x) = sum over edges {i,j} of (x_i - x_j)^2`.
pub fn quadratic_form(g: &Graph, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    Ok(quadratic_form_unchecked(g, x))
}

#[inline]
pub(crate) fn quadratic_form_unchecked(g: &Graph, x: &[f64]) -> f64 {
    g.edges()
        .iter()
        .map(|&(i, j)| {
            let d = x[i] - x[j];
            d * d
        })
        .sum()
}

/// `(L x)_j = d_j x_j - sum_{k ~ j} x_k`.
pub fn laplacian_apply(g: &Graph, x: &[f64]) -> Result<Vec<f64>> {
    check_len(g, x)?;
    let mut out = vec![0.0; g.n()];
    laplacian_apply_into(g, x, &mut out);
    Ok(out)
}

/// Written per vertex as a sum of differences so that a constant vector maps
/// to exactly zero.
#[inline]
pub(crate) fn laplacian_apply_into(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (j, o) in out.iter_mut().enumerate() {
        let xj = x[j];
        *o = g.neighbors(j).iter().map(|&k| xj - x[k]).sum();
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent {
            p,
            reason: "norm exponent must be >= 1",
        });
    }
    Ok(())
}

/// `(sum |x_i|^p)^(1/p)`, or `max |x_i|` for `p = inf`. Evaluated with the
/// entries scaled by `max |x_i|` so large exponents neither overflow nor
/// underflow.
pub fn p_norm(x: &[f64], p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(p_norm_unchecked(x, p))
}

pub(crate) fn p_norm_unchecked(x: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    let m = x.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if m == 0.0 || p == f64::INFINITY {
        return m;
    }
    if p == 2.0 {
        let s: f64 = x.iter().map(|v| (v / m) * (v / m)).sum();
        return m * sqrt(s);
    }
    let s: f64 = x.iter().map(|v| powf(v.abs() / m, p)).sum();
    m * powf(s, 1.0 / p)
}

/// `x / ||x||_p`.
pub fn normalize(x: &[f64], p: f64) -> Result<Vec<f64>> {
    let norm = p_norm(x, p)?;
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(x.iter().map(|v| v / norm).collect())
}

/// Checks `||x||_q <= ||x||_p <= n^(1/p - 1/q) ||x||_q` for `1 <= p <= q`.
///
/// Returns `(lower_ok, upper_ok)`. The slack is `1e-12 * n`, scaled by
/// `max(1, ||x||_inf)` so the check is invariant under rescaling `x`.
pub fn check_norm_comparison(x: &[f64], p: f64, q: f64) -> Result<(bool, bool)> {
    check_exponent(p)?;
    check_exponent(q)?;
    if p > q {
        return Err(Error::NormOrder { p, q });
    }
    let n = x.len();
    let np = p_norm_unchecked(x, p);
    let nq = p_norm_unchecked(x, q);
    let inv = |r: f64| if r == f64::INFINITY { 0.0 } else { 1.0 / r };
    let factor = powf(n.max(1) as f64, inv(p) - inv(q));
    let scale = p_norm_unchecked(x, f64::INFINITY).max(1.0);
    let tol = 1e-12 * n.max(1) as f64 * scale;
    Ok((nq <= np + tol, np <= factor * nq + tol))
}

/// `phi_p(t) = |t|^(p-1) sg(t)`, with `phi_p(0) = 0`.
#[inline]
pub fn signed_power(t: f64, p: f64) -> f64 {
    signed_pow(t, p - 1.0)
}

/// The unique maximizer of `<x, y>` over `||x||_p = 1` for finite `p > 1`:
/// `x_i proportional to sg(y_i) |y_i|^(1/(p-1))`.
pub fn holder_argmax(y: &[f64], p: f64) -> Result<Vec<f64>> {
    if !(p > 1.0) || p == f64::INFINITY {
        return Err(Error::InvalidExponent {
            p,
            reason: "Hölder maximizer needs finite p > 1",
        });
    }
    let m = y.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if m == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut x = vec![0.0; y.len()];
    holder_argmax_into(y, p, m, &mut x);
    Ok(x)
}

pub(crate) fn holder_argmax_into(y: &[f64], p: f64, max_abs: f64, out: &mut [f64]) {
    let e = 1.0 / (p - 1.0);
    if p == 2.0 {
        for (o, v) in out.iter_mut().zip(y) {
            *o = v / max_abs;
        }
    } else {
        for (o, v) in out.iter_mut().zip(y) {
            *o = signed_pow(v / max_abs, e);
        }
    }
    let norm = p_norm_unchecked(out, p);
    for o in out.iter_mut() {
        *o /= norm;
    }
}

/// Canonical basis vector `e_i` of length `n`.
pub fn basis(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// All-ones vector of length `n`.
pub fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}
