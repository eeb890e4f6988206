//! Exact and brute-force reference values.
//!
//! - `p = 1`: the maximum degree, attained at a basis vector.
//! - `p = 2`: the largest Laplacian eigenvalue.
//! - `p = inf`: four times the maximum cut, found by enumeration.
//! - `K_{s,t}` with `p >= 2`: a closed form in the two class values.
//! - tiny graphs, any `p`: a dense grid search on `[-1, 1]^n`.
//!
//! Edgeless graphs are reported as degenerate with value 0 rather than as
//! errors.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionCut};
use crate::kernels::{laplacian_apply_into, normalize, quadratic_form_unchecked};
use crate::math::{powf, sqrt};

/// Default vertex limit for the `2^(n-1)` max-cut enumeration.
pub const MAXCUT_GUARD: usize = 26;

const MU_TWO_TOL: f64 = 1e-12;
const MU_TWO_MAX_ITER: usize = 1_000_000;

const GRID_MAX_N: usize = 4;
const GRID_MAX_RESOLUTION: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCertificate {
    /// `mu_1(G)`, the maximum degree.
    pub value: usize,
    /// Smallest vertex of maximum degree; `e_vertex` attains the value.
    pub vertex: usize,
    /// The graph has no edges.
    pub degenerate: bool,
}

pub fn mu_one(g: &Graph) -> Result<DegreeCertificate> {
    let value = g.max_degree()?;
    let vertex = (0..g.n()).find(|&v| g.degree(v) == value).unwrap_or(0);
    Ok(DegreeCertificate {
        value,
        vertex,
        degenerate: g.edge_count() == 0,
    })
}

/// Maximum cut with the default guard of [`MAXCUT_GUARD`] vertices.
pub fn max_cut_bruteforce(g: &Graph) -> Result<PartitionCut> {
    max_cut_bruteforce_with_guard(g, MAXCUT_GUARD)
}

/// Enumerates the `2^(n-1)` bipartitions with vertex 0 in `S` in Gray-code
/// order, updating the cut incrementally. Among maximum cuts the
/// lexicographically smallest side mask (`false < true`, vertex 0 first) is
/// returned.
pub fn max_cut_bruteforce_with_guard(g: &Graph, guard: usize) -> Result<PartitionCut> {
    let n = g.n();
    let guard = guard.min(63);
    if n > guard {
        return Err(Error::Guard {
            what: "max-cut enumeration",
            n,
            guard,
        });
    }
    if n == 0 {
        return Ok(PartitionCut {
            side_mask: Vec::new(),
            cut_size: 0,
        });
    }

    // bit v set <=> vertex v in S
    let mut mask: u64 = 1;
    let mut cut = g.degree(0);
    let mut best_mask = mask;
    let mut best_cut = cut;
    let total: u64 = 1 << (n - 1);
    for step in 1..total {
        let v = step.trailing_zeros() as usize + 1;
        let in_s = mask >> v & 1 == 1;
        let crossing = g
            .neighbors(v)
            .iter()
            .filter(|&&w| (mask >> w & 1 == 1) != in_s)
            .count();
        // flipping v turns its crossing edges internal and vice versa
        cut = cut + g.degree(v) - 2 * crossing;
        mask ^= 1 << v;
        if cut > best_cut || (cut == best_cut && lex_less(mask, best_mask)) {
            best_cut = cut;
            best_mask = mask;
        }
    }
    let side_mask = (0..n).map(|v| best_mask >> v & 1 == 1).collect();
    Ok(PartitionCut {
        side_mask,
        cut_size: best_cut,
    })
}

fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) == 0
}

/// Result of the power iteration for the top Laplacian eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenEstimate {
    pub value: f64,
    /// Unit 2-norm vector whose Rayleigh quotient is `value`.
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub degenerate: bool,
}

/// `mu_2(G)`: largest eigenvalue of `L` by plain power iteration.
///
/// `L` is positive semidefinite, so its dominant eigenvalue is its largest
/// one and no shift is needed. The start is the alternating `+-1` vector
/// with a fixed irregular perturbation, which keeps it off every proper
/// invariant subspace in practice. Stops once the Rayleigh quotient moves by
/// less than `1e-12` and the eigen-residual `||Lx - lambda x||` is below
/// `1e-10 * max(1, lambda)`.
pub fn mu_two(g: &Graph) -> Result<EigenEstimate> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut x: Vec<f64> = (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            // fractional parts of multiples of the golden ratio
            let jitter = ((i + 1) as f64 * 0.618_033_988_749_894_9) % 1.0;
            sign + 0.1 * jitter
        })
        .collect();
    x = normalize(&x, 2.0)?;
    if g.edge_count() == 0 {
        return Ok(EigenEstimate {
            value: 0.0,
            vector: x,
            iterations: 0,
            converged: true,
            degenerate: true,
        });
    }

    let mut y = vec![0.0; n];
    let mut lambda = f64::NEG_INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MU_TWO_MAX_ITER {
        iterations += 1;
        laplacian_apply_into(g, &x, &mut y);
        let rq: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let res2: f64 = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - rq * a) * (b - rq * a))
            .sum();
        let ynorm = sqrt(y.iter().map(|v| v * v).sum());
        let settled = (rq - lambda).abs() < MU_TWO_TOL * rq.max(1.0)
            && sqrt(res2) < 1e-10 * rq.max(1.0);
        lambda = rq;
        if settled {
            converged = true;
            break;
        }
        if ynorm == 0.0 {
            // start fell into the kernel; move it off deterministically
            x[0] += 1.0;
            let fresh = normalize(&x, 2.0)?;
            x.copy_from_slice(&fresh);
            continue;
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / ynorm;
        }
    }
    laplacian_apply_into(g, &x, &mut y);
    let value: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
    Ok(EigenEstimate {
        value,
        vector: x,
        iterations,
        converged,
        degenerate: false,
    })
}

/// Optimal vector and value on `K_{s,t}` for `p >= 2`: entries `a` on the
/// `s`-class and `-b` on the `t`-class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteClosedForm {
    pub s: usize,
    pub t: usize,
    pub p: f64,
    pub a: f64,
    pub b: f64,
    pub value: f64,
}

impl BipartiteClosedForm {
    /// The optimal vector, `S` class first.
    pub fn vector(&self) -> Vec<f64> {
        let mut x = vec![self.a; self.s];
        x.extend(core::iter::repeat_n(-self.b, self.t));
        x
    }
}

pub fn mu_complete_bipartite(s: usize, t: usize, p: f64) -> Result<BipartiteClosedForm> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidGenerator(
            "complete bipartite graph needs both classes non-empty",
        ));
    }
    if !(p >= 2.0) || p == f64::INFINITY {
        return Err(Error::InvalidExponent {
            p,
            reason: "closed form holds for finite p >= 2",
        });
    }
    let (sf, tf) = (s as f64, t as f64);
    let ratio = sf / tf;
    let a = powf(sf + tf * powf(ratio, p / (p - 1.0)), -1.0 / p);
    let b = powf(ratio, 1.0 / (p - 1.0)) * a;
    Ok(BipartiteClosedForm {
        s,
        t,
        p,
        a,
        b,
        value: sf * tf * (a + b) * (a + b),
    })
}

/// Largest `F_G(x / ||x||_p)` over the nonzero points of the uniform grid
/// with `resolution` points per axis on `[-1, 1]^n`.
///
/// A lower bound on `mu_p(G)` that tightens as the grid is refined. Only
/// half the grid is scanned since `F_G(-x) = F_G(x)`. For exponents where
/// `2m/p` is a small integer for some small integer `m` the points are
/// ranked by `F^m / S^(2m/p)` with `S = sum |x_i|^p`, which avoids a `pow`
/// per point.
pub fn grid_oracle(g: &Graph, p: f64, resolution: usize) -> Result<f64> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > GRID_MAX_N {
        return Err(Error::Guard {
            what: "grid oracle",
            n,
            guard: GRID_MAX_N,
        });
    }
    if !(2..=GRID_MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::Guard {
            what: "grid oracle resolution",
            n: resolution,
            guard: GRID_MAX_RESOLUTION,
        });
    }
    if !(p >= 1.0) || p == f64::INFINITY {
        return Err(Error::InvalidExponent {
            p,
            reason: "grid oracle needs finite p >= 1",
        });
    }
    if g.edge_count() == 0 {
        return Ok(0.0);
    }

    let axis: Vec<f64> = (0..resolution)
        .map(|k| -1.0 + 2.0 * k as f64 / (resolution - 1) as f64)
        .collect();
    let pw: Vec<f64> = axis.iter().map(|v| powf(v.abs(), p)).collect();
    let score = Score::for_exponent(p);

    let last = n - 1;
    let inner_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(i, j)| i != last && j != last)
        .collect();
    let last_nb = g.neighbors(last);
    let last_deg = last_nb.len() as f64;

    // first coordinate restricted to x_0 >= 0
    let first_start = (resolution - 1) / 2;
    let mut idx = vec![0usize; last];
    let mut x = vec![0.0; n];
    let mut best_score = 0.0_f64;
    let mut best_point: Option<Vec<f64>> = None;

    idx[0] = first_start;
    'scan: loop {
        let mut s0 = 0.0;
        for (c, &k) in idx.iter().enumerate() {
            x[c] = axis[k];
            s0 += pw[k];
        }
        // F as a quadratic in the last coordinate v:
        // f0 + sum_j x_j^2 - 2 v sum_j x_j + deg v^2
        let mut c0: f64 = inner_edges
            .iter()
            .map(|&(i, j)| (x[i] - x[j]) * (x[i] - x[j]))
            .sum();
        let mut c1 = 0.0;
        for &j in last_nb {
            c0 += x[j] * x[j];
            c1 -= 2.0 * x[j];
        }
        let hit = match score {
            Score::Powers { f_exp: 1, s_exp: 1 } => {
                scan_axis::<1, 1>(&axis, &pw, c0, c1, last_deg, s0, &mut best_score)
            }
            Score::Powers { f_exp: 1, s_exp: 2 } => {
                scan_axis::<1, 2>(&axis, &pw, c0, c1, last_deg, s0, &mut best_score)
            }
            Score::Powers { f_exp: 3, s_exp: 2 } => {
                scan_axis::<3, 2>(&axis, &pw, c0, c1, last_deg, s0, &mut best_score)
            }
            Score::Powers { f_exp: 3, s_exp: 4 } => {
                scan_axis::<3, 4>(&axis, &pw, c0, c1, last_deg, s0, &mut best_score)
            }
            _ => {
                let mut hit = None;
                for (k, (&v, &pk)) in axis.iter().zip(&pw).enumerate() {
                    let f = c0 + v * (c1 + last_deg * v);
                    let (num, den) = score.parts(f, s0 + pk);
                    if num > best_score * den && den > 0.0 {
                        best_score = num / den;
                        hit = Some(k);
                    }
                }
                hit
            }
        };
        if let Some(k) = hit {
            x[last] = axis[k];
            best_point = Some(x.clone());
        }
        // odometer over coordinates 0..last, the highest moving fastest
        let mut c = last;
        loop {
            if c == 0 {
                break 'scan;
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < resolution {
                break;
            }
            if c == 0 {
                break 'scan;
            }
            idx[c] = 0;
        }
    }
    match best_point {
        Some(pt) => Ok(quadratic_form_unchecked(g, &normalize(&pt, p)?)),
        None => Ok(0.0),
    }
}

/// Inner grid line with the score exponents fixed at compile time.
#[inline(always)]
fn scan_axis<const M: u32, const K: u32>(
    axis: &[f64],
    pw: &[f64],
    c0: f64,
    c1: f64,
    deg: f64,
    s0: f64,
    best: &mut f64,
) -> Option<usize> {
    let mut hit = None;
    for (k, (&v, &pk)) in axis.iter().zip(pw).enumerate() {
        let f = c0 + v * (c1 + deg * v);
        let num = ipow(f, M);
        let den = ipow(s0 + pk, K);
        if num > *best * den && den > 0.0 {
            *best = num / den;
            hit = Some(k);
        }
    }
    hit
}

/// Monotone transform of `F / S^(2/p)` used to rank grid points.
enum Score {
    Powers { f_exp: u32, s_exp: u32 },
    General { s_exp: f64 },
}

impl Score {
    fn for_exponent(p: f64) -> Self {
        for m in 1..=8u32 {
            let e = 2.0 * m as f64 / p;
            let r = libm::round(e);
            if (e - r).abs() < 1e-12 && (1.0..=24.0).contains(&r) {
                return Score::Powers {
                    f_exp: m,
                    s_exp: r as u32,
                };
            }
        }
        Score::General { s_exp: 2.0 / p }
    }

    /// Numerator and denominator of the score; the zero point has `den = 0`.
    #[inline]
    fn parts(&self, f: f64, s: f64) -> (f64, f64) {
        match *self {
            Score::Powers { f_exp, s_exp } => (ipow(f, f_exp), ipow(s, s_exp)),
            Score::General { s_exp } => (f, powf(s, s_exp)),
        }
    }
}

#[inline(always)]
fn ipow(mut base: f64, mut e: u32) -> f64 {
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Whether `V` splits into `S`, `T` with `|S| = |T| = n/2` and every `S`-`T`
/// pair an edge.
///
/// A valid split has no complement edge across it, so each connected
/// component of the complement lies inside one side; the question reduces
/// to a subset sum of complement component sizes hitting `n/2`. Odd `n`
/// answers `false`.
pub fn has_spanning_balanced_biclique(g: &Graph) -> bool {
    let n = g.n();
    if n % 2 == 1 {
        return false;
    }
    let half = n / 2;
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for comp in g.complement().connected_components() {
        let size = comp.len();
        for total in (size..=half).rev() {
            if reachable[total - size] {
                reachable[total] = true;
            }
        }
    }
    reachable[half]
}
