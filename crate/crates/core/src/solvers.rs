//! Local maximization of `F_G` on the unit p-sphere for finite `p > 1`.
//!
//! For `p >= 2` the nonlinear power step `x <- argmax_{||z||_p = 1} <z, L x>`
//! never decreases `F_G`: since `L` is positive semidefinite,
//! `F(x') >= 2 <x', L x> - F(x) >= F(x)`. Each [`MuEstimate`] records the
//! largest single-step decrease seen so the ascent can be audited.
//!
//! For `1 < p < 2` projected gradient ascent with backtracking is used, with
//! the same power step offered as a competing candidate each iteration.
//! `p = 1` and `p = inf` belong to the exact oracles.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::Method;
use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionCut};
use crate::kernels::{
    holder_argmax_into, laplacian_apply_into, p_norm_unchecked, quadratic_form_unchecked,
    signed_power,
};
use crate::oracles::mu_two;

/// Tie window for the multistart reduction.
const TIE_EPS: f64 = 1e-12;
/// Kernel-start perturbation added to entry 0.
const KERNEL_NUDGE: f64 = 1e-6;
/// Largest tolerated deviation of an input vector from the unit p-sphere.
const SPHERE_TOL: f64 = 1e-8;
const MAX_HALVINGS: usize = 60;
/// Consecutive steps whose gain must stay below `tol` before stopping.
pub const PATIENCE: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once one step gains less than this in `F_G`.
    pub tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Initial step of the projected gradient solver.
    pub step: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-12,
            max_iter: 10_000,
            restarts: 16,
            seed: 0,
            step: 0.1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive"));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive"));
        }
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidConfig("step must be positive and finite"));
        }
        Ok(())
    }
}

/// A candidate maximizer of `F_G` on the unit p-sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct MuEstimate {
    pub p: f64,
    /// `F_G(x)`.
    pub value: f64,
    pub x: Vec<f64>,
    /// `max_j |(Lx)_j - F(x) phi_p(x_j)|`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Lagrange multiplier `value / p`.
    pub multiplier: f64,
    /// Largest observed `F(x_t) - F(x_{t+1})`, 0 if the ascent never dipped.
    pub worst_decrease: f64,
    pub method: Method,
    /// Multistart starts that returned an error; always 0 for single runs.
    pub failed_starts: usize,
}

fn check_sphere(x: &[f64], p: f64) -> Result<()> {
    let norm = p_norm_unchecked(x, p);
    if !((norm - 1.0).abs() <= SPHERE_TOL) {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

fn check_finite_p(p: f64, min_ok: impl Fn(f64) -> bool, reason: &'static str) -> Result<()> {
    if p.is_nan() || p == f64::INFINITY || !min_ok(p) {
        return Err(Error::InvalidExponent { p, reason });
    }
    Ok(())
}

fn check_inputs(g: &Graph, x0: &[f64], p: f64, cfg: &SolverConfig) -> Result<()> {
    cfg.validate()?;
    if x0.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: x0.len(),
        });
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    check_sphere(x0, p)
}

fn rescale(x: &mut [f64], p: f64) {
    let norm = p_norm_unchecked(x, p);
    for v in x.iter_mut() {
        *v /= norm;
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |a, b| a.max(b.abs()))
}

/// Moves a start that `L` annihilates off the kernel: `x0[0] += 1e-6`, then
/// renormalize. Returns whether `L x` is now nonzero.
fn leave_kernel(g: &Graph, x: &mut [f64], y: &mut [f64], p: f64) -> bool {
    laplacian_apply_into(g, x, y);
    if max_abs(y) > 0.0 {
        return true;
    }
    x[0] += KERNEL_NUDGE;
    rescale(x, p);
    laplacian_apply_into(g, x, y);
    max_abs(y) > 0.0
}

fn finish(
    g: &Graph,
    p: f64,
    x: Vec<f64>,
    iterations: usize,
    converged: bool,
    worst_decrease: f64,
    method: Method,
) -> MuEstimate {
    let value = quadratic_form_unchecked(g, &x);
    let residual = residual_unchecked(g, p, &x, value);
    MuEstimate {
        p,
        value,
        x,
        residual,
        iterations,
        converged,
        multiplier: value / p,
        worst_decrease,
        method,
        failed_starts: 0,
    }
}

/// Nonlinear power iteration `x <- holder_argmax(L x, p)` for `p >= 2`.
///
/// Exponents in `(1, 2)` are handed to [`projected_gradient`]. Stops once
/// [`PATIENCE`] consecutive steps have each gained less than `cfg.tol`, or
/// after `cfg.max_iter` steps, and returns the last iterate. Near a maximum
/// the gain is quadratic in the step, so a single small gain only pins the
/// iterate to about `sqrt(tol)`.
pub fn power_iterate(g: &Graph, p: f64, x0: &[f64], cfg: &SolverConfig) -> Result<MuEstimate> {
    check_finite_p(p, |p| p > 1.0, "iterative solvers need finite p > 1")?;
    if p < 2.0 {
        return projected_gradient(g, p, x0, cfg);
    }
    check_inputs(g, x0, p, cfg)?;

    let n = g.n();
    let mut x = x0.to_vec();
    let mut y = vec![0.0; n];
    let mut next = vec![0.0; n];
    if !leave_kernel(g, &mut x, &mut y, p) {
        return Ok(MuEstimate {
            p,
            value: 0.0,
            residual: 0.0,
            x,
            iterations: 0,
            converged: false,
            multiplier: 0.0,
            worst_decrease: 0.0,
            method: Method::PowerIteration,
            failed_starts: 0,
        });
    }

    let mut value = quadratic_form_unchecked(g, &x);
    let mut worst_decrease = 0.0_f64;
    let mut iterations = 0;
    let mut converged = false;
    let mut quiet = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        // y = L x is nonzero: F(x) >= F(x0) > 0 along the ascent
        holder_argmax_into(&y, p, max_abs(&y), &mut next);
        let next_value = quadratic_form_unchecked(g, &next);
        worst_decrease = worst_decrease.max(value - next_value);
        let gain = next_value - value;
        core::mem::swap(&mut x, &mut next);
        value = next_value;
        quiet = if gain < cfg.tol { quiet + 1 } else { 0 };
        if quiet >= PATIENCE {
            converged = true;
            break;
        }
        laplacian_apply_into(g, &x, &mut y);
    }
    Ok(finish(
        g,
        p,
        x,
        iterations,
        converged,
        worst_decrease,
        Method::PowerIteration,
    ))
}

/// Gradient ascent with radial renormalization onto the p-sphere:
/// `x <- normalize(x + step * 2 L x, p)`, halving the step until `F_G` does
/// not decrease and doubling it after each accepted step. Uses the same
/// [`PATIENCE`] stopping rule as [`power_iterate`].
///
/// If no step length along the raw gradient avoids a decrease, the step is
/// retried along the gradient with its component along `phi_p(x)` (the
/// sphere normal) removed, which has a nonnegative first-order gain.
///
/// Each iteration also evaluates the full conditional-gradient jump
/// `argmax_{||z||_p = 1} <z, L x>` and keeps it when it beats the line-search
/// point. By convexity of `F_G` the jump never decreases the value for any
/// `p > 1`; near sparse maximizers, where the p-sphere is sharply curved and
/// the radial step stalls, it is what actually makes progress. If neither
/// candidate avoids a decrease the iterate is returned as converged.
pub fn projected_gradient(
    g: &Graph,
    p: f64,
    x0: &[f64],
    cfg: &SolverConfig,
) -> Result<MuEstimate> {
    check_finite_p(p, |p| p > 1.0, "projected gradient needs finite p > 1")?;
    check_inputs(g, x0, p, cfg)?;

    let n = g.n();
    let mut x = x0.to_vec();
    let mut grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    if !leave_kernel(g, &mut x, &mut grad, p) {
        return Ok(MuEstimate {
            p,
            value: 0.0,
            residual: 0.0,
            x,
            iterations: 0,
            converged: false,
            multiplier: 0.0,
            worst_decrease: 0.0,
            method: Method::ProjectedGradient,
            failed_starts: 0,
        });
    }

    let mut value = quadratic_form_unchecked(g, &x);
    let mut step = cfg.step;
    let mut iterations = 0;
    let mut converged = false;
    let mut tangent = vec![0.0; n];
    let mut jump = vec![0.0; n];
    let mut quiet = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        holder_argmax_into(&grad, p, max_abs(&grad), &mut jump);
        let jump_value = quadratic_form_unchecked(g, &jump);
        for v in grad.iter_mut() {
            *v *= 2.0;
        }
        let mut accepted =
            line_search(g, p, &x, &grad, value, &mut step, &mut trial);
        if accepted.is_none() {
            project_tangent(&x, &grad, p, &mut tangent);
            step = cfg.step;
            accepted = line_search(g, p, &x, &tangent, value, &mut step, &mut trial);
        }
        let next_value = match accepted {
            Some(f) if f >= jump_value => f,
            _ if jump_value >= value => {
                core::mem::swap(&mut trial, &mut jump);
                jump_value
            }
            Some(f) => f,
            None => {
                converged = true;
                break;
            }
        };
        let gain = next_value - value;
        core::mem::swap(&mut x, &mut trial);
        value = next_value;
        step *= 2.0;
        quiet = if gain < cfg.tol { quiet + 1 } else { 0 };
        if quiet >= PATIENCE {
            converged = true;
            break;
        }
        laplacian_apply_into(g, &x, &mut grad);
    }
    Ok(finish(
        g,
        p,
        x,
        iterations,
        converged,
        0.0,
        Method::ProjectedGradient,
    ))
}

/// Backtracking along `dir`; on success leaves the new point in `out` and
/// returns its value.
fn line_search(
    g: &Graph,
    p: f64,
    x: &[f64],
    dir: &[f64],
    value: f64,
    step: &mut f64,
    out: &mut [f64],
) -> Option<f64> {
    for _ in 0..MAX_HALVINGS {
        for ((o, xi), di) in out.iter_mut().zip(x).zip(dir) {
            *o = xi + *step * di;
        }
        let norm = p_norm_unchecked(out, p);
        if norm > 0.0 && norm.is_finite() {
            for o in out.iter_mut() {
                *o /= norm;
            }
            let f = quadratic_form_unchecked(g, out);
            if f >= value {
                return Some(f);
            }
        }
        *step *= 0.5;
    }
    None
}

/// `grad - phi <phi, grad> / <phi, phi>` with `phi = phi_p(x)`.
fn project_tangent(x: &[f64], grad: &[f64], p: f64, out: &mut [f64]) {
    let mut dot = 0.0;
    let mut nn = 0.0;
    for (xi, gi) in x.iter().zip(grad) {
        let phi = signed_power(*xi, p);
        dot += phi * gi;
        nn += phi * phi;
    }
    let c = if nn > 0.0 { dot / nn } else { 0.0 };
    for ((o, xi), gi) in out.iter_mut().zip(x).zip(grad) {
        *o = gi - c * signed_power(*xi, p);
    }
}

/// Best of `cfg.restarts` local solves.
///
/// Start 0 is the top Laplacian eigenvector rescaled to the p-sphere; the
/// next `ceil(restarts / 2)` starts are random `+-1` vectors and the rest
/// have uniform entries in `[-1, 1]`. Start `k` draws from a ChaCha8 stream
/// seeded with `seed ^ k`, so each start is reproducible on its own. The
/// reduction keeps the largest value, preferring the lower start index
/// within `1e-12`.
pub fn multistart(g: &Graph, p: f64, cfg: &SolverConfig) -> Result<MuEstimate> {
    check_finite_p(p, |p| p > 1.0, "multistart needs finite p > 1")?;
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }

    let mut best: Option<MuEstimate> = None;
    let mut first_err = None;
    let mut failed = 0;
    let mut total_iterations = 0;
    let mut worst_decrease = 0.0_f64;
    for k in 0..cfg.restarts {
        let run = start_vector(g, p, cfg, k).and_then(|x0| power_iterate(g, p, &x0, cfg));
        match run {
            Ok(est) => {
                total_iterations += est.iterations;
                worst_decrease = worst_decrease.max(est.worst_decrease);
                let better = match &best {
                    None => true,
                    Some(b) => est.value > b.value + TIE_EPS,
                };
                if better {
                    best = Some(est);
                }
            }
            Err(e) => {
                failed += 1;
                first_err.get_or_insert(e);
            }
        }
    }
    match best {
        Some(mut est) => {
            est.iterations = total_iterations;
            est.worst_decrease = worst_decrease;
            est.failed_starts = failed;
            Ok(est)
        }
        None => Err(first_err.unwrap_or(Error::NoEdges)),
    }
}

fn start_vector(g: &Graph, p: f64, cfg: &SolverConfig, k: usize) -> Result<Vec<f64>> {
    let n = g.n();
    let sign_starts = cfg.restarts.div_ceil(2);
    let mut x: Vec<f64> = if k == 0 {
        mu_two(g)?.vector
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ k as u64);
        if k <= sign_starts {
            (0..n)
                .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
                .collect()
        } else {
            (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
        }
    };
    if max_abs(&x) == 0.0 {
        return Err(Error::ZeroVector);
    }
    rescale(&mut x, p);
    Ok(x)
}

/// `max_j |(L x)_j - F(x) |x_j|^(p-1) sg(x_j)|` for `x` on the unit p-sphere.
pub fn kkt_residual(g: &Graph, p: f64, x: &[f64]) -> Result<f64> {
    check_finite_p(p, |p| p > 1.0, "stationarity residual needs finite p > 1")?;
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    check_sphere(x, p)?;
    Ok(residual_unchecked(g, p, x, quadratic_form_unchecked(g, x)))
}

fn residual_unchecked(g: &Graph, p: f64, x: &[f64], value: f64) -> f64 {
    let mut lx = vec![0.0; g.n()];
    laplacian_apply_into(g, x, &mut lx);
    lx.iter()
        .zip(x)
        .map(|(l, xi)| (l - value * signed_power(*xi, p)).abs())
        .fold(0.0, f64::max)
}

/// Sign split: `S = {i : x_i > 0}`, everything else (zeros included) in `T`.
pub fn threshold_cut(g: &Graph, x: &[f64]) -> Result<PartitionCut> {
    PartitionCut::new(g, x.iter().map(|&v| v > 0.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Generator;
    use crate::kernels::{normalize, quadratic_form};
    use crate::math::powf;
    use crate::oracles::{max_cut_bruteforce, mu_complete_bipartite};

    fn gen(kind: Generator) -> Graph {
        kind.build().unwrap()
    }

    #[test]
    fn power_iterate_single_edge() {
        let k2 = gen(Generator::Complete(2));
        let x0 = normalize(&[0.9, -0.4], 3.0).unwrap();
        let est = power_iterate(&k2, 3.0, &x0, &SolverConfig::default()).unwrap();
        assert!((est.value - powf(2.0, 4.0 / 3.0)).abs() < 1e-10);
        let c = powf(2.0, -1.0 / 3.0);
        assert!((est.x[0] - c).abs() < 1e-8 && (est.x[1] + c).abs() < 1e-8);
        assert!(est.converged && est.worst_decrease <= 1e-12);
        assert!((est.multiplier - est.value / 3.0).abs() < 1e-15);
    }

    #[test]
    fn power_iterate_kernel_start_is_nudged() {
        let k2 = gen(Generator::Complete(2));
        let x0 = normalize(&[1.0, 1.0], 2.0).unwrap();
        let est = power_iterate(&k2, 2.0, &x0, &SolverConfig::default()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn power_iterate_routes_small_p() {
        let k2 = gen(Generator::Complete(2));
        let x0 = normalize(&[1.0, -0.2], 1.5).unwrap();
        let est = power_iterate(&k2, 1.5, &x0, &SolverConfig::default()).unwrap();
        assert_eq!(est.method, Method::ProjectedGradient);
    }

    #[test]
    fn power_iterate_rejects_bad_inputs() {
        let k2 = gen(Generator::Complete(2));
        let cfg = SolverConfig::default();
        assert!(matches!(
            power_iterate(&k2, 2.0, &[1.0, 1.0], &cfg),
            Err(Error::NotNormalized { .. })
        ));
        assert!(power_iterate(&Graph::empty(2), 2.0, &[1.0, 0.0], &cfg).is_err());
        assert!(power_iterate(&k2, f64::INFINITY, &[1.0, 0.0], &cfg).is_err());
        let bad = SolverConfig { tol: 0.0, ..cfg };
        assert!(power_iterate(&k2, 2.0, &[1.0, 0.0], &bad).is_err());
    }

    #[test]
    fn projected_gradient_examples() {
        let cfg = SolverConfig::default();
        let k2 = gen(Generator::Complete(2));
        let x0 = normalize(&[0.3, 0.1], 2.0).unwrap();
        let est = projected_gradient(&k2, 2.0, &x0, &cfg).unwrap();
        assert!((est.value - 2.0).abs() < 1e-8);

        let c4 = gen(Generator::Cycle(4));
        let x0 = normalize(&[1.0, -0.5, 0.8, -0.9], 4.0).unwrap();
        let est = projected_gradient(&c4, 4.0, &x0, &cfg).unwrap();
        assert!((est.value - 8.0).abs() < 1e-6, "{}", est.value);
        assert!(projected_gradient(&c4, 1.0, &x0, &cfg).is_err());
    }

    #[test]
    fn multistart_examples() {
        let cfg = SolverConfig::default();
        let k4 = multistart(&gen(Generator::Complete(4)), 2.0, &cfg).unwrap();
        assert!((k4.value - 4.0).abs() < 1e-9);
        let k5 = multistart(&gen(Generator::Complete(5)), 2.0, &cfg).unwrap();
        assert!((k5.value - 5.0).abs() < 1e-9);
        let star = multistart(&gen(Generator::Star(3)), 10.0, &cfg).unwrap();
        let exact = mu_complete_bipartite(1, 3, 10.0).unwrap().value;
        assert!((star.value - exact).abs() < 1e-6);
        assert!(star.value <= exact + 1e-8);
        assert!(multistart(&Graph::empty(3), 2.0, &cfg).is_err());
    }

    #[test]
    fn multistart_single_restart() {
        let cfg = SolverConfig {
            restarts: 1,
            ..SolverConfig::default()
        };
        let est = multistart(&gen(Generator::Star(3)), 2.0, &cfg).unwrap();
        assert!((est.value - 4.0).abs() < 1e-9);
    }

    #[test]
    fn kkt_residual_examples() {
        let k2 = gen(Generator::Complete(2));
        for p in [1.5, 2.0, 3.0, 10.0] {
            let c = powf(2.0, -1.0 / p);
            assert!(kkt_residual(&k2, p, &[c, -c]).unwrap() < 1e-12);
        }
        let star = gen(Generator::Star(3));
        let r = kkt_residual(&star, 2.0, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        assert!(kkt_residual(&star, 2.0, &[1.0, 1.0, 0.0, 0.0]).is_err());

        let c4 = gen(Generator::Cycle(4));
        let est = multistart(&c4, 3.0, &SolverConfig::default()).unwrap();
        assert!(kkt_residual(&c4, 3.0, &est.x).unwrap() < 1e-6);
    }

    #[test]
    fn threshold_cut_examples() {
        let p3 = gen(Generator::Path(3));
        let cut = threshold_cut(&p3, &[1.0, -1.0, 1.0]).unwrap();
        assert_eq!((cut.s(), cut.t(), cut.cut_size), (vec![0, 2], vec![1], 2));
        let all = threshold_cut(&p3, &[1.0; 3]).unwrap();
        assert_eq!((all.t().len(), all.cut_size), (0, 0));
        let zeros = threshold_cut(&p3, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(zeros.side_mask, vec![false, true, false]);

        let c5 = gen(Generator::Cycle(5));
        let est = multistart(&c5, 32.0, &SolverConfig::default()).unwrap();
        let cut = threshold_cut(&c5, &est.x).unwrap();
        assert_eq!(cut.cut_size, max_cut_bruteforce(&c5).unwrap().cut_size);
        assert_eq!(cut.cut_size, 4);
    }

    #[test]
    fn estimate_is_on_sphere_and_consistent() {
        let g = gen(Generator::Random {
            n: 9,
            edge_probability: 0.5,
            seed: 11,
        });
        for p in [1.5, 2.0, 3.0, 8.0] {
            let est = multistart(&g, p, &SolverConfig::default()).unwrap();
            assert!((p_norm_unchecked(&est.x, p) - 1.0).abs() < 1e-10);
            assert!((quadratic_form(&g, &est.x).unwrap() - est.value).abs() < 1e-10 * 81.0);
        }
    }
}
