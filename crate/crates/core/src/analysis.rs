//! p-grid sweeps and the claim-by-claim verification report.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionCut};
use crate::kernels::{basis, quadratic_form_unchecked};
use crate::math::powf;
use crate::oracles::{
    has_spanning_balanced_biclique, max_cut_bruteforce_with_guard, mu_one, mu_two, MAXCUT_GUARD,
};
use crate::solvers::{multistart, threshold_cut, MuEstimate, SolverConfig};

/// Default sweep grid, geometric in the tail.
pub const DEFAULT_GRID: [f64; 6] = [2.0, 3.0, 4.0, 8.0, 16.0, 32.0];

/// Slack for "nondecreasing in p": solver values are lower bounds.
pub const MONOTONE_SLACK: f64 = 1e-6;
/// Absolute slack on `value <= n^(2-2/p)` and on `value <= 4 maxcut`.
pub const BOUND_SLACK: f64 = 1e-8;
/// Relative tolerance for declaring `value = n^(2-2/p)`.
pub const EQUALITY_RTOL: f64 = 1e-6;
/// Margin for the strict chain `mu_1 < mu_2 < mu_inf`.
pub const STRICT_MARGIN: f64 = 1e-9;
/// Agreement required between multistart and the eigen-solver at `p = 2`.
pub const EIGEN_AGREEMENT: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactDegree,
    ExactMaxcut,
    ExactEigen,
    PowerIteration,
    ProjectedGradient,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactDegree => "exact-degree",
            Method::ExactMaxcut => "exact-maxcut",
            Method::ExactEigen => "exact-eigen",
            Method::PowerIteration => "power-iteration",
            Method::ProjectedGradient => "projected-gradient",
            Method::ClosedForm => "closed-form",
        }
    }
}

impl core::fmt::Display for Method {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `n^(2 - 2/p)` for `p >= 2`, and `n^2` at `p = inf`.
pub fn upper_bound(n: usize, p: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(p >= 2.0) {
        return Err(Error::InvalidExponent {
            p,
            reason: "the n^(2-2/p) bound is stated for p >= 2",
        });
    }
    let n = n as f64;
    if p == f64::INFINITY {
        return Ok(n * n);
    }
    Ok(powf(n, 2.0 - 2.0 / p))
}

/// One sample of `p -> mu_p(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// `1.0` and `f64::INFINITY` mark the exact endpoints.
    pub p: f64,
    pub value: f64,
    pub method: Method,
    pub residual: Option<f64>,
    pub bound: Option<f64>,
    pub iterations: Option<usize>,
    /// `value >= previous row value - 1e-6`; `None` on the first row.
    pub monotone_ok: Option<bool>,
    /// `value <= 4 maxcut + 1e-8`; `None` when the max cut was not computed.
    pub below_limit: Option<bool>,
    /// `|value - mu_2|` on the `p = 2` grid row.
    pub eigen_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub max_cut: Option<PartitionCut>,
    pub notes: Vec<String>,
}

impl Sweep {
    /// All recorded monotonicity and limit post-checks hold.
    pub fn checks_ok(&self) -> bool {
        self.rows.iter().all(|r| {
            r.monotone_ok.unwrap_or(true)
                && r.below_limit.unwrap_or(true)
                && r.eigen_gap.is_none_or(|d| d <= EIGEN_AGREEMENT)
        })
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|&p| !(p > 1.0) || !p.is_finite()) {
        return Err(Error::InvalidGrid("grid values must lie in (1, inf)"));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid("grid must be strictly increasing"));
    }
    Ok(())
}

/// Rows for `p = 1`, every grid value, and `p = inf` when the graph is within
/// the default max-cut guard.
pub fn sweep(g: &Graph, grid: &[f64], cfg: &SolverConfig) -> Result<Sweep> {
    sweep_with_guard(g, grid, cfg, MAXCUT_GUARD)
}

pub fn sweep_with_guard(
    g: &Graph,
    grid: &[f64],
    cfg: &SolverConfig,
    guard: usize,
) -> Result<Sweep> {
    Ok(sweep_detailed(g, grid, cfg, guard)?.0)
}

fn sweep_detailed(
    g: &Graph,
    grid: &[f64],
    cfg: &SolverConfig,
    guard: usize,
) -> Result<(Sweep, Vec<MuEstimate>)> {
    validate_grid(grid)?;
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n();
    let mut notes = Vec::new();

    let max_cut = match max_cut_bruteforce_with_guard(g, guard) {
        Ok(cut) => Some(cut),
        Err(Error::Guard { n, guard, .. }) => {
            notes.push(format!(
                "p=inf row omitted: n={n} exceeds the max-cut guard {guard}"
            ));
            None
        }
        Err(e) => return Err(e),
    };
    let limit = max_cut.as_ref().map(|c| 4.0 * c.cut_size as f64);
    let eigen = if grid.contains(&2.0) {
        Some(mu_two(g)?.value)
    } else {
        None
    };

    let mut rows = Vec::with_capacity(grid.len() + 2);
    rows.push(SweepRow {
        p: 1.0,
        value: mu_one(g)?.value as f64,
        method: Method::ExactDegree,
        residual: None,
        bound: None,
        iterations: None,
        monotone_ok: None,
        below_limit: None,
        eigen_gap: None,
    });

    let mut estimates = Vec::with_capacity(grid.len());
    for &p in grid {
        let est = multistart(g, p, cfg)?;
        if est.failed_starts > 0 {
            notes.push(format!(
                "p={p}: {} of {} starts failed; best of the rest reported",
                est.failed_starts, cfg.restarts
            ));
        }
        rows.push(SweepRow {
            p,
            value: est.value,
            method: est.method,
            residual: Some(est.residual),
            bound: if p >= 2.0 { Some(upper_bound(n, p)?) } else { None },
            iterations: Some(est.iterations),
            monotone_ok: None,
            below_limit: None,
            eigen_gap: if p == 2.0 {
                eigen.map(|e| (est.value - e).abs())
            } else {
                None
            },
        });
        estimates.push(est);
    }

    if let Some(l) = limit {
        rows.push(SweepRow {
            p: f64::INFINITY,
            value: l,
            method: Method::ExactMaxcut,
            residual: None,
            bound: Some(upper_bound(n, f64::INFINITY)?),
            iterations: None,
            monotone_ok: None,
            below_limit: None,
            eigen_gap: None,
        });
    }

    for i in 1..rows.len() {
        let prev = rows[i - 1].value;
        let row = &mut rows[i];
        row.monotone_ok = Some(row.value >= prev - MONOTONE_SLACK);
        row.below_limit = limit.map(|l| row.value <= l + BOUND_SLACK);
    }
    Ok((
        Sweep {
            rows,
            max_cut,
            notes,
        },
        estimates,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckId {
    /// `mu_1 = max degree`.
    MaxDegree = 1,
    /// `mu_inf = 4 maxcut`.
    MaxCut = 2,
    /// `mu_1 < mu_2 < mu_inf`.
    StrictIncrease = 3,
    /// Nondecreasing along the default grid.
    GridMonotone = 4,
    /// `mu_p <= n^(2-2/p)`, equality iff a spanning `K_{n/2,n/2}`.
    UpperBound = 5,
    /// `F(x) <= n^(1-2/p) mu_2` at the returned maximizers.
    ScaledEigenBound = 6,
    /// Threshold-cut sizes versus the max cut (report only).
    ThresholdCuts = 7,
}

impl CheckId {
    pub const ALL: [CheckId; 7] = [
        CheckId::MaxDegree,
        CheckId::MaxCut,
        CheckId::StrictIncrease,
        CheckId::GridMonotone,
        CheckId::UpperBound,
        CheckId::ScaledEigenBound,
        CheckId::ThresholdCuts,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn claim(self) -> &'static str {
        match self {
            CheckId::MaxDegree => "mu_1 equals the maximum degree",
            CheckId::MaxCut => "mu_inf equals four times the maximum cut",
            CheckId::StrictIncrease => "mu_1 < mu_2 < mu_inf",
            CheckId::GridMonotone => "mu_p nondecreasing over the default grid",
            CheckId::UpperBound => {
                "mu_p <= n^(2-2/p), equality iff G contains a spanning K_{n/2,n/2}"
            }
            CheckId::ScaledEigenBound => "F(x) <= n^(1-2/p) mu_2 at every returned maximizer",
            CheckId::ThresholdCuts => "sign-threshold cuts of the maximizers versus the max cut",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
    Info,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
            CheckStatus::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: CheckId,
    pub status: CheckStatus,
    pub tolerance: f64,
    pub measured: Vec<Measurement>,
    pub details: String,
}

impl Check {
    fn new(id: CheckId, tolerance: f64) -> Self {
        Check {
            id,
            status: CheckStatus::Pass,
            tolerance,
            measured: Vec::new(),
            details: String::new(),
        }
    }

    fn measure(&mut self, label: impl Into<String>, value: f64) {
        self.measured.push(Measurement {
            label: label.into(),
            value,
        });
    }

    fn require(&mut self, ok: bool) {
        if !ok {
            self.status = CheckStatus::Fail;
        }
    }

    fn note(&mut self, text: &str) {
        if !self.details.is_empty() {
            self.details.push_str("; ");
        }
        self.details.push_str(text);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub edges: usize,
    /// One entry per [`CheckId`], in order.
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// No check failed; skipped and informational checks do not count.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, id: CheckId) -> &Check {
        self.checks
            .iter()
            .find(|c| c.id == id)
            .expect("every check is present")
    }
}

pub fn verify_theorems(g: &Graph, cfg: &SolverConfig) -> Result<VerificationReport> {
    verify_theorems_with_guard(g, cfg, MAXCUT_GUARD)
}

/// Runs every check on `g`. Checks needing the max cut are skipped, never
/// failed, when `n` exceeds `guard`.
pub fn verify_theorems_with_guard(
    g: &Graph,
    cfg: &SolverConfig,
    guard: usize,
) -> Result<VerificationReport> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n();
    let (sweep, estimates) = sweep_detailed(g, &DEFAULT_GRID, cfg, guard)?;
    let one = mu_one(g)?;
    let two = mu_two(g)?;
    let limit = sweep.max_cut.as_ref().map(|c| 4.0 * c.cut_size as f64);
    let mut checks = Vec::with_capacity(CheckId::ALL.len());

    // 1
    let mut c = Check::new(CheckId::MaxDegree, 0.0);
    let delta = g.max_degree()?;
    let at_basis = quadratic_form_unchecked(g, &basis(n, one.vertex));
    c.measure("mu_1", one.value as f64);
    c.measure("max_degree", delta as f64);
    c.measure("F(e_a)", at_basis);
    c.require(one.value == delta && at_basis == delta as f64);
    c.details = format!("attained at e_{}", one.vertex);
    checks.push(c);

    // 2
    let mut c = Check::new(CheckId::MaxCut, 0.0);
    match &sweep.max_cut {
        Some(cut) => {
            let signs: Vec<f64> = cut
                .side_mask
                .iter()
                .map(|&s| if s { 1.0 } else { -1.0 })
                .collect();
            let f = quadratic_form_unchecked(g, &signs);
            c.measure("maxcut", cut.cut_size as f64);
            c.measure("mu_inf", 4.0 * cut.cut_size as f64);
            c.measure("F(+-1 cut vector)", f);
            c.require(f == 4.0 * cut.cut_size as f64);
            c.details = String::from("brute force over all bipartitions");
        }
        None => {
            c.status = CheckStatus::Skip;
            c.details = format!("n={n} exceeds the max-cut guard {guard}");
        }
    }
    checks.push(c);

    // 3
    let mut c = Check::new(CheckId::StrictIncrease, STRICT_MARGIN);
    c.measure("mu_1", one.value as f64);
    c.measure("mu_2", two.value);
    c.require(one.value as f64 + STRICT_MARGIN < two.value);
    match limit {
        Some(l) => {
            c.measure("mu_inf", l);
            c.require(two.value + STRICT_MARGIN < l);
        }
        None => c.note("upper end skipped: max cut beyond guard"),
    }
    checks.push(c);

    // 4
    let mut c = Check::new(CheckId::GridMonotone, MONOTONE_SLACK);
    for row in &sweep.rows {
        c.measure(p_label(row.p), row.value);
    }
    c.require(sweep.checks_ok());
    for note in &sweep.notes {
        c.note(note);
    }
    checks.push(c);

    // 5
    let mut c = Check::new(CheckId::UpperBound, EQUALITY_RTOL);
    let certificate = n.is_multiple_of(2) && has_spanning_balanced_biclique(g);
    let mut bounds_hold = true;
    let mut equality_matches = true;
    for est in &estimates {
        let bound = upper_bound(n, est.p)?;
        c.measure(format!("mu_{}", est.p), est.value);
        c.measure(format!("bound_{}", est.p), bound);
        bounds_hold &= est.value <= bound + BOUND_SLACK;
        let equal = (bound - est.value).abs() <= EQUALITY_RTOL * bound;
        equality_matches &= equal == certificate;
    }
    c.require(bounds_hold);
    if n.is_multiple_of(2) {
        c.measure("biclique_certificate", if certificate { 1.0 } else { 0.0 });
        c.require(equality_matches);
        c.details = format!(
            "equality {} at every p; spanning K_{{{h},{h}}} {}",
            if certificate { "holds" } else { "strict" },
            if certificate { "present" } else { "absent" },
            h = n / 2
        );
    } else {
        if c.status == CheckStatus::Pass {
            c.status = CheckStatus::Info;
        }
        c.details = String::from("bound holds; n odd: equality condition out of scope");
    }
    checks.push(c);

    // 6
    let mut c = Check::new(CheckId::ScaledEigenBound, BOUND_SLACK);
    for est in estimates.iter().filter(|e| e.p >= 2.0) {
        let cap = powf(n as f64, 1.0 - 2.0 / est.p) * two.value;
        c.measure(format!("F_{}", est.p), est.value);
        c.measure(format!("cap_{}", est.p), cap);
        c.require(est.value <= cap + BOUND_SLACK);
    }
    checks.push(c);

    // 7
    let mut c = Check::new(CheckId::ThresholdCuts, 0.0);
    c.status = CheckStatus::Info;
    let mut hits = 0;
    for est in &estimates {
        let cut = threshold_cut(g, &est.x)?;
        c.measure(format!("cut_{}", est.p), cut.cut_size as f64);
        if let Some(mc) = &sweep.max_cut {
            hits += usize::from(cut.cut_size == mc.cut_size);
        }
    }
    match &sweep.max_cut {
        Some(mc) => {
            c.measure("maxcut", mc.cut_size as f64);
            c.details = format!(
                "{hits} of {} grid maximizers induce a maximum cut",
                estimates.len()
            );
        }
        None => c.details = String::from("max cut beyond guard"),
    }
    checks.push(c);

    Ok(VerificationReport {
        n,
        edges: g.edge_count(),
        checks,
    })
}

fn p_label(p: f64) -> String {
    if p == f64::INFINITY {
        String::from("mu_inf")
    } else {
        format!("mu_{p}")
    }
}
