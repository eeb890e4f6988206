//! Laplacian p-spectral radius of simple graphs.
//!
//! For a simple graph `G` on `n` vertices with Laplacian `L = D - A`, the
//! p-spectral radius is
//!
//! ```text
//! mu_p(G) = max { x^T L x : ||x||_p = 1 },   F_G(x) = x^T L x = sum_{ij in E} (x_i - x_j)^2
//! ```
//!
//! The crate is split into:
//!
//! - [`graph`]: the immutable [`Graph`] type, generators, complements, components.
//! - [`kernels`]: `F_G`, `L x`, p-norms, the Hölder-dual maximizer.
//! - [`solvers`]: nonlinear power iteration (p >= 2), projected gradient
//!   ascent (1 < p < 2), multistart and the KKT stationarity residual.
//! - [`oracles`]: exact values at `p = 1` (maximum degree), `p = 2` (top
//!   Laplacian eigenvalue), `p = inf` (four times the max cut), the closed form
//!   on complete bipartite graphs, a brute-force grid oracle and the spanning
//!   balanced biclique certificate.
//! - [`analysis`]: p-grid sweeps and a claim-by-claim verification report.
//!
//! Everything here is `no_std` with `alloc`; parsing, CLI and output formats
//! live in the `lapmu` crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod graph;
pub mod kernels;
mod math;
pub mod oracles;
pub mod solvers;

pub use analysis::{
    sweep, upper_bound, verify_theorems, Check, CheckId, CheckStatus, Method, Sweep, SweepRow,
    VerificationReport, DEFAULT_GRID,
};
pub use error::{Error, Result};
pub use graph::{Generator, Graph, PartitionCut};
pub use oracles::{
    grid_oracle, has_spanning_balanced_biclique, max_cut_bruteforce, max_cut_bruteforce_with_guard,
    mu_complete_bipartite, mu_one, mu_two, BipartiteClosedForm, DegreeCertificate, EigenEstimate,
    MAXCUT_GUARD,
};
pub use solvers::{
    kkt_residual, multistart, power_iterate, projected_gradient, threshold_cut, MuEstimate,
    SolverConfig,
};
