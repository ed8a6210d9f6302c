//! Numerical toolkit for steady water waves in three formulations.
//!
//! The crate represents travelling-wave flows as gridded fields in the
//! velocity variables `(u, v, P)`, the stream function `psi`, or the
//! Dubreil-Jacotin streamline height `h`, converts between the three,
//! evaluates the weak (distributional) residuals of each formulation, and
//! measures the mollification rates that control when the formulations are
//! interchangeable at low regularity.
//!
//! Layout:
//! - [`geometry`]: periodic fluid domains, terrain-following grids, strip
//!   grids, and interior regions with their mollification headroom.
//! - [`formulations`]: the three solution types plus pointwise invariant
//!   checks.
//! - [`synth`]: exact laminar flows, Weierstrass-type rough fields, and
//!   rough perturbations of exact solutions.
//! - [`transforms`]: stream-function construction, hodograph transforms,
//!   Bernoulli field and vorticity-profile extraction.
//! - [`mollification`]: compact bump kernels, mollified fields, quadratic
//!   remainders, and rate studies.
//! - [`weakcheck`]: weak residuals against compactly supported test
//!   functions and the flux-decomposition studies.
//! - [`io`]: the solution container format shared with the CLI.

pub mod error;
pub mod formulations;
pub mod geometry;
pub mod io;
pub mod mollification;
pub mod numerics;
pub mod report;
pub mod synth;
pub mod testfn;
pub mod transforms;
pub mod weakcheck;

pub use error::{Error, Result};
pub use formulations::{Solution, 
    BernoulliField, FlowParameters, HeightSolution, StreamSolution, VelocitySolution,
    VorticityProfile,
};

/// Configures the global worker pool used by the parallel sweeps.
///
/// `None` leaves the pool at its default size. All parallel reductions in
/// the crate use a fixed summation order, so results do not depend on the
/// thread count.
pub fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        // Ignore failure: the pool can only be initialised once per process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}
