//! Benchmark harness: test functions, error tables, and the transform demo.
//!
//! This module reproduces the published accuracy experiments end to end:
//! closed-form test functions with derivatives of every order
//! ([`TestFunctionId`]), max/average interpolation error on refined grids
//! ([`error_report`]), a grid runner emitting CSV/JSON rows with the
//! not-a-knot gain column and published reference cells ([`run_benchmark`]),
//! the exact Fourier transform of a spline ([`spline_fourier_transform`]),
//! and the damped-oscillator transform demonstration ([`ft_demo_curves`]).

pub mod demo;
pub mod fourier;
pub mod functions;
pub mod harness;
pub mod reference;

pub use demo::{default_omega_grid, ft_demo_curves, DemoBc, DemoCurves, DEMO_N};
pub use fourier::{ft_demo_reference, piece_moments, spline_fourier_transform};
pub use functions::TestFunctionId;
pub use harness::{
    error_report, required_digits, run_benchmark, BenchConfig, BenchRow, BenchTable,
    ErrorReport, MethodTag, PiecewiseEval, RowStatus, CSV_HEADER,
};
pub use reference::published_cell;

use crate::boundary::BoundaryError;
use crate::numerics::NumericsError;
use crate::spline::SplineError;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("parity violation: degree {theta} is even and the demo grid has even N = {n}")]
    Parity { theta: usize, n: usize },
    #[error(transparent)]
    Spline(#[from] SplineError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
