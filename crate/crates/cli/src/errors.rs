//! Error-to-exit-code mapping.
//!
//! Exit codes: 0 success, 2 malformed input or configuration, 3 parity
//! violation (even degree on an even-interval grid, or Method 2 on an
//! even-interval grid), 4 singular system. Anything else (I/O failures
//! while writing, internal invariant breaks) exits 1.

use std::fmt;

use splinedft::bench::BenchError;
use splinedft::boundary::BoundaryError;
use splinedft::kernel::KernelError;
use splinedft::numerics::NumericsError;
use splinedft::spline::SplineError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed files, invalid configuration.
    Usage(String),
    /// Structural parity restriction; the grid cannot carry this degree.
    Parity(String),
    /// A linear system came back singular.
    Singular(String),
    /// Everything else: write failures, internal errors.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parity(_) => 3,
            CliError::Singular(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::Parity(m)
            | CliError::Singular(m)
            | CliError::Internal(m) => f.write_str(m),
        }
    }
}

fn from_numerics(e: NumericsError) -> CliError {
    match e {
        NumericsError::SingularMatrix { .. } => CliError::Singular(e.to_string()),
        NumericsError::PrecisionTooLow { .. } => CliError::Usage(e.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

fn from_kernel(e: KernelError) -> CliError {
    match e {
        KernelError::ParityViolation { .. } => CliError::Parity(e.to_string()),
        KernelError::InvalidConfig(_) => CliError::Usage(e.to_string()),
        KernelError::Numerics(n) => from_numerics(n),
        other => CliError::Internal(other.to_string()),
    }
}

impl From<SplineError> for CliError {
    fn from(e: SplineError) -> Self {
        match e {
            SplineError::Kernel(k) => from_kernel(k),
            SplineError::Numerics(n) => from_numerics(n),
            SplineError::InvalidSamples(_)
            | SplineError::BoundaryLength { .. }
            | SplineError::Format(_) => CliError::Usage(e.to_string()),
            SplineError::OutOfDomain { .. } | SplineError::DerivativeOrder { .. } => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

impl From<BoundaryError> for CliError {
    fn from(e: BoundaryError) -> Self {
        match e {
            // Method 2's odd-N requirement is the same structural class as
            // the even/even restriction: the grid cannot carry the request.
            BoundaryError::EvenNNotSupported { .. } => CliError::Parity(e.to_string()),
            BoundaryError::SingularSystem { .. } => CliError::Singular(e.to_string()),
            BoundaryError::LengthMismatch { .. } => CliError::Usage(e.to_string()),
            BoundaryError::Kernel(k) => from_kernel(k),
            BoundaryError::Numerics(n) => from_numerics(n),
            BoundaryError::Spline(s) => s.into(),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::InvalidConfig(_) | BenchError::DomainMismatch(_) => {
                CliError::Usage(e.to_string())
            }
            BenchError::Parity { .. } => CliError::Parity(e.to_string()),
            BenchError::Spline(s) => s.into(),
            BenchError::Boundary(b) => b.into(),
            BenchError::Numerics(n) => from_numerics(n),
        }
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        from_numerics(e)
    }
}

/// Read errors are the user's input; classify as usage problems.
pub fn read_err(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Usage(format!("cannot read {}: {e}", path.display()))
}

/// Write errors are environment problems, not usage.
pub fn write_err(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Internal(format!("cannot write {}: {e}", path.display()))
}
