//! Interpolating splines of arbitrary degree from equispaced samples.
//!
//! A periodic-style discrete-Fourier-transform formulation turns spline
//! construction into independent small linear systems, one per frequency.
//! Solving them recovers the derivatives of the spline at every node, so a
//! single pass yields a piecewise-Taylor representation of any odd or even
//! degree `theta`. Unlike the classical tridiagonal constructions, the degree
//! is an input, not a property baked into the algorithm.
//!
//! The quality of the resulting interpolant depends on one remaining choice:
//! the vector of endpoint derivative differences `b_mu = g^(mu)(T) - g^(mu)(0)`
//! (the "boundary vector"). The [`boundary`] module estimates it from the
//! samples alone by minimizing either the summed squared top derivative
//! ([`boundary::method1_boundary`]) or the L2 distance between the degree
//! `theta` and degree `theta - 1` interpolants ([`boundary::method2_boundary`]).
//!
//! The crate also ships reference cubic splines ([`cubic`]), a benchmark
//! harness that reproduces published error tables ([`bench`]), and a closed
//! form Fourier transform of the piecewise representation
//! ([`bench::spline_fourier_transform`]).
//!
//! Everything is generic over the scalar type through [`numerics::Real`]:
//! `f64` for binary64 runs and [`numerics::MpFloat`] (MPFR) when degrees
//! beyond 5 require more working precision.

pub mod bench;
pub mod boundary;
pub mod cubic;
pub mod kernel;
pub mod numerics;
pub mod spline;

pub use numerics::{MpFloat, PrecisionContext, Real};
