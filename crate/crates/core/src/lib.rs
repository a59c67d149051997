//! Entropy production of Riemann fans for the Euler system of gas dynamics.
//!
//! The crate compares two solutions of the same 2-D Riemann problem: the
//! classical self-similar solution and the solutions generated by a
//! piecewise-constant fan subsolution. Both are fans in `x₂/t`, so their
//! entropy production rates on `[−L, L]²` are `2L` times a constant, which
//! [`rate::entropy_rate`] computes in closed form.
//!
//! * [`gas`]: ideal-gas thermodynamics.
//! * [`riemann`]: exact 1-D Riemann solver.
//! * [`rate`]: entropy rates, the finite-difference oracle, orderings.
//! * [`subsolution`]: jump conditions and inequalities of the fan subsolution.
//! * [`counterexample`]: the full comparison and `c_v` sweeps.
//! * [`profile`]: fields of the prescribed-entropy-profile construction.
//! * [`io`], [`cli`]: file formats and the command-line front end.

pub mod cli;
pub mod counterexample;
pub mod gas;
pub mod io;
pub mod profile;
pub mod rate;
pub mod riemann;
pub mod subsolution;

pub use gas::{GasConstants, GasState};
pub use riemann::RiemannData;
