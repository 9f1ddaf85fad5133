//! Weighted minimax and maximin node systems on the torus.
//!
//! A node system `y = (y_1, ..., y_n)` on `T = R/Z` together with a concave kernel `K`,
//! positive coefficients `ν_j` and an external field `J` defines the sum of translates
//! `F(y, t) = J(t) + Σ ν_j K(t - y_j)`. The nodes cut the circle into `n` arcs and the
//! suprema of `F` over them, the arc maxima, drive everything in this crate: minimizing
//! their maximum, maximizing their minimum, and finding the equioscillating systems
//! where all of them agree.
//!
//! With the log-sine kernel `K(t) = log|sin πt|` and `J = log w` this is the weighted
//! sup-norm problem for generalized trigonometric polynomials `Π |sin π(t - z_j)|^{ν_j}`.

pub mod cli;
pub mod counterexamples;
mod error;
pub mod ext_real;
pub mod fields;
pub mod kernels;
pub mod perturb;
pub mod problem_file;
mod search;
pub mod solvers;
pub mod sumtrans;
pub mod torus;

pub use error::{Error, Result};
pub use fields::PiecewiseField;
pub use kernels::{Kernel, SmoothingMode};
pub use sumtrans::{ArcMaxima, MaxConfig, NodeSystem, Problem};
pub use torus::{Arc, TorusPoint};
