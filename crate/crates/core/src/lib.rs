//! Stockwell-like frames for Sobolev spaces.
//!
//! The crate builds frames of L^2(R^d) (d = 1, 2) whose weighted coefficient
//! energies characterize Sobolev norms and seminorms. A frame element is an
//! exponential sum over the integer lattice of one band of a dyadic
//! frequency partition, localized by a window and translated on a lattice
//! whose step shrinks with the band scale:
//!
//! ```text
//! phi_{j,k,lambda}(t) = T_{lambda / 2^j} ( n_{j,k} sum_{eta in Z_{j,k}} e^{2 pi i eta t} phi(t) )
//! phi_{bullet,lambda}(t) = T_lambda phi(t)
//! ```
//!
//! What lives where:
//!
//! - [`partition`]: admissible frequency partitions, integer lattices,
//!   enlargements, contractions and grid validation.
//! - [`window`]: the analytic window catalog and band symbols
//!   `Phi_{j,k} = sum_eta phi_hat(. - eta)`.
//! - [`admissibility`]: numerical verification of the decay / lower-bound
//!   conditions a window must satisfy for a given Sobolev index.
//! - [`frame`]: frame elements, fast analysis, Gram matrices and the frame
//!   operator in direct and Walnut forms.
//! - [`sobolev`]: reference norms, coefficient energies, frame-bound
//!   estimation and the test-signal catalog.
//! - [`cli`]: the command-line driver behind the `stframe` binary.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod admissibility;
pub mod cli;
pub mod error;
pub mod frame;
pub mod grid;
pub mod partition;
pub mod sobolev;
pub mod window;

pub use error::{Error, Result};
