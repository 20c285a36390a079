//! Equilibrium-action simulation for network games and inference of the
//! hidden interaction graph from observed actions.
//!
//! The library covers the full pipeline:
//!
//! * [`linalg`] — dense symmetric eigendecomposition (cyclic Jacobi), linear
//!   solves, pseudoinverse application, Gaussian sampling, and a seedable,
//!   splittable RNG so every stochastic stage is reproducible.
//! * [`graphs`] — Erdős-Rényi, Watts-Strogatz and Barabási-Albert generators
//!   plus the symmetric degree normalization `A = D^{-1/2} W D^{-1/2}`.
//! * [`games`] — benefit sampling from a graph-smoothness prior and
//!   equilibrium actions for linear quadratic, linear influence and
//!   Barik-Honorio games, with their analytic action covariances.
//! * [`analysis`] — spectral filter responses, graph Fourier coefficients
//!   and eigenvalue statistics of the generated graphs.
//! * [`dataset`] — end-to-end synthetic dataset generation, action
//!   normalization, observation noise, and a JSON-lines on-disk format.
//! * [`autodiff`] — a minimal dense-tensor reverse-mode engine with the
//!   layer primitives, masked cross-entropy loss and Adam optimizer used
//!   for training.
//! * [`nugget`] — the NuGgeT encoder-decoder (permutation-equivariant over
//!   nodes, permutation-invariant over games), training loop and inference.
//! * [`baselines`] — correlation, anticorrelation and graphical lasso edge
//!   scoring with a validation-set regularization sweep.
//! * [`eval`] — ROC AUC and thresholded accuracy over node pairs with
//!   mean / standard-error aggregation across test graphs.

pub mod analysis;
pub mod autodiff;
pub mod baselines;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod games;
pub mod graphs;
pub mod linalg;
pub mod nugget;

pub use error::{Error, Result};
pub use linalg::{EigenDecomposition, Matrix, Rng};
