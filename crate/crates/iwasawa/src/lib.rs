//! Iwasawa continued fractions.
//!
//! This crate implements continued fraction algorithms on Iwasawa inversion
//! spaces: the boundaries `X^n_k = k^n × Im(k)` of the rank-one symmetric
//! spaces over `k ∈ {R, C, H, O}`. That family covers the classical real CF
//! variants (regular, backwards, nearest-integer, Nakada α, even, Rosen),
//! the complex Hurwitz family, quaternionic and octonionic CFs, and the
//! Heisenberg CFs, together with their folded completions.
//!
//! The main pieces:
//!
//! * [`algebra`] — scalars over R/C/H/O in two backends (exact quadratic
//!   rationals, doubles) and matrices over the associative kinds.
//! * [`space`] — the group law, gauge and Cygan metric, dilations, Koranyi
//!   inversions, the projective embedding `φ(z,w) = (1, √2 z, w + ‖z‖²)`,
//!   the signature-(n+1,1) pairing, and the projective Möbius action.
//! * [`lattice`] — the preset catalog (lattices `Z`, fundamental domains
//!   `K`, nearest-integer floor maps) with radius and properness checks.
//! * [`cf`] — the Gauss map, digit extraction, convergent words/matrices,
//!   errors, denominators, and tail comparison.
//! * [`modular`] — word enumeration in `M = ⟨Z, ι⟩`, canonical forms,
//!   stabilizer classification, central-symmetry search, and the mod-q
//!   quotient search.
//! * [`geodesic`] — real-case hyperbolic geodesics, wall intersections, and
//!   the marking procedure with empirical calibration of its constants.
//! * [`experiments`] — seeded Monte-Carlo experiments (digit statistics,
//!   convergence, cylinder cells, tail equivalence, skew products, horoball
//!   disjointness).
//! * [`render`] / [`cli`] — SVG emission and the command-line driver.
//!
//! Every operation is pure and every type immutable after construction, so
//! values can be freely shared across threads; experiments parallelize with
//! per-sample counter-derived seeds and are bit-deterministic for a fixed
//! `(config, seed)` regardless of worker count.

pub mod algebra;
pub mod cf;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod geodesic;
pub mod lattice;
pub mod literal;
pub mod modular;
pub mod render;
pub mod space;

pub use error::{Error, Result};

/// Crate version string embedded in all emitted reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
