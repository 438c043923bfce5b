//! Exact occupation-ratio calculus for the hard-core model.
//!
//! The crate evaluates independence polynomials and occupation ratios of bounded-degree
//! rooted graphs exactly over `Q[i]`, provides the Möbius dynamics behind the ratio
//! recursions, region predicates around the cardioid, a certified search for fast
//! implementers together with the tree-building pipeline they enable, and Cayley-tree
//! activity renderers.

pub mod cayley;
pub mod exact_arith;
pub mod fast_impl;
pub mod graph_core;
pub mod hp;
pub mod moebius;
pub mod poly;
pub mod regions;

pub use exact_arith::{GaussianRational, Rational, RationalDisk};
pub use moebius::{Moebius, SpherePoint};
