//! Biaffine coherent configurations.
//!
//! Builds the configuration `M(p)` on the `2p²` points and lines of the biaffine plane,
//! its mergings `M1`–`M4`, `N6` and `N5.1`, and provides the machinery to verify them:
//! intersection tensors, Weisfeiler–Leman closure, automorphism groups of three kinds,
//! algebraic mergings and exact spectra.

pub mod algmerge;
pub mod arith;
pub mod autgrp;
pub mod biaffine;
pub mod catalog;
pub mod color;
pub mod error;
pub mod perm;
pub mod spectra;
pub mod wl;

pub use color::{compute_tensor, merge_colors, validate_color_graph, Color, ColorGraph, ColorPartition, IntersectionTensor};
pub use error::{Error, Result};
pub use perm::{two_orbit_graph, PermGroup, Permutation};
