//! Exact computations for the diagram method on acute-angled polyhedra in
//! Lobachevsky spaces, and for the Mori polyhedra of algebraic surfaces.
//!
//! Everything is done over [`Rational`] (arbitrary precision); no decision
//! in this crate goes through floating point. The crate is `no_std` and only
//! needs `alloc`. File formats and the command-line front-end live in the
//! `hypdiagram-cli` crate.
//!
//! Layout:
//!
//! - [`lattice`]: symmetric bilinear forms, signatures, reflections.
//! - [`gram`] and [`graph`]: Gram graphs of vector families, graph metrics,
//!   the elliptic / parabolic / hyperbolic / Lanner taxonomy, Dynkin types.
//! - [`klein`]: exact predicates in the projective (Klein) model.
//! - [`faces`], [`face_lattice`], [`weights`], [`good`], [`bounds`]: the
//!   combinatorial side of the method (face complexes, face averages, angle
//!   weights, good subsets of 3-faces, dimension bounds).
//! - [`surface`]: surface models over a Neron–Severi lattice, Zariski
//!   decomposition, numerical Kodaira dimension, Mori polyhedron typing.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod face_lattice;
pub mod faces;
pub mod good;
pub mod gram;
pub mod graph;
pub mod klein;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod rational;
pub mod subsets;
pub mod surface;
pub mod weights;

pub use error::{Error, Result};
pub use gram::{DynkinType, GramGraph, LabelSet, SubsetClass, VectorFamily};
pub use graph::Distance;
pub use lattice::{BilinearLattice, DefinitenessClass, InertiaSignature, LatticeVector};
pub use rational::Rational;
