//! Staircase diagrams over Coxeter-Dynkin graphs.
//!
//! A staircase diagram is a partially ordered collection of connected
//! "blocks" of graph vertices subject to chain, saturation, and extremality
//! axioms. Over the Dynkin graph of a Weyl group, diagrams carrying a
//! nearly-maximal labelling are in bijection with group elements admitting a
//! complete Billey-Postnikov decomposition, and in particular with the
//! indices of smooth and rationally smooth Schubert varieties in the
//! classical types A, B, C, and D.
//!
//! The crate provides:
//!
//! * [`graphs`]: classical Dynkin graphs and generic loop-free graphs;
//! * [`staircase`]: the diagram data structure, validation, and poset queries;
//! * [`coxeter`]: a signed-permutation kernel for the classical Weyl groups,
//!   parabolic and BP decompositions, Bruhat order, and the rational
//!   smoothness oracle;
//! * [`labelling`]: diagram labellings, the product map into the group, the
//!   bijection with complete BP decompositions, and the type-BC rationally
//!   smooth labellings;
//! * [`enumeration`]: exhaustive diagram search, elementary decomposition,
//!   the Catalan extension operator, and the Z diagram families;
//! * [`series`]: exact truncated power series over big rationals, the
//!   generating series for all five classical families, closed forms, and
//!   singularity asymptotics.

pub mod coxeter;
pub mod enumeration;
pub mod error;
pub mod graphs;
pub mod labelling;
pub mod series;
pub mod staircase;
pub mod tables;
pub mod vertexset;

pub use error::Error;
pub use graphs::{DynkinGraph, Family};
pub use staircase::StaircaseDiagram;
pub use vertexset::VertexSet;
