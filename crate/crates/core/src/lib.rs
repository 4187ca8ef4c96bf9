//! Computational decorated Teichmüller theory.
//!
//! The crate is `no_std` and needs only `alloc`. It covers:
//!
//! - [`geom`]: Minkowski light-cone geometry, lambda lengths, h-lengths,
//!   Ptolemy flips and simplicial coordinates of decorated quadrilaterals.
//! - [`triangulation`]: ideal triangulations of punctured (or bordered)
//!   surfaces with lambda-length decorations, flips, cycles of triangles,
//!   the convex-hull cell of a decorated polygon and the Delaunay flip search.
//! - [`solver`]: recovery of lambda lengths from simplicial coordinates by
//!   constrained minimization of the coupling energy.
//! - [`arc_complex`]: polygon arc complexes, suspension, links, tableaux and
//!   integral homology via Smith normal form.
//! - [`fatgraph`]: ribbon graphs, boundary cycles, Whitehead moves and the
//!   recurrent/non-recurrent decomposition.
//! - [`operad`]: exhaustive weighted arc families and their composition by
//!   band refinement, with exact rational weights.
//! - [`rna`]: bondings on a backbone and the band surfaces whose boundary
//!   components are pseudo-knots.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arc_complex;
pub mod fatgraph;
pub mod geom;
pub mod linalg;
pub mod math;
pub mod operad;
pub mod rna;
pub mod scalar;
pub mod solver;
pub mod triangulation;

pub use scalar::{Rational, Scalar};
