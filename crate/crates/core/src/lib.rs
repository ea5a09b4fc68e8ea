//! Combinatorics of toric origami manifolds.
//!
//! An origami template is a graph whose vertices carry Delzant polytopes and
//! whose edges carry shared fold facets. From a template this crate derives
//! the faces of the orbit space, the GKM moment graph, the graded dimensions
//! of equivariant cohomology and the ordinary Betti numbers, all in exact
//! arithmetic.

pub mod arith;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod format;
pub mod generate;
pub mod gkm;
pub mod polytope;
pub mod orbit_space;
pub mod poly;
pub mod template;

pub use error::{Error, Result};
