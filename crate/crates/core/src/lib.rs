//! Linear codes over the four-element non-unital ring `I` built from
//! simplicial-complex defining sets, their Lee weight distributions, binary
//! Gray images, and certificates for minimality, self-orthogonality and
//! Griesmer optimality.

pub mod boolean_geometry;
pub mod cli;
pub mod code_analysis;
pub mod code_construction;
pub mod packed;
pub mod ring_i;
