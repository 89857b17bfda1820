//! Tolerant identifying codes on Z² with Euclidean balls.
//!
//! Every radius is handled through its exact square, every membership or
//! comparison decision is integer arithmetic.

pub mod exact;
pub mod lattice;
pub mod codes;
pub mod patterns;
pub mod verify;
pub mod bounds;
