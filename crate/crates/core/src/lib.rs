//! Cubic maximal nontraceable graphs built by inflating `K4` with maximal
//! hypohamiltonian blocks, and certificates for their properties.

pub mod blocks;
pub mod graph;
pub mod ham;
pub mod inflate;
pub mod verify;
