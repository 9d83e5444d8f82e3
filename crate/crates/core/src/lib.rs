//! Exact wall-and-chamber computations for Bridgeland stability of Mukai
//! vectors on abelian surfaces, and the induced nef and movable cones.

pub mod arith;
pub mod atlas;
pub mod charge;
pub mod cli;
pub mod cones;
pub mod error;
pub mod forms;
pub mod lattice;
pub mod pell;
pub mod perp;
pub mod quadext;
pub mod report;
pub mod svg;
pub mod sym2;

pub use arith::{Int, Rat};
pub use error::{Error, Result};
