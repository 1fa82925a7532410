//! Magnetic modular cubes: arrangement rules, fixed and colored
//! polyomino/polycube enumeration, a global-control assembly planner and
//! Monte Carlo reachability statistics.

pub mod budget;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod magnet;
pub mod montecarlo;
pub mod planner;
pub mod render;

pub use budget::Budget;
pub use error::{Error, Result};
pub use lattice::{Cell, Dim, Dir};
pub use magnet::{Arrangement, Catalog, CubeType, Interaction, Polarity};
