//! Surjective curves with a prescribed continuity modulus onto discretized Peano continua.

pub mod analysis;
pub mod assembler;
pub mod cellset;
pub mod cli;
pub mod connectors;
pub mod continuum;
pub mod covers;
pub mod error;
pub mod io;
pub mod modulus;
pub mod path;
pub mod raster;
pub mod skeleton;
pub mod svg;

pub use cellset::{CellSet, Region};
pub use continuum::{Cell, Continuum, Shape};
pub use error::{Error, Result};
