//! Cubical sets with connections, simplicial sets, and the functors between
//! them, computed exactly on finite truncations.

pub mod adjunctions;
pub mod boxcat;
pub mod error;
pub mod homology;
pub mod io;
pub mod model;
pub mod presheaf;
pub mod qshape;
pub mod site;
pub mod suite;

pub use error::{Error, Result};
pub use site::{Flavor, Generator, Op};
