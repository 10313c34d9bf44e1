//! Morphism calculus for □ (with connections) and Δ.

mod cube;
mod identities;
mod normal;
mod simplex;

pub use cube::{box_generator, box_is_valid, BoxMap, Coord, GenKind, Support, MAX_DIM};
pub use identities::{cubical_identities, simplicial_identities, Identity};
pub use normal::NormalForm;
pub use simplex::SimplexMap;
