//! Inputs shared by the benchmarks.

use std::sync::Arc;

use cubical::model::{shape_subobject, Shape};
use cubical::presheaf::Presheaf;
use cubical::qshape::q_object;

/// `∂Δ^n` truncated at `n`.
pub fn boundary(n: usize) -> Arc<Presheaf> {
    shape_subobject(Shape::BoundarySimplex { n }, n).expect("boundaries exist for n ≥ 0").0
}

/// `Q^n` truncated at `n`.
pub fn q(n: usize) -> Arc<Presheaf> {
    Arc::new(q_object(n, n))
}
