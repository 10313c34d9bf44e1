//! The functors between simplicial and cubical presheaves: `Q ⊣ ∫`, the
//! geometric product, and triangulation `T ⊣ U`.

mod coreflection;
mod tensor;
mod triangulation;

pub use coreflection::{
    apply_int, apply_int_map, apply_q, apply_q_map, counit, counit_with, product_comparison, representable_iso, unit,
    unit_with, CoendPresentation, IntImage,
};
pub use tensor::geometric_product;
pub use triangulation::{cube_nerve, triangulate, u_functor};
