//! The stable category of graded `H_n`-modules: free summands, stable hom
//! spaces, the shift functor and cones.

mod hom;
mod strip;
mod triangle;

pub use hom::{injective_hull_factor, is_null_homotopic, null_homotopic_basis, rho, stable_hom, stable_hom_in_degree, StableHom};
pub use strip::{strip_projectives, StrippedModule};
pub use triangle::{cone, shift_minus, shift_plus, shift_times, suspension, Cone};
