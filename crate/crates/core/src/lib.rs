//! Planar functions over binary fields through the Galois ring `GR(4, n)`:
//! relative difference sets, Z4 codes with Lee weight distributions and the
//! algebraic curves attached to monomials.

pub mod curve;
pub mod gf2;
pub mod gr4;
pub mod planar;
pub mod rds;
pub mod z4code;

pub use gf2::{FieldCtx, FieldElement, FieldError};
pub use gr4::{RingCtx, RingElement, RingError};
pub use planar::{FuncTable, PlanarError};
