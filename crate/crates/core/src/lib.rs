//! Brauer-type diagram supercategories with tokens from a superalgebra,
//! their incarnation functors on module categories, and exact checks of
//! faithfulness and fullness.

pub mod diagram;
pub mod error;
pub mod formslie;
pub mod incarnate;
pub mod linalg;
pub mod oriented;
pub mod scalar;
pub mod superalg;
pub mod unoriented;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use superalg::{AlgElem, Field, Parity, SuperAlgebra, SuperMatrix};
pub use formslie::{FormSpec, FullnessReport};
pub use incarnate::{FormIncarnation, GlIncarnation, LinearMap, SuperModule};
