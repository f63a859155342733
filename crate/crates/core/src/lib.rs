//! Exact computation with value quantales and finite continuity spaces:
//! symmetry classes, Cauchy filters, roundification and the completion by
//! minimal Cauchy filters, together with the oracles and generators used to
//! check the theory on enumerated and random instances.

pub mod completion;
pub mod error;
pub mod filters;
pub mod io;
pub mod pointset;
pub mod quantale;
pub mod samples;
pub mod structures;
pub mod verify;
pub mod vspace;

pub use error::{Error, Result};
pub use filters::{Filter, MinimalityMethod, MorphismFailure};
pub use pointset::PointSet;
pub use vspace::{Classification, Modulus, Side, VSpace, Verdict};
