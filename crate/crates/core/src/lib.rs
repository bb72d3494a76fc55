//! Exact Lorentz representations on Minkowski space and the linear masses of
//! asymptotically hyperbolic metrics built from them.

pub mod error;
pub mod exactcore;
pub mod harmonic;
pub mod weylspace;
pub mod lorentz;
pub mod massaspect;
pub mod invariants;
pub mod charges;
pub mod verify;

pub use error::{Error, Result};
pub use exactcore::{Field, Poly, PolyTensor, GQ, Q};
