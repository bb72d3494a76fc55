//! Linearized gravity on Minkowski space and the polynomial Weyl spaces.

pub mod forms;
pub mod hw;

pub mod potential;
pub mod space;
pub mod tensors;

pub use forms::{poincare_homotopy, PolyForm};

pub use space::{build_wp, signature_wp, WeylSpace};
pub use potential::weyl_to_potential;
pub use tensors::{de_donder_fix, linearized_einstein, linearized_riemann};
