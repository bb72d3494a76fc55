//! Exact arithmetic substrate.

pub mod field;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod sphere;
pub mod tensor;

pub use field::{q, qr, Field, GQ, Q};
pub use linalg::{nullspace, signature_of_form, solve, SparseMatrix, SparseRow, Subspace};
pub use poly::{monomials_of_degree, Mono, Poly};
pub use sphere::{
    hyperboloid_normal_form, sphere_integral, sphere_monomial_integral, sphere_normal_form, vanishes_on_sphere,
    wave_operator,
};
pub use tensor::{Indexer, PolySym2, PolyTensor, PolyTensor4};
