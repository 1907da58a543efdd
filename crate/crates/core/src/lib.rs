//! Exact inducibility of complete multipartite and Turán graphs.
//!
//! The induced density of a complete multipartite `F` in the graphon
//! `W[x_1, ..., x_m]` is a symmetric polynomial `P_{F,m}` in the part sizes;
//! `i_k(F)` is its maximum over the simplex with `m = k - 1`. For Turán
//! graphs the maximizer is an equipartition with a closed-form value.

pub mod arith;
pub mod checks;
pub mod density;
pub mod error;
pub mod graphs;
pub mod optimize;
pub mod oracle;
pub mod profile;
pub mod turan;

pub use arith::BigRational;
pub use error::{Error, Result};
pub use graphs::Graph;
pub use profile::PartiteProfile;
