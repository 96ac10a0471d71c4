//! Exact immanants of Cayley tables of finite abelian groups.
//!
//! For an abelian group G of order n the Cayley table `M_G = (x_{a+b})`
//! has immanants
//!
//! `imm_lambda(M_G) = sum_sigma chi^lambda(sigma) prod_a x_{a + sigma(a)}`,
//!
//! sparse polynomials in the `x_g`. This crate computes them exactly, counts
//! their supports (`P(G)`, `D(G)`, `I_lambda(G)`) both by enumeration and by
//! closed formulas, and checks the minor identities that relate the
//! `(4,1^(n-4))` and `(2,2,2,1^(n-6))` immanants.
//!
//! - [`group`]: groups as products of cyclic factors, element indexing
//! - [`partition`], [`character`]: partitions, cycle types, `S_n` characters
//! - [`poly`]: monomials and big-integer polynomials
//! - [`engine`]: full immanants and per-monomial permutation statistics
//! - [`zerosum`], [`support`], [`padic`]: formula-level supports and coefficients
//! - [`linalg`], [`specialization`], [`minors`]: exact rational minor identities

pub mod arith;
pub mod character;
pub mod engine;
pub mod error;
pub mod group;
pub mod linalg;
pub mod minors;
pub mod padic;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod specialization;
pub mod support;
pub mod zerosum;

pub use engine::{immanant, Mode, PermClassStats};
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec, GroupTable};
pub use partition::{CycleType, Partition};
pub use poly::{GroupPolynomial, Monomial};
pub use specialization::RationalSpecialization;
