//! Exact computation in quantum cluster algebras.
//!
//! The crate builds the type-A quantum seed attached to the category of
//! `U_q(ŝl₂)`-modules `𝒞_n`, mutates quantum seeds inside a based quantum
//! torus, and checks that the generators `X_0, X_2, …, X_{2n}` satisfy the
//! presentation of the deformed Grothendieck ring `Rep_{t,n}`.
//!
//! Module map:
//! - [`qcoeff`]: the scalar ring `Z[q^{±1/2}]`
//! - [`torus`]: quantum torus arithmetic and exact division
//! - [`laurent`]: the commutative `q = 1` shadow
//! - [`seed`]: compatible pairs, seeds, mutation, exchange graphs
//! - [`sl2`]: the seed `(Λ_n, B̃_n)` and its generators
//! - [`words`]: noncommutative polynomials in the generators
//! - [`grothendieck`]: the presented ring, normal forms and `ι_n`
//! - [`cli`]: batch commands behind the `qcluster` binary

pub mod cli;
pub mod error;
pub mod grothendieck;
pub mod laurent;
pub mod qcoeff;
pub mod seed;
pub mod sl2;
pub mod torus;
pub mod words;

pub use error::{Error, Result};
pub use qcoeff::HalfPowerLaurent;
pub use seed::{CompatiblePair, ExchangeGraph, ExchangeMatrix, QuantumSeed};
pub use sl2::Sl2Instance;

pub use torus::{ExponentVector, SkewForm, TorusElement};
