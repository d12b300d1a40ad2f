//! Exact symbolic computation with cluster algebras over `Z`.
//!
//! Layers, bottom up: the Laurent kernel ([`laurent`]), seeds and mutation
//! ([`seed`]), exchange-graph exploration ([`explore`]), ring-theoretic
//! checks ([`analysis`]) and the explicit families ([`constructions`]).
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod laurent;
pub mod seed;
pub mod explore;
pub mod analysis;
pub mod constructions;

pub use laurent::{FieldTag, KernelError, LaurentPoly, RationalFn};
pub use seed::{ExchangeMatrix, Quiver, Seed, SeedError, SeedProfile};
