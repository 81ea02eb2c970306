//! Lossless compression of a source block when a correlated copy is
//! available only at the decoder, using syndromes of Reed-Solomon and binary
//! BCH codes, list decoding, and a short CRC to pick the right list entry.
//!
//! Module map:
//! - [`gf`]: GF(2^m) arithmetic, polynomials and linear solves.
//! - [`rscode`], [`bchcode`]: code construction, syndromes, unique decoding.
//! - [`listdecode`]: Guruswami-Sudan list decoding and exhaustive oracles.
//! - [`crc`]: polynomial checksums over the symbol field.
//! - [`correlation`]: the q-ary symmetric correlation model and binomial tails.
//! - [`planner`]: closed-form code selection and compression-rate tables.
//! - [`codec`]: packets, the encoder/decoder pair and the feedback protocol.

pub mod bchcode;
pub mod codec;
pub mod correlation;
pub mod crc;
pub mod gf;
pub mod listdecode;
pub mod planner;
pub mod rscode;

pub use gf::{Field, Symbol};
