//! Space-filling functions and curves of any rank `d >= 2` and side `s >= 2`.
//!
//! A curve is generated from a *cell*: a Manhattan Hamiltonian path over the
//! `s^d` lattice points of `{0..s-1}^d` that starts at the origin and leaves
//! through either the diagonally opposite corner or a corner one axis away.
//! Serpentine cells ([`cells::make_serpentine_path`]) exist for every rank and
//! side; with `s = 2` they give the Hilbert curve and its higher-rank analogs,
//! with odd `s` the Peano curve and its precessing (more isotropic) variants.
//!
//! The integer recurrence ([`recurrence::encode`]) maps a scalar to lattice
//! coordinates and [`recurrence::decode`] inverts it. Both scale their working
//! precision automatically, so inputs of any size are accepted. The
//! [`realmap`] module evaluates the unit-cube functions exactly over rationals,
//! and [`analysis`] measures edge isotropy, straight runs and
//! dimension-reduction displacement.
//!
//! ```
//! use num_bigint::BigUint;
//! use sfc_core::cells::{AlignmentVariant, Cell};
//! use sfc_core::recurrence::{decode, encode};
//!
//! let hilbert = Cell::serpentine(2, 2, AlignmentVariant::Adjacent).unwrap();
//! let p = encode(&BigUint::from(4u32), &hilbert);
//! assert_eq!(p.to_u64_vec(), Some(vec![0, 2]));
//! assert_eq!(decode(&p, &hilbert).unwrap(), BigUint::from(4u32));
//! ```

pub mod analysis;
pub mod bundled;
pub mod cells;
pub mod error;
pub mod realmap;
pub mod recurrence;

mod radix;

pub use error::{Error, Result, ValidationError};
