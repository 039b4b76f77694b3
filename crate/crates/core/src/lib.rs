//! Binary matroids over GF(2): minors, duality, circuits, isomorphism,
//! splitting, single-element extensions and quotients, and recognition of
//! graphic, cographic and `C_k` matroids.

pub mod catalog;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod gf2;
pub mod iso;
pub mod matroid;
pub mod recognition;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BitVector, Gf2Matrix};
pub use iso::Isomorphism;
pub use matroid::{BinaryMatroid, GroundSubset};
pub use recognition::{class_ck, has_minor, is_cographic, is_graphic, Membership, MinorWitness};
