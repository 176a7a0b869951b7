//! Exact computations behind Galois-deformation numerology over CM fields.

pub mod error;
pub mod field;
pub mod linalg;
pub mod local_tame;
pub mod numerology;
pub mod padic_weights;
pub mod root_datum;
pub mod selmer_lab;

pub use error::{Error, Result};
pub use field::{Elem, Fq};
pub use linalg::{Matrix, Quotient, Subspace};
pub use local_tame::{AdjointModule, TameGaloisModule};
pub use root_datum::{CartanType, Family, RootDatum, TorusElement, Weight};
