//! Exact truncated p-typical Witt vectors and displays in matrix form.
//!
//! The crate is organized bottom-up:
//!
//! - [`ring`]: exact base rings (`Z`, `Z/m`, `Q`, finite fields, polynomial
//!   rings, truncations by ideal powers).
//! - [`witt`]: `W_N(R)` with ghost maps, Frobenius, Verschiebung,
//!   Teichmüller lifts and the universal addition/multiplication polynomials.
//! - [`matrix`]: matrices over `W_N(R)` and over `R`.
//! - [`display`]: displays in matrix form, coordinate changes, nilpotence,
//!   duality and the height-two reduction.
//! - [`dieudonne`]: Dieudonné modules over finite fields.
//! - [`moduli`]: the Hopf algebroid presenting displays and their
//!   isomorphisms.
//! - [`deformation`]: the projective point of a display, the Jacobian étale
//!   test and a brute-force first-order deformation count.
//! - [`period`]: horizontal sections and the algebraic period map.
//! - [`cli`] and [`acceptance`]: the command-line surface and the built-in
//!   self test.

pub mod acceptance;
pub mod cli;
pub mod deformation;
pub mod dieudonne;
pub mod display;
pub mod error;
pub mod matrix;
pub mod moduli;
pub mod period;
pub mod ring;
pub mod serial;
pub mod witt;

pub use error::{Error, Result};
pub use ring::{Elem, Ring, RingDescriptor};
pub use witt::WittVector;
