//! Additive index of polynomials over finite fields.
//!
//! Every polynomial `P` over F_q (q = p^n) has a unique maximal expansion
//! `P(x) = f(L(x)) + M(x)` in which `L` is a subspace polynomial (a monic
//! p-linearized divisor of `x^q - x`) of largest possible degree and `M` is
//! p-linearized with `deg M < deg L`. Writing `deg L = p^(n-k)`, the integer
//! `k` is the additive index of `P`.
//!
//! The crate computes that decomposition ([`additive`]) and builds on it:
//! value-set sizes, permutation tests and compositional inverses, cycle
//! structures, involutions and linear translators ([`analysis`]), and
//! multiplicative character-sum bounds ([`charsum`]). Every structural
//! answer has a brute-force counterpart over the whole field, and the
//! [`verify`] module runs the two against each other on sampled inputs.

pub mod additive;
pub mod analysis;
pub mod charsum;
pub mod error;
pub mod field;
pub(crate) mod linalg;
pub mod linearized;
pub mod par;
pub mod poly;
pub mod sample;
pub mod verify;

pub use additive::{AdditiveDecomposition, KernelMethod};
pub use error::{Error, Result};
pub use field::{Elt, Field};
pub use linearized::{CosetDecomposition, LinearizedPoly, Subspace};
pub use poly::{lagrange_interpolate, Poly};
