//! Permutation statistics around the inversion hyperplane arrangement.
//!
//! For `w` in `S_n` this crate computes the number of regions `re(w)` of
//! the arrangement `{x_i = x_j : (i, j) an inversion of w}`, the number of
//! acyclic orientations `ao(w)` of the inversion graph, the rook count
//! `rk(w)` on the complement of the south-west diagram, and the sizes
//! `wk(w)` and `br(w)` of the lower intervals `[id, w]` in the weak and
//! Bruhat orders, together with their Poincaré polynomials. The [`verify`]
//! module checks the relations between them exhaustively over small `S_n`.

pub mod arrangement;
pub mod error;
pub mod oracle;
pub mod orders;
pub mod perm;
pub mod poly;
pub mod rook;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{InversionSet, LehmerCode, Pattern, PatternBundle, Permutation};
pub use poly::QPolynomial;
