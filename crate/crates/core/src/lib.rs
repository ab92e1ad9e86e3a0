//! Computational kernel for Krasner hyperrings.
//!
//! Two backends share the same vocabulary:
//!
//! * finite hyperrings given by Cayley-style tables ([`kernel`], [`ideals`],
//!   [`closure`], [`poly`]), where every predicate is decided exhaustively;
//! * the value hyperfield over `ℤᵏ` with lexicographic order
//!   ([`valuefield`], [`valuation`]), where ideals are prefix cuts and every
//!   closed form is backed by a bounded-window brute-force oracle.
//!
//! Finite carriers admit only trivial hypervaluations, so everything about
//! valuation rings is exercised on the symbolic backend.

pub mod closure;
pub mod error;
pub mod ideals;
pub mod kernel;
pub mod known;
pub mod poly;
pub mod report;
pub mod set;
pub mod valuation;
pub mod valuefield;

pub use error::{Error, Result};
pub use kernel::{Elem, FiniteHyperring};
pub use set::ElementSet;
