//! Combinatorial and group-theoretic core for the Galois covers of the
//! surfaces `X^{m,n} = CP^1 x T`.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`grid`]: the cylindrical degeneration as an `m x n` grid of split
//!   squares, its dual graph, and the hexagon / horizontal cycle inventory.
//! * [`presentation`]: the involutory branch-curve group `G1`, the Coxeter
//!   quotient `C_Y(T)`, hexagon cycle relators, gamma words and `A_{t,n}`.
//! * [`perm`]: the transposition homomorphism onto `S_{2mn}`, relator checks
//!   and homomorphism counting into small finite groups.
//! * [`homology`]: coset tables, Reidemeister-Schreier rewriting and Smith
//!   normal form for the kernel of `G1 -> S_{2mn}`.
//! * [`prover`]: replayable rewriting proofs for word equalities.
//! * [`invariants`]: singularity census, Chern numbers, index and
//!   irregularity bounds in exact arithmetic.
//!
//! File formats, exports and the command line live in the `galcov` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod finite_group;
pub mod grid;
pub mod homology;
pub mod invariants;
pub mod perm;
pub mod presentation;
pub mod prover;
pub mod word;

pub use error::{Error, Result};
pub use grid::{DegenerationComplex, GridParams};
pub use presentation::{GroupPresentation, RelatorTag};
pub use word::{Letter, Word};
