//! Exact computation of moments and cumulants of creation, annihilation and
//! gauge operators on deformed Fock spaces, together with the digraph
//! polynomials (cycle cover and cycle indicator polynomials) that describe
//! vacuum expectations of multidimensional Dyck words.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: exact rationals, sparse multivariate polynomials and the
//!   [`Scalar`] coefficient abstraction.
//! - [`partitions`]: set and pair partitions, the partition lattice and its
//!   Möbius function, crossing statistics and un-crossing maps.
//! - [`words`]: operator words, path classification, canonical matchings.
//! - [`digraph`]: digraphs of Dyck words, cycle covers, cover and indicator
//!   polynomials by brute force and by cut-and-fuse.
//! - [`fock`]: truncated simulators for the q-Fock, N-character and
//!   Vershik–Kerov Fock spaces, and the pair-partition expectation oracle.
//! - [`cumulant`]: partitioned moments and cumulants over exchangeable copies.
//! - [`theorems`]: executable identities pitting two independent
//!   computations against each other.
//!
//! ```
//! use fockcum::cumulant::{cumulant, VariableTemplate};
//! use fockcum::words::parse_word;
//! use fockcum::{FockModel, MultiPoly, SetPartition};
//!
//! let model = FockModel::<MultiPoly>::q_symbolic(2)?;
//! let w = parse_word("a1 a1 c1 c1")?;
//! assert_eq!(model.vacuum_expectation(&w)?.to_string(), "1+q");
//!
//! let x = "a1+c1".parse::<VariableTemplate>()?.realize::<MultiPoly>();
//! let model = FockModel::<MultiPoly>::q_symbolic(4)?;
//! assert!(cumulant(&model, &vec![x.clone(); 4], &SetPartition::coarsest(4))?.is_zero());
//! assert_eq!(cumulant(&model, &vec![x; 2], &SetPartition::coarsest(2))?.to_string(), "1");
//! # Ok::<(), fockcum::Error>(())
//! ```

pub mod algebra;
pub mod cumulant;
pub mod digraph;
mod error;
pub mod fock;
pub mod partitions;
pub mod theorems;
pub mod words;

pub use algebra::{ComplexFloat, MultiPoly, Rational, Scalar};
pub use digraph::{CycleCover, WeightedDigraph};
pub use error::{Error, Result};
pub use fock::{FockModel, FockVector, GaugeMatrix, ThomaParams};
pub use partitions::{PairPartition, Permutation, SetPartition};
pub use words::{FlatWord, OpKind, OpToken, PowerWord, Word};
