//! Exact Nash equilibria of bimatrix games with small supports.
//!
//! Everything is computed over arbitrary-precision rationals, so an
//! equilibrium returned by any solver satisfies the best-response conditions
//! exactly. Besides plain support enumeration the crate has search
//! procedures whose cost is exponential only in structural parameters:
//!
//! - [`sparse`]: games with at most ℓ nonzeros per row and column, searched
//!   through small subgraphs of the game graph.
//! - [`unbalanced`]: games where the row player has few strategies.
//! - [`pattern`]: games over a small set of payoff values, searched through
//!   the submatrix pattern at the supports.
//!
//! [`oracle`] is an independent brute-force reference used for testing.
//!
//! ```
//! use nash_fpt::game::{verify_equilibrium, BimatrixGame};
//! use nash_fpt::sparse::{sparse_solve, SparseInstance};
//!
//! let pennies = BimatrixGame::from_i64(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]]);
//! let inst = SparseInstance::tight(pennies.clone(), 2).unwrap();
//! let p = sparse_solve(&inst).unwrap();
//! assert!(verify_equilibrium(&pennies, &p).unwrap().is_equilibrium());
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod game;
pub mod generators;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod pattern;
pub mod rational;
pub mod solve;
pub mod sparse;
pub mod stats;
pub mod support;
pub mod unbalanced;

pub use error::{Error, Result};
pub use game::{verify_equilibrium, BimatrixGame, MixedProfile, Support, Verdict};
pub use rational::{RatMatrix, Rational};
pub use solve::{run_solver, Algorithm};
