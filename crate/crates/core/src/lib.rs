//! Word problem and subsemigroup membership for semigroups that are finite
//! disjoint unions `S = N_a ∪ N_b ∪ ⋯` of free monogenic semigroups.
//!
//! Such a semigroup is given by an alphabet and, for each ordered pair of
//! distinct letters, the normal form of `a^k b` for every `k`. Those values
//! are eventually periodic in `k` with affine exponents, so a finite
//! [`ActionTable`](presentation::ActionTable) describes the whole
//! multiplication.
//!
//! ```
//! use monogenic_union::presentation::load_table;
//! use monogenic_union::wordproblem::normalize;
//!
//! let table = load_table(
//!     "letters: a b\n\
//!      rel: a 1 b -> a 2\nrel: a 2 b -> a 3\n\
//!      rel: b 1 a -> a 2\nrel: b 2 a -> a 3\n",
//! )
//! .unwrap();
//! let w = table.alphabet().parse_word("a^3 b^2 a").unwrap();
//! assert_eq!(table.alphabet().format_nf(&normalize(&table, &w).unwrap()), "a^6");
//! ```
//!
//! Modules, bottom up:
//!
//! - [`element`]: letters, normal forms `a^k`, words and their syntax.
//! - [`eps`]: eventually periodic subsets of ℕ.
//! - [`numsg`]: numerical subsemigroups as `[d, N, F]` triples.
//! - [`presentation`]: `.sgp` files, compilation and validation of tables.
//! - [`wordproblem`]: normal forms of words with arbitrarily large exponents.
//! - [`membership`]: saturation, deciding membership in `⟨A_T⟩`.
//! - [`oracle`]: brute-force rewriting and search for cross-checks.
//! - [`fixtures`]: small certified semigroups.
//! - [`cli`]: the `sgp` command.

pub mod cli;
pub mod element;
pub mod eps;
pub mod error;
pub mod fixtures;
pub mod membership;
pub mod numsg;
pub mod oracle;
pub mod presentation;
pub mod wordproblem;

pub use element::{Alphabet, Letter, NormalForm, Word};
pub use error::{Error, Result};
