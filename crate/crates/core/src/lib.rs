//! Generalized quasi ordinal diagrams: label orders, terms, the indexed
//! quasi orderings `≤ᵠᵢ` and `⋘`, gap-condition tree embedding, and a
//! Buchholz-style hydra game whose every move is checked for strict
//! `⋘`-descent.

pub mod cli;
pub mod embedding;
pub mod gen;
pub mod labels;
mod matching;
pub mod ordering;
pub mod rewrite;
pub mod terms;

pub use labels::{load_order_spec, CombinedOrder, Index, Leaf, OrderError};
pub use ordering::{Comparator, Comparison, Level};
pub use terms::{parse, Position, Term, TermError, TermKind};
