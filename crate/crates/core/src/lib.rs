//! Executable versions of four extremal quantities that turn out to be the
//! same function in disguise:
//!
//! * `ell(n)`, the largest product of positive integers summing to `n`;
//! * `g(n)`, the largest number of maximal independent sets of an `n`-vertex graph;
//! * `s(m)`, the fewest sets in a separating cover of `m` elements (an inverse of `ell`);
//! * the largest integer writable with `n` ones under `+` and `*`, via integer complexity.
//!
//! Every closed form is paired with a brute-force oracle in [`oracles`], and
//! the constructions that link the quantities live in [`graph`], [`duality`]
//! and [`complexity`].

pub mod cli;
pub mod closed_forms;
pub mod complexity;
pub mod duality;
pub mod error;
pub mod graph;
pub mod oracles;

pub use closed_forms::{ell, max_with_ones, perrin, s_of, BigNat};
pub use complexity::{
    complexity_table, format_expression, graph_from_expression, minimal_expression,
    parse_expression, ComplexityTable, Expression,
};
pub use duality::{
    cover_from_graph, graph_from_cover, minimal_cover, validate_cover, CoverReport,
    SeparatingCover,
};
pub use error::{Error, Result};
pub use graph::{
    closed_neighborhood, complete_graph, count_mis, cycle_graph, disjoint_union, enumerate_mis,
    extremal_graph, join, ExtremalVariant, Graph, VertexSet,
};
