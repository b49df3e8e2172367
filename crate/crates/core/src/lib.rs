//! Lifted successor generation for numeric planning.
//!
//! Applicable ground actions of a schema are enumerated as k-cliques of a
//! substitution consistency graph. Edges are removed for variable clashes,
//! unmatched positive literals, violated negative literals and, for the
//! numeric generator, numeric preconditions that an interval relaxation
//! proves unsatisfiable. A final exact applicability check filters the
//! candidates.

pub mod assign;
pub mod bitset;
pub mod cli;
pub mod clique;
pub mod exactness;
pub mod graph;
pub mod interval;
pub mod metrics;
pub mod model;
pub mod pddl;
pub mod satgadget;
pub mod search;
pub mod successor;
