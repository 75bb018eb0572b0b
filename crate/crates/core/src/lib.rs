//! Finitary combinatorics of located words: combinatorial and extended
//! lines, reduction homomorphisms onto integer configurations, and a search
//! engine for monochromatic witnesses, avoidance colorings,
//! minimal-universe numbers, CNF export and grid-partition counterexamples.

pub mod configurations;
pub mod grids;
pub mod reductions;
pub mod search;
pub mod universe;
pub mod words;

pub use configurations::{
    ap_family, combinatorial_line, enumerate_extended_lines, enumerate_plain_lines,
    CombinatorialLine, ConfigError, ConfigFamily, ExtendedLine, FamilySpec,
};
pub use grids::{bad_pattern_set, geo_arith_set, nhat, ohat, power_grid, s_grid, PatternBox};
pub use reductions::{
    additive_derived, derived_params, identity_check, pullback_coloring, reduce, BaseColoring,
    DerivedTriple, ReduceError, ReductionKind,
};
pub use search::{
    avoidance_search, export_cnf, find_witness, grid_counterexample_search, minimal_n,
    verify_partition, Coloring, GridKind, GridPartition, GridSearchConfig, Hypergraph, Limits,
    LineInstance, LineMode, MinimalN, SearchError, SearchOptions, SearchOutcome, Witness,
};
pub use universe::{Universe, WordSpace, DEFAULT_UNIVERSE_CAP};
pub use words::{decompose_variable_word, Alphabet, LocatedWord, Symbol, VariableWord, WordError};
