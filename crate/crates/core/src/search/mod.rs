//! The finitary search engine: monochromatic-witness finding over bounded
//! universes, avoidance-coloring search (proper hypergraph coloring),
//! minimal-universe numbers, DIMACS CNF export, and the grid-partition
//! counterexample search.
//!
//! All searches are deterministic: lines and words are visited in canonical
//! order, colors ascending, and parallel runs merge results in canonical
//! order, so output never depends on the worker count.

mod backtrack;
mod cnf;
mod grid;
mod witness;

pub use backtrack::{avoidance_search, SearchOptions, SearchOutcome};
pub use cnf::{cnf_clause_count, cnf_string, decode_cnf_assignment, export_cnf};
pub use grid::{grid_counterexample_search, verify_partition, GridKind, GridPartition, GridSearchConfig};
pub use witness::{find_witness, minimal_n, MinimalN, Witness};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::configurations::{
    enumerate_extended_lines, enumerate_plain_lines, CombinatorialLine, ConfigError,
    ExtendedLine, FamilySpec,
};
use crate::universe::Universe;
use crate::words::{LocatedWord, WordError};

pub const DEFAULT_NODE_CAP: u64 = 1 << 24;
pub const DEFAULT_PARTITION_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl SearchError {
    /// True for any cap-exceeded condition, including nested ones.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            SearchError::ResourceLimit(_)
                | SearchError::Word(WordError::ResourceLimit { .. })
                | SearchError::Config(ConfigError::ResourceLimit { .. })
        )
    }
}

/// Resource caps for searches; every cap is overridable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Max words in a universe.
    pub universe_cap: u64,
    /// Max enumerated lines.
    pub line_cap: u64,
    /// Max backtracking nodes per search branch.
    pub node_cap: u64,
    /// Max partitions considered per grid.
    pub partition_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            universe_cap: crate::universe::DEFAULT_UNIVERSE_CAP,
            line_cap: crate::configurations::DEFAULT_LINE_CAP,
            node_cap: DEFAULT_NODE_CAP,
            partition_cap: DEFAULT_PARTITION_CAP,
        }
    }
}

/// A total assignment of colors `1..=r` to the words of a universe,
/// indexed by canonical rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    num_colors: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(num_colors: u32, colors: Vec<u32>) -> Result<Self, SearchError> {
        if num_colors < 1 {
            return Err(SearchError::InvalidColoring("need at least one color".into()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c < 1 || c > num_colors) {
            return Err(SearchError::InvalidColoring(format!(
                "color {c} outside 1..={num_colors}"
            )));
        }
        Ok(Coloring { num_colors, colors })
    }

    /// Every word gets the same color `c` (and the palette is `1..=c`).
    pub fn constant(c: u32, size: u64) -> Result<Self, SearchError> {
        Self::new(c.max(1), vec![c; size as usize])
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, rank: u64) -> u32 {
        self.colors[rank as usize]
    }
}

/// Which line configurations a search ranges over: classical combinatorial
/// lines, or extended lines with F drawn from a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineMode {
    Plain,
    Extended(FamilySpec),
}

/// A single line configuration found or enumerated by the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineInstance {
    Plain(CombinatorialLine),
    Extended(ExtendedLine),
}

impl LineInstance {
    pub fn points(&self) -> Vec<LocatedWord> {
        match self {
            LineInstance::Plain(l) => l.points(),
            LineInstance::Extended(l) => l.points(),
        }
    }

    pub fn alpha(&self) -> &LocatedWord {
        match self {
            LineInstance::Plain(l) => l.alpha(),
            LineInstance::Extended(l) => l.alpha(),
        }
    }

    pub fn gamma(&self) -> &BTreeSet<u32> {
        match self {
            LineInstance::Plain(l) => l.gamma(),
            LineInstance::Extended(l) => l.gamma(),
        }
    }

    /// The progression part F; empty for plain lines.
    pub fn f_set(&self) -> BTreeSet<u32> {
        match self {
            LineInstance::Plain(_) => BTreeSet::new(),
            LineInstance::Extended(l) => l.f().clone(),
        }
    }
}

/// All line instances of the given mode inside the universe, canonical order.
pub fn enumerate_lines(
    universe: &Universe,
    mode: &LineMode,
    line_cap: u64,
) -> Result<Vec<LineInstance>, SearchError> {
    match mode {
        LineMode::Plain => Ok(enumerate_plain_lines(universe, line_cap)?
            .into_iter()
            .map(LineInstance::Plain)
            .collect()),
        LineMode::Extended(spec) => {
            let family = spec.at_window(universe.n());
            Ok(enumerate_extended_lines(universe, &family, line_cap)?
                .into_iter()
                .map(LineInstance::Extended)
                .collect())
        }
    }
}

/// A hypergraph on word ranks; one edge per distinct line point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges are sorted and deduplicated; duplicate edges collapse to the
    /// first occurrence. Edges need at least two distinct vertices.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self, SearchError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for mut edge in edges {
            edge.sort_unstable();
            edge.dedup();
            if edge.len() < 2 {
                return Err(SearchError::InvalidHypergraph(
                    "edges need at least two vertices".into(),
                ));
            }
            if *edge.last().unwrap() >= vertex_count {
                return Err(SearchError::InvalidHypergraph(format!(
                    "vertex {} out of range",
                    edge.last().unwrap()
                )));
            }
            if seen.insert(edge.clone()) {
                out.push(edge);
            }
        }
        Ok(Hypergraph {
            vertex_count,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Edge indices grouped by their largest vertex. With vertices colored
    /// in ascending order an edge can only become monochrome when its
    /// largest vertex is colored, so these are exactly the edges to check.
    pub(crate) fn edges_by_max(&self) -> Vec<Vec<usize>> {
        let mut by_max = vec![Vec::new(); self.vertex_count];
        for (i, edge) in self.edges.iter().enumerate() {
            by_max[*edge.last().unwrap()].push(i);
        }
        by_max
    }

    /// True iff no edge is monochrome under the coloring.
    pub fn is_proper(&self, coloring: &Coloring) -> bool {
        self.edges.iter().all(|edge| {
            let first = coloring.color(edge[0] as u64);
            !edge.iter().all(|&v| coloring.color(v as u64) == first)
        })
    }
}

/// Builds the line hypergraph of a universe: vertices are word ranks, one
/// edge per distinct line point set.
pub fn line_hypergraph(
    universe: &Universe,
    mode: &LineMode,
    limits: &Limits,
) -> Result<Hypergraph, SearchError> {
    let lines = enumerate_lines(universe, mode, limits.line_cap)?;
    let mut edges = Vec::with_capacity(lines.len());
    for line in &lines {
        let edge = line
            .points()
            .iter()
            .map(|w| universe.rank(w).map(|r| r as usize))
            .collect::<Result<Vec<_>, _>>()?;
        edges.push(edge);
    }
    Hypergraph::new(universe.size() as usize, edges)
}
