//! Monochromatic-witness search and minimal-universe numbers.

use rayon::prelude::*;

use super::{
    avoidance_search, enumerate_lines, line_hypergraph, Coloring, Limits, LineInstance,
    LineMode, SearchError, SearchOptions, SearchOutcome,
};
use crate::universe::Universe;
use crate::words::Alphabet;

/// A monochromatic line together with its color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub line: LineInstance,
    pub color: u32,
}

/// Returns the canonically least line all of whose points share one color,
/// or `None` when the coloring avoids every line in the window.
pub fn find_witness(
    coloring: &Coloring,
    universe: &Universe,
    mode: &LineMode,
    limits: &Limits,
) -> Result<Option<Witness>, SearchError> {
    if coloring.len() as u64 != universe.size() {
        return Err(SearchError::InvalidColoring(format!(
            "coloring has {} entries but the universe has {} words",
            coloring.len(),
            universe.size()
        )));
    }
    let lines = enumerate_lines(universe, mode, limits.line_cap)?;
    let hit = lines
        .into_par_iter()
        .find_map_first(|line| monochrome_color(&line, coloring, universe).map(|color| Witness {
            line,
            color,
        }));
    Ok(hit)
}

/// The shared color of a line's points, if they all agree.
pub fn monochrome_color(
    line: &LineInstance,
    coloring: &Coloring,
    universe: &Universe,
) -> Option<u32> {
    let mut points = line.points().into_iter();
    let first = coloring.color(universe.rank(&points.next()?).ok()? );
    for p in points {
        if coloring.color(universe.rank(&p).ok()?) != first {
            return None;
        }
    }
    Some(first)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalN {
    /// Least window at which every r-coloring has a monochromatic line.
    Found(u32),
    /// No such window up to the bound.
    Exceeded(u32),
}

/// Computes the least `n <= n_max` such that the avoidance search over the
/// n-universe is unsatisfiable for `r` colors. Unsatisfiability is monotone
/// in n (the line set only grows with the window), so the first hit is the
/// minimal one.
pub fn minimal_n(
    alphabet: Alphabet,
    r: u32,
    mode: &LineMode,
    n_max: u32,
    limits: &Limits,
) -> Result<MinimalN, SearchError> {
    let options = SearchOptions {
        node_cap: limits.node_cap,
        ..Default::default()
    };
    for n in 1..=n_max {
        let universe = Universe::with_cap(n, alphabet, limits.universe_cap)?;
        let hypergraph = line_hypergraph(&universe, mode, limits)?;
        if hypergraph.edges().is_empty() {
            continue; // nothing to be monochrome: trivially avoidable
        }
        if avoidance_search(&hypergraph, r, &options)? == SearchOutcome::Unsat {
            return Ok(MinimalN::Found(n));
        }
    }
    Ok(MinimalN::Exceeded(n_max))
}
