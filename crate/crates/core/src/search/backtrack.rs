//! Deterministic backtracking search for proper hypergraph colorings.
//!
//! Vertices are colored in canonical rank order, colors tried ascending, so
//! a found coloring is the lexicographically least proper one. The search
//! tree is split at the first free vertex into one branch per color; the
//! branches are independent and merged in branch order, so the result does
//! not depend on how many workers run them.

use rayon::prelude::*;

use super::{Coloring, Hypergraph, SearchError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node budget per search branch.
    pub node_cap: u64,
    /// Fix the first vertex's color to 1. Sound for proper-coloring search
    /// because the constraints are color-symmetric; the lexicographically
    /// least proper coloring starts with color 1 anyway, so the returned
    /// certificate is unchanged.
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_cap: super::DEFAULT_NODE_CAP,
            symmetry: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The lexicographically least coloring with no monochrome edge.
    Proper(Coloring),
    /// No proper coloring exists.
    Unsat,
}

enum BranchResult {
    Proper(Vec<u32>),
    Unsat,
    Limit,
}

/// Finds the lexicographically least proper `r`-coloring of the hypergraph,
/// or proves that none exists.
pub fn avoidance_search(
    hypergraph: &Hypergraph,
    r: u32,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    if r < 1 {
        return Err(SearchError::InvalidParameter("need at least one color".into()));
    }
    if r > 64 {
        return Err(SearchError::InvalidParameter("at most 64 colors supported".into()));
    }
    let v_count = hypergraph.vertex_count();
    if v_count == 0 {
        return Ok(SearchOutcome::Proper(Coloring::new(r, Vec::new())?));
    }

    let edges_by_max = hypergraph.edges_by_max();

    // Fixed prefix and the vertex the branches split on.
    let (prefix, split) = if options.symmetry {
        (vec![1u32], 1usize)
    } else {
        (Vec::new(), 0usize)
    };

    if split >= v_count {
        // Only the (possibly fixed) first vertex exists; no split possible.
        return finish(
            solve_branch(hypergraph, &edges_by_max, r, prefix, options.node_cap),
            r,
            options.node_cap,
        );
    }

    let first = (1..=r)
        .into_par_iter()
        .find_map_first(|c| {
            let mut assigned = prefix.clone();
            assigned.push(c);
            match solve_branch(hypergraph, &edges_by_max, r, assigned, options.node_cap) {
                BranchResult::Unsat => None,
                other => Some(other),
            }
        });

    match first {
        None => Ok(SearchOutcome::Unsat),
        Some(result) => finish(result, r, options.node_cap),
    }
}

fn finish(result: BranchResult, r: u32, node_cap: u64) -> Result<SearchOutcome, SearchError> {
    match result {
        BranchResult::Proper(colors) => Ok(SearchOutcome::Proper(Coloring::new(r, colors)?)),
        BranchResult::Unsat => Ok(SearchOutcome::Unsat),
        BranchResult::Limit => Err(SearchError::ResourceLimit(format!(
            "backtracking exceeded {node_cap} nodes in a branch"
        ))),
    }
}

/// Sequential lexicographic backtracking with the first `assigned.len()`
/// vertices preassigned.
fn solve_branch(
    hypergraph: &Hypergraph,
    edges_by_max: &[Vec<usize>],
    r: u32,
    assigned: Vec<u32>,
    node_cap: u64,
) -> BranchResult {
    let v_count = hypergraph.vertex_count();
    let edges = hypergraph.edges();
    let start = assigned.len().min(v_count);

    let mut colors = vec![0u32; v_count];
    colors[..start].copy_from_slice(&assigned[..start]);

    // The preassignment itself may already close an edge.
    for v in 0..start {
        if forbidden_mask(edges, edges_by_max, &colors, v) & (1u64 << (colors[v] - 1)) != 0 {
            return BranchResult::Unsat;
        }
    }
    if start == v_count {
        return BranchResult::Proper(colors);
    }

    let mut tried = vec![0u32; v_count];
    let mut forbidden = vec![0u64; v_count];
    let mut pos = start;
    let mut nodes: u64 = 0;
    forbidden[pos] = forbidden_mask(edges, edges_by_max, &colors, pos);

    loop {
        let mut c = tried[pos] + 1;
        while c <= r && forbidden[pos] & (1u64 << (c - 1)) != 0 {
            c += 1;
        }
        if c <= r {
            colors[pos] = c;
            tried[pos] = c;
            nodes += 1;
            if nodes > node_cap {
                return BranchResult::Limit;
            }
            pos += 1;
            if pos == v_count {
                return BranchResult::Proper(colors);
            }
            tried[pos] = 0;
            forbidden[pos] = forbidden_mask(edges, edges_by_max, &colors, pos);
        } else {
            colors[pos] = 0;
            if pos == start {
                return BranchResult::Unsat;
            }
            pos -= 1;
            colors[pos] = 0;
        }
    }
}

/// Colors forbidden at vertex `v`: those that would close an edge whose
/// other vertices (all earlier in the order) already share that color.
fn forbidden_mask(
    edges: &[Vec<usize>],
    edges_by_max: &[Vec<usize>],
    colors: &[u32],
    v: usize,
) -> u64 {
    let mut mask = 0u64;
    'edge: for &e in &edges_by_max[v] {
        let edge = &edges[e];
        let rest = &edge[..edge.len() - 1];
        let first = colors[rest[0]];
        if first == 0 {
            continue;
        }
        for &u in &rest[1..] {
            if colors[u] != first {
                continue 'edge;
            }
        }
        mask |= 1u64 << (first - 1);
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(v, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn search(hg: &Hypergraph, r: u32) -> SearchOutcome {
        avoidance_search(hg, r, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn no_edges_one_color() {
        match search(&h(3, &[]), 1) {
            SearchOutcome::Proper(c) => assert_eq!(c.colors(), &[1, 1, 1]),
            _ => panic!("expected proper coloring"),
        }
    }

    #[test]
    fn single_edge_cases() {
        assert_eq!(search(&h(2, &[&[0, 1]]), 1), SearchOutcome::Unsat);
        match search(&h(2, &[&[0, 1]]), 2) {
            SearchOutcome::Proper(c) => assert_eq!(c.colors(), &[1, 2]),
            _ => panic!("expected proper coloring"),
        }
    }

    #[test]
    fn triangle_of_pairs_needs_three_colors() {
        let hg = h(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(search(&hg, 2), SearchOutcome::Unsat);
        match search(&hg, 3) {
            SearchOutcome::Proper(c) => assert_eq!(c.colors(), &[1, 2, 3]),
            _ => panic!("expected proper coloring"),
        }
    }

    #[test]
    fn result_is_lexicographically_least() {
        // Exhaustive cross-check on a small instance.
        let hg = h(4, &[&[0, 1, 2], &[1, 2, 3], &[0, 3]]);
        let r = 2u32;
        let mut best: Option<Vec<u32>> = None;
        let v = hg.vertex_count();
        for code in 0..(r as u64).pow(v as u32) {
            let mut c = code;
            let colors: Vec<u32> = (0..v)
                .map(|_| {
                    let col = (c % u64::from(r)) as u32 + 1;
                    c /= u64::from(r);
                    col
                })
                .collect();
            // code order is not lex order; compare explicitly.
            let coloring = Coloring::new(r, colors.clone()).unwrap();
            if hg.is_proper(&coloring) && best.as_ref().is_none_or(|b| colors < *b) {
                best = Some(colors);
            }
        }
        match search(&hg, r) {
            SearchOutcome::Proper(c) => assert_eq!(c.colors(), best.unwrap().as_slice()),
            _ => panic!("expected proper coloring"),
        }
    }

    #[test]
    fn symmetry_toggle_does_not_change_result() {
        let cases = [
            h(4, &[&[0, 1, 2], &[1, 2, 3], &[0, 3]]),
            h(3, &[&[0, 1], &[1, 2], &[0, 2]]),
            h(5, &[&[0, 2, 4], &[1, 3], &[0, 1]]),
        ];
        for hg in &cases {
            for r in 1..=3 {
                let with = avoidance_search(
                    hg,
                    r,
                    &SearchOptions { symmetry: true, ..Default::default() },
                )
                .unwrap();
                let without = avoidance_search(
                    hg,
                    r,
                    &SearchOptions { symmetry: false, ..Default::default() },
                )
                .unwrap();
                assert_eq!(with, without);
            }
        }
    }

    #[test]
    fn node_cap_trips() {
        // An unsatisfiable instance large enough to need a few nodes.
        let hg = h(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 2], &[1, 3], &[0, 3]]);
        let out = avoidance_search(&hg, 2, &SearchOptions { node_cap: 1, symmetry: false });
        assert!(matches!(out, Err(SearchError::ResourceLimit(_))));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let hg = h(6, &[&[0, 1, 2], &[2, 3, 4], &[1, 4, 5], &[0, 5], &[3, 5]]);
        let mut results = Vec::new();
        for jobs in [1usize, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .unwrap();
            results.push(pool.install(|| search(&hg, 2)));
        }
        assert_eq!(results[0], results[1]);
    }
}
