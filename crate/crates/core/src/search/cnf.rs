//! DIMACS CNF export of the avoidance-coloring problem.
//!
//! Variable x_{w,c} (numbered r * rank(w) + c, colors 1-based) states that
//! word w has color c. The formula is satisfiable iff a proper r-coloring
//! exists: one at-least-one clause and C(r,2) at-most-one clauses per word,
//! and per edge and color one clause forbidding the edge from being fully
//! that color. Clauses are emitted grouped: all at-least-one, then all
//! at-most-one, then the edge clauses.

use std::io::{self, Write};

use super::{Coloring, Hypergraph, SearchError};

/// Number of clauses the export will emit.
pub fn cnf_clause_count(hypergraph: &Hypergraph, r: u32) -> u64 {
    let v = hypergraph.vertex_count() as u64;
    let r64 = u64::from(r);
    v + v * r64 * (r64 - 1) / 2 + hypergraph.edges().len() as u64 * r64
}

/// Writes the DIMACS encoding. Needs r >= 2; with one color the encoding
/// below would not express the at-most-one constraints faithfully.
pub fn export_cnf<W: Write>(
    hypergraph: &Hypergraph,
    r: u32,
    out: &mut W,
) -> Result<(), SearchError> {
    if r < 2 {
        return Err(SearchError::InvalidParameter(
            "CNF export needs at least two colors".into(),
        ));
    }
    let var = |vertex: usize, color: u32| -> i64 {
        (vertex as i64) * i64::from(r) + i64::from(color)
    };
    let v_count = hypergraph.vertex_count();
    let vars = v_count as u64 * u64::from(r);
    let emit = |out: &mut W| -> io::Result<()> {
        writeln!(out, "p cnf {} {}", vars, cnf_clause_count(hypergraph, r))?;
        for w in 0..v_count {
            for c in 1..=r {
                write!(out, "{} ", var(w, c))?;
            }
            writeln!(out, "0")?;
        }
        for w in 0..v_count {
            for c1 in 1..=r {
                for c2 in (c1 + 1)..=r {
                    writeln!(out, "-{} -{} 0", var(w, c1), var(w, c2))?;
                }
            }
        }
        for edge in hypergraph.edges() {
            for c in 1..=r {
                for &w in edge {
                    write!(out, "-{} ", var(w, c))?;
                }
                writeln!(out, "0")?;
            }
        }
        Ok(())
    };
    emit(out).map_err(|e| SearchError::InvalidParameter(format!("write failed: {e}")))
}

/// The DIMACS text as a string.
pub fn cnf_string(hypergraph: &Hypergraph, r: u32) -> Result<String, SearchError> {
    let mut buf = Vec::new();
    export_cnf(hypergraph, r, &mut buf)?;
    Ok(String::from_utf8(buf).expect("DIMACS is ASCII"))
}

/// Decodes a satisfying assignment (indexed by variable, 1-based, true =
/// positive) back into a coloring, enforcing that exactly one color holds
/// per word.
pub fn decode_cnf_assignment(
    assignment: &[bool],
    vertex_count: usize,
    r: u32,
) -> Result<Coloring, SearchError> {
    if assignment.len() != vertex_count * r as usize {
        return Err(SearchError::InvalidColoring(format!(
            "assignment has {} literals, expected {}",
            assignment.len(),
            vertex_count * r as usize
        )));
    }
    let mut colors = Vec::with_capacity(vertex_count);
    for w in 0..vertex_count {
        let mut chosen = None;
        for c in 1..=r {
            if assignment[w * r as usize + (c as usize - 1)] {
                if chosen.is_some() {
                    return Err(SearchError::InvalidColoring(format!(
                        "word rank {w} has two colors set"
                    )));
                }
                chosen = Some(c);
            }
        }
        colors.push(chosen.ok_or_else(|| {
            SearchError::InvalidColoring(format!("word rank {w} has no color set"))
        })?);
    }
    Coloring::new(r, colors)
}
