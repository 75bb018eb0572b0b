//! Grid-partition counterexample search: look for partitions of a power
//! grid or product grid in which no cell contains any bad-pattern instance
//! from a declared parameter box.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::grids::{power_grid, s_grid, PatternBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    /// {(A + iD)^j : i, j in 0..=K}
    Power,
    /// {(A + i_1 D)...(A + i_m D) : m, i in 0..=K}
    S,
}

impl GridKind {
    pub fn elements(&self, a_base: u64, d_step: u64, k: u32) -> BTreeSet<BigUint> {
        match self {
            GridKind::Power => power_grid(a_base, d_step, k),
            GridKind::S => {
                let idx: Vec<u32> = (0..=k).collect();
                s_grid(a_base, d_step, &idx)
            }
        }
    }
}

/// Search space: every (A, D) in the ranges, partitions of the K-grid into
/// r labeled (possibly empty) cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSearchConfig {
    pub grid: GridKind,
    pub k: u32,
    pub a_range: (u64, u64),
    pub d_range: (u64, u64),
    pub r: u32,
    pub pattern: PatternBox,
}

/// A found partition: for the named grid, no cell contains any pattern
/// instance from the box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPartition {
    pub grid: GridKind,
    pub k: u32,
    pub a_base: u64,
    pub d_step: u64,
    pub r: u32,
    pub cells: Vec<BTreeSet<BigUint>>,
}

/// Scans (A, D) pairs in lexicographic order; for each, backtracks over
/// cell assignments of the grid elements in ascending order (cells tried
/// ascending), so the first hit is canonical. Returns `None` when every
/// grid in range admits no avoiding partition.
pub fn grid_counterexample_search(
    config: &GridSearchConfig,
) -> Result<Option<GridPartition>, SearchError> {
    grid_counterexample_search_capped(config, super::DEFAULT_PARTITION_CAP)
}

pub fn grid_counterexample_search_capped(
    config: &GridSearchConfig,
    partition_cap: u64,
) -> Result<Option<GridPartition>, SearchError> {
    if config.r < 1 {
        return Err(SearchError::InvalidParameter("need at least one cell".into()));
    }
    if config.a_range.0 > config.a_range.1 || config.d_range.0 > config.d_range.1 {
        return Err(SearchError::InvalidParameter("empty (A, D) range".into()));
    }

    let mut pairs = Vec::new();
    for a in config.a_range.0..=config.a_range.1 {
        for d in config.d_range.0..=config.d_range.1 {
            pairs.push((a, d));
        }
    }

    enum PairResult {
        Found(GridPartition),
        Limit(String),
    }

    let first = pairs.into_par_iter().find_map_first(|(a, d)| {
        match search_one_grid(config, a, d, partition_cap) {
            Ok(Some(partition)) => Some(PairResult::Found(partition)),
            Ok(None) => None,
            Err(e) => Some(PairResult::Limit(e.to_string())),
        }
    });
    match first {
        None => Ok(None),
        Some(PairResult::Found(p)) => Ok(Some(p)),
        Some(PairResult::Limit(msg)) => Err(SearchError::ResourceLimit(msg)),
    }
}

fn search_one_grid(
    config: &GridSearchConfig,
    a_base: u64,
    d_step: u64,
    partition_cap: u64,
) -> Result<Option<GridPartition>, SearchError> {
    let elements: Vec<BigUint> = config
        .grid
        .elements(a_base, d_step, config.k)
        .into_iter()
        .collect();
    let n = elements.len();
    let r = config.r as usize;

    // A priori cap on the labeled-partition space r^n.
    let space = (r as u128).checked_pow(n as u32);
    if space.is_none() || space.unwrap() > u128::from(partition_cap) {
        return Err(SearchError::ResourceLimit(format!(
            "{r}^{n} partitions exceed cap {partition_cap}"
        )));
    }

    // Pattern instances fully inside this grid, as element-index masks.
    let grid_set: BTreeSet<&BigUint> = elements.iter().collect();
    let mut instances: Vec<u128> = Vec::new();
    for inst in config.pattern.instances() {
        if inst.iter().all(|x| grid_set.contains(x)) {
            let mut mask: u128 = 0;
            for x in &inst {
                let idx = elements.binary_search(x).expect("member of the grid");
                mask |= 1u128 << idx;
            }
            instances.push(mask);
        }
    }
    instances.sort_unstable();
    instances.dedup();

    // A singleton instance lies inside whichever cell holds its element.
    if instances.iter().any(|m| m.count_ones() == 1) {
        return Ok(None);
    }

    // Instances indexed by their highest element: with elements assigned in
    // ascending order an instance can only become monochrome when its last
    // element is placed.
    let mut by_last: Vec<Vec<u128>> = vec![Vec::new(); n];
    for &mask in &instances {
        let last = 127 - mask.leading_zeros() as usize;
        by_last[last].push(mask);
    }

    if n == 0 {
        let cells = vec![BTreeSet::new(); r];
        return Ok(Some(GridPartition {
            grid: config.grid,
            k: config.k,
            a_base,
            d_step,
            r: config.r,
            cells,
        }));
    }

    // Backtracking over cell assignments, lexicographically least first.
    let mut cell_mask: Vec<u128> = vec![0; r];
    let mut assigned: Vec<usize> = vec![usize::MAX; n];
    let mut tried: Vec<usize> = vec![0; n];
    let mut pos = 0usize;
    loop {
        let mut cell = tried[pos];
        let mut placed = false;
        while cell < r {
            // Placing element pos into this cell: would any instance whose
            // last element is pos become fully contained in the cell?
            let candidate = cell_mask[cell] | (1u128 << pos);
            let closes = by_last[pos].iter().any(|&m| m & candidate == m);
            if !closes {
                assigned[pos] = cell;
                cell_mask[cell] = candidate;
                tried[pos] = cell + 1;
                placed = true;
                break;
            }
            cell += 1;
        }
        if placed {
            pos += 1;
            if pos == n {
                let mut cells = vec![BTreeSet::new(); r];
                for (i, &c) in assigned.iter().enumerate() {
                    cells[c].insert(elements[i].clone());
                }
                return Ok(Some(GridPartition {
                    grid: config.grid,
                    k: config.k,
                    a_base,
                    d_step,
                    r: config.r,
                    cells,
                }));
            }
            tried[pos] = 0;
        } else {
            tried[pos] = 0;
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            let c = assigned[pos];
            cell_mask[c] &= !(1u128 << pos);
            assigned[pos] = usize::MAX;
        }
    }
}

/// True iff no cell contains any bad-pattern instance from the box as a
/// subset. Cells are expected to be disjoint.
pub fn verify_partition(cells: &[BTreeSet<BigUint>], pattern: &PatternBox) -> bool {
    let instances = pattern.instances();
    cells.iter().all(|cell| {
        instances
            .iter()
            .all(|inst| !inst.iter().all(|x| cell.contains(x)))
    })
}
