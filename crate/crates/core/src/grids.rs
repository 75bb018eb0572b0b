//! Integer configuration sets: geo-arithmetic product sets, their grid
//! variants, and the power-grid / bad-pattern shapes used by the
//! partition-counterexample search. All arithmetic is arbitrary precision.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// The index set {0, 1, ..., k}.
pub fn ohat(k: u32) -> Vec<u32> {
    (0..=k).collect()
}

/// The index set {1, ..., k}.
pub fn nhat(k: u32) -> Vec<u32> {
    (1..=k).collect()
}

/// `S_k(a, b, d)`-style sets: all products `b * (a + i_1 d) * ... * (a + i_m d)`
/// where the product length m and every index i_t range over `idx`.
/// With `idx = ohat(k)` this is the literal S_k(a, b, d); m = 0 contributes b.
pub fn geo_arith_set(a: u64, b: u64, d: u64, idx: &[u32]) -> BTreeSet<BigUint> {
    let mut out = BTreeSet::new();
    let factors: Vec<BigUint> = idx
        .iter()
        .map(|&i| BigUint::from(a + u64::from(i) * d))
        .collect();
    for &m in idx {
        extend_products(&mut out, &BigUint::from(b), &factors, m as usize);
    }
    out
}

/// `S_K(A, D)`: all products `(A + i_1 D) * ... * (A + i_m D)` with the
/// length m and all indices ranging over `idx`; m = 0 contributes 1.
pub fn s_grid(a_base: u64, d_step: u64, idx: &[u32]) -> BTreeSet<BigUint> {
    geo_arith_set(a_base, 1, d_step, idx)
}

/// The power grid `{(A + iD)^j : i, j in 0..=K}`.
pub fn power_grid(a_base: u64, d_step: u64, k: u32) -> BTreeSet<BigUint> {
    let mut out = BTreeSet::new();
    for i in 0..=u64::from(k) {
        let base = BigUint::from(a_base + i * d_step);
        for j in 0..=k {
            out.insert(base.pow(j));
        }
    }
    out
}

/// The avoided configuration `{b (a + i d)^j : i in i_idx, j in j_idx}`.
pub fn bad_pattern_set(b: u64, a: u64, d: u64, i_idx: &[u32], j_idx: &[u32]) -> BTreeSet<BigUint> {
    let mut out = BTreeSet::new();
    let b = BigUint::from(b);
    for &i in i_idx {
        let base = BigUint::from(a + u64::from(i) * d);
        for &j in j_idx {
            out.insert(&b * base.pow(j));
        }
    }
    out
}

fn extend_products(out: &mut BTreeSet<BigUint>, scale: &BigUint, factors: &[BigUint], m: usize) {
    // All length-m products over `factors`, scaled.
    let mut stack = vec![(scale.clone(), 0usize)];
    while let Some((acc, depth)) = stack.pop() {
        if depth == m {
            out.insert(acc);
            continue;
        }
        for f in factors {
            stack.push((&acc * f, depth + 1));
        }
    }
}

/// A finite search box of bad-pattern parameters: inclusive ranges for
/// b, a, d plus fixed index sets for i and j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternBox {
    pub b: (u64, u64),
    pub a: (u64, u64),
    pub d: (u64, u64),
    pub i_idx: Vec<u32>,
    pub j_idx: Vec<u32>,
}

impl PatternBox {
    /// The classical shape i in {0,1,2}, j in {0,1} over the given ranges.
    pub fn classic(b: (u64, u64), a: (u64, u64), d: (u64, u64)) -> Self {
        PatternBox {
            b,
            a,
            d,
            i_idx: vec![0, 1, 2],
            j_idx: vec![0, 1],
        }
    }

    /// A box containing no parameter triples at all.
    pub fn empty() -> Self {
        PatternBox {
            b: (1, 0),
            a: (1, 0),
            d: (1, 0),
            i_idx: vec![0, 1, 2],
            j_idx: vec![0, 1],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.b.0 > self.b.1 || self.a.0 > self.a.1 || self.d.0 > self.d.1
    }

    /// All (b, a, d) triples in the box, lexicographic.
    pub fn triples(&self) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        for b in self.b.0..=self.b.1 {
            for a in self.a.0..=self.a.1 {
                for d in self.d.0..=self.d.1 {
                    out.push((b, a, d));
                }
            }
        }
        out
    }

    /// The pattern instances over all triples in the box, deduplicated,
    /// in ascending set order.
    pub fn instances(&self) -> Vec<BTreeSet<BigUint>> {
        let mut seen = BTreeSet::new();
        for (b, a, d) in self.triples() {
            seen.insert(bad_pattern_set(b, a, d, &self.i_idx, &self.j_idx));
        }
        seen.into_iter().collect()
    }
}

/// Membership test with an explicit factorization re-check: `value` is in
/// `S` iff some product over the index ranges reproduces it. Used by tests
/// as the closure invariant.
pub fn geo_arith_contains(a: u64, b: u64, d: u64, idx: &[u32], value: &BigUint) -> bool {
    geo_arith_set(a, b, d, idx).contains(value)
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn bigs(ns: &[u64]) -> BTreeSet<BigUint> {
    ns.iter().map(|&n| BigUint::from(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geo_arith_small_cases() {
        // S_1(a=1, b=2, d=1): m=0 gives 2; m=1 gives 2*1, 2*2.
        assert_eq!(geo_arith_set(1, 2, 1, &ohat(1)), bigs(&[2, 4]));
        // Forced members b and b*a.
        for (a, b, d, k) in [(3, 1, 2, 2), (1, 5, 1, 3), (2, 2, 3, 1)] {
            let s = geo_arith_set(a, b, d, &ohat(k));
            assert!(s.contains(&big(b)));
            assert!(s.contains(&big(b * a)));
        }
    }

    /// Independent oracle: expand all (m, i-vector) tuples by literal loops.
    fn geo_arith_brute(a: u64, b: u64, d: u64, k: u32) -> BTreeSet<BigUint> {
        let mut out = BTreeSet::new();
        let idx: Vec<u64> = (0..=u64::from(k)).collect();
        for m in 0..=k as usize {
            let mut tuples: Vec<Vec<u64>> = vec![vec![]];
            for _ in 0..m {
                tuples = tuples
                    .iter()
                    .flat_map(|t| {
                        idx.iter().map(move |&i| {
                            let mut t = t.clone();
                            t.push(i);
                            t
                        })
                    })
                    .collect();
            }
            for t in tuples {
                let mut acc = big(b);
                for i in t {
                    acc *= a + i * d;
                }
                out.insert(acc);
            }
        }
        out
    }

    #[test]
    fn geo_arith_matches_brute_force() {
        for (a, b, d, k) in [(1, 1, 1, 2), (2, 3, 1, 3), (1, 2, 5, 2), (4, 1, 3, 3)] {
            assert_eq!(geo_arith_set(a, b, d, &ohat(k)), geo_arith_brute(a, b, d, k));
        }
    }

    #[test]
    fn s_grid_small_cases() {
        assert_eq!(s_grid(2, 1, &ohat(1)), bigs(&[1, 2, 3]));
        // m=1 terms are always present.
        let s = s_grid(3, 2, &ohat(3));
        for i in 0..=3u64 {
            assert!(s.contains(&big(3 + 2 * i)));
        }
        assert!(s.contains(&big(1)));
    }

    #[test]
    fn nhat_excludes_empty_product() {
        // With indices from 1 the empty product never appears.
        let s = s_grid(2, 1, &nhat(2));
        assert!(!s.contains(&big(1)));
        assert!(s.contains(&big(3)));
        assert!(s.contains(&big(4)));
    }

    #[test]
    fn power_grid_cases() {
        assert_eq!(power_grid(1, 1, 2), bigs(&[1, 2, 3, 4, 9]));
        assert_eq!(power_grid(2, 3, 1), bigs(&[1, 2, 5]));
        // j = 0 always contributes 1.
        assert!(power_grid(7, 5, 4).contains(&big(1)));
        // At most (K+1)^2 elements.
        for k in 1..=4 {
            assert!(power_grid(2, 3, k).len() <= ((k + 1) * (k + 1)) as usize);
        }
        assert_eq!(
            power_grid(2, 1, 3),
            bigs(&[1, 2, 3, 4, 5, 8, 9, 16, 25, 27, 64, 125])
        );
    }

    #[test]
    fn bad_pattern_cases() {
        assert_eq!(bad_pattern_set(1, 1, 1, &[0, 1, 2], &[0, 1]), bigs(&[1, 2, 3]));
        assert_eq!(bad_pattern_set(2, 1, 2, &[0, 1], &[0, 1]), bigs(&[2, 6]));
        assert_eq!(bad_pattern_set(5, 3, 2, &[0, 1, 2], &[0]), bigs(&[5]));
    }

    #[test]
    fn pattern_box_enumeration() {
        let bx = PatternBox::classic((1, 2), (1, 1), (1, 1));
        assert_eq!(bx.triples(), vec![(1, 1, 1), (2, 1, 1)]);
        assert!(!bx.is_empty());
        assert!(PatternBox::empty().is_empty());
        assert!(PatternBox::empty().instances().is_empty());
        let instances = bx.instances();
        assert!(instances.contains(&bigs(&[1, 2, 3])));
        assert!(instances.contains(&bigs(&[2, 4, 6])));
    }

    #[test]
    fn grids_never_contain_duplicates() {
        // BTreeSet gives this by construction; pin the sorted-unique contract.
        let s = geo_arith_set(1, 1, 1, &ohat(3));
        let v: Vec<_> = s.iter().collect();
        for pair in v.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn arbitrary_precision_holds_up() {
        let g = power_grid(10, 7, 20);
        let max = g.iter().max().unwrap();
        // (10 + 20*7)^20 = 150^20 overflows u64 by far.
        assert_eq!(max, &BigUint::from(150u64).pow(20));
        assert!(max > &BigUint::from(u64::MAX));
        let one: BigUint = One::one();
        assert!(g.contains(&one));
    }
}
