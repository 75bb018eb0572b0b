//! Combinatorial lines, extended lines, and finite-window configuration
//! families such as the arithmetic-progression family AP(k).
//!
//! An extended line is a triple `(alpha, gamma, F)` with pairwise disjoint
//! domain, gamma and F; its points are `alpha U (gamma U {t}) x {s}` for
//! every symbol `s` and every `t` in `F`. Canonical line order is
//! lexicographic on `(F, gamma, alpha)` with position sets compared by size
//! then elements, and words in canonical word order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::universe::{Universe, WordSpace};
use crate::words::{Alphabet, LocatedWord, Symbol, WordError};

/// Default cap on enumerated lines.
pub const DEFAULT_LINE_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("domains overlap at position {0}")]
    OverlappingDomains(u32),
    #[error("window {window} too small for {needed} required positions")]
    WindowTooSmall { window: u32, needed: u32 },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("line enumeration exceeds cap of {cap}")]
    ResourceLimit { cap: u64 },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Compares finite position sets by size, then lexicographically on their
/// ascending elements. This is the canonical order on moving sets and
/// family members.
pub fn cmp_position_sets(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

/// A finite-window family of position sets: either all (k+1)-term
/// arithmetic progressions inside the window, or an explicit member list.
/// Members never contain singletons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConfigFamily {
    Ap { k: u32, window: u32 },
    List {
        members: Vec<Vec<u32>>,
        window: u32,
    },
}

impl ConfigFamily {
    /// The AP(k) family inside `1..=window`: every set {a, a+d, ..., a+kd}
    /// with a, d >= 1. Errors when the window cannot hold any member.
    pub fn ap(k: u32, window: u32) -> Result<Self, ConfigError> {
        if k < 1 {
            return Err(ConfigError::InvalidFamily(
                "AP family needs k >= 1 (no singletons)".into(),
            ));
        }
        if window < k + 1 {
            return Err(ConfigError::WindowTooSmall {
                window,
                needed: k + 1,
            });
        }
        Ok(ConfigFamily::Ap { k, window })
    }

    /// An explicit member list. Members are canonicalized (sorted, deduped);
    /// singletons and out-of-window elements are rejected.
    pub fn list<I, S>(members: I, window: u32) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = u32>,
    {
        let mut sets: Vec<BTreeSet<u32>> = Vec::new();
        for member in members {
            let set: BTreeSet<u32> = member.into_iter().collect();
            if set.len() < 2 {
                return Err(ConfigError::InvalidFamily(
                    "family members must have at least two elements".into(),
                ));
            }
            if set.iter().any(|&p| p == 0 || p > window) {
                return Err(ConfigError::InvalidFamily(format!(
                    "member {set:?} leaves the window 1..={window}"
                )));
            }
            sets.push(set);
        }
        sets.sort_by(cmp_position_sets);
        sets.dedup();
        Ok(ConfigFamily::List {
            members: sets.iter().map(|s| s.iter().copied().collect()).collect(),
            window,
        })
    }

    pub fn window(&self) -> u32 {
        match self {
            ConfigFamily::Ap { window, .. } | ConfigFamily::List { window, .. } => *window,
        }
    }

    /// Re-checks the invariants. Needed after deserializing, since serde
    /// constructs variants directly.
    pub fn validate(&self) -> Result<(), ConfigError> {
        match self {
            ConfigFamily::Ap { k, window } => {
                ConfigFamily::ap(*k, *window)?;
            }
            ConfigFamily::List { members, window } => {
                ConfigFamily::list(members.iter().map(|m| m.iter().copied()), *window)?;
            }
        }
        Ok(())
    }

    /// Member sets restricted to `1..=bound`, in canonical set order.
    pub fn members_within(&self, bound: u32) -> Vec<BTreeSet<u32>> {
        let bound = bound.min(self.window());
        match self {
            ConfigFamily::Ap { k, .. } => {
                let mut out = Vec::new();
                let k = *k;
                if k >= 1 && bound >= k + 1 {
                    for d in 1..=(bound - 1) / k {
                        for a in 1..=bound - k * d {
                            out.push((0..=k).map(|i| a + i * d).collect());
                        }
                    }
                }
                out.sort_by(cmp_position_sets);
                out
            }
            ConfigFamily::List { members, .. } => {
                let mut out: Vec<BTreeSet<u32>> = members
                    .iter()
                    .map(|m| m.iter().copied().collect())
                    .filter(|m: &BTreeSet<u32>| m.iter().all(|&p| p <= bound))
                    .collect();
                out.sort_by(cmp_position_sets);
                out
            }
        }
    }

    /// All members, in canonical set order.
    pub fn members(&self) -> Vec<BTreeSet<u32>> {
        self.members_within(self.window())
    }

    pub fn contains(&self, set: &BTreeSet<u32>) -> bool {
        match self {
            ConfigFamily::Ap { k, window } => {
                if *k < 1 || set.len() != *k as usize + 1 {
                    return false;
                }
                let elems: Vec<u32> = set.iter().copied().collect();
                let (min, max) = (elems[0], elems[elems.len() - 1]);
                if min == 0 || max > *window || (max - min) % k != 0 {
                    return false;
                }
                let d = (max - min) / k;
                d >= 1 && elems.iter().enumerate().all(|(i, &e)| e == min + i as u32 * d)
            }
            ConfigFamily::List { members, .. } => {
                let as_vec: Vec<u32> = set.iter().copied().collect();
                members.iter().any(|m| *m == as_vec)
            }
        }
    }
}

/// A window-free family recipe, instantiated per universe bound. Used by
/// searches that grow the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Ap { k: u32 },
    List { members: Vec<BTreeSet<u32>> },
}

impl FamilySpec {
    /// The family at window `n`. A window too small for any member yields a
    /// family with no members rather than an error.
    pub fn at_window(&self, n: u32) -> ConfigFamily {
        match self {
            FamilySpec::Ap { k } => ConfigFamily::Ap { k: *k, window: n },
            FamilySpec::List { members } => ConfigFamily::list(
                members
                    .iter()
                    .filter(|m| m.iter().all(|&p| p <= n))
                    .map(|m| m.iter().copied()),
                n.max(1),
            )
            .expect("filtered members stay valid"),
        }
    }
}

/// All (k+1)-term arithmetic progressions inside `1..=n`.
pub fn ap_family(k: u32, n: u32) -> Result<ConfigFamily, ConfigError> {
    ConfigFamily::ap(k, n)
}

/// The combinatorial line `{alpha U gamma x {s} : s in Sigma}` as a list in
/// symbol order. Errors when `gamma` meets the domain of `alpha`.
pub fn combinatorial_line(
    alpha: &LocatedWord,
    gamma: &BTreeSet<u32>,
    alphabet: &Alphabet,
) -> Result<Vec<LocatedWord>, ConfigError> {
    let line = CombinatorialLine::new(alpha.clone(), gamma.clone(), *alphabet)?;
    Ok(line.points())
}

/// A classical combinatorial line: constant part plus a nonempty moving set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialLine {
    alpha: LocatedWord,
    gamma: BTreeSet<u32>,
    alphabet: Alphabet,
}

impl CombinatorialLine {
    pub fn new(
        alpha: LocatedWord,
        gamma: BTreeSet<u32>,
        alphabet: Alphabet,
    ) -> Result<Self, ConfigError> {
        if gamma.is_empty() {
            return Err(ConfigError::InvalidFamily("moving set must be nonempty".into()));
        }
        if let Some(&p) = gamma.iter().find(|p| alpha.get(**p).is_some()) {
            return Err(ConfigError::OverlappingDomains(p));
        }
        if gamma.contains(&0) {
            return Err(ConfigError::InvalidFamily("positions start at 1".into()));
        }
        Ok(CombinatorialLine {
            alpha,
            gamma,
            alphabet,
        })
    }

    pub fn alpha(&self) -> &LocatedWord {
        &self.alpha
    }

    pub fn gamma(&self) -> &BTreeSet<u32> {
        &self.gamma
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The sigma points of the line, in symbol order.
    pub fn points(&self) -> Vec<LocatedWord> {
        (0..self.alphabet.size())
            .map(|s| {
                self.alpha
                    .extend_on(&self.gamma, Symbol::Const(s))
                    .expect("gamma disjoint from alpha")
            })
            .collect()
    }
}

/// An extended line `(alpha, gamma, F)`: for each t in F and symbol s the
/// point `alpha U (gamma U {t}) x {s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedLine {
    alpha: LocatedWord,
    gamma: BTreeSet<u32>,
    f: BTreeSet<u32>,
    alphabet: Alphabet,
}

impl ExtendedLine {
    pub fn new(
        alpha: LocatedWord,
        gamma: BTreeSet<u32>,
        f: BTreeSet<u32>,
        alphabet: Alphabet,
    ) -> Result<Self, ConfigError> {
        if gamma.is_empty() {
            return Err(ConfigError::InvalidFamily("gamma must be nonempty".into()));
        }
        if f.len() < 2 {
            return Err(ConfigError::InvalidFamily(
                "F must have at least two elements".into(),
            ));
        }
        if gamma.contains(&0) || f.contains(&0) {
            return Err(ConfigError::InvalidFamily("positions start at 1".into()));
        }
        if let Some(&p) = gamma.intersection(&f).next() {
            return Err(ConfigError::OverlappingDomains(p));
        }
        if let Some(p) = alpha
            .positions()
            .find(|p| gamma.contains(p) || f.contains(p))
        {
            return Err(ConfigError::OverlappingDomains(p));
        }
        Ok(ExtendedLine {
            alpha,
            gamma,
            f,
            alphabet,
        })
    }

    pub fn alpha(&self) -> &LocatedWord {
        &self.alpha
    }

    pub fn gamma(&self) -> &BTreeSet<u32> {
        &self.gamma
    }

    pub fn f(&self) -> &BTreeSet<u32> {
        &self.f
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// All sigma * |F| points, s-major then t-ascending; all distinct.
    pub fn points(&self) -> Vec<LocatedWord> {
        let mut out = Vec::with_capacity(self.alphabet.size() as usize * self.f.len());
        for s in 0..self.alphabet.size() {
            for &t in &self.f {
                let mut moving = self.gamma.clone();
                moving.insert(t);
                out.push(
                    self.alpha
                        .extend_on(&moving, Symbol::Const(s))
                        .expect("moving set disjoint from alpha"),
                );
            }
        }
        out
    }

    /// The fixed-t slice: a combinatorial line with moving set `gamma U {t}`.
    pub fn slice_at(&self, t: u32) -> Result<CombinatorialLine, ConfigError> {
        if !self.f.contains(&t) {
            return Err(ConfigError::InvalidFamily(format!("{t} is not in F")));
        }
        let mut moving = self.gamma.clone();
        moving.insert(t);
        CombinatorialLine::new(self.alpha.clone(), moving, self.alphabet)
    }

    /// The |F| variable words `alpha U (gamma U {t}) x {v}`, t ascending.
    /// Substituting any constant for the variable recovers the fixed-s points.
    pub fn variable_words(&self) -> Vec<LocatedWord> {
        self.f
            .iter()
            .map(|&t| {
                let mut moving = self.gamma.clone();
                moving.insert(t);
                self.alpha
                    .extend_on(&moving, Symbol::Var)
                    .expect("moving set disjoint from alpha")
            })
            .collect()
    }
}

impl Ord for ExtendedLine {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_position_sets(&self.f, &other.f)
            .then_with(|| cmp_position_sets(&self.gamma, &other.gamma))
            .then_with(|| self.alpha.cmp(&other.alpha))
    }
}

impl PartialOrd for ExtendedLine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every extended line with domain, gamma and F inside the universe window
/// and F a member of the family, in canonical `(F, gamma, alpha)` order.
pub fn enumerate_extended_lines(
    universe: &Universe,
    family: &ConfigFamily,
    cap: u64,
) -> Result<Vec<ExtendedLine>, ConfigError> {
    let n = universe.n();
    let alphabet = *universe.alphabet();
    let mut out = Vec::new();
    for f in family.members_within(n) {
        let free: Vec<u32> = (1..=n).filter(|p| !f.contains(p)).collect();
        for gamma_size in 1..=free.len() {
            for gamma in free.iter().copied().combinations(gamma_size) {
                let gamma: BTreeSet<u32> = gamma.into_iter().collect();
                let alpha_positions: Vec<u32> =
                    free.iter().copied().filter(|p| !gamma.contains(p)).collect();
                let space = WordSpace::new(alpha_positions, alphabet, u64::MAX)
                    .expect("sub-universe within cap");
                for alpha in space.iter() {
                    if out.len() as u64 >= cap {
                        return Err(ConfigError::ResourceLimit { cap });
                    }
                    out.push(
                        ExtendedLine::new(alpha, gamma.clone(), f.clone(), alphabet)
                            .expect("construction respects disjointness"),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Every combinatorial line inside the universe window, in canonical
/// `(gamma, alpha)` order. This is the plain-line degenerate mode.
pub fn enumerate_plain_lines(
    universe: &Universe,
    cap: u64,
) -> Result<Vec<CombinatorialLine>, ConfigError> {
    let n = universe.n();
    let alphabet = *universe.alphabet();
    let positions: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    for gamma_size in 1..=positions.len() {
        for gamma in positions.iter().copied().combinations(gamma_size) {
            let gamma: BTreeSet<u32> = gamma.into_iter().collect();
            let alpha_positions: Vec<u32> = positions
                .iter()
                .copied()
                .filter(|p| !gamma.contains(p))
                .collect();
            let space = WordSpace::new(alpha_positions, alphabet, u64::MAX)
                .expect("sub-universe within cap");
            for alpha in space.iter() {
                if out.len() as u64 >= cap {
                    return Err(ConfigError::ResourceLimit { cap });
                }
                out.push(
                    CombinatorialLine::new(alpha, gamma.clone(), alphabet)
                        .expect("construction respects disjointness"),
                );
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn w(s: &str) -> LocatedWord {
        s.parse().unwrap()
    }

    fn set(elems: &[u32]) -> BTreeSet<u32> {
        elems.iter().copied().collect()
    }

    #[test]
    fn combinatorial_line_points() {
        let sigma2 = Alphabet::constants(2);
        let line = combinatorial_line(&w("{}"), &set(&[1]), &sigma2).unwrap();
        assert_eq!(line, vec![w("{1:0}"), w("{1:1}")]);

        let line = combinatorial_line(&w("{2:1}"), &set(&[1, 3]), &sigma2).unwrap();
        assert_eq!(line, vec![w("{1:0,2:1,3:0}"), w("{1:1,2:1,3:1}")]);

        assert_eq!(
            combinatorial_line(&w("{1:0}"), &set(&[1]), &sigma2),
            Err(ConfigError::OverlappingDomains(1))
        );
    }

    #[test]
    fn extended_line_points_expand() {
        let sigma2 = Alphabet::constants(2);
        let line = ExtendedLine::new(w("{}"), set(&[1]), set(&[2, 3]), sigma2).unwrap();
        let points: BTreeSet<LocatedWord> = line.points().into_iter().collect();
        let expected: BTreeSet<LocatedWord> =
            [w("{1:0,2:0}"), w("{1:0,3:0}"), w("{1:1,2:1}"), w("{1:1,3:1}")]
                .into_iter()
                .collect();
        assert_eq!(points, expected);
    }

    #[test]
    fn extended_line_rejects_overlaps() {
        let sigma2 = Alphabet::constants(2);
        assert!(ExtendedLine::new(w("{1:0}"), set(&[1]), set(&[2, 3]), sigma2).is_err());
        assert!(ExtendedLine::new(w("{}"), set(&[2]), set(&[2, 3]), sigma2).is_err());
        assert!(ExtendedLine::new(w("{}"), set(&[]), set(&[2, 3]), sigma2).is_err());
        assert!(ExtendedLine::new(w("{}"), set(&[1]), set(&[2]), sigma2).is_err());
    }

    #[test]
    fn slices_are_combinatorial_lines() {
        let sigma2 = Alphabet::constants(2);
        let line = ExtendedLine::new(w("{4:1}"), set(&[1]), set(&[2, 3]), sigma2).unwrap();
        let slice = line.slice_at(2).unwrap();
        assert_eq!(slice.gamma(), &set(&[1, 2]));
        let all: BTreeSet<LocatedWord> = line.points().into_iter().collect();
        for p in slice.points() {
            assert!(all.contains(&p));
        }
    }

    #[test]
    fn ap_family_members() {
        let fam = ap_family(1, 3).unwrap();
        assert_eq!(
            fam.members(),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]
        );

        let fam = ap_family(2, 5).unwrap();
        assert_eq!(
            fam.members(),
            vec![set(&[1, 2, 3]), set(&[1, 3, 5]), set(&[2, 3, 4]), set(&[3, 4, 5])]
        );

        assert_eq!(
            ap_family(2, 2),
            Err(ConfigError::WindowTooSmall { window: 2, needed: 3 })
        );
    }

    #[test]
    fn ap_membership_rederives_parameters() {
        let fam = ap_family(2, 9).unwrap();
        for m in fam.members() {
            assert!(fam.contains(&m));
        }
        assert!(!fam.contains(&set(&[1, 2])));
        assert!(!fam.contains(&set(&[1, 2, 4])));
        assert!(fam.contains(&set(&[3, 6, 9])));
    }

    #[test]
    fn list_family_canonicalizes_and_validates() {
        let fam = ConfigFamily::list([vec![4, 6], vec![2, 3], vec![2, 3]], 6).unwrap();
        assert_eq!(fam.members(), vec![set(&[2, 3]), set(&[4, 6])]);
        assert!(ConfigFamily::list([vec![3]], 6).is_err());
        assert!(ConfigFamily::list([vec![2, 7]], 6).is_err());
    }

    #[test]
    fn family_json_round_trip() {
        let fam = ap_family(2, 9).unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        assert_eq!(json, r#"{"kind":"ap","k":2,"window":9}"#);
        assert_eq!(serde_json::from_str::<ConfigFamily>(&json).unwrap(), fam);

        let fam = ConfigFamily::list([vec![2, 3], vec![4, 6]], 6).unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        assert_eq!(json, r#"{"kind":"list","members":[[2,3],[4,6]],"window":6}"#);
        assert_eq!(serde_json::from_str::<ConfigFamily>(&json).unwrap(), fam);
    }

    #[test]
    fn enumerate_lines_tiny_cases() {
        // N=3, sigma=1, only member {2,3}: gamma must be {1}, alpha empty.
        let u = Universe::new(3, Alphabet::constants(1)).unwrap();
        let fam = ConfigFamily::list([vec![2, 3]], 3).unwrap();
        let lines = enumerate_extended_lines(&u, &fam, DEFAULT_LINE_CAP).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].alpha(), &w("{}"));
        assert_eq!(lines[0].gamma(), &set(&[1]));
        assert_eq!(lines[0].f(), &set(&[2, 3]));

        // N=2: no room for a nonempty gamma disjoint from a size-2 member.
        let u = Universe::new(2, Alphabet::constants(1)).unwrap();
        let fam = ConfigFamily::list([vec![1, 2]], 2).unwrap();
        assert!(enumerate_extended_lines(&u, &fam, DEFAULT_LINE_CAP)
            .unwrap()
            .is_empty());
    }

    /// Independent oracle: generate all candidate triples naively and count
    /// the valid ones.
    fn count_lines_brute(n: u32, alphabet: Alphabet, family: &ConfigFamily) -> usize {
        let positions: Vec<u32> = (1..=n).collect();
        let mut count = 0;
        for f in family.members_within(n) {
            for gamma_size in 1..=positions.len() {
                for gamma in positions.iter().copied().combinations(gamma_size) {
                    let gamma: BTreeSet<u32> = gamma.into_iter().collect();
                    if !gamma.is_disjoint(&f) {
                        continue;
                    }
                    let rest: Vec<u32> = positions
                        .iter()
                        .copied()
                        .filter(|p| !gamma.contains(p) && !f.contains(p))
                        .collect();
                    let space = WordSpace::new(rest, alphabet, u64::MAX).unwrap();
                    count += space.size() as usize;
                }
            }
        }
        count
    }

    #[test]
    fn enumeration_matches_brute_force_count_and_is_canonical() {
        let alphabet = Alphabet::constants(2);
        let u = Universe::new(4, alphabet).unwrap();
        let fam = ap_family(1, 4).unwrap();
        let lines = enumerate_extended_lines(&u, &fam, DEFAULT_LINE_CAP).unwrap();
        assert_eq!(lines.len(), count_lines_brute(4, alphabet, &fam));
        for pair in lines.windows(2) {
            assert!(pair[0] < pair[1], "lines out of canonical order");
        }
    }

    #[test]
    fn extended_points_count_is_sigma_times_f() {
        let alphabet = Alphabet::constants(3);
        let u = Universe::new(5, alphabet).unwrap();
        let fam = ap_family(1, 5).unwrap();
        for line in enumerate_extended_lines(&u, &fam, DEFAULT_LINE_CAP).unwrap() {
            let points = line.points();
            let distinct: BTreeSet<_> = points.iter().cloned().collect();
            assert_eq!(points.len(), 3 * line.f().len());
            assert_eq!(distinct.len(), points.len());
        }
    }

    #[test]
    fn line_cap_is_enforced() {
        let u = Universe::new(4, Alphabet::constants(2)).unwrap();
        let fam = ap_family(1, 4).unwrap();
        assert_eq!(
            enumerate_extended_lines(&u, &fam, 5),
            Err(ConfigError::ResourceLimit { cap: 5 })
        );
    }

    #[test]
    fn plain_lines_enumerate_in_order() {
        let u = Universe::new(2, Alphabet::constants(2)).unwrap();
        let lines = enumerate_plain_lines(&u, DEFAULT_LINE_CAP).unwrap();
        // gamma={1}: alpha over {2} (3 words); gamma={2}: 3; gamma={1,2}: 1.
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0].gamma(), &set(&[1]));
        assert_eq!(lines[6].gamma(), &set(&[1, 2]));
    }

    #[test]
    fn family_spec_windows_nest() {
        let spec = FamilySpec::Ap { k: 2 };
        assert!(spec.at_window(2).members().is_empty());
        assert_eq!(spec.at_window(3).members(), vec![set(&[1, 2, 3])]);
        let at5 = spec.at_window(5).members();
        let at7 = spec.at_window(7).members();
        for m in &at5 {
            assert!(at7.contains(m));
        }
    }
}
