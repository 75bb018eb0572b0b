//! Located words over a finite alphabet.
//!
//! A located word is a function from a finite set of positive positions to
//! symbols. Words combine by disjoint union (a partial operation), variable
//! occurrences substitute to constants, and every variable word splits
//! uniquely into a constant part and a set of variable positions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    /// The disjoint-union product is undefined: both operands use this position.
    #[error("combine undefined: both words carry position {0}")]
    UndefinedProduct(u32),
    #[error("word contains no occurrence of the variable symbol")]
    NotAVariableWord,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("universe of {size} words exceeds cap of {cap}")]
    ResourceLimit { size: u128, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// A finite alphabet of `size` constant symbols 0..size-1, optionally
/// extended by the distinguished variable symbol `v`.
///
/// The variable is never a constant symbol; it is ordered after all
/// constants wherever symbol order matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    size: u32,
    has_variable: bool,
}

impl Alphabet {
    pub fn new(size: u32, has_variable: bool) -> Self {
        assert!(size >= 1, "alphabet needs at least one constant symbol");
        Alphabet { size, has_variable }
    }

    /// Constant symbols only.
    pub fn constants(size: u32) -> Self {
        Self::new(size, false)
    }

    /// Constants plus the variable symbol.
    pub fn with_variable(size: u32) -> Self {
        Self::new(size, true)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn has_variable(&self) -> bool {
        self.has_variable
    }

    /// Number of symbols a position may carry: size, plus one for the variable.
    pub fn symbol_count(&self) -> u32 {
        self.size + u32::from(self.has_variable)
    }

    /// Position of `sym` in the symbol order (constants by value, then the
    /// variable), or `None` if the symbol is not in this alphabet.
    pub fn symbol_index(&self, sym: Symbol) -> Option<u32> {
        match sym {
            Symbol::Const(c) if c < self.size => Some(c),
            Symbol::Var if self.has_variable => Some(self.size),
            _ => None,
        }
    }

    /// Inverse of `symbol_index`.
    pub fn symbol_at(&self, index: u32) -> Option<Symbol> {
        if index < self.size {
            Some(Symbol::Const(index))
        } else if index == self.size && self.has_variable {
            Some(Symbol::Var)
        } else {
            None
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbol_count()).map(|i| self.symbol_at(i).unwrap())
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.symbol_index(sym).is_some()
    }
}

/// A symbol: a constant index or the distinguished variable.
///
/// The derived order puts every constant before `Var`, which is the
/// canonical symbol order used for enumeration and ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Const(u32),
    Var,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Const(c) => write!(f, "{c}"),
            Symbol::Var => write!(f, "v"),
        }
    }
}

/// A located word: a finite map from positive positions to symbols.
///
/// Equality, hashing and the canonical order are all derived from the entry
/// map. The canonical order compares domain size first, then the entry list
/// `(position, symbol)` lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LocatedWord {
    entries: BTreeMap<u32, Symbol>,
}

impl LocatedWord {
    pub fn empty() -> Self {
        LocatedWord::default()
    }

    /// Builds a word from entries, rejecting duplicate or non-positive positions.
    pub fn from_entries<I>(entries: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (u32, Symbol)>,
    {
        let mut map = BTreeMap::new();
        for (pos, sym) in entries {
            if pos == 0 {
                return Err(WordError::OutOfRange("positions start at 1".into()));
            }
            if map.insert(pos, sym).is_some() {
                return Err(WordError::Parse(format!("duplicate position {pos}")));
            }
        }
        Ok(LocatedWord { entries: map })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, pos: u32) -> Option<Symbol> {
        self.entries.get(&pos).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, Symbol)> + '_ {
        self.entries.iter().map(|(&p, &s)| (p, s))
    }

    pub fn domain(&self) -> BTreeSet<u32> {
        self.entries.keys().copied().collect()
    }

    pub fn positions(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    /// True when no entry is the variable symbol.
    pub fn is_constant(&self) -> bool {
        self.entries.values().all(|s| *s != Symbol::Var)
    }

    pub fn contains_variable(&self) -> bool {
        !self.is_constant()
    }

    /// True when every symbol belongs to `alphabet`.
    pub fn fits(&self, alphabet: &Alphabet) -> bool {
        self.entries.values().all(|&s| alphabet.contains(s))
    }

    /// The partial product: union of the two maps when the domains are
    /// disjoint, undefined otherwise.
    pub fn combine(&self, other: &LocatedWord) -> Result<LocatedWord, WordError> {
        if let Some(&pos) = self.entries.keys().find(|p| other.entries.contains_key(p)) {
            return Err(WordError::UndefinedProduct(pos));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(&p, &s)| (p, s)));
        Ok(LocatedWord { entries })
    }

    /// Whether `combine` would succeed.
    pub fn disjoint_from(&self, other: &LocatedWord) -> bool {
        self.entries.keys().all(|p| !other.entries.contains_key(p))
    }

    /// Replaces every occurrence of the variable by the constant `s`,
    /// leaving constant entries and the domain unchanged.
    pub fn substitute(&self, s: u32) -> LocatedWord {
        let entries = self
            .entries
            .iter()
            .map(|(&p, &sym)| match sym {
                Symbol::Var => (p, Symbol::Const(s)),
                c => (p, c),
            })
            .collect();
        LocatedWord { entries }
    }

    /// The word `gamma x {sym}` extended by the entries of `self`; undefined
    /// when `gamma` meets the domain.
    pub fn extend_on(&self, gamma: &BTreeSet<u32>, sym: Symbol) -> Result<LocatedWord, WordError> {
        if let Some(&pos) = gamma.iter().find(|p| self.entries.contains_key(p)) {
            return Err(WordError::UndefinedProduct(pos));
        }
        let mut entries = self.entries.clone();
        entries.extend(gamma.iter().map(|&p| (p, sym)));
        Ok(LocatedWord { entries })
    }
}

impl Ord for LocatedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries
            .len()
            .cmp(&other.entries.len())
            .then_with(|| self.entries.iter().cmp(other.entries.iter()))
    }
}

impl PartialOrd for LocatedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LocatedWord {
    /// Canonical text form: `{2:v,5:0,7:v}`, entries sorted by position.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (pos, sym)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{pos}:{sym}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for LocatedWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let inner = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| WordError::Parse(format!("expected braces around word: {s}")))?;
        if inner.trim().is_empty() {
            return Ok(LocatedWord::empty());
        }
        let mut entries = Vec::new();
        for part in inner.split(',') {
            let (pos, sym) = part
                .split_once(':')
                .ok_or_else(|| WordError::Parse(format!("expected pos:sym, got {part}")))?;
            let pos: u32 = pos
                .trim()
                .parse()
                .map_err(|_| WordError::Parse(format!("bad position {pos}")))?;
            let sym = match sym.trim() {
                "v" => Symbol::Var,
                c => Symbol::Const(
                    c.parse()
                        .map_err(|_| WordError::Parse(format!("bad symbol {c}")))?,
                ),
            };
            entries.push((pos, sym));
        }
        LocatedWord::from_entries(entries)
    }
}

/// A located word with at least one occurrence of the variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableWord(LocatedWord);

impl VariableWord {
    pub fn new(word: LocatedWord) -> Result<Self, WordError> {
        if word.is_constant() {
            return Err(WordError::NotAVariableWord);
        }
        Ok(VariableWord(word))
    }

    pub fn as_word(&self) -> &LocatedWord {
        &self.0
    }

    pub fn into_word(self) -> LocatedWord {
        self.0
    }

    /// Splits into the constant part and the set of variable positions.
    /// This is the unique decomposition `w = alpha U gamma x {v}`.
    pub fn decompose(&self) -> (LocatedWord, BTreeSet<u32>) {
        let mut alpha = BTreeMap::new();
        let mut gamma = BTreeSet::new();
        for (pos, sym) in self.0.entries() {
            match sym {
                Symbol::Var => {
                    gamma.insert(pos);
                }
                c => {
                    alpha.insert(pos, c);
                }
            }
        }
        (LocatedWord { entries: alpha }, gamma)
    }
}

impl TryFrom<LocatedWord> for VariableWord {
    type Error = WordError;

    fn try_from(word: LocatedWord) -> Result<Self, WordError> {
        VariableWord::new(word)
    }
}

/// Splits a variable word into its constant part and variable positions.
pub fn decompose_variable_word(
    w: &LocatedWord,
) -> Result<(LocatedWord, BTreeSet<u32>), WordError> {
    VariableWord::new(w.clone()).map(|vw| vw.decompose())
}
