//! Bounded universes of located words and the canonical enumeration order.
//!
//! The canonical order lists words by domain size first, then
//! lexicographically on the sorted `(position, symbol)` entry list, with the
//! variable symbol after all constants. `rank` and `unrank` are mutually
//! inverse bijections onto `0..size` consistent with that order.

use crate::words::{Alphabet, LocatedWord, Symbol, WordError};

/// Default cap on universe size, in words.
pub const DEFAULT_UNIVERSE_CAP: u64 = 1 << 20;

/// All located words whose domain lies inside a fixed finite position set.
#[derive(Debug, Clone)]
pub struct WordSpace {
    positions: Vec<u32>,
    alphabet: Alphabet,
    /// binomial[i][j] = C(i, j) for i, j <= positions.len()
    binomial: Vec<Vec<u64>>,
    /// count_by_len[m] = C(L, m) * s^m
    count_by_len: Vec<u64>,
    total: u64,
}

impl WordSpace {
    /// Builds the space of words over the given positions. Errors with
    /// `ResourceLimit` when the word count exceeds `cap`.
    pub fn new(positions: Vec<u32>, alphabet: Alphabet, cap: u64) -> Result<Self, WordError> {
        let mut positions = positions;
        positions.sort_unstable();
        positions.dedup();
        if positions.first().is_some_and(|&p| p == 0) {
            return Err(WordError::OutOfRange("positions start at 1".into()));
        }
        let len = positions.len();
        let s = u128::from(alphabet.symbol_count());

        let mut binomial = vec![vec![0u64; len + 1]; len + 1];
        for i in 0..=len {
            binomial[i][0] = 1;
            for j in 1..=i {
                binomial[i][j] = binomial[i - 1][j - 1].saturating_add(binomial[i - 1][j]);
            }
        }

        let mut count_by_len = Vec::with_capacity(len + 1);
        let mut total: u128 = 0;
        let mut s_pow: u128 = 1;
        for m in 0..=len {
            let c = u128::from(binomial[len][m]) * s_pow;
            total += c;
            if total > u128::from(cap) {
                return Err(WordError::ResourceLimit {
                    size: word_count(len, s),
                    cap,
                });
            }
            count_by_len.push(c as u64);
            s_pow *= s;
        }

        Ok(WordSpace {
            positions,
            alphabet,
            binomial,
            count_by_len,
            total: total as u64,
        })
    }

    pub fn size(&self) -> u64 {
        self.total
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    fn symbol_count(&self) -> u64 {
        u64::from(self.alphabet.symbol_count())
    }

    /// Index of the word in canonical order.
    pub fn rank(&self, w: &LocatedWord) -> Result<u64, WordError> {
        let len = self.positions.len();
        let m = w.len();
        if m > len {
            return Err(WordError::OutOfRange(format!(
                "word {w} has more entries than there are positions"
            )));
        }
        let s = self.symbol_count();

        let mut rank: u64 = self.count_by_len[..m].iter().sum();
        let mut rem = m;
        let mut next_idx = 0usize;
        for (pos, sym) in w.entries() {
            let idx = self.positions[next_idx..]
                .binary_search(&pos)
                .map(|i| i + next_idx)
                .map_err(|_| {
                    WordError::OutOfRange(format!("word {w} uses position {pos} outside the space"))
                })?;
            let sym_idx = self.alphabet.symbol_index(sym).ok_or_else(|| {
                WordError::OutOfRange(format!("word {w} uses symbol {sym} outside the alphabet"))
            })? as u64;

            // Words whose next entry sits at an earlier position, any symbol.
            for q in next_idx..idx {
                rank += self.binomial[len - q - 1][rem - 1] * s.pow(rem as u32);
            }
            // Same position, smaller symbol.
            rank += sym_idx * self.binomial[len - idx - 1][rem - 1] * s.pow(rem as u32 - 1);

            next_idx = idx + 1;
            rem -= 1;
        }
        Ok(rank)
    }

    /// Inverse of `rank`.
    pub fn unrank(&self, index: u64) -> Result<LocatedWord, WordError> {
        if index >= self.total {
            return Err(WordError::OutOfRange(format!(
                "rank {index} out of range for universe of size {}",
                self.total
            )));
        }
        let len = self.positions.len();
        let s = self.symbol_count();

        let mut i = index;
        let mut m = 0usize;
        while i >= self.count_by_len[m] {
            i -= self.count_by_len[m];
            m += 1;
        }

        let mut entries = Vec::with_capacity(m);
        let mut rem = m;
        let mut q = 0usize;
        while rem > 0 {
            let tail = self.binomial[len - q - 1][rem - 1] * s.pow(rem as u32 - 1);
            let block = tail * s;
            if i < block {
                let sym_idx = (i / tail) as u32;
                i %= tail;
                let sym = self.alphabet.symbol_at(sym_idx).unwrap();
                entries.push((self.positions[q], sym));
                rem -= 1;
            } else {
                i -= block;
            }
            q += 1;
        }
        Ok(LocatedWord::from_entries(entries).expect("positions are distinct"))
    }

    /// Words in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = LocatedWord> + '_ {
        (0..self.total).map(move |i| self.unrank(i).expect("rank in range"))
    }
}

/// The universe of words with domain inside `1..=n`.
#[derive(Debug, Clone)]
pub struct Universe {
    space: WordSpace,
    n: u32,
}

impl Universe {
    pub fn new(n: u32, alphabet: Alphabet) -> Result<Self, WordError> {
        Self::with_cap(n, alphabet, DEFAULT_UNIVERSE_CAP)
    }

    pub fn with_cap(n: u32, alphabet: Alphabet, cap: u64) -> Result<Self, WordError> {
        let space = WordSpace::new((1..=n).collect(), alphabet, cap)?;
        Ok(Universe { space, n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.space.alphabet()
    }

    pub fn size(&self) -> u64 {
        self.space.size()
    }

    pub fn space(&self) -> &WordSpace {
        &self.space
    }

    pub fn rank(&self, w: &LocatedWord) -> Result<u64, WordError> {
        self.space.rank(w)
    }

    pub fn unrank(&self, index: u64) -> Result<LocatedWord, WordError> {
        self.space.unrank(index)
    }

    pub fn iter(&self) -> impl Iterator<Item = LocatedWord> + '_ {
        self.space.iter()
    }

    pub fn contains(&self, w: &LocatedWord) -> bool {
        w.fits(self.alphabet()) && w.positions().all(|p| 1 <= p && p <= self.n)
    }
}

fn word_count(len: usize, symbols: u128) -> u128 {
    (symbols + 1).checked_pow(len as u32).unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> LocatedWord {
        s.parse().unwrap()
    }

    #[test]
    fn smallest_universes_enumerate_exactly() {
        let u = Universe::new(1, Alphabet::constants(2)).unwrap();
        assert_eq!(u.iter().collect::<Vec<_>>(), vec![w("{}"), w("{1:0}"), w("{1:1}")]);

        let u = Universe::new(1, Alphabet::constants(1)).unwrap();
        assert_eq!(u.iter().collect::<Vec<_>>(), vec![w("{}"), w("{1:0}")]);
    }

    #[test]
    fn universe_counts_match_closed_form() {
        for n in 0..=6u32 {
            for sigma in 1..=3u32 {
                let plain = Universe::new(n, Alphabet::constants(sigma)).unwrap();
                assert_eq!(plain.size(), u64::from(sigma + 1).pow(n));
                let with_v = Universe::new(n, Alphabet::with_variable(sigma)).unwrap();
                assert_eq!(with_v.size(), u64::from(sigma + 2).pow(n));
            }
        }
    }

    #[test]
    fn enumeration_is_strictly_canonical_and_bijective() {
        for alphabet in [Alphabet::constants(2), Alphabet::with_variable(2)] {
            let u = Universe::new(3, alphabet).unwrap();
            let words: Vec<_> = u.iter().collect();
            assert_eq!(words.len() as u64, u.size());
            for (i, word) in words.iter().enumerate() {
                assert_eq!(u.rank(word).unwrap(), i as u64);
                if i > 0 {
                    assert!(words[i - 1] < *word, "order violated at {i}");
                }
            }
        }
    }

    #[test]
    fn rank_of_empty_word_is_zero() {
        let u = Universe::new(4, Alphabet::constants(2)).unwrap();
        assert_eq!(u.rank(&LocatedWord::empty()).unwrap(), 0);
        assert_eq!(u.unrank(0).unwrap(), LocatedWord::empty());
    }

    #[test]
    fn rank_rejects_outside_words() {
        let u = Universe::new(2, Alphabet::constants(2)).unwrap();
        assert!(u.rank(&w("{3:0}")).is_err());
        assert!(u.rank(&w("{1:2}")).is_err());
        assert!(u.rank(&w("{1:v}")).is_err());
        assert!(u.unrank(9).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let err = Universe::with_cap(5, Alphabet::constants(2), 100).unwrap_err();
        assert!(matches!(err, WordError::ResourceLimit { .. }));
    }

    #[test]
    fn word_space_over_scattered_positions() {
        let space = WordSpace::new(vec![2, 5, 9], Alphabet::constants(2), 1 << 20).unwrap();
        assert_eq!(space.size(), 27);
        let words: Vec<_> = space.iter().collect();
        for (i, word) in words.iter().enumerate() {
            assert_eq!(space.rank(word).unwrap(), i as u64);
            assert!(word.positions().all(|p| [2, 5, 9].contains(&p)));
        }
        assert!(space.rank(&w("{3:0}")).is_err());
    }
}
