//! Lattice paths in the rotated frame.
//!
//! The lattice diagonal becomes the horizontal axis: an N step is an up step
//! `(1, 1)` and an E step is a down step `(1, -1)`. A path is stored as a
//! packed bit sequence (bit `j` set means step `j` is up), one machine word
//! per 64 steps; the common case of at most 64 steps never touches the heap.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Longest path that can be ranked into a single machine word.
pub const MAX_RANK_LEN: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    #[inline]
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    #[inline]
    pub fn flipped(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    #[inline]
    fn from_bit(bit: u64) -> Step {
        if bit & 1 == 1 {
            Step::Up
        } else {
            Step::Down
        }
    }
}

/// Letter set used for the textual form of a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Alphabet {
    /// `U` for up, `D` for down.
    #[default]
    UD,
    /// `N` for up, `E` for down (the original north/east lattice).
    NE,
}

impl Alphabet {
    fn letters(self) -> (char, char) {
        match self {
            Alphabet::UD => ('U', 'D'),
            Alphabet::NE => ('N', 'E'),
        }
    }

    pub fn letter(self, step: Step) -> char {
        let (up, down) = self.letters();
        match step {
            Step::Up => up,
            Step::Down => down,
        }
    }

    pub fn step_for(self, c: char) -> Option<Step> {
        let (up, down) = self.letters();
        match c.to_ascii_uppercase() {
            x if x == up => Some(Step::Up),
            x if x == down => Some(Step::Down),
            _ => None,
        }
    }
}

/// Classification of a path by how its height profile meets the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathClass {
    /// Ends at height 0 (may dip below 0 on the way).
    Balanced,
    /// Nonempty and strictly above 0 after the start.
    UpUnbalanced,
    /// Nonempty and strictly below 0 after the start.
    DownUnbalanced,
    Other,
}

impl PathClass {
    pub fn is_unbalanced(self) -> bool {
        matches!(self, PathClass::UpUnbalanced | PathClass::DownUnbalanced)
    }

    pub fn name(self) -> &'static str {
        match self {
            PathClass::Balanced => "balanced",
            PathClass::UpUnbalanced => "up-unbalanced",
            PathClass::DownUnbalanced => "down-unbalanced",
            PathClass::Other => "other",
        }
    }
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite sequence of up and down steps starting at height 0.
///
/// Bits past `len` are always zero, so structural equality is path equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticePath {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl LatticePath {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_steps<I: IntoIterator<Item = Step>>(steps: I) -> Self {
        let mut p = Self::new();
        for s in steps {
            p.push(s);
        }
        p
    }

    /// `count` copies of a single step.
    pub fn repeat(step: Step, count: usize) -> Self {
        let mut p = Self::new();
        for _ in 0..count {
            p.push(step);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, step: Step) {
        let (w, b) = (self.len / 64, self.len % 64);
        if b == 0 {
            self.words.push(0);
        }
        if step == Step::Up {
            self.words[w] |= 1 << b;
        }
        self.len += 1;
    }

    /// Step at position `j`; panics if `j >= len`.
    #[inline]
    pub fn step(&self, j: usize) -> Step {
        assert!(j < self.len, "step index {j} out of bounds ({})", self.len);
        Step::from_bit(self.words[j / 64] >> (j % 64))
    }

    pub fn steps(&self) -> impl ExactSizeIterator<Item = Step> + '_ {
        (0..self.len).map(move |j| Step::from_bit(self.words[j / 64] >> (j % 64)))
    }

    /// Number of up steps among the first `j` steps.
    fn ups_before(&self, j: usize) -> usize {
        let full = j / 64;
        let mut n: usize = self.words[..full]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        if !j.is_multiple_of(64) {
            n += (self.words[full] & low_mask(j % 64)).count_ones() as usize;
        }
        n
    }

    pub fn up_count(&self) -> usize {
        self.ups_before(self.len)
    }

    /// Height after the first `j` steps (`h_0 = 0`).
    pub fn height_at(&self, j: usize) -> i64 {
        assert!(j <= self.len, "point index {j} out of bounds ({})", self.len);
        2 * self.ups_before(j) as i64 - j as i64
    }

    pub fn end_height(&self) -> i64 {
        self.height_at(self.len)
    }

    /// Full height profile `h_0, …, h_L`.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.len + 1);
        let mut y = 0;
        h.push(y);
        for s in self.steps() {
            y += s.delta();
            h.push(y);
        }
        h
    }

    pub fn is_balanced(&self) -> bool {
        self.end_height() == 0
    }

    pub fn classify(&self) -> PathClass {
        if self.is_balanced() {
            return PathClass::Balanced;
        }
        let first = self.step(0);
        let mut y = 0;
        for s in self.steps() {
            y += s.delta();
            if y == 0 || (y > 0) != (first == Step::Up) {
                return PathClass::Other;
            }
        }
        match first {
            Step::Up => PathClass::UpUnbalanced,
            Step::Down => PathClass::DownUnbalanced,
        }
    }

    /// Flips steps `from..to` in place. Bounds must already be checked.
    pub(crate) fn flip_range(&mut self, from: usize, to: usize) {
        debug_assert!(from <= to && to <= self.len);
        let mut j = from;
        while j < to {
            let (w, b) = (j / 64, j % 64);
            let take = (64 - b).min(to - j);
            self.words[w] ^= low_mask(take) << b;
            j += take;
        }
    }

    /// Mirror image about the axis `y = 0`.
    pub fn reflect_all(&self) -> LatticePath {
        let mut p = self.clone();
        p.flip_range(0, p.len);
        p
    }

    /// Reflects the sub-path between points `from` and `to` about the
    /// horizontal line through point `from`; the suffix after `to` is carried
    /// along rigidly.
    pub fn reflect_segment(&self, from: usize, to: usize) -> Result<LatticePath> {
        if to > self.len {
            return Err(Error::Index {
                index: to,
                len: self.len,
            });
        }
        if from > to {
            return Err(Error::Index {
                index: from,
                len: to,
            });
        }
        let mut p = self.clone();
        p.flip_range(from, to);
        Ok(p)
    }

    /// `self` followed by `other`, the second part starting where the first ends.
    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        let mut p = self.clone();
        for s in other.steps() {
            p.push(s);
        }
        p
    }

    /// Sub-path of steps `from..to`, re-based to start at height 0.
    pub fn slice(&self, from: usize, to: usize) -> LatticePath {
        assert!(from <= to && to <= self.len, "bad slice {from}..{to}");
        LatticePath::from_steps((from..to).map(|j| self.step(j)))
    }

    /// Maximum height and the leftmost point attaining it. `(0, 0)` for the
    /// empty path.
    pub fn max_height(&self) -> (i64, usize) {
        leftmost_max(&self.heights())
    }

    pub fn min_height(&self) -> i64 {
        self.heights().into_iter().min().unwrap_or(0)
    }

    /// Largest interior point `j < search_end` at height `level` whose
    /// neighbours lie on opposite sides of the level. Touch points are
    /// skipped, and neither 0 nor `search_end` is ever returned.
    pub fn rightmost_crossing(&self, level: i64, search_end: usize) -> Result<Option<usize>> {
        if search_end > self.len {
            return Err(Error::Index {
                index: search_end,
                len: self.len,
            });
        }
        Ok(rightmost_crossing_in(&self.heights(), level, search_end))
    }

    /// Encodes the path as an integer: bit `j` is set iff step `j` is up.
    pub fn rank(&self) -> Result<u64> {
        if self.len > MAX_RANK_LEN {
            return Err(Error::Range(format!(
                "path of length {} exceeds the rank limit of {MAX_RANK_LEN}",
                self.len
            )));
        }
        Ok(self.words.first().copied().unwrap_or(0))
    }

    pub fn unrank(len: usize, code: u64) -> Result<LatticePath> {
        if len > MAX_RANK_LEN {
            return Err(Error::Range(format!(
                "length {len} exceeds the rank limit of {MAX_RANK_LEN}"
            )));
        }
        if code >> len != 0 {
            return Err(Error::Range(format!(
                "code {code} does not fit in {len} steps"
            )));
        }
        let mut words = SmallVec::new();
        if len > 0 {
            words.push(code);
        }
        Ok(LatticePath { len, words })
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<LatticePath> {
        let mut p = LatticePath::new();
        for (index, c) in text.trim().chars().enumerate() {
            match alphabet.step_for(c) {
                Some(s) => p.push(s),
                None => {
                    let offset = text.chars().take_while(|c| c.is_whitespace()).count();
                    return Err(Error::Parse {
                        index: index + offset,
                        found: c,
                    });
                }
            }
        }
        Ok(p)
    }

    pub fn format(&self, alphabet: Alphabet) -> String {
        self.steps().map(|s| alphabet.letter(s)).collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Alphabet::UD))
    }
}

impl fmt::Debug for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticePath({:?})", self.format(Alphabet::UD))
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LatticePath::parse(s, Alphabet::UD)
    }
}

pub(crate) fn leftmost_max(h: &[i64]) -> (i64, usize) {
    let mut best = (h.first().copied().unwrap_or(0), 0);
    for (j, &y) in h.iter().enumerate().skip(1) {
        if y > best.0 {
            best = (y, j);
        }
    }
    best
}

pub(crate) fn rightmost_crossing_in(h: &[i64], level: i64, search_end: usize) -> Option<usize> {
    (1..search_end)
        .rev()
        .find(|&j| h[j] == level && h[j - 1] != h[j + 1])
}
