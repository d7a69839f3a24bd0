//! Multi-indices `s = (s_1, ..., s_n)` of natural numbers, the admissible
//! set `E_N = { s : |s| + l(s) <= N }`, and the local moves used by the
//! coefficient recurrence (prepend a zero, bump one slot, drop the head).

use std::cmp::Ordering;
use std::fmt;

/// A finite tuple of natural numbers. The empty tuple is allowed and is
/// the unique multi-index of length zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        MultiIndex(parts.into())
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// `|s|`: the sum of the entries.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `l(s)`: the number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// 1 when the first entry is zero, else 0. The empty tuple gives 0.
    pub fn delta(&self) -> u32 {
        u32::from(self.0.first() == Some(&0))
    }

    /// 1 when entry `i` is nonzero, else 0.
    pub fn eta(&self, i: usize) -> u32 {
        u32::from(self.0.get(i).is_some_and(|&v| v > 0))
    }

    /// The tuple with the first entry removed; only valid when nonempty.
    pub fn tail(&self) -> MultiIndex {
        MultiIndex(self.0[1..].to_vec())
    }

    /// Entries strictly before position `i`.
    pub fn prefix_weight(&self, i: usize) -> u32 {
        self.0[..i].iter().sum()
    }

    /// `(0, s_1, ..., s_n)`.
    pub fn prepend_zero(&self) -> MultiIndex {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.0);
        MultiIndex(v)
    }

    /// `s + e_i`; panics when `i` is out of range.
    pub fn plus_unit(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// `s - e_i` when entry `i` is positive.
    pub fn minus_unit(&self, i: usize) -> Option<MultiIndex> {
        if self.0.get(i).copied().unwrap_or(0) == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(MultiIndex(v))
    }

    /// Membership in `E_N`, i.e. `|s| + l(s) <= N`.
    pub fn admissible(&self, n: u32) -> bool {
        self.weight() + self.len() as u32 <= n
    }

    /// The leftover exponent `N - |s| - l(s)` for an admissible index.
    pub fn leftover(&self, n: u32) -> u32 {
        n - self.weight() - self.len() as u32
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// All of `E_N` in canonical order: by length, then lexicographically.
pub fn enumerate_admissible(n: u32) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::empty()];
    for len in 1..=n as usize {
        let budget = n - len as u32;
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        let mut level = Vec::new();
        while let Some(prefix) = stack.pop() {
            if prefix.len() == len {
                level.push(MultiIndex(prefix));
                continue;
            }
            let used: u32 = prefix.iter().sum();
            // Push in reverse so lex-smaller continuations pop first.
            for v in (0..=(budget - used)).rev() {
                let mut next = prefix.clone();
                next.push(v);
                stack.push(next);
            }
        }
        level.sort();
        out.extend(level);
    }
    out
}
