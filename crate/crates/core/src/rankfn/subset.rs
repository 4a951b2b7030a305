use std::fmt;

use crate::{Error, Result};

pub const MAX_GROUND_SET: usize = 12;

/// Ground set `{1, …, n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::GroundSetSize(n));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Number of subsets, `2^n`.
    pub fn len(self) -> usize {
        1 << self.n
    }

    pub fn full(self) -> Subset {
        Subset((1u32 << self.n) - 1)
    }

    /// All subsets in increasing mask order, starting with ∅.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        (0..(1u32 << self.n)).map(Subset)
    }

    pub fn nonempty(self) -> impl Iterator<Item = Subset> {
        (1..(1u32 << self.n)).map(Subset)
    }

    pub fn check_index(self, index: usize) -> Result<()> {
        if index == 0 || index > self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(())
    }
}

/// A subset of the ground set stored as a bitmask; index `i` (1-based)
/// occupies bit `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(index: usize) -> Subset {
        debug_assert!(index >= 1);
        Subset(1 << (index - 1))
    }

    /// Builds a subset from 1-based indices; duplicates are rejected.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Subset> {
        let ground = GroundSet::new(n)?;
        let mut mask = 0u32;
        for &i in indices {
            ground.check_index(i)?;
            let bit = 1 << (i - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidArgument(format!("index {i} repeated")));
            }
            mask |= bit;
        }
        Ok(Subset(mask))
    }

    pub fn mask(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index >= 1 && self.0 & (1 << (index - 1)) != 0
    }

    pub fn with(self, index: usize) -> Subset {
        Subset(self.0 | (1 << (index - 1)))
    }

    pub fn without(self, index: usize) -> Subset {
        Subset(self.0 & !(1 << (index - 1)))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=32).filter(move |i| mask & (1u32 << (i - 1)) != 0)
    }

    /// Parses the `"1,3"` key form; the empty string is ∅.
    pub fn parse_key(key: &str, n: usize) -> Result<Subset> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let indices = key
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad subset key `{key}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Subset::from_indices(&indices, n)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.indices() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}
