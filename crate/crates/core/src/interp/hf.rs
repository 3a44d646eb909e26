//! Pure hereditarily finite sets in Ackermann coding: bit `i` of the code is
//! set when the set coded by `i` is a member.

use std::fmt;

/// Highest level [`HFSet::level`] enumerates.
pub const MAX_HF_LEVEL: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HFSet(pub u32);

impl HFSet {
    pub const EMPTY: HFSet = HFSet(0);

    pub fn members(self) -> impl Iterator<Item = HFSet> {
        (0..32).filter(move |i| self.0 >> i & 1 == 1).map(HFSet)
    }

    pub fn contains(self, y: HFSet) -> bool {
        y.0 < 32 && self.0 >> y.0 & 1 == 1
    }

    /// The set with the given members. Panics if a member code is 32 or more.
    pub fn from_members(ms: impl IntoIterator<Item = HFSet>) -> HFSet {
        HFSet(ms.into_iter().fold(0, |acc, m| {
            assert!(m.0 < 32, "member code out of range");
            acc | 1 << m.0
        }))
    }

    pub fn rank(self) -> u32 {
        self.members().map(|m| m.rank() + 1).max().unwrap_or(0)
    }

    /// `V_n`: all sets of rank below `n`, i.e. codes below the `n`-th tower
    /// of twos (0, 1, 2, 4, 16).
    pub fn level(n: u32) -> Vec<HFSet> {
        assert!(n <= MAX_HF_LEVEL, "HF level above {MAX_HF_LEVEL}");
        let mut size: u32 = 0;
        for _ in 0..n {
            size = 1 << size;
        }
        (0..size).map(HFSet).collect()
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}
