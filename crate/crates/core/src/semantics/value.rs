//! Truth values as independent (truth, falsity) bit pairs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A BS4 truth value. The four values are named by which of `M ⊨T φ` and
/// `M ⊨F φ` hold: `1` true only, `b` both, `n` neither, `0` false only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthValue {
    pub is_true: bool,
    pub is_false: bool,
}

impl TruthValue {
    pub const ONE: TruthValue = TruthValue::new(true, false);
    pub const BOTH: TruthValue = TruthValue::new(true, true);
    pub const NEITHER: TruthValue = TruthValue::new(false, false);
    pub const ZERO: TruthValue = TruthValue::new(false, true);

    /// All values in the display order `1, b, n, 0`.
    pub const ALL: [TruthValue; 4] = [Self::ONE, Self::BOTH, Self::NEITHER, Self::ZERO];

    pub const fn new(is_true: bool, is_false: bool) -> Self {
        TruthValue { is_true, is_false }
    }

    pub fn designated(self) -> bool {
        self.is_true
    }

    pub fn is_classical(self) -> bool {
        self.is_true != self.is_false
    }

    /// Position in [`TruthValue::ALL`].
    pub fn index(self) -> usize {
        match (self.is_true, self.is_false) {
            (true, false) => 0,
            (true, true) => 1,
            (false, false) => 2,
            (false, true) => 3,
        }
    }

    pub fn name(self) -> &'static str {
        ["1", "b", "n", "0"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "1" => Some(Self::ONE),
            "b" => Some(Self::BOTH),
            "n" => Some(Self::NEITHER),
            "0" => Some(Self::ZERO),
            _ => None,
        }
    }

    // Clause-level connectives: each component is computed from the
    // components of the arguments, exactly as in the T/F recursion.

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Self::new(self.is_false, self.is_true)
    }

    pub fn and(self, o: Self) -> Self {
        Self::new(self.is_true && o.is_true, self.is_false || o.is_false)
    }

    pub fn or(self, o: Self) -> Self {
        Self::new(self.is_true || o.is_true, self.is_false && o.is_false)
    }

    pub fn imp(self, o: Self) -> Self {
        Self::new(!self.is_true || o.is_true, self.is_true && o.is_false)
    }

    pub fn iff(self, o: Self) -> Self {
        Self::new(
            self.is_true == o.is_true,
            (self.is_true && o.is_false) || (self.is_false && o.is_true),
        )
    }

    pub fn strong_imp(self, o: Self) -> Self {
        self.imp(o).and(o.neg().imp(self.neg()))
    }

    pub fn strong_iff(self, o: Self) -> Self {
        self.iff(o).and(self.neg().iff(o.neg()))
    }

    pub fn class_neg(self) -> Self {
        self.imp(Self::ZERO)
    }

    pub fn bang(self) -> Self {
        self.class_neg().neg()
    }

    pub fn quest(self) -> Self {
        self.neg().class_neg()
    }

    pub fn circ(self) -> Self {
        self.bang().iff(self.quest())
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for TruthValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_name(s).ok_or_else(|| format!("`{s}` is not a truth value (expected 1, b, n or 0)"))
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Four-valued connectives given as lookup tables over `1, b, n, 0`, with
/// no reference to the bit-pair clauses. Used as the meta-level
/// connectives of the Tarski semantics.
pub mod tables {
    use super::TruthValue;

    const O: TruthValue = TruthValue::ONE;
    const B: TruthValue = TruthValue::BOTH;
    const N: TruthValue = TruthValue::NEITHER;
    const Z: TruthValue = TruthValue::ZERO;

    pub const NEG: [TruthValue; 4] = [Z, B, N, O];
    pub const AND: [[TruthValue; 4]; 4] = [[O, B, N, Z], [B, B, Z, Z], [N, Z, N, Z], [Z, Z, Z, Z]];
    pub const OR: [[TruthValue; 4]; 4] = [[O, O, O, O], [O, B, O, B], [O, O, N, N], [O, B, N, Z]];
    pub const IMP: [[TruthValue; 4]; 4] = [[O, B, N, Z], [O, B, N, Z], [O, O, O, O], [O, O, O, O]];
    pub const IFF: [[TruthValue; 4]; 4] = [[O, B, N, Z], [B, B, N, Z], [N, N, O, O], [Z, Z, O, O]];

    pub fn neg(a: TruthValue) -> TruthValue {
        NEG[a.index()]
    }

    pub fn and(a: TruthValue, b: TruthValue) -> TruthValue {
        AND[a.index()][b.index()]
    }

    pub fn or(a: TruthValue, b: TruthValue) -> TruthValue {
        OR[a.index()][b.index()]
    }

    pub fn imp(a: TruthValue, b: TruthValue) -> TruthValue {
        IMP[a.index()][b.index()]
    }

    pub fn iff(a: TruthValue, b: TruthValue) -> TruthValue {
        IFF[a.index()][b.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in TruthValue::ALL {
            assert_eq!(TruthValue::from_name(v.name()), Some(v));
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{}\"", v.name()));
        }
        assert!("x".parse::<TruthValue>().is_err());
    }

    #[test]
    fn clauses_agree_with_tables() {
        for a in TruthValue::ALL {
            assert_eq!(a.neg(), tables::neg(a));
            for b in TruthValue::ALL {
                assert_eq!(a.and(b), tables::and(a, b), "{a} & {b}");
                assert_eq!(a.or(b), tables::or(a, b), "{a} | {b}");
                assert_eq!(a.imp(b), tables::imp(a, b), "{a} -> {b}");
                assert_eq!(a.iff(b), tables::iff(a, b), "{a} <-> {b}");
            }
        }
    }

    #[test]
    fn defined_unaries_are_classical() {
        for a in TruthValue::ALL {
            assert!(a.class_neg().is_classical());
            assert!(a.bang().is_classical());
            assert!(a.quest().is_classical());
            assert_eq!(a.circ() == TruthValue::ONE, a.is_classical());
        }
        assert_eq!(TruthValue::ONE.strong_imp(TruthValue::BOTH), TruthValue::ZERO);
    }
}
