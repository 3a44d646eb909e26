//! Append-only interning store of non-classical sets.
//!
//! A set is a pair (positive extension, ?-extension) of earlier sets. Two
//! pairs with the same coordinates get the same [`SetId`], so positive
//! equality is id equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

/// Handle of an interned set. Ids depend on interning order and are never
/// shown in reports; use [`Universe::literal`] for a stable name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetId(u32);

impl SetId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Sorted, duplicate-free coordinates plus the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCSet {
    pub pos: Vec<SetId>,
    pub quest: Vec<SetId>,
    pub rank: u32,
}

#[derive(Default)]
struct Inner {
    sets: Vec<Arc<NCSet>>,
    index: HashMap<(Vec<SetId>, Vec<SetId>), SetId>,
}

/// The store. Reads take a shared lock; interning a new set takes the
/// exclusive lock. Existing entries never change.
pub struct Universe {
    inner: RwLock<Inner>,
}

impl Default for Universe {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe").field("len", &self.len()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("bad set literal at offset {offset}: {message}")]
pub struct LiteralError {
    pub offset: usize,
    pub message: String,
}

impl Universe {
    /// A store containing only the empty set.
    pub fn new() -> Self {
        let u = Universe { inner: RwLock::new(Inner::default()) };
        u.intern(Vec::new(), Vec::new());
        u
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("store lock").sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn empty(&self) -> SetId {
        SetId(0)
    }

    pub fn get(&self, id: SetId) -> Arc<NCSet> {
        self.inner.read().expect("store lock").sets[id.index()].clone()
    }

    /// Interns the pair `(pos, quest)`. The inputs need not be sorted.
    pub fn intern(&self, mut pos: Vec<SetId>, mut quest: Vec<SetId>) -> SetId {
        pos.sort_unstable();
        pos.dedup();
        quest.sort_unstable();
        quest.dedup();
        let key = (pos, quest);
        if let Some(&id) = self.inner.read().expect("store lock").index.get(&key) {
            return id;
        }
        let mut inner = self.inner.write().expect("store lock");
        if let Some(&id) = inner.index.get(&key) {
            return id;
        }
        let rank = key
            .0
            .iter()
            .chain(&key.1)
            .map(|m| inner.sets[m.index()].rank + 1)
            .max()
            .unwrap_or(0);
        let id = SetId(u32::try_from(inner.sets.len()).expect("fewer than 2^32 sets"));
        inner.sets.push(Arc::new(NCSet { pos: key.0.clone(), quest: key.1.clone(), rank }));
        inner.index.insert(key, id);
        id
    }

    /// The canonical literal `<[..],[..]>`, members sorted as strings.
    pub fn literal(&self, id: SetId) -> String {
        let mut memo = HashMap::new();
        self.literal_memo(id, &mut memo)
    }

    fn literal_memo(&self, id: SetId, memo: &mut HashMap<SetId, String>) -> String {
        if let Some(s) = memo.get(&id) {
            return s.clone();
        }
        let node = self.get(id);
        let mut side = |ms: &[SetId]| {
            let mut parts: Vec<String> = ms.iter().map(|&m| self.literal_memo(m, memo)).collect();
            parts.sort();
            parts.join(",")
        };
        let s = format!("<[{}],[{}]>", side(&node.pos), side(&node.quest));
        memo.insert(id, s.clone());
        s
    }

    /// Parses and interns a literal. Whitespace is allowed between tokens.
    pub fn parse_literal(&self, text: &str) -> Result<SetId, LiteralError> {
        let bytes: Vec<(usize, u8)> = text.bytes().enumerate().filter(|(_, b)| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let id = self.parse_set(&bytes, &mut pos, text.len())?;
        if let Some(&(off, _)) = bytes.get(pos) {
            return Err(LiteralError { offset: off, message: "trailing input".into() });
        }
        Ok(id)
    }

    fn parse_set(&self, b: &[(usize, u8)], p: &mut usize, end: usize) -> Result<SetId, LiteralError> {
        let expect = |p: &mut usize, c: u8| -> Result<(), LiteralError> {
            match b.get(*p) {
                Some(&(_, x)) if x == c => {
                    *p += 1;
                    Ok(())
                }
                Some(&(off, x)) => {
                    Err(LiteralError { offset: off, message: format!("expected `{}`, found `{}`", c as char, x as char) })
                }
                None => Err(LiteralError { offset: end, message: format!("expected `{}`", c as char) }),
            }
        };
        expect(p, b'<')?;
        let pos = self.parse_list(b, p, end, &expect)?;
        expect(p, b',')?;
        let quest = self.parse_list(b, p, end, &expect)?;
        expect(p, b'>')?;
        Ok(self.intern(pos, quest))
    }

    fn parse_list(
        &self,
        b: &[(usize, u8)],
        p: &mut usize,
        end: usize,
        expect: &dyn Fn(&mut usize, u8) -> Result<(), LiteralError>,
    ) -> Result<Vec<SetId>, LiteralError> {
        expect(p, b'[')?;
        let mut out = Vec::new();
        if matches!(b.get(*p), Some(&(_, b']'))) {
            *p += 1;
            return Ok(out);
        }
        loop {
            out.push(self.parse_set(b, p, end)?);
            match b.get(*p) {
                Some(&(_, b',')) => *p += 1,
                Some(&(_, b']')) => {
                    *p += 1;
                    return Ok(out);
                }
                Some(&(off, x)) => {
                    return Err(LiteralError { offset: off, message: format!("expected `,` or `]`, found `{}`", x as char) })
                }
                None => return Err(LiteralError { offset: end, message: "unterminated list".into() }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_canonical() {
        let u = Universe::new();
        let e = u.empty();
        let a = u.intern(vec![e, e], vec![]);
        let b = u.intern(vec![e], vec![]);
        assert_eq!(a, b);
        assert_eq!(u.get(a).rank, 1);
        assert_eq!(u.len(), 2);
    }

    #[test]
    fn literals_round_trip() {
        let u = Universe::new();
        let x = u.parse_literal("<[<[],[]>],[]>").unwrap();
        assert_eq!(u.literal(x), "<[<[],[]>],[]>");
        let y = u.parse_literal(" < [ <[<[],[]>],[]> , <[],[]> ] , [] > ").unwrap();
        assert_eq!(u.literal(y), "<[<[<[],[]>],[]>,<[],[]>],[]>");
        assert_eq!(u.get(y).rank, 2);
        let err = u.parse_literal("<[],[]").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(u.parse_literal("<[],[]>x").is_err());
    }
}
