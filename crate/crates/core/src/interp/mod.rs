//! Classical sets inside W and W inside the hereditarily classical sets.
//!
//! The check map sends a pure HF set to the classical set with the same
//! members; the hat map codes a set of W as the Kuratowski pair of its two
//! extensions.

mod hf;

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hf::{HFSet, MAX_HF_LEVEL};

use crate::universe::{SetId, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{check} supports levels up to {max}, got {level}")]
pub struct BoundError {
    pub check: &'static str,
    pub level: u32,
    pub max: u32,
}

/// Outcome of one embedding check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub check: String,
    pub level: u32,
    pub pairs_checked: u64,
    pub failures: Vec<String>,
    /// Sizes of the two compared sides, per level, where that applies.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sides: Vec<[usize; 2]>,
}

impl IsoReport {
    fn new(check: &str, level: u32) -> Self {
        IsoReport { check: check.into(), level, pairs_checked: 0, failures: Vec::new(), sides: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.pairs_checked += 1;
        self.note(ok, msg);
    }

    /// Records a failure without counting a checked pair.
    fn note(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 10 {
            self.failures.push(msg());
        }
    }
}

fn bound(check: &'static str, level: u32, max: u32) -> Result<(), BoundError> {
    if level > max {
        Err(BoundError { check, level, max })
    } else {
        Ok(())
    }
}

/// `x̌`: both extensions are the images of the members of `x`.
pub fn check_embed(u: &Universe, x: HFSet) -> SetId {
    let ms: Vec<SetId> = x.members().map(|m| check_embed(u, m)).collect();
    u.classical_enum_set(&ms)
}

pub fn verify_check_iso(u: &Universe, level: u32) -> Result<IsoReport, BoundError> {
    bound("check_iso", level, MAX_HF_LEVEL)?;
    let vs = HFSet::level(level);
    let img: Vec<SetId> = vs.iter().map(|&x| check_embed(u, x)).collect();
    let mut r = IsoReport::new("check_iso", level);
    for (i, &x) in vs.iter().enumerate() {
        r.note(u.is_classical(img[i]), || format!("image of {x} is not classical"));
        for (j, &y) in vs.iter().enumerate() {
            let (a, b) = (img[i], img[j]);
            let ok = y.contains(x) == u.mem_true(a, b)
                && !y.contains(x) == u.mem_false(a, b)
                && (x == y) == u.eq_true(a, b)
                && (x != y) == u.eq_false(a, b);
            r.expect(ok, || format!("x = {x}, y = {y}"));
        }
    }
    Ok(r)
}

/// Whether `x` is hereditarily classical: classical with hereditarily
/// classical members. Memoized per store.
pub struct HclMemo<'a> {
    u: &'a Universe,
    memo: Mutex<HashMap<SetId, bool>>,
}

impl<'a> HclMemo<'a> {
    pub fn new(u: &'a Universe) -> Self {
        HclMemo { u, memo: Mutex::new(HashMap::new()) }
    }

    pub fn is_hcl(&self, x: SetId) -> bool {
        if let Some(&v) = self.memo.lock().expect("memo lock").get(&x) {
            return v;
        }
        let v = self.u.is_classical(x) && self.u.get(x).pos.iter().all(|&m| self.is_hcl(m));
        self.memo.lock().expect("memo lock").insert(x, v);
        v
    }
}

pub fn hcl_filter(u: &Universe, fragment: &[SetId]) -> Vec<SetId> {
    let memo = HclMemo::new(u);
    fragment.iter().copied().filter(|&x| memo.is_hcl(x)).collect()
}

/// `HCL_n` built level by level: classical sets of subsets of `HCL_{n-1}`.
pub fn hcl_stratified(u: &Universe, n: u32) -> Vec<SetId> {
    let mut level: Vec<SetId> = Vec::new();
    for _ in 0..n {
        level = (0u64..1 << level.len())
            .map(|m| {
                let ms: Vec<SetId> = level.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &s)| s).collect();
                u.classical_enum_set(&ms)
            })
            .collect();
    }
    level
}

pub fn verify_hclw_equals_vcheck(u: &Universe, n: u32) -> Result<IsoReport, BoundError> {
    bound("hclw_equals_vcheck", n, crate::universe::MAX_LEVEL)?;
    let mut r = IsoReport::new("hclw_equals_vcheck", n);
    for k in 1..=n {
        let w = u.enumerate_level(k).expect("bounded");
        let hcl: BTreeSet<SetId> = hcl_filter(u, &w).into_iter().collect();
        let vcheck: BTreeSet<SetId> = HFSet::level(k).into_iter().map(|x| check_embed(u, x)).collect();
        let strat: BTreeSet<SetId> = hcl_stratified(u, k).into_iter().collect();
        r.sides.push([hcl.len(), vcheck.len()]);
        r.expect(hcl == vcheck, || format!("level {k}: HCL has {} sets, V-check has {}", hcl.len(), vcheck.len()));
        r.expect(hcl == strat, || format!("level {k}: memoized and stratified HCL differ"));
    }
    Ok(r)
}

/// Splits a Kuratowski pair `{{a}, {a, b}}` into `(a, b)`.
pub fn decode_kuratowski(u: &Universe, k: SetId) -> Option<(SetId, SetId)> {
    if !u.is_classical(k) {
        return None;
    }
    let ms = u.get(k).pos.clone();
    let classical_members = |s: SetId| u.is_classical(s).then(|| u.get(s).pos.clone());
    match ms.as_slice() {
        [m] => match classical_members(*m)?.as_slice() {
            [a] => Some((*a, *a)),
            _ => None,
        },
        [m1, m2] => {
            let (c1, c2) = (classical_members(*m1)?, classical_members(*m2)?);
            let (single, pair) = match (c1.len(), c2.len()) {
                (1, 2) => (c1, c2),
                (2, 1) => (c2, c1),
                _ => return None,
            };
            let a = single[0];
            if !pair.contains(&a) {
                return None;
            }
            let b = *pair.iter().find(|&&m| m != a)?;
            Some((a, b))
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("Kuratowski pairs need classical components: {0} is not classical")]
pub struct NotClassical(pub String);

/// The ordered pair of two classical sets.
pub fn kuratowski_checked(u: &Universe, a: SetId, b: SetId) -> Result<SetId, NotClassical> {
    for s in [a, b] {
        if !u.is_classical(s) {
            return Err(NotClassical(u.literal(s)));
        }
    }
    Ok(u.kuratowski(a, b))
}

/// `x̂`: the Kuratowski pair of the classical sets of hat images of the two
/// extensions.
pub fn hat_embed(u: &Universe, x: SetId) -> SetId {
    fn go(u: &Universe, x: SetId, memo: &mut HashMap<SetId, SetId>) -> SetId {
        if let Some(&h) = memo.get(&x) {
            return h;
        }
        let n = u.get(x);
        let p: Vec<SetId> = n.pos.iter().map(|&y| go(u, y, memo)).collect();
        let q: Vec<SetId> = n.quest.iter().map(|&y| go(u, y, memo)).collect();
        let h = u.kuratowski(u.classical_enum_set(&p), u.classical_enum_set(&q));
        memo.insert(x, h);
        h
    }
    go(u, x, &mut HashMap::new())
}

pub fn verify_hat_iso(u: &Universe, n: u32) -> Result<IsoReport, BoundError> {
    bound("hat_iso", n, crate::universe::MAX_LEVEL)?;
    let w = u.enumerate_level(n).expect("bounded");
    let hats: Vec<SetId> = w.iter().map(|&x| hat_embed(u, x)).collect();
    let memo = HclMemo::new(u);
    let mut r = IsoReport::new("hat_iso", n);
    let decoded: Vec<Option<(SetId, SetId)>> = hats.iter().map(|&h| decode_kuratowski(u, h)).collect();
    for (i, &x) in w.iter().enumerate() {
        r.note(memo.is_hcl(hats[i]), || format!("hat of {} is not hereditarily classical", u.literal(x)));
        let Some((a, b)) = decoded[i] else {
            r.note(false, || format!("hat of {} does not decode", u.literal(x)));
            continue;
        };
        if u.is_classical(x) {
            r.note(a == b, || format!("classical {} decodes to distinct coordinates", u.literal(x)));
        }
    }
    for (i, &x) in w.iter().enumerate() {
        for (j, &y) in w.iter().enumerate() {
            let (Some((ax, bx)), Some((ay, by))) = (decoded[i], decoded[j]) else { continue };
            let (hx, hy) = (hats[i], hats[j]);
            // relations read off the decoded pairs
            let e_pos = u.mem_true(hx, ay);
            let e_neg = !u.mem_true(hx, by);
            let inc = |s: SetId, t: SetId| u.get(s).pos.iter().all(|m| u.get(t).pos.contains(m));
            let eq_pos = hx == hy;
            let eq_neg = !inc(ax, by) || !inc(ay, bx);
            let ok = e_pos == u.mem_true(x, y)
                && e_neg == u.mem_false(x, y)
                && eq_pos == u.eq_true(x, y)
                && eq_neg == u.eq_false(x, y);
            r.expect(ok, || format!("x = {}, y = {}", u.literal(x), u.literal(y)));
        }
    }
    Ok(r)
}

/// The levels of W rebuilt inside the hereditarily classical sets, with
/// pairs coded as Kuratowski pairs.
pub fn w_in_hcl(u: &Universe, n: u32) -> Vec<SetId> {
    let mut level: Vec<SetId> = Vec::new();
    for _ in 0..n {
        let subs: Vec<SetId> = (0u64..1 << level.len())
            .map(|m| {
                let ms: Vec<SetId> = level.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &s)| s).collect();
                u.classical_enum_set(&ms)
            })
            .collect();
        let mut next = Vec::with_capacity(subs.len() * subs.len());
        for &p in &subs {
            for &q in &subs {
                next.push(u.kuratowski(p, q));
            }
        }
        level = next;
    }
    level
}

pub fn verify_w_relativized_to_hcl(u: &Universe, n: u32) -> Result<IsoReport, BoundError> {
    bound("w_relativized_to_hcl", n, crate::universe::MAX_LEVEL)?;
    let mut r = IsoReport::new("w_relativized_to_hcl", n);
    let memo = HclMemo::new(u);
    let mut coded_all = BTreeSet::new();
    let mut hats_all = BTreeSet::new();
    for k in 1..=n {
        let coded: BTreeSet<SetId> = w_in_hcl(u, k).into_iter().collect();
        let hats: BTreeSet<SetId> = u.enumerate_level(k).expect("bounded").into_iter().map(|x| hat_embed(u, x)).collect();
        r.sides.push([coded.len(), hats.len()]);
        r.expect(coded == hats, || format!("level {k}: {} coded pairs, {} hat images", coded.len(), hats.len()));
        r.expect(coded.iter().all(|&c| memo.is_hcl(c)), || format!("level {k}: a coded pair is not hereditarily classical"));
        coded_all.extend(coded);
        hats_all.extend(hats);
    }
    // a Kuratowski pair whose coordinate is not itself a coded set
    let e = u.empty();
    let probe = u.kuratowski(e, u.classical_singleton(e));
    r.expect(!coded_all.contains(&probe) && !hats_all.contains(&probe), || "probe pair was accepted".into());
    Ok(r)
}
