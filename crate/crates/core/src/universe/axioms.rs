//! The axiom battery: each axiom is checked instance by instance over a
//! finite fragment, comparing the truth and falsity components on both sides
//! of every strong bi-implication.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fragment::Fragment;
use super::ops::MAX_LEVEL;
use super::store::{SetId, Universe};
use crate::formula::{parse, Formula, Signature};
use crate::par;
use crate::semantics::{Compiled, TruthValue};

const MAX_VIOLATIONS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    Extensionality,
    Comprehension,
    ClassicalSuperset,
    Replacement,
    Pairing,
    PowerSet,
    Union,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Extensionality,
        Axiom::Comprehension,
        Axiom::ClassicalSuperset,
        Axiom::Replacement,
        Axiom::Pairing,
        Axiom::PowerSet,
        Axiom::Union,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Extensionality => "Extensionality",
            Axiom::Comprehension => "Comprehension",
            Axiom::ClassicalSuperset => "ClassicalSuperset",
            Axiom::Replacement => "Replacement",
            Axiom::Pairing => "Pairing",
            Axiom::PowerSet => "PowerSet",
            Axiom::Union => "Union",
        }
    }

    /// Input level used when none is given. Pairing and power set inputs
    /// stay in `W_2` so that outputs land in `W_3`.
    pub fn default_level(self) -> u32 {
        match self {
            Axiom::Pairing | Axiom::PowerSet => 2,
            _ => 3,
        }
    }

    fn max_level(self) -> u32 {
        self.default_level()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown axiom `{0}` (known: Extensionality, Comprehension, ClassicalSuperset, Replacement, Pairing, PowerSet, Union)")]
    Unknown(String),
    #[error("input level {level} is too large for {axiom} (at most {max})")]
    Level { axiom: Axiom, level: u32, max: u32 },
}

impl FromStr for Axiom {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().to_ascii_lowercase() == key)
            .ok_or_else(|| AxiomError::Unknown(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub input_level: u32,
    pub fragment_size: usize,
    pub instances: u64,
    pub checks: u64,
    pub truth_clause_failures: u64,
    pub falsity_clause_failures: u64,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.truth_clause_failures == 0 && self.falsity_clause_failures == 0 && self.violations.is_empty()
    }
}

/// Outcome of one law checked over a range of inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    instances: u64,
    checks: u64,
    truth_fail: u64,
    false_fail: u64,
    violations: Vec<String>,
}

impl Tally {
    fn violation(&mut self, msg: impl FnOnce() -> String) {
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(msg());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.checks += other.checks;
        self.truth_fail += other.truth_fail;
        self.false_fail += other.false_fail;
        for v in other.violations {
            if self.violations.len() < MAX_VIOLATIONS {
                self.violations.push(v);
            }
        }
        self
    }
}

fn sum(ts: Vec<Tally>) -> Tally {
    ts.into_iter().fold(Tally::default(), Tally::merge)
}

pub(crate) fn formula(text: &str, sig: &Signature) -> Formula {
    parse(text, sig).unwrap_or_else(|e| panic!("built-in formula `{text}`: {e}"))
}

/// `lhs(y) <=> rhs(y)` for every `y` in the fragment, plus the quantified
/// sentence `forall y. (lhs <=> rhs)` as a whole.
struct Biimp {
    text: String,
    lhs: Compiled,
    rhs: Compiled,
    whole: Compiled,
}

impl Biimp {
    fn new(frag: &Fragment, sig: &Signature, lhs: &str, rhs: &str, params: &[&str]) -> Self {
        let mut with_y = vec!["y"];
        with_y.extend_from_slice(params);
        let text = format!("forall y. ({lhs} <=> {rhs})");
        let c = |t: &str, ps: &[&str]| frag.compile(&formula(t, sig), ps).expect("battery formula compiles");
        Biimp { lhs: c(lhs, &with_y), rhs: c(rhs, &with_y), whole: c(&text, params), text }
    }

    fn check(&self, frag: &Fragment, args: &[usize], describe: impl Fn() -> String) -> Tally {
        let s = frag.structure();
        let mut t = Tally { instances: 1, ..Tally::default() };
        let mut env = Vec::new();
        let mut full = vec![0usize];
        full.extend_from_slice(args);
        for y in 0..frag.len() {
            full[0] = y;
            let a = self.lhs.eval_in(s, &mut env, &full);
            let b = self.rhs.eval_in(s, &mut env, &full);
            t.checks += 1;
            if a.is_true != b.is_true {
                t.truth_fail += 1;
                t.violation(|| format!("{} at y = {}: truth clause {a} vs {b}", describe(), s.names[y]));
            }
            if a.is_false != b.is_false {
                t.false_fail += 1;
                t.violation(|| format!("{} at y = {}: falsity clause {a} vs {b}", describe(), s.names[y]));
            }
        }
        if !self.whole.eval(s, args).designated() {
            t.violation(|| format!("{}: `{}` not designated", describe(), self.text));
        }
        t
    }
}

fn level_ids(u: &Universe, axiom: Axiom, level: Option<u32>) -> Result<(u32, Vec<SetId>), AxiomError> {
    let level = level.unwrap_or(axiom.default_level());
    let max = axiom.max_level().min(MAX_LEVEL);
    if level > max {
        return Err(AxiomError::Level { axiom, level, max });
    }
    Ok((level, u.enumerate_level(level).expect("level checked")))
}

/// The evaluation fragment: `W_3` plus whatever the seeds need.
fn fragment_with(u: &Universe, seeds: &[SetId]) -> Fragment {
    let mut all = u.enumerate_level(MAX_LEVEL).expect("W_3");
    all.extend_from_slice(seeds);
    Fragment::closure(u, &all)
}

/// Checks one axiom. `level` selects the input level; `None` uses
/// [`Axiom::default_level`].
pub fn verify_axiom(u: &Universe, axiom: Axiom, level: Option<u32>) -> Result<AxiomReport, AxiomError> {
    let (level, inputs) = level_ids(u, axiom, level)?;
    let (frag, tally) = match axiom {
        Axiom::Extensionality => extensionality(u, &inputs),
        Axiom::Comprehension => comprehension(u, &inputs),
        Axiom::ClassicalSuperset => classical_superset(u, &inputs),
        Axiom::Replacement => replacement(u, &inputs),
        Axiom::Pairing => pairing(u, &inputs),
        Axiom::PowerSet => power_set(u, &inputs),
        Axiom::Union => union(u, &inputs),
    };
    Ok(AxiomReport {
        axiom,
        input_level: level,
        fragment_size: frag,
        instances: tally.instances,
        checks: tally.checks,
        truth_clause_failures: tally.truth_fail,
        falsity_clause_failures: tally.false_fail,
        violations: tally.violations,
    })
}

pub fn verify_all_axioms(u: &Universe) -> Vec<AxiomReport> {
    Axiom::ALL.iter().map(|&a| verify_axiom(u, a, None).expect("default levels are valid")).collect()
}

fn extensionality(u: &Universe, inputs: &[SetId]) -> (usize, Tally) {
    let sig = Signature::membership();
    let frag = fragment_with(u, inputs);
    let lhs = frag.compile(&formula("x = y", &sig), &["x", "y"]).expect("compiles");
    let rhs = frag.compile(&formula("forall z. (z in x <=> z in y)", &sig), &["x", "y"]).expect("compiles");
    let idx: Vec<usize> = inputs.iter().map(|&x| frag.index_of(x).expect("in fragment")).collect();
    let s = frag.structure();
    let rows = par::map(&idx, |&x| {
        let mut t = Tally::default();
        let mut env = Vec::new();
        for &y in &idx {
            let (a, b) = (lhs.eval_in(s, &mut env, &[x, y]), rhs.eval_in(s, &mut env, &[x, y]));
            t.instances += 1;
            t.checks += 1;
            if a.is_true != b.is_true {
                t.truth_fail += 1;
                t.violation(|| format!("x = {}, y = {}: truth clause {a} vs {b}", s.names[x], s.names[y]));
            }
            if a.is_false != b.is_false {
                t.false_fail += 1;
                t.violation(|| format!("x = {}, y = {}: falsity clause {a} vs {b}", s.names[x], s.names[y]));
            }
        }
        t
    });
    let mut t = sum(rows);
    if idx.len() == frag.len() {
        let sentence = formula("forall x. forall y. (x = y <=> forall z. (z in x <=> z in y))", &sig);
        t.checks += 1;
        if !frag.eval(u, &sentence, &[]).expect("closed").designated() {
            t.violation(|| "the Extensionality sentence is not designated".into());
        }
    }
    (frag.len(), t)
}

/// The comprehension battery: formulas in `y`, some with a parameter `p`.
pub const COMPREHENSION_BATTERY: [&str; 10] = [
    "bot",
    "y = y",
    "y in y",
    "~(y in y)",
    "exists w. w in y",
    "forall w. ~(w in y)",
    "!(y in y)",
    "o (exists w. (w in y & w in w))",
    "y in p",
    "y = p | ~(p in y)",
];

fn comprehension(u: &Universe, inputs: &[SetId]) -> (usize, Tally) {
    let sig = Signature::membership();
    let frag = fragment_with(u, inputs);
    let w2 = u.enumerate_level(2).expect("W_2");
    let bi_by_phi: Vec<Biimp> = COMPREHENSION_BATTERY
        .iter()
        .map(|phi| Biimp::new(&frag, &sig, "y in x", &format!("y in u & ({phi})"), &["x", "u", "p"]))
        .collect();
    let mut jobs: Vec<(usize, SetId, SetId)> = Vec::new();
    for (k, phi) in COMPREHENSION_BATTERY.iter().enumerate() {
        let params: &[SetId] = if phi.contains('p') { &w2 } else { &w2[..1] };
        for &x in inputs {
            for &p in params {
                jobs.push((k, x, p));
            }
        }
    }
    let phis: Vec<Formula> = COMPREHENSION_BATTERY.iter().map(|t| formula(t, &sig)).collect();
    let rows = par::map(&jobs, |&(k, set, p)| {
        let x = frag.comprehend(u, set, "y", &phis[k], &[("p", p)]).expect("battery comprehension");
        let at = |id: SetId| frag.index_of(id).expect("comprehension stays in the fragment");
        bi_by_phi[k].check(&frag, &[at(x), at(set), at(p)], || {
            format!("phi = `{}`, u = {}, p = {}", COMPREHENSION_BATTERY[k], u.literal(set), u.literal(p))
        })
    });
    (frag.len(), sum(rows))
}

fn classical_superset(u: &Universe, inputs: &[SetId]) -> (usize, Tally) {
    let sig = Signature::membership();
    let realms: Vec<SetId> = inputs.iter().map(|&x| u.realm(x)).collect();
    let frag = fragment_with(u, &realms);
    let body = frag
        .compile(&formula("(forall z. (z in x => z in c)) & (forall y. o (y in c))", &sig), &["x", "c"])
        .expect("compiles");
    let pairs: Vec<(SetId, SetId)> = inputs.iter().copied().zip(realms).collect();
    let rows = par::map(&pairs, |&(x, c)| {
        let mut t = Tally { instances: 1, checks: 3, ..Tally::default() };
        let describe = || format!("x = {}", u.literal(x));
        if !u.is_classical(c) {
            t.truth_fail += 1;
            t.violation(|| format!("{}: realm not classical", describe()));
        }
        if !u.subset_value(x, c).designated() {
            t.truth_fail += 1;
            t.violation(|| format!("{}: x is not a subset of its realm", describe()));
        }
        let args = [frag.index_of(x).expect("in"), frag.index_of(c).expect("in")];
        if !body.eval(frag.structure(), &args).designated() {
            t.truth_fail += 1;
            t.violation(|| format!("{}: superset formula not designated", describe()));
        }
        t
    });
    (frag.len(), sum(rows))
}

fn pairing(u: &Universe, inputs: &[SetId]) -> (usize, Tally) {
    let sig = Signature::membership();
    let mut jobs = Vec::new();
    for &a in inputs {
        for &b in inputs {
            jobs.push((a, b, u.classical_pair(a, b)));
        }
    }
    let outs: Vec<SetId> = jobs.iter().map(|j| j.2).collect();
    let frag = fragment_with(u, &outs);
    let bi = Biimp::new(&frag, &sig, "y in x", "!(y = a) | !(y = b)", &["x", "a", "b"]);
    let rows = par::map(&jobs, |&(a, b, x)| {
        let at = |id| frag.index_of(id).expect("in");
        bi.check(&frag, &[at(x), at(a), at(b)], || format!("u = {}, v = {}", u.literal(a), u.literal(b)))
    });
    (frag.len(), sum(rows))
}

fn power_set(u: &Universe, inputs: &[SetId]) -> (usize, Tally) {
    let sig = Signature::membership();
    let jobs: Vec<(SetId, SetId)> = inputs.iter().map(|&a| (a, u.powerset_bang(a))).collect();
    let outs: Vec<SetId> = jobs.iter().map(|j| j.1).collect();
    let frag = fragment_with(u, &outs);
    let bi = Biimp::new(&frag, &sig, "y in v", "!(forall z. (z in y => z in a))", &["v", "a"]);
    let rows = par::map(&jobs, |&(a, v)| {
        let at = |id| frag.index_of(id).expect("in");
        let mut t = bi.check(&frag, &[at(v), at(a)], || format!("u = {}", u.literal(a)));
        t.checks += 1;
        if !u.is_classical(v) {
            t.truth_fail += 1;
            t.violation(|| format!("power set of {} is not classical", u.literal(a)));
        }
        t
    });
    (frag.len(), sum(rows))
}

fn union(u: &Universe, inputs: &[SetId]) -> (usize, Tally) {
    let sig = Signature::membership();
    let jobs: Vec<(SetId, SetId)> = inputs.iter().map(|&a| (a, u.union_set(a))).collect();
    let outs: Vec<SetId> = jobs.iter().map(|j| j.1).collect();
    let frag = fragment_with(u, &outs);
    let bi = Biimp::new(&frag, &sig, "y in x", "exists z. (y in z & z in a)", &["x", "a"]);
    let rows = par::map(&jobs, |&(a, x)| {
        let at = |id| frag.index_of(id).expect("in");
        bi.check(&frag, &[at(x), at(a)], || format!("u = {}", u.literal(a)))
    });
    (frag.len(), sum(rows))
}

/// A Replacement operation: the formula `phi(w, z)` and the set it maps `w` to.
#[derive(Clone, Copy, Debug)]
pub struct Operation {
    pub name: &'static str,
    pub phi: &'static str,
    pub apply: fn(&Universe, SetId) -> SetId,
    /// Level of the input sets `x`. The operation must be total on their members.
    pub level: u32,
}

pub const OPERATIONS: [Operation; 3] = [
    Operation {
        name: "quest-extension",
        phi: "!(forall t. (t in z <=> ?(t in w)))",
        apply: |u, w| u.quest_ext(w),
        level: 3,
    },
    Operation {
        name: "bang-extension",
        phi: "!(forall t. (t in z <=> !(t in w)))",
        apply: |u, w| u.bang_ext(w),
        level: 3,
    },
    Operation {
        name: "classical-singleton",
        phi: "!(forall t. (t in z <=> !(t = w)))",
        apply: |u, w| u.classical_singleton(w),
        level: 2,
    },
];

fn replacement(u: &Universe, inputs: &[SetId]) -> (usize, Tally) {
    let mut total = Tally::default();
    let mut size = 0;
    for op in &OPERATIONS {
        let xs: Vec<SetId> = inputs.iter().copied().filter(|&x| u.rank(x) < op.level).collect();
        let (n, t) = replacement_op(u, op, &xs);
        size = size.max(n);
        total = total.merge(t);
    }
    (size, total)
}

/// The image `F[x]` of a set under an operation.
pub fn image(u: &Universe, op: &Operation, x: SetId) -> SetId {
    let n = u.get(x);
    let pos = n.pos.iter().map(|&w| (op.apply)(u, w)).collect();
    let quest = n.quest.iter().map(|&w| (op.apply)(u, w)).collect();
    u.intern(pos, quest)
}

fn replacement_op(u: &Universe, op: &Operation, inputs: &[SetId]) -> (usize, Tally) {
    let sig = Signature::membership().with_relation("F", 2);
    let images: Vec<SetId> = inputs.iter().map(|&x| image(u, op, x)).collect();
    let mut frag = fragment_with(u, &images);
    let phi = frag.compile(&formula(op.phi, &sig), &["w", "z"]).expect("compiles");
    let base = frag.structure().clone();
    let n = frag.len();
    let table = par::range_map((n * n) as u64, |i| phi.eval(&base, &[i as usize % n, i as usize / n]));
    frag.add_relation("F", 2, |t| table[t[0] + t[1] * n]);
    let s = frag.structure();
    let mut t = Tally::default();

    // the operation is classical everywhere in the fragment
    t.checks += 1;
    if !frag.eval(u, &formula("forall w. forall z. o F(w, z)", &sig), &[]).expect("closed").designated() {
        t.truth_fail += 1;
        t.violation(|| format!("{}: phi is not classical", op.name));
    }
    // and functional on every member of an input
    let mut domain: Vec<SetId> = inputs.iter().flat_map(|&x| {
        let nd = u.get(x);
        nd.pos.iter().chain(&nd.quest).copied().collect::<Vec<_>>()
    }).collect();
    domain.sort();
    domain.dedup();
    let functional = frag
        .compile(&formula("exists z. (F(w, z) & forall v. (F(w, v) -> !(z = v)))", &sig), &["w"])
        .expect("compiles");
    let witness = frag.compile(&formula("F(w, z) & forall v. (F(w, v) -> !(z = v))", &sig), &["w", "z"]).expect("compiles");
    let rows = par::map(&domain, |&w| {
        let mut t = Tally { checks: 2, ..Tally::default() };
        let wi = frag.index_of(w).expect("in");
        if !functional.eval(s, &[wi]).designated() {
            t.truth_fail += 1;
            t.violation(|| format!("{}: not functional at w = {}", op.name, u.literal(w)));
        }
        let z = (op.apply)(u, w);
        if !frag.index_of(z).is_some_and(|zi| witness.eval(s, &[wi, zi]).designated()) {
            t.truth_fail += 1;
            t.violation(|| format!("{}: the value at w = {} is not the witness", op.name, u.literal(w)));
        }
        t
    });
    t = t.merge(sum(rows));

    let bi = Biimp::new(&frag, &sig, "y in r", "exists w. (w in x & F(w, y))", &["r", "x"]);
    let jobs: Vec<(SetId, SetId)> = inputs.iter().copied().zip(images).collect();
    let rows = par::map(&jobs, |&(x, r)| {
        let at = |id| frag.index_of(id).expect("in");
        bi.check(&frag, &[at(r), at(x)], || format!("{}: x = {}", op.name, u.literal(x)))
    });
    (frag.len(), t.merge(sum(rows)))
}

/// The subset and equality laws over all pairs of `W_level`, each checked
/// against the extensions directly and as an object-level biconditional on
/// the classical extensions.
pub fn verify_extension_laws(u: &Universe, level: u32) -> Result<Vec<LawReport>, super::LevelError> {
    let inputs = u.enumerate_level(level)?;
    let sig = Signature::membership().with_relation("S", 2);
    let mut frag = fragment_with(u, &inputs);
    let sub = frag.compile(&formula("forall z. (z in x => z in y)", &sig), &["x", "y"]).expect("compiles");
    let base = frag.structure().clone();
    let n = frag.len();
    let table = par::range_map((n * n) as u64, |i| sub.eval(&base, &[i as usize % n, i as usize / n]));
    frag.add_relation("S", 2, |t| table[t[0] + t[1] * n]);

    let ext = |x: SetId| (u.get(x), u.bang_ext(x), u.quest_ext(x));
    let incl = |a: &[SetId], b: &[SetId]| a.iter().all(|m| b.contains(m));
    type Meta = fn(&[SetId], &[SetId], &[SetId], &[SetId], &dyn Fn(&[SetId], &[SetId]) -> bool) -> bool;
    // (object-level law, formula whose value is compared, meta condition)
    let laws: [(&str, &str, Meta); 6] = [
        ("S(x, y) <-> S(xb, yb) & S(xq, yq)", "S(x, y)", |xp, xq, yp, yq, i| i(xp, yp) && i(xq, yq)),
        ("~S(x, y) <-> ~S(xb, yq)", "~S(x, y)", |xp, _, _, yq, i| !i(xp, yq)),
        ("?S(x, y) <-> S(xb, yq)", "?S(x, y)", |xp, _, _, yq, i| i(xp, yq)),
        ("x = y <-> xb = yb & xq = yq", "x = y", |xp, xq, yp, yq, _| xp == yp && xq == yq),
        ("~(x = y) <-> ~S(xb, yq) | ~S(yb, xq)", "~(x = y)", |xp, xq, yp, yq, i| !i(xp, yq) || !i(yp, xq)),
        ("?(x = y) <-> S(xb, yq) & S(yb, xq)", "?(x = y)", |xp, xq, yp, yq, i| i(xp, yq) && i(yp, xq)),
    ];
    let params = ["x", "y", "xb", "yb", "xq", "yq"];
    let mut reports = Vec::new();
    for (law, lhs, meta) in laws {
        let object = frag.compile(&formula(law, &sig), &params).expect("compiles");
        let value = frag.compile(&formula(lhs, &sig), &params).expect("compiles");
        let s = frag.structure();
        let rows = par::map(&inputs, |&x| {
            let (xn, xb, xq) = ext(x);
            let mut r = (0u64, 0u64, None);
            for &y in &inputs {
                let (yn, yb, yq) = ext(y);
                let at = |id| frag.index_of(id).expect("extensions of W_3 sets are in W_3");
                let args = [at(x), at(y), at(xb), at(yb), at(xq), at(yq)];
                let expect = meta(&xn.pos, &xn.quest, &yn.pos, &yn.quest, &incl);
                let ok = value.eval(s, &args).designated() == expect && object.eval(s, &args).designated();
                r.0 += 2;
                if !ok {
                    r.1 += 1;
                    r.2.get_or_insert_with(|| format!("x = {}, y = {}", u.literal(x), u.literal(y)));
                }
            }
            r
        });
        let mut rep = LawReport { law: law.replace('S', "sub"), checks: 0, failures: 0, first_failure: None };
        for (c, f, e) in rows {
            rep.checks += c;
            rep.failures += f;
            if rep.first_failure.is_none() {
                rep.first_failure = e;
            }
        }
        reports.push(rep);
    }

    // the formula and the direct computation of subset agree on both components
    let rows = par::map(&inputs, |&x| {
        let xi = frag.index_of(x).expect("in");
        let mut r = (0u64, 0u64, None);
        for &y in &inputs {
            r.0 += 1;
            if table[xi + frag.index_of(y).expect("in") * n] != u.subset_value(x, y) {
                r.1 += 1;
                r.2.get_or_insert_with(|| format!("x = {}, y = {}", u.literal(x), u.literal(y)));
            }
        }
        r
    });
    reports.push(collect("subset_value(x, y) = [[forall z. (z in x => z in y)]]", rows));
    Ok(reports)
}

fn collect(law: &str, rows: Vec<(u64, u64, Option<String>)>) -> LawReport {
    let mut rep = LawReport { law: law.to_string(), checks: 0, failures: 0, first_failure: None };
    for (c, f, e) in rows {
        rep.checks += c;
        rep.failures += f;
        if rep.first_failure.is_none() {
            rep.first_failure = e;
        }
    }
    rep
}

/// Structural properties of the finite levels.
pub fn verify_structure_laws(u: &Universe) -> Vec<LawReport> {
    let w2 = u.enumerate_level(2).expect("W_2");
    let w3 = u.enumerate_level(3).expect("W_3");
    let frag = Fragment::new(u, w3.clone()).expect("W_3 is member-closed");
    let mut out = Vec::new();

    let rows = par::map(&w3, |&x| {
        let mut r = (0u64, 0u64, None);
        for &y in &w3 {
            r.0 += 1;
            if u.eq_false(x, y) != u.eq_false(y, x) {
                r.1 += 1;
                r.2.get_or_insert_with(|| format!("x = {}, y = {}", u.literal(x), u.literal(y)));
            }
        }
        r
    });
    out.push(collect("eq_false is symmetric on W_3", rows));

    let both = w3.iter().filter(|&&x| u.eq_true(x, x) && u.eq_false(x, x)).count() as u64;
    out.push(LawReport {
        law: "some x in W_3 has x = x and x != x".into(),
        checks: 1,
        failures: u64::from(both == 0),
        first_failure: None,
    });
    let inconsistent_ok = w3.iter().all(|&x| u.is_consistent(x) || u.eq_value(x, x) == TruthValue::BOTH);
    out.push(LawReport {
        law: "every inconsistent x in W_3 has x = x and x != x".into(),
        checks: w3.len() as u64,
        failures: u64::from(!inconsistent_ok),
        first_failure: None,
    });

    let rows = par::map(&w3, |&x| {
        let (b, q, r) = (u.bang_ext(x), u.quest_ext(x), u.realm(x));
        let ok = u.is_classical(b)
            && u.is_classical(q)
            && u.is_classical(r)
            && u.bang_ext(b) == b
            && u.quest_ext(b) == b
            && (u.is_classical(x) == (b == q))
            && (!u.is_classical(x) || b == x);
        (1, u64::from(!ok), (!ok).then(|| u.literal(x)))
    });
    out.push(collect("extensions and realm are classical; (x!)! = (x!)? = x!", rows));

    let rows = par::map(&w3, |&x| {
        let n = u.get(x);
        let ok = n.rank < 3 && n.pos.iter().chain(&n.quest).all(|&m| u.rank(m) < n.rank);
        (1, u64::from(!ok), (!ok).then(|| u.literal(x)))
    });
    out.push(collect("members have smaller rank; W_3 ranks are below 3", rows));

    // pruning a level member stays in the level
    let in_w3: std::collections::HashSet<SetId> = w3.iter().copied().collect();
    let rows = par::map(&w3, |&x| {
        let n = u.get(x);
        let mut r = (0u64, 0u64, None);
        for pm in 0u32..1 << n.pos.len() {
            for qm in 0u32..1 << n.quest.len() {
                let pick = |v: &[SetId], m: u32| v.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &s)| s).collect();
                let y = u.intern(pick(&n.pos, pm), pick(&n.quest, qm));
                r.0 += 1;
                if !in_w3.contains(&y) {
                    r.1 += 1;
                    r.2.get_or_insert_with(|| u.literal(x));
                }
            }
        }
        r
    });
    out.push(collect("pruning either extension of a W_3 member stays in W_3", rows));

    // comprehension over classical inputs with classical formulas is classical
    let sig = Signature::membership();
    let classical_phis = ["!(y in y)", "?(exists w. w in y)", "o (y in y)", "not (y = y)", "!(y in p) | ?(p in y)"];
    let classical: Vec<SetId> = w3.iter().copied().filter(|&x| u.is_classical(x)).collect();
    let phis: Vec<Formula> = classical_phis.iter().map(|t| formula(t, &sig)).collect();
    let rows = par::map(&classical, |&x| {
        let mut r = (0u64, 0u64, None);
        for (k, phi) in phis.iter().enumerate() {
            for &p in &w2 {
                let c = frag.comprehend(u, x, "y", phi, &[("p", p)]).expect("comprehension");
                r.0 += 1;
                if !u.is_classical(c) {
                    r.1 += 1;
                    r.2.get_or_insert_with(|| format!("u = {}, phi = {}", u.literal(x), classical_phis[k]));
                }
            }
        }
        r
    });
    out.push(collect("classical comprehension over classical sets is classical", rows));

    // sets of every rank up to 4 are not-falsely subsets of each W_2 set
    let mut chain = vec![u.empty()];
    for _ in 0..3 {
        let last = *chain.last().expect("nonempty");
        chain.push(u.classical_singleton(last));
    }
    let mut r = (0u64, 0u64, None);
    for &base in &w2 {
        for (n, &e) in chain.iter().enumerate() {
            let x = u.intern(Vec::new(), vec![e]);
            r.0 += 1;
            if u.rank(x) != n as u32 + 1 || u.subset_value(x, base).is_false {
                r.1 += 1;
                r.2.get_or_insert_with(|| format!("rank {}, u = {}", n + 1, u.literal(base)));
            }
        }
    }
    out.push(collect("{y : y sub u} meets ranks 1..4 for each u in W_2", vec![r]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_names_parse() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert_eq!("power-set".parse::<Axiom>().unwrap(), Axiom::PowerSet);
        assert!(matches!("Choice".parse::<Axiom>(), Err(AxiomError::Unknown(_))));
    }

    #[test]
    fn small_levels_pass() {
        let u = Universe::new();
        for a in Axiom::ALL {
            let r = verify_axiom(&u, a, Some(2)).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.instances > 0);
        }
        assert!(matches!(verify_axiom(&u, Axiom::PowerSet, Some(3)), Err(AxiomError::Level { .. })));
    }

    #[test]
    fn pairing_counts() {
        let u = Universe::new();
        let r = verify_axiom(&u, Axiom::Pairing, None).unwrap();
        assert_eq!(r.instances, 16);
        assert_eq!(r.checks, 16 * 256);
        assert!(r.passed());
    }

    #[test]
    fn replacement_image_of_quest_extensions() {
        let u = Universe::new();
        for x in u.enumerate_level(3).unwrap() {
            let img = image(&u, &OPERATIONS[0], x);
            if u.is_classical(x) {
                let expect: Vec<SetId> = u.get(x).pos.iter().map(|&w| u.quest_ext(w)).collect();
                assert_eq!(img, u.classical_enum_set(&expect));
            }
        }
    }

    #[test]
    fn broken_union_is_caught() {
        // swapping the extensions of the witness must fail a clause
        let u = Universe::new();
        let sig = Signature::membership();
        let inputs = u.enumerate_level(3).unwrap();
        let frag = fragment_with(&u, &[]);
        let bi = Biimp::new(&frag, &sig, "y in x", "exists z. (y in z & z in a)", &["x", "a"]);
        let mut failures = 0;
        for &a in &inputs {
            let good = u.union_set(a);
            let n = u.get(good);
            let bad = u.intern(n.quest.clone(), n.pos.clone());
            let t = bi.check(&frag, &[frag.index_of(bad).unwrap(), frag.index_of(a).unwrap()], String::new);
            failures += t.truth_fail + t.false_fail;
        }
        assert!(failures > 0);
    }
}
