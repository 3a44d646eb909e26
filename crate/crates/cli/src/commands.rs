use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use nclogic::battery::{run_criterion, FullReport, CRITERIA};
use nclogic::formula::{desugar, free_vars, parse, parse_open, Formula, Signature};
use nclogic::hilbert::{check_proof, soundness_harness, ProofFile};
use nclogic::interp::{verify_check_iso, verify_hat_iso, verify_hclw_equals_vcheck, verify_w_relativized_to_hcl, IsoReport};
use nclogic::semantics::{consequence_bounded, eval, truth_table, Connective, TFModel, Verdict};
use nclogic::tarski::{
    classify_validity, from_tf, roundtrip_report, separation_matrix, sweep, tarski_value, to_tf, FVTarskiModel,
    ModelClass,
};
use nclogic::universe::{
    acla_construct, omega_name, omega_set, standard_witnesses, tiny_classical_sets, verify_acla_pairs,
    verify_all_axioms, verify_axiom, verify_extension_laws, verify_omega, verify_structure_laws, w2_classical_sets,
    Axiom, LawReport, SetId, Universe,
};

use crate::{Cli, Command, EmbedCmd, Format, Global, TarskiCmd, UniverseCmd};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn new(g: &Global, passed: bool, value: &impl Serialize, text: impl FnOnce() -> String) -> Result<Output> {
        let text = match g.format {
            Format::Json => serde_json::to_string_pretty(value)? + "\n",
            Format::Text => text(),
        };
        Ok(Output { text, passed })
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { formula, desugar: sugar } => cmd_parse(g, formula, *sugar),
        Command::Eval { model, formula, assign } => cmd_eval(g, model, formula, assign),
        Command::Table { connective } => cmd_table(g, connective),
        Command::Consequence { conclusion, premises, max_size, constants } => {
            cmd_consequence(g, premises, conclusion, *max_size, constants)
        }
        Command::CheckProof { proof } => cmd_check_proof(g, proof),
        Command::Soundness { trials, max_size } => {
            let r = soundness_harness(*trials, *max_size, g.seed);
            Output::new(g, r.passed(), &r, || {
                let mut s = String::new();
                for st in &r.schemas {
                    let _ = writeln!(s, "schema {:>2}: {} instances, {} failures", st.schema, st.instances, st.failures);
                }
                for st in &r.rules {
                    let _ = writeln!(
                        s,
                        "{}: {} derivations, {} applicable, {} failures",
                        st.rule, st.derivations, st.applicable, st.failures
                    );
                }
                for c in &r.counterexamples {
                    let _ = writeln!(s, "counterexample ({}): {}", c.what, c.formula);
                }
                s + if r.passed() { "sound on all samples\n" } else { "FAILED\n" }
            })
        }
        Command::Universe(c) => cmd_universe(g, c),
        Command::Embed(c) => cmd_embed(g, c),
        Command::Tarski(c) => cmd_tarski(g, c),
        Command::VerifyAll { only } => cmd_verify_all(g, only),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn assignment(pairs: &[String]) -> Result<BTreeMap<String, String>> {
    pairs
        .iter()
        .map(|p| {
            let (x, a) = p.split_once('=').ok_or_else(|| anyhow!("assignment `{p}` is not of the form x=element"))?;
            Ok((x.trim().to_string(), a.trim().to_string()))
        })
        .collect()
}

fn cmd_parse(g: &Global, text: &str, sugar: bool) -> Result<Output> {
    let (f, sig) = parse_open(text)?;
    let d = sugar.then(|| desugar(&f));
    let value = json!({
        "formula": f.to_string(),
        "desugared": d.as_ref().map(Formula::to_string),
        "free_vars": free_vars(&f),
        "signature": sig,
        "depth": f.depth(),
    });
    Output::new(g, true, &value, || match &d {
        Some(d) => format!("{f}\n{d}\n"),
        None => format!("{f}\n"),
    })
}

fn cmd_eval(g: &Global, path: &Path, text: &str, assign: &[String]) -> Result<Output> {
    let m: TFModel = read_json(path)?;
    m.validate()?;
    let phi = parse(text, &m.signature())?;
    let v = eval(&m, &phi, &assignment(assign)?)?;
    Output::new(g, true, &json!({ "formula": phi.to_string(), "value": v }), || format!("{v}\n"))
}

fn cmd_table(g: &Global, name: &str) -> Result<Output> {
    let c = Connective::from_name(name)?;
    let t = truth_table(c);
    Output::new(g, true, &t, || t.to_string())
}

fn cmd_consequence(g: &Global, premises: &[String], conclusion: &str, max_size: usize, constants: &[String]) -> Result<Output> {
    let mut sig = constants.iter().fold(Signature::new(), |s, c| s.with_constant(c));
    for text in premises.iter().map(String::as_str).chain([conclusion]) {
        let (_, s) = parse_open(text)?;
        let rels = Signature { relations: s.relations, constants: Default::default() };
        sig = sig.merge(&rels).map_err(|e| anyhow!(e))?;
    }
    sig.validate().map_err(|e| anyhow!(e))?;
    let prem = premises.iter().map(|p| parse(p, &sig)).collect::<Result<Vec<_>, _>>()?;
    let concl = parse(conclusion, &sig)?;
    let v = consequence_bounded(&prem, &concl, max_size, &sig, g.budget)?;
    Output::new(g, v.holds(), &v, || match &v {
        Verdict::NoCountermodelUpToBound { max_size, models_checked } => {
            format!("holds: no countermodel with at most {max_size} elements ({models_checked} models)\n")
        }
        Verdict::Countermodel { model } => {
            format!("countermodel: {}\n", serde_json::to_string(model).unwrap_or_default())
        }
    })
}

fn cmd_check_proof(g: &Global, path: &Path) -> Result<Output> {
    let file: ProofFile = read_json(path)?;
    let proof = file.to_proof()?;
    let r = check_proof(&proof);
    Output::new(g, r.accepted, &r, || match &r.error {
        None => format!("accepted: {} lines, proves {}\n", r.lines_checked, r.conclusion.as_deref().unwrap_or("")),
        Some(e) => format!("rejected at line {}: {}\n", e.line, e.reason),
    })
}

fn law_lines(reports: &[LawReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let mark = if r.passed() { "ok  " } else { "FAIL" };
        let _ = writeln!(s, "{mark} {} ({} checks, {} failures)", r.law, r.checks, r.failures);
        if let Some(f) = &r.first_failure {
            let _ = writeln!(s, "     first failure: {f}");
        }
    }
    s
}

fn set_arg(u: &Universe, text: &str) -> Result<SetId> {
    u.parse_literal(text).map_err(|e| anyhow!("{text}: {e}"))
}

fn cmd_universe(g: &Global, c: &UniverseCmd) -> Result<Output> {
    let u = Universe::new();
    match c {
        UniverseCmd::Level { n, count } => {
            let sets = u.enumerate_level(*n)?;
            let lits: Vec<String> = sets.iter().map(|&s| u.literal(s)).collect();
            let value = if *count {
                json!({ "level": n, "count": sets.len() })
            } else {
                json!({ "level": n, "count": sets.len(), "sets": lits })
            };
            Output::new(g, true, &value, || if *count { format!("{}\n", sets.len()) } else { lits.join("\n") + "\n" })
        }
        UniverseCmd::Inspect { set } => {
            let x = set_arg(&u, set)?;
            let value = json!({
                "set": u.literal(x),
                "rank": u.rank(x),
                "classical": u.is_classical(x),
                "consistent": u.is_consistent(x),
                "complete": u.is_complete(x),
                "bang_extension": u.literal(u.bang_ext(x)),
                "quest_extension": u.literal(u.quest_ext(x)),
                "realm": u.literal(u.realm(x)),
                "truth_value": omega_name(&u, x),
            });
            Output::new(g, true, &value, || {
                let mut s = String::new();
                for (k, v) in value.as_object().into_iter().flatten() {
                    let v = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                    let _ = writeln!(s, "{k:<16} {v}");
                }
                s
            })
        }
        UniverseCmd::Axiom { name, level } => {
            let reports = if name.eq_ignore_ascii_case("all") {
                if level.is_some() {
                    bail!("--level needs a single axiom");
                }
                verify_all_axioms(&u)
            } else {
                vec![verify_axiom(&u, name.parse::<Axiom>()?, *level)?]
            };
            let passed = reports.iter().all(|r| r.passed());
            Output::new(g, passed, &reports, || {
                let mut s = String::new();
                for r in &reports {
                    let mark = if r.passed() { "ok  " } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "{mark} {:<18} inputs W_{} fragment {:>4} instances {:>6} checks {:>9}",
                        r.axiom.name(),
                        r.input_level,
                        r.fragment_size,
                        r.instances,
                        r.checks
                    );
                    for v in &r.violations {
                        let _ = writeln!(s, "     {v}");
                    }
                }
                s
            })
        }
        UniverseCmd::Laws { level } => {
            let mut reports = verify_extension_laws(&u, *level)?;
            reports.extend(verify_structure_laws(&u));
            let passed = reports.iter().all(LawReport::passed);
            Output::new(g, passed, &reports, || law_lines(&reports))
        }
        UniverseCmd::Acla { bang, quest } => match (bang, quest) {
            (Some(a), Some(b)) => {
                let (a, b) = (set_arg(&u, a)?, set_arg(&u, b)?);
                let (wb, wn) = standard_witnesses(&u);
                let x = acla_construct(&u, a, b, wb, wn)?;
                Output::new(g, true, &json!({ "set": u.literal(x) }), || format!("{}\n", u.literal(x)))
            }
            (None, None) => {
                let reports = [
                    verify_acla_pairs(&u, "classical sets over {0, {0}}", &tiny_classical_sets(&u)),
                    verify_acla_pairs(&u, "classical sets over W_2", &w2_classical_sets(&u)),
                ];
                let passed = reports.iter().all(LawReport::passed);
                Output::new(g, passed, &reports, || law_lines(&reports))
            }
            _ => bail!("give both extensions or neither"),
        },
        UniverseCmd::Omega { verify } => {
            let omega = omega_set(&u);
            let members: Vec<(String, String)> = u
                .get(omega)
                .pos
                .iter()
                .map(|&m| (omega_name(&u, m).map_or("?".into(), |v| v.to_string()), u.literal(m)))
                .collect();
            let reports = verify.map(|n| verify_omega(&u, n, g.seed)).unwrap_or_default();
            let passed = reports.iter().all(LawReport::passed);
            let value = json!({
                "omega": u.literal(omega),
                "members": members.iter().map(|(n, l)| json!({ "name": n, "set": l })).collect::<Vec<_>>(),
                "checks": reports,
            });
            Output::new(g, passed, &value, || {
                let mut s = String::new();
                for (n, l) in &members {
                    let _ = writeln!(s, "{n} {l}");
                }
                s + &law_lines(&reports)
            })
        }
    }
}

fn cmd_embed(g: &Global, c: &EmbedCmd) -> Result<Output> {
    let u = Universe::new();
    let r: IsoReport = match c {
        EmbedCmd::Check { level } => verify_check_iso(&u, *level)?,
        EmbedCmd::Hcl { level } => verify_hclw_equals_vcheck(&u, *level)?,
        EmbedCmd::Hat { level } => verify_hat_iso(&u, *level)?,
        EmbedCmd::W { level } => verify_w_relativized_to_hcl(&u, *level)?,
    };
    Output::new(g, r.passed(), &r, || {
        let mark = if r.passed() { "ok  " } else { "FAIL" };
        let mut s = format!("{mark} {} level {}: {} pairs checked", r.check, r.level, r.pairs_checked);
        if !r.sides.is_empty() {
            let sides: Vec<String> = r.sides.iter().map(|[a, b]| format!("{a}={b}")).collect();
            let _ = write!(s, ", sides {}", sides.join(" "));
        }
        s.push('\n');
        for f in &r.failures {
            let _ = writeln!(s, "     {f}");
        }
        s
    })
}

fn tarski_signature(m: &FVTarskiModel) -> Signature {
    let sig = m.relations.iter().fold(Signature::new(), |s, (r, rel)| s.with_relation(r, rel.arity));
    m.constants.keys().fold(sig, |s, c| s.with_constant(c))
}

fn cmd_tarski(g: &Global, c: &TarskiCmd) -> Result<Output> {
    match c {
        TarskiCmd::Value { model, formula, assign } => {
            let m: FVTarskiModel = read_json(model)?;
            m.validate()?;
            let phi = parse(formula, &tarski_signature(&m))?;
            let v = tarski_value(&m, &phi, &assignment(assign)?)?;
            Output::new(g, true, &json!({ "formula": phi.to_string(), "value": v }), || format!("{v}\n"))
        }
        TarskiCmd::ToTf { model } => {
            let m: FVTarskiModel = read_json(model)?;
            let n = to_tf(&m)?;
            Ok(Output { text: serde_json::to_string_pretty(&n)? + "\n", passed: true })
        }
        TarskiCmd::FromTf { model } => {
            let n: TFModel = read_json(model)?;
            let m = from_tf(&n)?;
            Ok(Output { text: serde_json::to_string_pretty(&m)? + "\n", passed: true })
        }
        TarskiCmd::Classify { formula, class, max_size } => {
            let cls: ModelClass = class.parse()?;
            let (_, sig) = parse_open(formula)?;
            let phi = parse(formula, &sig)?;
            let v = classify_validity(&phi, cls, *max_size, &sig, g.budget)?;
            Output::new(g, v.valid(), &v, || {
                if v.valid() {
                    format!("valid on {cls} models with at most {max_size} elements\n")
                } else {
                    format!("refuted on {cls}: {}\n", serde_json::to_value(&v).map(|j| j["model"].to_string()).unwrap_or_default())
                }
            })
        }
        TarskiCmd::Roundtrip { samples, max_size, depth } => {
            let r = roundtrip_report(*max_size, *depth, *samples, g.seed);
            Output::new(g, r.passed(), &r, || {
                format!(
                    "{} samples: {} round-trip failures, {} of {} value checks failed, {} of {} validity checks disagree\n",
                    r.samples,
                    r.tarski_roundtrip_failures + r.tf_roundtrip_failures,
                    r.equivalence_failures,
                    r.equivalence_checks,
                    r.validity_disagreements,
                    r.validity_checks
                )
            })
        }
        TarskiCmd::Sweep { max_size } => {
            let r = sweep(*max_size, g.budget)?;
            Output::new(g, r.passed(), &r, || {
                format!(
                    "{} models x {} formulas: {} evaluations, {} value mismatches, {} round-trip failures, validity agrees on {} of {}\n",
                    r.models,
                    r.formulas,
                    r.evaluations,
                    r.to_tf_equivalence_failures + r.from_tf_equivalence_failures,
                    r.tarski_roundtrip_failures + r.tf_roundtrip_failures,
                    r.validity_agreements,
                    r.formulas
                )
            })
        }
        TarskiCmd::Separation { max_size } => {
            let entries = separation_matrix(*max_size, g.budget)?;
            let passed = entries.iter().all(|e| e.passed());
            Output::new(g, passed, &entries, || {
                let mut s = String::new();
                for e in &entries {
                    let mark = if e.passed() { "ok  " } else { "FAIL" };
                    let verdict = if e.valid { "valid" } else { "refuted" };
                    let _ = writeln!(s, "{mark} {:<22} {:<15} {verdict}", e.formula, e.class.name());
                }
                s
            })
        }
    }
}

fn cmd_verify_all(g: &Global, only: &[u8]) -> Result<Output> {
    if let Some(bad) = only.iter().find(|&&i| !(1..=10).contains(&i)) {
        bail!("no criterion {bad} (criteria are 1 to 10)");
    }
    let criteria: Vec<_> = CRITERIA
        .iter()
        .filter(|(id, _)| only.is_empty() || only.contains(id))
        .map(|&(id, _)| run_criterion(id, g.seed, g.budget).expect("known id"))
        .collect();
    let report = FullReport { seed: g.seed, budget: g.budget, passed: criteria.iter().all(|c| c.passed), criteria };
    Output::new(g, report.passed, &report, || {
        let mut s = String::new();
        for c in &report.criteria {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{mark} {:>2} {}: {}", c.id, c.name, c.summary);
        }
        let total = report.criteria.len();
        let passed = report.criteria.iter().filter(|c| c.passed).count();
        s + &format!("{passed}/{total} criteria passed\n")
    })
}
