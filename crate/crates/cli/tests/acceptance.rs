//! Acceptance criteria 1 to 11, one line each. Criteria 1 to 10 run in
//! process against their time limits; criterion 11 runs `nclogic verify-all`
//! twice and compares the reports byte for byte.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nclogic::battery::{run_criterion, CRITERIA};
use nclogic::semantics::DEFAULT_BUDGET;

const SEED: u64 = 0;

/// Wall-clock limit per criterion, in seconds.
const LIMITS: [u64; 11] = [1, 30, 60, 1, 300, 10, 10, 60, 300, 30, 900];

fn line(id: u8, name: &str, ok: bool, elapsed: Duration, summary: &str) -> bool {
    let limit = LIMITS[id as usize - 1];
    let in_time = elapsed.as_secs_f64() < limit as f64;
    let mark = if ok && in_time { "PASS" } else { "FAIL" };
    let late = if in_time { String::new() } else { format!(" (over the {limit} s limit)") };
    println!("{mark} criterion {id:>2} {name}: {summary} [{:.2} s]{late}", elapsed.as_secs_f64());
    ok && in_time
}

fn verify_all_json() -> (Option<i32>, Vec<u8>, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_nclogic"))
        .args(["verify-all", "--format", "json", "--seed", &SEED.to_string()])
        .env_remove("NCLOGIC_BUDGET")
        .output()
        .expect("nclogic binary runs");
    (out.status.code(), out.stdout, start.elapsed())
}

fn main() -> ExitCode {
    let mut all = true;
    for &(id, name) in &CRITERIA {
        let start = Instant::now();
        let r = run_criterion(id, SEED, DEFAULT_BUDGET).expect("known criterion");
        all &= line(id, name, r.passed, start.elapsed(), &r.summary);
    }

    let (code_a, a, ta) = verify_all_json();
    let (code_b, b, tb) = verify_all_json();
    let parsed: Option<serde_json::Value> = serde_json::from_slice(&a).ok();
    let ten = parsed.as_ref().and_then(|v| v["criteria"].as_array()).map_or(0, Vec::len);
    let ok = code_a == Some(0) && code_b == Some(0) && a == b && ten == 10;
    let summary = format!(
        "exit codes {code_a:?}/{code_b:?}, {ten} criteria reported, reports {} ({} bytes)",
        if a == b { "identical" } else { "differ" },
        a.len()
    );
    all &= line(11, "verify-all", ok, ta.max(tb), &summary);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
