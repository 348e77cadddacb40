//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use hunl_core::agent::{ActionSource, Agent, Conversation, LlmClient, LlmClientConfig, LlmPolicy};
use hunl_core::budget::{check_gate, raise_gate, BudgetValue};
use hunl_core::context::PressureTable;
use hunl_core::skills::{bundled_dir, load_library, SkillLibrary};
use hunl_core::units::Milli;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

const EVAL_DEALS: usize = 10_000;
const EVAL_LIMIT: Duration = Duration::from_secs(5);
const TRACE_LIMIT: Duration = Duration::from_secs(1);
const FUZZ_STATES: usize = 1_000;
const FUZZ_PER_STATE: usize = 100;
const MATCH_HANDS: &str = "500";
const MATCH_SEED: &str = "42";
const MATCH_LIMIT: Duration = Duration::from_secs(60);
const PRESSURE_GRID_MAX_PCT: u32 = 2000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    Outcome { pass: ok, detail }
}

fn c1_evaluator() -> Outcome {
    let t = Instant::now();
    let bad = oracles::eval_mismatches(EVAL_DEALS, 20_240_601);
    let dt = t.elapsed();
    let detail = format!("{EVAL_DEALS} deals, {} mismatches, {:.2}s (limit {}s)", bad.len(), dt.as_secs_f64(), EVAL_LIMIT.as_secs());
    verdict(bad.is_empty() && dt < EVAL_LIMIT, detail)
}

fn c2_budgets() -> Outcome {
    let lib = SkillLibrary::bundled();
    let bad = oracles::budget_mismatches(&lib.budgets);
    let n = oracles::BUDGET_CELLS.len() + oracles::BUDGET_ROUTES.len();
    match bad.first() {
        None => pass(format!("{} cells and {} classified spots exact", oracles::BUDGET_CELLS.len(), oracles::BUDGET_ROUTES.len())),
        Some(first) => fail(format!("{}/{n} wrong, first: {first}", bad.len())),
    }
}

fn c3_pressure() -> Outcome {
    let t = PressureTable::default();
    let cap = Milli::from_f64(oracles::PRESSURE_CAP);
    let wrong: Vec<_> = oracles::PRESSURE_PAIRS.iter().filter(|(p, w)| t.weight(*p).ok() != Some(Milli::from_f64(*w))).collect();
    if !wrong.is_empty() {
        return fail(format!("{} of 17 pairs wrong, first {:?}", wrong.len(), wrong[0]));
    }
    let mut prev = Milli::ZERO;
    for i in 0..=PRESSURE_GRID_MAX_PCT * 100 {
        let pct = i as f64 / 100.0;
        let w = t.weight(pct).unwrap();
        if w < prev || w > cap {
            return fail(format!("not monotone or above cap at {pct}%"));
        }
        prev = w;
    }
    verdict(t.cap == cap && prev == cap, format!("17 pairs exact, monotone over 0-{PRESSURE_GRID_MAX_PCT}%, cap {:.2}", t.cap.as_f64()))
}

fn c4_trace() -> Outcome {
    let lib = SkillLibrary::bundled();
    let t = Instant::now();
    let bad = oracles::trace_failures(&lib);
    let dt = t.elapsed();
    match bad.first() {
        None if dt < TRACE_LIMIT => pass(format!("all properties hold, {:.0}ms", dt.as_secs_f64() * 1e3)),
        None => fail(format!("too slow: {dt:?}")),
        Some(_) => fail(bad.join("; ")),
    }
}

fn c5_fuzz() -> Outcome {
    let r = oracles::grounding_fuzz(FUZZ_STATES, FUZZ_PER_STATE, 77);
    let detail = format!("{} responses over {} states, {} invalid, {} problems", r.responses, r.states, r.invalid, r.problems.len());
    let ok = r.problems.is_empty() && r.states == FUZZ_STATES && r.responses == FUZZ_STATES * FUZZ_PER_STATE;
    match r.problems.first() {
        Some(p) if !ok => fail(format!("{detail}; first: {p}")),
        _ => verdict(ok, detail),
    }
}

fn c6_match() -> Outcome {
    let run = || {
        let t = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_hunl"))
            .args(["match", "--hands", MATCH_HANDS, "--seed", MATCH_SEED])
            .output()
            .expect("run hunl");
        (out, t.elapsed())
    };
    let (a, ta) = run();
    let (b, tb) = run();
    if !a.status.success() || !b.status.success() {
        return fail(format!("exit {:?}/{:?}: {}", a.status.code(), b.status.code(), String::from_utf8_lossy(&a.stderr)));
    }
    let lines = a.stdout.iter().filter(|c| **c == b'\n').count();
    let slow = ta.max(tb);
    verdict(
        a.stdout == b.stdout && lines == 500 && slow < MATCH_LIMIT,
        format!("{lines} records, {} bytes, identical: {}, slowest {:.2}s", a.stdout.len(), a.stdout == b.stdout, slow.as_secs_f64()),
    )
}

fn c7_gates() -> Outcome {
    let f = |x: f64| BudgetValue::Finite(Milli::from_f64(x));
    let raise = raise_gate(f(4.0), 1, 2) && !raise_gate(f(3.999), 1, 2);
    let spent = Milli::from_f64(1.35);
    let check = check_gate(f(2.0), spent, 1) && check_gate(f(3.349), spent, 1) && !check_gate(f(3.35), spent, 1);
    verdict(raise && check, format!("raise 4 >= 1+2+1: {raise}; check threshold 3.35: {check}"))
}

/// Minimal chat endpoint answering each request with the next tool call.
fn mock_endpoint(args: Vec<&'static str>) -> (String, std::thread::JoinHandle<usize>) {
    let l = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/v1/chat/completions", l.local_addr().unwrap());
    let h = std::thread::spawn(move || {
        let mut served = 0;
        for a in args {
            let (mut s, _) = l.accept().unwrap();
            let mut r = BufReader::new(s.try_clone().unwrap());
            let mut len = 0usize;
            loop {
                let mut line = String::new();
                r.read_line(&mut line).unwrap();
                if line == "\r\n" || line.is_empty() {
                    break;
                }
                if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                    len = v.trim().parse().unwrap();
                }
            }
            let mut body = vec![0; len];
            r.read_exact(&mut body).unwrap();
            let reply = serde_json::json!({
                "choices": [{"message": {"tool_calls": [{"function": {"name": "submit_action", "arguments": a}}]}}]
            })
            .to_string();
            let resp = format!(
                "HTTP/1.1 200 OK\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{reply}",
                reply.len()
            );
            s.write_all(resp.as_bytes()).unwrap();
            served += 1;
        }
        served
    });
    (url, h)
}

fn c8_mock_llm() -> Outcome {
    let (url, server) = mock_endpoint(oracles::TRACE_REPLIES.to_vec());
    let cfg = LlmClientConfig { endpoint: url, model: "mock".into(), api_key_env: String::new(), retries: 0, ..Default::default() };
    let client = match LlmClient::new(cfg) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let agent = Agent::new(Arc::new(SkillLibrary::bundled()), Arc::new(LlmPolicy { client }));
    let mut convo = Conversation::default();
    let mut played = Vec::new();
    for h in oracles::TRACE_NODES {
        match agent.act(&oracles::trace_state(h), &mut convo) {
            Ok(rec) if rec.grounded.source == ActionSource::Policy => played.push(rec.grounded.action.to_string()),
            Ok(rec) => played.push(format!("fallback {} ({:?})", rec.grounded.action, rec.grounded.fallback_reason)),
            Err(e) => played.push(format!("error {e}")),
        }
    }
    let served = server.join().unwrap_or(0);
    verdict(played == oracles::TRACE_ACTIONS && served == 4, format!("played [{}], {served} requests", played.join(", ")))
}

fn c9_library() -> Outcome {
    if let Err(e) = load_library(bundled_dir()) {
        return fail(format!("bundled library: {e}"));
    }
    let manifest = std::fs::read_to_string(bundled_dir().join("manifest.toml")).unwrap();
    let v: toml::Value = toml::from_str(&manifest).unwrap();
    let p1: Vec<String> = v["files"]["p1"].as_array().unwrap().iter().filter_map(|s| s.as_str().map(String::from)).collect();
    for f in &p1 {
        let tmp = tempfile::tempdir().unwrap();
        copy_dir(&bundled_dir(), tmp.path());
        std::fs::remove_file(tmp.path().join(f)).unwrap();
        if load_library(tmp.path()).is_ok() {
            return fail(format!("loaded without {f}"));
        }
    }
    pass(format!("loads clean; each of {} P1 files is required", p1.len()))
}

fn copy_dir(from: &std::path::Path, to: &std::path::Path) {
    std::fs::create_dir_all(to).unwrap();
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let dst = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &dst);
        } else {
            std::fs::copy(e.path(), dst).unwrap();
        }
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("evaluator vs brute-force oracle", c1_evaluator),
        ("budget table fidelity", c2_budgets),
        ("pressure table", c3_pressure),
        ("golden trace", c4_trace),
        ("grounding fuzz", c5_fuzz),
        ("deterministic match", c6_match),
        ("raise and check gates", c7_gates),
        ("mock LLM plays the trace", c8_mock_llm),
        ("skill library loading", c9_library),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = std::panic::catch_unwind(f).unwrap_or_else(|_| fail("panicked"));
        failed += !o.pass as usize;
        println!("{} {}: {name} -- {} [{:.2}s]", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail, t.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
