use clap::{Parser, Subcommand};
use hunl_core::agent::{parse_decision, validate_and_ground, LlmClient, LlmError, ParseError};
use hunl_core::game::Position;
use hunl_core::skills::{load_library, SkillLibrary};
use hunl_core::viable::{OptionOrder, ViableConfig};
use hunl_harness::history::read_history_partial;
use hunl_harness::{advise, build_agent, load_llm_config, play_match, verify_record, AdviseInput, AgentSpec, ConfigError, MatchConfig, MatchStats};
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "hunl", version, about = "Heads-up no-limit hold'em agent harness")]
struct Cli {
    /// Skill library directory; the bundled library when omitted.
    #[arg(long, global = true)]
    library: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play a seeded match and write JSONL hand histories.
    Match {
        #[arg(long, default_value_t = 1000)]
        hands: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Play every deal twice with the cards swapped between seats.
        #[arg(long)]
        duplicate: bool,
        #[arg(long, default_value = "rule")]
        agent_a: AgentSpec,
        #[arg(long, default_value = "rule")]
        agent_b: AgentSpec,
        /// History file; stdout when omitted (stats then go to stderr).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Offer aggressive options first.
        #[arg(long)]
        aggressive_first: bool,
        /// Store rendered prompts in the history.
        #[arg(long)]
        keep_prompts: bool,
    },
    /// Verify a history file and print its statistics.
    Replay { file: PathBuf },
    /// Analyse one decision point.
    Advise {
        #[arg(long)]
        hole: String,
        #[arg(long, default_value = "")]
        board: String,
        /// Compact history, e.g. "r2.75 r9 c / b5 c".
        #[arg(long, default_value = "")]
        history: String,
        /// Hero seat: btn or bb.
        #[arg(long, default_value = "bb", value_parser = parse_position)]
        hero: Position,
        /// Starting stacks in BB, hero then villain.
        #[arg(long, default_value = "200,200", value_parser = parse_stacks)]
        stacks: [f64; 2],
        #[arg(long)]
        json: bool,
        /// Also ask the model described by this client config.
        #[arg(long)]
        llm: Option<PathBuf>,
    },
    /// Load and validate a skill library directory.
    LintLibrary { dir: PathBuf },
}

fn parse_position(s: &str) -> Result<Position, String> {
    match s.to_ascii_lowercase().as_str() {
        "btn" | "button" | "sb" => Ok(Position::Button),
        "bb" | "bigblind" => Ok(Position::BigBlind),
        _ => Err(format!("expected btn or bb, got `{s}`")),
    }
}

fn parse_stacks(s: &str) -> Result<[f64; 2], String> {
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"))).collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a] => Ok([*a, *a]),
        [a, b] => Ok([*a, *b]),
        _ => Err("expected one or two stack sizes".into()),
    }
}

enum Failure {
    Usage(String),
    Data(String),
    Network(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Client(e) => Failure::Network(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn library(dir: &Option<PathBuf>) -> Result<SkillLibrary, Failure> {
    match dir {
        Some(d) => load_library(d).map_err(|e| Failure::Data(format!("skill library {}: {e}", d.display()))),
        None => Ok(SkillLibrary::bundled()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Match { hands, seed, duplicate, agent_a, agent_b, out, workers, aggressive_first, keep_prompts } => {
            let lib = Arc::new(library(&cli.library)?);
            let order = if aggressive_first { OptionOrder::AggressiveFirst } else { OptionOrder::ConservativeFirst };
            let mut agents = [build_agent(&agent_a, lib.clone())?, build_agent(&agent_b, lib)?];
            for a in &mut agents {
                a.viable_cfg = ViableConfig { order };
                a.keep_prompts = keep_prompts;
            }
            let cfg = MatchConfig { hands, seed, duplicate, workers };
            let stats = match &out {
                Some(path) => {
                    let f = File::create(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
                    let mut w = BufWriter::new(f);
                    play_match(&cfg, [&agents[0], &agents[1]], &mut w)
                }
                None => play_match(&cfg, [&agents[0], &agents[1]], &mut io::stdout().lock()),
            }
            .map_err(|e| match e {
                hunl_harness::MatchError::NoHands | hunl_harness::MatchError::OddDuplicate(_) => Failure::Usage(e.to_string()),
                other => Failure::Data(other.to_string()),
            })?;
            let json = serde_json::to_string_pretty(&stats).unwrap_or_default();
            if out.is_some() {
                println!("{json}");
                eprint!("{}", stats.summary());
            } else {
                eprintln!("{json}");
                eprint!("{}", stats.summary());
            }
            Ok(())
        }
        Cmd::Replay { file } => {
            let lib = library(&cli.library)?;
            let f = File::open(&file).map_err(|e| Failure::Data(format!("{}: {e}", file.display())))?;
            let (records, err) = read_history_partial(BufReader::new(f));
            let mut bad = 0usize;
            let mut stale = 0usize;
            for r in &records {
                if r.library_hash != lib.hash() {
                    stale += 1;
                }
                if let Err(e) = verify_record(r) {
                    bad += 1;
                    eprintln!("error: {e}");
                }
            }
            if stale > 0 {
                eprintln!("warning: {stale} record(s) were played with a different skill library (hash differs from {})", lib.hash());
            }
            print!("{}", MatchStats::from_records(&records).summary());
            println!("{} records replayed, {} failed", records.len(), bad);
            if let Some(e) = err {
                return Err(Failure::Data(format!("{}: {e} ({} earlier records are intact)", file.display(), records.len())));
            }
            if bad > 0 {
                return Err(Failure::Data(format!("{bad} record(s) failed to replay")));
            }
            Ok(())
        }
        Cmd::Advise { hole, board, history, hero, stacks, json, llm } => {
            let lib = library(&cli.library)?;
            let input = AdviseInput { hole, board, history, hero, stacks };
            let (st, report) = advise(&input, &lib, &ViableConfig::default()).map_err(|e| Failure::Data(e.to_string()))?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap_or_default());
            } else {
                print!("{}", report.render());
            }
            if let Some(path) = llm {
                let client = LlmClient::new(load_llm_config(&path)?).map_err(|e| Failure::Network(e.to_string()))?;
                let raw = client.complete(&report.prompt, &Default::default()).map_err(|e: LlmError| Failure::Network(e.to_string()))?;
                let legal = st.legal_actions().map_err(|e| Failure::Data(e.to_string()))?;
                let parsed: Result<_, ParseError> = parse_decision(&raw);
                let g = validate_and_ground(parsed, Some(&raw), &legal, &report.viable);
                println!("Model reply: {raw}");
                println!("Grounded: {} ({:?}{})", g.action, g.source, g.fallback_reason.map(|r| format!(": {r}")).unwrap_or_default());
            }
            Ok(())
        }
        Cmd::LintLibrary { dir } => {
            let lib = load_library(&dir).map_err(|e| Failure::Data(e.to_string()))?;
            println!("{}: ok, {} fragments, hash {}", dir.display(), lib.fragments().len(), lib.hash());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => {
            let _ = io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (1, m),
                Failure::Data(m) => (2, m),
                Failure::Network(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
