//! Operator commands for the vida engine.
//!
//! `serve` runs the streaming server, `chat` exercises the dialog engine in
//! a terminal, `dump` writes one deterministic turn to disk, `roundtrip`
//! checks the speech codec against the lexicon and `bench` measures pacing
//! for several sessions at once.

pub mod bench;
pub mod chat;
pub mod dump;
pub mod roundtrip;
pub mod serve;

use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use vida_core::{config_path_from_env, load_config, EngineConfig, CONFIG_ENV_VAR};

#[derive(Debug, Parser)]
#[command(name = "vida", version, about = "Realtime talking-avatar agent")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Serve WebSocket sessions, /metrics and an optional static client.
    Serve(ServeArgs),
    /// Text conversation in the terminal.
    Chat(CommonArgs),
    /// Run one turn under a virtual clock and write every artifact.
    Dump(DumpArgs),
    /// Check that every unique lexicon word survives synthesis and decoding.
    Roundtrip(RoundtripArgs),
    /// Pace several in-process sessions against the real clock.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Engine configuration. Defaults to $VIDA_CONFIG, then ./vida.toml if
    /// present, then built-in defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory that relative asset paths are resolved against.
    #[arg(long, default_value = "assets")]
    pub assets_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Address to bind, overriding `listen_addr` from the config.
    #[arg(long)]
    pub listen: Option<String>,
    /// Advance each session's clock only as fast as its client reads.
    #[arg(long)]
    pub virtual_clock: bool,
    /// Directory served at `/`.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// User utterance for the turn.
    #[arg(long)]
    pub text: String,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Lexicon file, overriding the configured one.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub sessions: u32,
    #[arg(long, value_parser = parse_seconds)]
    pub seconds: f64,
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number of seconds, got {s:?}")),
    }
}

impl CommonArgs {
    /// An explicit `--config` must exist; the implicit default may be absent.
    pub fn engine_config(&self) -> anyhow::Result<EngineConfig> {
        let (path, explicit) = match &self.config {
            Some(p) => (p.clone(), true),
            None => (config_path_from_env(), std::env::var_os(CONFIG_ENV_VAR).is_some()),
        };
        if !explicit && !path.exists() {
            return Ok(EngineConfig::default());
        }
        load_config(&path).with_context(|| format!("loading config {}", path.display()))
    }

    pub fn assets_dir(&self) -> &Path {
        &self.assets_dir
    }
}

pub fn init_logging(default_filter: &str) {
    let filter = tracing_subscriber::EnvFilter::try_from_default_env()
        .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new(default_filter));
    let _ = tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(std::io::stderr)
        .with_ansi(std::io::stderr().is_terminal())
        .with_target(false)
        .try_init();
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Serve(a) => serve::run(&a),
        Command::Chat(a) => chat::run(&a),
        Command::Dump(a) => dump::run(&a),
        Command::Roundtrip(a) => roundtrip::run(&a),
        Command::Bench(a) => bench::run(&a),
    }
}

/// `a: b: c` for an error and its causes, skipping causes whose text the
/// previous message already contains.
pub fn error_chain(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if out.contains(&msg) {
            continue;
        }
        if !out.is_empty() {
            out.push_str(": ");
        }
        out.push_str(&msg);
    }
    out
}
