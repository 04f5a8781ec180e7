use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use vida_streamer::{run_bench, Engine, Hub, DEFAULT_BENCH_SCRIPT};

use crate::BenchArgs;

pub fn run(args: &BenchArgs) -> anyhow::Result<ExitCode> {
    crate::init_logging("warn");
    let mut cfg = args.common.engine_config()?;
    cfg.max_sessions = cfg.max_sessions.max(args.sessions as usize);
    let engine = Arc::new(Engine::load(cfg, args.common.assets_dir())?);
    let hub = Hub::new(engine);
    let script: Vec<String> = DEFAULT_BENCH_SCRIPT.iter().map(|s| s.to_string()).collect();
    let report = run_bench(
        &hub,
        args.sessions as usize,
        Duration::from_secs_f64(args.seconds),
        &script,
    )?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
