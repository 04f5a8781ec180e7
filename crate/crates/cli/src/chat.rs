use std::io::{BufRead, IsTerminal, Write};
use std::process::ExitCode;

use anyhow::Context;
use vida_dialog::{DialogEngine, DialogState};

use crate::CommonArgs;

pub fn run(args: &CommonArgs) -> anyhow::Result<ExitCode> {
    let cfg = args.engine_config()?;
    let engine = DialogEngine::load(&cfg.assets.resolve(args.assets_dir())).context("loading dialog assets")?;
    let stdin = std::io::stdin();
    let interactive = stdin.is_terminal();
    chat(&engine, stdin.lock(), std::io::stdout().lock(), interactive)?;
    Ok(ExitCode::SUCCESS)
}

/// Reads user lines until EOF or `:quit`. `:state` prints the dialog state
/// as JSON.
pub fn chat(engine: &DialogEngine, input: impl BufRead, mut out: impl Write, prompt: bool) -> anyhow::Result<()> {
    let mut state = DialogState::new(0);
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let line = line.trim();
        match line {
            "" => continue,
            ":quit" => break,
            ":state" => writeln!(out, "{}", serde_json::to_string(&state)?)?,
            text => {
                let turn = engine.converse(&state, text)?;
                writeln!(out, "{}", turn.reply)?;
                state = turn.state;
            }
        }
    }
    Ok(())
}
