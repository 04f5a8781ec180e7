//! Scripted conversations: `# description`, then alternating `> user` and
//! `< expected reply` lines.

use std::path::Path;

use crate::error::{read, DialogError};
use crate::{DialogEngine, DialogState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub description: String,
    pub turns: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub turn: usize,
    pub user: String,
    pub expected: String,
    pub actual: String,
}

pub fn parse_script(text: &str, path: &Path) -> Result<Script, DialogError> {
    let mut description = String::new();
    let mut turns: Vec<(String, String)> = Vec::new();
    let mut pending: Option<String> = None;
    let err = |line: usize, reason: &str| DialogError::Row {
        path: path.to_path_buf(),
        line,
        reason: reason.to_string(),
    };
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if let Some(d) = line.strip_prefix('#') {
            if description.is_empty() {
                description = d.trim().to_string();
            }
        } else if let Some(u) = line.strip_prefix("> ") {
            if pending.replace(u.to_string()).is_some() {
                return Err(err(line_no, "user line without an expected reply"));
            }
        } else if let Some(r) = line.strip_prefix("< ") {
            let user = pending
                .take()
                .ok_or_else(|| err(line_no, "reply without a user line"))?;
            turns.push((user, r.to_string()));
        } else if !line.trim().is_empty() {
            return Err(err(line_no, "expected `#`, `> ` or `< `"));
        }
    }
    if pending.is_some() {
        return Err(err(text.lines().count(), "user line without an expected reply"));
    }
    Ok(Script { description, turns })
}

pub fn load_script(path: &Path) -> Result<Script, DialogError> {
    parse_script(&read(path)?, path)
}

/// Plays the script in a fresh session and returns every reply that differs.
pub fn run_script(engine: &DialogEngine, script: &Script) -> Result<Vec<Mismatch>, DialogError> {
    let mut state = DialogState::new(0);
    let mut out = Vec::new();
    for (turn, (user, expected)) in script.turns.iter().enumerate() {
        let t = engine.converse(&state, user)?;
        if t.reply != *expected {
            out.push(Mismatch {
                turn: turn + 1,
                user: user.clone(),
                expected: expected.clone(),
                actual: t.reply.clone(),
            });
        }
        state = t.state;
    }
    Ok(out)
}
