use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DialogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Row { path: PathBuf, line: usize, reason: String },
    #[error("templates: {0}")]
    TemplateSyntax(String),
    #[error("no template for {skill}.{act}")]
    MissingTemplate { skill: String, act: String },
    #[error("template placeholder {{{slot}}} has no binding")]
    UnresolvedPlaceholder { slot: String },
    #[error("empty user turn")]
    EmptyInput,
}

pub(crate) fn read(path: &std::path::Path) -> Result<String, DialogError> {
    std::fs::read_to_string(path).map_err(|source| DialogError::Io {
        path: path.to_path_buf(),
        source,
    })
}
