use std::path::PathBuf;

use thiserror::Error;

use crate::formula::Path;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("path {path} is invalid at step {depth}")]
    InvalidPath { path: Path, depth: usize },
    #[error("no binding for metavariable {0}")]
    MissingBinding(char),
    #[error("metavariable {0} is not declared by the schema")]
    UndeclaredMetavar(char),
    #[error("`{0}` is not a metavariable name")]
    BadMetavarName(String),
    #[error("propositional variable `{0}` has no valuation")]
    UnboundVariable(String),
    #[error("unexpected metavariable {0} in a ground formula")]
    UnexpectedMetavar(char),
    #[error("{atoms} modal atoms exceed the limit of {limit}")]
    AtomLimit { atoms: usize, limit: usize },
    #[error("frame: {0}")]
    Frame(String),
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("{file}: {msg}")]
    File { file: PathBuf, msg: String },
    #[error("search: {0}")]
    Search(String),
    #[error("kernel: {0}")]
    Kernel(String),
    #[error("registry: {0}")]
    Registry(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
