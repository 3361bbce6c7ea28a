// SPDX-License-Identifier: Apache-2.0
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {0} is not an internal node")]
    NotInternal(u32),
    #[error("node {0} is dead")]
    DeadNode(u32),
    #[error("replacement depends on root node {0}")]
    ReplacementDependsOnRoot(u32),
    #[error("leaves do not form a cut of node {0}")]
    NotACut(u32),
    #[error("malformed AIGER header: {0}")]
    MalformedHeader(String),
    #[error("malformed AIGER body at line {line}: {msg}")]
    MalformedBody { line: usize, msg: String },
    #[error("AND node {lhs} has fanin literal {fanin} that is not smaller")]
    FaninOrder { lhs: u32, fanin: u32 },
    #[error("truncated AIGER file: {0}")]
    Truncated(String),
    #[error("unsupported AIGER feature: {0}")]
    Unsupported(String),
    #[error("exhaustive simulation needs at most {max} inputs, design has {pis}")]
    TooManyInputs { pis: usize, max: usize },
    #[error("designs differ in interface: {0}")]
    InterfaceMismatch(String),
    #[error("bad recipe: {0}")]
    BadRecipe(String),
    #[error("bad library file: {0}")]
    BadLibrary(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by reading or writing files.
    pub fn is_io(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::MalformedHeader(_)
                | Error::MalformedBody { .. }
                | Error::FaninOrder { .. }
                | Error::Truncated(_)
                | Error::Unsupported(_)
                | Error::Csv(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
