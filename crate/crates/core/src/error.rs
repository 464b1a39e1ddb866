use thiserror::Error;

use crate::complex::{FaceId, VertexId};
use crate::word::{ParseError, SparseFailure};

#[derive(Debug, Error)]
pub enum Error {
    #[error("relator is not sparse: {0}")]
    NotSparse(SparseFailure),
    #[error("invalid cyclic subword: {0}")]
    InvalidSubword(String),
    #[error("vertex {0} is already the start vertex of a face")]
    AlreadySaturated(VertexId),
    #[error("no vertex {0}")]
    UnknownVertex(VertexId),
    #[error("no face {0}")]
    UnknownFace(FaceId),
    #[error("face cap of {cap} reached")]
    ResourceLimit { cap: usize },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("vertex distances are not certified exact")]
    StaleDistances,
    #[error("class table is incomplete")]
    IncompleteTable,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed document: {0}")]
    Import(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
