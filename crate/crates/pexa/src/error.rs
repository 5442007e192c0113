use thiserror::Error;

use crate::report::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A table has the wrong shape or refers to an element that does not exist.
    #[error("malformed structure: {0}")]
    Malformed(String),

    /// The tables are well formed but violate an axiom.
    #[error("{what} fails its axioms: {report}")]
    Axioms { what: String, report: AxiomReport },

    #[error("not a submodule: {0}")]
    NotSubmodule(String),

    #[error("not a lattice: {0}")]
    NotLattice(String),

    #[error("not a morphism: {0}")]
    NotMorphism(String),

    #[error("morphism is not admissible: {0}")]
    NotAdmissible(String),

    #[error("objects live over different base structures")]
    RingMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown builtin structure `{0}`")]
    UnknownBuiltin(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A size bound was exceeded; the computation was not attempted.
    #[error("size bound exceeded: {what} needs {size}, limit is {limit}")]
    TooLarge { what: String, size: usize, limit: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn axioms(what: impl Into<String>, report: AxiomReport) -> Self {
        Error::Axioms { what: what.into(), report }
    }
}
