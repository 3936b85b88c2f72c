use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("cokernel is not of finite length: {0}")]
    NotFiniteLength(String),

    #[error("could not generate a finite-length instance after {attempts} attempts: {detail}")]
    GenerationFailed { attempts: usize, detail: String },

    #[error("no consistent splitting found after {attempts} random lines: {detail}")]
    LineDegenerate { attempts: usize, detail: String },

    #[error("consistency check failed: {0}")]
    ConsistencyFailure(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the command-line front end: 2 for input
    /// problems, 3 for failed invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Shape(_)
            | Error::Degree(_)
            | Error::NotFiniteLength(_)
            | Error::GenerationFailed { .. }
            | Error::Io(_) => 2,
            Error::LineDegenerate { .. }
            | Error::ConsistencyFailure(_)
            | Error::TheoremViolation(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
