use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("grid parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("domain does not contain the ball B_1/2 around the origin")]
    DomainTooSmall,
    #[error("decay fit needs at least 2 thresholds above the statistical floor, found {0}")]
    TooFewThresholds(usize),
    #[error("unknown corpus member `{name}`; valid names: {valid}")]
    UnknownCorpus { name: String, valid: String },
    #[error(transparent)]
    Solver(#[from] heps_core::SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
