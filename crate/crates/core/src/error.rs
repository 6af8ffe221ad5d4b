use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the Gamma function at z = {0}")]
    Pole(f64),
    #[error("series does not terminate: no numerator parameter is a non-positive integer")]
    NonTerminating,
    #[error("zero denominator: parameter {param} vanishes at term {term}")]
    ZeroDenominator { param: usize, term: usize },
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("quadrature budget infeasible: {nodes} nodes needed, cap is {cap}")]
    BudgetInfeasible { nodes: usize, cap: usize },
    #[error("finite-difference stencil leaves the simplex")]
    StencilOutsideDomain,
    #[error("rule mismatch: {0}")]
    RuleMismatch(String),
    #[error("degenerate parameters: {0} vanishes")]
    DegenerateParameter(String),
    #[error("least-squares system is rank deficient (rank {rank} of {unknowns})")]
    RankDeficient { rank: usize, unknowns: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
