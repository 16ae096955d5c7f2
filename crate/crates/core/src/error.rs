use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d_(n-1) * d_n != 0 at degree {degree}")]
    SquareZeroViolated { degree: i64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("expected a graded object, but d_{degree} is nonzero")]
    NotGraded { degree: i64 },
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("not protosplit: f * t * f != f")]
    NotProtosplit,
    #[error("protosplit pair equations fail: {0}")]
    PairEquationsFail(String),
    #[error("not idempotent")]
    NotIdempotent,
    #[error("witness equation fails: {0}")]
    WitnessEquationsFail(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("invalid Cauchy data: {0}")]
    CauchyDataInvalid(String),
    #[error("support [{lo}, {hi}] exceeds window [-{window}, {window}]")]
    SupportExceedsWindow { lo: i64, hi: i64, window: i64 },
    #[error("quotient has torsion in degree {degree}; not representable as a free complex")]
    TorsionQuotient { degree: i64 },
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid input: {0}")]
    Input(String),
}
