use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime power field order")]
    InvalidOrder(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element index {index} is not in GF({order})")]
    NotInField { index: u32, order: u32 },
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(u32),
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },
    #[error("generator matrix has rank {rank} < {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("generator matrix is not in systematic form [I_k | P]")]
    NotSystematic,
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("search budget of {nodes} nodes exhausted; optimal redundancy lies in [{lower}, {}]",
        upper.map_or_else(|| "?".to_string(), |u| u.to_string()))]
    SearchBudgetExceeded {
        lower: usize,
        upper: Option<usize>,
        nodes: u64,
    },
    #[error("GF({q}) has fewer than n = {n} distinct evaluation points")]
    FieldTooSmall { q: u32, n: usize },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("nearest codeword is at distance {distance}, beyond radius t = {t}")]
    BeyondRadius { distance: usize, t: usize },
    #[error("bound undefined for k = {k}, t = {t}: requires k >= 2 and k > t*log2(e)")]
    BoundUndefined { k: usize, t: usize },
    #[error("error weight {weight} exceeds length {n}")]
    WeightTooLarge { weight: usize, n: usize },
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
