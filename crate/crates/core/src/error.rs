use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("malformed generator: {0}")]
    MalformedGenerator(String),

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderExceedsBound { order: String, bound: u64 },

    #[error("group is not transitive")]
    NotTransitive,

    #[error("subgroup generator does not lie in the group")]
    NotASubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("action on cosets is not faithful")]
    UnfaithfulAction,

    #[error("index {index} exceeds the bound {bound}")]
    IndexTooLarge { index: String, bound: u64 },

    #[error("{points} points exceed the point budget {budget}")]
    PointBudgetExceeded { points: String, budget: u64 },

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported field order {0}")]
    UnsupportedField(u32),

    #[error("malformed group spec '{0}'")]
    MalformedSpec(String),

    #[error("malformed group file: {0}")]
    MalformedFile(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("group has no Saxl graph (base size exceeds 2)")]
    NoSaxlGraph,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that mean "the computation was too big", as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OrderExceedsBound { .. }
                | Error::IndexTooLarge { .. }
                | Error::PointBudgetExceeded { .. }
                | Error::BudgetExhausted(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
