use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("size guard: {what} has size {actual}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid point label `{0}`")]
    InvalidLabel(String),

    #[error("unknown point label `{0}`")]
    UnknownLabel(String),

    #[error("space is not integral")]
    NotIntegral,

    #[error("invalid separation device: {0}")]
    InvalidDevice(String),

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid representation morphism: {0}")]
    InvalidRepMorphism(String),

    #[error("invalid foliation: {0}")]
    InvalidFoliation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}
