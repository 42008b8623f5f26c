use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported Cartan type `{0}`")]
    UnsupportedType(String),
    #[error("group of type {name} has order {order}, above the cap {cap}")]
    OrderCap { name: String, order: usize, cap: usize },
    #[error("invalid weight function: {0}")]
    InvalidWeights(String),
    #[error("degenerate weight function: p(1, w{0}) vanishes")]
    DegenerateWeight(usize),
    #[error("{property} violated: {witness}")]
    Property { property: String, witness: String },
    #[error("representation construction failed: {0}")]
    Representation(String),
    #[error("invalid specialization: {0}")]
    Specialization(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub fn property(property: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Property { property: property.into(), witness: witness.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
