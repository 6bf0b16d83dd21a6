use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{k} is not coprime to {modulus}")]
    NotCoprime { k: i64, modulus: u64 },
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("group order exceeds the bound {bound}")]
    OrderBound { bound: usize },
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
