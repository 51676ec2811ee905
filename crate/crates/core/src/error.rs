use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::Factorization;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero in F_p")]
    DivisionByZero,
    #[error("field elements belong to different moduli")]
    ModulusMismatch,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("modulus {0} is below 5")]
    ModulusTooSmall(BigUint),
    #[error("{0} is not reduced modulo p")]
    NotReduced(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor zero")]
    Zero,
    #[error("factorization work bound exceeded; remaining composite {:?}", .0.remaining)]
    WorkBoundExceeded(Factorization),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("domain separator must be non-empty")]
    EmptyDomainSeparator,
    #[error("seed must be exactly 32 bytes, got {0}")]
    SeedLength(usize),
    #[error("seed is not valid hex: {0}")]
    SeedHex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{stage} stage exhausted its budget of {budget} draws")]
pub struct StageBudgetExceeded {
    pub stage: &'static str,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("p has {bits} bits, above the built-in counter bound of {max_bits}; register an external counter")]
    CountingUnavailable { bits: u64, max_bits: u64 },
    #[error("external point counter failed: {0}")]
    External(String),
    #[error("point count {n} violates the Hasse bound")]
    HasseViolation { n: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("factorization of {0} is incomplete")]
    IncompleteFactorization(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("no curve accepted within {trials} trials")]
    MaxTrialsExceeded {
        trials: u64,
        reconcile_singular: u64,
        validation_failed: u64,
    },
    #[error(transparent)]
    StageBudget(#[from] StageBudgetExceeded),
    #[error(transparent)]
    Counting(#[from] CountError),
    #[error("curve is singular (c4 = {c4}, c6 = {c6})")]
    SingularInput { c4: BigUint, c6: BigUint },
    #[error("point-count consistency check failed: {0}")]
    OrderInconsistent(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("invalid configuration: {0}")]
    Config(String),
}
