use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("field of order {order} exceeds the table bound {bound}")]
    FieldTooLarge { order: u64, bound: u64 },
    #[error("not a prime power: {0}")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("element is not in the subfield F_q")]
    NotInSubfield,
    #[error("norm equation has no solution")]
    NoSolution,
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: u128 },
    #[error("combinatorial budget exceeded: {needed} > {budget}")]
    CombinatorialBudgetExceeded { needed: u128, budget: u128 },
    #[error("duplicate interpolation abscissa")]
    DuplicateAbscissa,
    #[error("duplicate code locator")]
    DuplicateLocator,
    #[error("zero column multiplier at position {0}")]
    ZeroMultiplier(usize),
    #[error("polynomial degree {degree} exceeds k - 1 = {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("shape n = {n}, k = {k}, extended = {extended} is not a self-dual shape")]
    DimensionMismatch { n: usize, k: usize, extended: bool },
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("beta = theta fails the coset condition at l = {l}")]
    InvalidBeta { l: usize },
    #[error("beta_m = theta^{m} fails the coset condition at l = {l}")]
    InvalidBetaM { m: u64, l: usize },
    #[error("index l = {l} outside 1..={q}")]
    IndexOutOfRange { l: usize, q: u64 },
    #[error("construction hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("locator {0} is not in the evaluation family")]
    NotInFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI and the Python bindings.
    pub fn code(&self) -> &'static str {
        match self {
            Error::CompositeCharacteristic(_) => "composite_characteristic",
            Error::FieldTooLarge { .. } => "field_too_large",
            Error::NotPrimePower(_) => "not_prime_power",
            Error::DivisionByZero => "division_by_zero",
            Error::LogOfZero => "log_of_zero",
            Error::NotInSubfield => "not_in_subfield",
            Error::NoSolution => "no_solution",
            Error::EnumerationBudgetExceeded { .. } => "enumeration_budget_exceeded",
            Error::CombinatorialBudgetExceeded { .. } => "combinatorial_budget_exceeded",
            Error::DuplicateAbscissa => "duplicate_abscissa",
            Error::DuplicateLocator => "duplicate_locator",
            Error::ZeroMultiplier(_) => "zero_multiplier",
            Error::DegreeTooHigh { .. } => "degree_too_high",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidCode(_) => "invalid_code",
            Error::InvalidBeta { .. } => "invalid_beta",
            Error::InvalidBetaM { .. } => "invalid_beta_m",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::NotInFamily(_) => "not_in_family",
            Error::Parse(_) => "parse_error",
            Error::FieldMismatch(_) => "field_mismatch",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::EnumerationBudgetExceeded { .. } | Error::CombinatorialBudgetExceeded { .. }
        )
    }
}
