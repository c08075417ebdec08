use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("bad field definition: {0}")]
    BadField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("length {n} is not coprime to the field size {q}")]
    LengthNotCoprime { n: usize, q: u32 },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operands belong to different ring contexts")]
    MixedContexts,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("image of x does not define an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("permutation does not preserve the degree classes of the factors")]
    ClassViolation,
    #[error("operands belong to different skew-polynomial algebras")]
    MixedAlgebras,
    #[error("zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("sigma fixes the idempotent e{0}; components there have complexity zero")]
    FixedIdempotent(usize),
    #[error("scalar #{0} is not a unit of A")]
    NonUnitScalar(usize),
    #[error("no inverse found up to z-degree {0}")]
    DegreeCapExceeded(usize),
    #[error("no elementary-unit decomposition found")]
    DecompositionNotFound,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("generator polynomial is not reduced")]
    NotReduced,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("matrix is not right invertible")]
    NotRightInvertible,
    #[error("generator matrix is not minimal")]
    NotMinimal,
    #[error("strong-equivalence search space too large (n={n}, q={q})")]
    SearchSpaceTooLarge { n: usize, q: u32 },
    #[error("unit components do not match the generator on its support")]
    ComponentMismatch,
    #[error("indices e{0} and e{1} lie in the same sigma-cycle")]
    OverlappingCycles(usize, usize),
    #[error("state space q^delta = {states} exceeds the cap {cap}")]
    StateCapExceeded { states: u128, cap: u128 },
    #[error("enumeration exceeded the cap of {0} nodes")]
    EnumerationCapExceeded(u64),
    #[error("bad code parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code for the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 3,
            Error::LengthNotCoprime { .. } => 2,
            _ => 4,
        }
    }
}
