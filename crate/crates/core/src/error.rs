use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    /// Level index (1-based, level 0 is the prime field) whose modulus factors.
    ModulusNotIrreducible { level: usize },
    DegreeMismatch { expected: usize, found: usize },
    DivisionByZero,
    TowerMismatch,
    BudgetExceeded { needed: u128, budget: u128 },
    RaggedInput,
    RangeError(&'static str),
    NotADivisor { d: u64, e: u64 },
    HypothesisViolated(&'static str),
    DegreeTooSmall { d: usize },
    PointNotFree,
    /// Search ran out of candidates. `complete` is set when every point of
    /// the search space was examined.
    Exhausted { checked: u128, complete: bool },
    ParamMismatch,
    FieldTooLarge { order: u128 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ModulusNotIrreducible { level } => {
                write!(f, "modulus of level {level} is not irreducible over level {}", level - 1)
            }
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::TowerMismatch => f.write_str("operands live in different tower levels"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration of {needed} items exceeds budget {budget}")
            }
            Error::RaggedInput => f.write_str("rows have different lengths"),
            Error::RangeError(what) => write!(f, "out of range: {what}"),
            Error::NotADivisor { d, e } => write!(f, "{e} does not divide {d}"),
            Error::HypothesisViolated(what) => write!(f, "hypothesis violated: {what}"),
            Error::DegreeTooSmall { d } => write!(f, "degree {d} too small"),
            Error::PointNotFree => f.write_str("point is not free"),
            Error::Exhausted { checked, complete } => {
                if *complete {
                    write!(f, "search space exhausted after {checked} candidates: no free point exists")
                } else {
                    write!(f, "search budget exhausted after {checked} candidates")
                }
            }
            Error::ParamMismatch => f.write_str("parameter mismatch"),
            Error::FieldTooLarge { order } => write!(f, "field of order {order} too large for tables"),
        }
    }
}
