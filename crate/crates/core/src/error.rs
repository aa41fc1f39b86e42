use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{h} exceeds the configured bound {bound}")]
    OrderTooLarge { p: u64, h: u32, bound: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree {0} is odd, no subfield of order sqrt(q)")]
    OddDegree(u32),
    #[error("field order {0} is not a square")]
    NonSquareOrder(u64),
    #[error("field order {0} is odd")]
    OddOrder(u64),
    #[error("geometry PG({n},{q}) has {points} points, above the bound {bound}")]
    GeometryTooLarge { n: usize, q: u64, points: u128, bound: u64 },
    #[error("dimension {got} is not allowed here (expected {expected})")]
    WrongDimension { got: i64, expected: String },
    #[error("point index {index} out of range for {len} points")]
    PointOutOfRange { index: usize, len: usize },
    #[error("coordinate vector {0:?} is not a valid point")]
    InvalidVector(Vec<u32>),
    #[error("vertex and base are not disjoint")]
    VertexBaseNotDisjoint,
    #[error("arc degree {d} does not divide {q}")]
    DegreeNotDividingOrder { d: u64, q: u64 },
    #[error("degree {d} outside the admissible range 2..={q}")]
    DegreeOutOfRange { d: u64, q: u64 },
    #[error("point set is not a blocking set with respect to {0}-subspaces")]
    NotBlocking(usize),
    #[error("intersection sizes must be strictly increasing, got ({a}, {b}, {c})")]
    DegenerateType { a: String, b: String, c: String },
    #[error("empty k range [{lo}, {hi}]")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unknown theorem '{0}'")]
    UnknownTheorem(String),
}
