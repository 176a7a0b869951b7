use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {p}^{m} is too large for table arithmetic")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("elements or matrices belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,

    #[error("unrecognized Cartan family `{0}`")]
    UnknownFamily(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("inconsistent Cartan data: {0}")]
    InconsistentCartan(String),
    #[error("root datum has empty semisimple part")]
    NoSemisimplePart,
    #[error("weights live in different lattices")]
    LatticeMismatch,
    #[error("cocharacter is not central")]
    NotCentral,
    #[error("torus element is not regular semisimple")]
    NotRegular,
    #[error("q = {q} is {reason} modulo p = {p}")]
    DegenerateQ {
        q: u64,
        p: u64,
        reason: &'static str,
    },

    #[error("Frobenius and inertia violate the tame relation")]
    TameRelation,
    #[error("cocycle relation violated: {0}")]
    NotCocycle(String),
    #[error("{0} is not the certified Ramakrishna root")]
    NotRamakrishnaRoot(usize),
    #[error("generators do not preserve the Borel subalgebra")]
    NotBorelValued,
    #[error("input is not an involution")]
    NotInvolution,

    #[error("group enumeration exceeded the bound of {0} elements")]
    EnumerationOverflow(usize),
    #[error("cochain space of dimension {0} exceeds the configured guard")]
    CochainLimit(usize),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("family is not nested: {0}")]
    NotNested(String),

    #[error("invalid field signature: {0}")]
    Signature(String),
    #[error("value {value} outside the range [{lo}, {hi}]")]
    OutOfRange { value: i64, lo: i64, hi: i64 },
    #[error("signature is not CM")]
    NotCm,
    #[error("twist r = {0} is excluded (must avoid 0 and 1 modulo p - 1)")]
    ExcludedTwist(i64),
    #[error("p = {0} is not a very good odd prime for this root datum")]
    BadPrime(u64),

    #[error("{0} is not a 1-unit")]
    NotOneUnit(String),
    #[error("p-adic value is not a unit")]
    NotUnit,
    #[error("precision p^N does not fit machine words (p = {p}, N = {n})")]
    PrecisionTooLarge { p: u64, n: u32 },
    #[error("series is zero at the available precision")]
    ZeroSeries,
    #[error("root-of-unity budget is empty")]
    EmptyBudget,
    #[error("verdict undetermined at precision (N = {n}, D = {d}) after escalation")]
    Undetermined { n: u32, d: u32 },
    #[error("malformed units model: {0}")]
    UnitsModel(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
}
