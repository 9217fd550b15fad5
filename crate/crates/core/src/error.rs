use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("atoms do not partition the carrier: {0}")]
    InvalidAtoms(String),
    #[error("map is not total: expected {expected} entries, found {found}")]
    NotTotal { expected: usize, found: usize },
    #[error("index {index} out of range for carrier of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("map is not measurable: {0}")]
    NotMeasurable(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("act enumeration needs {needed} acts, cap is {cap}")]
    ActCapExceeded { needed: u128, cap: usize },
    #[error("factorisation witness check failed for outcome {outcome}: {reason}")]
    WitnessMismatch { outcome: usize, reason: String },
    #[error("menu {0} is outside the declared menu universe")]
    MenuOutsideUniverse(String),
    #[error("contraction violated: chose {chosen} from {menu}")]
    ContractionViolated { menu: String, chosen: String },
    #[error("singleton menu {0} must choose itself")]
    SingletonViolated(String),
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("choice family is not compatible along the chain at level {level}, menu {menu}")]
    IncompatibleFamily { level: usize, menu: String },
    #[error("relation is not {property}: {witness}")]
    InvalidRelation { property: &'static str, witness: String },
    #[error("carrier of size {size} exceeds search cap {cap}")]
    CarrierCapExceeded { size: usize, cap: usize },
    #[error("invalid belief: {0}")]
    InvalidBelief(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
