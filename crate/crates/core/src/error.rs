use thiserror::Error;

/// Errors raised by the group, action, lattice and cover routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("point {0} occurs more than once")]
    RepeatedPoint(usize),
    #[error("point {point} is out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("generator list is empty")]
    EmptyGeneratorList,
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },
    #[error("coset index {index} exceeds the cap {cap}")]
    IndexCapExceeded { index: u64, cap: u64 },
    #[error("group order {order} exceeds the lattice cap {cap}")]
    LatticeCapExceeded { order: u64, cap: u64 },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("points must be distinct")]
    EqualPoints,
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("subgroup is not proper")]
    NotProper,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("group is trivial")]
    TrivialGroup,
    #[error("actions are over different groups")]
    DifferentGroups,
    #[error("subset size {ell} is not in 1..{degree}/2")]
    BadEll { ell: usize, degree: usize },
    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,
    #[error("unsupported degree {0}; expected {1}")]
    UnsupportedDegree(usize, &'static str),
    #[error("degree {0} is too small; need at least 2")]
    BadDegree(usize),
    #[error("product of branch permutations is not the identity")]
    ProductNotIdentity,
    #[error("branch permutations do not generate the group")]
    DoesNotGenerate,
    #[error("branch {0} is the identity")]
    TrivialBranch(usize),
    #[error("genus formula gave non-integral or negative value (2g = {0})")]
    NonIntegralGenus(i64),
    #[error("rejection sampler exhausted {0} attempts")]
    SamplerExhausted(usize),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
