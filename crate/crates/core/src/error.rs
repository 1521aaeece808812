use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected n = {expected}, found n = {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("not a permutation of 1..={n}: {values:?}")]
    InvalidPermutation { n: usize, values: Vec<usize> },

    #[error("invalid root t{i}-t{j}")]
    InvalidRoot { i: usize, j: usize },

    #[error("invalid composition {parts:?}: {reason}")]
    InvalidComposition { parts: Vec<usize>, reason: String },

    #[error("composition {parts:?} does not have exactly two parts")]
    NotTwoPart { parts: Vec<usize> },

    #[error("index {k} out of range 0..={max}")]
    IndexOutOfRange { k: usize, max: usize },

    #[error("subset {subset:?} must have {expected} distinct elements of 1..={n}")]
    InvalidSubset {
        subset: Vec<usize>,
        expected: usize,
        n: usize,
    },

    #[error("Hessenberg function is empty")]
    EmptyHessenberg,

    #[error("Hessenberg function value h({index}) = {value} lies outside 1..={n}")]
    HessenbergOutOfRange { index: usize, value: usize, n: usize },

    #[error("Hessenberg function is not non-decreasing at position {index}")]
    Monotonicity { index: usize },

    #[error("Hessenberg function violates h({index}) >= {index} (found {value})")]
    DominanceViolation { index: usize, value: usize },

    #[error("Hessenberg function {values:?} is not connected")]
    NotConnected { values: Vec<usize> },

    #[error("class is not homogeneous: value at {w} has degree {found}, expected {expected}")]
    NotHomogeneous {
        w: String,
        expected: u32,
        found: u32,
    },

    #[error("construction hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("class is not invariant under the Young subgroup of {parts:?}")]
    NotInvariant { parts: Vec<usize> },

    #[error("orbit elements are not pairwise distinct")]
    NonDistinctOrbit,

    #[error("{v} is not a shortest left coset representative for {parts:?}")]
    NotShortestLeftRep { v: String, parts: Vec<usize> },

    #[error("j0 is undefined: no b in {lo}..={hi} satisfies the defining inequality")]
    J0Undefined { lo: usize, hi: usize },

    #[error("all maximal minors vanish; the rows are dependent")]
    AllMinorsZero,

    #[error("matrix has shape {rows}x{cols}, expected (m-1)xm")]
    BadShape { rows: usize, cols: usize },

    #[error("empty list of classes")]
    EmptyInput,

    #[error("stabilizer of orbit element {index} is not a conjugate of the Young subgroup")]
    StabilizerNotYoungConjugate { index: usize },

    #[error("malformed input: {0}")]
    Parse(String),
}
