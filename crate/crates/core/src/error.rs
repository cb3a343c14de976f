use thiserror::Error;

/// Why a Cayley table failed group validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDefect {
    /// Table is not square or has entries out of range.
    Malformed,
    /// No two-sided identity element exists.
    NoIdentity,
    /// Some row or column repeats an element; `index` is the offending row/column.
    NotLatinSquare { index: usize },
    /// `(x*y)*z != x*(y*z)` for the witness triple.
    NonAssociative { x: usize, y: usize, z: usize },
    /// No two-sided inverse for `element`.
    NoInverse { element: usize },
}

impl std::fmt::Display for GroupDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDefect::Malformed => write!(f, "table is not a square over 0..n"),
            GroupDefect::NoIdentity => write!(f, "no-identity"),
            GroupDefect::NotLatinSquare { index } => write!(f, "not-latin-square (line {index})"),
            GroupDefect::NonAssociative { x, y, z } => {
                write!(f, "non-associative at ({x},{y},{z})")
            }
            GroupDefect::NoInverse { element } => write!(f, "no-inverse for {element}"),
        }
    }
}

/// Which crossed-module axiom a candidate violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    /// Some `action[g]` is not an automorphism of T.
    NotAutomorphism,
    /// `action` is not a homomorphism G -> Aut(T).
    NotAction,
    /// `boundary(g . t) != g boundary(t) g^-1`.
    Equivariance,
    /// `(boundary(t)) . t' != t t' t^-1`.
    Peiffer,
}

impl std::fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AxiomKind::NotAutomorphism => "not-automorphism",
            AxiomKind::NotAction => "not-action",
            AxiomKind::Equivariance => "equivariance",
            AxiomKind::Peiffer => "peiffer",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason}")]
    NotAGroup { reason: GroupDefect },

    #[error("not a homomorphism: fails at pair ({x},{y})")]
    NotAHom { x: usize, y: usize },

    #[error("not a subgroup: product of {x} and {y} escapes the subset")]
    NotASubgroup { x: usize, y: usize },

    #[error("subgroup not normal: conjugating {element} by {by} escapes the subgroup")]
    NotNormal { element: usize, by: usize },

    #[error("invalid module data: {0}")]
    BadModule(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a cocycle: coboundary is nonzero at tuple {witness:?}")]
    NotACocycle { witness: Vec<usize> },

    #[error("resource limit exceeded: needed {needed}, bound {bound}")]
    ResourceLimit { needed: usize, bound: usize },

    #[error("crossed-module axiom violated: {kind} at witness {witness:?}")]
    AxiomViolation { kind: AxiomKind, witness: (usize, usize) },

    #[error("cannot lift eta({f},{g}): value outside the boundary image")]
    LiftImpossible { f: usize, g: usize },

    #[error("2-morphisms not composable ({mode}): target {lhs_target} != source {rhs_source}")]
    NotComposable {
        mode: &'static str,
        lhs_target: usize,
        rhs_source: usize,
    },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("multiplication table not associative at ({x},{y},{z}): invalid cocycle data")]
    NotAssociative { x: usize, y: usize, z: usize },

    #[error("obstruction class is nonzero: no cover exists")]
    NotSplit,

    #[error("submodule not stable: generator {generator} moved by group element {by}")]
    NotStable { generator: usize, by: usize },

    #[error("unknown catalog name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
