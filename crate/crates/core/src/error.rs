use thiserror::Error;

use crate::complex::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face has a repeated vertex: {0:?}")]
    RepeatedVertex(Vec<VertexId>),
    #[error("face {0:?} is not in the complex")]
    FaceNotInComplex(Vec<VertexId>),
    #[error("skeleton dimension {k} out of range for a complex of dimension {dim}")]
    SkeletonOutOfRange { k: isize, dim: isize },
    #[error("complex is not pure")]
    NotPure,
    #[error("apex {0} is already a vertex")]
    ApexPresent(VertexId),
    #[error("cells {cells:?} share the vertex set {vertices:?}")]
    DoubledCell { vertices: Vec<VertexId>, cells: Vec<usize> },
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq, serde::Serialize)]
pub enum GluingError {
    #[error("cell {0} is not a boundary (d-1)-cell")]
    NotBoundary(usize),
    #[error("cannot glue cell {0} to itself")]
    SameCell(usize),
    #[error("vertex map is not a bijection between the two cells")]
    BadMap,
    #[error("intersection dimension {found} below required {required}")]
    NotAdmissible { found: isize, required: isize },
    #[error("vertex map moves a vertex of the common face")]
    MovesIntersection,
    #[error("cell {cell} would get a repeated vertex {vertices:?}")]
    DegenerateCell { cell: usize, vertices: Vec<VertexId> },
    #[error("ridge {ridge} would lie in {count} top cells")]
    OverusedRidge { ridge: usize, count: usize },
}
