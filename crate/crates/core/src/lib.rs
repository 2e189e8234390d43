//! Local constructions of triangulated manifolds.

pub mod budget;
pub mod canonical;
pub mod complex;
pub mod construction;
pub mod cw;
pub mod enumeration;
pub mod error;
pub mod homology;
pub mod io;
pub mod recognition;
pub mod union_find;

pub use budget::Budget;
pub use canonical::{canonical_form, CanonicalForm};
pub use complex::{closure, DualGraph, Face, SimplicialComplex, VertexId};
pub use cw::{cw_to_simplicial, BaseComplex, CellId, CwComplex};
pub use error::{ComplexError, GluingError};
pub use recognition::Verdict;
