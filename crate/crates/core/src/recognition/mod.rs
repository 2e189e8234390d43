//! Deciding local constructibility, t-constructibility and manifoldness.

pub mod constructible;
pub mod lc;
pub mod manifold;

pub use constructible::{is_constructible, is_t_constructible, verify_split_tree, ConstructibilityResult, SplitTree};
pub use lc::{is_normal, is_t_lc, spanning_trees, RecognitionResult, SearchStats};
pub use manifold::{certify_manifold, ManifoldCertificate};

use serde::Serialize;

/// Three-valued outcome of an exhaustive search under a budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }
}
