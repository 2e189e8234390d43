//! Trees of d-simplices: triangulated balls whose dual graph is a tree.
//!
//! Simplex 0 is `[0, .., d]`. Simplex k >= 1 takes the face of its parent
//! opposite vertex `opposite` and adds the fresh vertex `d + k`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::cw::{BaseComplex, CwComplex};
use crate::error::ComplexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Attachment {
    pub parent: usize,
    pub opposite: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOfSimplices {
    d: usize,
    attachments: Vec<Attachment>,
    simplices: Vec<Face>,
}

impl TreeOfSimplices {
    pub fn simplex(d: usize) -> Self {
        TreeOfSimplices { d, attachments: Vec::new(), simplices: vec![Face::new(0..=d as VertexId).unwrap()] }
    }

    pub fn new(d: usize, attachments: Vec<Attachment>) -> Result<Self, ComplexError> {
        if d == 0 {
            return Err(ComplexError::Invalid("trees need d >= 1".into()));
        }
        let mut t = Self::simplex(d);
        let mut ridges: HashSet<Face> = HashSet::new();
        for a in attachments {
            t.attach(a, &mut ridges)?;
        }
        Ok(t)
    }

    fn attach(&mut self, a: Attachment, used: &mut HashSet<Face>) -> Result<(), ComplexError> {
        let k = self.simplices.len();
        let parent = self
            .simplices
            .get(a.parent)
            .ok_or_else(|| ComplexError::Invalid(format!("simplex {k}: parent {} does not exist", a.parent)))?;
        if !parent.contains_vertex(a.opposite) {
            return Err(ComplexError::Invalid(format!("simplex {k}: vertex {} not in parent", a.opposite)));
        }
        let face = parent.without_vertex(a.opposite);
        if !self.is_free(&face) || !used.insert(face.clone()) {
            return Err(ComplexError::Invalid(format!("simplex {k}: face {face:?} is not free")));
        }
        self.simplices.push(face.with_vertex((self.d + k) as VertexId));
        self.attachments.push(a);
        Ok(())
    }

    fn is_free(&self, face: &Face) -> bool {
        self.simplices.iter().filter(|s| face.is_subset_of(s)).count() == 1
    }

    /// Path of `n` simplices, simplex k spanning `[k, .., k + d]`.
    pub fn path(d: usize, n: usize) -> Self {
        let att = (1..n).map(|k| Attachment { parent: k - 1, opposite: (k - 1) as VertexId }).collect();
        Self::new(d, att).expect("path tree")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_vertices(&self) -> usize {
        self.d + self.simplices.len()
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    /// Simplices in attachment order.
    pub fn simplices(&self) -> &[Face] {
        &self.simplices
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.simplices.iter().cloned())
    }

    pub fn base(&self) -> Arc<BaseComplex> {
        Arc::new(BaseComplex::new(&self.complex()).expect("trees are pure"))
    }

    pub fn cw(&self) -> CwComplex {
        CwComplex::new(self.base())
    }

    /// Free (d-1)-faces with the simplex that owns them.
    pub fn free_faces(&self) -> Vec<(usize, VertexId)> {
        let mut out = Vec::new();
        for (i, s) in self.simplices.iter().enumerate() {
            for &v in s.vertices() {
                if self.is_free(&s.without_vertex(v)) {
                    out.push((i, v));
                }
            }
        }
        out
    }

    pub fn extended(&self, a: Attachment) -> Result<Self, ComplexError> {
        let mut att = self.attachments.clone();
        att.push(a);
        Self::new(self.d, att)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TreeJson {
    pub attachments: Vec<Attachment>,
}

impl TreeOfSimplices {
    pub(crate) fn to_json(&self) -> TreeJson {
        TreeJson { attachments: self.attachments.clone() }
    }
}

/// All trees of `n` d-simplices. With `up_to_iso` one representative per
/// isomorphism class, otherwise every attachment sequence.
pub fn generate_trees(d: usize, n: usize, up_to_iso: bool) -> Vec<TreeOfSimplices> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![TreeOfSimplices::simplex(d)];
    for _ in 1..n {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for t in &level {
            for (parent, opposite) in t.free_faces() {
                let child = t.extended(Attachment { parent, opposite }).expect("free face");
                if !up_to_iso || seen.insert(canonical_form(&child.complex()).complex) {
                    next.push(child);
                }
            }
        }
        level = next;
    }
    level
}

/// Face counts of the boundary of a tree against their closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCountReport {
    pub d: usize,
    pub n: usize,
    /// 1 + N(d-1)/2, as numerator and denominator.
    pub big_d: (i64, i64),
    /// Boundary i-faces for i = 0..=d-1.
    pub measured: Vec<usize>,
    pub n_d1: usize,
    pub n_d2: usize,
    pub n_d3: Option<usize>,
    pub expected_d1: (i64, i64),
    pub expected_d2: (i64, i64),
    pub expected_d3: Option<(i64, i64)>,
}

impl FaceCountReport {
    pub fn matches(&self) -> bool {
        let eq = |m: usize, e: (i64, i64)| e.1 == 1 && e.0 == m as i64;
        eq(self.n_d1, self.expected_d1)
            && eq(self.n_d2, self.expected_d2)
            && match (self.n_d3, self.expected_d3) {
                (Some(m), Some(e)) => eq(m, e),
                (None, None) => true,
                _ => false,
            }
    }
}

fn pair(r: Ratio<i64>) -> (i64, i64) {
    (*r.numer(), *r.denom())
}

pub fn closed_form_d(d: usize, n: usize) -> Ratio<i64> {
    Ratio::from_integer(1) + Ratio::new(n as i64 * (d as i64 - 1), 2)
}

pub fn closed_form_n_d3(d: usize, n: usize) -> Ratio<i64> {
    let (d, n) = (d as i64, n as i64);
    Ratio::new(d, 6) * Ratio::from_integer(n * d * d + 2 * n - 3 * n * d + 3 * d - 3)
}

pub fn face_counts(t: &TreeOfSimplices) -> FaceCountReport {
    let d = t.d;
    let k = t.complex();
    let bd = k.boundary().expect("pure");
    let measured: Vec<usize> = (0..d as isize).map(|i| bd.faces_of_dim(i).len()).collect();
    let big_d = closed_form_d(d, t.len());
    let n_d3 = (d >= 3).then(|| measured[d - 3]);
    FaceCountReport {
        d,
        n: t.len(),
        big_d: pair(big_d),
        n_d1: measured[d - 1],
        n_d2: if d >= 2 { measured[d - 2] } else { 0 },
        n_d3,
        expected_d1: pair(big_d * 2),
        expected_d2: pair(big_d * d as i64),
        expected_d3: (d >= 3).then(|| pair(closed_form_n_d3(d, t.len()))),
        measured,
    }
}

/// Number of trees per size, for reports.
pub fn tree_counts(d: usize, max_n: usize) -> BTreeMap<usize, usize> {
    (1..=max_n).map(|n| (n, generate_trees(d, n, true).len())).collect()
}
