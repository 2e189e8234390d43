//! Replayable local constructions: a tree plus an ordered list of gluings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::gluing::{apply_gluing, check_admissible, GluingMove};
use super::tree::{Attachment, TreeJson, TreeOfSimplices};
use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::cw::CwComplex;
use crate::error::{ComplexError, GluingError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalConstruction {
    pub t: usize,
    pub tree: TreeOfSimplices,
    pub moves: Vec<GluingMove>,
    /// Optional names for the tree vertices in a target complex.
    pub labels: Option<Vec<VertexId>>,
}

#[derive(Serialize, Deserialize)]
struct LcJson {
    d: usize,
    t: usize,
    tree: TreeJson,
    moves: Vec<GluingMove>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<VertexId>>,
}

impl Serialize for LocalConstruction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LcJson {
            d: self.tree.dim(),
            t: self.t,
            tree: self.tree.to_json(),
            moves: self.moves.clone(),
            labels: self.labels.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalConstruction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let j = LcJson::deserialize(de)?;
        let tree = TreeOfSimplices::new(j.d, j.tree.attachments).map_err(serde::de::Error::custom)?;
        if let Some(l) = &j.labels {
            if l.len() != tree.num_vertices() {
                return Err(serde::de::Error::custom("labels must name every tree vertex"));
            }
        }
        Ok(LocalConstruction { t: j.t, tree, moves: j.moves, labels: j.labels })
    }
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub state: CwComplex,
    /// Moves applied before stopping.
    pub applied: usize,
    /// First failing move and why.
    pub failure: Option<(usize, GluingError)>,
}

impl Replay {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn complex(&self) -> Result<SimplicialComplex, ComplexError> {
        self.state.to_simplicial()
    }
}

impl LocalConstruction {
    pub fn new(t: usize, tree: TreeOfSimplices, moves: Vec<GluingMove>) -> Self {
        LocalConstruction { t, tree, moves, labels: None }
    }

    pub fn d(&self) -> usize {
        self.tree.dim()
    }

    pub fn replay(&self) -> Replay {
        replay(self)
    }

    /// Final complex in the target labels: each vertex class must carry
    /// exactly one label and distinct classes distinct labels.
    pub fn labelled_complex(&self, state: &CwComplex) -> Result<SimplicialComplex, ComplexError> {
        let Some(labels) = &self.labels else {
            return state.to_simplicial();
        };
        let n = self.tree.num_vertices();
        let mut class_label = vec![None; n];
        let mut label_class = std::collections::HashMap::new();
        for v in 0..n {
            let c = state.vertex_class(v as VertexId);
            match class_label[c] {
                None => class_label[c] = Some(labels[v]),
                Some(l) if l != labels[v] => {
                    return Err(ComplexError::Invalid(format!("vertex class {c} carries labels {l} and {}", labels[v])))
                }
                _ => {}
            }
            if *label_class.entry(labels[v]).or_insert(c) != c {
                return Err(ComplexError::Invalid(format!("label {} names two vertex classes", labels[v])));
            }
        }
        state.to_simplicial()?;
        Ok(SimplicialComplex::from_facets(self.tree.simplices().iter().map(|s| {
            Face::new(s.vertices().iter().map(|&v| labels[v as usize])).expect("labels distinct on classes")
        })))
    }
}

/// Replays the moves, stopping at the first one that is not t-admissible
/// or cannot be applied.
pub fn replay(lc: &LocalConstruction) -> Replay {
    let mut state = lc.tree.cw();
    for (i, mv) in lc.moves.iter().enumerate() {
        let step = check_admissible(&state, mv, lc.t).and_then(|_| apply_gluing(&state, mv));
        match step {
            Ok(s) => state = s,
            Err(e) => return Replay { state, applied: i, failure: Some((i, e)) },
        }
    }
    Replay { applied: lc.moves.len(), state, failure: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    pub moves: Vec<usize>,
    /// Facets glued in this round.
    pub m: usize,
    /// Distinct (d-3)-cells shared by the glued pairs.
    pub n: usize,
    /// Bound on the (d-3)-cells available to this round; absent for round 1.
    pub l: Option<usize>,
    /// Largest number of (d-3)-classes merged by a single move of the round.
    pub max_new_identifications: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundPartition {
    pub d: usize,
    pub rounds: Vec<Round>,
    pub total_facets: usize,
    /// 2D for the tree.
    pub two_d: usize,
}

impl RoundPartition {
    pub fn sums_match(&self) -> bool {
        self.total_facets == self.two_d
    }

    /// Per-move identification bound d(d-1)/2 - 1.
    pub fn identification_bound(&self) -> usize {
        self.d * (self.d - 1) / 2 - 1
    }

    pub fn identifications_within_bound(&self) -> bool {
        self.rounds.iter().all(|r| r.max_new_identifications <= self.identification_bound())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RoundError {
    #[error("rounds need d >= 3")]
    LowDimension,
    #[error("construction fails at move {0}")]
    Invalid(usize),
    #[error("construction leaves {0} boundary cells")]
    Incomplete(usize),
    #[error("moves {0:?} never share a (d-3)-cell")]
    Stalled(Vec<usize>),
}

fn shared_codim2(state: &CwComplex, mv: &GluingMove, d: usize) -> BTreeSet<usize> {
    let base = state.base();
    let sub = |c: usize| -> BTreeSet<usize> {
        let n = base.face(c).len();
        (1u32..(1 << n))
            .filter(|m| m.count_ones() as usize == d - 2)
            .map(|m| state.cell(base.sub(c, m)))
            .collect()
    };
    sub(mv.a).intersection(&sub(mv.b)).copied().collect()
}

/// Groups the moves of a complete construction into rounds: a move joins
/// round i+1 once its two cells share a (d-3)-cell after round i.
pub fn round_partition(lc: &LocalConstruction) -> Result<RoundPartition, RoundError> {
    let d = lc.d();
    if d < 3 {
        return Err(RoundError::LowDimension);
    }
    let r = replay(lc);
    if let Some((i, _)) = r.failure {
        return Err(RoundError::Invalid(i));
    }
    let left = r.state.boundary_cells().len();
    if left > 0 {
        return Err(RoundError::Incomplete(left));
    }
    let mut state = lc.tree.cw();
    let mut pending: Vec<usize> = (0..lc.moves.len()).collect();
    let mut rounds: Vec<Round> = Vec::new();
    while !pending.is_empty() {
        let mut shared = BTreeSet::new();
        let (now, later): (Vec<usize>, Vec<usize>) = pending.iter().partition(|&&i| {
            let s = shared_codim2(&state, &lc.moves[i], d);
            let hit = !s.is_empty();
            shared.extend(s);
            hit
        });
        if now.is_empty() {
            return Err(RoundError::Stalled(later));
        }
        let mut max_new = 0;
        for &i in &now {
            let before = state.num_cells(d - 3);
            state = apply_gluing(&state, &lc.moves[i]).expect("replayed above");
            max_new = max_new.max(before - state.num_cells(d - 3));
        }
        let l = rounds.last().map(|p| p.m / 2 * (d * (d - 1) / 2 - 1));
        rounds.push(Round { m: 2 * now.len(), n: shared.len(), l, moves: now, max_new_identifications: max_new });
        pending = later;
    }
    let total_facets = rounds.iter().map(|r| r.m).sum();
    Ok(RoundPartition { d, rounds, total_facets, two_d: 2 + lc.tree.len() * (d - 1) })
}

/// Builds a tree from explicit attachments, for tests and generators.
pub fn tree(d: usize, att: &[(usize, VertexId)]) -> TreeOfSimplices {
    TreeOfSimplices::new(d, att.iter().map(|&(parent, opposite)| Attachment { parent, opposite }).collect())
        .expect("valid attachments")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::Unfolding;
    use crate::recognition::is_t_lc;
    use crate::Budget;

    fn sphere_construction(d: usize) -> LocalConstruction {
        let k = SimplicialComplex::boundary_of_simplex(d);
        is_t_lc(&k, 1, &Budget::unlimited()).unwrap().witness.unwrap()
    }

    #[test]
    fn failure_is_reported_at_the_bad_move() {
        let mut lc = sphere_construction(2);
        let n = lc.moves.len();
        lc.moves.push(lc.moves[0].clone());
        let r = lc.replay();
        assert_eq!(r.applied, n);
        assert!(matches!(r.failure, Some((i, GluingError::NotBoundary(_))) if i == n));
    }

    #[test]
    fn labels_must_be_consistent() {
        let k = SimplicialComplex::boundary_of_simplex(2);
        let u = Unfolding::new(&k, &[(0, 1), (1, 2), (2, 3)]);
        let mut lc = u.construction(1, &[]);
        let r = lc.replay();
        // nothing glued yet: two tree vertices share a label
        assert!(lc.labelled_complex(&r.state).is_err());
        lc.labels = None;
        assert_eq!(lc.labelled_complex(&r.state).unwrap(), r.state.to_simplicial().unwrap());
    }

    #[test]
    fn rounds_use_every_boundary_facet() {
        for d in [3, 4] {
            let lc = sphere_construction(d);
            let p = round_partition(&lc).unwrap();
            assert!(p.sums_match(), "{p:?}");
            assert_eq!(p.two_d, 2 + (d + 2) * (d - 1));
            assert!(p.identifications_within_bound());
            assert!(p.rounds.iter().all(|r| r.m % 2 == 0 && r.m > 0));
        }
        let open = LocalConstruction::new(1, TreeOfSimplices::path(3, 2), Vec::new());
        assert_eq!(round_partition(&open), Err(RoundError::Incomplete(6)));
        assert_eq!(round_partition(&sphere_construction(2)), Err(RoundError::LowDimension));
    }
}
