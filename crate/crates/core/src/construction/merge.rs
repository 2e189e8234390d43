//! Combining local constructions of two pieces glued along a common
//! codimension-one subcomplex.

use std::collections::HashMap;

use super::replay::LocalConstruction;
use super::unfold::Unfolding;
use crate::complex::{Face, SimplicialComplex};

/// A local construction described on the complex itself: a spanning tree of
/// the dual graph and the order in which the remaining ridges are glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeSchedule {
    /// Pairs of facet indices.
    pub tree_edges: Vec<(usize, usize)>,
    pub order: Vec<Face>,
}

impl RidgeSchedule {
    pub fn construction(&self, k: &SimplicialComplex, t: usize) -> LocalConstruction {
        Unfolding::new(k, &self.tree_edges).construction(t, &self.order)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MergeError {
    #[error("the pieces share a facet")]
    SharedFacet,
    #[error("the intersection is not a pure complex of codimension one")]
    BadIntersection,
    #[error("the intersection facets cannot be ordered with overlaps of dimension >= {0}")]
    NoOrder(isize),
}

/// Schedule for `k1 ∪ k2` from schedules of the pieces: join the spanning
/// trees across one common ridge, replay both schedules, then glue the
/// remaining common ridges so that each meets the earlier ones in dimension
/// at least d - t - 1.
pub fn merge_schedules(
    k1: &SimplicialComplex,
    s1: &RidgeSchedule,
    k2: &SimplicialComplex,
    s2: &RidgeSchedule,
    t: usize,
) -> Result<(SimplicialComplex, RidgeSchedule), MergeError> {
    let d = k1.dim();
    if k1.facets().iter().any(|f| k2.facets().contains(f)) {
        return Err(MergeError::SharedFacet);
    }
    let inter = k1.intersection(k2);
    if inter.num_facets() == 0 || !inter.is_pure() || inter.dim() != d - 1 {
        return Err(MergeError::BadIntersection);
    }
    let c = k1.union(k2);
    let idx: HashMap<&Face, usize> = c.facets().iter().enumerate().map(|(i, f)| (f, i)).collect();
    let owner = |k: &SimplicialComplex, r: &Face| -> Option<usize> {
        let hits: Vec<usize> = k.facets().iter().filter(|f| r.is_subset_of(f)).map(|f| idx[f]).collect();
        (hits.len() == 1).then(|| hits[0])
    };
    let ridges = inter.facets().to_vec();
    for r in &ridges {
        if owner(k1, r).is_none() || owner(k2, r).is_none() {
            return Err(MergeError::BadIntersection);
        }
    }
    let lift = |k: &SimplicialComplex, s: &RidgeSchedule| -> Vec<(usize, usize)> {
        s.tree_edges.iter().map(|&(a, b)| (idx[&k.facets()[a]], idx[&k.facets()[b]])).collect()
    };
    let mut tree_edges = lift(k1, s1);
    tree_edges.extend(lift(k2, s2));
    let sigma0 = &ridges[0];
    tree_edges.push((owner(k1, sigma0).unwrap(), owner(k2, sigma0).unwrap()));
    let mut order: Vec<Face> = s1.order.iter().chain(s2.order.iter()).cloned().collect();
    // order the other common ridges greedily
    let need = d - t as isize - 1;
    let mut placed = vec![sigma0.clone()];
    let mut rest: Vec<Face> = ridges[1..].to_vec();
    while !rest.is_empty() {
        let pos = rest.iter().position(|r| {
            let best = placed.iter().map(|p| p.intersection(r).dim()).max().unwrap_or(-1);
            // the union meets r in a subcomplex whose dimension is the best single overlap
            best >= need
        });
        let Some(pos) = pos else { return Err(MergeError::NoOrder(need)) };
        let r = rest.remove(pos);
        order.push(r.clone());
        placed.push(r);
    }
    Ok((c, RidgeSchedule { tree_edges, order }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::examples::{double_ball, double_ball_halves};
    use crate::recognition::is_t_lc;
    use crate::Budget;

    fn schedule(k: &SimplicialComplex) -> RidgeSchedule {
        is_t_lc(k, 1, &Budget::unlimited()).unwrap().schedule.unwrap()
    }

    #[test]
    fn halves_merge_only_when_t_allows() {
        let (b1, b2) = double_ball_halves();
        let (s1, s2) = (schedule(&b1), schedule(&b2));
        let (c, s) = merge_schedules(&b1, &s1, &b2, &s2, 2).unwrap();
        assert_eq!(c, double_ball());
        let lc = s.construction(&c, 2);
        let r = lc.replay();
        assert!(r.is_valid(), "{:?}", r.failure);
        assert_eq!(lc.labelled_complex(&r.state).unwrap(), c);
        // the two common triangles share only a vertex
        assert_eq!(merge_schedules(&b1, &s1, &b2, &s2, 1), Err(MergeError::NoOrder(1)));
    }

    #[test]
    fn overlapping_pieces_are_refused() {
        let (b1, _) = double_ball_halves();
        let s = schedule(&b1);
        assert_eq!(merge_schedules(&b1, &s, &b1, &s, 1), Err(MergeError::SharedFacet));
    }
}
