//! t-LC recognition: unfold along every spanning tree of the dual graph and
//! try to glue the cut ridges back with t-admissible moves.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use super::Verdict;
use crate::budget::Budget;
use crate::complex::{Face, SimplicialComplex};
use crate::construction::merge::RidgeSchedule;
use crate::construction::replay::LocalConstruction;
use crate::construction::unfold::Unfolding;
use crate::construction::{realize_greedy, Realization};
use crate::error::ComplexError;
use crate::union_find::UnionFind;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub trees_tried: u64,
    pub orderings_tried: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    pub witness: Option<LocalConstruction>,
    #[serde(skip)]
    pub schedule: Option<RidgeSchedule>,
    pub stats: SearchStats,
    /// Why the search ended before trying any tree, if it did.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// True when every face of codimension at least two has a strongly
/// connected link. Gluing ridges never identifies two faces whose stars
/// are not joined through ridges, so a complex failing this is not t-LC for
/// any t.
pub fn is_normal(k: &SimplicialComplex) -> Result<bool, ComplexError> {
    let d = k.dim();
    for f in k.all_faces() {
        if f.dim() > d - 2 {
            continue;
        }
        let l = k.link(&f)?;
        if !l.is_strongly_connected()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Calls `visit` on every spanning tree of the dual graph, as lists of
/// facet-index pairs, until it breaks. Returns false if the budget ran out.
pub fn spanning_trees<F>(k: &SimplicialComplex, budget: &Budget, mut visit: F) -> bool
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    let g = k.dual_graph();
    let n = k.num_facets();
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.a, e.b)).collect();
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    let mut out_of_budget = false;
    let uf = UnionFind::new(n);
    let _ = rec(&edges, 0, n, uf, &mut chosen, &mut vec![false; edges.len()], budget, &mut out_of_budget, &mut visit);
    !out_of_budget
}

#[allow(clippy::too_many_arguments)]
fn rec<F>(
    edges: &[(usize, usize)],
    i: usize,
    n: usize,
    uf: UnionFind,
    chosen: &mut Vec<(usize, usize)>,
    dropped: &mut Vec<bool>,
    budget: &Budget,
    oob: &mut bool,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    if budget.exhausted() {
        *oob = true;
        return ControlFlow::Break(());
    }
    if chosen.len() + 1 == n || n == 0 {
        return visit(chosen);
    }
    if i == edges.len() {
        return ControlFlow::Continue(());
    }
    let (a, b) = edges[i];
    if uf.find_const(a) != uf.find_const(b) {
        let mut with = uf.clone();
        with.union(a, b);
        chosen.push((a, b));
        let r = rec(edges, i + 1, n, with, chosen, dropped, budget, oob, visit);
        chosen.pop();
        r?;
    }
    // skipping edge i must leave the graph connected
    dropped[i] = true;
    let mut rest = uf.clone();
    for (j, &(x, y)) in edges.iter().enumerate().skip(i + 1) {
        if !dropped[j] {
            rest.union(x, y);
        }
    }
    let connected = (0..n).all(|v| rest.find_const(v) == rest.find_const(0));
    let r = if connected { rec(edges, i + 1, n, uf, chosen, dropped, budget, oob, visit) } else { ControlFlow::Continue(()) };
    dropped[i] = false;
    r
}

const BATCH: usize = 64;

/// Decides whether `k` is t-LC. A positive answer carries a replayable
/// witness whose labelled final complex is `k`; a negative answer means
/// every spanning tree was tried.
pub fn is_t_lc(k: &SimplicialComplex, t: usize, budget: &Budget) -> Result<RecognitionResult, ComplexError> {
    if k.num_facets() == 0 || !k.is_pseudomanifold() {
        return Err(ComplexError::Invalid("input must be a pseudomanifold".into()));
    }
    let mut result =
        RecognitionResult { verdict: Verdict::False, witness: None, schedule: None, stats: SearchStats::default(), reason: None };
    if !k.is_strongly_connected()? {
        result.reason = Some("not strongly connected".into());
        return Ok(result);
    }
    if !is_normal(k)? {
        result.reason = Some("some face link is not strongly connected".into());
        return Ok(result);
    }
    let mut run = Run { k, t, budget, batch: Vec::with_capacity(BATCH), found: None, indeterminate: false, stats: SearchStats::default() };
    let finished = spanning_trees(k, budget, |edges| {
        run.batch.push(edges.to_vec());
        if run.batch.len() == BATCH {
            run.flush()
        } else {
            ControlFlow::Continue(())
        }
    });
    if run.found.is_none() && !run.indeterminate {
        let _ = run.flush();
    }
    result.stats = run.stats;
    if let Some((u, order, tree_edges)) = run.found {
        result.verdict = Verdict::True;
        result.witness = Some(u.construction(t, &order));
        result.schedule = Some(RidgeSchedule { tree_edges, order });
    } else if run.indeterminate || !finished {
        result.verdict = Verdict::Indeterminate;
    }
    Ok(result)
}

struct Run<'a> {
    k: &'a SimplicialComplex,
    t: usize,
    budget: &'a Budget,
    batch: Vec<Vec<(usize, usize)>>,
    found: Option<(Unfolding, Vec<Face>, Vec<(usize, usize)>)>,
    indeterminate: bool,
    stats: SearchStats,
}

impl Run<'_> {
    /// Tries the pending trees in parallel; the first success in
    /// enumeration order wins, so the witness does not depend on scheduling.
    fn flush(&mut self) -> ControlFlow<()> {
        let (k, t, budget) = (self.k, self.t, self.budget);
        let outcomes: Vec<Result<(Unfolding, Vec<Face>), Realization>> = self
            .batch
            .par_iter()
            .map(|edges| {
                let u = Unfolding::new(k, edges);
                let ridges: Vec<Face> = u.cuts.keys().cloned().collect();
                let moves: Vec<_> = ridges.iter().map(|r| u.cuts[r].clone()).collect();
                match realize_greedy(&u.cw(), &moves, t, budget) {
                    Realization::Ordered(order) => Ok((u, order.into_iter().map(|i| ridges[i].clone()).collect())),
                    r => Err(r),
                }
            })
            .collect();
        self.stats.trees_tried += self.batch.len() as u64;
        self.stats.orderings_tried += self.batch.len() as u64;
        for (i, r) in outcomes.into_iter().enumerate() {
            match r {
                Ok((u, order)) => {
                    self.found = Some((u, order, self.batch[i].clone()));
                    return ControlFlow::Break(());
                }
                Err(Realization::OutOfBudget) => {
                    self.indeterminate = true;
                    return ControlFlow::Break(());
                }
                Err(_) => {}
            }
        }
        self.batch.clear();
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_tree_counts() {
        // Cayley: K4 has 16 spanning trees, K5 has 125
        for (d, want) in [(2, 16), (3, 125)] {
            let k = SimplicialComplex::boundary_of_simplex(d);
            let mut n = 0;
            assert!(spanning_trees(&k, &Budget::unlimited(), |_| {
                n += 1;
                ControlFlow::Continue(())
            }));
            assert_eq!(n, want);
        }
    }

    #[test]
    fn sphere_is_lc() {
        let k = SimplicialComplex::boundary_of_simplex(3);
        let r = is_t_lc(&k, 1, &Budget::unlimited()).unwrap();
        assert_eq!(r.verdict, Verdict::True);
        let w = r.witness.unwrap();
        let rep = w.replay();
        assert!(rep.is_valid());
        assert_eq!(w.labelled_complex(&rep.state).unwrap(), k);
    }

    #[test]
    fn pinched_is_not_lc() {
        // a cylinder with both ends coned to the same apex
        let k = SimplicialComplex::from_vecs(&[
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 0, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![0, 5, 3],
            vec![6, 0, 1],
            vec![6, 1, 2],
            vec![6, 2, 0],
            vec![6, 3, 4],
            vec![6, 4, 5],
            vec![6, 5, 3],
        ])
        .unwrap();
        assert!(k.is_pseudomanifold());
        assert!(!is_normal(&k).unwrap());
        let r = is_t_lc(&k, 2, &Budget::unlimited()).unwrap();
        assert_eq!(r.verdict, Verdict::False);
    }
}
