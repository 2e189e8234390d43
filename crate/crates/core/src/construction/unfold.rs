//! Cutting a pseudomanifold open along the complement of a spanning tree of
//! its dual graph gives a tree of simplices; gluing the cut ridges back in
//! some order is a candidate local construction.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::gluing::GluingMove;
use super::replay::LocalConstruction;
use super::tree::{Attachment, TreeOfSimplices};
use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::cw::CwComplex;

/// A pseudomanifold cut open along a spanning tree.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub tree: TreeOfSimplices,
    /// Tree vertex to vertex of the complex.
    pub labels: Vec<VertexId>,
    /// One move per cut ridge, keyed by the ridge.
    pub cuts: BTreeMap<Face, GluingMove>,
}

impl Unfolding {
    /// `edges` are pairs of facet indices of `k`, forming a spanning tree of
    /// its dual graph. Facet 0 becomes simplex 0.
    pub fn new(k: &SimplicialComplex, edges: &[(usize, usize)]) -> Self {
        let d = k.dim() as usize;
        let facets = k.facets();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); facets.len()];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        // local[f]: vertex of k -> tree vertex, for the copy of facet f
        let mut local: Vec<HashMap<VertexId, VertexId>> = vec![HashMap::new(); facets.len()];
        let mut order = vec![usize::MAX; facets.len()];
        let mut labels: Vec<VertexId> = facets[0].vertices().to_vec();
        for (i, &v) in facets[0].vertices().iter().enumerate() {
            local[0].insert(v, i as VertexId);
        }
        order[0] = 0;
        let mut att = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if order[g] != usize::MAX {
                    continue;
                }
                let ridge = facets[f].intersection(&facets[g]);
                let drop = facets[f].difference(&ridge).vertices()[0];
                let fresh = facets[g].difference(&ridge).vertices()[0];
                att.push(Attachment { parent: order[f], opposite: local[f][&drop] });
                let mut m: HashMap<VertexId, VertexId> =
                    ridge.vertices().iter().map(|v| (*v, local[f][v])).collect();
                m.insert(fresh, (d + count) as VertexId);
                labels.push(fresh);
                local[g] = m;
                order[g] = count;
                count += 1;
                queue.push_back(g);
            }
        }
        let tree = TreeOfSimplices::new(d, att).expect("spanning tree unfolds to a tree");
        let cw = tree.cw();
        let base = cw.base();
        let tree_edges: std::collections::HashSet<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let mut cuts = BTreeMap::new();
        for e in k.dual_graph().edges {
            if tree_edges.contains(&(e.a.min(e.b), e.a.max(e.b))) {
                continue;
            }
            let face_in = |f: usize| -> Face { Face::new(e.ridge.vertices().iter().map(|v| local[f][v])).unwrap() };
            let (fa, fb) = (face_in(e.a), face_in(e.b));
            let (a, b) = (base.face_id(&fa).unwrap(), base.face_id(&fb).unwrap());
            let map = e.ridge.vertices().iter().map(|v| (local[e.a][v], local[e.b][v])).collect();
            let mv = GluingMove::new(a, b, map).normalized();
            cuts.insert(e.ridge.clone(), mv);
        }
        Unfolding { tree, labels, cuts }
    }

    pub fn cw(&self) -> CwComplex {
        self.tree.cw()
    }

    /// Local construction gluing the cut ridges in the given order.
    pub fn construction(&self, t: usize, order: &[Face]) -> LocalConstruction {
        LocalConstruction {
            t,
            tree: self.tree.clone(),
            moves: order.iter().map(|r| self.cuts[r].clone()).collect(),
            labels: Some(self.labels.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{realize_greedy, Realization};
    use crate::Budget;

    #[test]
    fn regluing_the_cuts_gives_back_the_complex() {
        let k = SimplicialComplex::boundary_of_simplex(3);
        let edges = [(0, 1), (0, 2), (0, 3), (0, 4)];
        let u = Unfolding::new(&k, &edges);
        assert_eq!(u.tree.len(), 5);
        // 10 ridges, 4 kept by the spanning tree
        assert_eq!(u.cuts.len(), 6);
        let moves: Vec<GluingMove> = u.cuts.values().cloned().collect();
        let Realization::Ordered(ix) = realize_greedy(&u.cw(), &moves, 1, &Budget::unlimited()) else {
            panic!("a star unfolding of a sphere is 1-LC")
        };
        let ridges: Vec<Face> = u.cuts.keys().cloned().collect();
        let order: Vec<Face> = ix.iter().map(|&i| ridges[i].clone()).collect();
        let lc = u.construction(1, &order);
        let r = lc.replay();
        assert!(r.is_valid());
        assert_eq!(lc.labelled_complex(&r.state).unwrap(), k);
    }
}
