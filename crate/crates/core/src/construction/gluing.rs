//! Gluing moves: identifications of two boundary (d-1)-cells.

use serde::{Deserialize, Serialize};

use crate::complex::VertexId;
use crate::cw::{CellId, CwComplex};
use crate::error::GluingError;

/// `map` sends the base vertices of `a` to those of `b`, sorted by source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GluingMove {
    pub a: CellId,
    pub b: CellId,
    pub map: Vec<(VertexId, VertexId)>,
}

impl GluingMove {
    pub fn new(a: CellId, b: CellId, mut map: Vec<(VertexId, VertexId)>) -> Self {
        map.sort_unstable();
        GluingMove { a, b, map }
    }

    /// The same identification written from `b` to `a`.
    pub fn reversed(&self) -> Self {
        GluingMove::new(self.b, self.a, self.map.iter().map(|&(x, y)| (y, x)).collect())
    }

    /// Orientation with the smaller cell first.
    pub fn normalized(&self) -> Self {
        if self.a <= self.b {
            self.clone()
        } else {
            self.reversed()
        }
    }
}

/// Every vertex map from `a` to `b` fixing their common vertices, in lexicographic order.
pub fn bijections(state: &CwComplex, a: CellId, b: CellId) -> Vec<Vec<(VertexId, VertexId)>> {
    let base = state.base();
    let va = base.face(a).vertices();
    let vb = base.face(b).vertices();
    let mut fixed: Vec<Option<VertexId>> = vec![None; va.len()];
    let mut taken = vec![false; vb.len()];
    for (i, &x) in va.iter().enumerate() {
        let cx = state.vertex_class(x);
        if let Some(j) = vb.iter().position(|&y| state.vertex_class(y) == cx) {
            fixed[i] = Some(vb[j]);
            taken[j] = true;
        }
    }
    let free_src: Vec<usize> = (0..va.len()).filter(|&i| fixed[i].is_none()).collect();
    let free_dst: Vec<VertexId> = (0..vb.len()).filter(|&j| !taken[j]).map(|j| vb[j]).collect();
    let mut out = Vec::new();
    permute(&free_dst, &mut Vec::new(), &mut vec![false; free_dst.len()], &mut |perm| {
        let mut map: Vec<(VertexId, VertexId)> = Vec::with_capacity(va.len());
        for (i, &x) in va.iter().enumerate() {
            let y = match fixed[i] {
                Some(y) => y,
                None => perm[free_src.iter().position(|&s| s == i).unwrap()],
            };
            map.push((x, y));
        }
        out.push(map);
    });
    out
}

fn permute<F: FnMut(&[VertexId])>(items: &[VertexId], cur: &mut Vec<VertexId>, used: &mut Vec<bool>, f: &mut F) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permute(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Required intersection dimension for a t-local gluing in dimension d.
pub fn threshold(d: usize, t: usize) -> isize {
    d as isize - 1 - t as isize
}

/// All t-admissible moves on unordered pairs of boundary cells.
pub fn admissible_moves(state: &CwComplex, t: usize) -> Vec<GluingMove> {
    let bd = state.boundary_cells();
    let need = threshold(state.dim(), t);
    let mut out = Vec::new();
    for (i, &a) in bd.iter().enumerate() {
        for &b in &bd[i + 1..] {
            if state.intersection_dim(a, b) >= need {
                out.extend(bijections(state, a, b).into_iter().map(|m| GluingMove::new(a, b, m)));
            }
        }
    }
    out
}

/// Checks that `mv` is a t-local gluing in `state`: both cells on the
/// boundary, intersection large enough and fixed pointwise by the map.
pub fn check_admissible(state: &CwComplex, mv: &GluingMove, t: usize) -> Result<(), GluingError> {
    let base = state.base();
    for c in [mv.a, mv.b] {
        if c >= base.num_faces() || !state.is_boundary_cell(c) {
            return Err(GluingError::NotBoundary(c));
        }
    }
    if mv.a == mv.b {
        return Err(GluingError::SameCell(mv.a));
    }
    state.positions(mv.a, mv.b, &mv.map)?;
    let found = state.intersection_dim(mv.a, mv.b);
    let required = threshold(state.dim(), t);
    if found < required {
        return Err(GluingError::NotAdmissible { found, required });
    }
    let vb = base.face(mv.b).vertices();
    for &(x, y) in &mv.map {
        let cx = state.vertex_class(x);
        if vb.iter().any(|&z| state.vertex_class(z) == cx) && state.vertex_class(y) != cx {
            return Err(GluingError::MovesIntersection);
        }
    }
    Ok(())
}

pub fn apply_gluing(state: &CwComplex, mv: &GluingMove) -> Result<CwComplex, GluingError> {
    state.glue(mv.a, mv.b, &mv.map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Face, SimplicialComplex};

    fn cw(f: &[Vec<u32>]) -> CwComplex {
        CwComplex::from_complex(&SimplicialComplex::from_vecs(f).unwrap()).unwrap()
    }

    #[test]
    fn single_simplices() {
        assert_eq!(admissible_moves(&cw(&[vec![0, 1, 2, 3]]), 1).len(), 6);
        assert_eq!(admissible_moves(&cw(&[vec![0, 1, 2]]), 1).len(), 3);
        // t = d also admits disjoint pairs: none exist in a single simplex
        assert_eq!(admissible_moves(&cw(&[vec![0, 1, 2]]), 2).len(), 3);
    }

    #[test]
    fn vertex_sharing_pair_has_two_maps() {
        let s = cw(&[vec![0, 1, 2, 3], vec![1, 2, 3, 4], vec![2, 3, 4, 5], vec![3, 4, 5, 6]]);
        let id = |f: [u32; 3]| s.base().face_id(&Face::from(f)).unwrap();
        let (a, b) = (id([0, 1, 3]), id([3, 5, 6]));
        assert_eq!(s.intersection_dim(a, b), 0);
        assert_eq!(bijections(&s, a, b).len(), 2);
        let moves = admissible_moves(&s, 2);
        assert_eq!(moves.iter().filter(|m| m.a == a && m.b == b).count(), 2);
        assert!(admissible_moves(&s, 1).iter().all(|m| !(m.a == a && m.b == b)));
    }

    #[test]
    fn admissibility_errors() {
        let s = cw(&[vec![0, 1, 2], vec![1, 2, 3]]);
        let id = |f: [u32; 2]| s.base().face_id(&Face::from(f)).unwrap();
        let bad = GluingMove::new(id([0, 1]), id([1, 3]), vec![(0, 1), (1, 3)]);
        assert_eq!(check_admissible(&s, &bad, 1), Err(GluingError::MovesIntersection));
        let inner = GluingMove::new(id([1, 2]), id([0, 1]), vec![(1, 1), (2, 0)]);
        assert_eq!(check_admissible(&s, &inner, 1), Err(GluingError::NotBoundary(id([1, 2]))));
    }
}
