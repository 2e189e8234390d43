//! Simplicial regular CW complexes obtained from a simplicial complex by
//! identifying faces. The base complex is fixed; a state is a partition of
//! its faces into cells.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::complex::{subset_by_mask, Face, SimplicialComplex, VertexId};
use crate::error::{ComplexError, GluingError};
use crate::union_find::UnionFind;

/// Index of a face of the base complex. A cell is named by the smallest
/// base face it contains.
pub type CellId = usize;

const NONE: usize = usize::MAX;

/// All nonempty faces of a pure simplicial complex, sorted by (dimension, lex).
#[derive(Debug)]
pub struct BaseComplex {
    d: usize,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    dim_start: Vec<usize>,
    /// For face f, `sub[f][mask]` is the face spanned by the positions in mask.
    sub: Vec<Vec<usize>>,
    /// Number of d-faces containing each face of dimension d-1 (0 elsewhere).
    top_cofaces: Vec<u8>,
    /// Base vertex label of each 0-face, equal to its index.
    num_vertices: usize,
}

impl BaseComplex {
    /// Builds the face table. Vertex labels must be exactly 0..n.
    pub fn new(k: &SimplicialComplex) -> Result<Self, ComplexError> {
        if !k.is_pure() || k.num_facets() == 0 {
            return Err(ComplexError::NotPure);
        }
        let verts = k.vertices();
        if verts.iter().enumerate().any(|(i, &v)| v as usize != i) {
            return Err(ComplexError::Invalid("vertex labels must be 0..n".into()));
        }
        let d = k.dim() as usize;
        let mut faces: Vec<Face> = k.all_faces().into_iter().filter(|f| !f.is_empty()).collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Face, usize> = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut dim_start = vec![0; d + 2];
        for (i, f) in faces.iter().enumerate().rev() {
            dim_start[f.len() - 1] = i;
        }
        dim_start[d + 1] = faces.len();
        let sub: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| {
                let n = f.len();
                (0u32..(1 << n))
                    .map(|m| {
                        if m == 0 {
                            NONE
                        } else {
                            index[&Face::from_sorted(subset_by_mask(f.vertices(), m))]
                        }
                    })
                    .collect()
            })
            .collect();
        let mut top_cofaces = vec![0u8; faces.len()];
        for f in &faces[dim_start[d]..] {
            for r in f.boundary_faces() {
                top_cofaces[index[&r]] += 1;
            }
        }
        Ok(BaseComplex { d, faces, index, dim_start, sub, top_cofaces, num_vertices: verts.len() })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn face_id(&self, f: &Face) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn faces_of_dim(&self, k: usize) -> std::ops::Range<usize> {
        self.dim_start[k]..self.dim_start[k + 1]
    }

    pub fn top_faces(&self) -> std::ops::Range<usize> {
        self.faces_of_dim(self.d)
    }

    pub fn face_dim(&self, id: usize) -> usize {
        self.faces[id].len() - 1
    }

    /// Subface of `f` spanned by the vertex positions in `mask`.
    pub fn sub(&self, f: usize, mask: u32) -> usize {
        self.sub[f][mask as usize]
    }

    pub fn top_coface_count(&self, f: usize) -> usize {
        self.top_cofaces[f] as usize
    }

    /// Position of base vertex `v` in face `f`.
    pub fn position(&self, f: usize, v: VertexId) -> Option<usize> {
        self.faces[f].vertices().iter().position(|&x| x == v)
    }
}

/// A regular CW state: the base complex with some faces identified.
#[derive(Clone, Debug)]
pub struct CwComplex {
    base: Arc<BaseComplex>,
    uf: UnionFind,
}

impl PartialEq for CwComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) && self.uf.parents() == other.uf.parents()
    }
}

impl Eq for CwComplex {}

impl CwComplex {
    pub fn new(base: Arc<BaseComplex>) -> Self {
        let n = base.num_faces();
        CwComplex { base, uf: UnionFind::new(n) }
    }

    pub fn from_complex(k: &SimplicialComplex) -> Result<Self, ComplexError> {
        Ok(Self::new(Arc::new(BaseComplex::new(k)?)))
    }

    pub fn base(&self) -> &Arc<BaseComplex> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.d
    }

    /// Cell containing base face `f`.
    pub fn cell(&self, f: usize) -> CellId {
        self.uf.find_const(f)
    }

    /// Cell of the vertex with base label `v`.
    pub fn vertex_class(&self, v: VertexId) -> CellId {
        self.cell(v as usize)
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<CellId> {
        self.base.faces_of_dim(k).filter(|&f| self.cell(f) == f).collect()
    }

    pub fn num_cells(&self, k: usize) -> usize {
        self.base.faces_of_dim(k).filter(|&f| self.cell(f) == f).count()
    }

    /// Number of d-cells whose boundary contains the (d-1)-cell `c`.
    pub fn top_coface_count(&self, c: CellId) -> usize {
        self.base
            .faces_of_dim(self.base.d - 1)
            .filter(|&f| self.cell(f) == c)
            .map(|f| self.base.top_coface_count(f))
            .sum()
    }

    /// True when `c` is a (d-1)-cell lying in exactly one d-cell.
    pub fn is_boundary_cell(&self, c: CellId) -> bool {
        let b = &self.base;
        b.face_dim(c) == b.d - 1 && self.cell(c) == c && b.top_coface_count(c) == 1 && self.is_unglued(c)
    }

    fn is_unglued(&self, c: CellId) -> bool {
        // (d-1)-classes are singletons or the pair produced by one gluing;
        // a singleton root has no other member pointing to it
        let b = &self.base;
        b.faces_of_dim(b.d - 1).filter(|&f| self.cell(f) == c).count() == 1
    }

    /// Boundary (d-1)-cells in increasing id order.
    pub fn boundary_cells(&self) -> Vec<CellId> {
        let b = &self.base;
        let mut cnt = vec![0u8; b.num_faces()];
        for f in b.faces_of_dim(b.d - 1) {
            cnt[self.cell(f)] += b.top_cofaces[f];
        }
        b.faces_of_dim(b.d - 1).filter(|&f| self.cell(f) == f && cnt[f] == 1).collect()
    }

    /// Interior (d-1)-cells.
    pub fn interior_cells(&self) -> Vec<CellId> {
        let b = &self.base;
        let mut cnt = vec![0u8; b.num_faces()];
        for f in b.faces_of_dim(b.d - 1) {
            cnt[self.cell(f)] += b.top_cofaces[f];
        }
        b.faces_of_dim(b.d - 1).filter(|&f| self.cell(f) == f && cnt[f] >= 2).collect()
    }

    /// Sorted vertex classes of a cell.
    pub fn cell_vertices(&self, c: CellId) -> Vec<CellId> {
        let mut v: Vec<CellId> = self.base.faces[c].vertices().iter().map(|&x| self.vertex_class(x)).collect();
        v.sort_unstable();
        v
    }

    /// Boundary cells of `c`, one dimension lower, in order of the dropped vertex.
    pub fn cell_boundary(&self, c: CellId) -> Vec<CellId> {
        let n = self.base.faces[c].len();
        if n <= 1 {
            return Vec::new();
        }
        let full = (1u32 << n) - 1;
        (0..n).map(|i| self.cell(self.base.sub(c, full & !(1 << i)))).collect()
    }

    /// All cells of the closure of `c` (excluding the empty cell) with their dimensions.
    pub fn cell_faces(&self, c: CellId) -> Vec<CellId> {
        let n = self.base.faces[c].len();
        (1u32..(1 << n)).map(|m| self.cell(self.base.sub(c, m))).collect()
    }

    /// Dimension of the largest common face of two cells, -1 when none.
    pub fn intersection_dim(&self, a: CellId, b: CellId) -> isize {
        let base = &self.base;
        let n = base.faces[a].len();
        let mut fa: Vec<CellId> = (1u32..(1 << n)).map(|m| self.cell(base.sub(a, m))).collect();
        fa.sort_unstable();
        let nb = base.faces[b].len();
        let mut best = -1isize;
        for m in 1u32..(1 << nb) {
            let dim = m.count_ones() as isize - 1;
            if dim > best && fa.binary_search(&self.cell(base.sub(b, m))).is_ok() {
                best = dim;
            }
        }
        best
    }

    /// Applies an identification of two boundary (d-1)-cells. `map` sends
    /// base vertices of `a` to base vertices of `b`. Admissibility in the
    /// t-local sense is not checked here.
    pub fn glue(&self, a: CellId, b: CellId, map: &[(VertexId, VertexId)]) -> Result<CwComplex, GluingError> {
        let base = &self.base;
        if a == b {
            return Err(GluingError::SameCell(a));
        }
        for c in [a, b] {
            if c >= base.num_faces() || base.face_dim(c) != base.d - 1 || !self.is_boundary_cell(c) {
                return Err(GluingError::NotBoundary(c));
            }
        }
        let perm = self.positions(a, b, map)?;
        let mut next = self.clone();
        let n = base.d;
        for m in 1u32..(1 << n) {
            let mut mb = 0u32;
            for (i, &p) in perm.iter().enumerate() {
                if m & (1 << i) != 0 {
                    mb |= 1 << p;
                }
            }
            next.uf.union(base.sub(a, m), base.sub(b, mb));
        }
        next.uf.compress();
        next.check_regular()?;
        Ok(next)
    }

    /// Converts a vertex map into positions: `perm[i]` is the position in `b`
    /// of the image of the i-th vertex of `a`.
    pub(crate) fn positions(&self, a: CellId, b: CellId, map: &[(VertexId, VertexId)]) -> Result<Vec<usize>, GluingError> {
        let base = &self.base;
        let n = base.faces[a].len();
        if map.len() != n {
            return Err(GluingError::BadMap);
        }
        let mut perm = vec![NONE; n];
        let mut used = vec![false; n];
        for &(x, y) in map {
            let i = base.position(a, x).ok_or(GluingError::BadMap)?;
            let j = base.position(b, y).ok_or(GluingError::BadMap)?;
            if perm[i] != NONE || used[j] {
                return Err(GluingError::BadMap);
            }
            perm[i] = j;
            used[j] = true;
        }
        Ok(perm)
    }

    fn check_regular(&self) -> Result<(), GluingError> {
        let base = &self.base;
        for s in base.top_faces() {
            let mut v = self.cell_vertices(s);
            let before = v.len();
            v.dedup();
            if v.len() != before {
                return Err(GluingError::DegenerateCell { cell: s, vertices: base.faces[s].vertices().to_vec() });
            }
        }
        let mut cnt: BTreeMap<CellId, usize> = BTreeMap::new();
        for f in base.faces_of_dim(base.d - 1) {
            *cnt.entry(self.cell(f)).or_insert(0) += base.top_coface_count(f);
        }
        if let Some((&ridge, &count)) = cnt.iter().find(|(_, &c)| c > 2) {
            return Err(GluingError::OverusedRidge { ridge, count });
        }
        Ok(())
    }

    /// Identifier of the partition, suitable as a hash key within one base.
    pub fn partition_key(&self) -> &[usize] {
        self.uf.parents()
    }

    /// Finds two distinct cells with the same vertex set, if any.
    pub fn doubled_cell(&self) -> Option<(Vec<CellId>, Vec<CellId>)> {
        let mut seen: HashMap<Vec<CellId>, CellId> = HashMap::new();
        for f in 0..self.base.num_faces() {
            if self.cell(f) != f {
                continue;
            }
            let vs = self.cell_vertices(f);
            if let Some(&g) = seen.get(&vs) {
                return Some((vs, vec![g, f]));
            }
            seen.insert(vs, f);
        }
        None
    }

    /// The complex as a simplicial complex, with vertex classes relabelled
    /// 0..n in increasing order of their smallest base label.
    pub fn to_simplicial(&self) -> Result<SimplicialComplex, ComplexError> {
        if let Some((vs, cells)) = self.doubled_cell() {
            let vertices = vs.iter().map(|&v| v as VertexId).collect();
            return Err(ComplexError::DoubledCell { vertices, cells });
        }
        Ok(self.facet_sets())
    }

    /// Facets as vertex-class sets, ignoring doubled cells.
    pub(crate) fn facet_sets(&self) -> SimplicialComplex {
        let roots = self.cells_of_dim(0);
        let label: HashMap<CellId, VertexId> = roots.iter().enumerate().map(|(i, &r)| (r, i as VertexId)).collect();
        SimplicialComplex::from_facets(self.base.top_faces().map(|s| {
            Face::new(self.cell_vertices(s).iter().map(|c| label[c])).expect("regular state")
        }))
    }

    /// Boundary complex: closure of the boundary (d-1)-cells, as vertex-class sets.
    pub fn boundary_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            self.boundary_cells()
                .into_iter()
                .map(|c| Face::new(self.cell_vertices(c).iter().map(|&v| v as VertexId)).unwrap()),
        )
    }
}

/// Converts a CW state into a simplicial complex when no cells are doubled.
pub fn cw_to_simplicial(k: &CwComplex) -> Result<SimplicialComplex, ComplexError> {
    k.to_simplicial()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> CwComplex {
        CwComplex::from_complex(&SimplicialComplex::from_vecs(&[vec![0, 1, 2], vec![1, 2, 3]]).unwrap()).unwrap()
    }

    fn id(cw: &CwComplex, f: &[u32]) -> usize {
        cw.base().face_id(&Face::from(f)).unwrap()
    }

    #[test]
    fn sphere_round_trip() {
        let s = SimplicialComplex::boundary_of_simplex(2);
        let cw = CwComplex::from_complex(&s).unwrap();
        assert_eq!(cw.to_simplicial().unwrap(), s);
        assert!(cw.boundary_cells().is_empty());
        assert_eq!(cw.num_cells(1), 6);
    }

    #[test]
    fn boolean_intervals() {
        let cw = CwComplex::from_complex(&SimplicialComplex::simplex(3)).unwrap();
        let top = cw.cells_of_dim(3)[0];
        let faces = cw.cell_faces(top);
        for j in 0..=3usize {
            let n = faces.iter().filter(|&&c| cw.base().face_dim(c) == j).count();
            assert_eq!(n, [4, 6, 4, 1][j]);
        }
    }

    #[test]
    fn open_cone() {
        let cw = two_triangles();
        let a = id(&cw, &[0, 1]);
        let b = id(&cw, &[1, 3]);
        let g = cw.glue(a, b, &[(1, 1), (0, 3)]).unwrap();
        assert_eq!(g.boundary_cells().len(), 2);
        // the two remaining edges share both endpoints but no edge
        assert_eq!(g.intersection_dim(id(&g, &[0, 2]), id(&g, &[2, 3])), 0);
    }

    #[test]
    fn degenerate_glue() {
        let cw = two_triangles();
        let a = id(&cw, &[0, 1]);
        let b = id(&cw, &[0, 2]);
        assert!(matches!(cw.glue(a, b, &[(0, 0), (1, 2)]), Err(GluingError::DegenerateCell { .. })));
    }

    #[test]
    fn doubled_two_gon() {
        let cw = two_triangles();
        let g = cw.glue(id(&cw, &[0, 1]), id(&cw, &[1, 3]), &[(0, 3), (1, 1)]).unwrap();
        let g = g.glue(id(&g, &[0, 2]), id(&g, &[2, 3]), &[(0, 3), (2, 2)]).unwrap();
        assert!(matches!(g.to_simplicial(), Err(ComplexError::DoubledCell { .. })));
    }

    #[test]
    fn tetra_pair_glue() {
        let k = SimplicialComplex::from_vecs(&[vec![0, 1, 2, 3], vec![1, 2, 3, 4]]).unwrap();
        let cw = CwComplex::from_complex(&k).unwrap();
        assert_eq!(cw.boundary_cells().len(), 6);
        let g = cw.glue(id(&cw, &[0, 1, 2]), id(&cw, &[1, 2, 4]), &[(0, 4), (1, 1), (2, 2)]).unwrap();
        assert_eq!(g.boundary_cells().len(), 4);
        assert!(g.glue(id(&cw, &[0, 1, 2]), id(&cw, &[0, 1, 3]), &[(0, 0), (1, 1), (2, 3)]).is_err());
    }
}
