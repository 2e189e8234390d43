//! Filters for gluings that can still end in a manifold: the links of
//! (d-3)-cells are surfaces, and a gluing may only join them along their
//! boundaries without creating handles, crosscaps or pinches.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::gluing::{apply_gluing, GluingMove};
use crate::cw::{CellId, CwComplex};
use crate::error::GluingError;
use crate::homology::surface::{Tri, TriangulatedSurface};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// (i) some link component becomes non-orientable.
    NonOrientable,
    /// (ii) some link component acquires a handle.
    NonPlanar,
    /// (iii) an interior vertex or edge of a link is identified.
    InteriorTouched,
    /// (iv) two boundary components of one link are joined.
    JoinsBoundaryComponents,
    /// The gluing itself is not possible.
    Gluing(GluingError),
}

impl Violation {
    pub fn label(&self) -> &'static str {
        match self {
            Violation::NonOrientable => "i",
            Violation::NonPlanar => "ii",
            Violation::InteriorTouched => "iii",
            Violation::JoinsBoundaryComponents => "iv",
            Violation::Gluing(_) => "gluing",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiViolation {
    /// The (d-3)-cell whose link fails, in the glued state.
    pub cell: CellId,
    pub violation: Violation,
}

/// Link of a (d-3)-cell: one triangle per (top simplex, subface in the
/// cell); vertices are (d-2)-cells and edges are (d-1)-cells.
pub fn link_surface(state: &CwComplex, delta: CellId) -> TriangulatedSurface {
    all_link_surfaces(state, &[delta]).remove(&delta).unwrap_or_default()
}

/// Links of several (d-3)-cells in one pass over the top simplices.
pub fn all_link_surfaces(state: &CwComplex, deltas: &[CellId]) -> BTreeMap<CellId, TriangulatedSurface> {
    let base = state.base();
    let d = base.dim();
    assert!(d >= 3, "links of (d-3)-cells need d >= 3");
    let want: BTreeSet<CellId> = deltas.iter().copied().collect();
    let mut out: BTreeMap<CellId, TriangulatedSurface> = want.iter().map(|&c| (c, TriangulatedSurface::default())).collect();
    let full = (1u32 << (d + 1)) - 1;
    for s in base.top_faces() {
        for m in 1u32..=full {
            if m.count_ones() as usize != d - 2 {
                continue;
            }
            let c = state.cell(base.sub(s, m));
            if !want.contains(&c) {
                continue;
            }
            let rest: Vec<u32> = (0..=d as u32).filter(|p| m & (1 << p) == 0).collect();
            let mut v = [0; 3];
            let mut e = [0; 3];
            for k in 0..3 {
                v[k] = state.cell(base.sub(s, m | (1 << rest[k])));
                e[k] = state.cell(base.sub(s, full & !(1 << rest[k])));
            }
            out.get_mut(&c).unwrap().tris.push(Tri { v, e });
        }
    }
    out
}

fn codim3_cells_of(state: &CwComplex, f: CellId) -> BTreeSet<CellId> {
    let base = state.base();
    let d = base.dim();
    let n = base.face(f).len();
    (1u32..(1 << n))
        .filter(|m| m.count_ones() as usize == d - 2)
        .map(|m| state.cell(base.sub(f, m)))
        .collect()
}

/// Applies `mv` and checks the conditions on every affected link. Returns
/// the glued state when all hold.
pub fn check_quasimanifold_conditions(state: &CwComplex, mv: &GluingMove) -> Result<CwComplex, QuasiViolation> {
    let next = apply_gluing(state, mv).map_err(|e| QuasiViolation { cell: mv.a, violation: Violation::Gluing(e) })?;
    let mut old_deltas = codim3_cells_of(state, mv.a);
    old_deltas.extend(codim3_cells_of(state, mv.b));
    let old_ids: Vec<CellId> = old_deltas.iter().copied().collect();
    let old_links = all_link_surfaces(state, &old_ids);
    let new_deltas: BTreeSet<CellId> = codim3_cells_of(&next, mv.a);
    let new_ids: Vec<CellId> = new_deltas.iter().copied().collect();
    let new_links = all_link_surfaces(&next, &new_ids);
    for &delta in &new_ids {
        let fail = |violation| QuasiViolation { cell: delta, violation };
        let link = &new_links[&delta];
        let (open, _) = link.unpinch();
        let classes = open.classify_components().map_err(|_| fail(Violation::InteriorTouched))?;
        if classes.iter().any(|c| !c.orientable) {
            return Err(fail(Violation::NonOrientable));
        }
        if classes.iter().any(|c| c.genus > 0) {
            return Err(fail(Violation::NonPlanar));
        }
        let preimages: Vec<CellId> = old_ids.iter().copied().filter(|&r| next.cell(r) == delta).collect();
        if touches_interior(&next, link, &preimages, &old_links) {
            return Err(fail(Violation::InteriorTouched));
        }
        if joins_boundary_components(&next, &preimages, &old_links) {
            return Err(fail(Violation::JoinsBoundaryComponents));
        }
    }
    Ok(next)
}

fn touches_interior(
    next: &CwComplex,
    link: &TriangulatedSurface,
    preimages: &[CellId],
    old_links: &BTreeMap<CellId, TriangulatedSurface>,
) -> bool {
    // old link vertices grouped by their new cell
    let mut groups: HashMap<CellId, Vec<bool>> = HashMap::new();
    for r in preimages {
        let comps = old_links[r].vertex_link_components();
        for (v, cs) in comps {
            let interior = cs.iter().any(|c| c.is_cycle());
            groups.entry(next.cell(v)).or_default().push(interior);
        }
    }
    if groups.values().any(|g| g.len() > 1 && g.iter().any(|&i| i)) {
        return true;
    }
    for cs in link.vertex_link_components().values() {
        if cs.len() > 1 && cs.iter().any(|c| c.is_cycle()) {
            return true;
        }
    }
    // parallel edges: a doubled (d-1)-cell that can never be resolved
    let mut uses: HashMap<usize, usize> = HashMap::new();
    let mut ends: HashMap<usize, (usize, usize)> = HashMap::new();
    for t in &link.tris {
        for k in 0..3 {
            *uses.entry(t.e[k]).or_insert(0) += 1;
            let (a, b) = (t.v[(k + 1) % 3], t.v[(k + 2) % 3]);
            ends.insert(t.e[k], (a.min(b), a.max(b)));
        }
    }
    let mut parallel: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, p) in ends {
        parallel.entry(p).or_default().push(e);
    }
    parallel.values().any(|es| es.len() > 2 || (es.len() == 2 && es.iter().any(|e| uses[e] > 1)))
}

fn joins_boundary_components(
    next: &CwComplex,
    preimages: &[CellId],
    old_links: &BTreeMap<CellId, TriangulatedSurface>,
) -> bool {
    for r in preimages {
        let comps = old_links[r].boundary_components();
        let mut seen: HashMap<CellId, usize> = HashMap::new();
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                if let Some(&j) = seen.get(&next.cell(v)) {
                    if j != i {
                        return true;
                    }
                }
                seen.insert(next.cell(v), i);
            }
        }
    }
    false
}

/// Pairs of boundary cells on the same vertex classes. Such a pair must be
/// identified, by the map that is the identity on vertex classes, before
/// the complex can be simplicial.
pub fn forced_gluings(state: &CwComplex) -> Vec<GluingMove> {
    let base = state.base();
    let mut by_set: BTreeMap<Vec<CellId>, Vec<CellId>> = BTreeMap::new();
    for c in state.boundary_cells() {
        by_set.entry(state.cell_vertices(c)).or_default().push(c);
    }
    let mut out = Vec::new();
    for cells in by_set.values() {
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                let vb = base.face(b).vertices();
                let map = base
                    .face(a)
                    .vertices()
                    .iter()
                    .map(|&x| {
                        let y = *vb.iter().find(|&&y| state.vertex_class(y) == state.vertex_class(x)).unwrap();
                        (x, y)
                    })
                    .collect();
                out.push(GluingMove::new(a, b, map));
            }
        }
    }
    out
}

/// True when the state can never become simplicial: two top cells on one
/// vertex set, or (d-1)-cells on one vertex set that cannot all merge.
pub fn is_dead(state: &CwComplex) -> bool {
    let base = state.base();
    let mut tops = BTreeSet::new();
    for s in base.top_faces() {
        if !tops.insert(state.cell_vertices(s)) {
            return true;
        }
    }
    let mut groups: HashMap<Vec<CellId>, (usize, usize)> = HashMap::new();
    for c in state.boundary_cells() {
        groups.entry(state.cell_vertices(c)).or_default().0 += 1;
    }
    for c in state.interior_cells() {
        groups.entry(state.cell_vertices(c)).or_default().1 += 1;
    }
    groups.values().any(|&(b, i)| i > 1 || (i == 1 && b > 0) || b > 2)
}
