//! Classification of compact triangulated surfaces, possibly with boundary,
//! given as triangles with explicit vertex and edge identities. Edge and
//! vertex ids are arbitrary, so CW links with parallel edges are fine.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};
use crate::union_find::UnionFind;

/// One triangle; `e[k]` is the edge opposite `v[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tri {
    pub v: [usize; 3],
    pub e: [usize; 3],
}

impl Tri {
    fn ends(&self, k: usize) -> (usize, usize) {
        (self.v[(k + 1) % 3], self.v[(k + 2) % 3])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangulatedSurface {
    pub tris: Vec<Tri>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceClass {
    pub orientable: bool,
    /// Genus when orientable, number of crosscaps otherwise.
    pub genus: i64,
    pub boundary_circles: usize,
    pub euler: i64,
}

impl SurfaceClass {
    pub fn is_sphere(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundary_circles == 0
    }

    pub fn is_disk(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundary_circles == 1
    }

    pub fn is_planar(&self) -> bool {
        self.orientable && self.genus == 0
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NotASurface {
    #[error("edge {0} lies in more than two triangles")]
    BranchedEdge(usize),
    #[error("vertex {0} has a disconnected neighbourhood")]
    PinchedVertex(usize),
    #[error("triangle {0} repeats a vertex or an edge")]
    DegenerateTriangle(usize),
    #[error("complex is not a pure 2-complex")]
    NotTwoDimensional,
    #[error("surface has {0} components")]
    Disconnected(usize),
}

impl TriangulatedSurface {
    /// Uses the face labels of a pure simplicial 2-complex.
    pub fn from_complex(k: &SimplicialComplex) -> Result<Self, NotASurface> {
        if k.dim() != 2 || !k.is_pure() {
            return Err(NotASurface::NotTwoDimensional);
        }
        let mut edges: HashMap<Face, usize> = HashMap::new();
        let mut tris = Vec::new();
        for f in k.facets() {
            let v = f.vertices();
            let mut e = [0; 3];
            for (i, slot) in e.iter_mut().enumerate() {
                let edge = f.without_vertex(v[i]);
                let n = edges.len();
                *slot = *edges.entry(edge).or_insert(n);
            }
            tris.push(Tri { v: [v[0] as usize, v[1] as usize, v[2] as usize], e });
        }
        Ok(TriangulatedSurface { tris })
    }

    fn edge_tris(&self) -> BTreeMap<usize, Vec<(usize, usize)>> {
        let mut m: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (t, tri) in self.tris.iter().enumerate() {
            for k in 0..3 {
                m.entry(tri.e[k]).or_default().push((t, k));
            }
        }
        m
    }

    fn check_edges(&self) -> Result<BTreeMap<usize, Vec<(usize, usize)>>, NotASurface> {
        for (t, tri) in self.tris.iter().enumerate() {
            let vs: BTreeSet<usize> = tri.v.iter().copied().collect();
            let es: BTreeSet<usize> = tri.e.iter().copied().collect();
            if vs.len() < 3 || es.len() < 3 {
                return Err(NotASurface::DegenerateTriangle(t));
            }
        }
        let et = self.edge_tris();
        if let Some((&e, _)) = et.iter().find(|(_, ts)| ts.len() > 2) {
            return Err(NotASurface::BranchedEdge(e));
        }
        Ok(et)
    }

    /// Components of the neighbourhood graph of each vertex: nodes are the
    /// incident edges, one arc per triangle corner.
    pub fn vertex_link_components(&self) -> BTreeMap<usize, Vec<LocalComponent>> {
        let mut corners: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let mut incident: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for tri in &self.tris {
            for k in 0..3 {
                let v = tri.v[k];
                let (a, b) = (tri.e[(k + 1) % 3], tri.e[(k + 2) % 3]);
                corners.entry(v).or_default().push((a, b));
                incident.entry(v).or_default().extend([a, b]);
            }
        }
        let mut out = BTreeMap::new();
        for (v, nodes) in incident {
            let nodes: Vec<usize> = nodes.into_iter().collect();
            let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let mut uf = UnionFind::new(nodes.len());
            let mut deg = vec![0usize; nodes.len()];
            let cs = &corners[&v];
            for &(a, b) in cs {
                uf.union(pos[&a], pos[&b]);
                deg[pos[&a]] += 1;
                deg[pos[&b]] += 1;
            }
            let mut comps: BTreeMap<usize, LocalComponent> = BTreeMap::new();
            for (i, &e) in nodes.iter().enumerate() {
                let c = comps.entry(uf.find(i)).or_default();
                c.edges.push(e);
                if deg[i] < 2 {
                    c.ends.push(e);
                }
            }
            out.insert(v, comps.into_values().collect());
        }
        out
    }

    /// Splits every vertex into one copy per neighbourhood component. Returns
    /// the new surface and, for each new vertex id, the old one.
    pub fn unpinch(&self) -> (TriangulatedSurface, Vec<usize>) {
        let comps = self.vertex_link_components();
        let mut new_id: HashMap<(usize, usize), usize> = HashMap::new();
        let mut origin = Vec::new();
        for (&v, cs) in &comps {
            for (i, c) in cs.iter().enumerate() {
                for &e in &c.edges {
                    new_id.insert((v, e), origin.len());
                }
                let _ = i;
                origin.push(v);
            }
        }
        let tris = self
            .tris
            .iter()
            .map(|t| {
                let mut v = t.v;
                for k in 0..3 {
                    v[k] = new_id[&(t.v[k], t.e[(k + 1) % 3])];
                }
                Tri { v, e: t.e }
            })
            .collect();
        (TriangulatedSurface { tris }, origin)
    }

    /// Triangle connectivity through shared edges.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.tris.len());
        for ts in self.edge_tris().values() {
            for w in ts.windows(2) {
                uf.union(w[0].0, w[1].0);
            }
        }
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for t in 0..self.tris.len() {
            m.entry(uf.find(t)).or_default().push(t);
        }
        m.into_values().collect()
    }

    /// Boundary edges (in one triangle) with their endpoints.
    pub fn boundary_edges(&self) -> Vec<(usize, usize, usize)> {
        self.edge_tris()
            .into_iter()
            .filter(|(_, ts)| ts.len() == 1)
            .map(|(e, ts)| {
                let (t, k) = ts[0];
                let (a, b) = self.tris[t].ends(k);
                (e, a, b)
            })
            .collect()
    }

    /// Connected components of the boundary graph, as sets of vertex ids.
    pub fn boundary_components(&self) -> Vec<BTreeSet<usize>> {
        let be = self.boundary_edges();
        let verts: BTreeSet<usize> = be.iter().flat_map(|&(_, a, b)| [a, b]).collect();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for &(_, a, b) in &be {
            uf.union(pos[&a], pos[&b]);
        }
        let mut m: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &v in &verts {
            m.entry(uf.find(pos[&v])).or_default().insert(v);
        }
        m.into_values().collect()
    }

    /// Classifies each connected component. Fails if some edge is branched
    /// or some vertex neighbourhood is neither a path nor a cycle.
    pub fn classify_components(&self) -> Result<Vec<SurfaceClass>, NotASurface> {
        let et = self.check_edges()?;
        for (v, cs) in self.vertex_link_components() {
            if cs.len() != 1 {
                return Err(NotASurface::PinchedVertex(v));
            }
        }
        let mut sign = vec![0i8; self.tris.len()];
        let mut orientable_comp: BTreeMap<usize, bool> = BTreeMap::new();
        let comps = self.components();
        let mut comp_of = vec![0; self.tris.len()];
        for (ci, ts) in comps.iter().enumerate() {
            for &t in ts {
                comp_of[t] = ci;
            }
        }
        for (ci, ts) in comps.iter().enumerate() {
            let mut ok = true;
            let start = ts[0];
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for k in 0..3 {
                    let (a, b) = self.tris[t].ends(k);
                    let dir = if sign[t] > 0 { (a, b) } else { (b, a) };
                    for &(u, kk) in &et[&self.tris[t].e[k]] {
                        if u == t && kk == k {
                            continue;
                        }
                        let (c, dd) = self.tris[u].ends(kk);
                        // coherent neighbours traverse the shared edge in opposite directions
                        let want = if (c, dd) == (dir.1, dir.0) { 1 } else { -1 };
                        if sign[u] == 0 {
                            sign[u] = want;
                            stack.push(u);
                        } else if sign[u] != want {
                            ok = false;
                        }
                    }
                }
            }
            orientable_comp.insert(ci, ok);
        }
        let boundary = self.boundary_components();
        let mut out = Vec::new();
        for (ci, ts) in comps.iter().enumerate() {
            let vs: BTreeSet<usize> = ts.iter().flat_map(|&t| self.tris[t].v).collect();
            let es: BTreeSet<usize> = ts.iter().flat_map(|&t| self.tris[t].e).collect();
            let euler = vs.len() as i64 - es.len() as i64 + ts.len() as i64;
            let b = boundary.iter().filter(|bc| bc.iter().next().is_some_and(|v| vs.contains(v))).count();
            let orientable = orientable_comp[&ci];
            let genus = if orientable { (2 - b as i64 - euler) / 2 } else { 2 - b as i64 - euler };
            out.push(SurfaceClass { orientable, genus, boundary_circles: b, euler });
        }
        Ok(out)
    }

    pub fn classify(&self) -> Result<SurfaceClass, NotASurface> {
        let cs = self.classify_components()?;
        if cs.len() != 1 {
            return Err(NotASurface::Disconnected(cs.len()));
        }
        Ok(cs[0])
    }
}

/// One component of a vertex neighbourhood: its edges and the edges at its
/// ends (empty for a cycle).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalComponent {
    pub edges: Vec<usize>,
    pub ends: Vec<usize>,
}

impl LocalComponent {
    pub fn is_cycle(&self) -> bool {
        self.ends.is_empty()
    }
}

/// Classifies a connected simplicial surface.
pub fn classify_surface(k: &SimplicialComplex) -> Result<SurfaceClass, NotASurface> {
    TriangulatedSurface::from_complex(k)?.classify()
}
