//! Named example complexes and gluing instances used in tests and by the
//! `examples` command.

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::construction::gluing::{admissible_moves, apply_gluing, bijections, GluingMove};
use crate::construction::quasi::{check_quasimanifold_conditions, QuasiViolation, Violation};
use crate::construction::replay::LocalConstruction;
use crate::construction::tree::{generate_trees, TreeOfSimplices};
use crate::cw::{CellId, CwComplex};
use crate::error::ComplexError;

fn from(f: &[&[VertexId]]) -> SimplicialComplex {
    SimplicialComplex::from_vecs(&f.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).expect("valid facets")
}

/// The 6-vertex projective plane.
pub fn rp2_6() -> SimplicialComplex {
    from(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[2, 4, 5],
        &[1, 3, 5],
    ])
}

/// The 5-vertex Möbius band.
pub fn mobius_band() -> SimplicialComplex {
    from(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 0], &[4, 0, 1]])
}

/// The 7-vertex torus.
pub fn torus_7() -> SimplicialComplex {
    SimplicialComplex::from_facets((0..7u32).flat_map(|i| {
        [
            Face::new([i, (i + 1) % 7, (i + 3) % 7]).unwrap(),
            Face::new([i, (i + 2) % 7, (i + 3) % 7]).unwrap(),
        ]
    }))
}

/// Annulus made of six triangles between two triangles' boundaries.
pub fn annulus() -> SimplicialComplex {
    from(&[&[0, 1, 3], &[1, 3, 4], &[1, 2, 4], &[2, 4, 5], &[0, 2, 5], &[0, 3, 5]])
}

pub fn cycle(n: u32) -> SimplicialComplex {
    SimplicialComplex::from_facets((0..n).map(|i| Face::new([i, (i + 1) % n]).unwrap()))
}

pub fn path_graph(n: u32) -> SimplicialComplex {
    SimplicialComplex::from_facets((0..n).map(|i| Face::new([i, i + 1]).unwrap()))
}

/// The shellable ball used for the double: four tetrahedra in a row.
pub fn stacked_ball() -> SimplicialComplex {
    from(&[&[0, 1, 2, 3], &[1, 2, 3, 4], &[2, 3, 4, 5], &[3, 4, 5, 6]])
}

/// Vertex of `double_ball` whose link is an annulus.
pub const DOUBLE_BALL_VERTEX: VertexId = 3;

/// Two copies of the stacked ball glued along the boundary triangles
/// [0,1,3] and [3,5,6], which lie in different tetrahedra and share only
/// vertex 3. The second copy renames 2 and 4 to 7 and 8.
pub fn double_ball() -> SimplicialComplex {
    let b = stacked_ball();
    let copy = b.relabel(|v| match v {
        2 => 7,
        4 => 8,
        v => v,
    });
    b.union(&copy.expect("injective"))
}

/// The two halves of `double_ball`.
pub fn double_ball_halves() -> (SimplicialComplex, SimplicialComplex) {
    let b = stacked_ball();
    let c = b.relabel(|v| match v {
        2 => 7,
        4 => 8,
        v => v,
    });
    (b, c.unwrap())
}

/// m consecutive (t+1)-simplices [i, ..., i+t+1] with the first and last
/// vertex identified. The link of vertex 0 is two disjoint t-simplices.
pub fn path_with_ends_identified(t: usize, m: usize) -> Result<SimplicialComplex, ComplexError> {
    if t < 1 || m < t + 3 {
        return Err(ComplexError::Invalid(format!("need t >= 1 and m >= t + 3, got t = {t}, m = {m}")));
    }
    let last = (m + t) as VertexId;
    let facets = (0..m as VertexId)
        .map(|i| Face::new((i..=i + t as VertexId + 1).map(|v| if v == last { 0 } else { v })))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialComplex::from_facets(facets))
}

fn owner(cw: &CwComplex, c: CellId) -> usize {
    let base = cw.base();
    base.top_faces().find(|&s| base.face(c).is_subset_of(base.face(s))).expect("boundary cell lies in a simplex")
}

fn adjacent_or_equal(cw: &CwComplex, s: usize, r: usize) -> bool {
    let base = cw.base();
    s == r || base.face(s).intersection(base.face(r)).len() == base.dim()
}

/// Moves on two boundary triangles of a tree of tetrahedra that meet in a
/// single vertex and lie in neither the same nor adjacent tetrahedra.
fn vertex_sharing_moves(tree: &TreeOfSimplices) -> Vec<GluingMove> {
    let cw = tree.cw();
    let bd = cw.boundary_cells();
    let mut out = Vec::new();
    for (i, &a) in bd.iter().enumerate() {
        for &b in &bd[i + 1..] {
            if cw.intersection_dim(a, b) != 0 || adjacent_or_equal(&cw, owner(&cw, a), owner(&cw, b)) {
                continue;
            }
            out.extend(bijections(&cw, a, b).into_iter().map(|m| GluingMove::new(a, b, m)));
        }
    }
    out
}

/// A tree of tetrahedra with two far apart boundary triangles glued at a
/// common vertex, keeping every link orientable. The result is a 2-LC
/// quasimanifold in which that vertex has an annulus as link.
pub fn glued_tree() -> (LocalConstruction, SimplicialComplex) {
    let candidates = std::iter::once(TreeOfSimplices::path(3, 4)).chain((3..=6).flat_map(|n| generate_trees(3, n, true)));
    for tree in candidates {
        let cw = tree.cw();
        for mv in vertex_sharing_moves(&tree) {
            if let Ok(next) = check_quasimanifold_conditions(&cw, &mv) {
                if let Ok(k) = next.to_simplicial() {
                    return (LocalConstruction::new(2, tree, vec![mv]), k);
                }
            }
        }
    }
    unreachable!("small trees contain such a pair")
}

/// A gluing of two triangles meeting in one vertex with the bijection that
/// makes that vertex's link a Möbius band.
pub fn orientation_reversing_gluing() -> (TreeOfSimplices, GluingMove) {
    let tree = TreeOfSimplices::path(3, 4);
    let cw = tree.cw();
    for mv in vertex_sharing_moves(&tree) {
        if let Err(QuasiViolation { violation: Violation::NonOrientable, .. }) = check_quasimanifold_conditions(&cw, &mv) {
            return (tree, mv);
        }
    }
    unreachable!("the path of four tetrahedra has such a pair")
}

/// Two gluings around one vertex whose link edges alternate along the link
/// boundary: the first passes, the second would add a handle. Short paths
/// have none (the second gluing folds an edge first), so larger trees are
/// searched in order.
pub fn crossing_gluings() -> (TreeOfSimplices, GluingMove, GluingMove) {
    for tree in (4..=7).flat_map(|n| generate_trees(3, n, true)) {
        let cw = tree.cw();
        for first in admissible_moves(&cw, 2) {
            let Ok(next) = check_quasimanifold_conditions(&cw, &first) else { continue };
            for second in admissible_moves(&next, 2) {
                if let Err(QuasiViolation { violation: Violation::NonPlanar, .. }) = check_quasimanifold_conditions(&next, &second) {
                    return (tree, first, second);
                }
            }
        }
    }
    unreachable!("trees of six tetrahedra have a crossing pair")
}

/// Applies moves without any admissibility check.
pub fn apply_all(tree: &TreeOfSimplices, moves: &[GluingMove]) -> CwComplex {
    moves.iter().fold(tree.cw(), |s, m| apply_gluing(&s, m).expect("move applies"))
}

/// The corpus plus larger named complexes.
pub fn named() -> Vec<(&'static str, SimplicialComplex)> {
    let mut out = corpus();
    out.push(("rp2_6", rp2_6()));
    out.push(("torus_7", torus_7()));
    out.push(("cone_torus_7", torus_7().cone(7).expect("fresh apex")));
    out.push(("ends_identified_t1_m4", path_with_ends_identified(1, 4).expect("in range")));
    out.push(("ends_identified_t2_m5", path_with_ends_identified(2, 5).expect("in range")));
    out.push(("stacked_ball", stacked_ball()));
    out
}

/// Pseudomanifolds with at most eight facets, in dimensions two to four.
pub fn corpus() -> Vec<(&'static str, SimplicialComplex)> {
    let tet = TreeOfSimplices::path;
    let star3 = crate::construction::replay::tree(3, &[(0, 0), (0, 1)]).complex();
    let mut out: Vec<(&'static str, SimplicialComplex)> = vec![
        ("triangle", SimplicialComplex::simplex(2)),
        ("tetrahedron", SimplicialComplex::simplex(3)),
        ("boundary_tetrahedron", SimplicialComplex::boundary_of_simplex(2)),
        ("boundary_4_simplex", SimplicialComplex::boundary_of_simplex(3)),
        ("strip_2", tet(2, 2).complex()),
        ("strip_3", tet(2, 3).complex()),
        ("strip_5", tet(2, 5).complex()),
        ("path_2_tetrahedra", tet(3, 2).complex()),
        ("path_3_tetrahedra", tet(3, 3).complex()),
        ("star_3_tetrahedra", star3),
        ("fan_3", cycle(3).cone(3).unwrap()),
        ("fan_open_4", path_graph(4).cone(5).unwrap()),
        ("disk_4", cycle(4).cone(4).unwrap()),
        ("disk_5", cycle(5).cone(5).unwrap()),
        ("disk_6", cycle(6).cone(6).unwrap()),
        ("bipyramid", cycle(3).suspension()),
        ("octahedron", cycle(4).suspension()),
        ("mobius_band", mobius_band()),
        ("annulus", annulus()),
        ("bowtie", from(&[&[0, 1, 2], &[0, 3, 4]])),
        ("ball_cone_sphere", SimplicialComplex::boundary_of_simplex(2).cone(4).unwrap()),
        ("sphere_suspension", SimplicialComplex::boundary_of_simplex(2).suspension()),
        ("cone_mobius", mobius_band().cone(5).unwrap()),
        ("cone_annulus", annulus().cone(6).unwrap()),
        ("double_ball", double_ball()),
        ("boundary_5_simplex", SimplicialComplex::boundary_of_simplex(4)),
    ];
    out.push(("glued_tree", glued_tree().1));
    out
}
