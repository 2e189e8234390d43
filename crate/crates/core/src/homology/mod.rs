//! Reduced integral homology and the certificates built on it.

mod snf;
pub mod surface;

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::complex::{Face, SimplicialComplex};

pub use snf::{smith_normal_form, SmithForm};
pub use surface::{classify_surface, NotASurface, SurfaceClass, TriangulatedSurface};

/// Reduced homology in dimensions 0..=dim. The group in dimension -1 is
/// nonzero only for the empty complex and is kept apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    #[serde(serialize_with = "ser_torsion")]
    pub torsion: Vec<Vec<BigInt>>,
    #[serde(skip)]
    pub minus_one: usize,
}

fn ser_torsion<S: Serializer>(t: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    let v: Vec<Vec<serde_json::Value>> = t
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_u64().map_or_else(|| serde_json::Value::String(x.to_string()), serde_json::Value::from))
                .collect()
        })
        .collect();
    v.serialize(s)
}

impl HomologyProfile {
    /// Free rank in dimension i (i >= -1).
    pub fn rank(&self, i: isize) -> usize {
        if i == -1 {
            self.minus_one
        } else {
            self.betti.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn torsion_in(&self, i: isize) -> &[BigInt] {
        if i < 0 {
            return &[];
        }
        self.torsion.get(i as usize).map_or(&[], |v| v.as_slice())
    }

    /// True when the group in dimension i is trivial.
    pub fn vanishes(&self, i: isize) -> bool {
        self.rank(i) == 0 && self.torsion_in(i).is_empty()
    }

    /// Reduced homology of a k-sphere.
    pub fn is_sphere_like(&self, k: isize) -> bool {
        (-1..=self.betti.len() as isize).all(|i| {
            if i == k {
                self.rank(i) == 1 && self.torsion_in(i).is_empty()
            } else {
                self.vanishes(i)
            }
        })
    }

    /// Trivial reduced homology everywhere.
    pub fn is_acyclic(&self) -> bool {
        (-1..=self.betti.len() as isize).all(|i| self.vanishes(i))
    }
}

/// Groups by dimension, e.g. `H0 = 0, H1 = Z/2, H2 = 0`.
impl std::fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut dims = Vec::new();
        if self.minus_one > 0 {
            dims.push(format!("H-1 = Z^{}", self.minus_one));
        }
        for i in 0..self.betti.len() {
            let mut parts = Vec::new();
            match self.betti[i] {
                0 => {}
                1 => parts.push("Z".to_string()),
                b => parts.push(format!("Z^{b}")),
            }
            parts.extend(self.torsion_in(i as isize).iter().map(|t| format!("Z/{t}")));
            let g = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            dims.push(format!("H{i} = {g}"));
        }
        write!(f, "{}", dims.join(", "))
    }
}

/// Boundary matrix from k-faces to (k-1)-faces, rows indexed by `lower`.
pub fn boundary_matrix(lower: &[Face], upper: &[Face]) -> Vec<Vec<i64>> {
    let idx: HashMap<&Face, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, f) in upper.iter().enumerate() {
        if f.len() == 1 {
            m[0][j] = 1;
            continue;
        }
        for (pos, g) in f.boundary_faces().enumerate() {
            m[idx[&g]][j] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

pub fn reduced_homology(k: &SimplicialComplex) -> HomologyProfile {
    let d = k.dim();
    // faces[i] holds the faces of dimension i-1
    let faces: Vec<Vec<Face>> = (-1..=d).map(|i| k.faces_of_dim(i)).collect();
    let snfs: Vec<SmithForm> = (0..=d)
        .map(|i| {
            let lo = &faces[i as usize];
            let hi = &faces[i as usize + 1];
            smith_normal_form(&boundary_matrix(lo, hi))
        })
        .collect();
    // snfs[i] is the map from dimension i to i-1
    let rank = |i: isize| -> usize {
        if i < 0 || i > d {
            0
        } else {
            snfs[i as usize].rank()
        }
    };
    let size = |i: isize| faces[(i + 1) as usize].len();
    let betti: Vec<usize> = (0..=d).map(|i| size(i) - rank(i) - rank(i + 1)).collect();
    let torsion: Vec<Vec<BigInt>> = (0..=d)
        .map(|i| if i < d { snfs[(i + 1) as usize].torsion() } else { Vec::new() })
        .collect();
    let minus_one = 1 - rank(0);
    HomologyProfile { betti, torsion, minus_one }
}

/// Every face link (the empty face included) has vanishing reduced homology
/// below its dimension.
pub fn is_cohen_macaulay(k: &SimplicialComplex) -> bool {
    if !k.is_pure() {
        return false;
    }
    k.all_faces().iter().all(|f| {
        let l = k.link(f).expect("face of k");
        let dl = l.dim();
        if dl <= 0 {
            // only dimension -1 matters, which vanishes for nonempty links
            return dl == 0 || l.num_facets() == 0;
        }
        let h = reduced_homology(&l);
        (-1..dl).all(|i| h.vanishes(i))
    })
}

/// Largest k such that the k-skeleton is Cohen-Macaulay.
pub fn homological_depth(k: &SimplicialComplex) -> isize {
    let d = k.dim();
    let mut best = -1;
    for i in 0..=d {
        if is_cohen_macaulay(&k.skeleton(i).expect("in range")) {
            best = i;
        }
    }
    best
}

pub fn is_t_cm(k: &SimplicialComplex, t: usize) -> bool {
    homological_depth(k) > k.dim() - t as isize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(f: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(f.iter().map(|x| Face::from(*x)))
    }

    #[test]
    fn spheres() {
        for d in 0..=4 {
            let h = reduced_homology(&SimplicialComplex::boundary_of_simplex(d));
            assert!(h.is_sphere_like(d as isize), "{d} {h:?}");
        }
        let b = reduced_homology(&SimplicialComplex::boundary_of_simplex(2));
        assert_eq!(b.betti, vec![0, 0, 1]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = SimplicialComplex::simplex(4);
        for i in 1..4 {
            let a = boundary_matrix(&k.faces_of_dim(i - 1), &k.faces_of_dim(i));
            let b = boundary_matrix(&k.faces_of_dim(i), &k.faces_of_dim(i + 1));
            for r in 0..a.len() {
                for col in 0..b[0].len() {
                    let s: i64 = (0..b.len()).map(|m| a[r][m] * b[m][col]).sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn cm_examples() {
        assert!(is_cohen_macaulay(&SimplicialComplex::boundary_of_simplex(2)));
        assert!(!is_cohen_macaulay(&c(&[&[0, 1], &[2, 3]])));
        let s = SimplicialComplex::boundary_of_simplex(2);
        assert_eq!(homological_depth(&s), 2);
        assert!(is_t_cm(&s, 1));
        assert!(reduced_homology(&SimplicialComplex::default()).minus_one == 1);
    }
}
