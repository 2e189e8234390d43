//! Manifold certificates from vertex links (exact up to dimension three)
//! or face-link homology (above).

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::homology::{reduced_homology, surface::classify_surface};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ManifoldCertificate {
    CertifiedManifold,
    CertifiedNonManifold { face: Face, reason: String },
    /// Every face link has the homology of a sphere or a ball.
    HomologyCertifiedOnly,
}

impl ManifoldCertificate {
    pub fn label(&self) -> &'static str {
        match self {
            ManifoldCertificate::CertifiedManifold => "certified_manifold",
            ManifoldCertificate::CertifiedNonManifold { .. } => "certified_non_manifold",
            ManifoldCertificate::HomologyCertifiedOnly => "homology_certified_only",
        }
    }

    pub fn is_manifold(&self) -> bool {
        matches!(self, ManifoldCertificate::CertifiedManifold)
    }
}

fn bad(face: Face, reason: impl Into<String>) -> ManifoldCertificate {
    ManifoldCertificate::CertifiedNonManifold { face, reason: reason.into() }
}

pub fn certify_manifold(k: &SimplicialComplex) -> ManifoldCertificate {
    if k.num_facets() == 0 {
        return bad(Face::empty(), "empty complex");
    }
    if !k.is_pseudomanifold() {
        return bad(Face::empty(), "not a pseudomanifold");
    }
    let d = k.dim();
    let boundary = k.boundary().expect("pure");
    match d {
        0 | 1 => ManifoldCertificate::CertifiedManifold,
        2 => {
            for v in k.faces_of_dim(0) {
                let l = k.link(&v).unwrap();
                if !l.is_strongly_connected().unwrap_or(false) {
                    return bad(v, "vertex link is disconnected");
                }
            }
            ManifoldCertificate::CertifiedManifold
        }
        3 => {
            for v in k.faces_of_dim(0) {
                let l = k.link(&v).unwrap();
                let on_boundary = boundary.contains(&v);
                match classify_surface(&l) {
                    Ok(s) if on_boundary && s.is_disk() => {}
                    Ok(s) if !on_boundary && s.is_sphere() => {}
                    Ok(s) => return bad(v, format!("vertex link is not a {}: {s:?}", if on_boundary { "disk" } else { "sphere" })),
                    Err(e) => return bad(v, format!("vertex link is not a surface: {e}")),
                }
            }
            ManifoldCertificate::CertifiedManifold
        }
        _ => {
            for f in k.all_faces() {
                if f.is_empty() || f.dim() == d {
                    continue;
                }
                let l = k.link(&f).unwrap();
                let h = reduced_homology(&l);
                let ok = if boundary.contains(&f) { h.is_acyclic() } else { h.is_sphere_like(d - f.dim() - 1) };
                if !ok {
                    return bad(f, "face link has the wrong homology");
                }
            }
            ManifoldCertificate::HomologyCertifiedOnly
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres_and_balls() {
        for d in 1..=4 {
            let s = SimplicialComplex::boundary_of_simplex(d);
            let b = SimplicialComplex::simplex(d);
            let expect = if d < 4 { "certified_manifold" } else { "homology_certified_only" };
            assert_eq!(certify_manifold(&s).label(), expect, "sphere {d}");
            assert_eq!(certify_manifold(&b).label(), expect, "ball {d}");
        }
    }

    #[test]
    fn pinched_surface_fails() {
        let k = SimplicialComplex::from_vecs(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![0, 4, 5], vec![0, 4, 6], vec![0, 5, 6]])
            .unwrap();
        assert_eq!(certify_manifold(&k).label(), "certified_non_manifold");
    }
}
