//! Canonical labelling of simplicial complexes by colour refinement and
//! individualization. Two complexes get equal forms iff they are isomorphic.

use std::collections::BTreeMap;

use crate::complex::{Face, SimplicialComplex, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// The relabelled complex on vertices 0..n.
    pub complex: SimplicialComplex,
    /// Old label to canonical label.
    pub relabel: BTreeMap<VertexId, VertexId>,
}

pub fn canonical_form(k: &SimplicialComplex) -> CanonicalForm {
    let verts = k.vertices();
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let facets: Vec<Vec<usize>> = k
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|v| index[v]).collect())
        .collect();
    let n = verts.len();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, f) in facets.iter().enumerate() {
        for &v in f {
            inc[v].push(i);
        }
    }
    let ctx = Ctx { facets: &facets, inc: &inc };
    let start = ctx.refine(vec![0; n]);
    let mut best: Option<(Vec<Vec<u32>>, Vec<u32>)> = None;
    ctx.search(start, &mut best);
    let (cert, labels) = best.unwrap_or_default();
    let complex = SimplicialComplex::from_facets(cert.into_iter().map(|f| Face::from(f.as_slice())));
    let relabel = verts.iter().enumerate().map(|(i, &v)| (v, labels[i])).collect();
    CanonicalForm { complex, relabel }
}

pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    a.num_facets() == b.num_facets()
        && a.num_vertices() == b.num_vertices()
        && canonical_form(a).complex == canonical_form(b).complex
}

struct Ctx<'a> {
    facets: &'a [Vec<usize>],
    inc: &'a [Vec<usize>],
}

impl Ctx<'_> {
    fn refine(&self, mut colour: Vec<u32>) -> Vec<u32> {
        let n = colour.len();
        let mut classes = count_classes(&colour);
        loop {
            let sigs: Vec<(u32, Vec<(usize, Vec<u32>)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(usize, Vec<u32>)> = self.inc[v]
                        .iter()
                        .map(|&fi| {
                            let f = &self.facets[fi];
                            let mut cs: Vec<u32> = f.iter().filter(|&&u| u != v).map(|&u| colour[u]).collect();
                            cs.sort_unstable();
                            (f.len(), cs)
                        })
                        .collect();
                    s.sort_unstable();
                    (colour[v], s)
                })
                .collect();
            colour = rank(&sigs);
            let c = count_classes(&colour);
            if c == classes {
                return colour;
            }
            classes = c;
        }
    }

    fn search(&self, colour: Vec<u32>, best: &mut Option<(Vec<Vec<u32>>, Vec<u32>)>) {
        let n = colour.len();
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colour {
            *sizes.entry(c).or_insert(0) += 1;
        }
        let target = sizes.iter().find(|(_, &s)| s > 1).map(|(&c, _)| c);
        let Some(target) = target else {
            let cert = self.certificate(&colour);
            if best.as_ref().is_none_or(|(b, _)| cert < *b) {
                *best = Some((cert, colour));
            }
            return;
        };
        for v in 0..n {
            if colour[v] != target {
                continue;
            }
            let split: Vec<(u32, u32)> = (0..n)
                .map(|u| (colour[u], u32::from(colour[u] == target && u != v)))
                .collect();
            let next = self.refine(rank(&split));
            self.search(next, best);
        }
    }

    fn certificate(&self, colour: &[u32]) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| colour[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        out.sort();
        out
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

fn count_classes(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_sphere() {
        let a = SimplicialComplex::boundary_of_simplex(2).relabel(|v| v + 1).unwrap();
        let map = [7, 3, 9, 5];
        let b = a.relabel(|v| map[v as usize - 1]).unwrap();
        assert_eq!(canonical_form(&a).complex, canonical_form(&b).complex);
    }

    #[test]
    fn idempotent_and_relabel_consistent() {
        let k = SimplicialComplex::from_vecs(&[vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![0, 4, 5]]).unwrap();
        let c = canonical_form(&k);
        assert_eq!(canonical_form(&c.complex).complex, c.complex);
        assert_eq!(k.relabel(|v| c.relabel[&v]).unwrap(), c.complex);
    }

    #[test]
    fn distinguishes() {
        let s = SimplicialComplex::boundary_of_simplex(2);
        let tree = SimplicialComplex::from_vecs(&[vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]).unwrap();
        assert_ne!(canonical_form(&s).complex, canonical_form(&tree).complex);
    }
}
