//! t-constructibility by exhaustive search over facet bipartitions.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::Verdict;
use crate::budget::Budget;
use crate::canonical::canonical_form;
use crate::complex::{SimplicialComplex, VertexId};

/// Witness of (t-)constructibility. Facet indices refer to the sorted facet
/// list of the complex at that node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SplitTree {
    Simplex,
    /// A connected graph, or a set of points.
    Base,
    Split {
        left: Vec<usize>,
        right: Vec<usize>,
        c1: Box<SplitTree>,
        c2: Box<SplitTree>,
        /// Constructibility of the relevant skeleton of the intersection.
        skeleton: Box<SplitTree>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructibilityResult {
    pub verdict: Verdict,
    pub witness: Option<SplitTree>,
    pub splits_tried: u64,
}

struct Search<'a> {
    budget: &'a Budget,
    memo: HashMap<(SimplicialComplex, usize), Option<SplitTree>>,
    splits: u64,
}

struct OutOfBudget;

pub fn is_t_constructible(k: &SimplicialComplex, t: usize, budget: &Budget) -> ConstructibilityResult {
    let mut s = Search { budget, memo: HashMap::new(), splits: 0 };
    let (verdict, witness) = match s.run(k, t) {
        Ok(Some(w)) => (Verdict::True, Some(w)),
        Ok(None) => (Verdict::False, None),
        Err(OutOfBudget) => (Verdict::Indeterminate, None),
    };
    ConstructibilityResult { verdict, witness, splits_tried: s.splits }
}

pub fn is_constructible(k: &SimplicialComplex, budget: &Budget) -> ConstructibilityResult {
    is_t_constructible(k, 1, budget)
}

/// Effective locality: beyond the dimension every skeleton condition is
/// vacuous, so t is clamped to d.
fn clamp(k: &SimplicialComplex, t: usize) -> usize {
    t.clamp(1, k.dim().max(1) as usize)
}

impl Search<'_> {
    fn run(&mut self, k: &SimplicialComplex, t: usize) -> Result<Option<SplitTree>, OutOfBudget> {
        if k.num_facets() == 1 {
            return Ok(Some(SplitTree::Simplex));
        }
        if k.num_facets() == 0 || !k.is_pure() {
            return Ok(None);
        }
        let d = k.dim();
        if d == 0 {
            return Ok(Some(SplitTree::Base));
        }
        if d == 1 {
            return Ok(k.is_strongly_connected().unwrap_or(false).then_some(SplitTree::Base));
        }
        let t = clamp(k, t);
        let cf = canonical_form(k);
        let key = (cf.complex.clone(), t);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.as_ref().map(|w| translate(w, t, &cf.complex, k, &cf.relabel)));
        }
        let found = self.split(&cf.complex, t)?;
        self.memo.insert(key, found.clone());
        Ok(found.map(|w| translate(&w, t, &cf.complex, k, &cf.relabel)))
    }

    fn split(&mut self, k: &SimplicialComplex, t: usize) -> Result<Option<SplitTree>, OutOfBudget> {
        if !k.is_strongly_connected().unwrap_or(false) {
            return Ok(None);
        }
        let d = k.dim();
        let n = k.num_facets();
        assert!(n <= 40, "too many facets for bipartition search");
        let rest = n - 1;
        for mask in 1u64..(1u64 << rest) {
            if self.budget.exhausted() {
                return Err(OutOfBudget);
            }
            self.splits += 1;
            let right: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let left: Vec<usize> = (0..n).filter(|i| *i == 0 || mask >> (i - 1) & 1 == 0).collect();
            let c1 = k.sub_complex(&left);
            let c2 = k.sub_complex(&right);
            if !c1.is_strongly_connected().unwrap_or(false) || !c2.is_strongly_connected().unwrap_or(false) {
                continue;
            }
            let inter = c1.intersection(&c2);
            if inter.num_facets() == 0 || !inter.is_pure() || inter.dim() != d - 1 {
                continue;
            }
            let skel = inter.skeleton(d - t as isize).expect("skeleton in range");
            let Some(ws) = self.run(&skel, 1)? else { continue };
            let Some(w1) = self.run(&c1, t)? else { continue };
            let Some(w2) = self.run(&c2, t)? else { continue };
            return Ok(Some(SplitTree::Split {
                left,
                right,
                c1: Box::new(w1),
                c2: Box::new(w2),
                skeleton: Box::new(ws),
            }));
        }
        Ok(None)
    }
}

/// Moves a witness for `from` to the isomorphic `to`, where `phi` maps the
/// vertices of `to` onto those of `from`.
fn translate(
    w: &SplitTree,
    t: usize,
    from: &SimplicialComplex,
    to: &SimplicialComplex,
    phi: &BTreeMap<VertexId, VertexId>,
) -> SplitTree {
    let SplitTree::Split { left, right, c1, c2, skeleton } = w else { return w.clone() };
    let image: HashMap<_, usize> = to
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| (f.map(|v| phi[&v]).expect("relabelling is injective"), i))
        .collect();
    let pull = |ix: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = ix.iter().map(|&i| image[&from.facets()[i]]).collect();
        out.sort_unstable();
        out
    };
    let (l, r) = (pull(left), pull(right));
    let (f1, f2) = (from.sub_complex(left), from.sub_complex(right));
    let (t1, t2) = (to.sub_complex(&l), to.sub_complex(&r));
    let t = clamp(from, t);
    let k = from.dim() - t as isize;
    let fs = f1.intersection(&f2).skeleton(k).unwrap();
    let ts = t1.intersection(&t2).skeleton(k).unwrap();
    SplitTree::Split {
        c1: Box::new(translate(c1, t, &f1, &t1, phi)),
        c2: Box::new(translate(c2, t, &f2, &t2, phi)),
        skeleton: Box::new(translate(skeleton, 1, &fs, &ts, phi)),
        left: l,
        right: r,
    }
}

/// Re-checks a witness from scratch.
pub fn verify_split_tree(k: &SimplicialComplex, t: usize, w: &SplitTree) -> bool {
    match w {
        SplitTree::Simplex => k.num_facets() == 1,
        SplitTree::Base => k.dim() == 0 || (k.dim() == 1 && k.is_strongly_connected().unwrap_or(false)),
        SplitTree::Split { left, right, c1, c2, skeleton } => {
            let n = k.num_facets();
            let mut all: Vec<usize> = left.iter().chain(right).copied().collect();
            all.sort_unstable();
            if all != (0..n).collect::<Vec<_>>() || left.is_empty() || right.is_empty() || !k.is_pure() {
                return false;
            }
            let d = k.dim();
            let t = clamp(k, t);
            let (a, b) = (k.sub_complex(left), k.sub_complex(right));
            let inter = a.intersection(&b);
            if !inter.is_pure() || inter.dim() != d - 1 {
                return false;
            }
            let skel = inter.skeleton(d - t as isize).unwrap();
            verify_split_tree(&a, t, c1) && verify_split_tree(&b, t, c2) && verify_split_tree(&skel, 1, skeleton)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::examples::{double_ball, mobius_band, stacked_ball};

    fn check(k: &SimplicialComplex, t: usize) -> Verdict {
        let r = is_t_constructible(k, t, &Budget::unlimited());
        if let Some(w) = &r.witness {
            assert!(verify_split_tree(k, t, w), "{w:?}");
        }
        r.verdict
    }

    #[test]
    fn balls_and_spheres() {
        let two = SimplicialComplex::from_vecs(&[vec![0, 1, 2, 3], vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(check(&two, 1), Verdict::True);
        assert_eq!(check(&stacked_ball(), 1), Verdict::True);
        for d in 1..=3 {
            assert_eq!(check(&SimplicialComplex::boundary_of_simplex(d), 1), Verdict::True);
        }
    }

    #[test]
    fn double_ball_needs_t_two() {
        let p = double_ball();
        assert_eq!(check(&p, 1), Verdict::False);
        assert_eq!(check(&p, 2), Verdict::True);
    }

    #[test]
    fn mobius_band_is_not_constructible() {
        assert_eq!(check(&mobius_band(), 1), Verdict::False);
    }

    #[test]
    fn forged_witness_is_rejected() {
        let two = SimplicialComplex::from_vecs(&[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let w = SplitTree::Split {
            left: vec![0],
            right: vec![1],
            c1: Box::new(SplitTree::Simplex),
            c2: Box::new(SplitTree::Simplex),
            skeleton: Box::new(SplitTree::Base),
        };
        assert!(!verify_split_tree(&two, 1, &w));
        assert_eq!(check(&two, 2), Verdict::False);
    }
}
