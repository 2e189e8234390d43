//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines always show; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tlc_core::construction::quasi::check_quasimanifold_conditions;
use tlc_core::construction::{face_counts, generate_trees, round_partition, TreeOfSimplices, Violation};
use tlc_core::enumeration::bounds::{bound_report, bound_report_with_rounds, composition_sum};
use tlc_core::enumeration::census::{census, Census, CensusConfig, ComplexClass};
use tlc_core::enumeration::examples::{
    corpus, crossing_gluings, double_ball, glued_tree, orientation_reversing_gluing, rp2_6, DOUBLE_BALL_VERTEX,
};
use tlc_core::enumeration::{brute_force_planar_matchings, MatchingCounter};
use tlc_core::homology::{classify_surface, is_cohen_macaulay, is_t_cm, reduced_homology};
use tlc_core::recognition::{is_t_constructible, is_t_lc, verify_split_tree};
use tlc_core::{canonical_form, Budget, Face, SimplicialComplex, Verdict};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn unlimited() -> Budget {
    Budget::unlimited()
}

// -- 1 --------------------------------------------------------------------

/// Boundary i-faces counted straight from the simplices: a ridge is on the
/// boundary when it lies in exactly one simplex.
fn boundary_counts(t: &TreeOfSimplices) -> Vec<usize> {
    let d = t.dim();
    let mut ridges: std::collections::HashMap<Vec<u32>, usize> = Default::default();
    for s in t.simplices() {
        let v = s.vertices();
        for skip in 0..=d {
            let r: Vec<u32> = v.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
            *ridges.entry(r).or_insert(0) += 1;
        }
    }
    let mut faces: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); d];
    for (r, _) in ridges.iter().filter(|(_, &c)| c == 1) {
        for mask in 1u32..(1 << r.len()) {
            let f: Vec<u32> = (0..r.len()).filter(|i| mask >> i & 1 == 1).map(|i| r[i]).collect();
            faces[f.len() - 1].insert(f);
        }
    }
    faces.iter().map(BTreeSet::len).collect()
}

fn face_count_formulas() -> Check {
    let mut trees = 0;
    for d in 3..=5usize {
        for n in 1..=8usize {
            let (di, ni) = (d as i64, n as i64);
            // 2D = 2 + N(d-1); the third count is an integer after multiplying by 6
            let two_d = 2 + ni * (di - 1);
            let six_n3 = di * (ni * di * di + 2 * ni - 3 * ni * di + 3 * di - 3);
            for t in generate_trees(d, n, true) {
                trees += 1;
                let mine = boundary_counts(&t);
                let lib = face_counts(&t);
                ensure(lib.measured == mine, || format!("d={d} N={n}: measured {:?} vs {mine:?}", lib.measured))?;
                ensure(mine[d - 1] as i64 == two_d, || format!("d={d} N={n}: N_(d-1) = {}", mine[d - 1]))?;
                ensure(2 * mine[d - 2] as i64 == di * two_d, || format!("d={d} N={n}: N_(d-2) = {}", mine[d - 2]))?;
                ensure(6 * mine[d - 3] as i64 == six_n3, || format!("d={d} N={n}: N_(d-3) = {}", mine[d - 3]))?;
                ensure(lib.matches(), || format!("d={d} N={n}: library closed forms disagree"))?;
            }
        }
    }
    Ok(format!("{trees} trees, all three counts exact"))
}

// -- 2 --------------------------------------------------------------------

fn catalan_exact(m: u32) -> u128 {
    // C_m = binom(2m, m) / (m + 1)
    let mut c: u128 = 1;
    for k in 0..m as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

fn matching_counts() -> Check {
    let mut mc = MatchingCounter::default();
    let first: Vec<u128> = (0..7).map(|m| mc.count(m)).collect();
    ensure(first == [1, 1, 2, 4, 9, 21, 51], || format!("first values {first:?}"))?;
    for m in 0..=12 {
        let brute = brute_force_planar_matchings(m) as u128;
        ensure(mc.count(m) == brute, || format!("M({m}) = {} but brute force gives {brute}", mc.count(m)))?;
    }
    for m in 0..=30u32 {
        let (mm, c) = (mc.count(m as usize), catalan_exact(m));
        ensure(mc.catalan(m as usize) == c, || format!("C_{m} = {} vs {c}", mc.catalan(m as usize)))?;
        ensure(mm <= c && c <= 4u128.pow(m), || format!("chain fails at m={m}: {mm} {c}"))?;
        if m >= 1 {
            let conv = mc.convolution_bound(m as usize);
            ensure(mm <= conv, || format!("M({m}) = {mm} above the convolution {conv}"))?;
        }
        if m >= 1 {
            ensure(mc.count(m as usize - 1) <= mm, || format!("M not monotone at {m}"))?;
        }
    }
    Ok(format!("brute force agrees for m <= 12; M(30) = {} <= C_30 = {}", mc.count(30), catalan_exact(30)))
}

// -- 3 --------------------------------------------------------------------

fn tree_bound() -> Check {
    let mut counts = Vec::new();
    for n in 1..=7u32 {
        let c = generate_trees(3, n as usize, true).len() as u128;
        // c <= (27/4)^n
        ensure(c * 4u128.pow(n) <= 27u128.pow(n), || format!("N={n}: {c} trees"))?;
        counts.push(c);
    }
    Ok(format!("tree counts {counts:?}, each <= 6.75^N"))
}

// -- 4 --------------------------------------------------------------------

fn surface_census() -> Check {
    let mut per_n = Vec::new();
    for n in 1..=10 {
        let cfg = CensusConfig { d: 2, n, t: 1, class: ComplexClass::Manifold, closed: true, workers: None };
        let c = census(&cfg, &unlimited()).map_err(|e| e.to_string())?;
        ensure(c.complete, || format!("N={n} incomplete"))?;
        for r in &c.records {
            let k = &r.complex;
            ensure(k.euler_characteristic() == 2, || format!("N={n}: euler {}", k.euler_characteristic()))?;
            ensure(r.homology.is_sphere_like(2), || format!("N={n}: homology {}", r.homology))?;
            ensure(classify_surface(k).map(|s| s.is_sphere()).unwrap_or(false), || format!("N={n}: not a sphere"))?;
        }
        per_n.push(c.records.len());
    }
    let cfg = CensusConfig { d: 2, n: 10, t: 2, class: ComplexClass::Pseudomanifold, closed: true, workers: None };
    let c = census(&cfg, &unlimited()).map_err(|e| e.to_string())?;
    ensure(c.complete, || "t=2 census incomplete".into())?;
    let rp2 = canonical_form(&rp2_6()).complex;
    ensure(c.records.iter().any(|r| r.complex == rp2), || "RP2 missing from the t=2 census".into())?;
    Ok(format!("1-LC closed surfaces by N = 1..10: {per_n:?}, all spheres; RP2_6 among {} at t=2", c.records.len()))
}

// -- 5 --------------------------------------------------------------------

fn pinched_example() -> Check {
    let (lc, p) = glued_tree();
    let r = lc.replay();
    ensure(r.is_valid() && r.complex().ok().as_ref() == Some(&p), || "generator's own construction fails".into())?;
    let two = is_t_lc(&p, 2, &unlimited()).map_err(|e| e.to_string())?;
    ensure(two.verdict == Verdict::True, || format!("2-LC verdict {:?}", two.verdict))?;
    let w = two.witness.ok_or("no witness")?;
    let rw = w.replay();
    ensure(rw.is_valid(), || format!("witness fails: {:?}", rw.failure))?;
    ensure(w.labelled_complex(&rw.state).ok().as_ref() == Some(&p), || "witness builds another complex".into())?;
    let one = is_t_lc(&p, 1, &unlimited()).map_err(|e| e.to_string())?;
    ensure(one.verdict == Verdict::False, || format!("1-LC verdict {:?}", one.verdict))?;
    let annulus = p.vertices().into_iter().any(|v| {
        classify_surface(&p.link(&Face::from([v])).unwrap())
            .map(|s| s.orientable && s.genus == 0 && s.boundary_circles == 2)
            .unwrap_or(false)
    });
    ensure(annulus, || "no vertex has an annulus link".into())?;
    Ok(format!(
        "{} tetrahedra; 2-LC with replayed witness, not 1-LC after {} spanning trees",
        p.num_facets(),
        one.stats.trees_tried
    ))
}

// -- 6, 7 -----------------------------------------------------------------

fn cone_equivalence() -> Check {
    let cs = corpus();
    ensure(cs.len() >= 20, || format!("corpus has {}", cs.len()))?;
    let mut agree = 0;
    for (name, k) in &cs {
        ensure(k.num_facets() <= 8 && k.is_pseudomanifold(), || format!("{name} is not a small pseudomanifold"))?;
        let apex = k.vertices().last().unwrap() + 1;
        let cone = k.cone(apex).map_err(|e| e.to_string())?;
        for t in [1, 2] {
            let a = is_t_lc(k, t, &unlimited()).map_err(|e| e.to_string())?.verdict;
            let b = is_t_lc(&cone, t, &unlimited()).map_err(|e| e.to_string())?.verdict;
            ensure(a != Verdict::Indeterminate && b != Verdict::Indeterminate, || format!("{name}: indeterminate"))?;
            ensure(a == b, || format!("{name}, t={t}: {a:?} vs cone {b:?}"))?;
            agree += 1;
        }
    }
    Ok(format!("{} complexes, {agree} agreeing pairs", cs.len()))
}

fn monotonicity() -> Check {
    let mut implications = 0;
    let mut strict = 0;
    for (name, k) in corpus() {
        let lc: Vec<Verdict> = (1..=3).map(|t| is_t_lc(&k, t, &unlimited()).unwrap().verdict).collect();
        for t in 0..2 {
            if lc[t].is_true() {
                ensure(lc[t + 1].is_true(), || format!("{name}: {}-LC but not {}-LC", t + 1, t + 2))?;
                implications += 1;
            } else if lc[t + 1].is_true() {
                strict += 1;
            }
        }
        for t in 1..=3 {
            let c = is_t_constructible(&k, t, &unlimited());
            ensure(c.verdict != Verdict::Indeterminate, || format!("{name}: constructibility undecided"))?;
            if let Some(w) = &c.witness {
                ensure(verify_split_tree(&k, t, w), || format!("{name}: split tree does not verify"))?;
            }
            if c.verdict.is_true() {
                ensure(lc[t - 1].is_true(), || format!("{name}: {t}-constructible but not {t}-LC"))?;
                implications += 1;
            }
        }
    }
    Ok(format!("{implications} implications hold, 0 violations; {strict} strict t-LC steps seen"))
}

// -- 8 --------------------------------------------------------------------

fn double_ball_example() -> Check {
    let p = double_ball();
    let two = is_t_constructible(&p, 2, &unlimited());
    ensure(two.verdict == Verdict::True, || format!("2-constructible verdict {:?}", two.verdict))?;
    ensure(verify_split_tree(&p, 2, two.witness.as_ref().unwrap()), || "witness does not verify".into())?;
    let one = is_t_constructible(&p, 1, &unlimited());
    ensure(one.verdict == Verdict::False, || format!("1-constructible verdict {:?}", one.verdict))?;
    let link = p.link(&Face::from([DOUBLE_BALL_VERTEX])).map_err(|e| e.to_string())?;
    let s = classify_surface(&link).map_err(|e| e.to_string())?;
    ensure(s.orientable && s.genus == 0 && s.boundary_circles == 2 && s.euler == 0, || format!("link is {s:?}"))?;
    ensure(is_t_cm(&p, 2), || "not 2-CM".into())?;
    ensure(!is_cohen_macaulay(&p), || "Cohen-Macaulay".into())?;
    Ok(format!("2-constructible, not 1-constructible after {} splits; annulus link; 2-CM, not CM", one.splits_tried))
}

// -- 9 --------------------------------------------------------------------

/// Rank over the rationals by row reduction.
fn rank_q(mut m: Vec<Vec<Ratio<i64>>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c] / pivot;
                for j in c..cols {
                    let v = m[rank][j];
                    m[r][j] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers over Q, the empty face counted in dimension -1.
fn betti_q(k: &SimplicialComplex) -> Vec<usize> {
    let d = k.dim();
    let faces: Vec<Vec<Vec<u32>>> =
        (-1..=d).map(|i| k.faces_of_dim(i).iter().map(|f| f.vertices().to_vec()).collect()).collect();
    // ranks[i] = rank of the boundary from dimension i-1 faces to i-2, offset by one
    let mut ranks = vec![0; faces.len() + 1];
    for i in 1..faces.len() {
        let (lower, upper) = (&faces[i - 1], &faces[i]);
        let mut m = vec![vec![Ratio::zero(); upper.len()]; lower.len()];
        for (c, f) in upper.iter().enumerate() {
            for skip in 0..f.len() {
                let g: Vec<u32> = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &v)| v).collect();
                let r = lower.iter().position(|x| *x == g).unwrap();
                m[r][c] = if skip % 2 == 0 { Ratio::one() } else { -Ratio::one() };
            }
        }
        ranks[i] = rank_q(m);
    }
    (1..faces.len()).map(|i| faces[i].len() - ranks[i] - ranks[i + 1]).collect()
}

fn random_complex(rng: &mut StdRng) -> SimplicialComplex {
    loop {
        let nv: u32 = rng.gen_range(3..=9);
        let nf = rng.gen_range(1..=12);
        let facets: Vec<Vec<u32>> = (0..nf)
            .map(|_| {
                let size = rng.gen_range(2..=5.min(nv as usize));
                let mut f: Vec<u32> = rand::seq::index::sample(rng, nv as usize, size).into_iter().map(|x| x as u32).collect();
                f.sort_unstable();
                f
            })
            .collect();
        let k = SimplicialComplex::from_facets(facets.iter().map(|f| Face::new(f.iter().copied()).unwrap()));
        let size: usize = (0..=k.dim()).map(|i| k.faces_of_dim(i).len()).sum();
        if size <= 200 {
            return k;
        }
    }
}

fn homology_engine() -> Check {
    for d in 0..=5 {
        let h = reduced_homology(&SimplicialComplex::boundary_of_simplex(d));
        let mut want = vec![0; d + 1];
        want[d] = 1;
        ensure(h.betti == want && h.torsion.iter().all(Vec::is_empty), || format!("sphere {d}: {h}"))?;
    }
    let h = reduced_homology(&rp2_6());
    ensure(h.betti == [0, 0, 0] && h.torsion_in(1) == [2.into()] && h.torsion_in(2).is_empty(), || format!("RP2: {h}"))?;
    let mut rng = StdRng::seed_from_u64(20240917);
    let mut nontrivial = 0;
    for i in 0..100 {
        let k = random_complex(&mut rng);
        let q = betti_q(&k);
        let h = reduced_homology(&k);
        ensure(q == h.betti, || format!("random complex {i} {:?}: oracle {q:?} vs {:?}", k.facets(), h.betti))?;
        if q.iter().any(|&b| b > 0) {
            nontrivial += 1;
        }
    }
    Ok(format!("spheres d <= 5 exact, RP2 has Z/2 in H1, 100 random complexes agree ({nontrivial} with homology)"))
}

// -- 10 -------------------------------------------------------------------

fn binomial_sum(big_d: u64) -> BigUint {
    // sum over f = 1..D of binom(D-1, f-1), row by row
    let mut row = vec![BigUint::one()];
    for _ in 1..big_d {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.into_iter().sum()
}

fn solid_census() -> Check {
    for big_d in 1..=30u64 {
        let s = binomial_sum(big_d);
        ensure(s == BigUint::one() << (big_d - 1), || format!("binomial sum for D={big_d}"))?;
        ensure(composition_sum(big_d) == s, || format!("library composition sum for D={big_d}"))?;
    }
    let run = |n, workers| {
        let cfg = CensusConfig { d: 3, n, t: 2, class: ComplexClass::Quasimanifold, closed: true, workers: Some(workers) };
        census(&cfg, &unlimited()).map_err(|e| e.to_string())
    };
    let mut counts = Vec::new();
    for n in 1..=6 {
        let one: Census = run(n, 1)?;
        let eight: Census = run(n, 8)?;
        ensure(one.complete && eight.complete, || format!("N={n} incomplete"))?;
        ensure(one.to_jsonl() == eight.to_jsonl(), || format!("N={n}: 1 and 8 workers differ"))?;
        for r in &one.records {
            let rep = r.witness.replay();
            ensure(rep.is_valid(), || format!("N={n}: witness fails {:?}", rep.failure))?;
            let k = rep.complex().map_err(|e| e.to_string())?;
            ensure(canonical_form(&k).complex == r.complex, || format!("N={n}: witness builds another complex"))?;
            for v in r.complex.vertices() {
                let l = r.complex.link(&Face::from([v])).unwrap();
                let s = classify_surface(&l).map_err(|e| format!("N={n}: vertex {v}: {e}"))?;
                ensure(s.is_sphere(), || format!("N={n}: vertex {v} link {s:?}"))?;
            }
            let rounds = round_partition(&r.witness).map_err(|e| e.to_string())?;
            let b = bound_report_with_rounds(3, n, one.records.len() as u128, Some(&rounds));
            ensure(b.verdicts.rounds_sum_to_2d == Some(true), || format!("N={n}: rounds do not sum to 2D"))?;
            for w in b.rounds.windows(2) {
                let want = (w[0].m / 2 * 2).to_string();
                ensure(w[1].l.as_deref() == Some(want.as_str()), || format!("N={n}: L = {:?}, want {want}", w[1].l))?;
            }
        }
        let b = bound_report(3, n, one.records.len() as u128);
        let v = &b.verdicts;
        ensure(v.count_below_ceiling && v.count_below_total_bound, || format!("N={n}: count above a ceiling"))?;
        ensure(v.exponent_identity && v.binomial_identity == Some(true), || format!("N={n}: chain arithmetic"))?;
        ensure(v.tree_base_below_de, || "per-tree base".into())?;
        ensure((b.log2_ceiling - 27.0 * n as f64 / 2.0).abs() < 1e-9, || format!("N={n}: ceiling {}", b.log2_ceiling))?;
        counts.push(one.records.len());
    }
    Ok(format!("records by N = 1..6: {counts:?}; identical with 1 and 8 workers; all links S2; bounds hold"))
}

// -- 11 -------------------------------------------------------------------

fn gluing_filters() -> Check {
    let (tree, mv) = orientation_reversing_gluing();
    let err = check_quasimanifold_conditions(&tree.cw(), &mv).err().ok_or("orientation reversing move accepted")?;
    ensure(err.violation == Violation::NonOrientable && err.violation.label() == "i", || format!("{err:?}"))?;
    let (tree, first, second) = crossing_gluings();
    let next = check_quasimanifold_conditions(&tree.cw(), &first).map_err(|e| format!("first move rejected: {e:?}"))?;
    let err = check_quasimanifold_conditions(&next, &second).err().ok_or("crossing move accepted")?;
    ensure(err.violation == Violation::NonPlanar && err.violation.label() == "ii", || format!("{err:?}"))?;
    Ok("orientation reversing move rejected (i); crossing move rejected (ii)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("face counts of trees", face_count_formulas),
        ("planar matching counts", matching_counts),
        ("tree count bound", tree_bound),
        ("closed surface census", surface_census),
        ("pinched quasimanifold", pinched_example),
        ("cone equivalence", cone_equivalence),
        ("monotonicity and inclusion", monotonicity),
        ("double ball", double_ball_example),
        ("homology engine", homology_engine),
        ("3-dimensional census and bounds", solid_census),
        ("gluing filters", gluing_filters),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2} PASS {title}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
