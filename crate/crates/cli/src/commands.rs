use std::collections::BTreeSet;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use tlc_core::construction::{face_counts, generate_trees};
use tlc_core::enumeration::census::{census_resume, read_records, CensusConfig, CensusManifest, ComplexClass};
use tlc_core::enumeration::{bound_report, examples};
use tlc_core::homology::{classify_surface, reduced_homology};
use tlc_core::io::{complex_line, read_complexes, read_constructions, tree_line, ComplexJson, FORMAT_VERSION};
use tlc_core::recognition::{certify_manifold, is_t_constructible, is_t_lc, verify_split_tree, ManifoldCertificate};
use tlc_core::{Budget, Face, SimplicialComplex, Verdict};

use crate::{CertifyCmd, Cli, Command, GlueCmd, Global, RecognizeCmd, TreeCmd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Success = 0,
    Negative = 1,
    Indeterminate = 2,
    Input = 3,
}

impl From<Verdict> for Exit {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::True => Exit::Success,
            Verdict::False => Exit::Negative,
            Verdict::Indeterminate => Exit::Indeterminate,
        }
    }
}

/// Errors in what the user gave us; everything maps to exit 3.
type Res = anyhow::Result<(Exit, Value)>;

pub fn run(cli: &Cli) -> Exit {
    let g = &cli.global;
    let out = match &cli.command {
        Command::Tree(TreeCmd::Gen { d, n, labelled, sample }) => tree_gen(g, *d, *n, *labelled, *sample),
        Command::Tree(TreeCmd::Facecounts { d, n }) => tree_facecounts(*d, *n),
        Command::Glue(GlueCmd::Replay { file }) => glue_replay(file),
        Command::Recognize(RecognizeCmd::Lc { input, t }) => recognize_lc(g, &input.file, *t),
        Command::Recognize(RecognizeCmd::Constructible { input, t }) => recognize_constructible(g, &input.file, *t),
        Command::Certify(CertifyCmd::Manifold(input)) => certify(&input.file),
        Command::Homology(input) => homology(&input.file),
        Command::Link { input, face } => link(&input.file, face),
        Command::Census { d, n, t, class, closed, resume } => {
            return census(g, *d, *n, *t, class, *closed, resume.as_deref()).unwrap_or_else(input_error)
        }
        Command::Bounds { d, n, count } => bounds(*d, *n, *count),
        Command::Examples { name } => examples_cmd(g, name.as_deref()),
    };
    match out {
        Ok((code, mut v)) => {
            if let (Some(path), Value::Object(m)) = (&g.out, &mut v) {
                m.insert("format_version".into(), json!(FORMAT_VERSION));
                m.insert("exit".into(), json!(code as u8));
                let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
                if let Err(e) = fs::write(path, text) {
                    return input_error(anyhow!("cannot write {}: {e}", path.display()));
                }
            }
            code
        }
        Err(e) => input_error(e),
    }
}

fn input_error(e: anyhow::Error) -> Exit {
    eprintln!("error: {e:#}");
    Exit::Input
}

fn load(file: &Path) -> anyhow::Result<Vec<SimplicialComplex>> {
    let f = fs::File::open(file).with_context(|| format!("cannot open {}", file.display()))?;
    read_complexes(BufReader::new(f)).map_err(|e| anyhow!("{}: {e}", file.display()))
}

fn worst(codes: impl IntoIterator<Item = Exit>) -> Exit {
    codes.into_iter().max().unwrap_or(Exit::Success)
}

fn describe(k: &SimplicialComplex) -> String {
    format!("d={} vertices={} facets={}", k.dim(), k.num_vertices(), k.num_facets())
}

fn tree_gen(g: &Global, d: usize, n: usize, labelled: bool, sample: Option<usize>) -> Res {
    if d == 0 || n == 0 {
        return Err(anyhow!("--d and --n must be positive"));
    }
    let mut trees = generate_trees(d, n, !labelled);
    let total = trees.len();
    if let Some(k) = sample.filter(|&k| k < total) {
        let mut rng = StdRng::seed_from_u64(g.seed);
        let mut keep = rand::seq::index::sample(&mut rng, total, k).into_vec();
        keep.sort_unstable();
        trees = keep.into_iter().map(|i| trees[i].clone()).collect();
    }
    println!("{total} trees of {n} {d}-simplices{}", if labelled { " (labelled)" } else { " up to isomorphism" });
    if trees.len() < total {
        println!("kept a sample of {} (seed {})", trees.len(), g.seed);
    }
    if let Some(path) = &g.out {
        let text: String = trees.iter().map(|t| tree_line(t) + "\n").collect();
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    // the trees file is the machine output
    Ok((Exit::Success, Value::Null))
}

fn tree_facecounts(d: usize, n: usize) -> Res {
    if d == 0 || n == 0 {
        return Err(anyhow!("--d and --n must be positive"));
    }
    let reports: Vec<_> = generate_trees(d, n, true).iter().map(face_counts).collect();
    let bad = reports.iter().filter(|r| !r.matches()).count();
    let r = &reports[0];
    let mut line = vec![format!("N{}={}", d - 1, r.n_d1)];
    if d >= 2 {
        line.push(format!("N{}={}", d - 2, r.n_d2));
    }
    if let Some(x) = r.n_d3 {
        line.push(format!("N{}={}", d - 3, x));
    }
    println!("{}", line.join(" "));
    println!("{} trees checked, {} disagree with the closed forms", reports.len(), bad);
    let code = if bad == 0 { Exit::Success } else { Exit::Negative };
    Ok((code, json!({ "command": "tree facecounts", "d": d, "n": n, "mismatches": bad, "reports": reports })))
}

fn glue_replay(file: &Path) -> Res {
    let text = fs::read_to_string(file).with_context(|| format!("cannot open {}", file.display()))?;
    let lcs = read_constructions(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    if lcs.is_empty() {
        return Err(anyhow!("{}: no construction found", file.display()));
    }
    let mut results = Vec::new();
    let mut codes = Vec::new();
    for (i, lc) in lcs.iter().enumerate() {
        let r = lc.replay();
        let complex = lc.labelled_complex(&r.state);
        match (&r.failure, &complex) {
            (Some((j, e)), _) => {
                println!("construction {i}: move {j} fails: {e}");
                codes.push(Exit::Negative);
            }
            (None, Ok(k)) => {
                println!("construction {i}: {} moves replay at t={}, giving {}", r.applied, lc.t, describe(k));
                codes.push(Exit::Success);
            }
            (None, Err(e)) => {
                println!("construction {i}: {} moves replay but the result is not simplicial: {e}", r.applied);
                codes.push(Exit::Negative);
            }
        }
        results.push(json!({
            "valid": r.failure.is_none(),
            "applied": r.applied,
            "failure": r.failure.as_ref().map(|(j, e)| json!({ "move": j, "error": e.to_string() })),
            "complex": complex.ok().map(|k| ComplexJson::from(&k)),
        }));
    }
    Ok((worst(codes), json!({ "command": "glue replay", "results": results })))
}

fn recognize_lc(g: &Global, file: &Path, t: usize) -> Res {
    let ks = load(file)?;
    let mut results = Vec::new();
    let mut codes = Vec::new();
    for (i, k) in ks.iter().enumerate() {
        let budget = Budget::from_option(g.budget_ms);
        let r = match is_t_lc(k, t, &budget) {
            Ok(r) => r,
            Err(e) => {
                println!("complex {i} ({}): not {t}-LC: {e}", describe(k));
                codes.push(Exit::Negative);
                results.push(json!({ "verdict": Verdict::False, "witness": null, "reason": e.to_string() }));
                continue;
            }
        };
        let word = match r.verdict {
            Verdict::True => format!("{t}-LC"),
            Verdict::False => format!("not {t}-LC"),
            Verdict::Indeterminate => "undecided within budget".to_string(),
        };
        let why = r.reason.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
        println!(
            "complex {i} ({}): {word}{why}; {} spanning trees tried",
            describe(k),
            r.stats.trees_tried
        );
        codes.push(r.verdict.into());
        results.push(serde_json::to_value(&r)?);
    }
    Ok((worst(codes), json!({ "command": "recognize lc", "t": t, "results": results })))
}

fn recognize_constructible(g: &Global, file: &Path, t: usize) -> Res {
    let ks = load(file)?;
    let mut results = Vec::new();
    let mut codes = Vec::new();
    for (i, k) in ks.iter().enumerate() {
        let r = is_t_constructible(k, t, &Budget::from_option(g.budget_ms));
        if let Some(w) = &r.witness {
            if !verify_split_tree(k, t, w) {
                return Err(anyhow!("internal error: witness for complex {i} does not verify"));
            }
        }
        let word = match r.verdict {
            Verdict::True => format!("{t}-constructible"),
            Verdict::False => format!("not {t}-constructible"),
            Verdict::Indeterminate => "undecided within budget".to_string(),
        };
        println!("complex {i} ({}): {word}; {} splits tried", describe(k), r.splits_tried);
        codes.push(r.verdict.into());
        results.push(serde_json::to_value(&r)?);
    }
    Ok((worst(codes), json!({ "command": "recognize constructible", "t": t, "results": results })))
}

fn certify(file: &Path) -> Res {
    let ks = load(file)?;
    let mut results = Vec::new();
    let mut codes = Vec::new();
    for (i, k) in ks.iter().enumerate() {
        let c = certify_manifold(k);
        let (code, word) = match &c {
            ManifoldCertificate::CertifiedManifold => (Exit::Success, "manifold".to_string()),
            ManifoldCertificate::CertifiedNonManifold { face, reason } => {
                (Exit::Negative, format!("not a manifold at {:?}: {reason}", face.vertices()))
            }
            ManifoldCertificate::HomologyCertifiedOnly => {
                (Exit::Indeterminate, "every link has sphere or ball homology (not a proof)".to_string())
            }
        };
        println!("complex {i} ({}): {word}", describe(k));
        codes.push(code);
        results.push(serde_json::to_value(&c)?);
    }
    Ok((worst(codes), json!({ "command": "certify manifold", "results": results })))
}

fn homology(file: &Path) -> Res {
    let ks = load(file)?;
    let mut results = Vec::new();
    for (i, k) in ks.iter().enumerate() {
        let h = reduced_homology(k);
        println!("complex {i} ({}): {h}", describe(k));
        results.push(serde_json::to_value(&h)?);
    }
    Ok((Exit::Success, json!({ "command": "homology", "results": results })))
}

fn link(file: &Path, face: &[u32]) -> Res {
    let ks = load(file)?;
    let sigma = Face::new(face.iter().copied()).map_err(|e| anyhow!("--face: {e}"))?;
    let mut results = Vec::new();
    for (i, k) in ks.iter().enumerate() {
        if !k.contains(&sigma) {
            return Err(anyhow!("complex {i} does not contain the face {face:?}"));
        }
        let l = k.link(&sigma)?;
        let surface = (l.dim() == 2).then(|| classify_surface(&l));
        print!("complex {i}: link of {face:?} has {}", describe(&l));
        match &surface {
            Some(Ok(s)) => println!(
                "; surface, {}orientable, genus {}, {} boundary circles, euler {}",
                if s.orientable { "" } else { "non-" },
                s.genus,
                s.boundary_circles,
                s.euler
            ),
            Some(Err(e)) => println!("; not a surface: {e}"),
            None => println!(),
        }
        results.push(json!({
            "link": ComplexJson::from(&l),
            "facets": l.facets().iter().map(|f| f.vertices().to_vec()).collect::<Vec<_>>(),
            "surface": surface.map(|s| s.map_err(|e| e.to_string()).ok()),
        }));
    }
    Ok((Exit::Success, json!({ "command": "link", "face": face, "results": results })))
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn census(g: &Global, d: usize, n: usize, t: usize, class: &str, closed: bool, resume: Option<&Path>) -> anyhow::Result<Exit> {
    let class: ComplexClass = class.parse().map_err(|e: String| anyhow!("--class: {e}"))?;
    let cfg = CensusConfig { d, n, t, class, closed, workers: None };
    let (done, prior) = match resume {
        None => (BTreeSet::new(), Vec::new()),
        Some(m) => {
            let text = fs::read_to_string(m).with_context(|| format!("cannot open {}", m.display()))?;
            let manifest: CensusManifest =
                serde_json::from_str(&text).map_err(|e| anyhow!("{}: line {}, column {}: {e}", m.display(), e.line(), e.column()))?;
            if !manifest.matches(&cfg) {
                return Err(anyhow!("{} was written for a different census", m.display()));
            }
            let records_file = m
                .to_str()
                .and_then(|s| s.strip_suffix(".manifest.json"))
                .ok_or_else(|| anyhow!("--resume expects a file ending in .manifest.json"))?;
            let f = fs::File::open(records_file).with_context(|| format!("cannot open {records_file}"))?;
            let prior = read_records(&cfg, BufReader::new(f)).map_err(|e| anyhow!("{records_file}: {e}"))?;
            (manifest.done.into_iter().collect(), prior)
        }
    };
    let budget = Budget::from_option(g.budget_ms);
    let c = census_resume(&cfg, &budget, &done, prior)?;
    println!(
        "census d={d} N={n} t={t} class={} closed={closed}: {} records, {} trees, {} tasks, {} search nodes, {} ms{}",
        format!("{class:?}").to_lowercase(),
        c.records.len(),
        c.trees,
        c.tasks,
        c.nodes,
        c.elapsed_ms,
        if c.complete { "" } else { ", INCOMPLETE (budget)" }
    );
    for (i, r) in c.records.iter().enumerate() {
        println!(
            "  {i}: vertices={} facets={} {} [{}{}]",
            r.canonical.vertices,
            r.n,
            r.homology,
            r.flags.manifold,
            if r.flags.quasimanifold { ", quasimanifold" } else { "" }
        );
    }
    if let Some(out) = &g.out {
        fs::write(out, c.to_jsonl()).with_context(|| format!("cannot write {}", out.display()))?;
        let m = serde_json::to_string_pretty(&c.manifest(g.budget_ms))? + "\n";
        let mp = manifest_path(out);
        fs::write(&mp, m).with_context(|| format!("cannot write {}", mp.display()))?;
    }
    Ok(if c.complete { Exit::Success } else { Exit::Indeterminate })
}

fn bounds(d: usize, n: usize, count: u128) -> Res {
    if d < 2 || n == 0 {
        return Err(anyhow!("bounds need d >= 2 and N >= 1"));
    }
    let b = bound_report(d, n, count);
    let v = &b.verdicts;
    let pass = |x: bool| if x { "PASS" } else { "FAIL" };
    println!("d={d} N={n} D={} N_(d-3)={} exponent={}", b.big_d, b.n_d3, b.exponent);
    println!("log2 ceilings: per-tree {:.3}, (de)^N {:.3}, total {:.3}, d^3 N/2 = {:.3}", b.log2_tree_bound, b.log2_de_bound, b.log2_total_bound, b.log2_ceiling);
    println!("count {count} below 2^(d^3 N/2): {}", pass(v.count_below_ceiling));
    println!("count {count} below total bound: {}", pass(v.count_below_total_bound));
    println!("exponent identity: {}", pass(v.exponent_identity));
    match v.binomial_identity {
        Some(x) => println!("binomial sum identity: {}", pass(x)),
        None => println!("binomial sum identity: n/a (D is not an integer)"),
    }
    println!("tree base below de: {}", pass(v.tree_base_below_de));
    let ok = v.count_below_ceiling
        && v.count_below_total_bound
        && v.exponent_identity
        && v.binomial_identity != Some(false)
        && v.tree_base_below_de;
    let code = if ok { Exit::Success } else { Exit::Negative };
    Ok((code, json!({ "command": "bounds", "report": b })))
}

fn examples_cmd(g: &Global, name: Option<&str>) -> Res {
    let all = examples::named();
    let chosen: Vec<_> = match name {
        Some(n) => {
            let hit: Vec<_> = all.into_iter().filter(|(k, _)| *k == n).collect();
            if hit.is_empty() {
                return Err(anyhow!("no example named {n:?}"));
            }
            hit
        }
        None => all,
    };
    for (i, (n, k)) in chosen.iter().enumerate() {
        println!("{}: {n} ({})", i + 1, describe(k));
    }
    if let Some(path) = &g.out {
        let text: String = chosen.iter().map(|(_, k)| complex_line(k) + "\n").collect();
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok((Exit::Success, Value::Null))
}
