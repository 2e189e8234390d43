//! Exhaustive census of the complexes a family of trees can be glued into.
//!
//! For each tree the search matches boundary cells lowest first, applying
//! each gluing at once and pruning states that can no longer become
//! simplicial (or, for the manifold-like classes, whose links are already
//! beyond repair). Whether a complete matching can be ordered into
//! t-admissible steps is decided at the leaf.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::canonical::canonical_form;
use crate::complex::SimplicialComplex;
use crate::construction::gluing::{apply_gluing, bijections, check_admissible, GluingMove};
use crate::construction::quasi::{all_link_surfaces, check_quasimanifold_conditions, is_dead};
use crate::construction::replay::LocalConstruction;
use crate::construction::tree::{generate_trees, TreeOfSimplices};
use crate::construction::{realize_greedy, Realization};
use crate::cw::{CellId, CwComplex};
use crate::homology::{reduced_homology, HomologyProfile};
use crate::io::{ComplexJson, InputError, FORMAT_VERSION};
use crate::recognition::manifold::{certify_manifold, ManifoldCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexClass {
    Pseudomanifold,
    Quasimanifold,
    Manifold,
}

impl FromStr for ComplexClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pseudomanifold" => Ok(ComplexClass::Pseudomanifold),
            "quasimanifold" => Ok(ComplexClass::Quasimanifold),
            "manifold" => Ok(ComplexClass::Manifold),
            _ => Err(format!("unknown class {s:?}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusConfig {
    pub d: usize,
    pub n: usize,
    pub t: usize,
    pub class: ComplexClass,
    pub closed: bool,
    /// Worker threads; `None` uses the ambient pool.
    #[serde(skip)]
    pub workers: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassFlags {
    pub pseudomanifold: bool,
    pub quasimanifold: bool,
    pub manifold: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    pub canonical: ComplexJson,
    #[serde(skip)]
    pub complex: SimplicialComplex,
    pub n: usize,
    pub flags: ClassFlags,
    pub witness: LocalConstruction,
    pub homology: HomologyProfile,
    /// (tree index, first-branch index) of the search task that found it.
    pub task: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub config: CensusConfig,
    pub records: Vec<CensusRecord>,
    pub complete: bool,
    pub trees: usize,
    pub tasks: usize,
    pub done: Vec<(usize, usize)>,
    pub nodes: u64,
    pub elapsed_ms: u128,
}

impl CensusRecord {
    /// Rebuilds a record from its stored form and witness, checking that
    /// the witness still replays to it.
    pub fn restore(cfg: &CensusConfig, stored: StoredRecord) -> Result<CensusRecord, String> {
        let canon = stored.canonical.to_complex().map_err(|e| e.to_string())?;
        let w = stored.witness;
        let r = w.replay();
        if let Some((i, e)) = r.failure {
            return Err(format!("witness fails at move {i}: {e}"));
        }
        let k = r.complex().map_err(|e| e.to_string())?;
        if canonical_form(&k).complex != canon {
            return Err("witness does not replay to the stored complex".into());
        }
        Ok(make_record(cfg, &w.tree, canon, w.moves, stored.task))
    }
}

/// The fields of a record line needed to restore it.
#[derive(Deserialize)]
pub struct StoredRecord {
    pub canonical: ComplexJson,
    pub witness: LocalConstruction,
    pub task: (usize, usize),
}

/// Reads census records written one JSON object per line.
pub fn read_records<R: std::io::BufRead>(cfg: &CensusConfig, r: R) -> Result<Vec<CensusRecord>, InputError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| InputError { line: lineno, column: 1, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let stored: StoredRecord = serde_json::from_str(&line)
            .map_err(|e| InputError { line: lineno, column: e.column(), message: e.to_string() })?;
        out.push(CensusRecord::restore(cfg, stored).map_err(|message| InputError { line: lineno, column: 1, message })?);
    }
    Ok(out)
}

/// Run summary stored next to the records; `done` makes a run resumable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusManifest {
    pub format_version: String,
    pub d: usize,
    pub n: usize,
    pub t: usize,
    pub class: ComplexClass,
    pub closed: bool,
    pub budget_ms: Option<u64>,
    pub complete: bool,
    pub elapsed_ms: u128,
    pub trees: usize,
    pub tasks: usize,
    pub nodes: u64,
    pub records: usize,
    pub done: Vec<(usize, usize)>,
}

impl Census {
    pub fn manifest(&self, budget_ms: Option<u64>) -> CensusManifest {
        let c = &self.config;
        CensusManifest {
            format_version: FORMAT_VERSION.to_string(),
            d: c.d,
            n: c.n,
            t: c.t,
            class: c.class,
            closed: c.closed,
            budget_ms,
            complete: self.complete,
            elapsed_ms: self.elapsed_ms,
            trees: self.trees,
            tasks: self.tasks,
            nodes: self.nodes,
            records: self.records.len(),
            done: self.done.clone(),
        }
    }

    /// The records as JSON Lines.
    pub fn to_jsonl(&self) -> String {
        self.records.iter().map(|r| serde_json::to_string(r).expect("serializable") + "\n").collect()
    }
}

impl CensusManifest {
    pub fn matches(&self, cfg: &CensusConfig) -> bool {
        (self.d, self.n, self.t, self.class, self.closed) == (cfg.d, cfg.n, cfg.t, cfg.class, cfg.closed)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error("the quasimanifold class needs d >= 3")]
    QuasiNeedsD3,
    #[error("d and N must be positive")]
    Empty,
}

/// A partial matching: the state after applying `moves`, plus boundary
/// cells chosen to stay unmatched.
#[derive(Clone)]
struct Node {
    state: CwComplex,
    moves: Vec<GluingMove>,
    skipped: BTreeSet<CellId>,
}

struct Ctx<'a> {
    cfg: &'a CensusConfig,
    tree: &'a TreeOfSimplices,
    budget: &'a Budget,
    nodes: &'a AtomicU64,
}

/// Leaf results of one task, in search order.
struct TaskOut {
    found: Vec<(SimplicialComplex, Vec<GluingMove>)>,
    complete: bool,
}

pub fn census(cfg: &CensusConfig, budget: &Budget) -> Result<Census, CensusError> {
    census_resume(cfg, budget, &BTreeSet::new(), Vec::new())
}

/// Runs the census, skipping tasks listed in `done` whose records are
/// already in `prior`.
pub fn census_resume(
    cfg: &CensusConfig,
    budget: &Budget,
    done: &BTreeSet<(usize, usize)>,
    prior: Vec<CensusRecord>,
) -> Result<Census, CensusError> {
    if cfg.d == 0 || cfg.n == 0 {
        return Err(CensusError::Empty);
    }
    if cfg.class == ComplexClass::Quasimanifold && cfg.d < 3 {
        return Err(CensusError::QuasiNeedsD3);
    }
    let run = || run_census(cfg, budget, done, prior);
    Ok(match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build().expect("thread pool").install(run),
        None => run(),
    })
}

fn run_census(cfg: &CensusConfig, budget: &Budget, done: &BTreeSet<(usize, usize)>, prior: Vec<CensusRecord>) -> Census {
    let start = Instant::now();
    let trees = generate_trees(cfg.d, cfg.n, true);
    let nodes = AtomicU64::new(0);
    let roots: Vec<Vec<Node>> = trees
        .par_iter()
        .map(|tree| {
            let ctx = Ctx { cfg, tree, budget, nodes: &nodes };
            let root = Node { state: tree.cw(), moves: Vec::new(), skipped: BTreeSet::new() };
            if ctx.prune(&root.state) {
                return Vec::new();
            }
            match ctx.children(&root) {
                Some(c) => c,
                None => vec![root],
            }
        })
        .collect();
    let tasks: Vec<(usize, usize, &Node)> = roots
        .iter()
        .enumerate()
        .flat_map(|(ti, v)| v.iter().enumerate().map(move |(bi, n)| (ti, bi, n)))
        .filter(|(ti, bi, _)| !done.contains(&(*ti, *bi)))
        .collect();
    let outs: Vec<((usize, usize), TaskOut)> = tasks
        .par_iter()
        .map(|&(ti, bi, node)| {
            let ctx = Ctx { cfg, tree: &trees[ti], budget, nodes: &nodes };
            let mut out = TaskOut { found: Vec::new(), complete: true };
            let mut seen = HashSet::new();
            ctx.dfs(node.clone(), &mut out, &mut seen);
            ((ti, bi), out)
        })
        .collect();
    // reduce in task order so the witness kept for each form is the first one found
    let mut best: BTreeMap<SimplicialComplex, CensusRecord> = BTreeMap::new();
    for r in prior {
        best.insert(r.complex.clone(), r);
    }
    let mut complete = true;
    let mut finished: Vec<(usize, usize)> = done.iter().copied().collect();
    let mut canon_cache: HashMap<SimplicialComplex, SimplicialComplex> = HashMap::new();
    for ((ti, bi), out) in outs {
        if out.complete {
            finished.push((ti, bi));
        } else {
            complete = false;
        }
        for (raw, moves) in out.found {
            let canon = canon_cache.entry(raw.clone()).or_insert_with(|| canonical_form(&raw).complex).clone();
            let better = best.get(&canon).is_none_or(|r| (ti, bi) < r.task);
            if better {
                let rec = make_record(cfg, &trees[ti], canon.clone(), moves, (ti, bi));
                best.insert(canon, rec);
            }
        }
    }
    finished.sort_unstable();
    finished.dedup();
    Census {
        config: cfg.clone(),
        records: best.into_values().collect(),
        complete: complete && !budget.exhausted(),
        trees: trees.len(),
        tasks: roots.iter().map(Vec::len).sum(),
        done: finished,
        nodes: nodes.load(Ordering::Relaxed),
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn make_record(
    cfg: &CensusConfig,
    tree: &TreeOfSimplices,
    canon: SimplicialComplex,
    moves: Vec<GluingMove>,
    task: (usize, usize),
) -> CensusRecord {
    let cert = certify_manifold(&canon);
    let quasi = cfg.d >= 3 && {
        let state = LocalConstruction::new(cfg.t, tree.clone(), moves.clone()).replay().state;
        quasi_links_ok(&state, cfg.closed)
    };
    CensusRecord {
        canonical: ComplexJson::from(&canon),
        n: canon.num_facets(),
        flags: ClassFlags {
            pseudomanifold: canon.is_pseudomanifold(),
            quasimanifold: quasi && cfg.class != ComplexClass::Pseudomanifold,
            manifold: cert.label(),
        },
        witness: LocalConstruction::new(cfg.t, tree.clone(), moves),
        homology: reduced_homology(&canon),
        complex: canon,
        task,
    }
}

/// Links of (d-3)-cells: spheres inside, planar orientable surfaces on the
/// boundary (disks when the construction is finished with boundary).
fn quasi_links_ok(state: &CwComplex, closed: bool) -> bool {
    let d = state.dim();
    let cells = state.cells_of_dim(d - 3);
    let links = all_link_surfaces(state, &cells);
    links.values().all(|l| match l.classify_components() {
        Ok(cs) if cs.len() == 1 => {
            let c = &cs[0];
            if closed {
                c.is_sphere()
            } else {
                c.is_sphere() || c.is_disk()
            }
        }
        _ => false,
    })
}

impl Ctx<'_> {
    fn manifold_like(&self) -> bool {
        self.cfg.class != ComplexClass::Pseudomanifold
    }

    /// True when no completion of the state can pass the class filter.
    fn prune(&self, state: &CwComplex) -> bool {
        if is_dead(state) {
            return true;
        }
        if !self.manifold_like() {
            return false;
        }
        let d = state.dim();
        if d >= 2 && closed_loop_with_company(state) {
            return true;
        }
        if d >= 3 {
            let cells = state.cells_of_dim(d - 3);
            for l in all_link_surfaces(state, &cells).values() {
                let (open, _) = l.unpinch();
                match open.classify_components() {
                    Ok(cs) => {
                        if cs.iter().any(|c| !c.orientable || c.genus > 0) {
                            return true;
                        }
                    }
                    Err(_) => return true,
                }
            }
        }
        false
    }

    /// Branches on the lowest boundary cell not yet decided. `None` at a leaf.
    fn children(&self, node: &Node) -> Option<Vec<Node>> {
        let open: Vec<CellId> =
            node.state.boundary_cells().into_iter().filter(|c| !node.skipped.contains(c)).collect();
        let (&a, rest) = open.split_first()?;
        let mut out = Vec::new();
        if !self.cfg.closed {
            let mut skip = node.clone();
            skip.skipped.insert(a);
            out.push(skip);
        }
        for &b in rest {
            for map in bijections(&node.state, a, b) {
                let mv = GluingMove::new(a, b, map);
                let Ok(next) = apply_gluing(&node.state, &mv) else { continue };
                if self.prune(&next) {
                    continue;
                }
                let mut moves = node.moves.clone();
                moves.push(mv);
                out.push(Node { state: next, moves, skipped: node.skipped.clone() });
            }
        }
        Some(out)
    }

    fn dfs(&self, node: Node, out: &mut TaskOut, seen: &mut HashSet<SimplicialComplex>) {
        if !out.complete {
            return;
        }
        if self.budget.exhausted() {
            out.complete = false;
            return;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        match self.children(&node) {
            Some(kids) => {
                for k in kids {
                    self.dfs(k, out, seen);
                }
            }
            None => self.leaf(node, out, seen),
        }
    }

    fn leaf(&self, node: Node, out: &mut TaskOut, seen: &mut HashSet<SimplicialComplex>) {
        let Ok(raw) = node.state.to_simplicial() else { return };
        if seen.contains(&raw) || !self.class_ok(&node.state, &raw) {
            return;
        }
        let Some(order) = self.order(&node.moves) else { return };
        seen.insert(raw.clone());
        out.found.push((raw, order));
    }

    fn class_ok(&self, state: &CwComplex, k: &SimplicialComplex) -> bool {
        match self.cfg.class {
            ComplexClass::Pseudomanifold => k.is_pseudomanifold(),
            ComplexClass::Manifold => match certify_manifold(k) {
                ManifoldCertificate::CertifiedManifold => true,
                ManifoldCertificate::HomologyCertifiedOnly => true,
                ManifoldCertificate::CertifiedNonManifold { .. } => false,
            },
            ComplexClass::Quasimanifold => quasi_links_ok(state, self.cfg.closed),
        }
    }

    /// An order of the moves in which each is t-admissible (and, for
    /// quasimanifolds, passes the link conditions) at its turn.
    fn order(&self, moves: &[GluingMove]) -> Option<Vec<GluingMove>> {
        let start = self.tree.cw();
        let greedy = match realize_greedy(&start, moves, self.cfg.t, &Budget::unlimited()) {
            Realization::Ordered(o) => o,
            _ => return None,
        };
        let ordered: Vec<GluingMove> = greedy.iter().map(|&i| moves[i].clone()).collect();
        if self.cfg.class != ComplexClass::Quasimanifold || passes_conditions(&start, &ordered) {
            return Some(ordered);
        }
        let mut failed = HashSet::new();
        let mut path = Vec::new();
        search_order(&start, moves, self.cfg.t, 0, &mut path, &mut failed).then(|| path.into_iter().map(|i| moves[i].clone()).collect())
    }
}

fn passes_conditions(start: &CwComplex, moves: &[GluingMove]) -> bool {
    let mut s = start.clone();
    for m in moves {
        match check_quasimanifold_conditions(&s, m) {
            Ok(n) => s = n,
            Err(_) => return false,
        }
    }
    true
}

/// Depth-first search over orders with the set of applied moves as memo key.
fn search_order(
    state: &CwComplex,
    moves: &[GluingMove],
    t: usize,
    used: u64,
    path: &mut Vec<usize>,
    failed: &mut HashSet<u64>,
) -> bool {
    if path.len() == moves.len() {
        return true;
    }
    if failed.contains(&used) {
        return false;
    }
    for (i, m) in moves.iter().enumerate() {
        if used >> i & 1 == 1 || check_admissible(state, m, t).is_err() {
            continue;
        }
        let Ok(next) = check_quasimanifold_conditions(state, m) else { continue };
        path.push(i);
        if search_order(&next, moves, t, used | 1 << i, path, failed) {
            return true;
        }
        path.pop();
    }
    failed.insert(used);
    false
}

/// Some (d-2)-cell whose link already closed up into a circle while other
/// pieces of it remain: those pieces can never join the circle.
fn closed_loop_with_company(state: &CwComplex) -> bool {
    let base = state.base();
    let d = base.dim();
    let full = (1u32 << (d + 1)) - 1;
    // per (d-2)-cell, the link graph: nodes are (d-1)-cells, edges top simplices
    let mut graphs: HashMap<CellId, Vec<(CellId, CellId)>> = HashMap::new();
    for s in base.top_faces() {
        for i in 0..=d {
            for j in i + 1..=d {
                let m = full & !(1 << i) & !(1 << j);
                let c = state.cell(base.sub(s, m));
                let e1 = state.cell(base.sub(s, full & !(1 << i)));
                let e2 = state.cell(base.sub(s, full & !(1 << j)));
                graphs.entry(c).or_default().push((e1, e2));
            }
        }
    }
    for edges in graphs.values() {
        if edges.len() < 2 {
            continue;
        }
        let mut deg: HashMap<CellId, usize> = HashMap::new();
        let mut uf: HashMap<CellId, CellId> = HashMap::new();
        fn find(uf: &mut HashMap<CellId, CellId>, x: CellId) -> CellId {
            let p = *uf.entry(x).or_insert(x);
            if p == x {
                x
            } else {
                let r = find(uf, p);
                uf.insert(x, r);
                r
            }
        }
        for &(a, b) in edges {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra != rb {
                uf.insert(ra.max(rb), ra.min(rb));
            }
        }
        let nodes: Vec<CellId> = deg.keys().copied().collect();
        let mut comps: HashMap<CellId, bool> = HashMap::new();
        for v in nodes {
            let r = find(&mut uf, v);
            let closed = comps.entry(r).or_insert(true);
            if deg[&v] != 2 {
                *closed = false;
            }
        }
        if comps.len() > 1 && comps.values().any(|&c| c) {
            return true;
        }
    }
    false
}
