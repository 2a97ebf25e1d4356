//! Perfect tilings as exact cover over the copy hypergraph.

use serde::Serialize;

use crate::bitset::{iter_ones, BitSet};
use crate::embed::{Completion, Embedder, SearchOutcome};
use crate::error::{usage, Error, Result};
use crate::graph::{OrientedGraph, Partition};
use crate::lattice::{lattice_precheck, PrecheckVerdict};

pub const DEFAULT_EDGE_CAP: usize = 10_000_000;

/// The `|F|`-uniform hypergraph on `V(G)` whose edges are the vertex sets
/// spanning a copy of `F`. Edges are sorted vertex lists in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopyHypergraph {
    pub ground: usize,
    pub uniformity: usize,
    pub edges: Vec<Vec<usize>>,
}

impl CopyHypergraph {
    pub fn new(ground: usize, uniformity: usize, mut edges: Vec<Vec<usize>>) -> Result<Self> {
        for e in &mut edges {
            e.sort_unstable();
            if e.len() != uniformity {
                return usage(format!("edge {e:?} does not have {uniformity} vertices"));
            }
            if e.windows(2).any(|w| w[0] == w[1]) || e.last().is_some_and(|&x| x >= ground) {
                return usage(format!("edge {e:?} is not a subset of 0..{ground}"));
            }
        }
        edges.sort();
        edges.dedup();
        Ok(CopyHypergraph { ground, uniformity, edges })
    }

    /// Minimum vertex degree over the ground set.
    pub fn min_vertex_degree(&self) -> usize {
        self.vertex_degrees().into_iter().min().unwrap_or(0)
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.ground];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }
}

pub fn copy_hypergraph(f: &OrientedGraph, g: &OrientedGraph) -> Result<CopyHypergraph> {
    copy_hypergraph_capped(f, g, DEFAULT_EDGE_CAP)
}

pub fn copy_hypergraph_capped(f: &OrientedGraph, g: &OrientedGraph, cap: usize) -> Result<CopyHypergraph> {
    if f.n() > g.n() {
        return usage(format!("pattern has {} vertices but host only {}", f.n(), g.n()));
    }
    let mut set = std::collections::BTreeSet::new();
    let mut overflow = false;
    Embedder::new(f, g).for_each(|m| {
        let mut e = m.to_vec();
        e.sort_unstable();
        set.insert(e);
        overflow = set.len() > cap;
        !overflow
    });
    if overflow {
        return Err(Error::Resource(format!("copy hypergraph exceeds {cap} edges")));
    }
    Ok(CopyHypergraph { ground: g.n(), uniformity: f.n(), edges: set.into_iter().collect() })
}

/// Disjoint copies of a pattern, each stored as a sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tiling {
    pub copies: Vec<Vec<usize>>,
}

impl Tiling {
    pub fn covered(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.copies.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn is_perfect(&self, host: &OrientedGraph) -> bool {
        self.covered().len() == host.n()
    }

    /// Disjointness plus a fresh embedding check of `f` inside every copy.
    pub fn validate(&self, f: &OrientedGraph, host: &OrientedGraph) -> bool {
        let mut seen = BitSet::new(host.n());
        for c in &self.copies {
            if c.len() != f.n() {
                return false;
            }
            for &v in c {
                if v >= host.n() || seen.contains(v) {
                    return false;
                }
                seen.insert(v);
            }
            let within = BitSet::from_slice(host.n(), c);
            if Embedder::new(f, host).within(within).sequential().find().found().is_none() {
                return false;
            }
        }
        true
    }
}

/// Exact cover of `target` by edges of `h`, branching on the uncovered
/// vertex with the fewest usable edges. Returns the matching as sorted edges.
pub fn hypergraph_perfect_matching(
    h: &CopyHypergraph,
    target: &[usize],
    budget: Option<u64>,
) -> Result<SearchOutcome<Vec<Vec<usize>>>> {
    let mut want = BitSet::new(h.ground);
    for &v in target {
        if v >= h.ground {
            return usage(format!("vertex {v} outside the ground set 0..{}", h.ground));
        }
        want.insert(v);
    }
    if h.uniformity == 0 {
        return Ok(if want.is_empty() { SearchOutcome::Found(Vec::new()) } else { SearchOutcome::NotFound });
    }
    if want.len() % h.uniformity != 0 {
        return Ok(SearchOutcome::NotFound);
    }
    let edges: Vec<BitSet> = h
        .edges
        .iter()
        .filter(|e| e.iter().all(|&v| want.contains(v)))
        .map(|e| BitSet::from_slice(h.ground, e))
        .collect();
    let mut incident = vec![Vec::new(); h.ground];
    for (i, e) in edges.iter().enumerate() {
        for v in e.iter() {
            incident[v].push(i);
        }
    }
    let mut solver = Cover {
        edges: &edges,
        incident: &incident,
        uncovered: want,
        chosen: Vec::new(),
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
    };
    Ok(match solver.search() {
        Completion::Stopped => {
            let mut m: Vec<Vec<usize>> = solver.chosen.iter().map(|&i| edges[i].to_vec()).collect();
            m.sort();
            SearchOutcome::Found(m)
        }
        Completion::Exhausted => SearchOutcome::NotFound,
        Completion::OutOfBudget => SearchOutcome::Inconclusive,
    })
}

struct Cover<'a> {
    edges: &'a [BitSet],
    incident: &'a [Vec<usize>],
    uncovered: BitSet,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Cover<'_> {
    fn usable(&self, e: usize) -> bool {
        self.edges[e].words().iter().zip(self.uncovered.words()).all(|(a, b)| a & !b == 0)
    }

    /// `Stopped` means a cover was found and left in `chosen`.
    fn search(&mut self) -> Completion {
        if self.uncovered.is_empty() {
            return Completion::Stopped;
        }
        if self.nodes >= self.budget {
            return Completion::OutOfBudget;
        }
        self.nodes += 1;
        let mut best: Option<(usize, usize)> = None;
        for v in iter_ones(self.uncovered.words()) {
            let c = self.incident[v].iter().filter(|&&e| self.usable(e)).count();
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((v, c));
                if c == 0 {
                    return Completion::Exhausted;
                }
            }
        }
        let (v, _) = best.expect("uncovered set is non-empty");
        let incident = self.incident;
        for &e in &incident[v] {
            if !self.usable(e) {
                continue;
            }
            self.uncovered.difference_with(self.edges[e].words());
            self.chosen.push(e);
            match self.search() {
                Completion::Exhausted => {}
                other => return other,
            }
            self.chosen.pop();
            self.uncovered.union_with(self.edges[e].words());
        }
        Completion::Exhausted
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TilingMode {
    Found,
    RefutedExhaustive,
    RefutedLattice,
    Inconclusive,
}

impl TilingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TilingMode::Found => "found",
            TilingMode::RefutedExhaustive => "refuted-exhaustive",
            TilingMode::RefutedLattice => "refuted-lattice",
            TilingMode::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of a perfect-tiling query; serializes as the certificate document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TilingReport {
    pub mode: TilingMode,
    pub copies: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct TilingOptions<'a> {
    pub budget: Option<u64>,
    /// When set, the residue-lattice pre-check runs before the search.
    pub partition: Option<&'a Partition>,
    /// Modulus for the pre-check; defaults to `|V(F)|`.
    pub modulus: Option<usize>,
}

pub fn perfect_tiling(f: &OrientedGraph, g: &OrientedGraph, opts: &TilingOptions) -> Result<TilingReport> {
    let refuted = |mode, note: String| TilingReport { mode, copies: Vec::new(), note: Some(note) };
    if f.n() == 0 {
        return usage("pattern must have at least one vertex");
    }
    if g.n() % f.n() != 0 {
        return Ok(refuted(TilingMode::RefutedLattice, format!("divisibility: {} does not divide {}", f.n(), g.n())));
    }
    if let Some(p) = opts.partition {
        let m = opts.modulus.unwrap_or(f.n());
        if let PrecheckVerdict::Refuted { target, modulus } = lattice_precheck(f, g, p, m)? {
            return Ok(refuted(
                TilingMode::RefutedLattice,
                format!("{target} is not in the lattice of copy vectors mod {modulus}"),
            ));
        }
    }
    let h = copy_hypergraph(f, g)?;
    let all: Vec<usize> = (0..g.n()).collect();
    Ok(match hypergraph_perfect_matching(&h, &all, opts.budget)? {
        SearchOutcome::Found(copies) => {
            let t = Tiling { copies };
            assert!(t.validate(f, g) && t.is_perfect(g), "solver produced an invalid tiling");
            TilingReport { mode: TilingMode::Found, copies: t.copies, note: None }
        }
        SearchOutcome::NotFound => {
            refuted(TilingMode::RefutedExhaustive, format!("exact cover over {} copies has no solution", h.edges.len()))
        }
        SearchOutcome::Inconclusive => TilingReport {
            mode: TilingMode::Inconclusive,
            copies: Vec::new(),
            note: Some("node budget exhausted".into()),
        },
    })
}

/// Takes copies in lexicographic order whenever they are disjoint from
/// everything taken so far.
pub fn greedy_tiling(f: &OrientedGraph, g: &OrientedGraph) -> Result<Tiling> {
    if f.n() > g.n() || f.n() == 0 {
        return Ok(Tiling { copies: Vec::new() });
    }
    let h = copy_hypergraph(f, g)?;
    let mut used = BitSet::new(g.n());
    let mut copies = Vec::new();
    for e in h.edges {
        if e.iter().all(|&v| !used.contains(v)) {
            e.iter().for_each(|&v| used.insert(v));
            copies.push(e);
        }
    }
    Ok(Tiling { copies })
}
