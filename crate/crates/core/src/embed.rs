//! Orientation-preserving injective embeddings of a pattern into a host.
//!
//! The search assigns pattern vertices in a fixed order (decreasing total
//! degree, then decreasing out-degree, then index) and tries host vertices
//! in increasing index order, so the first embedding found is the
//! lexicographically least map in that variable order. Candidates are the
//! host vertices whose global out/in-degrees dominate the pattern vertex's,
//! intersected with the out- or in-rows of already mapped neighbours.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{iter_ones, BitSet};
use crate::error::Result;
use crate::generators::{cycle_power, f_r};
use crate::graph::{IndexVector, OrientedGraph, Partition};

/// An injective map `V(pattern) -> V(host)`; `map[p]` is the image of pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity, range and that every pattern arc lands on a host arc.
    pub fn verify(&self, pattern: &OrientedGraph, host: &OrientedGraph) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&x| x >= host.n()) {
            return false;
        }
        let mut seen = BitSet::new(host.n());
        for &x in &self.map {
            if seen.contains(x) {
                return false;
            }
            seen.insert(x);
        }
        pattern.edges().all(|(u, v)| host.has_edge(self.map[u], self.map[v]))
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }
}

/// Result of a search that may stop on a node budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted without a solution.
    NotFound,
    /// The node budget ran out first; nothing is claimed.
    Inconclusive,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, SearchOutcome::Inconclusive)
    }
}

/// How an enumeration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    Exhausted,
    /// The visitor asked to stop.
    Stopped,
    OutOfBudget,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Budget,
}

/// The backtracking engine behind every embedding query.
pub struct Embedder<'a> {
    pattern: &'a OrientedGraph,
    host: &'a OrientedGraph,
    budget: Option<u64>,
    allowed: Option<BitSet>,
    parallel: bool,
}

/// Variable order and per-depth constraints for one (pattern, host) pair.
struct Plan {
    order: Vec<usize>,
    /// For depth `i`: `(j, forward)` where `forward` means the pattern arc
    /// runs `order[j] -> order[i]`.
    links: Vec<Vec<(usize, bool)>>,
    feasible: Vec<BitSet>,
}

struct State<'p> {
    plan: &'p Plan,
    host: &'p OrientedGraph,
    map: Vec<usize>,
    at_depth: Vec<usize>,
    used: BitSet,
    scratch: Vec<BitSet>,
    nodes: u64,
    budget: u64,
}

impl<'a> Embedder<'a> {
    pub fn new(pattern: &'a OrientedGraph, host: &'a OrientedGraph) -> Self {
        Embedder { pattern, host, budget: None, allowed: None, parallel: true }
    }

    /// Caps the number of search-node expansions. A budgeted search runs on
    /// one thread so that the cap means the same thing on every machine.
    pub fn budget(mut self, nodes: Option<u64>) -> Self {
        self.budget = nodes;
        self
    }

    /// Restricts images to the given host vertices.
    pub fn within(mut self, allowed: BitSet) -> Self {
        self.allowed = Some(allowed);
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    fn plan(&self) -> Plan {
        let p = self.pattern;
        let h = self.host;
        let mut order: Vec<usize> = (0..p.n()).collect();
        order.sort_by_key(|&v| {
            let (o, i) = (p.out_degree(v), p.in_degree(v));
            (std::cmp::Reverse(o + i), std::cmp::Reverse(o), v)
        });
        let links = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                order[..i]
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &u)| {
                        if p.has_edge(u, v) {
                            Some((j, true))
                        } else if p.has_edge(v, u) {
                            Some((j, false))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let feasible = order
            .iter()
            .map(|&v| {
                let (po, pi) = (p.out_degree(v), p.in_degree(v));
                let mut s = BitSet::new(h.n());
                for x in 0..h.n() {
                    let ok = self.allowed.as_ref().is_none_or(|a| a.contains(x));
                    if ok && h.out_degree(x) >= po && h.in_degree(x) >= pi {
                        s.insert(x);
                    }
                }
                s
            })
            .collect();
        Plan { order, links, feasible }
    }

    fn state<'p>(&self, plan: &'p Plan, host: &'p OrientedGraph) -> State<'p> {
        let depth = plan.order.len();
        State {
            plan,
            host,
            map: vec![usize::MAX; depth],
            at_depth: vec![usize::MAX; depth],
            used: BitSet::new(host.n()),
            scratch: vec![BitSet::new(host.n()); depth],
            nodes: 0,
            budget: self.budget.unwrap_or(u64::MAX),
        }
    }

    /// Visits every embedding in search order. The visitor returns `false`
    /// to stop early.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> bool) -> Completion {
        if self.pattern.n() > self.host.n() {
            return Completion::Exhausted;
        }
        let plan = self.plan();
        let mut st = self.state(&plan, self.host);
        match st.dfs(0, &mut visit) {
            Flow::Continue => Completion::Exhausted,
            Flow::Stop => Completion::Stopped,
            Flow::Budget => Completion::OutOfBudget,
        }
    }

    fn use_parallel(&self) -> bool {
        self.parallel && self.budget.is_none() && self.pattern.n() >= 2 && rayon::current_num_threads() > 1
    }

    /// Lexicographically least embedding in the search order.
    pub fn find(&self) -> SearchOutcome<Embedding> {
        if self.pattern.n() > self.host.n() {
            return SearchOutcome::NotFound;
        }
        if !self.use_parallel() {
            let mut found = None;
            return match self.for_each(|m| {
                found = Some(m.to_vec());
                false
            }) {
                Completion::Stopped => SearchOutcome::Found(Embedding { map: found.unwrap() }),
                Completion::Exhausted => SearchOutcome::NotFound,
                Completion::OutOfBudget => SearchOutcome::Inconclusive,
            };
        }
        let plan = self.plan();
        let firsts: Vec<usize> = plan.feasible[0].to_vec();
        let best = AtomicUsize::new(usize::MAX);
        let results: Vec<Option<Vec<usize>>> = firsts
            .par_iter()
            .enumerate()
            .map(|(idx, &x)| {
                if idx > best.load(Ordering::Relaxed) {
                    return None;
                }
                let mut st = self.state(&plan, self.host);
                let mut found = None;
                st.assign(0, x);
                st.dfs(1, &mut |m: &[usize]| {
                    found = Some(m.to_vec());
                    false
                });
                if found.is_some() {
                    best.fetch_min(idx, Ordering::Relaxed);
                }
                found
            })
            .collect();
        match results.into_iter().flatten().next() {
            Some(map) => SearchOutcome::Found(Embedding { map }),
            None => SearchOutcome::NotFound,
        }
    }

    /// Number of embeddings, or `None` if the budget ran out.
    pub fn count(&self) -> Option<u64> {
        if self.pattern.n() > self.host.n() {
            return Some(0);
        }
        if !self.use_parallel() {
            let mut c = 0u64;
            return match self.for_each(|_| {
                c += 1;
                true
            }) {
                Completion::OutOfBudget => None,
                _ => Some(c),
            };
        }
        let plan = self.plan();
        let firsts: Vec<usize> = plan.feasible[0].to_vec();
        Some(
            firsts
                .par_iter()
                .map(|&x| {
                    let mut st = self.state(&plan, self.host);
                    let mut c = 0u64;
                    st.assign(0, x);
                    st.dfs(1, &mut |_: &[usize]| {
                        c += 1;
                        true
                    });
                    c
                })
                .sum(),
        )
    }

    /// Collects `f(map)` over all embeddings into a set, fanning out over
    /// the first variable when parallel.
    fn collect_set<T, F>(&self, f: F) -> Option<BTreeSet<T>>
    where
        T: Ord + Send,
        F: Fn(&[usize]) -> T + Sync,
    {
        if self.pattern.n() > self.host.n() {
            return Some(BTreeSet::new());
        }
        if !self.use_parallel() {
            let mut out = BTreeSet::new();
            return match self.for_each(|m| {
                out.insert(f(m));
                true
            }) {
                Completion::OutOfBudget => None,
                _ => Some(out),
            };
        }
        let plan = self.plan();
        let firsts: Vec<usize> = plan.feasible[0].to_vec();
        let parts: Vec<BTreeSet<T>> = firsts
            .par_iter()
            .map(|&x| {
                let mut st = self.state(&plan, self.host);
                let mut out = BTreeSet::new();
                st.assign(0, x);
                st.dfs(1, &mut |m: &[usize]| {
                    out.insert(f(m));
                    true
                });
                out
            })
            .collect();
        Some(parts.into_iter().flatten().collect())
    }

    /// Distinct sorted image sets of all embeddings, or `None` on budget exhaustion.
    pub fn image_sets(&self) -> Option<BTreeSet<Vec<usize>>> {
        self.collect_set(|m| {
            let mut v = m.to_vec();
            v.sort_unstable();
            v
        })
    }
}

impl State<'_> {
    #[inline]
    fn assign(&mut self, depth: usize, x: usize) {
        self.map[self.plan.order[depth]] = x;
        self.at_depth[depth] = x;
        self.used.insert(x);
        self.nodes += 1;
    }

    #[inline]
    fn unassign(&mut self, depth: usize, x: usize) {
        self.map[self.plan.order[depth]] = usize::MAX;
        self.at_depth[depth] = usize::MAX;
        self.used.remove(x);
    }

    fn dfs(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        if depth == self.plan.order.len() {
            return if visit(&self.map) { Flow::Continue } else { Flow::Stop };
        }
        let mut cand = std::mem::replace(&mut self.scratch[depth], BitSet::new(0));
        cand.clone_from(&self.plan.feasible[depth]);
        cand.difference_with(self.used.words());
        for &(j, forward) in &self.plan.links[depth] {
            let y = self.at_depth[j];
            let row = if forward { self.host.out_row(y) } else { self.host.in_row(y) };
            cand.intersect_with(row);
        }
        let mut flow = Flow::Continue;
        for x in iter_ones(cand.words()) {
            if self.nodes >= self.budget {
                flow = Flow::Budget;
                break;
            }
            self.assign(depth, x);
            let f = self.dfs(depth + 1, visit);
            self.unassign(depth, x);
            if f != Flow::Continue {
                flow = f;
                break;
            }
        }
        self.scratch[depth] = cand;
        flow
    }
}

/// Least embedding of `pattern` into `host`, if any (complete search).
pub fn find_embedding(pattern: &OrientedGraph, host: &OrientedGraph) -> Option<Embedding> {
    Embedder::new(pattern, host).find().found()
}

/// Number of labelled embeddings (maps, not image sets).
pub fn count_embeddings(pattern: &OrientedGraph, host: &OrientedGraph) -> u64 {
    Embedder::new(pattern, host).count().expect("unbudgeted count always completes")
}

/// `{ i_P(image(phi)) : phi an embedding of pattern into host }`.
pub fn enumerate_index_vectors(
    pattern: &OrientedGraph,
    host: &OrientedGraph,
    partition: &Partition,
) -> Result<BTreeSet<IndexVector>> {
    if partition.ground_size() != host.n() {
        return crate::error::usage(format!(
            "partition covers {} vertices but the host has {}",
            partition.ground_size(),
            host.n()
        ));
    }
    Ok(Embedder::new(pattern, host)
        .collect_set(|m| partition.index_vector_unchecked(m))
        .expect("unbudgeted enumeration always completes"))
}

/// Least `(r, k)` with `pattern ⊂ F_r` and `pattern ⊂ C_{2k+1}^k`, searching
/// `r <= r_max`, `k <= k_max`. Sizes beyond the vertex cap are skipped.
pub fn turan_witnesses(pattern: &OrientedGraph, r_max: u32, k_max: usize) -> Option<(u32, usize)> {
    let r = (1..=r_max).find(|&r| f_r(r).is_ok_and(|host| find_embedding(pattern, &host).is_some()))?;
    let k =
        (1..=k_max).find(|&k| cycle_power(2 * k + 1, k).is_ok_and(|host| find_embedding(pattern, &host).is_some()))?;
    Some((r, k))
}
