//! Residue lattices of index vectors, edge-vector statistics, reverse-edge
//! structure of 3-partitioned hosts, and linking-set counts.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::embed::{enumerate_index_vectors, SearchOutcome};
use crate::error::{usage, Error, Result};
use crate::graph::{IndexVector, OrientedGraph, Partition};
use crate::tiling::{copy_hypergraph, hypergraph_perfect_matching, CopyHypergraph};

/// Largest `m^d` a lattice may have.
pub const STATE_CAP: usize = 1 << 24;

/// The subgroup of `(Z_m)^d` generated by a set of vectors.
#[derive(Clone, Debug)]
pub struct ResidueLattice {
    modulus: usize,
    dim: usize,
    generators: Vec<Vec<usize>>,
    member: Vec<bool>,
}

impl ResidueLattice {
    /// Closure of `{0}` under adding generators, by breadth-first search.
    /// Generator entries are reduced mod `m`.
    pub fn new(generators: &[Vec<usize>], m: usize, d: usize) -> Result<Self> {
        if m == 0 {
            return usage("modulus must be positive");
        }
        let states = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(m).filter(|&s| s <= STATE_CAP));
        let Some(states) = states else {
            return Err(Error::Resource(format!("{m}^{d} residues exceeds the cap of {STATE_CAP}")));
        };
        let mut gens: Vec<Vec<usize>> = Vec::new();
        for g in generators {
            if g.len() != d {
                return usage(format!("generator {g:?} has dimension {} but the lattice has {d}", g.len()));
            }
            gens.push(g.iter().map(|x| x % m).collect());
        }
        gens.sort();
        gens.dedup();
        let mut lat = ResidueLattice { modulus: m, dim: d, generators: gens, member: vec![false; states] };
        let steps: Vec<Vec<usize>> = lat.generators.clone();
        let mut queue = std::collections::VecDeque::from([0usize]);
        lat.member[0] = true;
        let mut buf = vec![0; d];
        while let Some(s) = queue.pop_front() {
            lat.decode_into(s, &mut buf);
            for g in &steps {
                let t = lat.encode(buf.iter().zip(g).map(|(a, b)| (a + b) % m));
                if !lat.member[t] {
                    lat.member[t] = true;
                    queue.push_back(t);
                }
            }
        }
        Ok(lat)
    }

    fn encode(&self, v: impl Iterator<Item = usize>) -> usize {
        v.fold(0, |acc, x| acc * self.modulus + x)
    }

    fn decode_into(&self, mut s: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = s % self.modulus;
            s /= self.modulus;
        }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Membership of `v` reduced mod `m`.
    pub fn contains(&self, v: &[usize]) -> Result<bool> {
        if v.len() != self.dim {
            return usage(format!("vector has dimension {} but the lattice has {}", v.len(), self.dim));
        }
        Ok(self.member[self.encode(v.iter().map(|x| x % self.modulus))])
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut buf = vec![0; self.dim];
        (0..self.member.len())
            .filter(|&s| self.member[s])
            .map(|s| {
                self.decode_into(s, &mut buf);
                buf.clone()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorCount {
    pub vector: IndexVector,
    pub count: u64,
}

/// Edge vectors of a copy hypergraph with their multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeVectorReport {
    pub uniformity: usize,
    pub threshold: u64,
    /// `threshold / n^k`, the density the absolute threshold corresponds to.
    pub mu_hat: f64,
    pub all: Vec<VectorCount>,
    pub robust: Vec<IndexVector>,
}

pub fn edge_vectors(h: &CopyHypergraph, p: &Partition, threshold: u64) -> Result<EdgeVectorReport> {
    if p.ground_size() != h.ground {
        return usage(format!("partition covers {} vertices but the hypergraph has {}", p.ground_size(), h.ground));
    }
    let mut counts: BTreeMap<IndexVector, u64> = BTreeMap::new();
    for e in &h.edges {
        let v = p.index_vector(e)?;
        assert_eq!(v.total(), h.uniformity, "edge vector must sum to the uniformity");
        *counts.entry(v).or_default() += 1;
    }
    let robust = counts.iter().filter(|(_, &c)| c >= threshold).map(|(v, _)| v.clone()).collect();
    Ok(EdgeVectorReport {
        uniformity: h.uniformity,
        threshold,
        mu_hat: threshold as f64 / (h.ground as f64).powi(h.uniformity as i32),
        all: counts.into_iter().map(|(vector, count)| VectorCount { vector, count }).collect(),
        robust,
    })
}

/// A pair of robust vectors with `v1 - v2 = e_i - e_j`, `i < j`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transferral {
    pub i: usize,
    pub j: usize,
    pub v1: IndexVector,
    pub v2: IndexVector,
}

pub fn find_2_transferrals(report: &EdgeVectorReport) -> Vec<Transferral> {
    let r = &report.robust;
    let mut out = Vec::new();
    for a in 0..r.len() {
        for b in a + 1..r.len() {
            if let Some((i, j)) = unit_difference(&r[a].0, &r[b].0) {
                let (i, j, v1, v2) = if i < j { (i, j, &r[a], &r[b]) } else { (j, i, &r[b], &r[a]) };
                out.push(Transferral { i, j, v1: v1.clone(), v2: v2.clone() });
            }
        }
    }
    out.sort_by(|x, y| (x.i, x.j, &x.v1, &x.v2).cmp(&(y.i, y.j, &y.v1, &y.v2)));
    out
}

/// `Some((i, j))` when `a - b = e_i - e_j` with `i != j`.
fn unit_difference(a: &[usize], b: &[usize]) -> Option<(usize, usize)> {
    if a.len() != b.len() {
        return None;
    }
    let (mut plus, mut minus) = (None, None);
    for (k, (&x, &y)) in a.iter().zip(b).enumerate() {
        match x as i64 - y as i64 {
            0 => {}
            1 if plus.is_none() => plus = Some(k),
            -1 if minus.is_none() => minus = Some(k),
            _ => return None,
        }
    }
    plus.zip(minus)
}

/// Reverse-edge structure of a host with a 3-partition `(V_1, V_2, V_3)`.
/// An arc is reverse when it runs `V_1 -> V_3`, `V_3 -> V_2` or `V_2 -> V_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyGReport {
    pub member: bool,
    pub reverse_edges: Vec<(usize, usize)>,
    /// `(center, leaf, leaf)`: two reverse edges from one vertex into the same part.
    pub k12_witness: Option<(usize, usize, usize)>,
    /// One vertex per part, all three pairs reverse.
    pub triangle_witness: Option<[usize; 3]>,
}

pub fn is_reverse(p: &Partition, u: usize, v: usize) -> bool {
    let (a, b) = (p.part_of(u), p.part_of(v));
    a != b && b == (a + 2) % 3
}

pub fn is_in_family_g(g: &OrientedGraph, p: &Partition) -> Result<FamilyGReport> {
    if p.d() != 3 {
        return usage(format!("family G needs a 3-partition, got {} parts", p.d()));
    }
    if p.ground_size() != g.n() {
        return usage("partition does not match the host");
    }
    let n = g.n();
    let reverse_edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| is_reverse(p, u, v)).collect();
    let mut radj = vec![BitSet::new(n); n];
    for &(u, v) in &reverse_edges {
        radj[u].insert(v);
        radj[v].insert(u);
    }
    let mut k12_witness = None;
    'outer: for v in 0..n {
        for part in p.parts() {
            let leaves: Vec<usize> = part.iter().copied().filter(|&w| radj[v].contains(w)).take(2).collect();
            if leaves.len() == 2 {
                k12_witness = Some((v, leaves[0], leaves[1]));
                break 'outer;
            }
        }
    }
    let mut triangle_witness = None;
    for &(u, v) in &reverse_edges {
        if let Some(w) = radj[u].iter().find(|&w| radj[v].contains(w)) {
            let mut t = [u, v, w];
            t.sort_by_key(|&x| p.part_of(x));
            triangle_witness = Some(t);
            break;
        }
    }
    Ok(FamilyGReport {
        member: k12_witness.is_none() && triangle_witness.is_none(),
        reverse_edges,
        k12_witness,
        triangle_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PrecheckVerdict {
    /// The target lies in the lattice; nothing is ruled out.
    Consistent { target: IndexVector, modulus: usize },
    /// No multiset of copies can have index vectors summing to the target.
    Refuted { target: IndexVector, modulus: usize },
}

/// A perfect tiling's copy vectors sum to `i_P(V(G))`, so the target must
/// lie in the lattice generated mod `m` by the vectors of actual copies.
pub fn lattice_precheck(f: &OrientedGraph, g: &OrientedGraph, p: &Partition, m: usize) -> Result<PrecheckVerdict> {
    let target = IndexVector(p.sizes());
    let gens: Vec<Vec<usize>> = enumerate_index_vectors(f, g, p)?.into_iter().map(|v| v.0).collect();
    let lat = ResidueLattice::new(&gens, m, p.d())?;
    Ok(if lat.contains(&target.0)? {
        PrecheckVerdict::Consistent { target, modulus: m }
    } else {
        PrecheckVerdict::Refuted { target, modulus: m }
    })
}

/// Number of `(kℓ-1)`-sets `S` avoiding `x, y` such that both `S + x` and
/// `S + y` have perfect matchings in `h`. `None` when the budget ran out.
pub fn linking_sets_in(h: &CopyHypergraph, x: usize, y: usize, l: usize, budget: Option<u64>) -> Result<Option<u64>> {
    if x == y {
        return usage("linking sets need two distinct vertices");
    }
    if x >= h.ground || y >= h.ground {
        return usage("vertex out of range");
    }
    if l == 0 {
        return usage("l must be at least 1");
    }
    let Some(size) = (h.uniformity * l).checked_sub(1) else {
        return Ok(Some(0));
    };
    if l == 1 {
        let through = |z: usize, other: usize| -> BTreeSet<Vec<usize>> {
            h.edges
                .iter()
                .filter(|e| e.contains(&z) && !e.contains(&other))
                .map(|e| e.iter().copied().filter(|&w| w != z).collect())
                .collect()
        };
        return Ok(Some(through(x, y).intersection(&through(y, x)).count() as u64));
    }
    let rest: Vec<usize> = (0..h.ground).filter(|&v| v != x && v != y).collect();
    if size > rest.len() {
        return Ok(Some(0));
    }
    let mut left = budget.unwrap_or(u64::MAX);
    let mut count = 0;
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let s: Vec<usize> = idx.iter().map(|&i| rest[i]).collect();
        let mut ok = true;
        for z in [x, y] {
            let mut set = s.clone();
            set.push(z);
            match hypergraph_perfect_matching(h, &set, Some(left))? {
                SearchOutcome::Found(_) => {}
                SearchOutcome::NotFound => ok = false,
                SearchOutcome::Inconclusive => return Ok(None),
            }
            left = left.saturating_sub(1);
            if !ok {
                break;
            }
        }
        count += ok as u64;
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(Some(count));
            }
            i -= 1;
            if idx[i] < rest.len() - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn linking_sets(g: &OrientedGraph, f: &OrientedGraph, x: usize, y: usize, l: usize) -> Result<Option<u64>> {
    linking_sets_in(&copy_hypergraph(f, g)?, x, y, l, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReachabilityReport {
    pub l: usize,
    /// `None` stands for an infinite threshold.
    pub threshold: Option<u64>,
    /// Linking-set counts; `None` on the diagonal and where the budget ran out.
    pub counts: Vec<Vec<Option<u64>>>,
    pub reachable: Vec<Vec<bool>>,
    /// Components of the reachability relation, a finite-size sketch of closed sets.
    pub heuristic_closed_sets: Vec<Vec<usize>>,
    pub inconclusive_pairs: usize,
}

pub fn reachability_report(
    g: &OrientedGraph,
    f: &OrientedGraph,
    l: usize,
    threshold: Option<u64>,
    budget: Option<u64>,
) -> Result<ReachabilityReport> {
    let n = g.n();
    let h = copy_hypergraph(f, g)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let results: Vec<Option<u64>> =
        pairs.par_iter().map(|&(x, y)| linking_sets_in(&h, x, y, l, budget)).collect::<Result<_>>()?;
    let mut counts = vec![vec![None; n]; n];
    let mut reachable = vec![vec![false; n]; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (&(x, y), &c) in pairs.iter().zip(&results) {
        counts[x][y] = c;
        counts[y][x] = c;
        let ok = matches!((c, threshold), (Some(c), Some(t)) if c >= t);
        reachable[x][y] = ok;
        reachable[y][x] = ok;
        if ok {
            let (a, b) = (root(&mut parent, x), root(&mut parent, y));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = root(&mut parent, v);
        comps.entry(r).or_default().push(v);
    }
    Ok(ReachabilityReport {
        l,
        threshold,
        counts,
        reachable,
        heuristic_closed_sets: comps.into_values().collect(),
        inconclusive_pairs: results.iter().filter(|c| c.is_none()).count(),
    })
}
