//! The oriented-graph type, degree classification, partitions and index vectors.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::{count_and, iter_ones, words_for, BitSet, Ones};
use crate::error::{usage, Error, Result};

/// Largest vertex count accepted by constructors and the parser.
pub const MAX_VERTICES: usize = 4096;

/// Orientation of an ordered vertex pair `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `u -> v`
    Forward,
    /// `v -> u`
    Backward,
    None,
}

/// An oriented graph on vertices `0..n`: at most one arc per pair, no loops.
///
/// Out- and in-adjacency are both kept as bit matrices so that orientation
/// queries and neighbourhood intersections are word operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    words: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedGraph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

impl OrientedGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!("{n} vertices exceeds the cap of {MAX_VERTICES}")));
        }
        let words = words_for(n);
        Ok(OrientedGraph { n, words, out: vec![0; n * words], inn: vec![0; n * words] })
    }

    /// Builds a graph from an arc list, rejecting loops, repeats and antiparallel pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.try_add_edge(u, v).map_err(Error::Usage)?;
        }
        Ok(g)
    }

    /// Builds a graph by asking `arc(u, v)` for every ordered pair `u != v`.
    /// Pairs where both directions answer `true` are rejected.
    pub fn from_fn(n: usize, mut arc: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in 0..n {
                if u != v && arc(u, v) {
                    g.try_add_edge(u, v).map_err(Error::Usage)?;
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize) -> std::result::Result<(), String> {
        if u >= self.n || v >= self.n {
            return Err(format!("vertex out of range in edge {u} {v} (n = {})", self.n));
        }
        if u == v {
            return Err(format!("loop at vertex {u}"));
        }
        if self.has_edge(u, v) {
            return Err(format!("duplicate edge {u} {v}"));
        }
        if self.has_edge(v, u) {
            return Err(format!("conflicting orientation for pair {u} {v}"));
        }
        self.set_arc(u, v, true);
        Ok(())
    }

    #[inline]
    fn set_arc(&mut self, u: usize, v: usize, on: bool) {
        let (ow, ob) = (u * self.words + v / 64, v % 64);
        let (iw, ib) = (v * self.words + u / 64, u % 64);
        if on {
            self.out[ow] |= 1 << ob;
            self.inn[iw] |= 1 << ib;
        } else {
            self.out[ow] &= !(1 << ob);
            self.inn[iw] &= !(1 << ib);
        }
    }

    /// Replaces arc `u -> v` by `v -> u`. Crate-internal; used while a graph
    /// is still being built (random walks over score-preserving reversals).
    pub(crate) fn reverse_arc(&mut self, u: usize, v: usize) {
        debug_assert!(self.has_edge(u, v));
        self.set_arc(u, v, false);
        self.set_arc(v, u, true);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `true` iff `u -> v`. Out-of-range or equal vertices give `false`.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.out[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn orientation(&self, u: usize, v: usize) -> Result<Orientation> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return usage(format!("orientation queried for the loop pair ({u}, {u})"));
        }
        Ok(if self.has_edge(u, v) {
            Orientation::Forward
        } else if self.has_edge(v, u) {
            Orientation::Backward
        } else {
            Orientation::None
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return usage(format!("vertex {v} out of range (n = {})", self.n));
        }
        Ok(())
    }

    /// Out-neighbourhood row of `v` as raw words.
    #[inline]
    pub fn out_row(&self, v: usize) -> &[u64] {
        &self.out[v * self.words..(v + 1) * self.words]
    }

    /// In-neighbourhood row of `v` as raw words.
    #[inline]
    pub fn in_row(&self, v: usize) -> &[u64] {
        &self.inn[v * self.words..(v + 1) * self.words]
    }

    pub fn out_neighbors(&self, v: usize) -> Ones<'_> {
        iter_ones(self.out_row(v))
    }

    pub fn in_neighbors(&self, v: usize) -> Ones<'_> {
        iter_ones(self.in_row(v))
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `(out-degree, in-degree)` of `v`.
    pub fn degrees(&self, v: usize) -> Result<(usize, usize)> {
        self.check_vertex(v)?;
        Ok((self.out_degree(v), self.in_degree(v)))
    }

    /// Out-degree of `v` restricted to the vertex set `within`.
    pub fn out_degree_in(&self, v: usize, within: &BitSet) -> usize {
        count_and(self.out_row(v), within.words())
    }

    pub fn in_degree_in(&self, v: usize, within: &BitSet) -> usize {
        count_and(self.in_row(v), within.words())
    }

    /// All arcs, sorted by `(tail, head)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).map(move |v| (u, v)))
    }

    pub fn is_tournament(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Minimum over all vertices of the smaller of in- and out-degree (0 for the empty graph).
    pub fn min_semi_degree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v).min(self.in_degree(v))).min().unwrap_or(0)
    }

    pub fn classify(&self) -> Classification {
        let is_tournament = self.is_tournament();
        let min_semi_degree = self.min_semi_degree();
        let is_semi_regular = is_tournament && min_semi_degree == self.n.saturating_sub(1) / 2;
        Classification {
            n: self.n,
            is_tournament,
            min_semi_degree,
            is_semi_regular,
            is_regular: is_semi_regular && self.n % 2 == 1,
        }
    }

    /// The subgraph induced by `vertices`, relabelled `0..k` in ascending
    /// order of the original indices.
    pub fn induced(&self, vertices: &[usize]) -> Result<OrientedGraph> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return usage(format!("vertex {bad} is not in the graph (n = {})", self.n));
        }
        let k = sorted.len();
        let mut g = OrientedGraph::empty(k)?;
        for (i, &a) in sorted.iter().enumerate() {
            for (j, &b) in sorted.iter().enumerate() {
                if self.has_edge(a, b) {
                    g.set_arc(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// Reverses every arc.
    pub fn converse(&self) -> OrientedGraph {
        let mut g = self.clone();
        std::mem::swap(&mut g.out, &mut g.inn);
        g
    }
}

/// Degree-based classification of an oriented graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: usize,
    pub is_tournament: bool,
    pub min_semi_degree: usize,
    pub is_semi_regular: bool,
    pub is_regular: bool,
}

/// Per-part vertex counts of a vertex subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexVector(pub Vec<usize>);

impl IndexVector {
    pub fn zero(d: usize) -> Self {
        IndexVector(vec![0; d])
    }

    /// The `i`-th unit vector of length `d` (0-based).
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        IndexVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl Add for &IndexVector {
    type Output = IndexVector;

    fn add(self, rhs: &IndexVector) -> IndexVector {
        assert_eq!(self.dim(), rhs.dim(), "index vectors of different dimension");
        IndexVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for IndexVector {
    type Err = Error;

    /// Accepts `1,2,3` or `(1,2,3)`, whitespace tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        if t.trim().is_empty() {
            return Err(Error::Parse { line: 1, msg: "empty vector".into() });
        }
        t.split(',')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse { line: 1, msg: format!("bad component {c:?}: {e}") })
            })
            .collect::<Result<Vec<_>>>()
            .map(IndexVector)
    }
}

/// An ordered split `(V_1, .., V_d)` of the ground set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` are disjoint and cover `0..n` exactly. Parts may be empty.
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        if parts.is_empty() {
            return usage("a partition needs at least one part");
        }
        let mut part_of = vec![usize::MAX; n];
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n {
                    return usage(format!("part {i} contains vertex {v} outside the ground set 0..{n}"));
                }
                if part_of[v] != usize::MAX {
                    return usage(format!("vertex {v} appears in more than one part"));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return usage(format!("vertex {v} is not covered by any part"));
        }
        Ok(Partition { parts, part_of })
    }

    /// Consecutive blocks of the given sizes: `0..s_1`, `s_1..s_1+s_2`, ...
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut next = 0;
        let parts = sizes
            .iter()
            .map(|&s| {
                let p: Vec<usize> = (next..next + s).collect();
                next += s;
                p
            })
            .collect();
        Partition::new(next, parts)
    }

    /// The single-part partition of `0..n`.
    pub fn trivial(n: usize) -> Self {
        Partition { parts: vec![(0..n).collect()], part_of: vec![0; n] }
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    pub fn ground_size(&self) -> usize {
        self.part_of.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// `i_P(U)`: how many elements of `u` fall in each part.
    pub fn index_vector(&self, u: &[usize]) -> Result<IndexVector> {
        let mut counts = vec![0; self.d()];
        for &v in u {
            match self.part_of.get(v) {
                Some(&p) => counts[p] += 1,
                None => return usage(format!("vertex {v} is outside the ground set 0..{}", self.ground_size())),
            }
        }
        Ok(IndexVector(counts))
    }

    /// Index vector of an in-range vertex set; skips the range check.
    pub(crate) fn index_vector_unchecked(&self, u: &[usize]) -> IndexVector {
        let mut counts = vec![0; self.d()];
        for &v in u {
            counts[self.part_of[v]] += 1;
        }
        IndexVector(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn c3() -> OrientedGraph {
        OrientedGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn orientation_queries() {
        let g = c3();
        assert_eq!(g.orientation(0, 1).unwrap(), Orientation::Forward);
        assert_eq!(g.orientation(1, 0).unwrap(), Orientation::Backward);
        assert!(matches!(g.orientation(0, 0), Err(Error::Usage(_))));
        assert!(matches!(g.orientation(0, 3), Err(Error::Usage(_))));
        let e = OrientedGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(e.orientation(0, 2).unwrap(), Orientation::None);
    }

    #[test]
    fn construction_rejects_bad_arcs() {
        assert!(OrientedGraph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(OrientedGraph::from_edges(2, [(0, 1), (0, 1)]).is_err());
        assert!(OrientedGraph::from_edges(2, [(1, 1)]).is_err());
        assert!(OrientedGraph::from_edges(2, [(0, 2)]).is_err());
        assert!(matches!(OrientedGraph::empty(MAX_VERTICES + 1), Err(Error::Resource(_))));
    }

    #[test]
    fn degrees_and_classification() {
        let g = c3();
        assert_eq!(g.degrees(0).unwrap(), (1, 1));
        assert!(g.degrees(3).is_err());
        let c = g.classify();
        assert!(c.is_tournament && c.is_semi_regular && c.is_regular);
        assert_eq!(c.min_semi_degree, 1);
        let path = OrientedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!path.classify().is_tournament);
        let empty = OrientedGraph::empty(0).unwrap();
        assert_eq!(empty.classify().min_semi_degree, 0);
    }

    #[test]
    fn induced_relabels_ascending() {
        let g = c3();
        let h = g.induced(&[2, 0]).unwrap();
        // original 2 -> 0 becomes 1 -> 0
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(g.induced(&[0, 1, 2]).unwrap(), g);
        assert_eq!(g.induced(&[]).unwrap().n(), 0);
        assert!(g.induced(&[5]).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 3]]).is_err());
        let p = Partition::from_sizes(&[1, 2, 3]).unwrap();
        assert_eq!(p.index_vector(&[0, 1, 2, 3, 4, 5]).unwrap(), IndexVector(vec![1, 2, 3]));
        assert_eq!(p.index_vector(&[]).unwrap(), IndexVector(vec![0, 0, 0]));
        assert_eq!(p.index_vector(p.part(1)).unwrap(), IndexVector(vec![0, 2, 0]));
        assert!(p.index_vector(&[6]).is_err());
    }

    #[test]
    fn index_vector_text() {
        assert_eq!("(1,2,3)".parse::<IndexVector>().unwrap(), IndexVector(vec![1, 2, 3]));
        assert_eq!(" 4, 0 ".parse::<IndexVector>().unwrap(), IndexVector(vec![4, 0]));
        assert!("".parse::<IndexVector>().is_err());
        assert!("1,-2".parse::<IndexVector>().is_err());
        assert_eq!(IndexVector(vec![3, 3, 0]).to_string(), "(3,3,0)");
    }

    proptest! {
        #[test]
        fn antisymmetry(g in arb_graph(20)) {
            for u in 0..g.n() {
                for v in 0..g.n() {
                    if u == v { continue; }
                    let a = g.orientation(u, v).unwrap();
                    let b = g.orientation(v, u).unwrap();
                    let expected = match a {
                        Orientation::Forward => Orientation::Backward,
                        Orientation::Backward => Orientation::Forward,
                        Orientation::None => Orientation::None,
                    };
                    prop_assert_eq!(b, expected);
                }
                let (o, i) = g.degrees(u).unwrap();
                prop_assert!(o + i < g.n());
            }
        }

        #[test]
        fn index_vector_is_additive(n in 1usize..40, split in proptest::collection::vec(0usize..4, 40), pick in proptest::collection::vec(0u8..3, 40)) {
            let mut parts = vec![Vec::new(); 4];
            for v in 0..n { parts[split[v]].push(v); }
            let p = Partition::new(n, parts).unwrap();
            let a: Vec<usize> = (0..n).filter(|&v| pick[v] == 1).collect();
            let b: Vec<usize> = (0..n).filter(|&v| pick[v] == 2).collect();
            let ab: Vec<usize> = (0..n).filter(|&v| pick[v] != 0).collect();
            prop_assert_eq!(p.index_vector(&ab).unwrap(), &p.index_vector(&a).unwrap() + &p.index_vector(&b).unwrap());
        }
    }
}
