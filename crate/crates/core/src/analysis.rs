//! Vertex statistics, their exact degree-dependent bounds, and near-partite
//! ("extremal") 3-partitions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{count_and, BitSet};
use crate::error::{usage, Result};
use crate::graph::{OrientedGraph, Partition};

fn check_vertex(g: &OrientedGraph, v: usize) -> Result<()> {
    if v >= g.n() {
        return usage(format!("vertex {v} out of range for {} vertices", g.n()));
    }
    Ok(())
}

/// Number of arcs from `N^+(v)` into `N^-(v)`.
pub fn cyclic_edge_stat(g: &OrientedGraph, v: usize) -> Result<u64> {
    check_vertex(g, v)?;
    let into = g.in_row(v);
    Ok(g.out_neighbors(v).map(|u| count_and(g.out_row(u), into) as u64).sum())
}

/// Number of 4-sets through `v` inducing the strongly connected 4-tournament
/// (all six pairs joined, scores 1, 1, 2, 2).
pub fn d_copies_through(g: &OrientedGraph, v: usize) -> Result<u64> {
    check_vertex(g, v)?;
    let others: Vec<usize> = (0..g.n()).filter(|&u| g.has_edge(u, v) || g.has_edge(v, u)).collect();
    let mut count = 0;
    for (i, &a) in others.iter().enumerate() {
        for (j, &b) in others.iter().enumerate().skip(i + 1) {
            if !g.has_edge(a, b) && !g.has_edge(b, a) {
                continue;
            }
            for &c in &others[j + 1..] {
                if is_strong_four(g, [v, a, b, c]) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn is_strong_four(g: &OrientedGraph, s: [usize; 4]) -> bool {
    let mut scores = [0u8; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(s[i], s[j]) {
                scores[i] += 1;
            } else if g.has_edge(s[j], s[i]) {
                scores[j] += 1;
            } else {
                return false;
            }
        }
    }
    scores.sort_unstable();
    scores == [1, 1, 2, 2]
}

/// With `c = 1/2 - δ⁰/n`, the window `[(1/8 - 2c)n², (1/8 + 2c)n²]`
/// scaled by 8: `(16δ⁰n - 7n², 9n² - 16δ⁰n)`.
pub fn cyclic_edge_window_x8(n: usize, delta: usize) -> (i128, i128) {
    let (n, d) = (n as i128, delta as i128);
    (16 * d * n - 7 * n * n, 9 * n * n - 16 * d * n)
}

/// `(1/32 - 2c)n³` scaled by 32: `64δ⁰n² - 31n³`.
pub fn d_copy_floor_x32(n: usize, delta: usize) -> i128 {
    let (n, d) = (n as i128, delta as i128);
    64 * d * n * n - 31 * n * n * n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexStats {
    pub vertex: usize,
    pub cyclic_edges: u64,
    pub d_copies: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub min_semi_degree: usize,
    pub cyclic_window_x8: (i128, i128),
    pub d_copy_floor_x32: i128,
    pub vertices: Vec<VertexStats>,
    pub cyclic_violations: Vec<usize>,
    pub d_copy_violations: Vec<usize>,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.cyclic_violations.is_empty() && self.d_copy_violations.is_empty()
    }
}

/// Per-vertex statistics checked against the bounds implied by `δ⁰(G)`.
pub fn vertex_bounds(g: &OrientedGraph) -> BoundsReport {
    let n = g.n();
    let delta = g.min_semi_degree();
    let window = cyclic_edge_window_x8(n, delta);
    let floor = d_copy_floor_x32(n, delta);
    let vertices: Vec<VertexStats> = (0..n)
        .into_par_iter()
        .map(|v| VertexStats {
            vertex: v,
            cyclic_edges: cyclic_edge_stat(g, v).expect("in range"),
            d_copies: d_copies_through(g, v).expect("in range"),
        })
        .collect();
    let cyclic_violations = vertices
        .iter()
        .filter(|s| {
            let e8 = 8 * s.cyclic_edges as i128;
            e8 < window.0 || e8 > window.1
        })
        .map(|s| s.vertex)
        .collect();
    let d_copy_violations = vertices.iter().filter(|s| 32 * (s.d_copies as i128) < floor).map(|s| s.vertex).collect();
    BoundsReport {
        n,
        min_semi_degree: delta,
        cyclic_window_x8: window,
        d_copy_floor_x32: floor,
        vertices,
        cyclic_violations,
        d_copy_violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CyclicOrder {
    /// Forward arcs run `V_1 -> V_2 -> V_3 -> V_1`.
    Given,
    /// Forward arcs run `V_1 -> V_3 -> V_2 -> V_1`.
    Reflected,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub gamma: f64,
    pub sizes: Vec<usize>,
    /// Arcs `V_3 -> V_2`, `V_2 -> V_1`, `V_1 -> V_3`.
    pub reverse: [u64; 3],
    /// Arcs `V_2 -> V_3`, `V_1 -> V_2`, `V_3 -> V_1`.
    pub reverse_reflected: [u64; 3],
    pub sizes_ok: bool,
    pub order: Option<CyclicOrder>,
    pub extremal: bool,
}

fn size_ok(size: usize, n: usize, gamma: f64) -> bool {
    let (s, n) = (size as f64, n as f64);
    (1.0 / 3.0 - gamma) * n <= s && s <= (1.0 / 3.0 + gamma) * n
}

fn arcs_between(g: &OrientedGraph, from: &BitSet, to: &BitSet) -> u64 {
    from.iter().map(|u| count_and(g.out_row(u), to.words()) as u64).sum()
}

/// Sizes within `(1/3 ± γ)n` and each of the three reverse-arc counts at
/// most `γn²`, for the given cyclic order of the parts or its reflection.
/// Rotating the parts does not change which arcs are reverse, so these two
/// orders cover all labellings.
pub fn extremal_check(g: &OrientedGraph, p: &Partition, gamma: f64) -> Result<ExtremalReport> {
    if p.d() != 3 {
        return usage(format!("extremal check needs a 3-partition, got {} parts", p.d()));
    }
    if p.ground_size() != g.n() {
        return usage("partition does not match the host");
    }
    let n = g.n();
    let sets: Vec<BitSet> = p.parts().iter().map(|part| BitSet::from_slice(n, part)).collect();
    let reverse =
        [arcs_between(g, &sets[2], &sets[1]), arcs_between(g, &sets[1], &sets[0]), arcs_between(g, &sets[0], &sets[2])];
    let reverse_reflected =
        [arcs_between(g, &sets[1], &sets[2]), arcs_between(g, &sets[0], &sets[1]), arcs_between(g, &sets[2], &sets[0])];
    let sizes = p.sizes();
    let sizes_ok = sizes.iter().all(|&s| size_ok(s, n, gamma));
    let cap = gamma * (n * n) as f64;
    let fits = |r: &[u64; 3]| r.iter().all(|&x| x as f64 <= cap);
    let order = if !sizes_ok {
        None
    } else if fits(&reverse) {
        Some(CyclicOrder::Given)
    } else if fits(&reverse_reflected) {
        Some(CyclicOrder::Reflected)
    } else {
        None
    };
    Ok(ExtremalReport { n, gamma, sizes, reverse, reverse_reflected, sizes_ok, order, extremal: order.is_some() })
}

/// Seeded local search for a partition passing [`extremal_check`].
///
/// Each restart shuffles the vertices into three balanced parts, then
/// repeatedly applies the single-vertex move (or, failing that, the swap)
/// that most reduces the number of reverse arcs while keeping every part
/// size inside `(1/3 ± γ)n`. Restarts
/// run in parallel; among passing restarts the one with the fewest reverse
/// arcs wins, ties going to the lower index. `None` proves nothing.
pub fn find_extremal_partition(g: &OrientedGraph, gamma: f64, restarts: usize, seed: u64) -> Option<Partition> {
    let n = g.n();
    let base = [n / 3 + (n % 3 > 0) as usize, n / 3 + (n % 3 > 1) as usize, n / 3];
    if !base.iter().all(|&s| size_ok(s, n, gamma)) {
        return None;
    }
    let results: Vec<Option<(u64, Partition)>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut part_of = vec![0usize; n];
            let mut at = 0;
            for (i, &s) in base.iter().enumerate() {
                for &v in &order[at..at + s] {
                    part_of[v] = i;
                }
                at += s;
            }
            descend(g, &mut part_of, gamma);
            let parts: Vec<Vec<usize>> = (0..3).map(|i| (0..n).filter(|&v| part_of[v] == i).collect()).collect();
            let p = Partition::new(n, parts).expect("assignment covers every vertex once");
            let rep = extremal_check(g, &p, gamma).ok()?;
            let worst = rep.reverse.iter().sum::<u64>().min(rep.reverse_reflected.iter().sum());
            rep.extremal.then_some((worst, p))
        })
        .collect();
    results.into_iter().flatten().enumerate().min_by_key(|(i, (r, _))| (*r, *i)).map(|(_, (_, p))| p)
}

/// Reverse arcs at `v` if `v` sits in part `x`: out-arcs into `x+2`, in-arcs from `x+1`.
fn cost(g: &OrientedGraph, sets: &[BitSet], v: usize, x: usize) -> i64 {
    (g.out_degree_in(v, &sets[(x + 2) % 3]) + g.in_degree_in(v, &sets[(x + 1) % 3])) as i64
}

fn shift(sets: &mut [BitSet], part_of: &mut [usize], v: usize, to: usize) {
    sets[part_of[v]].remove(v);
    sets[to].insert(v);
    part_of[v] = to;
}

/// Steepest descent over single-vertex moves, falling back to swaps of two
/// vertices in different parts when no move helps (swaps keep sizes fixed).
fn descend(g: &OrientedGraph, part_of: &mut [usize], gamma: f64) {
    let n = g.n();
    let mut sets = vec![BitSet::new(n); 3];
    for (v, &p) in part_of.iter().enumerate() {
        sets[p].insert(v);
    }
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for v in 0..n {
            let a = part_of[v];
            if !size_ok(sets[a].len() - 1, n, gamma) {
                continue;
            }
            let here = cost(g, &sets, v, a);
            for b in 0..3 {
                if b == a || !size_ok(sets[b].len() + 1, n, gamma) {
                    continue;
                }
                let delta = cost(g, &sets, v, b) - here;
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, v, b));
                }
            }
        }
        if let Some((_, v, b)) = best {
            shift(&mut sets, part_of, v, b);
            continue;
        }
        let mut best: Option<(i64, usize, usize)> = None;
        for u in 0..n {
            for w in u + 1..n {
                let (a, b) = (part_of[u], part_of[w]);
                if a == b {
                    continue;
                }
                let d1 = cost(g, &sets, u, b) - cost(g, &sets, u, a);
                shift(&mut sets, part_of, u, b);
                let d2 = cost(g, &sets, w, a) - cost(g, &sets, w, b);
                shift(&mut sets, part_of, u, a);
                let delta = d1 + d2;
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, u, w));
                }
            }
        }
        let Some((_, u, w)) = best else { return };
        let (a, b) = (part_of[u], part_of[w]);
        shift(&mut sets, part_of, u, b);
        shift(&mut sets, part_of, w, a);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::testutil::random_graph;

    #[test]
    fn cyclic_edge_examples() {
        assert_eq!(cyclic_edge_stat(&cycle_power(5, 2).unwrap(), 0).unwrap(), 3);
        assert_eq!(cyclic_edge_stat(&transitive(6).unwrap(), 0).unwrap(), 0);
        assert_eq!(cyclic_edge_stat(&cycle_power(3, 1).unwrap(), 0).unwrap(), 1);
        assert!(cyclic_edge_stat(&transitive(3).unwrap(), 3).is_err());
    }

    #[test]
    fn d_copy_examples() {
        let c52 = cycle_power(5, 2).unwrap();
        for v in 0..5 {
            assert_eq!(d_copies_through(&c52, v).unwrap(), 4);
        }
        assert_eq!(d_copies_through(&transitive(6).unwrap(), 2).unwrap(), 0);
        let (d, _) = d_abc(1, 1, 2).unwrap();
        for v in 0..4 {
            assert_eq!(d_copies_through(&d, v).unwrap(), 1);
        }
    }

    #[test]
    fn d_copies_match_embedding_count() {
        let d = d_abc(1, 1, 2).unwrap().0;
        for seed in 0..30 {
            let g = random_graph(7, 0.85, seed);
            let h = crate::tiling::copy_hypergraph(&d, &g).unwrap();
            for v in 0..7 {
                let want = h.edges.iter().filter(|e| e.contains(&v)).count() as u64;
                assert_eq!(d_copies_through(&g, v).unwrap(), want, "seed {seed} v {v}");
            }
        }
    }

    #[test]
    fn vertex_transitive_hosts_are_constant() {
        let g = rotational(11, &[1, 2, 3, 5, 7]).unwrap();
        let rep = vertex_bounds(&g);
        assert!(rep.vertices.windows(2).all(|w| w[0].cyclic_edges == w[1].cyclic_edges));
        assert!(rep.vertices.windows(2).all(|w| w[0].d_copies == w[1].d_copies));
        assert!(rep.holds());
    }

    #[test]
    fn bounds_scale_exactly() {
        assert_eq!(cyclic_edge_window_x8(11, 5), (16 * 55 - 7 * 121, 9 * 121 - 16 * 55));
        assert_eq!(d_copy_floor_x32(11, 5), 64 * 5 * 121 - 31 * 1331);
    }

    #[test]
    fn extremal_examples() {
        let (g, p) = c3_barrier(3).unwrap();
        let r = extremal_check(&g, &p, 0.2).unwrap();
        assert!(r.extremal);
        assert_eq!(r.reverse, [0, 0, 0]);
        assert_eq!(r.sizes, vec![2, 3, 4]);
        assert!(!extremal_check(&g, &p, 0.01).unwrap().extremal);
        let triv = Partition::new(9, vec![(0..9).collect(), vec![], vec![]]).unwrap();
        assert!(!extremal_check(&g, &triv, 0.6).unwrap().extremal);
        assert!(extremal_check(&g, &Partition::trivial(9), 0.2).is_err());
    }

    #[test]
    fn reflected_order_is_recognised() {
        let (g, p) = blow_up(&cycle_power(3, 1).unwrap(), 3).unwrap();
        let swapped = Partition::new(9, vec![p.part(0).to_vec(), p.part(2).to_vec(), p.part(1).to_vec()]).unwrap();
        let r = extremal_check(&g, &swapped, 0.1).unwrap();
        assert_eq!(r.order, Some(CyclicOrder::Reflected));
        assert_eq!(r.reverse_reflected, [0, 0, 0]);
    }

    #[test]
    fn verdict_is_monotone_in_gamma() {
        let (g, p) = c3_barrier(4).unwrap();
        let mut seen = false;
        for k in 0..40 {
            let ok = extremal_check(&g, &p, k as f64 * 0.01).unwrap().extremal;
            assert!(!seen || ok);
            seen |= ok;
        }
        assert!(seen);
    }

    #[test]
    fn finds_planted_partitions() {
        let (g, _) = c3_barrier(4).unwrap();
        let p = find_extremal_partition(&g, 0.2, 16, 1).expect("planted");
        assert!(extremal_check(&g, &p, 0.2).unwrap().extremal);
        let (b, _) = blow_up(&cycle_power(3, 1).unwrap(), 3).unwrap();
        let p = find_extremal_partition(&b, 0.1, 16, 1).expect("planted");
        let r = extremal_check(&b, &p, 0.1).unwrap();
        assert!(r.reverse == [0, 0, 0] || r.reverse_reflected == [0, 0, 0], "{r:?} {p:?}");
        assert_eq!(find_extremal_partition(&paley7(), 0.05, 16, 1), None);
    }

    #[test]
    fn no_three_partition_of_paley7_is_extremal_at_small_gamma() {
        let g = paley7();
        for code in 0..3usize.pow(7) {
            let mut parts = vec![Vec::new(); 3];
            let mut c = code;
            for v in 0..7 {
                parts[c % 3].push(v);
                c /= 3;
            }
            let p = Partition::new(7, parts).unwrap();
            assert!(!extremal_check(&g, &p, 0.05).unwrap().extremal);
        }
    }

    #[test]
    fn search_is_deterministic() {
        let (g, _) = c3_barrier(4).unwrap();
        let a = find_extremal_partition(&g, 0.2, 8, 42);
        let b = find_extremal_partition(&g, 0.2, 8, 42);
        assert_eq!(a, b);
    }
}
