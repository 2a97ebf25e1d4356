//! Deterministic constructors for the named graphs and families.
//!
//! Vertex naming conventions: a graph listed on vertices `u_1..u_k` or
//! `v_1..v_k` uses index `i - 1` for `u_i`. Partition-bearing constructions
//! lay parts out as consecutive index blocks in part order.

use crate::error::{usage, Error, Result};
use crate::graph::{OrientedGraph, Partition, MAX_VERTICES};

/// Transitive tournament: `i -> j` iff `i < j`.
pub fn transitive(n: usize) -> Result<OrientedGraph> {
    OrientedGraph::from_fn(n, |i, j| i < j)
}

/// The `l`-th power of the consistently oriented `k`-cycle: `i -> j` iff
/// `(j - i) mod k` lies in `1..=l`.
pub fn cycle_power(k: usize, l: usize) -> Result<OrientedGraph> {
    if k < 3 {
        return usage(format!("cycle power needs k >= 3, got {k}"));
    }
    if l < 1 || l > (k - 1) / 2 {
        return usage(format!("cycle power C_{k}^{l} needs 1 <= l <= {}", (k - 1) / 2));
    }
    OrientedGraph::from_fn(k, |i, j| (1..=l).contains(&((j + k - i) % k)))
}

/// Circulant tournament on `Z_n`: `i -> j` iff `(j - i) mod n` is in `residues`.
pub fn rotational(n: usize, residues: &[usize]) -> Result<OrientedGraph> {
    if n % 2 == 0 {
        return usage(format!("rotational tournaments need odd n, got {n}"));
    }
    for &r in residues {
        if r == 0 || r >= n {
            return usage(format!("residue {r} is not in 1..{n}"));
        }
        if residues.contains(&(n - r)) {
            return usage(format!("residues {r} and {} are complementary mod {n}", n - r));
        }
    }
    OrientedGraph::from_fn(n, |i, j| residues.contains(&((j + n - i) % n)))
}

/// A semi-regular tournament on `m` vertices with a fixed labelling.
///
/// Odd `m`: the rotational tournament with residues `1..=(m-1)/2`.
/// Even `m`: `i -> j` iff `(j - i) mod m` is in `1..m/2`, and each diameter
/// pair `{i, i + m/2}` points from the lower index. Vertices `0..m/2` then
/// have out-degree `m/2` and the rest `m/2 - 1`.
pub fn near_regular(m: usize) -> Result<OrientedGraph> {
    if m % 2 == 1 {
        let half: Vec<usize> = (1..=(m - 1) / 2).collect();
        return rotational(m, &half);
    }
    let h = m / 2;
    OrientedGraph::from_fn(m, |i, j| {
        let d = (j + m - i) % m;
        (1..h).contains(&d) || (d == h && i < j)
    })
}

/// Lays a list of internal tournaments out as consecutive blocks and adds
/// cross arcs according to `cross(part_a, a, part_b, b)`.
fn assemble(
    inner: &[OrientedGraph],
    mut cross: impl FnMut(usize, usize, usize, usize) -> bool,
) -> Result<(OrientedGraph, Partition)> {
    let sizes: Vec<usize> = inner.iter().map(OrientedGraph::n).collect();
    let total: usize = sizes.iter().sum();
    if total > MAX_VERTICES {
        return Err(Error::Resource(format!("{total} vertices exceeds the cap of {MAX_VERTICES}")));
    }
    let partition = Partition::from_sizes(&sizes)?;
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let locate = |v: usize| {
        let p = partition.part_of(v);
        (p, v - offsets[p])
    };
    let g = OrientedGraph::from_fn(total, |u, v| {
        let (pu, lu) = locate(u);
        let (pv, lv) = locate(v);
        if pu == pv {
            inner[pu].has_edge(lu, lv)
        } else {
            cross(pu, lu, pv, lv)
        }
    })?;
    Ok((g, partition))
}

/// `true` iff parts follow the cyclic pattern `0 -> 1 -> 2 -> 0`.
fn cyclic_forward(pa: usize, pb: usize) -> bool {
    (pa + 1) % 3 == pb
}

/// `D_{a,b,c}`: transitive tournaments of orders `a`, `b`, `c` with every
/// cross arc following part 1 -> part 2 -> part 3 -> part 1.
pub fn d_abc(a: usize, b: usize, c: usize) -> Result<(OrientedGraph, Partition)> {
    if a == 0 || b == 0 || c == 0 {
        return usage("D_{a,b,c} needs a, b, c >= 1");
    }
    let inner = [transitive(a)?, transitive(b)?, transitive(c)?];
    assemble(&inner, |pa, _, pb, _| cyclic_forward(pa, pb))
}

/// `D_s = D_{s,s,s}`.
pub fn d_s(s: usize) -> Result<(OrientedGraph, Partition)> {
    d_abc(s, s, s)
}

/// `F_r` on `3^r` vertices. Vertex `x` is read as an `r`-digit base-3 word,
/// most significant digit first; `x -> y` iff at the first differing digit
/// `(x_i, y_i)` is one of `(0,1), (1,2), (2,0)`.
pub fn f_r(r: u32) -> Result<OrientedGraph> {
    if r == 0 {
        return usage("F_r needs r >= 1");
    }
    let n = 3usize
        .checked_pow(r)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| Error::Resource(format!("F_{r} exceeds the cap of {MAX_VERTICES} vertices")))?;
    OrientedGraph::from_fn(n, |x, y| {
        let mut p = n / 3;
        loop {
            let (dx, dy) = ((x / p) % 3, (y / p) % 3);
            if dx != dy {
                return (dx + 1) % 3 == dy;
            }
            p /= 3;
        }
    })
}

/// The 5-vertex oriented graph `S` with arcs
/// `u1u2, u1u3, u2u3, u2u4, u3u4, u3u5, u4u1, u5u2` (`u_i` is vertex `i - 1`).
pub fn graph_s() -> OrientedGraph {
    OrientedGraph::from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 0), (4, 1)])
        .expect("static edge list")
}

/// The 7-vertex regular tournament with residues `{1, 2, 4}`.
pub fn paley7() -> OrientedGraph {
    rotational(7, &[1, 2, 4]).expect("valid residues")
}

/// `t`-blow-up: each vertex becomes an independent block of `t` vertices
/// (vertex `i` of `g` owns `i*t..(i+1)*t`), cross arcs copy `g`.
pub fn blow_up(g: &OrientedGraph, t: usize) -> Result<(OrientedGraph, Partition)> {
    if t == 0 {
        return usage("blow-up factor must be >= 1");
    }
    let n = g.n().checked_mul(t).filter(|&n| n <= MAX_VERTICES).ok_or_else(|| {
        Error::Resource(format!("blow-up of {} vertices by {t} exceeds the cap of {MAX_VERTICES}", g.n()))
    })?;
    let bg = OrientedGraph::from_fn(n, |a, b| g.has_edge(a / t, b / t))?;
    let partition = Partition::from_sizes(&vec![t; g.n()])?;
    Ok((bg, partition))
}

/// The semi-regular tournament `T(s, k)` together with the data that
/// certifies its construction.
#[derive(Clone, Debug)]
pub struct TskWitness {
    pub graph: OrientedGraph,
    /// `(V_1, V_2, V_3)` of sizes `s(k+1) - 1`, `s(k+1)`, `s(k+1) + 1`.
    pub partition: Partition,
    /// Arcs `v3 -> v2` with `v2` in `V_2`, `v3` in `V_3`.
    pub m1: Vec<(usize, usize)>,
    /// Arcs `v1 -> v3` with `v1` in `V_1`, `v3` in `V_3`.
    pub m2: Vec<(usize, usize)>,
}

impl TskWitness {
    /// `M_1 ∪ M_2`, sorted.
    pub fn reverse_edges(&self) -> Vec<(usize, usize)> {
        let mut all: Vec<_> = self.m1.iter().chain(&self.m2).copied().collect();
        all.sort_unstable();
        all
    }
}

/// Builds `T(s, k)` for `s >= 2` and even `s(k+1)`.
///
/// With `m = s(k+1)`: parts carry [`near_regular`] tournaments; all arcs go
/// `V_1 -> V_2`; `V_2 -> V_3` except the matching `M_1`, which joins the
/// `j`-th high-out-degree vertex of `V_2` (local index `j < m/2`) to the
/// `j`-th vertex of `V_3`; `V_3 -> V_1` except the matching `M_2`, which
/// joins the `j`-th vertex of `V_1` to that same `j`-th vertex of `V_3`.
pub fn t_sk(s: usize, k: usize) -> Result<TskWitness> {
    if s < 2 {
        return usage(format!("T(s,k) needs s >= 2, got {s}"));
    }
    let m = s
        .checked_mul(k + 1)
        .filter(|&m| 3 * m <= MAX_VERTICES)
        .ok_or_else(|| Error::Resource(format!("T({s},{k}) exceeds the cap of {MAX_VERTICES} vertices")))?;
    if m % 2 == 1 {
        return usage(format!("T(s,k) needs s(k+1) even, got {s}*{} = {m}", k + 1));
    }
    let half = m / 2;
    let inner = [near_regular(m - 1)?, near_regular(m)?, near_regular(m + 1)?];
    let in_m1 = |l2: usize, l3: usize| l2 < half && l2 == l3;
    let in_m2 = |l1: usize, l3: usize| l1 < half && l1 == l3;
    let (graph, partition) = assemble(&inner, |pa, la, pb, lb| match (pa, pb) {
        (0, 1) => true,
        (1, 0) => false,
        (1, 2) => !in_m1(la, lb),
        (2, 1) => in_m1(lb, la),
        (2, 0) => !in_m2(lb, la),
        (0, 2) => in_m2(la, lb),
        _ => unreachable!(),
    })?;
    let (o2, o3) = (m - 1, 2 * m - 1);
    let m1 = (0..half).map(|j| (o3 + j, o2 + j)).collect();
    let m2 = (0..half).map(|j| (j, o3 + j)).collect();
    Ok(TskWitness { graph, partition, m1, m2 })
}

/// The C_3 divisibility barrier on `3n` vertices: parts of sizes `n - 1`,
/// `n`, `n + 1` carrying [`near_regular`] tournaments, cross arcs
/// `V_1 -> V_2 -> V_3 -> V_1`.
pub fn c3_barrier(n: usize) -> Result<(OrientedGraph, Partition)> {
    if n < 2 {
        return usage(format!("the C_3 barrier needs n >= 2, got {n}"));
    }
    if 3 * n > MAX_VERTICES {
        return Err(Error::Resource(format!("{} vertices exceeds the cap of {MAX_VERTICES}", 3 * n)));
    }
    let inner = [near_regular(n - 1)?, near_regular(n)?, near_regular(n + 1)?];
    assemble(&inner, |pa, _, pb, _| cyclic_forward(pa, pb))
}
