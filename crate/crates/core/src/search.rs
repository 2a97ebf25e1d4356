//! Small regular tournaments: exhaustive enumeration up to isomorphism,
//! random semi-regular sampling, and containment/tiling probes over both.
//!
//! Probe reports are evidence about particular finite tournaments. They
//! never establish an asymptotic property.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embed::{Embedder, SearchOutcome};
use crate::error::{usage, Result};
use crate::generators::near_regular;
use crate::graph::{OrientedGraph, Partition};
use crate::tiling::{perfect_tiling, TilingMode, TilingOptions};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX: usize = 10;
/// Largest order accepted by [`enumerate_regular_tournaments`].
pub const ENUM_MAX: usize = 9;

const CAVEAT: &str = "finite-n evidence only; small-n failures are findings, not contradictions";

/// Lexicographically least pair-code string over all relabellings.
///
/// Pairs are listed column by column, `(0,1), (0,2), (1,2), (0,3), ...`, so a
/// prefix of the string depends only on a prefix of the labelling. Codes:
/// 0 no arc, 1 arc from the smaller label, 2 arc from the larger label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: Vec<u8>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> OrientedGraph {
        let mut arcs = Vec::new();
        let mut k = 0;
        for i in 1..self.n {
            for j in 0..i {
                match self.code[k] {
                    1 => arcs.push((j, i)),
                    2 => arcs.push((i, j)),
                    _ => {}
                }
                k += 1;
            }
        }
        OrientedGraph::from_edges(self.n, arcs).expect("canonical code is a valid oriented graph")
    }
}

fn pair_code(g: &OrientedGraph, a: usize, b: usize) -> u8 {
    if g.has_edge(a, b) {
        1
    } else if g.has_edge(b, a) {
        2
    } else {
        0
    }
}

struct Canon<'a> {
    g: &'a OrientedGraph,
    cur: Vec<u8>,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Canon<'_> {
    fn rec(&mut self) {
        let i = self.perm.len();
        let n = self.g.n();
        if i == n {
            if self.best.as_ref().is_none_or(|(b, _)| self.cur < *b) {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let len = self.cur.len();
            for j in 0..i {
                self.cur.push(pair_code(self.g, self.perm[j], v));
            }
            let worse = self.best.as_ref().is_some_and(|(b, _)| self.cur[..] > b[..self.cur.len()]);
            if !worse {
                self.used[v] = true;
                self.perm.push(v);
                self.rec();
                self.perm.pop();
                self.used[v] = false;
            }
            self.cur.truncate(len);
        }
    }
}

/// Canonical form and a labelling achieving it (`perm[new] = old`).
pub fn canonical_labeling(g: &OrientedGraph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > CANON_MAX {
        return usage(format!("canonical forms are limited to {CANON_MAX} vertices, got {n}"));
    }
    let mut c = Canon { g, cur: Vec::new(), perm: Vec::new(), used: vec![false; n], best: None };
    c.rec();
    let (code, perm) = c.best.expect("at least one labelling");
    Ok((CanonicalForm { n, code }, perm))
}

pub fn canonical_form(g: &OrientedGraph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(f, _)| f)
}

pub fn is_isomorphic(a: &OrientedGraph, b: &OrientedGraph) -> Result<bool> {
    Ok(a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a)? == canonical_form(b)?)
}

/// One representative per isomorphism class of regular tournaments on `n`
/// vertices, each in canonical labelling, sorted by canonical code.
///
/// Labelled tournaments are generated by backtracking over the pairs with
/// out- and in-degree capped at `(n-1)/2`; vertex 0 is fixed to beat
/// `1..=(n-1)/2`, which every class admits after relabelling.
pub fn enumerate_regular_tournaments(n: usize) -> Result<Vec<OrientedGraph>> {
    if n % 2 == 0 || n > ENUM_MAX {
        return usage(format!("regular tournament enumeration needs odd n <= {ENUM_MAX}, got {n}"));
    }
    let d = (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = vec![0usize; n];
    let mut seen = vec![0usize; n];
    let mut bits = 0u64;
    for (k, &(_, j)) in pairs.iter().enumerate().take(n - 1) {
        if j <= d {
            bits |= 1 << k;
            out[0] += 1;
        } else {
            out[j] += 1;
        }
        seen[0] += 1;
        seen[j] += 1;
    }
    let mut leaves = Vec::new();
    fill(&pairs, n - 1, d, &mut out, &mut seen, bits, &mut leaves);
    let forms: BTreeSet<CanonicalForm> = leaves
        .par_iter()
        .map(|&b| canonical_form(&from_bits(n, &pairs, b)).expect("n within cap"))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(forms.iter().map(CanonicalForm::to_graph).collect())
}

fn fill(
    pairs: &[(usize, usize)],
    k: usize,
    d: usize,
    out: &mut [usize],
    seen: &mut [usize],
    bits: u64,
    leaves: &mut Vec<u64>,
) {
    if k == pairs.len() {
        leaves.push(bits);
        return;
    }
    let (i, j) = pairs[k];
    seen[i] += 1;
    seen[j] += 1;
    for forward in [true, false] {
        let w = if forward { i } else { j };
        out[w] += 1;
        if [i, j].iter().all(|&v| out[v] <= d && seen[v] - out[v] <= d) {
            let b = if forward { bits | 1 << k } else { bits };
            fill(pairs, k + 1, d, out, seen, b, leaves);
        }
        out[w] -= 1;
    }
    seen[i] -= 1;
    seen[j] -= 1;
}

fn from_bits(n: usize, pairs: &[(usize, usize)], bits: u64) -> OrientedGraph {
    OrientedGraph::from_edges(
        n,
        pairs.iter().enumerate().map(|(k, &(i, j))| if bits >> k & 1 == 1 { (i, j) } else { (j, i) }),
    )
    .expect("pairs are distinct")
}

/// Accepted directed-triangle reversals applied by [`random_semi_regular`].
pub fn walk_length(n: usize) -> u64 {
    50 * (n as u64) * (n as u64)
}

/// Reverses `accepted` uniformly chosen directed triangles. Every reversal
/// preserves all out-degrees. Does nothing on a graph without one.
pub fn reversal_walk(g: &mut OrientedGraph, accepted: u64, rng: &mut ChaCha8Rng) {
    let n = g.n();
    let has_triangle =
        (0..n).any(|a| g.out_neighbors(a).any(|b| crate::bitset::count_and(g.out_row(b), g.in_row(a)) > 0));
    if !has_triangle {
        return;
    }
    let mut done = 0;
    while done < accepted {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let c = rng.gen_range(0..n);
        if a == b || b == c || a == c {
            continue;
        }
        let cyc = if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, a) {
            [(a, b), (b, c), (c, a)]
        } else if g.has_edge(b, a) && g.has_edge(c, b) && g.has_edge(a, c) {
            [(b, a), (c, b), (a, c)]
        } else {
            continue;
        };
        for (u, v) in cyc {
            g.reverse_arc(u, v);
        }
        done += 1;
    }
}

/// A semi-regular tournament from a seeded triangle-reversal walk started at
/// the rotational (odd `n`) or half-circulant (even `n`) tournament. The
/// walk is not claimed to sample uniformly.
pub fn random_semi_regular(n: usize, seed: u64) -> Result<OrientedGraph> {
    if n < 3 {
        return usage(format!("random semi-regular tournaments need n >= 3, got {n}"));
    }
    let mut g = near_regular(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    reversal_walk(&mut g, walk_length(n), &mut rng);
    Ok(g)
}

/// Seed of the `i`-th sample at order `n` (splitmix64 finaliser).
pub fn sample_seed(seed: u64, n: usize, i: usize) -> u64 {
    let mut z = seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (i as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeMode {
    Exhaustive,
    Sample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    pub n: usize,
    pub hosts: usize,
    pub containing: usize,
    /// Host indices (enumeration order or sample index) without a copy.
    pub failures: Vec<usize>,
    pub inconclusive: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub pattern_vertices: usize,
    pub mode: ProbeMode,
    pub seed: u64,
    pub samples: usize,
    pub entries: Vec<ProbeEntry>,
    pub caveat: &'static str,
}

/// Fraction of a population of (semi-)regular tournaments containing `h`.
/// Exhaustive mode uses every regular tournament class; sample mode draws
/// `samples` hosts per order from [`random_semi_regular`].
pub fn turanability_probe(
    h: &OrientedGraph,
    ns: &[usize],
    mode: ProbeMode,
    samples: usize,
    seed: u64,
    budget: Option<u64>,
) -> Result<ProbeReport> {
    let mut entries = Vec::new();
    for &n in ns {
        let hosts: Vec<OrientedGraph> = match mode {
            ProbeMode::Exhaustive => enumerate_regular_tournaments(n)?,
            ProbeMode::Sample => (0..samples)
                .into_par_iter()
                .map(|i| random_semi_regular(n, sample_seed(seed, n, i)))
                .collect::<Result<_>>()?,
        };
        let outcomes: Vec<SearchOutcome<()>> = hosts
            .par_iter()
            .map(|g| match Embedder::new(h, g).budget(budget).find() {
                SearchOutcome::Found(_) => SearchOutcome::Found(()),
                SearchOutcome::NotFound => SearchOutcome::NotFound,
                SearchOutcome::Inconclusive => SearchOutcome::Inconclusive,
            })
            .collect();
        let pick = |want: &SearchOutcome<()>| -> Vec<usize> {
            outcomes.iter().enumerate().filter(|(_, o)| *o == want).map(|(i, _)| i).collect()
        };
        entries.push(ProbeEntry {
            n,
            hosts: hosts.len(),
            containing: pick(&SearchOutcome::Found(())).len(),
            failures: pick(&SearchOutcome::NotFound),
            inconclusive: pick(&SearchOutcome::Inconclusive),
        });
    }
    Ok(ProbeReport {
        pattern_vertices: h.n(),
        mode,
        seed,
        samples: if mode == ProbeMode::Sample { samples } else { 0 },
        entries,
        caveat: CAVEAT,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TileSample {
    pub index: usize,
    pub mode: TilingMode,
    pub copies: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TileEntry {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub hosts: usize,
    pub tiled: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub samples: Vec<TileSample>,
}

/// An extra host to run alongside the sampled population.
pub struct InjectedHost<'a> {
    pub label: String,
    pub graph: &'a OrientedGraph,
    pub partition: Option<&'a Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectedResult {
    pub label: String,
    pub n: usize,
    pub mode: TilingMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub copies: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TileProbeReport {
    pub pattern_vertices: usize,
    pub samples: usize,
    pub seed: u64,
    pub entries: Vec<TileEntry>,
    pub injected: Vec<InjectedResult>,
    pub caveat: &'static str,
}

/// Perfect-tiling attempts on sampled semi-regular tournaments, with the
/// tilings found as certificates.
pub fn tileability_probe(
    h: &OrientedGraph,
    ns: &[usize],
    samples: usize,
    seed: u64,
    budget: Option<u64>,
    injected: &[InjectedHost],
) -> Result<TileProbeReport> {
    if h.n() == 0 {
        return usage("pattern must have at least one vertex");
    }
    let opts = TilingOptions { budget, ..Default::default() };
    let mut entries = Vec::new();
    for &n in ns {
        if n % h.n() != 0 {
            entries.push(TileEntry {
                n,
                skipped: Some(format!("divisibility: {} does not divide {n}", h.n())),
                hosts: 0,
                tiled: 0,
                refuted: 0,
                inconclusive: 0,
                samples: Vec::new(),
            });
            continue;
        }
        let results: Vec<TileSample> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let g = random_semi_regular(n, sample_seed(seed, n, i))?;
                let r = perfect_tiling(h, &g, &opts)?;
                Ok(TileSample { index: i, mode: r.mode, copies: r.copies })
            })
            .collect::<Result<_>>()?;
        let count = |f: &dyn Fn(TilingMode) -> bool| results.iter().filter(|s| f(s.mode)).count();
        entries.push(TileEntry {
            n,
            skipped: None,
            hosts: samples,
            tiled: count(&|m| m == TilingMode::Found),
            refuted: count(&|m| matches!(m, TilingMode::RefutedExhaustive | TilingMode::RefutedLattice)),
            inconclusive: count(&|m| m == TilingMode::Inconclusive),
            samples: results,
        });
    }
    let injected = injected
        .iter()
        .map(|host| {
            let opts = TilingOptions { budget, partition: host.partition, modulus: None };
            let r = perfect_tiling(h, host.graph, &opts)?;
            Ok(InjectedResult {
                label: host.label.clone(),
                n: host.graph.n(),
                mode: r.mode,
                note: r.note,
                copies: r.copies,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TileProbeReport { pattern_vertices: h.n(), samples, seed, entries, injected, caveat: CAVEAT })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::testutil::random_graph;

    /// Minimum over all n! relabellings, no pruning.
    fn brute_canon(g: &OrientedGraph) -> Vec<u8> {
        fn perms(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in 0..k {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    perms(k, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let n = g.n();
        let mut all = Vec::new();
        perms(n, &mut Vec::new(), &mut vec![false; n], &mut all);
        all.iter()
            .map(|p| {
                let mut code = Vec::new();
                for i in 1..n {
                    for j in 0..i {
                        code.push(pair_code(g, p[j], p[i]));
                    }
                }
                code
            })
            .min()
            .unwrap()
    }

    /// All labelled regular tournaments, no symmetry reduction.
    fn labelled_regular(n: usize) -> Vec<OrientedGraph> {
        let d = (n - 1) / 2;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        let mut degs = vec![0usize; n];
        fn rec(
            pairs: &[(usize, usize)],
            k: usize,
            d: usize,
            degs: &mut [usize],
            chosen: &mut Vec<(usize, usize)>,
            out: &mut Vec<Vec<(usize, usize)>>,
        ) {
            if k == pairs.len() {
                if degs.iter().all(|&x| x == d) {
                    out.push(chosen.clone());
                }
                return;
            }
            let (i, j) = pairs[k];
            for (a, b) in [(i, j), (j, i)] {
                if degs[a] < d {
                    degs[a] += 1;
                    chosen.push((a, b));
                    rec(pairs, k + 1, d, degs, chosen, out);
                    chosen.pop();
                    degs[a] -= 1;
                }
            }
        }
        let mut arcs = Vec::new();
        rec(&pairs, 0, d, &mut degs, &mut Vec::new(), &mut arcs);
        for a in arcs {
            out.push(OrientedGraph::from_edges(n, a).unwrap());
        }
        out
    }

    #[test]
    fn canonical_matches_brute_force() {
        for seed in 0..60u64 {
            let n = 2 + (seed % 5) as usize;
            let g = random_graph(n, 0.7, seed);
            let (form, perm) = canonical_labeling(&g).unwrap();
            assert_eq!(form.code, brute_canon(&g), "seed {seed}");
            let sigma: Vec<usize> = (0..n).map(|v| (2 * n - 1 - v) % n).collect();
            let relabelled = OrientedGraph::from_edges(n, g.edges().map(|(u, v)| (sigma[u], sigma[v]))).unwrap();
            assert_eq!(canonical_form(&relabelled).unwrap(), form);
            let image = form.to_graph();
            for (u, v) in image.edges() {
                assert!(g.has_edge(perm[u], perm[v]));
            }
            assert_eq!(image.edge_count(), g.edge_count());
        }
        assert!(canonical_form(&transitive(11).unwrap()).is_err());
    }

    #[test]
    fn isomorphic_relabellings_share_a_form() {
        let g = paley7();
        let shifted = OrientedGraph::from_edges(7, g.edges().map(|(u, v)| ((u * 3) % 7, (v * 3) % 7))).unwrap();
        assert!(is_isomorphic(&g, &shifted).unwrap());
        assert!(!is_isomorphic(&g, &cycle_power(7, 3).unwrap()).unwrap());
        assert!(!is_isomorphic(&cycle_power(4, 1).unwrap(), &transitive(4).unwrap()).unwrap());
    }

    #[test]
    fn regular_tournament_classes() {
        assert_eq!(enumerate_regular_tournaments(1).unwrap().len(), 1);
        assert_eq!(enumerate_regular_tournaments(3).unwrap().len(), 1);
        assert_eq!(enumerate_regular_tournaments(5).unwrap().len(), 1);
        let seven = enumerate_regular_tournaments(7).unwrap();
        assert_eq!(seven.len(), 3);
        for g in &seven {
            assert!(g.classify().is_regular);
        }
        for i in 0..seven.len() {
            for j in i + 1..seven.len() {
                assert_ne!(brute_canon(&seven[i]), brute_canon(&seven[j]));
            }
        }
        assert!(enumerate_regular_tournaments(6).is_err());
        assert!(enumerate_regular_tournaments(11).is_err());
    }

    #[test]
    fn enumeration_matches_labelled_oracle() {
        for n in [3, 5, 7] {
            let classes: BTreeSet<Vec<u8>> = labelled_regular(n).iter().map(brute_canon).collect();
            let got: BTreeSet<Vec<u8>> =
                enumerate_regular_tournaments(n).unwrap().iter().map(|g| canonical_form(g).unwrap().code).collect();
            assert_eq!(got, classes, "n = {n}");
        }
        assert_eq!(labelled_regular(5).len(), 24);
    }

    #[test]
    fn sampler_keeps_scores() {
        for n in [3, 4, 8, 15] {
            let g = random_semi_regular(n, 9).unwrap();
            let c = g.classify();
            assert!(c.is_tournament && c.is_semi_regular, "n = {n}");
            assert_eq!(c.min_semi_degree, (n - 1) / 2);
        }
        assert_eq!(random_semi_regular(15, 3).unwrap(), random_semi_regular(15, 3).unwrap());
        assert_ne!(random_semi_regular(15, 3).unwrap(), random_semi_regular(15, 4).unwrap());
        assert!(random_semi_regular(2, 0).is_err());

        let mut g = near_regular(9).unwrap();
        let scores: Vec<usize> = (0..9).map(|v| g.out_degree(v)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            reversal_walk(&mut g, 1, &mut rng);
            assert_eq!((0..9).map(|v| g.out_degree(v)).collect::<Vec<_>>(), scores);
        }
    }

    #[test]
    fn containment_probe_examples() {
        let s = graph_s();
        let r = turanability_probe(&s, &[5, 7], ProbeMode::Exhaustive, 0, 0, None).unwrap();
        assert_eq!((r.entries[0].hosts, r.entries[0].containing), (1, 1));
        assert_eq!((r.entries[1].hosts, r.entries[1].containing), (3, 3));
        let c62 = cycle_power(6, 2).unwrap();
        let r = turanability_probe(&c62, &[7], ProbeMode::Exhaustive, 0, 0, None).unwrap();
        assert!(r.entries[0].containing <= 2);
        assert!(!r.entries[0].failures.is_empty());
        let r = turanability_probe(&s, &[9], ProbeMode::Sample, 5, 1, None).unwrap();
        assert_eq!(r.entries[0].hosts, 5);
        assert!(turanability_probe(&s, &[8], ProbeMode::Exhaustive, 0, 0, None).is_err());
    }

    #[test]
    fn tile_probe_examples() {
        let (d, _) = d_abc(1, 1, 2).unwrap();
        let (d2, _) = d_s(2).unwrap();
        let t = t_sk(2, 1).unwrap();
        let injected = [InjectedHost { label: "t_sk(2,1)".into(), graph: &t.graph, partition: Some(&t.partition) }];
        let r = tileability_probe(&d, &[8, 9], 4, 1, None, &[]).unwrap();
        assert_eq!(r.entries[0].tiled, 4);
        for s in &r.entries[0].samples {
            let g = random_semi_regular(8, sample_seed(1, 8, s.index)).unwrap();
            assert!(crate::tiling::Tiling { copies: s.copies.clone() }.validate(&d, &g));
        }
        assert!(r.entries[1].skipped.is_some());
        let r = tileability_probe(&d2, &[], 0, 1, None, &injected).unwrap();
        assert_eq!(r.injected[0].mode, TilingMode::RefutedLattice);
    }
}
