//! Exact subgraph-copy counting, containment tests, loop-aware spectral and
//! walk summaries, and the friendship-graph finder.
//!
//! A "copy" of a pattern T in a host G is a subgraph of G isomorphic to T,
//! not necessarily induced. Copies are counted as injective edge-preserving
//! maps divided by `|Aut(T)|`.

use crate::canon::automorphism_count;
use crate::graph::Graph;
use nalgebra::DMatrix;
use serde::Serialize;

/// Placement order for pattern vertices: connected extension where possible,
/// so each new vertex is matched against the neighborhoods of already-placed
/// ones.
struct PatternOrder {
    order: Vec<usize>,
    /// For each position, the positions of earlier pattern neighbours.
    earlier: Vec<Vec<usize>>,
    /// Pattern degree of the vertex at each position.
    degree: Vec<usize>,
}

impl PatternOrder {
    fn new(t: &Graph) -> Self {
        Self::with_seeds(t, &[])
    }

    fn with_seeds(t: &Graph, seeds: &[usize]) -> Self {
        let n = t.n();
        let mut order: Vec<usize> = seeds.to_vec();
        let mut placed = vec![false; n];
        for &s in seeds {
            placed[s] = true;
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let attached = order.iter().filter(|&&u| t.has_edge(u, v)).count();
                    (attached, t.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let earlier = (0..n)
            .map(|pos| {
                (0..pos)
                    .filter(|&p| t.has_edge(order[p], order[pos]))
                    .collect()
            })
            .collect();
        let degree = order.iter().map(|&v| t.degree(v)).collect();
        PatternOrder {
            order,
            earlier,
            degree,
        }
    }
}

struct Embedder<'a> {
    g: &'a Graph,
    t: &'a Graph,
    po: &'a PatternOrder,
    image: Vec<usize>,
    used: Vec<u64>,
    /// One candidate buffer per recursion depth.
    bufs: Vec<Vec<u64>>,
}

impl<'a> Embedder<'a> {
    fn new(g: &'a Graph, t: &'a Graph, po: &'a PatternOrder) -> Self {
        Embedder {
            g,
            t,
            po,
            image: vec![usize::MAX; t.n()],
            used: vec![0; g.words()],
            bufs: vec![vec![0; g.words()]; t.n()],
        }
    }

    /// Runs the backtracking from position `from`, with positions below
    /// `from` pre-assigned in `image`/`used`. The visitor returns `true` to
    /// stop the whole search.
    fn run<F: FnMut(&[usize]) -> bool>(&mut self, from: usize, visit: &mut F) -> bool {
        if from == self.t.n() {
            return visit(&self.image);
        }
        let pos = from;
        let earlier = &self.po.earlier[pos];
        if earlier.is_empty() {
            for v in 0..self.g.n() {
                if self.used[v >> 6] & (1 << (v & 63)) != 0 {
                    continue;
                }
                if self.g.degree(v) < self.po.degree[pos] {
                    continue;
                }
                if self.place_and_recurse(pos, v, visit) {
                    return true;
                }
            }
        } else {
            let words = self.g.words();
            let mut cands = std::mem::take(&mut self.bufs[pos]);
            for (w, slot) in cands.iter_mut().enumerate() {
                let mut acc = !self.used[w];
                for &e in earlier {
                    acc &= self.g.row(self.image[e])[w];
                }
                *slot = acc;
            }
            let mut found_stop = false;
            for w in 0..words {
                let mut bits = cands[w];
                while bits != 0 {
                    let v = (w << 6) | bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if self.g.degree(v) < self.po.degree[pos] {
                        continue;
                    }
                    if self.place_and_recurse(pos, v, visit) {
                        found_stop = true;
                        break;
                    }
                }
                if found_stop {
                    break;
                }
            }
            self.bufs[pos] = cands;
            if found_stop {
                return true;
            }
        }
        false
    }

    fn place_and_recurse<F: FnMut(&[usize]) -> bool>(
        &mut self,
        pos: usize,
        v: usize,
        visit: &mut F,
    ) -> bool {
        self.image[pos] = v;
        self.used[v >> 6] |= 1 << (v & 63);
        let stop = self.run(pos + 1, visit);
        self.used[v >> 6] &= !(1 << (v & 63));
        self.image[pos] = usize::MAX;
        stop
    }
}

fn check_pattern(t: &Graph) {
    assert!(t.is_simple(), "pattern must be simple");
    assert!(t.n() > 0, "pattern must be nonempty");
    assert!(
        !t.has_isolated_vertex(),
        "patterns with isolated vertices are rejected"
    );
}

/// Number of injective edge-preserving maps of `t` into `g`.
pub fn count_injective_homs(g: &Graph, t: &Graph) -> u64 {
    assert!(g.is_simple(), "host must be simple");
    check_pattern(t);
    if t.n() > g.n() {
        return 0;
    }
    let po = PatternOrder::new(t);
    let mut count = 0u64;
    Embedder::new(g, t, &po).run(0, &mut |_| {
        count += 1;
        false
    });
    count
}

/// Number of unlabeled copies of `t` in `g`: subgraphs of `g` isomorphic
/// to `t`.
pub fn count_copies(g: &Graph, t: &Graph) -> u64 {
    let homs = count_injective_homs(g, t);
    let aut = automorphism_count(t);
    debug_assert_eq!(homs % aut, 0);
    homs / aut
}

/// Visits every injective edge-preserving map of `t` into `g` as a slice
/// indexed by pattern vertex. The visitor returns `true` to stop early;
/// the function reports whether it was stopped.
pub fn for_each_embedding<F: FnMut(&[usize]) -> bool>(g: &Graph, t: &Graph, visit: &mut F) -> bool {
    assert!(g.is_simple(), "host must be simple");
    check_pattern(t);
    if t.n() > g.n() {
        return false;
    }
    let po = PatternOrder::new(t);
    let order = po.order.clone();
    let mut by_vertex = vec![usize::MAX; t.n()];
    Embedder::new(g, t, &po).run(0, &mut |image: &[usize]| {
        for (pos, &v) in order.iter().enumerate() {
            by_vertex[v] = image[pos];
        }
        visit(&by_vertex)
    })
}

/// Whether `g` contains a subgraph isomorphic to `h`. Early exit.
pub fn contains_copy(g: &Graph, h: &Graph) -> bool {
    assert!(g.is_simple(), "host must be simple");
    check_pattern(h);
    if h.n() > g.n() {
        return false;
    }
    let po = PatternOrder::new(h);
    Embedder::new(g, h, &po).run(0, &mut |_| true)
}

/// Number of copies of `t` in `g` whose edge set uses the edge `{u, v}`.
/// The edge must be present in `g`.
pub fn copies_through_edge(g: &Graph, t: &Graph, u: usize, v: usize) -> u64 {
    assert!(g.has_edge(u, v), "anchor edge must exist in the host");
    check_pattern(t);
    let mut homs = 0u64;
    for_each_anchored(g, t, u, v, &mut |_| {
        homs += 1;
        false
    });
    let aut = automorphism_count(t);
    debug_assert_eq!(homs % aut, 0);
    homs / aut
}

/// Whether adding the edge `{u, v}` to `g` would create a copy of `h`
/// through that edge. `g` itself must already contain the edge when called;
/// callers add it first.
pub fn has_copy_through_edge(g: &Graph, h: &Graph, u: usize, v: usize) -> bool {
    assert!(g.has_edge(u, v));
    check_pattern(h);
    for_each_anchored(g, h, u, v, &mut |_| true)
}

/// Enumerates injective homs of `t` where some pattern edge lands exactly on
/// `{u, v}`. Each copy through the edge is visited `|Aut(t)|` times.
fn for_each_anchored<F: FnMut(&[usize]) -> bool>(
    g: &Graph,
    t: &Graph,
    u: usize,
    v: usize,
    visit: &mut F,
) -> bool {
    for (a, b) in t.edges() {
        for (x, y) in [(a, b), (b, a)] {
            let po = PatternOrder::with_seeds(t, &[x, y]);
            let mut emb = Embedder::new(g, t, &po);
            if g.degree(u) < t.degree(x) || g.degree(v) < t.degree(y) {
                continue;
            }
            emb.image[0] = u;
            emb.image[1] = v;
            emb.used[u >> 6] |= 1 << (u & 63);
            emb.used[v >> 6] |= 1 << (v & 63);
            if emb.run(2, visit) {
                return true;
            }
        }
    }
    false
}

/// All triangles of a simple graph, lexicographically sorted triples.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    assert!(g.is_simple());
    let mut out = Vec::new();
    let words = g.words();
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            if v <= u {
                continue;
            }
            for w_idx in 0..words {
                let mut bits = g.row(u)[w_idx] & g.row(v)[w_idx];
                while bits != 0 {
                    let w = (w_idx << 6) | bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if w > v {
                        out.push([u, v, w]);
                    }
                }
            }
        }
    }
    out
}

/// Maximum number of triangles sharing a single edge; 0 for triangle-free
/// graphs.
pub fn max_book_width(g: &Graph) -> u64 {
    assert!(g.is_simple());
    let mut best = 0u64;
    for (u, v) in g.edges() {
        let common: u64 = g
            .row(u)
            .iter()
            .zip(g.row(v))
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum();
        best = best.max(common);
    }
    best
}

/// Loop-aware common neighbourhood size. A loop at `u` together with the
/// edge `{u, v}` makes `u` itself a common neighbour of the pair, and
/// symmetrically for `v`.
pub fn common_neighbor_count(g: &Graph, u: usize, v: usize) -> u64 {
    assert_ne!(u, v, "common neighbours are defined for distinct vertices");
    let mut count: u64 = g
        .row(u)
        .iter()
        .zip(g.row(v))
        .map(|(a, b)| (a & b).count_ones() as u64)
        .sum();
    if g.has_loop(u) && g.has_edge(u, v) {
        count += 1;
    }
    if g.has_loop(v) && g.has_edge(u, v) {
        count += 1;
    }
    count
}

/// Exact number of closed walks of length 3, with loops entering the
/// adjacency diagonal as 1.
pub fn closed_walk_count_3(g: &Graph) -> u128 {
    let n = g.n();
    let words = g.words();
    // Adjacency rows with the loop diagonal set.
    let mut rows = vec![0u64; n * words];
    for v in 0..n {
        rows[v * words..(v + 1) * words].copy_from_slice(g.row(v));
        if g.has_loop(v) {
            rows[v * words + (v >> 6)] |= 1 << (v & 63);
        }
    }
    let row = |v: usize| &rows[v * words..(v + 1) * words];
    let mut total = 0u128;
    for i in 0..n {
        for w_idx in 0..words {
            let mut bits = row(i)[w_idx];
            while bits != 0 {
                let j = (w_idx << 6) | bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let common: u64 = row(i)
                    .iter()
                    .zip(row(j))
                    .map(|(a, b)| (a & b).count_ones() as u64)
                    .sum();
                total += common as u128;
            }
        }
    }
    total
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumCluster {
    pub value: f64,
    pub multiplicity: usize,
}

/// Sorted eigenvalues of the loop-aware adjacency matrix plus multiplicity
/// clusters under a fixed tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<SpectrumCluster>,
    pub tolerance: f64,
}

pub const SPECTRUM_CLUSTER_TOL: f64 = 1e-7;

pub fn spectrum(g: &Graph) -> SpectrumSummary {
    let n = g.n();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            f64::from(g.has_loop(i))
        } else {
            f64::from(g.has_edge(i, j))
        }
    });
    let mut evs: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut clusters: Vec<SpectrumCluster> = Vec::new();
    let mut start = 0;
    for i in 0..=evs.len() {
        if i == evs.len() || (i > start && evs[i] - evs[i - 1] > SPECTRUM_CLUSTER_TOL) {
            let slice = &evs[start..i];
            if !slice.is_empty() {
                clusters.push(SpectrumCluster {
                    value: slice.iter().sum::<f64>() / slice.len() as f64,
                    multiplicity: slice.len(),
                });
            }
            start = i;
        }
    }
    SpectrumSummary {
        eigenvalues: evs,
        clusters,
        tolerance: SPECTRUM_CLUSTER_TOL,
    }
}

/// A friendship graph embedding: `pairs` are the outer edges of the
/// triangles, all through `hub`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendshipWitness {
    pub hub: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl FriendshipWitness {
    pub fn is_valid(&self, g: &Graph, c: usize) -> bool {
        if self.pairs.len() != c {
            return false;
        }
        let mut seen = vec![self.hub];
        for &(x, y) in &self.pairs {
            if !(g.has_edge(self.hub, x) && g.has_edge(self.hub, y) && g.has_edge(x, y)) {
                return false;
            }
            seen.push(x);
            seen.push(y);
        }
        seen.sort_unstable();
        seen.dedup();
        seen.len() == 2 * c + 1
    }
}

/// Friendship-graph finder: greedy maximal edge-disjoint triangle family,
/// then either a vertex meeting `c` family triangles, or a vertex-disjoint
/// colour class whose clusters supply `c` triangles sharing one external
/// vertex. Succeeds whenever the triangle count is at least
/// `(9c-15)(c+1) * n` (a sufficient threshold, meaningful for `c >= 2`),
/// and opportunistically below it.
pub fn find_friendship(g: &Graph, c: usize) -> Option<FriendshipWitness> {
    assert!(g.is_simple());
    assert!(c >= 1);
    let tris = triangles(g);
    if tris.is_empty() {
        return None;
    }

    // Greedy maximal edge-disjoint family in lexicographic discovery order.
    let mut edge_used = std::collections::HashSet::new();
    let mut family: Vec<[usize; 3]> = Vec::new();
    for t in &tris {
        let es = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
        if es.iter().all(|e| !edge_used.contains(e)) {
            family.push(*t);
            for e in es {
                edge_used.insert(e);
            }
        }
    }

    // A vertex lying on c family triangles is a hub outright: edge-disjoint
    // triangles through one vertex pairwise share only that vertex.
    for hub in 0..g.n() {
        let through: Vec<&[usize; 3]> = family.iter().filter(|t| t.contains(&hub)).collect();
        if through.len() >= c {
            let pairs = through[..c]
                .iter()
                .map(|t| {
                    let mut others = t.iter().copied().filter(|&x| x != hub);
                    (others.next().unwrap(), others.next().unwrap())
                })
                .collect();
            return Some(FriendshipWitness { hub, pairs });
        }
    }

    // Colour the family so same-coloured triangles are vertex-disjoint,
    // smallest available colour in discovery order.
    let mut colors = vec![0usize; family.len()];
    for i in 0..family.len() {
        let mut taken: Vec<usize> = (0..i)
            .filter(|&j| family[j].iter().any(|v| family[i].contains(v)))
            .map(|j| colors[j])
            .collect();
        taken.sort_unstable();
        taken.dedup();
        let mut color = 0;
        for t in taken {
            if t == color {
                color += 1;
            } else if t > color {
                break;
            }
        }
        colors[i] = color;
    }
    let ncolors = colors.iter().max().map_or(0, |&m| m + 1);

    for color in 0..ncolors {
        let centrals: Vec<usize> = (0..family.len()).filter(|&i| colors[i] == color).collect();
        // external[v] collects, per cluster, one witness triangle with v as
        // its vertex outside the central triangle.
        let mut external: std::collections::HashMap<usize, Vec<(usize, (usize, usize))>> =
            std::collections::HashMap::new();
        for t in &tris {
            for (ci, &fi) in centrals.iter().enumerate() {
                let central = family[fi];
                if *t == central {
                    continue;
                }
                let shared: Vec<usize> =
                    t.iter().copied().filter(|v| central.contains(v)).collect();
                if shared.len() == 2 {
                    let ext = t.iter().copied().find(|v| !central.contains(v)).unwrap();
                    let entry = external.entry(ext).or_default();
                    if !entry.iter().any(|&(cl, _)| cl == ci) {
                        entry.push((ci, (shared[0], shared[1])));
                    }
                }
            }
        }
        let mut hubs: Vec<usize> = external
            .iter()
            .filter(|(_, cls)| cls.len() >= c)
            .map(|(&v, _)| v)
            .collect();
        hubs.sort_unstable();
        if let Some(&hub) = hubs.first() {
            let pairs = external[&hub][..c].iter().map(|&(_, e)| e).collect();
            return Some(FriendshipWitness { hub, pairs });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_triangle_count() {
        assert_eq!(count_copies(&Graph::complete(4), &Graph::complete(3)), 4);
        assert_eq!(count_copies(&Graph::complete(6), &Graph::complete(3)), 20);
    }

    #[test]
    fn paths_in_c5() {
        assert_eq!(count_copies(&Graph::cycle(5), &Graph::path(3)), 5);
    }

    #[test]
    fn pentagons_in_petersen() {
        // Independent derivation: injective homs / |Aut(C_5)| = 120/10.
        let homs = count_injective_homs(&Graph::petersen(), &Graph::cycle(5));
        assert_eq!(homs, 120);
        assert_eq!(count_copies(&Graph::petersen(), &Graph::cycle(5)), 12);
    }

    #[test]
    fn containment_basics() {
        assert!(contains_copy(&Graph::complete_bipartite(2, 6), &Graph::path(5)));
        assert!(!contains_copy(&Graph::cycle(5), &Graph::complete(3)));
        // Blow-up of a triangle-free graph stays triangle-free.
        let b = crate::constructions::uniform_blowup(&Graph::cycle(5), 2);
        assert!(!contains_copy(&b, &Graph::complete(3)));
    }

    #[test]
    fn disconnected_patterns() {
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(!contains_copy(&Graph::complete(5), &two_k3));
        assert!(contains_copy(&Graph::complete(6), &two_k3));
        assert_eq!(count_copies(&Graph::complete(6), &two_k3), 10);
    }

    #[test]
    fn anchored_counting_matches_difference() {
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        let t = Graph::complete(3);
        let before = count_copies(&g, &t);
        let mut g2 = g.clone();
        g2.add_edge(0, 1);
        let after = count_copies(&g2, &t);
        assert_eq!(copies_through_edge(&g2, &t, 0, 1), after - before);
        assert!(has_copy_through_edge(&g2, &t, 0, 1));
    }

    #[test]
    fn walk_counts() {
        assert_eq!(closed_walk_count_3(&Graph::complete(3)), 6);
        let mut single = Graph::new(1);
        single.add_loop(0);
        assert_eq!(closed_walk_count_3(&single), 1);
        // Triangle identity on a loopless graph.
        let g = Graph::petersen();
        assert_eq!(
            closed_walk_count_3(&g),
            6 * count_copies(&g, &Graph::complete(3)) as u128
        );
        let k5 = Graph::complete(5);
        assert_eq!(closed_walk_count_3(&k5), 6 * 10);
    }

    #[test]
    fn common_neighbors_with_loops() {
        let c4 = Graph::cycle(4);
        assert_eq!(common_neighbor_count(&c4, 0, 2), 2);
        let mut k3 = Graph::complete(3);
        k3.add_loop(0);
        assert_eq!(common_neighbor_count(&k3, 0, 1), 2);
    }

    #[test]
    fn spectrum_fixtures() {
        let s = spectrum(&Graph::cycle(4));
        let vals: Vec<i64> = s.eigenvalues.iter().map(|x| x.round() as i64).collect();
        assert_eq!(vals, vec![-2, 0, 0, 2]);
        let star = spectrum(&Graph::star(4));
        let vals: Vec<i64> = star.eigenvalues.iter().map(|x| x.round() as i64).collect();
        assert_eq!(vals, vec![-2, 0, 0, 0, 2]);
        // Loop-aware trace identities.
        let mut g = Graph::complete(4);
        g.add_loop(1);
        g.add_loop(3);
        let s = spectrum(&g);
        let sum: f64 = s.eigenvalues.iter().sum();
        assert!((sum - 2.0).abs() < 1e-6);
        let sq: f64 = s.eigenvalues.iter().map(|x| x * x).sum();
        assert!((sq - (2.0 * 6.0 + 2.0)).abs() < 1e-6);
    }

    #[test]
    fn book_widths() {
        assert_eq!(max_book_width(&Graph::complete(4)), 2);
        assert_eq!(max_book_width(&Graph::cycle(5)), 0);
    }

    #[test]
    fn friendship_finder_on_k5() {
        let w = find_friendship(&Graph::complete(5), 2).expect("K_5 contains F_2");
        assert!(w.is_valid(&Graph::complete(5), 2));
    }

    #[test]
    fn friendship_finder_on_friendship_graph() {
        let f3 = crate::constructions::friendship(3);
        let w = find_friendship(&f3, 3).expect("F_3 contains itself");
        assert!(w.is_valid(&f3, 3));
        assert_eq!(w.hub, 0);
    }

    #[test]
    fn friendship_finder_none_when_absent() {
        assert!(find_friendship(&Graph::cycle(6), 1).is_none());
        // Vertex-disjoint triangles admit no F_2.
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(find_friendship(&two, 2).is_none());
        // Unique-triangle graphs still admit friendship subgraphs: the
        // triangles through one X-vertex share exactly that vertex. Finder
        // and exhaustive search must agree on presence.
        let set = crate::constructions::behrend_set(10);
        let rsz = crate::constructions::ruzsa_szemeredi_graph(10, &set).unwrap();
        let found = find_friendship(&rsz, 2).expect("hub vertex carries |S| triangles");
        assert!(found.is_valid(&rsz, 2));
        assert!(contains_copy(&rsz, &crate::constructions::friendship(2)));
    }

    #[test]
    fn norm_graph_spectrum_fixture() {
        let g = crate::constructions::norm_graph(3, 3).unwrap();
        let s = spectrum(&g);
        let got: Vec<(i64, usize)> = s
            .clusters
            .iter()
            .map(|c| (c.value.round() as i64, c.multiplicity))
            .collect();
        assert_eq!(got, vec![(-3, 4), (-1, 4), (0, 1), (1, 4), (3, 4), (8, 1)]);
        assert_eq!(closed_walk_count_3(&g), 512);
    }
}
