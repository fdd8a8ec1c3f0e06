//! Canonical labeling, isomorphism testing, and automorphism counting.
//!
//! The canonical form is computed by iterated equitable refinement with
//! individualization and backtracking. Discovered automorphisms prune
//! sibling branches, which keeps highly symmetric graphs (empty, complete,
//! complete multipartite) tractable. Sized for the exhaustive-search regime
//! (n up to roughly 16); the format codecs handle larger graphs but nothing
//! here needs to relabel them.

use crate::g6::encode_g6;
use crate::graph::Graph;

/// Canonical byte label: the graph6 encoding of the canonically relabeled
/// graph. Equal labels iff isomorphic.
///
/// Panics on graphs with loops.
pub fn canonical_label(g: &Graph) -> Vec<u8> {
    encode_g6(&canonical_form(g)).unwrap().into_bytes()
}

/// The canonically relabeled graph itself.
pub fn canonical_form(g: &Graph) -> Graph {
    assert!(g.is_simple(), "canonical labeling rejects graphs with loops");
    let n = g.n();
    if n == 0 {
        return g.clone();
    }
    let mut searcher = Searcher::new(g);
    searcher.run();
    // best_positions[v] = canonical index of v
    g.relabel(&searcher.best_positions.unwrap())
}

/// Edge-preserving bijection test, consistent with `canonical_label`
/// equality by construction.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    assert!(
        a.is_simple() && b.is_simple(),
        "isomorphism test rejects graphs with loops"
    );
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    canonical_label(a) == canonical_label(b)
}

/// Exact automorphism group order, by direct backtracking over
/// adjacency-preserving bijections.
pub fn automorphism_count(g: &Graph) -> u64 {
    assert!(g.is_simple(), "automorphism count expects a simple graph");
    let n = g.n();
    if n == 0 {
        return 1;
    }
    let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut count = 0u64;
    aut_dfs(g, &degs, 0, &mut image, &mut used, &mut count);
    count
}

fn aut_dfs(
    g: &Graph,
    degs: &[usize],
    v: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    count: &mut u64,
) {
    let n = g.n();
    if v == n {
        *count += 1;
        return;
    }
    'cand: for w in 0..n {
        if used[w] || degs[w] != degs[v] {
            continue;
        }
        for u in 0..v {
            if g.has_edge(u, v) != g.has_edge(image[u], w) {
                continue 'cand;
            }
        }
        image[v] = w;
        used[w] = true;
        aut_dfs(g, degs, v + 1, image, used, count);
        used[w] = false;
    }
    image[v] = usize::MAX;
}

// ---------------------------------------------------------------------------

type Partition = Vec<Vec<usize>>;

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    best_bits: Option<Vec<u64>>,
    best_positions: Option<Vec<usize>>, // vertex -> canonical index
    best_order: Vec<usize>,             // canonical index -> vertex
    autos: Vec<Vec<usize>>,             // automorphisms, vertex -> vertex
    path: Vec<usize>,                   // individualized vertices, root to here
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph) -> Self {
        Searcher {
            g,
            n: g.n(),
            best_bits: None,
            best_positions: None,
            best_order: Vec::new(),
            autos: Vec::new(),
            path: Vec::new(),
        }
    }

    fn run(&mut self) {
        // Seed cells by ascending degree; refinement does the rest.
        let mut by_degree: Vec<Vec<usize>> = Vec::new();
        let mut degs: Vec<(usize, usize)> = (0..self.n).map(|v| (self.g.degree(v), v)).collect();
        degs.sort_unstable();
        for (d, v) in degs {
            match by_degree.last_mut() {
                Some(cell) if self.g.degree(cell[0]) == d => cell.push(v),
                _ => by_degree.push(vec![v]),
            }
        }
        let cells = self.refine(by_degree);
        self.search(cells);
    }

    fn refine(&self, mut cells: Partition) -> Partition {
        loop {
            let mut changed = false;
            let mut next: Partition = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                // Signature: neighbour counts against every current cell.
                let mut sig: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let s = cells
                            .iter()
                            .map(|c| c.iter().filter(|&&u| self.g.has_edge(v, u)).count() as u32)
                            .collect();
                        (s, v)
                    })
                    .collect();
                sig.sort();
                let mut group: Vec<usize> = vec![sig[0].1];
                for w in sig.windows(2) {
                    if w[0].0 == w[1].0 {
                        group.push(w[1].1);
                    } else {
                        next.push(std::mem::take(&mut group));
                        group.push(w[1].1);
                        changed = true;
                    }
                }
                next.push(group);
            }
            cells = next;
            if !changed {
                return cells;
            }
        }
    }

    fn search(&mut self, cells: Partition) {
        if cells.iter().all(|c| c.len() == 1) {
            self.record_leaf(&cells);
            return;
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| cells[i].len())
            .unwrap();
        let mut processed: Vec<usize> = Vec::new();
        let candidates = cells[target].clone();
        for v in candidates {
            if self.pruned_by_orbit(v, &processed) {
                continue;
            }
            let mut split: Partition = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    split.push(vec![v]);
                    split.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    split.push(cell.clone());
                }
            }
            let refined = self.refine(split);
            self.path.push(v);
            self.search(refined);
            self.path.pop();
            processed.push(v);
        }
    }

    /// True if `v` is mapped to an already-processed sibling by some product
    /// of discovered automorphisms fixing every vertex on the current path.
    fn pruned_by_orbit(&self, v: usize, processed: &[usize]) -> bool {
        if processed.is_empty() || self.autos.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for auto in &self.autos {
            if self.path.iter().any(|&u| auto[u] != u) {
                continue;
            }
            for u in 0..self.n {
                let (a, b) = (find(&mut parent, u), find(&mut parent, auto[u]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        processed.iter().any(|&w| find(&mut parent, w) == rv)
    }

    fn record_leaf(&mut self, cells: &Partition) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let bits = self.pack_bits(&order);
        match &self.best_bits {
            Some(best) if bits > *best => {}
            Some(best) if bits == *best => {
                // Same adjacency encoding as the incumbent: the position-wise
                // vertex map between the two orderings is an automorphism.
                let mut auto = vec![0usize; self.n];
                for i in 0..self.n {
                    auto[order[i]] = self.best_order[i];
                }
                self.autos.push(auto);
            }
            _ => {
                let mut positions = vec![0usize; self.n];
                for (i, &v) in order.iter().enumerate() {
                    positions[v] = i;
                }
                self.best_bits = Some(bits);
                self.best_positions = Some(positions);
                self.best_order = order;
            }
        }
    }

    /// Upper-triangle bits of the relabeled adjacency matrix, column-major,
    /// packed MSB-first. Lexicographic minimum over leaves defines the
    /// canonical form.
    fn pack_bits(&self, order: &[usize]) -> Vec<u64> {
        let nbits = self.n * (self.n - 1) / 2;
        let mut out = vec![0u64; nbits.div_ceil(64).max(1)];
        let mut pos = 0usize;
        for j in 1..self.n {
            for i in 0..j {
                if self.g.has_edge(order[i], order[j]) {
                    out[pos >> 6] |= 1u64 << (63 - (pos & 63));
                }
                pos += 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: exhaustive search for an edge-preserving
    /// bijection. Only usable for small n.
    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.n() != b.n() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.n();
        let mut perm: Vec<usize> = (0..n).collect();
        permute_check(a, b, &mut perm, 0)
    }

    fn permute_check(a: &Graph, b: &Graph, perm: &mut Vec<usize>, k: usize) -> bool {
        let n = a.n();
        if k == n {
            return a
                .edges()
                .iter()
                .all(|&(u, v)| b.has_edge(perm[u], perm[v]));
        }
        for i in k..n {
            perm.swap(k, i);
            let ok = (0..k).all(|u| a.has_edge(u, k) == b.has_edge(perm[u], perm[k]));
            if ok && permute_check(a, b, perm, k + 1) {
                perm.swap(k, i);
                return true;
            }
            perm.swap(k, i);
        }
        false
    }

    #[test]
    fn relabeled_paths_share_a_label() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let q = Graph::from_edges(3, &[(2, 0), (0, 1)]);
        assert_eq!(canonical_label(&p), canonical_label(&q));
    }

    #[test]
    fn c4_and_claw_differ() {
        assert_ne!(canonical_label(&Graph::cycle(4)), canonical_label(&Graph::star(3)));
    }

    #[test]
    fn four_vertex_graphs_have_eleven_classes() {
        // Brute force over all 2^6 labeled graphs on 4 vertices, classified
        // two independent ways.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut graphs = Vec::new();
        for mask in 0u32..64 {
            let mut g = Graph::new(4);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    g.add_edge(u, v);
                }
            }
            graphs.push(g);
        }
        let mut reps: Vec<Graph> = Vec::new();
        for g in &graphs {
            if !reps.iter().any(|r| brute_isomorphic(r, g)) {
                reps.push(g.clone());
            }
        }
        assert_eq!(reps.len(), 11);
        let labels: std::collections::HashSet<Vec<u8>> =
            graphs.iter().map(canonical_label).collect();
        assert_eq!(labels.len(), 11);
    }

    #[test]
    fn cube_is_k44_minus_perfect_matching() {
        let mut cube = Graph::new(8);
        for u in 0..8u32 {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if v > u {
                    cube.add_edge(u as usize, v as usize);
                }
            }
        }
        let mut k44m = Graph::complete_bipartite(4, 4);
        for i in 0..4 {
            k44m.remove_edge(i, 4 + i);
        }
        assert!(brute_isomorphic(&cube, &k44m));
        assert!(is_isomorphic(&cube, &k44m));
    }

    #[test]
    fn k33_is_not_c6() {
        assert!(!is_isomorphic(&Graph::complete_bipartite(3, 3), &Graph::cycle(6)));
    }

    #[test]
    fn label_invariant_under_random_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let samples = [
            Graph::petersen(),
            Graph::complete(6),
            Graph::empty_graph(7),
            Graph::complete_bipartite(3, 4),
            Graph::cycle(9),
            Graph::matching(4),
        ];
        for g in &samples {
            let base = canonical_label(g);
            for _ in 0..10 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_label(&g.relabel(&perm)), base);
            }
        }
    }

    #[test]
    fn symmetric_graphs_are_fast_enough() {
        // Orbit pruning must keep fully symmetric inputs from exploding.
        let _ = canonical_label(&Graph::empty_graph(12));
        let _ = canonical_label(&Graph::complete(12));
        let _ = canonical_label(&Graph::complete_bipartite(6, 6));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&Graph::complete(4)), 24);
        assert_eq!(automorphism_count(&Graph::path(3)), 2);
        assert_eq!(automorphism_count(&Graph::petersen()), 120);
        assert_eq!(automorphism_count(&Graph::cycle(5)), 10);
        assert_eq!(automorphism_count(&Graph::complete_bipartite(3, 3)), 72);
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_a_corpus() {
        let corpus = [
            Graph::cycle(5),
            Graph::cycle(5).relabel(&[4, 2, 0, 3, 1]),
            Graph::path(5),
            Graph::star(4),
            Graph::complete(5),
        ];
        for a in &corpus {
            assert!(is_isomorphic(a, a));
            for b in &corpus {
                assert_eq!(is_isomorphic(a, b), is_isomorphic(b, a));
                for c in &corpus {
                    if is_isomorphic(a, b) && is_isomorphic(b, c) {
                        assert!(is_isomorphic(a, c));
                    }
                }
            }
        }
    }
}
