//! Dense bitset graphs with an explicit, separate loop set.
//!
//! Vertices are `0..n`. Edges live in a symmetric adjacency bitset; loops are
//! bookkept in their own bitset so that simple-graph algorithms never see
//! them. Everything is sized for desk scale (constructions up to a few
//! thousand vertices, exhaustive searches far below that).

use std::fmt;

/// Sorted, duplicate-free set of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut verts: Vec<usize>) -> Self {
        verts.sort_unstable();
        verts.dedup();
        VertexSet(verts)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Undirected graph on vertices `0..n` with optional loops.
///
/// The adjacency matrix is stored row-wise as 64-bit words. Loops are kept in
/// a separate bitset: `neighbors(v)` and `degree(v)` never report them, and
/// the loop-aware operations say so explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    loops: Vec<u64>,
}

#[inline]
fn word_bit(v: usize) -> (usize, u64) {
    (v >> 6, 1u64 << (v & 63))
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            loops: vec![0; words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Adds the edge `{u, v}`. Idempotent. Panics on `u == v` (use
    /// [`Graph::add_loop`]) or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        assert_ne!(u, v, "self-edge rejected; loops are tracked separately");
        let (wu, bu) = word_bit(u);
        let (wv, bv) = word_bit(v);
        self.adj[u * self.words + wv] |= bv;
        self.adj[v * self.words + wu] |= bu;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v);
        let (wu, bu) = word_bit(u);
        let (wv, bv) = word_bit(v);
        self.adj[u * self.words + wv] &= !bv;
        self.adj[v * self.words + wu] &= !bu;
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let (wv, bv) = word_bit(v);
        self.adj[u * self.words + wv] & bv != 0
    }

    pub fn add_loop(&mut self, v: usize) {
        assert!(v < self.n);
        let (w, b) = word_bit(v);
        self.loops[w] |= b;
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        let (w, b) = word_bit(v);
        self.loops[w] & b != 0
    }

    pub fn loop_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_loop(v)).collect()
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.loops.iter().all(|&w| w == 0)
    }

    /// Copy with the loop set cleared. The explicit conversion from a
    /// loop-carrying construction to its simple underlying graph.
    pub fn strip_loops(&self) -> Graph {
        let mut g = self.clone();
        g.loops.iter_mut().for_each(|w| *w = 0);
        g
    }

    /// Degree ignoring any loop at `v`.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Degree where a loop at `v` adds one.
    pub fn degree_with_loop(&self, v: usize) -> usize {
        self.degree(v) + usize::from(self.has_loop(v))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|v| self.degree(v)).sum();
        total / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced on `verts`; vertex `verts[i]` becomes vertex `i`.
    /// Loops carry over.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            if self.has_loop(u) {
                g.add_loop(i);
            }
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            if self.has_loop(u) {
                g.add_loop(perm[u]);
            }
            for v in self.neighbors(u) {
                if v > u {
                    g.add_edge(perm[u], perm[v]);
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for v in self.loop_vertices() {
            g.add_loop(v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        for v in other.loop_vertices() {
            g.add_loop(self.n + v);
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member. Loops do not affect connectivity.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Two-coloring if one exists. Isolated vertices go to the first side.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| color[v] == 0).collect();
        let b = (0..self.n).filter(|&v| color[v] == 1).collect();
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.is_simple() && self.n >= 1 && self.is_connected() && self.edge_count() == self.n - 1
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0 && !self.has_loop(v))
    }

    /// Maximal subgraph of minimum degree at least 2, found by repeatedly
    /// deleting vertices of degree at most 1. Returns the reindexed induced
    /// subgraph together with the surviving original vertices (possibly
    /// empty).
    pub fn two_core(&self) -> (Graph, VertexSet) {
        assert!(self.is_simple(), "two_core expects a simple graph");
        let mut alive = vec![true; self.n];
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                    if deg[u] <= 1 {
                        queue.push(u);
                    }
                }
            }
        }
        let survivors: Vec<usize> = (0..self.n).filter(|&v| alive[v]).collect();
        (self.induced(&survivors), VertexSet::new(survivors))
    }

    /// Smallest `d` such that every subgraph has a vertex of degree at most
    /// `d`, by iterated minimum-degree removal.
    pub fn degeneracy(&self) -> usize {
        assert!(self.is_simple(), "degeneracy expects a simple graph");
        let mut alive = vec![true; self.n];
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut best = 0;
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| deg[v])
                .unwrap();
            best = best.max(deg[v]);
            alive[v] = false;
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        best
    }

    /// Whether some cycle has length in `[lo, hi]`. Exact search, one DFS
    /// per target length; fine at desk scale.
    pub fn has_cycle_length_in(&self, lo: usize, hi: usize) -> bool {
        assert!(self.is_simple(), "cycle search expects a simple graph");
        assert!((3..=hi).contains(&lo), "need 3 <= lo <= hi");
        (lo..=hi.min(self.n)).any(|len| self.has_cycle_of_length(len))
    }

    fn has_cycle_of_length(&self, len: usize) -> bool {
        // Roots the cycle at its minimum vertex so each cycle is seen once.
        let mut on_path = vec![false; self.n];
        for start in 0..self.n {
            on_path[start] = true;
            if self.cycle_dfs(start, start, 1, len, &mut on_path) {
                return true;
            }
            on_path[start] = false;
        }
        false
    }

    fn cycle_dfs(
        &self,
        start: usize,
        at: usize,
        depth: usize,
        len: usize,
        on_path: &mut Vec<bool>,
    ) -> bool {
        if depth == len {
            return self.has_edge(at, start);
        }
        for v in self.neighbors(at) {
            if v > start && !on_path[v] {
                on_path[v] = true;
                if self.cycle_dfs(start, v, depth + 1, len, on_path) {
                    return true;
                }
                on_path[v] = false;
            }
        }
        false
    }

    // ---- standard families ----

    pub fn empty_graph(n: usize) -> Graph {
        Graph::new(n)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// Star `K_{1,k}` with the hub at vertex 0.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::new(k + 1);
        for v in 1..=k {
            g.add_edge(0, v);
        }
        g
    }

    /// `K_{a,b}` with the `a`-side on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `k` disjoint edges.
    pub fn matching(k: usize) -> Graph {
        let mut g = Graph::new(2 * k);
        for i in 0..k {
            g.add_edge(2 * i, 2 * i + 1);
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, 5 + i);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?}", self.n, self.edges())?;
        if !self.is_simple() {
            write!(f, ", loops={:?}", self.loop_vertices())?;
        }
        write!(f, ")")
    }
}

/// Iterator over set bits of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: if words.is_empty() { 0 } else { words[0] },
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
        let b = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some((self.idx << 6) | b)
    }
}
