//! Generators for the extremal graphs used throughout: blow-ups, friendship
//! graphs and books, complete multipartite graphs, projective norm graphs,
//! polarity graphs over a unit subgroup, progression-free sets and the
//! tripartite graphs built from them, the random high-girth triangle
//! sampler, clique unions, sparse hypergraph shadows, and the incidence
//! gadgets for the Hamilton-path reduction.
//!
//! Every randomized generator takes an explicit seed and is reproducible
//! byte-for-byte per seed. Vertex index layouts are documented per
//! generator so tests can address specific vertices.

use crate::gfield::{
    elements, from_value, norm_map, prime_power, subfield_elements, unit_subgroup, FieldError,
    FiniteField,
};
use crate::graph::{Graph, VertexSet};
use rand::distributions::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("requires s >= 2, got {0}")]
    BadNormDimension(u32),
    #[error("q^s = {0} exceeds the dense-graph limit {1}")]
    TooLarge(u64, u64),
    #[error("{t} - 1 must divide {q} - 1")]
    Divisibility { q: u64, t: u64 },
    #[error("the set contains a 3-term arithmetic progression ({0}, {1}, {2})")]
    NotProgressionFree(u64, u64, u64),
    #[error("set member {0} outside 1..={1}")]
    SetMemberRange(u64, u64),
    #[error("cycle exclusion bound k must be at least 4, got {0}")]
    BadGirthBound(usize),
    #[error("expected triangle count {0:.3} below 1; increase n")]
    TooSparse(f64),
    #[error("minimum degree {0} is below the required {1}")]
    MinDegree(usize, usize),
}

// ---------------------------------------------------------------------------
// Blow-ups

/// Replaces every vertex `v` of `h` by an independent set of size `s`
/// (copy `j` of `v` gets index `v*s + j`) and every edge by a complete
/// bipartite graph between the corresponding sets.
pub fn uniform_blowup(h: &Graph, s: usize) -> Graph {
    assert!(h.is_simple());
    assert!(s >= 1);
    let mut g = Graph::new(h.n() * s);
    for (u, v) in h.edges() {
        for i in 0..s {
            for j in 0..s {
                g.add_edge(u * s + i, v * s + j);
            }
        }
    }
    g
}

/// A base graph, a fixed vertex set, and a copy multiplicity.
#[derive(Debug, Clone)]
pub struct BlowupSpec {
    pub base: Graph,
    pub fixed: VertexSet,
    pub multiplicity: usize,
}

/// Fixes the vertices in `spec.fixed` and replaces each connected component
/// of the rest by `multiplicity` disjoint copies, each wired to the fixed
/// set exactly as the original component.
///
/// Index layout: fixed vertices first in ascending original order, then the
/// components ordered by smallest original vertex, each component's copies
/// consecutive with vertices in ascending original order.
pub fn partial_blowup(spec: &BlowupSpec) -> Graph {
    let base = &spec.base;
    let h = spec.multiplicity;
    assert!(base.is_simple());
    assert!(h >= 1);
    assert!(
        spec.fixed.iter().all(|v| v < base.n()),
        "fixed set must be a subset of the base vertices"
    );
    let fixed: Vec<usize> = spec.fixed.iter().collect();
    let fixed_pos = |v: usize| fixed.binary_search(&v).ok();

    let rest: Vec<usize> = (0..base.n()).filter(|&v| !spec.fixed.contains(v)).collect();
    let sub = base.induced(&rest);
    let mut comps: Vec<Vec<usize>> = sub
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| rest[i]).collect())
        .collect();
    comps.sort_by_key(|c| c[0]);

    let total = fixed.len() + h * rest.len();
    let mut g = Graph::new(total);
    for (i, &u) in fixed.iter().enumerate() {
        for (j, &v) in fixed.iter().enumerate().skip(i + 1) {
            if base.has_edge(u, v) {
                g.add_edge(i, j);
            }
        }
    }
    let mut offset = fixed.len();
    for comp in &comps {
        for copy in 0..h {
            let pos = |w: usize| offset + copy * comp.len() + comp.binary_search(&w).unwrap();
            for (ci, &w) in comp.iter().enumerate() {
                for &w2 in &comp[ci + 1..] {
                    if base.has_edge(w, w2) {
                        g.add_edge(pos(w), pos(w2));
                    }
                }
                for u in base.neighbors(w) {
                    if let Some(fp) = fixed_pos(u) {
                        g.add_edge(fp, pos(w));
                    }
                }
            }
        }
        offset += h * comp.len();
    }
    g
}

// ---------------------------------------------------------------------------
// Small named families

/// `k` triangles sharing exactly the hub, which is vertex 0. Triangle `i`
/// uses vertices `2i+1, 2i+2`.
pub fn friendship(k: usize) -> Graph {
    assert!(k >= 1);
    let mut g = Graph::new(2 * k + 1);
    for i in 0..k {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        g.add_edge(0, a);
        g.add_edge(0, b);
        g.add_edge(a, b);
    }
    g
}

/// `s` triangles sharing one edge; the spine is vertices 0 and 1.
pub fn book(s: usize) -> Graph {
    assert!(s >= 1);
    let mut g = Graph::new(s + 2);
    g.add_edge(0, 1);
    for page in 2..s + 2 {
        g.add_edge(0, page);
        g.add_edge(1, page);
    }
    g
}

/// Complete multipartite graph; class `i` occupies a consecutive index
/// block in the given order.
pub fn multipartite(class_sizes: &[usize]) -> Graph {
    assert!(class_sizes.iter().all(|&s| s >= 1));
    let n: usize = class_sizes.iter().sum();
    let mut g = Graph::new(n);
    let mut starts = vec![0usize];
    for &s in class_sizes {
        starts.push(starts.last().unwrap() + s);
    }
    for a in 0..class_sizes.len() {
        for b in a + 1..class_sizes.len() {
            for u in starts[a]..starts[a + 1] {
                for v in starts[b]..starts[b + 1] {
                    g.add_edge(u, v);
                }
            }
        }
    }
    g
}

/// Balanced complete multipartite graph on `n` vertices with `r` classes,
/// larger classes first.
pub fn turan_graph(n: usize, r: usize) -> Graph {
    assert!(r >= 1 && n >= r);
    let sizes: Vec<usize> = (0..r).map(|i| n / r + usize::from(i < n % r)).collect();
    multipartite(&sizes)
}

/// Disjoint copies of `K_t` covering `n` vertices: `floor(n/t)` full cliques
/// plus one clique on the `n mod t` leftover vertices.
pub fn clique_union(n: usize, t: usize) -> Graph {
    assert!(t >= 1 && n >= t);
    let mut g = Graph::new(n);
    let full = n / t;
    for b in 0..full {
        for u in 0..t {
            for v in u + 1..t {
                g.add_edge(b * t + u, b * t + v);
            }
        }
    }
    for u in full * t..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Projective norm graphs

/// Norm graph on `GF(q^{s-1}) x GF(q)^*` with `(A,a) ~ (B,b)` iff
/// `N(A+B) = ab`, where `N` is the norm down to GF(q). Loops (at `(A,a)`
/// with `N(A+A) = a^2`) are recorded in the loop set.
///
/// Index layout: vertex `(A, a)` gets index `rank(A) * (q-1) + rank(a)`,
/// ranking field elements by their integer encoding.
pub fn norm_graph(q: u64, s: u32) -> Result<Graph, ConstructionError> {
    if s < 2 {
        return Err(ConstructionError::BadNormDimension(s));
    }
    let (p, k) = prime_power(q)?;
    let size = q.checked_pow(s).ok_or(ConstructionError::TooLarge(u64::MAX, 30_000))?;
    // Dense adjacency; anything much past this stops being desk scale.
    const LIMIT: u64 = 30_000;
    if size > LIMIT {
        return Err(ConstructionError::TooLarge(size, LIMIT));
    }
    let field = FiniteField::new(p, k * (s as usize - 1))?;
    let field_elems = elements(&field);
    let substar: Vec<_> = subfield_elements(&field, q)
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    let sub_rank: std::collections::HashMap<u64, usize> = substar
        .iter()
        .enumerate()
        .map(|(i, x)| (x.value(), i))
        .collect();
    let units = q - 1;

    // Norm of every field element, by value index.
    let norms: Vec<u64> = field_elems
        .iter()
        .map(|x| norm_map(x, s, q).unwrap().value())
        .collect();
    let inv_vals: Vec<u64> = substar
        .iter()
        .map(|a| a.inverse().unwrap().value())
        .collect();

    let order = field.order();
    let n = (order * units) as usize;
    let mut g = Graph::new(n);
    for av in 0..order {
        for bv in av..order {
            let sum = &field_elems[av as usize] + &field_elems[bv as usize];
            let t = norms[sum.value() as usize];
            if t == 0 {
                continue;
            }
            let t_el = from_value(&field, t);
            for (ai, _a) in substar.iter().enumerate() {
                // b = N(A+B) / a lies in GF(q)^* whenever t does.
                let b = &t_el * &from_value(&field, inv_vals[ai]);
                let bi = sub_rank[&b.value()];
                let i = av as usize * units as usize + ai;
                let j = bv as usize * units as usize + bi;
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => g.add_edge(i, j),
                    std::cmp::Ordering::Equal => g.add_loop(i),
                    // Seen already from the other side of the (A,B) pair.
                    std::cmp::Ordering::Greater => {
                        if av == bv {
                            g.add_edge(j, i);
                        }
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Polarity-style graph over GF(q): vertices are nonzero pairs modulo
/// coordinatewise scaling by the multiplicative subgroup of order `t-1`;
/// `(a,b) ~ (c,d)` iff `ac + bd` lies in the subgroup. Loops recorded
/// separately; the graph is q-regular when each loop counts once.
///
/// Class representatives normalize the first nonzero coordinate to the
/// least element (by integer encoding) of its subgroup coset; vertices are
/// indexed by the representative pairs in lexicographic value order.
pub fn furedi_graph(q: u64, t: u64) -> Result<Graph, ConstructionError> {
    if t < 2 || (q - 1) % (t - 1) != 0 {
        return Err(ConstructionError::Divisibility { q, t });
    }
    const LIMIT: u64 = 100_000;
    if q * q > LIMIT {
        return Err(ConstructionError::TooLarge(q * q, LIMIT));
    }
    let field = FiniteField::of_order(q)?;
    let subgroup = unit_subgroup(&field, t - 1)?;
    let sub_vals: std::collections::HashSet<u64> =
        subgroup.iter().map(|x| x.value()).collect();
    let elems = elements(&field);

    // Enumerate class representatives in (value, value) order.
    let mut reps: Vec<(u64, u64)> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for xv in 0..q {
        for yv in 0..q {
            if xv == 0 && yv == 0 {
                continue;
            }
            let x = &elems[xv as usize];
            let y = &elems[yv as usize];
            let rep = if xv != 0 {
                let lam = subgroup
                    .iter()
                    .min_by_key(|l| (*l * x).value())
                    .unwrap();
                ((lam * x).value(), (lam * y).value())
            } else {
                let lam = subgroup
                    .iter()
                    .min_by_key(|l| (*l * y).value())
                    .unwrap();
                (0, (lam * y).value())
            };
            if rep == (xv, yv) {
                index.insert(rep, reps.len());
                reps.push(rep);
            }
        }
    }
    debug_assert_eq!(reps.len() as u64, (q * q - 1) / (t - 1));

    let n = reps.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        let (a, b) = (&elems[reps[i].0 as usize], &elems[reps[i].1 as usize]);
        for j in i..n {
            let (c, d) = (&elems[reps[j].0 as usize], &elems[reps[j].1 as usize]);
            let form = &(a * c) + &(b * d);
            if sub_vals.contains(&form.value()) {
                if i == j {
                    g.add_loop(i);
                } else {
                    g.add_edge(i, j);
                }
            }
        }
    }
    let _ = index;
    Ok(g)
}

// ---------------------------------------------------------------------------
// Progression-free sets and the tripartite unique-triangle graphs

/// True iff the sorted set has no x < y < z with x + z = 2y.
pub fn is_progression_free(set: &[u64]) -> bool {
    find_progression(set).is_none()
}

fn find_progression(set: &[u64]) -> Option<(u64, u64, u64)> {
    let members: std::collections::HashSet<u64> = set.iter().copied().collect();
    for (i, &x) in set.iter().enumerate() {
        for &z in &set[i + 1..] {
            if (x + z) % 2 == 0 {
                let y = (x + z) / 2;
                if y != x && y != z && members.contains(&y) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// A large subset of `{1..n}` with no 3-term arithmetic progression.
///
/// For n <= 64 this is an exact maximum found by branch and bound; beyond
/// that it falls back to the digit construction (digits below d in base
/// 2d-1, restricted to the densest square-norm shell), scanning small bases
/// up to the asymptotically optimal one and keeping the best shell. The
/// output is checked progression-free on every run.
pub fn behrend_set(n: u64) -> Vec<u64> {
    let set = if n <= 64 {
        exact_progression_free(n)
    } else {
        digit_progression_free(n)
    };
    assert!(is_progression_free(&set));
    set
}

fn exact_progression_free(n: u64) -> Vec<u64> {
    // a[len] = maximum size achievable inside any window of `len` consecutive
    // integers (shift-invariant), grown one length at a time. Each length
    // only has to decide whether a[len-1] + 1 is achievable.
    let n = n as usize;
    let mut a = vec![0usize; n + 1];
    let mut best_witness: Vec<u64> = Vec::new();
    for len in 1..=n {
        let target = a[len - 1] + 1;
        let mut chosen: Vec<u64> = Vec::new();
        if decide(len as u64, target, 1, 0, &a, &mut chosen) {
            a[len] = target;
            best_witness = chosen;
        } else {
            a[len] = a[len - 1];
        }
    }
    best_witness.sort_unstable();
    best_witness
}

/// Depth-first decision search: can `target` elements be chosen from
/// `{i..=len}` given the incumbents? Bit j of the masks stands for value
/// j+1. `forbidden` holds values that would complete a progression with two
/// chosen ones.
fn decide(
    len: u64,
    target: usize,
    i: u64,
    forbidden: u64,
    a: &[usize],
    chosen: &mut Vec<u64>,
) -> bool {
    if chosen.len() >= target {
        return true;
    }
    if i > len {
        return false;
    }
    let remaining = (len - i + 1) as usize;
    let bound = if remaining < len as usize {
        a[remaining]
    } else {
        target
    };
    if chosen.len() + bound < target {
        return false;
    }
    if forbidden & (1 << (i - 1)) == 0 {
        // Take i: each previously chosen x forbids the completion 2i - x.
        let mut new_forbidden = forbidden;
        for &x in chosen.iter() {
            let f = 2 * i - x;
            if f <= len {
                new_forbidden |= 1 << (f - 1);
            }
        }
        chosen.push(i);
        if decide(len, target, i + 1, new_forbidden, a, chosen) {
            return true;
        }
        chosen.pop();
    }
    decide(len, target, i + 1, forbidden, a, chosen)
}

fn digit_progression_free(n: u64) -> Vec<u64> {
    let d_top = ((n as f64).ln().sqrt().exp().ceil() as u64).max(3);
    let mut best: Vec<u64> = Vec::new();
    for d in 2..=d_top {
        let base = 2 * d - 1;
        // Enumerate digit vectors with digits < d and value <= n-1, bucketed
        // by their squared Euclidean norm; no-carry addition plus the norm
        // shell kill every nontrivial progression.
        let mut shells: std::collections::HashMap<u64, Vec<u64>> = std::collections::HashMap::new();
        // Entries fix all digits below `place`; children choose the digit at
        // `place`. Once `place` exceeds n-1 every later digit is forced to 0
        // and the vector is complete.
        let mut stack: Vec<(u64, u64, u64)> = vec![(0, 0, 1)];
        while let Some((value, norm, place)) = stack.pop() {
            if place > n - 1 {
                shells.entry(norm).or_default().push(value + 1);
                continue;
            }
            for digit in 0..d {
                let v = value + digit * place;
                if v > n - 1 {
                    break;
                }
                stack.push((v, norm + digit * digit, place.saturating_mul(base)));
            }
        }
        for bucket in shells.values_mut() {
            bucket.sort_unstable();
        }
        let mut keys: Vec<u64> = shells.keys().copied().collect();
        keys.sort_unstable();
        for r in keys {
            if shells[&r].len() > best.len() && is_progression_free(&shells[&r]) {
                best = shells[&r].clone();
            }
        }
    }
    best
}

/// Tripartite graph with parts X (indices `0..n`), Y (`n..3n`), Z
/// (`3n..6n`): each pair `x in 0..n`, `s in S` contributes the triangle
/// `{x, n + (x+s), 3n + (x+2s)}`. When S is progression-free every edge
/// lies in exactly one triangle.
pub fn ruzsa_szemeredi_graph(n: u64, set: &[u64]) -> Result<Graph, ConstructionError> {
    for &s in set {
        if s == 0 || s > n {
            return Err(ConstructionError::SetMemberRange(s, n));
        }
    }
    if let Some((x, y, z)) = find_progression(set) {
        return Err(ConstructionError::NotProgressionFree(x, y, z));
    }
    let n = n as usize;
    let mut g = Graph::new(6 * n);
    for x in 0..n {
        for &s in set {
            let s = s as usize;
            let y = n + x + s;
            let z = 3 * n + x + 2 * s;
            g.add_edge(x, y);
            g.add_edge(x, z);
            g.add_edge(y, z);
        }
    }
    debug_assert_eq!(g.edge_count(), 3 * n * set.len());
    Ok(g)
}

// ---------------------------------------------------------------------------
// Random triangle union without short cycles

#[derive(Debug, Clone, Copy)]
pub struct RandomGirthParams {
    pub n: usize,
    /// Largest excluded cycle length; the output has no cycle of length in
    /// `[4, k]`.
    pub k: usize,
    pub seed: u64,
}

impl RandomGirthParams {
    /// The triangle pick probability `p = n^{-(2k-3)/(k-1)} / 2`.
    pub fn pick_probability(&self) -> f64 {
        0.5 * (self.n as f64).powf(-((2 * self.k - 3) as f64) / (self.k - 1) as f64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GirthRunStats {
    pub p: f64,
    pub expected_triples: f64,
    /// Triangles sampled before any cleanup.
    pub sampled: u64,
    /// Triangles deleted per offending cycle length.
    pub deleted_by_length: Vec<(usize, u64)>,
    pub deleted_total: u64,
    pub surviving: u64,
}

/// Samples triangles independently (Poisson-approximated count, then that
/// many distinct uniform triples), then removes one triangle per short
/// cycle whose edges come from pairwise different triangles, in discovery
/// order: lengths ascending, cycles lexicographic, deleting the triangle
/// owning the last edge. The survivors' union has no cycle of length in
/// `[4, k]`; that is re-checked exactly before returning.
pub fn random_girth_graph(
    params: &RandomGirthParams,
) -> Result<(Graph, GirthRunStats), ConstructionError> {
    let RandomGirthParams { n, k, seed } = *params;
    if k < 4 {
        return Err(ConstructionError::BadGirthBound(k));
    }
    let p = params.pick_probability();
    let total_triples = n as f64 * (n - 1) as f64 * (n - 2) as f64 / 6.0;
    let lambda = total_triples * p;
    if lambda < 1.0 {
        return Err(ConstructionError::TooSparse(lambda));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poisson = rand_distr::Poisson::new(lambda).expect("lambda checked positive");
    let count = (poisson.sample(&mut rng) as u64).min(total_triples as u64);

    let mut set = std::collections::HashSet::new();
    while (set.len() as u64) < count {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let c = rng.gen_range(0..n);
        if a == b || a == c || b == c {
            continue;
        }
        let mut t = [a, b, c];
        t.sort_unstable();
        set.insert(t);
    }
    let mut tris: Vec<[usize; 3]> = set.into_iter().collect();
    tris.sort_unstable();
    let sampled = tris.len() as u64;

    let mut alive = vec![true; tris.len()];
    let mut deleted_by_length: Vec<(usize, u64)> = Vec::new();

    // Length 2: pairs of triangles sharing two vertices. One pass suffices
    // since deletions cannot create new overlaps.
    let mut deleted2 = 0u64;
    for i in 0..tris.len() {
        if !alive[i] {
            continue;
        }
        for j in i + 1..tris.len() {
            if !alive[j] {
                continue;
            }
            let shared = tris[i].iter().filter(|v| tris[j].contains(v)).count();
            if shared >= 2 {
                alive[j] = false;
                deleted2 += 1;
            }
        }
    }
    deleted_by_length.push((2, deleted2));

    // Lengths 3..=k: cycles whose edges carry pairwise distinct triangle
    // ids. After the length-2 pass each edge belongs to exactly one
    // surviving triangle.
    for len in 3..=k {
        let mut deleted = 0u64;
        while let Some(tri_to_drop) = find_mixed_cycle(n, &tris, &alive, len) {
            alive[tri_to_drop] = false;
            deleted += 1;
        }
        deleted_by_length.push((len, deleted));
    }

    let mut g = Graph::new(n);
    for (i, t) in tris.iter().enumerate() {
        if alive[i] {
            g.add_edge(t[0], t[1]);
            g.add_edge(t[0], t[2]);
            g.add_edge(t[1], t[2]);
        }
    }
    assert!(
        !g.has_cycle_length_in(4, k),
        "short-cycle cleanup must leave no cycle of length 4..=k"
    );
    let deleted_total: u64 = deleted_by_length.iter().map(|&(_, c)| c).sum();
    let stats = GirthRunStats {
        p,
        expected_triples: lambda,
        sampled,
        deleted_by_length,
        deleted_total,
        surviving: sampled - deleted_total,
    };
    Ok((g, stats))
}

/// First cycle of exactly `len` vertices, in lexicographic order (smallest
/// start vertex, then ascending neighbors), whose edges belong to `len`
/// pairwise distinct surviving triangles. Returns the triangle owning the
/// cycle's last edge.
fn find_mixed_cycle(n: usize, tris: &[[usize; 3]], alive: &[bool], len: usize) -> Option<usize> {
    // Edge -> owning triangle (unique after the length-2 cleanup).
    let mut owner: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, t) in tris.iter().enumerate() {
        if !alive[i] {
            continue;
        }
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            owner.insert((a, b), i);
            owner.insert((b, a), i);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for row in adj.iter_mut() {
        row.sort_unstable();
        row.dedup();
    }
    let mut path = Vec::with_capacity(len);
    let mut tri_used = Vec::with_capacity(len);
    for start in 0..n {
        path.push(start);
        if let Some(t) = mixed_cycle_dfs(start, start, len, &adj, &owner, &mut path, &mut tri_used)
        {
            return Some(t);
        }
        path.pop();
    }
    None
}

fn mixed_cycle_dfs(
    start: usize,
    at: usize,
    len: usize,
    adj: &[Vec<usize>],
    owner: &std::collections::HashMap<(usize, usize), usize>,
    path: &mut Vec<usize>,
    tri_used: &mut Vec<usize>,
) -> Option<usize> {
    if path.len() == len {
        if at > start && adj[at].binary_search(&start).is_ok() {
            let t = owner[&(at, start)];
            if !tri_used.contains(&t) {
                return Some(t);
            }
        }
        return None;
    }
    for &v in &adj[at] {
        if v <= start || path.contains(&v) {
            continue;
        }
        let t = owner[&(at, v)];
        if tri_used.contains(&t) {
            continue;
        }
        path.push(v);
        tri_used.push(t);
        if let Some(found) = mixed_cycle_dfs(start, v, len, adj, owner, path, tri_used) {
            return Some(found);
        }
        tri_used.pop();
        path.pop();
    }
    None
}

// ---------------------------------------------------------------------------
// Hypergraphs

/// Uniform hypergraph; edges are sorted vertex lists.
#[derive(Debug, Clone, Serialize)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// No two edges share two vertices, and no Berge cycle of length 2, 3,
    /// or 4.
    pub fn girth_at_least_5(&self) -> bool {
        let e = &self.edges;
        let share: Vec<Vec<Option<usize>>> = (0..e.len())
            .map(|i| {
                (0..e.len())
                    .map(|j| {
                        let common: Vec<usize> = e[i]
                            .iter()
                            .copied()
                            .filter(|v| e[j].contains(v))
                            .collect();
                        match common.len() {
                            1 => Some(common[0]),
                            _ => None,
                        }
                    })
                    .collect()
            })
            .collect();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let common = e[i].iter().filter(|v| e[j].contains(v)).count();
                if common >= 2 {
                    return false;
                }
            }
        }
        // Berge triangle.
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let Some(x) = share[i][j] else { continue };
                for l in j + 1..e.len() {
                    if let (Some(y), Some(z)) = (share[j][l], share[l][i]) {
                        if x != y && y != z && x != z {
                            return false;
                        }
                    }
                }
            }
        }
        // Berge four-cycle.
        for i in 0..e.len() {
            for j in 0..e.len() {
                if i == j {
                    continue;
                }
                let Some(a) = share[i][j] else { continue };
                for l in 0..e.len() {
                    if l == i || l == j {
                        continue;
                    }
                    let Some(b) = share[j][l] else { continue };
                    for m in 0..e.len() {
                        if m == i || m == j || m == l {
                            continue;
                        }
                        let (Some(c), Some(d)) = (share[l][m], share[m][i]) else {
                            continue;
                        };
                        let mut vs = vec![a, b, c, d];
                        vs.sort_unstable();
                        vs.dedup();
                        if vs.len() == 4 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Random greedy m-uniform hypergraph with girth at least 5: candidate
/// m-sets are tried in a seeded random order and kept unless they would
/// create two edges sharing two vertices or a Berge cycle of length 3
/// or 4.
pub fn greedy_girth5_hypergraph(n: usize, m: usize, seed: u64) -> Hypergraph {
    assert!(n >= m && m >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const CAP: usize = 300_000;
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let total = binomial(n as u64, m as u64);
    if total <= CAP as u64 {
        let mut cur: Vec<usize> = (0..m).collect();
        loop {
            candidates.push(cur.clone());
            // next combination
            let mut i = m;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if cur[i] != i + n - m {
                    cur[i] += 1;
                    for j in i + 1..m {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    cur.clear();
                    break;
                }
            }
            if cur.is_empty() {
                break;
            }
        }
        candidates.shuffle(&mut rng);
    } else {
        for _ in 0..CAP {
            let mut set = std::collections::BTreeSet::new();
            while set.len() < m {
                set.insert(rng.gen_range(0..n));
            }
            candidates.push(set.into_iter().collect());
        }
    }

    let mut accepted: Vec<Vec<usize>> = Vec::new();
    // shared[i][j] = the single common vertex of accepted edges i and j.
    let mut shared: Vec<Vec<Option<usize>>> = Vec::new();
    'cand: for cand in candidates {
        let mut attach: Vec<(usize, usize)> = Vec::new(); // (edge idx, shared vertex)
        for (fi, f) in accepted.iter().enumerate() {
            let common: Vec<usize> = cand.iter().copied().filter(|v| f.contains(v)).collect();
            match common.len() {
                0 => {}
                1 => attach.push((fi, common[0])),
                _ => continue 'cand,
            }
        }
        // Berge 3: two attachments joined directly by an edge-edge overlap.
        for (ai, &(f, x)) in attach.iter().enumerate() {
            for &(gi, z) in &attach[ai + 1..] {
                if x == z {
                    continue;
                }
                if let Some(y) = shared[f][gi] {
                    if y != x && y != z {
                        continue 'cand;
                    }
                }
            }
        }
        // Berge 4: two attachments joined through a third accepted edge.
        for (ai, &(f, x)) in attach.iter().enumerate() {
            for &(gi, z) in &attach[ai + 1..] {
                if x == z {
                    continue;
                }
                for h in 0..accepted.len() {
                    if h == f || h == gi {
                        continue;
                    }
                    let (Some(y1), Some(y2)) = (shared[f][h], shared[h][gi]) else {
                        continue;
                    };
                    let mut vs = vec![x, y1, y2, z];
                    vs.sort_unstable();
                    vs.dedup();
                    if vs.len() == 4 {
                        continue 'cand;
                    }
                }
            }
        }
        // Accept.
        let idx = accepted.len();
        shared.push(vec![None; idx]);
        for (fi, f) in accepted.iter().enumerate() {
            let common: Vec<usize> = cand.iter().copied().filter(|v| f.contains(v)).collect();
            let val = common.first().copied();
            shared[idx][fi] = val;
            shared[fi].push(val);
        }
        shared[idx].push(None); // self entry, unused
        accepted.push(cand);
    }
    Hypergraph { n, edges: accepted }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Replaces each hyperedge by a clique on its vertices.
pub fn hyper_to_graph(h: &Hypergraph) -> Graph {
    let mut g = Graph::new(h.n);
    for e in &h.edges {
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Incidence gadgets

/// Bipartite vertex-edge incidence graph: original vertices keep their
/// indices, edge `i` (in lexicographic edge order) becomes vertex `n + i`.
pub fn incidence_graph(g: &Graph) -> Graph {
    assert!(g.is_simple());
    let n = g.n();
    let edges = g.edges();
    let mut t = Graph::new(n + edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        t.add_edge(u, n + i);
        t.add_edge(v, n + i);
    }
    t
}

/// Adds a clique of d+2 new vertices (d = current minimum degree), joining
/// the first new vertex (index `n`) to every original vertex. Raises the
/// minimum degree by one and preserves Hamilton-path existence in both
/// directions.
pub fn min_degree_amplifier(g: &Graph) -> Result<Graph, ConstructionError> {
    assert!(g.is_simple());
    let d = g.min_degree();
    if d < 1 {
        return Err(ConstructionError::MinDegree(d, 1));
    }
    let n = g.n();
    let extra = d + 2;
    let mut out = Graph::new(n + extra);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for i in 0..extra {
        for j in i + 1..extra {
            out.add_edge(n + i, n + j);
        }
    }
    for v in 0..n {
        out.add_edge(n, v);
    }
    Ok(out)
}
