//! Closed-form bound evaluators, the blow-up containment dichotomy, the
//! multipartite optimizer, neighborhood symmetrization, and the linear- vs
//! superlinear-triangle-growth classifier.
//!
//! Asymptotic bound values carry an explicit flag: they are leading terms
//! only and are never asserted against finite data as inequalities.

use crate::counting::{count_copies, triangles};
use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("parameters out of domain: {0}")]
    Domain(String),
    #[error("pattern not supported: {0}")]
    UnsupportedPattern(String),
    #[error("input graph contains the forbidden clique")]
    NotCliqueFree,
    #[error("symmetrization did not converge within {0} steps")]
    NoConvergence(usize),
}

/// Evaluated bound: exact integer or asymptotic leading term. `vacuous`
/// marks degenerate parameter corners where the formula collapses to 0.
#[derive(Debug, Clone, Serialize)]
pub struct BoundValue {
    pub formula: &'static str,
    pub value: f64,
    pub exact: bool,
    pub vacuous: bool,
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial_u(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of K_t subgraphs in the balanced complete (k-1)-partite graph on
/// n vertices: the exact maximum clique count among K_k-free graphs. The
/// elementary symmetric polynomial of the class sizes.
pub fn turan_clique_count(n: u64, t: u64, k: u64) -> Result<u64, BoundsError> {
    if !(2 <= t && t < k) {
        return Err(BoundsError::Domain(format!(
            "need 2 <= t < k, got t={t}, k={k}"
        )));
    }
    // For k - 1 > n some classes are empty and the graph is complete.
    let r = k - 1;
    let sizes: Vec<u64> = (0..r).map(|i| n / r + u64::from(i < n % r)).collect();
    // Coefficient of x^t in prod (1 + n_i x).
    let mut poly = vec![0u128; t as usize + 1];
    poly[0] = 1;
    for &s in &sizes {
        for j in (1..poly.len()).rev() {
            poly[j] += poly[j - 1] * s as u128;
        }
    }
    Ok(poly[t as usize] as u64)
}

/// Whether some blow-up of `t` contains `h`; equivalently, whether a graph
/// homomorphism from `h` to `t` exists. Decides between polynomial growth
/// of order |V(t)| and strictly smaller growth.
pub fn blowup_contains(t: &Graph, h: &Graph) -> bool {
    assert!(t.is_simple() && h.is_simple());
    assert!(
        !t.has_isolated_vertex() && !h.has_isolated_vertex(),
        "isolated vertices are excluded"
    );
    if t.n() == 0 || h.n() == 0 {
        return h.n() == 0;
    }
    let order: Vec<usize> = bfs_order(h);
    let mut image = vec![usize::MAX; h.n()];
    hom_dfs(h, t, &order, 0, &mut image)
}

fn bfs_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut seen = vec![false; h.n()];
    for root in 0..h.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in h.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

fn hom_dfs(h: &Graph, t: &Graph, order: &[usize], pos: usize, image: &mut Vec<usize>) -> bool {
    if pos == order.len() {
        return true;
    }
    let w = order[pos];
    'cand: for x in 0..t.n() {
        for u in h.neighbors(w) {
            if image[u] != usize::MAX && !t.has_edge(image[u], x) {
                continue 'cand;
            }
        }
        image[w] = x;
        if hom_dfs(h, t, order, pos + 1, image) {
            return true;
        }
        image[w] = usize::MAX;
    }
    false
}

/// Edge count bound for hosts with no K_{s,t}:
/// `(1/2) (t-1)^{1/s} n^{2-1/s}`, leading term.
pub fn kst_edge_bound(n: u64, s: u64, t: u64) -> Result<BoundValue, BoundsError> {
    if !(1 <= s && s <= t) {
        return Err(BoundsError::Domain(format!("need 1 <= s <= t, got s={s}, t={t}")));
    }
    let nf = n as f64;
    Ok(BoundValue {
        formula: "kst-edge",
        value: 0.5 * ((t - 1) as f64).powf(1.0 / s as f64) * nf.powf(2.0 - 1.0 / s as f64),
        exact: false,
        vacuous: t == 1,
    })
}

/// Clique count bound for hosts with no K_{s,t}, valid for s >= m-1:
/// `(1/m!) (t-1)^{m(m-1)/(2s)} n^{m - m(m-1)/(2s)}`, leading term.
pub fn kst_clique_bound(n: u64, m: u64, s: u64, t: u64) -> Result<BoundValue, BoundsError> {
    if !(m >= 2 && s + 1 >= m && s <= t) {
        return Err(BoundsError::Domain(format!(
            "need m >= 2 and t >= s >= m-1, got m={m}, s={s}, t={t}"
        )));
    }
    let nf = n as f64;
    let ex = (m * (m - 1)) as f64 / (2 * s) as f64;
    Ok(BoundValue {
        formula: "kst-clique",
        value: ((t - 1) as f64).powf(ex) * nf.powf(m as f64 - ex) / factorial(m),
        exact: false,
        vacuous: t == 1,
    })
}

/// Clique count bound without the s >= m-1 restriction, valid whenever
/// t + s > m: `((m-s)! (t-1)^{(s-1)/2} / m!) C(t-1, m-s) n^{(s+1)/2}`.
pub fn kst_clique_bound_small_s(n: u64, m: u64, s: u64, t: u64) -> Result<BoundValue, BoundsError> {
    if !(1 <= s && s <= t && s <= m && t + s > m) {
        return Err(BoundsError::Domain(format!(
            "need 1 <= s <= min(m, t) and t + s > m, got m={m}, s={s}, t={t}"
        )));
    }
    let choose = binomial_u(t - 1, m - s);
    let nf = n as f64;
    let value = factorial(m - s) * ((t - 1) as f64).powf((s - 1) as f64 / 2.0) / factorial(m)
        * choose as f64
        * nf.powf((s + 1) as f64 / 2.0);
    Ok(BoundValue {
        formula: "kst-clique-small-s",
        value,
        exact: false,
        vacuous: choose == 0,
    })
}

/// Biclique count bound for hosts with no K_{s,t}:
/// `(1/(a! (b!)^{1-a/s})) C(t-1, b)^{a/s} n^{a+b-ab/s}`, halved when a = b.
/// A degenerate binomial (b > t-1) flags the bound vacuous instead of
/// erroring.
pub fn kst_biclique_bound(n: u64, a: u64, b: u64, s: u64, t: u64) -> Result<BoundValue, BoundsError> {
    if !(1 <= a && a <= s && s <= t && a <= b) {
        return Err(BoundsError::Domain(format!(
            "need 1 <= a <= s <= t and a <= b, got a={a}, b={b}, s={s}, t={t}"
        )));
    }
    let choose = binomial_u(t - 1, b);
    let ratio = a as f64 / s as f64;
    let nf = n as f64;
    let mut value = (choose as f64).powf(ratio) * nf.powf((a + b) as f64 - a as f64 * b as f64 / s as f64)
        / (factorial(a) * factorial(b).powf(1.0 - ratio));
    if a == b {
        value /= 2.0;
    }
    Ok(BoundValue {
        formula: "kst-biclique",
        value,
        exact: false,
        vacuous: choose == 0,
    })
}

/// Pattern for the multipartite optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultipartitePattern {
    Clique(u64),
    Biclique(u64, u64),
}

impl MultipartitePattern {
    pub fn graph(&self) -> Graph {
        match *self {
            MultipartitePattern::Clique(m) => Graph::complete(m as usize),
            MultipartitePattern::Biclique(a, b) => Graph::complete_bipartite(a as usize, b as usize),
        }
    }
}

/// Exact copy count of the pattern in the complete multipartite graph with
/// the given class sizes, by closed form.
pub fn multipartite_pattern_count(sizes: &[u64], pattern: &MultipartitePattern) -> u64 {
    match *pattern {
        MultipartitePattern::Clique(m) => {
            let mut poly = vec![0u128; m as usize + 1];
            poly[0] = 1;
            for &s in sizes {
                for j in (1..poly.len()).rev() {
                    poly[j] += poly[j - 1] * s as u128;
                }
            }
            poly[m as usize] as u64
        }
        MultipartitePattern::Biclique(a, b) => {
            // Ordered pairs (A, B): A spread over some classes, B drawn from
            // the untouched remainder. Each unordered copy appears once for
            // a != b and twice for a = b.
            let n: u64 = sizes.iter().sum();
            let mut total: u128 = 0;
            // DFS over per-class contributions to the a-side.
            fn rec(
                sizes: &[u64],
                idx: usize,
                left: u64,
                used_size: u64,
                ways: u128,
                n: u64,
                b: u64,
                total: &mut u128,
            ) {
                if left == 0 {
                    *total += ways * binomial_u(n - used_size, b) as u128;
                    return;
                }
                if idx == sizes.len() {
                    return;
                }
                for take in 0..=left.min(sizes[idx]) {
                    let w = if take == 0 {
                        ways
                    } else {
                        ways * binomial_u(sizes[idx], take) as u128
                    };
                    let us = if take == 0 { used_size } else { used_size + sizes[idx] };
                    rec(sizes, idx + 1, left - take, us, w, n, b, total);
                }
            }
            rec(sizes, 0, a, 0, 1, n, b, &mut total);
            if a == b {
                debug_assert_eq!(total % 2, 0);
                total /= 2;
            }
            total as u64
        }
    }
}

/// Best partition of n into at most `max_classes` parts maximizing the
/// pattern count in the complete multipartite graph, with the exact count.
/// Counting goes through the constructed graph for n <= 60 and through the
/// closed form beyond that.
pub fn multipartite_maximize(
    n: u64,
    max_classes: u64,
    pattern: &MultipartitePattern,
) -> Result<(Vec<u64>, u64), BoundsError> {
    if n == 0 || max_classes == 0 {
        return Err(BoundsError::Domain("need n >= 1 and at least one class".into()));
    }
    if n > 200 {
        return Err(BoundsError::Domain(format!("partition search capped at n = 200, got {n}")));
    }
    let pattern_graph = pattern.graph();
    let mut best: Option<(Vec<u64>, u64)> = None;
    let mut parts: Vec<u64> = Vec::new();
    // Non-increasing partitions, lexicographically descending.
    fn rec(
        remaining: u64,
        max_part: u64,
        slots: u64,
        parts: &mut Vec<u64>,
        eval: &mut dyn FnMut(&[u64]),
    ) {
        if remaining == 0 {
            eval(parts);
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = remaining.min(max_part);
        // Smallest feasible part still allows the rest to fit.
        for part in (1..=hi).rev() {
            if part * slots < remaining {
                break;
            }
            parts.push(part);
            rec(remaining - part, part, slots - 1, parts, eval);
            parts.pop();
        }
    }
    let use_graph = n <= 60;
    rec(n, n, max_classes, &mut parts, &mut |sizes: &[u64]| {
        let count = if use_graph {
            let usizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
            count_copies(&crate::constructions::multipartite(&usizes), &pattern_graph)
        } else {
            multipartite_pattern_count(sizes, pattern)
        };
        match &best {
            Some((_, c)) if *c >= count => {}
            _ => best = Some((sizes.to_vec(), count)),
        }
    });
    best.ok_or_else(|| BoundsError::Domain("no partition found".into()))
}

/// All nonadjacent pairs with differing neighborhoods, lexicographic.
fn differing_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) && g.row(u) != g.row(v) {
                out.push((u, v));
            }
        }
    }
    out
}

fn overwrite_neighborhood(g: &Graph, target: usize, source: usize) -> Graph {
    let mut out = g.clone();
    let nbrs: Vec<usize> = g.neighbors(target).collect();
    for w in nbrs {
        out.remove_edge(target, w);
    }
    for w in g.neighbors(source) {
        out.add_edge(target, w);
    }
    out
}

/// Perturbed copy weight: exact pair (copy count, seeded per-copy hash sum).
/// Strictly ordered comparisons emulate generic tie-free weights.
fn perturbed_weight(g: &Graph, pattern: &Graph, aut: u64) -> (u64, u128) {
    let mut hom_hash: u128 = 0;
    let mut homs: u64 = 0;
    let po_edges: Vec<(usize, usize)> = pattern.edges();
    crate::counting::for_each_embedding(g, pattern, &mut |image: &[usize]| {
        homs += 1;
        // Canonical per-copy token: the sorted image edge set.
        let mut edges: Vec<(usize, usize)> = po_edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (image[a], image[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
        for (x, y) in edges {
            h = h
                .wrapping_mul(0xbf58_476d_1ce4_e5b9)
                .wrapping_add((x as u64) << 32 | y as u64);
            h ^= h >> 29;
        }
        hom_hash += (h & 0xffff_ffff) as u128;
        false
    });
    debug_assert_eq!(homs % aut, 0);
    debug_assert_eq!(hom_hash % aut as u128, 0);
    (homs / aut, hom_hash / aut as u128)
}

fn distinct_neighborhood_classes(g: &Graph) -> usize {
    let mut rows: Vec<&[u64]> = (0..g.n()).map(|v| g.row(v)).collect();
    rows.sort();
    rows.dedup();
    rows.len()
}

/// Strictly increasing step potential: copy count first, then fewer
/// neighborhood classes, then the seeded hash sum as the final tie
/// discriminator.
fn step_potential(g: &Graph, pattern: &Graph, aut: u64) -> (u64, i64, u128) {
    let (count, hash) = perturbed_weight(g, pattern, aut);
    (count, -(distinct_neighborhood_classes(g) as i64), hash)
}

/// Repeated neighborhood overwriting: while some nonadjacent pair has
/// differing neighborhoods, replace one side's neighborhood by the other's,
/// never decreasing the pattern-copy count. Each accepted step strictly
/// increases a bounded potential, forcing convergence to a complete
/// multipartite graph that is still K_t-free and carries at least as many
/// pattern copies as the input.
pub fn zykov_symmetrize(g: &Graph, t: u64, pattern: &Graph) -> Result<Graph, BoundsError> {
    assert!(g.is_simple() && pattern.is_simple());
    let clique = Graph::complete(t as usize);
    if crate::counting::contains_copy(g, &clique) {
        return Err(BoundsError::NotCliqueFree);
    }
    if !is_complete_multipartite(pattern) {
        return Err(BoundsError::UnsupportedPattern(
            "pattern must be complete multipartite".into(),
        ));
    }
    let aut = crate::canon::automorphism_count(pattern);
    let initial_count = count_copies(g, pattern);
    let cap = 50 * g.n() * g.n() + 100;
    let mut current = g.clone();
    let mut potential = step_potential(&current, pattern, aut);
    for _ in 0..cap {
        let pairs = differing_pairs(&current);
        if pairs.is_empty() {
            // Fixpoint: twins everywhere, hence complete multipartite.
            debug_assert!(is_complete_multipartite(&current));
            debug_assert!(!crate::counting::contains_copy(&current, &clique));
            let final_count = count_copies(&current, pattern);
            assert!(final_count >= initial_count);
            return Ok(current);
        }
        let mut advanced = false;
        for (u, v) in pairs {
            let g1 = overwrite_neighborhood(&current, u, v);
            let g2 = overwrite_neighborhood(&current, v, u);
            let p1 = step_potential(&g1, pattern, aut);
            let p2 = step_potential(&g2, pattern, aut);
            let (cand, pc) = if p1 >= p2 { (g1, p1) } else { (g2, p2) };
            if pc > potential {
                current = cand;
                potential = pc;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Err(BoundsError::NoConvergence(cap));
        }
    }
    Err(BoundsError::NoConvergence(cap))
}

pub fn is_complete_multipartite(g: &Graph) -> bool {
    // Nonadjacency must be transitive: components of the complement are the
    // classes, and all cross pairs must be edges.
    let n = g.n();
    let mut class = vec![usize::MAX; n];
    let mut nclasses = 0;
    for v in 0..n {
        if class[v] != usize::MAX {
            continue;
        }
        let cls = nclasses;
        nclasses += 1;
        let mut stack = vec![v];
        class[v] = cls;
        while let Some(u) = stack.pop() {
            for w in 0..n {
                if w != u && !g.has_edge(u, w) && class[w] == usize::MAX {
                    class[w] = cls;
                    stack.push(w);
                }
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if (class[u] == class[v]) == g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// Growth classification for the maximum triangle count of hosts avoiding
/// `h`: linear with an explicit coefficient iff `h` has no cycle longer
/// than a triangle and no two vertex-disjoint triangles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TriangleGrowth {
    Linear { coefficient: u64 },
    Superlinear,
}

pub fn triangle_growth(h: &Graph) -> TriangleGrowth {
    assert!(h.is_simple());
    assert!(!h.has_isolated_vertex());
    let n = h.n();
    if n >= 4 && h.has_cycle_length_in(4, n) {
        return TriangleGrowth::Superlinear;
    }
    let tris = triangles(h);
    for (i, a) in tris.iter().enumerate() {
        for b in &tris[i + 1..] {
            if a.iter().all(|v| !b.contains(v)) {
                return TriangleGrowth::Superlinear;
            }
        }
    }
    TriangleGrowth::Linear {
        coefficient: 10 * (n as u64) * (n as u64),
    }
}

/// Exact chromatic number by exhaustive coloring; a small independent
/// cross-check for the blow-up dichotomy.
pub fn chromatic_number(g: &Graph) -> usize {
    assert!(g.is_simple());
    if g.n() == 0 {
        return 0;
    }
    (1..=g.n())
        .find(|&k| colorable(g, k, 0, &mut vec![usize::MAX; g.n()]))
        .unwrap()
}

fn colorable(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
    if v == g.n() {
        return true;
    }
    // New colors beyond the first unused one are symmetric.
    let used = colors[..v].iter().copied().max().map_or(0, |m| m + 1);
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).all(|u| colors[u] != c) {
            colors[v] = c;
            if colorable(g, k, v + 1, colors) {
                colors[v] = usize::MAX;
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{friendship, multipartite, turan_graph};

    #[test]
    fn turan_counts() {
        assert_eq!(turan_clique_count(5, 2, 3).unwrap(), 6);
        assert_eq!(turan_clique_count(7, 2, 3).unwrap(), 12);
        assert_eq!(turan_clique_count(6, 3, 4).unwrap(), 8);
        assert!(turan_clique_count(6, 4, 4).is_err());
        assert_eq!(turan_clique_count(4, 2, 5).unwrap(), 6); // complete graph regime
        // Exact agreement with direct counting on a grid.
        for n in 4..=10u64 {
            for k in 3..=5u64 {
                for t in 2..k {
                    if k > n {
                        continue;
                    }
                    let direct = count_copies(
                        &turan_graph(n as usize, (k - 1) as usize),
                        &Graph::complete(t as usize),
                    );
                    assert_eq!(turan_clique_count(n, t, k).unwrap(), direct, "n={n} t={t} k={k}");
                }
            }
        }
    }

    #[test]
    fn mantel_closed_form() {
        for n in 3..=40u64 {
            assert_eq!(turan_clique_count(n, 2, 3).unwrap(), n * n / 4);
        }
    }

    #[test]
    fn blowup_dichotomy() {
        assert!(!blowup_contains(&Graph::complete(3), &Graph::complete(4)));
        assert!(blowup_contains(&Graph::complete(3), &Graph::cycle(5)));
        assert!(!blowup_contains(&Graph::cycle(4), &Graph::complete(3)));
        assert!(blowup_contains(&Graph::complete(2), &Graph::complete_bipartite(3, 4)));
    }

    #[test]
    fn blowup_contains_matches_chromatic_number() {
        // Against K_t the dichotomy is exactly chi(h) <= t.
        let hs = [
            Graph::cycle(5),
            Graph::cycle(6),
            Graph::complete(4),
            Graph::petersen(),
            friendship(2),
            Graph::complete_bipartite(2, 3),
        ];
        for h in &hs {
            let chi = chromatic_number(h);
            for t in 2..=5 {
                assert_eq!(
                    blowup_contains(&Graph::complete(t), h),
                    chi <= t,
                    "chi={chi}, t={t}"
                );
            }
        }
    }

    #[test]
    fn bound_fixtures() {
        let b = kst_clique_bound(100, 3, 2, 2).unwrap();
        assert!((b.value - 1000.0 / 6.0).abs() < 1e-9);
        assert!(!b.exact);
        let b = kst_edge_bound(100, 2, 2).unwrap();
        assert!((b.value - 500.0).abs() < 1e-9);
        // Base case of the small-s route: (1/m) C(t-1, m-1) n.
        let b = kst_clique_bound_small_s(50, 3, 1, 5).unwrap();
        assert!((b.value - (1.0 / 3.0) * 6.0 * 50.0).abs() < 1e-9);
        let b = kst_biclique_bound(100, 2, 2, 2, 2).unwrap();
        assert!(b.vacuous);
        assert_eq!(b.value, 0.0);
        // Equal sides halve the count: (1/2) * (1/2!) C(4,2) n^2.
        let b = kst_biclique_bound(100, 2, 2, 2, 5).unwrap();
        assert!(!b.vacuous);
        assert!((b.value - 1.5 * 100.0 * 100.0).abs() < 1e-6);
    }

    #[test]
    fn exponent_comparison() {
        // (s+1)/2 >= m - m(m-1)/(2s), equality exactly at s = m-1 and s = m.
        for m in 1..=10u64 {
            for s in 1..=10u64 {
                let lhs = (s + 1) as f64 / 2.0;
                let rhs = m as f64 - (m * (m - 1)) as f64 / (2 * s) as f64;
                assert!(lhs >= rhs - 1e-12, "m={m} s={s}");
                let eq = (lhs - rhs).abs() < 1e-12;
                assert_eq!(eq, s == m || s + 1 == m, "m={m} s={s}");
            }
        }
    }

    #[test]
    fn multipartite_optimizer_fixtures() {
        let (sizes, count) =
            multipartite_maximize(6, 2, &MultipartitePattern::Biclique(1, 2)).unwrap();
        assert_eq!((sizes, count), (vec![3, 3], 18));
        let (sizes, count) = multipartite_maximize(6, 3, &MultipartitePattern::Clique(3)).unwrap();
        assert_eq!((sizes, count), (vec![2, 2, 2], 8));
        let (sizes, count) = multipartite_maximize(5, 3, &MultipartitePattern::Clique(3)).unwrap();
        assert_eq!((sizes, count), (vec![2, 2, 1], 4));
    }

    #[test]
    fn closed_form_matches_direct_counting() {
        let patterns = [
            MultipartitePattern::Clique(3),
            MultipartitePattern::Biclique(1, 2),
            MultipartitePattern::Biclique(2, 2),
            MultipartitePattern::Biclique(2, 3),
        ];
        let size_sets: Vec<Vec<u64>> = vec![vec![3, 2], vec![4, 3, 2], vec![1, 1, 5], vec![2, 2, 2, 2]];
        for p in &patterns {
            for sizes in &size_sets {
                let usizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
                let g = multipartite(&usizes);
                assert_eq!(
                    multipartite_pattern_count(sizes, p),
                    count_copies(&g, &p.graph()),
                    "sizes={sizes:?} pattern={p:?}"
                );
            }
        }
    }

    #[test]
    fn symmetrize_c5_reaches_k23() {
        let out = zykov_symmetrize(&Graph::cycle(5), 3, &Graph::complete(2)).unwrap();
        assert!(crate::canon::is_isomorphic(&out, &Graph::complete_bipartite(2, 3)));
        assert_eq!(out.edge_count(), 6);
    }

    #[test]
    fn symmetrize_fixpoint_and_matching() {
        let fixed = multipartite(&[2, 2, 1]);
        let out = zykov_symmetrize(&fixed, 4, &Graph::complete(2)).unwrap();
        assert_eq!(out, fixed);

        let out = zykov_symmetrize(&Graph::matching(3), 3, &Graph::complete(2)).unwrap();
        assert!(is_complete_multipartite(&out));
        assert!(!crate::counting::contains_copy(&out, &Graph::complete(3)));
        assert!(out.edge_count() >= 3);
    }

    #[test]
    fn symmetrize_rejects_bad_inputs() {
        assert!(matches!(
            zykov_symmetrize(&Graph::complete(4), 3, &Graph::complete(2)),
            Err(BoundsError::NotCliqueFree)
        ));
        assert!(matches!(
            zykov_symmetrize(&Graph::cycle(5), 3, &Graph::path(4)),
            Err(BoundsError::UnsupportedPattern(_))
        ));
    }

    #[test]
    fn growth_classification() {
        assert_eq!(
            triangle_growth(&friendship(2)),
            TriangleGrowth::Linear { coefficient: 250 }
        );
        assert_eq!(triangle_growth(&Graph::complete(4)), TriangleGrowth::Superlinear);
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(triangle_growth(&two_k3), TriangleGrowth::Superlinear);
        assert!(matches!(triangle_growth(&Graph::path(4)), TriangleGrowth::Linear { .. }));
    }
}
