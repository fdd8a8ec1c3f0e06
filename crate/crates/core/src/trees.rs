//! Independence/cover duality, constrained vertex-set enumeration over a
//! fixed edge cover, the m-value for tree-vs-tree exclusion, the
//! polynomial-growth checker for bipartite patterns against tree
//! exclusions, and the Hamilton-path reduction built on incidence graphs.

use crate::constructions::{incidence_graph, partial_blowup, BlowupSpec};
use crate::counting::contains_copy;
use crate::graph::{Graph, VertexSet};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreesError {
    #[error("graph has an isolated vertex; edge covers are undefined")]
    IsolatedVertex,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("input must be a tree")]
    NotATree,
    #[error("the excluded tree is already a subgraph of the pattern; every blow-up contains it")]
    ExclusionInsidePattern,
    #[error("the edge set is not an edge cover")]
    CoverInvalid,
    #[error("the cover is not minimum (size {got}, minimum {min})")]
    CoverNotMinimum { got: usize, min: usize },
    #[error("instance too large: {what} = {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("minimum degree {got} is below {need}; amplify first")]
    MinDegree { got: usize, need: usize },
}

// ---------------------------------------------------------------------------
// Independence and covers

/// Exact independence number by branch and bound on bitmasks (n <= 64,
/// intended for n <= 40).
pub fn max_independent_set(g: &Graph) -> usize {
    assert!(g.is_simple());
    let n = g.n();
    assert!(n <= 64, "independence search is capped at 64 vertices");
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | (1 << w)))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    mis_branch(&adj, full, 0, &mut best);
    best
}

fn mis_branch(adj: &[u64], mask: u64, have: usize, best: &mut usize) {
    if have + mask.count_ones() as usize <= *best {
        return;
    }
    if mask == 0 {
        *best = (*best).max(have);
        return;
    }
    // Max-degree vertex within the mask; if everything has degree <= 1 the
    // remainder is vertices plus disjoint edges and closes in one step.
    let mut pick = usize::MAX;
    let mut pick_deg = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = (adj[v] & mask).count_ones() as usize;
        if pick == usize::MAX || d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    if pick_deg <= 1 {
        let verts = mask.count_ones() as usize;
        let mut edges = 0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            edges += (adj[v] & mask).count_ones() as usize;
        }
        *best = (*best).max(have + verts - edges / 2);
        return;
    }
    let bit = 1u64 << pick;
    mis_branch(adj, mask & !bit & !adj[pick], have + 1, best);
    mis_branch(adj, mask & !bit, have, best);
}

/// Maximum matching size. Bipartite graphs use augmenting paths (any size);
/// general graphs fall back to bitmask recursion and are capped at 24
/// vertices.
pub fn max_matching(g: &Graph) -> usize {
    assert!(g.is_simple());
    if let Some((left, _)) = g.bipartition() {
        return bipartite_matching(g, &left);
    }
    let n = g.n();
    assert!(n <= 24, "general matching capped at 24 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w)))
        .collect();
    let mut memo = std::collections::HashMap::new();
    fn rec(adj: &[u32], mask: u32, memo: &mut std::collections::HashMap<u32, usize>) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = rec(adj, rest, memo);
        let mut nbrs = adj[v] & rest;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            best = best.max(1 + rec(adj, rest & !(1 << w), memo));
        }
        memo.insert(mask, best);
        best
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    rec(&adj, full, &mut memo)
}

fn bipartite_matching(g: &Graph, left: &VertexSet) -> usize {
    let n = g.n();
    let mut matched = vec![usize::MAX; n];
    let mut size = 0;
    for u in left.iter() {
        let mut seen = vec![false; n];
        if augment(g, u, &mut matched, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment(g: &Graph, u: usize, matched: &mut Vec<usize>, seen: &mut Vec<bool>) -> bool {
    for v in g.neighbors(u) {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if matched[v] == usize::MAX || augment(g, matched[v], matched, seen) {
            matched[v] = u;
            return true;
        }
    }
    false
}

/// Edge subset touching every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCover {
    pub edges: Vec<(usize, usize)>,
    pub minimum: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinCovers {
    pub size: usize,
    pub covers: Vec<EdgeCover>,
    /// False when the enumeration budget was exhausted first.
    pub complete: bool,
}

/// Minimum edge cover size: |V| - (maximum matching).
pub fn min_cover_size(g: &Graph) -> Result<usize, TreesError> {
    if g.has_isolated_vertex() || g.n() == 0 {
        return Err(TreesError::IsolatedVertex);
    }
    Ok(g.n() - max_matching(g))
}

/// All minimum edge covers, up to `budget` of them.
pub fn min_edge_covers(g: &Graph, budget: usize) -> Result<MinCovers, TreesError> {
    let size = min_cover_size(g)?;
    let mut covers = Vec::new();
    let complete = for_each_min_cover(g, size, budget, &mut |edges| {
        covers.push(EdgeCover {
            edges: edges.to_vec(),
            minimum: true,
        });
        false
    });
    Ok(MinCovers {
        size,
        covers,
        complete,
    })
}

/// Enumerates minimum covers by always branching on an edge at the first
/// uncovered vertex; duplicates (same set, different order) are suppressed.
/// Returns true iff the enumeration ran to completion within the budget.
pub(crate) fn for_each_min_cover(
    g: &Graph,
    size: usize,
    budget: usize,
    visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
) -> bool {
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut covered = vec![false; g.n()];
    let mut seen = std::collections::HashSet::new();
    let mut emitted = 0usize;
    cover_dfs(
        g,
        size,
        budget,
        &mut chosen,
        &mut covered,
        &mut seen,
        &mut emitted,
        visit,
    ) != CoverFlow::Stop
}

#[derive(PartialEq)]
enum CoverFlow {
    Continue,
    Stop,
}

#[allow(clippy::too_many_arguments)]
fn cover_dfs(
    g: &Graph,
    size: usize,
    budget: usize,
    chosen: &mut Vec<(usize, usize)>,
    covered: &mut Vec<bool>,
    seen: &mut std::collections::HashSet<Vec<(usize, usize)>>,
    emitted: &mut usize,
    visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
) -> CoverFlow {
    let first_uncovered = (0..g.n()).find(|&v| !covered[v]);
    let Some(v) = first_uncovered else {
        let mut key = chosen.clone();
        key.sort_unstable();
        if seen.insert(key.clone()) {
            *emitted += 1;
            if visit(&key) || *emitted >= budget {
                return CoverFlow::Stop;
            }
        }
        return CoverFlow::Continue;
    };
    let uncovered = covered.iter().filter(|&&c| !c).count();
    if chosen.len() + uncovered.div_ceil(2) > size {
        return CoverFlow::Continue;
    }
    for w in g.neighbors(v) {
        let edge = (v.min(w), v.max(w));
        chosen.push(edge);
        let was_w = covered[w];
        covered[v] = true;
        covered[w] = true;
        let flow = cover_dfs(g, size, budget, chosen, covered, seen, emitted, visit);
        covered[v] = false;
        covered[w] = was_w;
        chosen.pop();
        if flow == CoverFlow::Stop {
            return CoverFlow::Stop;
        }
    }
    CoverFlow::Continue
}

// ---------------------------------------------------------------------------
// Constrained vertex sets over a cover

fn validate_cover(t: &Graph, cover: &[(usize, usize)]) -> Result<(), TreesError> {
    let mut covered = vec![false; t.n()];
    for &(u, v) in cover {
        if !t.has_edge(u, v) {
            return Err(TreesError::CoverInvalid);
        }
        covered[u] = true;
        covered[v] = true;
    }
    if covered.iter().all(|&c| c) {
        Ok(())
    } else {
        Err(TreesError::CoverInvalid)
    }
}

/// All vertex sets U such that every component of `t` minus U meets
/// exactly one cover edge and the number of components equals the cover
/// size. Exhaustive subset search; capped at 20 vertices.
pub fn u_gamma_sets(t: &Graph, cover: &EdgeCover) -> Result<Vec<VertexSet>, TreesError> {
    assert!(t.is_simple());
    if t.n() > 20 {
        return Err(TreesError::TooLarge {
            what: "vertices",
            got: t.n(),
            limit: 20,
        });
    }
    if !t.is_bipartite() {
        return Err(TreesError::NotBipartite);
    }
    validate_cover(t, &cover.edges)?;
    let min = min_cover_size(t)?;
    if cover.edges.len() != min {
        return Err(TreesError::CoverNotMinimum {
            got: cover.edges.len(),
            min,
        });
    }
    let n = t.n();
    let gamma = &cover.edges;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let rest: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) == 0).collect();
        let sub = t.induced(&rest);
        let comps = sub.components();
        if comps.len() != gamma.len() {
            continue;
        }
        let ok = comps.iter().all(|comp| {
            let comp_orig: Vec<usize> = comp.iter().map(|&i| rest[i]).collect();
            let touched = gamma
                .iter()
                .filter(|&&(a, b)| comp_orig.contains(&a) || comp_orig.contains(&b))
                .count();
            touched == 1
        });
        if ok {
            out.push((0..n).filter(|&v| mask & (1 << v) != 0).collect());
        }
    }
    Ok(out)
}

/// Same result as [`u_gamma_sets`] computed structurally, with no size cap:
/// a valid set keeps, outside U, all leaves of every cover star, and for
/// every isolated cover edge either one endpoint or the whole edge; pieces
/// must be pairwise nonadjacent. Minimum covers are disjoint unions of
/// stars, which makes the per-component choices independent.
pub(crate) fn u_gamma_sets_structured(t: &Graph, cover: &[(usize, usize)]) -> Vec<VertexSet> {
    let n = t.n();
    // Group cover edges into stars by shared endpoints.
    let mut degree = vec![0usize; n];
    for &(u, v) in cover {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut comp_id: Vec<Option<usize>> = vec![None; n];
    let mut stars: Vec<Vec<(usize, usize)>> = Vec::new();
    for &(u, v) in cover {
        match (comp_id[u], comp_id[v]) {
            (None, None) => {
                comp_id[u] = Some(stars.len());
                comp_id[v] = Some(stars.len());
                stars.push(vec![(u, v)]);
            }
            (Some(c), None) => {
                comp_id[v] = Some(c);
                stars[c].push((u, v));
            }
            (None, Some(c)) => {
                comp_id[u] = Some(c);
                stars[c].push((u, v));
            }
            (Some(c), Some(d)) => {
                debug_assert_eq!(c, d, "a minimum cover is a disjoint union of stars");
                stars[c].push((u, v));
            }
        }
    }
    // Per star: the candidate piece lists.
    let mut choices: Vec<Vec<Vec<usize>>> = Vec::new();
    for star in &stars {
        if star.len() == 1 {
            let (x, y) = star[0];
            // Piece = both endpoints, or either singleton.
            choices.push(vec![vec![x, y], vec![x], vec![y]]);
        } else {
            let center = star
                .iter()
                .flat_map(|&(a, b)| [a, b])
                .find(|&v| degree[v] > 1)
                .expect("stars with two edges share their center");
            debug_assert!(
                star.iter().all(|&(a, b)| a == center || b == center),
                "a minimum cover is a disjoint union of stars"
            );
            let leaves: Vec<usize> = star
                .iter()
                .map(|&(a, b)| if a == center { b } else { a })
                .collect();
            // All leaves must stay outside U, each as its own piece.
            choices.push(leaves.into_iter().map(|l| vec![l]).collect::<Vec<_>>());
        }
    }
    // For multi-edge stars the pieces are forced; encode them as a single
    // "choice" of the full leaf list split into singletons.
    let mut forced_pieces: Vec<Vec<usize>> = Vec::new();
    let mut free_choices: Vec<Vec<Vec<usize>>> = Vec::new();
    for (star, choice) in stars.iter().zip(choices) {
        if star.len() == 1 {
            free_choices.push(choice);
        } else {
            forced_pieces.extend(choice);
        }
    }
    let mut out = Vec::new();
    let mut picked: Vec<Vec<usize>> = Vec::new();
    fn assemble(
        t: &Graph,
        n: usize,
        forced: &[Vec<usize>],
        free: &[Vec<Vec<usize>>],
        idx: usize,
        picked: &mut Vec<Vec<usize>>,
        out: &mut Vec<VertexSet>,
    ) {
        if idx == free.len() {
            let mut pieces: Vec<&Vec<usize>> = forced.iter().collect();
            pieces.extend(picked.iter());
            // Distinct pieces may not touch: the components of the removal
            // must be exactly the pieces.
            for (i, p) in pieces.iter().enumerate() {
                for q in &pieces[i + 1..] {
                    for &a in p.iter() {
                        for &b in q.iter() {
                            if t.has_edge(a, b) {
                                return;
                            }
                        }
                    }
                }
            }
            let outside: std::collections::HashSet<usize> =
                pieces.iter().flat_map(|p| p.iter().copied()).collect();
            out.push((0..n).filter(|v| !outside.contains(v)).collect());
            return;
        }
        for choice in &free[idx] {
            picked.push(choice.clone());
            assemble(t, n, forced, free, idx + 1, picked, out);
            picked.pop();
        }
    }
    assemble(t, n, &forced_pieces, &free_choices, 0, &mut picked, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Blow-up containment helpers

fn is_path_graph(g: &Graph) -> bool {
    g.is_tree() && g.max_degree() <= 2
}

/// Does the (fixed, mult)-blow-up of `base` contain a path on `target`
/// vertices? Subset DP over the fixed vertices with per-component segment
/// tables; requires `mult >= target` so each path segment can use a fresh
/// component copy.
pub fn blowup_contains_path(base: &Graph, fixed: &VertexSet, mult: usize, target: usize) -> bool {
    assert!(mult >= target, "the DP needs one fresh copy per segment");
    if target == 0 {
        return true;
    }
    let n = base.n();
    let u_list: Vec<usize> = fixed.iter().collect();
    let r = u_list.len();
    assert!(r <= 25, "fixed-set DP capped at 25 vertices");
    if target == 1 {
        return n > 0;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !fixed.contains(v)).collect();
    let sub = base.induced(&rest);
    let comps: Vec<Vec<usize>> = sub
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| rest[i]).collect())
        .collect();

    let upos = |v: usize| u_list.binary_search(&v).unwrap();
    let mut best_internal = 0usize;
    let mut pend = vec![0usize; r]; // best segment length ending adjacent to u
    let mut bridge = vec![vec![0usize; r]; r]; // ... from u-adjacent to v-adjacent

    for comp in &comps {
        let cg = base.induced(comp);
        assert!(comp.len() <= 20, "component path enumeration capped at 20");
        // Enumerate every ordered simple path in the component.
        let mut stack: Vec<Vec<usize>> = (0..cg.n()).map(|v| vec![v]).collect();
        while let Some(path) = stack.pop() {
            let len = path.len();
            best_internal = best_internal.max(len);
            let first = comp[path[0]];
            let last = comp[*path.last().unwrap()];
            for u in base.neighbors(last) {
                if fixed.contains(u) {
                    let ui = upos(u);
                    pend[ui] = pend[ui].max(len);
                    for w in base.neighbors(first) {
                        if fixed.contains(w) && w != u {
                            let wi = upos(w);
                            bridge[wi][ui] = bridge[wi][ui].max(len);
                        }
                    }
                }
            }
            let tail = *path.last().unwrap();
            for v in cg.neighbors(tail) {
                if !path.contains(&v) {
                    let mut next = path.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
        }
    }
    if best_internal >= target {
        return true;
    }
    if r == 0 {
        return false;
    }

    // dp[mask][u]: most vertices on a partial path ending at fixed vertex u
    // having consumed exactly the fixed vertices in mask.
    let full = 1usize << r;
    let mut dp = vec![vec![0usize; r]; full];
    for u in 0..r {
        dp[1 << u][u] = 1 + pend[u];
        if dp[1 << u][u] + pend[u] >= target {
            return true;
        }
    }
    for mask in 1..full {
        for u in 0..r {
            let cur = dp[mask][u];
            if cur == 0 || mask & (1 << u) == 0 {
                continue;
            }
            if cur + pend[u] >= target {
                return true;
            }
            for v in 0..r {
                if mask & (1 << v) != 0 {
                    continue;
                }
                let mut gain = 0usize;
                if base.has_edge(u_list[u], u_list[v]) {
                    gain = 1;
                }
                if bridge[u][v] > 0 {
                    gain = gain.max(1 + bridge[u][v]);
                }
                if gain > 0 {
                    let nm = mask | (1 << v);
                    let cand = cur + gain;
                    if cand > dp[nm][v] {
                        dp[nm][v] = cand;
                        if cand >= target || cand + pend[v] >= target {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// H-freeness of the (fixed, mult)-blow-up, routed through the path DP
/// when the exclusion is a path.
fn blowup_is_free(base: &Graph, fixed: &VertexSet, mult: usize, h: &Graph) -> bool {
    if is_path_graph(h) && fixed.len() <= 25 {
        return !blowup_contains_path(base, fixed, mult, h.n());
    }
    let spec = BlowupSpec {
        base: base.clone(),
        fixed: fixed.clone(),
        multiplicity: mult,
    };
    !contains_copy(&partial_blowup(&spec), h)
}

// ---------------------------------------------------------------------------
// m-value

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MValue {
    pub m: usize,
    pub witness: Vec<usize>,
}

/// Largest number of components of `t` minus U over sets U whose
/// (U, |V(h)|)-blow-up of `t` avoids `h`. Both inputs must be trees and
/// `h` must not already sit inside `t` (then no blow-up avoids it).
/// Ties prefer the lexicographically least witness.
pub fn m_value(t: &Graph, h: &Graph) -> Result<MValue, TreesError> {
    if !t.is_tree() || !h.is_tree() {
        return Err(TreesError::NotATree);
    }
    if t.n() > 16 {
        return Err(TreesError::TooLarge {
            what: "pattern vertices",
            got: t.n(),
            limit: 16,
        });
    }
    if h.n() >= 2 && contains_copy(t, h) {
        return Err(TreesError::ExclusionInsidePattern);
    }
    let n = t.n();
    let mult = h.n();
    let mut best: Option<MValue> = None;
    for mask in 0u32..(1 << n) {
        let fixed: VertexSet = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let rest: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) == 0).collect();
        let ncomps = t.induced(&rest).components().len();
        if let Some(b) = &best {
            if ncomps < b.m {
                continue;
            }
        }
        if !blowup_is_free(t, &fixed, mult, h) {
            continue;
        }
        let witness: Vec<usize> = fixed.iter().collect();
        match &mut best {
            Some(b) if ncomps > b.m => {
                *b = MValue { m: ncomps, witness };
            }
            Some(b) if ncomps == b.m && witness < b.witness => {
                b.witness = witness;
            }
            None => best = Some(MValue { m: ncomps, witness }),
            _ => {}
        }
    }
    // U = V(t) always qualifies (empty blow-up), so a value exists.
    Ok(best.expect("the full vertex set is always feasible"))
}

// ---------------------------------------------------------------------------
// Polynomial growth checker

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThetaMode {
    /// Search for one minimum cover with a good vertex set (sound and
    /// complete by the equivalence of the two conditions).
    ExistsCover,
    /// Verify every minimum cover has a good vertex set.
    AllCovers,
}

pub const DEFAULT_COVER_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Serialize)]
pub enum ThetaOutcome {
    /// Growth is exactly order alpha(T); carries a witnessing cover and
    /// vertex set whose blow-up avoids the exclusion.
    Holds {
        cover: Vec<(usize, usize)>,
        u_set: Vec<usize>,
    },
    /// Growth is strictly below order alpha(T). In exists mode every
    /// enumerated pair failed; in all-covers mode the recorded cover has no
    /// good vertex set.
    Fails {
        counterexample_cover: Option<Vec<(usize, usize)>>,
        covers_checked: usize,
    },
    /// The cover enumeration budget ran out before a definitive answer.
    Inconclusive { covers_examined: usize },
}

impl ThetaOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ThetaOutcome::Holds { .. })
    }
}

/// Whether the maximum count of copies of the bipartite pattern `t` in
/// hosts excluding the tree `h` grows as n^alpha(t), by searching minimum
/// covers and their constrained vertex sets for a blow-up avoiding `h`.
pub fn theta_alpha_check(
    t: &Graph,
    h: &Graph,
    mode: ThetaMode,
    cover_budget: usize,
) -> Result<ThetaOutcome, TreesError> {
    assert!(t.is_simple());
    if t.has_isolated_vertex() || t.n() == 0 {
        return Err(TreesError::IsolatedVertex);
    }
    if !t.is_bipartite() {
        return Err(TreesError::NotBipartite);
    }
    if !h.is_tree() {
        return Err(TreesError::NotATree);
    }
    let size = min_cover_size(t)?;
    let mult = h.n();

    let mut witness: Option<(Vec<(usize, usize)>, Vec<usize>)> = None;
    let mut counterexample: Option<Vec<(usize, usize)>> = None;
    let mut covers_seen = 0usize;
    let complete = for_each_min_cover(t, size, cover_budget, &mut |cover| {
        covers_seen += 1;
        let good = u_gamma_sets_structured(t, cover)
            .into_iter()
            .find(|u| blowup_is_free(t, u, mult, h));
        match (mode, good) {
            (_, Some(u)) => {
                if witness.is_none() {
                    witness = Some((cover.to_vec(), u.iter().collect()));
                }
                // Exists mode stops at the first witness.
                mode == ThetaMode::ExistsCover
            }
            (ThetaMode::ExistsCover, None) => false,
            (ThetaMode::AllCovers, None) => {
                counterexample = Some(cover.to_vec());
                true
            }
        }
    });

    Ok(match mode {
        ThetaMode::ExistsCover => {
            if let Some((cover, u_set)) = witness {
                ThetaOutcome::Holds { cover, u_set }
            } else if complete {
                ThetaOutcome::Fails {
                    counterexample_cover: None,
                    covers_checked: covers_seen,
                }
            } else {
                ThetaOutcome::Inconclusive {
                    covers_examined: covers_seen,
                }
            }
        }
        ThetaMode::AllCovers => {
            if let Some(cover) = counterexample {
                ThetaOutcome::Fails {
                    counterexample_cover: Some(cover),
                    covers_checked: covers_seen,
                }
            } else if complete {
                let (cover, u_set) = witness.expect("every graph without isolated vertices has a cover");
                ThetaOutcome::Holds { cover, u_set }
            } else {
                ThetaOutcome::Inconclusive {
                    covers_examined: covers_seen,
                }
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Hamilton-path reduction

/// Exact Hamilton path decision by subset DP; capped at 20 vertices.
pub fn has_hamilton_path(g: &Graph) -> bool {
    assert!(g.is_simple());
    let n = g.n();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    assert!(n <= 20, "Hamilton DP capped at 20 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w)))
        .collect();
    let full = (1u32 << n) - 1;
    let mut dp = vec![0u32; 1 << n];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let ends = dp[mask as usize];
        if ends == 0 {
            continue;
        }
        let mut e = ends;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                dp[(mask | (1 << w)) as usize] |= 1 << w;
            }
        }
    }
    dp[full as usize] != 0
}

/// Builds the instance pair for the traceability reduction: the vertex-edge
/// incidence graph of `g` and a path on `2|V(g)| + 1` vertices. The blow-up
/// growth check on this pair holds exactly when `g` has no Hamilton path.
pub fn hamilton_reduce(g: &Graph) -> Result<(Graph, Graph), TreesError> {
    assert!(g.is_simple());
    if g.min_degree() < 4 {
        return Err(TreesError::MinDegree {
            got: g.min_degree(),
            need: 4,
        });
    }
    if g.n() > 12 {
        return Err(TreesError::TooLarge {
            what: "vertices",
            got: g.n(),
            limit: 12,
        });
    }
    Ok((incidence_graph(g), Graph::path(2 * g.n() + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::min_degree_amplifier;

    fn edge_cover(edges: &[(usize, usize)]) -> EdgeCover {
        EdgeCover {
            edges: edges.to_vec(),
            minimum: true,
        }
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(max_independent_set(&Graph::path(4)), 2);
        assert_eq!(max_independent_set(&Graph::cycle(4)), 2);
        assert_eq!(max_independent_set(&Graph::star(5)), 5);
        assert_eq!(max_independent_set(&Graph::petersen()), 4);
        assert_eq!(max_independent_set(&Graph::complete(7)), 1);
    }

    #[test]
    fn min_cover_enumeration() {
        let p4 = min_edge_covers(&Graph::path(4), 100).unwrap();
        assert_eq!(p4.size, 2);
        assert_eq!(p4.covers, vec![edge_cover(&[(0, 1), (2, 3)])]);

        let c4 = min_edge_covers(&Graph::cycle(4), 100).unwrap();
        assert_eq!(c4.size, 2);
        assert_eq!(c4.covers.len(), 2);

        let star = min_edge_covers(&Graph::star(5), 100).unwrap();
        assert_eq!(star.size, 5);
        assert_eq!(star.covers.len(), 1);
        assert_eq!(star.covers[0].edges.len(), 5);

        assert!(min_edge_covers(&Graph::new(3), 10).is_err());
    }

    #[test]
    fn covers_are_star_forests() {
        // No path on three cover edges inside any minimum cover.
        for g in [
            Graph::path(6),
            Graph::cycle(6),
            Graph::complete_bipartite(2, 3),
            Graph::petersen(),
        ] {
            let mc = min_edge_covers(&g, 1000).unwrap();
            for cover in &mc.covers {
                let mut cg = Graph::new(g.n());
                for &(u, v) in &cover.edges {
                    cg.add_edge(u, v);
                }
                assert!(!crate::counting::contains_copy(&cg, &Graph::path(4)));
            }
        }
    }

    #[test]
    fn u_gamma_sets_on_c4() {
        let c4 = Graph::cycle(4);
        let cover = edge_cover(&[(0, 1), (2, 3)]);
        let sets = u_gamma_sets(&c4, &cover).unwrap();
        let as_vecs: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(as_vecs, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn u_gamma_sets_structured_agrees_with_exhaustive() {
        let cases = [
            (Graph::cycle(4), vec![(0, 1), (2, 3)]),
            (Graph::path(4), vec![(0, 1), (2, 3)]),
            (Graph::matching(2), vec![(0, 1), (2, 3)]),
            (Graph::star(3), vec![(0, 1), (0, 2), (0, 3)]),
            (Graph::complete_bipartite(2, 3), vec![(0, 2), (0, 3), (1, 4)]),
        ];
        for (t, cover) in cases {
            let exhaustive = u_gamma_sets(&t, &edge_cover(&cover)).unwrap();
            let mut structured = u_gamma_sets_structured(&t, &cover);
            structured.sort_by_key(|s| s.iter().collect::<Vec<_>>());
            let mut exhaustive = exhaustive;
            exhaustive.sort_by_key(|s| s.iter().collect::<Vec<_>>());
            assert_eq!(structured, exhaustive, "t = {t:?}, cover = {cover:?}");
        }
    }

    #[test]
    fn empty_u_set_for_matching() {
        let sets = u_gamma_sets(&Graph::matching(2), &edge_cover(&[(0, 1), (2, 3)])).unwrap();
        assert!(sets.iter().any(|s| s.is_empty()));
    }

    #[test]
    fn m_value_fixtures() {
        let p3 = Graph::path(3);
        let m = m_value(&p3, &Graph::path(4)).unwrap();
        assert_eq!((m.m, m.witness.clone()), (2, vec![1]));

        let m = m_value(&p3, &Graph::star(3)).unwrap();
        assert_eq!((m.m, m.witness.clone()), (1, vec![]));

        let m = m_value(&Graph::complete(2), &Graph::path(3)).unwrap();
        assert_eq!((m.m, m.witness.clone()), (1, vec![]));

        assert_eq!(
            m_value(&Graph::path(4), &Graph::path(3)),
            Err(TreesError::ExclusionInsidePattern)
        );
        assert_eq!(m_value(&Graph::cycle(4), &p3), Err(TreesError::NotATree));
    }

    #[test]
    fn m_value_monotone_under_leaf_extension() {
        // Adding a leaf to the exclusion never decreases the value.
        let ts = [Graph::path(3), Graph::path(4), Graph::star(3)];
        let pairs = [
            (Graph::path(4), Graph::path(5)),
            (Graph::star(3), Graph::star(4)),
        ];
        for t in &ts {
            for (h, h_ext) in &pairs {
                let (Ok(a), Ok(b)) = (m_value(t, h), m_value(t, h_ext)) else {
                    continue;
                };
                assert!(b.m >= a.m);
            }
        }
    }

    #[test]
    fn theta_fixtures() {
        let two_k2 = Graph::matching(2);
        let out = theta_alpha_check(&two_k2, &Graph::path(4), ThetaMode::ExistsCover, 1000).unwrap();
        match &out {
            ThetaOutcome::Holds { u_set, .. } => assert!(u_set.is_empty()),
            other => panic!("expected Holds, got {other:?}"),
        }

        let out = theta_alpha_check(&Graph::cycle(4), &Graph::path(4), ThetaMode::ExistsCover, 1000)
            .unwrap();
        assert!(!out.holds());

        let out = theta_alpha_check(&Graph::complete(2), &Graph::path(3), ThetaMode::ExistsCover, 1000)
            .unwrap();
        match &out {
            ThetaOutcome::Holds { u_set, .. } => assert!(u_set.is_empty()),
            other => panic!("expected Holds, got {other:?}"),
        }
    }

    #[test]
    fn theta_modes_agree_on_small_cases() {
        let ts = [
            Graph::complete(2),
            Graph::path(3),
            Graph::path(4),
            Graph::cycle(4),
            Graph::matching(2),
            Graph::star(3),
        ];
        let hs = [Graph::path(3), Graph::path(4), Graph::star(3), Graph::path(5)];
        for t in &ts {
            for h in &hs {
                let a = theta_alpha_check(t, h, ThetaMode::ExistsCover, 10_000).unwrap();
                let b = theta_alpha_check(t, h, ThetaMode::AllCovers, 10_000).unwrap();
                assert_eq!(a.holds(), b.holds(), "t = {t:?}, h = {h:?}");
            }
        }
    }

    #[test]
    fn path_dp_matches_direct_containment() {
        let bases = [Graph::path(4), Graph::cycle(4), Graph::star(3), Graph::matching(2)];
        for base in &bases {
            for mask in 0u32..(1 << base.n()) {
                let fixed: VertexSet = (0..base.n()).filter(|&v| mask & (1 << v) != 0).collect();
                for target in 2..=6usize {
                    let spec = BlowupSpec {
                        base: base.clone(),
                        fixed: fixed.clone(),
                        multiplicity: target,
                    };
                    let direct = contains_copy(&partial_blowup(&spec), &Graph::path(target));
                    let dp = blowup_contains_path(base, &fixed, target, target);
                    assert_eq!(dp, direct, "base={base:?} fixed={fixed:?} target={target}");
                }
            }
        }
    }

    #[test]
    fn hamilton_paths() {
        assert!(has_hamilton_path(&Graph::complete(5)));
        assert!(has_hamilton_path(&Graph::path(6)));
        assert!(!has_hamilton_path(&Graph::star(3)));
        assert!(!has_hamilton_path(&Graph::complete_bipartite(4, 6)));
        assert!(has_hamilton_path(&Graph::petersen()));
    }

    #[test]
    fn reduction_shapes() {
        let (t, h) = hamilton_reduce(&Graph::complete(5)).unwrap();
        assert_eq!(t.n(), 5 + 10);
        assert_eq!(h.n(), 11);
        assert!(t.is_bipartite());
        assert!(hamilton_reduce(&Graph::cycle(5)).is_err());
    }

    #[test]
    fn amplifier_preserves_traceability_spot() {
        for g in [Graph::path(3), Graph::cycle(5), Graph::star(3), Graph::complete(4)] {
            let amp = min_degree_amplifier(&g).unwrap();
            assert_eq!(has_hamilton_path(&g), has_hamilton_path(&amp), "{g:?}");
        }
    }
}
