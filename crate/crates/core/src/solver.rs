//! Exact maximum intersecting subfamilies via maximum independent set
//! search on the disjointness graph of the family.
//!
//! Intersecting subfamilies of `f` are exactly the independent sets of the
//! graph whose nodes are members of `f`, with an edge where two members are
//! disjoint. Most independent r-sets of the graphs studied here intersect,
//! so the disjointness side is the sparse one; we run branch-and-bound with
//! take-isolated / take-degree-one reductions, connected-component
//! decomposition, degree-2 two-way branching, and a greedy clique-cover
//! upper bound, refined by an exact maximum matching when the cover finds
//! nothing beyond edges (with r-sets over few host vertices, three members
//! can never be pairwise disjoint and the cover is all edges).

use std::time::Instant;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::Graph;

// ============================================================================
// Disjointness graph
// ============================================================================

/// Graph on family members; edge (i, j) iff members i and j are disjoint.
#[derive(Clone, Debug)]
pub struct DisjointnessGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>, // row-major, n rows of `words` blocks
}

impl DisjointnessGraph {
    /// Builds the disjointness graph of `f` by pairwise comparison.
    pub fn build(f: &SetFamily) -> DisjointnessGraph {
        let n = f.len();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * words];
        for i in 0..n {
            for j in (i + 1)..n {
                if f.member(i).is_disjoint(f.member(j)) {
                    adj[i * words + j / 64] |= 1 << (j % 64);
                    adj[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        DisjointnessGraph { n, words, adj }
    }

    #[inline]
    pub fn member_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn are_disjoint(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    /// Degree of node `v` restricted to the candidate mask.
    #[inline]
    fn degree_in(&self, v: usize, cands: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(cands)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// All edges as index pairs (i < j); mostly for reports and tests.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.are_disjoint(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn full_mask(&self) -> Vec<u64> {
        let mut mask = vec![u64::MAX; self.words];
        let spill = self.n % 64;
        if spill != 0 {
            mask[self.words - 1] = (1u64 << spill) - 1;
        }
        if self.n == 0 {
            mask[0] = 0;
        }
        mask
    }
}

#[inline]
fn popcount(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn mask_contains(mask: &[u64], v: usize) -> bool {
    mask[v / 64] >> (v % 64) & 1 == 1
}

#[inline]
fn mask_remove(mask: &mut [u64], v: usize) {
    mask[v / 64] &= !(1u64 << (v % 64));
}

fn mask_iter(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(w, &bits)| {
        std::iter::successors((bits != 0).then_some(bits), |b| {
            let b = b & (b - 1);
            (b != 0).then_some(b)
        })
        .map(move |b| w * 64 + b.trailing_zeros() as usize)
    })
}

// ============================================================================
// Configuration, stats, results
// ============================================================================

/// Search mode; both return the same size, only the canonical mode pins the
/// exploration order (and therefore the stats) completely.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverMode {
    Canonical,
    Parallel,
}

impl SolverMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverMode::Canonical => "canonical",
            SolverMode::Parallel => "parallel",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    /// Refuse to solve families with more members than this.
    pub member_cap: usize,
    pub mode: SolverMode,
}

pub const DEFAULT_MEMBER_CAP: usize = 20_000;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            member_cap: DEFAULT_MEMBER_CAP,
            mode: SolverMode::Canonical,
        }
    }
}

/// Search statistics.
#[derive(Clone, Copy, Debug)]
pub struct SolveStats {
    pub nodes: u64,
    pub bound_hits: u64,
    pub millis: u128,
    pub mode: SolverMode,
}

/// Exact maximum intersecting subfamily plus search statistics.
#[derive(Clone, Debug)]
pub struct MaxFamilyResult {
    pub size: usize,
    pub witness: SetFamily,
    pub stats: SolveStats,
    /// True when the search completed exactly (always, today: a family over
    /// the member cap is rejected up front instead of solved loosely).
    pub certified: bool,
}

impl MaxFamilyResult {
    /// The stats interchange JSON:
    /// `{"size":…, "nodes":…, "millis":…, "certified":…, "mode":…}`.
    pub fn stats_json(&self) -> String {
        format!(
            "{{\"size\":{},\"nodes\":{},\"millis\":{},\"certified\":{},\"mode\":\"{}\"}}",
            self.size,
            self.stats.nodes,
            self.stats.millis,
            self.certified,
            self.stats.mode.as_str()
        )
    }
}

/// Every maximum intersecting subfamily, up to a solution cap.
#[derive(Clone, Debug)]
pub struct AllMaximumResult {
    pub size: usize,
    pub families: Vec<SetFamily>,
    /// True when enumeration stopped at the cap.
    pub truncated: bool,
}

// ============================================================================
// Public entry points
// ============================================================================

/// Size of a maximal independent set found by minimum-degree greedy;
/// a lower bound on the exact maximum.
pub fn greedy_lower_bound(d: &DisjointnessGraph) -> usize {
    greedy_witness(d).len()
}

fn greedy_witness(d: &DisjointnessGraph) -> Vec<usize> {
    let mut cands = d.full_mask();
    let mut chosen = Vec::new();
    while popcount(&cands) > 0 {
        let v = mask_iter(&cands)
            .min_by_key(|&v| (d.degree_in(v, &cands), v))
            .expect("candidates nonempty");
        chosen.push(v);
        let row = d.row(v).to_vec();
        for (w, r) in cands.iter_mut().zip(&row) {
            *w &= !r;
        }
        mask_remove(&mut cands, v);
    }
    chosen.sort_unstable();
    chosen
}

/// Member indices of the best star inside `f`: all members containing the
/// most popular vertex. Intersecting by construction; used both as a search
/// seed and as the lower bound attached to cap errors.
fn best_star_indices(f: &SetFamily) -> Vec<usize> {
    let counts = f.vertex_membership_counts();
    match counts
        .iter()
        .enumerate()
        .max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)))
    {
        Some((v, &c)) if c > 0 => (0..f.len()).filter(|&i| f.member(i).contains(v)).collect(),
        _ => {
            if f.is_empty() {
                Vec::new()
            } else {
                vec![0] // r = 0: the single empty member
            }
        }
    }
}

/// Exact maximum intersecting subfamily of `I^(r)(g)`.
pub fn max_intersecting(g: &Graph, r: usize, config: &SolverConfig) -> Result<MaxFamilyResult> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let family = SetFamily::enumerate_independent(g, r);
    max_intersecting_family(&family, config)
}

/// Exact maximum intersecting subfamily of an explicit family.
pub fn max_intersecting_family(f: &SetFamily, config: &SolverConfig) -> Result<MaxFamilyResult> {
    if f.len() > config.member_cap {
        return Err(Error::ResourceLimit {
            members: f.len(),
            cap: config.member_cap,
            lower_bound: best_star_indices(f).len(),
        });
    }
    let start = Instant::now();
    let d = DisjointnessGraph::build(f);

    // Seed with the better of the min-degree greedy set and the best star.
    let greedy = greedy_witness(&d);
    let star = best_star_indices(f);
    let seed = if star.len() >= greedy.len() {
        star
    } else {
        greedy
    };

    let (best, nodes, bound_hits) = match config.mode {
        SolverMode::Canonical => solve_canonical(&d, seed),
        SolverMode::Parallel => solve_parallel(&d, seed),
    };

    let witness = f.sub_family(&best);
    debug_assert!(witness.is_intersecting());
    Ok(MaxFamilyResult {
        size: witness.len(),
        witness,
        stats: SolveStats {
            nodes,
            bound_hits,
            millis: start.elapsed().as_millis(),
            mode: config.mode,
        },
        certified: true,
    })
}

/// Every maximum intersecting subfamily of `I^(r)(g)`, up to `solution_cap`.
pub fn all_maximum_intersecting(
    g: &Graph,
    r: usize,
    solution_cap: usize,
    config: &SolverConfig,
) -> Result<AllMaximumResult> {
    if solution_cap == 0 {
        return Err(Error::InvalidParameter("solution cap must be >= 1".into()));
    }
    let family = SetFamily::enumerate_independent(g, r);
    all_maximum_intersecting_family(&family, solution_cap, config)
}

/// Every maximum intersecting subfamily of an explicit family.
pub fn all_maximum_intersecting_family(
    f: &SetFamily,
    solution_cap: usize,
    config: &SolverConfig,
) -> Result<AllMaximumResult> {
    let max = max_intersecting_family(f, config)?;
    let d = DisjointnessGraph::build(f);
    let mut enumeration = ExactEnumeration {
        d: &d,
        target: max.size,
        cap: solution_cap,
        solutions: Vec::new(),
        truncated: false,
    };
    let mut cands = d.full_mask();
    let mut chosen = Vec::new();
    enumeration.run(&mut cands, &mut chosen);
    let families = enumeration
        .solutions
        .iter()
        .map(|ix| f.sub_family(ix))
        .collect();
    Ok(AllMaximumResult {
        size: max.size,
        families,
        truncated: enumeration.truncated,
    })
}

// ============================================================================
// Branch and bound
// ============================================================================

/// Exact search over independent sets of the disjointness graph.
///
/// `solve` follows a bounded-exactness contract: the returned set is a
/// maximum independent set of the candidate space whenever that maximum
/// exceeds `alpha`; when it does not, the search is free to prune and the
/// (smaller) result only witnesses that nothing better was required. The
/// contract composes across connected components, which is what makes the
/// component decomposition sound.
struct Search<'a> {
    d: &'a DisjointnessGraph,
    nodes: u64,
    bound_hits: u64,
}

impl<'a> Search<'a> {
    fn new(d: &'a DisjointnessGraph) -> Self {
        Search {
            d,
            nodes: 0,
            bound_hits: 0,
        }
    }

    fn solve(&mut self, cands: &mut Vec<u64>, alpha: isize) -> Vec<usize> {
        self.nodes += 1;

        // Reductions: isolated candidates are always taken; a degree-one
        // candidate is taken and its neighbor discarded.
        let mut forced: Vec<usize> = Vec::new();
        loop {
            let mut changed = false;
            let verts: Vec<usize> = mask_iter(cands).collect();
            for v in verts {
                if !mask_contains(cands, v) {
                    continue;
                }
                match self.d.degree_in(v, cands) {
                    0 => {
                        forced.push(v);
                        mask_remove(cands, v);
                        changed = true;
                    }
                    1 => {
                        let w = mask_iter(cands)
                            .find(|&w| self.d.are_disjoint(v, w))
                            .expect("degree is one");
                        forced.push(v);
                        mask_remove(cands, v);
                        mask_remove(cands, w);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }

        let remaining = popcount(cands);
        if remaining == 0 {
            return forced;
        }
        let alpha_res = alpha - forced.len() as isize;
        if remaining as isize <= alpha_res {
            self.bound_hits += 1;
            return forced;
        }

        // Independent components contribute independently; solve them in
        // turn, each with the weakest threshold that keeps the overall
        // target reachable given upper bounds on the unsolved rest.
        let comps = split_components(self.d, cands);
        if comps.len() > 1 {
            let ubs: Vec<isize> = comps
                .iter()
                .map(|c| upper_bound(self.d, c) as isize)
                .collect();
            let mut rest_ub: isize = ubs.iter().sum();
            if rest_ub <= alpha_res {
                self.bound_hits += 1;
                return forced;
            }
            let mut acc: Vec<usize> = Vec::new();
            for (mut comp, ub) in comps.into_iter().zip(ubs) {
                rest_ub -= ub;
                let alpha_i = (alpha_res - acc.len() as isize - rest_ub).max(-1);
                let sol = self.solve(&mut comp, alpha_i);
                let gave_up = (sol.len() as isize) <= alpha_i;
                acc.extend(sol);
                if gave_up {
                    self.bound_hits += 1;
                    break;
                }
            }
            forced.extend(acc);
            return forced;
        }

        if upper_bound(self.d, cands) as isize <= alpha_res {
            self.bound_hits += 1;
            return forced;
        }

        // Degree-2 branching: a maximum solution either contains v or both
        // of v's non-conflicting neighbors.
        if let Some(v) = mask_iter(cands).find(|&v| self.d.degree_in(v, cands) == 2) {
            let mut conflicts = mask_iter(cands).filter(|&w| self.d.are_disjoint(v, w));
            let u = conflicts.next().expect("degree is two");
            let w = conflicts.next().expect("degree is two");
            let mut best: Vec<usize> = Vec::new();

            let mut with_v = cands.clone();
            for (m, r) in with_v.iter_mut().zip(self.d.row(v)) {
                *m &= !r;
            }
            mask_remove(&mut with_v, v);
            let sub = self.solve(&mut with_v, alpha_res - 1);
            if sub.len() as isize > alpha_res - 1 {
                best = sub;
                best.push(v);
            }

            if !self.d.are_disjoint(u, w) {
                let floor = alpha_res.max(best.len() as isize);
                let mut with_uw = cands.clone();
                for (m, (ru, rw)) in with_uw
                    .iter_mut()
                    .zip(self.d.row(u).iter().zip(self.d.row(w)))
                {
                    *m &= !(ru | rw);
                }
                mask_remove(&mut with_uw, u);
                mask_remove(&mut with_uw, w);
                let sub = self.solve(&mut with_uw, floor - 2);
                if sub.len() as isize > floor - 2 {
                    let mut candidate = sub;
                    candidate.push(u);
                    candidate.push(w);
                    if candidate.len() > best.len() {
                        best = candidate;
                    }
                }
            }
            forced.extend(best);
            return forced;
        }

        // Binary branching on the densest candidate: including it removes
        // the most conflicts, excluding it the most bound slack.
        let v = mask_iter(cands)
            .max_by_key(|&v| (self.d.degree_in(v, cands), std::cmp::Reverse(v)))
            .expect("candidates nonempty");
        let mut best: Vec<usize> = Vec::new();

        let mut with_v = cands.clone();
        for (m, r) in with_v.iter_mut().zip(self.d.row(v)) {
            *m &= !r;
        }
        mask_remove(&mut with_v, v);
        let sub = self.solve(&mut with_v, alpha_res - 1);
        if sub.len() as isize > alpha_res - 1 {
            best = sub;
            best.push(v);
        }

        let floor = alpha_res.max(best.len() as isize);
        let mut without_v = std::mem::take(cands);
        mask_remove(&mut without_v, v);
        let sub = self.solve(&mut without_v, floor);
        if sub.len() as isize > floor {
            best = sub;
        }

        forced.extend(best);
        forced
    }
}

/// Connected components of the candidate-induced subgraph, as masks in
/// ascending order of their lowest vertex.
fn split_components(d: &DisjointnessGraph, cands: &[u64]) -> Vec<Vec<u64>> {
    let mut unseen = cands.to_vec();
    let mut comps = Vec::new();
    loop {
        let start = match mask_iter(&unseen).next() {
            Some(s) => s,
            None => break,
        };
        let mut comp = vec![0u64; unseen.len()];
        comp[start / 64] |= 1 << (start % 64);
        mask_remove(&mut unseen, start);
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            let row = d.row(u);
            for (idx, (m, r)) in unseen.iter_mut().zip(row).enumerate() {
                let fresh = *m & r;
                if fresh != 0 {
                    comp[idx] |= fresh;
                    *m &= !fresh;
                    let mut bits = fresh;
                    while bits != 0 {
                        queue.push(idx * 64 + bits.trailing_zeros() as usize);
                        bits &= bits - 1;
                    }
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// Upper bound on any independent subset of `cands`: the greedy clique
/// cover count, refined by an exact maximum matching when the cover found
/// nothing beyond edges. In that edge-only regime (for uniform families it
/// means three members can never be pairwise disjoint) any matching M
/// certifies the bound `|cands| - |M|`, and the maximum matching makes it
/// as tight as this relaxation gets.
fn upper_bound(d: &DisjointnessGraph, cands: &[u64]) -> usize {
    let (cover, largest_clique) = cover_stats(d, cands);
    if largest_clique <= 2 {
        cover.min(matching_bound(d, cands))
    } else {
        cover
    }
}

/// Greedy clique cover: number of cliques and the largest clique size.
fn cover_stats(d: &DisjointnessGraph, cands: &[u64]) -> (usize, usize) {
    let mut cliques: Vec<(Vec<u64>, usize)> = Vec::new();
    let mut largest = 0;
    for v in mask_iter(cands) {
        let row = d.row(v);
        let home = cliques
            .iter_mut()
            .find(|(members, _)| members.iter().zip(row).all(|(m, adj)| m & !adj == 0));
        match home {
            Some((members, size)) => {
                members[v / 64] |= 1 << (v % 64);
                *size += 1;
                largest = largest.max(*size);
            }
            None => {
                let mut fresh = vec![0u64; d.words.max(1)];
                fresh[v / 64] |= 1 << (v % 64);
                cliques.push((fresh, 1));
                largest = largest.max(1);
            }
        }
    }
    (cliques.len(), largest)
}

/// `|cands| - mu` for a maximum matching of the induced subgraph.
fn matching_bound(d: &DisjointnessGraph, cands: &[u64]) -> usize {
    use petgraph::graph::UnGraph;

    let verts: Vec<usize> = mask_iter(cands).collect();
    let mut graph: UnGraph<(), ()> = UnGraph::with_capacity(verts.len(), 0);
    let nodes: Vec<_> = verts.iter().map(|_| graph.add_node(())).collect();
    for (i, &u) in verts.iter().enumerate() {
        for (word, (m, r)) in cands.iter().zip(d.row(u)).enumerate() {
            let mut bits = m & r;
            while bits != 0 {
                let w = word * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if w > u {
                    let j = verts.binary_search(&w).expect("w is a candidate");
                    graph.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
    }
    let matching = petgraph::algo::matching::maximum_matching(&graph);
    verts.len() - matching.edges().count()
}

/// Greedy clique cover of the candidate set in the disjointness graph,
/// assigning each vertex (ascending) to the first clique it completes.
/// Returns the vertices sorted by their clique index (ties by vertex
/// index) and, per position, the clique count so far: an upper bound on
/// any independent subset of the prefix.
fn clique_cover_order(d: &DisjointnessGraph, cands: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut cliques: Vec<Vec<u64>> = Vec::new();
    let mut assignment: Vec<(usize, usize)> = Vec::new(); // (clique, vertex)
    for v in mask_iter(cands) {
        let row = d.row(v);
        let home = cliques.iter().position(|clique| {
            clique
                .iter()
                .zip(row)
                .all(|(members, adj)| members & !adj == 0)
        });
        let idx = match home {
            Some(idx) => idx,
            None => {
                cliques.push(vec![0u64; d.words.max(1)]);
                cliques.len() - 1
            }
        };
        cliques[idx][v / 64] |= 1 << (v % 64);
        assignment.push((idx, v));
    }
    assignment.sort_unstable();
    let order: Vec<usize> = assignment.iter().map(|&(_, v)| v).collect();
    let numbers: Vec<usize> = assignment.iter().map(|&(c, _)| c + 1).collect();
    (order, numbers)
}

fn solve_canonical(d: &DisjointnessGraph, seed: Vec<usize>) -> (Vec<usize>, u64, u64) {
    let mut search = Search::new(d);
    let mut cands = d.full_mask();
    let sol = search.solve(&mut cands, seed.len() as isize);
    let mut best = if sol.len() > seed.len() { sol } else { seed };
    best.sort_unstable();
    (best, search.nodes, search.bound_hits)
}

fn solve_parallel(d: &DisjointnessGraph, seed: Vec<usize>) -> (Vec<usize>, u64, u64) {
    use rayon::prelude::*;

    let root = d.full_mask();
    let verts: Vec<usize> = mask_iter(&root).collect();
    // Subproblem i: include vertex i, exclude all earlier ones. Together
    // with the seed these cover every independent set.
    let results: Vec<(Vec<usize>, u64, u64)> = verts
        .par_iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut cands = root.clone();
            for &earlier in &verts[..i] {
                mask_remove(&mut cands, earlier);
            }
            for (w, r) in cands.iter_mut().zip(d.row(v)) {
                *w &= !r;
            }
            mask_remove(&mut cands, v);
            let mut search = Search::new(d);
            let mut sol = search.solve(&mut cands, seed.len() as isize - 1);
            sol.push(v);
            (sol, search.nodes, search.bound_hits)
        })
        .collect();

    let mut best = seed;
    let mut nodes = 0;
    let mut bound_hits = 0;
    for (candidate, n, b) in results {
        nodes += n;
        bound_hits += b;
        if candidate.len() > best.len() {
            best = candidate;
        }
    }
    best.sort_unstable();
    (best, nodes, bound_hits)
}

struct ExactEnumeration<'a> {
    d: &'a DisjointnessGraph,
    target: usize,
    cap: usize,
    solutions: Vec<Vec<usize>>,
    truncated: bool,
}

impl ExactEnumeration<'_> {
    /// Collects every independent set of exactly the maximum size, each
    /// once: a branch commits to its vertex as the latest member in the
    /// node's clique-cover order. No reductions here; they do not preserve
    /// the full solution set.
    fn run(&mut self, cands: &mut Vec<u64>, chosen: &mut Vec<usize>) {
        if self.truncated {
            return;
        }
        if chosen.len() == self.target {
            if self.solutions.len() == self.cap {
                self.truncated = true;
                return;
            }
            let mut sol = chosen.clone();
            sol.sort_unstable();
            self.solutions.push(sol);
            return;
        }
        if chosen.len() + popcount(cands) < self.target {
            return;
        }
        let (order, numbers) = clique_cover_order(self.d, cands);
        let mut live = std::mem::take(cands);
        for i in (0..order.len()).rev() {
            if chosen.len() + numbers[i] < self.target {
                return;
            }
            let v = order[i];
            let mut next = live.clone();
            for (m, r) in next.iter_mut().zip(self.d.row(v)) {
                *m &= !r;
            }
            mask_remove(&mut next, v);
            chosen.push(v);
            self.run(&mut next, chosen);
            chosen.pop();
            if self.truncated {
                return;
            }
            mask_remove(&mut live, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{pendant_complete, pendant_path, Graph};
    use crate::vset::VertexSet;

    #[test]
    fn disjointness_graph_examples() {
        // {A, A^c} in P4*, r = 4: 2 nodes, 1 edge.
        let a = VertexSet::from_indices(8, [0, 2, 5, 7]).unwrap();
        let ac = VertexSet::from_indices(8, [1, 3, 4, 6]).unwrap();
        let f = SetFamily::from_sets(8, 4, vec![a, ac]).unwrap();
        let d = DisjointnessGraph::build(&f);
        assert_eq!((d.member_count(), d.edge_count()), (2, 1));

        // A star is edgeless.
        let g = pendant_complete(4).unwrap();
        let star = SetFamily::star(&g, 2, g.pendant_vertex(0).unwrap()).unwrap();
        let d = DisjointnessGraph::build(&star);
        assert_eq!(d.edge_count(), 0);

        // Full I^(4)(P4*): 8 nodes, exactly one edge, matching brute force.
        let g = pendant_path(4).unwrap();
        let f = SetFamily::enumerate_independent(&g, 4);
        let d = DisjointnessGraph::build(&f);
        assert_eq!(d.member_count(), 8);
        let mut brute = 0;
        for i in 0..f.len() {
            for j in (i + 1)..f.len() {
                if f.member(i).is_disjoint(f.member(j)) {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 1);
        assert_eq!(d.edge_count(), 1);
    }

    #[test]
    fn greedy_bound_examples() {
        let g = pendant_complete(4).unwrap();
        let star = SetFamily::star(&g, 2, g.pendant_vertex(0).unwrap()).unwrap();
        let d = DisjointnessGraph::build(&star);
        assert_eq!(greedy_lower_bound(&d), star.len());

        let a = VertexSet::from_indices(4, [0, 1]).unwrap();
        let b = VertexSet::from_indices(4, [2, 3]).unwrap();
        let f = SetFamily::from_sets(4, 2, vec![a, b]).unwrap();
        assert_eq!(greedy_lower_bound(&DisjointnessGraph::build(&f)), 1);
    }

    #[test]
    fn max_intersecting_examples() {
        let cfg = SolverConfig::default();

        let g = pendant_complete(4).unwrap();
        let res = max_intersecting(&g, 2, &cfg).unwrap();
        assert_eq!(res.size, 6);
        assert!(res.certified);
        assert!(res.witness.is_intersecting());
        assert_eq!(res.witness.len(), 6);

        let g = pendant_path(4).unwrap();
        let res = max_intersecting(&g, 4, &cfg).unwrap();
        assert_eq!(res.size, 7);

        // r = 1: distinct singletons are pairwise disjoint.
        for g in [Graph::complete(5).unwrap(), pendant_path(3).unwrap()] {
            assert_eq!(max_intersecting(&g, 1, &cfg).unwrap().size, 1);
        }

        assert!(max_intersecting(&g, 0, &cfg).is_err());
    }

    #[test]
    fn greedy_lower_bound_on_pendant_complete_pairs() {
        // Min-degree greedy lands on a pendant-star member first and
        // reaches the optimum here.
        let g = pendant_complete(4).unwrap();
        let f = SetFamily::enumerate_independent(&g, 2);
        let d = DisjointnessGraph::build(&f);
        let lb = greedy_lower_bound(&d);
        let exact = max_intersecting(&g, 2, &SolverConfig::default())
            .unwrap()
            .size;
        assert!(lb <= exact);
        assert_eq!(exact, 6);
        assert_eq!(lb, 6);
    }

    #[test]
    fn solver_matches_subset_bruteforce_on_small_families() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;

        let cfg = SolverConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _case in 0..40 {
            let universe = rng.random_range(6..=10);
            let r = rng.random_range(2..=3.min(universe / 2));
            let members = rng.random_range(1..=12);
            let mut sets = Vec::new();
            for _ in 0..members {
                let mut s = VertexSet::empty(universe);
                while s.cardinality() < r {
                    s.insert(rng.random_range(0..universe));
                }
                sets.push(s);
            }
            let f = SetFamily::from_sets(universe, r, sets).unwrap();

            // Brute force over all subfamilies.
            let disj: Vec<u32> = (0..f.len())
                .map(|i| {
                    let mut m = 0u32;
                    for j in 0..f.len() {
                        if j != i && f.member(i).is_disjoint(f.member(j)) {
                            m |= 1 << j;
                        }
                    }
                    m
                })
                .collect();
            let mut brute = 0usize;
            for mask in 0u32..1 << f.len() {
                let ok = (0..f.len()).all(|i| mask >> i & 1 == 0 || disj[i] & mask == 0);
                if ok {
                    brute = brute.max(mask.count_ones() as usize);
                }
            }

            let res = max_intersecting_family(&f, &cfg).unwrap();
            assert_eq!(res.size, brute, "family: {}", f.to_json());
            assert!(res.witness.is_intersecting());
            assert!(greedy_lower_bound(&DisjointnessGraph::build(&f)) <= res.size);
            assert!(res.size <= f.len());
        }
    }

    #[test]
    fn pendant_path_eight_high_r() {
        // Matching-bound territory: at r >= 6 on P8*, three members can
        // never be pairwise disjoint, and the exact matching bound closes
        // these instances immediately. Sizes pinned from certified runs.
        let cfg = SolverConfig::default();
        let g = pendant_path(8).unwrap();
        for (r, expected) in [(6usize, 388usize), (7, 252), (8, 54)] {
            let res = max_intersecting(&g, r, &cfg).unwrap();
            assert_eq!(res.size, expected, "r={r}");
            assert!(res.witness.is_intersecting());
        }
    }

    #[test]
    fn pendant_complete_eight_mid_r() {
        // Clique-cover territory: the densest in-range instance.
        let g = pendant_complete(8).unwrap();
        let res = max_intersecting(&g, 4, &SolverConfig::default()).unwrap();
        assert_eq!(res.size, 140);
    }

    #[test]
    fn all_maximum_on_pendant_complete_six() {
        // K6*, r=2: the maximum families are exactly the 6 pendant stars.
        let g = pendant_complete(6).unwrap();
        let out = all_maximum_intersecting(&g, 2, 100, &SolverConfig::default()).unwrap();
        assert_eq!(out.size, 10);
        assert!(!out.truncated);
        let stars: Vec<SetFamily> = (0..6)
            .map(|i| SetFamily::star(&g, 2, g.pendant_vertex(i).unwrap()).unwrap())
            .collect();
        assert_eq!(out.families.len(), 6);
        for fam in &out.families {
            assert!(stars.contains(fam), "non-star maximum family");
        }
    }

    #[test]
    fn all_maximum_unique_when_family_is_intersecting() {
        // I^(2)(P3) = {{0, 2}} is itself intersecting.
        let g = Graph::path(3).unwrap();
        let out = all_maximum_intersecting(&g, 2, 10, &SolverConfig::default()).unwrap();
        assert_eq!(out.size, 1);
        assert_eq!(out.families.len(), 1);
        assert_eq!(out.families[0], SetFamily::enumerate_independent(&g, 2));
    }

    #[test]
    fn all_maximum_pendant_path_endpoints() {
        // P4*, r=4: removing either endpoint of the unique disjointness edge.
        let g = pendant_path(4).unwrap();
        let all = SetFamily::enumerate_independent(&g, 4);
        let out = all_maximum_intersecting(&g, 4, 10, &SolverConfig::default()).unwrap();
        assert_eq!(out.size, 7);
        assert_eq!(out.families.len(), 2);
        let a = VertexSet::from_indices(8, [0, 2, 5, 7]).unwrap();
        let ac = VertexSet::from_indices(8, [1, 3, 4, 6]).unwrap();
        assert!(out.families.contains(&all.without_member(&a)));
        assert!(out.families.contains(&all.without_member(&ac)));
    }

    #[test]
    fn all_maximum_respects_cap() {
        // r = 1 on K5: five maximum singleton families; cap at 3.
        let g = Graph::complete(5).unwrap();
        let out = all_maximum_intersecting(&g, 1, 3, &SolverConfig::default()).unwrap();
        assert_eq!(out.size, 1);
        assert_eq!(out.families.len(), 3);
        assert!(out.truncated);
    }

    #[test]
    fn member_cap_yields_resource_limit_with_bound() {
        let g = pendant_complete(4).unwrap();
        let cfg = SolverConfig {
            member_cap: 5,
            mode: SolverMode::Canonical,
        };
        match max_intersecting(&g, 2, &cfg) {
            Err(Error::ResourceLimit {
                members,
                cap,
                lower_bound,
            }) => {
                assert_eq!(members, 18);
                assert_eq!(cap, 5);
                assert_eq!(lower_bound, 6); // the best star is attainable greedily
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn parallel_mode_agrees_on_size() {
        let canonical = SolverConfig::default();
        let parallel = SolverConfig {
            member_cap: DEFAULT_MEMBER_CAP,
            mode: SolverMode::Parallel,
        };
        for (g, r) in [
            (pendant_complete(5).unwrap(), 2),
            (pendant_path(5).unwrap(), 5),
            (Graph::disjoint_cliques(4, 2).unwrap(), 2),
        ] {
            let a = max_intersecting(&g, r, &canonical).unwrap();
            let b = max_intersecting(&g, r, &parallel).unwrap();
            assert_eq!(a.size, b.size, "{} r={r}", g.name());
            assert!(b.witness.is_intersecting());
            assert_eq!(b.stats.mode, SolverMode::Parallel);
        }
    }

    #[test]
    fn star_dominance_holds() {
        for (g, r) in [
            (pendant_complete(5).unwrap(), 2),
            (pendant_path(5).unwrap(), 3),
            (
                Graph::cycle(6).unwrap().attach_pendants(&[1; 6]).unwrap(),
                3,
            ),
        ] {
            let res = max_intersecting(&g, r, &SolverConfig::default()).unwrap();
            let best_star = (0..g.vertex_count())
                .map(|v| SetFamily::star(&g, r, v).unwrap().len())
                .max()
                .unwrap();
            assert!(res.size >= best_star);
        }
    }

    #[test]
    fn stats_json_shape() {
        let g = pendant_complete(3).unwrap();
        let res = max_intersecting(&g, 2, &SolverConfig::default()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&res.stats_json()).unwrap();
        assert_eq!(json["size"], 4);
        assert_eq!(json["mode"], "canonical");
        assert_eq!(json["certified"], true);
        assert!(json["nodes"].as_u64().is_some());
        assert!(json["millis"].as_u64().is_some());
    }
}
