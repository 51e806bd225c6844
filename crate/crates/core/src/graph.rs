//! Graph construction: base families, pendant-clique attachment, graph powers.
//!
//! Canonical vertex indexing, relied on by every other module and by all
//! machine-readable output: base vertices occupy indices `0..n-1` in base
//! order; the pendant clique attached to base `i` occupies the contiguous
//! block starting at `n + s_0 + … + s_{i-1}`, clique position `t` (1-based)
//! at offset `t-1`. In particular, for the all-ones sequence the single
//! pendant of base `i` has index `n + i`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Hard cap on the vertex universe; bitsets are sized to the universe.
pub const MAX_VERTICES: usize = 512;

/// What a vertex is in the construction that produced the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    /// Base vertex with 0-based base index `index`.
    Base { index: usize },
    /// Member of the pendant clique attached to base `base` (0-based),
    /// at 1-based clique position `position`.
    Pendant { base: usize, position: usize },
}

impl VertexRole {
    pub fn is_base(&self) -> bool {
        matches!(self, VertexRole::Base { .. })
    }
}

/// A finite simple graph with per-vertex adjacency bitsets and roles.
#[derive(Clone, Debug)]
pub struct Graph {
    name: String,
    adjacency: Vec<VertexSet>,
    roles: Vec<VertexRole>,
}

impl Graph {
    fn with_vertices(name: impl Into<String>, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                requested: n,
                cap: MAX_VERTICES,
            });
        }
        Ok(Graph {
            name: name.into(),
            adjacency: vec![VertexSet::empty(n); n],
            roles: (0..n).map(|i| VertexRole::Base { index: i }).collect(),
        })
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v, "self-loop");
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::with_vertices(format!("K{n}"), n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Path `v_1 … v_n` with `n-1` edges.
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::with_vertices(format!("P{n}"), n)?;
        for u in 0..n.saturating_sub(1) {
            g.add_edge(u, u + 1);
        }
        Ok(g)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut g = Graph::with_vertices(format!("C{n}"), n)?;
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        Ok(g)
    }

    /// Disjoint union of `n` copies of `K_m`; vertices of copy `i` are
    /// `i*m .. (i+1)*m`.
    pub fn disjoint_cliques(n: usize, m: usize) -> Result<Graph> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!(
                "disjoint cliques need n >= 1 and m >= 1, got n={n}, m={m}"
            )));
        }
        let total = n.checked_mul(m).ok_or(Error::TooManyVertices {
            requested: usize::MAX,
            cap: MAX_VERTICES,
        })?;
        let mut g = Graph::with_vertices(format!("{n}K{m}"), total)?;
        for c in 0..n {
            for a in 0..m {
                for b in (a + 1)..m {
                    g.add_edge(c * m + a, c * m + b);
                }
            }
        }
        Ok(g)
    }

    /// Arbitrary simple graph from an explicit edge list on `0..n`.
    pub fn from_edges(
        name: impl Into<String>,
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<Graph> {
        let mut g = Graph::with_vertices(name, n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    universe: n,
                });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// `k`-th power: same vertices, `u ~ w` iff `0 < dist(u, w) <= k`.
    /// Distances come from a breadth-first search per vertex.
    pub fn power(&self, k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "power exponent must be >= 1".into(),
            ));
        }
        let n = self.vertex_count();
        let mut out = Graph {
            name: format!("{}^{k}", self.name),
            adjacency: vec![VertexSet::empty(n); n],
            roles: self.roles.clone(),
        };
        for src in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                if dist[u] == k {
                    continue;
                }
                for w in self.adjacency[u].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (w, &d) in dist.iter().enumerate() {
                if w != src && d <= k {
                    out.adjacency[src].insert(w);
                }
            }
        }
        Ok(out)
    }

    /// Attaches a clique `K_{s_i}` to each vertex `v_i`, per the canonical
    /// indexing above. All original vertices become `Base`; clique members
    /// are adjacent to `v_i`, to each other, and to nothing else.
    pub fn attach_pendants(&self, s: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        if s.len() != n {
            return Err(Error::InvalidParameter(format!(
                "clique-size sequence has length {}, graph has {n} vertices",
                s.len()
            )));
        }
        if let Some(i) = s.iter().position(|&si| si == 0) {
            return Err(Error::InvalidParameter(format!(
                "clique size s_{} must be >= 1",
                i + 1
            )));
        }
        let total = n + s.iter().sum::<usize>();
        if total > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                requested: total,
                cap: MAX_VERTICES,
            });
        }
        let mut adjacency = vec![VertexSet::empty(total); n];
        // Re-embed the base adjacency in the larger universe.
        for (u, row) in self.adjacency.iter().enumerate() {
            for w in row.iter() {
                adjacency[u].insert(w);
            }
        }
        let mut roles: Vec<VertexRole> = (0..n).map(|i| VertexRole::Base { index: i }).collect();
        adjacency.extend(std::iter::repeat_with(|| VertexSet::empty(total)).take(total - n));
        let mut next = n;
        for (i, &si) in s.iter().enumerate() {
            let block = next..next + si;
            for (off, v) in block.clone().enumerate() {
                roles.push(VertexRole::Pendant {
                    base: i,
                    position: off + 1,
                });
                adjacency[i].insert(v);
                adjacency[v].insert(i);
                for w in block.clone() {
                    if w != v {
                        adjacency[v].insert(w);
                    }
                }
            }
            next += si;
        }
        let name = pendant_name(&self.name, s);
        Ok(Graph {
            name,
            adjacency,
            roles,
        })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|row| row.cardinality())
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].cardinality()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn roles(&self) -> &[VertexRole] {
        &self.roles
    }

    pub fn role(&self, v: usize) -> VertexRole {
        self.roles[v]
    }

    /// Builds a graph directly from adjacency rows and roles (used by the
    /// DIMACS reader). Rows must already be symmetric and irreflexive.
    pub(crate) fn from_parts(
        name: String,
        adjacency: Vec<VertexSet>,
        roles: Vec<VertexRole>,
    ) -> Result<Graph> {
        if adjacency.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if adjacency.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                requested: adjacency.len(),
                cap: MAX_VERTICES,
            });
        }
        if roles.len() != adjacency.len() {
            return Err(Error::InvalidParameter(format!(
                "{} roles for {} vertices",
                roles.len(),
                adjacency.len()
            )));
        }
        for (v, row) in adjacency.iter().enumerate() {
            if row.contains(v) {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {v}")));
            }
            for w in row.iter() {
                if !adjacency[w].contains(v) {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency not symmetric at ({v}, {w})"
                    )));
                }
            }
        }
        Ok(Graph {
            name,
            adjacency,
            roles,
        })
    }

    /// Number of base vertices.
    pub fn base_count(&self) -> usize {
        self.roles.iter().filter(|r| r.is_base()).count()
    }

    /// All base vertices as a set.
    pub fn base_set(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.vertex_count());
        for (v, role) in self.roles.iter().enumerate() {
            if role.is_base() {
                s.insert(v);
            }
        }
        s
    }

    /// Vertex index of the base vertex with base index `i`, if present.
    pub fn base_vertex(&self, i: usize) -> Option<usize> {
        self.roles
            .iter()
            .position(|r| matches!(r, VertexRole::Base { index } if *index == i))
    }

    /// Vertex indices of the pendant clique attached to base `i`,
    /// in clique-position order.
    pub fn pendant_clique(&self, i: usize) -> Vec<usize> {
        let mut members: Vec<(usize, usize)> = self
            .roles
            .iter()
            .enumerate()
            .filter_map(|(v, r)| match r {
                VertexRole::Pendant { base, position } if *base == i => Some((*position, v)),
                _ => None,
            })
            .collect();
        members.sort_unstable();
        members.into_iter().map(|(_, v)| v).collect()
    }

    /// Size of the pendant clique at base `i` (0 when none).
    pub fn clique_size(&self, i: usize) -> usize {
        self.roles
            .iter()
            .filter(|r| matches!(r, VertexRole::Pendant { base, .. } if *base == i))
            .count()
    }

    /// For a base with a singleton clique, the unique pendant vertex `p_i`.
    pub fn pendant_vertex(&self, i: usize) -> Option<usize> {
        let clique = self.pendant_clique(i);
        (clique.len() == 1).then(|| clique[0])
    }

    /// Human-readable label for a vertex: `v3` for bases, `p3` for a
    /// singleton-clique pendant, `p3_2` for clique position 2.
    pub fn vertex_label(&self, v: usize) -> String {
        match self.roles[v] {
            VertexRole::Base { index } => format!("v{}", index + 1),
            VertexRole::Pendant { base, position } => {
                if self.clique_size(base) == 1 {
                    format!("p{}", base + 1)
                } else {
                    format!("p{}_{}", base + 1, position)
                }
            }
        }
    }

    /// Exact independence number via branch-and-bound over vertex bitsets.
    pub fn independence_number(&self) -> usize {
        let mut best = 0;
        let cand = VertexSet::full(self.vertex_count());
        self.alpha_rec(&cand, 0, &mut best);
        best
    }

    fn alpha_rec(&self, cand: &VertexSet, size: usize, best: &mut usize) {
        if size + cand.cardinality() <= *best {
            return;
        }
        match cand.first() {
            None => *best = (*best).max(size),
            Some(v) => {
                // include v
                let mut taken = cand.difference(&self.adjacency[v]);
                taken.remove(v);
                self.alpha_rec(&taken, size + 1, best);
                // exclude v
                self.alpha_rec(&cand.without(v), size, best);
            }
        }
    }
}

fn pendant_name(base: &str, s: &[usize]) -> String {
    if s.iter().all(|&si| si == 1) {
        format!("{base}*")
    } else if let Some(&m) = s.first().filter(|_| s.iter().all(|&si| si == s[0])) {
        format!("{base}^{m}")
    } else {
        let parts: Vec<String> = s.iter().map(|si| si.to_string()).collect();
        format!("{base}^({})", parts.join(","))
    }
}

/// Base graph descriptor for [`PendantSpec`] and the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    DisjointCliques {
        n: usize,
        m: usize,
    },
    Power {
        base: Box<BaseKind>,
        k: usize,
    },
    Explicit {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl BaseKind {
    pub fn build(&self) -> Result<Graph> {
        match self {
            BaseKind::Complete(n) => Graph::complete(*n),
            BaseKind::Path(n) => Graph::path(*n),
            BaseKind::Cycle(n) => Graph::cycle(*n),
            BaseKind::DisjointCliques { n, m } => Graph::disjoint_cliques(*n, *m),
            BaseKind::Power { base, k } => base.build()?.power(*k),
            BaseKind::Explicit { n, edges } => Graph::from_edges("G", *n, edges),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            BaseKind::Complete(n) | BaseKind::Path(n) | BaseKind::Cycle(n) => *n,
            BaseKind::DisjointCliques { n, m } => n * m,
            BaseKind::Power { base, .. } => base.vertex_count(),
            BaseKind::Explicit { n, .. } => *n,
        }
    }
}

/// A base graph plus a clique-size sequence; builds the generalized
/// pendant graph over that base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantSpec {
    pub base: BaseKind,
    pub s: Vec<usize>,
}

impl PendantSpec {
    /// All-ones sequence: one pendant vertex per base vertex.
    pub fn star(base: BaseKind) -> PendantSpec {
        let n = base.vertex_count();
        PendantSpec {
            base,
            s: vec![1; n],
        }
    }

    /// Constant sequence `m`.
    pub fn uniform(base: BaseKind, m: usize) -> PendantSpec {
        let n = base.vertex_count();
        PendantSpec {
            base,
            s: vec![m; n],
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.base.build()?.attach_pendants(&self.s)
    }
}

/// Convenience builders for the families the rest of the crate talks about.
pub fn pendant_complete(n: usize) -> Result<Graph> {
    Graph::complete(n)?.attach_pendants(&vec![1; n])
}

pub fn pendant_path(n: usize) -> Result<Graph> {
    Graph::path(n)?.attach_pendants(&vec![1; n])
}

pub fn pendant_cycle(n: usize) -> Result<Graph> {
    Graph::cycle(n)?.attach_pendants(&vec![1; n])
}

/// `K_n^m`: complete base, uniform clique size `m`.
pub fn pendant_complete_uniform(n: usize, m: usize) -> Result<Graph> {
    Graph::complete(n)?.attach_pendants(&vec![m; n])
}

/// `K_n^s`: complete base, general clique sizes.
pub fn pendant_complete_general(s: &[usize]) -> Result<Graph> {
    Graph::complete(s.len())?.attach_pendants(s)
}
