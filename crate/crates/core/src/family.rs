//! Uniform families of vertex sets: enumeration of independent r-sets,
//! stars, intersecting tests, shadows, and proof-partition helpers.
//!
//! Families are immutable values in canonical order: members sorted
//! lexicographically by ascending vertex index, no duplicates. Every
//! operation returns a fresh family.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// An r-uniform family of distinct vertex sets over a fixed universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    r: usize,
    members: Vec<VertexSet>,
}

impl SetFamily {
    /// The empty r-uniform family.
    pub fn new(universe: usize, r: usize) -> SetFamily {
        SetFamily {
            universe,
            r,
            members: Vec::new(),
        }
    }

    /// Canonicalizes (sorts, dedups) and validates uniformity and universe.
    pub fn from_sets(universe: usize, r: usize, mut sets: Vec<VertexSet>) -> Result<SetFamily> {
        for (i, s) in sets.iter().enumerate() {
            if s.universe() != universe {
                return Err(Error::InvalidParameter(format!(
                    "member {i} has universe {}, family has {universe}",
                    s.universe()
                )));
            }
            if s.cardinality() != r {
                return Err(Error::InvalidParameter(format!(
                    "member {i} has cardinality {}, family is {r}-uniform",
                    s.cardinality()
                )));
            }
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(SetFamily {
            universe,
            r,
            members: sets,
        })
    }

    // Members must already be sorted, distinct, r-uniform.
    fn from_sorted(universe: usize, r: usize, members: Vec<VertexSet>) -> SetFamily {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.cardinality() == r));
        SetFamily {
            universe,
            r,
            members,
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// The uniform cardinality r.
    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &VertexSet {
        &self.members[i]
    }

    /// Binary search over the canonical order.
    pub fn contains(&self, set: &VertexSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.members.iter()
    }

    /// Subfamily selected by member indices.
    pub fn sub_family(&self, indices: &[usize]) -> SetFamily {
        let sets: Vec<VertexSet> = indices.iter().map(|&i| self.members[i].clone()).collect();
        SetFamily::from_sets(self.universe, self.r, sets).expect("members are uniform")
    }

    /// Family with one member removed (no-op when absent).
    pub fn without_member(&self, set: &VertexSet) -> SetFamily {
        let members: Vec<VertexSet> = self.members.iter().filter(|m| *m != set).cloned().collect();
        SetFamily::from_sorted(self.universe, self.r, members)
    }

    /// How many members contain each vertex; index = vertex.
    pub fn vertex_membership_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.universe];
        for m in &self.members {
            for v in m.iter() {
                counts[v] += 1;
            }
        }
        counts
    }

    /// All independent r-subsets of `g`, canonically ordered.
    /// `r = 0` yields the family `{∅}`.
    pub fn enumerate_independent(g: &Graph, r: usize) -> SetFamily {
        let n = g.vertex_count();
        let mut members = Vec::new();
        if r <= n {
            let mut current = VertexSet::empty(n);
            enumerate_rec(g, 0, r, &mut current, &mut members);
        }
        SetFamily::from_sorted(n, r, members)
    }

    /// The r-star centered at `v`: all independent r-sets containing `v`.
    pub fn star(g: &Graph, r: usize, v: usize) -> Result<SetFamily> {
        let n = g.vertex_count();
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                universe: n,
            });
        }
        let all = SetFamily::enumerate_independent(g, r);
        let members: Vec<VertexSet> = all.members.into_iter().filter(|m| m.contains(v)).collect();
        Ok(SetFamily::from_sorted(n, r, members))
    }

    /// Some disjoint pair of members (by index), or `None` when intersecting.
    pub fn disjoint_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.members.len() {
            for j in (i + 1)..self.members.len() {
                if self.members[i].is_disjoint(&self.members[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True iff every two members share a vertex.
    pub fn is_intersecting(&self) -> bool {
        self.disjoint_pair().is_none()
    }

    /// The s-shadow: all s-sets contained in at least one member.
    /// The 0-shadow of a nonempty family is `{∅}`.
    pub fn shadow(&self, s: usize) -> Result<SetFamily> {
        if s > self.r {
            return Err(Error::InvalidParameter(format!(
                "shadow level {s} exceeds member size {}",
                self.r
            )));
        }
        let mut out: BTreeSet<VertexSet> = BTreeSet::new();
        let mut scratch = Vec::with_capacity(s);
        for m in &self.members {
            let indices = m.to_vec();
            subsets_rec(&indices, 0, s, &mut scratch, &mut |subset| {
                out.insert(
                    VertexSet::from_indices(self.universe, subset.iter().copied())
                        .expect("indices come from a member"),
                );
            });
        }
        Ok(SetFamily::from_sorted(
            self.universe,
            s,
            out.into_iter().collect(),
        ))
    }

    /// Minimum of `|A ∩ B|` over distinct member pairs.
    pub fn min_pairwise_intersection(&self) -> Result<usize> {
        if self.members.len() < 2 {
            return Err(Error::UndefinedStatistic(format!(
                "min pairwise intersection needs >= 2 members, family has {}",
                self.members.len()
            )));
        }
        let mut min = usize::MAX;
        for i in 0..self.members.len() {
            for j in (i + 1)..self.members.len() {
                min = min.min(self.members[i].intersection_size(&self.members[j]));
                if min == 0 {
                    return Ok(0);
                }
            }
        }
        Ok(min)
    }

    /// `{ground ∖ X : X ∈ self}`; every member must be a subset of `ground`.
    pub fn complement_in(&self, ground: &VertexSet) -> Result<SetFamily> {
        if ground.universe() != self.universe {
            return Err(Error::InvalidParameter(format!(
                "ground universe {} differs from family universe {}",
                ground.universe(),
                self.universe
            )));
        }
        let mut out = Vec::with_capacity(self.members.len());
        for (i, m) in self.members.iter().enumerate() {
            if !m.is_subset_of(ground) {
                return Err(Error::InvalidGround { member_index: i });
            }
            out.push(ground.difference(m));
        }
        let r = ground.cardinality() - self.r;
        SetFamily::from_sets(self.universe, r, out)
    }

    /// Serializes to the interchange JSON
    /// `{"universe": n, "r": r, "members": [[i, j, ...], ...]}`.
    pub fn to_json(&self) -> String {
        let repr = FamilyJson {
            universe: self.universe,
            r: self.r,
            members: self.members.iter().map(|m| m.to_vec()).collect(),
        };
        serde_json::to_string(&repr).expect("family serialization cannot fail")
    }

    /// Parses and canonicalizes the interchange JSON.
    pub fn from_json(text: &str) -> Result<SetFamily> {
        let repr: FamilyJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut sets = Vec::with_capacity(repr.members.len());
        for indices in &repr.members {
            sets.push(VertexSet::from_indices(
                repr.universe,
                indices.iter().copied(),
            )?);
        }
        SetFamily::from_sets(repr.universe, repr.r, sets)
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    universe: usize,
    r: usize,
    members: Vec<Vec<usize>>,
}

fn enumerate_rec(
    g: &Graph,
    start: usize,
    need: usize,
    current: &mut VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if need == 0 {
        out.push(current.clone());
        return;
    }
    let n = g.vertex_count();
    // v can still lead to a full set only if enough vertices remain.
    for v in start..=(n - need) {
        if g.neighbors(v).is_disjoint(current) {
            current.insert(v);
            enumerate_rec(g, v + 1, need - 1, current, out);
            current.remove(v);
        }
    }
}

fn subsets_rec(
    indices: &[usize],
    start: usize,
    need: usize,
    scratch: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if need == 0 {
        emit(scratch);
        return;
    }
    for i in start..indices.len() {
        if indices.len() - i < need {
            break;
        }
        scratch.push(indices[i]);
        subsets_rec(indices, i + 1, need - 1, scratch, emit);
        scratch.pop();
    }
}

/// The partition of a family over a complete-base pendant graph:
/// members avoiding all base vertices, members with exactly one,
/// and the latter with their base vertex deleted.
#[derive(Clone, Debug)]
pub struct BasePartition {
    pub a0: SetFamily,
    pub a1: SetFamily,
    /// `a1` members with the unique base vertex removed, deduplicated.
    /// The raw (pre-dedup) count is `a1.len()`.
    pub a1_reduced: SetFamily,
}

/// Splits `f` by base-vertex content. Errors with `NotApplicable` if any
/// member carries two or more base vertices (the base is not complete).
pub fn partition_by_base(f: &SetFamily, g: &Graph) -> Result<BasePartition> {
    if f.universe() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "family universe {} differs from graph order {}",
            f.universe(),
            g.vertex_count()
        )));
    }
    let bases = g.base_set();
    let mut a0 = Vec::new();
    let mut a1 = Vec::new();
    let mut reduced = Vec::new();
    for m in f.iter() {
        match m.intersection_size(&bases) {
            0 => a0.push(m.clone()),
            1 => {
                let base_vertex = m
                    .intersection(&bases)
                    .first()
                    .expect("intersection size is 1");
                a1.push(m.clone());
                reduced.push(m.without(base_vertex));
            }
            k => {
                return Err(Error::NotApplicable(format!(
                    "member {m} has {k} base vertices; base is not complete"
                )))
            }
        }
    }
    let r = f.r();
    Ok(BasePartition {
        a0: SetFamily::from_sets(f.universe(), r, a0)?,
        a1: SetFamily::from_sets(f.universe(), r, a1)?,
        a1_reduced: SetFamily::from_sets(f.universe(), r.saturating_sub(1), reduced)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{pendant_complete, pendant_path, Graph};

    /// Independence polynomial coefficients by set size, computed with the
    /// deletion recursion I(G) = I(G - v) + x * I(G - N[v]). Test oracle,
    /// independent of the enumeration path.
    fn independence_poly(g: &Graph) -> Vec<u64> {
        fn rec(g: &Graph, cand: &VertexSet) -> Vec<u64> {
            match cand.first() {
                None => vec![1],
                Some(v) => {
                    let skip = rec(g, &cand.without(v));
                    let mut reduced = cand.difference(g.neighbors(v));
                    reduced.remove(v);
                    let take = rec(g, &reduced);
                    let mut out = vec![0u64; skip.len().max(take.len() + 1)];
                    for (i, c) in skip.iter().enumerate() {
                        out[i] += c;
                    }
                    for (i, c) in take.iter().enumerate() {
                        out[i + 1] += c;
                    }
                    out
                }
            }
        }
        rec(g, &VertexSet::full(g.vertex_count()))
    }

    #[test]
    fn enumerate_matches_independence_polynomial() {
        let graphs = vec![
            Graph::complete(5).unwrap(),
            Graph::path(7).unwrap(),
            Graph::cycle(6).unwrap(),
            pendant_complete(5).unwrap(),
            pendant_path(5).unwrap(),
            Graph::disjoint_cliques(4, 3).unwrap(),
            Graph::complete(3)
                .unwrap()
                .attach_pendants(&[1, 2, 3])
                .unwrap(),
            Graph::path(4).unwrap().power(2).unwrap(),
        ];
        for g in graphs {
            assert!(g.vertex_count() <= 14);
            let poly = independence_poly(&g);
            for r in 0..=g.vertex_count() {
                let expected = poly.get(r).copied().unwrap_or(0);
                let family = SetFamily::enumerate_independent(&g, r);
                assert_eq!(
                    family.len() as u64,
                    expected,
                    "coefficient mismatch for {} at r={r}",
                    g.name()
                );
            }
        }
    }

    #[test]
    fn enumerate_clique_has_no_independent_pair() {
        let g = Graph::complete(3).unwrap();
        assert!(SetFamily::enumerate_independent(&g, 2).is_empty());
    }

    #[test]
    fn enumerate_pendant_complete_pairs() {
        // 6 pendant pairs + 12 base-pendant pairs; cross-checked by brute
        // force over all C(8,2) = 28 pairs.
        let g = pendant_complete(4).unwrap();
        let family = SetFamily::enumerate_independent(&g, 2);
        assert_eq!(family.len(), 18);
        let mut brute = 0;
        for u in 0..8 {
            for v in (u + 1)..8 {
                if !g.is_edge(u, v) {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 18);
    }

    /// Counts subsets of {0..n-1} with no two consecutive elements; each
    /// such subset is the base-index set of one independent n-set of Pn*.
    fn no_two_consecutive_count(n: usize) -> u64 {
        // f(i) = subsets of the first i indices; transfer recursion.
        let (mut prev, mut cur) = (1u64, 1u64); // f(-1)=f(0)=1
        for _ in 0..n {
            let next = cur + prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn enumerate_pendant_path_transversals() {
        for n in 1..=8 {
            let g = pendant_path(n).unwrap();
            let family = SetFamily::enumerate_independent(&g, n);
            assert_eq!(family.len() as u64, no_two_consecutive_count(n), "n={n}");
        }
        // P4* has 8 independent 4-sets.
        let g = pendant_path(4).unwrap();
        assert_eq!(SetFamily::enumerate_independent(&g, 4).len(), 8);
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let g = pendant_complete(3).unwrap();
        let family = SetFamily::enumerate_independent(&g, 2);
        for w in family.members().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn star_examples() {
        // |star(K4*, 2, p1)| = 6 = r * C(n-1, r-1).
        let g = pendant_complete(4).unwrap();
        let p1 = g.pendant_vertex(0).unwrap();
        let star = SetFamily::star(&g, 2, p1).unwrap();
        assert_eq!(star.len(), 6);
        assert!(star.iter().all(|m| m.contains(p1)));
        assert!(star.is_intersecting());

        // Isolated vertex, r = 1: the single set {v}.
        let lone = Graph::from_edges("iso", 2, &[]).unwrap();
        let star = SetFamily::star(&lone, 1, 1).unwrap();
        assert_eq!(star.len(), 1);
        assert_eq!(star.member(0).to_vec(), vec![1]);

        // |star(P4*, 4, p2)| = 6: the 8 transversals minus the two whose
        // base-index set contains 2.
        let g = pendant_path(4).unwrap();
        let p2 = g.pendant_vertex(1).unwrap();
        let star = SetFamily::star(&g, 4, p2).unwrap();
        assert_eq!(star.len(), 6);

        assert!(SetFamily::star(&g, 2, 99).is_err());
    }

    #[test]
    fn intersecting_and_witness() {
        let g = pendant_path(4).unwrap();
        let all = SetFamily::enumerate_independent(&g, 4);
        // A = {x1, x3, p2, p4} and its pairwise complement are disjoint.
        let a = VertexSet::from_indices(8, [0, 2, 5, 7]).unwrap();
        let ac = VertexSet::from_indices(8, [1, 3, 4, 6]).unwrap();
        assert!(all.contains(&a) && all.contains(&ac));
        let pair = SetFamily::from_sets(8, 4, vec![a.clone(), ac.clone()]).unwrap();
        let (i, j) = pair.disjoint_pair().unwrap();
        assert!(pair.member(i).is_disjoint(pair.member(j)));

        let singleton = SetFamily::from_sets(8, 4, vec![a]).unwrap();
        assert!(singleton.is_intersecting());
    }

    #[test]
    fn shadow_examples() {
        let tri = SetFamily::from_sets(5, 3, vec![VertexSet::from_indices(5, [0, 1, 2]).unwrap()])
            .unwrap();
        let sh = tri.shadow(2).unwrap();
        assert_eq!(sh.len(), 3);

        // All 3-subsets of a 4-element universe shadow to all 6 pairs.
        let mut sets = Vec::new();
        for a in 0..4 {
            for b in (a + 1)..4 {
                for c in (b + 1)..4 {
                    sets.push(VertexSet::from_indices(4, [a, b, c]).unwrap());
                }
            }
        }
        let f = SetFamily::from_sets(4, 3, sets).unwrap();
        assert_eq!(f.shadow(2).unwrap().len(), 6);

        // 0-shadow of a nonempty family is {∅}.
        let zero = tri.shadow(0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero.member(0).cardinality(), 0);

        // Shadow of the empty family is empty.
        assert!(SetFamily::new(4, 3).shadow(1).unwrap().is_empty());
        assert!(tri.shadow(4).is_err());
    }

    #[test]
    fn shadow_monotone_under_subfamilies() {
        let g = pendant_complete(4).unwrap();
        let f = SetFamily::enumerate_independent(&g, 3);
        let smaller = f.sub_family(&(0..f.len() / 2).collect::<Vec<_>>());
        for s in 0..=3 {
            let small = smaller.shadow(s).unwrap();
            let big = f.shadow(s).unwrap();
            assert!(small.iter().all(|m| big.contains(m)), "level {s}");
        }
    }

    #[test]
    fn min_pairwise_intersection_examples() {
        let f = SetFamily::from_sets(
            6,
            3,
            vec![
                VertexSet::from_indices(6, [0, 1, 2]).unwrap(),
                VertexSet::from_indices(6, [0, 1, 3]).unwrap(),
                VertexSet::from_indices(6, [0, 1, 4]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(f.min_pairwise_intersection().unwrap(), 2);

        let g = pendant_complete(4).unwrap();
        let p1 = g.pendant_vertex(0).unwrap();
        let star = SetFamily::star(&g, 2, p1).unwrap();
        assert_eq!(star.min_pairwise_intersection().unwrap(), 1);

        let single =
            SetFamily::from_sets(6, 3, vec![VertexSet::from_indices(6, [0, 1, 2]).unwrap()])
                .unwrap();
        assert!(matches!(
            single.min_pairwise_intersection(),
            Err(Error::UndefinedStatistic(_))
        ));
    }

    #[test]
    fn complement_in_is_an_involution() {
        let ground = VertexSet::from_indices(8, [1, 2, 3, 4, 5]).unwrap();
        let f = SetFamily::from_sets(8, 1, vec![VertexSet::from_indices(8, [2]).unwrap()]).unwrap();
        let comp = f.complement_in(&ground).unwrap();
        assert_eq!(comp.r(), 4);
        assert_eq!(comp.member(0).to_vec(), vec![1, 3, 4, 5]);
        assert_eq!(comp.len(), f.len());
        let back = comp.complement_in(&ground).unwrap();
        assert_eq!(back, f);

        let outside =
            SetFamily::from_sets(8, 1, vec![VertexSet::from_indices(8, [7]).unwrap()]).unwrap();
        assert!(matches!(
            outside.complement_in(&ground),
            Err(Error::InvalidGround { member_index: 0 })
        ));
    }

    #[test]
    fn partition_by_base_example() {
        let g = pendant_complete(4).unwrap();
        let p = |i: usize| g.pendant_vertex(i).unwrap();
        let f = SetFamily::from_sets(
            8,
            2,
            vec![
                VertexSet::from_indices(8, [0, p(1)]).unwrap(),
                VertexSet::from_indices(8, [p(1), p(2)]).unwrap(),
            ],
        )
        .unwrap();
        let part = partition_by_base(&f, &g).unwrap();
        assert_eq!(part.a0.len(), 1);
        assert_eq!(part.a1.len(), 1);
        assert_eq!(part.a1_reduced.len(), 1);
        assert_eq!(part.a1_reduced.member(0).to_vec(), vec![p(1)]);
        assert_eq!(part.a0.len() + part.a1.len(), f.len());

        // All-pendant family: a1 empty. Empty family: all empty.
        let pendants = SetFamily::from_sets(
            8,
            2,
            vec![VertexSet::from_indices(8, [p(0), p(3)]).unwrap()],
        )
        .unwrap();
        let part = partition_by_base(&pendants, &g).unwrap();
        assert!(part.a1.is_empty() && part.a1_reduced.is_empty());

        let part = partition_by_base(&SetFamily::new(8, 2), &g).unwrap();
        assert!(part.a0.is_empty() && part.a1.is_empty() && part.a1_reduced.is_empty());
    }

    #[test]
    fn partition_by_base_rejects_two_base_vertices() {
        // Pendant path: bases 0 and 2 are nonadjacent, so {x1, x3} is
        // independent but carries two base vertices.
        let g = pendant_path(3).unwrap();
        let f =
            SetFamily::from_sets(6, 2, vec![VertexSet::from_indices(6, [0, 2]).unwrap()]).unwrap();
        assert!(matches!(
            partition_by_base(&f, &g),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn partition_reduced_collapses_duplicates() {
        let g = pendant_complete(4).unwrap();
        let p = |i: usize| g.pendant_vertex(i).unwrap();
        // Two a1 members share the reduced form {p3}.
        let f = SetFamily::from_sets(
            8,
            2,
            vec![
                VertexSet::from_indices(8, [0, p(2)]).unwrap(),
                VertexSet::from_indices(8, [1, p(2)]).unwrap(),
            ],
        )
        .unwrap();
        let part = partition_by_base(&f, &g).unwrap();
        assert_eq!(part.a1.len(), 2);
        assert_eq!(part.a1_reduced.len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let g = pendant_complete(3).unwrap();
        let f = SetFamily::enumerate_independent(&g, 2);
        let json = f.to_json();
        assert!(json.starts_with(r#"{"universe":6,"r":2,"members":[["#));
        let back = SetFamily::from_json(&json).unwrap();
        assert_eq!(back, f);

        // Non-canonical input is canonicalized on read.
        let shuffled = r#"{"universe":4,"r":2,"members":[[3,1],[0,2],[1,3]]}"#;
        let f = SetFamily::from_json(shuffled).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.member(0).to_vec(), vec![0, 2]);

        assert!(SetFamily::from_json(r#"{"universe":4,"r":2,"members":[[0]]}"#).is_err());
        assert!(SetFamily::from_json(r#"{"universe":4,"r":1,"members":[[9]]}"#).is_err());
    }

    #[test]
    fn membership_counts_track_stars() {
        let g = pendant_complete(4).unwrap();
        let f = SetFamily::enumerate_independent(&g, 2);
        let counts = f.vertex_membership_counts();
        for (v, &count) in counts.iter().enumerate() {
            assert_eq!(count, SetFamily::star(&g, 2, v).unwrap().len());
        }
    }
}
