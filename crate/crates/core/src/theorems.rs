//! Closed-form star sizes, classical bounds, explicit witness sets for the
//! pendant-path counterexamples, and the EKR verdict combining formulas with
//! the exact solver.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::{pendant_path, Graph};
use crate::solver::{all_maximum_intersecting_family, max_intersecting_family, SolverConfig};
use crate::vset::VertexSet;

// ============================================================================
// Exact counting formulas
// ============================================================================

/// Exact binomial coefficient; 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

fn power(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Star size in the pendant complete graph on `n` bases:
/// `r * C(n-1, r-1)`. Values above `n` for `r` give 0.
pub fn star_size_pendant_complete(n: u64, r: u64) -> Result<BigUint> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    Ok(BigUint::from(r) * binomial(n - 1, r - 1))
}

/// Star size in the uniform generalized pendant complete graph `K_n^m`,
/// computed as the two-term sum
/// `m^(r-1) C(n-1, r-1) + (n-1) m^(r-2) C(n-2, r-2)`
/// with the second term dropped at `r = 1`; equal to
/// `m^(r-2) (m + r - 1) C(n-1, r-1)` for `r >= 2`.
pub fn star_size_uniform(n: u64, m: u64, r: u64) -> Result<BigUint> {
    if n == 0 || m == 0 || r == 0 {
        return Err(Error::InvalidParameter(
            "need n >= 1, m >= 1 and r >= 1".into(),
        ));
    }
    let mut total = power(m, r - 1) * binomial(n - 1, r - 1);
    if r >= 2 && n >= 2 {
        total += BigUint::from(n - 1) * power(m, r - 2) * binomial(n - 2, r - 2);
    }
    Ok(total)
}

/// Maximum intersecting family of independent r-sets in `n
/// K_m` (disjoint cliques), `m >= 2`: `m^(r-1) C(n-1, r-1)`.
pub fn bollobas_leader_bound(n: u64, m: u64, r: u64) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "disjoint-clique bound needs m >= 2, got {m}"
        )));
    }
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and r >= 1".into()));
    }
    Ok(power(m, r - 1) * binomial(n - 1, r - 1))
}

/// Classical intersecting-family bound `C(n-1, r-1)`, asserted for `n >= 2r`.
pub fn ekr_bound_classical(n: u64, r: u64) -> Result<BigUint> {
    if r == 0 || n < 2 * r {
        return Err(Error::InvalidParameter(format!(
            "classical bound needs 1 <= r and n >= 2r, got n={n}, r={r}"
        )));
    }
    Ok(binomial(n - 1, r - 1))
}

// ============================================================================
// Star size for general clique sequences
// ============================================================================

/// Star size in `K_n^s` for an arbitrary clique-size sequence, centered at a
/// pendant vertex of a minimum-size clique.
///
/// Computed by the presence/absence recursion over a fixed vertex of the
/// largest non-center clique: removing the vertex shrinks its clique (a
/// clique shrunk to nothing leaves its bare base vertex behind), keeping it
/// deletes that clique and its base wholesale and costs one unit of r.
/// Terminals: r = 1; a uniform sequence with no bare bases (closed form);
/// a lone center clique.
pub fn star_size_general(s: &[u64], r: u64) -> Result<BigUint> {
    if s.is_empty() {
        return Err(Error::InvalidParameter("clique sequence is empty".into()));
    }
    if let Some(i) = s.iter().position(|&si| si == 0) {
        return Err(Error::InvalidParameter(format!(
            "clique size s_{} must be >= 1",
            i + 1
        )));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    if r > s.len() as u64 {
        return Ok(BigUint::zero());
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let center = sorted[0];
    let rest = sorted[1..].to_vec();
    let mut memo = HashMap::new();
    Ok(star_count_rec(center, rest, 0, r, &mut memo))
}

type StarMemo = HashMap<(u64, Vec<u64>, u64, u64), BigUint>;

/// Independent r-sets through a fixed pendant of the `center`-sized clique,
/// in a complete base carrying `rest` further cliques (ascending) plus
/// `bare` clique-less base vertices.
fn star_count_rec(center: u64, rest: Vec<u64>, bare: u64, r: u64, memo: &mut StarMemo) -> BigUint {
    if r == 1 {
        return BigUint::one();
    }
    if rest.is_empty() {
        // Only bare bases can join the center, and at most one of them.
        return if r == 2 {
            BigUint::from(bare)
        } else {
            BigUint::zero()
        };
    }
    if bare == 0 && rest.iter().all(|&si| si == center) {
        let n = rest.len() as u64 + 1;
        return star_size_uniform(n, center, r).expect("arguments validated");
    }
    let key = (center, rest.clone(), bare, r);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }

    // Branch on a fixed vertex of the largest non-center clique.
    let mut shrunk = rest.clone();
    let last = shrunk.pop().expect("rest nonempty");
    let contains = star_count_rec(center, shrunk.clone(), bare, r - 1, memo);
    let avoids = if last >= 2 {
        shrunk.push(last - 1);
        shrunk.sort_unstable();
        star_count_rec(center, shrunk, bare, r, memo)
    } else {
        star_count_rec(center, shrunk, bare + 1, r, memo)
    };

    let value = contains + avoids;
    memo.insert(key, value.clone());
    value
}

// ============================================================================
// Katona shadow check
// ============================================================================

/// Outcome of checking `|f| <= |shadow(f, a-b)|` on a family of a-sets whose
/// pairwise intersections are all at least `b`.
#[derive(Clone, Debug)]
pub struct KatonaReport {
    /// Member cardinality a.
    pub a: usize,
    pub b: usize,
    pub family_size: usize,
    /// `|shadow(f, a-b)|`; `None` when `b > a`.
    pub shadow_size: Option<usize>,
    /// Whether the precondition (b <= a and pairwise intersections >= b) held.
    pub applicable: bool,
    /// `|f| <= |shadow|`; `None` when the shadow is undefined. Must be
    /// `Some(true)` whenever `applicable`.
    pub holds: Option<bool>,
}

/// Evaluates the shadow bound report for `f` at intersection level `b`.
/// Precondition violations are reported as not-applicable, never as a
/// bound failure.
pub fn katona_check(f: &SetFamily, b: usize) -> KatonaReport {
    let a = f.r();
    if b > a {
        return KatonaReport {
            a,
            b,
            family_size: f.len(),
            shadow_size: None,
            applicable: false,
            holds: None,
        };
    }
    let meets_precondition = match f.min_pairwise_intersection() {
        Ok(min) => min >= b,
        Err(_) => true, // fewer than two members: vacuously intersecting enough
    };
    let shadow = f.shadow(a - b).expect("a - b <= a");
    KatonaReport {
        a,
        b,
        family_size: f.len(),
        shadow_size: Some(shadow.len()),
        applicable: meets_precondition,
        holds: Some(f.len() <= shadow.len()),
    }
}

// ============================================================================
// Explicit witness sets on the pendant path
// ============================================================================

/// A constructed set plus whether the parameters sit inside the range the
/// construction is proven for.
#[derive(Clone, Debug)]
pub struct RangedWitness {
    pub set: VertexSet,
    pub in_theorem_range: bool,
}

fn path_universe(n: usize) -> usize {
    2 * n
}

/// Index of base vertex `x_i` (1-based i) in the canonical `P_n*` indexing.
pub fn path_base_index(_n: usize, i: usize) -> usize {
    i - 1
}

/// Index of pendant `p_i` (1-based i) in the canonical `P_n*` indexing.
pub fn path_pendant_index(n: usize, i: usize) -> usize {
    n + i - 1
}

/// The pendant tail `{p_(k+1), …, p_n}` in `P_n*`; proven to extend the
/// p_2-star for `k >= 2` and `n >= 3k+2`.
pub fn witness_tk(n: usize, k: usize) -> Result<RangedWitness> {
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "need k < n, got n={n}, k={k}"
        )));
    }
    let set = VertexSet::from_indices(
        path_universe(n),
        (k + 1..=n).map(|i| path_pendant_index(n, i)),
    )?;
    Ok(RangedWitness {
        set,
        in_theorem_range: k >= 2 && n >= 3 * k + 2,
    })
}

/// `{p_1, p_3, p_4, …, p_n}` in `P_n*`; proven range `n >= 6`.
pub fn witness_tprime(n: usize) -> Result<RangedWitness> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "witness needs n >= 3, got {n}"
        )));
    }
    let set = VertexSet::from_indices(
        path_universe(n),
        (1..=n)
            .filter(|&i| i != 2)
            .map(|i| path_pendant_index(n, i)),
    )?;
    Ok(RangedWitness {
        set,
        in_theorem_range: n >= 6,
    })
}

/// `{x_i : i odd} ∪ {p_i : i even}` in `P_n*`; theorem range `n >= 4`.
pub fn witness_a(n: usize) -> Result<RangedWitness> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let set = VertexSet::from_indices(
        path_universe(n),
        (1..=n).map(|i| {
            if i % 2 == 1 {
                path_base_index(n, i)
            } else {
                path_pendant_index(n, i)
            }
        }),
    )?;
    Ok(RangedWitness {
        set,
        in_theorem_range: n >= 4,
    })
}

/// The pairwise complement of [`witness_a`]: `{x_i : i even} ∪ {p_i : i odd}`.
pub fn witness_ac(n: usize) -> Result<RangedWitness> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let set = VertexSet::from_indices(
        path_universe(n),
        (1..=n).map(|i| {
            if i % 2 == 0 {
                path_base_index(n, i)
            } else {
                path_pendant_index(n, i)
            }
        }),
    )?;
    Ok(RangedWitness {
        set,
        in_theorem_range: n >= 4,
    })
}

/// `{x_2, x_4} ∪ {p_i : i ∉ {2,4}}`: a second independent n-set avoiding
/// p_2; needs `n >= 4`.
pub fn witness_c(n: usize) -> Result<RangedWitness> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "witness needs n >= 4, got {n}"
        )));
    }
    let set = VertexSet::from_indices(
        path_universe(n),
        (1..=n).map(|i| {
            if i == 2 || i == 4 {
                path_base_index(n, i)
            } else {
                path_pendant_index(n, i)
            }
        }),
    )?;
    Ok(RangedWitness {
        set,
        in_theorem_range: true,
    })
}

/// The full independent n-set family of `P_n*` minus the pairwise complement
/// of the alternating set: intersecting of size `|I| - 1`. Theorem range
/// `n >= 4`; constructed for every `n >= 1`.
pub fn family_not_nekr(n: usize) -> Result<(SetFamily, bool)> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let g = pendant_path(n)?;
    let all = SetFamily::enumerate_independent(&g, n);
    let ac = witness_ac(n)?.set;
    debug_assert!(all.contains(&ac));
    Ok((all.without_member(&ac), n >= 4))
}

// ============================================================================
// Star centers and EKR verdicts
// ============================================================================

/// Maximum star size over all centers and every vertex attaining it.
pub fn largest_star_centers(g: &Graph, r: usize) -> Result<(usize, Vec<usize>)> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let family = SetFamily::enumerate_independent(g, r);
    let counts = family.vertex_membership_counts();
    let best = counts.iter().copied().max().unwrap_or(0);
    let centers = (0..g.vertex_count())
        .filter(|&v| counts[v] == best)
        .collect();
    Ok((best, centers))
}

/// EKR status of a graph at one value of r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EkrClass {
    #[serde(rename = "EKR")]
    Ekr,
    #[serde(rename = "StrictlyEKR")]
    StrictlyEkr,
    #[serde(rename = "NotEKR")]
    NotEkr,
}

impl EkrClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EkrClass::Ekr => "EKR",
            EkrClass::StrictlyEkr => "StrictlyEKR",
            EkrClass::NotEkr => "NotEKR",
        }
    }
}

/// What enumerating every maximum family showed.
#[derive(Clone, Copy, Debug)]
pub struct StrictnessProbe {
    pub maximum_family_count: usize,
    pub all_maximum_are_stars: bool,
    /// Enumeration stopped at the cap; strictness stays unclaimed then.
    pub truncated: bool,
}

/// Outcome record for one (graph, r) EKR question.
#[derive(Clone, Debug)]
pub struct EkrVerdict {
    pub graph_name: String,
    pub r: usize,
    /// `|I^(r)(g)|`.
    pub family_size: usize,
    pub max_size: usize,
    pub best_star_size: usize,
    pub best_star_centers: Vec<usize>,
    pub classification: EkrClass,
    /// A maximum intersecting family strictly beating every star;
    /// present exactly when the classification is `NotEkr`.
    pub witness: Option<SetFamily>,
    /// False when the solver hit its member cap and `max_size` is only the
    /// best-star lower bound.
    pub certified: bool,
    pub strictness: Option<StrictnessProbe>,
    /// Free-form note, e.g. why a verdict is uncertified.
    pub range_flag: Option<String>,
}

/// Cap on how many maximum families the strictness probe will enumerate.
pub const STRICTNESS_ENUMERATION_CAP: usize = 10_000;

/// Computes the exact maximum intersecting family size, compares it with
/// every star, and classifies. With `strict_check`, an EKR verdict is
/// upgraded to strictly-EKR when every maximum family is a star.
pub fn verify_ekr(
    g: &Graph,
    r: usize,
    strict_check: bool,
    config: &SolverConfig,
) -> Result<EkrVerdict> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let family = SetFamily::enumerate_independent(g, r);
    let counts = family.vertex_membership_counts();
    let best_star_size = counts.iter().copied().max().unwrap_or(0);
    let best_star_centers: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| counts[v] == best_star_size)
        .collect();

    let mut verdict = EkrVerdict {
        graph_name: g.name().to_string(),
        r,
        family_size: family.len(),
        max_size: 0,
        best_star_size,
        best_star_centers,
        classification: EkrClass::Ekr,
        witness: None,
        certified: true,
        strictness: None,
        range_flag: None,
    };

    match max_intersecting_family(&family, config) {
        Err(Error::ResourceLimit {
            members,
            cap,
            lower_bound,
        }) => {
            verdict.max_size = lower_bound;
            verdict.certified = false;
            verdict.range_flag = Some(format!(
                "uncertified: {members} members exceed the solver cap {cap}; \
                 max is the best-star lower bound"
            ));
            Ok(verdict)
        }
        Err(e) => Err(e),
        Ok(result) => {
            verdict.max_size = result.size;
            debug_assert!(result.size >= best_star_size);
            if result.size > best_star_size {
                verdict.classification = EkrClass::NotEkr;
                verdict.witness = Some(result.witness);
            } else if strict_check {
                let all =
                    all_maximum_intersecting_family(&family, STRICTNESS_ENUMERATION_CAP, config)?;
                let all_stars = all.families.iter().all(is_star_shaped);
                verdict.strictness = Some(StrictnessProbe {
                    maximum_family_count: all.families.len(),
                    all_maximum_are_stars: all_stars,
                    truncated: all.truncated,
                });
                if all_stars && !all.truncated {
                    verdict.classification = EkrClass::StrictlyEkr;
                }
            }
            Ok(verdict)
        }
    }
}

/// A maximum-size family is a star exactly when its members share a vertex.
fn is_star_shaped(f: &SetFamily) -> bool {
    let mut iter = f.iter();
    let first = match iter.next() {
        Some(m) => m.clone(),
        None => return true,
    };
    iter.fold(first, |acc, m| acc.intersection(m)).cardinality() > 0
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    graph: &'a str,
    r: usize,
    max: usize,
    best_star: usize,
    centers: &'a [usize],
    class: EkrClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vec<usize>>>,
    certified: bool,
    range_flag: &'a Option<String>,
}

impl EkrVerdict {
    /// The verdict interchange JSON.
    pub fn to_json(&self) -> String {
        let repr = VerdictJson {
            graph: &self.graph_name,
            r: self.r,
            max: self.max_size,
            best_star: self.best_star_size,
            centers: &self.best_star_centers,
            class: self.classification,
            witness: self
                .witness
                .as_ref()
                .map(|w| w.iter().map(|m| m.to_vec()).collect()),
            certified: self.certified,
            range_flag: &self.range_flag,
        };
        serde_json::to_string(&repr).expect("verdict serialization cannot fail")
    }
}

// ============================================================================
// Counterexample constructions on the pendant path
// ============================================================================

/// Report for the pendant-path counterexample construction at one (n, k):
/// the p_2-star at r = n-k augmented by the matching witness set (k >= 2:
/// pendant tail; k = 1: the alternate tail; k = 0: the full family minus
/// one complement).
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub graph_name: String,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Vertex index of p_2.
    pub star_center: usize,
    pub star_size: usize,
    /// Size of the constructed intersecting family.
    pub family_size: usize,
    pub intersecting: bool,
    /// Best star size over all centers (equals the p_2 star on these graphs).
    pub best_star_size: usize,
    pub in_theorem_range: bool,
    /// True when the construction certifies the graph is not r-EKR:
    /// intersecting and strictly larger than every star.
    pub not_ekr_certified: bool,
}

/// Builds and checks the counterexample construction for `P_n*` at the
/// given `k` (so `r = n - k`).
pub fn counterexample_report(n: usize, k: usize) -> Result<CounterexampleReport> {
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "need k < n, got n={n}, k={k}"
        )));
    }
    let r = n - k;
    let g = pendant_path(n)?;
    let p2 = path_pendant_index(n, 2);
    let star = SetFamily::star(&g, r, p2)?;
    let (best_star_size, _) = largest_star_centers(&g, r)?;

    let (augmented, in_range) = match k {
        0 => {
            let (family, in_range) = family_not_nekr(n)?;
            (family, in_range)
        }
        1 => {
            let w = witness_tprime(n)?;
            let mut sets: Vec<VertexSet> = star.members().to_vec();
            sets.push(w.set);
            (
                SetFamily::from_sets(star.universe(), r, sets)?,
                w.in_theorem_range,
            )
        }
        _ => {
            let w = witness_tk(n, k)?;
            let mut sets: Vec<VertexSet> = star.members().to_vec();
            sets.push(w.set);
            (
                SetFamily::from_sets(star.universe(), r, sets)?,
                w.in_theorem_range,
            )
        }
    };

    let intersecting = augmented.is_intersecting();
    let family_size = augmented.len();
    Ok(CounterexampleReport {
        graph_name: g.name().to_string(),
        n,
        k,
        r,
        star_center: p2,
        star_size: star.len(),
        family_size,
        intersecting,
        best_star_size,
        in_theorem_range: in_range,
        not_ekr_certified: intersecting && family_size > best_star_size,
    })
}

// ============================================================================
// Star-size table
// ============================================================================

/// Pendant-over-complete-base family with a closed-form star size.
#[derive(Clone, Debug)]
pub enum StarFormulaFamily {
    PendantComplete { n: u64 },
    Uniform { n: u64, m: u64 },
    General { s: Vec<u64> },
}

impl StarFormulaFamily {
    pub fn formula(&self, r: u64) -> Result<BigUint> {
        match self {
            StarFormulaFamily::PendantComplete { n } => star_size_pendant_complete(*n, r),
            StarFormulaFamily::Uniform { n, m } => star_size_uniform(*n, *m, r),
            StarFormulaFamily::General { s } => star_size_general(s, r),
        }
    }

    pub fn build_graph(&self) -> Result<Graph> {
        match self {
            StarFormulaFamily::PendantComplete { n } => crate::graph::pendant_complete(*n as usize),
            StarFormulaFamily::Uniform { n, m } => {
                crate::graph::pendant_complete_uniform(*n as usize, *m as usize)
            }
            StarFormulaFamily::General { s } => {
                let s: Vec<usize> = s.iter().map(|&v| v as usize).collect();
                crate::graph::pendant_complete_general(&s)
            }
        }
    }

    /// The canonical center: first clique vertex of a minimum-size clique
    /// (lowest base index among the minima).
    pub fn canonical_center(&self, g: &Graph) -> usize {
        let n = g.base_count();
        let min_clique = (0..n)
            .min_by_key(|&i| (g.clique_size(i), i))
            .expect("n >= 1");
        g.pendant_clique(min_clique)[0]
    }
}

/// One row of a formula-versus-enumeration table.
#[derive(Clone, Debug)]
pub struct StarSizeRow {
    pub graph: String,
    pub r: u64,
    pub formula: BigUint,
    pub enumerated: u64,
}

impl StarSizeRow {
    pub fn matches(&self) -> bool {
        BigUint::from(self.enumerated) == self.formula
    }
}

/// Evaluates formula and enumeration for each r in `rs`.
pub fn star_size_table(family: &StarFormulaFamily, rs: &[u64]) -> Result<Vec<StarSizeRow>> {
    let g = family.build_graph()?;
    let center = family.canonical_center(&g);
    let mut rows = Vec::with_capacity(rs.len());
    for &r in rs {
        let formula = family.formula(r)?;
        let enumerated = SetFamily::star(&g, r as usize, center)?.len() as u64;
        rows.push(StarSizeRow {
            graph: g.name().to_string(),
            r,
            formula,
            enumerated,
        });
    }
    Ok(rows)
}
