//! Compression operators on families: the base-to-pendant shift and the
//! local within-clique shift, plus iteration to a shift-stable fixed point.
//!
//! Both operators act on the whole family in a single simultaneous pass:
//! a member moves to its image exactly when the image is absent from the
//! *input* family. This keeps the result independent of member order and
//! preserves the family size.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::Graph;

/// A shift descriptor for [`stabilize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftOp {
    /// Replace base vertex `v_i` by its unique pendant `p_i` (needs `s_i = 1`).
    BasePendant { base: usize },
    /// Replace clique vertex `source` by its clique-sibling `target`.
    Local { source: usize, target: usize },
}

/// Applies the shift `S_i`: every member containing `v_i` maps to
/// `(A ∖ {v_i}) ∪ {p_i}` unless the image is already in `f`.
pub fn shift_base_pendant(f: &SetFamily, g: &Graph, base: usize) -> Result<SetFamily> {
    let v = g
        .base_vertex(base)
        .ok_or_else(|| Error::InvalidShift(format!("no base vertex with index {base}")))?;
    let clique = g.pendant_clique(base);
    if clique.len() != 1 {
        return Err(Error::InvalidShift(format!(
            "base {base} has clique size {}, the base-to-pendant shift needs 1",
            clique.len()
        )));
    }
    apply_shift(f, g, v, clique[0])
}

/// Applies the local shift `T`: every member containing `source` maps to
/// `(A ∖ {source}) ∪ {target}` unless the image is already in `f`.
/// `source` and `target` must be distinct members of one pendant clique.
pub fn shift_local(f: &SetFamily, g: &Graph, source: usize, target: usize) -> Result<SetFamily> {
    if source == target {
        return Err(Error::InvalidShift("source and target coincide".into()));
    }
    let n = g.vertex_count();
    if source >= n || target >= n {
        return Err(Error::VertexOutOfRange {
            vertex: source.max(target),
            universe: n,
        });
    }
    use crate::graph::VertexRole::Pendant;
    match (g.role(source), g.role(target)) {
        (Pendant { base: a, .. }, Pendant { base: b, .. }) if a == b => {}
        _ => {
            return Err(Error::InvalidShift(format!(
                "vertices {source} and {target} are not members of one pendant clique"
            )))
        }
    }
    apply_shift(f, g, source, target)
}

fn apply_shift(f: &SetFamily, g: &Graph, source: usize, target: usize) -> Result<SetFamily> {
    if f.universe() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "family universe {} differs from graph order {}",
            f.universe(),
            g.vertex_count()
        )));
    }
    let mut out = Vec::with_capacity(f.len());
    for m in f.iter() {
        if m.contains(source) && !m.contains(target) {
            let image = m.without(source).with(target);
            if !f.contains(&image) {
                debug_assert!(
                    image
                        .iter()
                        .all(|u| image.iter().all(|w| w == u || !g.is_edge(u, w))),
                    "shift image must stay independent"
                );
                out.push(image);
                continue;
            }
        }
        out.push(m.clone());
    }
    let shifted = SetFamily::from_sets(f.universe(), f.r(), out)?;
    debug_assert_eq!(shifted.len(), f.len(), "shifts are size-preserving");
    Ok(shifted)
}

/// Result of iterating a shift sequence to its fixed point.
#[derive(Clone, Debug)]
pub struct StabilizeOutcome {
    pub family: SetFamily,
    /// Full passes over the shift list, including the final unchanged one.
    pub passes: usize,
}

/// Repeatedly applies `ops` in order until a full pass changes nothing.
///
/// Termination is guaranteed by requiring that no op's target is another
/// op's source: each productive pass then strictly decreases the number of
/// source-vertex occurrences across the family.
pub fn stabilize(f: &SetFamily, g: &Graph, ops: &[ShiftOp]) -> Result<StabilizeOutcome> {
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for op in ops {
        match *op {
            ShiftOp::BasePendant { base } => {
                let v = g.base_vertex(base).ok_or_else(|| {
                    Error::InvalidShift(format!("no base vertex with index {base}"))
                })?;
                let clique = g.pendant_clique(base);
                if clique.len() != 1 {
                    return Err(Error::InvalidShift(format!(
                        "base {base} has clique size {}, the base-to-pendant shift needs 1",
                        clique.len()
                    )));
                }
                sources.push(v);
                targets.push(clique[0]);
            }
            ShiftOp::Local { source, target } => {
                sources.push(source);
                targets.push(target);
            }
        }
    }
    if let Some(t) = targets.iter().find(|t| sources.contains(t)) {
        return Err(Error::InvalidShift(format!(
            "vertex {t} is both a shift target and a shift source; \
             the sequence would not terminate"
        )));
    }

    let mut current = f.clone();
    let mut passes = 0usize;
    loop {
        passes += 1;
        let mut next = current.clone();
        for op in ops {
            next = match *op {
                ShiftOp::BasePendant { base } => shift_base_pendant(&next, g, base)?,
                ShiftOp::Local { source, target } => shift_local(&next, g, source, target)?,
            };
        }
        if next == current {
            return Ok(StabilizeOutcome {
                family: current,
                passes,
            });
        }
        current = next;
    }
}

/// The standard sequence `S_1, …, S_n` over every base whose clique is a
/// single pendant vertex.
pub fn standard_base_shifts(g: &Graph) -> Vec<ShiftOp> {
    (0..g.base_count())
        .filter(|&i| g.clique_size(i) == 1)
        .map(|base| ShiftOp::BasePendant { base })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pendant_complete;
    use crate::vset::VertexSet;

    fn fam(universe: usize, r: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_sets(
            universe,
            r,
            sets.iter()
                .map(|ix| VertexSet::from_indices(universe, ix.iter().copied()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn shift_moves_member_when_image_absent() {
        // K3*: bases 0..2, pendants 3..5. {v1, p2} shifts to {p1, p2}.
        let g = pendant_complete(3).unwrap();
        let f = fam(6, 2, &[&[0, 4]]);
        let shifted = shift_base_pendant(&f, &g, 0).unwrap();
        assert_eq!(shifted.member(0).to_vec(), vec![3, 4]);
    }

    #[test]
    fn shift_keeps_member_when_image_present() {
        let g = pendant_complete(3).unwrap();
        let f = fam(6, 2, &[&[0, 4], &[3, 4]]);
        let shifted = shift_base_pendant(&f, &g, 0).unwrap();
        assert_eq!(shifted, f);
    }

    #[test]
    fn shift_ignores_members_without_source() {
        let g = pendant_complete(3).unwrap();
        let f = fam(6, 2, &[&[1, 3], &[3, 4]]);
        assert_eq!(shift_base_pendant(&f, &g, 0).unwrap(), f);
    }

    #[test]
    fn shift_rejects_bad_targets() {
        let g = Graph::complete(2)
            .unwrap()
            .attach_pendants(&[2, 1])
            .unwrap();
        // Base 0 has clique size 2: S_0 undefined.
        let f = fam(5, 1, &[&[0]]);
        assert!(matches!(
            shift_base_pendant(&f, &g, 0),
            Err(Error::InvalidShift(_))
        ));
        assert!(shift_base_pendant(&f, &g, 7).is_err());
    }

    use crate::graph::Graph;

    #[test]
    fn local_shift_within_clique() {
        // K2 with s = (1, 2): clique of base 1 is {3, 4}.
        let g = Graph::complete(2)
            .unwrap()
            .attach_pendants(&[1, 2])
            .unwrap();
        let f = fam(5, 2, &[&[2, 3]]);
        let shifted = shift_local(&f, &g, 3, 4).unwrap();
        assert_eq!(shifted.member(0).to_vec(), vec![2, 4]);

        // Image already present: unchanged.
        let f = fam(5, 2, &[&[2, 3], &[2, 4]]);
        assert_eq!(shift_local(&f, &g, 3, 4).unwrap(), f);

        // Not clique siblings.
        assert!(matches!(
            shift_local(&f, &g, 2, 3),
            Err(Error::InvalidShift(_))
        ));
        assert!(shift_local(&f, &g, 3, 3).is_err());
    }

    #[test]
    fn shift_preserves_size_and_intersecting() {
        let g = pendant_complete(4).unwrap();
        let all = SetFamily::enumerate_independent(&g, 2);
        // Triangle family {v1 p2, v1 p3, p2 p3}: intersecting, and S_1
        // moves both v1-members simultaneously.
        let f = fam(8, 2, &[&[0, 5], &[0, 6], &[5, 6]]);
        assert!(f.is_intersecting());
        assert!(f.iter().all(|m| all.contains(m)));
        for base in 0..4 {
            let shifted = shift_base_pendant(&f, &g, base).unwrap();
            assert_eq!(shifted.len(), f.len());
            assert!(shifted.is_intersecting(), "S_{base} broke intersecting");
            assert!(shifted.iter().all(|m| all.contains(m)));
        }
        let shifted = shift_base_pendant(&f, &g, 0).unwrap();
        assert_eq!(shifted, fam(8, 2, &[&[4, 5], &[4, 6], &[5, 6]]));
    }

    #[test]
    fn stabilize_reaches_fixed_point() {
        // Already stable: one pass.
        let g = pendant_complete(3).unwrap();
        let stable = fam(6, 2, &[&[3, 4], &[3, 5]]);
        let out = stabilize(&stable, &g, &standard_base_shifts(&g)).unwrap();
        assert_eq!(out.passes, 1);
        assert_eq!(out.family, stable);

        // K2*: {{v1, p2}, {v2, p1}} stabilizes to a 2-member family on
        // which S_1 and S_2 act trivially.
        let g = pendant_complete(2).unwrap();
        let f = fam(4, 2, &[&[0, 3], &[1, 2]]);
        let out = stabilize(&f, &g, &standard_base_shifts(&g)).unwrap();
        assert_eq!(out.family.len(), 2);
        for base in 0..2 {
            assert_eq!(
                shift_base_pendant(&out.family, &g, base).unwrap(),
                out.family
            );
        }
        assert!(out.passes <= 3);
    }

    #[test]
    fn stabilize_rejects_cycling_sequences() {
        let g = Graph::complete(2)
            .unwrap()
            .attach_pendants(&[1, 2])
            .unwrap();
        let f = fam(5, 1, &[&[3]]);
        let ops = [
            ShiftOp::Local {
                source: 3,
                target: 4,
            },
            ShiftOp::Local {
                source: 4,
                target: 3,
            },
        ];
        assert!(matches!(
            stabilize(&f, &g, &ops),
            Err(Error::InvalidShift(_))
        ));
    }

    #[test]
    fn standard_shifts_skip_larger_cliques() {
        let g = Graph::complete(3)
            .unwrap()
            .attach_pendants(&[1, 2, 1])
            .unwrap();
        let ops = standard_base_shifts(&g);
        assert_eq!(
            ops,
            vec![
                ShiftOp::BasePendant { base: 0 },
                ShiftOp::BasePendant { base: 2 }
            ]
        );
    }
}
