//! Exhaustive search for characteristic diagrams.
//!
//! Every edge touches the labeled node and that node has degree at most 3,
//! so a valid diagram has at most 3 edges and at most 4 nodes. The search
//! covers all connected multigraphs within those bounds, with every node
//! decorated hollow or solid and unlabeled or labeled 2.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::canon::{canonical_form, CanonicalForm};
use super::model::{CharDiagram, Node, NodeKind};
use super::validate::{raw_type, validate_with, Constraint, ConstraintSet};
use crate::exec::{filter_map, Strategy};

pub const MAX_NODES: usize = 4;
pub const MAX_EDGES: usize = 3;

/// Connected undecorated multigraphs, as (node count, edges).
fn shapes() -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for n in 1..=MAX_NODES {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        for e in 0..=MAX_EDGES {
            for edges in pairs.iter().copied().combinations_with_replacement(e) {
                if connected(n, &edges) {
                    out.push((n, edges));
                }
            }
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
        root[ra] = rb;
    }
    let r0 = find(&mut root, 0);
    (0..n).all(|v| find(&mut root, v) == r0)
}

const DECORATIONS: [(NodeKind, Option<u32>); 4] = [
    (NodeKind::Hollow, None),
    (NodeKind::Solid, None),
    (NodeKind::Hollow, Some(2)),
    (NodeKind::Solid, Some(2)),
];

fn decorated(n: usize, edges: &[(usize, usize)]) -> impl Iterator<Item = CharDiagram> + '_ {
    (0..n)
        .map(|_| DECORATIONS.iter())
        .multi_cartesian_product()
        .map(move |decs| {
            let nodes = decs
                .iter()
                .enumerate()
                .map(|(i, &&(kind, genus))| Node::new(format!("n{i}"), kind, genus))
                .collect();
            CharDiagram::new(nodes, edges.to_vec()).expect("connected by construction")
        })
}

/// Number of decorated candidates the search examines.
pub fn candidate_count() -> usize {
    shapes()
        .iter()
        .map(|(n, _)| DECORATIONS.len().pow(*n as u32))
        .sum()
}

/// Renames nodes to `v` (the labeled node) and `w1`, `w2`, ... in order.
fn tidy(d: &CharDiagram) -> CharDiagram {
    let n = d.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        (
            !d.nodes()[i].is_labeled(),
            std::cmp::Reverse(d.degree(i)),
            i,
        )
    });
    let p = d.permuted(&order);
    let mut w = 0;
    let nodes = p
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let id = if i == 0 && node.is_labeled() {
                "v".to_string()
            } else {
                w += 1;
                format!("w{w}")
            };
            Node::new(id, node.kind, node.genus)
        })
        .collect();
    CharDiagram::new(nodes, p.edges().to_vec()).expect("renaming keeps structure")
}

/// One representative per isomorphism class of diagrams passing the
/// enabled constraints, in tabulation order.
pub fn enumerate_with(enabled: ConstraintSet, strategy: Strategy) -> Vec<CharDiagram> {
    let shapes = shapes();
    let found: Vec<Vec<(CanonicalForm, CharDiagram)>> =
        filter_map(&shapes, strategy, |(n, edges)| {
            let hits: Vec<_> = decorated(*n, edges)
                .filter(|d| validate_with(d, enabled).is_empty())
                .map(|d| (canonical_form(&d), d))
                .collect();
            (!hits.is_empty()).then_some(hits)
        });
    let mut classes: BTreeMap<CanonicalForm, CharDiagram> = BTreeMap::new();
    for (c, d) in found.into_iter().flatten() {
        classes.entry(c).or_insert(d);
    }
    let mut out: Vec<(CanonicalForm, CharDiagram)> =
        classes.into_iter().map(|(c, d)| (c, tidy(&d))).collect();
    out.sort_by(|(ca, a), (cb, b)| {
        (raw_type(a).table_key(), ca).cmp(&(raw_type(b).table_key(), cb))
    });
    out.into_iter().map(|(_, d)| d).collect()
}

pub fn enumerate_valid() -> Vec<CharDiagram> {
    enumerate_with(ConstraintSet::all(), Strategy::default())
}

/// Classes that become valid when constraint `c` alone is switched off.
pub fn ablation(c: Constraint, strategy: Strategy) -> Vec<CharDiagram> {
    let valid: Vec<CanonicalForm> = enumerate_with(ConstraintSet::all(), strategy)
        .iter()
        .map(canonical_form)
        .collect();
    enumerate_with(ConstraintSet::all().without(c), strategy)
        .into_iter()
        .filter(|d| !valid.contains(&canonical_form(d)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate::DiagramType;

    #[test]
    fn thirteen_classes() {
        let all = enumerate_valid();
        assert_eq!(all.len(), 13);
        let hollow = all
            .iter()
            .filter(|d| raw_type(d).square == NodeKind::Hollow)
            .count();
        assert_eq!(hollow, 8);
        assert_eq!(all[0].nodes()[0].id, "v");
    }

    #[test]
    fn bigon_ablation() {
        let extra = ablation(Constraint::NoSolidBigon, Strategy::Sequential);
        assert_eq!(extra.len(), 1);
        assert_eq!(
            raw_type(&extra[0]),
            DiagramType::new(2, 0, 1, NodeKind::Solid)
        );
    }

    #[test]
    fn search_space() {
        assert!(shapes()
            .iter()
            .all(|(n, e)| *n <= MAX_NODES && e.len() <= MAX_EDGES));
        // Counted independently with a general-purpose graph library.
        assert_eq!(shapes().len(), 49);
        assert_eq!(candidate_count(), 5488);
    }
}
