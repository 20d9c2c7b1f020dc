use std::fmt;

use itertools::Itertools;

use super::model::{CharDiagram, NodeKind};

/// Byte encoding that is equal for two diagrams exactly when they are
/// isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn push_u32(out: &mut Vec<u8>, x: usize) {
    out.extend_from_slice(&(x as u32).to_be_bytes());
}

fn encode(d: &CharDiagram, perm: &[usize], label: &dyn Fn(usize) -> Vec<u8>) -> Vec<u8> {
    let n = perm.len();
    let mut out = Vec::with_capacity(4 + 5 * n + 4 * n * n);
    push_u32(&mut out, n);
    for &old in perm {
        let node = &d.nodes()[old];
        out.push(match node.kind {
            NodeKind::Hollow => 0,
            NodeKind::Solid => 1,
        });
        push_u32(&mut out, node.genus.unwrap_or(0) as usize);
    }
    for i in 0..n {
        for j in i..n {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            let mut cell: Vec<Vec<u8>> = d
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e == (a, b))
                .map(|(k, _)| label(k))
                .collect();
            cell.sort();
            push_u32(&mut out, cell.len());
            for l in cell {
                push_u32(&mut out, l.len());
                out.extend(l);
            }
        }
    }
    out
}

/// Minimum of the serialized diagram over all node orders.
pub fn canonical_form(d: &CharDiagram) -> CanonicalForm {
    canonical_form_labeled(d, &|_| Vec::new())
}

/// As [`canonical_form`], with each edge also carrying the bytes
/// `label(edge_index)`.
pub fn canonical_form_labeled(d: &CharDiagram, label: &dyn Fn(usize) -> Vec<u8>) -> CanonicalForm {
    let n = d.node_count();
    let best = (0..n)
        .permutations(n)
        .map(|p| encode(d, &p, label))
        .min()
        .expect("at least one node");
    CanonicalForm(best)
}

/// Direct search for a node bijection preserving kinds, labels and edge
/// multiplicities. Independent of [`canonical_form`].
pub fn are_isomorphic(d1: &CharDiagram, d2: &CharDiagram) -> bool {
    let n = d1.node_count();
    if n != d2.node_count() || d1.edges().len() != d2.edges().len() {
        return false;
    }
    (0..n).permutations(n).any(|p| {
        (0..n).all(|i| {
            let (x, y) = (&d1.nodes()[i], &d2.nodes()[p[i]]);
            x.kind == y.kind && x.genus == y.genus
        }) && (0..n).all(|i| (i..n).all(|j| d1.multiplicity(i, j) == d2.multiplicity(p[i], p[j])))
    })
}
