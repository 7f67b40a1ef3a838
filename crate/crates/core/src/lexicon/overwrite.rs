//! Default overwrite: path-wise priority union of two feature structures.

use std::collections::HashMap;

use crate::avm::{struct_equal, Arena, FeatureStructure, Node, NodeId, NodeKind, SortHierarchy};

/// Overlays `sub` on `sup`. Every path `sub` constrains takes `sub`'s value;
/// conflicting substructure of `sup` is replaced wholesale; all other
/// information in `sup` survives. Never fails.
///
/// Where the two are compatible the result is their unification, so a
/// reentrancy of `sup` survives unless one of its paths is overridden.
/// A sort clash gives `sub`'s sort on that path and keeps the rest of the
/// `sup` node.
pub fn default_overwrite(
    sup: &FeatureStructure,
    sub: &FeatureStructure,
    sorts: &SortHierarchy,
) -> FeatureStructure {
    let mut sup = sup.clone();
    loop {
        let (result, overridden) = overlay(&sup, sub, sorts);
        let split = privatize(&sup, &overridden);
        if struct_equal(&split, &sup) {
            if let Some(fs) = result {
                return fs;
            }
            // Merging through shared super-entry nodes closed a cycle; a
            // tree copy of the super-entry cannot.
            return overlay(&unfold(&sup), sub, sorts)
                .0
                .expect("overlay onto a tree is acyclic");
        }
        sup = split;
    }
}

type FeaturePath = Vec<String>;

/// One overlay pass. Returns the result (None if a cycle formed) and the
/// paths at which `sub` replaced conflicting substructure.
fn overlay(
    sup: &FeatureStructure,
    sub: &FeatureStructure,
    sorts: &SortHierarchy,
) -> (Option<FeatureStructure>, Vec<FeaturePath>) {
    let mut arena = Arena::default();
    let rs = arena.import(sup);
    let ry = arena.import(sub);
    let mut root = rs;
    let mut overridden = Vec::new();
    // (parent class, path, super side, sub side)
    let mut work: Vec<(Option<NodeId>, FeaturePath, NodeId, NodeId)> =
        vec![(None, Vec::new(), rs, ry)];
    while let Some((parent, path, r, y)) = work.pop() {
        let (r, y) = (arena.find(r), arena.find(y));
        if r == y {
            continue;
        }
        let nr = arena.node(r).clone();
        let ny = arena.node(y).clone();
        let meet = sorts.meet(&nr.sort, &ny.sort);
        if conflicts(&nr.kind, &ny.kind) || (meet.is_none() && !same_shape(&nr.kind, &ny.kind)) {
            match parent {
                None => root = y,
                Some(p) => {
                    let f = path.last().expect("non-root path").clone();
                    if let NodeKind::Complex(fs) = &mut arena.node_mut(p).kind {
                        fs.insert(f, y);
                    }
                }
            }
            overridden.push(path);
            continue;
        }
        // sub's sort wins, on this path only
        let sort = match meet {
            Some(s) => s,
            None => {
                overridden.push(path.clone());
                ny.sort
            }
        };
        let kind = match (nr.kind, ny.kind) {
            (NodeKind::Complex(mut fr), NodeKind::Complex(fy)) => {
                for (f, cy) in fy {
                    match fr.get(&f) {
                        Some(cr) => {
                            let mut p = path.clone();
                            p.push(f.clone());
                            work.push((Some(r), p, *cr, cy));
                        }
                        None => {
                            fr.insert(f, cy);
                        }
                    }
                }
                NodeKind::Complex(fr)
            }
            (NodeKind::Complex(_), k) => k,
            (k, _) => k,
        };
        arena.alias(y, r);
        *arena.node_mut(r) = Node { sort, kind };
    }
    (arena.extract(root).ok(), overridden)
}

/// Copy of `fs` in which every node lying on the way to an overridden
/// path is private to that path; all other sharing is kept.
fn privatize(fs: &FeatureStructure, overridden: &[FeaturePath]) -> FeatureStructure {
    struct Copier<'a> {
        fs: &'a FeatureStructure,
        overridden: &'a [FeaturePath],
        memo: HashMap<NodeId, NodeId>,
        out: Vec<Node>,
    }
    impl Copier<'_> {
        fn copy(&mut self, id: NodeId, path: &mut FeaturePath) -> NodeId {
            let on_line = self.overridden.iter().any(|o| o.starts_with(path));
            if !on_line {
                if let Some(done) = self.memo.get(&id) {
                    return *done;
                }
            }
            let node = self.fs.node(id);
            let kind = match &node.kind {
                NodeKind::Atomic(v) => NodeKind::Atomic(v.clone()),
                NodeKind::Complex(m) => {
                    let mut out = std::collections::BTreeMap::new();
                    for (f, c) in m {
                        path.push(f.clone());
                        out.insert(f.clone(), self.copy(*c, path));
                        path.pop();
                    }
                    NodeKind::Complex(out)
                }
                // set members are not addressed by paths
                NodeKind::Set(ms) => NodeKind::Set(
                    ms.iter()
                        .map(|c| {
                            path.push(String::from("\u{0}member"));
                            let id = self.copy(*c, path);
                            path.pop();
                            id
                        })
                        .collect(),
                ),
            };
            self.out.push(Node {
                sort: node.sort.clone(),
                kind,
            });
            let new = NodeId(self.out.len() as u32 - 1);
            if !on_line {
                self.memo.insert(id, new);
            }
            new
        }
    }
    let mut c = Copier {
        fs,
        overridden,
        memo: HashMap::new(),
        out: Vec::new(),
    };
    let root = c.copy(fs.root(), &mut Vec::new());
    FeatureStructure::from_nodes(c.out, root).expect("privatized copy is well formed")
}

fn same_shape(a: &NodeKind, b: &NodeKind) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

fn conflicts(sup: &NodeKind, sub: &NodeKind) -> bool {
    match (sup, sub) {
        (NodeKind::Atomic(u), NodeKind::Atomic(v)) => u != v,
        (NodeKind::Complex(fr), NodeKind::Atomic(_) | NodeKind::Set(_)) => !fr.is_empty(),
        (_, NodeKind::Set(_)) => true,
        (NodeKind::Complex(_), NodeKind::Complex(_)) => false,
        (_, NodeKind::Complex(fy)) => !fy.is_empty(),
        (NodeKind::Set(_), NodeKind::Atomic(_)) => true,
    }
}

/// Copy of `fs` with every reentrancy expanded into separate nodes.
fn unfold(fs: &FeatureStructure) -> FeatureStructure {
    fn copy(fs: &FeatureStructure, id: NodeId, out: &mut Vec<Node>) -> NodeId {
        let node = fs.node(id);
        let kind = match &node.kind {
            NodeKind::Atomic(v) => NodeKind::Atomic(v.clone()),
            NodeKind::Complex(m) => NodeKind::Complex(
                m.iter()
                    .map(|(f, c)| (f.clone(), copy(fs, *c, out)))
                    .collect(),
            ),
            NodeKind::Set(ms) => NodeKind::Set(ms.iter().map(|c| copy(fs, *c, out)).collect()),
        };
        out.push(Node {
            sort: node.sort.clone(),
            kind,
        });
        NodeId(out.len() as u32 - 1)
    }
    let mut out = Vec::new();
    let root = copy(fs, fs.root(), &mut out);
    FeatureStructure::from_nodes(out, root).expect("unfolded copy is well formed")
}
