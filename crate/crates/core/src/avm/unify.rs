//! Destructive unification over a union-find arena.

use std::collections::HashMap;

use thiserror::Error;

use super::{FeatureStructure, Node, NodeId, NodeKind, SortHierarchy};

/// Why two structures failed to unify. A value, not a fault.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("sorts `{0}` and `{1}` have no common subsort")]
    SortClash(String, String),
    #[error("atoms `{0}` and `{1}` differ")]
    AtomClash(String, String),
    #[error("cannot unify {0} with {1}")]
    ShapeClash(&'static str, &'static str),
    #[error("unification would create a cycle")]
    Cycle,
}

/// Most general structure subsumed by both `a` and `b`.
///
/// Set values unify by union; members that coincide after unification
/// collapse into one.
pub fn unify(
    a: &FeatureStructure,
    b: &FeatureStructure,
    sorts: &SortHierarchy,
) -> Result<FeatureStructure, UnifyError> {
    let mut arena = Arena::default();
    let ra = arena.import(a);
    let rb = arena.import(b);
    arena.unify(ra, rb, sorts)?;
    arena.extract(ra)
}

fn kind_name(k: &NodeKind) -> &'static str {
    match k {
        NodeKind::Atomic(_) => "atom",
        NodeKind::Complex(fs) if fs.is_empty() => "empty structure",
        NodeKind::Complex(_) => "complex structure",
        NodeKind::Set(_) => "set",
    }
}

#[derive(Debug, Default, Clone)]
pub(crate) struct Arena {
    nodes: Vec<Node>,
    parent: Vec<u32>,
}

impl Arena {
    pub(crate) fn import(&mut self, fs: &FeatureStructure) -> NodeId {
        let offset = self.nodes.len() as u32;
        for n in fs.nodes() {
            let shift = |c: &NodeId| NodeId(c.0 + offset);
            let kind = match &n.kind {
                NodeKind::Atomic(v) => NodeKind::Atomic(v.clone()),
                NodeKind::Complex(m) => {
                    NodeKind::Complex(m.iter().map(|(k, c)| (k.clone(), shift(c))).collect())
                }
                NodeKind::Set(ms) => NodeKind::Set(ms.iter().map(shift).collect()),
            };
            self.push(Node {
                sort: n.sort.clone(),
                kind,
            });
        }
        NodeId(fs.root().0 + offset)
    }

    pub(crate) fn push(&mut self, node: Node) -> NodeId {
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.parent.push(id);
        NodeId(id)
    }

    pub(crate) fn find(&mut self, id: NodeId) -> NodeId {
        let mut root = id.0;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = id.0;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        NodeId(root)
    }

    pub(crate) fn node(&mut self, id: NodeId) -> &Node {
        let r = self.find(id);
        &self.nodes[r.index()]
    }

    pub(crate) fn node_mut(&mut self, id: NodeId) -> &mut Node {
        let r = self.find(id);
        &mut self.nodes[r.index()]
    }

    /// Makes `from`'s class an alias of `to`'s without merging content.
    pub(crate) fn alias(&mut self, from: NodeId, to: NodeId) {
        let (f, t) = (self.find(from), self.find(to));
        if f != t {
            self.parent[f.index()] = t.0;
        }
    }

    pub(crate) fn unify(
        &mut self,
        a: NodeId,
        b: NodeId,
        sorts: &SortHierarchy,
    ) -> Result<(), UnifyError> {
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let na = self.nodes[ra.index()].clone();
            let nb = self.nodes[rb.index()].clone();
            let sort = sorts
                .meet(&na.sort, &nb.sort)
                .ok_or_else(|| UnifyError::SortClash(na.sort.clone(), nb.sort.clone()))?;
            let kind = match (na.kind, nb.kind) {
                (NodeKind::Complex(mut fa), NodeKind::Complex(fb)) => {
                    for (f, cb) in fb {
                        match fa.get(&f) {
                            Some(ca) => work.push((*ca, cb)),
                            None => {
                                fa.insert(f, cb);
                            }
                        }
                    }
                    NodeKind::Complex(fa)
                }
                (NodeKind::Atomic(x), NodeKind::Atomic(y)) => {
                    if x != y {
                        return Err(UnifyError::AtomClash(x, y));
                    }
                    NodeKind::Atomic(x)
                }
                (NodeKind::Set(mut xs), NodeKind::Set(ys)) => {
                    xs.extend(ys);
                    NodeKind::Set(xs)
                }
                (k @ (NodeKind::Atomic(_) | NodeKind::Set(_)), NodeKind::Complex(fs))
                | (NodeKind::Complex(fs), k @ (NodeKind::Atomic(_) | NodeKind::Set(_)))
                    if fs.is_empty() =>
                {
                    k
                }
                (x, y) => return Err(UnifyError::ShapeClash(kind_name(&x), kind_name(&y))),
            };
            self.parent[rb.index()] = ra.0;
            self.nodes[ra.index()] = Node { sort, kind };
        }
        Ok(())
    }

    /// Reads the class graph reachable from `root` back into a structure.
    pub(crate) fn extract(&mut self, root: NodeId) -> Result<FeatureStructure, UnifyError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut map: HashMap<NodeId, (u32, Mark)> = HashMap::new();
        let mut out: Vec<Option<Node>> = Vec::new();

        // iterative post-order DFS with cycle detection
        let root = self.find(root);
        let mut stack: Vec<(NodeId, bool)> = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                let node = self.nodes[id.index()].clone();
                let kind = match node.kind {
                    NodeKind::Atomic(v) => NodeKind::Atomic(v),
                    NodeKind::Complex(fs) => NodeKind::Complex(
                        fs.into_iter()
                            .map(|(f, c)| {
                                let c = self.find(c);
                                (f, NodeId(map[&c].0))
                            })
                            .collect(),
                    ),
                    NodeKind::Set(ms) => NodeKind::Set(
                        ms.into_iter()
                            .map(|c| {
                                let c = self.find(c);
                                NodeId(map[&c].0)
                            })
                            .collect(),
                    ),
                };
                let slot = map[&id].0;
                out[slot as usize] = Some(Node {
                    sort: node.sort,
                    kind,
                });
                map.get_mut(&id).unwrap().1 = Mark::Done;
                continue;
            }
            match map.get(&id) {
                Some((_, Mark::Done)) => continue,
                Some((_, Mark::Open)) => return Err(UnifyError::Cycle),
                None => {}
            }
            map.insert(id, (out.len() as u32, Mark::Open));
            out.push(None);
            stack.push((id, true));
            let children: Vec<NodeId> = match &self.nodes[id.index()].kind {
                NodeKind::Atomic(_) => Vec::new(),
                NodeKind::Complex(fs) => fs.values().copied().collect(),
                NodeKind::Set(ms) => ms.clone(),
            };
            for c in children {
                let c = self.find(c);
                match map.get(&c) {
                    Some((_, Mark::Open)) => return Err(UnifyError::Cycle),
                    Some((_, Mark::Done)) => {}
                    None => stack.push((c, false)),
                }
            }
        }
        let nodes = out
            .into_iter()
            .map(|n| n.expect("all nodes closed"))
            .collect();
        let root = NodeId(map[&root].0);
        Ok(FeatureStructure::from_parts_unchecked(nodes, root)
            .compact()
            .normalize_sets())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(s: &str) -> FeatureStructure {
        FeatureStructure::parse(s).unwrap()
    }

    #[test]
    fn top_is_identity() {
        let h = SortHierarchy::standard();
        let x = fs("[sign PHON: smoker CAT: N]");
        assert_eq!(unify(&FeatureStructure::top(), &x, &h).unwrap(), x);
        assert_eq!(unify(&x, &FeatureStructure::top(), &h).unwrap(), x);
    }

    #[test]
    fn atom_clash() {
        let h = SortHierarchy::standard();
        assert_eq!(
            unify(
                &FeatureStructure::atom("smoker"),
                &FeatureStructure::atom("fumeur"),
                &h
            ),
            Err(UnifyError::AtomClash("smoker".into(), "fumeur".into()))
        );
    }

    #[test]
    fn reentrancy_propagates() {
        let h = SortHierarchy::standard();
        let a = fs("[top F: #1 [top] G: #1]");
        let b = fs("[top F: [top H: x]]");
        let c = unify(&a, &b, &h).unwrap();
        assert_eq!(c.to_string(), "[top F: #1 [top H: x] G: #1]");
    }

    #[test]
    fn sort_meet_and_clash() {
        let h = SortHierarchy::standard();
        let c = unify(&fs("[sign]"), &fs("[collocate]"), &h).unwrap();
        assert_eq!(c.sort(), "collocate");
        assert!(matches!(
            unify(&fs("[collocate]"), &fs("[collocation]"), &h),
            Err(UnifyError::SortClash(..))
        ));
    }

    #[test]
    fn cycle_is_failure() {
        let h = SortHierarchy::standard();
        let a = fs("[top F: #1 [top] G: #1]");
        let b = fs("[top F: #2 [top] G: [top H: #2]]");
        assert_eq!(unify(&a, &b, &h), Err(UnifyError::Cycle));
    }

    #[test]
    fn rest_sets_union() {
        let h = SortHierarchy::standard();
        let a = fs("[sem VAR: #1 [index] REST: {[rel RELN: smoker INST: #1]}]");
        let b = fs("[sem VAR: #1 [index] REST: {[lf FN: Magn INST: #1]}]");
        let c = unify(&a, &b, &h).unwrap();
        assert_eq!(
            c.to_string(),
            "[sem REST: {[rel INST: #1 [index] RELN: smoker] [lf FN: Magn INST: #1]} VAR: #1]"
        );
        // idempotent on the union result
        assert!(crate::avm::struct_equal(&unify(&c, &c, &h).unwrap(), &c));
    }
}
