//! Subsumption: `a` subsumes `b` when `b` carries every constraint of `a`.

use std::collections::{HashMap, HashSet};

use super::{FeatureStructure, NodeId, NodeKind, SortHierarchy};

/// True iff every path, value and coindexation constraint of `a` holds in
/// `b`.
///
/// Set members are constrained by identity rather than by description:
/// each member of a set in `a` must occur in the matching set of `b` with
/// the same member-local structure. Nodes a member shares with the rest of
/// the structure are matched by ordinary subsumption.
pub fn subsumes(a: &FeatureStructure, b: &FeatureStructure, sorts: &SortHierarchy) -> bool {
    let deg = a.in_degrees();
    let mut strict = HashSet::new();
    for node in a.nodes() {
        if let NodeKind::Set(ms) = &node.kind {
            for m in ms {
                strict.extend(a.member_internal_nodes(*m, &deg));
            }
        }
    }
    let mut m = Morphism {
        a,
        b,
        sorts,
        strict: &strict,
        map: HashMap::new(),
        strict_images: HashMap::new(),
    };
    m.solve(vec![Task::Pair(a.root(), b.root())])
}

#[derive(Clone)]
enum Task {
    Pair(NodeId, NodeId),
    // remaining members in `a`, candidates in `b`, whether candidates are consumed
    Members(Vec<NodeId>, Vec<NodeId>, bool),
}

struct Morphism<'a> {
    a: &'a FeatureStructure,
    b: &'a FeatureStructure,
    sorts: &'a SortHierarchy,
    strict: &'a HashSet<NodeId>,
    map: HashMap<NodeId, NodeId>,
    // keeps the map injective on member-internal nodes
    strict_images: HashMap<NodeId, NodeId>,
}

impl Morphism<'_> {
    fn solve(&mut self, mut tasks: Vec<Task>) -> bool {
        while let Some(task) = tasks.pop() {
            match task {
                Task::Pair(x, y) => {
                    if !self.pair(x, y, &mut tasks) {
                        return false;
                    }
                }
                Task::Members(xs, ys, consume) => {
                    let Some((first, rest)) = xs.split_first() else {
                        continue;
                    };
                    for (j, y) in ys.iter().enumerate() {
                        let saved = (self.map.clone(), self.strict_images.clone());
                        let mut branch = tasks.clone();
                        let mut others = ys.clone();
                        if consume {
                            others.remove(j);
                        }
                        branch.push(Task::Members(rest.to_vec(), others, consume));
                        branch.push(Task::Pair(*first, *y));
                        if self.solve(branch) {
                            return true;
                        }
                        (self.map, self.strict_images) = saved;
                    }
                    return false;
                }
            }
        }
        true
    }

    fn pair(&mut self, x: NodeId, y: NodeId, tasks: &mut Vec<Task>) -> bool {
        if let Some(img) = self.map.get(&x) {
            return *img == y;
        }
        let strict = self.strict.contains(&x);
        if strict {
            if self.strict_images.contains_key(&y) {
                return false;
            }
            self.strict_images.insert(y, x);
        }
        self.map.insert(x, y);

        let (nx, ny) = (self.a.node(x), self.b.node(y));
        let sort_ok = if strict {
            nx.sort == ny.sort
        } else {
            self.sorts.is_subsort(&ny.sort, &nx.sort)
        };
        if !sort_ok {
            return false;
        }
        match (&nx.kind, &ny.kind) {
            (NodeKind::Atomic(u), NodeKind::Atomic(v)) => u == v,
            (NodeKind::Complex(fx), _) if fx.is_empty() && !strict => true,
            (NodeKind::Complex(fx), NodeKind::Complex(fy)) => {
                if strict && fx.len() != fy.len() {
                    return false;
                }
                for (f, cx) in fx {
                    match fy.get(f) {
                        Some(cy) => tasks.push(Task::Pair(*cx, *cy)),
                        None => return false,
                    }
                }
                true
            }
            (NodeKind::Set(mx), NodeKind::Set(my)) => {
                if strict && mx.len() != my.len() {
                    return false;
                }
                tasks.push(Task::Members(mx.clone(), my.clone(), strict));
                true
            }
            _ => false,
        }
    }
}
