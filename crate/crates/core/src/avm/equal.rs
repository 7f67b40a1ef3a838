//! Equality up to tag renaming.

use std::collections::HashMap;

use super::{FeatureStructure, NodeId, NodeKind};

/// True iff `a` and `b` are isomorphic as tagged graphs. Set members are
/// matched in any order.
pub fn struct_equal(a: &FeatureStructure, b: &FeatureStructure) -> bool {
    if a.node_count() != b.node_count() {
        return false;
    }
    let mut iso = Iso {
        a,
        b,
        fwd: HashMap::new(),
        bwd: HashMap::new(),
    };
    iso.solve(vec![Task::Pair(a.root(), b.root())])
}

#[derive(Clone)]
enum Task {
    Pair(NodeId, NodeId),
    // remaining members of a set in `a`, unused members in `b`
    Members(Vec<NodeId>, Vec<NodeId>),
}

struct Iso<'a> {
    a: &'a FeatureStructure,
    b: &'a FeatureStructure,
    fwd: HashMap<NodeId, NodeId>,
    bwd: HashMap<NodeId, NodeId>,
}

impl Iso<'_> {
    fn solve(&mut self, mut tasks: Vec<Task>) -> bool {
        while let Some(task) = tasks.pop() {
            match task {
                Task::Pair(x, y) => {
                    if !self.pair(x, y, &mut tasks) {
                        return false;
                    }
                }
                Task::Members(xs, ys) => {
                    let Some((first, rest)) = xs.split_first() else {
                        continue;
                    };
                    for (j, y) in ys.iter().enumerate() {
                        let (fwd, bwd) = (self.fwd.clone(), self.bwd.clone());
                        let mut branch = tasks.clone();
                        let mut others = ys.clone();
                        others.remove(j);
                        branch.push(Task::Members(rest.to_vec(), others));
                        branch.push(Task::Pair(*first, *y));
                        if self.solve(branch) {
                            return true;
                        }
                        self.fwd = fwd;
                        self.bwd = bwd;
                    }
                    return false;
                }
            }
        }
        true
    }

    fn pair(&mut self, x: NodeId, y: NodeId, tasks: &mut Vec<Task>) -> bool {
        match (self.fwd.get(&x), self.bwd.get(&y)) {
            (Some(fx), Some(by)) => return *fx == y && *by == x,
            (None, None) => {}
            _ => return false,
        }
        let (nx, ny) = (self.a.node(x), self.b.node(y));
        if nx.sort != ny.sort {
            return false;
        }
        self.fwd.insert(x, y);
        self.bwd.insert(y, x);
        match (&nx.kind, &ny.kind) {
            (NodeKind::Atomic(u), NodeKind::Atomic(v)) => u == v,
            (NodeKind::Complex(fx), NodeKind::Complex(fy)) => {
                if fx.len() != fy.len() {
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
                if mx.len() != my.len() {
                    return false;
                }
                tasks.push(Task::Members(mx.clone(), my.clone()));
                true
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(s: &str) -> FeatureStructure {
        FeatureStructure::parse(s).unwrap()
    }

    #[test]
    fn tag_renaming_and_member_order() {
        assert!(struct_equal(
            &fs("[top A: #1 [top] B: #1 REST: {[top X: a] [top X: b]}]"),
            &fs("[top A: #7 [top] B: #7 REST: {[top X: b] [top X: a]}]"),
        ));
    }

    #[test]
    fn distinguishes_sharing_and_atoms() {
        assert!(!struct_equal(
            &fs("[top A: #1 [top] B: #1]"),
            &fs("[top A: [top] B: [top]]")
        ));
        assert!(!struct_equal(
            &FeatureStructure::atom("Magn"),
            &FeatureStructure::atom("Oper")
        ));
        assert!(!struct_equal(&fs("[a]"), &fs("[b]")));
    }

    #[test]
    fn members_sharing_outside_node() {
        let x = fs("[top V: #1 [top] REST: {[top I: #1] [top I: [top]]}]");
        let y = fs("[top V: #1 [top] REST: {[top I: [top]] [top I: #1]}]");
        let z = fs("[top V: [top] REST: {[top I: #1 [top]] [top I: #1]}]");
        assert!(struct_equal(&x, &y));
        assert!(!struct_equal(&x, &z));
    }
}
