//! Typed feature structures with reentrancy.
//!
//! A [`FeatureStructure`] is a rooted, finite, acyclic graph stored in a
//! node arena. Reentrancy is node sharing: two paths carry the same tag iff
//! they reach the same [`NodeId`]. Tags only exist in the textual form
//! (`#1`, `#2`, ...) and are assigned on rendering.

mod equal;
mod parse;
mod sort;
mod subsume;
mod unify;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub use equal::struct_equal;
pub use sort::{SortError, SortHierarchy, TOP};
pub use subsume::subsumes;
pub use unify::{unify, UnifyError};

pub(crate) use unify::Arena;

/// Features whose values may be sets.
pub const SET_FEATURES: [&str; 4] = ["REST", "COLLS", "ADJ_DTRS", "COMP_DTRS"];

/// Sort given to atomic values that carry no explicit sort.
pub const ATOM: &str = "atom";

pub fn is_set_feature(name: &str) -> bool {
    SET_FEATURES.contains(&name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Atomic(String),
    Complex(BTreeMap<String, NodeId>),
    Set(Vec<NodeId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub sort: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn empty(sort: impl Into<String>) -> Self {
        Node {
            sort: sort.into(),
            kind: NodeKind::Complex(BTreeMap::new()),
        }
    }

    pub fn atom(value: impl Into<String>) -> Self {
        Node {
            sort: ATOM.to_string(),
            kind: NodeKind::Atomic(value.into()),
        }
    }

    fn children(&self) -> Vec<NodeId> {
        match &self.kind {
            NodeKind::Atomic(_) => Vec::new(),
            NodeKind::Complex(fs) => fs.values().copied().collect(),
            NodeKind::Set(ms) => ms.clone(),
        }
    }
}

/// Structural defects. Unification failure is not one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AvmError {
    #[error("feature structure contains a cycle through node {0}")]
    Cycle(u32),
    #[error("node {0} is referenced but not defined")]
    DanglingNode(u32),
    #[error("set value under non-set feature `{0}`")]
    MisplacedSet(String),
    #[error("set directly inside a set")]
    NestedSet,
    #[error("duplicate feature `{0}`")]
    DuplicateFeature(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// A sequence of feature names; the empty path denotes the root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Path(pub Vec<String>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    /// Parses `SEM_IND.VAR`-style dotted paths.
    pub fn parse(s: &str) -> Self {
        if s.is_empty() {
            return Path::root();
        }
        Path(s.split('.').map(str::to_string).collect())
    }
}

impl<S: Into<String>> FromIterator<S> for Path {
    fn from_iter<T: IntoIterator<Item = S>>(iter: T) -> Self {
        Path(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("."))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureStructure {
    nodes: Vec<Node>,
    root: NodeId,
}

impl FeatureStructure {
    /// The most general structure: an empty complex node of sort `top`.
    pub fn top() -> Self {
        FeatureStructure {
            nodes: vec![Node::empty(TOP)],
            root: NodeId(0),
        }
    }

    pub fn atom(value: impl Into<String>) -> Self {
        FeatureStructure {
            nodes: vec![Node::atom(value)],
            root: NodeId(0),
        }
    }

    /// Validates an arena and drops nodes unreachable from `root`.
    pub fn from_nodes(nodes: Vec<Node>, root: NodeId) -> Result<Self, AvmError> {
        let n = nodes.len() as u32;
        if root.0 >= n {
            return Err(AvmError::DanglingNode(root.0));
        }
        for node in &nodes {
            for c in node.children() {
                if c.0 >= n {
                    return Err(AvmError::DanglingNode(c.0));
                }
            }
        }
        let fs = FeatureStructure { nodes, root };
        fs.check_acyclic()?;
        fs.check_sets()?;
        Ok(fs.compact())
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn sort(&self) -> &str {
        &self.node(self.root).sort
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Node reached by following `path` from the root.
    pub fn path_node(&self, path: &Path) -> Option<NodeId> {
        let mut cur = self.root;
        for feat in &path.0 {
            match &self.node(cur).kind {
                NodeKind::Complex(fs) => cur = *fs.get(feat)?,
                _ => return None,
            }
        }
        Some(cur)
    }

    /// Substructure at `path`, or `None` if some feature is missing.
    pub fn path_value(&self, path: &Path) -> Option<FeatureStructure> {
        self.path_node(path).map(|id| self.subgraph(id))
    }

    /// The atomic value at `path`, if the path ends in an atom.
    pub fn atom_at(&self, path: &Path) -> Option<&str> {
        match &self.node(self.path_node(path)?).kind {
            NodeKind::Atomic(v) => Some(v),
            _ => None,
        }
    }

    pub fn set_members_at(&self, path: &Path) -> Option<Vec<FeatureStructure>> {
        match &self.node(self.path_node(path)?).kind {
            NodeKind::Set(ms) => Some(ms.iter().map(|m| self.subgraph(*m)).collect()),
            _ => None,
        }
    }

    /// Copy of the structure rooted at `id`, sharing preserved.
    pub fn subgraph(&self, id: NodeId) -> FeatureStructure {
        FeatureStructure {
            nodes: self.nodes.clone(),
            root: id,
        }
        .compact()
    }

    /// Copy without the feature `name` at the root.
    pub fn without_feature(&self, name: &str) -> FeatureStructure {
        let mut nodes = self.nodes.clone();
        if let NodeKind::Complex(fs) = &mut nodes[self.root.index()].kind {
            fs.remove(name);
        }
        FeatureStructure {
            nodes,
            root: self.root,
        }
        .compact()
    }

    pub(crate) fn from_parts_unchecked(nodes: Vec<Node>, root: NodeId) -> Self {
        FeatureStructure { nodes, root }
    }

    fn check_acyclic(&self) -> Result<(), AvmError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut marks = vec![Mark::New; self.nodes.len()];
        // iterative DFS: (node, next child index)
        let mut stack: Vec<(NodeId, usize)> = vec![(self.root, 0)];
        marks[self.root.index()] = Mark::Open;
        while let Some((id, i)) = stack.pop() {
            let children = self.node(id).children();
            if i < children.len() {
                stack.push((id, i + 1));
                let c = children[i];
                match marks[c.index()] {
                    Mark::Open => return Err(AvmError::Cycle(c.0)),
                    Mark::New => {
                        marks[c.index()] = Mark::Open;
                        stack.push((c, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                marks[id.index()] = Mark::Done;
            }
        }
        Ok(())
    }

    fn check_sets(&self) -> Result<(), AvmError> {
        if matches!(self.node(self.root).kind, NodeKind::Set(_)) {
            return Err(AvmError::MisplacedSet(String::new()));
        }
        for node in &self.nodes {
            match &node.kind {
                NodeKind::Complex(fs) => {
                    for (f, c) in fs {
                        if matches!(self.node(*c).kind, NodeKind::Set(_)) && !is_set_feature(f) {
                            return Err(AvmError::MisplacedSet(f.clone()));
                        }
                    }
                }
                NodeKind::Set(ms) => {
                    if ms
                        .iter()
                        .any(|m| matches!(self.node(*m).kind, NodeKind::Set(_)))
                    {
                        return Err(AvmError::NestedSet);
                    }
                }
                NodeKind::Atomic(_) => {}
            }
        }
        Ok(())
    }

    /// Renumbers reachable nodes in depth-first order and drops the rest.
    pub(crate) fn compact(self) -> Self {
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        let mut order = Vec::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if map.contains_key(&id) {
                continue;
            }
            map.insert(id, NodeId(order.len() as u32));
            order.push(id);
            let mut cs = self.node(id).children();
            cs.reverse();
            stack.extend(cs);
        }
        let nodes = order
            .iter()
            .map(|old| {
                let n = self.node(*old);
                let kind = match &n.kind {
                    NodeKind::Atomic(v) => NodeKind::Atomic(v.clone()),
                    NodeKind::Complex(fs) => {
                        NodeKind::Complex(fs.iter().map(|(f, c)| (f.clone(), map[c])).collect())
                    }
                    NodeKind::Set(ms) => NodeKind::Set(ms.iter().map(|c| map[c]).collect()),
                };
                Node {
                    sort: n.sort.clone(),
                    kind,
                }
            })
            .collect();
        FeatureStructure {
            nodes,
            root: map[&self.root],
        }
    }

    /// Number of incoming edges per node (the root counts one extra).
    pub(crate) fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.nodes.len()];
        deg[self.root.index()] += 1;
        for node in &self.nodes {
            for c in node.children() {
                deg[c.index()] += 1;
            }
        }
        deg
    }

    /// Nodes of a set member's subgraph that are reachable only through
    /// that member.
    pub(crate) fn member_internal_nodes(&self, member: NodeId, deg: &[usize]) -> HashSet<NodeId> {
        // member reach in topological order
        let mut topo = Vec::new();
        let mut seen = HashSet::new();
        fn visit(
            fs: &FeatureStructure,
            id: NodeId,
            seen: &mut HashSet<NodeId>,
            out: &mut Vec<NodeId>,
        ) {
            if !seen.insert(id) {
                return;
            }
            for c in fs.node(id).children() {
                visit(fs, c, seen, out);
            }
            out.push(id);
        }
        visit(self, member, &mut seen, &mut topo);
        topo.reverse();

        let mut internal = HashSet::new();
        if deg[member.index()] != 1 {
            return internal;
        }
        internal.insert(member);
        let mut from_internal: HashMap<NodeId, usize> = HashMap::new();
        for id in &topo {
            if *id != member {
                let inner = from_internal.get(id).copied().unwrap_or(0);
                if inner == deg[id.index()] {
                    internal.insert(*id);
                } else {
                    continue;
                }
            }
            for c in self.node(*id).children() {
                *from_internal.entry(c).or_default() += 1;
            }
        }
        internal
    }

    /// Deduplicates set members that are identical up to member-local
    /// structure. Repeats until no duplicates remain.
    pub(crate) fn normalize_sets(mut self) -> Self {
        loop {
            let deg = self.in_degrees();
            let mut changed = false;
            for i in 0..self.nodes.len() {
                let NodeKind::Set(ms) = &self.nodes[i].kind else {
                    continue;
                };
                let mut keys = HashSet::new();
                let mut kept = Vec::new();
                for m in ms {
                    let internal = self.member_internal_nodes(*m, &deg);
                    let key = if internal.is_empty() {
                        format!("@{}", m.0)
                    } else {
                        let mut tags = HashMap::new();
                        self.member_key(*m, &internal, &deg, &mut tags)
                    };
                    if keys.insert(key) {
                        kept.push(*m);
                    }
                }
                if kept.len() != ms.len() {
                    self.nodes[i].kind = NodeKind::Set(kept);
                    changed = true;
                }
            }
            if !changed {
                return self.compact();
            }
            self = self.compact();
        }
    }

    fn member_key(
        &self,
        id: NodeId,
        internal: &HashSet<NodeId>,
        deg: &[usize],
        tags: &mut HashMap<NodeId, usize>,
    ) -> String {
        if !internal.contains(&id) {
            return format!("@{}", id.0);
        }
        if let Some(t) = tags.get(&id) {
            return format!("#{t}");
        }
        let mut out = String::new();
        if deg[id.index()] > 1 {
            let t = tags.len() + 1;
            tags.insert(id, t);
            out.push_str(&format!("#{t}="));
        }
        let node = self.node(id);
        match &node.kind {
            NodeKind::Atomic(v) => out.push_str(&format!("{}:{}", node.sort, v)),
            NodeKind::Complex(fs) => {
                out.push('[');
                out.push_str(&node.sort);
                for (f, c) in fs {
                    out.push(' ');
                    out.push_str(f);
                    out.push(':');
                    let k = self.member_key(*c, internal, deg, tags);
                    out.push_str(&k);
                }
                out.push(']');
            }
            NodeKind::Set(ms) => {
                let mut ks: Vec<String> = ms
                    .iter()
                    .map(|m| self.member_key(*m, internal, deg, tags))
                    .collect();
                ks.sort();
                out.push('{');
                out.push_str(&ks.join(" "));
                out.push('}');
            }
        }
        out
    }

    /// Parses the textual AVM form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self, AvmError> {
        parse::parse(text)
    }
}

/// Renders `[sort FEAT: value ...]`, `{...}` for sets, bare symbols for
/// atoms of sort `atom` (`value@sort` otherwise), and `#n` on shared nodes.
impl fmt::Display for FeatureStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.in_degrees();
        let mut tags: HashMap<NodeId, usize> = HashMap::new();
        self.render(self.root, &deg, &mut tags, f)
    }
}

impl FeatureStructure {
    fn render(
        &self,
        id: NodeId,
        deg: &[usize],
        tags: &mut HashMap<NodeId, usize>,
        f: &mut fmt::Formatter<'_>,
    ) -> fmt::Result {
        if let Some(t) = tags.get(&id) {
            return write!(f, "#{t}");
        }
        if deg[id.index()] > 1 {
            let t = tags.len() + 1;
            tags.insert(id, t);
            write!(f, "#{t} ")?;
        }
        let node = self.node(id);
        match &node.kind {
            NodeKind::Atomic(v) => {
                write!(f, "{}", quote_symbol(v))?;
                if node.sort != ATOM {
                    write!(f, "@{}", node.sort)?;
                }
                Ok(())
            }
            NodeKind::Complex(fs) => {
                write!(f, "[{}", node.sort)?;
                for (name, c) in fs {
                    write!(f, " {name}: ")?;
                    self.render(*c, deg, tags, f)?;
                }
                write!(f, "]")
            }
            NodeKind::Set(ms) => {
                write!(f, "{{")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    self.render(*m, deg, tags, f)?;
                }
                write!(f, "}}")
            }
        }
    }
}

fn quote_symbol(v: &str) -> String {
    let plain = !v.is_empty()
        && v.chars().all(|c| {
            !c.is_whitespace() && !matches!(c, '[' | ']' | '{' | '}' | '#' | '"' | '@' | ':')
        });
    if plain {
        v.to_string()
    } else {
        format!("{v:?}")
    }
}

/// Incremental construction of feature structures.
#[derive(Debug, Default)]
pub struct FsBuilder {
    nodes: Vec<Node>,
}

impl FsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        NodeId(self.nodes.len() as u32 - 1)
    }

    pub fn atom(&mut self, value: impl Into<String>) -> NodeId {
        self.add(Node::atom(value))
    }

    pub fn empty(&mut self, sort: impl Into<String>) -> NodeId {
        self.add(Node::empty(sort))
    }

    pub fn complex<S: Into<String>>(
        &mut self,
        sort: impl Into<String>,
        features: impl IntoIterator<Item = (S, NodeId)>,
    ) -> NodeId {
        let fs = features.into_iter().map(|(k, v)| (k.into(), v)).collect();
        self.add(Node {
            sort: sort.into(),
            kind: NodeKind::Complex(fs),
        })
    }

    pub fn set(&mut self, members: Vec<NodeId>) -> NodeId {
        self.add(Node {
            sort: TOP.to_string(),
            kind: NodeKind::Set(members),
        })
    }

    /// Adds a copy of `fs` and returns the id of its root.
    pub fn graft(&mut self, fs: &FeatureStructure) -> NodeId {
        let offset = self.nodes.len() as u32;
        for n in fs.nodes() {
            let kind = match &n.kind {
                NodeKind::Atomic(v) => NodeKind::Atomic(v.clone()),
                NodeKind::Complex(m) => NodeKind::Complex(
                    m.iter()
                        .map(|(k, c)| (k.clone(), NodeId(c.0 + offset)))
                        .collect(),
                ),
                NodeKind::Set(ms) => {
                    NodeKind::Set(ms.iter().map(|c| NodeId(c.0 + offset)).collect())
                }
            };
            self.nodes.push(Node {
                sort: n.sort.clone(),
                kind,
            });
        }
        NodeId(fs.root().0 + offset)
    }

    pub fn finish(self, root: NodeId) -> Result<FeatureStructure, AvmError> {
        FeatureStructure::from_nodes(self.nodes, root)
    }
}
