//! Random small feature structures and an independent unification oracle
//! based on path equivalence.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use std::path::PathBuf;

use lexfun::avm::{FeatureStructure, FsBuilder, NodeId, NodeKind, SortHierarchy};
use lexfun::lexicon::{load_sources, Lexicon, Source};
use rand::rngs::StdRng;
use rand::Rng;

pub const FEATURES: [&str; 3] = ["F", "G", "H"];
pub const ATOMS: [&str; 4] = ["a", "b", "c", "d"];
const COMPLEX_SORTS: [&str; 5] = ["top", "p", "q", "r", "t"];

/// p and q meet in r; t meets neither.
const DECLS: [(&str, &[&str]); 5] = [
    ("p", &["top"]),
    ("q", &["top"]),
    ("r", &["p", "q"]),
    ("t", &["top"]),
    ("atom", &["top"]),
];

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// The shipped fixture sources, by file name.
pub fn fixture_sources() -> Vec<Source> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|d| d.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "lex"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            Source::new(name, std::fs::read_to_string(p).unwrap())
        })
        .collect()
}

pub fn fixtures() -> Lexicon {
    match load_sources(&fixture_sources()) {
        Ok((lex, _)) => lex,
        Err(d) => panic!("fixtures: {d:?}"),
    }
}

pub fn sorts() -> SortHierarchy {
    SortHierarchy::new(DECLS.iter().map(|(c, ps)| (*c, ps.to_vec()))).unwrap()
}

/// Brute-force greatest lower bound over the same declarations.
pub fn oracle_meet(a: &str, b: &str) -> Option<String> {
    let mut anc: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    anc.insert("top", ["top"].into());
    for _ in 0..DECLS.len() {
        for (c, ps) in DECLS {
            let mut s: BTreeSet<&str> = [c].into();
            for p in ps {
                s.insert(p);
                if let Some(up) = anc.get(p) {
                    s.extend(up.iter().copied());
                }
            }
            anc.insert(c, s);
        }
    }
    let lower: Vec<&str> = anc
        .iter()
        .filter(|(_, up)| up.contains(a) && up.contains(b))
        .map(|(s, _)| *s)
        .collect();
    let maximal: Vec<&str> = lower
        .iter()
        .copied()
        .filter(|s| !lower.iter().any(|o| o != s && anc[s].contains(o)))
        .collect();
    match maximal.as_slice() {
        [m] => Some(m.to_string()),
        _ => None,
    }
}

/// A structure of at most `max_nodes` nodes over [`FEATURES`] and
/// [`ATOMS`], with random sharing. No sets.
pub fn random_fs(rng: &mut StdRng, max_nodes: usize) -> FeatureStructure {
    random_fs_over(rng, max_nodes, &FEATURES)
}

pub fn random_fs_over(rng: &mut StdRng, max_nodes: usize, features: &[&str]) -> FeatureStructure {
    let n = rng.random_range(1..=max_nodes);
    // kinds: None = complex(sort), Some(atom)
    let mut atomic: Vec<Option<&str>> = vec![None];
    let mut sort: Vec<&str> = vec![COMPLEX_SORTS[rng.random_range(0..COMPLEX_SORTS.len())]];
    let mut edges: Vec<BTreeMap<&str, usize>> = vec![BTreeMap::new()];
    for j in 1..n {
        let parents: Vec<usize> = (0..j)
            .filter(|i| atomic[*i].is_none() && edges[*i].len() < features.len())
            .collect();
        if parents.is_empty() {
            break;
        }
        let p = parents[rng.random_range(0..parents.len())];
        let free: Vec<&str> = features
            .iter()
            .copied()
            .filter(|f| !edges[p].contains_key(f))
            .collect();
        let f = free[rng.random_range(0..free.len())];
        edges[p].insert(f, j);
        if rng.random_bool(0.4) {
            atomic.push(Some(ATOMS[rng.random_range(0..ATOMS.len())]));
            sort.push("atom");
        } else {
            atomic.push(None);
            sort.push(COMPLEX_SORTS[rng.random_range(0..COMPLEX_SORTS.len())]);
        }
        edges.push(BTreeMap::new());
    }
    let n = atomic.len();
    // extra edges create reentrancy; targets stay later than sources
    for i in 0..n {
        if atomic[i].is_some() {
            continue;
        }
        for f in features {
            if !edges[i].contains_key(f) && i + 1 < n && rng.random_bool(0.25) {
                let j = rng.random_range(i + 1..n);
                edges[i].insert(f, j);
            }
        }
    }
    let mut b = FsBuilder::new();
    let mut ids: Vec<Option<NodeId>> = vec![None; n];
    for i in (0..n).rev() {
        let id = match atomic[i] {
            Some(v) => b.atom(v),
            None => {
                let feats: Vec<(&str, NodeId)> = edges[i]
                    .iter()
                    .map(|(f, j)| (*f, ids[*j].expect("children built first")))
                    .collect();
                b.complex(sort[i], feats)
            }
        };
        ids[i] = Some(id);
    }
    b.finish(ids[0].unwrap()).unwrap()
}

/// Every path of `fs` with the node it reaches.
pub fn paths(fs: &FeatureStructure) -> Vec<(Vec<String>, NodeId)> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), fs.root())];
    while let Some((p, id)) = stack.pop() {
        if let NodeKind::Complex(m) = &fs.node(id).kind {
            for (f, c) in m {
                let mut q = p.clone();
                q.push(f.clone());
                stack.push((q, *c));
            }
        }
        out.push((p, id));
    }
    out
}

/// Sort, atom value and features of one path class.
type Label = (String, Option<String>, BTreeMap<String, usize>);

struct Closure {
    ids: HashMap<Vec<String>, usize>,
    paths: Vec<Vec<String>>,
    parent: Vec<usize>,
    sorts: Vec<Vec<String>>,
    atoms: Vec<Vec<String>>,
}

impl Closure {
    fn id(&mut self, p: &[String]) -> usize {
        if let Some(i) = self.ids.get(p) {
            return *i;
        }
        let i = self.paths.len();
        self.ids.insert(p.to_vec(), i);
        self.paths.push(p.to_vec());
        self.parent.push(i);
        self.sorts.push(Vec::new());
        self.atoms.push(Vec::new());
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.parent[b] = a;
        true
    }
}

/// Unification by path equivalence: the union of both path sets, closed
/// under "equal paths have equal extensions", then checked for sort meets,
/// atom agreement and acyclicity. `None` is failure.
pub fn oracle_unify(a: &FeatureStructure, b: &FeatureStructure) -> Option<FeatureStructure> {
    let mut c = Closure {
        ids: HashMap::new(),
        paths: Vec::new(),
        parent: Vec::new(),
        sorts: Vec::new(),
        atoms: Vec::new(),
    };
    for fs in [a, b] {
        let mut by_node: HashMap<NodeId, usize> = HashMap::new();
        for (p, node) in paths(fs) {
            let i = c.id(&p);
            let n = fs.node(node);
            c.sorts[i].push(n.sort.clone());
            if let NodeKind::Atomic(v) = &n.kind {
                c.atoms[i].push(v.clone());
            }
            match by_node.get(&node) {
                Some(j) => {
                    c.union(*j, i);
                }
                None => {
                    by_node.insert(node, i);
                }
            }
        }
    }
    loop {
        let mut changed = false;
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..c.paths.len() {
            let r = c.find(i);
            classes.entry(r).or_default().push(i);
        }
        for members in classes.values() {
            // a path equal to one of its own prefixes means a cycle
            for x in members {
                for y in members {
                    let (px, py) = (&c.paths[*x], &c.paths[*y]);
                    if px.len() < py.len() && py.starts_with(px) {
                        return None;
                    }
                }
            }
            let mut feats: BTreeSet<String> = BTreeSet::new();
            for m in members {
                let pm = c.paths[*m].clone();
                for q in c.paths.clone() {
                    if q.len() == pm.len() + 1 && q.starts_with(&pm) {
                        feats.insert(q.last().unwrap().clone());
                    }
                }
            }
            for f in feats {
                let mut ext = Vec::new();
                for m in members {
                    let mut q = c.paths[*m].clone();
                    q.push(f.clone());
                    if !c.ids.contains_key(&q) {
                        changed = true;
                    }
                    ext.push(c.id(&q));
                }
                for w in ext.windows(2) {
                    changed |= c.union(w[0], w[1]);
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..c.paths.len() {
        let r = c.find(i);
        classes.entry(r).or_default().push(i);
    }
    let mut label: BTreeMap<usize, Label> = BTreeMap::new();
    for (r, members) in &classes {
        let mut sort = "top".to_string();
        let mut atom: Option<String> = None;
        for m in members {
            for s in &c.sorts[*m] {
                sort = oracle_meet(&sort, s)?;
            }
            for v in &c.atoms[*m] {
                match &atom {
                    Some(a) if a != v => return None,
                    _ => atom = Some(v.clone()),
                }
            }
        }
        let mut feats = BTreeMap::new();
        for m in members {
            let pm = c.paths[*m].clone();
            for q in c.paths.clone() {
                if q.len() == pm.len() + 1 && q.starts_with(&pm) {
                    let qi = c.ids[&q];
                    feats.insert(q.last().unwrap().clone(), c.find(qi));
                }
            }
        }
        if atom.is_some() && !feats.is_empty() {
            return None;
        }
        label.insert(*r, (sort, atom, feats));
    }

    let root = {
        let i = c.ids[&Vec::<String>::new()];
        c.find(i)
    };
    let mut b = FsBuilder::new();
    let mut built: BTreeMap<usize, NodeId> = BTreeMap::new();
    fn build(
        r: usize,
        label: &BTreeMap<usize, Label>,
        b: &mut FsBuilder,
        built: &mut BTreeMap<usize, NodeId>,
    ) -> NodeId {
        if let Some(id) = built.get(&r) {
            return *id;
        }
        let (sort, atom, feats) = &label[&r];
        let id = match atom {
            Some(v) => {
                let id = b.atom(v.clone());
                debug_assert_eq!(sort, "atom");
                id
            }
            None => {
                let kids: Vec<(String, NodeId)> = feats
                    .iter()
                    .map(|(f, k)| (f.clone(), build(*k, label, b, built)))
                    .collect();
                b.complex(sort.clone(), kids)
            }
        };
        built.insert(r, id);
        id
    }
    let id = build(root, &label, &mut b, &mut built);
    Some(b.finish(id).unwrap())
}
