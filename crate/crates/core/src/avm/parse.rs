//! Reader for the textual AVM form.
//!
//! ```text
//! value := ('#' n)? body?
//! body  := '[' sort (FEAT ':' value)* ']' | '{' value* '}' | atom ('@' sort)?
//! ```
//! A tag with no body is a reference; its first bare occurrence stands for
//! an empty `top` node that a later tagged body may fill in.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{AvmError, FeatureStructure, Node, NodeId, NodeKind, ATOM, TOP};

pub(super) fn parse(text: &str) -> Result<FeatureStructure, AvmError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        nodes: Vec::new(),
        tags: HashMap::new(),
        placeholders: HashSet::new(),
    };
    let root = p.value()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    FeatureStructure::from_nodes(p.nodes, root)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    nodes: Vec<Node>,
    tags: HashMap<u32, NodeId>,
    placeholders: HashSet<NodeId>,
}

fn is_symbol_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '[' | ']' | '{' | '}' | '#' | '"' | '@' | ':')
}

impl Parser<'_> {
    fn err(&self, message: &str) -> AvmError {
        AvmError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn symbol(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_symbol_char(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        (self.pos > start).then(|| self.src[start..self.pos].to_string())
    }

    fn string(&mut self) -> Result<String, AvmError> {
        // opening quote already consumed
        let mut out = String::new();
        let mut chars = self.src[self.pos..].char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.pos += i + 1;
                    return Ok(out);
                }
                '\\' => match chars.next() {
                    Some((_, e)) => out.push(e),
                    None => break,
                },
                _ => out.push(c),
            }
        }
        Err(self.err("unterminated string"))
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        NodeId(self.nodes.len() as u32 - 1)
    }

    fn value(&mut self) -> Result<NodeId, AvmError> {
        let tag = if self.eat('#') {
            let digits = self
                .symbol()
                .ok_or_else(|| self.err("expected tag number"))?;
            Some(
                digits
                    .parse::<u32>()
                    .map_err(|_| self.err("tag must be a number"))?,
            )
        } else {
            None
        };
        self.skip_ws();
        let has_body = match self.peek() {
            Some('[') | Some('{') | Some('"') => true,
            Some(c) => is_symbol_char(c) && !self.at_feature_name(),
            None => false,
        };
        let Some(tag) = tag else {
            return self.body();
        };
        match (self.tags.get(&tag).copied(), has_body) {
            (Some(id), false) => Ok(id),
            (None, false) => {
                let id = self.push(Node::empty(TOP));
                self.placeholders.insert(id);
                self.tags.insert(tag, id);
                Ok(id)
            }
            (Some(id), true) => {
                if !self.placeholders.remove(&id) {
                    return Err(self.err("tag defined twice"));
                }
                let body = self.body()?;
                self.nodes[id.index()] = self.nodes[body.index()].clone();
                Ok(id)
            }
            (None, true) => {
                let id = self.body()?;
                self.tags.insert(tag, id);
                Ok(id)
            }
        }
    }

    // `FOO:` starts a feature, so a bare tag followed by one has no body.
    fn at_feature_name(&self) -> bool {
        let rest = &self.src[self.pos..];
        let end = rest
            .find(|c: char| !is_symbol_char(c))
            .unwrap_or(rest.len());
        rest[end..].trim_start().starts_with(':')
    }

    fn body(&mut self) -> Result<NodeId, AvmError> {
        if self.eat('[') {
            let sort = self.symbol().ok_or_else(|| self.err("expected sort"))?;
            let mut feats = BTreeMap::new();
            while !self.eat(']') {
                let name = self.symbol().ok_or_else(|| self.err("expected feature"))?;
                if !self.eat(':') {
                    return Err(self.err("expected `:`"));
                }
                let v = self.value()?;
                if feats.insert(name.clone(), v).is_some() {
                    return Err(AvmError::DuplicateFeature(name));
                }
            }
            return Ok(self.push(Node {
                sort,
                kind: NodeKind::Complex(feats),
            }));
        }
        if self.eat('{') {
            let mut members = Vec::new();
            while !self.eat('}') {
                if self.pos >= self.src.len() {
                    return Err(self.err("unterminated set"));
                }
                members.push(self.value()?);
            }
            return Ok(self.push(Node {
                sort: TOP.to_string(),
                kind: NodeKind::Set(members),
            }));
        }
        let value = if self.eat('"') {
            self.string()?
        } else {
            self.symbol().ok_or_else(|| self.err("expected value"))?
        };
        let sort = if self.eat('@') {
            self.symbol().ok_or_else(|| self.err("expected sort"))?
        } else {
            ATOM.to_string()
        };
        Ok(self.push(Node {
            sort,
            kind: NodeKind::Atomic(value),
        }))
    }
}
