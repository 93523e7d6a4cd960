//! Newick reading and writing.
//!
//! Internal node labels are accepted and dropped. Nodes with a single child
//! are spliced out, their branch added to the child's.

use std::collections::HashSet;

use crate::error::{Error, Result};

use super::tree::{Node, PhyloTree};

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    nodes: Vec<Node>,
    seen: HashSet<String>,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn subtree(&mut self) -> Result<usize> {
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                children.push(self.subtree()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => {
                        return err(
                            self.pos,
                            format!("expected ',' or ')', found {:?}", c as char),
                        )
                    }
                    None => return err(self.pos, "unbalanced parentheses"),
                }
            }
        }
        let label_at = self.pos;
        let label = self.label()?;
        let length = self.length()?;
        if children.is_empty() {
            match &label {
                None => return err(label_at, "leaf without a label"),
                Some(l) if !self.seen.insert(l.clone()) => {
                    return err(label_at, format!("duplicate leaf label {l}"))
                }
                Some(_) => {}
            }
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            parent: None,
            children: children.clone(),
            label: if children.is_empty() { label } else { None },
            length: length.unwrap_or(0.0),
        });
        if children.len() == 1 {
            // splice out the unary node
            let child = children[0];
            self.nodes[child].length += self.nodes[id].length;
            self.nodes.pop();
            return Ok(child);
        }
        Ok(id)
    }

    fn label(&mut self) -> Result<Option<String>> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'\'') {
            let mut out = String::new();
            self.pos += 1;
            loop {
                let rest = &self.text[self.pos..];
                let Some(q) = rest.find('\'') else {
                    return err(start, "unterminated quoted label");
                };
                out.push_str(&rest[..q]);
                self.pos += q + 1;
                if self.bytes.get(self.pos) == Some(&b'\'') {
                    out.push('\'');
                    self.pos += 1;
                } else {
                    return Ok(Some(out));
                }
            }
        }
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if b"(),:;".contains(&c) || c.is_ascii_whitespace() || c == b'\'' {
                break;
            }
            self.pos += 1;
        }
        Ok((self.pos > start).then(|| self.text[start..self.pos].to_string()))
    }

    fn length(&mut self) -> Result<Option<f64>> {
        if self.peek() != Some(b':') {
            return Ok(None);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric()
                || b"+-.".contains(&self.bytes[self.pos]))
        {
            self.pos += 1;
        }
        let tok = &self.text[start..self.pos];
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 => Ok(Some(v)),
            Ok(v) if v.is_finite() => err(start, format!("negative branch length {tok}")),
            _ => err(start, format!("bad branch length {tok:?}")),
        }
    }
}

/// Parses one `;`-terminated Newick tree.
pub fn parse_newick(text: &str) -> Result<PhyloTree> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        nodes: Vec::new(),
        seen: HashSet::new(),
    };
    let root = p.subtree()?;
    match p.peek() {
        Some(b';') => p.pos += 1,
        Some(b')') => return err(p.pos, "unbalanced parentheses"),
        Some(c) => return err(p.pos, format!("expected ';', found {:?}", c as char)),
        None => return err(p.pos, "missing ';'"),
    }
    if p.peek().is_some() {
        return err(p.pos, "trailing characters after ';'");
    }

    // drop nodes orphaned by splicing
    let mut keep = vec![false; p.nodes.len()];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        keep[v] = true;
        stack.extend(p.nodes[v].children.iter().copied());
    }
    let mut remap = vec![usize::MAX; p.nodes.len()];
    let mut nodes = Vec::new();
    for (i, n) in p.nodes.iter().enumerate() {
        if keep[i] {
            remap[i] = nodes.len();
            nodes.push(n.clone());
        }
    }
    for n in &mut nodes {
        for c in &mut n.children {
            *c = remap[*c];
        }
    }
    PhyloTree::from_nodes(nodes, remap[root]).map_err(|e| Error::Parse {
        offset: 0,
        message: e.to_string(),
    })
}

/// Parses one tree per non-empty line.
pub fn parse_newick_lines(text: &str) -> Result<Vec<PhyloTree>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_newick)
        .collect()
}

fn needs_quotes(label: &str) -> bool {
    label.is_empty()
        || label
            .bytes()
            .any(|c| b"(),:;'[]".contains(&c) || c.is_ascii_whitespace())
}

/// Canonical Newick text: children ordered by the smallest leaf label below
/// them, no length on the root.
pub fn write_newick(tree: &PhyloTree) -> String {
    let sets = tree.leaf_sets();
    let mut out = String::new();
    write_node(tree, tree.root(), &sets, true, &mut out);
    out.push(';');
    out
}

/// Canonical Newick text without branch lengths; equal strings mean equal
/// topologies.
pub fn write_topology(tree: &PhyloTree) -> String {
    let sets = tree.leaf_sets();
    let mut out = String::new();
    write_node(tree, tree.root(), &sets, false, &mut out);
    out.push(';');
    out
}

fn write_node(tree: &PhyloTree, v: usize, sets: &[Vec<String>], lengths: bool, out: &mut String) {
    let node = tree.node(v);
    if node.children.is_empty() {
        let label = node.label.as_deref().unwrap_or("");
        if needs_quotes(label) {
            out.push('\'');
            out.push_str(&label.replace('\'', "''"));
            out.push('\'');
        } else {
            out.push_str(label);
        }
    } else {
        let mut kids = node.children.clone();
        kids.sort_by(|a, b| sets[*a][0].cmp(&sets[*b][0]));
        out.push('(');
        for (k, c) in kids.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            write_node(tree, *c, sets, lengths, out);
        }
        out.push(')');
    }
    if lengths && v != tree.root() {
        out.push(':');
        out.push_str(&node.length.to_string());
    }
}
