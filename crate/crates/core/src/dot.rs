//! Hasse diagrams in DOT format.
//!
//! Only covering pairs are drawn, one `a -> b;` edge each, with node
//! declarations and edges in canonical order.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::ideal::Completion;
use crate::order::Poset;

#[derive(Debug, Error)]
#[error("cannot write {path}: {source}")]
pub struct IoFailure {
    pub path: PathBuf,
    #[source]
    pub source: io::Error,
}

fn header(name: &str, out: &mut String) {
    out.push_str("digraph ");
    out.push_str(name);
    out.push_str(" {\n");
}

fn edges(p: &Poset, out: &mut String) {
    for (x, y) in p.covers() {
        out.push_str(&format!("  {} -> {};\n", p.element(x), p.element(y)));
    }
}

pub fn poset_to_dot(name: &str, p: &Poset) -> String {
    let mut out = String::new();
    header(name, &mut out);
    for e in p.elements() {
        out.push_str(&format!("  {e};\n"));
    }
    edges(p, &mut out);
    out.push_str("}\n");
    out
}

/// Nodes are the completion's `I<k>` names, labeled with their members.
pub fn completion_to_dot(name: &str, c: &Completion) -> String {
    let mut out = String::new();
    header(name, &mut out);
    for (k, e) in c.poset().elements().iter().enumerate() {
        out.push_str(&format!("  {e} [label=\"{}\"];\n", c.label(k)));
    }
    edges(c.poset(), &mut out);
    out.push_str("}\n");
    out
}

pub fn write_dot(path: &Path, dot: &str) -> Result<(), IoFailure> {
    fs::write(path, dot).map_err(|source| IoFailure {
        path: path.to_path_buf(),
        source,
    })
}
