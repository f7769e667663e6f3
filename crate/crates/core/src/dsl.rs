//! The line-oriented spec format.
//!
//! ```text
//! # flat booleans
//! basis Bool
//! elements bot tt ff
//! order bot <= tt
//! order bot <= ff
//! mode hasse
//! subset bot tt ff
//! ```
//!
//! `elements` and `order` may repeat; `basis`, `mode` and `subset` appear at
//! most once. Elements must be declared before an `order` or `subset` line
//! mentions them. `mode` defaults to `hasse` (closure applied). `#` starts a
//! comment; CRLF line endings are accepted.
//!
//! Family documents for the `cover` command use `set <tok>+` lines and one
//! `target <tok>*` line.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::order::{is_token, Element, Poset, PosetBuilder};
use crate::error::Result as OrderResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClosureMode {
    Strict,
    #[default]
    Hasse,
}

impl fmt::Display for ClosureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureMode::Strict => "strict",
            ClosureMode::Hasse => "hasse",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub name: String,
    pub elements: Vec<Element>,
    pub order_pairs: Vec<(Element, Element)>,
    pub closure_mode: ClosureMode,
    pub basis_subset: Option<Vec<Element>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("{line}:{col}: expected {expected}")]
    SyntaxError {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("{line}:{col}: duplicate element {name}")]
    DuplicateElement { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown element {name}")]
    UnknownElement { line: usize, col: usize, name: String },
}

/// A whitespace-separated word and its 1-based column.
struct Word<'a> {
    text: &'a str,
    col: usize,
}

fn words(line: &str) -> Vec<Word<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (col, (idx, c)) in content.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((idx, col + 1)),
            (true, Some((s, scol))) => {
                out.push(Word {
                    text: &content[s..idx],
                    col: scol,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, scol)) = start {
        out.push(Word {
            text: &content[s..],
            col: scol,
        });
    }
    out
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

fn syntax(line: usize, col: usize, expected: impl Into<String>) -> SpecError {
    SpecError::SyntaxError {
        line,
        col,
        expected: expected.into(),
    }
}

/// Column just past the last word, for "expected more" errors.
fn end_col(line: &str) -> usize {
    line.split('#').next().unwrap_or("").trim_end().chars().count() + 1
}

fn token(line: usize, w: &Word<'_>) -> Result<Element, SpecError> {
    if is_token(w.text) {
        Ok(Element::new(w.text).expect("checked token"))
    } else {
        Err(syntax(line, w.col, "a token of letters, digits and '_'"))
    }
}

pub fn parse_spec(text: &str) -> Result<SpecDocument, SpecError> {
    let mut name: Option<String> = None;
    let mut elements: Vec<Element> = Vec::new();
    let mut declared: BTreeSet<Element> = BTreeSet::new();
    let mut order_pairs = Vec::new();
    let mut mode: Option<ClosureMode> = None;
    let mut subset: Option<Vec<Element>> = None;
    let mut last_line = 0;

    let known = |declared: &BTreeSet<Element>, line: usize, w: &Word<'_>| {
        let e = token(line, w)?;
        if declared.contains(&e) {
            Ok(e)
        } else {
            Err(SpecError::UnknownElement {
                line,
                col: w.col,
                name: e.to_string(),
            })
        }
    };

    for (ln, raw) in lines(text) {
        last_line = ln;
        let ws = words(raw);
        let Some((head, rest)) = ws.split_first() else {
            continue;
        };
        match head.text {
            "basis" => {
                if name.is_some() {
                    return Err(syntax(ln, head.col, "a single `basis` line"));
                }
                match rest {
                    [n] => name = Some(token(ln, n)?.to_string()),
                    [] => return Err(syntax(ln, end_col(raw), "a basis name")),
                    [_, extra, ..] => return Err(syntax(ln, extra.col, "end of line")),
                }
            }
            "elements" => {
                if rest.is_empty() {
                    return Err(syntax(ln, end_col(raw), "at least one element"));
                }
                for w in rest {
                    let e = token(ln, w)?;
                    if !declared.insert(e.clone()) {
                        return Err(SpecError::DuplicateElement {
                            line: ln,
                            col: w.col,
                            name: e.to_string(),
                        });
                    }
                    elements.push(e);
                }
            }
            "order" => match rest {
                [lo, op, hi] if op.text == "<=" => {
                    let lo = known(&declared, ln, lo)?;
                    let hi = known(&declared, ln, hi)?;
                    order_pairs.push((lo, hi));
                }
                [_, op, ..] if op.text != "<=" => return Err(syntax(ln, op.col, "`<=`")),
                [_, _, _, extra, ..] => return Err(syntax(ln, extra.col, "end of line")),
                _ => return Err(syntax(ln, end_col(raw), "`order <element> <= <element>`")),
            },
            "mode" => {
                if mode.is_some() {
                    return Err(syntax(ln, head.col, "a single `mode` line"));
                }
                match rest {
                    [m] if m.text == "strict" => mode = Some(ClosureMode::Strict),
                    [m] if m.text == "hasse" => mode = Some(ClosureMode::Hasse),
                    [m] => return Err(syntax(ln, m.col, "`strict` or `hasse`")),
                    [] => return Err(syntax(ln, end_col(raw), "`strict` or `hasse`")),
                    [_, extra, ..] => return Err(syntax(ln, extra.col, "end of line")),
                }
            }
            "subset" => {
                if subset.is_some() {
                    return Err(syntax(ln, head.col, "a single `subset` line"));
                }
                let mut seen = BTreeSet::new();
                let mut members = Vec::new();
                for w in rest {
                    let e = known(&declared, ln, w)?;
                    if !seen.insert(e.clone()) {
                        return Err(SpecError::DuplicateElement {
                            line: ln,
                            col: w.col,
                            name: e.to_string(),
                        });
                    }
                    members.push(e);
                }
                subset = Some(members);
            }
            _ => {
                return Err(syntax(
                    ln,
                    head.col,
                    "`basis`, `elements`, `order`, `mode` or `subset`",
                ))
            }
        }
    }

    let name = name.ok_or_else(|| syntax(last_line.max(1), 1, "a `basis <name>` line"))?;
    Ok(SpecDocument {
        name,
        elements,
        order_pairs,
        closure_mode: mode.unwrap_or_default(),
        basis_subset: subset,
    })
}

impl SpecDocument {
    /// Canonical text form; `parse_spec(&doc.render()) == doc`.
    pub fn render(&self) -> String {
        let mut out = format!("basis {}\n", self.name);
        if !self.elements.is_empty() {
            let names: Vec<&str> = self.elements.iter().map(Element::as_str).collect();
            out.push_str(&format!("elements {}\n", names.join(" ")));
        }
        for (lo, hi) in &self.order_pairs {
            out.push_str(&format!("order {lo} <= {hi}\n"));
        }
        out.push_str(&format!("mode {}\n", self.closure_mode));
        if let Some(subset) = &self.basis_subset {
            let names: Vec<&str> = subset.iter().map(Element::as_str).collect();
            let line = format!("subset {}", names.join(" "));
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// Builds the poset. `force_closure` applies the closure even in strict
    /// mode.
    pub fn poset(&self, force_closure: bool, max_carrier: usize) -> OrderResult<Poset> {
        PosetBuilder::new()
            .closure(force_closure || self.closure_mode == ClosureMode::Hasse)
            .max_carrier(max_carrier)
            .build(self.elements.iter().cloned(), self.order_pairs.iter().cloned())
    }
}

/// A family of sets and a target, for covering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDocument {
    pub sets: Vec<Vec<Element>>,
    pub target: Vec<Element>,
}

pub fn parse_family(text: &str) -> Result<FamilyDocument, SpecError> {
    let mut sets = Vec::new();
    let mut target: Option<Vec<Element>> = None;
    let mut last_line = 0;
    for (ln, raw) in lines(text) {
        last_line = ln;
        let ws = words(raw);
        let Some((head, rest)) = ws.split_first() else {
            continue;
        };
        match head.text {
            "set" => {
                if rest.is_empty() {
                    return Err(syntax(ln, end_col(raw), "at least one element"));
                }
                sets.push(rest.iter().map(|w| token(ln, w)).collect::<Result<Vec<_>, _>>()?);
            }
            "target" => {
                if target.is_some() {
                    return Err(syntax(ln, head.col, "a single `target` line"));
                }
                target = Some(rest.iter().map(|w| token(ln, w)).collect::<Result<Vec<_>, _>>()?);
            }
            _ => return Err(syntax(ln, head.col, "`set` or `target`")),
        }
    }
    let target = target.ok_or_else(|| syntax(last_line.max(1), 1, "a `target` line"))?;
    Ok(FamilyDocument { sets, target })
}
