//! Line-oriented text documents for locality sets, quivers and partial
//! semigroups: a kind header, one carrier line, then one pair, arrow or
//! product per line. Diff-friendly and parseable without a structured
//! data library.
//!
//! ```text
//! locality-set          quiver                 partial-semigroup
//! elements: a b         vertices: x y          carrier: 0 1
//! a -> b                alpha: x -> y          0 * 1 = 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Labels must be
//! single tokens: nonempty, no whitespace, no `:`, not starting with `#`,
//! and not one of the reserved tokens `->`, `*`, `=`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::locality::{Label, LocalitySet};
use crate::quiver::Quiver;
use crate::semigroup::FinitePartialSemigroup;

/// A parsed document: one of the three structure kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    LocalitySet(LocalitySet),
    Quiver(Quiver),
    PartialSemigroup(FinitePartialSemigroup),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::LocalitySet(_) => "locality-set",
            Document::Quiver(_) => "quiver",
            Document::PartialSemigroup(_) => "partial-semigroup",
        }
    }
}

fn col_at(line: &str, byte_idx: usize) -> usize {
    line[..byte_idx].chars().count() + 1
}

fn end_col(line: &str) -> usize {
    line.chars().count() + 1
}

/// Whitespace-separated tokens with their 1-based character columns.
fn scan(line: &str) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push((col_at(line, s), &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((col_at(line, s), &line[s..]));
    }
    tokens
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// `A -> B` with token columns for error reporting; `col_offset` shifts
/// columns when `line` is the tail of a longer physical line.
fn parse_pair(lineno: usize, line: &str, col_offset: usize) -> Result<(&str, &str)> {
    let tokens = scan(line);
    match tokens.as_slice() {
        [(_, a), (_, arrow), (_, b)] if *arrow == "->" => Ok((a, b)),
        [_, (col, arrow), _] => Err(syntax(
            lineno,
            col + col_offset,
            format!("expected `->`, found `{arrow}`"),
        )),
        toks if toks.len() > 3 => Err(syntax(
            lineno,
            toks[3].0 + col_offset,
            "expected end of line after `A -> B`",
        )),
        _ => Err(syntax(
            lineno,
            end_col(line) + col_offset,
            "expected `A -> B`",
        )),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (kind_line, kind_text) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "empty document: expected a kind line"))?;
    let kind = kind_text.trim();

    let (header_keyword, item_hint) = match kind {
        "locality-set" => ("elements:", "`A -> B`"),
        "quiver" => ("vertices:", "`label: source -> target`"),
        "partial-semigroup" => ("carrier:", "`A * B = C`"),
        other => {
            return Err(syntax(
                kind_line,
                col_at(kind_text, kind_text.len() - kind_text.trim_start().len()),
                format!("unknown document kind `{other}`"),
            ))
        }
    };

    let (header_line, header_text) = lines.next().ok_or_else(|| {
        syntax(
            kind_line,
            end_col(kind_text),
            format!("expected a `{header_keyword}` line"),
        )
    })?;
    let header_tokens = scan(header_text);
    match header_tokens.first() {
        Some((_, kw)) if *kw == header_keyword => {}
        Some((col, kw)) => {
            return Err(syntax(
                header_line,
                *col,
                format!("expected `{header_keyword}`, found `{kw}`"),
            ))
        }
        None => unreachable!("blank lines are filtered"),
    }
    let carrier: Vec<&str> = header_tokens[1..].iter().map(|(_, t)| *t).collect();

    match kind {
        "locality-set" => {
            let mut pairs = Vec::new();
            for (lineno, line) in lines {
                pairs.push(parse_pair(lineno, line, 0)?);
            }
            LocalitySet::new(carrier, pairs).map(Document::LocalitySet)
        }
        "quiver" => {
            let mut arrows = Vec::new();
            for (lineno, line) in lines {
                let (label_part, rest) = line.split_once(':').ok_or_else(|| {
                    syntax(lineno, end_col(line), format!("expected {item_hint}"))
                })?;
                let label = label_part.trim();
                if label.is_empty() || label.chars().any(char::is_whitespace) {
                    return Err(syntax(
                        lineno,
                        1,
                        "arrow label must be a single nonempty token before `:`",
                    ));
                }
                let offset = col_at(line, line.len() - rest.len()) - 1;
                let (source, target) = parse_pair(lineno, rest, offset)?;
                arrows.push((label, source, target));
            }
            Quiver::new(carrier, arrows).map(Document::Quiver)
        }
        "partial-semigroup" => {
            let mut table: Vec<((&str, &str), &str)> = Vec::new();
            let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
            for (lineno, line) in lines {
                let tokens = scan(line);
                let (a, b, v) = match tokens.as_slice() {
                    [(_, a), (_, star), (_, b), (_, eq), (_, v)]
                        if *star == "*" && *eq == "=" =>
                    {
                        (*a, *b, *v)
                    }
                    [_, (col, star), ..] if *star != "*" => {
                        return Err(syntax(
                            lineno,
                            *col,
                            format!("expected `*`, found `{star}`"),
                        ))
                    }
                    _ => return Err(syntax(lineno, end_col(line), format!("expected {item_hint}"))),
                };
                if let Some(first) = seen.insert((a, b), lineno) {
                    return Err(Error::input(format!(
                        "duplicate product line for ({a}, {b}); first defined at line {first}"
                    )));
                }
                table.push(((a, b), v));
            }
            let relation: Vec<(&str, &str)> = table.iter().map(|((a, b), _)| (*a, *b)).collect();
            FinitePartialSemigroup::new(carrier, relation, table)
                .map(Document::PartialSemigroup)
        }
        _ => unreachable!(),
    }
}

fn check_label(label: &str) -> Result<()> {
    let bad = label.is_empty()
        || label.chars().any(char::is_whitespace)
        || label.starts_with('#')
        || label.contains(':')
        || matches!(label, "->" | "*" | "=");
    if bad {
        return Err(Error::input(format!(
            "label `{label}` cannot be written in document form"
        )));
    }
    Ok(())
}

fn header_line(keyword: &str, items: &[Label]) -> Result<String> {
    for l in items {
        check_label(l)?;
    }
    if items.is_empty() {
        Ok(keyword.to_string())
    } else {
        Ok(format!("{keyword} {}", items.join(" ")))
    }
}

/// Canonical text form: sorted carrier, one sorted item per line,
/// LF-terminated. Fails on labels the format cannot represent.
pub fn serialize_document(doc: &Document) -> Result<String> {
    let mut out = String::new();
    out.push_str(doc.kind());
    out.push('\n');
    match doc {
        Document::LocalitySet(x) => {
            out.push_str(&header_line("elements:", x.elements())?);
            out.push('\n');
            for (a, b) in x.relation() {
                check_label(a)?;
                check_label(b)?;
                out.push_str(&format!("{a} -> {b}\n"));
            }
        }
        Document::Quiver(q) => {
            out.push_str(&header_line("vertices:", q.vertices())?);
            out.push('\n');
            for arrow in q.arrows() {
                for l in [&arrow.label, &arrow.source, &arrow.target] {
                    check_label(l)?;
                }
                out.push_str(&format!(
                    "{}: {} -> {}\n",
                    arrow.label, arrow.source, arrow.target
                ));
            }
        }
        Document::PartialSemigroup(s) => {
            out.push_str(&header_line("carrier:", s.carrier())?);
            out.push('\n');
            for ((a, b), v) in s.table() {
                for l in [a, b, v] {
                    check_label(l)?;
                }
                out.push_str(&format!("{a} * {b} = {v}\n"));
            }
        }
    }
    Ok(out)
}
