//! Lattice interchange (TOML) and Hasse-diagram export (DOT).
//!
//! ```toml
//! elements = ["0", "a", "a'", "1"]
//! bottom = "0"
//! top = "1"
//! covers = [["0", "a"], ["0", "a'"], ["a", "1"], ["a'", "1"]]
//! complement = [["0", "1"], ["a", "a'"], ["a'", "a"], ["1", "0"]]
//! ```
//!
//! `covers` lists `(lower, upper)` pairs of the Hasse diagram; the order is
//! their reflexive-transitive closure. `complement` maps every element once.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use super::{Element, FiniteOrtholattice, LatticeError};

#[derive(Debug, Error)]
pub enum LatticeFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: unknown element `{label}`")]
    UnknownElement { line: usize, label: String },
    #[error("line {line}: complement of `{label}` given twice")]
    DuplicateComplement { line: usize, label: String },
    #[error("complement of `{0}` is missing")]
    MissingComplement(String),
    #[error("invalid lattice: {0}")]
    Structure(#[from] LatticeError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    elements: Vec<Spanned<String>>,
    bottom: Spanned<String>,
    top: Spanned<String>,
    covers: Vec<(Spanned<String>, Spanned<String>)>,
    complement: Vec<(Spanned<String>, Spanned<String>)>,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, column)
}

/// Parses the interchange format and validates the result.
pub fn parse_lattice(src: &str) -> Result<FiniteOrtholattice, LatticeFileError> {
    let raw: RawLattice = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map(|s| line_col(src, s.start)).unwrap_or((1, 1));
        LatticeFileError::Syntax { line, column, message: e.message().to_owned() }
    })?;

    let labels: Vec<String> = raw.elements.iter().map(|s| s.get_ref().clone()).collect();
    let index: HashMap<&str, usize> =
        labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let lookup = |s: &Spanned<String>| -> Result<usize, LatticeFileError> {
        index.get(s.get_ref().as_str()).copied().ok_or_else(|| LatticeFileError::UnknownElement {
            line: line_col(src, s.span().start).0,
            label: s.get_ref().clone(),
        })
    };

    let covers = raw
        .covers
        .iter()
        .map(|(lo, hi)| Ok((lookup(lo)?, lookup(hi)?)))
        .collect::<Result<Vec<_>, LatticeFileError>>()?;

    let mut comp: Vec<Option<usize>> = vec![None; labels.len()];
    for (a, b) in &raw.complement {
        let ia = lookup(a)?;
        let ib = lookup(b)?;
        if comp[ia].replace(ib).is_some() {
            return Err(LatticeFileError::DuplicateComplement {
                line: line_col(src, a.span().start).0,
                label: a.get_ref().clone(),
            });
        }
    }
    let comp = comp
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| LatticeFileError::MissingComplement(labels[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;

    let bottom = lookup(&raw.bottom)?;
    let top = lookup(&raw.top)?;
    let lattice = FiniteOrtholattice::from_covers(labels, &covers, comp)?;
    lattice.expect_bounds(Element::new(bottom), Element::new(top))?;
    Ok(lattice)
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Writes the interchange format. Output is a pure function of the lattice.
pub fn write_lattice(l: &FiniteOrtholattice) -> String {
    let q = |e: Element| quote(l.label(e));
    let mut s = String::new();
    let elems: Vec<String> = l.elements().map(q).collect();
    let _ = writeln!(s, "elements = [{}]", elems.join(", "));
    let _ = writeln!(s, "bottom = {}", q(l.bottom()));
    let _ = writeln!(s, "top = {}", q(l.top()));
    s.push_str("covers = [\n");
    for (a, b) in l.cover_pairs() {
        let _ = writeln!(s, "  [{}, {}],", q(a), q(b));
    }
    s.push_str("]\ncomplement = [\n");
    for a in l.elements() {
        let _ = writeln!(s, "  [{}, {}],", q(a), q(l.complement(a)));
    }
    s.push_str("]\n");
    s
}

/// Hasse diagram in DOT: solid edges are covers (drawn bottom to top),
/// dashed undirected edges join complementary pairs.
pub fn write_dot(l: &FiniteOrtholattice, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(name));
    s.push_str("  rankdir=BT;\n  node [shape=ellipse];\n");
    for a in l.elements() {
        let _ = writeln!(s, "  n{} [label={}];", a.index(), quote(l.label(a)));
    }
    for (a, b) in l.cover_pairs() {
        let _ = writeln!(s, "  n{} -> n{};", a.index(), b.index());
    }
    for a in l.elements() {
        let c = l.complement(a);
        if a < c {
            let _ = writeln!(
                s,
                "  n{} -> n{} [dir=none, style=dashed, constraint=false, color=gray50, label=\"comp\"];",
                a.index(),
                c.index()
            );
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::super::families::{boolean, hexagon, mo};
    use super::*;

    #[test]
    fn round_trip() {
        for l in [mo(2), mo(3), boolean(3), hexagon()] {
            let text = write_lattice(&l);
            let back = parse_lattice(&text).unwrap();
            assert_eq!(back, l, "{text}");
        }
    }

    #[test]
    fn syntax_error_has_line() {
        let src = "elements = [\"0\", \"1\"]\nbottom = \"0\"\ntop = = \"1\"\n";
        match parse_lattice(src) {
            Err(LatticeFileError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_element_has_line() {
        let src = r#"elements = ["0", "1"]
bottom = "0"
top = "1"
covers = [
  ["0", "q"],
]
complement = [["0", "1"], ["1", "0"]]
"#;
        match parse_lattice(src) {
            Err(LatticeFileError::UnknownElement { line, label }) => {
                assert_eq!(line, 5);
                assert_eq!(label, "q");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_declared_top() {
        let src = r#"elements = ["0", "1"]
bottom = "0"
top = "0"
covers = [["0", "1"]]
complement = [["0", "1"], ["1", "0"]]
"#;
        assert!(matches!(parse_lattice(src), Err(LatticeFileError::Structure(LatticeError::WrongBound { .. }))));
    }

    #[test]
    fn missing_complement() {
        let src = r#"elements = ["0", "1"]
bottom = "0"
top = "1"
covers = [["0", "1"]]
complement = [["0", "1"]]
"#;
        assert!(matches!(parse_lattice(src), Err(LatticeFileError::MissingComplement(l)) if l == "1"));
    }

    #[test]
    fn dot_export() {
        let dot = write_dot(&mo(2), "mo2");
        assert_eq!(dot.matches("[label=").count(), 6);
        // 4 atoms, each covering bottom and covered by top
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && l.contains("->") && !l.contains("dashed")).count(), 8);
        assert_eq!(dot.matches("dashed").count(), 3);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b\\c"), "\"a\\\"b\\\\c\"");
    }
}
