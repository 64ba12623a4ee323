//! The line-oriented presentation file format.
//!
//! ```text
//! algebra <name>
//! vertex <v>
//! arrow <name> : <alpha|beta> <src> -> <tgt>
//! rel zero <arrow> [<arrow> ...]
//! rel eq <path> = <path>
//! ```
//!
//! Paths are written right-to-left: the leftmost arrow is applied last. `#` starts a comment.

use std::fmt::Write;

use super::{Arrow, LetterClass, Presentation, PresentationError, Relation};

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Syntax { line, column, message: message.into() }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut name: Option<String> = None;
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(strip_comment(raw));
        let Some(&(col, head)) = toks.first() else { continue };
        let end_col = raw.chars().count() + 1;
        match head {
            "algebra" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, col, "expected 'algebra <name>'"));
                }
                if name.is_some() {
                    return Err(syntax(ln, col, "algebra name given twice"));
                }
                name = Some(toks[1].1.to_string());
            }
            "vertex" => {
                if toks.len() < 2 {
                    return Err(syntax(ln, end_col, "expected vertex name"));
                }
                vertices.extend(toks[1..].iter().map(|(_, v)| v.to_string()));
            }
            "arrow" => {
                // arrow <name> : <class> <src> -> <tgt>
                let shape_ok = toks.len() == 7 && toks[2].1 == ":" && toks[5].1 == "->";
                if !shape_ok {
                    let c = toks.get(2).map_or(end_col, |t| t.0);
                    return Err(syntax(ln, c, "expected 'arrow <name> : <alpha|beta> <src> -> <tgt>'"));
                }
                let class = match toks[3].1 {
                    "alpha" => LetterClass::Alpha,
                    "beta" => LetterClass::Beta,
                    other => return Err(syntax(ln, toks[3].0, format!("unknown letter class '{other}'"))),
                };
                arrows.push(Arrow::new(toks[1].1, class, toks[4].1, toks[6].1));
            }
            "rel" => {
                let Some(&(kcol, kind)) = toks.get(1) else {
                    return Err(syntax(ln, end_col, "expected 'zero' or 'eq'"));
                };
                let rest: Vec<&str> = toks[2..].iter().map(|t| t.1).collect();
                match kind {
                    "zero" => {
                        if rest.is_empty() {
                            return Err(syntax(ln, end_col, "empty zero relation"));
                        }
                        relations.push(Relation::zero(&rest));
                    }
                    "eq" => {
                        let Some(pos) = rest.iter().position(|t| *t == "=") else {
                            return Err(syntax(ln, end_col, "expected '=' in equality relation"));
                        };
                        let (l, r) = (&rest[..pos], &rest[pos + 1..]);
                        if l.is_empty() || r.is_empty() || r.contains(&"=") {
                            return Err(syntax(ln, kcol, "malformed equality relation"));
                        }
                        relations.push(Relation::equal(l, r));
                    }
                    other => return Err(syntax(ln, kcol, format!("unknown relation kind '{other}'"))),
                }
            }
            other => return Err(syntax(ln, col, format!("unknown directive '{other}'"))),
        }
    }
    let name = name.ok_or_else(|| syntax(1, 1, "missing 'algebra <name>' line"))?;
    Presentation::new(&name, vertices, arrows, relations).map_err(|e| locate(text, e))
}

/// Attaches the line of the offending declaration to a validation error.
fn locate(text: &str, e: PresentationError) -> PresentationError {
    let (heads, needle, nth): (&[&str], String, usize) = match &e {
        PresentationError::UnknownVertex(v) => (&["arrow"], v.clone(), 1),
        PresentationError::UnknownArrow(a) => (&["rel"], a.clone(), 1),
        PresentationError::Duplicate(n) => (&["vertex", "arrow"], n.clone(), 2),
        PresentationError::NotComposable(p) | PresentationError::NotParallel(p) => {
            (&["rel"], p.split_whitespace().next().unwrap_or_default().to_string(), 1)
        }
        _ => return e,
    };
    let mut seen = 0;
    for (ln, raw) in text.lines().enumerate() {
        let toks = tokens(strip_comment(raw));
        if !toks.first().is_some_and(|t| heads.contains(&t.1)) {
            continue;
        }
        // for an arrow only the name and endpoints count as occurrences
        let hit = toks
            .iter()
            .enumerate()
            .skip(1)
            .find(|(i, t)| t.1 == needle && (toks[0].1 != "arrow" || matches!(i, 1 | 4 | 6)));
        if let Some((_, t)) = hit {
            seen += 1;
            if seen == nth {
                return syntax(ln + 1, t.0, e.to_string());
            }
        }
    }
    e
}

/// Canonical text: vertices, arrows and relations in sorted order.
pub fn emit_presentation(p: &Presentation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra {}", p.name());
    for v in p.vertices() {
        let _ = writeln!(s, "vertex {v}");
    }
    for a in p.arrows() {
        let _ = writeln!(s, "arrow {} : {} {} -> {}", a.name, a.class, a.source, a.target);
    }
    for r in p.relations() {
        let _ = writeln!(s, "{r}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_lambda, build_lambda1prime};

    #[test]
    fn minimal_file() {
        let p = parse_presentation("algebra A\nvertex x\n").unwrap();
        assert_eq!(p.vertex_count(), 1);
        assert_eq!(p.arrow_count(), 0);
        assert_eq!(p.name(), "A");
    }

    #[test]
    fn round_trips() {
        for p in [build_lambda(1, 0).unwrap(), build_lambda1prime(2).unwrap(), build_lambda(3, 5).unwrap()] {
            let text = emit_presentation(&p);
            let q = parse_presentation(&text).unwrap();
            assert_eq!(q, p);
            assert_eq!(emit_presentation(&q), text);
        }
    }

    #[test]
    fn undeclared_arrow_is_named() {
        let err = parse_presentation("algebra A\nvertex x\nrel zero ghost\n").unwrap_err();
        assert_eq!(err, PresentationError::Syntax { line: 3, column: 10, message: "unknown arrow 'ghost'".into() });
    }

    #[test]
    fn validation_errors_are_located() {
        let err = parse_presentation("algebra A\nvertex x\narrow f : alpha x -> y\n").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 3, column: 22, .. }), "{err:?}");
        let err = parse_presentation("algebra A\nvertex x\nvertex y x\n").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 3, column: 10, .. }), "{err:?}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_presentation("algebra A\nvertex x\narrow f alpha x -> x\n").unwrap_err();
        match err {
            PresentationError::Syntax { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        let err = parse_presentation("algebra A\nvertex x\narrow f : gamma x -> x\n").unwrap_err();
        assert_eq!(
            err,
            PresentationError::Syntax { line: 3, column: 11, message: "unknown letter class 'gamma'".into() }
        );
    }

    #[test]
    fn comments_ignored() {
        let p = parse_presentation("# hi\nalgebra A # name\nvertex x y\narrow f : beta x -> y\n").unwrap();
        assert_eq!(p.arrow_count(), 1);
    }
}
