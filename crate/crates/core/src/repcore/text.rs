//! The module file format.
//!
//! ```text
//! module <name> over <algebra>
//! string <base> [<arrow>^+1 | <arrow>^-1 ...]
//!
//! module <name> over <algebra>
//! sum <module> [<module> ...]
//!
//! module <name> over <algebra>
//! proj <vertex>
//!
//! module <name> over <algebra>
//! raw
//! dim <vertex> <n>
//! mat <arrow> <rows>x<cols> <entry> ...
//! end
//! ```
//!
//! Entries are exact scalars `p` or `p/q`, row-major. Unlisted dimensions are zero and unlisted
//! matrices are zero.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::linalg::{Field, Matrix};
use crate::presentation::{build_path_basis, strip_comment, PathBasis, Presentation, DEFAULT_LENGTH_BOUND};

use super::{direct_sum, projective, string_module, Direction, Letter, RepError, Representation, StringWord};

#[derive(Clone, Debug)]
pub struct ModuleDef {
    pub name: String,
    pub algebra: String,
    pub module: Representation,
}

fn perr(line: usize, message: impl Into<String>) -> RepError {
    RepError::Parse { line, message: message.into() }
}

fn parse_letter(line: usize, tok: &str) -> Result<Letter, RepError> {
    let (arrow, exp) = tok.rsplit_once('^').ok_or_else(|| perr(line, format!("letter '{tok}' lacks ^+1 or ^-1")))?;
    let direction = match exp {
        "+1" | "1" => Direction::Direct,
        "-1" => Direction::Inverse,
        _ => return Err(perr(line, format!("bad exponent in '{tok}'"))),
    };
    Ok(Letter { arrow: arrow.to_string(), direction })
}

/// Parses every module in `text`. `resolve` maps an algebra name to its presentation.
pub fn parse_modules(
    text: &str,
    field: Field,
    resolve: &mut dyn FnMut(&str) -> Result<Presentation, String>,
) -> Result<Vec<ModuleDef>, RepError> {
    let mut algebras: HashMap<String, (Arc<Presentation>, Option<PathBasis>)> = HashMap::new();
    let mut defs: Vec<ModuleDef> = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
    while let Some((ln, line)) = lines.next() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 4 || toks[0] != "module" || toks[2] != "over" {
            return Err(perr(ln, "expected 'module <name> over <algebra>'"));
        }
        let (name, spec) = (toks[1].to_string(), toks[3].to_string());
        if defs.iter().any(|d| d.name == name) {
            return Err(perr(ln, format!("module '{name}' defined twice")));
        }
        if !algebras.contains_key(&spec) {
            let p = resolve(&spec).map_err(|e| perr(ln, e))?;
            algebras.insert(spec.clone(), (Arc::new(p), None));
        }
        let p = algebras[&spec].0.clone();
        let (bl, body) = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((bl, l)) => break (bl, l),
                None => return Err(perr(ln, format!("module '{name}' has no body"))),
            }
        };
        let btoks: Vec<&str> = body.split_whitespace().collect();
        let module = match btoks[0] {
            "string" => {
                let base = btoks.get(1).ok_or_else(|| perr(bl, "string needs a base vertex"))?;
                let letters = btoks[2..].iter().map(|t| parse_letter(bl, t)).collect::<Result<Vec<_>, _>>()?;
                string_module(&p, field, &StringWord::new(base, letters))?
            }
            "sum" => {
                let mut parts = Vec::new();
                for n in &btoks[1..] {
                    let d =
                        defs.iter().find(|d| d.name == *n).ok_or_else(|| perr(bl, format!("unknown module '{n}'")))?;
                    if d.algebra != spec {
                        return Err(perr(bl, format!("module '{n}' is over {}, not {spec}", d.algebra)));
                    }
                    parts.push(d.module.clone());
                }
                direct_sum(&p, field, &parts)?.module
            }
            "proj" => {
                let v = btoks.get(1).ok_or_else(|| perr(bl, "proj needs a vertex"))?;
                let entry = algebras.get_mut(&spec).unwrap();
                if entry.1.is_none() {
                    entry.1 = Some(build_path_basis(&p, field, DEFAULT_LENGTH_BOUND)?);
                }
                projective(entry.1.as_ref().unwrap(), v)?
            }
            "raw" => parse_raw(&p, field, &mut lines)?,
            other => return Err(perr(bl, format!("unknown module body '{other}'"))),
        };
        defs.push(ModuleDef { name, algebra: spec, module });
    }
    Ok(defs)
}

fn parse_raw<'a>(
    p: &Arc<Presentation>,
    field: Field,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Representation, RepError> {
    let mut dims = vec![0usize; p.vertex_count()];
    let mut given: Vec<(usize, usize, Matrix)> = Vec::new();
    loop {
        let Some((ln, line)) = lines.next() else {
            return Err(perr(0, "raw block without 'end'"));
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first().copied() {
            None => continue,
            Some("end") => break,
            Some("dim") => {
                if toks.len() != 3 {
                    return Err(perr(ln, "expected 'dim <vertex> <n>'"));
                }
                let x = p.require_vertex(toks[1])?;
                dims[x] = toks[2].parse().map_err(|_| perr(ln, format!("bad dimension '{}'", toks[2])))?;
            }
            Some("mat") => {
                if toks.len() < 3 {
                    return Err(perr(ln, "expected 'mat <arrow> <rows>x<cols> <entries>'"));
                }
                let a = p.require_arrow(toks[1])?;
                let (r, c) = toks[2]
                    .split_once('x')
                    .and_then(|(r, c)| Some((r.parse::<usize>().ok()?, c.parse::<usize>().ok()?)))
                    .ok_or_else(|| perr(ln, format!("bad shape '{}'", toks[2])))?;
                let entries = toks[3..]
                    .iter()
                    .map(|e| field.parse_elem(e).map_err(|err| perr(ln, err.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                if entries.len() != r * c {
                    return Err(perr(ln, format!("{} entries for a {r}x{c} matrix", entries.len())));
                }
                given.push((ln, a, Matrix::from_elems(field, r, c, entries)));
            }
            Some(other) => return Err(perr(ln, format!("unknown raw directive '{other}'"))),
        }
    }
    let mut mats: Vec<Matrix> = (0..p.arrow_count())
        .map(|a| {
            let (s, t) = p.ends(a);
            Matrix::zeros(field, dims[t], dims[s])
        })
        .collect();
    for (ln, a, m) in given {
        if m.shape() != mats[a].shape() {
            return Err(perr(ln, format!("matrix for {} has the wrong shape", p.arrows()[a].name)));
        }
        mats[a] = m;
    }
    Representation::new(p.clone(), field, dims, mats)
}

/// Writes `m` as a raw module block.
pub fn emit_module(name: &str, algebra: &str, m: &Representation) -> String {
    let p = m.presentation();
    let mut s = String::new();
    let _ = writeln!(s, "module {name} over {algebra}");
    let _ = writeln!(s, "raw");
    for (x, v) in p.vertices().iter().enumerate() {
        if m.dim_at(x) > 0 {
            let _ = writeln!(s, "dim {v} {}", m.dim_at(x));
        }
    }
    for (a, arrow) in p.arrows().iter().enumerate() {
        let mat = m.mat(a);
        if mat.rows() > 0 && mat.cols() > 0 && !mat.is_zero() {
            let entries: Vec<String> = mat.entries().iter().map(|e| e.to_string()).collect();
            let _ = writeln!(s, "mat {} {}x{} {}", arrow.name, mat.rows(), mat.cols(), entries.join(" "));
        }
    }
    let _ = writeln!(s, "end");
    s
}
