//! Graphviz export. Alpha arrows are drawn solid, beta arrows dashed.

use std::fmt::Write;

use crate::presentation::{LetterClass, Presentation};

use super::Representation;

fn style(class: LetterClass) -> &'static str {
    match class {
        LetterClass::Alpha => "solid",
        LetterClass::Beta => "dashed",
    }
}

pub fn presentation_dot(p: &Presentation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", p.name());
    for v in p.vertices() {
        let _ = writeln!(s, "  \"{v}\";");
    }
    for a in p.arrows() {
        let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\", style={}];", a.source, a.target, a.name, style(a.class));
    }
    s.push_str("}\n");
    s
}

/// The coefficient quiver: one node per basis vector, one edge per nonzero matrix entry.
pub fn representation_dot(name: &str, m: &Representation) -> String {
    let p = m.presentation();
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{name}\" {{");
    for (x, v) in p.vertices().iter().enumerate() {
        for i in 0..m.dim_at(x) {
            let _ = writeln!(s, "  \"{v}_{i}\" [label=\"{v}\"];");
        }
    }
    for (a, arrow) in p.arrows().iter().enumerate() {
        let mat = m.mat(a);
        for r in 0..mat.rows() {
            for c in 0..mat.cols() {
                let e = mat.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let label = if e.is_one() { String::new() } else { format!(", label=\"{e}\"") };
                let _ = writeln!(
                    s,
                    "  \"{}_{c}\" -> \"{}_{r}\" [style={}{label}];",
                    arrow.source,
                    arrow.target,
                    style(arrow.class)
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::presentation::{build_lambda, build_path_basis};
    use crate::repcore::projective;

    #[test]
    fn styles_follow_letter_class() {
        let p = build_lambda(1, 0).unwrap();
        let d = presentation_dot(&p);
        assert!(d.contains("\"a0\" -> \"u\" [label=\"beta_a0\", style=dashed]"));
        assert!(d.contains("\"a0\" -> \"c0\" [label=\"alpha_a0\", style=solid]"));
    }

    #[test]
    fn coefficient_quiver_of_projective() {
        let p = build_lambda(1, 0).unwrap();
        let b = build_path_basis(&p, Field::Rational, 64).unwrap();
        let pu = projective(&b, "u").unwrap();
        let d = representation_dot("Pu", &pu);
        assert_eq!(d.matches("[label=\"u\"]").count(), 2);
        assert_eq!(d.matches("style=solid").count(), 1);
    }
}
