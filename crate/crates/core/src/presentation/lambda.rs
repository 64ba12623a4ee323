//! The family of special biserial algebras indexed by `m` and the length `r` of the d-chain.

use std::collections::BTreeSet;

use super::{Arrow, LetterClass, Presentation, PresentationError, Relation};

use LetterClass::{Alpha, Beta};

/// `a`, `b`, `c` vertex names; index `-1` is spelled `m1`.
pub fn vertex_name(letter: char, index: i64) -> String {
    if index < 0 {
        format!("{letter}m{}", -index)
    } else {
        format!("{letter}{index}")
    }
}

fn arrow(class: LetterClass, source: &str, target: &str) -> Arrow {
    Arrow::new(&format!("{class}_{source}"), class, source, target)
}

fn vertices(r: usize, m: usize) -> Vec<String> {
    let mut vs: Vec<String> = (0..=r).map(|i| format!("d{i}")).collect();
    vs.extend(["u", "v", "w", "bm1", "cm1"].map(String::from));
    for k in 0..=m as i64 {
        vs.push(vertex_name('a', k));
        vs.push(vertex_name('b', k));
        if k <= 2 {
            vs.push(vertex_name('c', k));
        }
    }
    vs
}

fn arrows(r: usize, m: usize) -> Vec<Arrow> {
    let mut out = Vec::new();
    for i in 0..r {
        let class = if i % 2 == 0 { Beta } else { Alpha };
        out.push(arrow(class, &format!("d{i}"), &format!("d{}", i + 1)));
    }
    for x in ["u", "v", "w"] {
        out.push(arrow(Alpha, x, x));
    }
    for x in ["bm1", "cm1"] {
        out.push(arrow(Beta, x, x));
    }
    let fixed: &[(usize, LetterClass, &str, &str)] = &[
        (0, Alpha, "a0", "c0"),
        (0, Beta, "a0", "u"),
        (0, Alpha, "b0", "bm1"),
        (0, Beta, "b0", "v"),
        (0, Alpha, "c0", "cm1"),
        (0, Beta, "c0", "w"),
        (1, Alpha, "a1", "d0"),
        (1, Beta, "a1", "a0"),
        (1, Alpha, "b1", "b0"),
        (1, Beta, "b1", "c0"),
        (1, Alpha, "c1", "a0"),
        (1, Beta, "c1", "b0"),
        (2, Alpha, "a2", "c2"),
        (2, Beta, "a2", "a1"),
        (2, Alpha, "b2", "b1"),
        (2, Beta, "b2", "c1"),
        (2, Alpha, "c2", "c1"),
        (2, Beta, "c2", "b1"),
        (3, Alpha, "a3", "a2"),
        (3, Beta, "a3", "b2"),
        (3, Alpha, "b3", "b2"),
        (3, Beta, "b3", "c2"),
    ];
    for &(k, class, s, t) in fixed {
        if k <= m {
            out.push(arrow(class, s, t));
        }
    }
    for k in 4..=m as i64 {
        let (a, b) = (vertex_name('a', k), vertex_name('b', k));
        let (pa, pb) = (vertex_name('a', k - 1), vertex_name('b', k - 1));
        if k % 2 == 0 {
            out.push(arrow(Alpha, &a, &pb));
            out.push(arrow(Beta, &a, &pa));
            out.push(arrow(Alpha, &b, &pa));
            out.push(arrow(Beta, &b, &pb));
        } else {
            out.push(arrow(Alpha, &a, &pa));
            out.push(arrow(Beta, &a, &pb));
            out.push(arrow(Alpha, &b, &pb));
            out.push(arrow(Beta, &b, &pa));
        }
    }
    out
}

/// Arrows of one class followed from `x`, stopping before a loop.
fn walk<'a>(arrows: &'a [Arrow], x: &str, class: LetterClass) -> Vec<&'a Arrow> {
    let mut path = Vec::new();
    let mut at = x.to_string();
    while let Some(a) = arrows.iter().find(|a| a.source == at && a.class == class && !a.is_loop()) {
        path.push(a);
        at = a.target.clone();
    }
    path
}

fn written(path: &[&Arrow]) -> Vec<String> {
    path.iter().rev().map(|a| a.name.clone()).collect()
}

fn relations(vertices: &[String], arrows: &[Arrow]) -> Vec<Relation> {
    let mut rels = Vec::new();
    for x in arrows {
        for y in arrows.iter().filter(|y| y.source == x.target) {
            if y.class != x.class || (x.is_loop() && y.name == x.name) {
                rels.push(Relation::zero(&[&y.name, &x.name]));
            }
        }
    }
    for v in vertices {
        let (pa, pb) = (walk(arrows, v, Alpha), walk(arrows, v, Beta));
        let meet = pa
            .iter()
            .enumerate()
            .find_map(|(i, a)| pb.iter().position(|b| b.target == a.target).map(|j| (i + 1, j + 1)));
        if let Some((n, k)) = meet {
            let (l, r) = (written(&pa[..n]), written(&pb[..k]));
            let l: Vec<&str> = l.iter().map(String::as_str).collect();
            let r: Vec<&str> = r.iter().map(String::as_str).collect();
            rels.push(Relation::equal(&l, &r));
        }
    }
    rels
}

/// The algebra on vertices of index at most `m`, the loop vertices and the chain `d0..dr`.
pub fn build_lambda(r: usize, m: usize) -> Result<Presentation, PresentationError> {
    if r == 0 {
        return Err(PresentationError::InvalidParameter("r must be at least 1".into()));
    }
    let vs = vertices(r, m);
    let arrs = arrows(r, m);
    let rels = relations(&vs, &arrs);
    Presentation::new(&format!("lambda_r{r}_m{m}"), vs, arrs, rels)
}

/// The factor algebra of `build_lambda(r, 2)` by the idempotents at `a2` and `b2`.
pub fn build_lambda1prime(r: usize) -> Result<Presentation, PresentationError> {
    let big = build_lambda(r, 2)?;
    let keep: BTreeSet<String> = big.vertices().iter().filter(|v| *v != "a2" && *v != "b2").cloned().collect();
    big.restrict_to(&format!("lambda1prime_r{r}"), &keep)
}

/// Vertex set of the path subquiver `d0 - a1 - a0 - c1 - c2 - b1`, in path order.
pub const U_VERTICES: [&str; 6] = ["d0", "a1", "a0", "c1", "c2", "b1"];

/// The full subquiver of `lambda1prime` on [`U_VERTICES`].
pub fn build_subquiver_u(lambda1prime: &Presentation) -> Result<Presentation, PresentationError> {
    let keep: BTreeSet<String> = U_VERTICES.iter().map(|s| s.to_string()).collect();
    lambda1prime.restrict_to(&format!("{}_U", lambda1prime.name()), &keep)
}

/// Resolves `lambda:r=<r>,m=<m>` or `lambda1prime:r=<r>`.
pub fn family_from_spec(spec: &str) -> Result<Presentation, PresentationError> {
    let bad = || PresentationError::InvalidParameter(format!("unknown algebra spec '{spec}'"));
    let (family, params) = spec.split_once(':').ok_or_else(bad)?;
    let mut r = None;
    let mut m = None;
    for kv in params.split(',') {
        let (k, v) = kv.split_once('=').ok_or_else(bad)?;
        let v: usize = v.trim().parse().map_err(|_| bad())?;
        match k.trim() {
            "r" => r = Some(v),
            "m" => m = Some(v),
            _ => return Err(bad()),
        }
    }
    let r = r.ok_or_else(bad)?;
    match (family, m) {
        ("lambda", Some(m)) => build_lambda(r, m),
        ("lambda1prime", None) => build_lambda1prime(r),
        _ => Err(bad()),
    }
}
