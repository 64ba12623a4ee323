//! A basis of the path algebra modulo relations, with the action of arrows.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::linalg::{Field, FieldElem, Matrix};

use super::{Presentation, PresentationError, RelationKind};

/// Paths reaching this length are reported as [`PresentationError::BoundExceeded`].
pub const DEFAULT_LENGTH_BOUND: usize = 64;

/// A path kept as a basis element. `arrows` is in application order; empty for a vertex idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

/// Sparse linear combination of basis paths.
pub type Combination = Vec<(usize, FieldElem)>;

#[derive(Clone, Debug)]
pub struct PathBasis {
    field: Field,
    presentation: Arc<Presentation>,
    paths: Vec<BasisPath>,
    index: HashMap<Vec<usize>, Combination>,
    trivial: Vec<usize>,
    action: Vec<Vec<Combination>>,
}

fn contains_at(w: &[usize], p: &[usize]) -> Vec<usize> {
    if p.len() > w.len() {
        return vec![];
    }
    (0..=w.len() - p.len()).filter(|&i| &w[i..i + p.len()] == p).collect()
}

fn splice(w: &[usize], at: usize, len: usize, q: &[usize]) -> Vec<usize> {
    let mut out = w[..at].to_vec();
    out.extend_from_slice(q);
    out.extend_from_slice(&w[at + len..]);
    out
}

/// Builds a basis of the algebra presented by `p` over `field`.
///
/// Paths avoiding every zero relation are enumerated; reaching `length_bound` with such a path
/// is an error. Equality relations are then imposed by linear algebra within each
/// source/target block, keeping the shorter paths as representatives.
pub fn build_path_basis(p: &Presentation, field: Field, length_bound: usize) -> Result<PathBasis, PresentationError> {
    let presentation = Arc::new(p.clone());
    let mut zero_paths = Vec::new();
    let mut eq_pairs = Vec::new();
    for r in p.relations() {
        let left = p.path_indices(&r.left)?;
        match r.kind {
            RelationKind::Zero => zero_paths.push(left),
            RelationKind::Equal => eq_pairs.push((left, p.path_indices(&r.right)?)),
        }
    }

    // monomial-nonzero paths, breadth first
    let mut surviving: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..p.arrow_count()).map(|a| vec![a]).collect();
    frontier.retain(|w| !zero_paths.iter().any(|z| w.ends_with(z)));
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            if w.len() >= length_bound {
                let names: Vec<String> = w.iter().rev().map(|&a| p.arrows()[a].name.clone()).collect();
                return Err(PresentationError::BoundExceeded { bound: length_bound, path: names.join(" ") });
            }
            let end = p.ends(*w.last().unwrap()).1;
            for a in p.arrows_from(end) {
                let mut x = w.clone();
                x.push(a);
                if !zero_paths.iter().any(|z| x.ends_with(z)) {
                    next.push(x);
                }
            }
        }
        surviving.append(&mut frontier);
        frontier = next;
    }
    let ends = |w: &[usize]| (p.ends(w[0]).0, p.ends(*w.last().unwrap()).1);

    // group surviving paths by endpoints; longer paths first so they become pivots
    let mut blocks: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for w in &surviving {
        blocks.entry(ends(w)).or_default().push(w.clone());
    }
    for block in blocks.values_mut() {
        block.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    }

    let mut kept: Vec<Vec<usize>> = Vec::new();
    // reducible path -> combination of kept paths (by kept path)
    let mut reductions: HashMap<Vec<usize>, Vec<(Vec<usize>, FieldElem)>> = HashMap::new();
    for block in blocks.values() {
        let col: HashMap<&Vec<usize>, usize> = block.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        for w in block {
            for (lhs, rhs) in &eq_pairs {
                for (from, to) in [(lhs, rhs), (rhs, lhs)] {
                    for at in contains_at(w, from) {
                        let mut row = vec![field.zero(); block.len()];
                        row[col[w]] = field.one();
                        let other = splice(w, at, from.len(), to);
                        if let Some(&j) = col.get(&other) {
                            row[j] = &row[j] - &field.one();
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        if rows.is_empty() {
            kept.extend(block.iter().cloned());
            continue;
        }
        let m = Matrix::from_elems(field, rows.len(), block.len(), rows.concat());
        let rref = m.rref();
        let free: Vec<usize> = (0..block.len()).filter(|j| !rref.pivots.contains(j)).collect();
        for (i, &pc) in rref.pivots.iter().enumerate() {
            let combo = free
                .iter()
                .filter(|&&f| !rref.matrix.get(i, f).is_zero())
                .map(|&f| (block[f].clone(), -rref.matrix.get(i, f)))
                .collect();
            reductions.insert(block[pc].clone(), combo);
        }
        kept.extend(free.iter().map(|&f| block[f].clone()));
    }

    let mut paths: Vec<BasisPath> =
        (0..p.vertex_count()).map(|x| BasisPath { source: x, target: x, arrows: vec![] }).collect();
    paths.extend(kept.iter().map(|w| {
        let (s, t) = ends(w);
        BasisPath { source: s, target: t, arrows: w.clone() }
    }));
    paths.sort_by(|a, b| (a.source, a.arrows.len(), &a.arrows).cmp(&(b.source, b.arrows.len(), &b.arrows)));
    let position: HashMap<Vec<usize>, usize> =
        paths.iter().enumerate().filter(|(_, b)| !b.arrows.is_empty()).map(|(i, b)| (b.arrows.clone(), i)).collect();
    let trivial: Vec<usize> = (0..p.vertex_count())
        .map(|x| paths.iter().position(|b| b.arrows.is_empty() && b.source == x).unwrap())
        .collect();

    let mut index: HashMap<Vec<usize>, Combination> = HashMap::new();
    for w in &surviving {
        let combo = match reductions.get(w) {
            Some(c) => c.iter().map(|(k, x)| (position[k], x.clone())).collect(),
            None => vec![(position[w], field.one())],
        };
        index.insert(w.clone(), combo);
    }

    let mut basis = PathBasis { field, presentation, paths, index, trivial, action: vec![] };
    basis.action = (0..p.arrow_count())
        .map(|a| {
            (0..basis.paths.len())
                .map(|i| {
                    let b = &basis.paths[i];
                    if b.target != p.ends(a).0 {
                        return vec![];
                    }
                    let mut w = b.arrows.clone();
                    w.push(a);
                    basis.reduce(&w)
                })
                .collect()
        })
        .collect();
    Ok(basis)
}

impl PathBasis {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[BasisPath] {
        &self.paths
    }

    /// Index of the idempotent at vertex `x`.
    pub fn trivial(&self, x: usize) -> usize {
        self.trivial[x]
    }

    /// Basis paths starting at `x`, in basis order.
    pub fn starting_at(&self, x: usize) -> Vec<usize> {
        (0..self.paths.len()).filter(|&i| self.paths[i].source == x).collect()
    }

    /// Number of basis paths from `x` to `y`.
    pub fn dim_between(&self, x: usize, y: usize) -> usize {
        self.paths.iter().filter(|b| b.source == x && b.target == y).count()
    }

    /// Normal form of a path given in application order; empty for a zero path.
    pub fn reduce(&self, arrows: &[usize]) -> Combination {
        if arrows.is_empty() {
            return vec![];
        }
        self.index.get(arrows).cloned().unwrap_or_default()
    }

    /// `a` composed after basis path `i`.
    pub fn act(&self, a: usize, i: usize) -> &Combination {
        &self.action[a][i]
    }

    /// Written form of basis path `i`: arrow names right to left, or `e_<vertex>`.
    pub fn path_string(&self, i: usize) -> String {
        let b = &self.paths[i];
        let p = &self.presentation;
        if b.arrows.is_empty() {
            return format!("e_{}", p.vertices()[b.source]);
        }
        b.arrows.iter().rev().map(|&a| p.arrows()[a].name.as_str()).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_lambda, build_lambda1prime, parse_presentation, Arrow, LetterClass, Relation};

    fn basis(p: &Presentation) -> PathBasis {
        build_path_basis(p, Field::Rational, DEFAULT_LENGTH_BOUND).unwrap()
    }

    fn pdim(b: &PathBasis, v: &str) -> usize {
        b.starting_at(b.presentation().vertex(v).unwrap()).len()
    }

    #[test]
    fn loop_vertices_have_local_dimension_two() {
        let p = build_lambda(1, 0).unwrap();
        let b = basis(&p);
        for v in ["u", "v", "w", "bm1", "cm1"] {
            let x = p.vertex(v).unwrap();
            assert_eq!(b.dim_between(x, x), 2, "{v}");
        }
    }

    #[test]
    fn projective_dimensions() {
        let p = build_lambda(1, 5).unwrap();
        let b = basis(&p);
        let want = [
            ("c1", 6),
            ("a0", 4),
            ("b0", 3),
            ("c0", 3),
            ("a1", 4),
            ("b1", 5),
            ("a2", 5),
            ("b2", 4),
            ("c2", 5),
            ("a3", 5),
            ("b3", 4),
            ("a4", 4),
            ("b4", 5),
            ("a5", 4),
            ("b5", 4),
            ("d0", 2),
            ("d1", 1),
            ("u", 2),
        ];
        for (v, d) in want {
            assert_eq!(pdim(&b, v), d, "P({v})");
        }
    }

    #[test]
    fn commutativity_identifies_paths() {
        let p = build_lambda(1, 2).unwrap();
        let b = basis(&p);
        let alpha3: Vec<usize> = ["alpha_a2", "alpha_c2", "alpha_c1"].iter().map(|n| p.arrow(n).unwrap()).collect();
        let beta2: Vec<usize> = ["beta_a2", "beta_a1"].iter().map(|n| p.arrow(n).unwrap()).collect();
        assert_eq!(b.reduce(&alpha3), b.reduce(&beta2));
        assert_eq!(b.reduce(&alpha3).len(), 1);
    }

    #[test]
    fn action_is_associative() {
        let p = build_lambda1prime(2).unwrap();
        let b = basis(&p);
        for i in 0..b.dim() {
            for a in 0..p.arrow_count() {
                for c in 0..p.arrow_count() {
                    let mut two = Vec::new();
                    for (j, x) in b.act(a, i) {
                        for (k, y) in b.act(c, *j) {
                            two.push((*k, x * y));
                        }
                    }
                    let mut w = b.paths()[i].arrows.clone();
                    w.push(a);
                    w.push(c);
                    let valid = b.paths()[i].target == p.ends(a).0 && p.ends(a).1 == p.ends(c).0;
                    let direct = if valid { b.reduce(&w) } else { vec![] };
                    assert_eq!(two, direct);
                }
            }
        }
    }

    #[test]
    fn bound_exceeded_names_a_path() {
        let p = parse_presentation("algebra L\nvertex x\narrow l : alpha x -> x\n").unwrap();
        match build_path_basis(&p, Field::Rational, 8) {
            Err(PresentationError::BoundExceeded { bound, path }) => {
                assert_eq!(bound, 8);
                assert_eq!(path.split(' ').count(), 8);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equality_with_sign_free_coefficients_over_fp() {
        let p = Presentation::new(
            "sq",
            vec!["s".into(), "x".into(), "y".into(), "t".into()],
            vec![
                Arrow::new("f", LetterClass::Alpha, "s", "x"),
                Arrow::new("g", LetterClass::Alpha, "x", "t"),
                Arrow::new("h", LetterClass::Beta, "s", "y"),
                Arrow::new("k", LetterClass::Beta, "y", "t"),
            ],
            vec![Relation::equal(&["g", "f"], &["k", "h"])],
        )
        .unwrap();
        let b = build_path_basis(&p, Field::Prime(2), 16).unwrap();
        assert_eq!(b.dim(), 4 + 4 + 1);
    }
}
