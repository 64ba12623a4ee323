use serde::Serialize;

use crate::linalg::{Field, FieldElem, Matrix};
use crate::repcore::Representation;

use super::DecompError;

/// `multiplicity` copies of the interval module on `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalSummand {
    /// Positions along the path, inclusive.
    pub start: usize,
    pub end: usize,
    pub vertices: Vec<String>,
    pub multiplicity: usize,
}

impl IntervalSummand {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An interval decomposition together with the basis change that exhibits it.
#[derive(Clone, Debug)]
pub struct IntervalDecomposition {
    /// Vertex indices in path order.
    pub order: Vec<usize>,
    /// `(start, end)` positions of each interval copy.
    pub intervals: Vec<(usize, usize)>,
    /// New basis at each vertex (indexed by vertex), as columns in the original coordinates.
    pub bases: Vec<Matrix>,
    /// Interval copy owning each column of `bases[x]`.
    pub labels: Vec<Vec<usize>>,
    pub summands: Vec<IntervalSummand>,
}

impl IntervalDecomposition {
    /// Column of `bases[x]` belonging to interval copy `id`.
    pub fn column_of(&self, x: usize, id: usize) -> Option<usize> {
        self.labels[x].iter().position(|&l| l == id)
    }

    /// Vertex names of interval copy `id`, in path order.
    pub fn support(&self, v: &Representation, id: usize) -> Vec<String> {
        let (s, e) = self.intervals[id];
        self.order[s..=e].iter().map(|&x| v.presentation().vertices()[x].clone()).collect()
    }

    /// Re-checks the certificate: every basis is invertible and every arrow becomes the partial
    /// identity matching equal labels.
    pub fn verify(&self, v: &Representation) -> bool {
        let p = v.presentation();
        let field = v.field();
        let mut inverses = Vec::new();
        for x in 0..p.vertex_count() {
            let b = &self.bases[x];
            if b.rows() != v.dim_at(x) || b.cols() != v.dim_at(x) {
                return false;
            }
            match b.inverse() {
                Some(inv) => inverses.push(inv),
                None if v.dim_at(x) == 0 => inverses.push(Matrix::zeros(field, 0, 0)),
                None => return false,
            }
        }
        for a in 0..p.arrow_count() {
            let (s, t) = p.ends(a);
            let moved = &(&inverses[t] * v.mat(a)) * &self.bases[s];
            for (i, li) in self.labels[t].iter().enumerate() {
                for (j, lj) in self.labels[s].iter().enumerate() {
                    let want = if li == lj { field.one() } else { field.zero() };
                    if *moved.get(i, j) != want {
                        return false;
                    }
                }
            }
        }
        let total: usize = self.summands.iter().map(|s| s.multiplicity * s.len()).sum();
        total == v.total_dim()
    }
}

/// Vertex order of a quiver whose underlying graph is a path.
fn path_order(v: &Representation) -> Result<Vec<usize>, DecompError> {
    let p = v.presentation();
    let n = p.vertex_count();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut nbrs = vec![Vec::new(); n];
    for a in 0..p.arrow_count() {
        let (s, t) = p.ends(a);
        if s == t {
            return Err(DecompError::NotAPath(format!("loop {}", p.arrows()[a].name)));
        }
        if nbrs[s].contains(&t) {
            return Err(DecompError::NotAPath(format!("parallel arrows at {}", p.vertices()[s])));
        }
        nbrs[s].push(t);
        nbrs[t].push(s);
    }
    if p.arrow_count() + 1 != n {
        return Err(DecompError::NotAPath(format!("{} arrows on {n} vertices", p.arrow_count())));
    }
    if let Some(x) = (0..n).find(|&x| nbrs[x].len() > 2) {
        return Err(DecompError::NotAPath(format!("vertex {} has degree {}", p.vertices()[x], nbrs[x].len())));
    }
    let first = (0..n).find(|&x| nbrs[x].len() <= 1).expect("a tree has a leaf");
    let mut order = vec![first];
    while let Some(&next) = nbrs[*order.last().unwrap()].iter().find(|y| !order.contains(y)) {
        order.push(next);
    }
    if order.len() != n {
        return Err(DecompError::NotAPath("disconnected".into()));
    }
    Ok(order)
}

#[derive(Clone, Copy)]
struct Interval {
    start: usize,
    end: Option<usize>,
    /// Whether the arrow left of `start` points into the interval.
    forward: bool,
}

impl Interval {
    /// `a` may absorb `b` (replace `v_a` by `v_a + c v_b`) iff `b.key() <= a.key()`.
    fn key(&self) -> (u8, i64) {
        match (self.start, self.forward) {
            (0, _) => (1, 0),
            (s, true) => (2, s as i64),
            (s, false) => (0, -(s as i64)),
        }
    }
}

struct Sweep {
    field: Field,
    /// Columns of the new basis at each position.
    cols: Vec<Vec<Vec<FieldElem>>>,
    labels: Vec<Vec<usize>>,
    intervals: Vec<Interval>,
}

fn axpy(y: &mut [FieldElem], c: &FieldElem, x: &[FieldElem]) {
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

fn apply(m: &Matrix, v: &[FieldElem]) -> Vec<FieldElem> {
    (0..m.rows())
        .map(|i| {
            let mut acc = m.field().zero();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    acc = &acc + &(m.get(i, j) * x);
                }
            }
            acc
        })
        .collect()
}

impl Sweep {
    fn open(&mut self, pos: usize, forward: bool, v: Vec<FieldElem>) {
        self.intervals.push(Interval { start: pos, end: None, forward });
        self.cols[pos].push(v);
        self.labels[pos].push(self.intervals.len() - 1);
    }

    /// `v_j += c v_i` on the overlap of intervals `j` and `i`, up to position `upto`.
    fn absorb(&mut self, j: usize, i: usize, c: &FieldElem, upto: usize) {
        let from = self.intervals[j].start.max(self.intervals[i].start);
        for pos in from..=upto {
            let ci = self.labels[pos].iter().position(|&l| l == i).expect("interval i alive");
            let cj = self.labels[pos].iter().position(|&l| l == j).expect("interval j alive");
            let vi = self.cols[pos][ci].clone();
            axpy(&mut self.cols[pos][cj], c, &vi);
        }
    }

    fn forward(&mut self, pos: usize, a: &Matrix) {
        let mut order: Vec<usize> = (0..self.labels[pos].len()).collect();
        order.sort_by_key(|&k| (self.intervals[self.labels[pos][k]].key(), self.labels[pos][k]));
        let mut reduced: Vec<(usize, Vec<FieldElem>, usize)> = Vec::new();
        for k in order {
            let id = self.labels[pos][k];
            let mut img = apply(a, &self.cols[pos][k]);
            for (piv, col, kid) in &reduced {
                if img[*piv].is_zero() {
                    continue;
                }
                let c = img[*piv].checked_div(&col[*piv]).expect("pivot is nonzero");
                axpy(&mut img, &-&c, col);
                self.absorb(id, *kid, &-&c, pos);
            }
            match img.iter().position(|e| !e.is_zero()) {
                Some(piv) => reduced.push((piv, img, id)),
                None => self.intervals[id].end = Some(pos),
            }
        }
        let dim = a.rows();
        let images: Vec<Vec<FieldElem>> = reduced.iter().map(|(_, c, _)| c.clone()).collect();
        for (_, col, id) in reduced {
            self.cols[pos + 1].push(col);
            self.labels[pos + 1].push(id);
        }
        let fresh = Matrix::from_columns(self.field, dim, &images).complement();
        for j in 0..fresh.cols() {
            self.open(pos + 1, true, fresh.column(j));
        }
    }

    fn backward(&mut self, pos: usize, a: &Matrix) {
        let field = self.field;
        let n = a.rows();
        let m = a.cols();
        let basis = Matrix::from_columns(field, n, &self.cols[pos]);
        let mut g = if n == 0 { Matrix::zeros(field, 0, m) } else { &basis.inverse().expect("basis invertible") * a };
        let mut w = Matrix::identity(field, m);
        let mut rows: Vec<usize> = (0..n).collect();
        rows.sort_by_key(|&r| std::cmp::Reverse((self.intervals[self.labels[pos][r]].key(), self.labels[pos][r])));
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; m];
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let col_op = |g: &mut Matrix, w: &mut Matrix, dst: usize, c: &FieldElem, src: usize| {
            for i in 0..g.rows() {
                let v = g.get(i, dst) + &(c * g.get(i, src));
                g.set(i, dst, v);
            }
            for i in 0..w.rows() {
                let v = w.get(i, dst) + &(c * w.get(i, src));
                w.set(i, dst, v);
            }
        };
        for &r in &rows {
            let Some(c) = (0..m).find(|&c| pivot_of_col[c].is_none() && !g.get(r, c).is_zero()) else {
                continue;
            };
            let inv = g.get(r, c).inv().expect("nonzero");
            for i in 0..n {
                let v = g.get(i, c) * &inv;
                g.set(i, c, v);
            }
            for i in 0..m {
                let v = w.get(i, c) * &inv;
                w.set(i, c, v);
            }
            for c2 in 0..m {
                if c2 != c && !g.get(r, c2).is_zero() {
                    let k = -g.get(r, c2);
                    col_op(&mut g, &mut w, c2, &k, c);
                }
            }
            pivot_of_col[c] = Some(r);
            pivots.push((r, c));
        }
        for &(r, c) in &pivots {
            let j = self.labels[pos][r];
            for i in 0..n {
                if i == r || g.get(i, c).is_zero() {
                    continue;
                }
                let k = g.get(i, c).clone();
                // row_i -= k row_r, i.e. v_j += k v_i
                let row_r: Vec<FieldElem> = g.row(r).to_vec();
                for (cc, e) in row_r.iter().enumerate() {
                    if !e.is_zero() {
                        let v = g.get(i, cc) - &(&k * e);
                        g.set(i, cc, v);
                    }
                }
                let owner = self.labels[pos][i];
                self.absorb(j, owner, &k, pos);
            }
        }
        let mut continuing = vec![false; n];
        for c in 0..m {
            match pivot_of_col[c] {
                Some(r) => {
                    continuing[r] = true;
                    self.cols[pos + 1].push(w.column(c));
                    let id = self.labels[pos][r];
                    self.labels[pos + 1].push(id);
                }
                None => self.open(pos + 1, false, w.column(c)),
            }
        }
        for (r, cont) in continuing.into_iter().enumerate() {
            if !cont {
                let id = self.labels[pos][r];
                self.intervals[id].end = Some(pos);
            }
        }
    }
}

/// Decomposes a representation of a quiver whose underlying graph is a path into interval
/// modules, sweeping from one end and keeping the earlier part block diagonal.
pub fn interval_decompose(v: &Representation) -> Result<IntervalDecomposition, DecompError> {
    let order = path_order(v)?;
    let p = v.presentation();
    let field = v.field();
    let n = order.len();
    let mut sweep = Sweep { field, cols: vec![Vec::new(); n], labels: vec![Vec::new(); n], intervals: Vec::new() };
    if n > 0 {
        let id = Matrix::identity(field, v.dim_at(order[0]));
        for j in 0..id.cols() {
            sweep.open(0, true, id.column(j));
        }
    }
    for pos in 0..n.saturating_sub(1) {
        let (x, y) = (order[pos], order[pos + 1]);
        let a = (0..p.arrow_count()).find(|&a| {
            let e = p.ends(a);
            e == (x, y) || e == (y, x)
        });
        let a = a.expect("consecutive path vertices are joined");
        if p.ends(a).0 == x {
            sweep.forward(pos, v.mat(a));
        } else {
            sweep.backward(pos, v.mat(a));
        }
    }
    for iv in &mut sweep.intervals {
        iv.end.get_or_insert(n - 1);
    }
    let intervals: Vec<(usize, usize)> = sweep.intervals.iter().map(|iv| (iv.start, iv.end.unwrap())).collect();
    let mut bases = vec![Matrix::zeros(field, 0, 0); p.vertex_count()];
    let mut labels = vec![Vec::new(); p.vertex_count()];
    for (pos, &x) in order.iter().enumerate() {
        bases[x] = Matrix::from_columns(field, v.dim_at(x), &sweep.cols[pos]);
        labels[x] = sweep.labels[pos].clone();
    }
    let mut counts: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for &iv in &intervals {
        *counts.entry(iv).or_default() += 1;
    }
    let summands = counts
        .into_iter()
        .map(|((start, end), multiplicity)| IntervalSummand {
            start,
            end,
            vertices: order[start..=end].iter().map(|&x| p.vertices()[x].clone()).collect(),
            multiplicity,
        })
        .collect();
    Ok(IntervalDecomposition { order, intervals, bases, labels, summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{Arrow, LetterClass, Presentation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn zigzag(orient: &[bool]) -> Arc<Presentation> {
        let n = orient.len() + 1;
        let vs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let arrows = orient
            .iter()
            .enumerate()
            .map(|(i, &fwd)| {
                let (s, t) = if fwd { (i, i + 1) } else { (i + 1, i) };
                Arrow::new(&format!("e{i}"), LetterClass::Alpha, &vs[s], &vs[t])
            })
            .collect();
        Arc::new(Presentation::new("zz", vs.clone(), arrows, vec![]).unwrap())
    }

    fn random_rep(p: &Arc<Presentation>, field: Field, rng: &mut ChaCha8Rng) -> Representation {
        let dims: Vec<usize> = (0..p.vertex_count()).map(|_| rng.gen_range(0..4)).collect();
        let mats = (0..p.arrow_count())
            .map(|a| {
                let (s, t) = p.ends(a);
                let k = rng.gen_range(0..3);
                // low rank products keep the example interesting
                let l = Matrix::random(field, dims[t], k, rng, 2);
                let r = Matrix::random(field, k, dims[s], rng, 2);
                &l * &r
            })
            .collect();
        Representation::new(p.clone(), field, dims, mats).unwrap()
    }

    /// Rank of the composite map between positions `i < j`, or `None` if the arrows disagree in
    /// direction.
    fn segment_rank(v: &Representation, order: &[usize], i: usize, j: usize) -> Option<usize> {
        let p = v.presentation();
        let mut acc = Matrix::identity(v.field(), v.dim_at(order[i]));
        let mut dir = None;
        for k in i..j {
            let a = (0..p.arrow_count()).find(|&a| {
                let e = p.ends(a);
                e == (order[k], order[k + 1]) || e == (order[k + 1], order[k])
            })?;
            let fwd = p.ends(a).0 == order[k];
            if *dir.get_or_insert(fwd) != fwd {
                return None;
            }
            acc = if fwd { v.mat(a) * &acc } else { &acc * v.mat(a) };
        }
        Some(acc.rank())
    }

    #[test]
    fn trivial_cases() {
        let p = zigzag(&[true]);
        let f = Field::Rational;
        let zero = Representation::new(p.clone(), f, vec![0, 0], vec![Matrix::zeros(f, 0, 0)]).unwrap();
        assert!(interval_decompose(&zero).unwrap().summands.is_empty());
        let id = Representation::new(p.clone(), f, vec![1, 1], vec![Matrix::identity(f, 1)]).unwrap();
        let d = interval_decompose(&id).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].len(), 2);
        assert!(d.verify(&id));
    }

    #[test]
    fn rejects_non_paths() {
        let vs: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
        let star = ["b", "c", "d"].map(|t| Arrow::new(&format!("to_{t}"), LetterClass::Alpha, "a", t)).to_vec();
        let p = Arc::new(Presentation::new("star", vs, star, vec![]).unwrap());
        let f = Field::Rational;
        let m = Representation::new(p.clone(), f, vec![0; 4], vec![Matrix::zeros(f, 0, 0); 3]).unwrap();
        assert!(matches!(interval_decompose(&m), Err(DecompError::NotAPath(_))));
    }

    #[test]
    fn random_zigzags_verify_and_match_rank_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [Field::Rational, Field::Prime(3)] {
            for _ in 0..60 {
                let len = rng.gen_range(1..6);
                let orient: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.5)).collect();
                let p = zigzag(&orient);
                let v = random_rep(&p, field, &mut rng);
                let d = interval_decompose(&v).unwrap();
                assert!(d.verify(&v), "{orient:?}");
                // equioriented segments: rank of the composite counts intervals covering it
                for i in 0..d.order.len() {
                    for j in i..d.order.len() {
                        if let Some(r) = segment_rank(&v, &d.order, i, j) {
                            let covering: usize = d.intervals.iter().filter(|&&(s, e)| s <= i && j <= e).count();
                            assert_eq!(r, covering, "{orient:?} {i}..{j}");
                        }
                    }
                }
            }
        }
    }
}
