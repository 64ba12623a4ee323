use std::collections::BTreeMap;

use crate::homology::radical;
use crate::repcore::Representation;

/// Radical layers of the indecomposable projectives of `Λ_5(r)`, top first. Chain vertices
/// `d_i` are filled in by [`expected_layers`].
const LAYERS: &[(&str, &[&[&str]])] = &[
    ("u", &[&["u"], &["u"]]),
    ("v", &[&["v"], &["v"]]),
    ("w", &[&["w"], &["w"]]),
    ("bm1", &[&["bm1"], &["bm1"]]),
    ("cm1", &[&["cm1"], &["cm1"]]),
    ("a0", &[&["a0"], &["c0", "u"], &["cm1"]]),
    ("b0", &[&["b0"], &["bm1", "v"]]),
    ("c0", &[&["c0"], &["cm1", "w"]]),
    ("a1", &[&["a1"], &["d0", "a0"], &["u"]]),
    ("b1", &[&["b1"], &["b0", "c0"], &["bm1", "w"]]),
    ("c1", &[&["c1"], &["a0", "b0"], &["c0", "v"], &["cm1"]]),
    ("a2", &[&["a2"], &["c2", "a1"], &["c1"], &["a0"]]),
    ("b2", &[&["b2"], &["b1", "c1"], &["b0"]]),
    ("c2", &[&["c2"], &["c1", "b1"], &["a0"], &["c0"]]),
    ("a3", &[&["a3"], &["a2", "b2"], &["c2"], &["c1"]]),
    ("b3", &[&["b3"], &["b2", "c2"], &["b1"]]),
    ("a4", &[&["a4"], &["b3", "a3"], &["b2"]]),
    ("b4", &[&["b4"], &["a3", "b3"], &["a2"], &["c2"]]),
    ("a5", &[&["a5"], &["a4", "b4"], &["b3"]]),
    ("b5", &[&["b5"], &["b4", "a4"], &["a3"]]),
];

/// One map `vertex → multiplicity` per radical layer.
pub type Layers = Vec<BTreeMap<String, usize>>;

fn layer(vs: &[&str]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for v in vs {
        *out.entry(v.to_string()).or_default() += 1;
    }
    out
}

/// The transcribed layers of `P(x)` over `Λ_5(r)` for every vertex `x`.
pub fn expected_layers(r: usize) -> BTreeMap<String, Layers> {
    let mut out: BTreeMap<String, Layers> =
        LAYERS.iter().map(|(x, ls)| (x.to_string(), ls.iter().map(|l| layer(l)).collect())).collect();
    for i in 0..=r {
        let top = format!("d{i}");
        let mut ls = vec![layer(&[top.as_str()])];
        if i < r {
            ls.push(layer(&[format!("d{}", i + 1).as_str()]));
        }
        out.insert(top, ls);
    }
    out
}

/// Layers `rad^k M / rad^(k+1) M` of `m`, stopping at the first zero power.
pub fn radical_layers(m: &Representation) -> Layers {
    let names = m.presentation().vertices().to_vec();
    let mut out = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        let (next, _) = radical(&cur);
        let mut l = BTreeMap::new();
        for (x, name) in names.iter().enumerate() {
            let d = cur.dim_at(x) - next.dim_at(x);
            if d > 0 {
                l.insert(name.clone(), d);
            }
        }
        out.push(l);
        cur = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::presentation::build_lambda;
    use crate::repcore::Algebra;

    #[test]
    fn table_dimensions() {
        let e = expected_layers(1);
        let dim = |x: &str| e[x].iter().flat_map(|l| l.values()).sum::<usize>();
        assert_eq!(dim("a1"), 4);
        assert_eq!(dim("c1"), 6);
        assert_eq!(dim("b0"), 3);
        assert_eq!(dim("d0"), 2);
        assert_eq!(dim("d1"), 1);
        assert_eq!(e.len(), 2 + 5 + 12 + 3);
    }

    #[test]
    fn computed_layers_match() {
        let a = Algebra::new(&build_lambda(2, 5).unwrap(), Field::Rational).unwrap();
        let e = expected_layers(2);
        for (x, v) in a.presentation().vertices().iter().enumerate() {
            assert_eq!(radical_layers(a.projective(x)), e[v], "P({v})");
        }
    }
}
