use crate::linalg::Matrix;
use crate::repcore::{direct_sum, map_from_projective, Algebra, ModuleMap, Representation};

use super::sub::{kernel_of, radical_bases};

/// A projective cover `cover → module` and its kernel.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub module: Representation,
    pub cover: Representation,
    /// Vertex of each indecomposable summand of `cover`, in order.
    pub tops: Vec<usize>,
    pub cover_map: ModuleMap,
    pub syzygy: Representation,
    pub inclusion: ModuleMap,
}

/// Lifts a basis of a complement of `rad(m)` at each vertex to a map from a sum of projectives.
pub fn projective_cover(alg: &Algebra, m: &Representation) -> CoverData {
    let p = alg.presentation();
    let field = alg.field();
    let rad = radical_bases(m);
    let mut tops = Vec::new();
    let mut maps = Vec::new();
    for x in 0..p.vertex_count() {
        let top = rad[x].complement();
        for j in 0..top.cols() {
            let v = top.select_columns(&[j]);
            maps.push(map_from_projective(alg.basis(), alg.projective(x), x, m, &v));
            tops.push(x);
        }
    }
    let parts: Vec<Representation> = tops.iter().map(|&x| alg.projective(x).clone()).collect();
    let sum = direct_sum(p, field, &parts).expect("same algebra");
    let mats = (0..p.vertex_count())
        .map(|y| {
            let mut mat = Matrix::zeros(field, m.dim_at(y), sum.module.dim_at(y));
            for (k, f) in maps.iter().enumerate() {
                mat.paste(0, sum.offsets[k][y], f.at(y));
            }
            mat
        })
        .collect();
    let cover_map = ModuleMap::new(sum.module.clone(), m.clone(), mats).expect("cover map shapes");
    let (syzygy, inclusion) = kernel_of(&cover_map);
    CoverData { module: m.clone(), cover: sum.module, tops, cover_map, syzygy, inclusion }
}

/// First syzygy: the kernel of a projective cover.
pub fn syzygy(alg: &Algebra, m: &Representation) -> Representation {
    projective_cover(alg, m).syzygy
}

/// `Ω^0 m, Ω^1 m, …, Ω^n m`.
pub fn syzygy_chain(alg: &Algebra, m: &Representation, n: usize) -> Vec<Representation> {
    let mut out = vec![m.clone()];
    for _ in 0..n {
        let next = syzygy(alg, out.last().unwrap());
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{radical, top_dims};
    use crate::linalg::Field;
    use crate::presentation::build_lambda;
    use crate::repcore::check_morphism;

    #[test]
    fn cover_invariants() {
        let a = Algebra::new(&build_lambda(1, 2).unwrap(), Field::Rational).unwrap();
        let p = a.presentation().clone();
        for v in p.vertices() {
            for m in [a.simple(v).unwrap(), a.projective_named(v).unwrap().clone()] {
                let c = projective_cover(&a, &m);
                assert!(c.cover_map.is_surjective());
                assert!(check_morphism(&c.cover_map).unwrap());
                assert!(check_morphism(&c.inclusion).unwrap());
                assert_eq!(top_dims(&c.cover), top_dims(&m));
                for x in 0..p.vertex_count() {
                    assert_eq!(m.dim_at(x) + c.syzygy.dim_at(x), c.cover.dim_at(x));
                }
                // the syzygy sits in the radical of the cover
                let rad = radical(&c.cover).1;
                for x in 0..p.vertex_count() {
                    let both = rad.at(x).hstack(c.inclusion.at(x));
                    assert_eq!(both.rank(), rad.at(x).rank());
                }
            }
        }
    }

    #[test]
    fn syzygies_of_simples() {
        let a = Algebra::new(&build_lambda(2, 0).unwrap(), Field::Rational).unwrap();
        assert!(syzygy(&a, &a.simple("d2").unwrap()).is_zero());
        assert_eq!(syzygy(&a, &a.simple("u").unwrap()), a.simple("u").unwrap());
        assert!(syzygy(&a, a.projective_named("a0").unwrap()).is_zero());
        let chain = syzygy_chain(&a, &a.simple("d0").unwrap(), 3);
        let sizes: Vec<usize> = chain.iter().map(Representation::total_dim).collect();
        assert_eq!(sizes, vec![1, 1, 1, 0]);
    }
}
