use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::homology::cokernel_of;
use crate::linalg::{Field, FieldElem, Matrix};
use crate::presentation::{PathBasis, Presentation};

use super::{ModuleMap, RepError, Representation};

pub fn zero_module(p: &Arc<Presentation>, field: Field) -> Representation {
    let dims = vec![0; p.vertex_count()];
    let mats = (0..p.arrow_count()).map(|_| Matrix::zeros(field, 0, 0)).collect();
    Representation::assemble(p.clone(), field, dims, mats)
}

/// The simple module at vertex `x`.
pub fn simple(p: &Arc<Presentation>, field: Field, x: &str) -> Result<Representation, RepError> {
    let xi = p.require_vertex(x)?;
    let mut dims = vec![0; p.vertex_count()];
    dims[xi] = 1;
    let mats = (0..p.arrow_count())
        .map(|a| {
            let (s, t) = p.ends(a);
            Matrix::zeros(field, dims[t], dims[s])
        })
        .collect();
    Ok(Representation::assemble(p.clone(), field, dims, mats))
}

/// Local coordinate of each basis path starting at `x`: `(path index, target, position)`.
fn projective_layout(basis: &PathBasis, x: usize) -> Vec<(usize, usize, usize)> {
    let mut seen = vec![0usize; basis.presentation().vertex_count()];
    basis
        .starting_at(x)
        .into_iter()
        .map(|i| {
            let t = basis.paths()[i].target;
            seen[t] += 1;
            (i, t, seen[t] - 1)
        })
        .collect()
}

/// The indecomposable projective at `x`: paths starting at `x`, arrows acting by composition.
pub fn projective(basis: &PathBasis, x: &str) -> Result<Representation, RepError> {
    let p = basis.presentation();
    let field = basis.field();
    let xi = p.require_vertex(x)?;
    let layout = projective_layout(basis, xi);
    let mut dims = vec![0; p.vertex_count()];
    for &(_, t, _) in &layout {
        dims[t] += 1;
    }
    let local: std::collections::HashMap<usize, usize> = layout.iter().map(|&(i, _, k)| (i, k)).collect();
    let mut mats: Vec<Matrix> = (0..p.arrow_count())
        .map(|a| {
            let (s, t) = p.ends(a);
            Matrix::zeros(field, dims[t], dims[s])
        })
        .collect();
    for &(i, t, k) in &layout {
        for a in p.arrows_from(t) {
            for (j, c) in basis.act(a, i) {
                mats[a].set(local[j], k, c.clone());
            }
        }
    }
    Ok(Representation::assemble(p.clone(), field, dims, mats))
}

/// The map `P(x) → n` sending the idempotent at `x` to `v ∈ n_x`.
pub fn map_from_projective(
    basis: &PathBasis,
    px: &Representation,
    x: usize,
    n: &Representation,
    v: &Matrix,
) -> ModuleMap {
    let p = basis.presentation();
    let field = basis.field();
    let mut mats: Vec<Matrix> =
        (0..p.vertex_count()).map(|y| Matrix::zeros(field, n.dim_at(y), px.dim_at(y))).collect();
    for (i, t, k) in projective_layout(basis, x) {
        let path = &basis.paths()[i].arrows;
        let image = if path.is_empty() { v.clone() } else { &n.eval_path(path) * v };
        for r in 0..image.rows() {
            mats[t].set(r, k, image.get(r, 0).clone());
        }
    }
    ModuleMap::assemble(px.clone(), n.clone(), mats)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Representation,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
    /// `offsets[k][x]`: first coordinate of summand `k` at vertex `x`.
    pub offsets: Vec<Vec<usize>>,
}

pub fn direct_sum(p: &Arc<Presentation>, field: Field, parts: &[Representation]) -> Result<DirectSum, RepError> {
    let zero = zero_module(p, field);
    for m in parts {
        zero.compatible(m)?;
    }
    let nv = p.vertex_count();
    let mut dims = vec![0; nv];
    let mut offsets = Vec::new();
    for m in parts {
        offsets.push(dims.clone());
        for x in 0..nv {
            dims[x] += m.dim_at(x);
        }
    }
    let mats = (0..p.arrow_count())
        .map(|a| {
            let blocks: Vec<&Matrix> = parts.iter().map(|m| m.mat(a)).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    let module = Representation::assemble(p.clone(), field, dims.clone(), mats);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (k, m) in parts.iter().enumerate() {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for x in 0..nv {
            let mut i = Matrix::zeros(field, dims[x], m.dim_at(x));
            i.paste(offsets[k][x], 0, &Matrix::identity(field, m.dim_at(x)));
            proj.push(i.transpose());
            inj.push(i);
        }
        injections.push(ModuleMap::assemble(m.clone(), module.clone(), inj));
        projections.push(ModuleMap::assemble(module.clone(), m.clone(), proj));
    }
    Ok(DirectSum { module, injections, projections, offsets })
}

/// Regards a module over a full subquiver algebra as a module over `big`.
pub fn inflate(m: &Representation, big: &Arc<Presentation>) -> Result<Representation, RepError> {
    let small = m.presentation();
    if !small.is_subquiver_of(big) {
        return Err(RepError::Incompatible(format!("{} is not a full subquiver of {}", small.name(), big.name())));
    }
    let dims: Vec<usize> = big.vertices().iter().map(|v| m.dim_named(v)).collect();
    let mats = (0..big.arrow_count())
        .map(|a| {
            let (s, t) = big.ends(a);
            match small.arrow(&big.arrows()[a].name) {
                Some(b) => m.mat(b).clone(),
                None => Matrix::zeros(m.field(), dims[t], dims[s]),
            }
        })
        .collect();
    Representation::new(big.clone(), m.field(), dims, mats)
}

/// The restriction of `m` to the full subquiver `small`; errors when `small`'s relations fail.
pub fn restrict(m: &Representation, small: &Arc<Presentation>) -> Result<Representation, RepError> {
    let big = m.presentation();
    if !small.is_subquiver_of(big) {
        return Err(RepError::Incompatible(format!("{} is not a full subquiver of {}", small.name(), big.name())));
    }
    let dims: Vec<usize> = small.vertices().iter().map(|v| m.dim_named(v)).collect();
    let mats = small.arrows().iter().map(|a| m.mat(big.arrow(&a.name).unwrap()).clone()).collect();
    Representation::new(small.clone(), m.field(), dims, mats)
}

/// Whether all dimensions outside `vertices` vanish.
pub fn supported_on<S: AsRef<str>>(m: &Representation, vertices: &[S]) -> bool {
    m.presentation().vertices().iter().zip(m.dims()).all(|(v, &d)| d == 0 || vertices.iter().any(|s| s.as_ref() == v))
}

fn sparse_scalar(rng: &mut ChaCha8Rng, field: Field) -> FieldElem {
    if rng.gen_bool(0.5) {
        field.zero()
    } else {
        field.random(rng, 2)
    }
}

/// The cokernel of a seeded random map between sums of projectives, with the target sum of
/// total dimension at most `budget`.
pub fn random_module(basis: &PathBasis, seed: u64, budget: usize) -> Representation {
    let p = basis.presentation();
    let field = basis.field();
    if budget == 0 {
        return zero_module(p, field);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = p.vertex_count();
    let pdims: Vec<usize> = (0..nv).map(|x| basis.starting_at(x).len()).collect();
    let goal = rng.gen_range(1..=budget);
    let mut tops = Vec::new();
    let mut used = 0;
    let mut misses = 0;
    while misses < 8 {
        let x = rng.gen_range(0..nv);
        if used + pdims[x] <= goal {
            used += pdims[x];
            tops.push(x);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    if tops.is_empty() {
        let x = (0..nv).min_by_key(|&x| pdims[x]).unwrap();
        if pdims[x] > budget {
            return zero_module(p, field);
        }
        tops.push(x);
    }
    let names = p.vertices();
    let projs: Vec<Representation> = tops.iter().map(|&x| projective(basis, &names[x]).unwrap()).collect();
    let target = direct_sum(p, field, &projs).unwrap().module;
    let relations = rng.gen_range(0..=tops.len() + 1);
    let mut sources = Vec::new();
    let mut maps = Vec::new();
    for _ in 0..relations {
        let x = rng.gen_range(0..nv);
        let v = Matrix::from_columns(
            field,
            target.dim_at(x),
            &[(0..target.dim_at(x)).map(|_| sparse_scalar(&mut rng, field)).collect()],
        );
        let px = projective(basis, &names[x]).unwrap();
        maps.push(map_from_projective(basis, &px, x, &target, &v));
        sources.push(px);
    }
    let source = direct_sum(p, field, &sources).unwrap();
    let mats = (0..nv)
        .map(|y| {
            let mut m = Matrix::zeros(field, target.dim_at(y), source.module.dim_at(y));
            for (k, f) in maps.iter().enumerate() {
                m.paste(0, source.offsets[k][y], f.at(y));
            }
            m
        })
        .collect();
    let f = ModuleMap::assemble(source.module, target, mats);
    cokernel_of(&f).0
}

/// `m` transported along random invertible basis changes, with the isomorphism `m → result`.
pub fn scramble(m: &Representation, seed: u64) -> (Representation, ModuleMap) {
    let field = m.field();
    let p = m.presentation();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let changes: Vec<Matrix> = m
        .dims()
        .iter()
        .map(|&d| loop {
            let g = Matrix::random(field, d, d, &mut rng, 3);
            if d == 0 || g.is_invertible() {
                break g;
            }
        })
        .collect();
    let inverses: Vec<Matrix> =
        changes.iter().map(|g| g.inverse().unwrap_or_else(|| Matrix::zeros(field, 0, 0))).collect();
    let mats = (0..p.arrow_count())
        .map(|a| {
            let (s, t) = p.ends(a);
            &(&changes[t] * m.mat(a)) * &inverses[s]
        })
        .collect();
    let out = Representation::assemble(p.clone(), field, m.dims().to_vec(), mats);
    let iso = ModuleMap::assemble(m.clone(), out.clone(), changes);
    (out, iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_lambda, build_lambda1prime, build_path_basis, DEFAULT_LENGTH_BOUND};
    use crate::repcore::check_morphism;

    fn basis(r: usize, m: usize) -> PathBasis {
        build_path_basis(&build_lambda(r, m).unwrap(), Field::Rational, DEFAULT_LENGTH_BOUND).unwrap()
    }

    #[test]
    fn projectives_from_appendix() {
        let b = basis(1, 5);
        let pa1 = projective(&b, "a1").unwrap();
        assert_eq!(pa1.total_dim(), 4);
        for v in ["a1", "d0", "a0", "u"] {
            assert_eq!(pa1.dim_named(v), 1);
        }
        assert_eq!(projective(&b, "c1").unwrap().total_dim(), 6);
        let pu = projective(&basis(2, 0), "u").unwrap();
        assert_eq!(pu.dim_vector().into_iter().collect::<Vec<_>>(), vec![("u".to_string(), 2)]);
    }

    #[test]
    fn projectives_satisfy_relations() {
        let b = basis(2, 5);
        for v in b.presentation().vertices() {
            projective(&b, v).unwrap().check_relations().unwrap();
        }
    }

    #[test]
    fn sums_and_structure_maps() {
        let b = basis(1, 2);
        let p = b.presentation().clone();
        let empty = direct_sum(&p, Field::Rational, &[]).unwrap();
        assert!(empty.module.is_zero());
        let parts = vec![projective(&b, "c2").unwrap(), simple(&p, Field::Rational, "c2").unwrap()];
        let s = direct_sum(&p, Field::Rational, &parts).unwrap();
        assert_eq!(s.module.dim_named("c2"), 2);
        assert_eq!(s.module.total_dim(), parts[0].total_dim() + 1);
        s.module.check_relations().unwrap();
        for k in 0..2 {
            assert!(check_morphism(&s.injections[k]).unwrap());
            assert!(check_morphism(&s.projections[k]).unwrap());
            let id = s.projections[k].compose_after(&s.injections[k]).unwrap();
            assert_eq!(id, ModuleMap::identity(&parts[k]));
        }
    }

    #[test]
    fn inflate_restrict_round_trip() {
        let small = Arc::new(build_lambda(1, 0).unwrap());
        let big = Arc::new(build_lambda(1, 1).unwrap());
        let d0 = simple(&small, Field::Rational, "d0").unwrap();
        let up = inflate(&d0, &big).unwrap();
        assert_eq!(up, simple(&big, Field::Rational, "d0").unwrap());
        let b0 = build_path_basis(&small, Field::Rational, 64).unwrap();
        let pa0 = projective(&b0, "a0").unwrap();
        let back = restrict(&inflate(&pa0, &big).unwrap(), &small).unwrap();
        assert_eq!(back, pa0);
        assert!(inflate(&up, &small).is_err());
    }

    #[test]
    fn support() {
        let b = basis(1, 2);
        let p = b.presentation().clone();
        let l1 = build_lambda(1, 1).unwrap();
        let l1p = build_lambda1prime(1).unwrap();
        assert!(!supported_on(&simple(&p, Field::Rational, "c2").unwrap(), l1.vertices()));
        assert!(supported_on(&zero_module(&p, Field::Rational), &["x"]));
        assert!(supported_on(&projective(&b, "c2").unwrap(), l1p.vertices()));
    }

    #[test]
    fn scramble_is_iso() {
        let b = basis(1, 2);
        let m = random_module(&b, 4, 20);
        let (n, f) = scramble(&m, 9);
        assert!(crate::repcore::check_morphism(&f).unwrap() && f.is_iso());
        assert!(n.check_relations().is_ok());
    }

    #[test]
    fn random_modules_are_deterministic_and_valid() {
        let l = build_lambda1prime(1).unwrap();
        for field in [Field::Rational, Field::Prime(101)] {
            let b = build_path_basis(&l, field, 64).unwrap();
            assert!(random_module(&b, 3, 0).is_zero());
            for seed in 0..20 {
                let m = random_module(&b, seed, 30);
                assert!(m.total_dim() <= 30);
                m.check_relations().unwrap();
                assert_eq!(m, random_module(&b, seed, 30));
            }
        }
    }

    #[test]
    fn identity_relation_gives_zero_cokernel() {
        let b = basis(1, 1);
        let pa1 = projective(&b, "a1").unwrap();
        let x = b.presentation().vertex("a1").unwrap();
        let v = Matrix::from_i64_rows(Field::Rational, &[vec![1]]);
        let f = map_from_projective(&b, &pa1, x, &pa1, &v);
        assert_eq!(f, ModuleMap::identity(&pa1));
        assert!(cokernel_of(&f).0.is_zero());
    }
}
