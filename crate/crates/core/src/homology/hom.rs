use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Field, Matrix};
use crate::repcore::{check_morphism, ModuleMap, Representation};

use super::sub::{radical_bases, socle_bases};

/// A basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Representation,
    pub target: Representation,
    pub maps: Vec<ModuleMap>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// `Σ c_i · maps[i]`.
    pub fn combine(&self, coeffs: &[crate::linalg::FieldElem]) -> ModuleMap {
        let mut acc = ModuleMap::zero(&self.source, &self.target);
        for (c, f) in coeffs.iter().zip(&self.maps) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}

/// Solves the intertwining equations `f_y · M_a = N_a · f_x` for every arrow `a: x → y`.
pub fn hom_basis(m: &Representation, n: &Representation) -> HomBasis {
    let p = m.presentation();
    let field = m.field();
    let nv = p.vertex_count();
    let mut offset = vec![0usize; nv + 1];
    for x in 0..nv {
        offset[x + 1] = offset[x] + n.dim_at(x) * m.dim_at(x);
    }
    let unknowns = offset[nv];
    let empty = HomBasis { source: m.clone(), target: n.clone(), maps: vec![] };
    if unknowns == 0 {
        return empty;
    }
    let var = |x: usize, i: usize, j: usize| offset[x] + i * m.dim_at(x) + j;
    let mut rows: Vec<Vec<crate::linalg::FieldElem>> = Vec::new();
    for a in 0..p.arrow_count() {
        let (x, y) = p.ends(a);
        let (ma, na) = (m.mat(a), n.mat(a));
        for i in 0..n.dim_at(y) {
            for j in 0..m.dim_at(x) {
                let mut row = vec![field.zero(); unknowns];
                let mut any = false;
                for k in 0..m.dim_at(y) {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let v = var(y, i, k);
                        row[v] = &row[v] + c;
                        any = true;
                    }
                }
                for l in 0..n.dim_at(x) {
                    let c = na.get(i, l);
                    if !c.is_zero() {
                        let v = var(x, l, j);
                        row[v] = &row[v] - c;
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(field, unknowns)
    } else {
        Matrix::from_elems(field, rows.len(), unknowns, rows.concat()).kernel_basis()
    };
    let maps = (0..kernel.cols())
        .map(|c| {
            let mats = (0..nv)
                .map(|x| {
                    let (r, s) = (n.dim_at(x), m.dim_at(x));
                    let data = (0..r * s).map(|k| kernel.get(offset[x] + k, c).clone()).collect();
                    Matrix::from_elems(field, r, s, data)
                })
                .collect();
            ModuleMap::new(m.clone(), n.clone(), mats).expect("hom shapes")
        })
        .collect();
    HomBasis { maps, ..empty }
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoOutcome {
    /// A verified isomorphism, found at the given trial (0 for the identity).
    Iso { map: ModuleMap, trial: usize },
    /// A sound negative: dimension vectors differ or a Hom space vanishes.
    NotIsomorphic(String),
    /// No invertible combination found; not a proof of non-isomorphism.
    NotFound { trials: usize },
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Iso { .. })
    }

    pub fn map(&self) -> Option<&ModuleMap> {
        match self {
            IsoOutcome::Iso { map, .. } => Some(map),
            _ => None,
        }
    }
}

/// Default number of random trials: 20 over the rationals, 40 over a prime field.
pub fn default_trials(field: Field) -> usize {
    match field {
        Field::Rational => 20,
        Field::Prime(_) => 40,
    }
}

/// Searches for an isomorphism `m → n` among random combinations of a Hom basis.
pub fn certified_iso(m: &Representation, n: &Representation, trials: usize, seed: u64) -> IsoOutcome {
    if m.field() != n.field() || m.presentation().vertices() != n.presentation().vertices() {
        return IsoOutcome::NotIsomorphic("modules over different algebras".into());
    }
    if m.dims() != n.dims() {
        return IsoOutcome::NotIsomorphic("dimension vectors differ".into());
    }
    if m == n {
        return IsoOutcome::Iso { map: ModuleMap::identity(m), trial: 0 };
    }
    let forward = hom_basis(m, n);
    if forward.dim() == 0 {
        return IsoOutcome::NotIsomorphic("Hom(M, N) = 0".into());
    }
    if hom_basis(n, m).dim() == 0 {
        return IsoOutcome::NotIsomorphic("Hom(N, M) = 0".into());
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=trials {
        let coeffs: Vec<_> = (0..forward.dim()).map(|_| field.random(&mut rng, 16)).collect();
        let f = forward.combine(&coeffs);
        if f.is_iso() && check_morphism(&f).unwrap_or(false) {
            return IsoOutcome::Iso { map: f, trial: t };
        }
    }
    IsoOutcome::NotFound { trials }
}

/// Maps `s: S → M` and `p: M → S` with `p ∘ s ≠ 0`.
#[derive(Clone, Debug)]
pub struct SplitPair {
    pub section: ModuleMap,
    pub retraction: ModuleMap,
}

/// Whether the simple module at `x` is a direct summand of `m`, with a split pair as witness.
///
/// `Hom(S, M)` is the socle of `M` at `x` and `Hom(M, S)` the functionals vanishing on
/// `rad(M)_x`; the composition pairing is nonzero iff some socle vector avoids the radical.
pub fn is_direct_summand_simple(s: &Representation, x: usize, m: &Representation) -> Option<SplitPair> {
    let field = m.field();
    let rad = &radical_bases(m)[x];
    let soc = &socle_bases(m)[x];
    let base_rank = rad.rank();
    let k = (0..soc.cols()).map(|j| soc.select_columns(&[j])).find(|k| rad.hstack(k).rank() > base_rank)?;
    let system = rad.hstack(&k).transpose();
    let mut rhs = Matrix::zeros(field, system.rows(), 1);
    rhs.set(system.rows() - 1, 0, field.one());
    let phi = system.solve(&rhs).ok()?.transpose();
    let nv = m.presentation().vertex_count();
    let sec =
        (0..nv).map(|y| if y == x { k.clone() } else { Matrix::zeros(field, m.dim_at(y), s.dim_at(y)) }).collect();
    let ret =
        (0..nv).map(|y| if y == x { phi.clone() } else { Matrix::zeros(field, s.dim_at(y), m.dim_at(y)) }).collect();
    let pair = SplitPair {
        section: ModuleMap::new(s.clone(), m.clone(), sec).ok()?,
        retraction: ModuleMap::new(m.clone(), s.clone(), ret).ok()?,
    };
    let ok = check_morphism(&pair.section).ok()?
        && check_morphism(&pair.retraction).ok()?
        && !pair.retraction.compose_after(&pair.section).ok()?.is_zero();
    ok.then_some(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::syzygy;
    use crate::presentation::build_lambda;
    use crate::repcore::{direct_sum, Algebra};

    fn alg(r: usize, m: usize) -> Algebra {
        Algebra::new(&build_lambda(r, m).unwrap(), Field::Rational).unwrap()
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        let a = alg(1, 2);
        let p = a.presentation();
        let m = a.projective_named("c2").unwrap().clone();
        for (x, v) in p.vertices().iter().enumerate() {
            assert_eq!(hom_basis(a.projective(x), &m).dim(), m.dim_at(x), "P({v})");
        }
    }

    #[test]
    fn hom_between_simples() {
        let a = alg(1, 0);
        let names = ["a0", "u", "d1"];
        for x in names {
            for y in names {
                let d = hom_basis(&a.simple(x).unwrap(), &a.simple(y).unwrap()).dim();
                assert_eq!(d, usize::from(x == y));
            }
        }
    }

    #[test]
    fn hom_maps_intertwine() {
        let a = alg(1, 1);
        let m = a.projective_named("c1").unwrap();
        let n = a.projective_named("a0").unwrap();
        let h = hom_basis(n, m);
        assert!(h.dim() > 0);
        for f in &h.maps {
            assert!(check_morphism(f).unwrap());
        }
    }

    #[test]
    fn iso_search() {
        let a = alg(1, 0);
        let u = a.simple("u").unwrap();
        match certified_iso(&u, &u, 20, 1) {
            IsoOutcome::Iso { trial, .. } => assert_eq!(trial, 0),
            o => panic!("{o:?}"),
        }
        let omega = syzygy(&a, &u);
        assert!(certified_iso(&omega, &u, 20, 1).is_iso());
        assert!(matches!(certified_iso(&u, &a.simple("v").unwrap(), 20, 1), IsoOutcome::NotIsomorphic(_)));
        let iso = certified_iso(a.projective_named("a0").unwrap(), &a.projective_named("a0").unwrap().clone(), 20, 3);
        assert!(iso.is_iso());
    }

    #[test]
    fn iso_inverse_is_certificate() {
        let a = alg(1, 1);
        let p = a.presentation().clone();
        let x = a.projective_named("c1").unwrap().clone();
        let y = a.simple("d0").unwrap();
        let s1 = direct_sum(&p, Field::Rational, &[x.clone(), y.clone()]).unwrap().module;
        let s2 = direct_sum(&p, Field::Rational, &[y, x]).unwrap().module;
        let f = certified_iso(&s1, &s2, 20, 9);
        let f = f.map().expect("iso");
        let g = f.inverse().unwrap();
        assert!(check_morphism(&g).unwrap());
        assert!(g.is_iso());
    }

    #[test]
    fn simple_summands() {
        let a = alg(1, 0);
        let p = a.presentation().clone();
        let x = p.vertex("u").unwrap();
        let u = a.simple("u").unwrap();
        let sum = direct_sum(&p, Field::Rational, &[u.clone(), a.simple("v").unwrap()]).unwrap().module;
        assert!(is_direct_summand_simple(&u, x, &sum).is_some());
        assert!(is_direct_summand_simple(&u, x, a.projective_named("u").unwrap()).is_none());
    }
}
