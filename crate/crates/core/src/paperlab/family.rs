use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::linalg::{Field, Matrix};
use crate::presentation::{build_lambda, build_lambda1prime, vertex_name, LetterClass, Presentation};
use crate::repcore::{
    direct_sum, simple, string_module, zero_module, Algebra, ModuleMap, RepError, Representation, StringWord,
};

use LetterClass::{Alpha, Beta};

/// A summand of a named module, remembered so that maps between members can be written down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    Walk(StringWord),
    Projective(String),
    Simple(String),
}

/// `Z_m[t]` with its summands in order.
#[derive(Clone, Debug)]
pub struct FamilyModule {
    pub m: usize,
    pub t: usize,
    pub module: Representation,
    pub parts: Vec<Part>,
    pub offsets: Vec<Vec<usize>>,
}

/// The algebras `Λ_m(r)` over one field, built on demand.
pub struct Family {
    r: usize,
    field: Field,
    lambdas: Mutex<BTreeMap<usize, Arc<Algebra>>>,
    l1p: Mutex<Option<Arc<Algebra>>>,
}

type Steps = Vec<(LetterClass, String)>;

fn step(class: LetterClass, v: String) -> (LetterClass, String) {
    (class, v)
}

impl Family {
    pub fn new(r: usize, field: Field) -> Result<Family, RepError> {
        build_lambda(r, 0)?;
        Ok(Family { r, field, lambdas: Mutex::new(BTreeMap::new()), l1p: Mutex::new(None) })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lambda(&self, m: usize) -> Result<Arc<Algebra>, RepError> {
        let mut cache = self.lambdas.lock().expect("cache lock");
        if let Some(a) = cache.get(&m) {
            return Ok(a.clone());
        }
        let a = Arc::new(Algebra::new(&build_lambda(self.r, m)?, self.field)?);
        cache.insert(m, a.clone());
        Ok(a)
    }

    pub fn lambda1prime(&self) -> Result<Arc<Algebra>, RepError> {
        let mut cache = self.l1p.lock().expect("cache lock");
        if let Some(a) = cache.as_ref() {
            return Ok(a.clone());
        }
        let a = Arc::new(Algebra::new(&build_lambda1prime(self.r)?, self.field)?);
        *cache = Some(a.clone());
        Ok(a)
    }

    fn walk(&self, p: &Presentation, base: &str, steps: &Steps) -> Result<StringWord, RepError> {
        let refs: Vec<(LetterClass, &str)> = steps.iter().map(|(c, v)| (*c, v.as_str())).collect();
        StringWord::through(p, base, &refs)
    }

    /// Base vertex and steps of the walk underlying `Z_m[t]` for `m ≥ 1`.
    fn z_walk(m: usize, t: usize) -> (String, Steps) {
        let s = |x: &str| x.to_string();
        match m {
            1 => {
                let mut st = vec![step(Beta, s("a0"))];
                for _ in 0..t {
                    st.extend([
                        step(Alpha, s("c1")),
                        step(Beta, s("b0")),
                        step(Alpha, s("b1")),
                        step(Beta, s("c0")),
                        step(Alpha, s("a0")),
                    ]);
                }
                st.push(step(Beta, s("u")));
                (s("a1"), st)
            }
            2 => {
                let mut st = vec![step(Alpha, s("c2")), step(Alpha, s("c1"))];
                for _ in 0..t {
                    st.extend([step(Beta, s("b2")), step(Alpha, s("b1")), step(Beta, s("c2")), step(Alpha, s("c1"))]);
                }
                st.extend([step(Alpha, s("a0")), step(Beta, s("a1"))]);
                (s("a2"), st)
            }
            3 => {
                let block = [step(Beta, s("b2")), step(Alpha, s("b3")), step(Beta, s("c2")), step(Alpha, s("a2"))];
                let mut st = Vec::new();
                for k in 0..t {
                    if k > 0 {
                        st.push(step(Alpha, s("a3")));
                    }
                    st.extend(block.iter().cloned());
                }
                (s("a3"), st)
            }
            _ => {
                let (a, b) = (vertex_name('a', m as i64), vertex_name('b', m as i64));
                let (pa, pb) = (vertex_name('a', m as i64 - 1), vertex_name('b', m as i64 - 1));
                let (first, join) = if m % 2 == 0 { (Alpha, Beta) } else { (Beta, Alpha) };
                let block = [step(first, pb), step(join, b), step(first, pa)];
                let mut st = Vec::new();
                for k in 0..t {
                    if k > 0 {
                        st.push(step(join, a.clone()));
                    }
                    st.extend(block.iter().cloned());
                }
                (a, st)
            }
        }
    }

    fn assemble(&self, alg: &Algebra, m: usize, t: usize, parts: Vec<Part>) -> Result<FamilyModule, RepError> {
        let p = alg.presentation();
        let mods: Vec<Representation> = parts
            .iter()
            .map(|part| match part {
                Part::Walk(w) => string_module(p, self.field, w),
                Part::Projective(x) => alg.projective_named(x).cloned(),
                Part::Simple(x) => simple(p, self.field, x),
            })
            .collect::<Result<_, _>>()?;
        let sum = direct_sum(p, self.field, &mods)?;
        Ok(FamilyModule { m, t, module: sum.module, parts, offsets: sum.offsets })
    }

    /// `Z_m[t]` over `Λ_m(r)`; `Z_m[1] = Z_m`.
    pub fn zt(&self, m: usize, t: usize) -> Result<FamilyModule, RepError> {
        if t == 0 {
            return Err(RepError::Shape("t must be at least 1".into()));
        }
        let alg = self.lambda(m)?;
        let p = alg.presentation();
        let parts = match m {
            0 => {
                let mut v = vec![Part::Simple("d0".into()), Part::Projective("a0".into())];
                for _ in 0..t {
                    v.push(Part::Projective("b0".into()));
                    v.push(Part::Projective("c0".into()));
                }
                v.push(Part::Simple("d1".into()));
                v
            }
            _ => {
                let (base, steps) = Self::z_walk(m, t);
                let mut v = vec![Part::Walk(self.walk(p, &base, &steps)?)];
                if m == 1 {
                    v.push(Part::Simple("d0".into()));
                }
                v
            }
        };
        self.assemble(&alg, m, t, parts)
    }

    pub fn z(&self, m: usize) -> Result<FamilyModule, RepError> {
        self.zt(m, 1)
    }

    /// The kernel `U_mt` of `φ_mt`, as a module in its own right; it does not depend on `t`.
    pub fn u(&self, m: usize, _t: usize) -> Result<Representation, RepError> {
        let alg = self.lambda(m)?;
        let p = alg.presentation();
        match m {
            0 => simple(p, self.field, "d1"),
            1 => Ok(direct_sum(p, self.field, &[simple(p, self.field, "u")?, simple(p, self.field, "d0")?])?.module),
            2 => string_module(p, self.field, &StringWord::through(p, "a1", &[(Beta, "a0")])?),
            _ => Ok(zero_module(p, self.field)),
        }
    }

    /// `φ_mt : Z_m[t] → Z_m[t+1]`, the inclusion of the first `t` blocks, killing `U_mt`.
    pub fn phi(&self, m: usize, t: usize) -> Result<ModuleMap, RepError> {
        let src = self.zt(m, t)?;
        let dst = self.zt(m, t + 1)?;
        let p = src.module.presentation().clone();
        let nv = p.vertex_count();
        let mut mats: Vec<Matrix> =
            (0..nv).map(|x| Matrix::zeros(self.field, dst.module.dim_at(x), src.module.dim_at(x))).collect();
        if m == 0 {
            // every summand but the trailing simple d1 goes to its namesake
            for k in 0..src.parts.len() - 1 {
                for x in 0..nv {
                    let end = src.offsets.get(k + 1).map_or(src.module.dim_at(x), |o| o[x]);
                    let len = end - src.offsets[k][x];
                    mats[x].paste(dst.offsets[k][x], src.offsets[k][x], &Matrix::identity(self.field, len));
                }
            }
        } else {
            let Part::Walk(w) = &src.parts[0] else { unreachable!("m ≥ 1 starts with a walk") };
            let verts = w.vertices(&p)?;
            let dropped = match m {
                1 => 1,
                2 => 2,
                _ => 0,
            };
            let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
            for (i, v) in verts.iter().enumerate() {
                let local = seen.entry(v.as_str()).or_default();
                if i < verts.len() - dropped {
                    let x = p.vertex(v).expect("walk vertex");
                    mats[x].set(dst.offsets[0][x] + *local, src.offsets[0][x] + *local, self.field.one());
                }
                *local += 1;
            }
        }
        ModuleMap::new(src.module, dst.module, mats)
    }
}

/// `Z_m` over `Λ_m(r)`.
pub fn build_z(r: usize, m: usize, field: Field) -> Result<Representation, RepError> {
    Ok(Family::new(r, field)?.z(m)?.module)
}

pub fn build_zt(r: usize, m: usize, t: usize, field: Field) -> Result<Representation, RepError> {
    Ok(Family::new(r, field)?.zt(m, t)?.module)
}

pub fn build_phi(r: usize, m: usize, t: usize, field: Field) -> Result<ModuleMap, RepError> {
    Family::new(r, field)?.phi(m, t)
}

pub fn build_u(r: usize, m: usize, t: usize, field: Field) -> Result<Representation, RepError> {
    Family::new(r, field)?.u(m, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{certified_iso, kernel_of, projdim, syzygy, PdOptions, Verdict};
    use crate::repcore::{check_morphism, inflate};

    fn support(m: &Representation) -> BTreeMap<String, usize> {
        m.dim_vector().into_iter().filter(|(_, d)| *d > 0).collect()
    }

    fn ones(vs: &[&str]) -> BTreeMap<String, usize> {
        vs.iter().map(|v| (v.to_string(), 1)).collect()
    }

    #[test]
    fn small_members() {
        let f = Family::new(1, Field::Rational).unwrap();
        assert_eq!(f.z(0).unwrap().module.total_dim(), 12);
        assert_eq!(support(&f.z(3).unwrap().module), ones(&["a3", "b3", "b2", "c2", "a2"]));
        assert_eq!(support(&f.z(5).unwrap().module), ones(&["a5", "b4", "b5", "a4"]));
        assert_eq!(support(&f.z(4).unwrap().module), ones(&["a4", "b3", "b4", "a3"]));
        let z2: BTreeMap<String, usize> = [("a2", 1), ("c2", 2), ("c1", 2), ("b2", 1), ("b1", 1), ("a0", 1), ("a1", 1)]
            .iter()
            .map(|(v, d)| (v.to_string(), *d))
            .collect();
        assert_eq!(support(&f.z(2).unwrap().module), z2);
        assert_eq!(f.z(1).unwrap().module.total_dim(), 9);
    }

    #[test]
    fn growth_in_t() {
        let f = Family::new(1, Field::Rational).unwrap();
        assert_eq!(f.zt(3, 3).unwrap().module.total_dim(), 15);
        assert_eq!(f.zt(1, 2).unwrap().module.total_dim(), 5 * 2 + 4);
        assert_eq!(f.zt(2, 2).unwrap().module.total_dim(), 4 * 2 + 5);
        assert!(f.zt(2, 0).is_err());
    }

    #[test]
    fn small_proposition_cases() {
        let f = Family::new(1, Field::Rational).unwrap();
        for m in 0..3 {
            let a = f.lambda(m).unwrap();
            let z = f.z(m).unwrap().module;
            let rep = projdim(&a, &z, &PdOptions::new(&a, 8));
            assert_eq!(rep.verdict, Verdict::Finite { n: 1 + m }, "m = {m}");
            let big = f.lambda(m + 1).unwrap();
            let omega = syzygy(&big, &f.z(m + 1).unwrap().module);
            let zm = inflate(&z, big.presentation()).unwrap();
            assert!(certified_iso(&omega, &zm, 20, 1).is_iso(), "m = {m}");
        }
    }

    #[test]
    fn phi_kernels() {
        let f = Family::new(1, Field::Rational).unwrap();
        for m in 0..5 {
            for t in 1..3 {
                let phi = f.phi(m, t).unwrap();
                assert!(check_morphism(&phi).unwrap(), "m={m} t={t} at {:?}", phi.first_violation());
                let (k, _) = kernel_of(&phi);
                let u = f.u(m, t).unwrap();
                assert!(certified_iso(&k, &u, 20, 2).is_iso(), "m={m} t={t}");
            }
        }
        assert!(kernel_of(&f.phi(4, 2).unwrap()).0.is_zero());
    }
}
