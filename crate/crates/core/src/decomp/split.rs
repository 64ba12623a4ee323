use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::homology::{hom_basis, kernel_of, try_submodule};
use crate::linalg::{Field, Matrix};
use crate::presentation::{build_lambda1prime, build_subquiver_u, LetterClass, Presentation, U_VERTICES};
use crate::repcore::{
    check_morphism, direct_sum, map_from_projective, restrict, string_module, Algebra, ModuleMap, Representation,
    StringWord,
};

use super::{interval_decompose, DecompError};

use LetterClass::{Alpha, Beta};

/// Arrow classes along `U_VERTICES`.
const U_CLASSES: [LetterClass; 5] = [Alpha, Beta, Alpha, Alpha, Beta];

/// The ten segments of `U_VERTICES` through `c2`, as inclusive position ranges: first those
/// ending at `b1`, then those ending at `c2`, each by decreasing length.
pub const X_WALKS: [(usize, usize); 10] =
    [(0, 5), (1, 5), (2, 5), (3, 5), (4, 5), (0, 4), (1, 4), (2, 4), (3, 4), (4, 4)];

/// The string of the `k`-th entry of [`X_WALKS`].
pub fn x_walk(p: &Presentation, k: usize) -> Result<StringWord, DecompError> {
    let (s, e) = X_WALKS[k];
    let steps: Vec<(LetterClass, &str)> = (s..e).map(|i| (U_CLASSES[i], U_VERTICES[i + 1])).collect();
    Ok(StringWord::through(p, U_VERTICES[s], &steps)?)
}

/// The ten string modules supported on segments through `c2`, over `p`.
pub fn xset_over(p: &Arc<Presentation>, field: Field) -> Result<Vec<Representation>, DecompError> {
    (0..X_WALKS.len()).map(|k| Ok(string_module(p, field, &x_walk(p, k)?)?)).collect()
}

pub fn xset(r: usize, field: Field) -> Result<Vec<Representation>, DecompError> {
    xset_over(&Arc::new(build_lambda1prime(r)?), field)
}

/// `m ≅ P(c2)^a ⊕ complement`.
#[derive(Clone, Debug)]
pub struct StripPc2 {
    pub a: usize,
    pub cover: Representation,
    pub section: ModuleMap,
    pub retraction: ModuleMap,
    pub complement: Representation,
    pub inclusion: ModuleMap,
    /// `cover ⊕ complement → m`, verified invertible.
    pub certificate: ModuleMap,
}

fn arrow_index(p: &Presentation, name: &str) -> Result<usize, DecompError> {
    p.arrow(name).ok_or_else(|| DecompError::Missing(name.to_string()))
}

fn vertex_index(p: &Presentation, name: &str) -> Result<usize, DecompError> {
    p.vertex(name).ok_or_else(|| DecompError::Missing(name.to_string()))
}

fn hstack_all(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
    parts.iter().fold(Matrix::zeros(field, rows, 0), |acc, m| acc.hstack(m))
}

/// Splits off copies of `P(c2)` from a module over an algebra in which `P(c2)` has a simple socle
/// reached by `α³ = β²`.
pub fn strip_pc2(alg: &Algebra, m: &Representation) -> Result<StripPc2, DecompError> {
    let p = alg.presentation();
    let field = alg.field();
    let c2 = vertex_index(p, "c2")?;
    let alpha3 = [arrow_index(p, "alpha_c2")?, arrow_index(p, "alpha_c1")?, arrow_index(p, "alpha_a0")?];
    let beta2 = [arrow_index(p, "beta_c2")?, arrow_index(p, "beta_b1")?];
    let stacked = m.eval_path(&alpha3).vstack(&m.eval_path(&beta2));
    let pivots = stacked.rref().pivots;
    let a = pivots.len();
    let pc2 = alg.projective(c2).clone();
    if pc2.dim_at(c2) != 1 {
        return Err(DecompError::CertificateFailure("P(c2) is not a brick at c2".into()));
    }
    let nv = p.vertex_count();
    let sections: Vec<ModuleMap> = pivots
        .iter()
        .map(|&j| {
            let mut e = Matrix::zeros(field, m.dim_at(c2), 1);
            e.set(j, 0, field.one());
            map_from_projective(alg.basis(), &pc2, c2, m, &e)
        })
        .collect();
    let cover = direct_sum(p, field, &vec![pc2.clone(); a])?.module;
    let mut retractions = Vec::new();
    if a > 0 {
        let hom = hom_basis(m, &pc2);
        let values: Vec<_> = (0..a)
            .flat_map(|l| hom.maps.iter().map(move |h| (l, h)))
            .map(|(l, h)| h.at(c2).get(0, pivots[l]).clone())
            .collect();
        let vt = Matrix::from_elems(field, a, hom.dim(), values);
        let coeffs = vt
            .solve(&Matrix::identity(field, a))
            .map_err(|_| DecompError::CertificateFailure("no retraction onto P(c2)".into()))?;
        for k in 0..a {
            retractions.push(hom.combine(&coeffs.column(k)));
        }
    }
    let sec_mats = (0..nv)
        .map(|y| {
            let parts: Vec<&Matrix> = sections.iter().map(|f| f.at(y)).collect();
            hstack_all(field, m.dim_at(y), &parts)
        })
        .collect();
    let ret_mats = (0..nv)
        .map(|y| retractions.iter().fold(Matrix::zeros(field, 0, m.dim_at(y)), |acc, f| acc.vstack(f.at(y))))
        .collect();
    let section = ModuleMap::new(cover.clone(), m.clone(), sec_mats)?;
    let retraction = ModuleMap::new(m.clone(), cover.clone(), ret_mats)?;
    let (complement, inclusion) = kernel_of(&retraction);
    let both = direct_sum(p, field, &[cover.clone(), complement.clone()])?.module;
    let mats = (0..nv).map(|y| section.at(y).hstack(inclusion.at(y))).collect();
    let certificate = ModuleMap::new(both, m.clone(), mats)?;
    if !(check_morphism(&certificate)? && certificate.is_iso()) {
        return Err(DecompError::CertificateFailure("P(c2) splitting is not an isomorphism".into()));
    }
    Ok(StripPc2 { a, cover, section, retraction, complement, inclusion, certificate })
}

/// `M ≅ P(c2)^a ⊕ X ⊕ M'` with `X` a sum of [`xset`] members and `M'` vanishing at `c2`.
#[derive(Clone, Debug)]
pub struct Lemma2Split {
    pub input: Representation,
    pub a: usize,
    pub x: Representation,
    pub x_multiplicities: [usize; 10],
    pub mprime: Representation,
    /// `P(c2)^a ⊕ X ⊕ M' → M`, verified invertible.
    pub certificate: ModuleMap,
    /// Surjectivity and vanishing checks on the arrows around the `X` part, by name.
    pub checks: Vec<(String, bool)>,
    pub mprime_on_lambda1: bool,
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub x_multiplicities: Vec<usize>,
    pub a: usize,
    pub mprime_dims: BTreeMap<String, usize>,
    pub mprime_on_lambda1: bool,
    pub checksum: String,
}

impl Lemma2Split {
    pub fn report(&self) -> SplitReport {
        SplitReport {
            x_multiplicities: self.x_multiplicities.to_vec(),
            a: self.a,
            mprime_dims: self.mprime.dim_vector().into_iter().filter(|(_, d)| *d > 0).collect(),
            mprime_on_lambda1: self.mprime_on_lambda1,
            checksum: self.checksum.clone(),
        }
    }

    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn checksum(f: &ModuleMap) -> String {
    let mut h = Sha256::new();
    for (x, m) in f.mats().iter().enumerate() {
        h.update(format!("{x}:{}x{}:", m.rows(), m.cols()));
        for e in m.entries() {
            h.update(e.to_string());
            h.update(",");
        }
    }
    hex::encode(h.finalize())
}

/// Splits a module over `Λ_1'` along `P(c2)`, the interval summands of its restriction to `U`
/// that pass through `c2`, and the rest.
pub fn lemma2_split(alg: &Algebra, m: &Representation) -> Result<Lemma2Split, DecompError> {
    let p = alg.presentation();
    let field = alg.field();
    let u = Arc::new(build_subquiver_u(p)?);
    let strip = strip_pc2(alg, m)?;
    let c = &strip.complement;
    let cu = restrict(c, &u)?;
    let dec = interval_decompose(&cu)?;

    let walk_sets: Vec<Vec<String>> = X_WALKS
        .iter()
        .map(|&(s, e)| {
            let mut v: Vec<String> = U_VERTICES[s..=e].iter().map(|x| x.to_string()).collect();
            v.sort();
            v
        })
        .collect();
    // walk index of every interval copy through c2
    let mut kind: Vec<Option<usize>> = Vec::new();
    for id in 0..dec.intervals.len() {
        let mut support = dec.support(&cu, id);
        support.sort();
        kind.push(walk_sets.iter().position(|w| *w == support));
    }

    let nv = p.vertex_count();
    let to_u: Vec<Option<usize>> = p.vertices().iter().map(|v| u.vertex(v)).collect();
    let mut xb = Vec::new();
    let mut yb = Vec::new();
    for x in 0..nv {
        match to_u[x] {
            Some(ux) => {
                let (mut xs, mut ys) = (Vec::new(), Vec::new());
                for (col, &id) in dec.labels[ux].iter().enumerate() {
                    if kind[id].is_some() {
                        xs.push(col);
                    } else {
                        ys.push(col);
                    }
                }
                xb.push(dec.bases[ux].select_columns(&xs));
                yb.push(dec.bases[ux].select_columns(&ys));
            }
            None => {
                xb.push(Matrix::zeros(field, c.dim_at(x), 0));
                yb.push(Matrix::identity(field, c.dim_at(x)));
            }
        }
    }

    let mut checks = Vec::new();
    for (arrow, from, to) in
        [("alpha_c2", "c2", "c1"), ("alpha_c1", "c1", "a0"), ("alpha_a1", "a1", "d0"), ("beta_c2", "c2", "b1")]
    {
        let (a, s, t) = (arrow_index(p, arrow)?, vertex_index(p, from)?, vertex_index(p, to)?);
        let image = c.mat(a) * &xb[s];
        checks.push((format!("{arrow} onto X_{to}"), image.rank() == xb[t].cols()));
    }
    for (arrow, from) in [("alpha_a0", "a0"), ("beta_b1", "b1")] {
        let (a, s) = (arrow_index(p, arrow)?, vertex_index(p, from)?);
        checks.push((format!("{arrow} kills X_{from}"), (c.mat(a) * &xb[s]).is_zero()));
    }

    try_submodule(c, xb).ok_or_else(|| DecompError::CertificateFailure("X is not a submodule".into()))?;
    let (mprime, mp_inc) =
        try_submodule(c, yb).ok_or_else(|| DecompError::CertificateFailure("M' is not a submodule".into()))?;

    let xmods = xset_over(p, field)?;
    let mut x_multiplicities = [0usize; 10];
    let mut copies = Vec::new();
    for k in 0..X_WALKS.len() {
        for (id, kd) in kind.iter().enumerate() {
            if *kd == Some(k) {
                x_multiplicities[k] += 1;
                copies.push((k, id));
            }
        }
    }
    let parts: Vec<Representation> = copies.iter().map(|&(k, _)| xmods[k].clone()).collect();
    let xsum = direct_sum(p, field, &parts)?;
    let xmap_mats: Vec<Matrix> = (0..nv)
        .map(|x| {
            let mut mat = Matrix::zeros(field, c.dim_at(x), xsum.module.dim_at(x));
            if let Some(ux) = to_u[x] {
                for (q, &(_, id)) in copies.iter().enumerate() {
                    if let Some(col) = dec.column_of(ux, id) {
                        mat.paste(0, xsum.offsets[q][x], &dec.bases[ux].select_columns(&[col]));
                    }
                }
            }
            mat
        })
        .collect();

    let full = direct_sum(p, field, &[strip.cover.clone(), xsum.module.clone(), mprime.clone()])?.module;
    let mats = (0..nv)
        .map(|y| {
            let xpart = strip.inclusion.at(y) * &xmap_mats[y];
            let mpart = strip.inclusion.at(y) * mp_inc.at(y);
            strip.section.at(y).hstack(&xpart).hstack(&mpart)
        })
        .collect();
    let certificate = ModuleMap::new(full, m.clone(), mats)?;
    if !check_morphism(&certificate)? {
        return Err(DecompError::CertificateFailure(format!(
            "not a module map at {}",
            certificate.first_violation().unwrap_or_default()
        )));
    }
    if !certificate.is_iso() {
        return Err(DecompError::CertificateFailure("splitting map is not invertible".into()));
    }
    let mprime_on_lambda1 = mprime.dim_named("c2") == 0;
    Ok(Lemma2Split {
        input: m.clone(),
        a: strip.a,
        x: xsum.module,
        x_multiplicities,
        mprime,
        checksum: checksum(&certificate),
        certificate,
        checks,
        mprime_on_lambda1,
    })
}
