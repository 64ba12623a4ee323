use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{xset_over, DecompError};
use crate::homology::{cokernel_of, hom_basis, projdim, socle_dims, PdOptions, Verdict};
use crate::repcore::{direct_sum, inflate, random_module, scramble, simple, Algebra, RepError, Representation};

use super::Family;

/// A module over `Λ_2(r)` with a certified finite projective dimension.
#[derive(Clone, Debug)]
pub struct Sample {
    pub module: Representation,
    pub pd: usize,
    pub recipe: String,
}

/// Modules over `Λ_1(r)` of known finite projective dimension, inflated to `Λ_2(r)`.
fn pool(f: &Family) -> Result<Vec<(String, Representation)>, RepError> {
    let big = f.lambda(2)?;
    let p2 = big.presentation().clone();
    let small = f.lambda(1)?;
    let mut out = Vec::new();
    for i in 0..=f.r() {
        let d = format!("d{i}");
        out.push((d.clone(), simple(&p2, f.field(), &d)?));
    }
    out.push(("Z0".into(), inflate(&f.z(0)?.module, &p2)?));
    out.push(("Z1".into(), inflate(&f.z(1)?.module, &p2)?));
    for v in small.presentation().vertices() {
        out.push((format!("P({v})"), big.projective_named(v)?.clone()));
    }
    Ok(out)
}

/// Cokernels of random injections of pool modules into projectives, random cokernels of maps
/// between projectives, and sums with `Z_2`; kept when `projdim` certifies a finite value.
pub fn finite_pd_samples(f: &Family, count: usize, seed: u64, cutoff: usize) -> Result<Vec<Sample>, RepError> {
    let alg = f.lambda(2)?;
    let p = alg.presentation().clone();
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = pool(f)?;
    let z2 = f.z(2)?.module;
    let proj_socles: Vec<Vec<usize>> = (0..p.vertex_count()).map(|x| socle_dims(alg.projective(x))).collect();
    let opts = PdOptions { seed, ..PdOptions::new(&alg, cutoff) };
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 40 {
        attempts += 1;
        let recipe = rng.gen_range(0..10);
        let candidate: Option<(String, Representation)> = if recipe < 6 {
            let k = rng.gen_range(1..=2);
            let picks: Vec<&(String, Representation)> = (0..k).map(|_| pool.choose(&mut rng).unwrap()).collect();
            let parts: Vec<Representation> = picks.iter().map(|(_, m)| m.clone()).collect();
            let n = direct_sum(&p, field, &parts)?.module;
            // enough projectives to receive every socle vector of n
            let mut targets = Vec::new();
            let soc = socle_dims(&n);
            let mut feasible = true;
            for (s, &mult) in soc.iter().enumerate() {
                let hosts: Vec<usize> = (0..p.vertex_count()).filter(|&y| proj_socles[y][s] > 0).collect();
                if mult > 0 && hosts.is_empty() {
                    feasible = false;
                }
                for _ in 0..mult {
                    if let Some(&y) = hosts.choose(&mut rng) {
                        targets.push(alg.projective(y).clone());
                    }
                }
            }
            if !feasible || targets.is_empty() {
                None
            } else {
                let target = direct_sum(&p, field, &targets)?.module;
                let hom = hom_basis(&n, &target);
                let names: Vec<&str> = picks.iter().map(|(s, _)| s.as_str()).collect();
                (0..4).find_map(|_| {
                    let coeffs: Vec<_> = (0..hom.dim()).map(|_| field.random(&mut rng, 3)).collect();
                    let g = hom.combine(&coeffs);
                    g.is_injective().then(|| (format!("coker({} -> proj)", names.join("+")), cokernel_of(&g).0))
                })
            }
        } else if recipe < 9 {
            let s = rng.gen();
            Some((format!("random({s})"), random_module(alg.basis(), s, 24)))
        } else {
            let (name, m) = pool.choose(&mut rng).unwrap();
            Some((format!("Z2+{name}"), direct_sum(&p, field, &[z2.clone(), m.clone()])?.module))
        };
        let Some((recipe, module)) = candidate else { continue };
        if module.is_zero() {
            continue;
        }
        // pd 0 samples make the support check vacuous
        if let Verdict::Finite { n } = projdim(&alg, &module, &opts).verdict {
            if n == 0 {
                continue;
            }
            out.push(Sample { module, pd: n, recipe });
        }
    }
    Ok(out)
}

/// A module over `Λ_1'(r)` built as a random module plus planted copies of the `𝒳` modules and
/// of `P(c2)`, hidden behind a random change of basis. Returns the module with the planted
/// `𝒳` multiplicities and the number of planted `P(c2)` copies.
pub fn lemma2_sample(
    alg: &Algebra,
    seed: u64,
    max_dim: usize,
) -> Result<(Representation, [usize; 10], usize), DecompError> {
    let p = alg.presentation().clone();
    let field = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = xset_over(&p, field)?;
    let pc2 = alg.projective_named("c2")?.clone();
    let mut parts = Vec::new();
    let mut budget = max_dim;
    let mut planted = [0usize; 10];
    let mut copies = 0;
    for _ in 0..rng.gen_range(0..=2) {
        if pc2.total_dim() <= budget {
            budget -= pc2.total_dim();
            parts.push(pc2.clone());
            copies += 1;
        }
    }
    for _ in 0..rng.gen_range(0..=4) {
        let k = rng.gen_range(0..xs.len());
        if xs[k].total_dim() <= budget {
            budget -= xs[k].total_dim();
            parts.push(xs[k].clone());
            planted[k] += 1;
        }
    }
    if budget > 0 {
        parts.push(random_module(alg.basis(), rng.gen(), budget));
    }
    let sum = direct_sum(&p, field, &parts)?.module;
    let (module, _) = scramble(&sum, rng.gen());
    Ok((module, planted, copies))
}
