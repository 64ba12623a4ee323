use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::repcore::{Algebra, ModuleMap, Representation};

use super::cover::syzygy;
use super::hom::{certified_iso, default_trials, hom_basis, IsoOutcome};
use super::sub::top_dims;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// The zero module.
    MinusInfinity,
    Finite {
        n: usize,
    },
    /// `Ω^from M ≅ Ω^to M` with both nonzero.
    Infinite {
        from: usize,
        to: usize,
    },
    Inconclusive {
        cutoff: usize,
    },
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, Verdict::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Verdict::Infinite { .. })
    }

    /// The larger of two verdicts for a direct sum; `None` when either side is inconclusive.
    pub fn max(&self, other: &Verdict) -> Option<Verdict> {
        use Verdict::*;
        match (self, other) {
            (Inconclusive { .. }, _) | (_, Inconclusive { .. }) => None,
            (Infinite { .. }, _) => Some(self.clone()),
            (_, Infinite { .. }) => Some(other.clone()),
            (MinusInfinity, v) | (v, MinusInfinity) => Some(v.clone()),
            (Finite { n: a }, Finite { n: b }) => Some(Finite { n: *a.max(b) }),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::MinusInfinity => write!(f, "-infinity"),
            Verdict::Finite { n } => write!(f, "Finite({n})"),
            Verdict::Infinite { from, to } => write!(f, "Infinite (cycle {from}≅{to})"),
            Verdict::Inconclusive { cutoff } => write!(f, "Inconclusive({cutoff})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdOptions {
    pub cutoff: usize,
    pub trials: usize,
    pub seed: u64,
}

impl PdOptions {
    pub fn new(alg: &Algebra, cutoff: usize) -> PdOptions {
        PdOptions { cutoff, trials: default_trials(alg.field()), seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PdReport {
    pub verdict: Verdict,
    /// Dimension vectors of `Ω^0 M, Ω^1 M, …` as far as computed.
    pub chain: Vec<BTreeMap<String, usize>>,
    pub field: String,
    pub cutoff: usize,
    pub seed: u64,
    /// Isomorphism `Ω^from M → Ω^to M` for an infinite verdict.
    #[serde(skip)]
    pub certificate: Option<ModuleMap>,
    #[serde(skip)]
    pub syzygies: Vec<Representation>,
}

struct Fingerprint {
    dims: Vec<usize>,
    top: Vec<usize>,
    end: Option<usize>,
}

/// Iterates syzygies until one vanishes, one is certified isomorphic to an earlier nonzero
/// syzygy, or `cutoff + 1` syzygies have been taken.
pub fn projdim(alg: &Algebra, m: &Representation, opts: &PdOptions) -> PdReport {
    let mut report = PdReport {
        verdict: Verdict::MinusInfinity,
        chain: vec![m.dim_vector()],
        field: alg.field().label(),
        cutoff: opts.cutoff,
        seed: opts.seed,
        certificate: None,
        syzygies: vec![m.clone()],
    };
    if m.is_zero() {
        return report;
    }
    let mut prints = vec![Fingerprint { dims: m.dims().to_vec(), top: top_dims(m), end: None }];
    for i in 1..=opts.cutoff + 1 {
        let next = syzygy(alg, &report.syzygies[i - 1]);
        report.chain.push(next.dim_vector());
        if next.is_zero() {
            report.syzygies.push(next);
            report.verdict = Verdict::Finite { n: i - 1 };
            return report;
        }
        let mut fp = Fingerprint { dims: next.dims().to_vec(), top: top_dims(&next), end: None };
        for j in 0..i {
            if prints[j].dims != fp.dims || prints[j].top != fp.top {
                continue;
            }
            let ej = *prints[j].end.get_or_insert_with(|| hom_basis(&report.syzygies[j], &report.syzygies[j]).dim());
            let ei = *fp.end.get_or_insert_with(|| hom_basis(&next, &next).dim());
            if ej != ei {
                continue;
            }
            let seed = opts.seed.wrapping_mul(1_000_003).wrapping_add((i * 64 + j) as u64);
            if let IsoOutcome::Iso { map, .. } = certified_iso(&report.syzygies[j], &next, opts.trials, seed) {
                report.syzygies.push(next);
                report.verdict = Verdict::Infinite { from: j, to: i };
                report.certificate = Some(map);
                return report;
            }
        }
        prints.push(fp);
        report.syzygies.push(next);
    }
    report.verdict = Verdict::Inconclusive { cutoff: opts.cutoff };
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::presentation::build_lambda;
    use crate::repcore::{check_morphism, zero_module};

    #[test]
    fn simples_over_small_algebra() {
        for r in 1..=3 {
            let a = Algebra::new(&build_lambda(r, 0).unwrap(), Field::Rational).unwrap();
            let opts = PdOptions::new(&a, 32);
            for i in 0..=r {
                let rep = projdim(&a, &a.simple(&format!("d{i}")).unwrap(), &opts);
                assert_eq!(rep.verdict, Verdict::Finite { n: r - i });
            }
            let rep = projdim(&a, &a.simple("u").unwrap(), &opts);
            assert_eq!(rep.verdict, Verdict::Infinite { from: 0, to: 1 });
            let cert = rep.certificate.unwrap();
            assert!(check_morphism(&cert).unwrap() && cert.is_iso());
        }
    }

    #[test]
    fn zero_and_inconclusive() {
        let a = Algebra::new(&build_lambda(3, 0).unwrap(), Field::Rational).unwrap();
        let z = zero_module(a.presentation(), Field::Rational);
        assert_eq!(projdim(&a, &z, &PdOptions::new(&a, 4)).verdict, Verdict::MinusInfinity);
        let rep = projdim(&a, &a.simple("d0").unwrap(), &PdOptions::new(&a, 1));
        assert_eq!(rep.verdict, Verdict::Inconclusive { cutoff: 1 });
        assert_eq!(rep.verdict.to_string(), "Inconclusive(1)");
    }

    #[test]
    fn verdict_max() {
        use Verdict::*;
        assert_eq!(Finite { n: 2 }.max(&MinusInfinity), Some(Finite { n: 2 }));
        assert_eq!(Finite { n: 2 }.max(&Finite { n: 5 }), Some(Finite { n: 5 }));
        assert!(Finite { n: 2 }.max(&Infinite { from: 0, to: 1 }).unwrap().is_infinite());
        assert_eq!(Finite { n: 2 }.max(&Inconclusive { cutoff: 3 }), None);
    }

    #[test]
    fn report_serializes() {
        let a = Algebra::new(&build_lambda(1, 0).unwrap(), Field::Rational).unwrap();
        let rep = projdim(&a, &a.simple("d0").unwrap(), &PdOptions::new(&a, 8));
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"kind\":\"finite\",\"n\":1"), "{json}");
    }
}
