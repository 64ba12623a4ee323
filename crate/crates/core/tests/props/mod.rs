//! Randomized property suites shared by the `properties` and `acceptance` test targets.

#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use biserial::homology::{projdim, projective_cover, syzygy_chain, top_dims, PdOptions, Verdict};
use biserial::linalg::{Field, Matrix};
use biserial::presentation::{build_lambda, emit_presentation, family_from_spec, parse_presentation, Presentation};
use biserial::repcore::{
    check_morphism, direct_sum, emit_module, parse_modules, random_module, Algebra, Representation,
};

pub const CASES: u32 = 1000;
pub const SEED: [u8; 32] = *b"biserial-property-suite-seed-001";
pub const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(101)];

pub type Suite = fn(Field, u32) -> Result<(), String>;

pub const SUITES: [(&str, Suite); 6] = [
    ("field-independence", field_independence),
    ("cover-minimality", cover_minimality),
    ("exactness", exactness),
    ("pd-additivity", pd_additivity),
    ("rref-kernel-laws", rref_kernel_laws),
    ("round-trip-parsing", round_trip_parsing),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn lambda2(field: Field) -> Algebra {
    Algebra::new(&build_lambda(1, 2).unwrap(), field).unwrap()
}

fn other(field: Field) -> Field {
    if field == Field::Rational {
        Field::Prime(101)
    } else {
        Field::Rational
    }
}

/// Modules built from combinatorial data only, so they make sense over every field.
#[derive(Clone, Debug)]
enum Piece {
    Simple(usize),
    Projective(usize),
}

fn build(alg: &Algebra, pieces: &[Piece]) -> Representation {
    let p = alg.presentation();
    let parts: Vec<Representation> = pieces
        .iter()
        .map(|piece| match piece {
            Piece::Simple(x) => alg.simple(&p.vertices()[*x]).unwrap(),
            Piece::Projective(x) => alg.projective(*x).clone(),
        })
        .collect();
    direct_sum(p, alg.field(), &parts).unwrap().module
}

fn pieces(vertices: usize) -> impl Strategy<Value = Vec<Piece>> {
    let piece = prop_oneof![(0..vertices).prop_map(Piece::Simple), (0..vertices).prop_map(Piece::Projective)];
    proptest::collection::vec(piece, 1..4)
}

fn nonzero_dims(m: &Representation) -> BTreeMap<String, usize> {
    m.dim_vector().into_iter().filter(|(_, d)| *d > 0).collect()
}

/// Syzygy dimension vectors and pd verdicts agree over the two fields.
pub fn field_independence(field: Field, cases: u32) -> Result<(), String> {
    let a = lambda2(field);
    let b = lambda2(other(field));
    run(cases, pieces(a.presentation().vertex_count()), |ps| {
        let (ma, mb) = (build(&a, &ps), build(&b, &ps));
        let ca: Vec<_> = syzygy_chain(&a, &ma, 3).iter().map(nonzero_dims).collect();
        let cb: Vec<_> = syzygy_chain(&b, &mb, 3).iter().map(nonzero_dims).collect();
        prop_assert_eq!(ca, cb);
        let va = projdim(&a, &ma, &PdOptions::new(&a, 8)).verdict;
        let vb = projdim(&b, &mb, &PdOptions::new(&b, 8)).verdict;
        prop_assert_eq!(va, vb);
        Ok(())
    })
}

fn random_modules() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..18)
}

/// The cover has one projective summand per top basis vector and maps onto the module.
pub fn cover_minimality(field: Field, cases: u32) -> Result<(), String> {
    let alg = lambda2(field);
    run(cases, random_modules(), |(seed, budget)| {
        let m = random_module(alg.basis(), seed, budget);
        let c = projective_cover(&alg, &m);
        let mut counts = vec![0; m.dims().len()];
        for &x in &c.tops {
            counts[x] += 1;
        }
        prop_assert_eq!(counts, top_dims(&m));
        prop_assert!(check_morphism(&c.cover_map).unwrap());
        prop_assert!(c.cover_map.is_surjective());
        Ok(())
    })
}

/// `0 → Ω M → P → M → 0` is exact, so dimensions subtract.
pub fn exactness(field: Field, cases: u32) -> Result<(), String> {
    let alg = lambda2(field);
    run(cases, random_modules(), |(seed, budget)| {
        let m = random_module(alg.basis(), seed, budget);
        let c = projective_cover(&alg, &m);
        for x in 0..m.dims().len() {
            prop_assert_eq!(m.dim_at(x) + c.syzygy.dim_at(x), c.cover.dim_at(x));
        }
        prop_assert!(c.inclusion.is_injective());
        prop_assert!(check_morphism(&c.inclusion).unwrap());
        prop_assert!(c.cover_map.compose_after(&c.inclusion).unwrap().is_zero());
        Ok(())
    })
}

/// `pd (M ⊕ N) = max(pd M, pd N)` whenever all three verdicts are conclusive.
pub fn pd_additivity(field: Field, cases: u32) -> Result<(), String> {
    let alg = lambda2(field);
    let opts = PdOptions::new(&alg, 10);
    run(cases, (random_modules(), random_modules()), |((s1, b1), (s2, b2))| {
        let m = random_module(alg.basis(), s1, b1.min(10));
        let n = random_module(alg.basis(), s2, b2.min(10));
        let sum = direct_sum(alg.presentation(), field, &[m.clone(), n.clone()]).unwrap().module;
        let (vm, vn, vs) =
            (projdim(&alg, &m, &opts).verdict, projdim(&alg, &n, &opts).verdict, projdim(&alg, &sum, &opts).verdict);
        if let (Some(want), false) = (vm.max(&vn), matches!(vs, Verdict::Inconclusive { .. })) {
            match (&want, &vs) {
                (Verdict::Infinite { .. }, Verdict::Infinite { .. }) => {}
                _ => prop_assert_eq!(want, vs),
            }
        }
        Ok(())
    })
}

fn matrices(field: Field) -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
        .prop_map(move |rows| Matrix::from_i64_rows(field, &rows))
}

/// Kernel, rank and inverse identities.
pub fn rref_kernel_laws(field: Field, cases: u32) -> Result<(), String> {
    run(cases, (matrices(field), proptest::collection::vec(-3i64..=3, 6)), |(a, x)| {
        let k = a.kernel_basis();
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let r = a.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        let x = Matrix::from_i64_rows(field, &x[..a.cols()].iter().map(|v| vec![*v]).collect::<Vec<_>>());
        let b = &a * &x;
        let y = a.solve(&b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&a * &y, b);
        if a.is_square() && a.rank() == a.rows() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, Matrix::identity(field, a.rows()));
        }
        Ok(())
    })
}

/// Presentations and modules survive emit followed by parse.
pub fn round_trip_parsing(field: Field, cases: u32) -> Result<(), String> {
    let specs = ["lambda:r=1,m=0", "lambda:r=1,m=1", "lambda:r=1,m=2", "lambda1prime:r=1"];
    let algebras: Vec<Algebra> =
        specs.iter().map(|s| Algebra::new(&family_from_spec(s).unwrap(), field).unwrap()).collect();
    run(cases, (0..specs.len(), any::<u64>(), 1usize..16), |(i, seed, budget)| {
        let alg = &algebras[i];
        let p = alg.presentation();
        prop_assert_eq!(&parse_presentation(&emit_presentation(p)).unwrap(), &**p);
        let m = random_module(alg.basis(), seed, budget);
        let text = emit_module("M", specs[i], &m);
        let mut resolve =
            |name: &str| -> Result<Presentation, String> { family_from_spec(name).map_err(|e| e.to_string()) };
        let defs = parse_modules(&text, field, &mut resolve).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(defs.len(), 1);
        prop_assert_eq!(&defs[0].module, &m);
        Ok(())
    })
}
