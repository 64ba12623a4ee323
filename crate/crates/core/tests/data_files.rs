use std::fs;
use std::path::PathBuf;

use biserial::decomp::xset;
use biserial::linalg::Field;
use biserial::paperlab::Family;
use biserial::presentation::{family_from_spec, Presentation};
use biserial::repcore::{parse_modules, ModuleDef};

fn load(file: &str, field: Field) -> Vec<ModuleDef> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(file);
    let text = fs::read_to_string(&path).unwrap();
    let mut resolve = |s: &str| -> Result<Presentation, String> { family_from_spec(s).map_err(|e| e.to_string()) };
    parse_modules(&text, field, &mut resolve).unwrap()
}

fn named(defs: &[ModuleDef], name: &str) -> ModuleDef {
    defs.iter().find(|d| d.name == name).cloned().unwrap()
}

#[test]
fn z_files_match_constructors() {
    for field in [Field::Rational, Field::Prime(101)] {
        let f = Family::new(1, field).unwrap();
        for m in 0..=5 {
            let z = named(&load(&format!("Z{m}.mod"), field), &format!("Z{m}"));
            assert_eq!(z.module, f.z(m).unwrap().module, "Z{m}");
            let z3 = named(&load(&format!("Z{m}_t3.mod"), field), &format!("Z{m}_t3"));
            assert_eq!(z3.module, f.zt(m, 3).unwrap().module, "Z{m}[3]");
        }
    }
}

#[test]
fn x_file_matches_constructor() {
    let defs = load("X.mod", Field::Rational);
    let xs = xset(1, Field::Rational).unwrap();
    assert_eq!(defs.len(), 10);
    for (k, x) in xs.iter().enumerate() {
        assert_eq!(&named(&defs, &format!("X{k}")).module, x, "X{k}");
    }
}

#[test]
fn u_is_the_loop_simple() {
    let u = named(&load("u.mod", Field::Rational), "u");
    assert_eq!(u.module.total_dim(), 1);
    assert_eq!(u.module.dim_named("u"), 1);
}
