mod props;

use props::{FIELDS, SUITES};

// The acceptance target runs the full 1000 cases; these keep the suites honest in quick runs.
const QUICK: u32 = 64;

fn suite(name: &str) {
    let (_, run) = SUITES.iter().find(|(n, _)| *n == name).unwrap();
    for f in FIELDS {
        if let Err(e) = run(f, QUICK) {
            panic!("{name} over {}: {e}", f.label());
        }
    }
}

#[test]
fn field_independence() {
    suite("field-independence");
}

#[test]
fn cover_minimality() {
    suite("cover-minimality");
}

#[test]
fn exactness() {
    suite("exactness");
}

#[test]
fn pd_additivity() {
    suite("pd-additivity");
}

#[test]
fn rref_kernel_laws() {
    suite("rref-kernel-laws");
}

#[test]
fn round_trip_parsing() {
    suite("round-trip-parsing");
}
