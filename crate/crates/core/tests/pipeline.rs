use std::path::{Path, PathBuf};

use lefschetz::error::Error;
use lefschetz::field::FieldSpec;
use lefschetz::instance::parse_instance;
use lefschetz::pipeline::{analyze, ci_mode};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn example_fixtures_parse() {
    let i = parse_instance(fixture("example1.json")).unwrap();
    assert_eq!(
        (i.source.as_slice(), i.target.as_slice()),
        (&[7, 2, 2, 2][..], &[1, 0][..])
    );
    assert_eq!(i.seed, 42);
    assert_eq!(i.samples, 3);
    let i = parse_instance(fixture("example2.json")).unwrap();
    assert_eq!(i.source, vec![8, 2, 2, 2, 2]);
}

#[test]
fn bad_fixtures() {
    assert!(matches!(
        parse_instance(fixture("bad_shape.json")),
        Err(Error::Shape(_))
    ));
    assert!(matches!(
        parse_instance(fixture("bad_degree.json")),
        Err(Error::Degree(_))
    ));
    assert!(matches!(
        parse_instance(fixture("malformed.json")),
        Err(Error::Parse(_))
    ));
    assert!(matches!(
        parse_instance(fixture("missing.json")),
        Err(Error::Parse(_))
    ));
}

#[test]
fn second_example_report() {
    let r = analyze(&parse_instance(fixture("example2.json")).unwrap()).unwrap();
    assert_eq!(
        r.hilbert.dims,
        vec![2, 7, 11, 14, 16, 17, 17, 17, 16, 14, 11, 7, 2]
    );
    assert_eq!((r.chern.c1, r.chern.s, r.chern.c1_norm), (-15, 7, -1));
    assert_eq!(r.class.k, Some(0));
    assert_eq!(r.splitting.computed, [-1, 0]);
    assert_eq!((r.ranges.inj_max_d, r.ranges.surj_min_d), (7, 6));
    assert_eq!(r.verdict.injective_through, Some(7));
    assert_eq!(r.verdict.surjective_from, Some(6));
    assert!(r.wlp);
}

#[test]
fn squares_fixture() {
    let inst = parse_instance(fixture("ci_squares.json")).unwrap();
    let gf = analyze(&inst).unwrap();
    assert_eq!(gf.hilbert.dims, vec![1, 3, 3, 1]);
    assert_eq!(gf.class.variant, "stable");
    assert_eq!(gf.splitting.computed, [0, 0]);
    assert!(gf.wlp);
    let mut q = inst;
    q.field = FieldSpec::Rationals;
    let qr = analyze(&q).unwrap();
    assert_eq!(qr.hilbert, gf.hilbert);
    assert_eq!(qr.profile, gf.profile);
}

// ker(x, y, z^6) has the section y e1 - x e2 in degree 2 and nothing below,
// so with s = 4 the normalized bundle has sections from twist -2 on.
#[test]
fn index_two_from_explicit_entries() {
    let r = analyze(&parse_instance(fixture("koszul_x_y_z6.json")).unwrap()).unwrap();
    assert_eq!(r.instance.field, "Q");
    assert_eq!(r.hilbert.dims, vec![1; 6]);
    assert_eq!((r.chern.s, r.chern.c1_norm), (4, 0));
    assert_eq!(r.class.k, Some(2));
    assert_eq!(r.splitting.computed, [-2, 2]);
    assert_eq!((r.ranges.inj_max_d, r.ranges.surj_min_d), (5, 1));
    assert!(r.h0_formula.unwrap().holds());
}

#[test]
fn ci_socle_degree() {
    for (degrees, socle) in [([2, 3, 4], 6), ([1, 2, 5], 5), ([3, 3, 3], 6)] {
        let r = ci_mode(degrees, 11, FieldSpec::default()).unwrap();
        assert_eq!(r.hilbert.dims.len(), socle + 1, "{degrees:?}");
        assert!(r.wlp);
    }
}

#[test]
fn rational_audit_matches_prime_field() {
    for degrees in [[1, 2, 2], [2, 2, 3]] {
        let gf = ci_mode(degrees, 5, FieldSpec::default()).unwrap();
        let q = ci_mode(degrees, 5, FieldSpec::Rationals).unwrap();
        assert_eq!(gf.hilbert, q.hilbert);
        assert_eq!(gf.class, q.class);
        assert_eq!(gf.verdict, q.verdict);
    }
}
