use std::fs;
use std::path::Path;

use frob_cli::session::{Item, TaskKind, VerifyTask};
use frob_cli::{parse_session, ErrorCode, SessionFile};
use frob_core::PolyRing;

fn corpus(kind: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(kind);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "frob"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus {}", dir.display());
    out
}

fn ring_of(s: &SessionFile, name: &str) -> frob_cli::session::RingDecl {
    s.rings().find(|r| r.name == name).unwrap().clone()
}

#[test]
fn valid_corpus_prints_canonically_and_round_trips() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/valid");
    for (name, text) in corpus("valid") {
        let parsed = parse_session(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let canonical = fs::read_to_string(dir.join(format!("{name}.canonical"))).unwrap();
        assert_eq!(parsed.to_string(), canonical, "{name}");
        // printing is the identity on canonical text
        let again = parse_session(&canonical).unwrap();
        assert_eq!(again.to_string(), canonical, "{name}");
    }
}

#[test]
fn invalid_corpus_reports_code_and_location() {
    for (name, text) in corpus("invalid") {
        let header = text.lines().next().unwrap();
        let expect = header.strip_prefix("# expect: ").unwrap_or_else(|| panic!("{name}: no expectation"));
        let (code, at) = expect.split_once(' ').unwrap();
        let (line, col) = at.split_once(':').unwrap();
        let e = parse_session(&text).expect_err(&name);
        assert_eq!(
            (e.code.as_str(), e.line, e.col),
            (code, line.parse().unwrap(), col.parse().unwrap()),
            "{name}: {e}"
        );
    }
}

#[test]
fn double_line_block() {
    let s = parse_session("ring A\n  p = 2\n  vars = x, y\n  ideal = x^2\nend\n").unwrap();
    let r = ring_of(&s, "A");
    assert_eq!((r.p, r.weights.clone(), r.ideal.clone()), (2, vec![1, 1], vec!["x^2".to_string()]));
    assert!(r.primes.is_empty());
}

#[test]
fn weighted_curve_generators_have_degrees_8_9_10() {
    let text = "ring C\n  p = 7\n  vars = x, y, z\n  weights = 3, 4, 5\n  ideal = y^2 - x*z, x^3 - y*z, x^2*y - z^2\nend\n";
    let r = ring_of(&parse_session(text).unwrap(), "C");
    let poly = PolyRing::new(7, &["x", "y", "z"], &[3, 4, 5]).unwrap();
    let degs: Vec<u32> = r
        .ideal
        .iter()
        .map(|f| {
            let f = poly.parse(f).unwrap();
            assert!(f.is_homogeneous());
            f.degree().unwrap()
        })
        .collect();
    assert_eq!(degs, [8, 9, 10]);
    // the same generators are not homogeneous in the standard grading
    let e = parse_session(&text.replace("  weights = 3, 4, 5\n", "")).unwrap_err();
    assert_eq!((e.code, e.line), (ErrorCode::Inhomogeneous, 4));
}

#[test]
fn composite_characteristic() {
    for p in [4, 6, 9, 91] {
        let e = parse_session(&format!("ring A\n  p = {p}\n  vars = x\nend\n")).unwrap_err();
        assert_eq!(e.code, ErrorCode::CompositeCharacteristic, "p = {p}");
    }
    assert_eq!(
        parse_session("ring A\n  p = 1\n  vars = x\nend\n").unwrap_err().code,
        ErrorCode::InvalidValue
    );
}

#[test]
fn names_must_be_declared_before_use() {
    let e = parse_session("betti M\nring A\n  p = 2\n  vars = x\nend\nlet M = residue A\n").unwrap_err();
    assert_eq!((e.code, e.line, e.col), (ErrorCode::UnknownName, 1, 7));
    let e = parse_session("let M = residue A\n").unwrap_err();
    assert_eq!(e.code, ErrorCode::UnknownName);
}

#[test]
fn verify_arguments_are_typed() {
    let text = "ring A\n  p = 2\n  vars = x, y\n  ideal = x^2\nend\nlet K = residue A\n\
                verify frobenius-ext-pd-bound t=2 module=K n=1\n";
    let s = parse_session(text).unwrap();
    let Item::Task(t) = s.items.last().unwrap() else { panic!() };
    assert_eq!(
        t.kind,
        TaskKind::Verify(VerifyTask::FrobeniusExtPdBound {
            module: "K".into(),
            n: 1,
            t: 2
        })
    );
    for (bad, code) in [
        ("verify frobenius-ext-pd-bound module=K n=1", ErrorCode::Syntax),
        ("verify frobenius-ext-pd-bound module=K n=1 t=2 q=3", ErrorCode::Syntax),
        ("verify frobenius-ext-pd-bound module=A n=1 t=2", ErrorCode::UnknownName),
        ("verify frobenius-ext-pd-bound module=K n=0 t=2", ErrorCode::InvalidValue),
        ("verify frobenius-ext-pd-bound module=K n=1 n=1 t=2", ErrorCode::Syntax),
        ("verify tensor-mcm-forces-regular ring=A s=2 n=2", ErrorCode::InvalidValue),
    ] {
        let e = parse_session(&text.replace("verify frobenius-ext-pd-bound t=2 module=K n=1", bad)).unwrap_err();
        assert_eq!(e.code, code, "{bad}: {e}");
    }
}

#[test]
fn bundled_sessions_parse_and_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../sessions");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let parsed = parse_session(&fs::read_to_string(&path).unwrap()).unwrap();
        let canonical = parsed.to_string();
        assert_eq!(parse_session(&canonical).unwrap().to_string(), canonical, "{}", path.display());
        n += 1;
    }
    assert!(n >= 2);
}

#[test]
fn prelude_parses_for_every_prime_and_rejects_composites() {
    for p in [2, 3, 5, 7] {
        let s = parse_session(&frob_cli::prelude(p)).unwrap();
        assert_eq!(s.rings().count(), 3);
    }
    assert_eq!(
        parse_session(&frob_cli::prelude(4)).unwrap_err().code,
        ErrorCode::CompositeCharacteristic
    );
}
