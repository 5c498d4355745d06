use operad_core::models;
use operad_core::presentation::same_relation_span;
use operad_core::specfile::*;

fn round_trip(s: &SpecFile) {
    let text = emit(s).unwrap();
    let back = parse(&text).unwrap_or_else(|e| panic!("{}: {}\n{}", s.pres.name, e, text));
    assert_eq!(back.pres.name, s.pres.name);
    assert_eq!(back.pres.gens, s.pres.gens);
    assert_eq!(same_relation_span(&back.pres, &s.pres), Ok(()), "{}", s.pres.name);
    assert_eq!(back.derivation().images, s.derivation().images, "{}", s.pres.name);
    assert_eq!(emit(&back).unwrap(), text);
}

#[test]
fn every_builtin_round_trips() {
    for name in models::BUILTIN_NAMES {
        round_trip(&SpecFile::new(models::builtin(name).unwrap()));
    }
    for name in models::DG_BUILTIN_NAMES {
        let (p, d) = models::builtin_dg(name, 4).unwrap();
        let s = SpecFile::with_derivation(p, &d);
        assert!(s.is_dg(), "{}", name);
        round_trip(&s);
    }
}

#[test]
fn hand_written_file() {
    let text = "\
# associative algebra with a derivation-like unary map
operad A
colors c o
generator m (o,o) -> o degree 0 symmetry regular
generator u (c) -> o degree -1 symmetry trivial   # odd

relation m(m(o1,o2),o3) - m(o1,m(o2,o3))
relation 1/2*m(u(c1),o1) - 1/2*m(o1,u(c1))
";
    let s = parse(text).unwrap();
    assert_eq!(s.pres.name, "A");
    assert_eq!(s.pres.gens.gens.len(), 2);
    assert_eq!(s.pres.gens.gens[1].degree, -1);
    assert_eq!(s.pres.relations.len(), 2);
    assert!(!s.is_dg());
}

#[test]
fn errors_carry_line_and_column() {
    let head = "operad X\ngenerator m (o,o) -> o degree 0\n";
    let e = parse(&format!("{}relation m(m(o1,o2),o3\n", head)).unwrap_err();
    assert_eq!(e.line, 3);
    assert!(e.column > 10, "{:?}", e);
    let e = parse(&format!("{}relation m(o1,o2) + m(o2,o1)\nrelation   m(o1,q2)\n", head)).unwrap_err();
    assert_eq!((e.line, e.column), (4, 19));
    assert!(e.msg.contains("q2"));
    let e = parse("operad X\n  bogus line\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 3));
    let e = parse("generator f (o,c) -> o\n").unwrap_err();
    assert_eq!(e.line, 1);
    assert!(e.msg.contains("closed inputs come before"));
    let e = parse("generator f (c,c) -> c symmetry odd\n").unwrap_err();
    assert!(e.msg.contains("bad symmetry"));
    let e = parse("colors c\n").unwrap_err();
    assert_eq!(e.line, 1);
}

#[test]
fn differentials_are_checked() {
    let head = "generator m (o,o) -> o degree 0\ngenerator u (c) -> o degree -1 symmetry trivial\ngenerator a (c,o) -> o degree 0\n";
    let s = parse(&format!("{}differential a = m(u(c1),o1) - m(o1,u(c1))\n", head)).unwrap();
    assert!(s.is_dg());
    let e = parse(&format!("{}differential a = m(o1,o2)\n", head)).unwrap_err();
    assert!(e.msg.contains("signature"), "{}", e);
    let e = parse(&format!("{}differential u = u(c1)\n", head)).unwrap_err();
    assert!(e.msg.contains("degree"), "{}", e);
    let e = parse(&format!("{}differential zz = u(c1)\n", head)).unwrap_err();
    assert_eq!(e.line, 4);
}
