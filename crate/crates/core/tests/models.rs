use operad_core::infinity::Flavor;
use operad_core::kernel::factorial;
use operad_core::models::*;
use operad_core::presentation::quotient_dims;
use operad_core::treeops::*;

#[test]
fn catalog_shapes() {
    let lp = lp();
    assert_eq!(lp.gens.gens.len(), 3);
    assert_eq!(lp.relations.len(), 4);
    let h = h0sc();
    assert_eq!(h.gens.gens.len(), 4);
    assert!(h.gens.find("alpha").is_some());
    assert!(!h.is_quadratic() && qh0sc().is_quadratic());
    let d = h0sc_dual();
    assert_eq!(d.gens.gens[d.gens.find("n10").unwrap()].degree, -1);
    assert!(builtin("nope").is_none());
    for name in BUILTIN_NAMES {
        assert_eq!(builtin(name).is_some(), true, "{}", name);
    }
    assert_eq!(builtin("F_n10").unwrap().name, "Fn10");
}

#[test]
fn closed_classics() {
    for (sig, d) in quotient_dims(&com_closed(), 5) {
        if sig == Sig::o(0, 1) || sig.out == Color::Closed && sig.m == 0 {
            assert_eq!(d, 1, "{}", sig);
        } else {
            assert_eq!(d, 0, "{}", sig);
        }
    }
    for (sig, d) in quotient_dims(&lie_closed(), 5) {
        if sig.out == Color::Closed && sig.m == 0 {
            assert_eq!(d, factorial(sig.n - 1), "{}", sig);
        }
    }
}

#[test]
fn dg_catalog() {
    let (p, d) = builtin_dg("OCinf", 4).unwrap();
    for name in ["n10", "n20", "n30", "n40", "l4", "n13"] {
        assert!(p.gens.find(name).is_some(), "{}", name);
    }
    assert!(d.images.iter().any(|x| x.is_some()));
    let (lp, _) = builtin_dg("LPinf", 4).unwrap();
    assert!(lp.gens.find("n10").is_none());
    assert_eq!(builtin_dg("LPinf", 3).unwrap().0.gens, operad_core::infinity::generators(3, Flavor::Lp));
    let (h, d) = builtin_dg("H0SCdual", 0).unwrap();
    assert_eq!(d.images.iter().filter(|x| x.is_some()).count(), 1);
    assert_eq!(h.name, "H0SCdual");
}
