use operad_core::kernel::{binomial, factorial};
use operad_core::models;
use operad_core::presentation::*;
use operad_core::treeops::*;

fn rising(q: usize, p: usize) -> usize {
    (0..p).map(|i| q + i).product()
}

fn stirling1(n: usize, k: usize) -> usize {
    if n == 0 && k == 0 {
        return 1;
    }
    if n == 0 || k == 0 {
        return 0;
    }
    (n - 1) * stirling1(n - 1, k) + stirling1(n - 1, k - 1)
}

fn vor(s: Sig) -> usize {
    match s.out {
        Color::Closed => 1,
        Color::Open if s.m == 0 => 0,
        Color::Open => factorial(s.m),
    }
}

fn lp(s: Sig) -> usize {
    match s.out {
        Color::Closed => factorial(s.n - 1),
        Color::Open if s.m == 0 => 0,
        Color::Open => factorial(s.m) * rising(s.m, s.n),
    }
}

fn h0sc(s: Sig) -> usize {
    match s.out {
        Color::Closed => 1,
        Color::Open if s.m == 0 => 1,
        Color::Open => factorial(s.m),
    }
}

fn dual(s: Sig) -> usize {
    match s.out {
        Color::Closed => factorial(s.n - 1),
        Color::Open => (0..=s.n).map(|k| binomial(s.n, k) * lp(Sig::o(s.n - k, s.m + k))).sum(),
    }
}

fn check(p: operad_core::presentation::Presentation, f: fn(Sig) -> usize, k: usize) {
    let dims = quotient_dims(&p, k);
    for (s, d) in dims {
        assert_eq!(d, f(s), "{} at {}", p.name, s);
    }
}

#[test]
fn voronov_dims() {
    check(models::h0scvor(), vor, 4);
}

#[test]
fn leibniz_pair_dims() {
    check(models::lp(), lp, 4);
}

#[test]
fn h0sc_dims() {
    check(models::h0sc(), h0sc, 4);
    check(models::qh0sc(), h0sc, 4);
}

#[test]
fn dual_dims() {
    check(models::h0sc_dual(), dual, 4);
}

#[test]
fn lambda_c_oc_degrees() {
    let t = Truncation::build(&models::lambda_c_oc(), 4);
    for sig in Sig::all_up_to(4) {
        let by = t.dims_by_degree(sig);
        if sig.out == Color::Closed {
            assert_eq!(by.values().sum::<usize>(), factorial(sig.n - 1));
            continue;
        }
        for k in 0..=sig.n {
            let want = factorial(sig.m) * stirling1(sig.n, k);
            let want = if sig.n == 0 && sig.m == 0 { 0 } else { want };
            assert_eq!(by.get(&-(k as i64)).copied().unwrap_or(0), want, "{} degree {}", sig, -(k as i64));
        }
    }
}

#[test]
fn ql_conditions_hold() {
    let r = ql_conditions(&models::h0sc(), 4);
    assert!(r.ql1, "{:?}", r.ql1_witness);
    assert!(r.ql2, "{:?}", r.ql2_witness);
    assert!(same_relation_span(&quadratic_part(&models::h0sc()), &models::qh0sc()).is_ok());
}

#[test]
fn distributive_composites() {
    for law in [models::e_law(), models::p_law()] {
        let comp = law.composite_dims(4);
        let quo = quotient_dims(&law.law_presentation(), 4);
        assert_eq!(comp, quo);
    }
}
