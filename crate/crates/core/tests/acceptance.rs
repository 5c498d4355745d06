use operad_core::algebraside::*;
use operad_core::dgcalc::*;
use operad_core::duality::*;
use operad_core::infinity::{self, Flavor};
use operad_core::kernel::Q;
use operad_core::models;
use operad_core::presentation::*;
use operad_core::treeops::*;
use operad_core::verify::cobar_dg;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

type Res = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nonzero(h: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    h.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect()
}

fn c1() -> Res {
    let lp = models::lp();
    let (_, info) = quadratic_dual(&lp, &DualOptions::named(&lp, "LPdual", &["f2", "e02", "e11"]));
    for (sig, want) in [(Sig::o(2, 1), (3, 1, 2)), (Sig::o(1, 2), (6, 2, 4))] {
        let i = info.iter().find(|i| i.sig == sig).ok_or(format!("{} missing", sig))?;
        ensure((i.free_dim, i.rel_dim, i.perp_dim) == want, || format!("{}: {}/{}/{}", sig, i.free_dim, i.rel_dim, i.perp_dim))?;
    }
    Ok("(c,c,o;o) 3/1/2, (c,o,o;o) 6/2/4".into())
}

fn c2() -> Res {
    let lp = models::lp();
    let vor = models::h0scvor();
    let (d, _) = quadratic_dual(&lp, &DualOptions::named(&lp, "LPdual", &["f2", "e02", "e11"]));
    ensure(d.gens == vor.gens, || "generators differ".into())?;
    let n = compare_weight2_spans(&d, &vor).map_err(|s| format!("LP! differs at {}", s))?;
    let (back, _) = quadratic_dual(&vor, &DualOptions::named(&vor, "back", &["l2", "n02", "n11"]));
    compare_weight2_spans(&back, &lp).map_err(|s| format!("H0SCvor! differs at {}", s))?;
    Ok(format!("{} weight-2 signatures, both directions", n))
}

fn c3() -> Res {
    let r = ql_conditions(&models::h0sc(), 4);
    ensure(r.ql1, || format!("ql1: {:?}", r.ql1_witness))?;
    ensure(r.ql2, || format!("ql2: {:?}", r.ql2_witness))?;
    same_relation_span(&quadratic_part(&models::h0sc()), &models::qh0sc()).map_err(|s| format!("qR differs at {}", s))?;
    Ok(format!("ql1, ql2 on {} signatures; qR = listed span", r.checked.len()))
}

fn c4() -> Res {
    let mut parts = Vec::new();
    for fl in [Flavor::Lp, Flavor::Oc] {
        let n = infinity::dg_model(5, fl).map_err(|e| e.to_string())?.verify_d_squared().map_err(|e| e.to_string())?;
        parts.push(format!("{:?} {}", fl, n));
    }
    let p = models::h0sc_dual();
    let dg = extend_derivation(Truncation::build(&p, 4), models::h0sc_dual_differential(&p)).map_err(|e| e.to_string())?;
    let n = dg.verify_d_squared().map_err(|e| e.to_string())?;
    parts.push(format!("H0SC! {}", n));
    Ok(format!("trees checked: {}", parts.join(", ")))
}

fn c5() -> Res {
    let dg = cobar_dg(&models::lp(), 4).map_err(|e| e.to_string())?;
    dg.verify_d_squared().map_err(|e| e.to_string())?;
    let vor = quotient_dims(&models::h0scvor(), 4);
    let mut n = 0;
    for (sig, h) in dg.homology_dims() {
        let h = nonzero(&h);
        let want = if vor[&sig] == 0 { BTreeMap::new() } else { BTreeMap::from([(0, vor[&sig])]) };
        ensure(h == want, || format!("{}: {:?} vs {:?}", sig, h, want))?;
        n += 1;
    }
    Ok(format!("{} signatures, degree 0 only", n))
}

fn c6() -> Res {
    let dg = infinity::dg_model(4, Flavor::Oc).map_err(|e| e.to_string())?;
    let lc = Truncation::build(&models::lambda_c_oc(), 4);
    let h = dg.homology_dims();
    let mut n = 0;
    for (sig, hs) in &h {
        if sig.arity() == 1 && sig.count(sig.out) == 1 || !sig.is_valid() {
            continue;
        }
        let (a, b) = (nonzero(hs), nonzero(&lc.dims_by_degree(*sig)));
        ensure(a == b, || format!("{}: {:?} vs {:?}", sig, a, b))?;
        n += 1;
    }
    ensure(nonzero(&h[&Sig::o(1, 1)]) == BTreeMap::from([(-1, 1)]), || "(1,1;o)".into())?;
    ensure(nonzero(&h[&Sig::o(2, 0)]) == BTreeMap::from([(-2, 1), (-1, 1)]), || "(2,0;o)".into())?;
    Ok(format!("{} signatures per degree", n))
}

fn c7() -> Res {
    let dg = infinity::dg_model(2, Flavor::Oc).map_err(|e| e.to_string())?;
    let e = &dg.trunc.pres.gens;
    ensure(e.gen(e.id("n11")).degree == 0, || "n11 not in degree 0".into())?;
    let h = nonzero(&dg.homology_dims()[&Sig::o(1, 1)]);
    ensure(!h.contains_key(&0), || format!("H_0 = {:?}", h))?;
    let lc = nonzero(&Truncation::build(&models::lambda_c_oc(), 2).dims_by_degree(Sig::o(1, 1)));
    ensure(!lc.is_empty() && lc.keys().all(|&k| k == -1), || format!("LambdaC_OC(1,1;o) = {:?}", lc))?;
    Ok(format!("H(1,1;o) = {:?}, n11 in degree 0", h))
}

fn c8() -> Res {
    let f = free_algebra(FreeTag::Lp, &GradedPair::ungraded(2, 1), 3).map_err(|e| e.to_string())?;
    let h = ce_hochschild_homology(&f.alg, 3).map_err(|e| e.to_string())?;
    ensure(h.square_defect.is_none(), || format!("{:?}", h.square_defect))?;
    for (wt, hom) in &h.closed {
        let want = if *wt == (1, 0) { BTreeMap::from([(0, 2)]) } else { BTreeMap::new() };
        ensure(nonzero(hom) == want, || format!("closed {:?}: {:?}", wt, hom))?;
    }
    for (wt, hom) in &h.open {
        let want = if *wt == (0, 1) { BTreeMap::from([(0, 1)]) } else { BTreeMap::new() };
        ensure(nonzero(hom) == want, || format!("open {:?}: {:?}", wt, hom))?;
    }
    Ok(format!("{} closed and {} open weights", h.closed.len(), h.open.len()))
}

fn c9() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let pairs = [GradedPair::ungraded(2, 2).shifted(1), GradedPair::new(&[("x", 0), ("y", 1)], &[("a", 1), ("b", 0)]), GradedPair::new(&[("x", 2), ("y", -1)], &[("a", 1)])];
    let mut n = 0;
    for v in &pairs {
        let cf = Cofree::of_pair(v);
        for degree in [-1, 0, 1] {
            let (psi, phi) = random_maps(&mut rng, &cf, degree, 3, 3);
            n += check_lift_laws(&cf, &psi, &phi, 3, 3).map_err(|f| format!("{} on {}", f.law, f.input))?;
        }
    }
    Ok(format!("{} basis inputs", n))
}

fn c10() -> Res {
    let corpus = sample_corpus(31);
    let (mut valid, mut invalid) = (0, 0);
    for (name, h, expected) in &corpus {
        let r = shlp_check(h, 4).map_err(|e| e.to_string())?;
        ensure(r.discrepancies.is_empty() && r.internal.is_empty(), || format!("{}: disagreement", name))?;
        ensure(r.bracket.is_empty() == r.relations.is_empty(), || format!("{}: verdicts differ", name))?;
        ensure(r.passes() == *expected, || format!("{}: expected {}", name, expected))?;
        if *expected {
            valid += 1
        } else {
            invalid += 1
        }
    }
    ensure(corpus.len() >= 20 && valid > 0 && invalid > 0, || "corpus".into())?;
    Ok(format!("{} sets ({} valid, {} invalid)", corpus.len(), valid, invalid))
}

fn c11() -> Res {
    for (law, target) in [(models::e_law(), models::qh0sc()), (models::p_law(), models::h0sc_dual())] {
        let comp = law.composite_dims(4);
        let quo = quotient_dims(&target, 4);
        for (sig, d) in &quo {
            ensure(comp.get(sig) == Some(d), || format!("{}: {:?} vs {}", sig, comp.get(sig), d))?;
        }
    }
    Ok("E and P laws at <= 4 inputs".into())
}

fn c12() -> Res {
    let a = closed_dims(&models::h0scvor(), 7);
    let b = closed_dims(&models::lp(), 7);
    ensure(a == vec![0, 1, 1, 1, 1, 1, 1, 1] && b == vec![0, 1, 1, 2, 6, 24, 120, 720], || format!("{:?} {:?}", a, b))?;
    for (x, y) in [(&a, &b), (&b, &a)] {
        let r = gk_check(x, y, 7);
        let mut want = vec![Q::zero(); 8];
        want[1] = Q::one();
        ensure(r.holds && r.composite == want, || format!("{:?}", r.composite))?;
    }
    Ok("t + O(t^8) both ways".into())
}

fn c13() -> Res {
    let out = Command::new(env!("CARGO_BIN_EXE_operad")).arg("verify-paper").output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || format!("exit {:?}\n{}", out.status.code(), text))?;
    let passes = text.lines().filter(|l| l.contains("] PASS ")).count();
    ensure(passes == 12, || format!("{} passing checks\n{}", passes, text))?;
    Ok("12 checks pass".into())
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Res, Duration); 13] = [
        (1, c1, Duration::from_secs(1)),
        (2, c2, Duration::from_secs(5)),
        (3, c3, Duration::from_secs(300)),
        (4, c4, Duration::from_secs(120)),
        (5, c5, Duration::from_secs(300)),
        (6, c6, Duration::from_secs(300)),
        (7, c7, Duration::from_secs(300)),
        (8, c8, Duration::from_secs(60)),
        (9, c9, Duration::from_secs(300)),
        (10, c10, Duration::from_secs(300)),
        (11, c11, Duration::from_secs(300)),
        (12, c12, Duration::from_secs(300)),
        (13, c13, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (id, f, limit) in criteria {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let r = match r {
            Ok(m) if el > limit => Err(format!("{} but took {:.1}s (limit {}s)", m, el.as_secs_f64(), limit.as_secs())),
            r => r,
        };
        match &r {
            Ok(m) => println!("criterion {:>2}: PASS ({:.2}s) {}", id, el.as_secs_f64(), m),
            Err(m) => {
                println!("criterion {:>2}: FAIL ({:.2}s) {}", id, el.as_secs_f64(), m);
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
