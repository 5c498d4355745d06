use operad_core::algebraside::*;
use operad_core::kernel::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut r, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        -r
    } else {
        r
    }
}

// Witt's necklace count for the free Lie algebra on d letters
fn witt(d: usize, k: usize) -> usize {
    let s: i64 = (1..=k).filter(|e| k % e == 0).map(|e| mobius(e) * (d as i64).pow((k / e) as u32)).sum();
    (s / k as i64) as usize
}

fn monomial_oracle(tag: FreeTag, nc: usize, no: usize, bound: usize) -> (BTreeMap<(usize, usize), usize>, BTreeMap<(usize, usize), usize>) {
    let mut closed = BTreeMap::new();
    let mut open = BTreeMap::new();
    for k in 1..=bound {
        let c = match tag {
            FreeTag::Lp => witt(nc, k),
            _ => binom(nc + k - 1, k),
        };
        if c > 0 {
            closed.insert((k, 0), c);
        }
    }
    for p in 0..=bound {
        for q in 0..=bound - p {
            let c = match tag {
                // q letters, each a closed word followed by one open generator
                FreeTag::Lp if q > 0 => no.pow(q as u32) * nc.pow(p as u32) * binom(p + q - 1, q - 1),
                FreeTag::H0scVor if q > 0 => binom(nc + p - 1, p) * no.pow(q as u32),
                FreeTag::H0sc if p + q > 0 => binom(nc + p - 1, p) * no.pow(q as u32),
                _ => 0,
            };
            if c > 0 {
                open.insert((p, q), c);
            }
        }
    }
    (closed, open)
}

#[test]
fn free_algebra_dims_match_monomial_counts() {
    for tag in [FreeTag::Lp, FreeTag::H0scVor, FreeTag::H0sc] {
        for (nc, no, bound) in [(1, 1, 2), (2, 1, 3), (2, 2, 4), (3, 1, 3)] {
            let f = free_algebra(tag, &GradedPair::ungraded(nc, no), bound).unwrap();
            let (c, o) = monomial_oracle(tag, nc, no, bound);
            assert_eq!(f.closed_dims(), c, "{:?} closed {:?}", tag, (nc, no, bound));
            assert_eq!(f.open_dims(), o, "{:?} open {:?}", tag, (nc, no, bound));
        }
    }
}

#[test]
fn free_h0scvor_small_case() {
    let f = free_algebra(FreeTag::H0scVor, &GradedPair::ungraded(1, 1), 2).unwrap();
    assert_eq!(f.closed_dims(), BTreeMap::from([((1, 0), 1), ((2, 0), 1)]));
    assert_eq!(f.open_dims(), BTreeMap::from([((0, 1), 1), ((0, 2), 1), ((1, 1), 1)]));
    let e = free_algebra(FreeTag::Lp, &GradedPair::ungraded(0, 0), 3).unwrap();
    assert_eq!(e.alg.dims(), (0, 0));
    assert!(free_algebra(FreeTag::Lp, &GradedPair::ungraded(1, 1), 0).is_err());
    assert_eq!(FreeTag::parse("H0SCvor").unwrap(), FreeTag::H0scVor);
}

#[test]
fn free_lp_is_a_leibniz_pair() {
    for (nc, no) in [(1, 1), (2, 1), (1, 2)] {
        let f = free_algebra(FreeTag::Lp, &GradedPair::ungraded(nc, no), 4).unwrap();
        check_leibniz_pair(&f.alg).unwrap();
    }
}

#[test]
fn free_lp_homology_is_the_generators() {
    let f = free_algebra(FreeTag::Lp, &GradedPair::ungraded(2, 1), 3).unwrap();
    let h = ce_hochschild_homology(&f.alg, 3).unwrap();
    assert_eq!(h.square_defect, None);
    for (wt, hom) in &h.closed {
        let want = if *wt == (1, 0) { BTreeMap::from([(0, 2)]) } else { BTreeMap::new() };
        assert_eq!(hom, &want, "closed weight {:?}", wt);
    }
    for (wt, hom) in &h.open {
        let want = if *wt == (0, 1) { BTreeMap::from([(0, 1)]) } else { BTreeMap::new() };
        assert_eq!(hom, &want, "open weight {:?}", wt);
    }
    assert_eq!(h.open_chains[&(1, 2)], BTreeMap::from([(0, 4), (1, 6), (2, 2)]));
}

#[test]
fn free_lp_homology_larger() {
    let f = free_algebra(FreeTag::Lp, &GradedPair::ungraded(2, 2), 4).unwrap();
    let h = ce_hochschild_homology(&f.alg, 4).unwrap();
    assert_eq!(h.square_defect, None);
    let total: usize = h.open.values().flat_map(|m| m.values()).sum();
    assert_eq!(total, 2);
    assert_eq!(h.open[&(0, 1)], BTreeMap::from([(0, 2)]));
}

#[test]
fn abelian_lie_homology_is_the_exterior_algebra() {
    let a = PairAlgebra { closed_deg: vec![0], closed_weight: vec![(1, 0)], ..Default::default() };
    let h = ce_hochschild_homology(&a, 3).unwrap();
    assert_eq!(h.closed, BTreeMap::from([((1, 0), BTreeMap::from([(0, 1)]))]));
    let b = PairAlgebra { closed_deg: vec![0, 0, 0], ..Default::default() };
    let h = ce_hochschild_homology(&b, 3).unwrap();
    assert_eq!(h.closed[&(0, 0)], BTreeMap::from([(0, 3), (1, 3), (2, 1)]));
}

#[test]
fn homology_rejects_non_leibniz_pairs() {
    let mut a = PairAlgebra { closed_deg: vec![0], open_deg: vec![0], ..Default::default() };
    a.product.insert((0, 0), vec![(0, Q::one())]);
    a.action.insert((0, 0), vec![(0, Q::one())]);
    // x(a·a) = a but (xa)a + a(xa) = 2a
    assert!(matches!(ce_hochschild_homology(&a, 2), Err(AlgebraError::Invalid(m)) if m.contains("derivation")));
    let g = PairAlgebra { closed_deg: vec![1], ..Default::default() };
    assert!(ce_hochschild_homology(&g, 2).is_err());
}

#[test]
fn lift_laws_hold_exhaustively() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs = [GradedPair::ungraded(2, 2).shifted(1), GradedPair::new(&[("x", 0), ("y", 1)], &[("a", 1), ("b", 0)]), GradedPair::new(&[("x", 2), ("y", -1)], &[("a", 1)])];
    for v in &pairs {
        let cf = Cofree::of_pair(v);
        for degree in [-1, 0, 1] {
            for _ in 0..2 {
                let (psi, phi) = random_maps(&mut rng, &cf, degree, 3, 3);
                let n = check_lift_laws(&cf, &psi, &phi, 3, 3).unwrap_or_else(|f| panic!("{} fails on {}", f.law, f.input));
                assert!(n > 0);
            }
        }
    }
}

#[test]
fn lifts_project_back_and_vanish_for_zero_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cf = Cofree::of_pair(&GradedPair::new(&[("x", 1), ("y", 2)], &[("a", 1), ("b", 2)]));
    let (psi, phi) = random_maps(&mut rng, &cf, -1, 3, 3);
    for w in 1..=3 {
        for m in cf.closed_basis(w) {
            let proj: SVec = svec_from_map(cf.lift_closed(&psi, &m).into_iter().filter(|(k, _)| k.len() == 1).map(|(k, c)| (k[0], c)).collect());
            assert_eq!(proj, psi.val.get(&m).cloned().unwrap_or_default());
        }
    }
    for k in cf.open_keys_up_to(3, 3, false) {
        let proj: SVec = svec_from_map(cf.lift_open(&psi, &phi, &k).into_iter().filter(|((m, w), _)| m.is_empty() && w.len() == 1).map(|((_, w), c)| (w[0], c)).collect());
        assert_eq!(proj, phi.val.get(&k).cloned().unwrap_or_default());
    }
    let (z, zo) = (ClosedMap::zero(-1), OpenMap::zero(-1));
    assert!(cf.closed_basis(2).iter().all(|m| cf.lift_closed(&z, m).is_empty()));
    assert!(cf.open_keys_up_to(2, 2, false).iter().all(|k| cf.lift_open(&z, &zo, k).is_empty()));
}

fn graded_pair() -> GradedPair {
    sample_pair()
}

fn corpus() -> Vec<(String, HomotopyData, bool)> {
    sample_corpus(2024)
}

#[test]
fn bracket_and_relations_agree_on_random_sets() {
    let corpus = corpus();
    assert!(corpus.len() >= 20);
    let (mut valid, mut invalid) = (0, 0);
    for (name, h, ok) in &corpus {
        let r = shlp_check(h, 4).unwrap();
        assert!(r.checked > 0);
        assert!(r.discrepancies.is_empty(), "{}: {:?}", name, &r.discrepancies[..1]);
        assert!(r.internal.is_empty(), "{}: [D,D] differs from 2D^2", name);
        assert_eq!(r.bracket.is_empty(), r.relations.is_empty(), "{}", name);
        assert_eq!(r.passes(), *ok, "{}", name);
        if *ok {
            valid += 1
        } else {
            invalid += 1
        }
    }
    assert!(valid >= 10 && invalid >= 8);
}

#[test]
fn zero_tensors_pass() {
    let h = HomotopyData::new(graded_pair(), Mode::Ocha);
    let r = shlp_check(&h, 4).unwrap();
    assert!(r.passes() && r.consistent());
}

#[test]
fn broken_derivation_rule_is_reported() {
    let (deg, prod, d) = end_algebra(&[0, 0], &[]);
    let mut h = strict_from_associative(&deg, &prod, &d, &Q::one(), Mode::Shlp);
    assert!(shlp_check(&h, 3).unwrap().passes());
    // x1 = e11 acting on a2 = e12 gives e12; flip it
    let key = (vec![0], vec![1]);
    let v = h.n[&key].clone();
    h.n.insert(key, svec_scale(&v, &Q::int(-1)));
    let r = shlp_check(&h, 3).unwrap();
    assert!(r.consistent());
    let names: Vec<&str> = r.relations.iter().map(|v| v.relation.as_str()).collect();
    assert!(names.contains(&"n12"));
    assert!(r.relations.iter().any(|v| v.relation == "n12" && v.closed == vec![0] && v.open.contains(&1)));
}

#[test]
fn ocha_unary_map_from_commutative_algebra() {
    // A = span(u, b) with u·u = u, u·b = b·u = b, b·b = 0; L = span(x) in degree 1, abelian;
    // n_{1,0}(x) = b
    let pair = GradedPair::new(&[("x", 1)], &[("u", 0), ("b", 0)]);
    let mut h = HomotopyData::new(pair, Mode::Ocha);
    h.set_n(&[], &[0, 0], vec![(0, Q::one())]).unwrap();
    h.set_n(&[], &[0, 1], vec![(1, Q::one())]).unwrap();
    h.set_n(&[], &[1, 0], vec![(1, Q::one())]).unwrap();
    h.set_n(&[0], &[], vec![(1, Q::one())]).unwrap();
    let r = shlp_check(&h, 4).unwrap();
    assert!(r.consistent());
    assert!(r.passes(), "{:?}", r.relations.first());
    let mut s = h.clone();
    s.mode = Mode::Shlp;
    assert!(s.validate().is_err());
}

#[test]
fn rho_is_an_antimorphism_and_a_right_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cf = Cofree::new(vec![0, 1, -1], vec![0, 1]);
    let (closed, open) = domain(&cf, 3, Mode::Shlp);
    for (dx, dy, dg) in [(-1, -1, -1), (0, -1, 1), (1, 1, -1), (-1, 0, 0)] {
        let (x, f) = random_maps(&mut rng, &cf, dx, 3, 3);
        let (y, _) = random_maps(&mut rng, &cf, dy, 3, 3);
        let (_, g) = random_maps(&mut rng, &cf, dg, 3, 3);
        let eps = Q::sign(if (dx * dy) % 2 == 0 { 1 } else { -1 });
        let lhs = rho(&cf, &closed_bracket(&cf, &x, &y, &closed), &f, &open);
        let rhs = open_add(&rho(&cf, &y, &rho(&cf, &x, &f, &open), &open), &rho(&cf, &x, &rho(&cf, &y, &f, &open), &open), &-eps);
        assert!(open_add(&lhs, &rhs, &Q::int(-1)).is_zero());
        let lhs = rho(&cf, &x, &convolution_bracket(&cf, &f, &g, &open), &open);
        let s = Q::sign(if (dx * dg) % 2 == 0 { 1 } else { -1 });
        let t1 = convolution_bracket(&cf, &rho(&cf, &x, &f, &open), &g, &open).scaled(&s);
        let t2 = convolution_bracket(&cf, &f, &rho(&cf, &x, &g, &open), &open);
        assert!(open_add(&lhs, &open_add(&t1, &t2, &Q::one()), &Q::int(-1)).is_zero());
    }
}

#[test]
fn tensor_text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for mode in [Mode::Shlp, Mode::Ocha] {
        let h = random_tensors(&mut rng, graded_pair(), mode, &[1, 2, 3]);
        let text = format_tensors(&h);
        assert_eq!(parse_tensors(&text).unwrap(), h);
    }
    let src = "closed x 0\nclosed y 0\nopen a 0\n# bracket\nl 2 : (y,x) -> -1/2*x + y\nn 0,2 : (;a,a) -> a\n";
    let h = parse_tensors(src).unwrap();
    assert_eq!(h.l_value(&[0, 1]), vec![(0, Q::new(1, 2)), (1, Q::int(-1))]);
    assert_eq!(h.n_value(&[], &[0, 0]), vec![(0, Q::one())]);
}

#[test]
fn tensor_parse_errors_carry_lines() {
    let e = parse_tensors("closed x 0\nopen a 0\nl 2 : (x,q) -> x\n").unwrap_err();
    assert!(matches!(e, AlgebraError::Parse { line: 3, .. }));
    let e = parse_tensors("closed x 0\nl 2 : (x,x) -> x\n").unwrap_err();
    assert!(matches!(e, AlgebraError::Parse { line: 2, .. }));
    let e = parse_tensors("closed x 0\nbogus\n").unwrap_err();
    assert!(matches!(e, AlgebraError::Parse { line: 2, .. }));
    let h = parse_tensors("closed x 0\nopen a 0\nl 2 : (x,x) -> 0\nn 1,1 : (x;a) -> x\n");
    assert!(matches!(h, Err(AlgebraError::Parse { line: 4, .. })));
}

#[test]
fn validation_rejects_wrong_degrees() {
    let h = parse_tensors("closed x 0\nopen a 0\nn 1,1 : (x;a) -> a\n").unwrap();
    assert!(h.validate().is_ok());
    let h = parse_tensors("closed x 0\nclosed y 1\nl 2 : (x,x) -> 0\nl 2 : (x,y) -> x\n").unwrap();
    assert!(h.validate().is_err());
    assert!(shlp_check(&h, 3).is_err());
}
