use operad_core::duality::*;
use operad_core::kernel::Q;
use operad_core::models;
use operad_core::treeops::*;

#[test]
fn lp_dual_is_voronov() {
    let lp = models::lp();
    let (d, info) = quadratic_dual(&lp, &DualOptions::named(&lp, "LPdual", &["f2", "e02", "e11"]));
    for i in &info {
        assert_eq!(i.rel_dim + i.perp_dim, i.free_dim);
    }
    let vor = models::h0scvor();
    assert_eq!(d.gens, vor.gens);
    assert_eq!(compare_weight2_spans(&d, &vor), Ok(info.len()));
    let (back, _) = quadratic_dual(&vor, &DualOptions::named(&vor, "back", &["l2", "n02", "n11"]));
    assert!(compare_weight2_spans(&back, &lp).is_ok());
}

#[test]
fn qh0sc_dual_and_differential() {
    let q = models::qh0sc();
    let opts = DualOptions::named(&q, "H0SCdual", &["l2", "n02", "n11", "n10"]);
    let (d, _) = quadratic_dual(&q, &opts);
    assert!(compare_weight2_spans(&d, &models::h0sc_dual()).is_ok());
    let dd = dual_differential(&models::h0sc(), &d, &opts, &Q::int(-1));
    let want = parse_element(&d.gens, models::D_N11).unwrap();
    assert!(dd[0].is_none() && dd[1].is_none() && dd[3].is_none());
    assert_eq!(dd[2].as_ref(), Some(&want));
}

#[test]
fn gk_closed_parts() {
    let a = closed_dims(&models::h0scvor(), 7);
    let b = closed_dims(&models::lp(), 7);
    assert_eq!(a, vec![0, 1, 1, 1, 1, 1, 1, 1]);
    assert_eq!(b, vec![0, 1, 1, 2, 6, 24, 120, 720]);
    assert!(gk_check(&a, &b, 7).holds);
    assert!(gk_check(&b, &a, 7).holds);
}
