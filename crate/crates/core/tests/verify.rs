use operad_core::models;
use operad_core::presentation::Presentation;
use operad_core::treeops::*;
use operad_core::verify::*;

fn tampered_lp() -> Presentation {
    let lp = models::lp();
    let mut rels = lp.relations.clone();
    rels[3] = parse_element(&lp.gens, "n11(l2(c1,c2),o1) - n11(c1,n11(c2,o1)) - n11(c2,n11(c1,o1))").unwrap();
    Presentation::new("LP", lp.gens.clone(), rels)
}

#[test]
fn selection_by_name_and_id() {
    assert_eq!(select(Some(&["duality".into()])).unwrap(), vec![1]);
    assert_eq!(select(Some(&["gk,2".into(), "1".into()])).unwrap(), vec![1, 2, 12]);
    assert_eq!(select(None).unwrap().len(), 12);
    assert!(select(Some(&["nope".into()])).unwrap_err().contains("duality"));
    assert_eq!(check_names().len(), 12);
}

#[test]
fn fast_checks_pass_in_id_order() {
    let ids = select(Some(&["gk,duality,koszul-dual,nonformality,ce-hochschild,lifts".into()])).unwrap();
    let r = run(&VerifyConfig::default(), &ids);
    assert!(r.passed(), "{}", r.text());
    let got: Vec<usize> = r.checks.iter().map(|c| c.id).collect();
    assert_eq!(got, vec![1, 2, 7, 8, 9, 12]);
    assert!(r.checks.iter().all(|c| c.witness.is_none() && !c.anchor.is_empty()));
    assert_eq!(r.notes.len(), 2);
}

#[test]
fn tampered_leibniz_relation_is_caught() {
    let mut cfg = VerifyConfig::default();
    cfg.catalog.lp = tampered_lp();
    let r = run(&cfg, &[1, 2]);
    assert!(!r.passed());
    let c = &r.checks[1];
    assert_eq!((c.id, c.status), (2, Status::Fail));
    let w = c.witness.as_ref().unwrap();
    assert!(w.starts_with("(2,1;o)") || w.starts_with("(3,0;c)"), "{}", w);
    assert!(w.contains("e11"), "{}", w);
}

#[test]
fn tampered_law_is_caught() {
    let mut cfg = VerifyConfig::default();
    cfg.catalog.e_law.rules.pop();
    let r = run(&cfg, &[11]);
    assert_eq!(r.checks[0].status, Status::Fail, "{}", r.text());
    assert!(r.checks[0].witness.as_ref().unwrap().contains("composite"));
}

#[test]
fn report_serializes() {
    let r = run(&VerifyConfig::default(), &[1]);
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["checks"][0]["id"], 1);
    assert_eq!(v["checks"][0]["status"], "pass");
    assert!(v["checks"][0].get("witness").is_none());
}
