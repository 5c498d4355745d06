//! The end-to-end suite of structural checks, run concurrently and reported by id.

use crate::algebraside::*;
use crate::dgcalc::*;
use crate::duality::*;
use crate::infinity::{self, Flavor};
use crate::kernel::Q;
use crate::models;
use crate::presentation::*;
use crate::treeops::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

/// The operads the suite runs on. Tests swap entries to make checks fail.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub lp: Presentation,
    pub h0scvor: Presentation,
    pub h0sc: Presentation,
    pub qh0sc: Presentation,
    pub h0sc_dual: Presentation,
    pub h0sc_dual_d: Derivation,
    pub lambda_c_oc: Presentation,
    pub e_law: DistributiveLaw,
    pub p_law: DistributiveLaw,
}

impl Default for Catalog {
    fn default() -> Catalog {
        let h0sc_dual = models::h0sc_dual();
        let h0sc_dual_d = models::h0sc_dual_differential(&h0sc_dual);
        Catalog {
            lp: models::lp(),
            h0scvor: models::h0scvor(),
            h0sc: models::h0sc(),
            qh0sc: models::qh0sc(),
            h0sc_dual,
            h0sc_dual_d,
            lambda_c_oc: models::lambda_c_oc(),
            e_law: models::e_law(),
            p_law: models::p_law(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Bounds {
    /// inputs for presentation-level checks
    pub dims: usize,
    /// inputs for the square-zero check of the minimal models
    pub d2: usize,
    /// inputs for homology and distributive-law checks
    pub homology: usize,
    pub gk_order: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { dims: 5, d2: 5, homology: 4, gk_order: 7, seed: 2024 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub catalog: Catalog,
    pub bounds: Bounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: usize,
    pub name: &'static str,
    pub anchor: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let st = if c.status == Status::Pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "[{:>2}] {} {:<15} {} ({:.1}s)", c.id, st, c.name, c.anchor, c.seconds);
            let _ = writeln!(s, "     {}", c.detail);
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "     witness: {}", w);
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {}", n);
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let _ = writeln!(s, "{} checks, {} failed", self.checks.len(), failed);
        s
    }
}

type Outcome = Result<String, (String, String)>;

struct Check {
    id: usize,
    name: &'static str,
    anchor: &'static str,
    run: fn(&VerifyConfig) -> Outcome,
}

const CHECKS: [Check; 12] = [
    Check { id: 1, name: "duality", anchor: "weight-2 counts of the free LP operad and its orthogonal", run: check_duality },
    Check { id: 2, name: "koszul-dual", anchor: "LP and H0(SC^vor) are Koszul dual", run: check_koszul_dual },
    Check { id: 3, name: "ql", anchor: "H0(SC) is quadratic-linear with conditions (ql1), (ql2)", run: check_ql },
    Check { id: 4, name: "d2", anchor: "LP_oo, OC_oo and H0(SC)! are dg operads", run: check_d2 },
    Check { id: 5, name: "koszulity", anchor: "LP is Koszul: the cobar complex resolves H0(SC^vor)", run: check_koszulity },
    Check { id: 6, name: "homology", anchor: "homology of OC_oo is the closed-suspended OC operad", run: check_homology },
    Check { id: 7, name: "nonformality", anchor: "OC_oo is not formal: no degree-0 class in (1,1;o)", run: check_nonformality },
    Check { id: 8, name: "ce-hochschild", anchor: "CE/Hochschild homology of a free Leibniz pair", run: check_ce_hochschild },
    Check { id: 9, name: "lifts", anchor: "lifts of (psi, phi) to coderivations", run: check_lifts },
    Check { id: 10, name: "shlp", anchor: "[D,D] = 0 iff the SHLP relations hold", run: check_shlp },
    Check { id: 11, name: "distributive", anchor: "qH0(SC) = P(alpha) o H0(SC^vor) and H0(SC)! = LP o F(n10)", run: check_distributive },
    Check { id: 12, name: "gk", anchor: "Ginzburg-Kapranov functional equation for the closed parts", run: check_gk },
];

pub fn check_names() -> Vec<(usize, &'static str)> {
    CHECKS.iter().map(|c| (c.id, c.name)).collect()
}

/// Resolves a selection of ids or names; `None` selects everything.
pub fn select(only: Option<&[String]>) -> Result<Vec<usize>, String> {
    let Some(only) = only else { return Ok(CHECKS.iter().map(|c| c.id).collect()) };
    let mut ids = Vec::new();
    for w in only.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let id = CHECKS.iter().find(|c| c.name == w || c.id.to_string() == w).map(|c| c.id);
        match id {
            Some(i) if !ids.contains(&i) => ids.push(i),
            Some(_) => {}
            None => {
                let known: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
                return Err(format!("unknown check `{}`; known: {}", w, known.join(", ")));
            }
        }
    }
    ids.sort();
    Ok(ids)
}

pub fn run(cfg: &VerifyConfig, ids: &[usize]) -> Report {
    let mut checks: Vec<CheckRecord> = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .filter(|c| ids.contains(&c.id))
            .map(|c| {
                s.spawn(move || {
                    let t = std::time::Instant::now();
                    let out = (c.run)(cfg);
                    let seconds = t.elapsed().as_secs_f64();
                    let (status, detail, witness) = match out {
                        Ok(d) => (Status::Pass, d, None),
                        Err((d, w)) => (Status::Fail, d, Some(w)),
                    };
                    CheckRecord { id: c.id, name: c.name, anchor: c.anchor, status, witness, detail, seconds }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    checks.sort_by_key(|c| c.id);
    Report { checks, notes: notes() }
}

fn notes() -> Vec<String> {
    vec![
        "the degree of n10 is stated both as 1 and as -1; -1 is used (matches |n_pq| = p+q-2)".into(),
        format!(
            "the distributive-law description of H0(SC)! writes d(n11) = n02 o1 n10 - (n11 o2 n10).(21); the second term has the wrong signature, so d(n11) = {} is used",
            models::D_N11
        ),
    ]
}

fn fail<T>(detail: impl Into<String>, witness: impl Into<String>) -> Result<T, (String, String)> {
    Err((detail.into(), witness.into()))
}

fn nonzero(h: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    h.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect()
}

fn fmt_degrees(h: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(k, v)| format!("{}:{}", k, v)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn lp_dual(lp: &Presentation) -> (Presentation, Vec<SigDuality>) {
    quadratic_dual(lp, &DualOptions::named(lp, "LPdual", &["f2", "e02", "e11"]))
}

fn relations_at_text(p: &Presentation, sig: Sig) -> String {
    let v: Vec<String> = p.relations_at(sig).iter().map(|r| r.display(&p.gens)).collect();
    format!("{}: [{}]", sig, v.join("; "))
}

fn check_duality(cfg: &VerifyConfig) -> Outcome {
    let (_, info) = lp_dual(&cfg.catalog.lp);
    for i in &info {
        if i.rel_dim + i.perp_dim != i.free_dim {
            return fail("span and orthogonal do not add up", format!("{}: {}+{} != {}", i.sig, i.rel_dim, i.perp_dim, i.free_dim));
        }
    }
    let want = [(Sig::o(2, 1), 3, 1, 2), (Sig::o(1, 2), 6, 2, 4)];
    let mut out = Vec::new();
    for (sig, f, r, p) in want {
        let Some(i) = info.iter().find(|i| i.sig == sig) else { return fail("signature missing", sig.to_string()) };
        let got = (i.free_dim, i.rel_dim, i.perp_dim);
        if got != (f, r, p) {
            return fail(format!("expected free/span/perp {}/{}/{}", f, r, p), format!("{}: {}/{}/{}", sig, got.0, got.1, got.2));
        }
        out.push(format!("{} free {} span {} perp {}", sig, f, r, p));
    }
    Ok(out.join("; "))
}

fn check_koszul_dual(cfg: &VerifyConfig) -> Outcome {
    let c = &cfg.catalog;
    let (d, info) = lp_dual(&c.lp);
    if d.gens != c.h0scvor.gens {
        return fail("dual generators differ from H0SCvor", format!("{:?}", d.gens.gens.iter().map(|g| &g.name).collect::<Vec<_>>()));
    }
    if let Err(sig) = compare_weight2_spans(&d, &c.h0scvor) {
        return fail("dual of LP differs from H0SCvor", relations_at_text(&d, sig));
    }
    let (back, _) = quadratic_dual(&c.h0scvor, &DualOptions::named(&c.h0scvor, "back", &["l2", "n02", "n11"]));
    if back.gens != c.lp.gens {
        return fail("dual generators differ from LP", String::new());
    }
    if let Err(sig) = compare_weight2_spans(&back, &c.lp) {
        return fail("dual of H0SCvor differs from LP", relations_at_text(&back, sig));
    }
    Ok(format!("relation spans agree in all {} weight-2 signatures, both directions", info.len()))
}

fn check_ql(cfg: &VerifyConfig) -> Outcome {
    let c = &cfg.catalog;
    let r = ql_conditions(&c.h0sc, cfg.bounds.dims);
    if !r.ql1 {
        return fail("(ql1) fails", r.ql1_witness.unwrap_or_default());
    }
    if !r.ql2 {
        return fail("(ql2) fails", r.ql2_witness.unwrap_or_default());
    }
    if let Err(sig) = same_relation_span(&quadratic_part(&c.h0sc), &c.qh0sc) {
        return fail("quadratic part differs from qH0SC", relations_at_text(&quadratic_part(&c.h0sc), sig));
    }
    Ok(format!("(ql1), (ql2) hold in {} signatures with <= {} inputs; qR = qH0SC relations", r.checked.len(), cfg.bounds.dims))
}

fn d2_of(p: &Presentation, d: &Derivation, k: usize) -> Result<usize, String> {
    let dg = extend_derivation(Truncation::build(p, k), d.clone()).map_err(|e| e.to_string())?;
    dg.verify_d_squared().map_err(|e| e.to_string())
}

fn check_d2(cfg: &VerifyConfig) -> Outcome {
    let k = cfg.bounds.d2;
    let mut parts = Vec::new();
    for (name, fl) in [("LP_oo", Flavor::Lp), ("OC_oo", Flavor::Oc)] {
        let (p, d) = infinity::model(k, fl);
        match d2_of(&p, &d, k) {
            Ok(n) => parts.push(format!("{} {} trees", name, n)),
            Err(w) => return fail(format!("d^2 != 0 on {}", name), w),
        }
    }
    let c = &cfg.catalog;
    let kd = k.min(4);
    match d2_of(&c.h0sc_dual, &c.h0sc_dual_d, kd) {
        Ok(n) => parts.push(format!("H0SCdual {} trees (<= {} inputs)", n, kd)),
        Err(w) => return fail("d^2 != 0 on H0SCdual", w),
    }
    Ok(format!("d^2 = 0 with <= {} inputs: {}", k, parts.join(", ")))
}

pub fn cobar_dg(p: &Presentation, k: usize) -> Result<DgTruncation, DgError> {
    let t = Truncation::build(p, k);
    let cb = cobar_truncate(&t, &Q::int(infinity::GLOBAL_SIGN as i64));
    extend_derivation(Truncation::build(&cb.pres, k), Derivation::from_module_images(cb.images))
}

fn check_koszulity(cfg: &VerifyConfig) -> Outcome {
    let c = &cfg.catalog;
    let k = cfg.bounds.homology;
    let mut parts = Vec::new();
    for (src, target) in [(&c.lp, &c.h0scvor), (&c.h0scvor, &c.lp)] {
        let dg = cobar_dg(src, k).map_err(|e| ("cobar construction failed".to_string(), e.to_string()))?;
        dg.verify_d_squared().map_err(|e| (format!("cobar of {} is not square-zero", src.name), e.to_string()))?;
        let want = quotient_dims(target, k);
        for (sig, h) in dg.homology_dims() {
            let h = nonzero(&h);
            let w = want.get(&sig).copied().unwrap_or(0);
            let expect = if w == 0 { BTreeMap::new() } else { BTreeMap::from([(0, w)]) };
            if h != expect {
                return fail(format!("cobar of {} is not a resolution of {}", src.name, target.name), format!("{}: homology {} but {} has dim {}", sig, fmt_degrees(&h), target.name, w));
            }
        }
        parts.push(format!("H(cobar {}) = {} in degree 0", src.name, target.name));
    }
    Ok(format!("{} (<= {} inputs)", parts.join(", "), k))
}

fn skip_sig(sig: Sig) -> bool {
    sig.arity() == 1 && sig.count(sig.out) == 1 || !sig.is_valid()
}

fn check_homology(cfg: &VerifyConfig) -> Outcome {
    let c = &cfg.catalog;
    let k = cfg.bounds.homology;
    let lc = Truncation::build(&c.lambda_c_oc, k);
    let dg = infinity::dg_model(k, Flavor::Oc).map_err(|e| ("OC_oo construction failed".to_string(), e.to_string()))?;
    let hom = dg.homology_dims();
    let mut n = 0;
    for (sig, h) in &hom {
        if skip_sig(*sig) {
            continue;
        }
        let (h, want) = (nonzero(h), nonzero(&lc.dims_by_degree(*sig)));
        if h != want {
            return fail("H(OC_oo) differs from LambdaC_OC", format!("{}: {} vs {}", sig, fmt_degrees(&h), fmt_degrees(&want)));
        }
        n += 1;
    }
    for (sig, want) in [(Sig::o(1, 1), BTreeMap::from([(-1, 1)])), (Sig::o(2, 0), BTreeMap::from([(-2, 1), (-1, 1)]))] {
        let h = nonzero(&hom[&sig]);
        if h != want {
            return fail(format!("unexpected homology at {}", sig), fmt_degrees(&h));
        }
    }
    let dgd = extend_derivation(Truncation::build(&c.h0sc_dual, k), c.h0sc_dual_d.clone()).map_err(|e| ("H0SCdual is not dg".to_string(), e.to_string()))?;
    for (sig, h) in dgd.homology_dims() {
        if skip_sig(sig) {
            continue;
        }
        let (h, want) = (nonzero(&h), nonzero(&lc.dims_by_degree(sig)));
        if h != want {
            return fail("H(H0SCdual) differs from LambdaC_OC", format!("{}: {} vs {}", sig, fmt_degrees(&h), fmt_degrees(&want)));
        }
    }
    let psi = infinity::psi_commutes(k).map_err(|w| ("Psi does not commute with d".to_string(), w))?;
    Ok(format!("{} signatures with <= {} inputs agree per degree; (1,1;o) = {{-1:1}}, (2,0;o) = {{-2:1, -1:1}}; Psi checked on {} trees", n, k, psi))
}

fn check_nonformality(cfg: &VerifyConfig) -> Outcome {
    let c = &cfg.catalog;
    let sig = Sig::o(1, 1);
    let (p, d) = infinity::model(2, Flavor::Oc);
    let g = &p.gens.gens[p.gens.find("n11").ok_or(("n11 missing".to_string(), String::new()))?];
    if g.degree != 0 {
        return fail("n11 is not in degree 0", g.degree.to_string());
    }
    let dg = extend_derivation(Truncation::build(&p, 2), d).map_err(|e| ("OC_oo construction failed".to_string(), e.to_string()))?;
    let h = nonzero(&dg.homology_dims()[&sig]);
    if h.contains_key(&0) {
        return fail("H_0(OC_oo)(1,1;o) is nonzero", fmt_degrees(&h));
    }
    let lc = nonzero(&Truncation::build(&c.lambda_c_oc, 2).dims_by_degree(sig));
    if lc.is_empty() || lc.keys().any(|&k| k != -1) {
        return fail("LambdaC_OC(1,1;o) is not concentrated in degree -1", fmt_degrees(&lc));
    }
    Ok(format!("n11 has degree 0, H(OC_oo)(1,1;o) = {}, LambdaC_OC(1,1;o) = {}", fmt_degrees(&h), fmt_degrees(&lc)))
}

fn check_ce_hochschild(_: &VerifyConfig) -> Outcome {
    let f = free_algebra(FreeTag::Lp, &GradedPair::ungraded(2, 1), 3).map_err(|e| ("free algebra failed".to_string(), e.to_string()))?;
    let h = ce_hochschild_homology(&f.alg, 3).map_err(|e| ("homology failed".to_string(), e.to_string()))?;
    if let Some(w) = h.square_defect {
        return fail("d^2 != 0 on the CE/Hochschild complex", w);
    }
    for (wt, hom) in &h.closed {
        let want = if *wt == (1, 0) { BTreeMap::from([(0, 2)]) } else { BTreeMap::new() };
        if nonzero(hom) != want {
            return fail("closed homology is not the generators", format!("weight {:?}: {}", wt, fmt_degrees(hom)));
        }
    }
    for (wt, hom) in &h.open {
        let want = if *wt == (0, 1) { BTreeMap::from([(0, 1)]) } else { BTreeMap::new() };
        if nonzero(hom) != want {
            return fail("open homology is not the generators", format!("weight {:?}: {}", wt, fmt_degrees(hom)));
        }
    }
    Ok(format!("free LP on (2,1) to weight 3: H = generators in degree 0 across {} closed and {} open weights", h.closed.len(), h.open.len()))
}

fn check_lifts(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.bounds.seed);
    let pairs = [GradedPair::ungraded(2, 2).shifted(1), GradedPair::new(&[("x", 0), ("y", 1)], &[("a", 1), ("b", 0)]), GradedPair::new(&[("x", 2), ("y", -1)], &[("a", 1)])];
    let mut n = 0;
    for v in &pairs {
        let cf = Cofree::of_pair(v);
        for degree in [-1, 0, 1] {
            let (psi, phi) = random_maps(&mut rng, &cf, degree, 3, 3);
            n += check_lift_laws(&cf, &psi, &phi, 3, 3).map_err(|f| (format!("{} fails", f.law), f.input))?;
        }
    }
    Ok(format!("both identities hold on {} basis inputs up to weight (3,3)", n))
}

fn check_shlp(cfg: &VerifyConfig) -> Outcome {
    let corpus = sample_corpus(cfg.bounds.seed);
    let (mut valid, mut invalid, mut inputs) = (0, 0, 0);
    for (name, h, expected) in &corpus {
        let r = shlp_check(h, 4).map_err(|e| (format!("{}: rejected", name), e.to_string()))?;
        inputs += r.checked;
        if let Some(v) = r.discrepancies.first().or(r.internal.first()) {
            return fail(format!("{}: [D,D] and the relations disagree", name), format!("{} at {:?};{:?}", v.relation, v.closed, v.open));
        }
        if r.passes() != *expected {
            return fail(format!("{}: unexpected verdict", name), format!("passes = {}", r.passes()));
        }
        if *expected {
            valid += 1
        } else {
            invalid += 1
        }
    }
    if corpus.len() < 20 || valid < 10 || invalid < 8 {
        return fail("corpus too small", format!("{} sets, {} valid, {} invalid", corpus.len(), valid, invalid));
    }
    Ok(format!("{} tensor sets ({} valid, {} invalid), N = 4, {} inputs: exact agreement", corpus.len(), valid, invalid, inputs))
}

fn check_distributive(cfg: &VerifyConfig) -> Outcome {
    let c = &cfg.catalog;
    let k = cfg.bounds.homology;
    for (law, target) in [(&c.e_law, &c.qh0sc), (&c.p_law, &c.h0sc_dual)] {
        let comp = law.composite_dims(k);
        let glued = quotient_dims(&law.law_presentation(), k);
        let quo = quotient_dims(target, k);
        let what = format!("{} o {}", law.outer.name, law.inner.name);
        for (sig, d) in &quo {
            let (x, y) = (comp.get(sig).copied().unwrap_or(0), glued.get(sig).copied().unwrap_or(0));
            if x != y {
                return fail(format!("the rewriting rules for {} are not a distributive law", what), format!("{}: composite {} vs {} with the rules", sig, x, y));
            }
            if x != *d {
                return fail(format!("{} differs from {}", what, target.name), format!("{}: composite {} vs {}", sig, x, d));
            }
        }
    }
    Ok(format!("composite dims equal the glued quotients and the qH0SC, H0SCdual dims with <= {} inputs", k))
}

fn check_gk(cfg: &VerifyConfig) -> Outcome {
    let c = &cfg.catalog;
    let o = cfg.bounds.gk_order;
    let a = closed_dims(&c.h0scvor, o);
    let b = closed_dims(&c.lp, o);
    for (x, y, what) in [(&a, &b, "g_vor(-g_lp(-t))"), (&b, &a, "g_lp(-g_vor(-t))")] {
        let r = gk_check(x, y, o);
        if !r.holds {
            let k = r.first_failure.unwrap_or(0);
            return fail(format!("{} != t", what), format!("coefficient of t^{} is {}", k, r.composite[k]));
        }
    }
    Ok(format!("closed dims {:?} and {:?}: both composites are t + O(t^{})", &a[1..], &b[1..], o + 1))
}
