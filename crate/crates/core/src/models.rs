//! Builtin presentations.

use crate::dgcalc::Derivation;
use crate::presentation::{DistributiveLaw, Presentation};
use crate::treeops::*;

fn g(name: &str, sig: Sig, degree: i64, sym: Sym) -> Generator {
    Generator::new(name, sig, degree, Symmetry::uniform(sym))
}

fn build(name: &str, gens: Vec<Generator>, rels: &[&str]) -> Presentation {
    let coll = Collection::new(gens);
    let relations = rels
        .iter()
        .map(|r| parse_element(&coll, r).unwrap_or_else(|e| panic!("builtin {}: {}: {}", name, r, e)))
        .collect();
    Presentation::new(name, coll, relations)
}

pub const VOR_RELATIONS: [&str; 5] = [
    "f2(f2(c1,c2),c3) - f2(c1,f2(c2,c3))",
    "e02(e02(o1,o2),o3) - e02(o1,e02(o2,o3))",
    "e11(c1,e11(c2,o1)) - e11(f2(c1,c2),o1)",
    "e11(c1,e02(o1,o2)) - e02(e11(c1,o1),o2)",
    "e11(c1,e02(o1,o2)) - e02(o1,e11(c1,o2))",
];

pub const LP_RELATIONS: [&str; 4] = [
    "l2(l2(c1,c2),c3) + l2(l2(c2,c3),c1) + l2(l2(c3,c1),c2)",
    "n02(n02(o1,o2),o3) - n02(o1,n02(o2,o3))",
    "n11(c1,n02(o1,o2)) - n02(n11(c1,o1),o2) - n02(o1,n11(c1,o2))",
    "n11(l2(c1,c2),o1) - n11(c1,n11(c2,o1)) + n11(c2,n11(c1,o1))",
];

pub const EYE_RELATION: &str = "n10(l2(c1,c2)) - n11(c1,n10(c2)) + n11(c2,n10(c1))";

/// The differential of n11 in the dual of H0SC.
pub const D_N11: &str = "n02(n10(c1),o1) - n02(o1,n10(c1))";

pub fn vor_gens() -> Vec<Generator> {
    vec![
        g("f2", Sig::c(2), 0, Sym::Trivial),
        g("e02", Sig::o(0, 2), 0, Sym::Regular),
        g("e11", Sig::o(1, 1), 0, Sym::Regular),
    ]
}

pub fn lp_gens() -> Vec<Generator> {
    vec![
        g("l2", Sig::c(2), 0, Sym::Sign),
        g("n02", Sig::o(0, 2), 0, Sym::Regular),
        g("n11", Sig::o(1, 1), 0, Sym::Regular),
    ]
}

/// Homology of the Voronov Swiss-cheese operad in degree 0: commutative closed part acting on an associative open part.
pub fn h0scvor() -> Presentation {
    build("H0SCvor", vor_gens(), &VOR_RELATIONS)
}

/// Leibniz pairs: a Lie algebra acting by derivations on an associative algebra.
pub fn lp() -> Presentation {
    build("LP", lp_gens(), &LP_RELATIONS)
}

fn h0sc_gens() -> Vec<Generator> {
    let mut v = vor_gens();
    v.push(g("alpha", Sig::o(1, 0), 0, Sym::Trivial));
    v
}

/// Quadratic-linear presentation of H0(SC): the Voronov relations plus a central map alpha.
pub fn h0sc() -> Presentation {
    let mut rels: Vec<&str> = VOR_RELATIONS.to_vec();
    rels.extend(["e02(alpha(c1),o1) - e11(c1,o1)", "e02(o1,alpha(c1)) - e11(c1,o1)", "e11(c1,alpha(c2)) - alpha(f2(c1,c2))"]);
    build("H0SC", h0sc_gens(), &rels)
}

/// Quadratic part of the H0SC presentation.
pub fn qh0sc() -> Presentation {
    let mut rels: Vec<&str> = VOR_RELATIONS.to_vec();
    rels.extend(["e02(alpha(c1),o1)", "e02(o1,alpha(c1))", "e11(c1,alpha(c2)) - alpha(f2(c1,c2))"]);
    build("qH0SC", h0sc_gens(), &rels)
}

pub fn h0sc_dual_gens() -> Vec<Generator> {
    let mut v = lp_gens();
    v.push(g("n10", Sig::o(1, 0), -1, Sym::Trivial));
    v
}

/// Koszul dual of H0SC (graded part; its differential lives in dgcalc).
pub fn h0sc_dual() -> Presentation {
    let mut rels: Vec<&str> = LP_RELATIONS.to_vec();
    rels.push(EYE_RELATION);
    build("H0SCdual", h0sc_dual_gens(), &rels)
}

/// The differential of the dual of H0SC: n11 goes to the commutator with n10, other generators to 0.
pub fn h0sc_dual_differential(p: &Presentation) -> Derivation {
    let mut d = Derivation::zero(&p.gens);
    d.images[p.gens.id("n11") as usize] = Some(parse_element(&p.gens, D_N11).expect("builtin differential"));
    d
}

/// The closed-suspended open-closed operad: Lie closed part, associative open part, central odd unary map.
pub fn lambda_c_oc() -> Presentation {
    build(
        "LambdaC_OC",
        vec![
            g("l2", Sig::c(2), 0, Sym::Sign),
            g("n02", Sig::o(0, 2), 0, Sym::Regular),
            g("n10", Sig::o(1, 0), -1, Sym::Trivial),
        ],
        &["l2(l2(c1,c2),c3) + l2(l2(c2,c3),c1) + l2(l2(c3,c1),c2)", "n02(n02(o1,o2),o3) - n02(o1,n02(o2,o3))", "n02(n10(c1),o1) - n02(o1,n10(c1))"],
    )
}

/// Free operad on alpha: identities plus one unary operation.
pub fn palpha() -> Presentation {
    build("Palpha", vec![g("alpha", Sig::o(1, 0), 0, Sym::Trivial)], &[])
}

pub fn f_n10() -> Presentation {
    build("Fn10", vec![g("n10", Sig::o(1, 0), -1, Sym::Trivial)], &[])
}

/// Rewriting of alpha past the Voronov generators.
pub fn e_law() -> DistributiveLaw {
    let outer = palpha();
    let inner = h0scvor();
    let mut all = outer.gens.gens.clone();
    all.extend(inner.gens.gens.iter().cloned());
    let coll = Collection::new(all);
    let el = |s: &str| parse_element(&coll, s).unwrap();
    let rules = vec![
        (el("e02(alpha(c1),o1)"), Element::zero(Sig::o(1, 1))),
        (el("e02(o1,alpha(c1))"), Element::zero(Sig::o(1, 1))),
        (el("e11(c1,alpha(c2))"), el("alpha(f2(c1,c2))")),
    ];
    DistributiveLaw { outer, inner, rules }
}

/// Rewriting of n10 past the Leibniz-pair generators.
pub fn p_law() -> DistributiveLaw {
    let outer = lp();
    let inner = f_n10();
    let mut all = outer.gens.gens.clone();
    all.extend(inner.gens.gens.iter().cloned());
    let coll = Collection::new(all);
    let el = |s: &str| parse_element(&coll, s).unwrap();
    let rules = vec![(el("n10(l2(c1,c2))"), el("n11(c1,n10(c2)) - n11(c2,n10(c1))"))];
    DistributiveLaw { outer, inner, rules }
}

/// Commutative associative operations, closed color only.
pub fn com_closed() -> Presentation {
    build("Com", vec![g("f2", Sig::c(2), 0, Sym::Trivial)], &[VOR_RELATIONS[0]])
}

/// Lie brackets, closed color only.
pub fn lie_closed() -> Presentation {
    build("Lie", vec![g("l2", Sig::c(2), 0, Sym::Sign)], &[LP_RELATIONS[0]])
}

pub fn builtin(name: &str) -> Option<Presentation> {
    Some(match name {
        "Com" => com_closed(),
        "Lie" => lie_closed(),
        "H0SCvor" => h0scvor(),
        "LP" => lp(),
        "H0SC" => h0sc(),
        "qH0SC" => qh0sc(),
        "H0SCdual" | "H0SC!" => h0sc_dual(),
        "LambdaC_OC" => lambda_c_oc(),
        "Palpha" => palpha(),
        "Fn10" | "F_n10" => f_n10(),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: [&str; 10] = ["Com", "Lie", "H0SCvor", "LP", "H0SC", "qH0SC", "H0SCdual", "LambdaC_OC", "Palpha", "Fn10"];

/// Builtins with a differential. The minimal models are generated in at most `k` inputs.
pub fn builtin_dg(name: &str, k: usize) -> Option<(Presentation, Derivation)> {
    Some(match name {
        "H0SCdual" | "H0SC!" => {
            let p = h0sc_dual();
            let d = h0sc_dual_differential(&p);
            (p, d)
        }
        "LPinf" | "LP_oo" => crate::infinity::model(k, crate::infinity::Flavor::Lp),
        "OCinf" | "OC_oo" => crate::infinity::model(k, crate::infinity::Flavor::Oc),
        _ => return None,
    })
}

pub const DG_BUILTIN_NAMES: [&str; 3] = ["H0SCdual", "LPinf", "OCinf"];
