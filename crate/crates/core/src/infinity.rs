//! The minimal models LP_oo and OC_oo on the corollas l_n and n_{p,q}.

use crate::dgcalc::*;
use crate::duality::*;
use crate::kernel::*;
use crate::presentation::*;
use crate::treeops::*;

/// Which family of corollas: `Lp` requires q > 0, `Oc` also has n_{p,0} for p >= 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Lp,
    Oc,
}

pub fn l_name(n: usize) -> String {
    format!("l{}", n)
}

pub fn n_name(p: usize, q: usize) -> String {
    format!("n{}{}", p, q)
}

/// Generators l_n (n >= 2) and n_{p,q} with at most `k` inputs.
pub fn generators(k: usize, flavor: Flavor) -> Collection {
    let mut gens = Vec::new();
    for n in 2..=k {
        gens.push(Generator::new(&l_name(n), Sig::c(n), n as i64 - 2, Symmetry::uniform(Sym::Sign)));
    }
    for a in 1..=k {
        for q in 0..=a {
            let p = a - q;
            let ok = match flavor {
                Flavor::Lp => q > 0 && a >= 2,
                Flavor::Oc => 2 * p + q >= 2,
            };
            if ok {
                gens.push(Generator::new(&n_name(p, q), Sig::o(p, q), a as i64 - 2, Symmetry::Block { closed: Sym::Sign, open: Sym::Regular }));
            }
        }
    }
    Collection::new(gens)
}

/// One two-vertex term of the differential of a corolla.
#[derive(Clone, Debug)]
pub struct Term {
    pub outer: u16,
    pub inner: u16,
    pub inner_c: Vec<usize>,
    pub outer_c: Vec<usize>,
    /// open inputs o_(i+1)..o_j go to the inner vertex (open inner only)
    pub i: usize,
    pub j: usize,
    pub inner_closed: bool,
    /// sign printed in the formulas
    pub sign: i32,
    pub raw: Raw,
}

fn subsets(p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0u32..1 << p)
        .map(|mask| {
            let a: Vec<usize> = (0..p).filter(|b| mask >> b & 1 == 1).collect();
            let b: Vec<usize> = (0..p).filter(|b| mask >> b & 1 == 0).collect();
            (a, b)
        })
        .collect()
}

fn unshuffle_sign(a: &[usize], b: &[usize]) -> i32 {
    let w: Vec<usize> = a.iter().chain(b).copied().collect();
    perm_sign(&w)
}

fn par(x: usize) -> i32 {
    if x % 2 == 0 {
        1
    } else {
        -1
    }
}

fn vert(id: usize, gen: u16, kids: Vec<Raw>) -> Raw {
    Raw::Vert { id, gen, dec: 0, kids }
}

fn leaves_c(ix: &[usize]) -> Vec<Raw> {
    ix.iter().map(|&i| Raw::Leaf(Label::c(i))).collect()
}

fn leaves_o(r: std::ops::Range<usize>) -> Vec<Raw> {
    r.map(|i| Raw::Leaf(Label::o(i))).collect()
}

/// Terms of d(g) for a corolla g, with the signs of the vertex-expansion formulas.
pub fn expansion_terms(e: &Collection, g: u16) -> Vec<Term> {
    let sig = e.gen(g).sig;
    let find = |name: String| e.find(&name).map(|i| i as u16);
    let mut out = Vec::new();
    match sig.out {
        Color::Closed => {
            let p = sig.n;
            for (a, b) in subsets(p) {
                if a.len() < 2 || b.is_empty() {
                    continue;
                }
                let (Some(outer), Some(inner)) = (find(l_name(b.len() + 1)), find(l_name(a.len()))) else { continue };
                let mut kids = vec![vert(1, inner, leaves_c(&a))];
                kids.extend(leaves_c(&b));
                out.push(Term { outer, inner, inner_c: a.clone(), outer_c: b.clone(), i: 0, j: 0, inner_closed: true, sign: unshuffle_sign(&a, &b), raw: vert(0, outer, kids) });
            }
        }
        Color::Open => {
            let (p, q) = (sig.n, sig.m);
            for (a, b) in subsets(p) {
                // the inner vertex takes the closed inputs b and the open block o_(i+1)..o_j
                for i in 0..=q {
                    for j in i..=q {
                        let (Some(outer), Some(inner)) = (find(n_name(a.len(), q - (j - i) + 1)), find(n_name(b.len(), j - i))) else { continue };
                        let mut ik = leaves_c(&b);
                        ik.extend(leaves_o(i..j));
                        let mut kids = leaves_c(&a);
                        kids.extend(leaves_o(0..i));
                        kids.push(vert(1, inner, ik));
                        kids.extend(leaves_o(j..q));
                        let sign = unshuffle_sign(&a, &b) * par(i + a.len() + i * b.len());
                        out.push(Term { outer, inner, inner_c: b.clone(), outer_c: a.clone(), i, j, inner_closed: false, sign, raw: vert(0, outer, kids) });
                    }
                }
                if a.len() >= 2 {
                    let (Some(outer), Some(inner)) = (find(n_name(b.len() + 1, q)), find(l_name(a.len()))) else { continue };
                    let mut kids = vec![vert(1, inner, leaves_c(&a))];
                    kids.extend(leaves_c(&b));
                    kids.extend(leaves_o(0..q));
                    out.push(Term { outer, inner, inner_c: a.clone(), outer_c: b.clone(), i: 0, j: 0, inner_closed: true, sign: unshuffle_sign(&a, &b), raw: vert(0, outer, kids) });
                }
            }
        }
    }
    out
}

/// The differential with each printed sign multiplied by `correction(term)`.
pub fn model_with(k: usize, flavor: Flavor, correction: &dyn Fn(&Collection, u16, &Term) -> i32) -> (Presentation, Derivation) {
    let e = generators(k, flavor);
    let images = differential_images(&e, correction);
    let name = match flavor {
        Flavor::Lp => "LP_oo",
        Flavor::Oc => "OC_oo",
    };
    (Presentation::free(name, e), Derivation::from_images(images))
}

pub fn differential_images(e: &Collection, correction: &dyn Fn(&Collection, u16, &Term) -> i32) -> Vec<Option<Element>> {
    let deg = koszul_deg(e);
    let mut images = Vec::new();
    for g in 0..e.gens.len() as u16 {
        let mut x = Element::zero(e.gen(g).sig);
        for t in expansion_terms(e, g) {
            let s = Q::sign(t.sign * correction(e, g, &t));
            x.add_terms(canonicalize(e, &t.raw, &[0, 1], &deg), &s);
        }
        images.push(if x.is_zero() { None } else { Some(x) });
    }
    images
}

/// (-1)^(|inner| * number of outer inputs after the inner vertex): the printed signs assume the
/// inner operation has already passed the remaining inputs.
pub fn koszul_correction(e: &Collection, g: u16, t: &Term) -> i32 {
    let q = e.gen(g).sig.m;
    let after = if t.inner_closed { t.outer_c.len() + q } else { q - t.j };
    if e.gen(t.inner).degree.rem_euclid(2) == 1 && after % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Overall sign of the differential, shared with the cobar construction; it makes Psi a chain map.
pub const GLOBAL_SIGN: i32 = -1;

/// LP_oo or OC_oo truncated at `k` inputs.
pub fn model(k: usize, flavor: Flavor) -> (Presentation, Derivation) {
    model_with(k, flavor, &|e, g, t| GLOBAL_SIGN * koszul_correction(e, g, t))
}

pub fn dg_model(k: usize, flavor: Flavor) -> Result<DgTruncation, DgError> {
    let (p, d) = model(k, flavor);
    extend_derivation(Truncation::build(&p, k), d)
}

/// The operad whose suspended dual cobar construction is the model.
pub fn cobar_source(flavor: Flavor) -> Presentation {
    match flavor {
        Flavor::Lp => crate::models::h0scvor(),
        Flavor::Oc => crate::models::h0sc(),
    }
}

/// c_1..c_n acting on the ordered product o_1...o_m (through alpha when m = 0).
pub fn monomial(p: &Presentation, sig: Sig) -> Element {
    let comm = |n: usize| (2..=n).fold("c1".to_string(), |s, i| format!("f2({},c{})", s, i));
    let text = match (sig.out, sig.m) {
        (Color::Closed, _) => comm(sig.n),
        (Color::Open, 0) => format!("alpha({})", comm(sig.n)),
        (Color::Open, m) => {
            let prod = (2..=m).fold("o1".to_string(), |s, i| format!("e02({},o{})", s, i));
            (1..=sig.n).rev().fold(prod, |s, i| format!("e11(c{},{})", i, s))
        }
    };
    parse_element(&p.gens, &text).expect("monomial")
}

/// Identification of each corolla with the functional dual to the identity monomial.
pub fn corolla_to_cobar(x: &Collection, t: &Truncation, cb: &Cobar) -> Vec<Option<Element>> {
    x.gens
        .iter()
        .map(|g| {
            let sig = g.sig;
            let gi = cb.source.gens.iter().position(|s| s.sig == sig).expect("cobar generator") as u16;
            let cell = t.cell(sig);
            let d = cell.dim();
            let m0 = monomial(&t.pres, sig);
            let rows: Vec<Vec<Q>> = all_perms(sig.m)
                .iter()
                .enumerate()
                .map(|(i, po)| {
                    let mut r = svec_to_dense(&cell.project(&symmetric_act(&t.pres.gens, &m0, &perm_identity(sig.n), po)), d);
                    r.push(if i == 0 { Q::one() } else { Q::zero() });
                    r
                })
                .collect();
            let (r, piv) = Matrix::from_rows(d + 1, rows).rref();
            assert_eq!(piv.len(), d, "monomials do not form a basis at {}", sig);
            let kids: Vec<Node> = (0..sig.n).map(|i| Node::Leaf(Label::c(i))).chain((0..sig.m).map(|i| Node::Leaf(Label::o(i)))).collect();
            let mut el = Element::zero(sig);
            for (k, &b) in piv.iter().enumerate() {
                el.add_term(Node::Vert(Vertex { gen: gi, dec: b as u32, kids: kids.clone() }), &r.data[k][d]);
            }
            Some(el)
        })
        .collect()
}

/// Checks that the corolla model and the cobar construction agree: the identification
/// commutes with the differentials on every corolla.
pub fn agrees_with_cobar(k: usize, flavor: Flavor) -> Result<usize, String> {
    let t = Truncation::build(&cobar_source(flavor), k);
    let cb = cobar_truncate(&t, &Q::int(GLOBAL_SIGN as i64));
    let target = Truncation::build(&cb.pres, k);
    let (p, d) = model(k, flavor);
    let phi = corolla_to_cobar(&p.gens, &t, &cb);
    let corollas: Vec<(Sig, Node)> = (0..p.gens.gens.len() as u16).map(|g| (p.gens.gen(g).sig, Node::corolla(&p.gens, g))).collect();
    commutes_with_d(&p.gens, &d, &target, &Derivation::from_module_images(cb.images), &phi, &corollas)
}

/// Psi: identity on l2, n11, n02, n10 and zero on the other corollas.
pub fn psi_images(x: &Collection, target: &Collection) -> Vec<Option<Element>> {
    x.gens
        .iter()
        .map(|g| {
            let ti = target.find(&g.name)?;
            matches!(g.name.as_str(), "l2" | "n11" | "n02" | "n10").then(|| Element::from_tree(g.sig, Node::corolla(target, ti as u16)))
        })
        .collect()
}

/// Checks that Psi: OC_oo -> H0SC! commutes with the differentials on every tree with at most `k` inputs.
pub fn psi_commutes(k: usize) -> Result<usize, String> {
    let (p, d) = model(k, Flavor::Oc);
    let dual = crate::models::h0sc_dual();
    let dd = crate::models::h0sc_dual_differential(&dual);
    let target = Truncation::build(&dual, k);
    let psi = psi_images(&p.gens, &dual.gens);
    let mut trees = Vec::new();
    let mut en = Enumerator::new(&p.gens);
    for sig in Sig::all_up_to(k) {
        for w in 1..=weight_bound(sig) {
            trees.extend(en.trees(sig, w, 0).into_iter().map(|t| (sig, t)));
        }
    }
    commutes_with_d(&p.gens, &d, &target, &dd, &psi, &trees)
}
