//! Strong homotopy Leibniz pairs and open-closed homotopy algebras on finite graded pairs.
//!
//! Structure maps l_n and n_{p,q} are stored unsuspended. They are checked twice: once as a
//! square-zero element of the semidirect product of coderivation algebras on the suspended
//! pair, once through the relations given by the differential of the corolla model.

use super::*;
use crate::infinity::{self, Flavor};
use crate::treeops::{Collection, Color, Label, Raw};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Shlp,
    Ocha,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyData {
    pub pair: GradedPair,
    pub mode: Mode,
    /// l_n on sorted argument lists
    pub l: BTreeMap<Vec<usize>, SVec>,
    /// n_{p,q} on (sorted closed arguments, open word)
    pub n: BTreeMap<(Vec<usize>, Vec<usize>), SVec>,
}

impl HomotopyData {
    pub fn new(pair: GradedPair, mode: Mode) -> HomotopyData {
        HomotopyData { pair, mode, l: BTreeMap::new(), n: BTreeMap::new() }
    }

    fn cdeg(&self) -> Vec<i64> {
        self.pair.closed_degrees()
    }

    /// Sets l_n(args) = value, extended by graded antisymmetry.
    pub fn set_l(&mut self, args: &[usize], value: SVec) -> Result<(), AlgebraError> {
        match sort_antisymmetric(&self.cdeg(), args) {
            Some((k, s)) => {
                let v = svec_scale(&value, &Q::sign(s));
                if v.is_empty() {
                    self.l.remove(&k);
                } else {
                    self.l.insert(k, v);
                }
                Ok(())
            }
            None if value.is_empty() => Ok(()),
            None => Err(AlgebraError::Invalid(format!("l_{} must vanish on {:?} by antisymmetry", args.len(), args))),
        }
    }

    pub fn set_n(&mut self, closed: &[usize], open: &[usize], value: SVec) -> Result<(), AlgebraError> {
        match sort_antisymmetric(&self.cdeg(), closed) {
            Some((k, s)) => {
                let v = svec_scale(&value, &Q::sign(s));
                if v.is_empty() {
                    self.n.remove(&(k, open.to_vec()));
                } else {
                    self.n.insert((k, open.to_vec()), v);
                }
                Ok(())
            }
            None if value.is_empty() => Ok(()),
            None => Err(AlgebraError::Invalid(format!("n_{},{} must vanish on {:?} by antisymmetry", closed.len(), open.len(), closed))),
        }
    }

    pub fn l_value(&self, args: &[usize]) -> SVec {
        match sort_antisymmetric(&self.cdeg(), args) {
            Some((k, s)) => self.l.get(&k).map_or(Vec::new(), |v| svec_scale(v, &Q::sign(s))),
            None => Vec::new(),
        }
    }

    pub fn n_value(&self, closed: &[usize], open: &[usize]) -> SVec {
        match sort_antisymmetric(&self.cdeg(), closed) {
            Some((k, s)) => self.n.get(&(k, open.to_vec())).map_or(Vec::new(), |v| svec_scale(v, &Q::sign(s))),
            None => Vec::new(),
        }
    }

    pub fn max_arity(&self) -> usize {
        self.l.keys().map(|k| k.len()).chain(self.n.keys().map(|(a, b)| a.len() + b.len())).max().unwrap_or(0)
    }

    /// Degrees |l_n| = n - 2 and |n_{p,q}| = p + q - 2; n_{p,0} only in OCHA mode.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let cd = self.pair.closed_degrees();
        let od = self.pair.open_degrees();
        let bad = |what: String| Err(AlgebraError::Invalid(what));
        for (k, v) in &self.l {
            if k.is_empty() {
                return bad("l_0 is not allowed".into());
            }
            let want = k.iter().map(|&i| cd[i]).sum::<i64>() + k.len() as i64 - 2;
            if let Some((y, _)) = v.iter().find(|(y, _)| cd[*y] != want) {
                return bad(format!("l_{}{:?} has a component on {} of degree {}, expected degree {}", k.len(), k, self.pair.closed[*y].0, cd[*y], want));
            }
        }
        for ((a, b), v) in &self.n {
            if b.is_empty() && (self.mode == Mode::Shlp || a.is_empty()) {
                return bad(format!("n_{},0 needs OCHA mode and at least one closed input", a.len()));
            }
            let want = a.iter().map(|&i| cd[i]).sum::<i64>() + b.iter().map(|&i| od[i]).sum::<i64>() + (a.len() + b.len()) as i64 - 2;
            if let Some((y, _)) = v.iter().find(|(y, _)| od[*y] != want) {
                return bad(format!("n_{},{}{:?} has a component on {} of degree {}, expected degree {}", a.len(), b.len(), (a, b), self.pair.open[*y].0, od[*y], want));
            }
        }
        Ok(())
    }

    /// The structure maps of a strict pair: l_2 the bracket, n_{1,1} the action, n_{0,2} the
    /// product and, in OCHA mode, n_{1,0} the unary map.
    pub fn from_pair_algebra(a: &PairAlgebra, mode: Mode) -> HomotopyData {
        let pair = GradedPair {
            closed: a.closed_deg.iter().enumerate().map(|(i, d)| (format!("x{}", i + 1), *d)).collect(),
            open: a.open_deg.iter().enumerate().map(|(i, d)| (format!("a{}", i + 1), *d)).collect(),
        };
        let mut h = HomotopyData::new(pair, mode);
        for ((i, j), v) in &a.bracket {
            if i < j || (i == j && a.closed_deg[*i].rem_euclid(2) == 1) {
                h.set_l(&[*i, *j], v.clone()).expect("antisymmetric bracket");
            }
        }
        for ((i, j), v) in &a.action {
            h.n.insert((vec![*i], vec![*j]), v.clone());
        }
        for ((i, j), v) in &a.product {
            h.n.insert((vec![], vec![*i, *j]), v.clone());
        }
        if mode == Mode::Ocha {
            for (i, v) in &a.unary {
                h.n.insert((vec![*i], vec![]), v.clone());
            }
        }
        h
    }

    fn flavor(&self) -> Flavor {
        match self.mode {
            Mode::Shlp => Flavor::Lp,
            Mode::Ocha => Flavor::Oc,
        }
    }
}

/// Sign relating an unsuspended map on y_1..y_N to its suspended version on sy_1..sy_N:
/// (-1)^{N-1 + Σ_k (N-1-k)|y_k|}, k counted from 0.
pub fn decalage_sign(degs: &[i64]) -> i32 {
    let n = degs.len() as i64;
    let mut e = n - 1;
    for (k, d) in degs.iter().enumerate() {
        e += (n - 1 - k as i64) * d;
    }
    parity(e)
}

/// The suspended pair and the corestrictions psi (from the l_n) and phi (from the n_{p,q}).
pub fn suspend(h: &HomotopyData) -> (Cofree, ClosedMap, OpenMap) {
    let cd = h.pair.closed_degrees();
    let od = h.pair.open_degrees();
    let cf = Cofree::new(cd.iter().map(|d| d + 1).collect(), od.iter().map(|d| d + 1).collect());
    let mut psi = ClosedMap::zero(-1);
    for (k, v) in &h.l {
        let degs: Vec<i64> = k.iter().map(|&i| cd[i]).collect();
        psi.val.insert(k.clone(), svec_scale(v, &Q::sign(decalage_sign(&degs))));
    }
    let mut phi = OpenMap::zero(-1);
    for ((a, b), v) in &h.n {
        let degs: Vec<i64> = a.iter().map(|&i| cd[i]).chain(b.iter().map(|&i| od[i])).collect();
        phi.val.insert((a.clone(), b.clone()), svec_scale(v, &Q::sign(decalage_sign(&degs))));
    }
    (cf, psi, phi)
}

/// Inputs with at most `n` symbols: closed monomials and open keys.
pub fn domain(cf: &Cofree, n: usize, mode: Mode) -> (Vec<Mono>, Vec<OKey>) {
    let closed = (1..=n).flat_map(|w| cf.closed_basis(w)).collect();
    let mut open = Vec::new();
    for total in 1..=n {
        for q in 0..=total {
            if q == 0 && mode == Mode::Shlp {
                continue;
            }
            open.extend(cf.open_basis(total - q, q));
        }
    }
    (closed, open)
}

/// Corestriction of the commutator of two lifted closed coderivations.
pub fn closed_bracket(cf: &Cofree, x: &ClosedMap, y: &ClosedMap, inputs: &[Mono]) -> ClosedMap {
    let s = Q::sign(-parity(x.degree * y.degree));
    let mut out = ClosedMap::zero(x.degree + y.degree);
    for m in inputs {
        let a = cf.apply_closed(x, &cf.lift_closed(y, m));
        let b = cf.apply_closed(y, &cf.lift_closed(x, m));
        let v = svec_add_scaled(&a, &s, &b);
        if !v.is_empty() {
            out.val.insert(m.clone(), v);
        }
    }
    out
}

/// rho(X) f = f ∘ X~.
pub fn rho(cf: &Cofree, x: &ClosedMap, f: &OpenMap, inputs: &[OKey]) -> OpenMap {
    let mut out = OpenMap::zero(x.degree + f.degree);
    for k in inputs {
        let v = cf.apply_open(f, &cf.lift_open_closed_part(x, k));
        if !v.is_empty() {
            out.val.insert(k.clone(), v);
        }
    }
    out
}

/// The lift of a map on words to a coderivation of the tensor coalgebra, applied to `w`.
fn word_lift(cf: &Cofree, g: &dyn Fn(&[usize]) -> SVec, gdeg: i64, w: &[usize]) -> Lin<Vec<usize>> {
    let mut out = Lin::new();
    for i in 0..=w.len() {
        let s = Q::sign(parity(gdeg * cf.word_degree(&w[..i])));
        for j in i..=w.len() {
            for (z, c) in g(&w[i..j]) {
                let mut nw = w[..i].to_vec();
                nw.push(z);
                nw.extend(&w[j..]);
                lin_add(&mut out, nw, &(&c * &s));
            }
        }
    }
    out
}

/// The convolution bracket l_G ∘ (f ⊗ g) ∘ Δ, with l_G the commutator of coderivations of the
/// tensor coalgebra.
pub fn convolution_bracket(cf: &Cofree, f: &OpenMap, g: &OpenMap, inputs: &[OKey]) -> OpenMap {
    let get = |h: &OpenMap, m: &Mono, w: &[usize]| -> SVec { h.val.get(&(m.clone(), w.to_vec())).cloned().unwrap_or_default() };
    let mut out = OpenMap::zero(f.degree + g.degree);
    for (m, w) in inputs {
        let mut acc = Lin::new();
        for (a, b, s) in cf.unshuffles(m) {
            let fd = f.degree + cf.mono_degree(&a);
            let gd = g.degree + cf.mono_degree(&b);
            let base = Q::sign(s * parity(g.degree * cf.mono_degree(&a)));
            let fa = |u: &[usize]| get(f, &a, u);
            let gb = |u: &[usize]| get(g, &b, u);
            for (u, c) in word_lift(cf, &gb, gd, w) {
                for (y, e) in fa(&u) {
                    lin_add(&mut acc, y, &(&(&c * &e) * &base));
                }
            }
            let minus = Q::sign(-parity(fd * gd));
            for (u, c) in word_lift(cf, &fa, fd, w) {
                for (y, e) in gb(&u) {
                    lin_add(&mut acc, y, &(&(&(&c * &e) * &base) * &minus));
                }
            }
        }
        let v = svec_from_map(acc);
        if !v.is_empty() {
            out.val.insert((m.clone(), w.clone()), v);
        }
    }
    out
}

/// [(X1, f1), (X2, f2)] = ([X1, X2], rho(X1) f2 - (-1)^{|X2||f1|} rho(X2) f1 + [f1, f2]).
pub fn semidirect_bracket(cf: &Cofree, a: (&ClosedMap, &OpenMap), b: (&ClosedMap, &OpenMap), closed: &[Mono], open: &[OKey]) -> (ClosedMap, OpenMap) {
    let c = closed_bracket(cf, a.0, b.0, closed);
    let t1 = rho(cf, a.0, b.1, open);
    let t2 = rho(cf, b.0, a.1, open);
    let t3 = convolution_bracket(cf, a.1, b.1, open);
    let o = open_add(&open_add(&t1, &t2, &Q::sign(-parity(b.0.degree * a.1.degree))), &t3, &Q::one());
    (c, o)
}

/// Corestrictions of D∘D where D is the lifted coderivation.
pub fn square(cf: &Cofree, psi: &ClosedMap, phi: &OpenMap, closed: &[Mono], open: &[OKey]) -> (ClosedMap, OpenMap) {
    let mut c = ClosedMap::zero(2 * psi.degree);
    for m in closed {
        let v = cf.apply_closed(psi, &cf.lift_closed(psi, m));
        if !v.is_empty() {
            c.val.insert(m.clone(), v);
        }
    }
    let mut o = OpenMap::zero(2 * phi.degree);
    for k in open {
        let v = cf.apply_open(phi, &cf.lift_open(psi, phi, k));
        if !v.is_empty() {
            o.val.insert(k.clone(), v);
        }
    }
    (c, o)
}

// ---------------------------------------------------------------------------
// The relations of the corolla model evaluated on the structure maps

fn gen_value(h: &HomotopyData, e: &Collection, g: u16, closed: &[usize], open: &[usize]) -> SVec {
    match e.gen(g).sig.out {
        Color::Closed => h.l_value(closed),
        Color::Open => h.n_value(closed, open),
    }
}

fn leaves(r: &Raw, out: &mut Vec<Label>) {
    match r {
        Raw::Leaf(l) => out.push(*l),
        Raw::Vert { kids, .. } => kids.iter().for_each(|k| leaves(k, out)),
    }
}

/// Value of a two-vertex tree on inputs listed in label order.
fn eval_term(h: &HomotopyData, e: &Collection, raw: &Raw, xs: &[usize], ws: &[usize]) -> SVec {
    let cd = h.pair.closed_degrees();
    let od = h.pair.open_degrees();
    let p = xs.len();
    let deg_of = |l: &Label| match l.color {
        Color::Closed => cd[xs[l.idx as usize]],
        Color::Open => od[ws[l.idx as usize]],
    };
    let pos_of = |l: &Label| match l.color {
        Color::Closed => l.idx as usize,
        Color::Open => p + l.idx as usize,
    };
    let Raw::Vert { gen: outer, kids, .. } = raw else { unreachable!() };
    let mut planar = Vec::new();
    leaves(raw, &mut planar);
    let label_degs: Vec<i64> = (0..p).map(|i| cd[xs[i]]).chain(ws.iter().map(|&i| od[i])).collect();
    let order: Vec<usize> = planar.iter().map(pos_of).collect();
    let mut sign = koszul_sign(&order, &label_degs);
    let mut before = 0i64;
    let mut inner_val: SVec = Vec::new();
    let mut inner_at = usize::MAX;
    let mut inner_color = Color::Closed;
    for (slot, k) in kids.iter().enumerate() {
        match k {
            Raw::Leaf(l) => before += deg_of(l),
            Raw::Vert { gen, kids: ik, .. } => {
                let ic: Vec<usize> = ik.iter().filter_map(|x| matches!(x, Raw::Leaf(l) if l.color == Color::Closed).then(|| if let Raw::Leaf(l) = x { xs[l.idx as usize] } else { 0 })).collect();
                let io: Vec<usize> = ik.iter().filter_map(|x| matches!(x, Raw::Leaf(l) if l.color == Color::Open).then(|| if let Raw::Leaf(l) = x { ws[l.idx as usize] } else { 0 })).collect();
                sign *= parity(e.gen(*gen).degree * before);
                inner_val = gen_value(h, e, *gen, &ic, &io);
                inner_at = slot;
                inner_color = e.gen(*gen).sig.out;
                break;
            }
        }
    }
    let mut out = Lin::new();
    for (y, c) in &inner_val {
        let mut oc = Vec::new();
        let mut oo = Vec::new();
        for (slot, k) in kids.iter().enumerate() {
            let (color, v) = match k {
                Raw::Leaf(l) => (l.color, if l.color == Color::Closed { xs[l.idx as usize] } else { ws[l.idx as usize] }),
                Raw::Vert { .. } => {
                    debug_assert_eq!(slot, inner_at);
                    (inner_color, *y)
                }
            };
            if color == Color::Closed {
                oc.push(v);
            } else {
                oo.push(v);
            }
        }
        for (z, a) in gen_value(h, e, *outer, &oc, &oo) {
            lin_add(&mut out, z, &(c * &a));
        }
    }
    svec_scale(&svec_from_map(out), &Q::sign(sign))
}

fn apply_l1(h: &HomotopyData, v: &SVec) -> SVec {
    let mut out = Lin::new();
    for (y, c) in v {
        for (z, a) in h.l_value(&[*y]) {
            lin_add(&mut out, z, &(c * &a));
        }
    }
    svec_from_map(out)
}

fn apply_n01(h: &HomotopyData, v: &SVec) -> SVec {
    let mut out = Lin::new();
    for (y, c) in v {
        for (z, a) in h.n_value(&[], &[*y]) {
            lin_add(&mut out, z, &(c * &a));
        }
    }
    svec_from_map(out)
}

/// ∂G = d ∘ G - (-1)^{|G|} G ∘ d for a map G with output color `out`.
fn internal_differential(h: &HomotopyData, g: &dyn Fn(&[usize], &[usize]) -> SVec, gdeg: i64, out: Color, xs: &[usize], ws: &[usize]) -> SVec {
    let cd = h.pair.closed_degrees();
    let od = h.pair.open_degrees();
    let v = g(xs, ws);
    let mut acc = match out {
        Color::Closed => apply_l1(h, &v),
        Color::Open => apply_n01(h, &v),
    };
    let s = Q::sign(-parity(gdeg));
    let mut before = 0i64;
    for k in 0..xs.len() + ws.len() {
        let inner = Q::sign(parity(before));
        if k < xs.len() {
            for (y, c) in h.l_value(&[xs[k]]) {
                let mut nx = xs.to_vec();
                nx[k] = y;
                acc = svec_add_scaled(&acc, &(&(&c * &s) * &inner), &g(&nx, ws));
            }
            before += cd[xs[k]];
        } else {
            let j = k - xs.len();
            for (y, c) in h.n_value(&[], &[ws[j]]) {
                let mut nw = ws.to_vec();
                nw[j] = y;
                acc = svec_add_scaled(&acc, &(&(&c * &s) * &inner), &g(xs, &nw));
            }
            before += od[ws[j]];
        }
    }
    acc
}

/// One failed instance: the relation (named by its corolla), the inputs and the defect.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub relation: String,
    pub closed: Vec<usize>,
    pub open: Vec<usize>,
    pub value: SVec,
}

impl Violation {
    pub fn describe(&self, pair: &GradedPair, out: Color) -> String {
        let names = |v: &[usize], s: &[(String, i64)]| v.iter().map(|&i| s[i].0.clone()).collect::<Vec<_>>().join(",");
        let basis = if out == Color::Closed { &pair.closed } else { &pair.open };
        let val = self.value.iter().map(|(i, c)| format!("{}*{}", c, basis[*i].0)).collect::<Vec<_>>().join(" + ");
        format!("{} on ({};{}) = {}", self.relation, names(&self.closed, &pair.closed), names(&self.open, &pair.open), val)
    }
}

/// Model relations R_g = ∂g - (value of d g), keyed by input, plus d_L^2 and d_A^2.
pub fn relation_values(h: &HomotopyData, n: usize) -> (BTreeMap<Mono, (String, SVec)>, BTreeMap<OKey, (String, SVec)>) {
    let e = infinity::generators(n.max(2), h.flavor());
    let cf = Cofree::new(h.pair.closed_degrees().iter().map(|d| d + 1).collect(), h.pair.open_degrees().iter().map(|d| d + 1).collect());
    let (closed, open) = domain(&cf, n, h.mode);
    let mut terms: BTreeMap<(Color, usize, usize), (u16, Vec<(Q, Raw)>)> = BTreeMap::new();
    for g in 0..e.gens.len() as u16 {
        let sig = e.gen(g).sig;
        let ts = infinity::expansion_terms(&e, g)
            .into_iter()
            .map(|t| (Q::sign(t.sign * infinity::GLOBAL_SIGN * infinity::koszul_correction(&e, g, &t)), t.raw))
            .collect();
        terms.insert((sig.out, sig.n, sig.m), (g, ts));
    }
    let eval = |out: Color, xs: &[usize], ws: &[usize]| -> (String, SVec) {
        let key = (out, xs.len(), ws.len());
        match terms.get(&key) {
            Some((g, ts)) => {
                let gv = |a: &[usize], b: &[usize]| gen_value(h, &e, *g, a, b);
                let mut v = internal_differential(h, &gv, e.gen(*g).degree, out, xs, ws);
                for (c, raw) in ts {
                    v = svec_add_scaled(&v, &(-c), &eval_term(h, &e, raw, xs, ws));
                }
                (e.gen(*g).name.clone(), v)
            }
            None => match out {
                Color::Closed => ("l1".to_string(), apply_l1(h, &h.l_value(xs))),
                Color::Open => ("n01".to_string(), apply_n01(h, &h.n_value(xs, ws))),
            },
        }
    };
    let c = closed.iter().map(|m| (m.clone(), eval(Color::Closed, m, &[]))).collect();
    let o = open.iter().map(|k| (k.clone(), eval(Color::Open, &k.0, &k.1))).collect();
    (c, o)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ShlpReport {
    /// inputs on which the structure was evaluated
    pub checked: usize,
    /// nonzero components of [D, D], desuspended
    pub bracket: Vec<Violation>,
    /// failed instances of the model relations
    pub relations: Vec<Violation>,
    /// inputs where the desuspended [D, D] is not twice the relation value
    pub discrepancies: Vec<Violation>,
    /// inputs where [D, D] differs from 2 D∘D
    pub internal: Vec<Violation>,
}

impl ShlpReport {
    pub fn passes(&self) -> bool {
        self.bracket.is_empty() && self.relations.is_empty()
    }
    pub fn consistent(&self) -> bool {
        self.discrepancies.is_empty() && self.internal.is_empty()
    }
}

fn closed_name(m: &Mono) -> String {
    format!("l{}", m.len())
}

fn open_name(k: &OKey) -> String {
    format!("n{}{}", k.0.len(), k.1.len())
}

/// Evaluates [D, D] in the semidirect product and the model relations on every input with at
/// most `n` symbols and compares them.
pub fn shlp_check(h: &HomotopyData, n: usize) -> Result<ShlpReport, AlgebraError> {
    h.validate()?;
    let (cf, psi, phi) = suspend(h);
    let (closed, open) = domain(&cf, n, h.mode);
    let (bc, bo) = semidirect_bracket(&cf, (&psi, &phi), (&psi, &phi), &closed, &open);
    let (sc, so) = square(&cf, &psi, &phi, &closed, &open);
    let (rc, ro) = relation_values(h, n);
    let mut rep = ShlpReport { checked: closed.len() + open.len(), ..Default::default() };
    let two = Q::int(2);
    let cd = h.pair.closed_degrees();
    let od = h.pair.open_degrees();
    let mut visit = |name: String, a: &[usize], b: &[usize], bv: SVec, sv: SVec, rname: &str, rv: &SVec| {
        let degs: Vec<i64> = a.iter().map(|&i| cd[i]).chain(b.iter().map(|&i| od[i])).collect();
        let dec = Q::sign(decalage_sign(&degs));
        let (bv, sv) = (svec_scale(&bv, &dec), svec_scale(&sv, &dec));
        let viol = |relation: &str, value: SVec| Violation { relation: relation.to_string(), closed: a.to_vec(), open: b.to_vec(), value };
        if bv != svec_scale(&sv, &two) {
            rep.internal.push(viol(&name, bv.clone()));
        }
        if !bv.is_empty() {
            rep.bracket.push(viol(&name, bv.clone()));
        }
        if !rv.is_empty() {
            rep.relations.push(viol(rname, rv.clone()));
        }
        if bv != svec_scale(rv, &two) {
            rep.discrepancies.push(viol(rname, bv));
        }
    };
    for m in &closed {
        let (rname, rv) = &rc[m];
        visit(closed_name(m), m, &[], bc.val.get(m).cloned().unwrap_or_default(), sc.val.get(m).cloned().unwrap_or_default(), rname, rv);
    }
    for k in &open {
        let (rname, rv) = &ro[k];
        visit(open_name(k), &k.0, &k.1, bo.val.get(k).cloned().unwrap_or_default(), so.val.get(k).cloned().unwrap_or_default(), rname, rv);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Text format

fn parse_lincomb(text: &str, names: &[(String, i64)], line: usize) -> Result<SVec, AlgebraError> {
    let err = |msg: String| AlgebraError::Parse { line, msg };
    let mut out = Lin::new();
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut rest = t.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if first => (false, rest),
            _ => return Err(err(format!("expected + or - before {:?}", rest))),
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (Q::parse(c).ok_or_else(|| err(format!("bad coefficient {:?}", c)))?, n),
            None => (Q::one(), term),
        };
        let idx = names.iter().position(|x| x.0 == name).ok_or_else(|| err(format!("unknown basis symbol {:?}", name)))?;
        lin_add(&mut out, idx, &if neg { -coef } else { coef });
    }
    Ok(svec_from_map(out))
}

fn parse_args(text: &str, names: &[(String, i64)], line: usize) -> Result<Vec<usize>, AlgebraError> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|s| names.iter().position(|x| x.0 == s.trim()).ok_or_else(|| AlgebraError::Parse { line, msg: format!("unknown basis symbol {:?}", s.trim()) }))
        .collect()
}

/// Parses structure maps:
///
/// ```text
/// mode ocha
/// closed x 0
/// open a 1
/// l 2 : (x,y) -> 2*y
/// n 1,1 : (x;a) -> a - 1/2*b
/// ```
pub fn parse_tensors(text: &str) -> Result<HomotopyData, AlgebraError> {
    let mut h = HomotopyData::new(GradedPair::default(), Mode::Shlp);
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let err = |msg: String| AlgebraError::Parse { line, msg };
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        let mut words = s.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "mode" => {
                h.mode = match words.next() {
                    Some("shlp") => Mode::Shlp,
                    Some("ocha") => Mode::Ocha,
                    other => return Err(err(format!("unknown mode {:?}", other))),
                }
            }
            "closed" | "open" => {
                let name = words.next().ok_or_else(|| err("missing symbol name".into()))?;
                let deg: i64 = words.next().and_then(|d| d.parse().ok()).ok_or_else(|| err("missing or bad degree".into()))?;
                let list = if head == "closed" { &mut h.pair.closed } else { &mut h.pair.open };
                if list.iter().any(|x| x.0 == name) {
                    return Err(err(format!("duplicate symbol {}", name)));
                }
                list.push((name.to_string(), deg));
            }
            "l" | "n" => {
                let (lhs, value) = s.split_once("->").ok_or_else(|| err("missing ->".into()))?;
                let (sig, args) = lhs[1..].split_once(':').ok_or_else(|| err("missing :".into()))?;
                let args = args.trim();
                if !(args.starts_with('(') && args.ends_with(')')) {
                    return Err(err("arguments must be in parentheses".into()));
                }
                let inner = &args[1..args.len() - 1];
                if head == "l" {
                    let k: usize = sig.trim().parse().map_err(|_| err(format!("bad arity {:?}", sig.trim())))?;
                    let xs = parse_args(inner, &h.pair.closed, line)?;
                    if xs.len() != k {
                        return Err(err(format!("l {} needs {} arguments, got {}", k, k, xs.len())));
                    }
                    let v = parse_lincomb(value, &h.pair.closed, line)?;
                    h.set_l(&xs, v).map_err(|e| err(e.to_string()))?;
                } else {
                    let (p, q) = sig.trim().split_once(',').ok_or_else(|| err("n needs p,q".into()))?;
                    let p: usize = p.trim().parse().map_err(|_| err("bad p".into()))?;
                    let q: usize = q.trim().parse().map_err(|_| err("bad q".into()))?;
                    let (c, o) = inner.split_once(';').ok_or_else(|| err("n arguments are (closed;open)".into()))?;
                    let xs = parse_args(c, &h.pair.closed, line)?;
                    let ws = parse_args(o, &h.pair.open, line)?;
                    if xs.len() != p || ws.len() != q {
                        return Err(err(format!("n {},{} got {} closed and {} open arguments", p, q, xs.len(), ws.len())));
                    }
                    let v = parse_lincomb(value, &h.pair.open, line)?;
                    h.set_n(&xs, &ws, v).map_err(|e| err(e.to_string()))?;
                }
            }
            _ => return Err(err(format!("unknown record {:?}", head))),
        }
    }
    Ok(h)
}

fn fmt_lincomb(v: &SVec, names: &[(String, i64)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let neg = c.signum() < 0;
        let a = if neg { -c } else { c.clone() };
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if !a.is_one() {
            s.push_str(&format!("{}*", a));
        }
        s.push_str(&names[*i].0);
    }
    s
}

pub fn format_tensors(h: &HomotopyData) -> String {
    let mut s = String::new();
    if h.mode == Mode::Ocha {
        s.push_str("mode ocha\n");
    }
    for (n, d) in &h.pair.closed {
        s.push_str(&format!("closed {} {}\n", n, d));
    }
    for (n, d) in &h.pair.open {
        s.push_str(&format!("open {} {}\n", n, d));
    }
    let names = |v: &[usize], src: &[(String, i64)]| v.iter().map(|&i| src[i].0.clone()).collect::<Vec<_>>().join(",");
    for (k, v) in &h.l {
        s.push_str(&format!("l {} : ({}) -> {}\n", k.len(), names(k, &h.pair.closed), fmt_lincomb(v, &h.pair.closed)));
    }
    for ((a, b), v) in &h.n {
        s.push_str(&format!("n {},{} : ({};{}) -> {}\n", a.len(), b.len(), names(a, &h.pair.closed), names(b, &h.pair.open), fmt_lincomb(v, &h.pair.open)));
    }
    s
}

// ---------------------------------------------------------------------------
// Sample data

/// The graded algebra End(V) on elementary matrices e_ij (degree |v_i| - |v_j|) with its
/// product table, and the commutator d = [∂, -] for a square-zero ∂ of degree -1.
pub fn end_algebra(vdeg: &[i64], partial: &[(usize, usize, Q)]) -> (Vec<i64>, Table, BTreeMap<usize, SVec>) {
    let n = vdeg.len();
    let idx = |i: usize, j: usize| i * n + j;
    let deg: Vec<i64> = (0..n * n).map(|k| vdeg[k / n] - vdeg[k % n]).collect();
    let mut prod = Table::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                prod.insert((idx(i, j), idx(j, k)), vec![(idx(i, k), Q::one())]);
            }
        }
    }
    let mut d = BTreeMap::new();
    for b in 0..n * n {
        let mut acc = Lin::new();
        for &(i, j, ref c) in partial {
            let a = idx(i, j);
            let s = Q::sign(-parity(deg[a] * deg[b]));
            for (z, e) in prod.get(&(a, b)).into_iter().flatten() {
                lin_add(&mut acc, *z, &(c * e));
            }
            for (z, e) in prod.get(&(b, a)).into_iter().flatten() {
                lin_add(&mut acc, *z, &(&(c * e) * &s));
            }
        }
        let v = svec_from_map(acc);
        if !v.is_empty() {
            d.insert(b, v);
        }
    }
    (deg, prod, d)
}

/// Structure maps of the dg Leibniz pair (A, A) for a graded associative algebra A with
/// differential `d`: l_1 = n_{0,1} = d, l_2 = λ[,], n_{1,1} = λ[,] and n_{0,2} the product.
pub fn strict_from_associative(deg: &[i64], product: &Table, d: &BTreeMap<usize, SVec>, lambda: &Q, mode: Mode) -> HomotopyData {
    let names = |p: &str| deg.iter().enumerate().map(|(i, d)| (format!("{}{}", p, i + 1), *d)).collect();
    let mut h = HomotopyData::new(GradedPair { closed: names("x"), open: names("a") }, mode);
    let n = deg.len();
    let get = |i: usize, j: usize| product.get(&(i, j)).cloned().unwrap_or_default();
    for i in 0..n {
        for j in 0..n {
            let s = Q::sign(-parity(deg[i] * deg[j]));
            let c = svec_scale(&svec_add_scaled(&get(i, j), &s, &get(j, i)), lambda);
            if i <= j {
                h.set_l(&[i, j], c.clone()).expect("graded commutator is antisymmetric");
            }
            if !c.is_empty() {
                h.n.insert((vec![i], vec![j]), c);
            }
            let p = get(i, j);
            if !p.is_empty() {
                h.n.insert((vec![], vec![i, j]), p);
            }
        }
    }
    for (i, v) in d {
        h.l.insert(vec![*i], v.clone());
        h.n.insert((vec![], vec![*i]), v.clone());
    }
    h
}

/// Random values of the right degree for every structure map whose arity lies in `arities`.
pub fn random_tensors<R: Rng>(rng: &mut R, pair: GradedPair, mode: Mode, arities: &[usize]) -> HomotopyData {
    let mut h = HomotopyData::new(pair, mode);
    let (cd, od) = (h.pair.closed_degrees(), h.pair.open_degrees());
    let cf = Cofree::new(cd.iter().map(|d| d + 1).collect(), od.iter().map(|d| d + 1).collect());
    let sum = |v: &[usize], d: &[i64]| v.iter().map(|&i| d[i]).sum::<i64>();
    for &n in arities {
        for m in cf.closed_basis(n) {
            let want = sum(&m, &cd) + n as i64 - 2;
            let t: Vec<usize> = (0..cd.len()).filter(|&y| cd[y] == want).collect();
            let v = super::cofree::random_vec(rng, &t);
            h.set_l(&m, v).expect("admissible arguments");
        }
        for q in 0..=n {
            if q == 0 && (mode == Mode::Shlp || n == 0) {
                continue;
            }
            for m in cf.closed_basis(n - q) {
                for w in cf.words(q) {
                    let want = sum(&m, &cd) + sum(&w, &od) + n as i64 - 2;
                    let t: Vec<usize> = (0..od.len()).filter(|&y| od[y] == want).collect();
                    let v = super::cofree::random_vec(rng, &t);
                    h.set_n(&m, &w, v).expect("admissible arguments");
                }
            }
        }
    }
    h
}

/// Adds ±1 to one random coefficient of one random nonzero structure value.
pub fn perturb<R: Rng>(rng: &mut R, h: &HomotopyData) -> HomotopyData {
    let mut out = h.clone();
    let total = h.l.len() + h.n.len();
    if total == 0 {
        return out;
    }
    let k = rng.gen_range(0..total);
    let bump = |v: &mut SVec, rng: &mut R| {
        let i = rng.gen_range(0..v.len());
        let c = if rng.gen_bool(0.5) { Q::one() } else { Q::int(-1) };
        let (y, _) = v[i];
        *v = svec_add_scaled(v, &c, &vec![(y, Q::one())]);
    };
    if k < h.l.len() {
        let key = h.l.keys().nth(k).unwrap().clone();
        let v = out.l.get_mut(&key).unwrap();
        bump(v, rng);
        if v.is_empty() {
            out.l.remove(&key);
        }
    } else {
        let key = h.n.keys().nth(k - h.l.len()).unwrap().clone();
        let v = out.n.get_mut(&key).unwrap();
        bump(v, rng);
        if v.is_empty() {
            out.n.remove(&key);
        }
    }
    out
}

pub fn sample_pair() -> GradedPair {
    GradedPair::new(&[("x", 0), ("y", 1), ("z", -1)], &[("a", 0), ("b", -1), ("c", 1)])
}

/// Valid and invalid structures with the expected verdict.
pub fn sample_corpus(seed: u64) -> Vec<(String, HomotopyData, bool)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (vdeg, partial, lambda) in [
        (vec![0, 0], vec![], Q::one()),
        (vec![0, 0], vec![], Q::new(-3, 2)),
        (vec![0, 1], vec![(0, 1, Q::one())], Q::one()),
        (vec![0, 1], vec![(0, 1, Q::int(2))], Q::int(3)),
        (vec![1, 0], vec![(1, 0, Q::one())], Q::int(-1)),
        (vec![0, 1, 1], vec![(0, 1, Q::one()), (0, 2, Q::int(-2))], Q::one()),
    ] {
        let (deg, prod, d) = end_algebra(&vdeg, &partial);
        for mode in [Mode::Shlp, Mode::Ocha] {
            let h = strict_from_associative(&deg, &prod, &d, &lambda, mode);
            out.push((format!("End{:?} d={} λ={} {:?}", vdeg, !partial.is_empty(), lambda, mode), h.clone(), true));
            let p = perturb(&mut rng, &h);
            if p != h {
                out.push((format!("perturbed End{:?} {:?}", vdeg, mode), p, false));
            }
        }
    }
    for seed in 0..4 {
        let h = random_tensors(&mut rng, sample_pair(), Mode::Shlp, &[3]);
        out.push((format!("ternary only {}", seed), h, true));
        let h = random_tensors(&mut rng, sample_pair(), if seed % 2 == 0 { Mode::Shlp } else { Mode::Ocha }, &[1, 2, 3, 4]);
        out.push((format!("random {}", seed), h, false));
    }
    out
}
