//! Presented operads: relation ideals, truncated quotients, distributive laws.

use crate::kernel::*;
use crate::treeops::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub gens: Collection,
    pub relations: Vec<Element>,
}

impl Presentation {
    pub fn new(name: &str, gens: Collection, relations: Vec<Element>) -> Presentation {
        Presentation { name: name.into(), gens, relations }
    }
    pub fn free(name: &str, gens: Collection) -> Presentation {
        Presentation::new(name, gens, Vec::new())
    }
    pub fn relations_at(&self, sig: Sig) -> Vec<&Element> {
        self.relations.iter().filter(|r| r.sig == sig).collect()
    }
    pub fn relation_sigs(&self) -> BTreeSet<Sig> {
        self.relations.iter().map(|r| r.sig).collect()
    }
    /// True when every relation lies in weight 2.
    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.terms.keys().all(|t| t.weight() == 2))
    }
}

/// Trees of all weights at a signature, highest weight first.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub sig: Sig,
    pub basis: Basis,
    pub weights: Vec<usize>,
}

impl Ambient {
    pub fn build(e: &Collection, sig: Sig, max_weight: usize) -> Ambient {
        let mut en = Enumerator::new(e);
        let mut trees = Vec::new();
        let mut weights = Vec::new();
        for w in (0..=max_weight).rev() {
            let mut ts = en.trees(sig, w, 0);
            ts.sort();
            weights.extend(std::iter::repeat(w).take(ts.len()));
            trees.extend(ts);
        }
        Ambient { sig, basis: Basis::new(trees), weights }
    }
    pub fn len(&self) -> usize {
        self.basis.len()
    }
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn indices_of_weight(&self, w: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.weights[i] == w).collect()
    }
}

/// Span of all S_n x S_m translates of the given elements, as a module with a basis.
#[derive(Clone, Debug)]
pub struct OrbitModule {
    pub sig: Sig,
    pub elems: Vec<Element>,
    pub rep: Arc<Rep>,
}

pub fn orbit_module(e: &Collection, elems: &[&Element], sig: Sig) -> Option<OrbitModule> {
    if elems.is_empty() {
        return None;
    }
    let pcs = all_perms(sig.n);
    let pos = all_perms(sig.m);
    let mut translates = Vec::new();
    for x in elems {
        for pc in &pcs {
            for po in &pos {
                translates.push(symmetric_act(e, x, pc, po));
            }
        }
    }
    let mut trees: BTreeSet<Node> = BTreeSet::new();
    for t in &translates {
        trees.extend(t.terms.keys().cloned());
    }
    let basis = Basis::new(trees.into_iter().collect());
    let mut ech = Echelon::new();
    for t in &translates {
        ech.insert(&basis.coords(t));
    }
    if ech.rank() == 0 {
        return None;
    }
    let rows = ech.rref_rows();
    let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
    let elems: Vec<Element> = rows.iter().map(|r| basis.element(sig, r)).collect();
    let mut action = Vec::with_capacity(pcs.len() * pos.len());
    for pc in &pcs {
        for po in &pos {
            let imgs = elems
                .iter()
                .map(|b| {
                    let v = basis.coords(&symmetric_act(e, b, pc, po));
                    let m: BTreeMap<usize, Q> = v.iter().map(|(i, c)| (*i, c.clone())).collect();
                    pivots.iter().enumerate().filter_map(|(k, p)| m.get(p).map(|c| (k, c.clone()))).collect::<SVec>()
                })
                .collect();
            action.push(imgs);
        }
    }
    Some(OrbitModule { sig, rep: Arc::new(Rep { sig, dim: elems.len(), action }), elems })
}

/// Generators extended by one placeholder vertex per relation signature.
pub struct Placeholders {
    pub coll: Collection,
    pub first: usize,
    pub modules: Vec<OrbitModule>,
}

impl Placeholders {
    pub fn new(p: &Presentation) -> Placeholders {
        let mut coll = p.gens.clone();
        let first = coll.gens.len();
        let mut modules = Vec::new();
        for sig in p.relation_sigs() {
            let rels = p.relations_at(sig);
            if let Some(m) = orbit_module(&p.gens, &rels, sig) {
                let degree = rels[0].terms.keys().next().map_or(0, |t| t.degree(&p.gens));
                coll.gens.push(Generator::new(&format!("rel{}", modules.len()), sig, degree, Symmetry::Module(m.rep.clone())));
                modules.push(m);
            }
        }
        Placeholders { coll, first, modules }
    }
    pub fn special(&self) -> Vec<bool> {
        (0..self.coll.gens.len()).map(|i| i >= self.first).collect()
    }
    /// Substitutes the placeholder vertex of `t` by its relation element.
    pub fn expand(&self, t: &Node) -> Vec<(Node, Q)> {
        let verts = t.vertices();
        let at = verts.iter().position(|v| v.gen as usize >= self.first).expect("no placeholder");
        let v = verts[at];
        let m = &self.modules[v.gen as usize - self.first];
        let elem: Vec<(Node, Q)> = m.elems[v.dec as usize].terms.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        let deg = koszul_deg(&self.coll);
        substitute_at(&self.coll, t, at, &elem, &deg)
    }
    /// Spanning set of the ideal at `sig`: placeholder trees with `extra` further vertices.
    pub fn ideal_spanning(&self, sig: Sig, extra: std::ops::RangeInclusive<usize>) -> Vec<Vec<(Node, Q)>> {
        let mut en = Enumerator::with_special(&self.coll, self.special());
        let mut out = Vec::new();
        for k in extra {
            for t in en.trees(sig, k + 1, 1) {
                out.push(self.expand(&t));
            }
        }
        out
    }
}

/// The ideal generated by the relations, inside the ambient space at `sig`.
pub fn ideal_at(ph: &Placeholders, amb: &Ambient) -> Echelon {
    let mut ech = Echelon::new();
    let maxw = amb.weights.first().copied().unwrap_or(0);
    for ts in ph.ideal_spanning(amb.sig, 0..=maxw.saturating_sub(1)) {
        ech.insert(&amb.basis.coords_terms(&ts));
    }
    ech
}

/// Weight-`weight` component of the ideal at `sig`, in the sorted weight-`weight` tree basis.
pub fn relation_span(p: &Presentation, sig: Sig, weight: usize) -> (Vec<Node>, Subspace) {
    let ph = Placeholders::new(p);
    let amb = Ambient::build(&p.gens, sig, weight_bound(sig).max(weight));
    let ech = ideal_at(&ph, &amb);
    let idx = amb.indices_of_weight(weight);
    let trees: Vec<Node> = idx.iter().map(|&i| amb.basis.trees[i].clone()).collect();
    let full = Subspace::span(amb.len(), ech.rref_rows());
    let coord = Subspace::span(amb.len(), idx.iter().map(|&i| vec![(i, Q::one())]));
    let inter = full.intersect(&coord);
    let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let sub = Subspace::span(trees.len(), inter.rref_rows().into_iter().map(|r| r.into_iter().map(|(i, c)| (pos[&i], c)).collect()));
    (trees, sub)
}

/// One signature of a truncated quotient operad.
#[derive(Clone, Debug)]
pub struct Cell {
    pub sig: Sig,
    pub amb: Ambient,
    pub ideal: Echelon,
    pub reps: Vec<usize>,
    pub rep_of: HashMap<usize, usize>,
}

impl Cell {
    pub fn build(ph: &Placeholders, e: &Collection, sig: Sig) -> Cell {
        let amb = Ambient::build(e, sig, weight_bound(sig));
        let ideal = ideal_at(ph, &amb);
        let reps: Vec<usize> = (0..amb.len()).filter(|&i| !ideal.is_pivot(i)).collect();
        let rep_of = reps.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Cell { sig, amb, ideal, reps, rep_of }
    }
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
    pub fn rep_tree(&self, k: usize) -> &Node {
        &self.amb.basis.trees[self.reps[k]]
    }
    pub fn rep_element(&self, k: usize) -> Element {
        Element::from_tree(self.sig, self.rep_tree(k).clone())
    }
    pub fn project_vec(&self, v: &SVec) -> SVec {
        self.ideal.reduce(v).into_iter().map(|(i, c)| (self.rep_of[&i], c)).collect()
    }
    pub fn project_terms(&self, ts: &[(Node, Q)]) -> SVec {
        self.project_vec(&self.amb.basis.coords_terms(ts))
    }
    pub fn project(&self, x: &Element) -> SVec {
        self.project_vec(&self.amb.basis.coords(x))
    }
    pub fn in_ideal(&self, x: &Element) -> bool {
        self.project(x).is_empty()
    }
}

/// The quotient operad restricted to signatures with at most `max_inputs` inputs.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub pres: Presentation,
    pub max_inputs: usize,
    pub cells: BTreeMap<Sig, Cell>,
}

impl Truncation {
    pub fn build(p: &Presentation, max_inputs: usize) -> Truncation {
        let ph = Placeholders::new(p);
        let cells = Sig::all_up_to(max_inputs).into_iter().map(|s| (s, Cell::build(&ph, &p.gens, s))).collect();
        Truncation { pres: p.clone(), max_inputs, cells }
    }
    pub fn cell(&self, sig: Sig) -> &Cell {
        self.cells.get(&sig).unwrap_or_else(|| panic!("signature {} outside truncation", sig))
    }
    pub fn dim(&self, sig: Sig) -> usize {
        self.cell(sig).dim()
    }
    /// Composition of quotient basis elements, in quotient coordinates.
    pub fn compose(&self, xs: Sig, xi: usize, slot: Label, ys: Sig, yi: usize) -> (Sig, SVec) {
        let e = &self.pres.gens;
        let deg = koszul_deg(e);
        let (sig, ts) = graft_trees(e, self.cell(xs).rep_tree(xi), xs, slot, self.cell(ys).rep_tree(yi), ys, &deg);
        (sig, self.cell(sig).project_terms(&ts))
    }
    /// Right action of S_n x S_m on the quotient basis at `sig`.
    pub fn rep(&self, sig: Sig) -> Rep {
        let c = self.cell(sig);
        let e = &self.pres.gens;
        let deg = koszul_deg(e);
        let mut action = Vec::new();
        for pc in all_perms(sig.n) {
            for po in all_perms(sig.m) {
                action.push((0..c.dim()).map(|k| c.project_terms(&act_tree(e, c.rep_tree(k), &pc, &po, &deg))).collect());
            }
        }
        Rep { sig, dim: c.dim(), action }
    }
    /// Quotient dimension split by Koszul degree.
    pub fn dims_by_degree(&self, sig: Sig) -> BTreeMap<i64, usize> {
        let c = self.cell(sig);
        let mut m = BTreeMap::new();
        for k in 0..c.dim() {
            *m.entry(c.rep_tree(k).degree(&self.pres.gens)).or_insert(0) += 1;
        }
        m
    }
}

pub fn quotient_dims(p: &Presentation, max_inputs: usize) -> BTreeMap<Sig, usize> {
    let t = Truncation::build(p, max_inputs);
    t.cells.iter().map(|(s, c)| (*s, c.dim())).collect()
}

/// Checks that each relation is homogeneous in degree and lies in one signature.
pub fn relation_degrees_ok(p: &Presentation) -> bool {
    p.relations.iter().all(|r| {
        let ds: BTreeSet<i64> = r.terms.keys().map(|t| t.degree(&p.gens)).collect();
        ds.len() <= 1
    })
}

// ---------------------------------------------------------------------------
// Quadratic-linear conditions

#[derive(Clone, Debug, Default)]
pub struct QlReport {
    pub ql1: bool,
    pub ql2: bool,
    pub ql1_witness: Option<String>,
    pub ql2_witness: Option<String>,
    pub checked: Vec<Sig>,
}

/// ql1: no nonzero combination of relations lies in weight 1.
/// ql2: (R o E + E o R) cut down to weight <= 2 stays inside R, at every signature with <= `max_inputs` inputs.
pub fn ql_conditions(p: &Presentation, max_inputs: usize) -> QlReport {
    let ph = Placeholders::new(p);
    let mut rep = QlReport { ql1: true, ql2: true, ..Default::default() };
    for m in &ph.modules {
        let amb = Ambient::build(&p.gens, m.sig, weight_bound(m.sig));
        let mut ech = Echelon::new();
        for x in &m.elems {
            ech.insert(&amb.basis.coords(x));
        }
        for r in ech.rref_rows() {
            if amb.weights[r[0].0] <= 1 {
                rep.ql1 = false;
                rep.ql1_witness.get_or_insert_with(|| amb.basis.element(m.sig, &r).display(&p.gens));
            }
        }
    }
    for sig in Sig::all_up_to(max_inputs) {
        let amb = Ambient::build(&p.gens, sig, weight_bound(sig));
        let mut v = Echelon::new();
        for ts in ph.ideal_spanning(sig, 1..=1) {
            v.insert(&amb.basis.coords_terms(&ts));
        }
        if v.rank() == 0 {
            continue;
        }
        rep.checked.push(sig);
        let mut r = Echelon::new();
        for m in ph.modules.iter().filter(|m| m.sig == sig) {
            for x in &m.elems {
                r.insert(&amb.basis.coords(x));
            }
        }
        for row in v.rref_rows() {
            if amb.weights[row[0].0] <= 2 && !r.contains(&row) {
                rep.ql2 = false;
                rep.ql2_witness.get_or_insert_with(|| format!("{}: {}", sig, amb.basis.element(sig, &row).display(&p.gens)));
            }
        }
    }
    rep
}

/// Weight-2 part of every relation: the quadratic presentation qP.
pub fn quadratic_part(p: &Presentation) -> Presentation {
    let rels = p
        .relations
        .iter()
        .map(|r| {
            let mut x = Element::zero(r.sig);
            for (t, c) in &r.terms {
                if t.weight() == 2 {
                    x.add_term(t.clone(), c);
                }
            }
            x
        })
        .filter(|x| !x.is_zero())
        .collect();
    Presentation::new(&format!("q{}", p.name), p.gens.clone(), rels)
}

/// Compares S-spans of relations of two presentations (same generators) at every relation signature.
pub fn same_relation_span(a: &Presentation, b: &Presentation) -> Result<(), Sig> {
    let sigs: BTreeSet<Sig> = a.relation_sigs().union(&b.relation_sigs()).copied().collect();
    for sig in sigs {
        let amb = Ambient::build(&a.gens, sig, weight_bound(sig));
        let span = |p: &Presentation| {
            let rels = p.relations_at(sig);
            let mut s = Subspace::zero(amb.len());
            if let Some(m) = orbit_module(&p.gens, &rels, sig) {
                for x in &m.elems {
                    s.add(&amb.basis.coords(x));
                }
            }
            s
        };
        if span(a) != span(b) {
            return Err(sig);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Distributive laws

/// Rewriting rules moving every mixed weight-2 tree into outer-over-inner normal form.
/// Rules are written over the outer generators followed by the inner ones.
#[derive(Clone, Debug)]
pub struct DistributiveLaw {
    pub outer: Presentation,
    pub inner: Presentation,
    pub rules: Vec<(Element, Element)>,
}

impl DistributiveLaw {
    /// The operad F(E_P + E_Q) / (R_P, R_Q, x - law(x)).
    pub fn law_presentation(&self) -> Presentation {
        let gens = self.combined();
        let shift = self.outer.gens.gens.len() as u16;
        let conv = |x: &Element, off: u16| {
            let mut y = Element::zero(x.sig);
            for (t, c) in &x.terms {
                y.add_term(shift_gens(t, off), c);
            }
            y
        };
        let mut rels: Vec<Element> = self.outer.relations.iter().map(|r| conv(r, 0)).collect();
        rels.extend(self.inner.relations.iter().map(|r| conv(r, shift)));
        for (lhs, rhs) in &self.rules {
            let mut r = lhs.clone();
            r.add(rhs, &Q::int(-1));
            rels.push(r);
        }
        Presentation::new(&format!("{}v{}", self.outer.name, self.inner.name), gens, rels)
    }

    pub fn combined(&self) -> Collection {
        let mut gens = self.outer.gens.clone();
        gens.gens.extend(self.inner.gens.gens.iter().cloned());
        gens
    }

    /// Dimensions of the composite outer o inner: inner operations on blocks of inputs feeding one outer operation.
    pub fn composite_dims(&self, max_inputs: usize) -> BTreeMap<Sig, usize> {
        let tp = Truncation::build(&self.outer, max_inputs);
        let tq = Truncation::build(&self.inner, max_inputs);
        let qdim = |s: Sig| tq.dim(s);
        let pdim = |s: Sig| tp.dim(s);
        let mut out = BTreeMap::new();
        for sig in Sig::all_up_to(max_inputs) {
            let labels: Vec<Label> = (0..sig.n).map(Label::c).chain((0..sig.m).map(Label::o)).collect();
            let mut total = 0usize;
            for blocks in set_partitions(&labels) {
                let mut options: Vec<Vec<(Color, usize)>> = Vec::new();
                for b in &blocks {
                    let nc = b.iter().filter(|l| l.color == Color::Closed).count();
                    let no = b.len() - nc;
                    let mut opts = Vec::new();
                    if no == 0 && qdim(Sig::c(nc)) > 0 {
                        opts.push((Color::Closed, qdim(Sig::c(nc))));
                    }
                    if qdim(Sig::o(nc, no)) > 0 {
                        opts.push((Color::Open, qdim(Sig::o(nc, no))));
                    }
                    options.push(opts);
                }
                let mut choices: Vec<(usize, usize, usize)> = vec![(0, 0, 1)];
                for opts in &options {
                    let mut next = Vec::new();
                    for (c, o, w) in &choices {
                        for (col, d) in opts {
                            match col {
                                Color::Closed => next.push((c + 1, *o, w * d)),
                                Color::Open => next.push((*c, o + 1, w * d)),
                            }
                        }
                    }
                    choices = next;
                }
                for (c, o, w) in choices {
                    let ps = Sig::new(c, o, sig.out);
                    if ps.is_valid() {
                        total += w * pdim(ps);
                    }
                }
            }
            out.insert(sig, total);
        }
        out
    }
}

fn shift_gens(t: &Node, off: u16) -> Node {
    match t {
        Node::Leaf(l) => Node::Leaf(*l),
        Node::Vert(v) => Node::Vert(Vertex { gen: v.gen + off, dec: v.dec, kids: v.kids.iter().map(|k| shift_gens(k, off)).collect() }),
    }
}
