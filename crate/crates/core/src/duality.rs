//! Quadratic duality: the weight-2 pairing, orthogonal relations, the linear part of
//! quadratic-linear presentations and the induced differential on the dual, GK series.

use crate::kernel::*;
use crate::presentation::*;
use crate::treeops::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Dual generators: degree -d + k - 2 for arity k, sign-twisted symmetry.
pub fn dual_collection(e: &Collection, names: Option<&[&str]>) -> Collection {
    Collection::new(
        e.gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let name = names.map(|n| n[i].to_string()).unwrap_or_else(|| format!("{}_dual", g.name));
                let k = g.sig.arity() as i64;
                Generator { name, sig: g.sig, degree: -g.degree + k - 2, sym: g.sym.twisted() }
            })
            .collect(),
    )
}

/// Leaves in slot order and, for each vertex in that traversal, (generator, arity, slot in parent).
fn slot_walk(e: &Collection, t: &Node, leaves: &mut Vec<Label>, verts: &mut Vec<(u16, usize, usize)>, slot: usize) {
    match t {
        Node::Leaf(l) => leaves.push(*l),
        Node::Vert(v) => {
            let g = e.gen(v.gen);
            verts.push((v.gen, g.sig.arity(), slot));
            for (s, &k) in g.slot_to_child(v.dec as usize).iter().enumerate() {
                slot_walk(e, &v.kids[k], leaves, verts, s);
            }
        }
    }
}

fn slot_shape(e: &Collection, t: &Node) -> String {
    match t {
        Node::Leaf(l) => l.to_string(),
        Node::Vert(v) => {
            let g = e.gen(v.gen);
            let inner: Vec<String> = g.slot_to_child(v.dec as usize).iter().map(|&k| slot_shape(e, &v.kids[k])).collect();
            format!("{}({})", v.gen, inner.join(","))
        }
    }
}

/// Pairing of a tree over E with a tree over the dual generators (same generator indices),
/// for weight at most 2: nonzero only when the slot-ordered shapes agree. The sign is that of the
/// leaf reading word, times (-1)^((s-1)(k2-1)) for an inner vertex of arity k2 in slot s, times
/// (-1)^((k1-1)|inner dual degree|) for an outer vertex of arity k1.
pub fn gk_pair_trees(e: &Collection, ed: &Collection, a: &Node, b: &Node, sig: Sig) -> Q {
    if slot_shape(e, a) != slot_shape(ed, b) {
        return Q::zero();
    }
    let mut leaves = Vec::new();
    let mut verts = Vec::new();
    slot_walk(e, a, &mut leaves, &mut verts, 0);
    assert!(verts.len() <= 2, "pairing is defined on weight <= 2");
    let word: Vec<usize> = leaves
        .iter()
        .map(|l| match l.color {
            Color::Closed => l.idx as usize,
            Color::Open => sig.n + l.idx as usize,
        })
        .collect();
    let mut s = perm_sign(&word);
    if verts.len() == 2 {
        let (_, k1, _) = verts[0];
        let (inner, k2, slot) = verts[1];
        if slot % 2 == 1 && k2 % 2 == 0 {
            s = -s;
        }
        if (k1 - 1) % 2 == 1 && ed.gen(inner).degree.rem_euclid(2) == 1 {
            s = -s;
        }
    }
    Q::sign(s)
}

pub fn gk_pair(e: &Collection, ed: &Collection, a: &Element, b: &Element) -> Q {
    let mut acc = Q::zero();
    for (ta, ca) in &a.terms {
        if let Some(cb) = b.terms.get(ta) {
            acc += &(&(ca * cb) * &gk_pair_trees(e, ed, ta, ta, a.sig));
        }
    }
    acc
}

/// Signatures at which weight-2 trees exist.
pub fn weight_two_sigs(e: &Collection) -> Vec<Sig> {
    let maxar = e.gens.iter().map(|g| g.sig.arity()).max().unwrap_or(0);
    Sig::all_up_to((2 * maxar).saturating_sub(1).max(1)).into_iter().filter(|&s| !enumerate_basis(e, s, 2).is_empty()).collect()
}

fn sorted_weight2(e: &Collection, sig: Sig) -> Basis {
    let mut ts = enumerate_basis(e, sig, 2);
    ts.sort();
    Basis::new(ts)
}

/// S-span of the weight-2 parts of the relations at `sig`, in the sorted weight-2 basis.
pub fn weight2_relation_space(p: &Presentation, sig: Sig, basis: &Basis) -> Subspace {
    let mut s = Subspace::zero(basis.len());
    let q = quadratic_part(p);
    if let Some(m) = orbit_module(&q.gens, &q.relations_at(sig), sig) {
        for x in &m.elems {
            s.add(&basis.coords(x));
        }
    }
    s
}

fn apply_gen_signs(t: &Node, signs: &[Q]) -> Q {
    let mut c = Q::one();
    for v in t.vertices() {
        c = &c * &signs[v.gen as usize];
    }
    c
}

#[derive(Clone, Debug)]
pub struct DualOptions {
    pub name: String,
    pub names: Option<Vec<String>>,
    /// The dual basis element of generator i is `gen_signs[i]` times the named dual generator.
    pub gen_signs: Vec<Q>,
}

impl DualOptions {
    pub fn plain(p: &Presentation) -> DualOptions {
        DualOptions { name: format!("{}_dual", p.name), names: None, gen_signs: vec![Q::one(); p.gens.gens.len()] }
    }
    pub fn named(p: &Presentation, name: &str, names: &[&str]) -> DualOptions {
        DualOptions { name: name.into(), names: Some(names.iter().map(|s| s.to_string()).collect()), gen_signs: vec![Q::one(); p.gens.gens.len()] }
    }
}

#[derive(Clone, Debug)]
pub struct SigDuality {
    pub sig: Sig,
    pub free_dim: usize,
    pub rel_dim: usize,
    pub perp_dim: usize,
}

/// Quadratic dual of the quadratic part of `p`, with per-signature dimension data.
pub fn quadratic_dual(p: &Presentation, opts: &DualOptions) -> (Presentation, Vec<SigDuality>) {
    let names: Option<Vec<&str>> = opts.names.as_ref().map(|v| v.iter().map(|s| s.as_str()).collect());
    let ed = dual_collection(&p.gens, names.as_deref());
    let mut rels = Vec::new();
    let mut info = Vec::new();
    for sig in weight_two_sigs(&p.gens) {
        let basis = sorted_weight2(&p.gens, sig);
        let r = weight2_relation_space(p, sig, &basis);
        let gram: Vec<Q> = basis.trees.iter().map(|t| gk_pair_trees(&p.gens, &ed, t, t, sig)).collect();
        let mut g = Matrix::zeros(basis.len(), basis.len());
        for (i, x) in gram.iter().enumerate() {
            g.data[i][i] = x.clone();
        }
        let perp = r.orthogonal_complement(Some(&g));
        info.push(SigDuality { sig, free_dim: basis.len(), rel_dim: r.dim(), perp_dim: perp.dim() });
        for row in perp.rref_rows() {
            let mut x = Element::zero(sig);
            for (i, c) in &row {
                let t = &basis.trees[*i];
                x.add_term(t.clone(), &(c * &apply_gen_signs(t, &opts.gen_signs)));
            }
            rels.push(x);
        }
    }
    (Presentation::new(&opts.name, ed, rels), info)
}

/// Weight-2 relation spans of two presentations over identical generators agree at every signature.
pub fn compare_weight2_spans(a: &Presentation, b: &Presentation) -> Result<usize, Sig> {
    let mut count = 0;
    for sig in weight_two_sigs(&a.gens) {
        let basis = sorted_weight2(&a.gens, sig);
        let sa = weight2_relation_space(a, sig, &basis);
        let sb = weight2_relation_space(b, sig, &basis);
        if sa != sb {
            return Err(sig);
        }
        count += 1;
    }
    Ok(count)
}

/// The map from quadratic relations to generators: phi(q(r)) = -(linear part of r).
pub fn extract_phi(p: &Presentation) -> BTreeMap<Sig, Vec<(Element, Element)>> {
    let ph = Placeholders::new(p);
    let mut out = BTreeMap::new();
    for m in &ph.modules {
        let amb = Ambient::build(&p.gens, m.sig, 2);
        let mut ech = Echelon::new();
        for x in &m.elems {
            ech.insert(&amb.basis.coords(x));
        }
        let mut pairs = Vec::new();
        for row in ech.rref_rows() {
            let mut quad = Element::zero(m.sig);
            let mut lin = Element::zero(m.sig);
            for (i, c) in &row {
                let t = amb.basis.trees[*i].clone();
                match amb.weights[*i] {
                    2 => quad.add_term(t, c),
                    _ => lin.add_term(t, &(-c)),
                }
            }
            if !quad.is_zero() {
                pairs.push((quad, lin));
            }
        }
        out.insert(m.sig, pairs);
    }
    out
}

/// Differential on the dual generators induced by phi: <d xi, x> = c <xi, phi(x)> for x in qR.
/// Entries are None for generators with zero differential.
pub fn dual_differential(p: &Presentation, dual: &Presentation, opts: &DualOptions, c: &Q) -> Vec<Option<Element>> {
    let phi = extract_phi(p);
    let e = &p.gens;
    let ed = &dual.gens;
    let mut out = Vec::new();
    for (gi, g) in ed.gens.iter().enumerate() {
        let sig = g.sig;
        let xi = Node::corolla(ed, gi as u16);
        let Some(pairs) = phi.get(&sig) else {
            out.push(None);
            continue;
        };
        let basis = sorted_weight2(e, sig);
        let eps: Vec<Q> = basis.trees.iter().map(|t| gk_pair_trees(e, ed, t, t, sig)).collect();
        let mut rows = Vec::new();
        for (x, fx) in pairs {
            let v = basis.coords(x);
            let mut row = vec![Q::zero(); basis.len() + 1];
            for (i, a) in &v {
                row[*i] = a * &eps[*i];
            }
            let mut rhs = Q::zero();
            for (t, a) in &fx.terms {
                if *t == xi {
                    rhs += &(a * &gk_pair_trees(e, ed, t, &xi, sig));
                }
            }
            row[basis.len()] = c * &rhs;
            rows.push(row);
        }
        let (r, piv) = Matrix::from_rows(basis.len() + 1, rows).rref();
        assert!(!piv.contains(&basis.len()), "inconsistent linear part at {}", sig);
        let mut d = Element::zero(sig);
        for (k, &pc) in piv.iter().enumerate() {
            let val = &r.data[k][basis.len()];
            let t = &basis.trees[pc];
            d.add_term(t.clone(), &(val * &apply_gen_signs(t, &opts.gen_signs)));
        }
        let d = d.scaled(&opts.gen_signs[gi]);
        out.push(if d.is_zero() { None } else { Some(d) });
    }
    out
}

// ---------------------------------------------------------------------------
// Generating series

/// Truncated power series in one variable: coefficient of t^k at index k.
#[derive(Clone, Debug, PartialEq)]
pub struct Series(pub Vec<Q>);

impl Series {
    pub fn exp_gen(dims: &[usize]) -> Series {
        Series(dims.iter().enumerate().map(|(k, &d)| Q::new(d as i64, factorial(k) as i64)).collect())
    }
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }
    fn mul(&self, o: &Series) -> Series {
        let n = self.0.len();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] += &(&self.0[i] * &o.0[j]);
            }
        }
        Series(out)
    }
    /// self(g(t)) for g without constant term.
    pub fn compose(&self, g: &Series) -> Series {
        let n = self.0.len().min(g.0.len());
        assert!(g.0[0].is_zero());
        let mut out = vec![Q::zero(); n];
        let mut pw = Series({
            let mut v = vec![Q::zero(); n];
            v[0] = Q::one();
            v
        });
        let g = Series(g.0[..n].to_vec());
        for k in 0..n {
            for i in 0..n {
                out[i] += &(&self.0[k] * &pw.0[i]);
            }
            pw = pw.mul(&g);
        }
        Series(out)
    }
    /// t -> -s(-t)
    pub fn odd_reflect(&self) -> Series {
        Series(self.0.iter().enumerate().map(|(k, c)| if k % 2 == 0 { -c } else { c.clone() }).collect())
    }
}

/// Exponential generating series in closed and open arity.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoVarSeries {
    pub coeffs: BTreeMap<(usize, usize), Q>,
}

impl TwoVarSeries {
    pub fn from_dims(dims: &BTreeMap<Sig, usize>, out: Color) -> TwoVarSeries {
        let coeffs = dims
            .iter()
            .filter(|(s, d)| s.out == out && **d > 0)
            .map(|(s, &d)| ((s.n, s.m), Q::new(d as i64, factorial(s.n) as i64)))
            .collect();
        TwoVarSeries { coeffs }
    }
}

#[derive(Clone, Debug)]
pub struct GkReport {
    pub holds: bool,
    pub order: usize,
    pub composite: Vec<Q>,
    pub first_failure: Option<usize>,
}

/// Checks g_P(-g_Q(-t)) = t + O(t^(order+1)) for dimension sequences indexed by arity (index 0 unused).
pub fn gk_check(p_dims: &[usize], q_dims: &[usize], order: usize) -> GkReport {
    let mut a = vec![0; order + 1];
    let mut b = vec![0; order + 1];
    for k in 1..=order {
        a[k] = p_dims.get(k).copied().unwrap_or(0);
        b[k] = q_dims.get(k).copied().unwrap_or(0);
    }
    let gp = Series::exp_gen(&a);
    let gq = Series::exp_gen(&b);
    let comp = gp.compose(&gq.odd_reflect());
    let first_failure = (0..=order).find(|&k| comp.0[k] != if k == 1 { Q::one() } else { Q::zero() });
    GkReport { holds: first_failure.is_none(), order, composite: comp.0, first_failure }
}

/// Restriction to closed generators and closed relations.
pub fn closed_part(p: &Presentation) -> Presentation {
    let keep: Vec<usize> = (0..p.gens.gens.len()).filter(|&i| p.gens.gens[i].sig.out == Color::Closed).collect();
    let map: BTreeMap<u16, u16> = keep.iter().enumerate().map(|(k, &i)| (i as u16, k as u16)).collect();
    let gens = Collection::new(keep.iter().map(|&i| p.gens.gens[i].clone()).collect());
    fn remap(t: &Node, map: &BTreeMap<u16, u16>) -> Node {
        match t {
            Node::Leaf(l) => Node::Leaf(*l),
            Node::Vert(v) => Node::Vert(Vertex { gen: map[&v.gen], dec: v.dec, kids: v.kids.iter().map(|k| remap(k, map)).collect() }),
        }
    }
    let rels = p
        .relations
        .iter()
        .filter(|r| r.sig.out == Color::Closed)
        .map(|r| {
            let mut x = Element::zero(r.sig);
            for (t, c) in &r.terms {
                x.add_term(remap(t, &map), c);
            }
            x
        })
        .collect();
    Presentation::new(&format!("{}_closed", p.name), gens, rels)
}

/// dim P(n,0;c) for n = 0..=order (index 0 is 0, index 1 is the identity).
pub fn closed_dims(p: &Presentation, order: usize) -> Vec<usize> {
    let cp = closed_part(p);
    let ph = Placeholders::new(&cp);
    let mut out = vec![0; order + 1];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = Cell::build(&ph, &cp.gens, Sig::c(n)).dim();
    }
    out
}

// ---------------------------------------------------------------------------
// Cobar construction on the dual of a truncated operad

/// sgn(sc)sgn(so) times the contragredient of `r`.
pub fn dual_rep(r: &Rep) -> Rep {
    let sig = r.sig;
    let mut action = Vec::with_capacity(r.action.len());
    for pc in all_perms(sig.n) {
        for po in all_perms(sig.m) {
            let inv = &r.action[Rep::pair_rank(sig, &perm_inverse(&pc), &perm_inverse(&po))];
            let s = Q::sign(perm_sign(&pc) * perm_sign(&po));
            let mut cols: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); r.dim];
            for (b, img) in inv.iter().enumerate() {
                for (a, c) in img {
                    cols[*a].insert(b, c * &s);
                }
            }
            action.push(cols.into_iter().map(svec_from_map).collect());
        }
    }
    Rep { sig, dim: r.dim, action }
}

fn cobar_name(sig: Sig) -> String {
    format!("s{}{}{}", sig.n, sig.m, sig.out.letter())
}

/// Free operad on s^-1 of the dual of the augmentation ideal of a truncation, with the
/// derivation dual to binary composition.
#[derive(Clone, Debug)]
pub struct Cobar {
    pub pres: Presentation,
    /// generator collection of the augmentation ideal (one module per signature)
    pub source: Collection,
    /// image of each decoration of each generator
    pub images: Vec<Vec<Element>>,
}

fn is_unit_sig(sig: Sig) -> bool {
    sig.arity() == 1 && sig.count(sig.out) == 1
}

/// Value in the truncation of a tree whose vertices are quotient basis elements.
pub fn evaluate_in(t: &Truncation, source: &Collection, tree: &Node, sig: Sig) -> SVec {
    fn to_raw(t: &Truncation, source: &Collection, node: &Node, next: &mut usize) -> Raw {
        match node {
            Node::Leaf(l) => Raw::Leaf(*l),
            Node::Vert(v) => {
                let s = source.gen(v.gen).sig;
                let mut kids: Vec<Option<Raw>> = v.kids.iter().map(|k| Some(to_raw(t, source, k, next))).collect();
                let r = Raw::from_node(t.cell(s).rep_tree(v.dec as usize), next);
                r.graft_leaves(&mut |l| {
                    let slot = match l.color {
                        Color::Closed => l.idx as usize,
                        Color::Open => s.n + l.idx as usize,
                    };
                    kids[slot].take().expect("slot used twice")
                })
            }
        }
    }
    let e = &t.pres.gens;
    let mut next = 0;
    let raw = to_raw(t, source, tree, &mut next);
    let order: Vec<usize> = (0..next).collect();
    let ts = canonicalize(e, &raw, &order, &koszul_deg(e));
    t.cell(sig).project_terms(&ts)
}

/// Cobar construction of the suspended linear dual of `t`, on all signatures of `t`.
/// Generator degrees are arity - 2; `c` is the global sign of the differential.
pub fn cobar_truncate(t: &Truncation, c: &Q) -> Cobar {
    let mut src = Vec::new();
    for (sig, cell) in &t.cells {
        if cell.dim() == 0 || is_unit_sig(*sig) {
            continue;
        }
        src.push(Generator::new(&cobar_name(*sig), *sig, 0, Symmetry::Module(Arc::new(t.rep(*sig)))));
    }
    let source = Collection::new(src);
    let dual = Collection::new(
        source
            .gens
            .iter()
            .map(|g| {
                let Symmetry::Module(r) = &g.sym else { unreachable!() };
                Generator::new(&g.name, g.sig, g.sig.arity() as i64 - 2, Symmetry::Module(Arc::new(dual_rep(r))))
            })
            .collect(),
    );
    let mut images = Vec::new();
    for g in &source.gens {
        let sig = g.sig;
        let mut cols: Vec<Element> = (0..g.dim()).map(|_| Element::zero(sig)).collect();
        for tree in enumerate_basis(&source, sig, 2) {
            let eps = gk_pair_trees(&source, &dual, &tree, &tree, sig);
            for (b, v) in evaluate_in(t, &source, &tree, sig) {
                cols[b].add_term(tree.clone(), &(&(&v * &eps) * c));
            }
        }
        images.push(cols);
    }
    Cobar { pres: Presentation::free(&format!("cobar({})", t.pres.name), dual), source, images }
}
