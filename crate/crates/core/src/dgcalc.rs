//! Derivations on truncated operads, d^2 checks and homology.

use crate::kernel::*;
use crate::presentation::*;
use crate::treeops::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DgError {
    #[error("image of {gen} has degree {got}, expected {want}")]
    Degree { gen: String, got: i64, want: i64 },
    #[error("image of {gen} lives in {got}, expected {want}")]
    Signature { gen: String, got: Sig, want: Sig },
    #[error("derivation does not preserve the relations at {sig}: d({rel}) = {image}")]
    IdealNotStable { sig: Sig, rel: String, image: String },
    #[error("d^2 != 0 at {sig} on {tree}: {value}")]
    NotSquareZero { sig: Sig, tree: String, value: String },
}

/// A degree -1 derivation given on generators, each image written in the generator's slot labels.
/// Module generators carry one image per decoration in `per_dec`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub images: Vec<Option<Element>>,
    pub per_dec: BTreeMap<u16, Vec<Element>>,
}

impl Derivation {
    pub fn zero(e: &Collection) -> Derivation {
        Derivation { images: vec![None; e.gens.len()], per_dec: BTreeMap::new() }
    }
    pub fn from_images(images: Vec<Option<Element>>) -> Derivation {
        Derivation { images, per_dec: BTreeMap::new() }
    }
    /// Derivation on a free module-generated operad, one image per decoration.
    pub fn from_module_images(images: Vec<Vec<Element>>) -> Derivation {
        let n = images.len();
        Derivation { images: vec![None; n], per_dec: images.into_iter().enumerate().map(|(i, v)| (i as u16, v)).collect() }
    }
    fn image(&self, v: &Vertex) -> Option<&Element> {
        match self.per_dec.get(&v.gen) {
            Some(cols) => cols.get(v.dec as usize).filter(|x| !x.is_zero()),
            None => self.images[v.gen as usize].as_ref(),
        }
    }
    pub fn check(&self, e: &Collection) -> Result<(), DgError> {
        let all = self.images.iter().enumerate().map(|(i, x)| (i, x.as_ref())).chain(self.per_dec.iter().flat_map(|(i, v)| v.iter().map(move |x| (*i as usize, Some(x)))));
        for (i, img) in all {
            let g = &e.gens[i];
            if let Some(x) = img {
                if x.sig != g.sig {
                    return Err(DgError::Signature { gen: g.name.clone(), got: x.sig, want: g.sig });
                }
                for t in x.terms.keys() {
                    let d = t.degree(e);
                    if d != g.degree - 1 {
                        return Err(DgError::Degree { gen: g.name.clone(), got: d, want: g.degree - 1 });
                    }
                }
            }
        }
        Ok(())
    }
}

/// d(t) = sum over vertices v of (-1)^(degrees before v) t with v replaced by d(v).
pub fn apply_derivation_tree(e: &Collection, d: &Derivation, t: &Node) -> Vec<(Node, Q)> {
    let deg = koszul_deg(e);
    let verts = t.vertices();
    let mut before = 0i64;
    let mut out = Vec::new();
    for (at, v) in verts.iter().enumerate() {
        if let Some(img) = d.image(v) {
            let s = Q::sign(if before.rem_euclid(2) == 0 { 1 } else { -1 });
            let terms: Vec<(Node, Q)> = img.terms.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
            for (u, c) in substitute_at(e, t, at, &terms, &deg) {
                out.push((u, &c * &s));
            }
        }
        before += e.gen(v.gen).degree;
    }
    out
}

pub fn apply_derivation(e: &Collection, d: &Derivation, x: &Element) -> Element {
    let mut out = Element::zero(x.sig);
    for (t, c) in &x.terms {
        out.add_terms(apply_derivation_tree(e, d, t), c);
    }
    out
}

/// A graded vector space with a degree -1 differential given by columns.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    pub dims: BTreeMap<i64, usize>,
    /// d[k][i] = image of basis vector i of degree k, in degree k-1 coordinates.
    pub d: BTreeMap<i64, Vec<SVec>>,
}

impl ChainComplex {
    pub fn rank(&self, k: i64) -> usize {
        self.d.get(&k).map_or(0, |cols| sparse_rank(cols.iter().cloned()))
    }
    pub fn homology(&self) -> BTreeMap<i64, usize> {
        let ranks: BTreeMap<i64, usize> = self.dims.keys().map(|&k| (k, self.rank(k))).collect();
        self.dims
            .iter()
            .map(|(&k, &n)| {
                let out = ranks.get(&k).copied().unwrap_or(0);
                let inc = ranks.get(&(k + 1)).copied().unwrap_or(0);
                (k, n - out - inc)
            })
            .collect()
    }
    /// First basis vector whose image under d^2 is nonzero, with that image.
    pub fn square_defect(&self) -> Option<(i64, usize, SVec)> {
        for (&k, cols) in &self.d {
            let Some(next) = self.d.get(&(k - 1)) else { continue };
            for (i, col) in cols.iter().enumerate() {
                let mut acc: SVec = Vec::new();
                for (j, c) in col {
                    acc = svec_add_scaled(&acc, c, &next[*j]);
                }
                if !acc.is_empty() {
                    return Some((k, i, acc));
                }
            }
        }
        None
    }
    pub fn euler_chains(&self) -> i64 {
        self.dims.iter().map(|(k, n)| if k % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }
}

/// One signature of a dg truncation: quotient basis split by degree and the differential.
#[derive(Clone, Debug)]
pub struct DgCell {
    pub sig: Sig,
    pub degree_of: Vec<i64>,
    /// position of each basis element inside its degree block
    pub pos: Vec<usize>,
    pub by_degree: BTreeMap<i64, Vec<usize>>,
    /// image of each basis element, in quotient coordinates
    pub d: Vec<SVec>,
}

impl DgCell {
    pub fn complex(&self) -> ChainComplex {
        let mut cc = ChainComplex::default();
        for (&k, members) in &self.by_degree {
            cc.dims.insert(k, members.len());
            let cols = members.iter().map(|&i| self.d[i].iter().map(|(j, c)| (self.pos[*j], c.clone())).collect::<Vec<_>>()).map(sort_svec).collect();
            cc.d.insert(k, cols);
        }
        cc
    }
}

fn sort_svec(mut v: SVec) -> SVec {
    v.sort_by_key(|(i, _)| *i);
    v
}

#[derive(Clone, Debug)]
pub struct DgTruncation {
    pub trunc: Truncation,
    pub deriv: Derivation,
    pub cells: BTreeMap<Sig, DgCell>,
}

/// Extends generator images to a derivation on every cell of the truncation.
pub fn extend_derivation(t: Truncation, d: Derivation) -> Result<DgTruncation, DgError> {
    let e = t.pres.gens.clone();
    d.check(&e)?;
    let mut cells = BTreeMap::new();
    for (sig, cell) in &t.cells {
        let n = cell.dim();
        let degree_of: Vec<i64> = (0..n).map(|k| cell.rep_tree(k).degree(&e)).collect();
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut pos = vec![0; n];
        for (k, &deg) in degree_of.iter().enumerate() {
            let v = by_degree.entry(deg).or_default();
            pos[k] = v.len();
            v.push(k);
        }
        let dcols: Vec<SVec> = (0..n).map(|k| cell.project_terms(&apply_derivation_tree(&e, &d, cell.rep_tree(k)))).collect();
        for row in cell.ideal.rref_rows() {
            let x = cell.amb.basis.element(*sig, &row);
            let dx = apply_derivation(&e, &d, &x);
            if !cell.project(&dx).is_empty() {
                return Err(DgError::IdealNotStable { sig: *sig, rel: x.display(&e), image: dx.display(&e) });
            }
        }
        cells.insert(*sig, DgCell { sig: *sig, degree_of, pos, by_degree, d: dcols });
    }
    Ok(DgTruncation { trunc: t, deriv: d, cells })
}

impl DgTruncation {
    pub fn verify_d_squared(&self) -> Result<usize, DgError> {
        let mut checked = 0;
        for (sig, c) in &self.cells {
            for (i, col) in c.d.iter().enumerate() {
                let mut acc: SVec = Vec::new();
                for (j, a) in col {
                    acc = svec_add_scaled(&acc, a, &sort_svec(c.d[*j].clone()));
                }
                if !acc.is_empty() {
                    let cell = self.trunc.cell(*sig);
                    let e = &self.trunc.pres.gens;
                    let val: Vec<(Node, Q)> = acc.iter().map(|(k, q)| (cell.rep_tree(*k).clone(), q.clone())).collect();
                    let mut x = Element::zero(*sig);
                    x.add_terms(val, &Q::one());
                    return Err(DgError::NotSquareZero { sig: *sig, tree: print_tree(e, cell.rep_tree(i)), value: x.display(e) });
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    pub fn homology_dims(&self) -> BTreeMap<Sig, BTreeMap<i64, usize>> {
        self.cells.iter().map(|(s, c)| (*s, c.complex().homology())).collect()
    }

    pub fn chain_dims(&self) -> BTreeMap<Sig, BTreeMap<i64, usize>> {
        self.cells.iter().map(|(s, c)| (*s, c.by_degree.iter().map(|(k, v)| (*k, v.len())).collect())).collect()
    }
}

/// Map of operads given on generators; checks that it commutes with differentials on trees.
pub fn commutes_with_d(
    src: &Collection,
    dsrc: &Derivation,
    dst: &Truncation,
    ddst: &Derivation,
    psi: &[Option<Element>],
    trees: &[(Sig, Node)],
) -> Result<usize, String> {
    let e2 = &dst.pres.gens;
    let mut count = 0;
    for (sig, t) in trees {
        let lhs = map_tree(src, e2, psi, t, *sig);
        let lhs = apply_derivation(e2, ddst, &lhs);
        let dt = apply_derivation_tree(src, dsrc, t);
        let mut rhs = Element::zero(*sig);
        for (u, c) in dt {
            rhs.add(&map_tree(src, e2, psi, &u, *sig), &c);
        }
        let mut diff = lhs.clone();
        diff.add(&rhs, &Q::int(-1));
        if sig.arity() <= dst.max_inputs && !dst.cell(*sig).project(&diff).is_empty() {
            return Err(format!("{} at {}", print_tree(src, t), sig));
        }
        count += 1;
    }
    Ok(count)
}

/// Image of a tree under a generator map into another free operad (images in slot labels).
pub fn map_tree(src: &Collection, dst: &Collection, psi: &[Option<Element>], t: &Node, sig: Sig) -> Element {
    // Build the image vertex by vertex: substitute in a tree that keeps source vertices, then
    // translate. Source and target generators are joined into one collection for the substitution.
    let mut joint = dst.clone();
    let off = joint.gens.len() as u16;
    joint.gens.extend(src.gens.iter().cloned());
    let deg = koszul_deg(&joint);
    let shifted = shift(t, off);
    let mut cur: Vec<(Node, Q)> = vec![(shifted, Q::one())];
    loop {
        let mut next = Vec::new();
        let mut progressed = false;
        for (u, c) in cur {
            let verts = u.vertices();
            match verts.iter().position(|v| v.gen >= off) {
                None => next.push((u, c)),
                Some(at) => {
                    progressed = true;
                    let g = verts[at].gen - off;
                    if let Some(img) = &psi[g as usize] {
                        let terms: Vec<(Node, Q)> = img.terms.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
                        for (w, d) in substitute_at(&joint, &u, at, &terms, &deg) {
                            next.push((w, &d * &c));
                        }
                    }
                }
            }
        }
        cur = next;
        if !progressed {
            break;
        }
    }
    let mut out = Element::zero(sig);
    out.add_terms(cur, &Q::one());
    out
}

fn shift(t: &Node, off: u16) -> Node {
    match t {
        Node::Leaf(l) => Node::Leaf(*l),
        Node::Vert(v) => Node::Vert(Vertex { gen: v.gen + off, dec: v.dec, kids: v.kids.iter().map(|k| shift(k, off)).collect() }),
    }
}
