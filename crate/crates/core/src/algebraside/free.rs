//! Free algebras over LP, H0(SC^vor) and H0(SC), truncated by weight.

use super::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeTag {
    Lp,
    H0scVor,
    H0sc,
}

impl FreeTag {
    pub fn parse(s: &str) -> Result<FreeTag, AlgebraError> {
        match s {
            "LP" => Ok(FreeTag::Lp),
            "H0SCvor" => Ok(FreeTag::H0scVor),
            "H0SC" => Ok(FreeTag::H0sc),
            _ => Err(AlgebraError::Invalid(format!("unknown operad {:?}; expected LP, H0SCvor or H0SC", s))),
        }
    }
}

/// Structure constants of a bilinear operation on basis pairs.
pub type Table = BTreeMap<(usize, usize), SVec>;

/// A pair of graded spaces with a closed binary operation (bracket or commutative product),
/// an open product, an action of the closed part on the open part and an optional unary map.
#[derive(Clone, Debug, Default)]
pub struct PairAlgebra {
    pub closed_deg: Vec<i64>,
    pub open_deg: Vec<i64>,
    /// (closed letters, open letters); zero when the algebra is not graded by weight
    pub closed_weight: Vec<(usize, usize)>,
    pub open_weight: Vec<(usize, usize)>,
    pub bracket: Table,
    pub product: Table,
    pub action: Table,
    pub unary: BTreeMap<usize, SVec>,
}

impl PairAlgebra {
    pub fn dims(&self) -> (usize, usize) {
        (self.closed_deg.len(), self.open_deg.len())
    }
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Q)] {
        self.bracket.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Q)] {
        self.product.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }
    pub fn action(&self, i: usize, j: usize) -> &[(usize, Q)] {
        self.action.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }
    pub fn is_weighted(&self) -> bool {
        self.closed_weight.iter().chain(&self.open_weight).all(|&(a, b)| a + b > 0)
    }
}

fn bilinear(t: &Table, x: &SVec, y: &SVec) -> SVec {
    let mut out = Lin::new();
    for (i, a) in x {
        for (j, b) in y {
            if let Some(v) = t.get(&(*i, *j)) {
                for (k, c) in v {
                    lin_add(&mut out, *k, &(&(a * b) * c));
                }
            }
        }
    }
    svec_from_map(out)
}

impl PairAlgebra {
    pub fn bracket_v(&self, x: &SVec, y: &SVec) -> SVec {
        bilinear(&self.bracket, x, y)
    }
    pub fn product_v(&self, x: &SVec, y: &SVec) -> SVec {
        bilinear(&self.product, x, y)
    }
    pub fn action_v(&self, x: &SVec, y: &SVec) -> SVec {
        bilinear(&self.action, x, y)
    }
}

/// A free algebra truncated at total weight `bound`, with readable basis names.
#[derive(Clone, Debug)]
pub struct FreeAlgebraTruncation {
    pub tag: FreeTag,
    pub gens: GradedPair,
    pub bound: usize,
    pub alg: PairAlgebra,
    pub closed_names: Vec<String>,
    pub open_names: Vec<String>,
}

fn dims_by_weight(w: &[(usize, usize)]) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for &k in w {
        *out.entry(k).or_insert(0) += 1;
    }
    out
}

impl FreeAlgebraTruncation {
    pub fn closed_dims(&self) -> BTreeMap<(usize, usize), usize> {
        dims_by_weight(&self.alg.closed_weight)
    }
    pub fn open_dims(&self) -> BTreeMap<(usize, usize), usize> {
        dims_by_weight(&self.alg.open_weight)
    }
}

pub fn free_algebra(tag: FreeTag, v: &GradedPair, bound: usize) -> Result<FreeAlgebraTruncation, AlgebraError> {
    if bound == 0 {
        return Err(AlgebraError::Invalid("weight bound must be at least 1".into()));
    }
    Ok(match tag {
        FreeTag::Lp => free_lp(v, bound),
        FreeTag::H0scVor | FreeTag::H0sc => free_commutative_action(tag, v, bound),
    })
}

struct Indexer<K: Ord + Clone> {
    ix: BTreeMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Ord + Clone> Indexer<K> {
    fn new() -> Self {
        Indexer { ix: BTreeMap::new(), keys: Vec::new() }
    }
    fn get(&mut self, k: &K) -> usize {
        if let Some(&i) = self.ix.get(k) {
            return i;
        }
        self.keys.push(k.clone());
        self.ix.insert(k.clone(), self.keys.len() - 1);
        self.keys.len() - 1
    }
    fn find(&self, k: &K) -> Option<usize> {
        self.ix.get(k).copied()
    }
}

type Poly = Lin<Vec<usize>>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (w, y) in b {
            lin_add(&mut out, [u.clone(), w.clone()].concat(), &(x * y));
        }
    }
    out
}

fn poly_bracket(a: &Poly, da: i64, b: &Poly, db: i64) -> Poly {
    let mut out = poly_mul(a, b);
    let s = Q::sign(-parity(da * db));
    for (k, c) in poly_mul(b, a) {
        lin_add(&mut out, k, &(&c * &s));
    }
    out
}

fn poly_name(p: &Poly, names: &[(String, i64)]) -> String {
    let mut s = String::new();
    for (k, (w, c)) in p.iter().enumerate() {
        let word = w.iter().map(|&i| names[i].0.as_str()).collect::<Vec<_>>().join("");
        let neg = c.signum() < 0;
        let abs = if neg { -c } else { c.clone() };
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if !abs.is_one() {
            s.push_str(&format!("{}*", abs));
        }
        s.push_str(&word);
    }
    s
}

/// Lie(V_c) inside T(V_c); the open part is the free associative algebra on T(V_c) ⊗ V_o with
/// the closed generators acting by concatenation on the left.
fn free_lp(v: &GradedPair, bound: usize) -> FreeAlgebraTruncation {
    let cd = v.closed_degrees();
    let od = v.open_degrees();
    let deg_word = |w: &[usize]| -> i64 { w.iter().map(|&i| cd[i]).sum() };

    // closed part: rref rows of the span of iterated brackets, grouped by letter content
    let mut words: Indexer<Vec<usize>> = Indexer::new();
    let mut basis: Vec<(Poly, Vec<usize>)> = Vec::new();
    let mut groups: BTreeMap<Vec<usize>, (Echelon, Vec<usize>)> = BTreeMap::new();
    let mut prev: Vec<usize> = Vec::new();
    for w in 1..=bound {
        let mut cands: Vec<(Poly, Vec<usize>)> = Vec::new();
        if w == 1 {
            for i in 0..cd.len() {
                cands.push(([(vec![i], Q::one())].into_iter().collect(), vec![i]));
            }
        } else {
            for g in 0..cd.len() {
                let gp: Poly = [(vec![g], Q::one())].into_iter().collect();
                for &b in &prev {
                    let (bp, bc) = &basis[b];
                    let p = poly_bracket(&gp, cd[g], bp, deg_word(bc));
                    let mut content = bc.clone();
                    content.push(g);
                    content.sort();
                    cands.push((p, content));
                }
            }
        }
        let mut touched: Vec<Vec<usize>> = Vec::new();
        for (p, content) in cands {
            let sv = svec_from_map(p.iter().map(|(k, c)| (words.get(k), c.clone())).collect());
            let e = groups.entry(content.clone()).or_insert_with(|| (Echelon::new(), Vec::new()));
            if e.0.insert(&sv) && !touched.contains(&content) {
                touched.push(content);
            }
        }
        prev.clear();
        for content in touched {
            let (ech, idx) = groups.get_mut(&content).unwrap();
            for row in ech.rref_rows() {
                let p: Poly = row.iter().map(|(i, c)| (words.keys[*i].clone(), c.clone())).collect();
                basis.push((p, content.clone()));
                idx.push(basis.len() - 1);
                prev.push(basis.len() - 1);
            }
        }
    }
    let closed_deg: Vec<i64> = basis.iter().map(|(_, c)| deg_word(c)).collect();
    let closed_weight: Vec<(usize, usize)> = basis.iter().map(|(_, c)| (c.len(), 0)).collect();
    let express = |p: &Poly, words: &Indexer<Vec<usize>>| -> SVec {
        let mut out = Lin::new();
        let Some((w0, _)) = p.iter().next() else { return Vec::new() };
        let mut content = w0.clone();
        content.sort();
        let (ech, idx) = &groups[&content];
        let sv = svec_from_map(p.iter().map(|(k, c)| (words.find(k).expect("word"), c.clone())).collect());
        for (r, piv) in ech.pivots().enumerate() {
            if let Some((_, c)) = sv.iter().find(|(i, _)| *i == piv) {
                lin_add(&mut out, idx[r], c);
            }
        }
        svec_from_map(out)
    };
    let mut bracket = Table::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if closed_weight[i].0 + closed_weight[j].0 > bound {
                continue;
            }
            let p = poly_bracket(&basis[i].0, closed_deg[i], &basis[j].0, closed_deg[j]);
            for k in p.keys() {
                words.get(k);
            }
            let v = express(&p, &words);
            if !v.is_empty() {
                bracket.insert((i, j), v);
            }
        }
    }

    // open part: words in letters (closed word, open generator)
    type Letter = (Vec<usize>, usize);
    let mut letters: Vec<Letter> = Vec::new();
    for k in 0..bound {
        let mut ws = vec![vec![]];
        for _ in 0..k {
            ws = ws.into_iter().flat_map(|w: Vec<usize>| (0..cd.len()).map(move |i| [w.clone(), vec![i]].concat())).collect();
        }
        for w in ws {
            for o in 0..od.len() {
                letters.push((w.clone(), o));
            }
        }
    }
    let lw = |l: &Letter| l.0.len() + 1;
    let ldeg = |l: &Letter| deg_word(&l.0) + od[l.1];
    let mut open: Indexer<Vec<Letter>> = Indexer::new();
    let mut frontier: Vec<Vec<Letter>> = vec![vec![]];
    let mut all: Vec<Vec<Letter>> = Vec::new();
    while let Some(w) = frontier.pop() {
        let used: usize = w.iter().map(lw).sum();
        for l in &letters {
            if used + lw(l) <= bound {
                let mut nw = w.clone();
                nw.push(l.clone());
                all.push(nw.clone());
                frontier.push(nw);
            }
        }
    }
    all.sort_by_key(|w| (w.iter().map(lw).sum::<usize>(), w.clone()));
    for w in &all {
        open.get(w);
    }
    let open_deg: Vec<i64> = open.keys.iter().map(|w| w.iter().map(ldeg).sum()).collect();
    let open_weight: Vec<(usize, usize)> = open.keys.iter().map(|w| (w.iter().map(|l| l.0.len()).sum(), w.len())).collect();
    let mut product = Table::new();
    for i in 0..open.keys.len() {
        for j in 0..open.keys.len() {
            let wt = open_weight[i].0 + open_weight[i].1 + open_weight[j].0 + open_weight[j].1;
            if wt <= bound {
                let w = [open.keys[i].clone(), open.keys[j].clone()].concat();
                product.insert((i, j), vec![(open.find(&w).expect("open word"), Q::one())]);
            }
        }
    }
    let mut action = Table::new();
    for (x, (p, content)) in basis.iter().enumerate() {
        for (a, w) in open.keys.iter().enumerate() {
            if content.len() + open_weight[a].0 + open_weight[a].1 > bound {
                continue;
            }
            let mut out = Lin::new();
            let mut before = 0i64;
            for k in 0..w.len() {
                let s = Q::sign(parity(closed_deg[x] * before));
                for (u, c) in p {
                    let mut nw = w.clone();
                    nw[k] = ([u.clone(), w[k].0.clone()].concat(), w[k].1);
                    lin_add(&mut out, open.find(&nw).expect("open word"), &(c * &s));
                }
                before += ldeg(&w[k]);
            }
            let sv = svec_from_map(out);
            if !sv.is_empty() {
                action.insert((x, a), sv);
            }
        }
    }
    let closed_names = basis.iter().map(|(p, _)| poly_name(p, &v.closed)).collect();
    let open_names = open
        .keys
        .iter()
        .map(|w| w.iter().map(|(u, o)| format!("({}|{})", u.iter().map(|&i| v.closed[i].0.as_str()).collect::<Vec<_>>().join(""), v.open[*o].0)).collect::<Vec<_>>().join(""))
        .collect();
    FreeAlgebraTruncation {
        tag: FreeTag::Lp,
        gens: v.clone(),
        bound,
        alg: PairAlgebra { closed_deg, open_deg, closed_weight, open_weight, bracket, product, action, unary: BTreeMap::new() },
        closed_names,
        open_names,
    }
}

/// S(V_c) acting on S(V_c) ⊗ T(V_o): the open part has nonempty words for H0(SC^vor) and
/// everything but the unit for H0(SC), where alpha sends c to c ⊗ 1.
fn free_commutative_action(tag: FreeTag, v: &GradedPair, bound: usize) -> FreeAlgebraTruncation {
    let cf = Cofree::of_pair(v);
    let cd = v.closed_degrees();
    let mut closed: Vec<Mono> = Vec::new();
    for w in 1..=bound {
        closed.extend(cf.closed_basis(w));
    }
    let cix: BTreeMap<Mono, usize> = closed.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut open: Vec<OKey> = Vec::new();
    for total in 1..=bound {
        for q in 0..=total {
            if q == 0 && tag == FreeTag::H0scVor {
                continue;
            }
            open.extend(cf.open_basis(total - q, q));
        }
    }
    let oix: BTreeMap<OKey, usize> = open.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mul = |a: &[usize], b: &[usize]| sort_graded(&cd, &[a, b].concat());
    let mut bracket = Table::new();
    for (i, a) in closed.iter().enumerate() {
        for (j, b) in closed.iter().enumerate() {
            if let Some((m, s)) = mul(a, b) {
                if let Some(&k) = cix.get(&m) {
                    bracket.insert((i, j), vec![(k, Q::sign(s))]);
                }
            }
        }
    }
    let mut product = Table::new();
    for (i, (m1, w1)) in open.iter().enumerate() {
        for (j, (m2, w2)) in open.iter().enumerate() {
            if let Some((m, s)) = mul(m1, m2) {
                let s2 = parity(cf.mono_degree(m2) * cf.word_degree(w1));
                if let Some(&k) = oix.get(&(m, [w1.clone(), w2.clone()].concat())) {
                    product.insert((i, j), vec![(k, Q::sign(s * s2))]);
                }
            }
        }
    }
    let mut action = Table::new();
    for (i, a) in closed.iter().enumerate() {
        for (j, (m, w)) in open.iter().enumerate() {
            if let Some((mm, s)) = mul(a, m) {
                if let Some(&k) = oix.get(&(mm, w.clone())) {
                    action.insert((i, j), vec![(k, Q::sign(s))]);
                }
            }
        }
    }
    let mut unary = BTreeMap::new();
    if tag == FreeTag::H0sc {
        for (i, a) in closed.iter().enumerate() {
            unary.insert(i, vec![(oix[&(a.clone(), vec![])], Q::one())]);
        }
    }
    let mono_name = |m: &[usize]| m.iter().map(|&i| v.closed[i].0.as_str()).collect::<Vec<_>>().join("*");
    let closed_names = closed.iter().map(|m| mono_name(m)).collect();
    let open_names = open
        .iter()
        .map(|(m, w)| format!("{}|{}", if m.is_empty() { "1".to_string() } else { mono_name(m) }, if w.is_empty() { "1".to_string() } else { w.iter().map(|&i| v.open[i].0.as_str()).collect::<Vec<_>>().join(" ") }))
        .collect();
    FreeAlgebraTruncation {
        tag,
        gens: v.clone(),
        bound,
        alg: PairAlgebra {
            closed_deg: closed.iter().map(|m| cf.mono_degree(m)).collect(),
            open_deg: open.iter().map(|k| cf.key_degree(k)).collect(),
            closed_weight: closed.iter().map(|m| (m.len(), 0)).collect(),
            open_weight: open.iter().map(|(m, w)| (m.len(), w.len())).collect(),
            bracket,
            product,
            action,
            unary,
        },
        closed_names,
        open_names,
    }
}
