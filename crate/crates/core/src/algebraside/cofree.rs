//! The cofree pair coalgebra: cocommutative on the closed color, (symmetric) ⊗ (tensor) on the
//! open color, and the lifts of corestrictions to coderivations.

use super::*;
use rand::Rng;

/// Sorted graded-symmetric monomial in the closed symbols.
pub type Mono = Vec<usize>;
/// Closed monomial together with a word in the open symbols.
pub type OKey = (Mono, Vec<usize>);

/// Corestriction to the closed cogenerators: monomials (weight >= 1) to closed vectors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClosedMap {
    pub degree: i64,
    pub val: BTreeMap<Mono, SVec>,
}

/// Corestriction to the open cogenerators.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OpenMap {
    pub degree: i64,
    pub val: BTreeMap<OKey, SVec>,
}

impl ClosedMap {
    pub fn zero(degree: i64) -> ClosedMap {
        ClosedMap { degree, val: BTreeMap::new() }
    }
    pub fn scaled(&self, s: &Q) -> ClosedMap {
        ClosedMap { degree: self.degree, val: self.val.iter().map(|(k, v)| (k.clone(), svec_scale(v, s))).filter(|(_, v)| !v.is_empty()).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.val.values().all(|v| v.is_empty())
    }
}

impl OpenMap {
    pub fn zero(degree: i64) -> OpenMap {
        OpenMap { degree, val: BTreeMap::new() }
    }
    pub fn scaled(&self, s: &Q) -> OpenMap {
        OpenMap { degree: self.degree, val: self.val.iter().map(|(k, v)| (k.clone(), svec_scale(v, s))).filter(|(_, v)| !v.is_empty()).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.val.values().all(|v| v.is_empty())
    }
}

fn combine<K: Ord + Clone>(a: &BTreeMap<K, SVec>, b: &BTreeMap<K, SVec>, s: &Q) -> BTreeMap<K, SVec> {
    let mut out = a.clone();
    for (k, v) in b {
        let cur = out.remove(k).unwrap_or_default();
        let r = svec_add_scaled(&cur, s, v);
        if !r.is_empty() {
            out.insert(k.clone(), r);
        }
    }
    out
}

pub fn closed_add(a: &ClosedMap, b: &ClosedMap, s: &Q) -> ClosedMap {
    ClosedMap { degree: a.degree, val: combine(&a.val, &b.val, s) }
}

pub fn open_add(a: &OpenMap, b: &OpenMap, s: &Q) -> OpenMap {
    OpenMap { degree: a.degree, val: combine(&a.val, &b.val, s) }
}

/// Degrees of the cogenerators.
#[derive(Clone, Debug)]
pub struct Cofree {
    pub cd: Vec<i64>,
    pub od: Vec<i64>,
}

impl Cofree {
    pub fn new(cd: Vec<i64>, od: Vec<i64>) -> Cofree {
        Cofree { cd, od }
    }
    pub fn of_pair(v: &GradedPair) -> Cofree {
        Cofree { cd: v.closed_degrees(), od: v.open_degrees() }
    }

    pub fn mono_degree(&self, m: &[usize]) -> i64 {
        m.iter().map(|&i| self.cd[i]).sum()
    }
    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.od[i]).sum()
    }
    pub fn key_degree(&self, k: &OKey) -> i64 {
        self.mono_degree(&k.0) + self.word_degree(&k.1)
    }

    pub fn canon(&self, m: &[usize]) -> Option<(Mono, i32)> {
        sort_graded(&self.cd, m)
    }

    /// All ways to split a monomial into (A, B), with the sign of moving A to the front.
    pub fn unshuffles(&self, m: &[usize]) -> Vec<(Mono, Mono, i32)> {
        let p = m.len();
        let degs: Vec<i64> = m.iter().map(|&i| self.cd[i]).collect();
        (0u32..1 << p)
            .map(|mask| {
                let a: Vec<usize> = (0..p).filter(|b| mask >> b & 1 == 1).collect();
                let b: Vec<usize> = (0..p).filter(|b| mask >> b & 1 == 0).collect();
                let order: Vec<usize> = a.iter().chain(&b).copied().collect();
                (a.iter().map(|&i| m[i]).collect(), b.iter().map(|&i| m[i]).collect(), koszul_sign(&order, &degs))
            })
            .collect()
    }

    /// Monomials of weight exactly `w`.
    pub fn closed_basis(&self, w: usize) -> Vec<Mono> {
        fn rec(cd: &[i64], w: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Mono>) {
            if cur.len() == w {
                out.push(cur.clone());
                return;
            }
            for i in start..cd.len() {
                let odd = cd[i].rem_euclid(2) == 1;
                if odd && cur.last() == Some(&i) {
                    continue;
                }
                cur.push(i);
                rec(cd, w, i, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.cd, w, 0, &mut Vec::new(), &mut out);
        out
    }

    pub fn words(&self, q: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..q {
            out = out.into_iter().flat_map(|w| (0..self.od.len()).map(move |i| [w.clone(), vec![i]].concat())).collect();
        }
        out
    }

    pub fn open_basis(&self, p: usize, q: usize) -> Vec<OKey> {
        let ws = self.words(q);
        self.closed_basis(p).into_iter().flat_map(|m| ws.iter().map(move |w| (m.clone(), w.clone()))).collect()
    }

    /// Open keys with p <= maxc closed and 1 <= q <= maxo open symbols.
    pub fn open_keys_up_to(&self, maxc: usize, maxo: usize, allow_empty_word: bool) -> Vec<OKey> {
        let mut out = Vec::new();
        for p in 0..=maxc {
            for q in 0..=maxo {
                if q == 0 && (!allow_empty_word || p == 0) {
                    continue;
                }
                out.extend(self.open_basis(p, q));
            }
        }
        out
    }

    fn eval_closed(&self, f: &ClosedMap, x: &Lin<Mono>) -> Lin<usize> {
        let mut out = Lin::new();
        for (m, c) in x {
            if let Some(v) = f.val.get(m) {
                for (y, a) in v {
                    lin_add(&mut out, *y, &(c * a));
                }
            }
        }
        out
    }

    pub fn apply_closed(&self, f: &ClosedMap, x: &Lin<Mono>) -> SVec {
        svec_from_map(self.eval_closed(f, x))
    }

    pub fn apply_open(&self, f: &OpenMap, x: &Lin<OKey>) -> SVec {
        let mut out = Lin::new();
        for (k, c) in x {
            if let Some(v) = f.val.get(k) {
                for (y, a) in v {
                    lin_add(&mut out, *y, &(c * a));
                }
            }
        }
        svec_from_map(out)
    }

    /// psi~(v_[p]) = sum over A nonempty of psi(v_A) v_B.
    pub fn lift_closed(&self, psi: &ClosedMap, m: &[usize]) -> Lin<Mono> {
        let mut out = Lin::new();
        for (a, b, s) in self.unshuffles(m) {
            if a.is_empty() {
                continue;
            }
            let Some(v) = psi.val.get(&a) else { continue };
            for (y, c) in v {
                let mut mm = vec![*y];
                mm.extend(&b);
                if let Some((k, s2)) = self.canon(&mm) {
                    lin_add(&mut out, k, &(c * &Q::sign(s * s2)));
                }
            }
        }
        out
    }

    pub fn lift_closed_lin(&self, psi: &ClosedMap, x: &Lin<Mono>) -> Lin<Mono> {
        let mut out = Lin::new();
        for (m, c) in x {
            for (k, a) in self.lift_closed(psi, m) {
                lin_add(&mut out, k, &(c * &a));
            }
        }
        out
    }

    /// The part of the open lift coming from the closed map: psi(v_A) v_B ⊗ w.
    pub fn lift_open_closed_part(&self, psi: &ClosedMap, k: &OKey) -> Lin<OKey> {
        self.lift_closed(psi, &k.0).into_iter().map(|(m, c)| ((m, k.1.clone()), c)).collect()
    }

    /// The part of the open lift coming from the open map: v_A ⊗ (w_(1;i) phi(v_B ⊗ w_(i+1;j)) w_(j+1;q)).
    /// Blocks with i = j are used only where `phi` has entries with an empty word.
    pub fn lift_open_part(&self, phi: &OpenMap, k: &OKey) -> Lin<OKey> {
        let (m, w) = k;
        let q = w.len();
        let mut out = Lin::new();
        for (a, b, s) in self.unshuffles(m) {
            let da = self.mono_degree(&a);
            let db = self.mono_degree(&b);
            for i in 0..=q {
                let dpre = self.word_degree(&w[..i]);
                for j in i..=q {
                    let Some(v) = phi.val.get(&(b.clone(), w[i..j].to_vec())) else { continue };
                    let sign = s * parity(phi.degree * (da + dpre)) * parity(db * dpre);
                    for (z, c) in v {
                        let mut nw = w[..i].to_vec();
                        nw.push(*z);
                        nw.extend(&w[j..]);
                        lin_add(&mut out, (a.clone(), nw), &(c * &Q::sign(sign)));
                    }
                }
            }
        }
        out
    }

    /// phi~ on one open basis key.
    pub fn lift_open(&self, psi: &ClosedMap, phi: &OpenMap, k: &OKey) -> Lin<OKey> {
        let mut out = self.lift_open_closed_part(psi, k);
        for (kk, c) in self.lift_open_part(phi, k) {
            lin_add(&mut out, kk, &c);
        }
        out
    }

    pub fn lift_open_lin(&self, psi: &ClosedMap, phi: &OpenMap, x: &Lin<OKey>) -> Lin<OKey> {
        let mut out = Lin::new();
        for (k, c) in x {
            for (kk, a) in self.lift_open(psi, phi, k) {
                lin_add(&mut out, kk, &(c * &a));
            }
        }
        out
    }

    /// Reduced coproduct of the closed coalgebra.
    pub fn delta_closed(&self, m: &[usize]) -> Lin<(Mono, Mono)> {
        let mut out = Lin::new();
        for (a, b, s) in self.unshuffles(m) {
            if !a.is_empty() && !b.is_empty() {
                lin_add(&mut out, (a, b), &Q::sign(s));
            }
        }
        out
    }

    /// Coproduct dual to the product of the open part.
    pub fn delta_open(&self, k: &OKey) -> Lin<(OKey, OKey)> {
        let (m, w) = k;
        let mut out = Lin::new();
        for (a, b, s) in self.unshuffles(m) {
            let db = self.mono_degree(&b);
            for i in 1..w.len() {
                let sign = s * parity(db * self.word_degree(&w[..i]));
                lin_add(&mut out, ((a.clone(), w[..i].to_vec()), (b.clone(), w[i..].to_vec())), &Q::sign(sign));
            }
        }
        out
    }

    /// Coproduct dual to the module structure.
    pub fn gamma(&self, k: &OKey) -> Lin<(Mono, OKey)> {
        let (m, w) = k;
        let mut out = Lin::new();
        for (a, b, s) in self.unshuffles(m) {
            if !a.is_empty() {
                lin_add(&mut out, (a, (b, w.clone())), &Q::sign(s));
            }
        }
        out
    }
}

/// (f ⊗ 1 + 1 ⊗ g) on a tensor of two keys, with the Koszul sign (-1)^{|g||x|}.
pub fn apply_tensor<K1: Ord + Clone, K2: Ord + Clone>(
    x: &Lin<(K1, K2)>,
    f: &dyn Fn(&K1) -> Lin<K1>,
    g: &dyn Fn(&K2) -> Lin<K2>,
    gdeg: i64,
    deg1: &dyn Fn(&K1) -> i64,
) -> Lin<(K1, K2)> {
    let mut out = Lin::new();
    for ((a, b), c) in x {
        for (fa, d) in f(a) {
            lin_add(&mut out, (fa, b.clone()), &(c * &d));
        }
        let s = Q::sign(parity(gdeg * deg1(a)));
        for (gb, d) in g(b) {
            lin_add(&mut out, (a.clone(), gb), &(&(c * &d) * &s));
        }
    }
    out
}

/// Which coderivation identity failed, on which input.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftFailure {
    pub law: &'static str,
    pub input: String,
}

/// Checks the three co-Leibniz identities of (psi~, phi~) on every basis input with at most
/// `maxc` closed and `maxo` open symbols. Returns the number of inputs checked.
pub fn check_lift_laws(cf: &Cofree, psi: &ClosedMap, phi: &OpenMap, maxc: usize, maxo: usize) -> Result<usize, LiftFailure> {
    assert_eq!(psi.degree, phi.degree, "a coderivation has one degree");
    let d = psi.degree;
    let mut count = 0;
    let lc = |m: &Mono| cf.lift_closed(psi, m);
    let lo = |k: &OKey| cf.lift_open(psi, phi, k);
    let mdeg = |m: &Mono| cf.mono_degree(m);
    let kdeg = |k: &OKey| cf.key_degree(k);
    for w in 1..=maxc {
        for m in cf.closed_basis(w) {
            let mut lhs: Lin<(Mono, Mono)> = Lin::new();
            for (x, c) in lc(&m) {
                for (y, e) in cf.delta_closed(&x) {
                    lin_add(&mut lhs, y, &(&c * &e));
                }
            }
            let rhs = apply_tensor(&cf.delta_closed(&m), &lc, &lc, d, &mdeg);
            if lhs != rhs {
                return Err(LiftFailure { law: "closed coproduct", input: format!("{:?}", m) });
            }
            count += 1;
        }
    }
    for k in cf.open_keys_up_to(maxc, maxo, false) {
        let img = lo(&k);
        let mut lhs: Lin<(OKey, OKey)> = Lin::new();
        for (x, c) in &img {
            for (y, e) in cf.delta_open(x) {
                lin_add(&mut lhs, y, &(c * &e));
            }
        }
        let rhs = apply_tensor(&cf.delta_open(&k), &lo, &lo, d, &kdeg);
        if lhs != rhs {
            return Err(LiftFailure { law: "open coproduct", input: format!("{:?}", k) });
        }
        let mut lhs: Lin<(Mono, OKey)> = Lin::new();
        for (x, c) in &img {
            for (y, e) in cf.gamma(x) {
                lin_add(&mut lhs, y, &(c * &e));
            }
        }
        let rhs = apply_tensor(&cf.gamma(&k), &lc, &lo, d, &mdeg);
        if lhs != rhs {
            return Err(LiftFailure { law: "module coproduct", input: format!("{:?}", k) });
        }
        count += 1;
    }
    Ok(count)
}

pub(crate) fn random_vec<R: Rng>(rng: &mut R, targets: &[usize]) -> SVec {
    let mut v: SVec = Vec::new();
    for &t in targets {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            v.push((t, Q::int(c)));
        }
    }
    v
}

/// Random corestrictions of the given degree on all inputs with at most `maxc` closed and
/// `maxo` open symbols.
pub fn random_maps<R: Rng>(rng: &mut R, cf: &Cofree, degree: i64, maxc: usize, maxo: usize) -> (ClosedMap, OpenMap) {
    let mut psi = ClosedMap::zero(degree);
    for w in 1..=maxc {
        for m in cf.closed_basis(w) {
            let want = cf.mono_degree(&m) + degree;
            let t: Vec<usize> = (0..cf.cd.len()).filter(|&y| cf.cd[y] == want).collect();
            let v = random_vec(rng, &t);
            if !v.is_empty() {
                psi.val.insert(m, v);
            }
        }
    }
    let mut phi = OpenMap::zero(degree);
    for k in cf.open_keys_up_to(maxc, maxo, false) {
        let want = cf.key_degree(&k) + degree;
        let t: Vec<usize> = (0..cf.od.len()).filter(|&y| cf.od[y] == want).collect();
        let v = random_vec(rng, &t);
        if !v.is_empty() {
            phi.val.insert(k, v);
        }
    }
    (psi, phi)
}
