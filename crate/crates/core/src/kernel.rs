//! Exact rationals, sparse and dense linear algebra, permutations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Rational number, stored as a reduced `i64` fraction when it fits.
#[derive(Clone, Debug)]
pub enum Q {
    S(i64, i64),
    B(Box<BigRational>),
}

fn small_from_i128(n: i128, d: i128) -> Option<Q> {
    let g = n.gcd(&d);
    let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) if a != i64::MIN => Some(Q::S(a, b)),
        _ => None,
    }
}

impl Q {
    pub fn zero() -> Q {
        Q::S(0, 1)
    }
    pub fn one() -> Q {
        Q::S(1, 1)
    }
    pub fn int(n: i64) -> Q {
        Q::S(n, 1)
    }
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        small_from_i128(n as i128, d as i128).unwrap()
    }
    pub fn sign(s: i32) -> Q {
        if s >= 0 {
            Q::one()
        } else {
            Q::int(-1)
        }
    }
    fn from_big(r: BigRational) -> Q {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Q::S(n, d);
            }
        }
        Q::B(Box::new(r))
    }
    pub fn to_big(&self) -> BigRational {
        match self {
            Q::S(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::B(b) => (**b).clone(),
        }
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, Q::S(0, _))
    }
    pub fn is_one(&self) -> bool {
        matches!(self, Q::S(1, 1))
    }
    pub fn is_integer(&self) -> bool {
        match self {
            Q::S(_, d) => *d == 1,
            Q::B(b) => b.is_integer(),
        }
    }
    pub fn inv(&self) -> Q {
        match self {
            Q::S(0, _) => panic!("division by zero"),
            Q::S(n, d) => small_from_i128(*d as i128, *n as i128).unwrap(),
            Q::B(b) => Q::from_big(b.recip()),
        }
    }
    pub fn signum(&self) -> i32 {
        match self {
            Q::S(n, _) => n.signum() as i32,
            Q::B(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
    pub fn to_f64(&self) -> f64 {
        match self {
            Q::S(n, d) => *n as f64 / *d as f64,
            Q::B(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::from_big(BigRational::new(n, d)))
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        match (self, o) {
            (Q::S(a, b), Q::S(c, d)) => a == c && b == d,
            (Q::B(a), Q::B(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Q::S(n, d) => {
                0u8.hash(h);
                n.hash(h);
                d.hash(h);
            }
            Q::B(b) => {
                1u8.hash(h);
                b.hash(h);
            }
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::S(a, b), Q::S(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}
impl From<i32> for Q {
    fn from(n: i32) -> Q {
        Q::int(n as i64)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Q::S(n, 1) => write!(f, "{}", n),
            Q::S(n, d) => write!(f, "{}/{}", n, d),
            Q::B(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        if let (Q::S(a, b), Q::S(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                if let Some(q) = small_from_i128(a + c, b) {
                    return q;
                }
            } else if let Some(q) = small_from_i128(a * d + c * b, b * d) {
                return q;
            }
        }
        Q::from_big(self.to_big() + o.to_big())
    }
}
impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self + &(-o)
    }
}
impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        if let (Q::S(a, b), Q::S(c, d)) = (self, o) {
            if let Some(q) = small_from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128) {
                return q;
            }
        }
        Q::from_big(self.to_big() * o.to_big())
    }
}
impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        self * &o.inv()
    }
}
impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::S(n, d) => Q::S(-n, *d),
            Q::B(b) => Q::from_big(-(**b).clone()),
        }
    }
}
impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}
macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);
impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        *self = &*self + o;
    }
}
impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        *self = &*self - o;
    }
}
impl Zero for Q {
    fn zero() -> Q {
        Q::zero()
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}
impl One for Q {
    fn one() -> Q {
        Q::one()
    }
}

// ---------------------------------------------------------------------------
// Sparse vectors and incremental echelon bases

/// Sparse vector as (index, nonzero coefficient) pairs with increasing indices.
pub type SVec = Vec<(usize, Q)>;

pub fn svec_from_map(m: BTreeMap<usize, Q>) -> SVec {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn svec_from_dense(v: &[Q]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn svec_to_dense(v: &SVec, n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn svec_add_scaled(a: &SVec, s: &Q, b: &SVec) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let c = &a[i].1 + &(s * &b[j].1);
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn svec_scale(a: &SVec, s: &Q) -> SVec {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c * s)).collect()
}

pub fn svec_dot(a: &SVec, b: &SVec) -> Q {
    let (mut i, mut j) = (0, 0);
    let mut acc = Q::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Row echelon basis of a subspace; each row has leading coefficient 1 at its pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Normal form: the unique representative with zeros in every pivot column.
    pub fn reduce(&self, v: &SVec) -> SVec {
        if self.rows.is_empty() || v.is_empty() {
            return v.clone();
        }
        let mut w = v.clone();
        let mut cur = 0usize;
        loop {
            let hit = w
                .iter()
                .find(|(k, _)| *k >= cur && self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            match hit {
                None => return w,
                Some((k, c)) => {
                    w = svec_add_scaled(&w, &(-c), &self.rows[&k]);
                    cur = k + 1;
                }
            }
        }
    }

    /// Inserts `v`; returns true when the rank grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let w = self.reduce(v);
        if w.is_empty() {
            return false;
        }
        let lead = w[0].1.inv();
        let w = svec_scale(&w, &lead);
        self.rows.insert(w[0].0, w);
        true
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduced row echelon rows, ordered by pivot.
    pub fn rref_rows(&self) -> Vec<SVec> {
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        let mut out: BTreeMap<usize, SVec> = BTreeMap::new();
        for &k in keys.iter().rev() {
            let mut r = self.rows[&k].clone();
            loop {
                let hit = r
                    .iter()
                    .skip(1)
                    .find(|(j, _)| out.contains_key(j))
                    .map(|(j, c)| (*j, c.clone()));
                match hit {
                    None => break,
                    Some((j, c)) => r = svec_add_scaled(&r, &(-c), &out[&j]),
                }
            }
            out.insert(k, r);
        }
        out.into_values().collect()
    }
}

pub fn sparse_rank(rows: impl IntoIterator<Item = SVec>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(&r);
    }
    e.rank()
}

// ---------------------------------------------------------------------------
// Dense matrices and subspaces

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Q>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![vec![Q::zero(); cols]; rows] }
    }
    pub fn from_rows(cols: usize, data: Vec<Vec<Q>>) -> Matrix {
        assert!(data.iter().all(|r| r.len() == cols));
        Matrix { rows: data.len(), cols, data }
    }
    pub fn from_i64(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Q::int(x)).collect()).collect())
    }
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][c].inv();
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..self.cols {
                        if !m[r][j].is_zero() {
                            let t = &f * &m[r][j];
                            m[i][j] -= &t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }
}

/// Rank and a basis of the right nullspace {x : M x = 0}.
pub fn rank_and_nullspace(m: &Matrix) -> (usize, Vec<Vec<Q>>) {
    let (r, piv) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !piv.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![Q::zero(); m.cols];
        x[f] = Q::one();
        for (i, &p) in piv.iter().enumerate() {
            x[p] = -&r.data[i][f];
        }
        basis.push(x);
    }
    (piv.len(), basis)
}

/// Subspace of Q^n kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient: usize,
    ech: Echelon,
}

impl PartialEq for Subspace {
    fn eq(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && self.rref_rows() == o.rref_rows()
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, ech: Echelon::new() }
    }
    pub fn span(ambient: usize, vecs: impl IntoIterator<Item = SVec>) -> Subspace {
        let mut s = Subspace::zero(ambient);
        for v in vecs {
            s.add(&v);
        }
        s
    }
    pub fn span_dense(ambient: usize, vecs: &[Vec<Q>]) -> Subspace {
        Subspace::span(ambient, vecs.iter().map(|v| svec_from_dense(v)))
    }
    pub fn full(ambient: usize) -> Subspace {
        Subspace::span(ambient, (0..ambient).map(|i| vec![(i, Q::one())]))
    }
    pub fn add(&mut self, v: &SVec) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.ambient));
        self.ech.insert(v)
    }
    pub fn dim(&self) -> usize {
        self.ech.rank()
    }
    pub fn contains(&self, v: &SVec) -> bool {
        self.ech.contains(v)
    }
    pub fn reduce(&self, v: &SVec) -> SVec {
        self.ech.reduce(v)
    }
    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }
    pub fn rref_rows(&self) -> Vec<SVec> {
        self.ech.rref_rows()
    }
    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.rref_rows().iter().all(|r| self.contains(r))
    }
    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in o.rref_rows() {
            s.add(&r);
        }
        s
    }
    pub fn intersect(&self, o: &Subspace) -> Subspace {
        // Zassenhaus: rows (a|a) and (b|0); rows with zero left half give the intersection.
        let n = self.ambient;
        let mut e = Echelon::new();
        for r in self.rref_rows() {
            let mut v = r.clone();
            v.extend(r.iter().map(|(i, c)| (i + n, c.clone())));
            e.insert(&v);
        }
        for r in o.rref_rows() {
            e.insert(&r);
        }
        let mut out = Subspace::zero(n);
        for r in e.rref_rows() {
            if r[0].0 >= n {
                out.add(&r.iter().map(|(i, c)| (i - n, c.clone())).collect());
            }
        }
        out
    }
    /// {y : <x, y> = 0 for all x in self} for the pairing x^T G y (G = identity when None).
    pub fn orthogonal_complement(&self, gram: Option<&Matrix>) -> Subspace {
        let n = self.ambient;
        let rows: Vec<Vec<Q>> = self
            .rref_rows()
            .iter()
            .map(|r| {
                let x = svec_to_dense(r, n);
                match gram {
                    None => x,
                    Some(g) => (0..g.cols)
                        .map(|j| {
                            let mut acc = Q::zero();
                            for (i, xi) in x.iter().enumerate() {
                                if !xi.is_zero() && !g.data[i][j].is_zero() {
                                    acc += &(xi * &g.data[i][j]);
                                }
                            }
                            acc
                        })
                        .collect(),
                }
            })
            .collect();
        let cols = gram.map_or(n, |g| g.cols);
        if rows.is_empty() {
            return Subspace::full(cols);
        }
        let (_, null) = rank_and_nullspace(&Matrix::from_rows(cols, rows));
        Subspace::span_dense(cols, &null)
    }
}

// ---------------------------------------------------------------------------
// Permutations: p[i] is the image of i (0-based).

pub type Perm = Vec<usize>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn perm_inverse(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// (a . b)(i) = a(b(i))
pub fn perm_compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn perm_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

pub fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer-code rank; lexicographic order of image sequences.
pub fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

pub fn perm_unrank(n: usize, mut r: usize) -> Perm {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.iter().map(|&d| pool.remove(d)).collect()
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    (0..factorial(n)).map(|r| perm_unrank(n, r)).collect()
}

/// Sign of reordering graded symbols: `order[k]` is the old position placed at new position k.
pub fn koszul_sign(order: &[usize], degrees: &[i64]) -> i32 {
    let mut s = 1;
    for i in 0..order.len() {
        if degrees[order[i]].rem_euclid(2) == 0 {
            continue;
        }
        for j in i + 1..order.len() {
            if order[j] < order[i] && degrees[order[j]].rem_euclid(2) == 1 {
                s = -s;
            }
        }
    }
    s
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All set partitions of `items` into nonempty blocks, blocks ordered by their first element.
pub fn set_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0].clone();
    let rest = set_partitions(&items[1..]);
    let mut out = Vec::new();
    for p in rest {
        let mut q = vec![vec![first.clone()]];
        q.extend(p.iter().cloned());
        out.push(q);
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k].insert(0, first.clone());
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_arith_and_overflow() {
        let a = Q::new(6, -4);
        assert_eq!(a, Q::new(-3, 2));
        assert_eq!(a.to_string(), "-3/2");
        let big = Q::int(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Q::B(_)));
        assert_eq!(&s - &big, big);
        assert_eq!(Q::parse("10/4").unwrap(), Q::new(5, 2));
        assert_eq!(&Q::new(1, 3) * &Q::int(3), Q::one());
    }

    #[test]
    fn lehmer_roundtrip() {
        for n in 0..6 {
            for r in 0..factorial(n) {
                assert_eq!(perm_rank(&perm_unrank(n, r)), r);
            }
        }
        assert_eq!(perm_unrank(3, 0), vec![0, 1, 2]);
        assert_eq!(perm_unrank(3, 5), vec![2, 1, 0]);
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 2]), 1);
        assert_eq!(koszul_sign(&[2, 1, 0], &[1, 1, 1]), -1);
    }

    #[test]
    fn nullspace_small() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let (r, n) = rank_and_nullspace(&m);
        assert_eq!(r, 1);
        assert_eq!(n.len(), 2);
        for x in &n {
            let col = Matrix::from_rows(1, x.iter().map(|q| vec![q.clone()]).collect());
            assert!(m.mul(&col).is_zero());
        }
    }

    #[test]
    fn partitions_count() {
        let v: Vec<usize> = (0..5).collect();
        assert_eq!(set_partitions(&v).len(), 52);
    }

    #[test]
    fn intersect_and_complement() {
        let a = Subspace::span_dense(3, &[vec![Q::one(), Q::zero(), Q::zero()], vec![Q::zero(), Q::one(), Q::zero()]]);
        let b = Subspace::span_dense(3, &[vec![Q::zero(), Q::one(), Q::zero()], vec![Q::zero(), Q::zero(), Q::one()]]);
        assert_eq!(a.intersect(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        let c = a.orthogonal_complement(None);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&vec![(2, Q::one())]));
    }
}
