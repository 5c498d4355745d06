//! Algebras over the two-colored operads: free algebras, cofree coalgebras and their
//! coderivations, Leibniz-pair homology and the strong homotopy checker.

pub mod cofree;
pub mod free;
pub mod homology;
pub mod shlp;

pub use cofree::*;
pub use free::*;
pub use homology::*;
pub use shlp::*;

use crate::kernel::*;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Basis symbols with degrees for the closed and the open color.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedPair {
    pub closed: Vec<(String, i64)>,
    pub open: Vec<(String, i64)>,
}

impl GradedPair {
    pub fn new(closed: &[(&str, i64)], open: &[(&str, i64)]) -> GradedPair {
        let own = |v: &[(&str, i64)]| v.iter().map(|(s, d)| (s.to_string(), *d)).collect();
        GradedPair { closed: own(closed), open: own(open) }
    }
    /// `nc` closed symbols x1.. and `no` open symbols a1.., all in degree 0.
    pub fn ungraded(nc: usize, no: usize) -> GradedPair {
        GradedPair { closed: (1..=nc).map(|i| (format!("x{}", i), 0)).collect(), open: (1..=no).map(|i| (format!("a{}", i), 0)).collect() }
    }
    pub fn closed_degrees(&self) -> Vec<i64> {
        self.closed.iter().map(|x| x.1).collect()
    }
    pub fn open_degrees(&self) -> Vec<i64> {
        self.open.iter().map(|x| x.1).collect()
    }
    pub fn shifted(&self, by: i64) -> GradedPair {
        let sh = |v: &[(String, i64)]| v.iter().map(|(s, d)| (s.clone(), d + by)).collect();
        GradedPair { closed: sh(&self.closed), open: sh(&self.open) }
    }
    pub fn closed_index(&self, name: &str) -> Option<usize> {
        self.closed.iter().position(|x| x.0 == name)
    }
    pub fn open_index(&self, name: &str) -> Option<usize> {
        self.open.iter().position(|x| x.0 == name)
    }
}

/// Linear combinations keyed by basis monomials.
pub type Lin<K> = BTreeMap<K, Q>;

pub fn lin_add<K: Ord>(m: &mut Lin<K>, k: K, c: &Q) {
    if c.is_zero() {
        return;
    }
    match m.entry(k) {
        Entry::Occupied(mut e) => {
            let v = e.get() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

pub fn lin_to_svec(m: Lin<usize>) -> SVec {
    svec_from_map(m)
}

pub(crate) fn parity(x: i64) -> i32 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sorts a graded-commutative monomial, returning the Koszul sign; `None` when an odd symbol repeats.
pub fn sort_graded(deg: &[i64], v: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by_key(|&i| (v[i], i));
    let degs: Vec<i64> = v.iter().map(|&i| deg[i]).collect();
    let sorted: Vec<usize> = order.iter().map(|&i| v[i]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1] && deg[w[0]].rem_euclid(2) == 1) {
        return None;
    }
    Some((sorted, koszul_sign(&order, &degs)))
}

/// Sorts a graded-antisymmetric argument list: sign of the permutation times the Koszul sign;
/// `None` when an even symbol repeats.
pub fn sort_antisymmetric(deg: &[i64], v: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by_key(|&i| (v[i], i));
    let sorted: Vec<usize> = order.iter().map(|&i| v[i]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1] && deg[w[0]].rem_euclid(2) == 0) {
        return None;
    }
    let degs: Vec<i64> = v.iter().map(|&i| deg[i]).collect();
    Some((sorted, perm_sign(&order) * koszul_sign(&order, &degs)))
}
