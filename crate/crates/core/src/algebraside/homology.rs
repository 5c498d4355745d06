//! Homology of a Leibniz pair: Chevalley-Eilenberg chains on the closed side and the
//! Chevalley-Eilenberg complex with Hochschild coefficients on the open side.

use super::*;
use crate::dgcalc::ChainComplex;

/// Checks the Leibniz-pair axioms on basis elements: a Lie algebra acting by derivations on an
/// associative algebra, everything in degree 0.
pub fn check_leibniz_pair(a: &PairAlgebra) -> Result<(), AlgebraError> {
    if a.closed_deg.iter().chain(&a.open_deg).any(|&d| d != 0) {
        return Err(AlgebraError::Invalid("Leibniz-pair homology is implemented for algebras concentrated in degree 0".into()));
    }
    if !a.unary.is_empty() {
        return Err(AlgebraError::Invalid("a Leibniz pair has no unary operation".into()));
    }
    let (nl, na) = a.dims();
    let e = |i: usize| -> SVec { vec![(i, Q::one())] };
    let fail = |what: &str, args: &[usize]| Err(AlgebraError::Invalid(format!("{} fails on basis elements {:?}", what, args)));
    let sub = |x: &SVec, y: &SVec| svec_add_scaled(x, &Q::int(-1), y);
    for i in 0..nl {
        for j in 0..nl {
            if !svec_add_scaled(&a.bracket_v(&e(i), &e(j)), &Q::one(), &a.bracket_v(&e(j), &e(i))).is_empty() {
                return fail("antisymmetry", &[i, j]);
            }
            for k in 0..nl {
                let t1 = a.bracket_v(&a.bracket_v(&e(i), &e(j)), &e(k));
                let t2 = a.bracket_v(&a.bracket_v(&e(j), &e(k)), &e(i));
                let t3 = a.bracket_v(&a.bracket_v(&e(k), &e(i)), &e(j));
                if !svec_add_scaled(&svec_add_scaled(&t1, &Q::one(), &t2), &Q::one(), &t3).is_empty() {
                    return fail("Jacobi", &[i, j, k]);
                }
            }
            for x in 0..na {
                // [[l_i, l_j], a] = [l_i, [l_j, a]] - [l_j, [l_i, a]]
                let lhs = a.action_v(&a.bracket_v(&e(i), &e(j)), &e(x));
                let rhs = sub(&a.action_v(&e(i), &a.action_v(&e(j), &e(x))), &a.action_v(&e(j), &a.action_v(&e(i), &e(x))));
                if lhs != rhs {
                    return fail("Lie morphism", &[i, j, x]);
                }
            }
        }
        for x in 0..na {
            for y in 0..na {
                let lhs = a.action_v(&e(i), &a.product_v(&e(x), &e(y)));
                let rhs = svec_add_scaled(&a.product_v(&a.action_v(&e(i), &e(x)), &e(y)), &Q::one(), &a.product_v(&e(x), &a.action_v(&e(i), &e(y))));
                if lhs != rhs {
                    return fail("derivation", &[i, x, y]);
                }
            }
        }
    }
    for x in 0..na {
        for y in 0..na {
            for z in 0..na {
                if a.product_v(&a.product_v(&e(x), &e(y)), &e(z)) != a.product_v(&e(x), &a.product_v(&e(y), &e(z))) {
                    return fail("associativity", &[x, y, z]);
                }
            }
        }
    }
    Ok(())
}

/// Homology per weight and degree; chain degree is (number of tensor factors) - 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LpHomology {
    pub closed: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    pub open: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    pub closed_chains: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    pub open_chains: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    /// first chain whose image under d^2 is nonzero
    pub square_defect: Option<String>,
}

type Chain = (Vec<usize>, Vec<usize>);

fn wedge(first: usize, rest: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = vec![first];
    v.extend(rest);
    sort_antisymmetric(&vec![0; first.max(rest.iter().copied().max().unwrap_or(0)) + 1], &v)
}

fn without(v: &[usize], drop: &[usize]) -> Vec<usize> {
    v.iter().enumerate().filter(|(k, _)| !drop.contains(k)).map(|(_, &x)| x).collect()
}

/// d(l_1 ∧ ... ∧ l_p ⊗ a_1 ⊗ ... ⊗ a_q) with the three families of terms.
pub fn ce_hoch_differential(a: &PairAlgebra, c: &Chain) -> Lin<Chain> {
    let (l, w) = c;
    let p = l.len();
    let q = w.len();
    let mut out = Lin::new();
    for i in 0..p {
        for j in i + 1..p {
            let s = parity((i + j + 1) as i64);
            let rest = without(l, &[i, j]);
            for (y, c) in a.bracket(l[i], l[j]) {
                if let Some((m, s2)) = wedge(*y, &rest) {
                    lin_add(&mut out, (m, w.clone()), &(c * &Q::sign(s * s2)));
                }
            }
        }
    }
    for i in 0..p {
        let rest = without(l, &[i]);
        for j in 0..q {
            let s = parity((p - i) as i64);
            for (y, c) in a.action(l[i], w[j]) {
                let mut nw = w.clone();
                nw[j] = *y;
                lin_add(&mut out, (rest.clone(), nw), &(c * &Q::sign(s)));
            }
        }
    }
    for i in 0..q.saturating_sub(1) {
        let s = parity((p + i + 1) as i64);
        for (y, c) in a.product(w[i], w[i + 1]) {
            let mut nw = w[..i].to_vec();
            nw.push(*y);
            nw.extend(&w[i + 2..]);
            lin_add(&mut out, (l.clone(), nw), &(c * &Q::sign(s)));
        }
    }
    out
}

fn chains(a: &PairAlgebra, open: bool, max_len: usize, bound: usize) -> BTreeMap<(usize, usize), BTreeMap<i64, Vec<Chain>>> {
    let (nl, na) = a.dims();
    let weighted = a.is_weighted();
    let weight = |w: &[(usize, usize)], i: usize| w.get(i).copied().unwrap_or((0, 0));
    let fits = |t: (usize, usize), len: usize| len <= max_len && (!weighted || t.0 + t.1 <= bound);
    let add = |t: (usize, usize), u: (usize, usize)| (t.0 + u.0, t.1 + u.1);
    // wedges with strictly increasing indices, then words, extended while they fit
    let mut wedges: Vec<(Vec<usize>, (usize, usize))> = Vec::new();
    let mut stack = vec![(Vec::new(), (0, 0))];
    while let Some((l, t)) = stack.pop() {
        for i in l.last().map_or(0, |x| x + 1)..nl {
            let u = add(t, weight(&a.closed_weight, i));
            if fits(u, l.len() + 1 + open as usize) {
                stack.push(([l.clone(), vec![i]].concat(), u));
            }
        }
        wedges.push((l, t));
    }
    let mut out: BTreeMap<(usize, usize), BTreeMap<i64, Vec<Chain>>> = BTreeMap::new();
    for (l, t) in wedges {
        let mut stack = vec![(Vec::new(), t)];
        while let Some((w, u)) = stack.pop() {
            if open {
                for i in 0..na {
                    let v = add(u, weight(&a.open_weight, i));
                    if fits(v, l.len() + w.len() + 1) {
                        stack.push(([w.clone(), vec![i]].concat(), v));
                    }
                }
            }
            let len = l.len() + w.len();
            if len == 0 || open == w.is_empty() {
                continue;
            }
            out.entry(u).or_default().entry(len as i64 - 1).or_default().push((l.clone(), w));
        }
    }
    for by_deg in out.values_mut() {
        for v in by_deg.values_mut() {
            v.sort();
        }
    }
    out
}

fn complex_of(a: &PairAlgebra, by_deg: &BTreeMap<i64, Vec<Chain>>) -> ChainComplex {
    let index: BTreeMap<&Chain, usize> = by_deg.values().flat_map(|v| v.iter().enumerate().map(|(i, c)| (c, i))).collect();
    let mut cx = ChainComplex::default();
    for (&k, cs) in by_deg {
        cx.dims.insert(k, cs.len());
        let cols: Vec<SVec> = cs
            .iter()
            .map(|c| {
                let img = ce_hoch_differential(a, c);
                svec_from_map(img.iter().map(|(t, v)| (*index.get(t).expect("image outside the truncation"), v.clone())).collect())
            })
            .collect();
        cx.d.insert(k, cols);
    }
    cx
}

/// CE/Hochschild homology of a Leibniz pair. For weight-graded algebras (every basis element of
/// positive weight) the chains are truncated at total weight `bound` and all degrees are exact;
/// otherwise chains have at most `bound + 1` factors and degrees up to `bound - 1` are reported.
pub fn ce_hochschild_homology(a: &PairAlgebra, bound: usize) -> Result<LpHomology, AlgebraError> {
    check_leibniz_pair(a)?;
    let weighted = a.is_weighted();
    let max_len = if weighted { bound } else { bound + 1 };
    let mut h = LpHomology::default();
    for open in [false, true] {
        for (wt, by_deg) in chains(a, open, max_len, bound) {
            let cx = complex_of(a, &by_deg);
            if h.square_defect.is_none() {
                if let Some((k, i, _)) = cx.square_defect() {
                    h.square_defect = Some(format!("{:?}", by_deg[&k][i]));
                }
            }
            let mut hom = cx.homology();
            let mut dims = cx.dims.clone();
            if !weighted {
                hom.retain(|k, _| *k <= bound as i64 - 1);
                dims.retain(|k, _| *k <= bound as i64 - 1);
            }
            hom.retain(|_, n| *n > 0);
            let (hm, cm) = if open { (&mut h.open, &mut h.open_chains) } else { (&mut h.closed, &mut h.closed_chains) };
            hm.insert(wt, hom);
            cm.insert(wt, dims);
        }
    }
    Ok(h)
}
