//! Parabolic subgroups `W_J`, longest elements and the subgroup `ᴶ̌W` of
//! minimal-length normalizing elements.

use super::cartan::CartanDatum;
use super::weyl::WeylElement;
use super::CoxeterError;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

pub type NodeSet = BTreeSet<usize>;

pub fn complement(datum: &CartanDatum, j: &NodeSet) -> NodeSet {
    (0..datum.size()).filter(|i| !j.contains(i)).collect()
}

/// Longest element of the finite parabolic subgroup `W_J`.
pub fn longest_element(datum: &Arc<CartanDatum>, j: &NodeSet) -> Result<WeylElement, CoxeterError> {
    if j.len() >= datum.size() {
        return Err(CoxeterError::InfiniteGroup);
    }
    let mut w = WeylElement::identity(datum);
    while let Some(&k) = j.iter().find(|&&k| !w.has_right_descent(k)) {
        w = w.mul_generator(k);
    }
    Ok(w)
}

/// All elements of `W_J` (finite for proper `J`).
pub fn parabolic_elements(datum: &Arc<CartanDatum>, j: &NodeSet) -> Result<Vec<WeylElement>, CoxeterError> {
    if j.len() >= datum.size() {
        return Err(CoxeterError::InfiniteGroup);
    }
    let mut seen = HashSet::new();
    let mut out = vec![WeylElement::identity(datum)];
    seen.insert(out[0].clone());
    let mut i = 0;
    while i < out.len() {
        for &k in j {
            let x = out[i].mul_generator(k);
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// `w ∈ ᴶ̌W` iff `w` permutes `{b_j : j ∈ J}`.
pub fn in_min_coset_subgroup(w: &WeylElement, j: &NodeSet) -> bool {
    let n = w.datum().size();
    j.iter().all(|&k| {
        let mut e = vec![0; n];
        e[k] = 1;
        let img = w.apply(&e);
        let support: Vec<usize> = (0..n).filter(|&i| img[i] != 0).collect();
        support.len() == 1 && img[support[0]] == 1 && j.contains(&support[0])
    })
}

#[derive(Clone, Debug)]
pub struct CosetGenerator {
    pub k: usize,
    pub element: WeylElement,
}

/// `ss_k = w₀^{J∪k} w₀^J` for every `k ∈ J̌` with `J ∪ {k}` proper.
pub fn min_coset_generators(datum: &Arc<CartanDatum>, j: &NodeSet) -> Result<Vec<CosetGenerator>, CoxeterError> {
    let jc = complement(datum, j);
    if jc.is_empty() {
        return Err(CoxeterError::InfiniteGroup);
    }
    if jc.len() == 1 {
        return Ok(vec![]);
    }
    let w0j = longest_element(datum, j)?;
    let mut out = Vec::new();
    for &k in &jc {
        let mut jk = j.clone();
        jk.insert(k);
        let ss = longest_element(datum, &jk)?.mul(&w0j);
        if !in_min_coset_subgroup(&ss, j) {
            return Err(CoxeterError::NotInMinCosetSubgroup(k));
        }
        out.push(CosetGenerator { k, element: ss });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

pub const DEFAULT_ORDER_CAP: u32 = 24;

/// Order of an element, certified infinite when a power is a nontrivial
/// translation.
pub fn element_order(x: &WeylElement, cap: u32) -> Option<Order> {
    let mut p = x.clone();
    for m in 1..=cap {
        if p.is_identity() {
            return Some(Order::Finite(m));
        }
        if p.is_translation() {
            return Some(Order::Infinite);
        }
        p = p.mul(x);
    }
    None
}

/// Coxeter matrix of `ᴶ̌W` on the generators `ss_k`, indexed by `J̌` in
/// increasing order.
pub fn quotient_coxeter_matrix(
    datum: &Arc<CartanDatum>,
    j: &NodeSet,
    order_cap: u32,
) -> Result<Vec<Vec<Order>>, CoxeterError> {
    let gens = min_coset_generators(datum, j)?;
    let r = gens.len();
    let mut m = vec![vec![Order::Finite(1); r]; r];
    for a in 0..r {
        for b in a + 1..r {
            let x = gens[a].element.mul(&gens[b].element);
            let o = element_order(&x, order_cap).ok_or(CoxeterError::UndecidedOrder(gens[a].k, gens[b].k))?;
            m[a][b] = o;
            m[b][a] = o;
        }
    }
    Ok(m)
}
