use super::{cyclo_identity, FiniteDimRep, GroupTag, RepError};
use crate::coxeter::{fixed_subgroup_generators, omega_stabilizer, CartanDatum, CoxeterError, DiagramAutomorphism, NodeSet};
use crate::cyclotomic::Cyclo;
use crate::linalg::{mat_mul, rank, Mat, Q};
use std::sync::Arc;

/// Ω_J together with its permutation action on the generators `ss_K` of the
/// fixed subgroup: `ξ ss_g ξ⁻¹ = ss_{act[ξ][g]}`.
#[derive(Clone, Debug)]
pub struct OmegaAction {
    pub datum: String,
    pub j: NodeSet,
    pub elements: Vec<DiagramAutomorphism>,
    pub act: Vec<Vec<usize>>,
}

impl OmegaAction {
    pub fn trivial(datum: &str, j: &NodeSet, n_gens: usize, size: usize) -> Self {
        OmegaAction {
            datum: datum.into(),
            j: j.clone(),
            elements: vec![DiagramAutomorphism::identity(size)],
            act: vec![(0..n_gens).collect()],
        }
    }

    pub fn index_of(&self, x: &DiagramAutomorphism) -> Option<usize> {
        self.elements.iter().position(|y| y == x)
    }

    fn product(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.elements[a].compose(&self.elements[b])).expect("Ω_J is closed")
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&x| self.act[x].iter().enumerate().all(|(a, &b)| a == b)).collect()
    }
}

pub fn omega_action(
    datum: &Arc<CartanDatum>,
    j: &NodeSet,
    omega: &DiagramAutomorphism,
) -> Result<OmegaAction, CoxeterError> {
    let gens = fixed_subgroup_generators(datum, j, omega)?;
    let elements = omega_stabilizer(datum, j);
    let mut act = Vec::new();
    for xi in &elements {
        let xinv = xi.inverse();
        let mut row = Vec::new();
        for g in &gens {
            let c = g.element.conjugate_by(&xinv);
            let pos = gens
                .iter()
                .position(|h| h.element == c)
                .ok_or_else(|| CoxeterError::Structural("Ω_J does not permute the generators".into()))?;
            row.push(pos);
        }
        act.push(row);
    }
    Ok(OmegaAction { datum: datum.label().to_string(), j: j.clone(), elements, act })
}

/// Induction from `H` to `H ⋊ Ω_J`; `rep` lists the images of the `H`
/// generators in the order used by `action`.
pub fn omega_induce(rep: &FiniteDimRep, action: &OmegaAction) -> Result<FiniteDimRep, RepError> {
    let n = action.elements.len();
    let d = rep.dim;
    let inv: Vec<usize> =
        (0..n).map(|x| action.index_of(&action.elements[x].inverse()).expect("closed")).collect();
    let embed = |blocks: Vec<(usize, usize, &Mat<Cyclo>)>| {
        let mut m = vec![vec![Cyclo::zero(); n * d]; n * d];
        for (row, col, b) in blocks {
            for i in 0..d {
                for k in 0..d {
                    m[row * d + i][col * d + k] = b[i][k].clone();
                }
            }
        }
        m
    };
    let mut gens = Vec::new();
    for g in 0..rep.gens.len() {
        // h·(ξ ⊗ v) = ξ ⊗ (ξ⁻¹hξ)v
        let blocks = (0..n).map(|p| (p, p, &rep.gens[action.act[inv[p]][g]])).collect();
        gens.push(embed(blocks));
    }
    let id = cyclo_identity(d);
    for q in 0..n {
        let blocks = (0..n).map(|p| (action.product(q, p), p, &id)).collect();
        gens.push(embed(blocks));
    }
    let out = FiniteDimRep::new(GroupTag::OmegaInduced { datum: action.datum.clone(), j: action.j.clone() }, n * d, gens)?;
    check_omega_relations(&out, rep.gens.len(), action)?;
    Ok(out)
}

fn check_omega_relations(rep: &FiniteDimRep, h: usize, action: &OmegaAction) -> Result<(), RepError> {
    for x in 0..action.elements.len() {
        for y in 0..action.elements.len() {
            if mat_mul(&rep.gens[h + x], &rep.gens[h + y]) != rep.gens[h + action.product(x, y)] {
                return Err(RepError::Inconsistent("Ω_J is not represented multiplicatively".into()));
            }
        }
        for g in 0..h {
            let lhs = mat_mul(&mat_mul(&rep.gens[h + x], &rep.gens[g]), &rep.inv_gens[h + x]);
            if lhs != rep.gens[action.act[x][g]] {
                return Err(RepError::Inconsistent(format!("conjugation by {} fails on generator {g}", action.elements[x])));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct IdempotentReport {
    pub kernel_order: usize,
    /// One idempotent per character of the kernel, trivial character first.
    pub idempotents: Vec<Mat<Cyclo>>,
    pub ranks: Vec<usize>,
}

/// Central idempotents `e_χ = ½(1 ± κ)` of an order-2 kernel `{1, κ}`
/// acting on an Ω-induced module, with the splitting checks: each is
/// idempotent and central, they are orthogonal, sum to 1 and cut out
/// summands of equal dimension.
pub fn kernel_idempotents(rep: &FiniteDimRep, h: usize, action: &OmegaAction) -> Result<IdempotentReport, RepError> {
    let kernel = action.kernel();
    let fail = |m: &str| Err(RepError::Inconsistent(m.into()));
    if kernel.len() != 2 {
        return fail("kernel of order 2 required");
    }
    let kappa = &rep.gens[h + kernel[1]];
    let id = cyclo_identity(rep.dim);
    let half = Cyclo::from_q(Q::new(1.into(), 2.into()));
    let comb = |sign: i64| -> Mat<Cyclo> {
        id.iter()
            .zip(kappa)
            .map(|(r1, r2)| {
                r1.iter().zip(r2).map(|(a, b)| (a.clone() + b.clone() * Cyclo::int(sign)) * half.clone()).collect()
            })
            .collect()
    };
    let es = vec![comb(1), comb(-1)];
    let zero = vec![vec![Cyclo::zero(); rep.dim]; rep.dim];
    for e in &es {
        if mat_mul(e, e) != *e {
            return fail("not idempotent");
        }
        if rep.gens.iter().any(|g| mat_mul(g, e) != mat_mul(e, g)) {
            return fail("not central");
        }
    }
    if mat_mul(&es[0], &es[1]) != zero {
        return fail("not orthogonal");
    }
    let sum: Mat<Cyclo> =
        es[0].iter().zip(&es[1]).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()).collect();
    if sum != id {
        return fail("idempotents do not sum to 1");
    }
    let ranks: Vec<usize> = es.iter().map(rank).collect();
    if ranks[0] != ranks[1] || ranks[0] + ranks[1] != rep.dim {
        return fail("summands of unequal dimension");
    }
    Ok(IdempotentReport { kernel_order: 2, idempotents: es, ranks })
}
