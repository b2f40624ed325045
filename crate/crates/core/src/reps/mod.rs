//! Finite-dimensional modules of `W̃_J̌ = 𝓛 ⋊ 𝒲_J̌`: induced irreducibles,
//! co-standard modules and Ω-induction.

mod costandard;
mod omega;

pub use costandard::{
    almost_char_cvr, builtin_costandard, load_costandard, CoStandardData, CoStandardError, BUILTIN_LABELS,
};
pub use omega::{kernel_idempotents, omega_action, omega_induce, IdempotentReport, OmegaAction};

use crate::alcove::{AlcoveError, LevelOnePoint, TorusData, TorusPoint};
use crate::coxeter::{quotient_coxeter_matrix, NodeSet, Order, DEFAULT_ORDER_CAP};
use crate::cyclotomic::Cyclo;
use crate::linalg::{identity, inverse, mat_mul, trace, Mat, Q};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error(transparent)]
    Alcove(#[from] AlcoveError),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
    #[error("expected {expected} matrices for the stabilizer generators, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("element is not in the group of the module")]
    NotInGroup,
}

/// `(λ, w)` with `λ ∈ 𝓛` on the dual basis and `w` an index into
/// `TorusData::group`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub lattice: Vec<i64>,
    pub finite: usize,
}

fn act(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl SemidirectElement {
    pub fn identity(data: &TorusData) -> Self {
        SemidirectElement { lattice: vec![0; data.rank()], finite: 0 }
    }

    pub fn translation(lattice: Vec<i64>) -> Self {
        SemidirectElement { lattice, finite: 0 }
    }

    pub fn finite(data: &TorusData, w: usize) -> Self {
        SemidirectElement { lattice: vec![0; data.rank()], finite: w }
    }

    /// `(x, w)(x′, w′) = (x + w·x′, ww′)`.
    pub fn multiply(&self, other: &Self, data: &TorusData) -> Self {
        let moved = act(&data.dual_action(self.finite), &other.lattice);
        SemidirectElement {
            lattice: self.lattice.iter().zip(&moved).map(|(a, b)| a + b).collect(),
            finite: data.multiply(self.finite, other.finite),
        }
    }

    pub fn inverse(&self, data: &TorusData) -> Self {
        let wi = data.inverse(self.finite);
        let moved = act(&data.dual_action(wi), &self.lattice);
        SemidirectElement { lattice: moved.into_iter().map(|x| -x).collect(), finite: wi }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTag {
    /// `𝓛 ⋊ 𝒲_J̌`; generators are the lattice basis, then the `ss_k`.
    Semidirect { datum: String, j: NodeSet },
    /// Extended affine Weyl group; generators `s_0 … s_n`, then Ω∖{1}.
    Affine { datum: String },
    /// `H ⋊ Ω_J`; generators of `H`, then every element of Ω_J.
    OmegaInduced { datum: String, j: NodeSet },
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |j: &NodeSet| j.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            GroupTag::Semidirect { datum, j } => write!(f, "L.W[{datum};{}]", set(j)),
            GroupTag::Affine { datum } => write!(f, "W~[{datum}]"),
            GroupTag::OmegaInduced { datum, j } => write!(f, "W.Omega[{datum};{}]", set(j)),
        }
    }
}

/// Generator images of a module; inverses are kept alongside.
#[derive(Clone, Debug)]
pub struct FiniteDimRep {
    pub tag: GroupTag,
    pub dim: usize,
    pub gens: Vec<Mat<Cyclo>>,
    pub inv_gens: Vec<Mat<Cyclo>>,
}

pub fn cyclo_mat(m: &Mat<Q>) -> Mat<Cyclo> {
    m.iter().map(|r| r.iter().map(|x| Cyclo::from_q(x.clone())).collect()).collect()
}

pub fn cyclo_identity(n: usize) -> Mat<Cyclo> {
    identity(n, &Cyclo::one())
}

pub fn mat_pow(m: &Mat<Cyclo>, k: u32) -> Mat<Cyclo> {
    let mut acc = cyclo_identity(m.len());
    for _ in 0..k {
        acc = mat_mul(&acc, m);
    }
    acc
}

impl FiniteDimRep {
    pub fn new(tag: GroupTag, dim: usize, gens: Vec<Mat<Cyclo>>) -> Result<Self, RepError> {
        let mut inv_gens = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.len() != dim || g.iter().any(|r| r.len() != dim) {
                return Err(RepError::Inconsistent(format!("generator {i} is not {dim}×{dim}")));
            }
            let inv = if dim == 0 { vec![] } else { inverse(g).ok_or_else(|| RepError::Inconsistent(format!("generator {i} is singular")))? };
            inv_gens.push(inv);
        }
        Ok(FiniteDimRep { tag, dim, gens, inv_gens })
    }

    /// Image of a word of `(generator, exponent)` pairs, left to right.
    pub fn word_image(&self, word: &[(usize, i64)]) -> Mat<Cyclo> {
        let mut acc = cyclo_identity(self.dim);
        for &(g, e) in word {
            let m = if e >= 0 { &self.gens[g] } else { &self.inv_gens[g] };
            for _ in 0..e.unsigned_abs() {
                acc = mat_mul(&acc, m);
            }
        }
        acc
    }

    /// Image of `(λ, w)` for a semidirect module over `data`.
    pub fn image(&self, data: &TorusData, g: &SemidirectElement) -> Result<Mat<Cyclo>, RepError> {
        if !matches!(self.tag, GroupTag::Semidirect { .. }) || g.lattice.len() != data.rank() {
            return Err(RepError::NotInGroup);
        }
        let r = data.rank();
        let mut word: Vec<(usize, i64)> = g.lattice.iter().enumerate().map(|(i, &l)| (i, l)).collect();
        word.extend(data.group[g.finite].word.iter().map(|&k| (r + k, 1)));
        Ok(self.word_image(&word))
    }
}

/// Trace of the image of `g`.
pub fn character(rep: &FiniteDimRep, data: &TorusData, g: &SemidirectElement) -> Result<Cyclo, RepError> {
    Ok(trace(&rep.image(data, g)?))
}

/// `Ind_{𝓛 ⋊ 𝒲_t}^{𝓛 ⋊ 𝒲_J̌}(t ⊗ ρ)` with the data needed for fast characters.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub rep: FiniteDimRep,
    pub point: TorusPoint,
    pub stabilizer: Vec<usize>,
    pub coset_reps: Vec<usize>,
    pub rho: HashMap<usize, Mat<Cyclo>>,
    pub rho_dim: usize,
}

fn pairing_root(t: &TorusPoint, lambda: &[i64]) -> Cyclo {
    Cyclo::exp_2pi_i(&t.pair(lambda))
}

fn block_matrix(n: usize, blocks: &[(usize, usize, Mat<Cyclo>)], bd: usize) -> Mat<Cyclo> {
    let mut m = vec![vec![Cyclo::zero(); n * bd]; n * bd];
    for (row, col, b) in blocks {
        for i in 0..bd {
            for j in 0..bd {
                m[row * bd + i][col * bd + j] = b[i][j].clone();
            }
        }
    }
    m
}

/// Extends `ρ` from the generators to the whole stabilizer, checking that
/// relations of the stabilizer hold.
fn extend_rho(
    data: &TorusData,
    lift: &[usize],
    rho: &[Mat<Cyclo>],
    dim: usize,
) -> Result<HashMap<usize, Mat<Cyclo>>, RepError> {
    let mut out = HashMap::new();
    out.insert(0usize, cyclo_identity(dim));
    let mut stack = vec![0usize];
    while let Some(a) = stack.pop() {
        for (idx, &g) in lift.iter().enumerate() {
            let b = data.right_mult[a][g];
            let m = mat_mul(&out[&a], &rho[idx]);
            match out.get(&b) {
                Some(prev) if *prev != m => {
                    return Err(RepError::Inconsistent(format!(
                        "ρ violates a relation of the stabilizer at generator ss_{}",
                        data.gens[g].0
                    )))
                }
                Some(_) => {}
                None => {
                    out.insert(b, m);
                    stack.push(b);
                }
            }
        }
    }
    Ok(out)
}

/// The induced module attached to `(S, d, ρ)`; `rho` gives matrices for the
/// generators `ss_k`, `k ∈ J̌ − S`, in increasing `k`.
pub fn build_irreducible(data: &TorusData, d: &LevelOnePoint, rho: &[Mat<Q>]) -> Result<InducedModule, RepError> {
    d.real_coords()?;
    let report = data.torus_stabilizer(d)?;
    let cell = crate::alcove::cell_of(d).ok_or(AlcoveError::NotInDomain)?;
    let lift = data.lift_generators(&cell.s);
    if lift.len() != rho.len() {
        return Err(RepError::WrongGeneratorCount { expected: lift.len(), got: rho.len() });
    }
    let rho_dim = rho.first().map_or(1, |m| m.len());
    let rho_c: Vec<Mat<Cyclo>> = rho.iter().map(cyclo_mat).collect();
    let rho_ext = extend_rho(data, &lift, &rho_c, rho_dim)?;
    let t = report.point;
    let stab = report.stabilizer;

    // first index in each left coset w𝒲_t; BFS order makes these shortest
    let mut coset_of = vec![usize::MAX; data.group_order()];
    let mut reps = Vec::new();
    for a in 0..data.group_order() {
        if coset_of[a] == usize::MAX {
            for &u in &stab {
                coset_of[data.multiply(a, u)] = reps.len();
            }
            reps.push(a);
        }
    }
    let inv_reps: Vec<usize> = reps.iter().map(|&r| data.inverse(r)).collect();
    let n = reps.len();
    let r = data.rank();

    let mut gens = Vec::new();
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        let blocks: Vec<_> = (0..n)
            .map(|c| {
                let moved = act(&data.dual_action(inv_reps[c]), &e);
                let z = pairing_root(&t, &moved);
                let mut b = cyclo_identity(rho_dim);
                for row in b.iter_mut() {
                    for x in row.iter_mut() {
                        *x = x.clone() * z.clone();
                    }
                }
                (c, c, b)
            })
            .collect();
        gens.push(block_matrix(n, &blocks, rho_dim));
    }
    for g in 0..data.gens.len() {
        let w = data.right_mult[0][g];
        let blocks: Vec<_> = (0..n)
            .map(|c| {
                let ww = data.multiply(w, reps[c]);
                let j = coset_of[ww];
                let u = data.multiply(inv_reps[j], ww);
                (j, c, rho_ext[&u].clone())
            })
            .collect();
        gens.push(block_matrix(n, &blocks, rho_dim));
    }
    let tag = GroupTag::Semidirect { datum: data.datum.label().to_string(), j: data.j.clone() };
    let rep = FiniteDimRep::new(tag, n * rho_dim, gens)?;
    let module = InducedModule { rep, point: t, stabilizer: stab, coset_reps: reps, rho: rho_ext, rho_dim };
    check_relations(data, &module.rep)?;
    Ok(module)
}

/// Trivial one-dimensional `ρ` for the stabilizer generators of `d`.
pub fn trivial_rho(data: &TorusData, d: &LevelOnePoint) -> Result<Vec<Mat<Q>>, RepError> {
    let cell = crate::alcove::cell_of(d).ok_or(AlcoveError::NotInDomain)?;
    let k = data.lift_generators(&cell.s).len();
    Ok(vec![vec![vec![Q::from_integer(1.into())]]; k])
}

/// Defining relations: `ss_k² = 1`, finite braid orders from the quotient
/// Coxeter matrix, commuting translations and `w e_i w⁻¹ = w·e_i`.
pub fn check_relations(data: &TorusData, rep: &FiniteDimRep) -> Result<(), RepError> {
    let r = data.rank();
    let ng = data.gens.len();
    let id = cyclo_identity(rep.dim);
    let fail = |m: String| Err(RepError::Inconsistent(m));
    if ng > 0 {
        let cox = quotient_coxeter_matrix(&data.datum, &data.j, DEFAULT_ORDER_CAP)
            .map_err(|e| RepError::Inconsistent(e.to_string()))?;
        for a in 0..ng {
            if mat_pow(&rep.gens[r + a], 2) != id {
                return fail(format!("ss_{} is not an involution", data.gens[a].0));
            }
            for b in a + 1..ng {
                if let Order::Finite(m) = cox[a][b] {
                    if mat_pow(&mat_mul(&rep.gens[r + a], &rep.gens[r + b]), m) != id {
                        return fail(format!("braid relation of order {m} fails for ss_{}, ss_{}", data.gens[a].0, data.gens[b].0));
                    }
                }
            }
        }
    }
    for a in 0..r {
        for b in a + 1..r {
            if mat_mul(&rep.gens[a], &rep.gens[b]) != mat_mul(&rep.gens[b], &rep.gens[a]) {
                return fail(format!("translations {a} and {b} do not commute"));
            }
        }
    }
    for g in 0..ng {
        let w = data.right_mult[0][g];
        let m = data.dual_action(w);
        for i in 0..r {
            let mut e = vec![0i64; r];
            e[i] = 1;
            let moved = act(&m, &e);
            let lhs = mat_mul(&mat_mul(&rep.gens[r + g], &rep.gens[i]), &rep.inv_gens[r + g]);
            let word: Vec<(usize, i64)> = moved.iter().enumerate().map(|(k, &l)| (k, l)).collect();
            if lhs != rep.word_image(&word) {
                return fail(format!("ss_{} does not normalize the translation {i} correctly", data.gens[g].0));
            }
        }
    }
    Ok(())
}

impl InducedModule {
    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    /// `χ(λ, w) = Σ t(w_r⁻¹λ)·tr ρ(w_r⁻¹ w w_r)` over cosets fixed by `w`.
    pub fn character(&self, data: &TorusData, g: &SemidirectElement) -> Cyclo {
        let mut acc = Cyclo::zero();
        for &wr in &self.coset_reps {
            let wi = data.inverse(wr);
            let u = data.multiply(data.multiply(wi, g.finite), wr);
            if let Some(m) = self.rho.get(&u) {
                let moved = act(&data.dual_action(wi), &g.lattice);
                acc = acc + pairing_root(&self.point, &moved) * trace(m);
            }
        }
        acc
    }

    /// `⟨χ, χ⟩` over the finite quotient `(𝓛/N𝓛) ⋊ 𝒲_J̌`, `N` the order of
    /// the torus point.
    pub fn mackey_norm(&self, data: &TorusData) -> Q {
        let n = self.point.order() as i64;
        let r = data.rank();
        let mut total = Cyclo::zero();
        let mut count: i64 = 0;
        let mut lambda = vec![0i64; r];
        loop {
            for w in 0..data.group_order() {
                let c = self.character(data, &SemidirectElement { lattice: lambda.clone(), finite: w });
                total = total + c.clone() * c.conj();
                count += 1;
            }
            // odometer over (ℤ/N)^r
            let mut i = 0;
            while i < r {
                lambda[i] += 1;
                if lambda[i] < n {
                    break;
                }
                lambda[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        total.to_rational().expect("norm is rational") / Q::from_integer(count.into())
    }
}
