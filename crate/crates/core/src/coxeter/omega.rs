//! The group Ω of special diagram automorphisms, fixed-point subgroups and
//! the kernel/image splitting of the conjugation action.

use super::cartan::{AffineType, CartanDatum};
use super::parabolic::{in_min_coset_subgroup, longest_element};
use super::weyl::WeylElement;
use super::CoxeterError;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A permutation `i ↦ perm[i]` of the nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn new(perm: Vec<usize>) -> Result<Self, CoxeterError> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(CoxeterError::Parse("not a permutation".into()));
            }
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism { perm: (0..n).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        DiagramAutomorphism { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAutomorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn fixed_points(&self) -> usize {
        self.perm.iter().enumerate().filter(|(i, p)| i == *p).count()
    }

    /// Permutation matrix with `b_i ↦ b_{ξ(i)}`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.perm.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &p) in self.perm.iter().enumerate() {
            m[p][i] = 1;
        }
        m
    }

    pub fn preserves(&self, d: &CartanDatum) -> bool {
        let n = d.size();
        self.perm.len() == n
            && (0..n).all(|i| {
                d.marks()[self.perm[i]] == d.marks()[i]
                    && (0..n).all(|j| d.pairing()[self.perm[i]][self.perm[j]] == d.pairing()[i][j])
            })
    }

    pub fn maps_set(&self, s: &BTreeSet<usize>) -> BTreeSet<usize> {
        s.iter().map(|&i| self.perm[i]).collect()
    }

    pub fn orbits_on(&self, s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut left = s.clone();
        let mut out = Vec::new();
        while let Some(&i) = left.iter().next() {
            let mut orb = BTreeSet::new();
            let mut j = i;
            while orb.insert(j) {
                j = self.perm[j];
            }
            for k in &orb {
                left.remove(k);
            }
            out.push(orb);
        }
        out
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        write!(f, "o({})", s.join(","))
    }
}

fn generators(d: &CartanDatum) -> Vec<Vec<usize>> {
    let size = d.size();
    let n = size - 1;
    let swap = |pairs: &[(usize, usize)]| {
        let mut p: Vec<usize> = (0..size).collect();
        for &(a, b) in pairs {
            p.swap(a, b);
        }
        p
    };
    let flip: Vec<usize> = (0..size).map(|i| n - i).collect();
    match d.label() {
        AffineType::A(_) => vec![(0..size).map(|i| (i + 1) % size).collect()],
        AffineType::B(_) => vec![swap(&[(0, 1)])],
        AffineType::C(_) => vec![flip],
        AffineType::D(n) if n % 2 == 0 => vec![swap(&[(0, 1), (n - 1, n)]), flip],
        AffineType::D(n) => {
            let mut p = flip;
            p[0] = n;
            p[n] = 1;
            p[1] = n - 1;
            p[n - 1] = 0;
            vec![p]
        }
        AffineType::E6 => {
            let mut p: Vec<usize> = (0..size).collect();
            for (a, b) in [(0, 1), (1, 6), (6, 0), (2, 3), (3, 5), (5, 2)] {
                p[a] = b;
            }
            vec![p]
        }
        AffineType::E7 => vec![swap(&[(0, 7), (1, 6), (3, 5)])],
        AffineType::E8 | AffineType::F4 | AffineType::G2 => vec![],
    }
}

/// All of Ω, sorted.
pub fn omega_group(d: &CartanDatum) -> Vec<DiagramAutomorphism> {
    let gens: Vec<DiagramAutomorphism> =
        generators(d).into_iter().map(|p| DiagramAutomorphism { perm: p }).collect();
    debug_assert!(gens.iter().all(|g| g.preserves(d)));
    let mut set = BTreeSet::new();
    let mut stack = vec![DiagramAutomorphism::identity(d.size())];
    while let Some(x) = stack.pop() {
        if set.insert(x.clone()) {
            for g in &gens {
                stack.push(g.compose(&x));
            }
        }
    }
    set.into_iter().collect()
}

/// `Ω_J = {ξ : ξ(J) = J}`.
pub fn omega_stabilizer(d: &CartanDatum, j: &BTreeSet<usize>) -> Vec<DiagramAutomorphism> {
    omega_group(d).into_iter().filter(|x| x.maps_set(j) == *j).collect()
}

#[derive(Clone, Debug)]
pub struct OrbitGenerator {
    pub orbit: BTreeSet<usize>,
    pub element: WeylElement,
}

/// Generators `ss_K = w₀^{J∪K} w₀^J` of the subgroup fixed by `Ad(ω)`, one per
/// ω-orbit `K ≠ J̌` of `J̌`.
pub fn fixed_subgroup_generators(
    datum: &Arc<CartanDatum>,
    j: &BTreeSet<usize>,
    omega: &DiagramAutomorphism,
) -> Result<Vec<OrbitGenerator>, CoxeterError> {
    if omega.maps_set(j) != *j || !omega.preserves(datum) {
        return Err(CoxeterError::NotInStabilizer);
    }
    let jc: BTreeSet<usize> = (0..datum.size()).filter(|i| !j.contains(i)).collect();
    let w0j = longest_element(datum, j)?;
    let mut out = Vec::new();
    for orbit in omega.orbits_on(&jc) {
        if orbit == jc {
            continue;
        }
        let union: BTreeSet<usize> = j.union(&orbit).copied().collect();
        let ss = longest_element(datum, &union)?.mul(&w0j);
        let fixed = ss.conjugate_by(omega) == ss;
        if !fixed || !in_min_coset_subgroup(&ss, j) {
            return Err(CoxeterError::OrbitCheckFailed(orbit.into_iter().collect()));
        }
        out.push(OrbitGenerator { orbit, element: ss });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingCase {
    /// Trivial kernel.
    Injective,
    /// Trivial image.
    Trivial,
    /// Kernel and image both of order 2.
    Mixed,
}

#[derive(Clone, Debug)]
pub struct OmegaSplitting {
    pub case: SplittingCase,
    /// Kernel of the conjugation action, as a subgroup of Ω_J.
    pub kernel: Vec<DiagramAutomorphism>,
    /// Image, each entry a permutation of the generator list.
    pub image: Vec<Vec<usize>>,
    /// For each image entry the chosen preimage in Ω_J.
    pub section: Vec<DiagramAutomorphism>,
}

impl OmegaSplitting {
    /// The isomorphism `kernel × image → Ω_J`.
    pub fn combine(&self, k: &DiagramAutomorphism, image_index: usize) -> DiagramAutomorphism {
        k.compose(&self.section[image_index])
    }
}

/// Kernel and image of `Ω_J → Aut(fixed subgroup)`, `ξ ↦ Ad(ξ)`, computed from
/// the action on the `ss_K` generators for `ω`.
pub fn omega_splitting(
    datum: &Arc<CartanDatum>,
    j: &BTreeSet<usize>,
    omega: &DiagramAutomorphism,
) -> Result<OmegaSplitting, CoxeterError> {
    let gens = fixed_subgroup_generators(datum, j, omega)?;
    let omj = omega_stabilizer(datum, j);
    let mut kernel = Vec::new();
    let mut image: Vec<Vec<usize>> = Vec::new();
    let mut section = Vec::new();
    for xi in &omj {
        let xinv = xi.inverse();
        // ξ ss ξ⁻¹ = (ξ⁻¹)⁻¹ ss (ξ⁻¹)
        let mut act = Vec::with_capacity(gens.len());
        for g in &gens {
            let c = g.element.conjugate_by(&xinv);
            let pos = gens
                .iter()
                .position(|h| h.element == c)
                .ok_or_else(|| CoxeterError::Structural("Ω_J does not permute the generators".into()))?;
            act.push(pos);
        }
        let trivial = act.iter().enumerate().all(|(a, &b)| a == b);
        if trivial {
            kernel.push(xi.clone());
        }
        if !image.contains(&act) {
            image.push(act);
            section.push(xi.clone());
        }
    }
    let identity_pos = image.iter().position(|a| a.iter().enumerate().all(|(x, &y)| x == y)).unwrap();
    image.swap(0, identity_pos);
    section.swap(0, identity_pos);
    section[0] = DiagramAutomorphism::identity(datum.size());
    let case = if kernel.len() == 1 {
        SplittingCase::Injective
    } else if image.len() == 1 {
        SplittingCase::Trivial
    } else if kernel.len() == 2 && image.len() == 2 && omj.len() == 4 && omj.iter().all(|x| x.compose(x).is_identity())
    {
        let gamma: Vec<&DiagramAutomorphism> =
            omj.iter().filter(|x| !kernel.contains(x) && x.fixed_points() >= 2).collect();
        if gamma.len() != 1 {
            return Err(CoxeterError::Structural("no unique element with two fixed points".into()));
        }
        section[1] = gamma[0].clone();
        SplittingCase::Mixed
    } else {
        return Err(CoxeterError::Structural(format!(
            "kernel of order {} and image of order {} match no known case",
            kernel.len(),
            image.len()
        )));
    };
    Ok(OmegaSplitting { case, kernel, image, section })
}
