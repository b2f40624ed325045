//! The level-one hyperplane, its cells, the translation lattice of the
//! minimal coset subgroup and finite-order points of the dual torus.

use crate::coxeter::{complement, min_coset_generators, CartanDatum, CoxeterError, NodeSet, WeylElement};
use crate::linalg::{coords_in, fmt_q, hnf_q, mat_vec, q, solve, transpose, Mat, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlcoveError {
    #[error("coordinates do not lie on the level-one hyperplane")]
    NotLevelOne,
    #[error("point is not in D_J")]
    NotInDomain,
    #[error("only real rational points are supported here")]
    UnsupportedRegime,
    #[error("translation lattice incomplete: rank {found} of {expected}")]
    IncompleteLattice { found: usize, expected: usize },
    #[error("stabilizer lift check failed: {0}")]
    LiftCheck(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// `Σ c_i b'_i` with complex rational `c_i = re + im·√−1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelOnePoint {
    coords: Vec<(Q, Q)>,
}

/// The order on ℂ used for cells: `a + b√−1 > 0` iff `a > 0`, or `a = 0` and `b > 0`.
pub fn complex_positive(c: &(Q, Q)) -> bool {
    c.0.is_positive() || (c.0.is_zero() && c.1.is_positive())
}

impl LevelOnePoint {
    pub fn new(datum: &CartanDatum, coords: Vec<(Q, Q)>) -> Result<Self, AlcoveError> {
        if coords.len() != datum.size() {
            return Err(AlcoveError::NotLevelOne);
        }
        let mut re = Q::zero();
        let mut im = Q::zero();
        for (c, &m) in coords.iter().zip(datum.marks()) {
            re += &c.0 * q(m);
            im += &c.1 * q(m);
        }
        if re != Q::one() || !im.is_zero() {
            return Err(AlcoveError::NotLevelOne);
        }
        Ok(LevelOnePoint { coords })
    }

    pub fn real(datum: &CartanDatum, coords: Vec<Q>) -> Result<Self, AlcoveError> {
        Self::new(datum, coords.into_iter().map(|c| (c, Q::zero())).collect())
    }

    pub fn coords(&self) -> &[(Q, Q)] {
        &self.coords
    }

    pub fn real_coords(&self) -> Result<Vec<Q>, AlcoveError> {
        if self.coords.iter().any(|c| !c.1.is_zero()) {
            return Err(AlcoveError::UnsupportedRegime);
        }
        Ok(self.coords.iter().map(|c| c.0.clone()).collect())
    }
}

impl fmt::Display for LevelOnePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(a, b)| if b.is_zero() { fmt_q(a) } else { format!("{}+{}i", fmt_q(a), fmt_q(b)) })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellLabel {
    pub s: NodeSet,
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.s.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The cell `C_S` containing `x`, if any.
pub fn cell_of(x: &LevelOnePoint) -> Option<CellLabel> {
    let mut s = BTreeSet::new();
    for (i, c) in x.coords.iter().enumerate() {
        if c.0.is_zero() && c.1.is_zero() {
            continue;
        }
        if !complex_positive(c) {
            return None;
        }
        s.insert(i);
    }
    (!s.is_empty()).then_some(CellLabel { s })
}

/// Real points of `D_J` whose coordinates have denominators at most `max_den`.
pub fn sample_grid(datum: &CartanDatum, j: &NodeSet, max_den: i64) -> Vec<LevelOnePoint> {
    let jc: Vec<usize> = complement(datum, j).into_iter().collect();
    let mut fracs: Vec<Q> = Vec::new();
    for b in 1..=max_den {
        for a in 0..=b {
            let x = Q::new(BigInt::from(a), BigInt::from(b));
            if !fracs.contains(&x) {
                fracs.push(x);
            }
        }
    }
    fracs.sort();
    let mut out = Vec::new();
    let mut cur = vec![0usize; jc.len()];
    loop {
        let mut c = vec![Q::zero(); datum.size()];
        for (slot, &i) in jc.iter().enumerate() {
            c[i] = fracs[cur[slot]].clone();
        }
        if let Ok(p) = LevelOnePoint::real(datum, c) {
            out.push(p);
        }
        let mut k = 0;
        while k < cur.len() {
            cur[k] += 1;
            if cur[k] < fracs.len() {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == cur.len() {
            break;
        }
    }
    out
}

/// A finite-order point of `𝓣 = Hom(𝓛, ℂ*)`, stored by its values on the
/// dual basis in `ℚ/ℤ` (equivalently, coordinates in the `𝓛′` basis mod 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    values: Vec<Q>,
}

pub fn frac(x: &Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

impl TorusPoint {
    pub fn new(values: Vec<Q>) -> Self {
        TorusPoint { values: values.iter().map(frac).collect() }
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint { values: vec![Q::zero(); rank] }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn order(&self) -> u64 {
        let mut l = BigInt::one();
        for v in &self.values {
            l = l.lcm(v.denom());
        }
        l.try_into().expect("order fits in u64")
    }

    /// `t(λ)` in `ℚ/ℤ` for `λ ∈ 𝓛` given on the dual basis.
    pub fn pair(&self, lambda: &[i64]) -> Q {
        let mut acc = Q::zero();
        for (v, &l) in self.values.iter().zip(lambda) {
            acc += v * q(l);
        }
        frac(&acc)
    }

    pub fn act(&self, b: &[Vec<i64>]) -> TorusPoint {
        let v: Vec<Q> = b
            .iter()
            .map(|row| row.iter().zip(&self.values).fold(Q::zero(), |acc, (&x, y)| acc + q(x) * y))
            .collect();
        TorusPoint::new(v)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(fmt_q).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct TranslationLattice {
    /// Basis of `𝓛′`, in `J̌` coordinates.
    pub basis: Vec<Vec<Q>>,
    /// Functionals on `J̌` coordinates dual to `basis`, spanning `𝓛`.
    pub dual_basis: Vec<Vec<Q>>,
}

impl TranslationLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// One element of the finite quotient `𝒲_J̌`.
#[derive(Clone, Debug)]
pub struct FiniteElement {
    /// Matrix of the action on `𝓛′` coordinates.
    pub b: Vec<Vec<i64>>,
    /// A lift to `ᴶ̌W`.
    pub lift: WeylElement,
    /// A word in the indices of `TorusData::gens` realizing the lift.
    pub word: Vec<usize>,
}

/// Everything attached to `(datum, J)`: the generators `ss_k`, their action
/// on `V†_J̌`, the lattice `𝓛′` and the finite group `𝒲_J̌`.
#[derive(Clone, Debug)]
pub struct TorusData {
    pub datum: Arc<CartanDatum>,
    pub j: NodeSet,
    pub jc: Vec<usize>,
    pub gens: Vec<(usize, WeylElement)>,
    pub lattice: TranslationLattice,
    pub group: Vec<FiniteElement>,
    /// `mult[a][g]`: index of `group[a]·gens[g]`.
    pub right_mult: Vec<Vec<usize>>,
    pub gen_index: Vec<usize>,
    pub k_default: usize,
}

fn restricted(w: &WeylElement, jc: &[usize]) -> Mat<Q> {
    let d = w.dual_matrix();
    jc.iter().map(|&r| jc.iter().map(|&c| q(d[r][c])).collect()).collect()
}

impl TorusData {
    pub fn new(datum: &Arc<CartanDatum>, j: &NodeSet) -> Result<Self, AlcoveError> {
        let jc: Vec<usize> = complement(datum, j).into_iter().collect();
        let k_default = if j.is_empty() { 0 } else { jc[0] };
        let gens: Vec<(usize, WeylElement)> =
            min_coset_generators(datum, j)?.into_iter().map(|g| (g.k, g.element)).collect();
        let r = jc.len().saturating_sub(1);
        let marks: Vec<i64> = jc.iter().map(|&i| datum.marks()[i]).collect();
        let base = jc.iter().position(|&i| i == k_default).unwrap_or(0);
        // z_a = n_base e_a − n_a e_base for a ≠ base spans 𝔷_J
        let zbasis: Vec<Vec<Q>> = (0..jc.len())
            .filter(|&a| a != base)
            .map(|a| {
                let mut v = vec![Q::zero(); jc.len()];
                v[a] = q(marks[base]);
                v[base] = -q(marks[a]);
                v
            })
            .collect();
        let mut z0 = vec![Q::zero(); jc.len()];
        z0[base] = Q::new(BigInt::one(), BigInt::from(marks[base]));
        let key = |w: &WeylElement| -> Vec<Vec<Q>> {
            let a = restricted(w, &jc);
            zbasis
                .iter()
                .map(|z| coords_in(&zbasis, &mat_vec(&a, z)).expect("𝔷_J is stable"))
                .collect()
        };
        let translation = |w: &WeylElement| -> Vec<Q> {
            let a = restricted(w, &jc);
            let img = mat_vec(&a, &z0);
            img.iter().zip(&z0).map(|(x, y)| x - y).collect()
        };

        // coset representatives of the kernel, by breadth-first search
        let mut reps: Vec<(WeylElement, Vec<usize>)> = vec![(WeylElement::identity(datum), vec![])];
        let mut index: HashMap<Vec<Vec<Q>>, usize> = HashMap::new();
        index.insert(key(&reps[0].0), 0);
        let mut right_mult: Vec<Vec<usize>> = Vec::new();
        let mut translations: Vec<Vec<Q>> = Vec::new();
        let mut i = 0;
        while i < reps.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (g, (_, s)) in gens.iter().enumerate() {
                let x = reps[i].0.mul(s);
                let kx = key(&x);
                let target = match index.get(&kx) {
                    Some(&t) => t,
                    None => {
                        let mut word = reps[i].1.clone();
                        word.push(g);
                        reps.push((x.clone(), word));
                        index.insert(kx, reps.len() - 1);
                        reps.len() - 1
                    }
                };
                // Schreier generator x · rep(target)⁻¹
                let t = x.mul(&reps[target].0.inverse());
                let v = translation(&t);
                if v.iter().any(|c| !c.is_zero()) {
                    translations.push(v);
                }
                row.push(target);
            }
            right_mult.push(row);
            i += 1;
        }
        let basis = hnf_q(&translations);
        if basis.len() != r {
            return Err(AlcoveError::IncompleteLattice { found: basis.len(), expected: r });
        }
        let dual_basis: Vec<Vec<Q>> = (0..r)
            .map(|a| {
                let rhs: Vec<Q> = (0..r).map(|b| if a == b { Q::one() } else { Q::zero() }).collect();
                solve(&basis, &rhs).expect("basis is independent")
            })
            .collect();
        let lattice = TranslationLattice { basis, dual_basis };
        let mut group = Vec::with_capacity(reps.len());
        for (w, word) in reps {
            let a = restricted(&w, &jc);
            let mut b = vec![vec![0i64; r]; r];
            for (col, l) in lattice.basis.iter().enumerate() {
                let c = coords_in(&lattice.basis, &mat_vec(&a, l)).expect("𝓛′ is stable");
                for (row, x) in c.iter().enumerate() {
                    assert!(x.is_integer(), "𝓛′ is stable");
                    b[row][col] = x.to_integer().try_into().unwrap();
                }
            }
            group.push(FiniteElement { b, lift: w, word });
        }
        let gen_index = (0..gens.len()).map(|g| right_mult[0][g]).collect();
        Ok(TorusData {
            datum: datum.clone(),
            j: j.clone(),
            jc,
            gens,
            lattice,
            group,
            right_mult,
            gen_index,
            k_default,
        })
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    /// Index of the product `group[a]·group[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let mut x = a;
        for &g in &self.group[b].word {
            x = self.right_mult[x][g];
        }
        x
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.group.len()).find(|&b| self.multiply(a, b) == 0).expect("group")
    }

    /// Index of the finite image of an element of `ᴶ̌W` given as a word in the
    /// generator indices.
    pub fn image_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |x, &g| self.right_mult[x][g])
    }

    /// Index of the generator `ss_k`.
    pub fn generator_position(&self, k: usize) -> Option<usize> {
        self.gens.iter().position(|(kk, _)| *kk == k)
    }

    /// `p_J(d)` with the vertex `k`.
    pub fn p_j(&self, d: &LevelOnePoint, k: usize) -> Result<TorusPoint, AlcoveError> {
        let c = d.real_coords()?;
        let cell = cell_of(d).ok_or(AlcoveError::NotInDomain)?;
        if !cell.s.iter().all(|i| self.jc.contains(i)) || !self.jc.contains(&k) {
            return Err(AlcoveError::NotInDomain);
        }
        if self.rank() == 0 {
            return Ok(TorusPoint::identity(0));
        }
        let mut x: Vec<Q> = self.jc.iter().map(|&i| c[i].clone()).collect();
        let pos = self.jc.iter().position(|&i| i == k).unwrap();
        x[pos] -= Q::new(BigInt::one(), BigInt::from(self.datum.marks()[k]));
        let coords = coords_in(&self.lattice.basis, &x).ok_or(AlcoveError::NotInDomain)?;
        Ok(TorusPoint::new(coords))
    }

    pub fn p_j_default(&self, d: &LevelOnePoint) -> Result<TorusPoint, AlcoveError> {
        self.p_j(d, self.k_default)
    }

    /// `w·d` for `d` in `𝔷¹_J` and `w` an element of `ᴶ̌W`.
    pub fn act_on_point(&self, w: &WeylElement, d: &LevelOnePoint) -> Result<LevelOnePoint, AlcoveError> {
        let c = d.real_coords()?;
        let ints: Vec<Q> = c.clone();
        let dm = w.dual_matrix();
        let n = c.len();
        let out: Vec<Q> = (0..n)
            .map(|r| (0..n).fold(Q::zero(), |acc, k| acc + q(dm[r][k]) * &ints[k]))
            .collect();
        LevelOnePoint::real(&self.datum, out)
    }

    pub fn orbit(&self, t: &TorusPoint) -> BTreeSet<TorusPoint> {
        self.group.iter().map(|g| t.act(&g.b)).collect()
    }

    /// Indices of `𝒲_{J̌,t}`.
    pub fn stabilizer(&self, t: &TorusPoint) -> Vec<usize> {
        (0..self.group.len()).filter(|&a| t.act(&self.group[a].b) == *t).collect()
    }

    /// Generators `ss_k` with `k ∈ Š − J = J̌ − S`.
    pub fn lift_generators(&self, s: &NodeSet) -> Vec<usize> {
        (0..self.gens.len()).filter(|&g| !s.contains(&self.gens[g].0)).collect()
    }

    /// Image in `𝒲_J̌` of the subgroup generated by the given generators.
    pub fn generated_image(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        seen.insert(0);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.right_mult[x][g];
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Stabilizer of `p_J(d)` together with the check that the subgroup
    /// generated by `{ss_k : k ∈ Š − J}` maps isomorphically onto it.
    pub fn torus_stabilizer(&self, d: &LevelOnePoint) -> Result<StabilizerReport, AlcoveError> {
        let t = self.p_j_default(d)?;
        let stab = self.stabilizer(&t);
        let cell = cell_of(d).ok_or(AlcoveError::NotInDomain)?;
        let lg = self.lift_generators(&cell.s);
        let image = self.generated_image(&lg);
        if image != stab {
            return Err(AlcoveError::LiftCheck(format!(
                "image of order {} but stabilizer of order {}",
                image.len(),
                stab.len()
            )));
        }
        let lifted = self.lift_size(&lg, stab.len() + 1);
        if lifted != stab.len() {
            return Err(AlcoveError::LiftCheck(format!("lifted subgroup of order {lifted} is not injective")));
        }
        Ok(StabilizerReport { point: t, stabilizer: stab, lift_generators: lg.iter().map(|&g| self.gens[g].0).collect() })
    }

    /// Order of the subgroup of `ᴶ̌W` generated by the given generators,
    /// capped at `cap`.
    pub fn lift_size(&self, gens: &[usize], cap: usize) -> usize {
        let mut seen = std::collections::HashSet::new();
        let id = WeylElement::identity(&self.datum);
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = x.mul(&self.gens[g].1);
                if seen.insert(y.clone()) {
                    if seen.len() >= cap {
                        return seen.len();
                    }
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    /// Action of `𝒲_J̌` on `𝓛` (dual coordinates): `(B⁻¹)ᵀ`.
    pub fn dual_action(&self, a: usize) -> Vec<Vec<i64>> {
        let inv = self.inverse(a);
        transpose(&self.group[inv].b)
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerReport {
    pub point: TorusPoint,
    pub stabilizer: Vec<usize>,
    pub lift_generators: Vec<usize>,
}

/// `translation_lattice(J)`.
pub fn translation_lattice(datum: &Arc<CartanDatum>, j: &NodeSet) -> Result<TranslationLattice, AlcoveError> {
    Ok(TorusData::new(datum, j)?.lattice)
}

/// One TSV row per sampled grid point: `d`, `S`, order of `p_J(d)`, order of
/// its stabilizer.
pub fn grid_rows(data: &TorusData, max_den: i64) -> Result<Vec<String>, AlcoveError> {
    let mut rows = Vec::new();
    for d in sample_grid(&data.datum, &data.j, max_den) {
        let s = cell_of(&d).ok_or(AlcoveError::NotInDomain)?;
        let t = data.p_j_default(&d)?;
        let stab = data.stabilizer(&t);
        rows.push(format!("{d}\t{s}\t{}\t{}", t.order(), stab.len()));
    }
    Ok(rows)
}
