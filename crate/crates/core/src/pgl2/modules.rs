use super::{prime_power, Pgl2Error};
use crate::cyclotomic::Cyclo;
use crate::linalg::{identity, kernel, q, rank, Mat, Q};
use crate::reps::{builtin_costandard, FiniteDimRep, GroupTag};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// The module with basis `b_n`, `-N ≤ n ≤ N`, where
/// `s_i b_n = -b_n` for `n ≡ i` and `s_i b_n = b_n + b_{n-1} + b_{n+1}`
/// otherwise (`i ∈ {1, 2}`). Neighbours outside the window are dropped.
#[derive(Clone, Debug)]
pub struct RecurrenceModule {
    pub n: usize,
}

impl RecurrenceModule {
    pub fn new(n: usize) -> Result<Self, Pgl2Error> {
        if n < 2 {
            return Err(Pgl2Error::WindowTooSmall(n));
        }
        Ok(RecurrenceModule { n })
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n + self.n as i64;
        (0..self.dim() as i64).contains(&k).then_some(k as usize)
    }

    /// Matrix of `s_i`, columns are images of `b_{-N} … b_N`.
    pub fn action(&self, i: usize) -> Mat<Q> {
        let d = self.dim();
        let mut m = vec![vec![Q::zero(); d]; d];
        for col in 0..d {
            let n = col as i64 - self.n as i64;
            if n.rem_euclid(2) == (i % 2) as i64 {
                m[col][col] = q(-1);
            } else {
                for k in [n - 1, n, n + 1] {
                    if let Some(r) = self.index(k) {
                        m[r][col] = Q::one();
                    }
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, n: i64) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[self.index(n).expect("inside window")] = Q::one();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    /// `b_0, b_1` generate every interior `b_n`.
    pub generates: bool,
    /// Rank of the coinvariants `V / Σ (s_i - 1)V`.
    pub coinvariant_rank: usize,
}

fn span_contains(rows: &Mat<Q>, v: &[Q]) -> bool {
    let mut ext = rows.clone();
    ext.push(v.to_vec());
    rank(&ext) == rank(rows)
}

fn apply(m: &Mat<Q>, v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn module_generation_check(n: usize) -> Result<GenerationReport, Pgl2Error> {
    let module = RecurrenceModule::new(n)?;
    let gens = [module.action(1), module.action(2)];
    let mut span: Mat<Q> = vec![module.basis_vector(0), module.basis_vector(1)];
    loop {
        let before = rank(&span);
        let images: Vec<Vec<Q>> = span.iter().flat_map(|v| gens.iter().map(move |g| apply(g, v))).collect();
        for w in images {
            if !span_contains(&span, &w) {
                span.push(w);
            }
        }
        if rank(&span) == before {
            break;
        }
    }
    let interior = -(n as i64) + 1..n as i64;
    let generates = interior.into_iter().all(|k| span_contains(&span, &module.basis_vector(k)));
    let d = module.dim();
    let id: Mat<Q> = identity(d, &Q::one());
    let mut image: Mat<Q> = Vec::new();
    for g in &gens {
        for col in 0..d {
            image.push((0..d).map(|r| &g[r][col] - &id[r][col]).collect());
        }
    }
    Ok(GenerationReport { generates, coinvariant_rank: d - rank(&image) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSolution {
    pub dimension: usize,
    /// Closed forms spanning the solutions.
    pub closed_form: [&'static str; 2],
    /// Both closed forms solve the recurrence on the window and span the
    /// computed solution space.
    pub verified: bool,
}

/// Solutions of `-u_n = u_n + u_{n-1} + u_{n+1}` on `[-N, N]`.
pub fn recurrence_solution_space(n: usize) -> Result<RecurrenceSolution, Pgl2Error> {
    let module = RecurrenceModule::new(n)?;
    let d = module.dim();
    let rows: Mat<Q> = (1..d - 1)
        .map(|c| {
            let mut r = vec![Q::zero(); d];
            r[c - 1] = Q::one();
            r[c] = q(2);
            r[c + 1] = Q::one();
            r
        })
        .collect();
    let sol = kernel(&rows, d, &Q::one());
    let window = -(n as i64)..=n as i64;
    let sign = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let forms: Vec<Vec<Q>> =
        vec![window.clone().map(|k| q(sign(k))).collect(), window.map(|k| q(sign(k) * k)).collect()];
    let solves = forms.iter().all(|f| rows.iter().all(|r| r.iter().zip(f).map(|(a, b)| a * b).sum::<Q>().is_zero()));
    let verified = solves && rank(&forms) == 2 && sol.len() == 2 && forms.iter().all(|f| span_contains(&sol, f));
    Ok(RecurrenceSolution { dimension: sol.len(), closed_form: ["(-1)^n", "(-1)^n*n"], verified })
}

/// `u_k` for `-N ≤ k ≤ N` from `(u_0, u_1)`.
pub fn iterate_recurrence(u0: i64, u1: i64, n: usize) -> Vec<(i64, i64)> {
    let mut fwd = vec![u0, u1];
    while fwd.len() <= n {
        let l = fwd.len();
        fwd.push(-2 * fwd[l - 1] - fwd[l - 2]);
    }
    let mut back = vec![u1, u0];
    while back.len() <= n + 1 {
        let l = back.len();
        back.push(-2 * back[l - 1] - back[l - 2]);
    }
    let mut out: Vec<(i64, i64)> = (1..=n).rev().map(|k| (-(k as i64), back[k + 1])).collect();
    out.extend((0..=n).map(|k| (k as i64, fwd[k])));
    out
}

/// Regular permutation module of a finite dihedral quotient of the affine
/// Weyl group of type A1 on an even cyclic window: `s_0` swaps `2k ↔ 2k+1`,
/// `s_1` swaps `2k+1 ↔ 2k+2`.
#[derive(Clone, Debug)]
pub struct H0Window {
    pub rep: FiniteDimRep,
}

pub fn h0_cvr_module(window: usize) -> Result<H0Window, Pgl2Error> {
    if window < 2 || window % 2 == 1 {
        return Err(Pgl2Error::Precondition(format!("window {window} must be even and at least 2")));
    }
    let perm = |pairs: &dyn Fn(usize) -> usize| -> Mat<Cyclo> {
        let mut m = vec![vec![Cyclo::zero(); window]; window];
        for c in 0..window {
            m[pairs(c)][c] = Cyclo::one();
        }
        m
    };
    let s0 = perm(&|c| c ^ 1);
    let s1 = perm(&|c| if c % 2 == 1 { (c + 1) % window } else { (c + window - 1) % window });
    let rep = FiniteDimRep::new(GroupTag::Affine { datum: "A1".into() }, window, vec![s0, s1])
        .map_err(|e| Pgl2Error::Precondition(e.to_string()))?;
    Ok(H0Window { rep })
}

impl H0Window {
    pub fn trace(&self, gen: Option<usize>) -> Cyclo {
        match gen {
            None => Cyclo::int(self.rep.dim as i64),
            Some(g) => (0..self.rep.dim).fold(Cyclo::zero(), |acc, i| acc + self.rep.gens[g][i][i].clone()),
        }
    }

    pub fn coinvariant_rank(&self) -> usize {
        let d = self.rep.dim;
        let mut image: Mat<Cyclo> = Vec::new();
        for g in &self.rep.gens {
            for col in 0..d {
                image.push(
                    (0..d).map(|r| g[r][col].clone() - if r == col { Cyclo::one() } else { Cyclo::zero() }).collect(),
                );
            }
        }
        d - rank(&image)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlmostCharValue {
    pub value: i64,
    pub steinberg: i64,
    /// `value - steinberg`, the contribution of the unit representation.
    pub unit: i64,
}

/// Almost-character value at the split regular element
/// `diag(1+ε, 1-ε)`: Frobenius acts on the degree −2 homology by the
/// scalar `q` and trivially on the Hom data, so the value is `q` times the
/// dimension of the recurrence solution space.
pub fn almost_char_split_torus(qq: u64) -> Result<AlmostCharValue, Pgl2Error> {
    if prime_power(qq).is_none() {
        return Err(super::FieldError::NotPrimePower(qq).into());
    }
    let dim = recurrence_solution_space(6)?.dimension as i64;
    let value = qq as i64 * dim;
    let steinberg = 2 * qq as i64 - 1;
    Ok(AlmostCharValue { value, steinberg, unit: value - steinberg })
}

/// The curated homology models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Compact very regular element: `H_0` is the regular module.
    VeryRegular,
    /// Two-point `H_0` with trivial 𝕎′-action and Ω swapping the points.
    TwoPoint,
    /// `diag(1+ε, 1-ε)`: trivial `H_0` and the recurrence module in degree −2.
    SplitTorus,
}

impl std::str::FromStr for CaseTag {
    type Err = Pgl2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "very-regular" => Ok(CaseTag::VeryRegular),
            "two-point" => Ok(CaseTag::TwoPoint),
            "split-torus" => Ok(CaseTag::SplitTorus),
            other => Err(Pgl2Error::Unsupported(format!("case {other:?}"))),
        }
    }
}

fn stack_kernel_dim(blocks: &[Mat<Cyclo>], cols: usize) -> usize {
    let rows: Mat<Cyclo> = blocks.iter().flatten().cloned().collect();
    if rows.is_empty() {
        return cols;
    }
    cols - rank(&rows)
}

fn shifted(m: &Mat<Cyclo>, c: i64) -> Mat<Cyclo> {
    m.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, x)| if i == j { x.clone() + Cyclo::int(c) } else { x.clone() }).collect())
        .collect()
}

/// Dimensions of the Hom spaces from the homology of the chosen case into
/// the co-standard module of `zeta`, keyed by homological degree; zero
/// dimensions are omitted.
pub fn a_space_dims(zeta: &str, case: CaseTag) -> Result<BTreeMap<usize, usize>, Pgl2Error> {
    let data = builtin_costandard(zeta)?;
    let e = data.carrier.dim;
    // s_2 of 𝕎′ is our s_0; s_1 is s_1
    let s = [data.carrier.gens[0].clone(), data.carrier.gens[1].clone()];
    let invariants = stack_kernel_dim(&[shifted(&s[0], -1), shifted(&s[1], -1)], e);
    let mut out = BTreeMap::new();
    let mut put = |i: usize, d: usize| {
        if d > 0 {
            out.insert(i, d);
        }
    };
    match case {
        CaseTag::VeryRegular => put(0, e),
        CaseTag::TwoPoint => put(0, invariants),
        CaseTag::SplitTorus => {
            put(0, invariants);
            let d6 = sequence_dim(&s, e, 6);
            let d10 = sequence_dim(&s, e, 10);
            if d6 != d10 {
                return Err(Pgl2Error::Indeterminate(format!("sequence space not stable: {d6} vs {d10}")));
            }
            put(2, d6);
        }
    }
    Ok(out)
}

/// Sequences `x_n ∈ E`, `-N ≤ n ≤ N`, with `s_i x_n = -x_n` for `n ≡ i`
/// and `s_i x_n = x_n + x_{n-1} + x_{n+1}` otherwise (interior `n`).
fn sequence_dim(s: &[Mat<Cyclo>; 2], e: usize, n: usize) -> usize {
    let len = 2 * n + 1;
    let cols = len * e;
    let mut rows: Mat<Cyclo> = Vec::new();
    // index into s: parity 0 is s_2 = s[0], parity 1 is s_1 = s[1]
    for k in 0..len {
        let parity = (k as i64 - n as i64).rem_euclid(2) as usize;
        let own = shifted(&s[parity], 1);
        for r in 0..e {
            let mut row = vec![Cyclo::zero(); cols];
            for c in 0..e {
                row[k * e + c] = own[r][c].clone();
            }
            rows.push(row);
        }
        if k == 0 || k == len - 1 {
            continue;
        }
        let other = shifted(&s[1 - parity], -1);
        for r in 0..e {
            let mut row = vec![Cyclo::zero(); cols];
            for c in 0..e {
                row[k * e + c] = other[r][c].clone();
            }
            row[(k - 1) * e + r] = row[(k - 1) * e + r].clone() - Cyclo::one();
            row[(k + 1) * e + r] = row[(k + 1) * e + r].clone() - Cyclo::one();
            rows.push(row);
        }
    }
    stack_kernel_dim(&[rows], cols)
}
