use super::WittError;
use crate::fq::{prime_power, Fq};
use crate::linalg::{inverse, Mat, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{HashSet, VecDeque};

/// A Lie algebra over ℤ_(p) with an integral basis spanning `L_0`:
/// structure constants `[b_i, b_j] = Σ_k c[i][j][k] b_k` and the Killing
/// Gram matrix.
#[derive(Clone, Debug)]
pub struct LieDatum {
    pub name: String,
    pub p: i64,
    pub dim: usize,
    pub structure: Vec<Vec<Vec<i64>>>,
    pub gram: Vec<Vec<i64>>,
}

fn killing(structure: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n = structure.len();
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            // tr(ad b_i ∘ ad b_j) = Σ_{l,k} c[j][l][k] c[i][k][l]
            g[i][j] = (0..n).flat_map(|l| (0..n).map(move |k| (l, k))).map(|(l, k)| structure[j][l][k] * structure[i][k][l]).sum();
        }
    }
    g
}

fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let q: Mat<Q> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let mut a = q;
    let n = a.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = a[r][c].clone() / a[c][c].clone();
            for k in c..n {
                let t = f.clone() * a[c][k].clone();
                a[r][k] -= t;
            }
        }
    }
    det.to_integer()
}

impl LieDatum {
    /// 𝔰𝔩₂ with basis `e, h, f`.
    pub fn sl2(p: u32) -> Result<Self, WittError> {
        let mut c = vec![vec![vec![0i64; 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = v;
            c[j][i][k] = -v;
        };
        set(0, 1, 0, -2);
        set(0, 2, 1, 1);
        set(1, 2, 2, -2);
        Self::new("sl2", p, c, vec![vec![0, 0, 4], vec![0, 8, 0], vec![4, 0, 0]])
    }

    pub fn new(name: &str, p: u32, structure: Vec<Vec<Vec<i64>>>, gram: Vec<Vec<i64>>) -> Result<Self, WittError> {
        if prime_power(p as u64).map(|(_, k)| k) != Some(1) {
            return Err(WittError::Parameters(format!("{p} is not prime")));
        }
        let dim = gram.len();
        if structure.len() != dim || killing(&structure) != gram {
            return Err(WittError::Parameters("Gram matrix is not the Killing form of the structure constants".into()));
        }
        let det = det_i64(&gram);
        if det.mod_floor(&BigInt::from(p)).is_zero() {
            return Err(WittError::Degenerate(format!("det {det} vanishes mod {p}")));
        }
        Ok(LieDatum { name: name.into(), p: p as i64, dim, structure, gram })
    }

    pub fn bracket(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (i, &a) in u.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in v.iter().enumerate().filter(|(_, b)| **b != 0) {
                for (k, o) in out.iter_mut().enumerate() {
                    *o += a * b * self.structure[i][j][k];
                }
            }
        }
        out
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        (0..self.dim).map(|i| (0..self.dim).map(|j| u[i] * self.gram[i][j] * v[j]).sum::<i64>()).sum()
    }

    fn bracket_q(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                if u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &uv * Q::from_integer(self.structure[i][j][k].into());
                }
            }
        }
        out
    }

    fn gram_q(&self) -> Mat<Q> {
        self.gram.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect()
    }
}

fn vp(x: i64, p: i64) -> u32 {
    let (mut x, mut k) = (x, 0);
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let g = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m)
}

fn mulmod(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

fn q_mod(x: &Q, m: i64) -> i64 {
    let num = x.numer().mod_floor(&BigInt::from(m)).to_i64().unwrap();
    let den = x.denom().mod_floor(&BigInt::from(m)).to_i64().unwrap();
    mulmod(num, inv_mod(den, m), m)
}

fn p_integral(x: &Q, p: i64) -> bool {
    !x.denom().mod_floor(&BigInt::from(p)).is_zero()
}

/// A submodule `Z` of `(ℤ/p^k)^N`, stored through the Hermite basis of its
/// preimage in `ℤ^N`: upper triangular with diagonal `p^{exps[j]}` and entries
/// above the diagonal reduced modulo the diagonal entry of their column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    pub p: i64,
    pub k: u32,
    pub rows: Vec<Vec<i64>>,
    pub exps: Vec<u32>,
}

impl Submodule {
    pub fn from_generators(p: i64, k: u32, dim: usize, gens: &[Vec<i64>]) -> Self {
        let m = p.pow(k);
        let nonzero = |g: &Vec<i64>| g.iter().any(|&x| x != 0);
        let mut work: Vec<Vec<i64>> =
            gens.iter().map(|g| g.iter().map(|x| x.rem_euclid(m)).collect()).filter(nonzero).collect();
        let mut rows = vec![vec![0; dim]; dim];
        let mut exps = vec![k; dim];
        for j in 0..dim {
            let best = work.iter().enumerate().filter(|(_, r)| r[j] != 0).min_by_key(|(_, r)| vp(r[j], p)).map(|(i, _)| i);
            let Some(i) = best else {
                rows[j][j] = m;
                continue;
            };
            let mut r = work.swap_remove(i);
            let a = vp(r[j], p);
            let pa = p.pow(a);
            let u = inv_mod(r[j] / pa, m);
            for x in r.iter_mut() {
                *x = mulmod(*x, u, m);
            }
            for w in work.iter_mut() {
                if w[j] != 0 {
                    let f = w[j] / pa;
                    for c in 0..dim {
                        w[c] = (w[c] - mulmod(f, r[c], m)).rem_euclid(m);
                    }
                }
            }
            let extra: Vec<i64> = r.iter().map(|&x| mulmod(x, p.pow(k - a), m)).collect();
            work.retain(nonzero);
            if nonzero(&extra) {
                work.push(extra);
            }
            rows[j] = r;
            exps[j] = a;
        }
        for j in 0..dim {
            let d = p.pow(exps[j]);
            for i in 0..j {
                let f = rows[i][j].div_euclid(d);
                if f != 0 {
                    for c in j..dim {
                        rows[i][c] -= f * rows[j][c];
                    }
                }
                for c in j + 1..dim {
                    rows[i][c] = rows[i][c].rem_euclid(m);
                }
            }
        }
        Submodule { p, k, rows, exps }
    }

    pub fn whole(p: i64, k: u32, dim: usize) -> Self {
        let gens: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect();
        Self::from_generators(p, k, dim, &gens)
    }

    pub fn zero(p: i64, k: u32, dim: usize) -> Self {
        Self::from_generators(p, k, dim, &[])
    }

    pub fn modulus(&self) -> i64 {
        self.p.pow(self.k)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let m = self.modulus();
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(m)).collect();
        for j in 0..self.dim() {
            let d = self.p.pow(self.exps[j]);
            if v[j] % d != 0 {
                return false;
            }
            let f = v[j] / d;
            if f != 0 {
                for c in j..self.dim() {
                    v[c] = (v[c] - mulmod(f, self.rows[j][c], m)).rem_euclid(m);
                }
            }
        }
        true
    }

    pub fn is_subset_of(&self, o: &Submodule) -> bool {
        self.rows.iter().all(|r| o.contains(r))
    }

    /// Nonzero generators reduced mod `p^k`.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let m = self.modulus();
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(m)).collect::<Vec<_>>())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect()
    }

    pub fn with(&self, v: &[i64]) -> Submodule {
        let mut g = self.generators();
        g.push(v.to_vec());
        Self::from_generators(self.p, self.k, self.dim(), &g)
    }

    /// Smith exponents `e_i` of the generator matrix over `ℤ/p^k`, so that
    /// `Z ≅ ⊕ ℤ/p^{k−e_i}`; zero summands are omitted.
    pub fn smith_exponents(&self) -> Vec<u32> {
        let m = self.modulus();
        let mut a = self.generators();
        let cols = self.dim();
        let mut out = Vec::new();
        let mut t = 0;
        while t < a.len() && t < cols {
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.map_or(true, |(v, _, _)| vp(x, self.p) < v) {
                        best = Some((vp(x, self.p), i, j));
                    }
                }
            }
            let Some((e, i, j)) = best else { break };
            a.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            let pe = self.p.pow(e);
            let u = inv_mod(a[t][t] / pe, m);
            for x in a[t].iter_mut() {
                *x = mulmod(*x, u, m);
            }
            let pivot = a[t].clone();
            for row in a.iter_mut().skip(t + 1) {
                let f = row[t] / pe;
                for c in t..cols {
                    row[c] = (row[c] - mulmod(f, pivot[c], m)).rem_euclid(m);
                }
            }
            for c in t + 1..cols {
                let f = a[t][c] / pe;
                for row in a.iter_mut() {
                    let pt = row[t];
                    row[c] = (row[c] - mulmod(f, pt, m)).rem_euclid(m);
                }
            }
            out.push(e);
            t += 1;
        }
        out
    }

    /// `d(Z)`, the sum of the exponents of the cyclic summands of `Z`.
    pub fn d(&self) -> u32 {
        self.smith_exponents().iter().map(|e| self.k - e).sum()
    }

    /// `d` of the quotient of the ambient module by `Z`.
    pub fn d_quotient(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Number of elements, as a power of `p`.
    pub fn log_order(&self) -> u32 {
        self.exps.iter().map(|a| self.k - a).sum()
    }
}

/// The modules `V_n = p^{-n}L_0/p^nL_0 ≅ (ℤ/p^{2n})^N` and
/// `V′_n = p^{-n}L_0/p^{2n}L_0 ≅ (ℤ/p^{3n})^N` in coordinates scaled by
/// `p^n`, with the truncated pairing and trilinear form.
#[derive(Clone, Debug)]
pub struct LatticeModel {
    pub datum: LieDatum,
    pub n: u32,
}

impl LatticeModel {
    pub fn new(datum: LieDatum, n: u32) -> Self {
        LatticeModel { datum, n }
    }

    pub fn k(&self) -> u32 {
        2 * self.n
    }

    fn p(&self) -> i64 {
        self.datum.p
    }

    pub fn ambient(&self) -> Submodule {
        Submodule::whole(self.p(), self.k(), self.datum.dim)
    }

    /// The image of `L_0`, that is `p^n V_n`.
    pub fn base_image(&self) -> Submodule {
        let pn = self.p().pow(self.n);
        let gens: Vec<Vec<i64>> =
            (0..self.datum.dim).map(|i| (0..self.datum.dim).map(|j| if i == j { pn } else { 0 }).collect()).collect();
        Submodule::from_generators(self.p(), self.k(), self.datum.dim, &gens)
    }

    pub fn submodule(&self, gens: &[Vec<i64>]) -> Submodule {
        Submodule::from_generators(self.p(), self.k(), self.datum.dim, gens)
    }

    /// `(Z, Z)_n = 0`.
    pub fn is_isotropic(&self, z: &Submodule) -> bool {
        let m = z.modulus();
        let g = z.generators();
        g.iter().all(|u| g.iter().all(|v| self.datum.pair(u, v).rem_euclid(m) == 0))
    }

    /// Membership in E′: `d(Z) = nN` and `(Z, Z)_n = 0`.
    pub fn is_self_dual_isotropic(&self, z: &Submodule) -> bool {
        z.d() == self.n * self.datum.dim as u32 && self.is_isotropic(z)
    }

    /// `(Z_1, Z_1, Z_1)_n = 0` for `Z_1` the preimage of `Z` in `V′_n`.
    pub fn is_lie_closed(&self, z: &Submodule) -> bool {
        let m3 = self.p().pow(3 * self.n);
        let g = &z.rows;
        for u in g {
            for v in g {
                let b = self.datum.bracket(u, v);
                if g.iter().any(|w| self.datum.pair(&b, w).rem_euclid(m3) != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// `Z^♯ = {v : (v, Z)_n = 0}`, the image of `L^♯` for `L` the preimage
    /// of `Z`.
    pub fn sharp(&self, z: &Submodule) -> Result<Submodule, WittError> {
        let m = z.modulus();
        let b: Mat<Q> = z.rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
        let a = crate::linalg::mat_mul(&b, &self.datum.gram_q());
        let inv = inverse(&a).ok_or_else(|| WittError::Degenerate("pairing matrix is singular".into()))?;
        let mq = Q::from_integer(m.into());
        let mut gens = Vec::new();
        for c in 0..self.datum.dim {
            let col: Vec<Q> = (0..self.datum.dim).map(|r| &inv[r][c] * &mq).collect();
            if col.iter().any(|x| !p_integral(x, self.p())) {
                return Err(WittError::Degenerate("dual generator is not integral".into()));
            }
            gens.push(col.iter().map(|x| q_mod(x, m)).collect());
        }
        Ok(self.submodule(&gens))
    }

    fn check_budget(&self, budget: u64) -> Result<(), WittError> {
        let needed = (self.p() as u64).saturating_pow(self.k() * self.datum.dim as u32);
        if needed > budget {
            return Err(WittError::Budget { needed, budget });
        }
        Ok(())
    }

    /// Isotropic submodules of `V_n`, by breadth-first extension of the zero
    /// module one cyclic submodule at a time.
    pub fn isotropic_submodules(&self, budget: u64) -> Result<Vec<Submodule>, WittError> {
        self.check_budget(budget)?;
        let (p, k, dim) = (self.p(), self.k(), self.datum.dim);
        let m = p.pow(k);
        let units: Vec<i64> = (1..m).filter(|u| u % p != 0).collect();
        let mut reps = Vec::new();
        let total = (m as u64).pow(dim as u32);
        for idx in 1..total {
            let mut x = idx;
            let v: Vec<i64> = (0..dim)
                .map(|_| {
                    let d = (x % m as u64) as i64;
                    x /= m as u64;
                    d
                })
                .collect();
            if self.datum.pair(&v, &v).rem_euclid(m) != 0 {
                continue;
            }
            let canonical = units.iter().map(|&u| v.iter().map(|&c| mulmod(c, u, m)).collect::<Vec<_>>()).min().unwrap();
            if canonical == v {
                reps.push(v);
            }
        }
        let start = Submodule::zero(p, k, dim);
        let mut seen: HashSet<Submodule> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(z) = queue.pop_front() {
            let gens = z.generators();
            for v in &reps {
                if z.contains(v) || gens.iter().any(|g| self.datum.pair(v, g).rem_euclid(m) != 0) {
                    continue;
                }
                let next = z.with(v);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<Submodule> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// All submodules of `V_n`, through Hermite bases of lattices
    /// `p^{2n}ℤ^N ⊆ M ⊆ ℤ^N`.
    pub fn all_submodules(&self, budget: u64) -> Result<Vec<Submodule>, WittError> {
        self.check_budget(budget)?;
        let (p, k, dim) = (self.p(), self.k(), self.datum.dim);
        let m = p.pow(k);
        let mut out = Vec::new();
        let mut exps = vec![0u32; dim];
        loop {
            // off-diagonal slots (i, j), i < j, range p^{exps[j]}
            let slots: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
            let sizes: Vec<i64> = slots.iter().map(|&(_, j)| p.pow(exps[j])).collect();
            let count: i64 = sizes.iter().product();
            for mut idx in 0..count {
                let mut rows = vec![vec![0i64; dim]; dim];
                for (i, row) in rows.iter_mut().enumerate() {
                    row[i] = p.pow(exps[i]);
                }
                for (s, &(i, j)) in slots.iter().enumerate() {
                    rows[i][j] = idx % sizes[s];
                    idx /= sizes[s];
                }
                let z = Submodule::from_generators(p, k, dim, &rows);
                let canonical: Vec<Vec<i64>> =
                    rows.iter().map(|r| r.iter().map(|&x| if x == m { m } else { x.rem_euclid(m) }).collect()).collect();
                if z.rows == canonical {
                    out.push(z);
                }
            }
            let mut c = 0;
            while c < dim && exps[c] == k {
                exps[c] = 0;
                c += 1;
            }
            if c == dim {
                break;
            }
            exps[c] += 1;
        }
        out.sort();
        Ok(out)
    }
}

/// The outcome of the two enumeration routes for `X_n`.
#[derive(Clone, Debug)]
pub struct XnReport {
    /// E′ from the isotropic-submodule search.
    pub e_prime: Vec<Submodule>,
    /// E′₀ ⊆ E′.
    pub e_prime_0: Vec<Submodule>,
    /// Images `L/p^nL_0` of the lattices with `L^♯ = L`.
    pub direct_e: Vec<Submodule>,
    /// Images of the lattices with `L^♯ = L` and `[L, L] ⊆ L`.
    pub direct_x: Vec<Submodule>,
    /// Number of lattices between `p^nL_0` and `p^{-n}L_0` examined.
    pub lattices_examined: usize,
    /// Lattices with `d(Z) + d(V_n/Z) ≠ 2nN`.
    pub duality_failures: usize,
}

impl XnReport {
    pub fn bijection_e(&self) -> bool {
        self.e_prime == self.direct_e
    }

    pub fn bijection_x(&self) -> bool {
        self.e_prime_0 == self.direct_x
    }
}

/// Self-duality and Lie closure of `L = p^{-n}M` for the Hermite basis `M`,
/// checked over ℚ with `p`-integrality.
fn direct_checks(datum: &LieDatum, n: u32, m_rows: &[Vec<i64>]) -> Result<(bool, bool), WittError> {
    let p = datum.p;
    let scale = Q::new(BigInt::one(), BigInt::from(p).pow(n));
    let b: Mat<Q> = m_rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into()) * &scale).collect()).collect();
    let binv = inverse(&b).ok_or_else(|| WittError::Precondition("lattice basis is singular".into()))?;
    let coords = |x: &[Q]| -> Vec<Q> {
        (0..datum.dim).map(|c| (0..datum.dim).map(|r| &x[r] * &binv[r][c]).sum()).collect()
    };
    let in_l = |x: &[Q]| coords(x).iter().all(|c| p_integral(c, p));
    let g = datum.gram_q();
    let bg = crate::linalg::mat_mul(&b, &g);
    let bg_inv = inverse(&bg).ok_or_else(|| WittError::Degenerate("Gram matrix of L is singular".into()))?;
    // columns of (B G)^{-1} span L^♯
    let sharp: Vec<Vec<Q>> = (0..datum.dim).map(|c| (0..datum.dim).map(|r| bg_inv[r][c].clone()).collect()).collect();
    let in_sharp = |x: &[Q]| bg.iter().all(|row| p_integral(&row.iter().zip(x).map(|(a, b)| a * b).sum::<Q>(), p));
    let self_dual = sharp.iter().all(|s| in_l(s)) && b.iter().all(|r| in_sharp(r));
    let lie = b.iter().all(|u| b.iter().all(|v| in_l(&datum.bracket_q(u, v))));
    Ok((self_dual, lie))
}

/// Lattices `L` with `p^nL_0 ⊆ L ⊆ p^{-n}L_0`, tested directly for
/// `L^♯ = L` and `[L, L] ⊆ L`; returns their images in `V_n` and the number
/// of lattices examined.
pub fn enumerate_lattices_direct(
    model: &LatticeModel,
    budget: u64,
) -> Result<(Vec<Submodule>, Vec<Submodule>, usize, usize), WittError> {
    let all = model.all_submodules(budget)?;
    let (mut e, mut x) = (Vec::new(), Vec::new());
    let total = 2 * model.n * model.datum.dim as u32;
    let mut failures = 0;
    for z in &all {
        if z.d() + z.d_quotient() != total {
            failures += 1;
        }
        let (self_dual, lie) = direct_checks(&model.datum, model.n, &z.rows)?;
        if self_dual {
            e.push(z.clone());
            if lie {
                x.push(z.clone());
            }
        }
    }
    Ok((e, x, all.len(), failures))
}

/// E′, E′₀ and the direct lattice enumeration for `X_n`.
pub fn enumerate_x_n(model: &LatticeModel, budget: u64) -> Result<XnReport, WittError> {
    let iso = model.isotropic_submodules(budget)?;
    let e_prime: Vec<Submodule> = iso.into_iter().filter(|z| model.is_self_dual_isotropic(z)).collect();
    let e_prime_0: Vec<Submodule> = e_prime.iter().filter(|z| model.is_lie_closed(z)).cloned().collect();
    let (direct_e, direct_x, lattices_examined, duality_failures) = enumerate_lattices_direct(model, budget)?;
    Ok(XnReport { e_prime, e_prime_0, direct_e, direct_x, lattices_examined, duality_failures })
}

fn rank_fq(f: &Fq, rows: &[Vec<u32>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = f.inv(a[r][c]);
        let pivot: Vec<u32> = a[r].iter().map(|&x| f.mul(x, inv)).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        a[r] = pivot;
        r += 1;
    }
    r
}

/// Number of Borel subalgebras of `L/pL ⊗ 𝔽_q` for `L = p^{-n}M`, by
/// brute force over the 2-dimensional subspaces of the rank-one reduction.
pub fn borel_fiber_count(model: &LatticeModel, z: &Submodule, q: u64) -> Result<usize, WittError> {
    let datum = &model.datum;
    let p = datum.p;
    match prime_power(q) {
        Some((pp, _)) if pp as i64 == p => {}
        _ => return Err(WittError::Parameters(format!("{q} is not a power of {p}"))),
    }
    if datum.dim != 3 {
        return Err(WittError::Precondition("Borel count implemented for rank one".into()));
    }
    let f = Fq::new(q).map_err(|e| WittError::Parameters(e.to_string()))?;
    let scale = Q::new(BigInt::one(), BigInt::from(p).pow(model.n));
    let b: Mat<Q> = z.rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into()) * &scale).collect()).collect();
    let binv = inverse(&b).ok_or_else(|| WittError::Precondition("lattice basis is singular".into()))?;
    let dim = datum.dim;
    let mut c = vec![vec![vec![0u32; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let br = datum.bracket_q(&b[i], &b[j]);
            for k in 0..dim {
                let x: Q = (0..dim).map(|r| &br[r] * &binv[r][k]).sum();
                if !p_integral(&x, p) {
                    return Err(WittError::Precondition("lattice is not closed under the bracket".into()));
                }
                c[i][j][k] = f.from_int(q_mod(&x, p));
            }
        }
    }
    let bracket = |u: &[u32], v: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; dim];
        for i in 0..dim {
            for j in 0..dim {
                let uv = f.mul(u[i], v[j]);
                if uv == 0 {
                    continue;
                }
                for k in 0..dim {
                    out[k] = f.add(out[k], f.mul(uv, c[i][j][k]));
                }
            }
        }
        out
    };
    // Killing form of the reduction
    let mut kil = vec![vec![0u32; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut t = 0;
            for l in 0..dim {
                for k in 0..dim {
                    t = f.add(t, f.mul(c[j][l][k], c[i][k][l]));
                }
            }
            kil[i][j] = t;
        }
    }
    if rank_fq(&f, &kil) < dim {
        return Err(WittError::NotReductive("Killing form of the reduction is degenerate".into()));
    }
    // 2-dimensional subspaces of 𝔽_q^3 in reduced echelon form
    let qq = f.q;
    let mut planes: Vec<[Vec<u32>; 2]> = Vec::new();
    for a in 0..qq {
        for b2 in 0..qq {
            planes.push([vec![1, 0, a], vec![0, 1, b2]]);
        }
        planes.push([vec![1, a, 0], vec![0, 0, 1]]);
    }
    planes.push([vec![0, 1, 0], vec![0, 0, 1]]);
    Ok(planes
        .iter()
        .filter(|[u, v]| rank_fq(&f, &[u.clone(), v.clone(), bracket(u, v)]) == 2)
        .count())
}
