//! The verification checks, one per acceptance criterion plus a Springer
//! table audit. Each returns a status and a witness string; witnesses hold
//! no timings so reports are reproducible.

use crate::config::{Suite, SuiteConfig};
use parahoric::alcove::{sample_grid, TorusData};
use parahoric::coxeter::{nodes, quotient_coxeter_matrix, AffineType, CartanDatum, Order};
use parahoric::cyclotomic::Cyclo;
use parahoric::fourier::{curated_group, pairing_matrix};
use parahoric::linalg::{mat_mul, q, qf, Mat, Q};
use parahoric::pgl2::{
    a_space_dims, almost_char_split_torus, discriminant_valuation, field, fixed_point_count, module_generation_check,
    recurrence_solution_space, sample_i1, sample_i2, CaseTag, LaurentMatrix,
};
use parahoric::reps::{build_irreducible, builtin_costandard, load_costandard, trivial_rho, CoStandardError, RepError};
use parahoric::springer::{springer_table, supported_tags};
use parahoric::witt::{borel_fiber_count, enumerate_x_n, LatticeModel, LieDatum, WittError, WittRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedBudget => "skipped (budget)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub witness: String,
}

impl Outcome {
    fn new(ok: bool, witness: impl Into<String>) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, witness: witness.into() }
    }

    fn fail(witness: impl Into<String>) -> Self {
        Self::new(false, witness)
    }

    fn skipped(witness: impl Into<String>) -> Self {
        Outcome { status: Status::SkippedBudget, witness: witness.into() }
    }
}

pub struct Check {
    pub id: &'static str,
    /// Acceptance criterion number, if the check is one.
    pub criterion: Option<u8>,
    pub suite: Suite,
    pub anchor: &'static str,
    pub run: fn(&SuiteConfig) -> Outcome,
}

pub const CHECKS: [Check; 12] = [
    Check { id: "C01", criterion: Some(1), suite: Suite::Coxeter, anchor: "quotient Coxeter matrix: [[1,inf],[inf,1]]", run: quotient_matrices },
    Check { id: "C02", criterion: Some(2), suite: Suite::Alcove, anchor: "stabilizer lift: injective on the grid", run: stabilizer_lift },
    Check { id: "C03", criterion: Some(3), suite: Suite::Reps, anchor: "Mackey irreducibility: norm=1", run: mackey },
    Check { id: "C04", criterion: Some(4), suite: Suite::Reps, anchor: "co-standard filtration: accept/reject", run: costandard },
    Check { id: "C05", criterion: Some(5), suite: Suite::Fourier, anchor: "Fourier matrix: Z2 entries, S3 involution", run: fourier },
    Check { id: "C06", criterion: Some(6), suite: Suite::Pgl2, anchor: "discriminant parity: v=1", run: discriminant },
    Check { id: "C07", criterion: Some(7), suite: Suite::Pgl2, anchor: "fixed points: count=2", run: fixed_points },
    Check { id: "C08", criterion: Some(8), suite: Suite::Pgl2, anchor: "split torus: dim=2, value=2q, Hom={2:2}", run: split_torus },
    Check { id: "C09", criterion: Some(9), suite: Suite::Witt, anchor: "Witt vectors: W_m(F_p) = Z/p^m", run: witt_oracle },
    Check { id: "C10", criterion: Some(10), suite: Suite::Witt, anchor: "lattice bijections and d-duality", run: lattice_bijection },
    Check { id: "C11", criterion: Some(11), suite: Suite::Witt, anchor: "Borel fiber: count=q+1", run: borel },
    Check { id: "S01", criterion: None, suite: Suite::Springer, anchor: "Springer tables: consistent blocks", run: springer_tables },
];

pub fn check_by_id(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

pub fn check_for_criterion(n: u8) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.criterion == Some(n))
}

fn datum(t: AffineType) -> Result<Arc<CartanDatum>, String> {
    CartanDatum::new(t).map(Arc::new).map_err(|e| e.to_string())
}

fn show(m: &[Vec<Order>]) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(Order::to_string).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}

fn quotient_matrices(c: &SuiteConfig) -> Outcome {
    let expected = vec![vec![Order::Finite(1), Order::Infinite], vec![Order::Infinite, Order::Finite(1)]];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, t, j) in [("C2,J={1}", AffineType::C(2), vec![1]), ("A1,J={}", AffineType::A(1), vec![])] {
        match datum(t).and_then(|d| quotient_coxeter_matrix(&d, &nodes(&j), c.order_cap).map_err(|e| e.to_string())) {
            Ok(m) => {
                ok &= m == expected;
                parts.push(format!("{name}:{}", show(&m)));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}:{e}"));
            }
        }
    }
    Outcome::new(ok, parts.join(" "))
}

fn stabilizer_lift(c: &SuiteConfig) -> Outcome {
    let run = || -> Result<usize, String> {
        let d = datum(AffineType::A(1))?;
        let j = nodes(&[]);
        let t = TorusData::new(&d, &j).map_err(|e| e.to_string())?;
        let grid = sample_grid(&d, &j, c.den);
        for p in &grid {
            t.torus_stabilizer(p).map_err(|e| format!("{p}: {e}"))?;
        }
        Ok(grid.len())
    };
    match run() {
        Ok(n) => Outcome::new(n > 0, format!("A1 den<={}: points={n}", c.den)),
        Err(e) => Outcome::fail(e),
    }
}

fn mackey(c: &SuiteConfig) -> Outcome {
    let grids = [
        (AffineType::A(1), vec![], c.den),
        (AffineType::A(2), vec![], c.den.min(3)),
        (AffineType::C(2), vec![], c.den.min(2)),
        (AffineType::C(2), vec![1], c.den.min(4)),
        (AffineType::G2, vec![], c.den.min(2)),
    ];
    let mut modules = 0;
    for (t, j, den) in grids {
        let res = (|| -> Result<usize, String> {
            let data = TorusData::new(&datum(t)?, &nodes(&j)).map_err(|e| e.to_string())?;
            let mut count = 0;
            for d in sample_grid(&data.datum, &data.j, den) {
                let rho = trivial_rho(&data, &d).map_err(|e| e.to_string())?;
                for sign in [1, -1] {
                    let r: Vec<Mat<Q>> = rho.iter().map(|_| vec![vec![q(sign)]]).collect();
                    let m = match build_irreducible(&data, &d, &r) {
                        Ok(m) => m,
                        Err(RepError::Inconsistent(_)) if sign == -1 => continue,
                        Err(e) => return Err(format!("{t} {d}: {e}")),
                    };
                    let norm = m.mackey_norm(&data);
                    if norm != q(1) {
                        return Err(format!("{t} {d}: norm={norm}"));
                    }
                    count += 1;
                }
            }
            Ok(count)
        })();
        match res {
            Ok(n) => modules += n,
            Err(e) => return Outcome::fail(e),
        }
    }
    Outcome::new(true, format!("modules={modules} norm=1"))
}

const A1_SWAPPED: &str = "group A1\nlabel 0 1,0 1 triv\ndim 2\ngen s0 [1 0; 0 -1]\ngen s1 [1 1; 0 -1]\n\
gen o(1,0) [1 1/2; 0 -1]\nlayer [1 0; 0 1]\nlayer [1 0]\n";

fn costandard(_: &SuiteConfig) -> Outcome {
    let accepted = builtin_costandard("({1},C)");
    let swapped = load_costandard(A1_SWAPPED);
    let a = match &accepted {
        Ok(_) => "builtin=accepted".to_string(),
        Err(e) => format!("builtin=rejected({e})"),
    };
    let (b, rejected) = match &swapped {
        Err(CoStandardError::Rejected { layer, .. }) => (format!("swapped=rejected at layer {layer}"), true),
        Err(e) => (format!("swapped=error({e})"), false),
        Ok(_) => ("swapped=accepted".to_string(), false),
    };
    Outcome::new(accepted.is_ok() && rejected, format!("{a} {b}"))
}

fn fourier(_: &SuiteConfig) -> Outcome {
    let run = || -> Result<(bool, bool), String> {
        let z2 = curated_group("Z2").map_err(|e| e.to_string())?;
        let s = pairing_matrix(&z2);
        let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        let z2_ok = s.len() == 4
            && (0..4).all(|i| (0..4).all(|j| s[i][j] == Cyclo::from_q(qf(signs[i][j], 2))));
        let s3 = curated_group("S3").map_err(|e| e.to_string())?;
        let m = pairing_matrix(&s3);
        let sq = mat_mul(&m, &m);
        let s3_ok = sq.iter().enumerate().all(|(i, r)| {
            r.iter().enumerate().all(|(j, x)| *x == if i == j { Cyclo::one() } else { Cyclo::zero() })
        });
        Ok((z2_ok, s3_ok))
    };
    match run() {
        Ok((a, b)) => Outcome::new(a && b, format!("Z2 4x4 exact={a} S3 S^2=I={b}")),
        Err(e) => Outcome::fail(e),
    }
}

fn rng(seed: u64) -> impl FnMut(u32) -> u32 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    move |n| r.gen_range(0..n)
}

/// Samples `samples` random I² elements over 𝔽_q at precision `prec` and
/// counts those whose discriminant has valuation exactly 1; the second
/// entry is the first failure.
pub fn discriminant_counts(q: u64, samples: usize, prec: i64, seed: u64) -> Result<(usize, Option<String>), String> {
    let k = field(q).map_err(|e| e.to_string())?;
    let mut next = rng(seed ^ q);
    let mut ok = 0;
    let mut first = None;
    for _ in 0..samples {
        let g = sample_i2(&k, prec, &mut next);
        match discriminant_valuation(&g) {
            Ok(1) => ok += 1,
            other => {
                if first.is_none() {
                    let v = match other {
                        Ok(v) => v.to_string(),
                        Err(e) => e.to_string(),
                    };
                    first = Some(format!("{g}: {v}"));
                }
            }
        }
    }
    Ok((ok, first))
}

fn discriminant(c: &SuiteConfig) -> Outcome {
    let mut parts = Vec::new();
    let mut all = true;
    for q in c.discriminant_q() {
        match discriminant_counts(q, c.samples, c.prec, c.seed) {
            Ok((ok, first)) => {
                all &= ok == c.samples;
                let mut s = format!("q={q}:{ok}/{}", c.samples);
                if let Some(f) = first {
                    s.push_str(&format!(" (first failure {f})"));
                }
                parts.push(s);
            }
            Err(e) => {
                all = false;
                parts.push(format!("q={q}:{e}"));
            }
        }
    }
    Outcome::new(all, parts.join("; "))
}

fn fixed_points(c: &SuiteConfig) -> Outcome {
    let mut parts = Vec::new();
    let mut all = true;
    for q in c.fixed_point_q() {
        let res = (|| -> Result<(usize, usize, usize), String> {
            let k = field(q).map_err(|e| e.to_string())?;
            let g = LaurentMatrix::parse(&k, "0,1;1@1,0", None).map_err(|e| e.to_string())?;
            let mut next = rng(c.seed ^ (q << 8));
            let mut conj = vec![g.clone()];
            for _ in 0..c.conjugates {
                let h = sample_i1(&k, 2, &mut next);
                conj.push(h.mul(&g).mul(&h.adj()));
            }
            let mut ok = 0;
            let mut longest = 0;
            let mut decided = usize::MAX;
            for x in &conj {
                let rep = fixed_point_count(x, c.prec, c.max_len).map_err(|e| format!("{x}: {e}"))?;
                if rep.count != 2 {
                    return Err(format!("{x}: count={}", rep.count));
                }
                longest = longest.max(rep.stabilized_at);
                decided = decided.min(rep.by_length.len() - 1);
                ok += 1;
            }
            Ok((ok, longest, decided))
        })();
        match res {
            Ok((n, l, d)) => {
                parts.push(format!("q={q}:{n}/{} count=2 reached at length<={l} stable through length>={d}", c.conjugates + 1))
            }
            Err(e) => {
                all = false;
                parts.push(format!("q={q}:{e}"));
            }
        }
    }
    Outcome::new(all, parts.join("; "))
}

fn split_torus(c: &SuiteConfig) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for &w in &c.windows {
        match recurrence_solution_space(w) {
            Ok(s) => {
                ok &= s.dimension == 2 && s.verified;
                parts.push(format!("N={w}:dim={}", s.dimension));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("N={w}:{e}"));
            }
        }
        match module_generation_check(w) {
            Ok(r) => {
                ok &= r.coinvariant_rank == 0;
                parts.push(format!("N={w}:coinv={}", r.coinvariant_rank));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("N={w}:{e}"));
            }
        }
    }
    for q in c.discriminant_q() {
        match almost_char_split_torus(q) {
            Ok(a) => {
                ok &= a.value == 2 * q as i64 && a.steinberg == 2 * q as i64 - 1 && a.value - a.steinberg == 1;
                parts.push(format!("q={q}:value={} unit={}", a.value, a.value - a.steinberg));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("q={q}:{e}"));
            }
        }
    }
    match a_space_dims("({1},C)", CaseTag::SplitTorus) {
        Ok(d) => {
            ok &= d == BTreeMap::from([(2, 2)]);
            parts.push(format!("Hom={d:?}"));
        }
        Err(e) => {
            ok = false;
            parts.push(format!("Hom:{e}"));
        }
    }
    Outcome::new(ok, parts.join(" "))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Compares `W_m(𝔽_p)` with `ℤ/p^m` under `(a_i) ↦ Σ pⁱ·a_i^{p^{m−1}}`
/// on every pair of elements; returns the number of pairs compared.
pub fn witt_vs_integers(p: u64, m: usize) -> Result<usize, String> {
    let ring = WittRing::new(p, m).map_err(|e| e.to_string())?;
    let modulus = p.pow(m as u32);
    let t = p.pow(m as u32 - 1);
    let image = |c: &[u32]| -> u64 {
        c.iter().enumerate().map(|(i, &a)| p.pow(i as u32) * pow_mod(a as u64, t, modulus)).sum::<u64>() % modulus
    };
    let elems = ring.elements();
    let images: Vec<u64> = elems.iter().map(|x| image(&x.c)).collect();
    if images.iter().collect::<HashSet<_>>().len() != elems.len() {
        return Err("not a bijection".into());
    }
    let mut pairs = 0;
    for (x, &ix) in elems.iter().zip(&images) {
        for (y, &iy) in elems.iter().zip(&images) {
            let s = x.add(y).map_err(|e| e.to_string())?;
            let prod = x.mul(y).map_err(|e| e.to_string())?;
            if image(&s.c) != (ix + iy) % modulus || image(&prod.c) != ix * iy % modulus {
                return Err(format!("{x},{y}"));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn witt_oracle(c: &SuiteConfig) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let mut skipped = false;
    for &m in &c.witt_m {
        for &p in &c.witt_p {
            let pairs = p.saturating_pow(2 * m as u32);
            if pairs > c.budget {
                skipped = true;
                parts.push(format!("W{m}(F{p}):{pairs}>budget"));
                continue;
            }
            match witt_vs_integers(p, m) {
                Ok(n) => parts.push(format!("W{m}(F{p}):{n}")),
                Err(e) => {
                    ok = false;
                    parts.push(format!("W{m}(F{p}):{e}"));
                }
            }
        }
    }
    let w = parts.join(" ");
    if !ok {
        Outcome::fail(w)
    } else if skipped {
        Outcome::skipped(w)
    } else {
        Outcome::new(true, w)
    }
}

fn lattice_bijection(c: &SuiteConfig) -> Outcome {
    let datum = match LieDatum::sl2(c.lattice_p) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let model = LatticeModel::new(datum, c.n);
    match enumerate_x_n(&model, c.budget) {
        Ok(r) => {
            let ok = r.bijection_e() && r.bijection_x() && r.duality_failures == 0;
            Outcome::new(
                ok,
                format!(
                    "sl2 p={} n={}: lattices={} E'={} direct={} E'0={} direct={} duality_failures={}",
                    c.lattice_p,
                    c.n,
                    r.lattices_examined,
                    r.e_prime.len(),
                    r.direct_e.len(),
                    r.e_prime_0.len(),
                    r.direct_x.len(),
                    r.duality_failures
                ),
            )
        }
        Err(WittError::Budget { needed, budget }) => Outcome::skipped(format!("needs {needed} > {budget}")),
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn borel(c: &SuiteConfig) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for &q in &c.borel_q {
        let res = (|| -> Result<usize, String> {
            let (p, _) = parahoric::fq::prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?;
            let model = LatticeModel::new(LieDatum::sl2(p as u32).map_err(|e| e.to_string())?, 1);
            borel_fiber_count(&model, &model.base_image(), q).map_err(|e| e.to_string())
        })();
        match res {
            Ok(n) => {
                ok &= n == q as usize + 1;
                parts.push(format!("q={q}:{n}"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("q={q}:{e}"));
            }
        }
    }
    Outcome::new(ok, parts.join(" "))
}

fn springer_tables(_: &SuiteConfig) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for tag in supported_tags() {
        match springer_table(tag).and_then(|t| t.validate().map(|_| t.pairs.len())) {
            Ok(n) => parts.push(format!("{tag}:{n} pairs")),
            Err(e) => {
                ok = false;
                parts.push(format!("{tag}:{e}"));
            }
        }
    }
    Outcome::new(ok, parts.join(" "))
}
