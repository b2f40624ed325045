//! PGL₂ over 𝔽_q((ε)): valuations, Iwahori membership, the discriminant
//! and conjugation arguments for the non-trivial component, fixed points on
//! the Iwahori variety, and the module models of the examples.

mod laurent;
mod modules;

pub use crate::fq::{prime_power, FieldError, Fq, MAX_Q};
pub use laurent::{Laurent, LaurentMatrix, Tri, Valuation, EXACT_INV_PREC};
pub use modules::{
    a_space_dims, almost_char_split_torus, h0_cvr_module, module_generation_check, recurrence_solution_space, iterate_recurrence,
    AlmostCharValue, CaseTag, GenerationReport, H0Window, RecurrenceModule, RecurrenceSolution,
};

use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum Pgl2Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("indeterminate at current precision: {0}")]
    Indeterminate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("discriminant valuation is {0}, expected 1")]
    Discriminant(Valuation),
    #[error("fixed-point count not stabilized: {partial} cosets found up to word length {length}")]
    NotStabilized { partial: usize, length: usize },
    #[error("window {0} too small, need at least 2")]
    WindowTooSmall(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    CoStandard(#[from] crate::reps::CoStandardError),
}

pub fn field(q: u64) -> Result<Arc<Fq>, Pgl2Error> {
    Ok(Arc::new(Fq::new(q)?))
}

/// Membership of a PGL₂ element: `I1` is the Iwahori subgroup, `I2` its
/// coset through `[[0,1],[ε,0]]`. `m` is the scalar shift of the
/// representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IwahoriClass {
    I1 { m: i64 },
    I2 { m: i64 },
    Neither,
}

impl std::fmt::Display for IwahoriClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IwahoriClass::I1 { m } => write!(f, "I1(m={m})"),
            IwahoriClass::I2 { m } => write!(f, "I2(m={m})"),
            IwahoriClass::Neither => write!(f, "neither"),
        }
    }
}

fn exact_zeros(a: &Laurent, d: &Laurent) -> Tri {
    if a.is_exact() || d.is_exact() {
        Tri::No
    } else {
        Tri::Unknown
    }
}

/// `[[a,b],[c,d]]` with `v(a)=v(d)=m`, `v(b)≥m`, `v(c)>m`; `v(det) = 2m`.
fn test_i1(g: &LaurentMatrix, det: Option<i64>) -> (Tri, i64) {
    let [[a, b], [c, d]] = &g.m;
    let m = match det {
        Some(v) if v.rem_euclid(2) == 1 => return (Tri::No, 0),
        Some(v) => v / 2,
        None => match a.known_val().or(d.known_val()) {
            Some(m) => m,
            None => return (exact_zeros(a, d), 0),
        },
    };
    (a.val_eq(m).and(d.val_eq(m)).and(b.val_ge(m)).and(c.val_gt(m)), m)
}

/// `[[c,d],[a,b]]` with `v(a)=v(d)+1=m+1`, `v(b)≥m+1`, `v(c)≥m+1`;
/// `v(det) = 2m+1`.
fn test_i2(g: &LaurentMatrix, det: Option<i64>) -> (Tri, i64) {
    let [[c, d], [a, b]] = &g.m;
    let m = match det {
        Some(v) if v.rem_euclid(2) == 0 => return (Tri::No, 0),
        Some(v) => (v - 1).div_euclid(2),
        None => match d.known_val().or(a.known_val().map(|v| v - 1)) {
            Some(m) => m,
            None => return (exact_zeros(a, d), 0),
        },
    };
    (a.val_eq(m + 1).and(d.val_eq(m)).and(b.val_ge(m + 1)).and(c.val_ge(m + 1)), m)
}

pub fn iwahori_class(g: &LaurentMatrix) -> Result<IwahoriClass, Pgl2Error> {
    let det = g.det().known_val();
    let (t1, m1) = test_i1(g, det);
    let (t2, m2) = test_i2(g, det);
    match (t1, t2) {
        (Tri::Yes, _) => Ok(IwahoriClass::I1 { m: m1 }),
        (_, Tri::Yes) => Ok(IwahoriClass::I2 { m: m2 }),
        (Tri::No, Tri::No) => Ok(IwahoriClass::Neither),
        _ => Err(Pgl2Error::Indeterminate(format!("Iwahori class of {g}"))),
    }
}

fn require_i2(g: &LaurentMatrix) -> Result<i64, Pgl2Error> {
    match iwahori_class(g)? {
        IwahoriClass::I2 { m } => Ok(m),
        other => Err(Pgl2Error::Precondition(format!("{g} is {other}, not in I2"))),
    }
}

/// `v((λ−λ′)²)` for the eigenvalues of an I² element, normalized to
/// `m = 0`; this is `v(tr² − 4 det)` and must equal 1.
pub fn discriminant_valuation(g: &LaurentMatrix) -> Result<i64, Pgl2Error> {
    let m = require_i2(g)?;
    let h = g.shift(-m);
    let tr = h.trace();
    let four = h.field().from_int(4);
    let disc = tr.mul(&tr).sub(&h.det().scale(four));
    match disc.valuation()? {
        Valuation::Finite(1) => Ok(1),
        v => Err(Pgl2Error::Discriminant(v)),
    }
}

/// Entries `(a, b, c, d)` of an I² element written `[[εc, d], [εa, εb]]`
/// after removing the scalar shift.
fn i2_entries(g: &LaurentMatrix, m: i64) -> [Laurent; 4] {
    let h = g.shift(-m);
    let [[c, d], [a, b]] = h.m;
    [a.shift(-1), b.shift(-1), c.shift(-1), d]
}

/// An element `h ∈ I¹` with `h g h⁻¹ = g′`, built as
/// `[[1, (c′−c)/a], [0, a′/a]]`; `None` when trace and determinant differ.
pub fn conjugating_element(g: &LaurentMatrix, g2: &LaurentMatrix) -> Result<Option<LaurentMatrix>, Pgl2Error> {
    let (m, m2) = (require_i2(g)?, require_i2(g2)?);
    let (h, h2) = (g.shift(-m), g2.shift(-m2));
    let differs = |x: Laurent| x.known_val().is_some();
    if differs(h.trace().sub(&h2.trace())) || differs(h.det().sub(&h2.det())) {
        return Ok(None);
    }
    let [a, _, c, _] = i2_entries(g, m);
    let [a2, _, c2, _] = i2_entries(g2, m2);
    let ainv = a.inv()?;
    let f = g.field();
    let r = LaurentMatrix::new(Laurent::one(f), c2.sub(&c).mul(&ainv), Laurent::zero(f), a2.mul(&ainv));
    let defect = r.mul(&h).sub(&h2.mul(&r));
    if defect.m.iter().flatten().any(|x| x.known_val().is_some()) {
        return Ok(None);
    }
    match iwahori_class(&r)? {
        IwahoriClass::I1 { .. } => Ok(Some(r)),
        other => Err(Pgl2Error::Precondition(format!("conjugator {r} is {other}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    pub count: usize,
    /// Cosets found at each exact word length.
    pub by_length: Vec<usize>,
    /// Word length at which the cumulative count was seen to be stable.
    pub stabilized_at: usize,
}

/// Standard generators: `y_1(a) = x_{α1}(a) n_1`, `y_0(a) = x_{α0}(a) n_0`
/// and the length-zero element `τ = [[0,1],[ε,0]]`.
fn y(field: &Arc<Fq>, i: usize, a: u32) -> LaurentMatrix {
    let one = Laurent::one(field);
    let zero = Laurent::zero(field);
    let m1 = field.neg(1);
    if i == 1 {
        // [[1,a],[0,1]] · [[0,1],[-1,0]]
        LaurentMatrix::new(Laurent::monomial(field, field.neg(a), 0), one, Laurent::monomial(field, m1, 0), zero)
    } else {
        // [[1,0],[aε,1]] · [[0,ε⁻¹],[-ε,0]]
        LaurentMatrix::new(zero, Laurent::monomial(field, 1, -1), Laurent::monomial(field, m1, 1), Laurent::monomial(field, a, 0))
    }
}

pub fn tau(field: &Arc<Fq>) -> LaurentMatrix {
    LaurentMatrix::monomials(field, [[None, Some((1, 0))], [Some((1, 1)), None]])
}

/// Counts cosets `x I¹` with `x⁻¹ g x ∈ I²`, for `g ∈ I²` known to precision
/// `prec`. Representatives are `y_{i1}(a1)⋯y_{ik}(ak) τ^e` over alternating
/// words of length `k ≤ max_len`; the count is returned once the cumulative
/// counts at `L` and `L+2` agree for the largest decided `L+2`.
pub fn fixed_point_count(g: &LaurentMatrix, prec: i64, max_len: usize) -> Result<FixedPointReport, Pgl2Error> {
    require_i2(g)?;
    let f = g.field().clone();
    let g = g.truncate(prec);
    let t = tau(&f);
    let t_adj = t.adj();
    // (last generator index, P, adj P)
    let mut frontier: Vec<(Option<usize>, LaurentMatrix, LaurentMatrix)> =
        vec![(None, LaurentMatrix::identity(&f), LaurentMatrix::identity(&f))];
    let mut by_length = Vec::new();
    let mut decided = 0usize;
    for len in 0..=max_len {
        if len > 0 {
            let mut next = Vec::with_capacity(frontier.len() * f.q as usize);
            for (last, p, padj) in &frontier {
                for i in [0usize, 1] {
                    if *last == Some(i) {
                        continue;
                    }
                    for a in 0..f.q {
                        let yi = y(&f, i, a);
                        next.push((Some(i), p.mul(&yi), yi.adj().mul(padj)));
                    }
                }
            }
            frontier = next;
        }
        let mut found = 0;
        let mut unknown = false;
        for (_, p, padj) in &frontier {
            let a = padj.mul(&g).mul(p);
            for x in [a.clone(), t_adj.mul(&a).mul(&t)] {
                match iwahori_class(&x) {
                    Ok(IwahoriClass::I2 { .. }) => found += 1,
                    Ok(_) => {}
                    Err(Pgl2Error::Indeterminate(_)) => unknown = true,
                    Err(e) => return Err(e),
                }
            }
        }
        if unknown {
            break;
        }
        by_length.push(found);
        decided = len;
    }
    if by_length.is_empty() {
        return Err(Pgl2Error::NotStabilized { partial: 0, length: 0 });
    }
    let cumulative = |l: usize| by_length[..=l].iter().sum::<usize>();
    let total = cumulative(by_length.len() - 1);
    if decided >= 2 && cumulative(decided) == cumulative(decided - 2) {
        let stabilized_at = (0..=decided).find(|&l| cumulative(l) == total).unwrap_or(decided);
        Ok(FixedPointReport { count: total, by_length, stabilized_at })
    } else {
        Err(Pgl2Error::NotStabilized { partial: total, length: decided })
    }
}

/// Random element of I¹ (`m = 0`) with polynomial entries of degree below
/// `deg`; `next(n)` must return a value in `0..n`.
pub fn sample_i1(field: &Arc<Fq>, deg: usize, next: &mut impl FnMut(u32) -> u32) -> LaurentMatrix {
    let q = field.q;
    let mut poly = |unit: bool, shift: i64| {
        let c: Vec<u32> = (0..deg).map(|i| if i == 0 && unit { 1 + next(q - 1) } else { next(q) }).collect();
        Laurent::new(field, shift, c, None)
    };
    let (a, b, c, d) = (poly(true, 0), poly(false, 0), poly(false, 1), poly(true, 0));
    LaurentMatrix::new(a, b, c, d)
}

/// Random element `[[εc, d], [εa, εb]]` of I² with `a, d` units, known
/// modulo `ε^prec`.
pub fn sample_i2(field: &Arc<Fq>, prec: i64, next: &mut impl FnMut(u32) -> u32) -> LaurentMatrix {
    let q = field.q;
    let mut poly = |unit: bool, shift: i64| {
        let c: Vec<u32> = (0..prec.max(1)).map(|i| if i == 0 && unit { 1 + next(q - 1) } else { next(q) }).collect();
        Laurent::new(field, shift, c, Some(prec))
    };
    let (a, b, c, d) = (poly(true, 1), poly(false, 1), poly(false, 1), poly(true, 0));
    LaurentMatrix::new(c, d, a, b)
}
