use crate::fq::Fq;
use super::Pgl2Error;
use std::fmt;
use std::sync::Arc;

/// Stand-in for an unbounded precision or valuation in bound arithmetic.
const INF: i64 = i64::MAX / 4;

/// Relative precision used when inverting an exact non-monomial element.
pub const EXACT_INV_PREC: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Three-valued outcome of a valuation inequality at finite precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn and(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Unknown, _) | (_, Tri::Unknown) => Tri::Unknown,
            _ => Tri::Yes,
        }
    }
}

/// A Laurent series over 𝔽_q known modulo `ε^prec`, or exactly when `prec`
/// is `None`. `coeffs[i]` is the coefficient of `ε^(start+i)`; the first
/// and last stored coefficients are nonzero.
#[derive(Clone, Debug)]
pub struct Laurent {
    pub field: Arc<Fq>,
    start: i64,
    coeffs: Vec<u32>,
    prec: Option<i64>,
}

impl PartialEq for Laurent {
    fn eq(&self, o: &Self) -> bool {
        self.start == o.start && self.coeffs == o.coeffs && self.prec == o.prec
    }
}

fn bound(p: Option<i64>) -> i64 {
    p.unwrap_or(INF)
}

fn unbound(p: i64) -> Option<i64> {
    (p < INF / 2).then_some(p)
}

impl Laurent {
    pub fn new(field: &Arc<Fq>, start: i64, coeffs: Vec<u32>, prec: Option<i64>) -> Self {
        let mut x = Laurent { field: field.clone(), start, coeffs, prec };
        x.normalize();
        x
    }

    pub fn zero(field: &Arc<Fq>) -> Self {
        Self::new(field, 0, vec![], None)
    }

    pub fn one(field: &Arc<Fq>) -> Self {
        Self::monomial(field, 1, 0)
    }

    /// `c·ε^n`, exact.
    pub fn monomial(field: &Arc<Fq>, c: u32, n: i64) -> Self {
        Self::new(field, n, vec![c], None)
    }

    pub fn eps(field: &Arc<Fq>) -> Self {
        Self::monomial(field, 1, 1)
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.start).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        if self.coeffs.is_empty() {
            self.start = 0;
        }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Coefficient of `ε^n`; `None` when `n` is beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<u32> {
        if n >= bound(self.prec) {
            return None;
        }
        let i = n - self.start;
        Some(if self.coeffs.is_empty() || i < 0 || i >= self.coeffs.len() as i64 { 0 } else { self.coeffs[i as usize] })
    }

    /// The valuation when it is determined by the known coefficients.
    pub fn known_val(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// A lower bound for the valuation (`INF` for exact zero).
    fn min_val(&self) -> i64 {
        self.known_val().unwrap_or(bound(self.prec))
    }

    pub fn valuation(&self) -> Result<Valuation, Pgl2Error> {
        match (self.known_val(), self.prec) {
            (Some(v), _) => Ok(Valuation::Finite(v)),
            (None, None) => Ok(Valuation::Infinite),
            (None, Some(p)) => Err(Pgl2Error::Indeterminate(format!("valuation of a value zero modulo e^{p}"))),
        }
    }

    pub fn val_eq(&self, m: i64) -> Tri {
        match self.known_val() {
            Some(v) => tri(v == m),
            None if bound(self.prec) > m => Tri::No,
            None => Tri::Unknown,
        }
    }

    pub fn val_ge(&self, m: i64) -> Tri {
        match self.known_val() {
            Some(v) => tri(v >= m),
            None if bound(self.prec) >= m => Tri::Yes,
            None => Tri::Unknown,
        }
    }

    pub fn val_gt(&self, m: i64) -> Tri {
        self.val_ge(m + 1)
    }

    /// Forgets everything at and beyond `ε^p`.
    pub fn truncate(&self, p: i64) -> Self {
        Self::new(&self.field, self.start, self.coeffs.clone(), Some(p.min(bound(self.prec))))
    }

    /// Multiplication by `ε^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut x = self.clone();
        if !x.coeffs.is_empty() {
            x.start += k;
        }
        x.prec = self.prec.map(|p| p + k);
        x
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        Self::new(f, self.start, self.coeffs.iter().map(|&x| f.mul(x, c)).collect(), self.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let prec = unbound(bound(self.prec).min(bound(o.prec)));
        if self.coeffs.is_empty() {
            return Self::new(f, o.start, o.coeffs.clone(), prec);
        }
        if o.coeffs.is_empty() {
            return Self::new(f, self.start, self.coeffs.clone(), prec);
        }
        let start = self.start.min(o.start);
        let end = (self.start + self.coeffs.len() as i64).max(o.start + o.coeffs.len() as i64);
        let mut c = vec![0u32; (end - start) as usize];
        for (i, &x) in self.coeffs.iter().enumerate() {
            c[(self.start - start) as usize + i] = x;
        }
        for (i, &x) in o.coeffs.iter().enumerate() {
            let at = (o.start - start) as usize + i;
            c[at] = f.add(c[at], x);
        }
        Self::new(f, start, c, prec)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.start, self.coeffs.iter().map(|&x| f.neg(x)).collect(), self.prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        let pa = self.min_val().saturating_add(bound(o.prec));
        let pb = o.min_val().saturating_add(bound(self.prec));
        let prec = unbound(pa.min(pb));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(f, 0, vec![], prec);
        }
        let mut c = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(x, y));
            }
        }
        Self::new(f, self.start + o.start, c, prec)
    }

    /// Multiplicative inverse. Inexact inputs keep their relative precision;
    /// exact non-monomials are expanded to relative precision
    /// [`EXACT_INV_PREC`].
    pub fn inv(&self) -> Result<Self, Pgl2Error> {
        let f = &self.field;
        let v = match self.valuation()? {
            Valuation::Finite(v) => v,
            Valuation::Infinite => return Err(Pgl2Error::Precondition("inverse of zero".into())),
        };
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(f, f.inv(self.coeffs[0]), -v));
        }
        let rel = match self.prec {
            Some(p) => p - v,
            None => EXACT_INV_PREC,
        };
        let u = &self.coeffs;
        let u0 = f.inv(u[0]);
        let mut c: Vec<u32> = Vec::with_capacity(rel as usize);
        for n in 0..rel as usize {
            if n == 0 {
                c.push(u0);
                continue;
            }
            let mut s = 0;
            for j in 1..=n.min(u.len() - 1) {
                s = f.add(s, f.mul(u[j], c[n - j]));
            }
            c.push(f.neg(f.mul(u0, s)));
        }
        Ok(Self::new(f, -v, c, Some(rel - v)))
    }

    /// Parses `c0+c1e+c2e^2+...@v`, the series `ε^v(c0 + c1 ε + ...)`.
    /// Coefficients are integers read modulo `p`; `prec` bounds the result.
    pub fn parse(field: &Arc<Fq>, text: &str, prec: Option<i64>) -> Result<Self, Pgl2Error> {
        let bad = |m: &str| Pgl2Error::Parse(format!("{text:?}: {m}"));
        let (body, shift) = match text.trim().split_once('@') {
            Some((b, v)) => (b.trim(), v.trim().parse::<i64>().map_err(|_| bad("bad valuation"))?),
            None => (text.trim(), 0),
        };
        let mut out = Self::zero(field);
        for term in body.replace("^-", "^~").replace('-', "+-").replace("^~", "^-").split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (coef, exp) = match term.split_once('e') {
                None => (term, 0),
                Some((c, rest)) => {
                    let e = match rest.strip_prefix('^') {
                        Some(k) => k.parse::<i64>().map_err(|_| bad("bad exponent"))?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad("bad term")),
                    };
                    (c, e)
                }
            };
            let c = match coef {
                "" => 1,
                "-" => -1,
                c => c.parse::<i64>().map_err(|_| bad("bad coefficient"))?,
            };
            out = out.add(&Self::monomial(field, field.from_int(c), exp + shift));
        }
        Ok(match prec {
            Some(p) => out.truncate(p),
            None => out,
        })
    }
}

fn tri(b: bool) -> Tri {
    if b {
        Tri::Yes
    } else {
        Tri::No
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let terms: Vec<String> = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| match i {
                    0 => format!("{c}"),
                    1 => format!("{c}e"),
                    _ => format!("{c}e^{i}"),
                })
                .collect();
            write!(f, "{}@{}", terms.join("+"), self.start)?;
        }
        if let Some(p) = self.prec {
            write!(f, "+O(e^{p})")?;
        }
        Ok(())
    }
}

/// A 2×2 matrix over Laurent series, standing for its image in PGL₂.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMatrix {
    pub m: [[Laurent; 2]; 2],
}

impl LaurentMatrix {
    pub fn new(a: Laurent, b: Laurent, c: Laurent, d: Laurent) -> Self {
        LaurentMatrix { m: [[a, b], [c, d]] }
    }

    pub fn identity(field: &Arc<Fq>) -> Self {
        Self::new(Laurent::one(field), Laurent::zero(field), Laurent::zero(field), Laurent::one(field))
    }

    /// Monomial matrix `[[c00 ε^e00, ...]]`; a `None` entry is zero.
    pub fn monomials(field: &Arc<Fq>, e: [[Option<(u32, i64)>; 2]; 2]) -> Self {
        let f = |x: Option<(u32, i64)>| x.map_or_else(|| Laurent::zero(field), |(c, n)| Laurent::monomial(field, c, n));
        Self::new(f(e[0][0]), f(e[0][1]), f(e[1][0]), f(e[1][1]))
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.m[0][0].field
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.m[i][0].mul(&o.m[0][j]).add(&self.m[i][1].mul(&o.m[1][j]));
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn det(&self) -> Laurent {
        self.m[0][0].mul(&self.m[1][1]).sub(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn trace(&self) -> Laurent {
        self.m[0][0].add(&self.m[1][1])
    }

    /// The adjugate, equal to the inverse in PGL₂.
    pub fn adj(&self) -> Self {
        Self::new(self.m[1][1].clone(), self.m[0][1].neg(), self.m[1][0].neg(), self.m[0][0].clone())
    }

    pub fn inverse(&self) -> Result<Self, Pgl2Error> {
        let d = self.det().inv()?;
        let a = self.adj();
        Ok(Self::new(a.m[0][0].mul(&d), a.m[0][1].mul(&d), a.m[1][0].mul(&d), a.m[1][1].mul(&d)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.m[i][j].sub(&o.m[i][j]);
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// Scalar multiplication by `ε^k`.
    pub fn shift(&self, k: i64) -> Self {
        let e = |i: usize, j: usize| self.m[i][j].shift(k);
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn truncate(&self, p: i64) -> Self {
        let e = |i: usize, j: usize| self.m[i][j].truncate(p);
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    /// Parses `a,b;c,d` with entries in the [`Laurent::parse`] format.
    pub fn parse(field: &Arc<Fq>, text: &str, prec: Option<i64>) -> Result<Self, Pgl2Error> {
        let rows: Vec<&str> = text.split(';').collect();
        let entries: Vec<&str> = rows.iter().flat_map(|r| r.split(',')).collect();
        if rows.len() != 2 || entries.len() != 4 {
            return Err(Pgl2Error::Parse(format!("{text:?}: expected a,b;c,d")));
        }
        let e: Vec<Laurent> = entries.iter().map(|t| Laurent::parse(field, t, prec)).collect::<Result<_, _>>()?;
        let mut it = e.into_iter();
        Ok(Self::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}
