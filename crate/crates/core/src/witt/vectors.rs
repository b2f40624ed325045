use super::WittError;
use crate::fq::{prime_power, Fq};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

/// Integer polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq)]
struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    fn var(nvars: usize, i: usize, e: u32, c: BigInt) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        let mut p = Self::zero(nvars);
        p.terms.insert(exps, c);
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn scale(&self, k: &BigInt) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *out.terms.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(self.nvars, BigInt::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn div_exact(&self, d: &BigInt) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero(), "ghost recursion must divide exactly");
                    (e.clone(), q)
                })
                .collect(),
        }
    }

    fn reduce(&self, p: u32) -> Vec<(Vec<u32>, u32)> {
        self.terms
            .iter()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(&BigInt::from(p)).to_u32().unwrap();
                (r != 0).then(|| (e.clone(), r))
            })
            .collect()
    }
}

/// Witt structure polynomials for addition, multiplication and negation of
/// length-`m` vectors, reduced mod `p`. Variables are `X_0..X_{m-1}`
/// followed by `Y_0..Y_{m-1}`.
#[derive(Debug)]
pub struct StructurePolys {
    pub p: u32,
    pub m: usize,
    add: Vec<Vec<(Vec<u32>, u32)>>,
    mul: Vec<Vec<(Vec<u32>, u32)>>,
    neg: Vec<Vec<(Vec<u32>, u32)>>,
}

impl StructurePolys {
    /// Number of monomials in each addition and multiplication polynomial.
    pub fn sizes(&self) -> (Vec<usize>, Vec<usize>) {
        (self.add.iter().map(Vec::len).collect(), self.mul.iter().map(Vec::len).collect())
    }
}

fn ghost(nvars: usize, offset: usize, k: usize, p: u64) -> Poly {
    let mut w = Poly::zero(nvars);
    for i in 0..=k {
        let c = BigInt::from(p).pow(i as u32);
        w = w.add(&Poly::var(nvars, offset + i, p.pow((k - i) as u32) as u32, c));
    }
    w
}

/// `S_k = (Φ_k − Σ_{i<k} p^i S_i^{p^{k−i}}) / p^k` where `Φ_k` is the target
/// ghost component.
fn lift(p: u64, m: usize, target: impl Fn(usize) -> Poly) -> Vec<Poly> {
    let mut s: Vec<Poly> = Vec::with_capacity(m);
    for k in 0..m {
        let mut rest = target(k);
        for (i, si) in s.iter().enumerate() {
            let c = -BigInt::from(p).pow(i as u32);
            rest = rest.add(&si.pow(p.pow((k - i) as u32)).scale(&c));
        }
        s.push(rest.div_exact(&BigInt::from(p).pow(k as u32)));
    }
    s
}

fn build(p: u32, m: usize) -> StructurePolys {
    let (pp, nv) = (p as u64, 2 * m);
    let add = lift(pp, m, |k| ghost(nv, 0, k, pp).add(&ghost(nv, m, k, pp)));
    let mul = lift(pp, m, |k| ghost(nv, 0, k, pp).mul(&ghost(nv, m, k, pp)));
    let neg = lift(pp, m, |k| ghost(nv, 0, k, pp).scale(&-BigInt::one()));
    let red = |v: Vec<Poly>| v.iter().map(|x| x.reduce(p)).collect();
    StructurePolys { p, m, add: red(add), mul: red(mul), neg: red(neg) }
}

/// Structure polynomials for `(p, m)`, built once and shared.
pub fn structure_polys(p: u32, m: usize) -> Arc<StructurePolys> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<StructurePolys>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&(p, m)) {
        return s.clone();
    }
    let built = Arc::new(build(p, m));
    cache.lock().unwrap().entry((p, m)).or_insert(built).clone()
}

/// `W_m(𝔽_q)`.
#[derive(Debug)]
pub struct WittRing {
    pub field: Arc<Fq>,
    pub m: usize,
    polys: Arc<StructurePolys>,
}

impl WittRing {
    pub fn new(q: u64, m: usize) -> Result<Arc<Self>, WittError> {
        if m == 0 {
            return Err(WittError::Parameters("length must be positive".into()));
        }
        if prime_power(q).is_none() {
            return Err(WittError::Parameters(format!("{q} is not a prime power")));
        }
        let field = Arc::new(Fq::new(q).map_err(|e| WittError::Parameters(e.to_string()))?);
        let polys = structure_polys(field.p, m);
        Ok(Arc::new(WittRing { field, m, polys }))
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    pub fn q(&self) -> u32 {
        self.field.q
    }

    pub fn polys(&self) -> &StructurePolys {
        &self.polys
    }

    pub fn element(self: &Arc<Self>, c: Vec<u32>) -> Result<WittScalar, WittError> {
        if c.len() != self.m || c.iter().any(|&x| x >= self.q()) {
            return Err(WittError::Parameters(format!("components {c:?} do not lie in W_{}(F_{})", self.m, self.q())));
        }
        Ok(WittScalar { ring: self.clone(), c })
    }

    pub fn zero(self: &Arc<Self>) -> WittScalar {
        WittScalar { ring: self.clone(), c: vec![0; self.m] }
    }

    pub fn one(self: &Arc<Self>) -> WittScalar {
        let mut c = vec![0; self.m];
        c[0] = 1;
        WittScalar { ring: self.clone(), c }
    }

    /// All `q^m` elements, in lexicographic component order.
    pub fn elements(self: &Arc<Self>) -> Vec<WittScalar> {
        let q = self.q();
        let total = (q as u64).pow(self.m as u32);
        (0..total)
            .map(|mut i| {
                let c = (0..self.m)
                    .map(|_| {
                        let d = (i % q as u64) as u32;
                        i /= q as u64;
                        d
                    })
                    .collect();
                WittScalar { ring: self.clone(), c }
            })
            .collect()
    }

    fn eval(&self, polys: &[Vec<(Vec<u32>, u32)>], vals: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let pow = |mut b: u32, mut e: u32| {
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = f.mul(acc, b);
                }
                b = f.mul(b, b);
                e >>= 1;
            }
            acc
        };
        polys
            .iter()
            .map(|terms| {
                terms.iter().fold(0, |acc, (e, c)| {
                    let mono = e.iter().zip(vals).fold(f.from_int(*c as i64), |m, (&k, &v)| if k == 0 { m } else { f.mul(m, pow(v, k)) });
                    f.add(acc, mono)
                })
            })
            .collect()
    }
}

/// Element of `W_m(𝔽_q)`, components `(a_0, …, a_{m-1})`.
#[derive(Clone)]
pub struct WittScalar {
    pub ring: Arc<WittRing>,
    pub c: Vec<u32>,
}

impl PartialEq for WittScalar {
    fn eq(&self, o: &Self) -> bool {
        self.same_ring(o) && self.c == o.c
    }
}

impl fmt::Debug for WittScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl WittScalar {
    fn same_ring(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring) || (self.ring.q() == o.ring.q() && self.ring.m == o.ring.m)
    }

    fn check(&self, o: &Self) -> Result<(), WittError> {
        if self.same_ring(o) {
            Ok(())
        } else {
            Err(WittError::Mismatch {
                left: (self.ring.q(), self.ring.m),
                right: (o.ring.q(), o.ring.m),
            })
        }
    }

    fn vals(&self, o: &Self) -> Vec<u32> {
        self.c.iter().chain(&o.c).copied().collect()
    }

    pub fn add(&self, o: &Self) -> Result<Self, WittError> {
        self.check(o)?;
        Ok(WittScalar { ring: self.ring.clone(), c: self.ring.eval(&self.ring.polys.add, &self.vals(o)) })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, WittError> {
        self.check(o)?;
        Ok(WittScalar { ring: self.ring.clone(), c: self.ring.eval(&self.ring.polys.mul, &self.vals(o)) })
    }

    pub fn neg(&self) -> Self {
        let pad: Vec<u32> = self.c.iter().copied().chain(std::iter::repeat(0).take(self.ring.m)).collect();
        WittScalar { ring: self.ring.clone(), c: self.ring.eval(&self.ring.polys.neg, &pad) }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, WittError> {
        self.add(&o.neg())
    }

    /// `n · 1`.
    pub fn from_int(ring: &Arc<WittRing>, n: i64) -> Self {
        let one = ring.one();
        let mut acc = ring.zero();
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one).expect("same ring");
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for WittScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Components of a serialized scalar `(a0,a1,…)`.
pub struct WittComponents(pub Vec<u32>);

impl FromStr for WittComponents {
    type Err = WittError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| WittError::Parse(format!("{s:?}: expected (a0,a1,...)")))?;
        inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| WittError::Parse(format!("{s:?}: bad component {t:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(WittComponents)
    }
}

impl WittRing {
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<WittScalar, WittError> {
        let WittComponents(c) = s.parse()?;
        self.element(c)
    }
}
