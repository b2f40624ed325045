//! Exact arithmetic in cyclotomic fields `ℚ(ζ_m)`, elements stored as
//! residues modulo the m-th cyclotomic polynomial.

use crate::linalg::{fmt_q, q, solve, Field, Q};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // monic division over ℤ, coefficients lowest degree first
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let mut out = vec![0i64; r.len() - dn];
    for i in (0..out.len()).rev() {
        let c = r[i + dn];
        out[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    out
}

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

pub fn euler_phi(m: u64) -> usize {
    cyclotomic_poly(m).len() - 1
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    m: u64,
    c: Vec<Q>,
}

fn reduce(m: u64, mut v: Vec<Q>) -> Vec<Q> {
    let phi = cyclotomic_poly(m);
    let d = phi.len() - 1;
    while v.len() > d {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = v.len() - d;
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                v[k + j] -= &top * q(pj);
            }
        }
    }
    v.resize(d, Q::zero());
    v
}

impl Cyclo {
    pub fn from_q(x: Q) -> Self {
        Cyclo { m: 1, c: vec![x] }
    }

    pub fn int(n: i64) -> Self {
        Self::from_q(q(n))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `ζ_m^k`.
    pub fn zeta(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![Q::zero(); e + 1];
        v[e] = Q::one();
        Cyclo { m, c: reduce(m, v) }
    }

    /// Root of unity `exp(2πi·x)` for rational `x`.
    pub fn exp_2pi_i(x: &Q) -> Self {
        let den: u64 = x.denom().try_into().expect("small denominator");
        let num: i64 = (x.numer() % x.denom()).try_into().expect("small numerator");
        Self::zeta(den, num)
    }

    pub fn from_coeffs(m: u64, c: Vec<Q>) -> Self {
        Cyclo { m, c: reduce(m, c) }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    /// The same element in `ℚ(ζ_l)` for a multiple `l` of the conductor.
    pub fn lift(&self, l: u64) -> Self {
        assert!(l % self.m == 0);
        if l == self.m {
            return self.clone();
        }
        let step = (l / self.m) as usize;
        let mut v = vec![Q::zero(); (self.c.len().max(1) - 1) * step + 1];
        for (i, x) in self.c.iter().enumerate() {
            v[i * step] = x.clone();
        }
        Cyclo { m: l, c: reduce(l, v) }
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let l = self.m.lcm(&other.m);
        (self.lift(l), other.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// The rational value, if the element lies in `ℚ`.
    pub fn to_rational(&self) -> Option<Q> {
        let r = self.c.first().cloned().unwrap_or_else(Q::zero);
        (self.clone() - Cyclo::from_q(r.clone())).is_zero().then_some(r)
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let m = self.m as usize;
        let mut v = vec![Q::zero(); m];
        for (i, x) in self.c.iter().enumerate() {
            v[(m - i) % m] += x;
        }
        Cyclo { m: self.m, c: reduce(self.m, v) }
    }

    pub fn scale(&self, x: &Q) -> Self {
        Cyclo { m: self.m, c: self.c.iter().map(|y| y * x).collect() }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Cyclo::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Multiplicative inverse by solving the multiplication-by-self system.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.c.len();
        let cols: Vec<Vec<Q>> = (0..d)
            .map(|j| (self.clone() * Cyclo::zeta(self.m, j as i64)).lift(self.m).c)
            .collect();
        let mat: Vec<Vec<Q>> = (0..d).map(|r| (0..d).map(|j| cols[j][r].clone()).collect()).collect();
        let mut rhs = vec![Q::zero(); d];
        rhs[0] = Q::one();
        let x = solve(&mat, &rhs)?;
        Some(Cyclo { m: self.m, c: x })
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.unify(other);
        a.c == b.c
    }
}

impl Eq for Cyclo {}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        let (a, b) = self.unify(&o);
        Cyclo { m: a.m, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        self + (-o)
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { m: self.m, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        let (a, b) = self.unify(&o);
        if a.m == 1 {
            return Cyclo { m: 1, c: vec![&a.c[0] * &b.c[0]] };
        }
        let mut v = vec![Q::zero(); a.c.len() + b.c.len()];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Cyclo { m: a.m, c: reduce(a.m, v) }
    }
}

impl Field for Cyclo {
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn inv(&self) -> Self {
        self.inverse().expect("division by zero")
    }
    fn zero_like(&self) -> Self {
        Cyclo::zero()
    }
    fn one_like(&self) -> Self {
        Cyclo::one()
    }
}

impl From<Q> for Cyclo {
    fn from(x: Q) -> Self {
        Cyclo::from_q(x)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.m),
                _ => format!("z{}^{}", self.m, i),
            };
            let mag = x.abs();
            let body = if mono.is_empty() {
                fmt_q(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_q(&mag), mono)
            };
            terms.push((x.is_negative(), body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (k, (neg, body)) in terms.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&body);
        }
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse cyclotomic value `{0}`")]
pub struct ParseCycloError(pub String);

fn parse_term(t: &str) -> Option<Cyclo> {
    let (coef, mono) = match t.find('z') {
        None => (t, None),
        Some(i) => {
            let c = t[..i].trim_end_matches('*');
            (c, Some(&t[i + 1..]))
        }
    };
    let c: Q = if coef.is_empty() { Q::one() } else { coef.parse().ok()? };
    let Some(mono) = mono else {
        return Some(Cyclo::from_q(c));
    };
    let (m, k) = match mono.split_once('^') {
        Some((m, k)) => (m.parse::<u64>().ok()?, k.parse::<i64>().ok()?),
        None => (mono.parse::<u64>().ok()?, 1),
    };
    (m > 0).then(|| Cyclo::zeta(m, k).scale(&c))
}

/// Parses the rendering produced by `Display`, e.g. `1/2 - z3 + 2*z3^2`.
impl std::str::FromStr for Cyclo {
    type Err = ParseCycloError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCycloError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut acc = Cyclo::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                let piece = &compact[start..i];
                let (neg, body) = match piece.as_bytes()[0] {
                    b'+' => (false, &piece[1..]),
                    b'-' => (true, &piece[1..]),
                    _ => (false, piece),
                };
                let v = parse_term(body).ok_or_else(err)?;
                acc = if neg { acc - v } else { acc + v };
                start = i;
            }
        }
        Ok(acc)
    }
}
