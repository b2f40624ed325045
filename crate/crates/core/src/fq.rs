//! Finite fields 𝔽_q for small q, by table lookup.

use std::fmt;

/// Largest field size for which multiplication tables are built.
pub const MAX_Q: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} exceeds the supported bound {MAX_Q}")]
    TooLarge(u64),
}

/// Splits `q` as `p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// The field with `q = p^k` elements. Element `x` encodes the polynomial
/// whose base-`p` digits are its coefficients, modulo a fixed irreducible
/// polynomial of degree `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Fq {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q)
    }
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut x = x;
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Fq {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_Q as u64 {
            return Err(FieldError::TooLarge(q));
        }
        let (p, q) = (p as u32, q as u32);
        let add: Vec<u32> = (0..q * q)
            .map(|i| {
                let (a, b) = (digits(i / q, p, k), digits(i % q, p, k));
                undigits(&a.iter().zip(&b).map(|(x, y)| (x + y) % p).collect::<Vec<_>>(), p)
            })
            .collect();
        let neg: Vec<u32> =
            (0..q).map(|a| undigits(&digits(a, p, k).iter().map(|x| (p - x) % p).collect::<Vec<_>>(), p)).collect();
        // monic modulus x^k + tail, first tail giving a field
        for tail in 0..q {
            let f = digits(tail, p, k);
            let mul: Vec<u32> = (0..q * q)
                .map(|i| {
                    let (a, b) = (digits(i / q, p, k), digits(i % q, p, k));
                    let mut prod = vec![0u32; 2 * k as usize];
                    for (x, &ca) in a.iter().enumerate() {
                        for (y, &cb) in b.iter().enumerate() {
                            prod[x + y] = (prod[x + y] + ca * cb) % p;
                        }
                    }
                    for deg in (k as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c != 0 {
                            prod[deg] = 0;
                            for (j, &fj) in f.iter().enumerate() {
                                let at = deg - k as usize + j;
                                prod[at] = (prod[at] + p * p - c * fj % p) % p;
                            }
                        }
                    }
                    undigits(&prod[..k as usize], p)
                })
                .collect();
            let inv: Vec<Option<u32>> =
                (0..q).map(|a| if a == 0 { Some(0) } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1) }).collect();
            if inv.iter().all(Option::is_some) {
                return Ok(Fq { p, k, q, add, mul, inv: inv.into_iter().map(Option::unwrap).collect(), neg });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }
    /// Inverse of a nonzero element; zero maps to zero.
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    /// Image of an integer under `ℤ → 𝔽_p ⊆ 𝔽_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}
