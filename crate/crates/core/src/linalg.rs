//! Small dense linear algebra over exact fields and over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Field operations needed by the elimination routines. Elements carry
/// their own context, so zero and one are produced from a witness.
pub trait Field:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn is_zero_elt(&self) -> bool;
    fn inv(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Field for Q {
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
}

pub type Mat<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize, w: &F) -> Mat<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { w.one_like() } else { w.zero_like() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut r = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = b[0][j].zero_like();
            for (t, x) in row.iter().enumerate() {
                if !x.is_zero_elt() && !b[t][j].is_zero_elt() {
                    acc = acc + x.clone() * b[t][j].clone();
                }
            }
            r.push(acc);
        }
        out.push(r);
    }
    out
}

pub fn mat_vec<F: Field>(a: &Mat<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            let mut acc = v[0].zero_like();
            for (x, y) in row.iter().zip(v) {
                acc = acc + x.clone() * y.clone();
            }
            acc
        })
        .collect()
}

pub fn transpose<F: Clone>(a: &Mat<F>) -> Mat<F> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(a: &mut Mat<F>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero_elt()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        for j in c..cols {
            a[r][j] = a[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero_elt() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(a: &Mat<F>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : a x = 0}`.
pub fn kernel<F: Field>(a: &Mat<F>, cols: usize, w: &F) -> Vec<Vec<F>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![w.zero_like(); cols];
            v[f] = w.one_like();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `a x = b`, if consistent.
pub fn solve<F: Field>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut aug: Mat<F> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let w = &b[0];
    let mut x = vec![w.zero_like(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(a: &Mat<F>) -> Option<Mat<F>> {
    let n = a.len();
    if n == 0 {
        return Some(vec![]);
    }
    let w = &a[0][0];
    let mut aug: Mat<F> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            for j in 0..n {
                r.push(if i == j { w.one_like() } else { w.zero_like() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coordinates of `v` in the basis given by the rows of `basis`.
pub fn coords_in<F: Field>(basis: &Mat<F>, v: &[F]) -> Option<Vec<F>> {
    solve(&transpose(basis), v)
}

pub fn trace<F: Field>(a: &Mat<F>) -> F {
    let mut acc = a[0][0].zero_like();
    for (i, r) in a.iter().enumerate() {
        acc = acc + r[i].clone();
    }
    acc
}

pub fn to_q(a: &[Vec<i64>]) -> Mat<Q> {
    a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Row Hermite normal form of an integer matrix; zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    if a.is_empty() {
        return a;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by(|&&i, &&j| a[i][c].abs().cmp(&a[j][c].abs())).unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if !a[i][c].is_zero() {
                    let f = a[i][c].div_floor(&a[r][c]);
                    for j in c..cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for j in c..cols {
                a[r][j] = -a[r][j].clone();
            }
        }
        for i in 0..r {
            let f = a[i][c].div_floor(&a[r][c]);
            if !f.is_zero() {
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Row HNF of rational generators, returned as rational rows; the common
/// denominator is cleared and restored.
pub fn hnf_q(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if rows.is_empty() {
        return vec![];
    }
    let mut den = BigInt::one();
    for r in rows {
        for x in r {
            den = den.lcm(x.denom());
        }
    }
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect())
        .collect();
    hnf(&ints)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Q::new(x, den.clone())).collect())
        .collect()
}

pub fn int_mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (t, bt) in b.iter().enumerate() {
            let x = a[i][t];
            if x != 0 {
                for j in 0..m {
                    out[i][j] += x * bt[j];
                }
            }
        }
    }
    out
}

pub fn int_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}
