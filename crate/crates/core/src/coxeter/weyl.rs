use super::cartan::CartanDatum;
use super::omega::DiagramAutomorphism;
use super::CoxeterError;
use crate::linalg::{int_identity, int_mat_mul};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// An element of the affine Weyl group, stored as its integer matrix on
/// `V` (columns are the images of `b_j`) together with the contragredient
/// matrix on `V†`.
#[derive(Clone, Debug)]
pub struct WeylElement {
    datum: Arc<CartanDatum>,
    mat: Vec<Vec<i64>>,
    dual: Vec<Vec<i64>>,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

fn is_negative(col: impl Iterator<Item = i64>) -> bool {
    let mut any = false;
    for x in col {
        if x > 0 {
            return false;
        }
        any |= x < 0;
    }
    any
}

impl WeylElement {
    pub fn identity(datum: &Arc<CartanDatum>) -> Self {
        let n = datum.size();
        WeylElement { datum: datum.clone(), mat: int_identity(n), dual: int_identity(n), length: 0 }
    }

    pub fn generator(datum: &Arc<CartanDatum>, i: usize) -> Self {
        let n = datum.size();
        let mut mat = int_identity(n);
        for j in 0..n {
            mat[i][j] -= datum.pairing()[j][i];
        }
        let mut dual = int_identity(n);
        let h = datum.coroot(i);
        for r in 0..n {
            dual[r][i] -= h[r];
        }
        WeylElement { datum: datum.clone(), mat, dual, length: 1 }
    }

    pub fn from_word(datum: &Arc<CartanDatum>, word: &[usize]) -> Self {
        let mut w = Self::identity(datum);
        for &i in word {
            w = w.mul_generator(i);
        }
        w
    }

    fn raw(datum: &Arc<CartanDatum>, mat: Vec<Vec<i64>>, dual: Vec<Vec<i64>>) -> Self {
        let mut w = WeylElement { datum: datum.clone(), mat, dual, length: 0 };
        w.length = w.compute_length();
        w
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mat
    }

    pub fn dual_matrix(&self) -> &[Vec<i64>] {
        &self.dual
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    fn same_datum(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.datum, &other.datum) || *self.datum == *other.datum
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, CoxeterError> {
        if !self.same_datum(other) {
            return Err(CoxeterError::DatumMismatch);
        }
        Ok(Self::raw(&self.datum, int_mat_mul(&self.mat, &other.mat), int_mat_mul(&self.dual, &other.dual)))
    }

    /// Product with the same datum assumed.
    pub fn mul(&self, other: &Self) -> Self {
        self.multiply(other).expect("datum mismatch")
    }

    pub fn inverse(&self) -> Self {
        let t = |m: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..m.len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
        };
        WeylElement { datum: self.datum.clone(), mat: t(&self.dual), dual: t(&self.mat), length: self.length }
    }

    /// `w·s_i`, computed by column operations.
    pub fn mul_generator(&self, i: usize) -> Self {
        let mut w = self.mul_generator_unsized(i);
        w.length = if self.has_right_descent(i) { self.length - 1 } else { self.length + 1 };
        w
    }

    fn mul_generator_unsized(&self, i: usize) -> Self {
        let n = self.mat.len();
        let p = self.datum.pairing();
        let mut mat = self.mat.clone();
        for j in 0..n {
            let c = p[j][i];
            if c != 0 && j != i {
                for r in 0..n {
                    mat[r][j] -= c * self.mat[r][i];
                }
            }
        }
        for r in 0..n {
            mat[r][i] = -self.mat[r][i];
        }
        let h = self.datum.coroot(i);
        let mut dual = self.dual.clone();
        for r in 0..n {
            let mut acc = 0;
            for (t, ht) in h.iter().enumerate() {
                acc += self.dual[r][t] * ht;
            }
            dual[r][i] -= acc;
        }
        WeylElement { datum: self.datum.clone(), mat, dual, length: 0 }
    }

    /// `ℓ(w s_i) < ℓ(w)`, i.e. `w(b_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        is_negative(self.mat.iter().map(|r| r[i]))
    }

    /// `ℓ(s_i w) < ℓ(w)`, i.e. `w⁻¹(b_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        is_negative(self.dual[i].iter().copied())
    }

    fn compute_length(&self) -> usize {
        let n = self.mat.len();
        let mut w = self.clone();
        let mut len = 0;
        loop {
            match (0..n).find(|&i| w.has_right_descent(i)) {
                Some(i) => {
                    w = w.mul_generator_unsized(i);
                    len += 1;
                }
                None => return len,
            }
        }
    }

    /// ShortLex-least reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.mat.len();
        let mut w = self.inverse();
        let mut word = Vec::with_capacity(self.length);
        while !w.is_identity() {
            let i = (0..n).find(|&i| w.has_right_descent(i)).expect("nontrivial element has a descent");
            word.push(i);
            w = w.mul_generator(i);
        }
        word
    }

    /// Image of a vector of `V` given in the `b` basis.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.mat.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Image of a vector of `V†` given in the `b'` basis.
    pub fn apply_dual(&self, v: &[i64]) -> Vec<i64> {
        self.dual.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// True when `w` acts trivially on `V` modulo the null root, so `w` is a
    /// pure translation.
    pub fn is_translation(&self) -> bool {
        let marks = self.datum.marks();
        let n = self.mat.len();
        (0..n).all(|j| {
            let mut d: Vec<i64> = self.mat.iter().map(|r| r[j]).collect();
            d[j] -= 1;
            let k = d[0];
            d.iter().zip(marks).all(|(x, m)| *x == k * m)
        })
    }

    /// `ξ⁻¹ w ξ`, whose matrix is `P⁻¹ M P`.
    pub fn conjugate_by(&self, xi: &DiagramAutomorphism) -> Self {
        let n = self.mat.len();
        let p = xi.perm();
        let mut mat = vec![vec![0; n]; n];
        let mut dual = vec![vec![0; n]; n];
        for r in 0..n {
            for c in 0..n {
                mat[r][c] = self.mat[p[r]][p[c]];
                dual[r][c] = self.dual[p[r]][p[c]];
            }
        }
        WeylElement { datum: self.datum.clone(), mat, dual, length: self.length }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(&self.datum);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.reduced_word();
        if w.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = w.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Parses a word such as `s0 s1 s0`; `1` or the empty string is the identity.
pub fn parse_word(text: &str) -> Result<Vec<usize>, CoxeterError> {
    let mut out = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == ',' || c == '*') {
        if tok.is_empty() || tok == "1" {
            continue;
        }
        let idx = tok
            .strip_prefix('s')
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| CoxeterError::Parse(format!("bad letter `{tok}`")))?;
        out.push(idx);
    }
    Ok(out)
}

/// `ξ·w` with `ξ` a diagram automorphism and `w` in the Coxeter part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedWeylElement {
    pub omega: DiagramAutomorphism,
    pub weyl: WeylElement,
}

impl ExtendedWeylElement {
    pub fn new(omega: DiagramAutomorphism, weyl: WeylElement) -> Self {
        ExtendedWeylElement { omega, weyl }
    }

    pub fn identity(datum: &Arc<CartanDatum>) -> Self {
        Self::new(DiagramAutomorphism::identity(datum.size()), WeylElement::identity(datum))
    }

    /// `(ξ₁w₁)(ξ₂w₂) = ξ₁ξ₂·(ξ₂⁻¹w₁ξ₂)w₂`.
    pub fn multiply(&self, other: &Self) -> Result<Self, CoxeterError> {
        let w1 = self.weyl.conjugate_by(&other.omega);
        Ok(Self::new(self.omega.compose(&other.omega), w1.multiply(&other.weyl)?))
    }

    pub fn inverse(&self) -> Self {
        let oi = self.omega.inverse();
        Self::new(oi.clone(), self.weyl.inverse().conjugate_by(&oi))
    }

    pub fn length(&self) -> usize {
        self.weyl.length()
    }

    /// Matrix of the action on `V`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        int_mat_mul(&self.omega.matrix(), self.weyl.matrix())
    }
}

impl fmt::Display for ExtendedWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.omega.is_identity() {
            write!(f, "{}", self.weyl)
        } else if self.weyl.is_identity() {
            write!(f, "{}", self.omega)
        } else {
            write!(f, "{} {}", self.omega, self.weyl)
        }
    }
}
