//! Finite groups given by multiplication tables, character tables of
//! centralizers (Dixon's modular method, lifted to exact cyclotomic values),
//! the set `M(Γ)` and the nonabelian Fourier matrix.

use crate::cyclotomic::Cyclo;
use crate::linalg::{Mat, Q};
use num_integer::Integer;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("vector of length {got} for an index set of size {expected}")]
    IndexMismatch { expected: usize, got: usize },
    #[error("character table computation failed: {0}")]
    Characters(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("input violates {0}")]
    Symmetry(String),
}

const GROUPS: [(&str, &str); 5] = [
    ("1", include_str!("../data/groups/trivial.txt")),
    ("Z2", include_str!("../data/groups/z2.txt")),
    ("Z3", include_str!("../data/groups/z3.txt")),
    ("Z2xZ2", include_str!("../data/groups/klein.txt")),
    ("S3", include_str!("../data/groups/s3.txt")),
];

pub fn curated_groups() -> Vec<&'static str> {
    GROUPS.iter().map(|g| g.0).collect()
}

pub fn curated_group(name: &str) -> Result<FiniteGroupTable, FourierError> {
    let text = GROUPS
        .iter()
        .find(|g| g.0 == name)
        .ok_or_else(|| FourierError::UnknownLabel(name.into()))?
        .1;
    FiniteGroupTable::parse(text)
}

/// Characters of a subgroup, on its own conjugacy classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    /// Classes of the subgroup, as ambient element indices.
    pub classes: Vec<Vec<usize>>,
    class_of: HashMap<usize, usize>,
    /// `values[χ][class]`.
    pub values: Vec<Vec<Cyclo>>,
    pub names: Vec<String>,
}

impl CharacterTable {
    pub fn value(&self, chi: usize, g: usize) -> &Cyclo {
        &self.values[chi][self.class_of[&g]]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self, chi: usize) -> Cyclo {
        self.values[chi][0].clone()
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    pub name: String,
    pub names: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    /// Conjugacy classes, ordered by smallest element; the identity class first.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Centralizer of the first element of each class.
    pub centralizers: Vec<Vec<usize>>,
    pub centralizer_chars: Vec<CharacterTable>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn parse(text: &str) -> Result<Self, FourierError> {
        let mut name = String::new();
        let mut names: Vec<String> = Vec::new();
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks[0] {
                "group" => name = toks.get(1).unwrap_or(&"").to_string(),
                "elements" => names = toks[1..].iter().map(|s| s.to_string()).collect(),
                _ => {
                    let idx: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
                    let row = toks
                        .iter()
                        .map(|t| idx.get(t).copied().ok_or(FourierError::Parse { line, msg: format!("unknown element `{t}`") }))
                        .collect::<Result<Vec<_>, _>>()?;
                    if row.len() != names.len() {
                        return Err(FourierError::Parse { line, msg: "row of the wrong length".into() });
                    }
                    rows.push(row);
                }
            }
        }
        if rows.len() != names.len() || names.is_empty() {
            return Err(FourierError::Parse { line: 0, msg: "table is not square".into() });
        }
        Self::from_table(name, names, rows)
    }

    pub fn from_table(name: String, names: Vec<String>, mult: Vec<Vec<usize>>) -> Result<Self, FourierError> {
        let n = mult.len();
        let bad = |m: &str| Err(FourierError::NotAGroup(m.into()));
        if (0..n).any(|a| mult[0][a] != a || mult[a][0] != a) {
            return bad("first element is not the identity");
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mult[a][b] == 0) {
                Some(b) => inv[a] = b,
                None => return bad("missing inverse"),
            }
        }
        let conj = |g: usize, x: usize| mult[mult[g][x]][inv[g]];
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] == usize::MAX {
                let mut c: Vec<usize> = (0..n).map(|g| conj(g, x)).collect();
                c.sort_unstable();
                c.dedup();
                for &y in &c {
                    class_of[y] = classes.len();
                }
                classes.push(c);
            }
        }
        let centralizers: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| (0..n).filter(|&g| mult[g][c[0]] == mult[c[0]][g]).collect())
            .collect();
        let centralizer_chars = centralizers
            .iter()
            .map(|z| character_table(&mult, &inv, z))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroupTable { name, names, mult, inv, classes, class_of, centralizers, centralizer_chars })
    }

    /// Full character table of the group.
    pub fn characters(&self) -> Result<CharacterTable, FourierError> {
        character_table(&self.mult, &self.inv, &(0..self.order()).collect::<Vec<_>>())
    }
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: i64, p: i64) -> i64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Row echelon basis of the kernel of `a` (rows × cols) over `𝔽_p`.
fn kernel_mod(a: &[Vec<i64>], cols: usize, p: i64) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let iv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * iv % p;
        }
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                for j in 0..cols {
                    m[k][j] = (m[k][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (-m[row][f]).rem_euclid(p);
            }
            v
        })
        .collect()
}

/// Dixon's method on the subgroup `elems` of the ambient table.
fn character_table(mult: &[Vec<usize>], inv: &[usize], elems: &[usize]) -> Result<CharacterTable, FourierError> {
    let h = elems.len();
    let conj = |g: usize, x: usize| mult[mult[g][x]][inv[g]];
    let mut class_of: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &x in elems {
        if !class_of.contains_key(&x) {
            let mut c: Vec<usize> = elems.iter().map(|&g| conj(g, x)).collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                class_of.insert(y, classes.len());
            }
            classes.push(c);
        }
    }
    let r = classes.len();
    let order_of = |x: usize| {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = mult[y][x];
            k += 1;
        }
        k as i64
    };
    let e = elems.iter().fold(1i64, |acc, &x| acc.lcm(&order_of(x)));
    let mut p = e + 1;
    while !(is_prime(p) && p > 2 * h as i64 + 1) {
        p += e;
    }
    // c[i][j][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}
    let mut consts = vec![vec![vec![0i64; r]; r]; r];
    for (i, ci) in classes.iter().enumerate() {
        for k in 0..r {
            let gk = classes[k][0];
            for &x in ci {
                consts[i][class_of[&mult[inv[x]][gk]]][k] += 1;
            }
        }
    }
    // simultaneous eigenspaces of A_i, (A_i)_{jk} = c_{ijk}
    let mut spaces: Vec<Vec<Vec<i64>>> = vec![(0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect()];
    for a in &consts {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // action on the span: A b_s = Σ_t R[s][t] b_t; solve via the kernel of a stacked system
            let images: Vec<Vec<i64>> = basis
                .iter()
                .map(|b| (0..r).map(|j| (0..r).map(|k| a[j][k] * b[k]).sum::<i64>().rem_euclid(p)).collect())
                .collect();
            let mut split = 0;
            for lam in 0..p {
                // vectors v = Σ c_s b_s with (A − λ) v = 0
                let sys: Vec<Vec<i64>> = (0..r)
                    .map(|j| (0..basis.len()).map(|s| (images[s][j] - lam * basis[s][j]).rem_euclid(p)).collect())
                    .collect();
                let ker = kernel_mod(&sys, basis.len(), p);
                if ker.is_empty() {
                    continue;
                }
                split += ker.len();
                let sub: Vec<Vec<i64>> = ker
                    .iter()
                    .map(|c| (0..r).map(|j| (0..basis.len()).map(|s| c[s] * basis[s][j]).sum::<i64>().rem_euclid(p)).collect())
                    .collect();
                next.push(sub);
            }
            if split != basis.len() {
                return Err(FourierError::Characters("class algebra is not split over the chosen prime".into()));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(FourierError::Characters(format!("{} joint eigenspaces for {r} classes", spaces.len())));
    }
    let inv_class: Vec<usize> = (0..r).map(|k| class_of[&inv[classes[k][0]]]).collect();
    let mut z = 2;
    let zeta = loop {
        let cand = pow_mod(z, (p - 1) / e, p);
        if (1..e).all(|d| e % d != 0 || pow_mod(cand, d, p) != 1) {
            break cand;
        }
        z += 1;
    };
    let mut values = Vec::new();
    for sp in &spaces {
        let v = &sp[0];
        let n0 = inv_mod(v[0], p);
        let omega: Vec<i64> = v.iter().map(|x| x * n0 % p).collect();
        let s = (0..r).fold(0i64, |acc, k| {
            (acc + omega[k] * omega[inv_class[k]] % p * inv_mod(classes[k].len() as i64, p)) % p
        });
        let d2 = (h as i64) % p * inv_mod(s, p) % p;
        let d = (1..=h as i64)
            .find(|d| d * d <= h as i64 && (d * d) % p == d2)
            .ok_or_else(|| FourierError::Characters("degree not recovered".into()))?;
        let chi_p: Vec<i64> = (0..r).map(|k| omega[k] * d % p * inv_mod(classes[k].len() as i64, p) % p).collect();
        let mut row = Vec::new();
        for k in 0..r {
            let g = classes[k][0];
            let mut powers = vec![0usize; e as usize];
            for j in 1..e as usize {
                powers[j] = mult[powers[j - 1]][g];
            }
            let mut val = Cyclo::zero();
            let ie = inv_mod(e, p);
            for l in 0..e {
                let mut acc = 0i64;
                for (j, &gj) in powers.iter().enumerate() {
                    acc = (acc + chi_p[class_of[&gj]] * pow_mod(zeta, (-(j as i64) * l).rem_euclid(e), p)) % p;
                }
                let m = acc * ie % p;
                if m > d {
                    return Err(FourierError::Characters("eigenvalue multiplicity out of range".into()));
                }
                if m > 0 {
                    val = val + Cyclo::zeta(e as u64, l).scale(&Q::from_integer(m.into()));
                }
            }
            row.push(val);
        }
        values.push(row);
    }
    // trivial first, then by degree, then by rendering
    values.sort_by_key(|row| {
        let trivial = row.iter().all(|x| *x == Cyclo::one());
        let deg = row[0].to_rational().unwrap();
        (!trivial, deg, row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    });
    // orthonormality
    for a in 0..r {
        for b in 0..r {
            let mut acc = Cyclo::zero();
            for k in 0..r {
                acc = acc + values[a][k].clone() * values[b][k].conj() * Cyclo::int(classes[k].len() as i64);
            }
            let want = if a == b { Cyclo::int(h as i64) } else { Cyclo::zero() };
            if acc != want {
                return Err(FourierError::Characters("orthogonality fails".into()));
            }
        }
    }
    let names = (0..r).map(|i| if i == 0 { "1".to_string() } else { format!("chi{i}") }).collect();
    Ok(CharacterTable { classes, class_of, values, names })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MPair {
    /// Class index in the group table.
    pub x: usize,
    /// Character index in the centralizer table of `x`.
    pub sigma: usize,
}

impl MPair {
    pub fn label(&self, g: &FiniteGroupTable) -> String {
        format!("({},{})", g.names[g.classes[self.x][0]], g.centralizer_chars[self.x].names[self.sigma])
    }
}

impl fmt::Display for MPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.sigma)
    }
}

/// `M(Γ)`, ordered by character index, then class.
pub fn m_set(g: &FiniteGroupTable) -> Vec<MPair> {
    let mut out: Vec<MPair> = (0..g.classes.len())
        .flat_map(|x| (0..g.centralizer_chars[x].len()).map(move |sigma| MPair { x, sigma }))
        .collect();
    out.sort_by_key(|p| (p.sigma, p.x));
    out
}

/// Pairs whose character is trivial on the given central elements.
pub fn m_set_one(g: &FiniteGroupTable, center: &[usize]) -> Vec<MPair> {
    m_set(g)
        .into_iter()
        .filter(|p| {
            let t = &g.centralizer_chars[p.x];
            let deg = t.degree(p.sigma);
            center.iter().all(|&c| *t.value(p.sigma, c) == deg)
        })
        .collect()
}

/// `{(x,σ),(y,τ)} = Σ σ(gyg⁻¹)·conj τ(g⁻¹xg) / (|Z(x)||Z(y)|)` over `g` with
/// `gyg⁻¹` commuting with `x`.
pub fn pairing(g: &FiniteGroupTable, a: &MPair, b: &MPair) -> Cyclo {
    let m = &g.mult;
    let x = g.classes[a.x][0];
    let y = g.classes[b.x][0];
    let mut acc = Cyclo::zero();
    for h in 0..g.order() {
        let hi = g.inv[h];
        let yc = m[m[h][y]][hi];
        if m[x][yc] != m[yc][x] {
            continue;
        }
        let xc = m[m[hi][x]][h];
        let s = g.centralizer_chars[a.x].value(a.sigma, yc).clone();
        let t = g.centralizer_chars[b.x].value(b.sigma, xc).conj();
        acc = acc + s * t;
    }
    let den = (g.centralizers[a.x].len() * g.centralizers[b.x].len()) as i64;
    acc.scale(&Q::new(1.into(), den.into()))
}

pub fn pairing_matrix(g: &FiniteGroupTable) -> Mat<Cyclo> {
    let idx = m_set(g);
    idx.iter().map(|a| idx.iter().map(|b| pairing(g, a, b)).collect()).collect()
}

/// `τ = S·φ` on vectors indexed by `M(Γ)`.
pub fn apply_transform(g: &FiniteGroupTable, phi: &[Cyclo]) -> Result<Vec<Cyclo>, FourierError> {
    let s = pairing_matrix(g);
    if phi.len() != s.len() {
        return Err(FourierError::IndexMismatch { expected: s.len(), got: phi.len() });
    }
    Ok(s.iter().map(|row| row.iter().zip(phi).fold(Cyclo::zero(), |acc, (a, b)| acc + a.clone() * b.clone())).collect())
}

/// Labels of the B₂ subregular case, `Γ = ℂ*·⟨r⟩`.
pub const B2_LABELS: [&str; 6] = ["(1,1)", "(r,1)", "(1,e)", "(r,e)", "(-1,1)", "(-1,e)"];

/// The B₂ transform on the six labels: the component data is that of `ℤ/2`
/// with `−1` identified with `1`.
pub fn b2_transform(phi: &BTreeMap<String, Cyclo>) -> Result<BTreeMap<String, Cyclo>, FourierError> {
    for l in B2_LABELS {
        if !phi.contains_key(l) {
            return Err(FourierError::UnknownLabel(l.into()));
        }
    }
    for s in ["1", "e"] {
        if phi[&format!("(-1,{s})")] != phi[&format!("(1,{s})")] {
            return Err(FourierError::Symmetry(format!("φ(-1,{s}) = φ(1,{s})")));
        }
    }
    let z2 = curated_group("Z2")?;
    // m_set order for ℤ/2: (1,1), (r,1), (1,e), (r,e)
    let v: Vec<Cyclo> = B2_LABELS[..4].iter().map(|l| phi[*l].clone()).collect();
    let t = apply_transform(&z2, &v)?;
    let mut out = BTreeMap::new();
    for (l, x) in B2_LABELS[..4].iter().zip(t) {
        out.insert(l.to_string(), x);
    }
    for s in ["1", "e"] {
        let x = out[&format!("(1,{s})")].clone();
        out.insert(format!("(-1,{s})"), x);
    }
    Ok(out)
}
