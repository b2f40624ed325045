//! Affine Cartan data in Bourbaki numbering.
//!
//! `pairing[i][j]` is the value of the simple root `α_i` on the coroot `h_j`.
//! Node 0 is the affine node and its mark is 1.

use super::CoxeterError;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl AffineType {
    pub fn rank(&self) -> usize {
        match *self {
            AffineType::A(n) | AffineType::B(n) | AffineType::C(n) | AffineType::D(n) => n,
            AffineType::E6 => 6,
            AffineType::E7 => 7,
            AffineType::E8 => 8,
            AffineType::F4 => 4,
            AffineType::G2 => 2,
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AffineType::A(n) => write!(f, "A{n}"),
            AffineType::B(n) => write!(f, "B{n}"),
            AffineType::C(n) => write!(f, "C{n}"),
            AffineType::D(n) => write!(f, "D{n}"),
            AffineType::E6 => write!(f, "E6"),
            AffineType::E7 => write!(f, "E7"),
            AffineType::E8 => write!(f, "E8"),
            AffineType::F4 => write!(f, "F4"),
            AffineType::G2 => write!(f, "G2"),
        }
    }
}

impl std::str::FromStr for AffineType {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CoxeterError::Parse(format!("unknown affine type `{s}`"));
        let (head, tail) = s.split_at(s.len().min(1));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match (head, n) {
            ("A", n) if n >= 1 => Ok(AffineType::A(n)),
            ("B", n) if n >= 3 => Ok(AffineType::B(n)),
            ("C", n) if n >= 2 => Ok(AffineType::C(n)),
            ("D", n) if n >= 4 => Ok(AffineType::D(n)),
            ("E", 6) => Ok(AffineType::E6),
            ("E", 7) => Ok(AffineType::E7),
            ("E", 8) => Ok(AffineType::E8),
            ("F", 4) => Ok(AffineType::F4),
            ("G", 2) => Ok(AffineType::G2),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    label: AffineType,
    pairing: Vec<Vec<i64>>,
    marks: Vec<i64>,
}

/// Edge `(long, short, m)`: `pairing[long][short] = -m`, `pairing[short][long] = -1`.
type Edge = (usize, usize, i64);

fn simple(a: usize, b: usize) -> Edge {
    (a, b, 1)
}

fn from_edges(size: usize, edges: &[Edge]) -> Vec<Vec<i64>> {
    let mut p = vec![vec![0i64; size]; size];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(l, s, m) in edges {
        p[l][s] = -m;
        p[s][l] = -1;
    }
    p
}

fn chain(from: usize, to: usize) -> Vec<Edge> {
    (from..to).map(|i| simple(i, i + 1)).collect()
}

impl CartanDatum {
    pub fn new(label: AffineType) -> Result<Self, CoxeterError> {
        let n = label.rank();
        let size = n + 1;
        let (pairing, marks) = match label {
            AffineType::A(1) => (vec![vec![2, -2], vec![-2, 2]], vec![1, 1]),
            AffineType::A(n) if n >= 2 => {
                let mut e = chain(0, n);
                e.push(simple(n, 0));
                (from_edges(size, &e), vec![1; size])
            }
            AffineType::B(n) if n >= 3 => {
                let mut e = vec![simple(0, 2)];
                e.extend(chain(1, n - 1));
                e.push((n - 1, n, 2));
                let mut m = vec![2; size];
                m[0] = 1;
                m[1] = 1;
                (from_edges(size, &e), m)
            }
            AffineType::C(n) if n >= 2 => {
                let mut e = vec![(0, 1, 2)];
                e.extend(chain(1, n - 1));
                e.push((n, n - 1, 2));
                let mut m = vec![2; size];
                m[0] = 1;
                m[n] = 1;
                (from_edges(size, &e), m)
            }
            AffineType::D(n) if n >= 4 => {
                let mut e = vec![simple(0, 2)];
                e.extend(chain(1, n - 1));
                e.push(simple(n - 2, n));
                let mut m = vec![2; size];
                for i in [0, 1, n - 1, n] {
                    m[i] = 1;
                }
                (from_edges(size, &e), m)
            }
            AffineType::E6 => {
                let e = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)];
                let e: Vec<Edge> = e.iter().map(|&(a, b)| simple(a, b)).collect();
                (from_edges(size, &e), vec![1, 1, 2, 2, 3, 2, 1])
            }
            AffineType::E7 => {
                let e = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4), (0, 1)];
                let e: Vec<Edge> = e.iter().map(|&(a, b)| simple(a, b)).collect();
                (from_edges(size, &e), vec![1, 2, 2, 3, 4, 3, 2, 1])
            }
            AffineType::E8 => {
                let e = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)];
                let e: Vec<Edge> = e.iter().map(|&(a, b)| simple(a, b)).collect();
                (from_edges(size, &e), vec![1, 2, 3, 4, 6, 5, 4, 3, 2])
            }
            AffineType::F4 => {
                let e = [simple(0, 1), simple(1, 2), (2, 3, 2), simple(3, 4)];
                (from_edges(size, &e), vec![1, 2, 3, 4, 2])
            }
            AffineType::G2 => {
                let e = [simple(0, 2), (2, 1, 3)];
                (from_edges(size, &e), vec![1, 3, 2])
            }
            _ => return Err(CoxeterError::Parse(format!("unsupported rank for {label}"))),
        };
        let d = CartanDatum { label, pairing, marks };
        d.validate()?;
        Ok(d)
    }

    pub fn from_parts(label: AffineType, pairing: Vec<Vec<i64>>, marks: Vec<i64>) -> Result<Self, CoxeterError> {
        let d = CartanDatum { label, pairing, marks };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), CoxeterError> {
        let size = self.marks.len();
        let bad = |m: &str| Err(CoxeterError::InvalidDatum(m.to_string()));
        if self.pairing.len() != size || self.pairing.iter().any(|r| r.len() != size) {
            return bad("pairing matrix shape does not match marks");
        }
        if self.marks.first() != Some(&1) || self.marks.iter().any(|&m| m <= 0) {
            return bad("marks must be positive with n_0 = 1");
        }
        for i in 0..size {
            if self.pairing[i][i] != 2 {
                return bad("diagonal must be 2");
            }
            for j in 0..size {
                if i != j && ((self.pairing[i][j] == 0) != (self.pairing[j][i] == 0) || self.pairing[i][j] > 0) {
                    return bad("off-diagonal entries must be nonpositive and symmetric in support");
                }
            }
        }
        for j in 0..size {
            let s: i64 = (0..size).map(|i| self.marks[i] * self.pairing[i][j]).sum();
            if s != 0 {
                return bad("marks do not annihilate the pairing");
            }
        }
        let mut seen = vec![false; size];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..size {
                if !seen[j] && self.pairing[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return bad("diagram is disconnected");
        }
        Ok(())
    }

    pub fn label(&self) -> AffineType {
        self.label
    }

    /// Number of nodes, `n + 1`.
    pub fn size(&self) -> usize {
        self.marks.len()
    }

    pub fn pairing(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Coordinates of the coroot `h_i` in the basis `b'_j`.
    pub fn coroot(&self, i: usize) -> Vec<i64> {
        (0..self.size()).map(|j| self.pairing[j][i]).collect()
    }

    /// Order of `s_i s_j` from the product of pairings; `None` for infinity.
    pub fn bond_order(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        match self.pairing[i][j] * self.pairing[j][i] {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }

    /// Text form: a `type` line, a `marks` line, then one `pairing` line per row.
    pub fn render(&self) -> String {
        let mut s = format!("type {}\nmarks", self.label);
        for m in &self.marks {
            s.push_str(&format!(" {m}"));
        }
        s.push('\n');
        for r in &self.pairing {
            s.push_str("pairing");
            for x in r {
                s.push_str(&format!(" {x}"));
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CoxeterError> {
        let mut label = None;
        let mut marks = None;
        let mut pairing = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let key = it.next().unwrap_or("");
            let ints = |it: std::str::SplitWhitespace| -> Result<Vec<i64>, CoxeterError> {
                it.map(|t| t.parse::<i64>().map_err(|_| CoxeterError::Parse(format!("line {}: bad integer `{t}`", no + 1))))
                    .collect()
            };
            match key {
                "type" => label = Some(it.collect::<String>().parse::<AffineType>()?),
                "marks" => marks = Some(ints(it)?),
                "pairing" => pairing.push(ints(it)?),
                other => return Err(CoxeterError::Parse(format!("line {}: unknown key `{other}`", no + 1))),
            }
        }
        let label = label.ok_or_else(|| CoxeterError::Parse("missing type line".into()))?;
        let marks = marks.ok_or_else(|| CoxeterError::Parse("missing marks line".into()))?;
        Self::from_parts(label, pairing, marks)
    }
}

pub fn all_types(max_rank: usize) -> Vec<AffineType> {
    let mut v = Vec::new();
    for n in 1..=max_rank {
        v.push(AffineType::A(n));
    }
    for n in 3..=max_rank {
        v.push(AffineType::B(n));
    }
    for n in 2..=max_rank {
        v.push(AffineType::C(n));
    }
    for n in 4..=max_rank {
        v.push(AffineType::D(n));
    }
    v.extend([AffineType::E6, AffineType::E7, AffineType::E8, AffineType::F4, AffineType::G2]);
    v.retain(|t| t.rank() <= max_rank);
    v
}
