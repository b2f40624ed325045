//! Curated generalized Springer correspondence tables for the groups that
//! occur in rank-one configurations, closure orders and the assembly of
//! labels `(p_∅(d), c, 𝓕)`.

use crate::alcove::{cell_of, AlcoveError, LevelOnePoint, TorusData, TorusPoint};
use crate::coxeter::{min_coset_generators, AffineType, CartanDatum, DiagramAutomorphism, NodeSet};
use crate::linalg::{Mat, Q};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpringerError {
    #[error("no curated table for group `{0}`")]
    NotCurated(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("inconsistent table: {0}")]
    Inconsistent(String),
    #[error("classes from different groups: {0} and {1}")]
    MixedTags(String, String),
    #[error("pair ({0}, {1}) is not in the table")]
    UnknownPair(String, String),
    #[error(transparent)]
    Alcove(#[from] AlcoveError),
}

const SL2: &str = include_str!("../data/springer_sl2.txt");
const TORUS: &str = include_str!("../data/springer_torus.txt");

pub fn supported_tags() -> Vec<&'static str> {
    vec!["SL2", "torus"]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnipotentClassLabel {
    pub tag: String,
    pub name: String,
    pub dim: u32,
}

impl fmt::Display for UnipotentClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.name == "1" {
            write!(f, "{{1}}")
        } else {
            write!(f, "{}", self.name)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CuspidalDatum {
    pub j: NodeSet,
    pub class: String,
    pub system: String,
}

#[derive(Clone, Debug)]
pub struct RelativeIrrep {
    pub name: String,
    /// Images of the relative Weyl group generators.
    pub gens: Vec<Mat<Q>>,
}

impl RelativeIrrep {
    pub fn dim(&self) -> usize {
        self.gens.first().map_or(1, |m| m.len())
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub name: String,
    pub cuspidal: CuspidalDatum,
    pub irreps: Vec<RelativeIrrep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerPair {
    pub class: String,
    pub system: String,
    pub block: String,
    pub irrep: String,
}

#[derive(Clone, Debug)]
pub struct SpringerTable {
    pub tag: String,
    pub classes: Vec<UnipotentClassLabel>,
    /// Systems supported on each class.
    pub class_systems: BTreeMap<String, Vec<String>>,
    /// Central character of each system, in `ℚ/ℤ`.
    pub central: BTreeMap<String, Q>,
    covers: Vec<(String, String)>,
    pub blocks: Vec<Block>,
    pub pairs: Vec<SpringerPair>,
}

fn parse_q(tok: &str, line: usize) -> Result<Q, SpringerError> {
    tok.parse::<Q>().map_err(|_| SpringerError::Parse { line, msg: format!("bad rational `{tok}`") })
}

fn parse_matrices(rest: &str, line: usize) -> Result<Vec<Mat<Q>>, SpringerError> {
    let mut out = Vec::new();
    let mut s = rest.trim();
    while !s.is_empty() {
        let open = s.strip_prefix('[').ok_or(SpringerError::Parse { line, msg: "expected `[`".into() })?;
        let close = open.find(']').ok_or(SpringerError::Parse { line, msg: "unclosed `[`".into() })?;
        let body = &open[..close];
        let m: Mat<Q> = body
            .split(';')
            .map(|row| row.split_whitespace().map(|t| parse_q(t, line)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        if m.iter().any(|r| r.len() != m.len()) {
            return Err(SpringerError::Parse { line, msg: "matrix is not square".into() });
        }
        out.push(m);
        s = open[close + 1..].trim_start();
    }
    Ok(out)
}

fn parse_nodes(tok: &str, line: usize) -> Result<NodeSet, SpringerError> {
    if tok == "-" {
        return Ok(NodeSet::new());
    }
    tok.split(',')
        .map(|t| t.parse().map_err(|_| SpringerError::Parse { line, msg: format!("bad node `{t}`") }))
        .collect()
}

impl SpringerTable {
    pub fn parse(text: &str) -> Result<Self, SpringerError> {
        let mut t = SpringerTable {
            tag: String::new(),
            classes: vec![],
            class_systems: BTreeMap::new(),
            central: BTreeMap::new(),
            covers: vec![],
            blocks: vec![],
            pairs: vec![],
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let need = |n: usize| {
                if toks.len() < n {
                    Err(SpringerError::Parse { line, msg: format!("`{}` needs {} fields", toks[0], n - 1) })
                } else {
                    Ok(())
                }
            };
            match toks[0] {
                "group" => {
                    need(2)?;
                    t.tag = toks[1].to_string();
                }
                "class" => {
                    need(4)?;
                    let dim = toks[2].parse().map_err(|_| SpringerError::Parse { line, msg: "bad dimension".into() })?;
                    t.classes.push(UnipotentClassLabel { tag: t.tag.clone(), name: toks[1].into(), dim });
                    t.class_systems.insert(toks[1].into(), toks[3..].iter().map(|s| s.to_string()).collect());
                }
                "system" => {
                    need(3)?;
                    t.central.insert(toks[1].into(), parse_q(toks[2], line)?);
                }
                "closure" => {
                    need(3)?;
                    t.covers.push((toks[1].into(), toks[2].into()));
                }
                "block" => {
                    need(5)?;
                    let j = parse_nodes(toks[2], line)?;
                    t.blocks.push(Block {
                        name: toks[1].into(),
                        cuspidal: CuspidalDatum { j, class: toks[3].into(), system: toks[4].into() },
                        irreps: vec![],
                    });
                }
                "irrep" => {
                    need(3)?;
                    let rest = content.splitn(4, char::is_whitespace).nth(3).unwrap_or("");
                    let gens = parse_matrices(rest, line)?;
                    let b = t
                        .blocks
                        .iter_mut()
                        .find(|b| b.name == toks[1])
                        .ok_or(SpringerError::Parse { line, msg: format!("unknown block `{}`", toks[1]) })?;
                    b.irreps.push(RelativeIrrep { name: toks[2].into(), gens });
                }
                "pair" => {
                    need(5)?;
                    t.pairs.push(SpringerPair {
                        class: toks[1].into(),
                        system: toks[2].into(),
                        block: toks[3].into(),
                        irrep: toks[4].into(),
                    });
                }
                other => return Err(SpringerError::Parse { line, msg: format!("unknown keyword `{other}`") }),
            }
        }
        t.validate()?;
        Ok(t)
    }

    /// Bijection and partition checks.
    pub fn validate(&self) -> Result<(), SpringerError> {
        let bad = |m: String| Err(SpringerError::Inconsistent(m));
        let mut want: BTreeSet<(String, String)> = BTreeSet::new();
        for (c, systems) in &self.class_systems {
            for s in systems {
                if !self.central.contains_key(s) {
                    return bad(format!("system `{s}` undeclared"));
                }
                want.insert((c.clone(), s.clone()));
            }
        }
        let mut got = BTreeSet::new();
        let mut hit: BTreeSet<(String, String)> = BTreeSet::new();
        for p in &self.pairs {
            if !got.insert((p.class.clone(), p.system.clone())) {
                return bad(format!("pair ({}, {}) listed twice", p.class, p.system));
            }
            let Some(b) = self.blocks.iter().find(|b| b.name == p.block) else {
                return bad(format!("unknown block `{}`", p.block));
            };
            if !b.irreps.iter().any(|r| r.name == p.irrep) || !hit.insert((p.block.clone(), p.irrep.clone())) {
                return bad(format!("irrep `{}` of block `{}` missing or reused", p.irrep, p.block));
            }
        }
        if got != want {
            return bad("pairs do not cover the classes and systems".into());
        }
        let total: usize = self.blocks.iter().map(|b| b.irreps.len()).sum();
        if total != self.pairs.len() {
            return bad(format!("{} pairs but {} relative irreducibles", self.pairs.len(), total));
        }
        for b in &self.blocks {
            if !want.contains(&(b.cuspidal.class.clone(), b.cuspidal.system.clone())) {
                return bad(format!("cuspidal datum of `{}` is not a pair", b.name));
            }
            // all irreps of a block share the central character of its datum
            let chi = &self.central[&b.cuspidal.system];
            for p in self.pairs.iter().filter(|p| p.block == b.name) {
                if &self.central[&p.system] != chi {
                    return bad(format!("central character changes inside block `{}`", b.name));
                }
            }
        }
        for (a, c) in &self.covers {
            if self.class(a).is_none() || self.class(c).is_none() {
                return bad(format!("closure pair {a} {c} names an unknown class"));
            }
        }
        if let Some(c) = self.classes.iter().find(|c| c.name != "1" && self.closure_leq_names("1", &c.name) != Some(true)) {
            return bad(format!("{{1}} is not below `{}`", c.name));
        }
        Ok(())
    }

    pub fn class(&self, name: &str) -> Option<&UnipotentClassLabel> {
        self.classes.iter().find(|c| c.name == name)
    }

    fn closure_leq_names(&self, a: &str, b: &str) -> Option<bool> {
        self.class(a)?;
        self.class(b)?;
        let mut seen = BTreeSet::new();
        let mut stack = vec![a.to_string()];
        while let Some(x) = stack.pop() {
            if x == b {
                return Some(true);
            }
            if seen.insert(x.clone()) {
                for (lo, hi) in &self.covers {
                    if *lo == x {
                        stack.push(hi.clone());
                    }
                }
            }
        }
        Some(false)
    }

    pub fn lookup(&self, class: &str, system: &str) -> Result<&SpringerPair, SpringerError> {
        self.pairs
            .iter()
            .find(|p| p.class == class && p.system == system)
            .ok_or_else(|| SpringerError::UnknownPair(class.into(), system.into()))
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// Relative irreducible attached to `(class, system)`.
    pub fn irrep_of(&self, class: &str, system: &str) -> Result<&RelativeIrrep, SpringerError> {
        let p = self.lookup(class, system)?;
        Ok(self.block(&p.block).and_then(|b| b.irreps.iter().find(|r| r.name == p.irrep)).expect("validated"))
    }

    /// Cuspidal data with a node set passing the minimal coset check in `datum`.
    pub fn check_cuspidal(&self, datum: &Arc<CartanDatum>) -> Result<(), SpringerError> {
        for b in &self.blocks {
            min_coset_generators(datum, &b.cuspidal.j)
                .map_err(|e| SpringerError::Inconsistent(format!("block `{}`: {e}", b.name)))?;
        }
        Ok(())
    }
}

/// The curated table for a group tag.
pub fn springer_table(tag: &str) -> Result<SpringerTable, SpringerError> {
    match tag {
        "SL2" => SpringerTable::parse(SL2),
        "torus" => SpringerTable::parse(TORUS),
        _ => Err(SpringerError::NotCurated(tag.into())),
    }
}

/// `c ≤ c′` in the closure order.
pub fn closure_leq(a: &UnipotentClassLabel, b: &UnipotentClassLabel) -> Result<bool, SpringerError> {
    if a.tag != b.tag {
        return Err(SpringerError::MixedTags(a.tag.clone(), b.tag.clone()));
    }
    let t = springer_table(&a.tag)?;
    t.closure_leq_names(&a.name, &b.name)
        .ok_or_else(|| SpringerError::Inconsistent(format!("unknown class {} or {}", a.name, b.name)))
}

pub fn closure_lt(a: &UnipotentClassLabel, b: &UnipotentClassLabel) -> Result<bool, SpringerError> {
    Ok(a != b && closure_leq(a, b)?)
}

/// `ι: Ω → Hom(𝒵, ℂ*)` for type `Ã_n`, where Ω is cyclic generated by the
/// rotation and the center is `ℤ/(n+1)`.
pub fn iota(datum: &CartanDatum, xi: &DiagramAutomorphism) -> Option<Q> {
    match datum.label() {
        AffineType::A(n) => {
            let k = xi.apply(0);
            Some(Q::new((k as i64).into(), ((n + 1) as i64).into()))
        }
        _ => None,
    }
}

/// Group tag of the centralizer `𝒢_Š` for a rank-one configuration, read off
/// from the order of the stabilizer of `p_∅(d)`.
pub fn centralizer_tag(stabilizer_order: usize) -> Option<&'static str> {
    match stabilizer_order {
        1 => Some("torus"),
        2 => Some("SL2"),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZLabel {
    pub semisimple: TorusPoint,
    pub class: UnipotentClassLabel,
    pub system: String,
}

impl ZLabel {
    pub fn central_character(&self) -> Result<Q, SpringerError> {
        let t = springer_table(&self.class.tag)?;
        t.central.get(&self.system).cloned().ok_or_else(|| SpringerError::UnknownPair(self.class.name.clone(), self.system.clone()))
    }

    /// The element of Ω whose ι-value is the central character.
    pub fn omega_block(&self, datum: &CartanDatum) -> Result<DiagramAutomorphism, SpringerError> {
        let chi = self.central_character()?;
        crate::coxeter::omega_group(datum)
            .into_iter()
            .find(|x| iota(datum, x).as_ref() == Some(&chi))
            .ok_or_else(|| SpringerError::Inconsistent(format!("no ω with ι(ω) = {chi}")))
    }
}

impl fmt::Display for ZLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.semisimple, self.class, self.system)
    }
}

/// `(S, d, c, 𝓕) ↦ ζ` on the `J = ∅` torus data of a rank-one datum.
pub fn assemble_z_label(
    data: &TorusData,
    d: &LevelOnePoint,
    class: &str,
    system: &str,
) -> Result<ZLabel, SpringerError> {
    let cell = cell_of(d).ok_or(AlcoveError::NotInDomain)?;
    let report = data.torus_stabilizer(d)?;
    let tag = centralizer_tag(report.stabilizer.len())
        .ok_or_else(|| SpringerError::NotCurated(format!("centralizer with Weyl group of order {}", report.stabilizer.len())))?;
    // Š − J = J̌ − S must generate the same group as the stabilizer
    let expected = if cell.s.len() == data.jc.len() { "torus" } else { "SL2" };
    if tag != expected {
        return Err(SpringerError::Inconsistent(format!("centralizer {tag} but cell {} predicts {expected}", cell)));
    }
    let table = springer_table(tag)?;
    table.lookup(class, system)?;
    let class = table.class(class).cloned().expect("looked up");
    Ok(ZLabel { semisimple: report.point, class, system: system.into() })
}
