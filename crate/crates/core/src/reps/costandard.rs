use super::{cyclo_identity, mat_pow, FiniteDimRep, GroupTag, RepError};
use crate::alcove::{LevelOnePoint, TorusData};
use crate::coxeter::{
    element_order, nodes, omega_group, parabolic_elements, AffineType, CartanDatum, DiagramAutomorphism,
    ExtendedWeylElement, Order, WeylElement, DEFAULT_ORDER_CAP,
};
use crate::cyclotomic::Cyclo;
use crate::linalg::{coords_in, mat_mul, mat_vec, rank, rref, trace, Mat, Q};
use crate::springer::{assemble_z_label, closure_lt, springer_table, SpringerError, SpringerTable, ZLabel};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoStandardError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("table rejected at layer {layer}: {reason}")]
    Rejected { layer: usize, reason: String },
    #[error("defining relation fails: {0}")]
    Relations(String),
    #[error("no co-standard data for ζ = {0}")]
    UnsupportedZeta(String),
    #[error("element of infinite or undecided order")]
    NotFiniteOrder,
    #[error(transparent)]
    Springer(#[from] SpringerError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

const A1_MIN: &str = include_str!("../../data/costandard_a1_1.txt");
const A1_REG: &str = include_str!("../../data/costandard_a1_reg.txt");

pub const BUILTIN_LABELS: [&str; 2] = ["({1},C)", "(reg,C)"];

pub fn builtin_costandard(label: &str) -> Result<CoStandardData, CoStandardError> {
    match label {
        "({1},C)" => load_costandard(A1_MIN),
        "(reg,C)" => load_costandard(A1_REG),
        _ => Err(CoStandardError::UnsupportedZeta(label.into())),
    }
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub index: usize,
    pub dim: usize,
    /// `(class, system, multiplicity)` of each constituent.
    pub constituents: Vec<(String, String, usize)>,
}

#[derive(Clone, Debug)]
pub struct CoStandardData {
    pub datum: Arc<CartanDatum>,
    /// Generators `s_0 … s_n`, then Ω∖{1} when the table extends to Ω.
    pub carrier: FiniteDimRep,
    pub omega: Vec<DiagramAutomorphism>,
    /// Spanning sets of `Ê_{≥a}`, `a = 0 … e`.
    pub filtration: Vec<Mat<Cyclo>>,
    pub top_label: ZLabel,
    pub layers: Vec<Layer>,
}

fn parse_matrix(s: &str, line: usize) -> Result<Mat<Cyclo>, CoStandardError> {
    let err = |m: &str| CoStandardError::Parse { line, msg: m.into() };
    let body = s.trim().strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| err("expected [..]"))?;
    body.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|t| t.parse::<Cyclo>().map_err(|e| err(&e.to_string())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

struct RawTable {
    group: AffineType,
    label: (Vec<usize>, Vec<Q>, String, String),
    dim: usize,
    gens: Vec<(String, Mat<Cyclo>)>,
    layers: Vec<Mat<Cyclo>>,
}

fn parse_table(text: &str) -> Result<RawTable, CoStandardError> {
    let mut group = None;
    let mut label = None;
    let mut dim = None;
    let mut gens = Vec::new();
    let mut layers = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let err = |m: String| CoStandardError::Parse { line, msg: m };
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match key {
            "group" => group = Some(rest.parse::<AffineType>().map_err(|e| err(e.to_string()))?),
            "label" => {
                let t: Vec<&str> = rest.split_whitespace().collect();
                if t.len() != 4 {
                    return Err(err("label needs S, d, class and system".into()));
                }
                let s = t[0].split(',').map(|x| x.parse().map_err(|_| err(format!("bad node `{x}`")))).collect::<Result<_, _>>()?;
                let d = t[1].split(',').map(|x| x.parse::<Q>().map_err(|_| err(format!("bad coordinate `{x}`")))).collect::<Result<_, _>>()?;
                label = Some((s, d, t[2].to_string(), t[3].to_string()));
            }
            "dim" => dim = Some(rest.parse().map_err(|_| err("bad dimension".into()))?),
            "gen" => {
                let (name, m) = rest.split_once(char::is_whitespace).ok_or_else(|| err("gen needs a name and a matrix".into()))?;
                gens.push((name.to_string(), parse_matrix(m, line)?));
            }
            "layer" => layers.push(parse_matrix(rest, line)?),
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let missing = |k: &str| CoStandardError::Parse { line: 0, msg: format!("missing `{k}`") };
    Ok(RawTable {
        group: group.ok_or_else(|| missing("group"))?,
        label: label.ok_or_else(|| missing("label"))?,
        dim: dim.ok_or_else(|| missing("dim"))?,
        gens,
        layers,
    })
}

fn span_contains(span: &Mat<Cyclo>, v: &[Cyclo]) -> bool {
    let mut ext = span.clone();
    ext.push(v.to_vec());
    rank(&ext) == rank(span)
}

fn row_basis(span: &Mat<Cyclo>) -> Mat<Cyclo> {
    let mut m = span.clone();
    let p = rref(&mut m);
    m.truncate(p.len());
    m
}

/// Action of each generator on `span(top) / span(sub)`, in a basis completing
/// a basis of the subspace.
fn quotient_action(gens: &[Mat<Cyclo>], top: &Mat<Cyclo>, sub: Option<&Mat<Cyclo>>) -> Vec<Mat<Cyclo>> {
    let mut basis = sub.map(row_basis).unwrap_or_default();
    let s = basis.len();
    for v in row_basis(top) {
        if !span_contains(&basis, &v) {
            basis.push(v);
        }
    }
    let q = basis.len() - s;
    gens.iter()
        .map(|g| {
            let cols: Vec<Vec<Cyclo>> = basis[s..]
                .iter()
                .map(|v| coords_in(&basis, &mat_vec(g, v)).expect("invariant subspace")[s..].to_vec())
                .collect();
            (0..q).map(|r| (0..q).map(|c| cols[c][r].clone()).collect()).collect()
        })
        .collect()
}

/// The finite Weyl group `W_0 = ⟨s_1 … s_n⟩` as reduced words, and the word of
/// the finite part of `s_0`.
fn finite_weyl(datum: &Arc<CartanDatum>) -> Result<(Vec<Vec<usize>>, Vec<usize>), CoStandardError> {
    let fin = nodes(&(1..datum.size()).collect::<Vec<_>>());
    let elems = parabolic_elements(datum, &fin).map_err(|e| CoStandardError::Relations(e.to_string()))?;
    let s0 = WeylElement::generator(datum, 0);
    let u = elems
        .iter()
        .find(|u| s0.mul(&u.inverse()).is_translation())
        .ok_or_else(|| CoStandardError::Relations("s_0 has no finite part".into()))?;
    Ok((elems.iter().map(|e| e.reduced_word()).collect(), u.reduced_word()))
}

fn word_image(gens: &[Mat<Cyclo>], word: &[usize], dim: usize) -> Mat<Cyclo> {
    word.iter().fold(cyclo_identity(dim), |acc, &i| mat_mul(&acc, &gens[i]))
}

fn decompose(
    table: &SpringerTable,
    layer_gens: &[Mat<Cyclo>],
    dim: usize,
    w0: &[Vec<usize>],
) -> Option<Vec<(String, String, usize)>> {
    let order = Q::from_integer((w0.len() as i64).into());
    let mut out = Vec::new();
    let mut covered = 0;
    for p in &table.pairs {
        let irr = table.irrep_of(&p.class, &p.system).ok()?;
        if irr.gens.len() != layer_gens.len() - 1 {
            continue;
        }
        let irr_gens: Vec<Mat<Cyclo>> = irr.gens.iter().map(super::cyclo_mat).collect();
        let mut ip = Cyclo::zero();
        for w in w0 {
            // generator i ≥ 1 of the layer is the finite reflection s_i
            let a = trace(&word_image(layer_gens, w, dim));
            let shifted: Vec<usize> = w.iter().map(|&i| i - 1).collect();
            let b = trace(&word_image(&irr_gens, &shifted, irr.dim()));
            ip = ip + a * b.conj();
        }
        let m = ip.to_rational()? / order.clone();
        if !m.is_integer() || m < Q::from_integer(0.into()) {
            return None;
        }
        let m: usize = m.to_integer().try_into().ok()?;
        if m > 0 {
            covered += m * irr.dim();
            out.push((p.class.clone(), p.system.clone(), m));
        }
    }
    (covered == dim).then_some(out)
}

/// Parses and validates a co-standard table.
pub fn load_costandard(text: &str) -> Result<CoStandardData, CoStandardError> {
    let raw = parse_table(text)?;
    let datum = Arc::new(CartanDatum::new(raw.group).map_err(|e| CoStandardError::Relations(e.to_string()))?);
    let n = datum.size();
    let find = |name: &str| raw.gens.iter().find(|(g, _)| g == name).map(|(_, m)| m.clone());
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(find(&format!("s{i}")).ok_or_else(|| CoStandardError::Relations(format!("no matrix for s{i}")))?);
    }
    let omega_all: Vec<DiagramAutomorphism> = omega_group(&datum).into_iter().filter(|x| !x.is_identity()).collect();
    let given: Vec<Option<Mat<Cyclo>>> = omega_all.iter().map(|x| find(&x.to_string())).collect();
    let omega = if given.iter().all(|g| g.is_some()) {
        gens.extend(given.into_iter().flatten());
        omega_all
    } else if given.iter().all(|g| g.is_none()) {
        vec![]
    } else {
        return Err(CoStandardError::Relations("matrices given for part of Ω only".into()));
    };
    let carrier = FiniteDimRep::new(GroupTag::Affine { datum: datum.label().to_string() }, raw.dim, gens)?;
    check_affine_relations(&datum, &carrier, &omega)?;

    let (s, d, class, system) = raw.label;
    let point = LevelOnePoint::real(&datum, d).map_err(RepError::from)?;
    let cell = crate::alcove::cell_of(&point);
    if cell.map(|c| c.s) != Some(s.iter().copied().collect()) {
        return Err(CoStandardError::Parse { line: 0, msg: "d does not lie in C_S".into() });
    }
    let torus = TorusData::new(&datum, &nodes(&[])).map_err(RepError::from)?;
    let top_label = assemble_z_label(&torus, &point, &class, &system)?;
    if top_label.semisimple.order() != 1 {
        return Err(CoStandardError::UnsupportedZeta(top_label.to_string()));
    }
    let springer = springer_table(&top_label.class.tag)?;

    let filtration = raw.layers;
    let e = filtration.len().checked_sub(1).ok_or(CoStandardError::Rejected { layer: 0, reason: "no layers".into() })?;
    let rej = |layer: usize, reason: String| Err(CoStandardError::Rejected { layer, reason });
    if filtration.iter().any(|f| f.iter().any(|v| v.len() != raw.dim)) {
        return rej(0, "spanning vector of the wrong length".into());
    }
    if rank(&filtration[0]) != raw.dim {
        return rej(0, "Ê_{≥0} is not the whole module".into());
    }
    for a in 0..=e {
        if rank(&filtration[a]) == 0 {
            return rej(a, "layer is zero".into());
        }
        if a > 0 && (filtration[a].iter().any(|v| !span_contains(&filtration[a - 1], v)) || rank(&filtration[a]) == rank(&filtration[a - 1])) {
            return rej(a, "not a strictly descending chain".into());
        }
        for (gi, g) in carrier.gens.iter().enumerate() {
            if filtration[a].iter().any(|v| !span_contains(&filtration[a], &mat_vec(g, v))) {
                return rej(a, format!("not invariant under generator {gi}"));
            }
        }
    }

    let (w0, s0_word) = finite_weyl(&datum)?;
    let mut layers = Vec::new();
    // top layer first, so a wrong E is reported before the lower layers
    for a in (0..=e).rev() {
        let sub = (a < e).then(|| &filtration[a + 1]);
        let lg = quotient_action(&carrier.gens[..n], &filtration[a], sub);
        let dim = lg[0].len();
        let shifted: Vec<usize> = s0_word.clone();
        if lg[0] != word_image(&lg, &shifted, dim) {
            return rej(a, "translations act nontrivially".into());
        }
        let parts = decompose(&springer, &lg, dim, &w0)
            .ok_or(CoStandardError::Rejected { layer: a, reason: "does not decompose into relative irreducibles".into() })?;
        if a == e {
            let ok = parts.len() == 1 && parts[0].0 == top_label.class.name && parts[0].1 == top_label.system && parts[0].2 == 1;
            if !ok {
                return rej(a, format!("top layer is not E for ζ = {}", top_label));
            }
        } else {
            for (c, _, _) in &parts {
                let upper = springer.class(c).expect("from table");
                if !closure_lt(&top_label.class, upper)? {
                    return rej(a, format!("constituent on class {upper} violates c ⊂ cl(c′) − c′"));
                }
            }
        }
        layers.push(Layer { index: a, dim, constituents: parts });
    }
    layers.reverse();
    Ok(CoStandardData { datum, carrier, omega, filtration, top_label, layers })
}

fn check_affine_relations(
    datum: &Arc<CartanDatum>,
    rep: &FiniteDimRep,
    omega: &[DiagramAutomorphism],
) -> Result<(), CoStandardError> {
    let n = datum.size();
    let id = cyclo_identity(rep.dim);
    let fail = |m: String| Err(CoStandardError::Relations(m));
    for i in 0..n {
        if mat_pow(&rep.gens[i], 2) != id {
            return fail(format!("s{i}² ≠ 1"));
        }
        for j in i + 1..n {
            if let Some(m) = datum.bond_order(i, j) {
                if mat_pow(&mat_mul(&rep.gens[i], &rep.gens[j]), m) != id {
                    return fail(format!("(s{i} s{j})^{m} ≠ 1"));
                }
            }
        }
    }
    let index = |x: &DiagramAutomorphism| -> Option<usize> {
        if x.is_identity() {
            None
        } else {
            omega.iter().position(|y| y == x).map(|p| n + p)
        }
    };
    for (p, x) in omega.iter().enumerate() {
        let rx = &rep.gens[n + p];
        for i in 0..n {
            let lhs = mat_mul(&mat_mul(rx, &rep.gens[i]), &rep.inv_gens[n + p]);
            if lhs != rep.gens[x.apply(i)] {
                return fail(format!("{x} s{i} {x}⁻¹ ≠ s{}", x.apply(i)));
            }
        }
        for y in omega {
            let prod = mat_mul(rx, &rep.gens[index(y).unwrap()]);
            let expect = index(&x.compose(y)).map_or(id.clone(), |k| rep.gens[k].clone());
            if prod != expect {
                return fail(format!("Ω is not represented multiplicatively at {x}·{y}"));
            }
        }
    }
    Ok(())
}

impl CoStandardData {
    /// Image of `ξ·w`.
    pub fn image(&self, w: &ExtendedWeylElement) -> Result<Mat<Cyclo>, CoStandardError> {
        let n = self.datum.size();
        let mut acc = cyclo_identity(self.carrier.dim);
        if !w.omega.is_identity() {
            let p = self
                .omega
                .iter()
                .position(|x| *x == w.omega)
                .ok_or_else(|| CoStandardError::UnsupportedZeta(format!("{} without an Ω-extension", self.top_label)))?;
            acc = self.carrier.gens[n + p].clone();
        }
        Ok(mat_mul(&acc, &word_image(&self.carrier.gens, &w.weyl.reduced_word(), self.carrier.dim)))
    }
}

/// Order of `ξ·w`, if finite within the default cap.
fn extended_order(w: &ExtendedWeylElement) -> Option<u32> {
    if w.omega.is_identity() {
        return match element_order(&w.weyl, DEFAULT_ORDER_CAP)? {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        };
    }
    let mut p = w.clone();
    for m in 1..=DEFAULT_ORDER_CAP {
        if p.omega.is_identity() && p.weyl.is_identity() {
            return Some(m);
        }
        p = p.multiply(w).ok()?;
    }
    None
}

/// `tr(w, ĥE_ζ)` for `w` of finite order.
pub fn almost_char_cvr(data: &CoStandardData, w: &ExtendedWeylElement) -> Result<Cyclo, CoStandardError> {
    extended_order(w).ok_or(CoStandardError::NotFiniteOrder)?;
    Ok(trace(&data.image(w)?))
}
