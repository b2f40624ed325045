//! Plain-line suite configuration: one `key value...` pair per line, `#`
//! starts a comment. Repeated keys keep the last value and record a warning.

use parahoric::fq::prime_power;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: {key} needs a value")]
    MissingValue { line: usize, key: String },
    #[error("line {line}: {key}: {msg}")]
    BadValue { line: usize, key: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Coxeter,
    Alcove,
    Reps,
    Springer,
    Fourier,
    Pgl2,
    Witt,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Coxeter, Suite::Alcove, Suite::Reps, Suite::Springer, Suite::Fourier, Suite::Pgl2, Suite::Witt];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coxeter => "coxeter",
            Suite::Alcove => "alcove",
            Suite::Reps => "reps",
            Suite::Springer => "springer",
            Suite::Fourier => "fourier",
            Suite::Pgl2 => "pgl2",
            Suite::Witt => "witt",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    /// Residue field sizes for the PGL₂ checks; unset means {2,3,5} for the
    /// discriminant and split-torus checks and {2,3} for fixed points.
    pub q: Option<Vec<u64>>,
    pub prec: i64,
    pub max_len: usize,
    pub samples: usize,
    pub conjugates: usize,
    pub seed: u64,
    /// Grid denominator bound for the alcove and reps checks.
    pub den: i64,
    pub order_cap: u32,
    pub windows: Vec<usize>,
    /// Primes and lengths for the Witt-vector oracle.
    pub witt_p: Vec<u64>,
    pub witt_m: Vec<usize>,
    pub lattice_p: u32,
    pub n: u32,
    pub borel_q: Vec<u64>,
    /// Largest enumeration (elements or operation pairs) a check may run.
    pub budget: u64,
    pub output: Option<String>,
    pub format: Format,
    pub warnings: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.to_vec(),
            q: None,
            prec: 8,
            max_len: 8,
            samples: 100,
            conjugates: 20,
            seed: 1,
            den: 6,
            order_cap: parahoric::coxeter::DEFAULT_ORDER_CAP,
            windows: vec![6, 10],
            witt_p: vec![3, 5],
            witt_m: vec![2, 3],
            lattice_p: 3,
            n: 1,
            borel_q: vec![3, 5],
            budget: 1 << 20,
            output: None,
            format: Format::Tsv,
            warnings: Vec::new(),
        }
    }
}

const KEYS: [&str; 18] = [
    "suite", "q", "prec", "max_len", "samples", "conjugates", "seed", "den", "order_cap", "window", "witt_p", "witt_m",
    "lattice_p", "n", "borel_q", "budget", "output", "format",
];

fn list<T: FromStr>(line: usize, key: &str, vals: &[&str]) -> Result<Vec<T>, ConfigError> {
    vals.iter()
        .map(|v| v.parse().map_err(|_| ConfigError::BadValue { line, key: key.into(), msg: format!("bad value {v:?}") }))
        .collect()
}

fn one<T: FromStr>(line: usize, key: &str, vals: &[&str]) -> Result<T, ConfigError> {
    match vals {
        [v] => list(line, key, &[v]).map(|mut x| x.remove(0)),
        _ => Err(ConfigError::BadValue { line, key: key.into(), msg: "expected one value".into() }),
    }
}

fn prime_powers(line: usize, key: &str, vals: &[&str]) -> Result<Vec<u64>, ConfigError> {
    let qs: Vec<u64> = list(line, key, vals)?;
    if let Some(bad) = qs.iter().find(|&&q| prime_power(q).is_none()) {
        return Err(ConfigError::BadValue { line, key: key.into(), msg: format!("{bad} is not a prime power") });
    }
    Ok(qs)
}

fn primes(line: usize, key: &str, vals: &[&str]) -> Result<Vec<u64>, ConfigError> {
    let ps = prime_powers(line, key, vals)?;
    if let Some(bad) = ps.iter().find(|&&p| prime_power(p).map(|(_, k)| k) != Some(1)) {
        return Err(ConfigError::BadValue { line, key: key.into(), msg: format!("{bad} is not prime") });
    }
    Ok(ps)
}

fn positive<T: PartialOrd + Default + Copy>(line: usize, key: &str, v: T) -> Result<T, ConfigError> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(ConfigError::BadValue { line, key: key.into(), msg: "must be positive".into() })
    }
}

/// Parses a configuration. Keys that are absent keep their defaults, except
/// that a config without a `suite` line selects no suites.
pub fn parse_config(text: &str) -> Result<SuiteConfig, ConfigError> {
    let mut c = SuiteConfig { suites: Vec::new(), ..SuiteConfig::default() };
    let mut seen: Vec<(&str, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let key = words.next().unwrap();
        let vals: Vec<&str> = words.collect();
        let Some(&key) = KEYS.iter().find(|k| **k == key) else {
            return Err(ConfigError::UnknownKey { line, key: key.into() });
        };
        if vals.is_empty() && key != "suite" {
            return Err(ConfigError::MissingValue { line, key: key.into() });
        }
        if let Some(&(_, first)) = seen.iter().find(|(k, _)| *k == key) {
            c.warnings.push(format!("line {line}: {key} repeats line {first}; last value wins"));
        }
        seen.push((key, line));
        match key {
            "suite" => {
                c.suites = vals
                    .iter()
                    .map(|v| v.parse().map_err(|msg| ConfigError::BadValue { line, key: key.into(), msg }))
                    .collect::<Result<_, _>>()?;
                c.suites.sort();
                c.suites.dedup();
            }
            "q" => c.q = Some(prime_powers(line, key, &vals)?),
            "prec" => c.prec = positive(line, key, one(line, key, &vals)?)?,
            "max_len" => c.max_len = one(line, key, &vals)?,
            "samples" => c.samples = one(line, key, &vals)?,
            "conjugates" => c.conjugates = one(line, key, &vals)?,
            "seed" => c.seed = one(line, key, &vals)?,
            "den" => c.den = positive(line, key, one(line, key, &vals)?)?,
            "order_cap" => c.order_cap = positive(line, key, one(line, key, &vals)?)?,
            "window" => c.windows = list(line, key, &vals)?,
            "witt_p" => c.witt_p = primes(line, key, &vals)?,
            "witt_m" => c.witt_m = list(line, key, &vals)?,
            "lattice_p" => {
                let p: u32 = one(line, key, &vals)?;
                primes(line, key, &vals)?;
                c.lattice_p = p;
            }
            "n" => c.n = positive(line, key, one(line, key, &vals)?)?,
            "borel_q" => c.borel_q = prime_powers(line, key, &vals)?,
            "budget" => c.budget = one(line, key, &vals)?,
            "output" => c.output = Some(vals.join(" ")),
            "format" => {
                c.format = match one::<String>(line, key, &vals)?.as_str() {
                    "tsv" => Format::Tsv,
                    "text" => Format::Text,
                    other => {
                        return Err(ConfigError::BadValue { line, key: key.into(), msg: format!("unknown format {other:?}") })
                    }
                }
            }
            _ => return Err(ConfigError::UnknownKey { line, key: key.into() }),
        }
    }
    Ok(c)
}

impl SuiteConfig {
    pub fn discriminant_q(&self) -> Vec<u64> {
        self.q.clone().unwrap_or_else(|| vec![2, 3, 5])
    }

    pub fn fixed_point_q(&self) -> Vec<u64> {
        self.q.clone().unwrap_or_else(|| vec![2, 3])
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Renders every field; `parse_config(render(c))` equals `c` up to warnings.
pub fn render(c: &SuiteConfig) -> String {
    let mut s = String::new();
    let suites: Vec<&str> = c.suites.iter().map(|x| x.name()).collect();
    writeln!(s, "suite {}", suites.join(" ")).unwrap();
    if let Some(q) = &c.q {
        writeln!(s, "q {}", join(q)).unwrap();
    }
    writeln!(s, "prec {}", c.prec).unwrap();
    writeln!(s, "max_len {}", c.max_len).unwrap();
    writeln!(s, "samples {}", c.samples).unwrap();
    writeln!(s, "conjugates {}", c.conjugates).unwrap();
    writeln!(s, "seed {}", c.seed).unwrap();
    writeln!(s, "den {}", c.den).unwrap();
    writeln!(s, "order_cap {}", c.order_cap).unwrap();
    writeln!(s, "window {}", join(&c.windows)).unwrap();
    writeln!(s, "witt_p {}", join(&c.witt_p)).unwrap();
    writeln!(s, "witt_m {}", join(&c.witt_m)).unwrap();
    writeln!(s, "lattice_p {}", c.lattice_p).unwrap();
    writeln!(s, "n {}", c.n).unwrap();
    writeln!(s, "borel_q {}", join(&c.borel_q)).unwrap();
    writeln!(s, "budget {}", c.budget).unwrap();
    if let Some(o) = &c.output {
        writeln!(s, "output {o}").unwrap();
    }
    writeln!(s, "format {}", if c.format == Format::Tsv { "tsv" } else { "text" }).unwrap();
    s
}
