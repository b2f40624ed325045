use clap::{Args, Parser, Subcommand};
use parahoric::alcove::{grid_rows, TorusData};
use parahoric::coxeter::{nodes, parse_word, quotient_coxeter_matrix, AffineType, CartanDatum, WeylElement};
use parahoric::fourier::{curated_group, m_set, pairing_matrix};
use parahoric::pgl2::{discriminant_valuation, field, fixed_point_count, iwahori_class, IwahoriClass, LaurentMatrix};
use parahoric::reps::{builtin_costandard, load_costandard};
use parahoric::springer::springer_table;
use parahoric::witt::{enumerate_x_n, LatticeModel, LieDatum, WittRing};
use parahoric_cli::{parse_config, run_suite, Suite, SuiteConfig};
use std::fmt::Display;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "parahoric", version, about = "Exact checks for affine Weyl groups, PGL2 over Laurent series and Witt-vector lattices")]
struct Cli {
    /// Suite configuration file (key value per line)
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verification checks and print a report
    Verify {
        /// Suites to run, overriding the config selection
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<String>,
    },
    /// Reduced words and quotient Coxeter matrices
    Weyl {
        #[arg(long = "type")]
        ty: String,
        /// Word such as "s0 s1 s0"
        #[arg(long, default_value = "")]
        word: String,
        /// Nodes of J, comma separated; prints the quotient Coxeter matrix
        #[arg(long, value_delimiter = ',')]
        quotient: Option<Vec<usize>>,
    },
    /// Grid points of D_J with their cell, p_J order and stabilizer order
    Cells {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_delimiter = ',', default_value = "")]
        j: Vec<String>,
        #[arg(long, default_value_t = 6)]
        den: i64,
    },
    /// Co-standard tables: built-in label or a table file
    Reps {
        #[arg(long, default_value = "({1},C)")]
        label: String,
        #[arg(long)]
        table: Option<String>,
    },
    /// Non-abelian Fourier matrix of a curated group
    Fourier {
        #[arg(long, default_value = "Z2")]
        group: String,
    },
    /// Iwahori class, discriminant and fixed points of a matrix "a,b;c,d"
    Pgl2(Pgl2Args),
    /// Witt vectors and lattice enumeration
    Witt {
        #[command(subcommand)]
        cmd: WittCmd,
    },
    /// Springer correspondence tables
    Springer {
        #[arg(long, default_value = "SL2")]
        group: String,
    },
}

#[derive(Args)]
struct Pgl2Args {
    #[arg(long)]
    matrix: String,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 8)]
    prec: i64,
    #[arg(long, default_value_t = 8)]
    max_len: usize,
}

#[derive(Subcommand)]
enum WittCmd {
    /// Enumerate E′, E′₀ and the self-dual Lie lattices
    Enum {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
    },
    /// Sum and product of two Witt vectors "(a0,a1,...)"
    Arith {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        x: String,
        y: String,
    },
}

fn usage<E: Display>(e: E) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn datum(ty: &str) -> Result<Arc<CartanDatum>, String> {
    let t: AffineType = ty.parse().map_err(|e| format!("{e}"))?;
    CartanDatum::new(t).map(Arc::new).map_err(|e| e.to_string())
}

fn load_config(path: &Option<String>) -> Result<SuiteConfig, String> {
    match path {
        None => Ok(SuiteConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{p}: {e}"))?;
            parse_config(&text).map_err(|e| format!("{p}: {e}"))
        }
    }
}

fn verify(config: &Option<String>, suite: Vec<String>, output: Option<String>) -> ExitCode {
    let mut c = match load_config(config) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    for w in &c.warnings {
        eprintln!("warning: {w}");
    }
    if !suite.is_empty() {
        match suite.iter().map(|s| s.parse::<Suite>()).collect::<Result<Vec<_>, _>>() {
            Ok(s) => c.suites = s,
            Err(e) => return usage(e),
        }
    }
    let report = run_suite(&c);
    let text = report.render(c.format);
    match output.or(c.output.clone()) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                return usage(format!("{path}: {e}"));
            }
        }
        None => print!("{text}"),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn weyl(ty: &str, word: &str, quotient: Option<Vec<usize>>) -> Result<(), String> {
    let d = datum(ty)?;
    let w = parse_word(word).map_err(|e| e.to_string())?;
    if let Some(&bad) = w.iter().find(|&&i| i >= d.size()) {
        return Err(format!("s{bad} is not a generator of {ty}"));
    }
    let x = WeylElement::from_word(&d, &w);
    println!("reduced\t{x}");
    println!("length\t{}", x.length());
    if let Some(j) = quotient {
        let m = quotient_coxeter_matrix(&d, &nodes(&j), parahoric::coxeter::DEFAULT_ORDER_CAP).map_err(|e| e.to_string())?;
        for row in m {
            println!("{}", row.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("\t"));
        }
    }
    Ok(())
}

fn cells(ty: &str, j: &[String], den: i64) -> Result<(), String> {
    let d = datum(ty)?;
    let j: Vec<usize> =
        j.iter().filter(|s| !s.is_empty()).map(|s| s.parse().map_err(|_| format!("bad node {s:?}"))).collect::<Result<_, _>>()?;
    let t = TorusData::new(&d, &nodes(&j)).map_err(|e| e.to_string())?;
    println!("d\tS\torder\tstabilizer");
    for r in grid_rows(&t, den).map_err(|e| e.to_string())? {
        println!("{r}");
    }
    Ok(())
}

fn reps(label: &str, table: Option<String>) -> Result<(), String> {
    let c = match table {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| format!("{p}: {e}"))?;
            load_costandard(&text)
        }
        None => builtin_costandard(label),
    }
    .map_err(|e| e.to_string())?;
    println!("dim\t{}", c.carrier.dim);
    for l in &c.layers {
        let parts: Vec<String> = l.constituents.iter().map(|(u, s, m)| format!("({u},{s})x{m}")).collect();
        println!("layer {}\tdim {}\t{}", l.index, l.dim, parts.join(" "));
    }
    Ok(())
}

fn fourier(group: &str) -> Result<(), String> {
    let g = curated_group(group).map_err(|e| e.to_string())?;
    let labels: Vec<String> = m_set(&g).iter().map(|p| p.label(&g)).collect();
    println!("\t{}", labels.join("\t"));
    for (l, row) in labels.iter().zip(pairing_matrix(&g)) {
        println!("{l}\t{}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t"));
    }
    Ok(())
}

fn pgl2(a: &Pgl2Args) -> Result<(), String> {
    let k = field(a.q).map_err(|e| e.to_string())?;
    let g = LaurentMatrix::parse(&k, &a.matrix, Some(a.prec)).map_err(|e| e.to_string())?;
    let class = iwahori_class(&g).map_err(|e| e.to_string())?;
    println!("class\t{class}");
    if matches!(class, IwahoriClass::I2 { .. }) {
        match discriminant_valuation(&g) {
            Ok(v) => println!("discriminant\t{v}"),
            Err(e) => println!("discriminant\t{e}"),
        }
        match fixed_point_count(&g, a.prec, a.max_len) {
            Ok(r) => {
                let by: Vec<String> = r.by_length.iter().map(|x| x.to_string()).collect();
                println!("fixed_points\t{}", r.count);
                println!("by_length\t{}", by.join(","));
            }
            Err(e) => println!("fixed_points\t{e}"),
        }
    }
    Ok(())
}

fn witt(cmd: WittCmd) -> Result<(), String> {
    match cmd {
        WittCmd::Enum { p, n, algebra, budget } => {
            if algebra != "sl2" {
                return Err(format!("unsupported algebra {algebra:?}; only sl2 is curated"));
            }
            let model = LatticeModel::new(LieDatum::sl2(p).map_err(|e| e.to_string())?, n);
            let r = enumerate_x_n(&model, budget).map_err(|e| e.to_string())?;
            println!("lattices_examined\t{}", r.lattices_examined);
            println!("E'\t{}", r.e_prime.len());
            println!("E'0\t{}", r.e_prime_0.len());
            println!("direct_self_dual\t{}", r.direct_e.len());
            println!("direct_lie\t{}", r.direct_x.len());
            println!("bijection_E'\t{}", r.bijection_e());
            println!("bijection_E'0\t{}", r.bijection_x());
            println!("duality_failures\t{}", r.duality_failures);
            for z in &r.e_prime_0 {
                let rows: Vec<String> =
                    z.rows.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
                println!("X{n}\t[{}]\td={}", rows.join("; "), z.d());
            }
            Ok(())
        }
        WittCmd::Arith { q, m, x, y } => {
            let ring = WittRing::new(q, m).map_err(|e| e.to_string())?;
            let a = ring.parse(&x).map_err(|e| e.to_string())?;
            let b = ring.parse(&y).map_err(|e| e.to_string())?;
            println!("sum\t{}", a.add(&b).map_err(|e| e.to_string())?);
            println!("product\t{}", a.mul(&b).map_err(|e| e.to_string())?);
            Ok(())
        }
    }
}

fn springer(group: &str) -> Result<(), String> {
    let t = springer_table(group).map_err(|e| e.to_string())?;
    println!("class\tsystem\tblock\tirrep");
    for p in &t.pairs {
        println!("{}\t{}\t{}\t{}", p.class, p.system, p.block, p.irrep);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify { suite, output } => return verify(&cli.config, suite, output),
        Cmd::Weyl { ty, word, quotient } => weyl(&ty, &word, quotient),
        Cmd::Cells { ty, j, den } => cells(&ty, &j, den),
        Cmd::Reps { label, table } => reps(&label, table),
        Cmd::Fourier { group } => fourier(&group),
        Cmd::Pgl2(a) => pgl2(&a),
        Cmd::Witt { cmd } => witt(cmd),
        Cmd::Springer { group } => springer(&group),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage(e),
    }
}
