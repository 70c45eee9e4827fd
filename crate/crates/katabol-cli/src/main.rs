use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use katabol::atoms::classify::classify_standard;
use katabol::atoms::copies::decompose_set;
use katabol::atoms::pieri::{pieri_sets, PieriKind};
use katabol::atoms::poset::build_poset;
use katabol::atoms::{expand_in_atoms, k_kostka};
use katabol::cache::AtomCache;
use katabol::operators::generate_h;
use katabol::symfunc::{digamma, hall_littlewood, macdonald_h, SchurExpansion};
use katabol::verdict::Report;
use katabol::verify::{has_counterexample, parse_k_range, run_suite, Suite, VerifySpec};
use katabol::{Error, Partition, Tableau, TableauSet};

#[derive(Parser)]
#[command(name = "katabol", version, about = "Tableau atoms, copies and k-bounded expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Dot,
    Ascii,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "ascii")]
    format: Format,
    /// Atom cache directory (defaults to $KATABOL_CACHE).
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// The atom A_λ^(k)[X;t], or its tableaux.
    Atom {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: String,
        /// List the tableaux with their charges.
        #[arg(long)]
        tableaux: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Hall-Littlewood H_μ[X;t] in Schur functions, or in atoms with --k.
    Hl {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Macdonald H_μ[X;q,t] in Schur functions, or in atoms with --k.
    Macdonald {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Decomposition of H_μ into copies of level-k atoms.
    Decompose {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        common: Common,
    },
    /// Partitions of the row (or column, with --col) Pieri rule.
    Pieri {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        col: bool,
        #[command(flatten)]
        common: Common,
    },
    /// k-conjugate of a k-bounded partition.
    Kconj {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cyclage poset of an atom.
    Poset {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: String,
        /// Label vertices by tableaux instead of shapes.
        #[arg(long)]
        filled: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Level-2 or level-3 family of a standard tableau (rows top first, '/'-separated).
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        tableau: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value = "1..4")]
        k_range: String,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Report 0 ms for every cell.
        #[arg(long)]
        no_timing: bool,
    },
}

enum Outcome {
    Text(String),
    Verify(Report),
}

fn partition(s: &str) -> Result<Partition, Error> {
    s.parse()
}

fn bounded(s: &str, k: usize) -> Result<Partition, Error> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let p = partition(s)?;
    if !p.is_bounded(k) {
        return Err(Error::NotBounded(p.to_string(), k));
    }
    Ok(p)
}

fn unsupported(f: Format, what: &str) -> Error {
    Error::invalid(format!("format {:?} is not available for {}", f, what).to_lowercase())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn tableau_lines(set: &TableauSet) -> String {
    let mut out: Vec<String> = set.iter().map(|t| format!("{}  charge {}", t, t.charge())).collect();
    out.sort();
    out.join("\n")
}

fn tableau_json(set: &TableauSet) -> Value {
    Value::Array(set.iter().map(|t| json!({"tableau": t.to_string(), "shape": t.shape(), "charge": t.charge()})).collect())
}

fn render_expansion(f: &SchurExpansion, format: Format, basis: &str, header: Value) -> Result<String, Error> {
    Ok(match format {
        Format::Latex => f.to_latex(basis),
        Format::Ascii => f.to_string(),
        Format::Json => {
            let mut h = header;
            h["basis"] = json!(basis);
            h["expansion"] = f.to_json();
            pretty(&h)
        }
        Format::Dot => return Err(unsupported(format, "expansions")),
    })
}

fn atom_basis(k: usize) -> String {
    format!("A^{{({})}}", k)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let text = match cli.command {
        Command::Atom { k, lambda, tableaux, common } => {
            let lambda = bounded(&lambda, k)?;
            let cache = AtomCache::from_flag_or_env(common.cache.as_deref());
            let set = cache.atom(&lambda, k)?;
            if tableaux {
                match common.format {
                    Format::Json => pretty(&json!({"k": k, "lambda": lambda, "tableaux": tableau_json(&set)})),
                    Format::Ascii => tableau_lines(&set),
                    f => return Err(unsupported(f, "tableau lists")),
                }
            } else {
                render_expansion(&digamma(&set), common.format, "S", json!({"k": k, "lambda": lambda}))?
            }
        }
        Command::Hl { lambda, k, common } => {
            let mu = partition(&lambda)?;
            match k {
                Some(k) => {
                    let mu = bounded(&lambda, k)?;
                    render_expansion(&k_kostka(&mu, k, false)?, common.format, &atom_basis(k), json!({"k": k, "mu": mu}))?
                }
                None => render_expansion(&hall_littlewood(&mu)?, common.format, "S", json!({"mu": mu}))?,
            }
        }
        Command::Macdonald { lambda, k, common } => {
            let mu = partition(&lambda)?;
            match k {
                Some(k) => {
                    let mu = bounded(&lambda, k)?;
                    let h = macdonald_h(&mu)?;
                    render_expansion(&expand_in_atoms(&h, k)?, common.format, &atom_basis(k), json!({"k": k, "mu": mu}))?
                }
                None => render_expansion(&macdonald_h(&mu)?, common.format, "S", json!({"mu": mu}))?,
            }
        }
        Command::Decompose { k, lambda, common } => {
            let mu = bounded(&lambda, k)?;
            let d = decompose_set(&generate_h(&mu)?, k)?;
            let status = if !d.is_complete() {
                "counterexample"
            } else if d.ambiguous {
                "ambiguous"
            } else {
                "holds"
            };
            match common.format {
                Format::Json => pretty(&json!({
                    "k": k,
                    "mu": mu,
                    "status": status,
                    "stuck": d.stuck.as_ref().map(|t| t.to_string()),
                    "copies": d.copies.iter().map(|c| json!({
                        "index": c.index.to_string(),
                        "shape": c.shape(),
                        "charge": c.charge,
                        "members": c.members.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })),
                Format::Ascii => {
                    let mut s = format!("{} copies ({})\n", d.copies.len(), status);
                    for c in &d.copies {
                        let members: Vec<String> = c.members.iter().map(|t| t.to_string()).collect();
                        s.push_str(&format!("t^{} A_{}: {}\n", c.charge, c.shape(), members.join(" ")));
                    }
                    if let Some(t) = &d.stuck {
                        s.push_str(&format!("stuck at {}\n", t));
                    }
                    s.trim_end().to_string()
                }
                f => return Err(unsupported(f, "decompose")),
            }
        }
        Command::Pieri { k, lambda, ell, col, common } => {
            let lambda = bounded(&lambda, k)?;
            let kind = if col { PieriKind::Column } else { PieriKind::Row };
            let set = pieri_sets(&lambda, ell, k, kind)?;
            match common.format {
                Format::Json => pretty(&json!({"k": k, "lambda": lambda, "ell": ell, "kind": kind, "partitions": set})),
                Format::Ascii => set.iter().map(|p| serde_json::to_string(p).unwrap()).collect::<Vec<_>>().join("\n"),
                f => return Err(unsupported(f, "pieri")),
            }
        }
        Command::Kconj { k, lambda, common } => {
            let lambda = bounded(&lambda, k)?;
            let c = lambda.k_conjugate(k)?;
            match common.format {
                Format::Json => pretty(&json!({"k": k, "lambda": lambda, "conjugate": c})),
                Format::Ascii => serde_json::to_string(&c).unwrap(),
                f => return Err(unsupported(f, "kconj")),
            }
        }
        Command::Poset { k, lambda, filled, common } => {
            let lambda = bounded(&lambda, k)?;
            let cache = AtomCache::from_flag_or_env(common.cache.as_deref());
            let poset = build_poset(&*cache.atom(&lambda, k)?);
            let label = |t: &Tableau| if filled { t.to_string() } else { t.shape().to_csv() };
            match common.format {
                Format::Dot => poset.to_dot(label),
                Format::Ascii => poset.map(label).to_ascii().trim_end().to_string(),
                Format::Json => pretty(&json!({
                    "k": k,
                    "lambda": lambda,
                    "vertices": poset.vertices().iter().enumerate().map(|(i, t)| json!({
                        "tableau": t.to_string(), "shape": t.shape(), "rank": poset.rank(i)
                    })).collect::<Vec<_>>(),
                    "edges": poset.edges(),
                })),
                f => return Err(unsupported(f, "poset")),
            }
        }
        Command::Classify { k, tableau, common } => {
            let t: Tableau = tableau.parse()?;
            let d = classify_standard(&t, k)?;
            match common.format {
                Format::Json => pretty(&json!({"k": k, "tableau": t.to_string(), "descriptor": d.to_string()})),
                Format::Ascii => d.to_string(),
                f => return Err(unsupported(f, "classify")),
            }
        }
        Command::Verify { suite, max_degree, k_range, jobs, no_timing } => {
            let suite: Suite = suite.parse()?;
            let (k_min, k_max) = parse_k_range(&k_range)?;
            let mut spec = VerifySpec::new(max_degree, k_min, k_max)?;
            spec.jobs = jobs;
            spec.no_timing = no_timing;
            return Ok(Outcome::Verify(run_suite(suite, &spec)?));
        }
    };
    Ok(Outcome::Text(text))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::NotBounded(..) | Error::Duplicate(_) => 2,
        Error::Arithmetic(_) | Error::Io(_) => 3,
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", s);
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Text(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Verify(report)) => {
            emit(&serde_json::to_string_pretty(&report).expect("json"));
            if has_counterexample(&report) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
