//! `opident` command-line tool.

mod cache;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use opident::classify::{self, case_specs, ClassifyOptions, ClassifyError};
use opident::compose::{consequences, OperatorPolynomial};
use opident::conmatrix::{build_consequence_matrix, ConmatrixError, ConsequenceMatrix};
use opident::golden;
use opident::ideals::{buchberger_with, GbOptions, Ideal, IdealsError};
use opident::linalg::{distinct_minors, minors, partial_smith_form, rank_at, LinalgError, PolyMatrix};
use opident::monomial::{enumerate_monomials, MonomialError, Style};
use opident::poly::{parse, parse_rational, Assignment, MonomialOrder, PolyError, Polynomial, Rational, Ring, Tiebreak};

use cache::Cache;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Conmatrix(#[from] ConmatrixError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ideals(#[from] IdealsError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Ideals(IdealsError::Timeout) => 1,
            _ => 2,
        }
    }
}

/// Outcome of a command that checks something.
enum Verdict {
    Ok,
    Failed,
}

#[derive(Parser)]
#[command(name = "opident", version, about = "Operator identities on associative algebras: monomials, consequence matrices, ranks and Gröbner bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Deglex,
    Degrevlex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TiebreakArg {
    /// The last coefficient variable is largest.
    Last,
    First,
}

#[derive(clap::Args, Clone, Copy)]
struct Shape {
    /// Degree: number of arguments.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Multiplicity: number of operator applications.
    #[arg(long = "mult", default_value_t = 2)]
    mult: usize,
}

#[derive(clap::Args, Clone, Copy)]
struct OrderOpts {
    #[arg(long, value_enum, default_value_t = OrderArg::Deglex)]
    order: OrderArg,
    #[arg(long, value_enum, default_value_t = TiebreakArg::Last)]
    tiebreak: TiebreakArg,
}

impl OrderOpts {
    fn order(&self) -> MonomialOrder {
        let tb = match self.tiebreak {
            TiebreakArg::Last => Tiebreak::LastVariableFirst,
            TiebreakArg::First => Tiebreak::FirstVariableFirst,
        };
        match self.order {
            OrderArg::Deglex => MonomialOrder::DegLex(tb),
            OrderArg::Degrevlex => MonomialOrder::DegRevLex(tb),
        }
    }
}

#[derive(clap::Args, Clone)]
struct ScanOpts {
    /// Comma-separated grid values for each free coefficient.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    scan_grid: Option<Vec<String>>,
    /// Maximum grid points per case.
    #[arg(long, default_value_t = 2000)]
    scan_budget: usize,
    /// Random off-grid points per case.
    #[arg(long, default_value_t = 500)]
    random_points: usize,
    /// Seed for the random points.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl ScanOpts {
    fn options(&self) -> Result<ClassifyOptions, CliError> {
        let mut o = ClassifyOptions {
            scan_budget: self.scan_budget,
            random_points: self.random_points,
            seed: self.seed,
            ..Default::default()
        };
        if let Some(g) = &self.scan_grid {
            o.grid = g.iter().map(|s| rational(s)).collect::<Result<_, _>>()?;
        }
        Ok(o)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the basis monomials of O(p,q) in order.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Consequences of an identity one degree and multiplicity up.
    Consequences {
        #[command(flatten)]
        shape: Shape,
        /// Comma-separated coefficients in basis order; symbolic when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
        /// Omit consequences equal to an earlier one.
        #[arg(long)]
        dedup: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The matrix of consequences.
    Matrix {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        transpose: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Partial Smith form of one case.
    Psf {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        case: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minors of the residual block of one case.
    Minors {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        case: usize,
        #[arg(long)]
        size: usize,
        /// Only distinct minors up to sign.
        #[arg(long)]
        distinct: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduced Gröbner basis of a determinantal ideal of one case.
    Gb {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        case: usize,
        #[arg(long)]
        minor_size: usize,
        #[command(flatten)]
        order: OrderOpts,
        /// Seconds before giving up.
        #[arg(long)]
        timeout: Option<f64>,
        /// Also write the basis file here.
        #[arg(long)]
        save: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Exact rank of the matrix of consequences at a point.
    RankAt {
        #[command(flatten)]
        shape: Shape,
        /// Pin the case's leading coefficients first.
        #[arg(long)]
        case: Option<usize>,
        /// Assignments such as a=1,b=-2,f=-d-1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<String>,
        /// A coefficient left symbolic.
        #[arg(long)]
        free: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify the published classification.
    Classify {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        scan: ScanOpts,
        /// Skip Gröbner bases of the determinantal ideals.
        #[arg(long)]
        no_gb: bool,
        /// Write the report; `.json` or `.md` picks the format.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Genericity scan of one case.
    Scan {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        case: usize,
        #[command(flatten)]
        scan: ScanOpts,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-parse the embedded transcriptions.
    Golden,
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("not a rational number: {s:?}")))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn case_matrix(cm: &ConsequenceMatrix, case: usize) -> Result<(PolyMatrix, Assignment), CliError> {
    let specs = case_specs(&cm.ring);
    let spec = specs
        .get(case.wrapping_sub(1))
        .ok_or_else(|| CliError::Usage(format!("case must be between 1 and {}", specs.len())))?;
    let a = spec.assignment(&cm.ring)?;
    Ok((cm.specialize(&a), a))
}

fn residual(cm: &ConsequenceMatrix, case: usize) -> Result<(usize, PolyMatrix), CliError> {
    let (m, _) = case_matrix(cm, case)?;
    let psf = partial_smith_form(&m);
    Ok((psf.identity_size, psf.lower_right))
}

#[derive(Serialize)]
struct MonomialRecord {
    index: usize,
    paren: String,
    star: String,
    letters: String,
}

#[derive(Serialize)]
struct ConsequenceRecord {
    index: usize,
    label: String,
    value: String,
    duplicate_of: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct GbFile {
    order: String,
    variables: Vec<String>,
    generators: usize,
    elapsed_ms: u128,
    basis: Vec<String>,
}

fn run(cli: Cli) -> Result<(String, Verdict), CliError> {
    let mut out = String::new();
    let verdict = match cli.command {
        Command::Enumerate { shape, format } => {
            let ms = enumerate_monomials(shape.degree, shape.mult)?;
            let recs: Vec<MonomialRecord> = ms
                .iter()
                .enumerate()
                .map(|(i, m)| MonomialRecord {
                    index: i + 1,
                    paren: m.to_paren().to_string(),
                    star: m.render(Style::Star),
                    letters: m.render(Style::Letters),
                })
                .collect();
            match format {
                Format::Json => out = json(&recs),
                _ => {
                    for r in &recs {
                        out += &format!("{} {} {}\n", r.index, r.paren, r.letters);
                    }
                }
            }
            Verdict::Ok
        }
        Command::Consequences { shape, coeffs, dedup, format } => {
            let (ring, basis, generic) = opident::conmatrix::generic_identity(shape.degree, shape.mult)?;
            let r = match coeffs {
                None => generic,
                Some(cs) => {
                    if cs.len() != basis.len() {
                        return Err(CliError::Usage(format!("expected {} coefficients, got {}", basis.len(), cs.len())));
                    }
                    let polys: Vec<Polynomial> = cs.iter().map(|c| parse(&ring, c)).collect::<Result<_, _>>()?;
                    OperatorPolynomial::from_terms(&ring, basis.iter().cloned().zip(polys))
                        .map_err(ConmatrixError::from)?
                }
            };
            let cons = consequences(&r).map_err(ConmatrixError::from)?;
            let recs: Vec<ConsequenceRecord> = cons
                .iter()
                .enumerate()
                .filter(|(_, c)| !dedup || c.duplicate_of.is_none())
                .map(|(i, c)| ConsequenceRecord {
                    index: i + 1,
                    label: c.spec.label(),
                    value: c.value.render(Style::Letters),
                    duplicate_of: c.duplicate_of.map(|d| d + 1),
                })
                .collect();
            match format {
                Format::Json => out = json(&recs),
                _ => {
                    for r in &recs {
                        let dup = r.duplicate_of.map(|d| format!("  [same as {d}]")).unwrap_or_default();
                        out += &format!("{:>2}. {} = {}{}\n", r.index, r.label, r.value, dup);
                    }
                }
            }
            Verdict::Ok
        }
        Command::Matrix { shape, transpose, format } => {
            let cm = build_consequence_matrix(shape.degree, shape.mult)?;
            let m = if transpose { cm.matrix.transpose() } else { cm.matrix.clone() };
            out = match format {
                Format::Json => json(&m.to_json()),
                _ => m.render_text(),
            };
            Verdict::Ok
        }
        Command::Psf { shape, case, format } => {
            let cm = build_consequence_matrix(shape.degree, shape.mult)?;
            let (m, _) = case_matrix(&cm, case)?;
            let psf = partial_smith_form(&m);
            let nonzero = psf.lower_right.nonzero_rows();
            match format {
                Format::Json => {
                    out = json(&serde_json::json!({
                        "identity_size": psf.identity_size,
                        "nonzero_rows": nonzero.len(),
                        "lower_right": psf.lower_right.to_json(),
                    }))
                }
                _ => {
                    out += &format!(
                        "identity block {}; residual {}x{} with {} nonzero rows\n",
                        psf.identity_size,
                        psf.lower_right.rows(),
                        psf.lower_right.cols(),
                        nonzero.len()
                    );
                    out += &psf.lower_right.render_text();
                }
            }
            Verdict::Ok
        }
        Command::Minors { shape, case, size, distinct, format } => {
            let cm = build_consequence_matrix(shape.degree, shape.mult)?;
            let (_, block) = residual(&cm, case)?;
            let (raw, polys, range) = if distinct {
                let s = distinct_minors(&block, size)?;
                let range = s.degree_range();
                (s.raw, s.distinct, range)
            } else {
                let all = minors(&block, size)?;
                let nz: Vec<&Polynomial> = all.iter().filter(|p| !p.is_zero()).collect();
                let range = nz.iter().filter_map(|p| p.total_degree()).fold(None, |acc: Option<(u32, u32)>, d| {
                    Some(acc.map_or((d, d), |(lo, hi)| (lo.min(d), hi.max(d))))
                });
                (all.len(), all, range)
            };
            let texts: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
            match format {
                Format::Json => {
                    out = json(&serde_json::json!({
                        "size": size, "raw": raw, "listed": texts.len(), "degree_range": range, "minors": texts,
                    }))
                }
                _ => {
                    let range = range.map_or("none".to_string(), |(a, b)| format!("{a}-{b}"));
                    out += &format!("# {} minors of size {}, {} listed, degrees {}\n", raw, size, texts.len(), range);
                    for t in texts {
                        out += &t;
                        out.push('\n');
                    }
                }
            }
            Verdict::Ok
        }
        Command::Gb { shape, case, minor_size, order, timeout, save, cache_dir, no_cache } => {
            let cm = build_consequence_matrix(shape.degree, shape.mult)?;
            let (_, block) = residual(&cm, case)?;
            let ideal = Ideal::new(&cm.ring, distinct_minors(&block, minor_size)?.distinct)?;
            let ord = order.order();
            let mut parts = vec!["gb-v1".to_string(), ord.name().to_string(), cm.ring.names().join(",")];
            parts.extend(ideal.generators().iter().map(|g| g.to_string()));
            let key = Cache::key(&parts);
            let cache = (!no_cache).then(|| Cache::locate(cache_dir.as_deref()));
            let file = match cache.as_ref().and_then(|c| c.load::<GbFile>(&key)) {
                Some(f) => f,
                None => {
                    let t0 = Instant::now();
                    let opts = GbOptions {
                        deadline: timeout.map(|s| Instant::now() + Duration::from_secs_f64(s)),
                        ..Default::default()
                    };
                    let gb = buchberger_with(&ideal, ord, &opts)?;
                    let f = GbFile {
                        order: ord.name().to_string(),
                        variables: cm.ring.names().to_vec(),
                        generators: ideal.len(),
                        elapsed_ms: t0.elapsed().as_millis(),
                        basis: gb.basis.iter().map(|p| p.to_string()).collect(),
                    };
                    if let Some(c) = &cache {
                        c.store(&key, &f);
                    }
                    f
                }
            };
            out = json(&file);
            if let Some(path) = save {
                std::fs::write(path, &out)?;
            }
            Verdict::Ok
        }
        Command::RankAt { shape, case, point, free, format } => {
            let cm = build_consequence_matrix(shape.degree, shape.mult)?;
            let ring: &Arc<Ring> = &cm.ring;
            let mut asg = match case {
                Some(c) => case_matrix(&cm, c)?.1,
                None => Assignment::new(),
            };
            for item in &point {
                let (name, value) =
                    item.split_once('=').ok_or_else(|| CliError::Usage(format!("expected name=value, got {item:?}")))?;
                asg = asg.set_poly(ring, name.trim(), parse(ring, value.trim())?)?;
            }
            let free_var = match &free {
                Some(n) => Some(ring.index_of(n).ok_or_else(|| CliError::Usage(format!("unknown coefficient {n:?}")))?),
                None => None,
            };
            let res = match rank_at(&cm.matrix, &asg, free_var) {
                Err(LinalgError::IncompleteAssignment(v)) => {
                    return Err(CliError::Usage(format!("unassigned coefficients: {}", v.join(", "))))
                }
                r => r?,
            };
            let exceptional: Vec<String> = res.exceptional.iter().map(|p| p.to_string()).collect();
            match format {
                Format::Json => out = json(&serde_json::json!({ "rank": res.rank, "exceptional": exceptional })),
                _ => {
                    out += &format!("{}\n", res.rank);
                    for e in exceptional {
                        out += &format!("# rank can drop only where {e} = 0\n");
                    }
                }
            }
            Verdict::Ok
        }
        Command::Classify { shape, scan, no_gb, report, format } => {
            let mut opts = scan.options()?;
            opts.groebner = !no_gb;
            let rep = classify::classify(shape.degree, shape.mult, &opts)?;
            if let Some(path) = &report {
                let body = match path.extension().and_then(|e| e.to_str()) {
                    Some("json") => rep.to_json() + "\n",
                    Some("md") => rep.to_markdown(),
                    _ => return Err(CliError::Usage("report path must end in .json or .md".into())),
                };
                std::fs::write(path, body)?;
            }
            out = match format {
                Format::Json => rep.to_json() + "\n",
                _ => rep.to_markdown(),
            };
            if rep.passed {
                Verdict::Ok
            } else {
                Verdict::Failed
            }
        }
        Command::Scan { shape, case, scan, format } => {
            let opts = scan.options()?;
            let cm = build_consequence_matrix(shape.degree, shape.mult)?;
            let specs = case_specs(&cm.ring);
            let spec = specs
                .get(case.wrapping_sub(1))
                .ok_or_else(|| CliError::Usage(format!("case must be between 1 and {}", specs.len())))?;
            let entries = classify::published(shape.degree, shape.mult, &cm.ring).unwrap_or_default();
            let max = classify::published_max_rank(shape.degree, shape.mult)
                .unwrap_or_else(|| cm.matrix.rows().min(cm.matrix.cols()));
            let rep = classify::genericity_scan(&cm, spec, &entries, max, &opts);
            match format {
                Format::Json => out = json(&rep),
                _ => {
                    out += &format!(
                        "case {} ({}): {} grid points, {} random points, {} low-rank points explained, {} findings\n",
                        spec.index,
                        spec.label(),
                        rep.grid_points,
                        rep.random_points,
                        rep.low_rank_explained,
                        rep.findings.len()
                    );
                    for (p, r) in &rep.low_rank_points {
                        out += &format!("low rank {r} at ({})\n", p.join(", "));
                    }
                    for f in &rep.findings {
                        out += &format!("FINDING rank {} at ({}): {}\n", f.rank, f.point.join(", "), f.reason);
                    }
                }
            }
            if rep.findings.is_empty() {
                Verdict::Ok
            } else {
                Verdict::Failed
            }
        }
        Command::Golden => {
            let mut ok = true;
            for r in golden::lint() {
                ok &= r.ok();
                out += &format!("{} {} ({} items)\n", if r.ok() { "ok  " } else { "FAIL" }, r.name, r.items);
                for e in &r.errors {
                    out += &format!("    {e}\n");
                }
            }
            if ok {
                Verdict::Ok
            } else {
                Verdict::Failed
            }
        }
    };
    Ok((out, verdict))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, verdict)) => {
            // A closed pipe (as with `| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            match verdict {
                Verdict::Ok => ExitCode::SUCCESS,
                Verdict::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
