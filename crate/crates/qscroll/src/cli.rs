//! Command-line front end: every pipeline behind reproducible seeds and
//! machine-readable output.
//!
//! Exit codes: 0 success/verified, 1 verification mismatch, 2 usage
//! error, 3 build failure (attempts exhausted).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::builder::{build_nodal_curve, MAX_SCAN_PRIME};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fp, Rational, Scalar};
use crate::io::CurveFile;
use crate::linsys::{verify_dim_formula, NodeConfiguration, SystemDimReport};
use crate::realize::{enumerate_sequences, realize_end_to_end, RealizationPlan};
use crate::scrollar::{cross_validate, CrossCheck};
use crate::{DEFAULT_PRIME, DEFAULT_SCAN_PRIME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Json,
    Csv,
    Human,
}

#[derive(Parser, Debug)]
#[command(
    name = "qscroll",
    about = "Scrollar invariants of gonality pencils on nodal curves on P^1 x P^1, exactly"
)]
pub struct Cli {
    /// Coefficient field: 'p:<prime>' or 'rational'. Default prime can be
    /// overridden with the QSCROLL_PRIME environment variable.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Seed for every randomized choice; identical invocations produce
    /// byte-identical output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Human)]
    pub output: OutputMode,

    /// Attempt budget for randomized curve construction.
    #[arg(long, global = true, default_value_t = 20)]
    pub max_attempts: usize,

    /// Prime used for exhaustive singularity scans (and as the working
    /// field of `build`/`realize` when the main field is too large to scan).
    #[arg(long, global = true)]
    pub scan_prime: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the dimension formula ka+k+a-sum(y_i) against the rank oracle.
    Dim {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        a: i64,
        /// Comma-separated divisor degrees, e.g. 3,2,0.
        #[arg(long, default_value = "")]
        ys: String,
    },
    /// Compute scrollar invariants by closed form and by the ladder
    /// oracle, and cross-check them.
    Scrollar {
        #[arg(long, required_unless_present = "from_file")]
        k: Option<i64>,
        #[arg(long, required_unless_present = "from_file")]
        a: Option<i64>,
        #[arg(long, default_value = "")]
        ys: String,
        /// Read the node configuration from a curve file emitted by `build`.
        #[arg(long)]
        from_file: Option<PathBuf>,
    },
    /// Construct an irreducible nodal curve with prescribed nodes.
    Build {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        a: i64,
        #[arg(long, default_value = "")]
        ys: String,
        /// Write the curve JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize a target scrollar sequence end to end.
    Realize {
        /// Comma-separated nondecreasing target sequence, e.g. 1,2.
        #[arg(long)]
        es: String,
    },
    /// Enumerate scrollar sequences for a genus and gonality, with the
    /// realizability bound.
    Enumerate {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
        /// Restrict to sequences with this spread e_{k-1} - e_1.
        #[arg(long)]
        e: Option<i64>,
        /// Attempt an end-to-end realization of every plan.
        #[arg(long, default_value_t = false)]
        attempt: bool,
    },
    /// Cross-check the scrollar routes over rectangular (k,a) ranges with
    /// random divisor degrees; emits a CSV with a failure count.
    Sweep {
        /// Range of k, e.g. 2..4 (inclusive) or a single value.
        #[arg(long)]
        k: String,
        /// Range of a, e.g. 3..8 (inclusive) or a single value.
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::usage(format!("bad integer '{t}'")))
        })
        .collect()
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = lo
            .parse::<i64>()
            .map_err(|_| Error::usage(format!("bad range '{s}'")))?;
        let hi = hi
            .parse::<i64>()
            .map_err(|_| Error::usage(format!("bad range '{s}'")))?;
        if lo > hi {
            return Err(Error::usage(format!("empty range '{s}'")));
        }
        Ok((lo, hi))
    } else {
        let v = s
            .parse::<i64>()
            .map_err(|_| Error::usage(format!("bad range '{s}'")))?;
        Ok((v, v))
    }
}

fn default_field() -> Result<FieldSpec> {
    match std::env::var("QSCROLL_PRIME") {
        Ok(v) => {
            let p: u64 = v
                .parse()
                .map_err(|_| Error::usage(format!("bad QSCROLL_PRIME '{v}'")))?;
            FieldSpec::prime(p)
        }
        Err(_) => Ok(FieldSpec::Prime { p: DEFAULT_PRIME }),
    }
}

fn resolve_field(cli: &Cli) -> Result<FieldSpec> {
    match &cli.field {
        Some(s) => FieldSpec::parse(s),
        None => default_field(),
    }
}

/// Working field for commands that must scan: the main field if it is a
/// small enough prime, otherwise the scan prime.
fn scan_field(field: FieldSpec, scan_prime: Option<u64>) -> Result<FieldSpec> {
    if let Some(q) = scan_prime {
        let spec = FieldSpec::prime(q)?;
        if q > MAX_SCAN_PRIME {
            return Err(Error::usage(format!(
                "scan prime {q} exceeds the scan limit {MAX_SCAN_PRIME}"
            )));
        }
        return Ok(spec);
    }
    match field {
        FieldSpec::Prime { p } if p <= MAX_SCAN_PRIME => Ok(field),
        _ => Ok(FieldSpec::Prime { p: DEFAULT_SCAN_PRIME }),
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}

fn seq_str(xs: &[i64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Deterministic per-task seed derivation (splitmix64 over mixed inputs).
fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut z = base;
    for &p in parts {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(p);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

fn print_dim_report(r: &SystemDimReport, mode: OutputMode) {
    match mode {
        OutputMode::Json => emit_json(r),
        OutputMode::Csv => {
            println!("d1,d2,computed_dim,expected_dim,matches,rank,rows,cols");
            println!(
                "{},{},{},{},{},{},{},{}",
                r.bidegree.d1,
                r.bidegree.d2,
                r.computed_dim,
                r.expected_dim.map_or("n/a".into(), |x| x.to_string()),
                r.matches,
                r.rank,
                r.matrix_shape.0,
                r.matrix_shape.1
            );
        }
        OutputMode::Human => {
            println!(
                "linear system |({},{})| with {} point conditions",
                r.bidegree.d1,
                r.bidegree.d2,
                r.matrix_shape.0
            );
            println!("  rank oracle : dim = {}", r.computed_dim);
            match r.expected_dim {
                Some(e) => println!("  formula     : dim = {e}"),
                None => println!("  formula     : n/a"),
            }
            println!("  {}", if r.matches { "MATCH" } else { "MISMATCH" });
        }
    }
}

fn print_cross_check(x: &CrossCheck, mode: OutputMode) {
    match mode {
        OutputMode::Json => emit_json(x),
        OutputMode::Csv => {
            // the ladder as (m, dim, f) triples
            println!("m,dim,f");
            for (m, dim) in x.ladder.canonical_dims.iter().enumerate() {
                let f = x.ladder.f(m as i64);
                println!("{m},{dim},{f}");
            }
        }
        OutputMode::Human => {
            let p = &x.closed_form;
            println!(
                "curve type ({},{}), node degrees ({}), genus {}",
                p.k,
                p.a,
                seq_str(&p.ys),
                p.genus
            );
            println!("  closed form : e = ({})", seq_str(&p.es));
            println!("  ladder      : e = ({})", seq_str(&x.from_ladder.es));
            println!("  ladder table (m, dim |w_C - m g^1_k|, f(m)):");
            for (m, dim) in x.ladder.canonical_dims.iter().enumerate() {
                let f = x.ladder.f(m as i64);
                println!("    {m:3}  {dim:4}  {f:3}");
            }
            println!("  {}", if x.matches { "MATCH" } else { "MISMATCH" });
        }
    }
}

fn cmd_dim<S: Scalar>(field: FieldSpec, seed: u64, k: i64, a: i64, ys: &[i64], mode: OutputMode) -> Result<u8> {
    let report = verify_dim_formula::<S>(k, a, ys, field, seed)?;
    print_dim_report(&report, mode);
    Ok(if report.matches { 0 } else { 1 })
}

fn cmd_scrollar<S: Scalar>(
    field: FieldSpec,
    seed: u64,
    k: i64,
    a: i64,
    ys: &[i64],
    mode: OutputMode,
) -> Result<u8> {
    let cfg = NodeConfiguration::<S>::sample(k, a, ys, field, seed, false)?;
    let x = cross_validate(&cfg)?;
    print_cross_check(&x, mode);
    Ok(if x.matches { 0 } else { 1 })
}

fn cmd_scrollar_from_file(path: &PathBuf, mode: OutputMode) -> Result<u8> {
    let text = std::fs::read_to_string(path)?;
    let file: CurveFile = serde_json::from_str(&text)?;
    file.verify_consistent()?;
    let x = match file.field {
        FieldSpec::Prime { .. } => {
            let cfg: NodeConfiguration<Fp> = file.config.to_config()?;
            cross_validate(&cfg)?
        }
        FieldSpec::Rational => {
            let cfg: NodeConfiguration<Rational> = file.config.to_config()?;
            cross_validate(&cfg)?
        }
    };
    print_cross_check(&x, mode);
    Ok(if x.matches { 0 } else { 1 })
}

#[derive(Serialize)]
struct RealizeReportFile {
    plan: RealizationPlan,
    curve: CurveFile,
    cross_check: CrossCheck,
    recovered: bool,
}

fn run(cli: &Cli) -> Result<u8> {
    let field = resolve_field(cli)?;
    let mode = cli.output;
    match &cli.command {
        Command::Dim { k, a, ys } => {
            let ys = parse_i64_list(ys)?;
            match field {
                FieldSpec::Prime { .. } => cmd_dim::<Fp>(field, cli.seed, *k, *a, &ys, mode),
                FieldSpec::Rational => cmd_dim::<Rational>(field, cli.seed, *k, *a, &ys, mode),
            }
        }
        Command::Scrollar { k, a, ys, from_file } => {
            if let Some(path) = from_file {
                return cmd_scrollar_from_file(path, mode);
            }
            let (k, a) = (k.unwrap(), a.unwrap());
            let ys = parse_i64_list(ys)?;
            match field {
                FieldSpec::Prime { .. } => cmd_scrollar::<Fp>(field, cli.seed, k, a, &ys, mode),
                FieldSpec::Rational => {
                    cmd_scrollar::<Rational>(field, cli.seed, k, a, &ys, mode)
                }
            }
        }
        Command::Build { k, a, ys, out } => {
            let ys = parse_i64_list(ys)?;
            let wf = scan_field(field, cli.scan_prime)?;
            let cfg = NodeConfiguration::<Fp>::sample(*k, *a, &ys, wf, cli.seed, true)?;
            let cand = build_nodal_curve(&cfg, cli.seed, cli.max_attempts)?;
            let file = CurveFile::from_candidate(&cand);
            match out {
                Some(path) => {
                    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
                    if mode == OutputMode::Human {
                        println!(
                            "built nodal curve of type ({},{}) over {} in {} attempt(s); wrote {}",
                            k,
                            a,
                            wf,
                            cand.attempts_used,
                            path.display()
                        );
                    }
                }
                None => emit_json(&file),
            }
            Ok(0)
        }
        Command::Realize { es } => {
            let es = parse_i64_list(es)?;
            let wf = scan_field(field, cli.scan_prime)?;
            let out = realize_end_to_end::<Fp>(&es, wf, cli.seed, cli.max_attempts)?;
            let report = RealizeReportFile {
                plan: out.plan,
                curve: CurveFile::from_candidate(&out.curve),
                cross_check: out.cross_check,
                recovered: out.recovered,
            };
            match mode {
                OutputMode::Human => {
                    println!(
                        "target e = ({}) -> a = {}, ys = ({}), genus {}{}",
                        seq_str(&report.plan.target_es),
                        report.plan.a,
                        seq_str(&report.plan.ys),
                        report.plan.g,
                        if report.plan.guaranteed { " [guaranteed]" } else { "" }
                    );
                    println!(
                        "  built curve over {} in {} attempt(s)",
                        report.curve.field, report.curve.attempts_used
                    );
                    println!(
                        "  recovered e = ({}) : {}",
                        seq_str(&report.cross_check.from_ladder.es),
                        if report.recovered { "OK" } else { "MISMATCH" }
                    );
                }
                _ => emit_json(&report),
            }
            Ok(if report.recovered { 0 } else { 1 })
        }
        Command::Enumerate { g, k, e, attempt } => {
            let plans = enumerate_sequences(*g, *k, *e, field.characteristic())?;
            let realized: Vec<Option<bool>> = plans
                .iter()
                .enumerate()
                .map(|(i, plan)| {
                    if !*attempt {
                        return None;
                    }
                    let wf = scan_field(field, cli.scan_prime).ok()?;
                    let seed = derive_seed(cli.seed, &[i as u64]);
                    Some(
                        realize_end_to_end::<Fp>(&plan.target_es, wf, seed, cli.max_attempts)
                            .map(|o| o.recovered)
                            .unwrap_or(false),
                    )
                })
                .collect();
            match mode {
                OutputMode::Json => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        #[serde(flatten)]
                        plan: &'a RealizationPlan,
                        realized: Option<bool>,
                    }
                    let rows: Vec<Row> = plans
                        .iter()
                        .zip(&realized)
                        .map(|(plan, r)| Row { plan, realized: *r })
                        .collect();
                    emit_json(&rows);
                }
                OutputMode::Csv => {
                    println!("sequence,e,a,ys,A,g,guaranteed,realized");
                    for (plan, r) in plans.iter().zip(&realized) {
                        println!(
                            "\"{}\",{},{},\"{}\",{},{},{},{}",
                            seq_str(&plan.target_es),
                            plan.e,
                            plan.a,
                            seq_str(&plan.ys),
                            plan.bound_a,
                            plan.g,
                            plan.guaranteed,
                            r.map_or(String::new(), |b| b.to_string())
                        );
                    }
                }
                OutputMode::Human => {
                    println!(
                        "scrollar sequences for genus {g}, gonality {k} (char {}):",
                        field.characteristic()
                    );
                    for (plan, r) in plans.iter().zip(&realized) {
                        let tag = if plan.balanced {
                            "balanced"
                        } else if plan.guaranteed {
                            "guaranteed"
                        } else {
                            "not guaranteed"
                        };
                        let attempted = match r {
                            None => String::new(),
                            Some(true) => ", realized".into(),
                            Some(false) => ", realization failed".into(),
                        };
                        println!(
                            "  e = ({})  a = {}, ys = ({}), A = {}, {}{}",
                            seq_str(&plan.target_es),
                            plan.a,
                            seq_str(&plan.ys),
                            plan.bound_a,
                            tag,
                            attempted
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Sweep { k, a, trials } => {
            let (k_lo, k_hi) = parse_range(k)?;
            let (a_lo, a_hi) = parse_range(a)?;
            if k_lo < 2 {
                return Err(Error::usage("sweep requires k >= 2"));
            }
            let mut failures = 0u64;
            println!("k,a,ys,es,matches");
            for kk in k_lo..=k_hi {
                for aa in a_lo..=a_hi {
                    for t in 0..*trials {
                        let seed = derive_seed(cli.seed, &[kk as u64, aa as u64, t]);
                        let mut rng = crate::sampling::rng_from_seed(seed);
                        use rand::Rng;
                        let ys: Vec<i64> = (0..kk - 1)
                            .map(|_| rng.gen_range(0..=(aa - 2).max(0)))
                            .collect();
                        let row = match field {
                            FieldSpec::Prime { .. } => {
                                let cfg = NodeConfiguration::<Fp>::sample(
                                    kk, aa, &ys, field, seed, false,
                                )?;
                                cross_validate(&cfg)?
                            }
                            FieldSpec::Rational => {
                                let cfg = NodeConfiguration::<Rational>::sample(
                                    kk, aa, &ys, field, seed, false,
                                )?;
                                cross_validate(&cfg)?
                            }
                        };
                        if !row.matches {
                            failures += 1;
                        }
                        println!(
                            "{},{},\"{}\",\"{}\",{}",
                            kk,
                            aa,
                            seq_str(&row.closed_form.ys),
                            seq_str(&row.from_ladder.es),
                            row.matches
                        );
                    }
                }
            }
            println!("failures,{failures}");
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BuildFailed { .. } | Error::EmptySingularSystem => 3,
                Error::LadderIncomplete => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
