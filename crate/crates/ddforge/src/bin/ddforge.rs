//! Command-line front end: generate the flagship digraph families into
//! a catalog, re-verify stored artifacts, and render reports.
//!
//! Exit codes: 0 all checks pass, 1 a structural check failed, 2 bad
//! usage or unreadable input, 3 all structural checks pass but a
//! published display value disagrees with the derived one.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ddforge::catalog::{default_catalog_dir, ArtifactKind, Catalog, ExactMode, RunConfig};
use ddforge::scheme::{verify_scheme, AssociationScheme};
use ddforge::seeds::{normalize_hadamard, paley_hadamard, skew_bgw, sylvester_hadamard, verify_bgw, verify_skew};
use ddforge::{build_s3, build_s4, build_s5, verify_ddd, DivisibleDesignDigraph, Error, IntMatrix, Overall, VerificationReport};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ddforge", version, about = "Generate and verify divisible design digraphs and their association schemes")]
struct Cli {
    /// Catalog directory (also settable via DDFORGE_CATALOG).
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// Absolute tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = ddforge::scheme::DEFAULT_TOL)]
    tolerance: f64,
    /// Scalar arithmetic selection.
    #[arg(long, global = true, value_enum, default_value_t = ExactModeArg::Auto)]
    exact_mode: ExactModeArg,
    /// Seed for any randomized diagnostics.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExactModeArg {
    Auto,
    ForceExact,
    ForceNumeric,
}

impl From<ExactModeArg> for ExactMode {
    fn from(m: ExactModeArg) -> Self {
        match m {
            ExactModeArg::Auto => ExactMode::Auto,
            ExactModeArg::ForceExact => ExactMode::ForceExact,
            ExactModeArg::ForceNumeric => ExactMode::ForceNumeric,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate an artifact family and store it in the catalog.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Re-verify a stored digraph or scheme JSON file from scratch.
    Verify { path: PathBuf },
    /// Render the verification report of a catalog entry or report file.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Md)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Md,
    Json,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Digraph pair on n^2(p+1) vertices from a Hadamard matrix of
    /// order n and a weighing matrix over Z_{2n} built from F_p.
    S3(S3Args),
    /// Digraph family on n+1 blocks of size 2m from a skew weighing
    /// matrix over Z_{2m}.
    S4(S4Args),
    /// Digraph family on (q+1)q^2 vertices from the field of order q.
    S5(S5Args),
    /// Skew balanced generalized weighing matrix BGW(q+1, q, q-1).
    Bgw(BgwArgs),
    /// Hadamard matrix of the requested order.
    Hadamard(HadamardArgs),
}

#[derive(Args)]
struct S3Args {
    /// Hadamard matrix order.
    #[arg(long)]
    n: usize,
    /// Prime power p with (p-1)/(2n) a positive odd integer.
    #[arg(long)]
    p: u64,
}

#[derive(Args)]
struct S4Args {
    /// Prime power side order of the seed weighing matrix.
    #[arg(long)]
    n: u64,
    /// Even cyclic group order g = 2m with (n-1)/g odd.
    #[arg(long)]
    g: u64,
}

#[derive(Args)]
struct S5Args {
    /// Odd prime power.
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct BgwArgs {
    /// Prime power side order.
    #[arg(long)]
    q: u64,
    /// Even cyclic group order with (q-1)/g odd.
    #[arg(long)]
    g: u64,
}

#[derive(Args)]
struct HadamardArgs {
    /// Order: a power of two, or q+1 for a prime power q = 3 (mod 4).
    #[arg(long)]
    order: usize,
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn exit_for(overall: Overall) -> ExitCode {
    match overall {
        Overall::Verified => ExitCode::from(0),
        Overall::VerifiedWithDisplayMismatch => ExitCode::from(3),
        Overall::Failed => ExitCode::from(1),
    }
}

fn exit_for_error(err: &Error) -> ExitCode {
    match err {
        Error::BadParameter(_) | Error::Parse(_) | Error::NotFound(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn overall_word(overall: Overall) -> &'static str {
    match overall {
        Overall::Verified => "verified",
        Overall::VerifiedWithDisplayMismatch => "verified (display mismatches recorded)",
        Overall::Failed => "FAILED",
    }
}

fn json_file<T: serde::Serialize>(name: &str, value: &T) -> ddforge::Result<(String, Vec<u8>)> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok((name.to_string(), bytes))
}

/// Store a bundle's artifacts and print the one-line summary.
fn store_bundle(
    config: &RunConfig,
    title: &str,
    params: BTreeMap<String, String>,
    report: &VerificationReport,
    mut files: Vec<(String, Vec<u8>)>,
) -> ddforge::Result<ExitCode> {
    files.push(json_file("report.json", report)?);
    files.push((
        "report.md".to_string(),
        report.render_markdown(title).into_bytes(),
    ));
    let catalog = Catalog::open(&config.output_dir)?;
    let entry = catalog.store(ArtifactKind::Bundle, params, files)?;
    let overall = report.overall();
    println!(
        "{title}: {} -> {}",
        overall_word(overall),
        catalog.entry_dir(&entry).display()
    );
    Ok(exit_for(overall))
}

fn run_gen(config: &RunConfig, cmd: GenCommand) -> ddforge::Result<ExitCode> {
    match cmd {
        GenCommand::S3(args) => {
            let bundle = build_s3(args.n, args.p, None)?;
            let ddd = DivisibleDesignDigraph {
                params: bundle.params,
                m: bundle.params.m,
                n: bundle.params.n,
                adjacency: bundle.a[1].clone(),
            };
            let params: BTreeMap<_, _> = [
                ("family".to_string(), "s3".to_string()),
                ("n".to_string(), args.n.to_string()),
                ("p".to_string(), args.p.to_string()),
            ]
            .into();
            let files = vec![
                json_file("ddd.json", &ddd)?,
                json_file("scheme.json", &bundle.scheme)?,
            ];
            store_bundle(
                config,
                &format!("s3 n={} p={}", args.n, args.p),
                params,
                &bundle.report,
                files,
            )
        }
        GenCommand::S4(args) => {
            let bundle = build_s4(args.n, args.g)?;
            let ddd = DivisibleDesignDigraph {
                params: bundle.params,
                m: bundle.params.m,
                n: bundle.params.n,
                adjacency: bundle.n_mats[0].clone(),
            };
            let params: BTreeMap<_, _> = [
                ("family".to_string(), "s4".to_string()),
                ("n".to_string(), args.n.to_string()),
                ("g".to_string(), args.g.to_string()),
            ]
            .into();
            let files = vec![
                json_file("ddd.json", &ddd)?,
                json_file("scheme.json", &bundle.scheme)?,
                json_file("fusion_scheme.json", &bundle.fusion_scheme)?,
            ];
            store_bundle(
                config,
                &format!("s4 n={} g={}", args.n, args.g),
                params,
                &bundle.report,
                files,
            )
        }
        GenCommand::S5(args) => {
            let bundle = build_s5(args.q)?;
            let ddd = DivisibleDesignDigraph {
                params: bundle.params,
                m: bundle.params.m,
                n: bundle.params.n,
                adjacency: bundle.n_mats[1].clone(),
            };
            let params: BTreeMap<_, _> = [
                ("family".to_string(), "s5".to_string()),
                ("q".to_string(), args.q.to_string()),
            ]
            .into();
            let files = vec![
                json_file("ddd.json", &ddd)?,
                json_file("scheme.json", &bundle.scheme)?,
            ];
            store_bundle(
                config,
                &format!("s5 q={}", args.q),
                params,
                &bundle.report,
                files,
            )
        }
        GenCommand::Bgw(args) => {
            let (p, m) = factor_prime_power(args.q)
                .ok_or_else(|| Error::BadParameter(format!("{} is not a prime power", args.q)))?;
            let field = ddforge::galois::build_field(p, m)?;
            let w = skew_bgw(&field, args.g)?;
            let mut report = verify_bgw(&w);
            report.check("skew", verify_skew(&w)?, "w_ji != w_ij + g/2 somewhere");
            let params: BTreeMap<_, _> = [
                ("q".to_string(), args.q.to_string()),
                ("g".to_string(), args.g.to_string()),
            ]
            .into();
            let files = vec![json_file("bgw.json", &w)?];
            let catalog = Catalog::open(&config.output_dir)?;
            let mut all = files;
            all.push(json_file("report.json", &report)?);
            let entry = catalog.store(ArtifactKind::Bgw, params, all)?;
            let overall = report.overall();
            println!(
                "bgw q={} g={}: {} -> {}",
                args.q,
                args.g,
                overall_word(overall),
                catalog.entry_dir(&entry).display()
            );
            Ok(exit_for(overall))
        }
        GenCommand::Hadamard(args) => {
            let n = args.order;
            let h = if n > 0 && n.is_power_of_two() {
                sylvester_hadamard(n.trailing_zeros())
            } else if n >= 4 {
                paley_hadamard(n as u64 - 1)?
            } else {
                return Err(Error::BadParameter(format!("no Hadamard matrix of order {n}")));
            };
            let h = normalize_hadamard(&h);
            let mut report = VerificationReport::new();
            report.check(
                "gram-identity",
                ddforge::seeds::HadamardMatrix::verify(&h.mat).is_ok(),
                "H H^T != nI",
            );
            let params: BTreeMap<_, _> = [("order".to_string(), n.to_string())].into();
            let files = vec![json_file("hadamard.json", &h)?, json_file("report.json", &report)?];
            let catalog = Catalog::open(&config.output_dir)?;
            let entry = catalog.store(ArtifactKind::Hadamard, params, files)?;
            let overall = report.overall();
            println!(
                "hadamard order={n}: {} -> {}",
                overall_word(overall),
                catalog.entry_dir(&entry).display()
            );
            Ok(exit_for(overall))
        }
    }
}

/// Parse a stored artifact and re-run its verifier from scratch.
fn run_verify(path: &Path) -> ddforge::Result<ExitCode> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
    if bytes.iter().all(|b| b.is_ascii_whitespace()) {
        return Err(Error::Parse(format!("{} is empty", path.display())));
    }
    let value: serde_json::Value = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;

    let report = if value.get("adjacency").is_some() {
        let ddd: DivisibleDesignDigraph = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        verify_ddd(&ddd.adjacency, &ddd.params)?
    } else if value.get("classes").is_some() {
        let scheme: AssociationScheme = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let classes: Vec<IntMatrix> = scheme.classes.clone();
        verify_scheme(&classes)?.report
    } else {
        return Err(Error::Parse(format!(
            "{}: neither a digraph (adjacency) nor a scheme (classes) file",
            path.display()
        )));
    };

    let overall = report.overall();
    println!("{}: {}", path.display(), overall_word(overall));
    for check in report.failed_checks() {
        match &check.witness {
            Some(w) => println!("  {}: {w}", check.name),
            None => println!("  {}", check.name),
        }
    }
    Ok(exit_for(overall))
}

fn run_report(path: &Path, format: ReportFormat) -> ddforge::Result<ExitCode> {
    let file = if path.is_dir() { path.join("report.json") } else { path.to_path_buf() };
    let bytes = std::fs::read(&file)
        .map_err(|_| Error::NotFound(format!("no report at {}", file.display())))?;
    let report: VerificationReport = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    match format {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        ReportFormat::Md => print!("{}", report.render_markdown(&file.display().to_string())),
    }
    Ok(exit_for(report.overall()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        tolerance: cli.tolerance,
        exact_mode: cli.exact_mode.into(),
        seed: cli.seed,
        output_dir: cli.output_dir.clone().unwrap_or_else(default_catalog_dir),
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Gen(cmd) => run_gen(&config, cmd),
        Command::Verify { path } => run_verify(&path),
        Command::Report { path, format } => run_report(&path, format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for_error(&e)
        }
    }
}
