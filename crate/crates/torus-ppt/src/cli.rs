//! The `torus-ppt` command line: generate family states, check analytic
//! criteria against the dense eigenvalue oracle, sweep parameter grids,
//! project dense matrices into the classes, and drive certificates and
//! positive-map scans.
//!
//! Exit codes: 0 success/agreement, 1 analytic-vs-oracle disagreement
//! (a correctness alarm), 2 usage/validation failure, 3 I/O failure.
//! `TORUS_PPT_TOL` overrides the default tolerance of 1e-9; `--tol` wins
//! over both.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::cones::{
    separability_search, v2_certificate_werner, v2_membership_search, v_upper2_certificate,
    verify_certificate, ConeError, DecompositionCertificate,
};
use crate::families::{self, Family};
use crate::io::{self, IoError};
use crate::linalg::DenseMatrix;
use crate::maps::{self, builtin_map, BuiltinMap, StateDescriptor};
use crate::scan::{linspace, oracle_verdicts, scan_family_grid, scan_rows_to_csv, verdicts_agree};
use crate::states::{project_isotropic, project_werner, ClassState, CriterionReport};

const EXIT_OK: i32 = 0;
const EXIT_DISAGREEMENT: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_IO: i32 = 3;

#[derive(Parser)]
#[command(
    name = "torus-ppt",
    version,
    about = "Torus-invariant bipartite states: analytic positivity/PPT criteria, \
             named families, certificates and positive-map scans"
)]
struct Cli {
    /// Verdict tolerance (default 1e-9, or TORUS_PPT_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize a named family to a state file (or a matrix file for
    /// horodecki-rho-a).
    Gen(GenArgs),
    /// Check a state file: analytic verdicts with slacks next to the dense
    /// eigenvalue oracle.
    Check(CheckArgs),
    /// Sweep a family parameter on a uniform grid and write per-point
    /// verdicts as CSV.
    Scan(ScanArgs),
    /// Project a dense d²×d² hermitian matrix onto a class.
    Project(ProjectArgs),
    /// Produce a separability / V2 / V² certificate for a state file.
    Certify(CertifyArgs),
    /// Apply a built-in positive map to a state, or scan a family under it.
    Map(MapArgs),
}

#[derive(Args, Clone)]
struct FamilyParams {
    /// Family name: werner | isotropic | shor-family | horodecki-sigma |
    /// diagonal-family | stormer | ha-gamma | ha-bs | lambda-vector |
    /// horodecki-rho-a.
    #[arg(long)]
    family: Option<String>,
    /// Local dimension d.
    #[arg(long)]
    d: Option<usize>,
    /// Werner mixing parameter.
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    /// Isotropic mixing parameter.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// horodecki-sigma / stormer parameter.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// shor-family antisymmetric weight.
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// shor-family symmetric weight.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// ha-gamma parameter.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// ha-bs parameter.
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// horodecki-rho-a parameter.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// diagonal-family weights, comma-separated (must sum to 1).
    #[arg(long)]
    weights: Option<String>,
    /// stormer upper-triangle c entries, comma-separated, row-major.
    #[arg(long = "c-upper")]
    c_upper: Option<String>,
    /// lambda-vector entries as re:im pairs, comma-separated.
    #[arg(long = "lambda-vec", allow_hyphen_values = true)]
    lambda_vec: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyParams,
    /// Output path.
    #[arg(long)]
    out: PathBuf,
    /// Divide all parameters by the trace before writing.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// State file to check.
    #[arg(long = "in")]
    input: PathBuf,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    family: FamilyParams,
    /// Grid spec `name:from:to:steps` (closed interval, steps >= 2).
    #[arg(long)]
    param: String,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ProjectArgs {
    /// Matrix file to project.
    #[arg(long = "in")]
    input: PathBuf,
    /// Target class: isotropic | werner.
    #[arg(long)]
    class: String,
    /// Local dimension d.
    #[arg(long)]
    d: usize,
    /// Output state path.
    #[arg(long)]
    out: PathBuf,
    /// Print the Frobenius distance between the input and its projection.
    #[arg(long = "report-distance")]
    report_distance: bool,
}

#[derive(Args)]
struct CertifyArgs {
    /// Cone: sep | v2 | vup2.
    #[arg(long)]
    cone: String,
    /// State file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Certificate output path.
    #[arg(long)]
    out: PathBuf,
    /// Number of sampled generators for the NNLS searches.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Sampling seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Acceptance threshold for search residual and trace-weight defect.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
}

#[derive(Args)]
struct MapArgs {
    /// Built-in map: transpose | reduction | choi3.
    #[arg(long = "map")]
    map_name: String,
    /// State file (single-point mode).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyParams,
    /// Grid spec `name:from:to:steps` (family scan mode).
    #[arg(long)]
    scan: Option<String>,
    /// CSV output path (scan mode).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of text (single-point mode).
    #[arg(long)]
    json: bool,
    /// Run the full atomicity probe (V2 and V-upper-2 certificates plus the
    /// mapped eigenvalue) instead of the indecomposability probe. Requires a
    /// PPT isotropic-like state.
    #[arg(long)]
    atomicity: bool,
    /// Sampled V2 generators for the atomicity probe.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Sampling seed for the atomicity probe.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Residual threshold for the atomicity probe's V2 search.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
}

struct ProbeOptions {
    atomicity: bool,
    samples: usize,
    seed: u64,
    eps: f64,
}

enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io(inner) => CliError::Io(inner.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let tol = cli
        .tol
        .or_else(|| {
            std::env::var("TORUS_PPT_TOL")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1e-9);
    if !tol.is_finite() || tol <= 0.0 {
        eprintln!("error: tolerance must be positive");
        return EXIT_USAGE;
    }
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args, tol),
        Command::Check(args) => cmd_check(args, tol),
        Command::Scan(args) => cmd_scan(args, tol),
        Command::Project(args) => cmd_project(args),
        Command::Certify(args) => cmd_certify(args, tol),
        Command::Map(args) => cmd_map(args, tol),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse {t:?} as a number")))
        })
        .collect()
}

fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let (re, im) = match t.split_once(':') {
                Some((re, im)) => (re, im),
                None => (t, "0"),
            };
            let re: f64 = re
                .parse()
                .map_err(|_| CliError::Usage(format!("cannot parse {t:?} as re:im")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| CliError::Usage(format!("cannot parse {t:?} as re:im")))?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("family {family} requires --{flag}")))
}

enum GenTarget {
    State(ClassState),
    Matrix(DenseMatrix),
}

fn build_family(params: &FamilyParams) -> Result<Family, CliError> {
    let fam = params
        .family
        .as_deref()
        .ok_or_else(|| CliError::Usage("--family is required".into()))?;
    let family =
        match fam {
            "werner" => Family::Werner {
                d: need(params.d, "d", fam)?,
                p: need(params.p, "p", fam)?,
            },
            "isotropic" => Family::Isotropic {
                d: need(params.d, "d", fam)?,
                lambda: need(params.lambda, "lambda", fam)?,
            },
            "shor-family" => Family::ShorFamily {
                d: need(params.d, "d", fam)?,
                b: need(params.b, "b", fam)?,
                c: need(params.c, "c", fam)?,
            },
            "horodecki-sigma" => Family::HorodeckiSigma {
                alpha: need(params.alpha, "alpha", fam)?,
            },
            "diagonal-family" => {
                Family::DiagonalFamily {
                    d: need(params.d, "d", fam)?,
                    weights: parse_f64_list(params.weights.as_deref().ok_or_else(|| {
                        CliError::Usage(format!("family {fam} requires --weights"))
                    })?)?,
                }
            }
            "stormer" => {
                Family::Stormer {
                    d: need(params.d, "d", fam)?,
                    c_upper: parse_f64_list(params.c_upper.as_deref().ok_or_else(|| {
                        CliError::Usage(format!("family {fam} requires --c-upper"))
                    })?)?,
                    alpha: need(params.alpha, "alpha", fam)?,
                }
            }
            "ha-gamma" => Family::HaGamma {
                d: need(params.d, "d", fam)?,
                gamma: need(params.gamma, "gamma", fam)?,
            },
            "ha-bs" => Family::HaBs {
                d: need(params.d, "d", fam)?,
                s: need(params.s, "s", fam)?,
            },
            "lambda-vector" => Family::LambdaVector {
                lambda: parse_complex_list(params.lambda_vec.as_deref().ok_or_else(|| {
                    CliError::Usage(format!("family {fam} requires --lambda-vec"))
                })?)?,
            },
            other => {
                return Err(CliError::Usage(format!(
                    "unknown family {other:?} (see --help for the list)"
                )))
            }
        };
    Ok(family)
}

fn build_target(params: &FamilyParams, normalize: bool) -> Result<GenTarget, CliError> {
    if params.family.as_deref() == Some("horodecki-rho-a") {
        let a = need(params.a, "a", "horodecki-rho-a")?;
        let m = if normalize {
            families::horodecki_rho_a_normalized(a)
        } else {
            families::horodecki_rho_a(a)
        }
        .map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(GenTarget::Matrix(m));
    }
    let family = build_family(params)?;
    let state = family.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let state = if normalize {
        state
            .normalize()
            .map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        state
    };
    Ok(GenTarget::State(state))
}

fn cmd_gen(args: GenArgs, _tol: f64) -> Result<i32, CliError> {
    match build_target(&args.family, args.normalize)? {
        GenTarget::State(state) => {
            io::write_state(&args.out, &state)?;
            println!(
                "wrote {} state (d={}, trace={}) to {}",
                state.class_name(),
                state.d(),
                state.state_trace(),
                args.out.display()
            );
        }
        GenTarget::Matrix(m) => {
            io::write_matrix(&args.out, &m)?;
            println!(
                "wrote {}x{} matrix (trace={}) to {}",
                m.rows(),
                m.cols(),
                m.trace().re,
                args.out.display()
            );
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CriterionJson {
    verdict: bool,
    min_slack: f64,
    slacks: Vec<(String, f64)>,
}

impl From<&CriterionReport> for CriterionJson {
    fn from(r: &CriterionReport) -> Self {
        CriterionJson {
            verdict: r.verdict,
            min_slack: r.min_slack(),
            slacks: r.slacks.clone(),
        }
    }
}

#[derive(Serialize)]
struct CheckJson {
    class: String,
    d: usize,
    trace: f64,
    positive: CriterionJson,
    ppt: CriterionJson,
    oracle_min_eig: f64,
    oracle_pt_min_eig: f64,
    agreement: bool,
}

fn cmd_check(args: CheckArgs, tol: f64) -> Result<i32, CliError> {
    let state = io::read_state(&args.input)?;
    let positive = state.check_positive(tol);
    let ppt = state.check_ppt(tol);
    let oracle = oracle_verdicts(&state, tol);
    let scale = state.to_density().frobenius_norm();
    let agreement = verdicts_agree(&positive, oracle.positive, oracle.min_eig, scale)
        && verdicts_agree(&ppt, oracle.ppt, oracle.pt_min_eig, scale);

    if args.json {
        let doc = CheckJson {
            class: state.class_name().to_string(),
            d: state.d(),
            trace: state.state_trace(),
            positive: (&positive).into(),
            ppt: (&ppt).into(),
            oracle_min_eig: oracle.min_eig,
            oracle_pt_min_eig: oracle.pt_min_eig,
            agreement,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    } else {
        println!(
            "class: {}  d: {}  trace: {}",
            state.class_name(),
            state.d(),
            state.state_trace()
        );
        println!(
            "positive (analytic): {}  min slack {:+.6e}",
            positive.verdict,
            positive.min_slack()
        );
        println!(
            "ppt      (analytic): {}  min slack {:+.6e}",
            ppt.verdict,
            ppt.min_slack()
        );
        println!(
            "positive (oracle):   {}  min eig   {:+.6e}",
            oracle.positive, oracle.min_eig
        );
        println!(
            "ppt      (oracle):   {}  min eig   {:+.6e}",
            oracle.ppt, oracle.pt_min_eig
        );
        println!("agreement: {agreement}");
    }
    Ok(if agreement {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    })
}

struct GridSpec {
    name: String,
    values: Vec<f64>,
}

fn parse_grid(text: &str) -> Result<GridSpec, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "grid spec must be name:from:to:steps, got {text:?}"
        )));
    }
    let from: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid start {:?}", parts[1])))?;
    let to: f64 = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid end {:?}", parts[2])))?;
    let steps: usize = parts[3]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid step count {:?}", parts[3])))?;
    if steps < 2 || from > to {
        return Err(CliError::Usage(
            "grid needs from <= to and steps >= 2".into(),
        ));
    }
    Ok(GridSpec {
        name: parts[0].to_string(),
        values: linspace(from, to, steps),
    })
}

fn cmd_scan(args: ScanArgs, tol: f64) -> Result<i32, CliError> {
    let grid = parse_grid(&args.param)?;
    // Fill the scanned parameter with the grid start so the base family
    // builds even when its flag was omitted.
    let mut params = args.family.clone();
    match grid.name.as_str() {
        "p" => params.p = params.p.or(Some(grid.values[0])),
        "lambda" => params.lambda = params.lambda.or(Some(grid.values[0])),
        "alpha" => params.alpha = params.alpha.or(Some(grid.values[0])),
        "b" => params.b = params.b.or(Some(grid.values[0])),
        "c" => params.c = params.c.or(Some(grid.values[0])),
        "gamma" => params.gamma = params.gamma.or(Some(grid.values[0])),
        "s" => params.s = params.s.or(Some(grid.values[0])),
        _ => {}
    }
    let family = build_family(&params)?;
    let rows = scan_family_grid(&family, &grid.name, &grid.values, tol).map_err(CliError::Usage)?;
    std::fs::write(&args.out, scan_rows_to_csv(&rows)).map_err(|e| CliError::Io(e.to_string()))?;

    let flip = rows
        .windows(2)
        .find(|w| w[0].analytic_ppt != w[1].analytic_ppt)
        .map(|w| w[1].param_value);
    let disagreements = rows.iter().filter(|r| !r.agreement).count();
    println!(
        "scanned {} points of {}:{}; ppt flip at {}; analytic threshold {}; {} disagreement(s)",
        rows.len(),
        family.name(),
        grid.name,
        flip.map_or("none".to_string(), |v| v.to_string()),
        family
            .ppt_threshold()
            .map_or("n/a".to_string(), |v| v.to_string()),
        disagreements
    );
    Ok(if disagreements == 0 {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    })
}

fn cmd_project(args: ProjectArgs) -> Result<i32, CliError> {
    let sigma = io::read_matrix(&args.input)?;
    let state = match args.class.as_str() {
        "isotropic" => project_isotropic(&sigma, args.d)
            .map(ClassState::Isotropic)
            .map_err(|e| CliError::Usage(e.to_string()))?,
        "werner" => project_werner(&sigma, args.d)
            .map(ClassState::Werner)
            .map_err(|e| CliError::Usage(e.to_string()))?,
        other => {
            return Err(CliError::Usage(format!(
                "class must be isotropic or werner, got {other:?}"
            )))
        }
    };
    io::write_state(&args.out, &state)?;
    if args.report_distance {
        let distance = sigma.sub(&state.to_density()).frobenius_norm();
        println!("projection distance: {distance}");
    }
    println!(
        "projected onto {} class, trace {}",
        state.class_name(),
        state.state_trace()
    );
    Ok(EXIT_OK)
}

fn write_certificate_report(
    out: &Path,
    cert: &DecompositionCertificate,
    state: &ClassState,
) -> Result<(), CliError> {
    let check = verify_certificate(cert, state)?;
    io::write_certificate(out, cert)?;
    println!(
        "claim {}: {} terms, residual {:.3e}, max term rank {}, sound: {}",
        cert.claim.as_str(),
        cert.terms.len(),
        cert.residual,
        check.max_term_rank,
        check.sound
    );
    Ok(())
}

fn cmd_certify(args: CertifyArgs, tol: f64) -> Result<i32, CliError> {
    let state = io::read_state(&args.input)?;
    match (args.cone.as_str(), &state) {
        ("sep", ClassState::Isotropic(s)) => {
            match separability_search(s, args.samples, args.seed, args.eps)? {
                Some(cert) => write_certificate_report(&args.out, &cert, &state)?,
                None => println!(
                    "no separability certificate found (samples={}, eps={}); this proves nothing",
                    args.samples, args.eps
                ),
            }
        }
        ("v2", ClassState::Werner(s)) => {
            let cert = v2_certificate_werner(s, tol).map_err(|e| CliError::Usage(e.to_string()))?;
            write_certificate_report(&args.out, &cert, &state)?;
        }
        ("v2", ClassState::Isotropic(s)) => {
            match v2_membership_search(s, args.samples, args.seed, args.eps)? {
                Some(cert) => write_certificate_report(&args.out, &cert, &state)?,
                None => println!(
                    "no V2 certificate found (samples={}, eps={}); this proves nothing",
                    args.samples, args.eps
                ),
            }
        }
        ("vup2", ClassState::Isotropic(s)) => {
            let cert = v_upper2_certificate(s, tol).map_err(|e| CliError::Usage(e.to_string()))?;
            write_certificate_report(&args.out, &cert, &state)?;
        }
        ("vup2", ClassState::Werner(_)) => {
            return Err(CliError::Usage(
                "vup2 certificates are defined for isotropic-like states".into(),
            ))
        }
        ("sep", ClassState::Werner(_)) => {
            return Err(CliError::Usage(
                "sep certificates are defined for isotropic-like states \
                 (project the state into the isotropic-like class first)"
                    .into(),
            ))
        }
        (other, _) => {
            return Err(CliError::Usage(format!(
                "cone must be sep, v2 or vup2, got {other:?}"
            )))
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct MapPointJson {
    map: String,
    class: String,
    d: usize,
    positive: bool,
    ppt: bool,
    map_min_eig: f64,
    conclusion: String,
    prerequisites: Vec<String>,
}

fn map_point(
    map_name: &str,
    state: &ClassState,
    descriptor: StateDescriptor,
    tol: f64,
    probe: &ProbeOptions,
) -> Result<MapPointJson, CliError> {
    let builtin = BuiltinMap::parse(map_name)
        .ok_or_else(|| CliError::Usage(format!("unknown map {map_name:?}")))?;
    let phi = builtin_map(builtin, state.d()).map_err(|e| CliError::Usage(e.to_string()))?;
    let positive = state.check_positive(tol).verdict;
    let ppt = state.check_ppt(tol).verdict;
    let (min_eig, conclusion, prerequisites) = if probe.atomicity {
        let ClassState::Isotropic(iso) = state else {
            return Err(CliError::Usage(
                "the atomicity probe needs an isotropic-like state".into(),
            ));
        };
        let report = maps::atomicity_evidence(
            &phi,
            iso,
            descriptor,
            tol,
            probe.samples,
            probe.seed,
            probe.eps,
        )
        .map_err(|e| CliError::Usage(e.to_string()))?;
        (
            report.min_eigenvalue,
            report.conclusion.as_str().to_string(),
            report.prerequisites,
        )
    } else if positive {
        let report = maps::indecomposability_evidence(&phi, state, descriptor, tol)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        (
            report.min_eigenvalue,
            report.conclusion.as_str().to_string(),
            report.prerequisites,
        )
    } else {
        let mapped = maps::apply_map(&state.to_density(), &phi)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let eig = crate::linalg::hermitian_eigenvalues(&mapped)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        (eig[0], "NOT_POSITIVE".to_string(), vec![])
    };
    Ok(MapPointJson {
        map: map_name.to_string(),
        class: state.class_name().to_string(),
        d: state.d(),
        positive,
        ppt,
        map_min_eig: min_eig,
        conclusion,
        prerequisites,
    })
}

fn cmd_map(args: MapArgs, tol: f64) -> Result<i32, CliError> {
    let probe = ProbeOptions {
        atomicity: args.atomicity,
        samples: args.samples,
        seed: args.seed,
        eps: args.eps,
    };
    match (&args.input, &args.scan) {
        (Some(path), None) => {
            let state = io::read_state(path)?;
            let point = map_point(
                &args.map_name,
                &state,
                StateDescriptor::File(path.display().to_string()),
                tol,
                &probe,
            )?;
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&point).expect("serializable")
                );
            } else {
                println!(
                    "map {} on {} (d={}): min eig {:+.6e}, positive {}, ppt {}, conclusion {}",
                    point.map,
                    point.class,
                    point.d,
                    point.map_min_eig,
                    point.positive,
                    point.ppt,
                    point.conclusion
                );
                if !point.prerequisites.is_empty() {
                    println!("verified prerequisites: {}", point.prerequisites.join(", "));
                }
            }
            Ok(EXIT_OK)
        }
        (None, Some(scan)) => {
            let grid = parse_grid(scan)?;
            let mut params = args.family.clone();
            match grid.name.as_str() {
                "p" => params.p = params.p.or(Some(grid.values[0])),
                "lambda" => params.lambda = params.lambda.or(Some(grid.values[0])),
                "alpha" => params.alpha = params.alpha.or(Some(grid.values[0])),
                "gamma" => params.gamma = params.gamma.or(Some(grid.values[0])),
                "s" => params.s = params.s.or(Some(grid.values[0])),
                "b" => params.b = params.b.or(Some(grid.values[0])),
                "c" => params.c = params.c.or(Some(grid.values[0])),
                _ => {}
            }
            let family = build_family(&params)?;
            let mut csv =
                String::from("param_name,param_value,positive,ppt,map_min_eig,conclusion\n");
            for &value in &grid.values {
                let point_family = family
                    .with_param(&grid.name, value)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let state = point_family
                    .build()
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let descriptor = StateDescriptor::Family(point_family.descriptor());
                let point = map_point(&args.map_name, &state, descriptor, tol, &probe)?;
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    grid.name,
                    value,
                    point.positive,
                    point.ppt,
                    point.map_min_eig,
                    point.conclusion
                ));
            }
            match &args.out {
                Some(path) => {
                    std::fs::write(path, csv).map_err(|e| CliError::Io(e.to_string()))?;
                    println!(
                        "wrote {} scan points to {}",
                        grid.values.len(),
                        path.display()
                    );
                }
                None => print!("{csv}"),
            }
            Ok(EXIT_OK)
        }
        _ => Err(CliError::Usage(
            "map needs exactly one of --in <state.json> or --scan with --family".into(),
        )),
    }
}
