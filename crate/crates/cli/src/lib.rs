//! The `commtop` command line: exact table derivations, splitting checks,
//! persistence runs on sampled spaces and randomized property checks.
//!
//! Every command returns an [`Outcome`]; reports are JSON with sorted keys
//! and carry the crate version, the seed and the full configuration.

pub mod spaces;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use commtop::algebra::Field;
use commtop::group::{geodesic_dist, UnitQuaternion};
use commtop::homspace::{
    enumerate_sectors, path_to_identity, sample_hom_zn_su2, sector, sector_section, GroupPresentation,
};
use commtop::ledger::{derive_and_compare, verify_splitting, Pipeline};
use commtop::ndr::{property_suite, SuiteConfig};
use commtop::persistence::{run_persistence, Filtration, PersistenceError};

use spaces::{Space, SpaceRun};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Largest commutator residual allowed along a path to the identity.
pub const PATH_TOL: f64 = 1e-11;
/// Endpoint agreement for paths to the identity.
pub const ENDPOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "commtop", version, about = "Commuting tuples in SU(2): tables, splittings, persistence and NDR checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rederive a stored table and diff against it.
    Derive {
        /// hom-z2, hom-z3, hom-zxf2 or x3-mv
        pipeline: String,
    },
    /// Run derivations and splitting checks, one JSON document per line.
    Verify {
        /// Restrict to one pipeline.
        pipeline: Option<String>,
        /// Field characteristics for the splitting checks, 0 for Q.
        #[arg(long, value_delimiter = ',', default_value = "0,2,3")]
        fields: Vec<u64>,
    },
    /// Sample a space and compute plateau Betti numbers over several fields.
    Persist(PersistArgs),
    /// Randomized checks of the NDR data on SU(2).
    NdrCheck {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Paths to the trivial homomorphism for sampled commuting tuples.
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
    /// Determinant sectors of Hom(π, O(n)) for a presentation file.
    Sectors {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        matrix_size: usize,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct PersistArgs {
    #[arg(long)]
    pub space: Space,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub landmarks: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub fields: Vec<u64>,
    /// Homology is reported in degrees below this.
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long)]
    pub max_scale: Option<f64>,
    /// Cap on the number of simplices.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Distance from the two circles, for ei-fiber.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Tuple length, for hom-zn.
    #[arg(long)]
    pub n: Option<usize>,
    /// Use the Rips filtration on landmarks instead of the witness one.
    #[arg(long)]
    pub rips: bool,
    /// Witness parameter ν.
    #[arg(long)]
    pub nu: Option<usize>,
}

/// Exit code and report text of a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn document(command: &str, seed: Option<u64>, config: Value, status: &str, report: Value) -> String {
    let doc = json!({
        "command": command,
        "version": VERSION,
        "seed": seed,
        "config": config,
        "status": status,
        "report": report,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Persist(_)) {
        return Err(UsageError("--format csv is only available for persist".into()));
    }
    match &cli.command {
        Command::Derive { pipeline } => derive(pipeline),
        Command::Verify { pipeline, fields } => verify(pipeline.as_deref(), fields),
        Command::Persist(args) => persist(args, cli.format),
        Command::NdrCheck { trials, seed } => ndr_check(*trials, *seed),
        Command::Paths { n, samples, seed, steps } => paths(*n, *samples, *seed, *steps),
        Command::Sectors { file, matrix_size } => sectors(file, *matrix_size),
    }
}

fn parse_pipeline(s: &str) -> Result<Pipeline, UsageError> {
    s.parse()
        .map_err(|_| UsageError(format!("unknown pipeline {s:?}, expected hom-z2, hom-z3, hom-zxf2 or x3-mv")))
}

pub fn derive(pipeline: &str) -> Result<Outcome, UsageError> {
    let p = parse_pipeline(pipeline)?;
    let report = derive_and_compare(p);
    let code = if report.equal { EXIT_OK } else { EXIT_MISMATCH };
    let status = if report.equal { "ok" } else { "mismatch" };
    Ok(Outcome {
        code,
        body: document("derive", None, json!({ "pipeline": p }), status, to_value(&report)),
    })
}

pub fn verify(pipeline: Option<&str>, fields: &[u64]) -> Result<Outcome, UsageError> {
    let pipelines = match pipeline {
        Some(s) => vec![parse_pipeline(s)?],
        None => Pipeline::ALL.to_vec(),
    };
    let fields: Vec<Field> = fields
        .iter()
        .map(|&c| Field::from_characteristic(c).map_err(|e| UsageError(e.to_string())))
        .collect::<Result<_, _>>()?;

    let mut lines = Vec::new();
    let mut all_equal = true;
    for p in pipelines {
        let r = derive_and_compare(p);
        all_equal &= r.equal;
        let mut v = to_value(&r);
        v["kind"] = json!("derivation");
        v["version"] = json!(VERSION);
        lines.push(v);
    }
    if pipeline.is_none() {
        for n in 1..=3 {
            for &f in &fields {
                let r = verify_splitting(n, f).map_err(|e| UsageError(e.to_string()))?;
                all_equal &= r.equal;
                let mut v = to_value(&r);
                v["kind"] = json!("splitting");
                v["version"] = json!(VERSION);
                lines.push(v);
            }
        }
    }
    let mut body = String::new();
    for v in lines {
        body.push_str(&serde_json::to_string(&v).expect("json"));
        body.push('\n');
    }
    Ok(Outcome {
        code: if all_equal { EXIT_OK } else { EXIT_MISMATCH },
        body,
    })
}

/// Defaults for the space with command-line overrides applied.
pub fn persist_config(args: &PersistArgs) -> Result<SpaceRun, UsageError> {
    let mut run = spaces::defaults(args.space, args.seed);
    if let Some(p) = args.points {
        run.points = p;
    }
    if let Some(d) = args.delta {
        run.delta = d;
    }
    if let Some(n) = args.n {
        run.n = n;
    }
    let cfg = &mut run.persist;
    if let Some(k) = args.landmarks {
        cfg.landmarks = k;
    }
    if let Some(d) = args.max_dim {
        cfg.max_dim = d;
    }
    if let Some(s) = args.max_scale {
        cfg.max_scale = s;
    }
    if let Some(b) = args.budget {
        if b == 0 {
            return Err(UsageError("--budget must be positive".into()));
        }
        cfg.budget = b;
    }
    if args.rips {
        cfg.filtration = Filtration::Rips;
    } else if let Some(nu) = args.nu {
        cfg.filtration = Filtration::Witness { nu };
    }
    cfg.fields = args.fields.clone();
    if cfg.fields.is_empty() || cfg.fields.iter().any(|&p| !matches!(Field::from_characteristic(p), Ok(Field::Prime(_)))) {
        return Err(UsageError("--fields must list primes".into()));
    }
    if !(cfg.max_scale > 0.0) {
        return Err(UsageError("--max-scale must be positive".into()));
    }
    Ok(run)
}

pub fn persist(args: &PersistArgs, format: Format) -> Result<Outcome, UsageError> {
    let run = persist_config(args)?;
    let config = to_value(&run);
    let cloud = spaces::sample(&run).map_err(UsageError)?;
    match run_persistence(&cloud, &run.persist) {
        Ok(r) => {
            if format == Format::Csv {
                let mut body = String::new();
                for (i, b) in r.barcodes.iter().enumerate() {
                    let csv = b.to_csv().map_err(|e| UsageError(e.to_string()))?;
                    // one header for the whole file
                    body.push_str(if i == 0 { &csv } else { csv.split_once('\n').map_or("", |x| x.1) });
                }
                return Ok(Outcome { code: EXIT_OK, body });
            }
            let report = json!({
                "space": r.space,
                "points": r.points,
                "covering_radius": r.covering_radius,
                "simplices": r.simplices,
                "betti": r.betti(),
                "flagged_degrees": r.torsion.flagged_degrees(),
                "torsion": to_value(&r.torsion),
                "barcodes": to_value(&r.barcodes),
            });
            Ok(Outcome {
                code: EXIT_OK,
                body: document("persist", Some(args.seed), config, "ok", report),
            })
        }
        Err(e) => {
            let (code, status) = match e {
                PersistenceError::Unstable { .. } => (EXIT_UNSTABLE, "unstable"),
                PersistenceError::Budget { .. } => (EXIT_BUDGET, "budget"),
                _ => return Err(UsageError(e.to_string())),
            };
            Ok(Outcome {
                code,
                body: document("persist", Some(args.seed), config, status, json!({ "error": e.to_string() })),
            })
        }
    }
}

pub fn ndr_check(trials: usize, seed: u64) -> Result<Outcome, UsageError> {
    if trials == 0 {
        return Err(UsageError("--trials must be positive".into()));
    }
    let config = SuiteConfig::scaled(trials, seed);
    let report = property_suite(&config);
    let ok = report.failures == 0;
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_MISMATCH },
        body: document(
            "ndr-check",
            Some(seed),
            to_value(&config),
            if ok { "ok" } else { "failures" },
            to_value(&report),
        ),
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PathReport {
    pub samples: usize,
    pub max_residual: f64,
    pub max_start_error: f64,
    pub max_end_error: f64,
    pub failures: usize,
    pub first_failure: Option<String>,
}

pub fn path_report(n: usize, samples: usize, seed: u64, steps: usize) -> Result<PathReport, UsageError> {
    let points = sample_hom_zn_su2(n, samples, seed).map_err(|e| UsageError(e.to_string()))?;
    let one = UnitQuaternion::identity();
    let mut r = PathReport::default();
    for (k, hp) in points.iter().enumerate() {
        r.samples += 1;
        let problem = match path_to_identity(hp, steps) {
            Err(e) => Some(e.to_string()),
            Ok(path) => {
                let residual = path.iter().map(|p| p.residual).fold(0.0, f64::max);
                let start = path[0].images.iter().map(|q| geodesic_dist(q, &one)).fold(0.0, f64::max);
                let last = path.last().expect("path has steps");
                let end = last.images.iter().zip(&hp.images).map(|(a, b)| geodesic_dist(a, b)).fold(0.0, f64::max);
                r.max_residual = r.max_residual.max(residual);
                r.max_start_error = r.max_start_error.max(start);
                r.max_end_error = r.max_end_error.max(end);
                let bad_len = path.len() != steps + 1 || path.iter().any(|p| p.images.len() != n);
                if residual > PATH_TOL || start > ENDPOINT_TOL || end > ENDPOINT_TOL || bad_len {
                    Some(format!("residual {residual:e}, start {start:e}, end {end:e}"))
                } else {
                    None
                }
            }
        };
        if let Some(p) = problem {
            r.failures += 1;
            r.first_failure.get_or_insert(format!("sample {k}: {p}"));
        }
    }
    Ok(r)
}

pub fn paths(n: usize, samples: usize, seed: u64, steps: usize) -> Result<Outcome, UsageError> {
    if n == 0 || steps == 0 {
        return Err(UsageError("--n and --steps must be positive".into()));
    }
    let report = path_report(n, samples, seed, steps)?;
    let ok = report.failures == 0;
    let config = json!({ "n": n, "samples": samples, "steps": steps, "residual_tol": PATH_TOL, "endpoint_tol": ENDPOINT_TOL });
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_MISMATCH },
        body: document("paths", Some(seed), config, if ok { "ok" } else { "failures" }, to_value(&report)),
    })
}

pub fn sectors(file: &std::path::Path, matrix_size: usize) -> Result<Outcome, UsageError> {
    let text = std::fs::read_to_string(file).map_err(|e| UsageError(format!("{}: {e}", file.display())))?;
    let p = GroupPresentation::from_json(&text).map_err(|e| UsageError(e.to_string()))?;
    let labels = enumerate_sectors(&p).map_err(|e| UsageError(e.to_string()))?;
    let mut round_trip = true;
    for w in &labels {
        let back = sector_section(&p, w, matrix_size).and_then(|f| sector(&p, &f));
        round_trip &= back.as_ref() == Ok(w);
    }
    let shown: Vec<String> = labels
        .iter()
        .map(|w| w.bits.iter().map(|b| char::from(b'0' + b)).collect())
        .collect();
    let report = json!({
        "generators": p.generator_count(),
        "relators": p.relators().len(),
        "count": labels.len(),
        "h1_dimension": labels.len().trailing_zeros(),
        "labels": shown,
        "round_trip": round_trip,
    });
    let config = json!({ "file": file.display().to_string(), "matrix_size": matrix_size });
    Ok(Outcome {
        code: if round_trip { EXIT_OK } else { EXIT_MISMATCH },
        body: document("sectors", None, config, if round_trip { "ok" } else { "mismatch" }, report),
    })
}
