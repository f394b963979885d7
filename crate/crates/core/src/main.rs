use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pdgeom::config::{load_file, resolve_spec, FileConfig};
use pdgeom::error::Error;
use pdgeom::pipeline::{run, RunConfig, Stage};
use pdgeom::report::{profile_csv, table_csv};

/// Numerical verification of curvature, fibration, and harmonic-form
/// identities on the homogeneous quotients G/V over G/K for so(p,2q) and
/// sp(m,n).
#[derive(Parser)]
#[command(name = "pdgeom", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the algebra, canonical basis, and structure tensor
    Algebra(StageArgs),
    /// Verify the structure-constant identities
    Identities(StageArgs),
    /// Survey base-space curvature and fit the reference table
    Curvature(StageArgs),
    /// Check totally geodesic fibers and Killing fiber fields
    Fibration(StageArgs),
    /// Check the pointwise harmonic-form algebra
    Harmonic(StageArgs),
    /// Radial Hessian comparison checks
    Comparison(StageArgs),
    /// Stress-energy coercivity and growth bookkeeping
    Coercivity(StageArgs),
    /// Run every stage and write the full report
    Verify(StageArgs),
}

impl Command {
    fn split(self) -> (Stage, StageArgs) {
        match self {
            Command::Algebra(a) => (Stage::Algebra, a),
            Command::Identities(a) => (Stage::Identities, a),
            Command::Curvature(a) => (Stage::Curvature, a),
            Command::Fibration(a) => (Stage::Fibration, a),
            Command::Harmonic(a) => (Stage::Harmonic, a),
            Command::Comparison(a) => (Stage::Comparison, a),
            Command::Coercivity(a) => (Stage::Coercivity, a),
            Command::Verify(a) => (Stage::All, a),
        }
    }
}

#[derive(Args)]
struct StageArgs {
    /// JSON config file, e.g. {"family":"so","p":2,"q":2,"xi":[1,2,3]}
    #[arg(long)]
    config: Option<PathBuf>,
    /// algebra family: so or sp
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// comma-separated torus coefficients for xi (default 1,2,...,rank)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    /// output directory (default $PDGEOM_OUT_DIR, then ./pdgeom-out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// multiply every tolerance by this factor
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    /// 2-planes sampled by the curvature survey
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// gradient restarts per curvature extremum
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    /// random radial directions for the comparison stage
    #[arg(long, default_value_t = 200)]
    directions: usize,
    /// random frames for the stress-energy dual-route check
    #[arg(long, default_value_t = 1000)]
    frames: usize,
    /// random forms for the horizontality batch
    #[arg(long, default_value_t = 1000)]
    forms: usize,
    /// suppress the human-readable summary
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stage, args) = cli.command.split();
    match execute(stage, &args) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("pdgeom: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::InvalidSpec(_)
        | Error::CentralizerTooLarge { .. }
        | Error::XiZero
        | Error::XiNotInIsotropy(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
        _ => 1,
    }
}

fn execute(stage: Stage, args: &StageArgs) -> Result<bool, Error> {
    let file = match &args.config {
        Some(path) => load_file(path)?,
        None => FileConfig::default(),
    };
    let spec = resolve_spec(
        &file,
        args.family.as_deref(),
        args.p,
        args.q,
        args.m,
        args.n,
    )?;
    for warning in spec.validate()? {
        eprintln!("pdgeom: warning: {warning}");
    }
    let mut cfg = RunConfig::new(spec);
    cfg.xi = args.xi.clone().or(file.xi);
    cfg.seed = args.seed.or(file.seed).unwrap_or(0);
    cfg.tol_scale = args.tol_scale;
    cfg.samples = args.samples;
    cfg.restarts = args.restarts;
    cfg.directions = args.directions;
    cfg.frames = args.frames;
    cfg.forms = args.forms;

    let out_dir = args
        .out
        .clone()
        .or_else(|| std::env::var_os("PDGEOM_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("pdgeom-out"));

    let output = run(&cfg, stage)?;

    std::fs::create_dir_all(&out_dir)?;
    let report_path = out_dir.join("report.json");
    output.report.write_json(&report_path)?;
    let mut artifacts = vec![report_path.display().to_string()];

    if matches!(stage, Stage::Algebra | Stage::All) {
        let path = out_dir.join("algebra.json");
        let mut text = serde_json::to_string_pretty(&output.algebra_doc)?;
        text.push('\n');
        std::fs::write(&path, text)?;
        artifacts.push(path.display().to_string());
    }
    if let Some(fit) = &output.fit {
        let path = out_dir.join("table1.csv");
        std::fs::write(&path, table_csv(&[(spec.type_label(), fit.clone())]))?;
        artifacts.push(path.display().to_string());
    }
    if !output.export_profiles.is_empty() {
        let dir = out_dir.join("profiles");
        std::fs::create_dir_all(&dir)?;
        for (i, profile) in output.export_profiles.iter().enumerate() {
            let path = dir.join(format!("dir{i:03}.csv"));
            std::fs::write(&path, profile_csv(profile))?;
            artifacts.push(path.display().to_string());
        }
    }

    if !args.quiet {
        print_summary(&output.report, &artifacts);
    }
    Ok(output.report.overall_pass)
}

fn print_summary(report: &pdgeom::report::VerificationReport, artifacts: &[String]) {
    println!(
        "{} seed {} tol-scale {}",
        report.algebra.label, report.seed, report.tol_scale
    );
    for (section, timing) in report.sections.iter().zip(&report.timings_ms) {
        let status = if section.all_pass() { "pass" } else { "FAIL" };
        println!(
            "  {:<14} {:>2} checks  {}  ({:.1} ms)",
            section.name,
            section.checks.len(),
            status,
            timing.1
        );
        for check in &section.checks {
            if !check.pass {
                println!(
                    "    FAILED {}: value {:.6e} vs tolerance {:.6e} ({})",
                    check.name, check.value, check.tolerance, check.statement
                );
            }
        }
    }
    for section in &report.sections {
        if section.name == "growth" {
            if let Some(text) = section
                .notes
                .as_ref()
                .and_then(|n| n["growth"]["conclusion"].as_str())
            {
                println!("  growth: {text}");
            }
        }
    }
    println!(
        "overall: {}",
        if report.overall_pass { "PASS" } else { "FAIL" }
    );
    for artifact in artifacts {
        println!("wrote {artifact}");
    }
}
