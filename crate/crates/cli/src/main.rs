use std::path::PathBuf;
use std::process::ExitCode;

use calkit_cli::config::{Command, RawConfig, RunConfig, SEED_ENV};
use calkit_cli::{exit_code_for, render, run, EXIT_CONFIG, EXIT_FAIL, EXIT_INTERNAL, EXIT_PASS};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "calkit", version)]
#[command(about = "Exact and numeric verification of the SU(1,1) structure of Calogero models")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Cmd {
    /// Commutators, Casimir and canonical-conjugate identities
    AlgebraCheck,
    /// Kernel polynomials of the raising operator
    Kernel,
    /// Coherent-state series and its closed forms
    Coherent,
    /// Scattering eigenvalue equation by finite differences
    ScatterVerify,
    /// Bound-state spectrum by finite differences
    BoundVerify,
}

/// Lists (`--n 2,3`) are accepted wherever a grid makes sense. Rationals use
/// `p/q`.
#[derive(Args)]
struct Opts {
    /// an | bn
    #[arg(long, global = true)]
    model: Option<String>,
    /// Also run the B_N grid
    #[arg(long, global = true)]
    bn: bool,
    #[arg(long, global = true)]
    n: Option<String>,
    #[arg(long, global = true)]
    alpha: Option<String>,
    #[arg(long, global = true)]
    lambda: Option<String>,
    #[arg(long, global = true)]
    lambda1: Option<String>,
    /// doubled | single
    #[arg(long, global = true)]
    bn_pair_coefficient: Option<String>,
    /// Kernel degrees
    #[arg(long, global = true)]
    m: Option<String>,
    /// Squared momenta
    #[arg(long, global = true)]
    ksq: Option<String>,
    /// Series truncation order
    #[arg(long, global = true)]
    order: Option<String>,
    /// Truncation order for the closed-form comparisons
    #[arg(long, global = true)]
    bessel_order: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Random polynomials per parameter point
    #[arg(long, global = true)]
    samples: Option<String>,
    #[arg(long, global = true)]
    max_degree: Option<String>,
    /// Tower levels n checked on r^{2n} P_m
    #[arg(long, global = true)]
    levels: Option<String>,
    /// Sampled points per numeric check
    #[arg(long, global = true)]
    points: Option<String>,
    #[arg(long, global = true)]
    box_lo: Option<String>,
    #[arg(long, global = true)]
    box_hi: Option<String>,
    /// Minimum distance from singular hyperplanes
    #[arg(long, global = true)]
    delta: Option<String>,
    /// 2 | 4
    #[arg(long, global = true)]
    fd_order: Option<String>,
    /// FD step relative to the local separation
    #[arg(long, global = true)]
    fd_step: Option<String>,
    #[arg(long, global = true)]
    tol_fd: Option<String>,
    #[arg(long, global = true)]
    tol_sf: Option<String>,
    #[arg(long, global = true)]
    tol_ratio: Option<String>,
    /// Add checks that are expected to fail
    #[arg(long, global = true)]
    negative_controls: bool,
    /// json | csv | text
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat key=value file mirroring the flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

impl Opts {
    fn to_raw(&self) -> Result<RawConfig, calkit_cli::ConfigError> {
        let mut raw = RawConfig::new();
        let pairs: [(&str, &Option<String>); 24] = [
            ("model", &self.model),
            ("n", &self.n),
            ("alpha", &self.alpha),
            ("lambda", &self.lambda),
            ("lambda1", &self.lambda1),
            ("bn-pair-coefficient", &self.bn_pair_coefficient),
            ("m", &self.m),
            ("ksq", &self.ksq),
            ("order", &self.order),
            ("bessel-order", &self.bessel_order),
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("max-degree", &self.max_degree),
            ("levels", &self.levels),
            ("points", &self.points),
            ("box-lo", &self.box_lo),
            ("box-hi", &self.box_hi),
            ("delta", &self.delta),
            ("fd-order", &self.fd_order),
            ("fd-step", &self.fd_step),
            ("tol-fd", &self.tol_fd),
            ("tol-sf", &self.tol_sf),
            ("tol-ratio", &self.tol_ratio),
            ("format", &self.format),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                raw.set(k, v.as_str())?;
            }
        }
        if self.bn {
            raw.set("bn", "true")?;
        }
        if self.negative_controls {
            raw.set("negative-controls", "true")?;
        }
        if let Some(p) = &self.out {
            raw.set("out", p.to_string_lossy())?;
        }
        Ok(raw)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::AlgebraCheck => Command::AlgebraCheck,
        Cmd::Kernel => Command::Kernel,
        Cmd::Coherent => Command::Coherent,
        Cmd::ScatterVerify => Command::ScatterVerify,
        Cmd::BoundVerify => Command::BoundVerify,
    };
    let code = match execute(command, &cli.opts) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("calkit: {msg}");
            code
        }
    };
    ExitCode::from(code as u8)
}

fn execute(command: Command, opts: &Opts) -> Result<i32, (i32, String)> {
    let config_err = |e: calkit_cli::ConfigError| (EXIT_CONFIG, format!("config error: {e}"));
    let flags = opts.to_raw().map_err(config_err)?;
    let file = match &opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| (EXIT_CONFIG, format!("config error: cannot read {}: {e}", path.display())))?;
            Some(RawConfig::parse_file(&text).map_err(config_err)?)
        }
        None => None,
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    let cfg = RunConfig::resolve(command, &flags, file.as_ref(), env_seed.as_deref()).map_err(config_err)?;
    let format = cfg.format;
    let out = cfg.out.clone();
    let envelope = run(cfg).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let text = render(&envelope, format);
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| (EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    for c in envelope.failures() {
        eprintln!("calkit: FAIL {} {:?}", c.name, c.params);
    }
    Ok(if envelope.pass { EXIT_PASS } else { EXIT_FAIL })
}
