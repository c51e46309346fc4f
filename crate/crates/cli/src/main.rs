use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use flagcollapse::collapse::{
    collapse_to_dim, verify_certificate, CollapseCertificate, CollapseOutcome, Strategy,
};
use flagcollapse::complex::{CliqueComplex, ComplexJson, DEFAULT_FACE_BUDGET, UNBOUNDED};
use flagcollapse::condition::{check_condition, prefilter_condition};
use flagcollapse::experiment::{run_sweep, ExperimentConfig};
use flagcollapse::graph::Graph;
use flagcollapse::homology::{homology_profile, SimplicialComplex};
use flagcollapse::sampler::{p_from_alpha, sample_gnp, SamplerConfig};

#[derive(Parser)]
#[command(
    name = "flagcollapse",
    version,
    about = "Collapse certificates for clique complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge list (`n m` header, then `u v` lines) or complex JSON `{"n", "faces"}`
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Abort clique enumeration beyond this many faces
    #[arg(long, default_value_t = DEFAULT_FACE_BUDGET)]
    face_budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Prefilter,
}

#[derive(Subcommand)]
enum Command {
    /// Collapse to dimension k and write the certificate
    Collapse {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = Strategy::Theorem)]
        strategy: Strategy,
        #[arg(long, value_name = "FILE")]
        cert_out: Option<PathBuf>,
    },
    /// Replay a certificate against a complex
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
    },
    /// Decide the degree condition for parameter k
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Integer homology of a complex
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Sample G(n,p); writes an edge list, or complex JSON for a `.json` path
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
        p: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Run a Monte Carlo sweep
    Experiment {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn load_complex(input: &Input) -> Result<CliqueComplex> {
    let text = read_text(&input.input)?;
    if is_json(&text) {
        let json: ComplexJson = serde_json::from_str(&text).context("parsing complex JSON")?;
        Ok(CliqueComplex::from_json(&json)?)
    } else {
        let g = Graph::parse_edge_list(&text)?;
        Ok(CliqueComplex::with_budget(g, UNBOUNDED, input.face_budget)?)
    }
}

/// Homology accepts any face list, flag or not.
fn load_simplicial(input: &Input) -> Result<SimplicialComplex> {
    let text = read_text(&input.input)?;
    if is_json(&text) {
        let json: ComplexJson = serde_json::from_str(&text).context("parsing complex JSON")?;
        if let Some(f) = json
            .faces
            .iter()
            .find(|f| f.vertices().iter().any(|&v| v as usize >= json.n))
        {
            bail!("face {f} has a vertex outside 0..{}", json.n);
        }
        let mut faces = json.faces;
        // isolated vertices are implicit in n
        faces.extend((0..json.n as u32).map(flagcollapse::Simplex::vertex));
        Ok(SimplicialComplex::from_maximal(&faces))
    } else {
        let g = Graph::parse_edge_list(&text)?;
        Ok(SimplicialComplex::from(&CliqueComplex::with_budget(
            g,
            UNBOUNDED,
            input.face_budget,
        )?))
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string(value)?) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Collapse {
            input,
            k,
            strategy,
            cert_out,
        } => {
            let c = load_complex(&input)?;
            match collapse_to_dim(&c, k, strategy)? {
                CollapseOutcome::Success(cert) => {
                    if let Some(path) = cert_out {
                        fs::write(&path, serde_json::to_string_pretty(&cert)?)
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    print_json(&json!({
                        "status": "success",
                        "steps": cert.steps.len(),
                        "final_dim": cert.final_dim,
                        "fingerprint": cert.fingerprint,
                    }))?;
                    Ok(ExitCode::SUCCESS)
                }
                CollapseOutcome::Failure { witness } => {
                    print_json(&json!({ "status": "failure", "witness": witness }))?;
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify { input, cert } => {
            let c = load_complex(&input)?;
            let cert: CollapseCertificate =
                serde_json::from_str(&read_text(&cert)?).context("parsing certificate JSON")?;
            match verify_certificate(&c, &cert) {
                Ok(v) => {
                    print_json(&json!({ "valid": true, "final_dim": v.final_dim }))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    let index = match &e {
                        flagcollapse::error::VerifyError::InvalidStep { index, .. } => Some(*index),
                        _ => None,
                    };
                    print_json(&json!({ "valid": false, "step": index, "error": e.to_string() }))?;
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Check { input, k, mode } => {
            let c = load_complex(&input)?;
            match mode {
                Mode::Exact => print_json(&check_condition(&c, k))?,
                Mode::Prefilter => print_json(&prefilter_condition(&c, k))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { input, max_dim } => {
            let s = load_simplicial(&input)?;
            let max_dim = max_dim.unwrap_or_else(|| s.dim().unwrap_or(0));
            print_json(&homology_profile(&s, max_dim)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            n,
            p,
            alpha,
            seed,
            out,
        } => {
            let p = match (p, alpha) {
                (Some(p), _) => p,
                (None, Some(a)) => p_from_alpha(n, a)?,
                (None, None) => bail!("one of --p or --alpha is required"),
            };
            let g = sample_gnp(&SamplerConfig::new(n, p, seed)?)?;
            let text = if out.extension().is_some_and(|e| e == "json") {
                let c = CliqueComplex::new(g, UNBOUNDED)?;
                serde_json::to_string_pretty(&c.to_json())?
            } else {
                g.to_edge_list()
            };
            fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment {
            config,
            out_dir,
            workers,
        } => {
            let cfg: ExperimentConfig =
                serde_json::from_str(&read_text(&config)?).context("parsing experiment config")?;
            let result = run_sweep(&cfg, workers)?;
            result.write_to(&out_dir)?;
            print_json(&result.cells)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
