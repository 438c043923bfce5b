use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod commands;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "hardcore",
    version,
    about = "Exact occupation ratios, regions and fast implementers for the hard-core model"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel rendering.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write a run manifest to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Z^in, Z^out and their ratio for a rooted graph.
    Ratio {
        /// Graph JSON: a file path, `-` for stdin, or inline JSON.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        lambda: String,
    },
    /// Smallest tree of root degree one with a zero at λ and root ratio -1.
    Zeros {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
    },
    /// Classify f_λ, or a map given as four Gaussian rationals `a b c d`.
    Classify {
        #[arg(long, conflicts_with = "map", required_unless_present = "map")]
        lambda: Option<String>,
        #[arg(long)]
        map: Option<String>,
    },
    /// Cardioid, Shearer disk and exceptional-set verdicts as JSON lines.
    Regions {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        lambda: String,
    },
    /// Search a fast implementer at λ0 and build a tree with ratio within ε of the target.
    Implement {
        #[arg(long)]
        lambda0: String,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        target: String,
        #[arg(long)]
        eps: String,
        /// Maximum vertex count of catalog trees.
        #[arg(long)]
        catalog_size: Option<usize>,
        /// Reuse a certificate instead of searching.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Save the implementer certificate.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Spherical-derivative activity image of the Cayley-tree recursion as binary PGM.
    RenderActivity {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        depth: usize,
        /// `x0,y0,x1,y1`
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
        /// `WxH`
        #[arg(long)]
        px: String,
        #[arg(long)]
        threshold: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Boundary of the cardioid as a CSV polyline of 4096 points.
    RenderCardioid {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certified zeros of the Cayley-tree independence polynomials up to depth n.
    CayleyZeros {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Residual bound as decimal digits.
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    args: Vec<String>,
    seed: u64,
    threads: Option<usize>,
    version: &'static str,
    elapsed_ms: u128,
    outputs: Vec<String>,
    exit_code: u8,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ratio { .. } => "ratio",
        Command::Zeros { .. } => "zeros",
        Command::Classify { .. } => "classify",
        Command::Regions { .. } => "regions",
        Command::Implement { .. } => "implement",
        Command::RenderActivity { .. } => "render-activity",
        Command::RenderCardioid { .. } => "render-cardioid",
        Command::CayleyZeros { .. } => "cayley-zeros",
    }
}

fn run(cli: &Cli, outputs: &mut Vec<String>) -> Result<(), CliError> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Domain(format!("thread pool: {e}")))?;
    }
    let seed = cli.global.seed;
    match &cli.command {
        Command::Ratio { graph, lambda } => commands::ratio(graph, lambda),
        Command::Zeros {
            lambda,
            delta,
            max_vertices,
        } => commands::zeros(lambda, *delta, *max_vertices),
        Command::Classify { lambda, map } => commands::classify(lambda.as_deref(), map.as_deref()),
        Command::Regions { delta, lambda } => commands::regions(lambda, *delta),
        Command::Implement {
            lambda0,
            delta,
            target,
            eps,
            catalog_size,
            certificate,
            certificate_out,
        } => {
            let req = commands::ImplementRequest {
                lambda0,
                delta: *delta,
                target,
                eps,
                catalog_size: *catalog_size,
                certificate: certificate.as_deref(),
                certificate_out: certificate_out.as_deref(),
                seed,
            };
            if let Some(p) = certificate_out {
                outputs.push(p.display().to_string());
            }
            commands::implement(&req)
        }
        Command::RenderActivity {
            d,
            depth,
            rect,
            px,
            threshold,
            out,
        } => {
            outputs.push(out.display().to_string());
            commands::render_activity(*d, *depth, rect, px, *threshold, out)
        }
        Command::RenderCardioid { delta, out } => {
            outputs.push(out.display().to_string());
            commands::render_cardioid(*delta, out)
        }
        Command::CayleyZeros { d, n, digits, out } => {
            outputs.push(out.display().to_string());
            commands::cayley_zeros(*d, *n, *digits, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut outputs = Vec::new();
    let code = match run(&cli, &mut outputs) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    if let Some(path) = &cli.global.manifest {
        let manifest = RunManifest {
            command: command_name(&cli.command).to_string(),
            args: std::env::args().collect(),
            seed: cli.global.seed,
            threads: cli.global.threads,
            version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: start.elapsed().as_millis(),
            outputs,
            exit_code: code,
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write manifest {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
