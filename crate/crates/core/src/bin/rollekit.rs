use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rollekit::cli::{
    cmd_correct, cmd_reproduce, cmd_solve, parse_node_exprs, parse_node_list,
    resolve_output_dir, BranchSelection, CliError, ReproduceTarget, RunConfig,
};

#[derive(Parser)]
#[command(name = "rollekit", version, about = "Rolle-function recovery for Lagrange interpolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Seed and integrate every Rolle branch, writing trajectories and a summary.
    Solve(RunArgs),
    /// Solve, then build the polynomial-corrected approximation.
    Correct(RunArgs),
    /// Re-run a canonical example and check its reference values.
    Reproduce {
        #[arg(value_enum)]
        which: Which,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Example1,
    Example2,
    Application,
}

#[derive(Args)]
struct RunArgs {
    /// Function of x, e.g. "exp(x)*sin(x)".
    #[arg(long)]
    function: String,
    /// Comma-separated decimal nodes.
    #[arg(long, required_unless_present = "nodes_expr", conflicts_with = "nodes_expr")]
    nodes: Option<String>,
    /// Comma-separated constant expressions, e.g. "0,2,3*pi/2".
    #[arg(long)]
    nodes_expr: Option<String>,
    #[arg(long, default_value_t = 1e-5)]
    xz: f64,
    #[arg(long, default_value_t = 5e-5)]
    step: f64,
    /// Degree of the least-squares fit to the Rolle term.
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Branch number (1-based) or `all`. Defaults to `all` for solve and 1 for correct.
    #[arg(long)]
    branch: Option<String>,
    /// Newton-project xi onto the remainder identity after each step.
    #[arg(long)]
    polish: bool,
    /// Output directory; ROLLEKIT_OUT takes precedence when set.
    #[arg(long, default_value = "rollekit-out")]
    out: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    plots: bool,
}

impl RunArgs {
    fn into_config(self, default_branch: BranchSelection) -> Result<RunConfig, CliError> {
        let nodes = match (&self.nodes, &self.nodes_expr) {
            (Some(list), _) => parse_node_list(list)?,
            (None, Some(exprs)) => parse_node_exprs(exprs)?,
            (None, None) => unreachable!("clap requires one of the node flags"),
        };
        let branch = match self.branch.as_deref() {
            Some(text) => text.parse()?,
            None => default_branch,
        };
        Ok(RunConfig {
            function_text: self.function,
            nodes,
            x_z: self.xz,
            step: self.step,
            fit_degree: self.degree,
            branch,
            polish: self.polish,
            output_dir: resolve_output_dir(&self.out),
            emit_plots: self.plots,
        })
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve(args) => {
            let cfg = args.into_config(BranchSelection::All)?;
            let out = cmd_solve(&cfg)?;
            for b in &out.summary.branches {
                println!(
                    "branch {}: xi_z = {:.6}, {} samples, max |reconstructed - true| = {:.3e}",
                    b.branch, b.seed.xi_z, b.samples, b.max_reconstruction_diff
                );
            }
            println!("wrote {}", cfg.output_dir.join("summary.json").display());
            Ok(0)
        }
        Command::Correct(args) => {
            let cfg = args.into_config(BranchSelection::One(1))?;
            let report = cmd_correct(&cfg)?;
            for c in &report.corrections {
                println!(
                    "branch {}: max |f - P_n| = {:.4e}, max |f - corrected| = {:.4e} ({:.1}x)",
                    c.branch.map_or("-".to_owned(), |k| k.to_string()),
                    c.result.max_err_before,
                    c.result.max_err_after,
                    c.result.improvement_factor
                );
            }
            println!("wrote {}", cfg.output_dir.join("correction.json").display());
            Ok(0)
        }
        Command::Reproduce { which } => {
            let target = match which {
                Which::Example1 => ReproduceTarget::Example1,
                Which::Example2 => ReproduceTarget::Example2,
                Which::Application => ReproduceTarget::Application,
            };
            cmd_reproduce(target, std::io::stdout().lock())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
