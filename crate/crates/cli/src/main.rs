//! `polycert`: JSON front end to the exact machinery.
//!
//! Exit codes: 0 success or feasible, 1 a well-formed negative answer
//! (infeasible, no rational point, a mathematical precondition not met),
//! 2 usage or I/O errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Outcome, RunReport};

#[derive(Parser, Debug)]
#[command(name = "polycert", version, about = "Exact certificates, reductions and ray analysis for polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// Main system with the cubic constraint kept as is.
    Np,
    /// Main system with the cubic constraint lifted to quadratics.
    Quad,
    /// Cubic objective over the linear core.
    Cubic,
    /// Superoptimality problem (maximize z2).
    Superopt,
    /// Homogeneous cone with a cubic objective.
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetName {
    H,
    Tiny,
    Khachiyan,
    Badboy,
    Socp,
    Unlucky,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a hardness instance from a DIMACS 3-CNF, optionally with a witness.
    Reduce {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// `sat`, `always` or `eps:<rational>`.
        #[arg(long)]
        witness: Option<String>,
        /// Where to write the witness point (it is also echoed in the report).
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Exact feasibility check of a point (rational or algebraic).
    Verify {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Grid certificate for a feasible point of a system with bounded linear part.
    Certify {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        point: PathBuf,
        /// Positive integer, or `bound` for the separation bound of the system.
        #[arg(long)]
        delta: String,
        /// Override for the box half-width M.
        #[arg(long = "box")]
        box_m: Option<String>,
        /// Override for the Lipschitz constant L.
        #[arg(long)]
        lipschitz: Option<String>,
    },
    /// Check a point against the relaxed system.
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        point: PathBuf,
    },
    /// Emit one of the example systems with its landmark points.
    Gadget {
        #[arg(long, value_enum)]
        name: GadgetName,
        /// gamma for h, N for tiny/khachiyan/badboy, `a,b,c,d` for socp, sigma for unlucky.
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        landmarks: Option<PathBuf>,
    },
    /// Rational point of a separable cubic over a polytope in one or two variables.
    Separable {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        cubic: PathBuf,
    },
    /// Classify the growth of a polynomial along a ray.
    Ray {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        polytope: Option<PathBuf>,
        /// Replace an irrational cubically unbounded ray by a rational one within this distance.
        #[arg(long)]
        rationalize: Option<String>,
    },
    /// Box, Lipschitz and separation bounds.
    Bounds {
        /// Read (n, m, l, d, H) from a system file instead of the flags.
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long = "height")]
        h: Option<String>,
        #[arg(long)]
        loose: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Reduce { .. } => "reduce",
            Command::Verify { .. } => "verify",
            Command::Certify { .. } => "certify",
            Command::Check { .. } => "check",
            Command::Gadget { .. } => "gadget",
            Command::Separable { .. } => "separable",
            Command::Ray { .. } => "ray",
            Command::Bounds { .. } => "bounds",
        }
    }
}

fn dispatch(cmd: &Command, inputs: &mut report::Inputs) -> Result<Outcome, Failure> {
    use commands as c;
    match cmd {
        Command::Reduce { variant, cnf, out, witness, witness_out } => {
            c::reduce(inputs, *variant, cnf, out, witness.as_deref(), witness_out.as_deref())
        }
        Command::Verify { system, point } => c::verify(inputs, system, point),
        Command::Certify { system, point, delta, box_m, lipschitz } => {
            c::certify(inputs, system, point, delta, box_m.as_deref(), lipschitz.as_deref())
        }
        Command::Check { system, delta, point } => c::check(inputs, system, delta, point),
        Command::Gadget { name, param, out, landmarks } => {
            c::gadget(inputs, *name, param.as_deref(), out, landmarks.as_deref())
        }
        Command::Separable { system, cubic } => c::separable(inputs, system, cubic),
        Command::Ray { poly, from, dir, polytope, rationalize } => {
            c::ray(inputs, poly, from, dir, polytope.as_deref(), rationalize.as_deref())
        }
        Command::Bounds { system, n, m, ell, d, h, loose } => {
            c::bounds(inputs, system.as_deref(), [*n, *m, *ell, *d], h.as_deref(), *loose)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = cli.command.name();
    let start = std::time::Instant::now();
    let mut inputs = report::Inputs::new(name);
    let result = dispatch(&cli.command, &mut inputs);
    let timing_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(out) => {
            let code = if out.negative { 1 } else { 0 };
            RunReport::new(name, &inputs, out, timing_ms).print();
            ExitCode::from(code)
        }
        Err(Failure::Negative(msg)) => {
            eprintln!("polycert {name}: {msg}");
            RunReport::new(name, &inputs, Outcome::negative(serde_json::json!({ "error": msg })), timing_ms).print();
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("polycert {name}: {msg}");
            ExitCode::from(2)
        }
    }
}
