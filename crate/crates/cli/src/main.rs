mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cyclocat::hopf::HnStructure;
use cyclocat::k0::RingKind;

use commands::{Report, Session};

#[derive(Parser, Debug)]
#[command(name = "cyclocat", version, about = "Graded H_n-modules, their stable categories and Grothendieck rings")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// The integer n >= 2.
    #[arg(long, global = true)]
    n: Option<u64>,
    /// Coefficient field: `q` for the cyclotomic field, `fp:<p>` for F_p.
    #[arg(long, global = true, default_value = "q")]
    field: FieldMode,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Backtracking node budget for ideal searches.
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: usize,
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exhaustive Hopf, spherical and integral checks on the bosonization.
    VerifyHopf,
    /// The two-prime and three-prime example modules.
    Examples,
    /// Class of a module in K0.
    K0 {
        #[arg(long, value_parser = RingKind::from_str)]
        ring: RingKind,
        module: PathBuf,
    },
    /// The gcd of the string classes, compared with the cyclotomic polynomial.
    K0Ideal,
    /// Membership in the ideal I, or in I_k with `--k` (1-based).
    IdealTest {
        #[arg(long)]
        k: Option<usize>,
        module: PathBuf,
    },
    /// Dimensions of all, null-homotopic and stable maps M -> N.
    StableHom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
    },
    /// The stripped module M[r].
    Shift {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        times: i64,
        module: PathBuf,
    },
    /// The cone of a degree-0 intertwiner.
    Cone {
        map: PathBuf,
        /// Remove projective summands from the cone.
        #[arg(long)]
        strip: bool,
    },
    /// Cyclotomic identities for n, or for every n up to `--to`.
    Cyclotomic {
        #[arg(long)]
        to: Option<u64>,
    },
    /// Every acceptance check for n.
    AllChecks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FieldMode {
    Rational,
    Prime(u64),
}

impl FromStr for FieldMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldMode::Rational);
        }
        s.strip_prefix("fp:")
            .and_then(|p| p.parse().ok())
            .map(FieldMode::Prime)
            .ok_or_else(|| format!("unknown field {s:?} (expected q or fp:<prime>)"))
    }
}

fn dispatch<F: cyclocat::arith::Field>(session: &Session<F>, command: &Command) -> Result<Report> {
    match command {
        Command::VerifyHopf => session.verify_hopf(),
        Command::Examples => session.examples(),
        Command::K0 { ring, module } => session.k0(*ring, module),
        Command::K0Ideal => session.k0_ideal(),
        Command::IdealTest { k, module } => session.ideal_test(*k, module),
        Command::StableHom { source, target, degree } => session.stable_hom(source, target, *degree),
        Command::Shift { times, module } => session.shift(*times, module),
        Command::Cone { map, strip } => session.cone(map, *strip),
        Command::Cyclotomic { to } => session.cyclotomic(*to),
        Command::AllChecks => session.all_checks(),
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let n = g.n.ok_or_else(|| anyhow!("--n is required"))?;
    match g.field {
        FieldMode::Rational => {
            let structure = HnStructure::rational(n)?;
            dispatch(&Session::new(structure, g.seed, g.budget), &cli.command)
        }
        FieldMode::Prime(p) => {
            let structure = HnStructure::modular(n, p)
                .with_context(|| format!("field fp:{p} cannot be used with n = {n}"))?;
            dispatch(&Session::new(structure, g.seed, g.budget), &cli.command)
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let body = if cli.global.json {
        let mut s = serde_json::to_string_pretty(&report.json)?;
        s.push('\n');
        s
    } else {
        report.text.clone()
    };
    match &cli.global.out {
        Some(path) => fs::write(path, body).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        emit(&cli, &report)?;
        if report.ok {
            Ok(())
        } else {
            bail!("{}", report.failure.as_deref().unwrap_or("check failed"))
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
