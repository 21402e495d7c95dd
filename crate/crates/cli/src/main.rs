//! One binary multiplexing every library operation, with uniform JSON I/O:
//! input documents on stdin (or `--input`), canonical JSON on stdout,
//! diagnostics on stderr, machine-readable exit codes (0 ok, 2 domain
//! error, 3 budget exceeded, 4 malformed input).

mod commands;
mod io;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::Value;
use shimura_core::Result;

#[derive(Parser)]
#[command(name = "shimura", version, about = "exact-arithmetic Siegel/unitary toolbox")]
struct Cli {
    /// Read the input document from a file instead of stdin.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Override the enumeration budgets.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Siegel upper half space operations.
    #[command(subcommand)]
    Siegel(SiegelCmd),
    /// Complex structures, Lagrangian frames, datum checks.
    #[command(subcommand)]
    Hodge(HodgeCmd),
    /// Polarized lattice models with level structures.
    #[command(subcommand)]
    Abvar(AbvarCmd),
    /// Finite symplectic groups and Hecke cosets.
    #[command(subcommand)]
    Finsymp(FinsympCmd),
    /// Sign-vector cohomology of real unitary groups.
    #[command(subcommand)]
    Galcoh(GalcohCmd),
    /// Local-global gluing of unitary inner forms.
    #[command(subcommand)]
    Innerforms(InnerformsCmd),
    /// PEL-datum validation and invariants.
    #[command(subcommand)]
    Pel(PelCmd),
    /// Point counts and zeta series over finite fields.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Finite trace-formula identity.
    #[command(subcommand)]
    Trace(TraceCmd),
}

#[derive(Subcommand)]
enum SiegelCmd {
    /// Fractional-linear action of a symplectic similitude.
    Act,
    /// Bounded realization (field "y") or its inverse (field "a").
    Cayley,
    /// Evaluate a metric variant on a tangent direction.
    Metric {
        #[arg(long, value_parser = ["paper", "classical"])]
        variant: String,
    },
}

#[derive(Subcommand)]
enum HodgeCmd {
    /// Complex structure of a Siegel point.
    Jmatrix,
    /// Lagrangian frame of a point (field "y") or the point of a frame.
    Lagrangian,
    /// Check the finite Shimura-datum conditions for a packaged family.
    CheckDatum {
        #[arg(long, value_parser = ["gsp", "gu"])]
        group: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
}

#[derive(Subcommand)]
enum AbvarCmd {
    /// Torus and tautological level structure of a Siegel point.
    FromPoint,
    /// Weil-pairing exponent of two torsion coordinates.
    Weil,
    /// Validate a level structure against a torus.
    CheckLevel,
    /// Apply the Hecke move of an integral similitude.
    Hecke,
    /// Classical reduction of a point of the upper half plane.
    Reduce,
}

#[derive(Subcommand)]
enum FinsympCmd {
    /// Order formulas for Sp and GSp mod n.
    Order {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: i64,
    },
    /// Integral symplectic lift of a multiplier-1 element mod n.
    Lift,
    /// Component fibers of the multiplier on GSp(Z/n).
    Pi0 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: i64,
    },
    /// Left cosets of a diagonal p-power double coset.
    Cosets {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: i64,
        /// Comma-separated diagonal exponents, e.g. "1,0" for diag(p, 1).
        #[arg(long)]
        exponents: String,
    },
    /// Convolution of formal sums of double cosets.
    Convolve,
}

#[derive(Subcommand)]
enum GalcohCmd {
    /// Twisted Weyl orbits on sign vectors.
    Orbits {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Kernel of H1(R, T0) -> H1(R, G).
    Kernel {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
}

#[derive(Subcommand)]
enum InnerformsCmd {
    /// Global existence from a list of local data.
    Glue,
    /// gcd criterion for the underlying algebra being division.
    DivisionCheck,
}

#[derive(Subcommand)]
enum PelCmd {
    /// Per-axiom validation report.
    Validate,
    /// Good-prime test.
    GoodPrime {
        #[arg(long)]
        p: i64,
    },
    /// Reflex traces and field verdict.
    Reflex,
    /// Determinant polynomial on V^{-1,0}.
    Detpoly,
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Count points over an extension field.
    Count {
        #[arg(long)]
        r: Option<usize>,
    },
    /// Zeta series coefficients from counts.
    Series,
    /// Rational recovery from counts.
    Rational,
    /// Fixed-point consistency of recovered polynomials against counts.
    Check,
}

#[derive(Subcommand)]
enum TraceCmd {
    /// All computable sides of the trace identity plus the verdict.
    Check,
}

fn run(cli: &Cli) -> Result<Value> {
    let budget = cli.budget;
    let enum_budget = budget.unwrap_or(shimura_core::finsymp::DEFAULT_ENUM_BUDGET);
    let count_budget = budget.unwrap_or(shimura_core::zeta::DEFAULT_COUNT_BUDGET);
    let orbit_budget = budget.unwrap_or(20);
    let input = cli.input.as_deref();
    let doc = || io::read_input(input);
    match &cli.command {
        Command::Siegel(cmd) => match cmd {
            SiegelCmd::Act => commands::siegel_act(&doc()?),
            SiegelCmd::Cayley => commands::siegel_cayley(&doc()?),
            SiegelCmd::Metric { variant } => commands::siegel_metric(&doc()?, variant),
        },
        Command::Hodge(cmd) => match cmd {
            HodgeCmd::Jmatrix => commands::hodge_jmatrix(&doc()?),
            HodgeCmd::Lagrangian => commands::hodge_lagrangian(&doc()?),
            HodgeCmd::CheckDatum { group, d, p, q } => {
                commands::hodge_check_datum(group, *d, *p, *q)
            }
        },
        Command::Abvar(cmd) => match cmd {
            AbvarCmd::FromPoint => commands::abvar_from_point(&doc()?),
            AbvarCmd::Weil => commands::abvar_weil(&doc()?),
            AbvarCmd::CheckLevel => commands::abvar_check_level(&doc()?),
            AbvarCmd::Hecke => commands::abvar_hecke(&doc()?),
            AbvarCmd::Reduce => commands::abvar_reduce(&doc()?),
        },
        Command::Finsymp(cmd) => match cmd {
            FinsympCmd::Order { d, n } => commands::finsymp_order(*d, *n),
            FinsympCmd::Lift => commands::finsymp_lift(&doc()?, enum_budget),
            FinsympCmd::Pi0 { d, n } => commands::finsymp_pi0(*d, *n, enum_budget),
            FinsympCmd::Cosets { d, p, exponents } => {
                commands::finsymp_cosets(*d, *p, exponents)
            }
            FinsympCmd::Convolve => commands::finsymp_convolve(&doc()?),
        },
        Command::Galcoh(cmd) => match cmd {
            GalcohCmd::Orbits { p, q } => commands::galcoh_orbits(*p, *q, orbit_budget),
            GalcohCmd::Kernel { p, q } => commands::galcoh_kernel(*p, *q, orbit_budget),
        },
        Command::Innerforms(cmd) => match cmd {
            InnerformsCmd::Glue => commands::innerforms_glue(&doc()?),
            InnerformsCmd::DivisionCheck => commands::innerforms_division_check(&doc()?),
        },
        Command::Pel(cmd) => match cmd {
            PelCmd::Validate => commands::pel_validate(&doc()?),
            PelCmd::GoodPrime { p } => commands::pel_good_prime(&doc()?, *p),
            PelCmd::Reflex => commands::pel_reflex(&doc()?),
            PelCmd::Detpoly => commands::pel_detpoly(&doc()?),
        },
        Command::Zeta(cmd) => match cmd {
            ZetaCmd::Count { r } => {
                let mut document = doc()?;
                if let Some(r) = r {
                    document
                        .as_object_mut()
                        .ok_or_else(|| shimura_core::Error::parse("input: expected an object"))?
                        .insert("r".to_string(), serde_json::json!(r));
                }
                commands::zeta_count(&document, count_budget)
            }
            ZetaCmd::Series => commands::zeta_series(&doc()?),
            ZetaCmd::Rational => commands::zeta_rational(&doc()?),
            ZetaCmd::Check => commands::zeta_check(&doc()?),
        },
        Command::Trace(cmd) => match cmd {
            TraceCmd::Check => commands::trace_check(&doc()?),
        },
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                std::process::exit(0);
            }
            _ => {
                eprintln!("{e}");
                // Unknown subcommands and malformed arguments count as
                // malformed input.
                std::process::exit(4);
            }
        },
    };
    match run(&cli) {
        Ok(value) => {
            io::emit(&value);
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(io::exit_code(&e));
        }
    }
}
