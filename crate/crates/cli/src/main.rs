//! `qpi`: exact isotropy groups of derivations on the quantum plane.
//!
//! Subcommands: `isotropy` (derivation -> group report), `realize`
//! (which finite groups occur), `intersect` (Bezout ledger for binomial
//! curves), `solve` (raw character systems), `distinguish` (telling two `q`
//! specializations apart), `selfcheck` (the built-in verification sweeps).
//!
//! Exit codes: 0 ok, 2 parse error, 3 domain error, 4 resource limit,
//! 5 internal consistency failure.

mod checks;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpi_core::error::{Error, Result};
use qpi_core::geometry;
use qpi_core::isotropy::{
    isomorphism_obstruction, isotropy_group, realize_group, DerivationDocument, QSpecDto,
};
use qpi_core::scalar::{self, QSpec};
use qpi_core::torus::{solve_constraints, Character};

#[derive(Parser)]
#[command(
    name = "qpi",
    version,
    about = "Isotropy groups of quantum-plane derivations"
)]
struct Cli {
    /// Cyclotomic conductor cap (the QPI_MAX_CONDUCTOR environment variable
    /// overrides this flag).
    #[arg(long, global = true)]
    max_conductor: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the isotropy group of a derivation.
    Isotropy(IsotropyArgs),
    /// Realizability of Z_n1 + Z_n2 as an isotropy group, with witness.
    Realize(RealizeArgs),
    /// Intersection ledger and affine points for x^a y^b = 1, x^c y^d = 1.
    Intersect(IntersectArgs),
    /// Solve a raw character system [[m, n], ...].
    Solve(SolveArgs),
    /// Smallest exponent distinguishing two q specializations.
    Distinguish(DistinguishArgs),
    /// Run the built-in verification sweeps.
    Selfcheck(SelfcheckArgs),
}

#[derive(Args)]
struct IsotropyArgs {
    /// q specialization: `transcendental` or `root N`.
    #[arg(long, value_parser = parse_qspec_arg)]
    q: Option<QSpec>,

    /// Inner part w of the derivation ad_w + a D_x + b D_y (text form).
    #[arg(long)]
    w: Option<String>,

    /// Scalar coefficient of D_x (defaults to 0).
    #[arg(long)]
    a: Option<String>,

    /// Scalar coefficient of D_y (defaults to 0).
    #[arg(long)]
    b: Option<String>,

    /// Image of x under the derivation (text form; requires --dy).
    #[arg(long)]
    dx: Option<String>,

    /// Image of y under the derivation (text form; requires --dx).
    #[arg(long)]
    dy: Option<String>,

    /// JSON document (inline if it starts with `{`, otherwise a path).
    #[arg(long)]
    input: Option<String>,

    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RealizeArgs {
    n1: u64,
    n2: u64,
    /// q specialization: `transcendental` or `root N`.
    #[arg(long, value_parser = parse_qspec_arg, default_value = "transcendental")]
    q: QSpec,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IntersectArgs {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Characters as JSON, e.g. `[[2,4],[3,9]]` (inline or a path).
    chars: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DistinguishArgs {
    /// First q specialization.
    #[arg(long, value_parser = parse_qspec_arg)]
    q1: QSpec,
    /// Second q specialization.
    #[arg(long, value_parser = parse_qspec_arg)]
    q2: QSpec,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SelfcheckArgs {
    /// Exponent bound of the quadruple sweep (default 8).
    #[arg(long, default_value_t = 8)]
    bound: u64,
    #[arg(long)]
    json: bool,
}

/// `transcendental` or `root N` (also `root:N`, `root=N`). Order validation
/// (`N >= 3`) happens downstream so that a degenerate order surfaces as a
/// domain error, not a usage error.
fn parse_qspec_arg(text: &str) -> std::result::Result<QSpec, String> {
    let t = text.trim().to_ascii_lowercase();
    if t == "transcendental" {
        return Ok(QSpec::Transcendental);
    }
    if let Some(rest) = t.strip_prefix("root") {
        let rest = rest.trim_start_matches([' ', ':', '=']);
        let n: u64 = rest
            .parse()
            .map_err(|_| format!("expected `root N` with integer N, got `{text}`"))?;
        return Ok(QSpec::RootOfUnity(n));
    }
    Err(format!(
        "expected `transcendental` or `root N`, got `{text}`"
    ))
}

fn read_inline_or_path(arg: &str, hint: char) -> Result<String> {
    if arg.trim_start().starts_with(hint) {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read `{arg}`: {e}")))
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Isotropy(args) => {
            let doc = if let Some(input) = &args.input {
                if args.q.is_some() || args.w.is_some() || args.dx.is_some() || args.dy.is_some() {
                    return Err(Error::Parse(
                        "--input cannot be combined with --q/--w/--dx/--dy".into(),
                    ));
                }
                let text = read_inline_or_path(input, '{')?;
                serde_json::from_str::<DerivationDocument>(&text)
                    .map_err(|e| Error::Parse(format!("bad document: {e}")))?
            } else {
                let spec = args
                    .q
                    .ok_or_else(|| Error::Parse("--q is required (or use --input)".into()))?;
                document_from_flags(spec, &args)?
            };
            let (delta, spec) = doc.build()?;
            let result = isotropy_group(&delta, &spec)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&result).unwrap());
            } else {
                print!("{}", render::isotropy_text(&result)?);
            }
            Ok(())
        }
        Command::Realize(args) => {
            let verdict = realize_group(args.n1, args.n2, &args.q)?;
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&verdict.to_json()).unwrap()
                );
            } else {
                print!("{}", render::realize_text(args.n1, args.n2, &verdict));
            }
            Ok(())
        }
        Command::Intersect(args) => {
            let report = geometry::intersection_report(args.a, args.b, args.c, args.d)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!(
                    "{}",
                    render::intersect_text(args.a, args.b, args.c, args.d, &report)
                );
            }
            Ok(())
        }
        Command::Solve(args) => {
            let text = read_inline_or_path(&args.chars, '[')?;
            let chars: Vec<Character> = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad character list: {e}")))?;
            let report = solve_constraints(&chars)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", render::group_report_text(&report)?);
            }
            Ok(())
        }
        Command::Distinguish(args) => {
            args.q1.validate()?;
            args.q2.validate()?;
            let witness = isomorphism_obstruction(&args.q1, &args.q2);
            if args.json {
                let value = serde_json::json!({
                    "q1": QSpecDto::from(args.q1),
                    "q2": QSpecDto::from(args.q2),
                    "witness": witness,
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                print!("{}", render::distinguish_text(&args.q1, &args.q2, witness));
            }
            Ok(())
        }
        Command::Selfcheck(args) => checks::run_selfcheck(args.bound, args.json),
    }
}

fn document_from_flags(spec: QSpec, args: &IsotropyArgs) -> Result<DerivationDocument> {
    let poly_dto = |text: &str| -> Result<Vec<qpi_core::qplane::QPolyTermDto>> {
        Ok(qpi_core::qplane::QPoly::parse(text, &spec)?.to_dto())
    };
    Ok(DerivationDocument {
        q: QSpecDto::from(spec),
        w: args.w.as_deref().map(poly_dto).transpose()?,
        a: args.a.clone(),
        b: args.b.clone(),
        dx: args.dx.as_deref().map(poly_dto).transpose()?,
        dy: args.dy.as_deref().map(poly_dto).transpose()?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cap = cli.max_conductor.unwrap_or(scalar::DEFAULT_MAX_CONDUCTOR);
    if let Ok(text) = std::env::var("QPI_MAX_CONDUCTOR") {
        match text.parse::<u64>() {
            Ok(n) => cap = n,
            Err(_) => {
                eprintln!("error: QPI_MAX_CONDUCTOR must be an integer, got `{text}`");
                return ExitCode::from(2);
            }
        }
    }
    scalar::set_max_conductor(cap);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.category().exit_code() as u8)
        }
    }
}
