use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schur_toeplitz::classify::{classify, ClassificationResult, Verdict};
use schur_toeplitz::fixtures::{
    example1, example2, example2_pair, example3, ExampleThreeParams, EXAMPLE_ONE_ERRATUM,
};
use schur_toeplitz::json::{classification_to_value, parse_algebra, to_pretty, AlgebraWire};
use schur_toeplitz::verify::{run, OutputFormat, RunConfig, Target};
use schur_toeplitz::ComplexRational;

#[derive(Parser)]
#[command(
    name = "schur-toeplitz",
    version,
    about = "Exact verification and classification of commutative block Toeplitz algebras over Schur algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Both,
    AsDisplayed,
    AsDefined,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded randomized property suite.
    Verify {
        #[arg(value_parser = parse_target)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        #[arg(long, default_value_t = 1)]
        tau: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Accept shapes with |sigma - tau| > 1.
        #[arg(long)]
        relaxed: bool,
    },
    /// Classify the algebra generated by (or spanned by) a JSON input.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        relaxed: bool,
    },
    /// Emit one of the worked examples (sigma = 2, tau = 1, n = 3) as Algebra JSON.
    Example(Box<ExampleArgs>),
}

#[derive(Args)]
struct ExampleArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    which: u8,
    /// Ratio between the lower and upper diagonals in example 2.
    #[arg(long, default_value = "2", value_parser = parse_rational)]
    mu: ComplexRational,
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    lambda: ComplexRational,
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    a: ComplexRational,
    #[arg(long, default_value = "2", value_parser = parse_rational)]
    b: ComplexRational,
    #[arg(long, default_value = "3", value_parser = parse_rational)]
    c: ComplexRational,
    #[arg(long, default_value = "4", value_parser = parse_rational)]
    d: ComplexRational,
    /// Which reading of example 1 to emit.
    #[arg(long, value_enum, default_value_t = Variant::Both)]
    variant: Variant,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: schur_toeplitz::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<ComplexRational, String> {
    s.replace('\u{2212}', "-")
        .parse()
        .map_err(|e: schur_toeplitz::Error| e.to_string())
}

/// A failure that maps to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, InputError> {
    match command {
        Command::Verify {
            target,
            n,
            sigma,
            tau,
            trials,
            seed,
            format,
            relaxed,
        } => {
            let config = RunConfig {
                seed,
                trials,
                n,
                sigma,
                tau,
                format: format.into(),
                relaxed,
            };
            let report = run(target, &config)?;
            print!("{}", report.render());
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Classify {
            input,
            output,
            format,
            relaxed,
        } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| InputError(format!("{}: {e}", input.display())))?;
            let algebra = parse_algebra(&text, relaxed)
                .map_err(|e| InputError(format!("{}: {e}", input.display())))?;
            let result = classify(&algebra)?;
            let rendered = match format {
                Format::Json => to_pretty(&classification_to_value(&result)),
                Format::Text => classification_text(&result),
            };
            write_output(output.as_deref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Example(args) => {
            let ExampleArgs {
                which,
                mu,
                lambda,
                a,
                b,
                c,
                d,
                variant,
                output,
            } = *args;
            let value = match which {
                1 => example_one_value(variant)?,
                2 => {
                    let pair = example2_pair(&mu)?;
                    let mut wire = AlgebraWire::from_generators(&example2(&mu)?);
                    wire.label = Some("example-2".into());
                    wire.notes = vec![
                        format!("F_(A,B) with A = I, B = mu*I, mu = {mu}: T_j = mu*T_(j-3) for j = 1, 2"),
                        format!("pair: A = {:?}, B = {:?}", pair.a(), pair.b()),
                    ];
                    serde_json::to_value(wire)?
                }
                _ => {
                    let params = ExampleThreeParams { lambda, a, b, c, d };
                    let ex = example3(&params)?;
                    let mut wire = AlgebraWire::from_basis(&ex.basis);
                    wire.label = Some("example-3".into());
                    wire.sample = Some((&ex.sample).into());
                    wire.notes = vec![
                        "B(x)O: block Toeplitz matrices whose off-diagonal blocks have zero scalar part".into(),
                        format!(
                            "equals F_(A,B) for the independent radical pair A = {:?}, B = {:?}",
                            ex.pair.a(),
                            ex.pair.b()
                        ),
                    ];
                    serde_json::to_value(wire)?
                }
            };
            write_output(output.as_deref(), &to_pretty(&value))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn example_one_value(variant: Variant) -> Result<Value, InputError> {
    let ex = example1()?;
    let mut displayed = AlgebraWire::from_generators(&ex.as_displayed);
    displayed.label = Some("example-1-as-displayed".into());
    displayed.notes = vec![
        "block-diagonal repeat algebra diag(T0, T0, T0), T0 in O(2,1)".into(),
        format!("erratum: {EXAMPLE_ONE_ERRATUM}"),
    ];
    let mut defined = AlgebraWire::from_basis(&ex.as_defined);
    defined.label = Some("example-1-as-defined".into());
    defined.notes = vec![
        "F_(I,0): T_1 = T_2 = 0, T_0, T_-1, T_-2 free".into(),
        format!("pair: A = {:?}, B = {:?}", ex.pair.a(), ex.pair.b()),
    ];
    Ok(match variant {
        Variant::AsDisplayed => serde_json::to_value(displayed)?,
        Variant::AsDefined => serde_json::to_value(defined)?,
        Variant::Both => json!({
            "example": 1,
            "erratum": EXAMPLE_ONE_ERRATUM,
            "fixtures": [displayed, defined],
        }),
    })
}

fn classification_text(r: &ClassificationResult) -> String {
    let mut lines = vec![format!("verdict: {}", r.verdict.tag())];
    if let Some(p) = r.verdict.pair() {
        lines.push(format!("pair: A = {:?}, B = {:?}", p.a(), p.b()));
    }
    match &r.verdict {
        Verdict::ContainedInTypeI { codimension, .. }
        | Verdict::ContainedInTypeII { codimension } => {
            lines.push(format!("codimension: {codimension}"));
        }
        Verdict::Rejected { reason } => lines.push(format!("reason: {reason}")),
        _ => {}
    }
    lines.push(format!(
        "dimension: {} of {}",
        r.algebra_dimension, r.ambient_dimension
    ));
    lines.push(format!(
        "certificate: {}",
        match &r.certificate {
            Some(c) if c.is_certified() => "certified",
            Some(_) => "inconclusive",
            None => "none",
        }
    ));
    lines.extend(r.notes.iter().map(|n| format!("note: {n}")));
    let mut s = lines.join("\n");
    s.push('\n');
    s
}
