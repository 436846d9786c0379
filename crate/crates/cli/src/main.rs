use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lzres::driver::{self, CounterexampleParams, Strategy, DEFAULT_MAX_STEPS};
use lzres::expr::{parse_center, parse_poly, parse_script};
use lzres::polygon::{minimize, newton_polygon, NewtonPolygon, DEFAULT_CONTRACTION_CAP};
use lzres::report::{render_svg, CounterexampleJson, PolygonJson, TraceJson};
use lzres::transform::{find_permitted_curves, monoidal, near_points, quadratic};
use lzres::{Center, ErrorKind, FieldSpec, WeierstrassSurface};

const EXPR_HELP: &str = "Equation Z^n + a_{n-1} Z^{n-1} + ... + a_0, monic in Z with order n. \
Write products with '*' after an exponent (X^19*Z, not X^19Z); juxtaposition is accepted before a \
variable or '(' (2X, 3(X-Y)). Prefix with '@' to read the equation from a file.";

const AFTER_HELP: &str = "\
Exit status: 0 success, 1 usage or parse error, 2 precondition violation
(invalid surface, center not permitted, direction not a near point),
3 step cap reached, 4 internal error.

Curve blow-ups use only the chart Z = G*Z'. When Z = 0 has maximal contact
the other chart holds no point of multiplicity n over the curve.";

#[derive(Parser, Debug)]
#[command(name = "lzres", version, about = "Newton-Hironaka polygons and blow-ups of surface singularities")]
#[command(after_help = AFTER_HELP)]
struct Cli {
    /// Coefficient field: `q` for the rationals or `fp:P` for a prime P.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Equation {
    #[arg(value_name = "EXPR", help = EXPR_HELP, allow_hyphen_values = true)]
    expr: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity, WT flag and the coefficients a_k.
    Info(Equation),
    /// Vertices of the Newton-Hironaka polygon.
    Polygon {
        #[command(flatten)]
        eq: Equation,
        /// Also write an SVG drawing to PATH.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Contract vertices until the polygon is the characteristic polygon.
    Minimize(Equation),
    /// Apply one blow-up and print the strict transform and its order.
    #[command(after_help = "The curve blow-up Z -> G*Z keeps only the chart Z = G*Z'.")]
    Blowup {
        #[command(flatten)]
        eq: Equation,
        /// Point of the exceptional plane, `1:c:0` or `0:1:0`.
        #[arg(long, value_name = "a:b:0", allow_hyphen_values = true, conflicts_with = "curve", required_unless_present = "curve")]
        direction: Option<String>,
        /// Generator G of a permitted curve (Z, G).
        #[arg(long, value_name = "G", allow_hyphen_values = true)]
        curve: Option<String>,
    },
    /// Linear permitted curves (Z, G).
    Permitted(Equation),
    /// Near points of the blow-up of the origin.
    Nearpoints(Equation),
    /// Blow up until the multiplicity drops, or follow a script.
    Resolve {
        #[command(flatten)]
        eq: Equation,
        #[arg(long, conflicts_with = "script", required_unless_present = "script")]
        auto: bool,
        /// File with one center per line: `Q 1:c:0`, `Q 0:1:0` or `M G`.
        #[arg(long, value_name = "FILE")]
        script: Option<PathBuf>,
        /// Step cap for --auto.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Polygons and drop steps for Z^3 + X^m*Z + (X-Y)^4.
    Counterexample {
        /// Comma-separated values of m, each at least 19.
        #[arg(long = "m", value_name = "LIST", value_delimiter = ',', required = true)]
        m: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Lib(lzres::Error),
}

impl From<lzres::Error> for Failure {
    fn from(e: lzres::Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

fn read_text(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn surface(eq: &Equation, field: FieldSpec) -> Result<WeierstrassSurface, Failure> {
    let text = read_text(&eq.expr)?;
    Ok(WeierstrassSurface::from_poly(parse_poly(&text, field)?)?)
}

fn polygon_line(p: &NewtonPolygon) -> String {
    if p.is_empty() {
        "vertices: none".into()
    } else {
        format!("vertices: {p}")
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn info(s: &WeierstrassSurface) -> String {
    let mut out = format!("equation: {s}\nmultiplicity: {}\nwt: {}\n", s.multiplicity(), if s.is_wt() { "yes" } else { "no" });
    for (k, a) in s.z_profile().iter().enumerate() {
        let _ = writeln!(out, "a_{k}: {a}");
    }
    out
}

fn execute(cli: &Cli, field: FieldSpec) -> Outcome {
    match &cli.command {
        Command::Info(eq) => Ok(info(&surface(eq, field)?)),
        Command::Polygon { eq, svg, json } => {
            let p = newton_polygon(&surface(eq, field)?);
            if let Some(path) = svg {
                std::fs::write(path, render_svg(&p))
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(if *json { to_json(&PolygonJson::from(&p)) + "\n" } else { polygon_line(&p) + "\n" })
        }
        Command::Minimize(eq) => {
            let m = minimize(&surface(eq, field)?, DEFAULT_CONTRACTION_CAP)?;
            Ok(format!("{m}\n{}\n", polygon_line(&newton_polygon(&m))))
        }
        Command::Blowup { eq, direction, curve } => {
            let s = surface(eq, field)?;
            let center = match (direction, curve) {
                (Some(d), _) => parse_center(&format!("Q {d}"), field)?,
                (None, Some(g)) => parse_center(&format!("M {}", read_text(g)?), field)?,
                (None, None) => return Err(Failure::Usage("one of --direction or --curve is required".into())),
            };
            let r = match &center {
                Center::Point(d) => quadratic(&s, d)?,
                Center::Curve(c) => monoidal(&s, c)?,
            };
            Ok(format!("{}\norder: {}{}\n", r.result, r.new_order, if r.dropped { " (dropped)" } else { "" }))
        }
        Command::Permitted(eq) => {
            let curves = find_permitted_curves(&surface(eq, field)?)?;
            if curves.is_empty() {
                return Ok("none\n".into());
            }
            Ok(curves.iter().map(|c| format!("(Z,{c})\n")).collect())
        }
        Command::Nearpoints(eq) => Ok(format!("{}\n", near_points(&surface(eq, field)?)?)),
        Command::Resolve { eq, auto, script, max_steps, json } => {
            let s = surface(eq, field)?;
            let strategy = match script {
                Some(path) if !*auto => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                    Strategy::Scripted(parse_script(&text, field)?)
                }
                _ => Strategy::Auto,
            };
            let trace = driver::run(&s, &strategy, *max_steps)?;
            if *json {
                return Ok(to_json(&TraceJson::from(&trace)) + "\n");
            }
            let mut out = format!("initial: {s} (multiplicity {})\n", s.multiplicity());
            for step in &trace.steps {
                let center = match &step.center {
                    driver::StepCenter::Point(d) => format!("Q {d}"),
                    driver::StepCenter::Curve(c) => format!("M {c}"),
                    driver::StepCenter::Terminal(d) => format!("Q {d} (terminal)"),
                };
                let _ = writeln!(out, "{:>3}  {center:<20} {}  [order {}]", step.index, step.equation_after, step.order_after);
            }
            match trace.drop_step {
                Some(i) => {
                    let _ = writeln!(out, "multiplicity drops at step {i}");
                }
                None => out.push_str("multiplicity kept\n"),
            }
            Ok(out)
        }
        Command::Counterexample { m, json } => {
            let report = driver::counterexample_report(&CounterexampleParams::new(m.clone())?)?;
            if *json {
                return Ok(to_json(&CounterexampleJson::from(&report)) + "\n");
            }
            let mut out = String::new();
            for e in &report.entries {
                let _ = writeln!(out, "m = {:<4} {}  drop step {}", e.m, polygon_line(&e.polygon), e.drop_step);
            }
            let _ = writeln!(out, "polygons equal: {}", report.polygons_equal);
            let _ = writeln!(out, "counts increasing: {}", report.counts_increasing);
            let _ = writeln!(out, "period 8 adds 4 steps: {}", report.period_holds);
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let field: FieldSpec = match cli.field.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: --field {}: {e}", cli.field);
            return ExitCode::from(1);
        }
    };
    match execute(&cli, field) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Parse => 1,
                ErrorKind::Precondition => 2,
                ErrorKind::StepCap => 3,
                ErrorKind::Internal => 4,
            })
        }
    }
}
