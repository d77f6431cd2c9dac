use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use latticecurve::campaign::{run_suite, Suite};
use latticecurve::curve::classify_curve;
use latticecurve::enumerate::MAX_COORD_ENV;
use latticecurve::error::{CurveError, FanError};
use latticecurve::fan::{
    curve_ray_intersections, divisor_of_polygon, pr_star, ray_self_intersection, relative_minimalize, toric_fibrations,
    Fan, ToricDivisor,
};
use latticecurve::gaps::gap_report;
use latticecurve::io::{parse_input, parse_model_json, Input};
use latticecurve::polygon::LatticePolygon;
use latticecurve::svg::{fan_svg, polygon_svg};

mod table;

#[derive(Parser)]
#[command(name = "latticecurve", version, about = "Gonality and Clifford index of curves on toric surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, lattice width, gonality and Clifford index of a polygon.
    Analyze {
        /// Polygon file (text or JSON), or `-` for stdin.
        input: String,
    },
    /// Queries on a fan, a fan with a divisor, or a polygon's normal fan.
    Fan {
        /// Fan JSON or polygon, or `-` for stdin.
        input: String,
        #[arg(long, value_enum)]
        query: FanQuery,
    },
    /// Weierstrass gap sequence of a trigonal model.
    Gaps {
        /// Model JSON, or `-` for stdin.
        input: String,
    },
    /// Run a falsification campaign over all polygons in [0, N]².
    Verify {
        /// Side N of the coordinate box.
        #[arg(long, default_value_t = 5)]
        max_coord: i64,
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// SVG figure of a polygon or fan.
    Plot {
        /// Polygon or fan, or `-` for stdin.
        input: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FanQuery {
    Validate,
    Refine,
    Fibrations,
    Prstar,
    Minimalize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bounds,
    Q4,
    Gonality,
    WidthOracle,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::Q4 => Suite::Q4,
            SuiteArg::Gonality => Suite::Gonality,
            SuiteArg::WidthOracle => Suite::WidthOracle,
        }
    }
}

struct Failure {
    code: u8,
    msg: String,
}

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_FAN: u8 = 4;
const EXIT_MODEL: u8 = 5;
const EXIT_VIOLATIONS: u8 = 6;

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

/// Errors carry the rule name so scripts can match on it.
fn fan_failure(e: FanError) -> Failure {
    let debug = format!("{e:?}");
    let rule = debug.split([' ', '{', '(']).next().unwrap_or("FanError");
    fail(EXIT_FAN, format!("{rule}: {e}"))
}

/// Output text plus whether the run found violations.
struct Output {
    text: String,
    violations: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, violations: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out.text)?;
        Ok(out.violations)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(EXIT_VIOLATIONS),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| fail(EXIT_IO, e.to_string())),
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| fail(EXIT_PARSE, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{path}: {e}")))
    }
}

fn parsed(path: &str) -> Result<Input, Failure> {
    parse_input(&read_input(path)?).map_err(|e| fail(EXIT_PARSE, e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let v = serde_json::to_value(v).expect("serializable");
    let mut s = String::new();
    pretty(&v, 0, &mut s);
    s.push('\n');
    s
}

/// Pretty JSON with arrays of scalars (and of coordinate pairs) on one line.
fn pretty(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let flat = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_) | Value::String(_));
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(items) if items.iter().all(|x| flat(x) || matches!(x, Value::Array(a) if a.iter().all(flat))) => {
            out.push_str(&v.to_string());
        }
        Value::Array(items) if !items.is_empty() => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                pretty(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                pretty(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn render<T: Serialize>(cli: &Cli, v: &T, table: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Json => to_json(v),
        Format::Table => table(),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Analyze { input } => analyze(cli, input),
        Command::Fan { input, query } => fan(cli, input, *query),
        Command::Gaps { input } => gaps(cli, input),
        Command::Verify { max_coord, suite } => verify(cli, *max_coord, (*suite).into()),
        Command::Plot { input } => plot(input),
    }
}

fn polygon_of(input: Input) -> Result<LatticePolygon, Failure> {
    match input {
        Input::Polygon(p) => Ok(p),
        Input::Fan(f) => {
            let c = f.divisor().map_err(fan_failure)?;
            let c = c.ok_or_else(|| fail(EXIT_PARSE, "a fan needs coefficients to define a polygon"))?;
            c.polygon().cloned().ok_or_else(|| fan_failure(FanError::EmptyPolytope))
        }
        Input::Model(_) => Err(fail(EXIT_PARSE, "expected a polygon, got a trigonal model")),
    }
}

fn analyze(cli: &Cli, input: &str) -> Result<Output, Failure> {
    let p = polygon_of(parsed(input)?)?;
    let report = classify_curve(&p).map_err(|e| match e {
        CurveError::DegeneratePolygon => fail(EXIT_DEGENERATE, format!("{p} is not full-dimensional")),
        other => fail(EXIT_PARSE, other.to_string()),
    })?;
    Ok(Output::ok(render(cli, &report, || table::curve(&p, &report))))
}

/// A fan (and divisor, if there is one) from fan or polygon input.
fn fan_input(input: Input, query: FanQuery) -> Result<(Fan, Option<ToricDivisor>), Failure> {
    match input {
        Input::Polygon(p) => {
            if !p.is_full_dimensional() {
                return Err(fail(EXIT_DEGENERATE, format!("{p} is not full-dimensional")));
            }
            let c = divisor_of_polygon(&p).map_err(fan_failure)?;
            Ok((c.fan().clone(), Some(c)))
        }
        Input::Fan(f) => {
            if matches!(query, FanQuery::Refine) {
                return Ok((f.refined().map_err(fan_failure)?, None));
            }
            let fan = f.fan().map_err(fan_failure)?;
            let c = f.divisor().map_err(fan_failure)?;
            Ok((fan, c))
        }
        Input::Model(_) => Err(fail(EXIT_PARSE, "expected a fan or polygon, got a trigonal model")),
    }
}

fn fan(cli: &Cli, input: &str, query: FanQuery) -> Result<Output, Failure> {
    let (fan, divisor) = fan_input(parsed(input)?, query)?;
    let value = match query {
        FanQuery::Validate => {
            let d2: Vec<i64> =
                (0..fan.len()).map(|i| ray_self_intersection(&fan, i).expect("index in range")).collect();
            let mut v = json!({ "valid": true, "rays": fan.rays(), "self_intersections": d2 });
            if let Some(c) = &divisor {
                v["coeffs"] = json!(c.coeffs());
                v["nef"] = json!(c.is_nef());
            }
            v
        }
        FanQuery::Refine => json!({ "rays": fan.rays() }),
        FanQuery::Prstar => json!({ "pr_star": pr_star(&fan) }),
        FanQuery::Fibrations => {
            let fibers = toric_fibrations(&fan).map_err(fan_failure)?;
            let list: Vec<serde_json::Value> = fibers
                .iter()
                .map(|f| {
                    let mut v = json!({ "axis": f.axis, "coeffs": f.coeffs });
                    if let Some(c) = &divisor {
                        if let Ok(d) = f.degree(c) {
                            v["degree"] = json!(d);
                        }
                    }
                    v
                })
                .collect();
            json!({ "rays": fan.rays(), "fibers": list })
        }
        FanQuery::Minimalize => {
            let c = divisor.ok_or_else(|| fail(EXIT_PARSE, "minimalize needs coefficients or a polygon"))?;
            // the contraction test needs C·D, so the divisor must be nef
            curve_ray_intersections(&c).map_err(fan_failure)?;
            let (m, removed) = relative_minimalize(&c).map_err(fan_failure)?;
            json!({
                "rays": m.fan().rays(),
                "coeffs": m.coeffs(),
                "removed": removed,
                "polygon": m.polygon(),
            })
        }
    };
    Ok(Output::ok(render(cli, &value, || table::json_value(&value))))
}

fn gaps(cli: &Cli, input: &str) -> Result<Output, Failure> {
    let model = parse_model_json(&read_input(input)?).map_err(|e| fail(EXIT_PARSE, e.to_string()))?;
    let report = gap_report(&model).map_err(|e| fail(EXIT_MODEL, e.to_string()))?;
    let value = serde_json::to_value(&report).expect("serializable");
    Ok(Output::ok(render(cli, &report, || table::json_value(&value))))
}

fn verify(cli: &Cli, n: i64, suite: Suite) -> Result<Output, Failure> {
    let report = run_suite(suite, n).map_err(|e| fail(EXIT_PARSE, format!("{e}; raise it with {MAX_COORD_ENV}")))?;
    let text = render(cli, &report, || table::campaign(&report));
    Ok(Output { text, violations: !report.passed() })
}

fn plot(input: &str) -> Result<Output, Failure> {
    let svg = match parsed(input)? {
        Input::Fan(f) => {
            let fan = f.fan().or_else(|_| f.refined()).map_err(fan_failure)?;
            fan_svg(&fan)
        }
        other => polygon_svg(&polygon_of(other)?),
    };
    svg.map(Output::ok).map_err(|e| fail(EXIT_PARSE, e.to_string()))
}
