//! `skewdyn` — exact analysis of skew-linear dynamical systems
//! `f(x, y) = (x + 1, A(x) y)` from the command line.
//!
//! Every command reads a JSON system file, dispatches to the library, and
//! prints a canonical report document (sorted keys, exact rationals) on
//! standard output.  Exit codes: 0 success, 2 input error, 3 command not
//! applicable to the input, 4 inconclusive bounded search under `--strict`.

mod render;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use skewdyn::closure::{binomial_closure, component_count, density_probe, relation_lattice};
use skewdyn::invariant::{period_search, semi_invariants_total, skew_eigenvectors_report};
use skewdyn::multipoly::monomials_up_to;
use skewdyn::straighten::{straighten, StraightVerdict};
use skewdyn::SkewError;

use render::*;
use schema::{
    constant_diagonal, load_system, load_transform, parse_multipoly, parse_point, parse_start,
    CliError,
};

#[derive(Parser)]
#[command(
    name = "skewdyn",
    version,
    about = "Exact invariants, straightening, and orbit geometry of skew-linear systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report document to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Exit with status 4 when a bounded search comes back empty-handed.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a system file and report its dimension and determinant.
    Check { system: PathBuf },
    /// Iterate the system from a start point and list the orbit.
    Orbit {
        system: PathBuf,
        /// Start point as "x;y1,...,yn", e.g. "0;1,0".
        #[arg(long)]
        start: String,
        /// Number of steps; the orbit has steps+1 points.
        #[arg(long, default_value_t = 511)]
        steps: usize,
    },
    /// Matrix of the m-step cocycle A(x+m-1)...A(x).
    Cocycle {
        system: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Conjugate the system by a gauge transform file.
    Gauge {
        system: PathBuf,
        transform: PathBuf,
    },
    /// Search for invariant lines (skew eigenvectors) up to a degree bound.
    InvariantLine {
        system: PathBuf,
        /// Entry-degree bound for eigenvectors (default 2·N·(d+1)+4).
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// Search for semi-invariant polynomials up to degree bounds.
    SemiInvariants {
        system: PathBuf,
        /// Total degree bound in the fibre variables.
        #[arg(long, default_value_t = 2)]
        deg_y: u32,
        /// Degree bound in the base variable (default 2·N·(d+1)+4).
        #[arg(long)]
        deg_x: Option<u32>,
    },
    /// Reduce a 2-dimensional system to constant diagonal form.
    Straighten {
        system: PathBuf,
        /// Eigenvector-degree bound for the search (default 2·N·(d+1)+4).
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// Exact vanishing ideal of an orbit prefix at bounded degree.
    Density {
        system: PathBuf,
        /// Start point as "x;y1,...,yn".
        #[arg(long)]
        start: String,
        /// Orbit points to sample (default: exactly the required minimum).
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = 2)]
        deg_x: u32,
        #[arg(long, default_value_t = 2)]
        deg_y: u32,
    },
    /// Binomial description of the orbit closure of a diagonal system.
    Closure {
        system: PathBuf,
        /// Fibre start point as "y1,...,yn".
        #[arg(long)]
        point: String,
    },
    /// Relation lattice and component count of a diagonal system.
    Components { system: PathBuf },
    /// Smallest period of a semi-invariant polynomial under iteration.
    Period {
        system: PathBuf,
        /// Polynomial as JSON terms [[coeff, x_exp, [y_exps]], ...].
        #[arg(long)]
        poly: String,
        /// Largest period to test (default 2·N·(d+1)+4).
        #[arg(long)]
        max_deg: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Orbit { .. } => "orbit",
            Command::Cocycle { .. } => "cocycle",
            Command::Gauge { .. } => "gauge",
            Command::InvariantLine { .. } => "invariant-line",
            Command::SemiInvariants { .. } => "semi-invariants",
            Command::Straighten { .. } => "straighten",
            Command::Density { .. } => "density",
            Command::Closure { .. } => "closure",
            Command::Components { .. } => "components",
            Command::Period { .. } => "period",
        }
    }
}

/// Everything a command produces besides timing: echoes, bounds, payload,
/// and whether a bounded search ended without an answer.
struct Outcome {
    input: Value,
    bounds: Value,
    diagnostics: Option<Value>,
    result: Value,
    inconclusive: bool,
}

impl Outcome {
    fn new(input: Value, bounds: Value, result: Value) -> Outcome {
        Outcome {
            input,
            bounds,
            diagnostics: None,
            result,
            inconclusive: false,
        }
    }
}

/// Default degree bound used by the bounded searches: generous at desk
/// scale, linear in the dimension and matrix degree.
fn default_bound(s: &skewdyn::system::SkewSystem) -> usize {
    2 * s.dim() * (s.matrix().max_degree() + 1) + 4
}

fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Check { system } => {
            let s = load_system(system)?;
            Ok(Outcome::new(
                json!({ "system": system.display().to_string() }),
                json!({}),
                json!({
                    "degree": s.matrix().max_degree(),
                    "det": rat_json(s.det_constant()),
                    "n": s.dim(),
                }),
            ))
        }
        Command::Orbit {
            system,
            start,
            steps,
        } => {
            let s = load_system(system)?;
            let p = parse_start(start, s.dim())?;
            let orbit = s.orbit(&p, *steps)?;
            Ok(Outcome::new(
                json!({ "start": start, "system": system.display().to_string() }),
                json!({ "steps": steps }),
                json!({ "points": Value::Array(orbit.iter().map(point_json).collect()) }),
            ))
        }
        Command::Cocycle { system, steps } => {
            let s = load_system(system)?;
            Ok(Outcome::new(
                json!({ "system": system.display().to_string() }),
                json!({ "steps": steps }),
                json!({ "matrix": matrix_json(&s.cocycle(*steps)) }),
            ))
        }
        Command::Gauge { system, transform } => {
            let s = load_system(system)?;
            let t = load_transform(transform)?;
            let conjugated = s.gauge_conjugate(&t)?;
            Ok(Outcome::new(
                json!({
                    "system": system.display().to_string(),
                    "transform": transform.display().to_string(),
                }),
                json!({}),
                json!({ "matrix": matrix_json(conjugated.matrix()) }),
            ))
        }
        Command::InvariantLine { system, max_deg } => {
            let s = load_system(system)?;
            let bound = max_deg.unwrap_or_else(|| default_bound(&s));
            let report = skew_eigenvectors_report(&s, bound);
            let empty = report.verified.is_empty();
            let result = if empty && !report.parametric {
                Value::Null
            } else {
                json!({
                    "lines": Value::Array(report.verified.iter().map(line_json).collect()),
                    "parametric": report.parametric,
                })
            };
            Ok(Outcome {
                input: json!({ "system": system.display().to_string() }),
                bounds: json!({ "max_deg": bound }),
                diagnostics: Some(pencil_diagnostics_json(&report)),
                result,
                inconclusive: empty && !report.parametric,
            })
        }
        Command::SemiInvariants {
            system,
            deg_y,
            deg_x,
        } => {
            let s = load_system(system)?;
            let e_max = deg_x.unwrap_or_else(|| default_bound(&s) as u32);
            let found = semi_invariants_total(&s, *deg_y, e_max);
            let empty = found.is_empty();
            let result = if empty {
                Value::Null
            } else {
                json!({
                    "semi_invariants":
                        Value::Array(found.iter().map(semi_invariant_json).collect()),
                })
            };
            Ok(Outcome {
                input: json!({ "system": system.display().to_string() }),
                bounds: json!({ "deg_x": e_max, "deg_y": deg_y }),
                diagnostics: None,
                result,
                inconclusive: empty,
            })
        }
        Command::Straighten { system, max_deg } => {
            let s = load_system(system)?;
            let bound = max_deg.unwrap_or_else(|| default_bound(&s));
            let verdict = straighten(&s, bound).map_err(|e| match e {
                SkewError::UnsupportedDimension { .. } => {
                    CliError::NotApplicable(format!("straighten: {e}"))
                }
                other => CliError::Input(other.to_string()),
            })?;
            let (result, inconclusive) = match &verdict {
                StraightVerdict::Diagonalized(form) => {
                    let mut doc = straight_form_json(form);
                    let map = doc.as_object_mut().unwrap();
                    map.insert("verdict".into(), json!("diagonalized"));
                    (doc, false)
                }
                StraightVerdict::NoInvariantUpToBound(m) => (
                    json!({ "bound": m, "verdict": "no_invariant_up_to_bound" }),
                    true,
                ),
                StraightVerdict::ExtensionCertificate(p) => (
                    json!({ "min_poly": poly_json(p), "verdict": "extension_certificate" }),
                    false,
                ),
            };
            Ok(Outcome {
                input: json!({ "system": system.display().to_string() }),
                bounds: json!({ "max_deg": bound }),
                diagnostics: None,
                result,
                inconclusive,
            })
        }
        Command::Density {
            system,
            start,
            points,
            deg_x,
            deg_y,
        } => {
            let s = load_system(system)?;
            let p = parse_start(start, s.dim())?;
            let required = monomials_up_to(s.dim(), *deg_x, *deg_y).len();
            let m = points.unwrap_or(required);
            let probe = density_probe(&s, &p, m, *deg_x, *deg_y).map_err(|e| match e {
                SkewError::TooFewPoints { required, found } => CliError::Input(format!(
                    "density: {found} points cover {required} monomials; \
                     pass --points {required} or more"
                )),
                other => CliError::Input(other.to_string()),
            })?;
            Ok(Outcome::new(
                json!({ "start": start, "system": system.display().to_string() }),
                json!({ "deg_x": deg_x, "deg_y": deg_y, "points": m }),
                vanishing_basis_json(&probe),
            ))
        }
        Command::Closure { system, point } => {
            let s = load_system(system)?;
            let diag = require_diagonal(&s, "closure")?;
            let b = parse_point(point, s.dim())?;
            let desc = binomial_closure(&diag, &b)?;
            Ok(Outcome::new(
                json!({ "point": point, "system": system.display().to_string() }),
                json!({}),
                closure_json(&desc),
            ))
        }
        Command::Components { system } => {
            let s = load_system(system)?;
            let diag = require_diagonal(&s, "components")?;
            let lattice = relation_lattice(&diag)?;
            let count = component_count(&lattice);
            Ok(Outcome::new(
                json!({ "system": system.display().to_string() }),
                json!({}),
                json!({
                    "components": count.to_string(),
                    "lattice": int_matrix_json(&lattice.basis),
                }),
            ))
        }
        Command::Period {
            system,
            poly,
            max_deg,
        } => {
            let s = load_system(system)?;
            let p = parse_multipoly(poly, s.dim())?;
            let bound = max_deg.unwrap_or_else(|| default_bound(&s));
            let period = period_search(&s, &p, bound)?;
            let (result, inconclusive) = match period {
                Some(m) => (json!({ "period": m }), false),
                None => (Value::Null, true),
            };
            Ok(Outcome {
                input: json!({ "poly": poly, "system": system.display().to_string() }),
                bounds: json!({ "max_deg": bound }),
                diagnostics: None,
                result,
                inconclusive,
            })
        }
    }
}

fn require_diagonal(
    s: &skewdyn::system::SkewSystem,
    command: &str,
) -> Result<Vec<skewdyn::rat::Rat>, CliError> {
    constant_diagonal(s.matrix()).ok_or_else(|| {
        CliError::NotApplicable(format!(
            "{command}: the system matrix must be constant diagonal"
        ))
    })
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let name = cli.command.name();
    match run(&cli.command) {
        Ok(outcome) => {
            let mut doc = Map::new();
            doc.insert("bounds".into(), outcome.bounds);
            doc.insert("command".into(), json!(name));
            if let Some(d) = outcome.diagnostics {
                doc.insert("diagnostics".into(), d);
            }
            doc.insert("input".into(), outcome.input);
            doc.insert("result".into(), outcome.result);
            doc.insert(
                "timing_ms".into(),
                json!(started.elapsed().as_millis() as u64),
            );
            let mut text = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
            text.push('\n');
            if let Err(e) = emit(&text, cli.output.as_ref()) {
                eprintln!("skewdyn: {}", e.message());
                return ExitCode::from(2);
            }
            if outcome.inconclusive && cli.strict {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("skewdyn: {}", e.message());
            let doc = json!({ "command": name, "error": e.message() });
            let mut text = serde_json::to_string_pretty(&doc).unwrap();
            text.push('\n');
            print!("{text}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
