//! Command line front end: argument parsing, dispatch and rendering.
//!
//! Every command builds a JSON document; `--json` prints it verbatim, and the
//! default text mode prints a short human-readable rendering of the same data.
//! Exact scalars are always serialized as strings.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Element;
use crate::dynamics::{self, PeriodicStatus, PeriodicVerdict, Semantics, DEFAULT_N_MAX};
use crate::error::{Error, Result};
use crate::parse::{parse_element, parse_poly, AlgebraDecl, Symbolic};
use crate::poly::{Poly, DEFAULT_DEGREE_CAP};
use crate::oct::Octonion;
use crate::quat::{QuatSpec, Quaternion};
use crate::solver::{self, ClassSolution, ConjClass, Mode, RootSet, SolveOptions};

#[derive(Parser, Debug)]
#[command(
    name = "qdyn",
    version,
    about = "Exact dynamics of polynomials over quaternion and octonion algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the result as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct Common {
    /// quat:ALPHA,BETA@FIELD or oct:ALPHA,BETA,GAMMA@FIELD, FIELD = Q | Q(sD).
    #[arg(long, default_value = "quat:-1,-1@Q")]
    pub algebra: String,

    /// Polynomial in x, e.g. "x^2 + (i+1)*x + 1 + i*j".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Relative acceptance tolerance for numeric points.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    /// Bits used to embed exact coefficients into floating point.
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Compose,
    Eval,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fixed points of f, i.e. roots of f(x) - x (quaternions only).
    FixedPoints {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Roots of a quaternion polynomial, one entry per conjugacy class.
    Roots {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Iterates of a point under composition and/or repeated evaluation.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Both)]
        semantics: SemanticsArg,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
    },
    /// The n-fold composite f(f(...f(x))).
    Compose {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
    },
    /// The companion polynomial conj(g) * g (quaternions only).
    Companion {
        #[command(flatten)]
        common: Common,
    },
    /// Certify or refute that a point is r-periodic.
    CheckPeriodic {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
    },
    /// Check f(p) = p, then f∘n(p) = p for n up to n-max.
    OctCheck {
        #[arg(long, default_value = "oct:-1,-1,-1@Q")]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
    },
}

/// Parses `args` (program name first), runs the command, and returns the exit
/// code: 0 on success, 1 on a mathematical error, 2 on a usage or parse error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let json_out = cli.json;
    match execute(&cli.command) {
        Ok(doc) => {
            let text = if json_out {
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            } else {
                render_text(&doc)
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let code = if e.is_usage() { 2 } else { 1 };
            if json_out {
                let doc = json!({ "error": e.to_string(), "exit_code": code });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

/// Runs a parsed command and returns its JSON document.
pub fn execute(command: &Command) -> Result<Value> {
    match command {
        Command::FixedPoints { common, solve } | Command::Roots { common, solve } => {
            let fixed = matches!(command, Command::FixedPoints { .. });
            let name = if fixed { "fixed-points" } else { "roots" };
            let spec = quat_only(&common.algebra, name)?;
            let f: Poly<Quaternion> = parse_poly(&common.poly, &spec)?;
            let opts = solve_options(solve);
            let set = if fixed {
                dynamics::fixed_points(&f, &opts)?
            } else {
                solver::roots(&f, &opts)?
            };
            let mut doc = header(name, &common.algebra, json!({ "poly": f.to_string() }))?;
            doc["mode"] = json!(mode_name(opts.mode));
            merge(&mut doc, root_set_json(&set, &opts));
            Ok(doc)
        }
        Command::Companion { common } => {
            let spec = quat_only(&common.algebra, "companion")?;
            let f: Poly<Quaternion> = parse_poly(&common.poly, &spec)?;
            let c = solver::companion(&f)?;
            let mut doc = header("companion", &common.algebra, json!({ "poly": f.to_string() }))?;
            doc["result"] = json!({
                "companion": c.to_string(),
                "coefficients": c.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok(doc)
        }
        Command::Compose { common, n, degree_cap } => match decl(&common.algebra)? {
            AlgebraDecl::Quat(spec) => compose_cmd::<Quaternion>(&spec, common, *n, *degree_cap),
            AlgebraDecl::Oct(spec) => compose_cmd::<Octonion>(&spec, common, *n, *degree_cap),
        },
        Command::Orbit {
            common,
            point,
            n_max,
            semantics,
            degree_cap,
        } => {
            let args = (point.as_str(), *n_max, *semantics, *degree_cap);
            match decl(&common.algebra)? {
                AlgebraDecl::Quat(spec) => orbit_cmd::<Quaternion>(&spec, common, args),
                AlgebraDecl::Oct(spec) => orbit_cmd::<Octonion>(&spec, common, args),
            }
        }
        Command::CheckPeriodic {
            common,
            point,
            r,
            n_max,
            degree_cap,
        } => {
            let args = (point.as_str(), *r, *n_max, *degree_cap);
            match decl(&common.algebra)? {
                AlgebraDecl::Quat(spec) => periodic_cmd::<Quaternion>(&spec, common, args),
                AlgebraDecl::Oct(spec) => periodic_cmd::<Octonion>(&spec, common, args),
            }
        }
        Command::OctCheck {
            algebra,
            poly,
            point,
            n_max,
            degree_cap,
        } => {
            let AlgebraDecl::Oct(spec) = decl(algebra)? else {
                return Err(Error::InvalidAlgebra("oct-check needs an oct: algebra".into()));
            };
            let f = parse_poly(poly, &spec)?;
            let p = parse_element(point, &spec)?;
            let rep = dynamics::octonion_fixed_check(&f, &p, *n_max, *degree_cap)?;
            let mut doc = header(
                "oct-check",
                algebra,
                json!({ "poly": f.to_string(), "point": p.to_string(), "n_max": n_max }),
            )?;
            doc["result"] = json!({
                "fixed": rep.fixed,
                "first_failure": rep.first_failure,
                "values": rep.values.iter().map(|(n, v)| json!({
                    "n": n,
                    "value": v.to_string(),
                    "equals_point": *v == p,
                })).collect::<Vec<_>>(),
            });
            Ok(doc)
        }
    }
}

fn decl(text: &str) -> Result<AlgebraDecl> {
    text.parse()
}

fn quat_only(text: &str, command: &str) -> Result<std::sync::Arc<QuatSpec>> {
    match decl(text)? {
        AlgebraDecl::Quat(spec) => Ok(spec),
        AlgebraDecl::Oct(_) => Err(Error::InvalidAlgebra(format!(
            "{command} needs a quat: algebra"
        ))),
    }
}

fn header(command: &str, algebra: &str, inputs: Value) -> Result<Value> {
    Ok(json!({
        "command": command,
        "algebra": decl(algebra)?.to_string(),
        "inputs": inputs,
    }))
}

fn merge(doc: &mut Value, extra: Value) {
    if let (Value::Object(d), Value::Object(e)) = (doc, extra) {
        d.extend(e);
    }
}

fn solve_options(a: &SolveArgs) -> SolveOptions {
    SolveOptions {
        mode: match a.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        },
        precision: a.precision,
        tolerance: a.tolerance,
        ..SolveOptions::default()
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::Numeric => "numeric",
    }
}

fn class_json(c: &ConjClass) -> Value {
    match c {
        ConjClass::Exact { trace, norm } => json!({ "T": trace.to_string(), "N": norm.to_string() }),
        ConjClass::Numeric {
            trace,
            norm,
            tolerance,
        } => json!({ "T": trace, "N": norm, "approx": true, "tolerance": tolerance }),
    }
}

fn solution_json(s: &ClassSolution, opts: &SolveOptions) -> Value {
    let mut v = json!({ "variant": s.variant(), "class": class_json(s.class()) });
    match s {
        ClassSolution::Point {
            point, residual, ..
        } => {
            v["point"] = json!(point.to_string());
            v["coordinates"] = json!(point.coords().iter().map(ToString::to_string).collect::<Vec<_>>());
            if let Some(r) = residual {
                v["residual"] = json!(r);
                v["approx"] = json!(true);
                v["tolerance"] = json!(opts.tolerance);
            }
        }
        ClassSolution::Anomaly { report, .. } => v["report"] = json!(report),
        ClassSolution::Sphere { .. } | ClassSolution::NoRoot { .. } => {}
    }
    v
}

fn root_set_json(set: &RootSet, opts: &SolveOptions) -> Value {
    json!({
        "companion": set.companion.to_string(),
        "residual_factor": set.extraction.residual.as_ref().map(ToString::to_string),
        "complete": set.extraction.complete,
        "result": set.solutions.iter().map(|s| solution_json(s, opts)).collect::<Vec<_>>(),
    })
}

fn compose_cmd<E: Symbolic>(spec: &E::Spec, common: &Common, n: usize, cap: usize) -> Result<Value> {
    let f: Poly<E> = parse_poly(&common.poly, spec)?;
    let g = f.iterate_compose(n, cap)?;
    let mut doc = header("compose", &common.algebra, json!({ "poly": f.to_string(), "n": n }))?;
    doc["result"] = json!({ "poly": g.to_string(), "degree": g.degree() });
    Ok(doc)
}

fn orbit_cmd<E: Symbolic>(
    spec: &E::Spec,
    common: &Common,
    (point, n_max, semantics, cap): (&str, usize, SemanticsArg, usize),
) -> Result<Value> {
    let f: Poly<E> = parse_poly(&common.poly, spec)?;
    let p: E = parse_element(point, spec)?;
    let wanted: &[Semantics] = match semantics {
        SemanticsArg::Compose => &[Semantics::Compose],
        SemanticsArg::Eval => &[Semantics::Eval],
        SemanticsArg::Both => &[Semantics::Compose, Semantics::Eval],
    };
    let mut result = serde_json::Map::new();
    for &s in wanted {
        let rep = dynamics::orbit(&f, &p, n_max, s, cap)?;
        result.insert(
            s.to_string(),
            json!({
                "points": rep.points.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "commutes_with_start": rep.commutes_with_start,
            }),
        );
    }
    let mut doc = header(
        "orbit",
        &common.algebra,
        json!({ "poly": f.to_string(), "point": p.to_string(), "n_max": n_max }),
    )?;
    doc["result"] = Value::Object(result);
    Ok(doc)
}

fn verdict_json<E: Element>(v: &PeriodicVerdict<E>) -> (Value, Value) {
    let refuted_at = match v.status {
        PeriodicStatus::RefutedAt(n) => Some(n),
        _ => None,
    };
    let e = &v.evidence;
    (
        json!({ "r": v.r, "status": v.status.to_string(), "refuted_at": refuted_at }),
        json!({
            "r_fixed": e.r_fixed,
            "r_image": e.r_image.to_string(),
            "commutation_failure_t": e.commutation_failure,
            "multiples_checked": e.multiples_checked,
            "refuting_value": e.refuting_value.as_ref().map(ToString::to_string),
            "degree_cap_hit_at": e.degree_cap_hit,
            "note": e.note,
        }),
    )
}

fn periodic_cmd<E: Symbolic>(
    spec: &E::Spec,
    common: &Common,
    (point, r, n_max, cap): (&str, usize, usize, usize),
) -> Result<Value> {
    let f: Poly<E> = parse_poly(&common.poly, spec)?;
    let p: E = parse_element(point, spec)?;
    let v = dynamics::certify_periodic(&f, &p, r, n_max, cap)?;
    let (verdict, evidence) = verdict_json(&v);
    let mut doc = header(
        "check-periodic",
        &common.algebra,
        json!({ "poly": f.to_string(), "point": p.to_string(), "r": r, "n_max": n_max }),
    )?;
    doc["verdicts"] = verdict;
    doc["evidence"] = evidence;
    Ok(doc)
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn class_text(c: &Value) -> String {
    let approx = if c["approx"] == json!(true) { "~" } else { "=" };
    format!("T {approx} {}, N {approx} {}", scalar_text(&c["T"]), scalar_text(&c["N"]))
}

fn render_text(doc: &Value) -> String {
    let mut s = String::new();
    let mut line = |l: String| {
        s.push_str(&l);
        s.push('\n');
    };
    let result = &doc["result"];
    match doc["command"].as_str().unwrap_or_default() {
        "fixed-points" | "roots" => {
            line(format!("companion: {}", scalar_text(&doc["companion"])));
            if let Some(r) = doc["residual_factor"].as_str() {
                line(format!("factor without classes: {r}"));
            }
            for sol in result.as_array().into_iter().flatten() {
                let class = class_text(&sol["class"]);
                let tail = match sol["variant"].as_str().unwrap_or_default() {
                    "point" => match sol.get("residual") {
                        Some(r) => format!("point {}  (residual {})", scalar_text(&sol["point"]), r),
                        None => format!("point {}", scalar_text(&sol["point"])),
                    },
                    "sphere" => "sphere: the whole class".into(),
                    "none" => "no root".into(),
                    _ => format!("anomaly: {}", scalar_text(&sol["report"])),
                };
                line(format!("[{class}] {tail}"));
            }
            if result.as_array().is_some_and(Vec::is_empty) {
                line("no roots".into());
            }
        }
        "companion" => line(scalar_text(&result["companion"])),
        "compose" => line(scalar_text(&result["poly"])),
        "orbit" => {
            for (name, rep) in result.as_object().into_iter().flatten() {
                line(format!("{name}:"));
                let flags = rep["commutes_with_start"].as_array().cloned().unwrap_or_default();
                for (n, (p, c)) in rep["points"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .zip(flags)
                    .enumerate()
                {
                    let mark = if c == json!(true) { "" } else { "  (does not commute with start)" };
                    line(format!("  {}: {}{mark}", n + 1, scalar_text(p)));
                }
            }
        }
        "check-periodic" => {
            line(format!("verdict: {}", scalar_text(&doc["verdicts"]["status"])));
            let e = &doc["evidence"];
            line(format!("f∘r(point) = {}", scalar_text(&e["r_image"])));
            if let Some(t) = e["commutation_failure_t"].as_u64() {
                line(format!("commutation fails at t = {t}"));
            }
            line(scalar_text(&e["note"]));
        }
        "oct-check" => {
            for v in result["values"].as_array().into_iter().flatten() {
                let ok = if v["equals_point"] == json!(true) { "=" } else { "!=" };
                line(format!("f∘{}(p) = {}  {ok} p", v["n"], scalar_text(&v["value"])));
            }
        }
        _ => line(doc.to_string()),
    }
    s
}
