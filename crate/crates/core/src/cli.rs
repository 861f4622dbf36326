//! The `seshadri` command-line front end.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing cell, 2 on bad
//! arguments, 3 for a bundle that is not ample.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde::Serialize;

use crate::closedform::general::default_delta;
use crate::closedform::{
    delta_feasibility, epsilon_at_point, epsilon_min, epsilon_one_with_delta, max_feasible_delta,
    EstimateKind, GenusConstraint, PointClass, SeshadriEstimate, FIBRE_BEZOUT,
};
use crate::exactnum::ExactValue;
use crate::numlattice::{fibre_degrees, surface_params, DivisorClass, SurfaceType};
use crate::oracle::{cross_check_region, CellReport, DEFAULT_SCAN_LIMIT};
use crate::pell::{compare_bounds, pell_fundamental, ExcSet, EXC_COUNT_LIMIT};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_AMPLE: i32 = 3;

pub const SCAN_LIMIT_ENV: &str = "SESHADRI_SCAN_LIMIT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Constraint {
    /// very general point: C² ≥ m² - m + 2
    Vg,
    /// any point: C² ≥ m² - m
    G,
}

#[derive(Debug, Parser)]
#[command(
    name = "seshadri",
    version,
    about = "Seshadri constants on hyperelliptic surfaces"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Decimal digits in human output.
    #[arg(long, global = true, default_value_t = 4)]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Bundle {
    /// Surface type 1..7.
    #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=7))]
    type_id: u8,
    /// Line bundle as `a,b` in the basis (A/μ, (μ/γ)B).
    #[arg(short = 'L', long = "bundle", allow_hyphen_values = true)]
    bundle: DivisorClass,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ampleness, L², fibre classes and fibre degrees.
    Classify(Bundle),
    /// ε(L) with the case that decides it.
    Epsilon(Bundle),
    /// ε(L,1) at a very general point.
    Epsilon1 {
        #[command(flatten)]
        bundle: Bundle,
        /// δ for the non-fibre bound, e.g. 93/100.
        #[arg(long)]
        delta: Option<ExactValue>,
    },
    /// ε(L,x) for a class of points; an arbitrary point by default.
    Point {
        #[command(flatten)]
        bundle: Bundle,
        /// Multiplicity of the singular Ψ-fibre through x.
        #[arg(long, conflicts_with = "very_general")]
        fibre_mult: Option<u32>,
        #[arg(long)]
        very_general: bool,
    },
    /// Fundamental Pell solution, or a comparison with our ε(L,1) bound.
    Pell {
        #[arg(long, conflicts_with_all = ["type_id", "bundle"], required_unless_present = "type_id")]
        d: Option<u64>,
        #[arg(long = "type", requires_all = ["bundle", "compare"], value_parser = clap::value_parser!(u8).range(1..=7))]
        type_id: Option<u8>,
        #[arg(
            short = 'L',
            long = "bundle",
            allow_hyphen_values = true,
            requires = "type_id"
        )]
        bundle: Option<DivisorClass>,
        #[arg(long, requires = "type_id")]
        compare: bool,
    },
    /// Cross-check every closed form against the oracle on a grid.
    Verify(Grid),
    /// Which case fires on each cell of a grid, as CSV or JSON lines.
    Table(Grid),
    /// Feasibility of δ against a genus bound.
    Delta {
        #[arg(long)]
        value: ExactValue,
        #[arg(long, value_enum, default_value = "vg")]
        constraint: Constraint,
    },
}

#[derive(Debug, Args)]
struct Grid {
    #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=7))]
    type_id: u8,
    #[arg(long)]
    amax: i64,
    #[arg(long)]
    bmax: i64,
    /// Scan limit; defaults to $SESHADRI_SCAN_LIMIT, then 200.
    #[arg(short = 'M', long = "scan-limit")]
    scan_limit: Option<u32>,
}

/// Outcome of a command: text for stdout, plus an exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotAmple { .. } => EXIT_NOT_AMPLE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("reports serialize");
    format!("{value}\n")
}

/// `15`, or `93/100·√110 ≈ 9.75` when the value is not an integer.
fn show(v: &ExactValue, digits: u32) -> String {
    match v.as_rational() {
        Some(q) if q.is_integer() => v.to_string(),
        _ => format!("{v} ≈ {}", v.to_decimal(digits)),
    }
}

fn show_estimate(label: &str, e: &SeshadriEstimate, digits: u32) -> String {
    match e.kind {
        EstimateKind::Exact => {
            let v = ExactValue::rational(e.value.clone().expect("exact value"));
            let source = if e.provenance == FIBRE_BEZOUT {
                "fibre and Bezout bounds meet".to_owned()
            } else {
                format!("Theorem: {}", e.provenance)
            };
            format!("{label} = {} ({source})\n", show(&v, digits))
        }
        EstimateKind::CertifiedRational => {
            let upper = e
                .upper
                .as_ref()
                .map(|u| format!(", upper = {}", show(u, digits)))
                .unwrap_or_default();
            format!("{label} is rational{upper}, branch: {}\n", e.provenance)
        }
        EstimateKind::BoundedBelow | EstimateKind::UnknownWithBound => {
            let lower = e
                .lower
                .as_ref()
                .map(|v| show(v, digits))
                .unwrap_or_else(|| "?".into());
            let upper = e
                .upper
                .as_ref()
                .map(|v| show(v, digits))
                .unwrap_or_else(|| "?".into());
            format!(
                "lower = {lower}, upper = {upper}, branch: {}\n",
                e.provenance
            )
        }
    }
}

fn rational_arg(v: &ExactValue, what: &str) -> Result<BigRational> {
    v.as_rational()
        .cloned()
        .ok_or_else(|| Error::domain(format!("{what} must be rational, got {v}")))
}

fn scan_limit(explicit: Option<u32>) -> Result<u32> {
    if let Some(m) = explicit {
        return Ok(m);
    }
    match std::env::var(SCAN_LIMIT_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| {
            Error::domain(format!(
                "{SCAN_LIMIT_ENV} must be a positive integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_SCAN_LIMIT),
    }
}

#[derive(Serialize)]
struct Classification {
    type_id: u8,
    group: &'static str,
    bundle: DivisorClass,
    ample: bool,
    self_intersection: i64,
    psi_fibre: DivisorClass,
    phi_fibre: DivisorClass,
    degree_on_psi_fibre: i64,
    degree_on_phi_fibre: i64,
}

#[derive(Serialize)]
struct TableRow {
    type_id: u8,
    bundle: DivisorClass,
    epsilon_min: SeshadriEstimate,
    epsilon_one: SeshadriEstimate,
}

#[derive(Serialize)]
struct PellReport {
    d: u64,
    solution: crate::pell::PellSolution,
    pell_bound: ExactValue,
    exc_integer_count: u64,
    exc_reduced_fraction_count: Option<u64>,
}

#[derive(Serialize)]
struct DeltaReport {
    delta: ExactValue,
    constraint: GenusConstraint,
    feasible: bool,
    violating_from: Option<u64>,
    violating_to: Option<u64>,
    sup_delta_squared: ExactValue,
    sup_attained_at: u64,
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let json = cli.format == Format::Json;
    let digits = cli.digits;
    let emit = |label: &str, e: &SeshadriEstimate| {
        if json {
            json_line(e)
        } else {
            show_estimate(label, e, digits)
        }
    };
    Ok(match &cli.command {
        Command::Classify(b) => {
            let s = surface_params(b.type_id)?;
            let l = b.bundle;
            let (psi, phi) = s.fibre_classes();
            let (on_psi, on_phi) = fibre_degrees(&s, l);
            let c = Classification {
                type_id: s.type_id,
                group: s.group_name,
                bundle: l,
                ample: l.is_ample(),
                self_intersection: l.self_intersection() as i64,
                psi_fibre: psi,
                phi_fibre: phi,
                degree_on_psi_fibre: on_psi as i64,
                degree_on_phi_fibre: on_phi as i64,
            };
            let text = if json {
                json_line(&c)
            } else {
                format!(
                    "{s}\nL = {l}: {}, L² = {}\nfibre classes A = {psi}, B = {phi}\nL·A = {on_psi}, L·B = {on_phi}\n",
                    if c.ample { "ample" } else { "not ample" },
                    c.self_intersection,
                )
            };
            Outcome {
                text,
                code: if c.ample { EXIT_OK } else { EXIT_NOT_AMPLE },
            }
        }
        Command::Epsilon(b) => {
            let s = surface_params(b.type_id)?;
            Outcome::ok(emit("ε(L)", &epsilon_min(&s, b.bundle)?))
        }
        Command::Epsilon1 { bundle, delta } => {
            let s = surface_params(bundle.type_id)?;
            let delta = match delta {
                Some(d) => rational_arg(d, "δ")?,
                None => default_delta(),
            };
            Outcome::ok(emit(
                "ε(L,1)",
                &epsilon_one_with_delta(&s, bundle.bundle, &delta)?,
            ))
        }
        Command::Point {
            bundle,
            fibre_mult,
            very_general,
        } => {
            let s = surface_params(bundle.type_id)?;
            let x = match (fibre_mult, very_general) {
                (Some(n), _) => PointClass::OnSingularFibre(*n),
                (None, true) => PointClass::VeryGeneral,
                (None, false) => PointClass::Arbitrary,
            };
            Outcome::ok(emit("ε(L,x)", &epsilon_at_point(&s, bundle.bundle, x)?))
        }
        Command::Pell {
            d, type_id, bundle, ..
        } => match (d, type_id, bundle) {
            (Some(d), _, _) => {
                let solution = pell_fundamental(*d)?;
                let exc = ExcSet::new(*d, &solution);
                let r = PellReport {
                    d: *d,
                    pell_bound: ExactValue::rational(exc.pell_bound()),
                    exc_integer_count: exc.integer_max(),
                    exc_reduced_fraction_count: exc.reduced_fraction_count(EXC_COUNT_LIMIT),
                    solution,
                };
                Outcome::ok(if json {
                    json_line(&r)
                } else {
                    format!(
                        "q² - {d}·p² = 1: (p, q) = ({}, {})\npd/q = {}\nExc: integers 1..={}, {}\n",
                        r.solution.p,
                        r.solution.q,
                        show(&r.pell_bound, digits),
                        r.exc_integer_count,
                        fraction_count_text(r.exc_reduced_fraction_count),
                    )
                })
            }
            (None, Some(t), Some(l)) => {
                let s = surface_params(*t)?;
                let c = compare_bounds(&s, *l)?;
                Outcome::ok(if json {
                    json_line(&c)
                } else {
                    let ours = format!(
                        "{} {} (branch: {})",
                        if c.our_bound_exact {
                            "ε(L,1) ="
                        } else {
                            "ε(L,1) ≥"
                        },
                        show(&c.our_bound, digits),
                        c.our_provenance
                    );
                    match &c.pell {
                        None => format!("L² = {} is a square: Pell bound not applicable\n{ours}\n", c.d),
                        Some(p) => format!(
                            "L² = {}, (p, q) = ({}, {})\n{ours}\nPell bound pd/q = {}\nlarger: {}\nExc: integers 1..={}, {}\n",
                            c.d,
                            p.solution.p,
                            p.solution.q,
                            show(&p.pell_bound, digits),
                            p.which_larger,
                            p.exc_integer_count,
                            fraction_count_text(p.exc_reduced_fraction_count),
                        ),
                    }
                })
            }
            _ => {
                return Err(Error::domain(
                    "pell needs --d, or --type with -L and --compare",
                ))
            }
        },
        Command::Verify(g) => {
            let s = surface_params(g.type_id)?;
            let cells = cross_check_region(&s, g.amax, g.bmax, scan_limit(g.scan_limit)?)?;
            let passed = cells.iter().filter(|c| c.pass).count();
            let text = if json {
                cells.iter().map(json_line).collect()
            } else {
                verify_summary(&s, &cells, passed)
            };
            let code = if passed == cells.len() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            Outcome { text, code }
        }
        Command::Table(g) => {
            let s = surface_params(g.type_id)?;
            if g.amax < 1 || g.bmax < 1 {
                return Err(Error::domain(format!(
                    "grid bounds must be positive, got {}×{}",
                    g.amax, g.bmax
                )));
            }
            let mut text = String::new();
            if !json {
                text.push_str(
                    "a,b,epsilon_min_kind,epsilon_min_branch,epsilon_one_kind,epsilon_one_branch\n",
                );
            }
            for a in 1..=g.amax {
                for b in 1..=g.bmax {
                    let l = DivisorClass::new(a, b);
                    let row = TableRow {
                        type_id: s.type_id,
                        bundle: l,
                        epsilon_min: epsilon_min(&s, l)?,
                        epsilon_one: epsilon_one_with_delta(&s, l, &default_delta())?,
                    };
                    if json {
                        text.push_str(&json_line(&row));
                    } else {
                        let kind = |e: &SeshadriEstimate| {
                            serde_json::to_value(e.kind)
                                .expect("kind")
                                .as_str()
                                .unwrap_or_default()
                                .to_owned()
                        };
                        text.push_str(&format!(
                            "{a},{b},{},{},{},{}\n",
                            kind(&row.epsilon_min),
                            row.epsilon_min.provenance,
                            kind(&row.epsilon_one),
                            row.epsilon_one.provenance
                        ));
                    }
                }
            }
            Outcome::ok(text)
        }
        Command::Delta { value, constraint } => {
            let delta = rational_arg(value, "δ")?;
            let constraint = match constraint {
                Constraint::Vg => GenusConstraint::VeryGeneral,
                Constraint::G => GenusConstraint::General,
            };
            let f = delta_feasibility(&delta, constraint)?;
            let (sup, at) = max_feasible_delta(constraint);
            let r = DeltaReport {
                delta: ExactValue::rational(delta),
                constraint,
                feasible: f.feasible,
                violating_from: f.violating.as_ref().map(|r| *r.start()),
                violating_to: f.violating.as_ref().map(|r| *r.end()),
                sup_delta_squared: ExactValue::rational(sup.clone()),
                sup_attained_at: at,
            };
            Outcome::ok(if json {
                json_line(&r)
            } else {
                let status = match &f.violating {
                    None => "feasible".to_owned(),
                    Some(v) => format!("infeasible, violated for m = {}..={}", v.start(), v.end()),
                };
                let sup_delta = ExactValue::sqrt_of(&sup)?;
                format!(
                    "δ = {}: {status}\nsup δ = {} (δ² = {sup}, binding at m = {at})\n",
                    show(&r.delta, digits),
                    show(&sup_delta, digits),
                )
            })
        }
    })
}

fn fraction_count_text(count: Option<u64>) -> String {
    match count {
        Some(n) => format!("{n} reduced fractions"),
        None => format!("fractions not counted (q² > {EXC_COUNT_LIMIT})"),
    }
}

fn verify_summary(s: &SurfaceType, cells: &[CellReport], passed: usize) -> String {
    let mut text = String::new();
    for cell in cells.iter().filter(|c| !c.pass) {
        for check in cell.checks.iter().filter(|c| !c.pass) {
            text.push_str(&format!(
                "FAIL type {} {}: {:?} estimate {} ({}), oracle [{}, {}]\n",
                s.type_id,
                cell.bundle,
                check.query,
                check.estimate.kind,
                check.estimate.provenance,
                check.report.lower,
                check.report.upper,
            ));
        }
    }
    text.push_str(&format!("{passed}/{} PASS\n", cells.len()));
    text
}
