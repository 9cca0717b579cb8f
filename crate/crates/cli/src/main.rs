mod error;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use toric_core::appendix::{energy_report, PerturbationProfile};
use toric_core::cohomology::{
    c1_squared_from_fan, einstein_obstruction_basic, einstein_obstruction_toric, quadric_class, quadric_lattice,
    ObstructionVerdict,
};
use toric_core::cone::{
    builtin_fan, minimize_action, scan_line, ConeError, MinimizeOptions, MinimizerResult, NormalFan, ScanRow,
    Surface, SCAN_CSV_HEADER,
};
use toric_core::io::ReportJson;
use toric_core::numeric::{to_f64, Rational};

use error::CliError;
use input::{float_arg, int_arg, parse_surface, rational_arg, rational_list, resolve, Resolved, Shape, Source};
use render::{emit, floats, render, Format, Table};

/// Invariants of toric surfaces: the virtual action, Futaki data, Weyl bounds
/// and Einstein obstructions.
#[derive(Debug, Parser)]
#[command(name = "toric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact invariants of one polygon
    Report {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        output: Output,
    },
    /// Minimize the virtual action over the reduced symplectic cone
    Minimize {
        #[command(flatten)]
        source: Source,
        /// Support file with the starting point
        #[arg(long)]
        support: Option<PathBuf>,
        #[arg(long, default_value = "1e-10")]
        tol: String,
        #[arg(long = "max-iter", default_value = "10000")]
        max_iter: String,
        #[command(flatten)]
        output: Output,
    },
    /// Sample the invariants along a line λ(t) = start + t·direction
    Scan {
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        fan: Option<PathBuf>,
        /// Comma separated support numbers at t = 0
        #[arg(long)]
        start: Option<String>,
        /// Comma separated direction
        #[arg(long)]
        direction: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value = "50")]
        steps: String,
        #[command(flatten)]
        output: Output,
    },
    /// Einstein obstruction verdict
    Obstruct {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        shape: Shape,
        /// Override c₁² (defaults to 12 minus the number of edges)
        #[arg(long = "c1-squared")]
        c1_squared: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Energy quadrature for the oscillating perturbations of the appendix
    Appendix {
        #[arg(long, default_value = "0.5")]
        epsilon: String,
        #[arg(long, default_value = "2")]
        k: String,
        /// Points per axis; defaults to max(256, 8k²)
        #[arg(long)]
        grid: Option<String>,
        /// c₁·[ω] in the scalar bound; defaults to c₁² of --surface (cp2 when absent)
        #[arg(long = "c1-omega")]
        c1_omega: Option<String>,
        #[arg(long)]
        surface: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::NotConverged(diagnostics)) => {
            print!("{diagnostics}");
            eprintln!("error: minimizer did not converge");
            ExitCode::from(5)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Report { source, shape, output } => report(&source, &shape, &output),
        Command::Minimize {
            source,
            support,
            tol,
            max_iter,
            output,
        } => minimize(&source, support, &tol, &max_iter, &output),
        Command::Scan {
            surface,
            fan,
            start,
            direction,
            from,
            to,
            steps,
            output,
        } => scan(surface, fan, start, direction, from, to, &steps, &output),
        Command::Obstruct {
            source,
            shape,
            c1_squared,
            output,
        } => obstruct(&source, &shape, c1_squared, &output),
        Command::Appendix {
            epsilon,
            k,
            grid,
            c1_omega,
            surface,
            output,
        } => appendix(&epsilon, &k, grid, c1_omega, surface, &output),
    }
}

fn report(source: &Source, shape: &Shape, output: &Output) -> Result<(), CliError> {
    let Resolved::Polygon { polygon, .. } = resolve(source, shape)? else {
        return Err(CliError::Validation("report needs a polygon, not a lattice file".into()));
    };
    let r = ReportJson::compute(&polygon);
    let text = render(output.format, &r, || {
        let vertices: Vec<String> = r.vertices.iter().map(ToString::to_string).collect();
        Table(vec![
            ("vertices", vertices.join(" ")),
            ("area", r.area.to_string()),
            ("perimeter", r.perimeter.to_string()),
            ("barycenter_interior", r.barycenter_interior.to_string()),
            ("barycenter_boundary", r.barycenter_boundary.to_string()),
            ("displacement", r.displacement.to_string()),
            ("inertia", format!("[{}, {}]", r.inertia[0], r.inertia[1])),
            ("futaki", format!("{}π", r.futaki)),
            ("futaki_norm_sq_over_pi2", r.futaki_norm_sq_over_pi2.to_string()),
            ("virtual_action", format!("{} ≈ {}", r.virtual_action, to_f64(&r.virtual_action))),
            ("weyl_bound", format!("({})π² ≈ {}", r.weyl_bound_over_pi2, r.weyl_bound)),
            (
                "weyl_bound_simple",
                format!("({})π² ≈ {}", r.weyl_bound_simple_over_pi2, r.weyl_bound_simple),
            ),
            ("avg_hermitian_scalar_over_pi", r.avg_hermitian_scalar_over_pi.to_string()),
            (
                "min_vertex_scalar_over_four_pi",
                format!("{} at {}", r.min_vertex_scalar_over_four_pi, r.min_vertex),
            ),
        ])
    });
    emit(&text, output.out.as_deref())
}

fn minimizer_table(r: &MinimizerResult) -> Table {
    Table(vec![
        ("surface", r.name.clone().unwrap_or_else(|| "custom".into())),
        ("action", r.action.to_string()),
        ("support", floats(&r.support)),
        ("reduced_coordinates", floats(&r.reduced_coordinates)),
        ("gradient_sup_norm", r.gradient_sup_norm.to_string()),
        ("hessian_eigenvalues", floats(&r.hessian_eigenvalues)),
        ("iterations", r.iterations.to_string()),
        ("converged", r.converged.to_string()),
        ("displacement", floats(&r.displacement)),
        ("futaki_norm_sq_over_pi2", r.futaki_norm_sq_over_pi2.to_string()),
    ])
}

fn minimize(
    source: &Source,
    support: Option<PathBuf>,
    tol: &str,
    max_iter: &str,
    output: &Output,
) -> Result<(), CliError> {
    let tolerance = float_arg("tol", tol)?;
    if !(tolerance > 0.0) {
        return Err(CliError::Validation("--tol must be positive".into()));
    }
    let max_iterations: usize = int_arg("max-iter", max_iter)?;
    if max_iterations == 0 {
        return Err(CliError::Validation("--max-iter must be at least 1".into()));
    }
    let shape = Shape {
        support,
        alpha: None,
        t: None,
    };
    let (fan, initial) = match resolve(source, &shape)? {
        Resolved::Polygon {
            polygon,
            fan: Some(fan),
            ..
        } => {
            let _ = polygon;
            let initial = shape.support.as_deref().map(input::read_support).transpose()?;
            (fan, initial)
        }
        Resolved::Polygon { polygon, .. } => {
            let rays = polygon.normals().iter().map(|n| (n.x, n.y)).collect();
            let fan = NormalFan::new(rays, None)?;
            (fan, Some(polygon.supports()))
        }
        Resolved::Lattice { .. } => {
            return Err(CliError::Validation("minimize needs a fan or a polygon".into()));
        }
    };
    let options = MinimizeOptions {
        tolerance,
        max_iterations,
        initial: initial.map(|s| s.iter().map(to_f64).collect()),
    };
    match minimize_action(&fan, &options) {
        Ok(r) => emit(&render(output.format, &r, || minimizer_table(&r)), output.out.as_deref()),
        Err(ConeError::NotConverged(r)) => {
            let text = render(output.format, &*r, || minimizer_table(&r));
            match &output.out {
                Some(path) => {
                    emit(&text, Some(path))?;
                    Err(CliError::NotConverged(String::new()))
                }
                None => Err(CliError::NotConverged(text)),
            }
        }
        Err(e) => Err(e.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn scan(
    surface: Option<String>,
    fan_path: Option<PathBuf>,
    start: Option<String>,
    direction: Option<String>,
    from: Option<String>,
    to: Option<String>,
    steps: &str,
    output: &Output,
) -> Result<(), CliError> {
    let (fan, surface) = match (&surface, &fan_path) {
        (Some(name), None) => {
            let s = parse_surface(name)?;
            (builtin_fan(s), Some(s))
        }
        (None, Some(path)) => (input::read_fan(path)?, None),
        _ => return Err(CliError::Validation("scan needs exactly one of --surface and --fan".into())),
    };
    let (default_start, default_direction, default_range): (&[f64], &[f64], (f64, f64)) = match surface {
        Some(Surface::Dp1) => (&[0.0, 0.0, 1.0, 1.0], &[0.0, 0.0, 1.0, 0.0], (0.1, 5.0)),
        Some(Surface::Quadric) => (&[0.0, 0.0, 1.0, 0.0], &[0.0, 0.0, 0.0, 1.0], (1.0, 5.0)),
        _ => (&[], &[], (0.0, 1.0)),
    };
    let list = |name: &str, given: &Option<String>, default: &[f64]| -> Result<Vec<f64>, CliError> {
        match given {
            Some(s) => Ok(rational_list(name, s)?.iter().map(to_f64).collect()),
            None if !default.is_empty() => Ok(default.to_vec()),
            None => Err(CliError::Validation(format!("--{name} is required for this fan"))),
        }
    };
    let start = list("start", &start, default_start)?;
    let direction = list("direction", &direction, default_direction)?;
    let bound = |name: &str, given: &Option<String>, default: f64| -> Result<f64, CliError> {
        given.as_deref().map(|s| rational_arg(name, s).map(|r| to_f64(&r))).unwrap_or(Ok(default))
    };
    let range = (bound("from", &from, default_range.0)?, bound("to", &to, default_range.1)?);
    let steps: usize = int_arg("steps", steps)?;
    if steps == 0 {
        return Err(CliError::Validation("--steps must be at least 1".into()));
    }
    let rows = scan_line(&fan, &start, &direction, range, steps)?;
    let text = match output.format {
        Format::Json => render::json(&rows),
        Format::Text | Format::Csv => csv(&rows),
    };
    emit(&text, output.out.as_deref())
}

fn csv(rows: &[ScanRow]) -> String {
    let mut out = format!("{SCAN_CSV_HEADER}\n");
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Obstruction<'a> {
    predicate: &'a str,
    #[serde(flatten)]
    verdict: &'a ObstructionVerdict<Rational>,
}

fn obstruct(source: &Source, shape: &Shape, c1_squared: Option<String>, output: &Output) -> Result<(), CliError> {
    let c1_override = c1_squared.map(|s| rational_arg("c1-squared", &s)).transpose()?;
    let quadric_t = source.surface.as_deref() == Some("quadric") && shape.t.is_some();
    let (predicate, verdict) = if quadric_t {
        if c1_override.is_some() {
            return Err(CliError::Validation("--c1-squared does not apply to the quadric class".into()));
        }
        let t = rational_arg("t", shape.t.as_deref().unwrap_or_default())?;
        ("basic", einstein_obstruction_basic(&quadric_lattice(), &quadric_class(t))?)
    } else {
        match resolve(source, shape)? {
            Resolved::Lattice { lattice, omega } => {
                if c1_override.is_some() {
                    return Err(CliError::Validation("--c1-squared does not apply to lattice input".into()));
                }
                ("basic", einstein_obstruction_basic(&lattice, &omega)?)
            }
            Resolved::Polygon { polygon, fan, .. } => {
                let c1 = c1_override.or_else(|| fan.as_ref().map(|f| Rational::from_integer(c1_squared_from_fan(f).into())));
                ("toric", einstein_obstruction_toric(&polygon, c1))
            }
        }
    };
    let wrapped = Obstruction {
        predicate,
        verdict: &verdict,
    };
    let text = render(output.format, &wrapped, || {
        Table(vec![
            ("predicate", predicate.to_string()),
            ("verdict", verdict.verdict().to_string()),
            ("lhs", format!("{} ≈ {}", verdict.lhs, to_f64(&verdict.lhs))),
            ("rhs", verdict.rhs.to_string()),
            ("margin", format!("{} ≈ {}", verdict.margin, to_f64(&verdict.margin))),
            ("controlled_cone", verdict.controlled.to_string()),
        ])
    });
    emit(&text, output.out.as_deref())
}

fn appendix(
    epsilon: &str,
    k: &str,
    grid: Option<String>,
    c1_omega: Option<String>,
    surface: Option<String>,
    output: &Output,
) -> Result<(), CliError> {
    let epsilon = float_arg("epsilon", epsilon)?;
    let k: u32 = int_arg("k", k)?;
    if k == 0 {
        return Err(CliError::Validation("--k must be at least 1".into()));
    }
    let grid_n = match grid {
        Some(g) => int_arg("grid", &g)?,
        None => PerturbationProfile::required_grid(k).max(256),
    };
    let c1_dot_omega = match (c1_omega, surface) {
        (Some(v), _) => float_arg("c1-omega", &v)?,
        (None, Some(name)) => c1_squared_from_fan(&builtin_fan(parse_surface(&name)?)) as f64,
        (None, None) => c1_squared_from_fan(&builtin_fan(Surface::Cp2)) as f64,
    };
    let profile = PerturbationProfile::new(epsilon, k, grid_n)?;
    let r = energy_report(&profile, c1_dot_omega)?;
    let text = render(output.format, &r, || {
        Table(vec![
            ("epsilon", r.epsilon.to_string()),
            ("k", r.k.to_string()),
            ("grid_n", r.grid_n.to_string()),
            ("energy_quadrature", r.energy_quadrature.to_string()),
            ("energy_closed_form", r.energy_closed_form.to_string()),
            ("energy_paper_expression", r.energy_paper_expression.to_string()),
            ("scalar_bound", r.scalar_bound.to_string()),
            (
                "discrepancy_factor",
                r.discrepancy_factor.map(|f| f.to_string()).unwrap_or_default(),
            ),
        ])
    });
    emit(&text, output.out.as_deref())
}
