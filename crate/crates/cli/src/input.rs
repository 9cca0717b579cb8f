use std::path::{Path, PathBuf};

use clap::Args;
use toric_core::cohomology::{LatticeInput, LorentzLattice};
use toric_core::cone::{builtin_fan, dp1_support, interior_support, polygon_from_support, NormalFan, Surface};
use toric_core::io::{read_json, FanFile, PolygonFile, SupportFile};
use toric_core::numeric::{int, parse_rational, Rational};
use toric_core::polygon::{validate_delzant, DelzantPolygon};

use crate::error::CliError;

/// Where the geometry comes from: exactly one of these.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Built-in toric del Pezzo surface: cp2, quadric, dp1, dp2 or dp3
    #[arg(long)]
    pub surface: Option<String>,
    /// Polygon file {"vertices": …} or lattice file {"gram", "c1", "omega"}
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Fan file {"rays": …}; pair with --support
    #[arg(long)]
    pub fan: Option<PathBuf>,
}

/// Modifiers of the source.
#[derive(Debug, Clone, Args)]
pub struct Shape {
    /// Support file {"lambda": …} over the fan
    #[arg(long)]
    pub support: Option<PathBuf>,
    /// dp1 polygon (0,0), (0,1), (α,1), (α+1,0)
    #[arg(long)]
    pub alpha: Option<String>,
    /// quadric class F₁ + t·F₂, the rectangle [0,1] × [0,t]
    #[arg(long)]
    pub t: Option<String>,
}

pub enum Resolved {
    Polygon {
        polygon: DelzantPolygon,
        fan: Option<NormalFan>,
    },
    Lattice {
        lattice: LorentzLattice,
        omega: Vec<Rational>,
    },
}

pub fn rational_arg(name: &str, value: &str) -> Result<Rational, CliError> {
    parse_rational(value).map_err(|e| CliError::Parse(format!("--{name}: {e}")))
}

pub fn float_arg(name: &str, value: &str) -> Result<f64, CliError> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Parse(format!("--{name}: cannot parse '{value}' as a number")))
}

pub fn int_arg<T: std::str::FromStr>(name: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse::<T>()
        .map_err(|_| CliError::Parse(format!("--{name}: cannot parse '{value}' as a non-negative integer")))
}

/// Comma separated rationals, `"0,0,1,1/2"`.
pub fn rational_list(name: &str, value: &str) -> Result<Vec<Rational>, CliError> {
    value.split(',').map(|s| rational_arg(name, s)).collect()
}

pub fn parse_surface(name: &str) -> Result<Surface, CliError> {
    name.parse::<Surface>().map_err(|e| CliError::Validation(e.to_string()))
}

pub fn read_support(path: &Path) -> Result<Vec<Rational>, CliError> {
    Ok(read_json::<SupportFile>(path)?.to_support()?)
}

pub fn read_fan(path: &Path) -> Result<NormalFan, CliError> {
    Ok(read_json::<FanFile>(path)?.to_fan()?)
}

/// Support numbers for a built-in surface: `--alpha` (dp1), `--t` (quadric),
/// a support file, or the anticanonical `(1, …, 1)`.
pub fn surface_support(surface: Surface, shape: &Shape) -> Result<Vec<Rational>, CliError> {
    let n = builtin_fan(surface).len();
    let chosen = [shape.alpha.is_some(), shape.t.is_some(), shape.support.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if chosen > 1 {
        return Err(CliError::Validation("use at most one of --alpha, --t and --support".into()));
    }
    if let Some(a) = &shape.alpha {
        if surface != Surface::Dp1 {
            return Err(CliError::Validation("--alpha applies to --surface dp1 only".into()));
        }
        return Ok(dp1_support(&rational_arg("alpha", a)?));
    }
    if let Some(t) = &shape.t {
        if surface != Surface::Quadric {
            return Err(CliError::Validation("--t applies to --surface quadric only".into()));
        }
        return Ok(vec![int(0), int(0), int(1), rational_arg("t", t)?]);
    }
    if let Some(path) = &shape.support {
        return read_support(path);
    }
    Ok(vec![int(1); n])
}

fn polygon_file_error(file: &PolygonFile, fallback: CliError) -> CliError {
    let violations = validate_delzant(&file.vertices);
    if violations.is_empty() {
        return fallback;
    }
    let lines: Vec<String> = violations.iter().map(|v| format!("violation: {v}")).collect();
    CliError::Validation(format!("not a valid Delzant polygon\n{}", lines.join("\n")))
}

pub fn resolve(source: &Source, shape: &Shape) -> Result<Resolved, CliError> {
    if let Some(name) = &source.surface {
        let surface = parse_surface(name)?;
        let fan = builtin_fan(surface);
        let support = surface_support(surface, shape)?;
        let polygon = polygon_from_support(&fan, &support)?;
        return Ok(Resolved::Polygon {
            polygon,
            fan: Some(fan),
        });
    }
    if shape.alpha.is_some() || shape.t.is_some() {
        return Err(CliError::Validation("--alpha and --t need --surface".into()));
    }
    if let Some(path) = &source.fan {
        let fan = read_fan(path)?;
        let support = match &shape.support {
            Some(p) => read_support(p)?,
            None => interior_support(&fan)?,
        };
        let polygon = polygon_from_support(&fan, &support)?;
        return Ok(Resolved::Polygon {
            polygon,
            fan: Some(fan),
        });
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    if shape.support.is_some() {
        return Err(CliError::Validation("--support needs --fan or --surface".into()));
    }
    let value: serde_json::Value = read_json(path)?;
    if value.get("vertices").is_some() {
        let file: PolygonFile = serde_json::from_value(value)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let polygon = file
            .to_polygon()
            .map_err(|e| polygon_file_error(&file, e.into()))?;
        Ok(Resolved::Polygon {
            polygon,
            fan: None,
        })
    } else if value.get("gram").is_some() {
        let input: LatticeInput = serde_json::from_value(value)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let (lattice, omega) = input.into_lattice()?;
        Ok(Resolved::Lattice { lattice, omega })
    } else {
        Err(CliError::Parse(format!(
            "{}: expected a \"vertices\" or \"gram\" field",
            path.display()
        )))
    }
}
