//! JSON file formats and the serialized invariant report.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{ConeError, NormalFan};
use crate::invariants::InvariantReport;
use crate::numeric::{int, rational_string, ParseRationalError, Rational, RationalRepr, Vec2};
use crate::polygon::{DelzantPolygon, PolygonError};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{}: file not found", .0.display())]
    NotFound(PathBuf),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FileError> {
    let text = fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            FileError::NotFound(path.to_path_buf())
        } else {
            FileError::Io {
                path: path.to_path_buf(),
                source,
            }
        }
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// `{"vertices": [["0","0"], ["1","0"], …]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<Vec2>,
}

impl PolygonFile {
    pub fn to_polygon(&self) -> Result<DelzantPolygon, PolygonError> {
        DelzantPolygon::from_vertices(&self.vertices)
    }
}

/// `{"rays": [[1,0], [0,1], …]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanFile {
    pub rays: Vec<[i64; 2]>,
}

impl FanFile {
    pub fn to_fan(&self) -> Result<NormalFan, ConeError> {
        NormalFan::new(self.rays.iter().map(|r| (r[0], r[1])).collect(), None)
    }
}

/// `{"lambda": ["1", "1/2", …]}`
#[derive(Debug, Clone, Deserialize)]
pub struct SupportFile {
    pub lambda: Vec<RationalRepr>,
}

impl SupportFile {
    pub fn to_support(self) -> Result<Vec<Rational>, ParseRationalError> {
        self.lambda.into_iter().map(RationalRepr::into_rational).collect()
    }
}

/// Flat JSON form of [`InvariantReport`]. Exact values are `"p/q"` strings;
/// the Weyl bounds also appear as decimals since they carry π². The Futaki
/// covector is given in units of π.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub vertices: Vec<Vec2>,
    #[serde(with = "rational_string")]
    pub area: Rational,
    #[serde(with = "rational_string")]
    pub perimeter: Rational,
    pub barycenter_interior: Vec2,
    pub barycenter_boundary: Vec2,
    pub displacement: Vec2,
    pub inertia: [Vec2; 2],
    pub futaki: Vec2,
    #[serde(with = "rational_string")]
    pub futaki_norm_sq_over_pi2: Rational,
    #[serde(with = "rational_string")]
    pub virtual_action: Rational,
    pub weyl_bound: f64,
    pub weyl_bound_simple: f64,
    #[serde(with = "rational_string")]
    pub weyl_bound_over_pi2: Rational,
    #[serde(with = "rational_string")]
    pub weyl_bound_simple_over_pi2: Rational,
    #[serde(with = "rational_string")]
    pub avg_hermitian_scalar_over_pi: Rational,
    /// Minimum over the vertices of `þ(ς)/4π`.
    #[serde(with = "rational_string")]
    pub min_vertex_scalar_over_four_pi: Rational,
    pub min_vertex: Vec2,
}

impl ReportJson {
    pub fn new(polygon: &DelzantPolygon, report: &InvariantReport) -> Self {
        let m = report.inertia.entries();
        ReportJson {
            vertices: polygon.vertices().to_vec(),
            area: report.area.clone(),
            perimeter: report.perimeter.clone(),
            barycenter_interior: report.barycenter_interior.clone(),
            barycenter_boundary: report.barycenter_boundary.clone(),
            displacement: report.displacement.clone(),
            inertia: [
                Vec2::new(m[0][0].clone(), m[0][1].clone()),
                Vec2::new(m[1][0].clone(), m[1][1].clone()),
            ],
            futaki: report.futaki.covector_over_four_pi.scale(&int(4)),
            futaki_norm_sq_over_pi2: report.futaki_norm_sq_over_pi2(),
            virtual_action: report.virtual_action.clone(),
            weyl_bound: report.weyl.toric.to_f64(),
            weyl_bound_simple: report.weyl.simple.to_f64(),
            weyl_bound_over_pi2: report.weyl.toric.coefficient.clone(),
            weyl_bound_simple_over_pi2: report.weyl.simple.coefficient.clone(),
            avg_hermitian_scalar_over_pi: report.avg_hermitian_scalar.coefficient.clone(),
            min_vertex_scalar_over_four_pi: report.positivity.min_value.clone(),
            min_vertex: report.positivity.vertex.clone(),
        }
    }

    pub fn compute(polygon: &DelzantPolygon) -> Self {
        Self::new(polygon, &InvariantReport::compute(polygon))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    #[test]
    fn polygon_file_parses_strings_and_integers() {
        let file: PolygonFile =
            serde_json::from_str(r#"{"vertices": [["0","0"],["0","1"],["1","1"],[2, 0]]}"#).unwrap();
        let p = file.to_polygon().unwrap();
        assert_eq!(p.area(), ratio(3, 2));
        assert!(serde_json::from_str::<PolygonFile>(r#"{"vertices": [["x","0"]]}"#).is_err());
    }

    #[test]
    fn fan_and_support_files() {
        let fan: FanFile = serde_json::from_str(r#"{"rays": [[1,0],[0,1],[-1,-1]]}"#).unwrap();
        assert_eq!(fan.to_fan().unwrap().len(), 3);
        let support: SupportFile = serde_json::from_str(r#"{"lambda": ["1", "1/2", 3]}"#).unwrap();
        assert_eq!(support.to_support().unwrap(), vec![int(1), ratio(1, 2), int(3)]);
    }

    #[test]
    fn report_round_trips() {
        let p = DelzantPolygon::from_int_vertices(&[(0, 0), (2, 0), (1, 1), (0, 1)]).unwrap();
        let report = ReportJson::compute(&p);
        let text = serde_json::to_string(&report).unwrap();
        let parsed: ReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, report);
        let rebuilt = DelzantPolygon::from_vertices(&parsed.vertices).unwrap();
        assert_eq!(ReportJson::compute(&rebuilt), parsed);
        assert_eq!(parsed.virtual_action, ratio(111, 13));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["virtual_action"], "111/13");
        assert_eq!(value["displacement"][0], "1/45");
    }

    #[test]
    fn missing_file_is_reported_as_such() {
        let err = read_json::<PolygonFile>(Path::new("/nonexistent/polygon.json")).unwrap_err();
        assert!(matches!(err, FileError::NotFound(_)));
    }
}
