//! JSON model files: a versioned envelope with one payload per model kind.
//!
//! Rationals are serialized as `"p/q"` strings so exact values survive the
//! round trip; weight vectors carry the symbolic unit token for the
//! `2*pi*i` scale. Parsing validates shapes and produces domain values;
//! emission reverses it on canonical forms.

use crate::lattice::{PeriodData, RationalLattice, TwoPiWeightSet};
use crate::linalg::Mat;
use crate::models::{ManifoldPresentation, MonodromyPresentation};
use crate::rational::{format_rat, parse_rat, CRat, Rat};
use crate::reps::AbelianRep;
use crate::toric::{QRConfig, QRExpectation, ReducedSpec, ToricBundleModel, ToricWeight};
use crate::vsympl::VSymplecticSpace;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";
/// Symbolic unit marker for weight vectors.
pub const WEIGHT_UNIT: &str = "2\u{3c0}i";

#[derive(Debug, Error)]
pub enum FileError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema version mismatch: file declares {found:?}, this build reads {expected:?}")]
    SchemaVersionMismatch { found: String, expected: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    VSpace,
    Rep,
    Lattice,
    Presentation,
    Toric,
    Monodromy,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModelKind::VSpace => "vspace",
            ModelKind::Rep => "rep",
            ModelKind::Lattice => "lattice",
            ModelKind::Presentation => "presentation",
            ModelKind::Toric => "toric",
            ModelKind::Monodromy => "monodromy",
        };
        write!(f, "{s}")
    }
}

/// Envelope for every model file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub schema_version: String,
    pub kind: ModelKind,
    pub payload: serde_json::Value,
}

impl ModelFile {
    pub fn from_json_str(s: &str) -> Result<ModelFile, FileError> {
        let file: ModelFile =
            serde_json::from_str(s).map_err(|e| FileError::Parse(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(FileError::SchemaVersionMismatch {
                found: file.schema_version,
                expected: SCHEMA_VERSION.to_string(),
            });
        }
        Ok(file)
    }

    pub fn read(path: &std::path::Path) -> Result<(ModelFile, Vec<u8>), FileError> {
        let bytes = std::fs::read(path)?;
        let s = std::str::from_utf8(&bytes)
            .map_err(|e| FileError::Parse(format!("file is not UTF-8: {e}")))?;
        let file = Self::from_json_str(s)?;
        Ok((file, bytes))
    }

    pub fn new<P: Serialize>(kind: ModelKind, payload: &P) -> ModelFile {
        ModelFile {
            schema_version: SCHEMA_VERSION.to_string(),
            kind,
            payload: serde_json::to_value(payload).expect("payload serializes"),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    pub fn payload_as<T: for<'de> Deserialize<'de>>(&self) -> Result<T, FileError> {
        serde_json::from_value(self.payload.clone()).map_err(|e| FileError::Parse(e.to_string()))
    }
}

fn parse_rat_field(s: &str, what: &str) -> Result<Rat, FileError> {
    parse_rat(s).map_err(|e| FileError::Parse(format!("{what}: {e}")))
}

fn parse_rat_matrix(rows: &[Vec<String>], what: &str) -> Result<Vec<Vec<Rat>>, FileError> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_rat_field(s, what)).collect())
        .collect()
}

fn emit_rat_matrix(rows: &[Vec<Rat>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|row| row.iter().map(format_rat).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// vspace

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VSpacePayload {
    pub construction: VSpaceConstruction,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VSpaceConstruction {
    Canonical { dim_q: usize, dim_v: usize },
    Lie { structure_constants: Vec<Vec<Vec<String>>> },
    Forms { components: Vec<Vec<Vec<String>>> },
}

/// Builds the space; construction errors are returned as strings so callers
/// can report them as verdict failures rather than parse errors.
pub fn vspace_from_payload(p: &VSpacePayload) -> Result<Result<VSymplecticSpace, String>, FileError> {
    match &p.construction {
        VSpaceConstruction::Canonical { dim_q, dim_v } => {
            if *dim_q == 0 || *dim_v == 0 {
                return Err(FileError::Parse("canonical dimensions must be positive".into()));
            }
            Ok(Ok(VSymplecticSpace::canonical(*dim_q, *dim_v)))
        }
        VSpaceConstruction::Lie { structure_constants } => {
            let c: Vec<Vec<Vec<Rat>>> = structure_constants
                .iter()
                .map(|plane| parse_rat_matrix(plane, "structure constant"))
                .collect::<Result<_, _>>()?;
            Ok(VSymplecticSpace::lie_model(&c).map_err(|e| e.to_string()))
        }
        VSpaceConstruction::Forms { components } => {
            let mats: Vec<Mat<Rat>> = components
                .iter()
                .map(|m| parse_rat_matrix(m, "form entry").map(Mat::from_rows))
                .collect::<Result<_, _>>()?;
            Ok(VSymplecticSpace::new(mats).map_err(|e| e.to_string()))
        }
    }
}

// ---------------------------------------------------------------------------
// rep

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepPayload {
    pub dim_v: usize,
    pub rank: usize,
    /// Entries as `[re, im]` pairs of rational strings.
    pub generators: Vec<Vec<Vec<[String; 2]>>>,
}

pub fn rep_from_payload(p: &RepPayload) -> Result<Result<AbelianRep, String>, FileError> {
    if p.generators.len() != p.dim_v {
        return Err(FileError::Parse(format!(
            "{} generators declared for coefficient dimension {}",
            p.generators.len(),
            p.dim_v
        )));
    }
    let mut gens = Vec::with_capacity(p.generators.len());
    for g in &p.generators {
        if g.len() != p.rank || g.iter().any(|row| row.len() != p.rank) {
            return Err(FileError::Parse(format!(
                "generator is not {0}x{0}",
                p.rank
            )));
        }
        let rows: Vec<Vec<CRat>> = g
            .iter()
            .map(|row| {
                row.iter()
                    .map(|[re, im]| {
                        Ok(CRat::new(
                            parse_rat_field(re, "generator entry")?,
                            parse_rat_field(im, "generator entry")?,
                        ))
                    })
                    .collect::<Result<_, FileError>>()
            })
            .collect::<Result<_, _>>()?;
        gens.push(Mat::from_rows(rows));
    }
    Ok(AbelianRep::from_exact(gens).map_err(|e| e.to_string()))
}

// ---------------------------------------------------------------------------
// lattice

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticePayload {
    pub dim_v: usize,
    pub periods: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    /// Marks the model as non-quantizable by declaration, standing in for
    /// period data outside the rational domain.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub non_quantizable_by_fiat: bool,
}

pub struct LatticeInputs {
    pub periods: PeriodData,
    pub basis: Option<Vec<Vec<Rat>>>,
    pub non_quantizable_by_fiat: bool,
}

pub fn lattice_from_payload(p: &LatticePayload) -> Result<LatticeInputs, FileError> {
    let periods = PeriodData::new(p.dim_v, parse_rat_matrix(&p.periods, "period")?)
        .map_err(|e| FileError::Parse(e.to_string()))?;
    let basis = match &p.basis {
        Some(rows) => Some(parse_rat_matrix(rows, "basis vector")?),
        None => None,
    };
    Ok(LatticeInputs {
        periods,
        basis,
        non_quantizable_by_fiat: p.non_quantizable_by_fiat,
    })
}

pub fn lattice_payload_from_state(
    dim_v: usize,
    periods: &PeriodData,
    basis: Option<&RationalLattice>,
) -> LatticePayload {
    LatticePayload {
        dim_v,
        periods: emit_rat_matrix(&periods.periods),
        basis: basis.map(|l| l.basis_strings()),
        non_quantizable_by_fiat: false,
    }
}

// ---------------------------------------------------------------------------
// presentation

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationPayload {
    pub dim_v: usize,
    /// Weight vectors in symbolic units; `weight_unit` documents the scale.
    pub weights: Vec<Vec<String>>,
    #[serde(default = "default_weight_unit")]
    pub weight_unit: String,
    pub factor_degrees: Vec<Vec<i64>>,
    pub genus: Vec<i64>,
    pub periods: Vec<Vec<String>>,
}

fn default_weight_unit() -> String {
    WEIGHT_UNIT.to_string()
}

pub fn presentation_from_payload(
    p: &PresentationPayload,
) -> Result<Result<ManifoldPresentation, String>, FileError> {
    if p.weight_unit != WEIGHT_UNIT {
        return Err(FileError::Parse(format!(
            "unsupported weight unit {:?} (expected {WEIGHT_UNIT:?})",
            p.weight_unit
        )));
    }
    let weights = parse_rat_matrix(&p.weights, "weight")?;
    if weights.len() != p.factor_degrees.len() {
        return Err(FileError::Parse(format!(
            "{} weights with {} degree rows",
            weights.len(),
            p.factor_degrees.len()
        )));
    }
    // Weight sets are kept sorted; sort the degree rows along with them.
    let mut paired: Vec<(Vec<Rat>, Vec<i64>)> = weights
        .into_iter()
        .zip(p.factor_degrees.iter().cloned())
        .collect();
    paired.sort_by(|a, b| a.0.cmp(&b.0));
    let (weights, degrees): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
    let weight_set = match TwoPiWeightSet::new(p.dim_v, weights) {
        Ok(ws) => ws,
        Err(e) => return Err(FileError::Parse(e.to_string())),
    };
    let periods = match PeriodData::new(p.dim_v, parse_rat_matrix(&p.periods, "period")?) {
        Ok(pd) => pd,
        Err(e) => return Err(FileError::Parse(e.to_string())),
    };
    Ok(
        ManifoldPresentation::new(weight_set, degrees, p.genus.clone(), periods)
            .map_err(|e| e.to_string()),
    )
}

pub fn presentation_payload(m: &ManifoldPresentation) -> PresentationPayload {
    PresentationPayload {
        dim_v: m.dim_v(),
        weights: m.weight_set().weight_strings(),
        weight_unit: WEIGHT_UNIT.to_string(),
        factor_degrees: m.factor_degrees().to_vec(),
        genus: m.genus().to_vec(),
        periods: emit_rat_matrix(&m.periods().periods),
    }
}

// ---------------------------------------------------------------------------
// toric

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToricWeightPayload {
    pub degrees: Vec<i64>,
    pub shift: String,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub shift_overrides: std::collections::BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReducedPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared: Option<PresentationPayload>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub derive_point_model: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToricPayload {
    pub factors: usize,
    pub action: Vec<i64>,
    pub weights: Vec<ToricWeightPayload>,
    pub reduced: ReducedPayload,
    /// Declared expectation: "commutes", "fails", or absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
}

pub fn toric_from_payload(p: &ToricPayload) -> Result<Result<QRConfig, String>, FileError> {
    let mut weights = Vec::with_capacity(p.weights.len());
    for w in &p.weights {
        let shift = parse_rat_field(&w.shift, "shift")?;
        let mut tw = ToricWeight::new(w.degrees.clone(), shift);
        for (k, v) in &w.shift_overrides {
            let k: i64 = k
                .parse()
                .map_err(|_| FileError::Parse(format!("invalid level key {k:?}")))?;
            tw.shift_overrides.insert(k, *v);
        }
        weights.push(tw);
    }
    let model = match ToricBundleModel::new(p.factors, weights, p.action.clone()) {
        Ok(m) => m,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let reduced = if p.reduced.derive_point_model {
        ReducedSpec::DerivePointModel
    } else if let Some(decl) = &p.reduced.declared {
        match presentation_from_payload(decl)? {
            Ok(m) => ReducedSpec::Declared(m),
            Err(e) => return Ok(Err(e)),
        }
    } else {
        return Err(FileError::Parse(
            "reduced model: declare a presentation or set derive_point_model".into(),
        ));
    };
    let expectation = match p.expect.as_deref() {
        None => QRExpectation::None,
        Some("commutes") => QRExpectation::Commutes,
        Some("fails") => QRExpectation::FailsFromLevelTwo,
        Some(other) => {
            return Err(FileError::Parse(format!(
                "unknown expectation {other:?} (use \"commutes\" or \"fails\")"
            )))
        }
    };
    Ok(Ok(QRConfig {
        model,
        reduced,
        expectation,
    }))
}

// ---------------------------------------------------------------------------
// monodromy

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonodromyPayload {
    pub dim_v: usize,
    pub weights: Vec<Vec<String>>,
    #[serde(default = "default_weight_unit")]
    pub weight_unit: String,
    pub generators: Vec<Vec<Vec<String>>>,
}

pub fn monodromy_from_payload(
    p: &MonodromyPayload,
) -> Result<Result<MonodromyPresentation, String>, FileError> {
    if p.weight_unit != WEIGHT_UNIT {
        return Err(FileError::Parse(format!(
            "unsupported weight unit {:?} (expected {WEIGHT_UNIT:?})",
            p.weight_unit
        )));
    }
    let weights = match TwoPiWeightSet::new(p.dim_v, parse_rat_matrix(&p.weights, "weight")?) {
        Ok(w) => w,
        Err(e) => return Err(FileError::Parse(e.to_string())),
    };
    let gens: Vec<Mat<Rat>> = p
        .generators
        .iter()
        .map(|g| parse_rat_matrix(g, "generator entry").map(Mat::from_rows))
        .collect::<Result<_, _>>()?;
    Ok(MonodromyPresentation::new(gens, weights).map_err(|e| e.to_string()))
}
