//! Brute-force section and invariant counting for circle actions on products
//! of projective lines.
//!
//! Section spaces of the level-`k` module data are enumerated as lattice
//! points in exponent boxes; the circle action weights a monomial by the
//! pairing of its exponents with the action vector, so invariant counting is
//! a hyperplane slice through each box. The reduction experiment compares
//! those invariant counts with the declared dimension of the reduced model
//! over a range of levels.

use crate::linalg::Mat;
use crate::models::{self, ManifoldPresentation, ModelError};
use crate::rational::{rat_floor, rint, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ToricError {
    #[error("degrees must be nonnegative (weight {weight}, factor {factor})")]
    NegativeDegree { weight: usize, factor: usize },
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("moment lines for weights {a} and {b} are parallel")]
    NotTransverse { a: usize, b: usize },
    #[error("model error: {0}")]
    Model(#[from] ModelError),
}

/// Per-weight toric data: a nonnegative degree per factor, and the
/// linearization shift. The shift scales with the level and is floored, so a
/// rational value selects the slice exactly at every level; explicit per-level
/// overrides pin individual slices when needed.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricWeight {
    pub degrees: Vec<i64>,
    pub shift: Rat,
    pub shift_overrides: std::collections::BTreeMap<i64, i64>,
}

impl ToricWeight {
    pub fn new(degrees: Vec<i64>, shift: Rat) -> Self {
        ToricWeight {
            degrees,
            shift,
            shift_overrides: Default::default(),
        }
    }

    /// Slice level at quantization level `k`: the floor of `k * shift`
    /// unless explicitly pinned.
    pub fn target(&self, k: i64) -> i64 {
        if let Some(t) = self.shift_overrides.get(&k) {
            return *t;
        }
        rat_floor(&(self.shift.clone() * rint(k)))
            .to_i64()
            .expect("shift target fits in i64")
    }
}

/// Torus-action data on a product of projective lines: per-weight degree
/// vectors and shifts, and one integer action weight per factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricBundleModel {
    n_factors: usize,
    weights: Vec<ToricWeight>,
    action: Vec<i64>,
}

impl ToricBundleModel {
    pub fn new(
        n_factors: usize,
        weights: Vec<ToricWeight>,
        action: Vec<i64>,
    ) -> Result<Self, ToricError> {
        if weights.is_empty() {
            return Err(ToricError::ConfigInvalid("at least one weight".into()));
        }
        if action.len() != n_factors {
            return Err(ToricError::ConfigInvalid(format!(
                "{} action weights for {} factors",
                action.len(),
                n_factors
            )));
        }
        for (w, tw) in weights.iter().enumerate() {
            if tw.degrees.len() != n_factors {
                return Err(ToricError::ConfigInvalid(format!(
                    "weight {w} has {} degrees for {} factors",
                    tw.degrees.len(),
                    n_factors
                )));
            }
            for (j, d) in tw.degrees.iter().enumerate() {
                if *d < 0 {
                    return Err(ToricError::NegativeDegree { weight: w, factor: j });
                }
            }
        }
        Ok(ToricBundleModel {
            n_factors,
            weights,
            action,
        })
    }

    pub fn n_factors(&self) -> usize {
        self.n_factors
    }

    pub fn weights(&self) -> &[ToricWeight] {
        &self.weights
    }

    pub fn action(&self) -> &[i64] {
        &self.action
    }

    /// The presentation of the same data as a product of lines (standard
    /// basis weights, one degree row per weight).
    pub fn presentation(&self) -> Result<ManifoldPresentation, ToricError> {
        Ok(ManifoldPresentation::product_of_lines(
            self.weights.iter().map(|w| w.degrees.clone()).collect(),
        )?)
    }
}

fn for_each_box_point(bounds: &[i64], mut f: impl FnMut(&[i64])) {
    let n = bounds.len();
    if n == 0 {
        f(&[]);
        return;
    }
    let mut point = vec![0i64; n];
    loop {
        f(&point);
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            point[pos] += 1;
            if point[pos] <= bounds[pos] {
                break;
            }
            point[pos] = 0;
            pos += 1;
        }
    }
}

/// Section count at level `k`: monomial exponents range over the box
/// `0 <= m_j <= k * d_j` for each weight, counted by explicit enumeration.
pub fn holomorphic_dim(model: &ToricBundleModel, k: i64) -> u64 {
    assert!(k >= 1, "level must be positive");
    let mut total = 0u64;
    for w in model.weights() {
        let bounds: Vec<i64> = w.degrees.iter().map(|d| k * d).collect();
        let mut count = 0u64;
        for_each_box_point(&bounds, |_| count += 1);
        total += count;
    }
    total
}

/// Invariant count at level `k`: box points whose action pairing lands
/// exactly on the shifted slice, summed over weights.
pub fn invariant_dim(model: &ToricBundleModel, k: i64) -> u64 {
    assert!(k >= 1, "level must be positive");
    let mut total = 0u64;
    for w in model.weights() {
        let bounds: Vec<i64> = w.degrees.iter().map(|d| k * d).collect();
        let target = w.target(k);
        let mut count = 0u64;
        for_each_box_point(&bounds, |point| {
            let pairing: i64 = point
                .iter()
                .zip(model.action())
                .map(|(m, a)| m * a)
                .sum();
            if pairing == target {
                count += 1;
            }
        });
        total += count;
    }
    total
}

/// Intersection data of the moment slices in the unit cube of torus
/// coordinates, for a two-factor model.
#[derive(Debug, Clone)]
pub struct ReducedPoints {
    /// For each transverse pair of weights: the indices and the intersection
    /// point in unit-square coordinates.
    pub points: Vec<(usize, usize, Vec<Rat>)>,
    /// Zero-dimensional presentation of one reduced point carrying every
    /// weight; its index count is the fiber rank.
    pub presentation: ManifoldPresentation,
}

/// Builds the reduced point model for a two-factor configuration: the moment
/// slice of weight `w` is the line with normal vector `(a_j * d_w_j)_j` at
/// value `shift_w` in unit-square coordinates. Every pair of slices must meet
/// transversally (nonzero two-by-two determinant) at an interior point.
pub fn reduced_point_model(model: &ToricBundleModel) -> Result<ReducedPoints, ToricError> {
    if model.n_factors() != 2 {
        return Err(ToricError::ConfigInvalid(
            "point reduction is implemented for two factors".into(),
        ));
    }
    let normals: Vec<Vec<Rat>> = model
        .weights()
        .iter()
        .map(|w| {
            w.degrees
                .iter()
                .zip(model.action())
                .map(|(d, a)| rint(d * a))
                .collect()
        })
        .collect();
    let mut points = Vec::new();
    for i in 0..normals.len() {
        for j in (i + 1)..normals.len() {
            let det = normals[i][0].clone() * normals[j][1].clone()
                - normals[i][1].clone() * normals[j][0].clone();
            if det.is_zero() {
                return Err(ToricError::NotTransverse { a: i, b: j });
            }
            let m = Mat::from_rows(vec![normals[i].clone(), normals[j].clone()]);
            let rhs = vec![
                model.weights()[i].shift.clone(),
                model.weights()[j].shift.clone(),
            ];
            let point = m.solve(&rhs).expect("transverse system solvable");
            for c in &point {
                if !(c.is_positive() && c < &Rat::one()) {
                    return Err(ToricError::ConfigInvalid(format!(
                        "slice intersection for weights {i},{j} misses the open unit square"
                    )));
                }
            }
            points.push((i, j, point));
        }
    }
    let presentation = ManifoldPresentation::point_with_weights(model.weights().len())?;
    Ok(ReducedPoints {
        points,
        presentation,
    })
}

/// What the reduced space is declared to be.
#[derive(Debug, Clone)]
pub enum ReducedSpec {
    /// Use an explicitly declared presentation.
    Declared(ManifoldPresentation),
    /// Derive the zero-dimensional point model from the slice geometry.
    DerivePointModel,
}

/// The declared relation the experiment expects between invariant counts and
/// the reduced dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QRExpectation {
    /// Invariant counts equal the reduced dimension at every level.
    Commutes,
    /// Invariant counts strictly exceed the reduced dimension from level 2
    /// on, and grow monotonically.
    FailsFromLevelTwo,
    /// No declared expectation; report only.
    None,
}

/// Full experiment configuration.
#[derive(Debug, Clone)]
pub struct QRConfig {
    pub model: ToricBundleModel,
    pub reduced: ReducedSpec,
    pub expectation: QRExpectation,
}

/// Per-level comparison row.
#[derive(Debug, Clone, PartialEq)]
pub struct QRRow {
    pub k: i64,
    pub dim_invariants: u64,
    pub dim_reduced: u64,
    pub equal: bool,
}

/// Experiment outcome: the per-level table and the aggregate verdicts.
#[derive(Debug, Clone)]
pub struct QRReport {
    pub rows: Vec<QRRow>,
    /// Every level matched.
    pub all_equal: bool,
    /// Invariant counts are strictly increasing over the range.
    pub invariants_strictly_increasing: bool,
    /// Invariant count strictly exceeds the reduced dimension at every level
    /// of the range past the first.
    pub strict_excess_from_level_two: bool,
    /// Whether the declared expectation held.
    pub expectation_met: Option<bool>,
}

/// Runs the comparison over a level range: the invariant count of the model
/// against the index of the declared (or derived) reduced model.
pub fn qr_experiment(config: &QRConfig, k_range: &[i64]) -> Result<QRReport, ToricError> {
    if k_range.is_empty() {
        return Err(ToricError::ConfigInvalid("empty level range".into()));
    }
    if k_range.iter().any(|&k| k < 1) {
        return Err(ToricError::ConfigInvalid("levels must be positive".into()));
    }
    let reduced = match &config.reduced {
        ReducedSpec::Declared(p) => p.clone(),
        ReducedSpec::DerivePointModel => reduced_point_model(&config.model)?.presentation,
    };
    let mut rows = Vec::with_capacity(k_range.len());
    for &k in k_range {
        let lhs = invariant_dim(&config.model, k);
        let rhs = models::rr_index(&reduced, k);
        let rhs = u64::try_from(rhs).map_err(|_| {
            ToricError::ConfigInvalid("reduced model has negative index".into())
        })?;
        rows.push(QRRow {
            k,
            dim_invariants: lhs,
            dim_reduced: rhs,
            equal: lhs == rhs,
        });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    let invariants_strictly_increasing = rows
        .windows(2)
        .all(|w| w[1].dim_invariants > w[0].dim_invariants);
    let strict_excess_from_level_two = rows
        .iter()
        .filter(|r| r.k >= 2)
        .all(|r| r.dim_invariants > r.dim_reduced);
    let expectation_met = match config.expectation {
        QRExpectation::Commutes => Some(all_equal),
        QRExpectation::FailsFromLevelTwo => {
            Some(strict_excess_from_level_two && invariants_strictly_increasing)
        }
        QRExpectation::None => None,
    };
    Ok(QRReport {
        rows,
        all_equal,
        invariants_strictly_increasing,
        strict_excess_from_level_two,
        expectation_met,
    })
}

/// The shipped two-weight configuration whose invariant counts outgrow the
/// reduced dimension: degree rows (1,2) and (2,1), diagonal action, shift
/// 3/2 per weight.
pub fn counterexample_config() -> QRConfig {
    let model = ToricBundleModel::new(
        2,
        vec![
            ToricWeight::new(vec![1, 2], Rat::new(3.into(), 2.into())),
            ToricWeight::new(vec![2, 1], Rat::new(3.into(), 2.into())),
        ],
        vec![1, 1],
    )
    .expect("valid configuration");
    QRConfig {
        model,
        reduced: ReducedSpec::DerivePointModel,
        expectation: QRExpectation::FailsFromLevelTwo,
    }
}

/// The shipped single-weight control configuration: degrees (2,2), diagonal
/// action, shift 2; its invariant counts match the degree-2 line model.
pub fn control_config() -> QRConfig {
    let model = ToricBundleModel::new(
        2,
        vec![ToricWeight::new(vec![2, 2], rint(2))],
        vec![1, 1],
    )
    .expect("valid configuration");
    let reduced = ManifoldPresentation::product_of_lines(vec![vec![2]])
        .expect("line presentation");
    QRConfig {
        model,
        reduced: ReducedSpec::Declared(reduced),
        expectation: QRExpectation::Commutes,
    }
}
