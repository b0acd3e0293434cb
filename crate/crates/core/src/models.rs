//! Finitely presented product models: dimension counting and monodromy.
//!
//! A presentation records the topological data needed for exact dimension
//! arithmetic on products of projective lines and curves: one degree per
//! weight per factor, genus per factor, and the periods of the form over the
//! factor classes. Degrees are normalized so the period of a weight component
//! over a factor equals the degree in symbolic `2*pi` units, which keeps
//! every computation rational.

use crate::lattice::{PeriodData, TwoPiWeightSet};
use crate::linalg::Mat;
use crate::rational::{rint, Rat};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("degree table inconsistent with periods: weight {weight}, factor {factor}")]
    InconsistentDegrees { weight: usize, factor: usize },
    #[error("weight set does not span the dual coefficient space")]
    NotFaithful,
    #[error("growth check requires strictly positive degrees (weight {weight}, factor {factor})")]
    NotPositive { weight: usize, factor: usize },
    #[error("weights are not permuted by the flat action of generator {generator}")]
    WeightsNotPermuted { generator: usize },
    #[error("monodromy generator {generator} is singular")]
    SingularGenerator { generator: usize },
    #[error("incompatible presentations: {0}")]
    ConventionMismatch(String),
    #[error("no shared weights: the product carries the zero module")]
    NotPrequantizable,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("growth check needs at least {needed} consecutive levels, got {got}")]
    RangeTooShort { needed: usize, got: usize },
}

/// Presentation of a product model: `half_dim` factors (projective lines or
/// small-genus curves), a weight multiset in `2*pi*i` units, an integer
/// degree per weight per factor, and the periods over the factor classes.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldPresentation {
    half_dim: usize,
    dim_v: usize,
    h2_rank: usize,
    periods: PeriodData,
    weight_set: TwoPiWeightSet,
    /// `factor_degrees[w][j]` is the degree of the weight-`w` block on factor `j`.
    factor_degrees: Vec<Vec<i64>>,
    /// Genus per factor; zero for projective lines.
    genus: Vec<i64>,
}

impl ManifoldPresentation {
    /// Validates shapes, faithfulness of the weight set, and consistency of
    /// the periods with the degree table: the pairing of weight `w` with the
    /// period of factor `j` must equal `factor_degrees[w][j]`.
    pub fn new(
        weight_set: TwoPiWeightSet,
        factor_degrees: Vec<Vec<i64>>,
        genus: Vec<i64>,
        periods: PeriodData,
    ) -> Result<Self, ModelError> {
        let dim_v = weight_set.dim_v();
        if !weight_set.spans() {
            return Err(ModelError::NotFaithful);
        }
        if factor_degrees.len() != weight_set.len() {
            return Err(ModelError::Shape(format!(
                "{} degree rows for {} weights",
                factor_degrees.len(),
                weight_set.len()
            )));
        }
        let half_dim = factor_degrees.first().map_or(0, |r| r.len());
        if factor_degrees.iter().any(|r| r.len() != half_dim) {
            return Err(ModelError::Shape("ragged degree table".into()));
        }
        if genus.len() != half_dim {
            return Err(ModelError::Shape(format!(
                "{} genus entries for {} factors",
                genus.len(),
                half_dim
            )));
        }
        if periods.dim_v != dim_v {
            return Err(ModelError::Shape(format!(
                "periods over dimension {}, weights over {}",
                periods.dim_v, dim_v
            )));
        }
        if periods.periods.len() != half_dim {
            return Err(ModelError::Shape(format!(
                "{} periods for {} factors",
                periods.periods.len(),
                half_dim
            )));
        }
        for (w, weight) in weight_set.weights().iter().enumerate() {
            for (j, period) in periods.periods.iter().enumerate() {
                let pairing: Rat = weight
                    .iter()
                    .zip(period)
                    .map(|(a, b)| a.clone() * b.clone())
                    .sum();
                if pairing != rint(factor_degrees[w][j]) {
                    return Err(ModelError::InconsistentDegrees { weight: w, factor: j });
                }
            }
        }
        let h2_rank = half_dim;
        Ok(ManifoldPresentation {
            half_dim,
            dim_v,
            h2_rank,
            periods,
            weight_set,
            factor_degrees,
            genus,
        })
    }

    /// Product of projective lines with the standard basis weight set: weight
    /// `w` has degree row `degrees[w]`. Periods are derived from the degrees.
    pub fn product_of_lines(degrees: Vec<Vec<i64>>) -> Result<Self, ModelError> {
        let ell = degrees.len();
        if ell == 0 {
            return Err(ModelError::NotFaithful);
        }
        let n = degrees[0].len();
        let weights = (0..ell)
            .map(|i| {
                (0..ell)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        let weight_set =
            TwoPiWeightSet::new(ell, weights).map_err(|e| ModelError::Shape(e.to_string()))?;
        // With standard-basis weights the period of factor j lists the
        // degrees of each weight block on factor j.
        let periods = PeriodData::new(
            ell,
            (0..n)
                .map(|j| (0..ell).map(|w| rint(degrees[w][j])).collect())
                .collect(),
        )
        .map_err(|e| ModelError::Shape(e.to_string()))?;
        // Weight rows are sorted inside TwoPiWeightSet; standard basis order
        // sorts as e_ell, ..., e_1, so reorder the degree rows to match.
        let sorted_weights = weight_set.weights().to_vec();
        let mut sorted_degrees = Vec::with_capacity(ell);
        for w in &sorted_weights {
            let original = (0..ell)
                .position(|i| {
                    w.iter()
                        .enumerate()
                        .all(|(j, x)| (*x == Rat::one()) == (j == i) )
                })
                .expect("standard basis weight");
            sorted_degrees.push(degrees[original].clone());
        }
        Self::new(weight_set, sorted_degrees, vec![0; n], periods)
    }

    /// A single point carrying the given number of standard-basis weights:
    /// the zero-dimensional presentation with fiber rank `num_weights`.
    pub fn point_with_weights(num_weights: usize) -> Result<Self, ModelError> {
        let weights = (0..num_weights)
            .map(|i| {
                (0..num_weights)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        let weight_set = TwoPiWeightSet::new(num_weights, weights)
            .map_err(|e| ModelError::Shape(e.to_string()))?;
        let periods =
            PeriodData::new(num_weights, vec![]).map_err(|e| ModelError::Shape(e.to_string()))?;
        Self::new(
            weight_set,
            vec![vec![]; num_weights],
            vec![],
            periods,
        )
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn h2_rank(&self) -> usize {
        self.h2_rank
    }

    pub fn weight_set(&self) -> &TwoPiWeightSet {
        &self.weight_set
    }

    pub fn factor_degrees(&self) -> &[Vec<i64>] {
        &self.factor_degrees
    }

    pub fn genus(&self) -> &[i64] {
        &self.genus
    }

    pub fn periods(&self) -> &PeriodData {
        &self.periods
    }

    /// Degrees rescaled by a positive integer: the presentation of the same
    /// underlying space with the form scaled by `k` (the `k`-th tensor power
    /// of the module data). Weights are unchanged.
    pub fn self_tensor_power(&self, k: i64) -> Result<Self, ModelError> {
        assert!(k >= 1, "tensor power must be positive");
        let degrees = self
            .factor_degrees
            .iter()
            .map(|row| row.iter().map(|d| d * k).collect())
            .collect();
        let periods = PeriodData::new(
            self.dim_v,
            self.periods
                .periods
                .iter()
                .map(|p| p.iter().map(|x| x.clone() * rint(k)).collect())
                .collect(),
        )
        .map_err(|e| ModelError::Shape(e.to_string()))?;
        Self::new(self.weight_set.clone(), degrees, self.genus.clone(), periods)
    }
}

/// Adapted volume: the sum over weights of the product of degrees over the
/// factors, exactly. This is the leading coefficient of the dimension count.
pub fn adapted_volume(model: &ManifoldPresentation) -> Rat {
    let mut total = Rat::zero();
    for row in model.factor_degrees() {
        let mut prod = Rat::one();
        for d in row {
            prod *= rint(*d);
        }
        total += prod;
    }
    total
}

/// Euler characteristic of the level-`k` module data: the product over
/// factors of `k*degree + 1 - genus`, summed over weights. For genus-zero
/// factors with positive degrees this equals the polarized section count.
pub fn rr_index(model: &ManifoldPresentation, k: i64) -> i64 {
    let mut total = 0i64;
    for row in model.factor_degrees() {
        let mut prod = 1i64;
        for (j, d) in row.iter().enumerate() {
            prod *= k * d + 1 - model.genus()[j];
        }
        total += prod;
    }
    total
}

/// Growth verification table: indices over a consecutive level range, the
/// exact leading coefficient by iterated finite differences, and the
/// subleading remainders.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub table: Vec<(i64, i64, Rat)>,
    pub leading_coefficient: Rat,
    pub volume: Rat,
    pub matches_volume: bool,
}

/// Computes the index over a consecutive range of levels, extracts the
/// degree-`n` leading coefficient by `n`-fold finite differences (exact), and
/// compares it with the adapted volume. Requires strictly positive degrees.
pub fn growth_check(model: &ManifoldPresentation, k_range: &[i64]) -> Result<GrowthReport, ModelError> {
    for (w, row) in model.factor_degrees().iter().enumerate() {
        for (j, d) in row.iter().enumerate() {
            if *d <= 0 {
                return Err(ModelError::NotPositive { weight: w, factor: j });
            }
        }
    }
    let n = model.half_dim();
    if k_range.len() < n + 1 {
        return Err(ModelError::RangeTooShort {
            needed: n + 1,
            got: k_range.len(),
        });
    }
    if k_range.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(ModelError::Shape(
            "growth check requires consecutive levels".into(),
        ));
    }
    let values: Vec<i64> = k_range.iter().map(|&k| rr_index(model, k)).collect();
    // n-fold forward differences divided by n! give the leading coefficient
    // of a degree-n polynomial, constant across windows.
    let mut diffs: Vec<Rat> = values.iter().map(|&v| rint(v)).collect();
    for _ in 0..n {
        diffs = diffs.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    let factorial: Rat = (1..=n as i64).map(rint).product();
    let leads: Vec<Rat> = diffs.iter().map(|d| d.clone() / factorial.clone()).collect();
    let leading = leads[0].clone();
    let consistent = leads.iter().all(|l| *l == leading);
    let volume = adapted_volume(model);
    let matches = consistent && leading == volume;
    let table = k_range
        .iter()
        .zip(&values)
        .map(|(&k, &v)| {
            let mut kn = Rat::one();
            for _ in 0..n {
                kn *= rint(k);
            }
            let remainder = rint(v) - volume.clone() * kn;
            (k, v, remainder)
        })
        .collect();
    Ok(GrowthReport {
        table,
        leading_coefficient: leading,
        volume,
        matches_volume: matches,
    })
}

/// A permutation recorded as the image list: `map[i]` is the index that
/// weight `i` is sent to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Flat coefficient data: invertible transition generators acting on the
/// coefficient space, plus the weight multiset at the base point.
#[derive(Debug, Clone)]
pub struct MonodromyPresentation {
    pub generators: Vec<Mat<Rat>>,
    pub weight_set: TwoPiWeightSet,
}

impl MonodromyPresentation {
    pub fn new(
        generators: Vec<Mat<Rat>>,
        weight_set: TwoPiWeightSet,
    ) -> Result<Self, ModelError> {
        let ell = weight_set.dim_v();
        for (i, g) in generators.iter().enumerate() {
            if g.nrows() != ell || g.ncols() != ell {
                return Err(ModelError::Shape(format!(
                    "generator {i} is {}x{}, expected {ell}x{ell}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            if g.inverse().is_none() {
                return Err(ModelError::SingularGenerator { generator: i });
            }
        }
        Ok(MonodromyPresentation {
            generators,
            weight_set,
        })
    }
}

/// For each generator, pulls every weight back through the inverse transition
/// and matches the result against the original multiset. When the multiset is
/// preserved the induced permutation is returned; otherwise the flat data
/// cannot carry a compatible module structure.
pub fn monodromy_weight_action(
    pres: &MonodromyPresentation,
) -> Result<Vec<Permutation>, ModelError> {
    let weights = pres.weight_set.weights();
    let mut out = Vec::with_capacity(pres.generators.len());
    for (gi, g) in pres.generators.iter().enumerate() {
        let inv = g.inverse().expect("validated invertible");
        let mut used = vec![false; weights.len()];
        let mut map = vec![0usize; weights.len()];
        for (i, w) in weights.iter().enumerate() {
            // Row vector times matrix: the pulled-back weight.
            let pulled: Vec<Rat> = (0..pres.weight_set.dim_v())
                .map(|c| {
                    let mut acc = Rat::zero();
                    for (r, wr) in w.iter().enumerate() {
                        acc += wr.clone() * inv.get(r, c).clone();
                    }
                    acc
                })
                .collect();
            let Some(j) = weights
                .iter()
                .enumerate()
                .position(|(j, cand)| !used[j] && *cand == pulled)
            else {
                return Err(ModelError::WeightsNotPermuted { generator: gi });
            };
            used[j] = true;
            map[i] = j;
        }
        out.push(Permutation(map));
    }
    Ok(out)
}

/// How two presentations combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    /// Coefficient spaces concatenate; each side keeps its own weights,
    /// extended by zero, and the degree table is block diagonal.
    CoefficientDoubling,
    /// Same coefficient space; weights intersect as multisets and degree
    /// rows concatenate along the factors.
    SharedCoefficients,
}

/// Product of two presentations. Coefficient doubling concatenates the
/// coefficient spaces and factors; the shared-coefficient product keeps only
/// weights present on both sides and fails when the intersection is empty.
pub fn product_model(
    a: &ManifoldPresentation,
    b: &ManifoldPresentation,
    mode: ProductMode,
) -> Result<ManifoldPresentation, ModelError> {
    match mode {
        ProductMode::CoefficientDoubling => {
            let ell = a.dim_v() + b.dim_v();
            let mut weights = Vec::new();
            let mut degrees = Vec::new();
            for (w, row) in a.weight_set().weights().iter().zip(a.factor_degrees()) {
                let mut ext = w.clone();
                ext.extend(std::iter::repeat_n(Rat::zero(), b.dim_v()));
                weights.push(ext);
                let mut drow = row.clone();
                drow.extend(std::iter::repeat_n(0, b.half_dim()));
                degrees.push(drow);
            }
            for (w, row) in b.weight_set().weights().iter().zip(b.factor_degrees()) {
                let mut ext = vec![Rat::zero(); a.dim_v()];
                ext.extend(w.iter().cloned());
                weights.push(ext);
                let mut drow = vec![0; a.half_dim()];
                drow.extend(row.iter().cloned());
                degrees.push(drow);
            }
            // Sort rows together with the weights for the canonical order.
            let mut paired: Vec<(Vec<Rat>, Vec<i64>)> =
                weights.into_iter().zip(degrees).collect();
            paired.sort_by(|x, y| x.0.cmp(&y.0));
            let (weights, degrees): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
            let weight_set =
                TwoPiWeightSet::new(ell, weights).map_err(|e| ModelError::Shape(e.to_string()))?;
            let mut genus = a.genus().to_vec();
            genus.extend_from_slice(b.genus());
            let mut periods = Vec::new();
            for p in &a.periods().periods {
                let mut ext = p.clone();
                ext.extend(std::iter::repeat_n(Rat::zero(), b.dim_v()));
                periods.push(ext);
            }
            for p in &b.periods().periods {
                let mut ext = vec![Rat::zero(); a.dim_v()];
                ext.extend(p.iter().cloned());
                periods.push(ext);
            }
            let periods =
                PeriodData::new(ell, periods).map_err(|e| ModelError::Shape(e.to_string()))?;
            ManifoldPresentation::new(weight_set, degrees, genus, periods)
        }
        ProductMode::SharedCoefficients => {
            if a.dim_v() != b.dim_v() {
                return Err(ModelError::ConventionMismatch(format!(
                    "coefficient dimensions {} and {}",
                    a.dim_v(),
                    b.dim_v()
                )));
            }
            // Shared weights only (by exact equality), degree rows concatenate.
            let mut weights = Vec::new();
            let mut degrees = Vec::new();
            for (w, row_a) in a.weight_set().weights().iter().zip(a.factor_degrees()) {
                if let Some(bi) = b.weight_set().weights().iter().position(|wb| wb == w) {
                    let mut drow = row_a.clone();
                    drow.extend(b.factor_degrees()[bi].iter().cloned());
                    weights.push(w.clone());
                    degrees.push(drow);
                }
            }
            if weights.is_empty() {
                return Err(ModelError::NotPrequantizable);
            }
            let weight_set = TwoPiWeightSet::new(a.dim_v(), weights)
                .map_err(|e| ModelError::Shape(e.to_string()))?;
            let mut genus = a.genus().to_vec();
            genus.extend_from_slice(b.genus());
            let mut periods = a.periods().periods.clone();
            periods.extend(b.periods().periods.iter().cloned());
            let periods = PeriodData::new(a.dim_v(), periods)
                .map_err(|e| ModelError::Shape(e.to_string()))?;
            ManifoldPresentation::new(weight_set, degrees, genus, periods)
        }
    }
}
