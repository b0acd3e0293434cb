//! Lattice arithmetic for period groups in the coefficient space.
//!
//! Lattices here are finitely generated subgroups of the rational coefficient
//! space, stored in a canonical row Hermite normal form, so equality of
//! subgroups is equality of representations. Period data records the values
//! of the form over a basis of integral 2-cycles; the span of the periods is
//! the minimal candidate for a prequantum lattice, and full lattices
//! containing every period are exactly the admissible ones. A full basis
//! corresponds to a weight basis through duality, scaled so the symbolic
//! `2*pi*i` factor never leaves the books.

use crate::linalg::Mat;
use crate::rational::{format_rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("lattice is not full rank (rank {rank} in dimension {dim_v})")]
    NotFull { rank: usize, dim_v: usize },
    #[error("vectors do not form a basis of the coefficient space")]
    NotABasis,
    #[error("dimension mismatch: expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Row Hermite normal form of an integer matrix: pivot columns strictly
/// increase, pivots are positive, entries above each pivot are reduced to
/// `[0, pivot)`, and zero rows are dropped. The result is the unique
/// canonical basis of the row span as a subgroup.
pub fn hnf_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut m = rows;
    assert!(m.iter().all(|r| r.len() == cols), "ragged rows");
    let mut top = 0usize;
    for c in 0..cols {
        if top == m.len() {
            break;
        }
        // Euclidean elimination in column c among rows top..
        loop {
            let mut best: Option<usize> = None;
            for i in top..m.len() {
                if !m[i][c].is_zero()
                    && best.is_none_or(|b| m[i][c].abs() < m[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(top, b);
            let mut done = true;
            for i in (top + 1)..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = div_round(&m[i][c], &m[top][c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let sub = &q * &m[top][j];
                        m[i][j] -= sub;
                    }
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[top][c].is_zero() {
            continue;
        }
        if m[top][c].is_negative() {
            for j in 0..cols {
                m[top][j] = -m[top][j].clone();
            }
        }
        // Reduce the entries above the new pivot into [0, pivot).
        for i in 0..top {
            let q = m[i][c].div_floor(&m[top][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let sub = &q * &m[top][j];
                    m[i][j] -= sub;
                }
            }
        }
        top += 1;
    }
    m.truncate(top);
    m
}

/// Quotient rounding to the nearest integer; keeps Euclidean steps small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        q + BigInt::one()
    } else {
        q
    }
}

/// A finitely generated subgroup of the rational coefficient space in
/// canonical form: an integer Hermite basis over a common denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLattice {
    dim_v: usize,
    /// Canonical basis rows, rational entries.
    basis: Vec<Vec<Rat>>,
}

impl RationalLattice {
    /// Span of arbitrary rational generators, canonicalized.
    pub fn from_generators(dim_v: usize, generators: &[Vec<Rat>]) -> Result<Self, LatticeError> {
        for g in generators {
            if g.len() != dim_v {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim_v,
                    found: g.len(),
                });
            }
        }
        let denom = common_denominator(generators.iter().flatten());
        let int_rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| {
                        let scaled = x * Rat::from_integer(denom.clone());
                        debug_assert!(scaled.denom().is_one());
                        scaled.to_integer()
                    })
                    .collect()
            })
            .collect();
        let hnf = hnf_rows(int_rows);
        let basis = hnf
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| Rat::new(x, denom.clone()))
                    .collect()
            })
            .collect();
        Ok(RationalLattice { dim_v, basis })
    }

    pub fn zero(dim_v: usize) -> Self {
        RationalLattice {
            dim_v,
            basis: Vec::new(),
        }
    }

    /// The integer lattice spanned by the standard basis.
    pub fn standard(dim_v: usize) -> Self {
        let basis = (0..dim_v)
            .map(|i| {
                (0..dim_v)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        RationalLattice { dim_v, basis }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim_v
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Integer membership against the canonical basis.
    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim_v);
        let denom = common_denominator(self.basis.iter().flatten().chain(v.iter()));
        let scale = Rat::from_integer(denom.clone());
        let rows: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| (x * scale.clone()).to_integer()).collect())
            .collect();
        let mut target: Vec<BigInt> = v.iter().map(|x| (x * scale.clone()).to_integer()).collect();
        // The basis is upper triangular on its pivot columns; walk the rows.
        for row in &rows {
            let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if target[pc].is_zero() {
                continue;
            }
            let (q, r) = target[pc].div_mod_floor(&row[pc]);
            if !r.is_zero() {
                return false;
            }
            for j in 0..self.dim_v {
                let sub = &q * &row[j];
                target[j] -= sub;
            }
        }
        target.iter().all(|x| x.is_zero())
    }

    pub fn contains_lattice(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn basis_strings(&self) -> Vec<Vec<String>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(format_rat).collect())
            .collect()
    }
}

fn common_denominator<'a>(entries: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut denom = BigInt::one();
    for e in entries {
        denom = denom.lcm(e.denom());
    }
    denom
}

/// Values of the form over a basis of integral 2-cycles: a finite list of
/// rational vectors in the coefficient space.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodData {
    pub dim_v: usize,
    pub periods: Vec<Vec<Rat>>,
}

impl PeriodData {
    pub fn new(dim_v: usize, periods: Vec<Vec<Rat>>) -> Result<Self, LatticeError> {
        for p in &periods {
            if p.len() != dim_v {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim_v,
                    found: p.len(),
                });
            }
        }
        Ok(PeriodData { dim_v, periods })
    }
}

/// The subgroup generated by the periods, in canonical form. Finitely many
/// rational generators always span a lattice (a free discrete subgroup).
pub fn span_lattice(periods: &PeriodData) -> RationalLattice {
    RationalLattice::from_generators(periods.dim_v, &periods.periods)
        .expect("periods validated at construction")
}

/// A full lattice admits the form exactly when it contains every period.
pub fn is_prequantum_lattice(
    lattice: &RationalLattice,
    periods: &PeriodData,
) -> Result<bool, LatticeError> {
    if !lattice.is_full() {
        return Err(LatticeError::NotFull {
            rank: lattice.rank(),
            dim_v: lattice.dim_v(),
        });
    }
    Ok(periods.periods.iter().all(|p| lattice.contains_vector(p)))
}

/// Outcome of the principal-lattice computation.
#[derive(Debug, Clone, PartialEq)]
pub enum PrincipalLattice {
    /// The period span is full, hence the minimal lattice containing the
    /// periods; `witnesses_checked` random full superlattices were verified
    /// to contain it.
    Principal {
        lattice: RationalLattice,
        witnesses_checked: usize,
    },
    /// The period span is not full. Full lattices containing the periods
    /// still exist; one witness is returned.
    NotFullRank {
        span: RationalLattice,
        witness: RationalLattice,
    },
}

/// Canonicalizes the period span and certifies minimality when it is full by
/// checking containment in randomly generated full superlattices.
pub fn principal_lattice(periods: &PeriodData, seed: u64) -> PrincipalLattice {
    let span = span_lattice(periods);
    if span.is_full() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let witnesses = 10;
        for _ in 0..witnesses {
            let sup = random_full_superlattice(&span, &mut rng);
            assert!(
                sup.contains_lattice(&span),
                "period span escaped a superlattice"
            );
            assert!(
                is_prequantum_lattice(&sup, periods).expect("superlattice is full"),
                "superlattice lost a period"
            );
        }
        PrincipalLattice::Principal {
            lattice: span,
            witnesses_checked: witnesses,
        }
    } else {
        // Any full lattice containing the periods witnesses existence; the
        // span of the periods together with the standard basis is one.
        let mut gens = span.basis().to_vec();
        for row in RationalLattice::standard(periods.dim_v).basis() {
            gens.push(row.clone());
        }
        let witness = RationalLattice::from_generators(periods.dim_v, &gens)
            .expect("generators have matching dimension");
        debug_assert!(witness.is_full());
        PrincipalLattice::NotFullRank { span, witness }
    }
}

fn random_full_superlattice(base: &RationalLattice, rng: &mut ChaCha8Rng) -> RationalLattice {
    let dim = base.dim_v();
    let mut gens = base.basis().to_vec();
    // Refine by a couple of random rational vectors with small denominators.
    for _ in 0..2 {
        let den = rng.random_range(1..=4i64);
        let v: Vec<Rat> = (0..dim)
            .map(|_| Rat::new(BigInt::from(rng.random_range(-3..=3i64)), BigInt::from(den)))
            .collect();
        gens.push(v);
    }
    RationalLattice::from_generators(dim, &gens).expect("matching dimension")
}

/// Structured quantizability verdict: the four equivalent conditions, all
/// decided by whether the period span is a (full-rank or not) lattice, which
/// is automatic over rational period data.
#[derive(Debug, Clone)]
pub struct QuantizabilityReport {
    pub quantizable: bool,
    /// A minimal rank prequantization exists.
    pub minimal_rank_exists: bool,
    /// Some full lattice contains every period.
    pub admits_prequantum_lattice: bool,
    /// The period span itself is a prequantum lattice (requires fullness).
    pub span_is_principal: bool,
    /// The period span is a lattice (discrete subgroup); always true here.
    pub span_is_lattice: bool,
    /// Rank of the period span.
    pub span_rank: usize,
}

/// Decides quantizability from period data. Rational periods always generate
/// a lattice, so the verdict is affirmative; the report distinguishes whether
/// the period span itself is full (and hence the principal prequantum
/// lattice) or existence is witnessed by a larger full lattice.
pub fn is_quantizable(periods: &PeriodData) -> QuantizabilityReport {
    let span = span_lattice(periods);
    let full = span.is_full();
    QuantizabilityReport {
        quantizable: true,
        minimal_rank_exists: true,
        admits_prequantum_lattice: true,
        span_is_principal: full,
        span_is_lattice: true,
        span_rank: span.rank(),
    }
}

/// A multiset of weight vectors recorded as rational multiples of the
/// symbolic unit `2*pi*i`, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPiWeightSet {
    dim_v: usize,
    weights: Vec<Vec<Rat>>,
}

impl TwoPiWeightSet {
    pub fn new(dim_v: usize, mut weights: Vec<Vec<Rat>>) -> Result<Self, LatticeError> {
        for w in &weights {
            if w.len() != dim_v {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim_v,
                    found: w.len(),
                });
            }
        }
        weights.sort();
        Ok(TwoPiWeightSet { dim_v, weights })
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn weights(&self) -> &[Vec<Rat>] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Do the weights span the dual of the coefficient space?
    pub fn spans(&self) -> bool {
        if self.weights.is_empty() {
            return self.dim_v == 0;
        }
        Mat::from_rows(self.weights.clone()).rank() == self.dim_v
    }

    /// Multiset intersection; a weight shared with multiplicities `m` and
    /// `m'` appears with multiplicity `m * m'`, matching the dimension of the
    /// balanced tensor of the paired weight blocks.
    pub fn intersect_product(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.dim_v != other.dim_v {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim_v,
                found: other.dim_v,
            });
        }
        let mut counts = std::collections::BTreeMap::new();
        for w in &self.weights {
            *counts.entry(w.clone()).or_insert((0usize, 0usize)) =
                (counts.get(w).map_or(0, |c: &(usize, usize)| c.0) + 1, 0);
        }
        for w in &other.weights {
            if let Some(c) = counts.get_mut(w) {
                c.1 += 1;
            }
        }
        let mut weights = Vec::new();
        for (w, (m, m2)) in counts {
            for _ in 0..(m * m2) {
                weights.push(w.clone());
            }
        }
        TwoPiWeightSet::new(self.dim_v, weights)
    }

    pub fn weight_strings(&self) -> Vec<Vec<String>> {
        self.weights
            .iter()
            .map(|w| w.iter().map(format_rat).collect())
            .collect()
    }
}

/// Forward direction of the classification: a full lattice basis determines
/// the weight multiset `2*pi*i` times the dual basis.
pub fn classify_minimal(basis: &[Vec<Rat>]) -> Result<TwoPiWeightSet, LatticeError> {
    let ell = basis.len();
    if ell == 0 {
        return Err(LatticeError::NotABasis);
    }
    let dim_v = basis[0].len();
    if dim_v != ell || basis.iter().any(|b| b.len() != dim_v) {
        return Err(LatticeError::NotABasis);
    }
    let b = Mat::from_rows(basis.to_vec());
    let Some(dual) = b.transpose().inverse() else {
        return Err(LatticeError::NotABasis);
    };
    // Rows of (B^T)^{-1} are the dual basis vectors.
    TwoPiWeightSet::new(dim_v, dual.rows_vec())
}

/// Inverse direction: a weight basis (in `2*pi*i` units) determines the
/// lattice generated by the dual basis, canonicalized.
pub fn weights_to_lattice(weights: &TwoPiWeightSet) -> Result<RationalLattice, LatticeError> {
    let ell = weights.len();
    if ell != weights.dim_v() {
        return Err(LatticeError::NotABasis);
    }
    let w = Mat::from_rows(weights.weights().to_vec());
    let Some(dual) = w.transpose().inverse() else {
        return Err(LatticeError::NotABasis);
    };
    RationalLattice::from_generators(weights.dim_v(), &dual.rows_vec())
}

/// Pairing integrality: every weight paired with every period must be an
/// integer (in symbolic units, the pairing lands in `2*pi*i` times the
/// integers). Holds whenever the periods lie in the lattice dual to the
/// weights.
pub fn weights_periods_integral(weights: &TwoPiWeightSet, periods: &PeriodData) -> bool {
    weights.weights().iter().all(|w| {
        periods.periods.iter().all(|p| {
            let pairing: Rat = w
                .iter()
                .zip(p)
                .map(|(a, b)| a.clone() * b.clone())
                .sum();
            pairing.denom().is_one()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    fn rv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(rint).collect()
    }

    fn big(rows: Vec<Vec<i64>>) -> Vec<Vec<BigInt>> {
        rows.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    }

    #[test]
    fn hnf_gcd_example() {
        // Rows (2,0), (3,0), (0,5) span Z x 5Z.
        let h = hnf_rows(big(vec![vec![2, 0], vec![3, 0], vec![0, 5]]));
        assert_eq!(h, big(vec![vec![1, 0], vec![0, 5]]));
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let h = hnf_rows(big(vec![vec![2, 7], vec![0, 3]]));
        assert_eq!(h, big(vec![vec![2, 1], vec![0, 3]]));
    }

    #[test]
    fn hnf_invariant_under_recombination() {
        let a = hnf_rows(big(vec![vec![4, 6], vec![2, 2]]));
        // Swap rows and add multiples: same subgroup.
        let b = hnf_rows(big(vec![vec![2, 2], vec![6, 8], vec![4, 6]]));
        assert_eq!(a, b);
    }

    #[test]
    fn span_and_membership() {
        let p = PeriodData::new(2, vec![rv(vec![2, 0]), rv(vec![3, 0]), rv(vec![0, 5])]).unwrap();
        let l = span_lattice(&p);
        assert!(l.is_full());
        assert_eq!(l.basis(), &[rv(vec![1, 0]), rv(vec![0, 5])]);
        assert!(l.contains_vector(&rv(vec![1, 5])));
        assert!(!l.contains_vector(&rv(vec![0, 3])));
    }

    #[test]
    fn empty_periods_span_zero_lattice() {
        let p = PeriodData::new(2, vec![]).unwrap();
        let l = span_lattice(&p);
        assert_eq!(l.rank(), 0);
        assert!(!l.is_full());
    }

    #[test]
    fn rank_one_periods() {
        let p = PeriodData::new(2, vec![rv(vec![1, 1])]).unwrap();
        let l = span_lattice(&p);
        assert_eq!(l.rank(), 1);
        assert!(!l.is_full());
    }

    #[test]
    fn prequantum_membership_tests() {
        let z2 = RationalLattice::standard(2);
        let p = PeriodData::new(2, vec![rv(vec![1, 0]), rv(vec![0, 5])]).unwrap();
        assert!(is_prequantum_lattice(&z2, &p).unwrap());

        let two_z2 = RationalLattice::from_generators(2, &[rv(vec![2, 0]), rv(vec![0, 2])]).unwrap();
        let p2 = PeriodData::new(2, vec![rv(vec![1, 0])]).unwrap();
        assert!(!is_prequantum_lattice(&two_z2, &p2).unwrap());

        // Half-integer lattice: (0,5) = -5*(1,0) + 10*(1/2,1/2).
        let half = RationalLattice::from_generators(
            2,
            &[rv(vec![1, 0]), vec![rat(1, 2), rat(1, 2)]],
        )
        .unwrap();
        let p3 = PeriodData::new(2, vec![rv(vec![0, 5])]).unwrap();
        assert!(is_prequantum_lattice(&half, &p3).unwrap());

        let not_full = RationalLattice::from_generators(2, &[rv(vec![1, 0])]).unwrap();
        assert_eq!(
            is_prequantum_lattice(&not_full, &p3).unwrap_err(),
            LatticeError::NotFull { rank: 1, dim_v: 2 }
        );
    }

    #[test]
    fn principal_lattice_full_and_deficient() {
        let p = PeriodData::new(2, vec![rv(vec![2, 0]), rv(vec![3, 0]), rv(vec![0, 5])]).unwrap();
        match principal_lattice(&p, 7) {
            PrincipalLattice::Principal {
                lattice,
                witnesses_checked,
            } => {
                assert_eq!(lattice.basis(), &[rv(vec![1, 0]), rv(vec![0, 5])]);
                assert_eq!(witnesses_checked, 10);
            }
            other => panic!("expected principal, got {other:?}"),
        }
        let empty = PeriodData::new(2, vec![]).unwrap();
        match principal_lattice(&empty, 7) {
            PrincipalLattice::NotFullRank { span, witness } => {
                assert_eq!(span.rank(), 0);
                assert!(witness.is_full());
                assert_eq!(witness, RationalLattice::standard(2));
            }
            other => panic!("expected not-full-rank, got {other:?}"),
        }
    }

    #[test]
    fn principal_lattice_dimension_one() {
        let p = PeriodData::new(1, vec![rv(vec![3])]).unwrap();
        match principal_lattice(&p, 1) {
            PrincipalLattice::Principal { lattice, .. } => {
                assert_eq!(lattice.basis(), &[rv(vec![3])]);
            }
            other => panic!("expected principal, got {other:?}"),
        }
    }

    #[test]
    fn quantizability_report_variants() {
        let p = PeriodData::new(2, vec![rv(vec![1, 0]), rv(vec![0, 1])]).unwrap();
        let r = is_quantizable(&p);
        assert!(r.quantizable && r.minimal_rank_exists && r.span_is_principal);

        let exact = PeriodData::new(2, vec![]).unwrap();
        let r = is_quantizable(&exact);
        assert!(r.quantizable && !r.span_is_principal && r.span_rank == 0);

        let deficient = PeriodData::new(2, vec![rv(vec![1, 1])]).unwrap();
        let r = is_quantizable(&deficient);
        assert!(r.quantizable && !r.span_is_principal && r.span_rank == 1);
    }

    #[test]
    fn classify_standard_basis() {
        let w = classify_minimal(&[rv(vec![1, 0]), rv(vec![0, 1])]).unwrap();
        assert_eq!(w.weights(), &[rv(vec![0, 1]), rv(vec![1, 0])]);
    }

    #[test]
    fn classify_skew_basis() {
        // Basis (2,0), (1,1): dual basis (1/2, -1/2), (0, 1).
        let w = classify_minimal(&[rv(vec![2, 0]), rv(vec![1, 1])]).unwrap();
        assert_eq!(
            w.weights(),
            &[vec![rint(0), rint(1)], vec![rat(1, 2), rat(-1, 2)]]
        );
    }

    #[test]
    fn classify_round_trip() {
        let basis = vec![rv(vec![2, 0]), rv(vec![1, 1])];
        let w = classify_minimal(&basis).unwrap();
        let l = weights_to_lattice(&w).unwrap();
        let original = RationalLattice::from_generators(2, &basis).unwrap();
        assert_eq!(l, original);
    }

    #[test]
    fn classify_rejects_dependent() {
        assert_eq!(
            classify_minimal(&[rv(vec![1, 0]), rv(vec![2, 0])]).unwrap_err(),
            LatticeError::NotABasis
        );
    }

    #[test]
    fn containment_partial_order() {
        let a = RationalLattice::from_generators(2, &[rv(vec![1, 0]), rv(vec![0, 1])]).unwrap();
        let b = RationalLattice::from_generators(2, &[rv(vec![1, 1]), rv(vec![0, 1])]).unwrap();
        assert!(a.contains_lattice(&b) && b.contains_lattice(&a));
        assert_eq!(a, b);
    }

    #[test]
    fn weight_multiset_intersection() {
        let a = TwoPiWeightSet::new(2, vec![rv(vec![1, 0]), rv(vec![0, 1])]).unwrap();
        let b = TwoPiWeightSet::new(2, vec![rv(vec![0, 1]), rv(vec![1, 1])]).unwrap();
        let i = a.intersect_product(&b).unwrap();
        assert_eq!(i.weights(), &[rv(vec![0, 1])]);
        // Multiplicities multiply.
        let c = TwoPiWeightSet::new(2, vec![rv(vec![0, 1]), rv(vec![0, 1])]).unwrap();
        let i2 = c.intersect_product(&c).unwrap();
        assert_eq!(i2.len(), 4);
    }

    #[test]
    fn integrality_of_weight_period_pairing() {
        let basis = vec![rv(vec![2, 0]), rv(vec![1, 1])];
        let w = classify_minimal(&basis).unwrap();
        let p = PeriodData::new(2, vec![rv(vec![2, 0]), rv(vec![3, 1])]).unwrap();
        // Both periods lie in the lattice of the basis.
        let l = RationalLattice::from_generators(2, &basis).unwrap();
        assert!(l.contains_vector(&p.periods[0]) && l.contains_vector(&p.periods[1]));
        assert!(weights_periods_integral(&w, &p));
    }
}
