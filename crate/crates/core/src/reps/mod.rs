//! Commuting skew-Hermitian families: the module structure of the coefficient
//! space on a Hermitian fiber.
//!
//! A family of pairwise commuting skew-Hermitian matrices, one per coordinate
//! of the coefficient space, decomposes the fiber into joint eigenspaces. The
//! joint eigenvalues are purely imaginary; we store their imaginary parts as
//! the weight vectors. Exact Gaussian-rational families take an exact
//! decomposition path whenever every joint eigenvalue is rational; everything
//! else falls back to floating Hermitian eigensolves with tolerance-based
//! clustering.

pub mod poly;
mod scalar;

pub use poly::{
    curvature_composition_defect, polynomial_hamiltonian_field, prequantum_commutator_check,
    CommutatorReport, OperatorError, PolyObservable,
};

use crate::linalg::Mat;
use crate::rational::{cimag, rat_to_f64, CRat, Rat};
use crate::vsympl::VSymplecticSpace;
use nalgebra::{Complex, DMatrix, DVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Cf64 = Complex<f64>;
pub type CMatF = DMatrix<Cf64>;

/// Tolerance for accepting floating input as skew-Hermitian.
const SKEW_HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance for accepting floating generators as commuting.
const COMMUTING_TOL: f64 = 1e-10;
/// Eigenvalues closer than this merge into one weight.
const WEIGHT_MERGE_TOL: f64 = 1e-7;

#[derive(Debug, Error, PartialEq)]
pub enum RepError {
    #[error("generator {index} is not skew-Hermitian")]
    NotSkewHermitian { index: usize },
    #[error("generators {a} and {b} do not commute")]
    NotCommuting { a: usize, b: usize },
    #[error("representation is not faithful")]
    NotFaithful,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rank must be positive")]
    EmptyFiber,
}

/// A commuting family of skew-Hermitian endomorphisms indexed by the
/// coefficient coordinates. Exact Gaussian-rational generators are retained
/// alongside their floating projection when available.
#[derive(Debug, Clone)]
pub struct AbelianRep {
    dim_v: usize,
    rank: usize,
    generators: Vec<CMatF>,
    exact: Option<Vec<Mat<CRat>>>,
}

fn mat_inf_norm(m: &CMatF) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn exact_to_f64(m: &Mat<CRat>) -> CMatF {
    CMatF::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m.get(i, j);
        Complex::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
    })
}

impl AbelianRep {
    /// Builds a representation from exact generators, verifying skewness and
    /// commutation exactly.
    pub fn from_exact(gens: Vec<Mat<CRat>>) -> Result<Self, RepError> {
        assert!(!gens.is_empty(), "at least one generator");
        let rank = gens[0].nrows();
        if rank == 0 {
            return Err(RepError::EmptyFiber);
        }
        for (idx, g) in gens.iter().enumerate() {
            if g.nrows() != rank || g.ncols() != rank {
                return Err(RepError::DimensionMismatch(format!(
                    "generator {idx} is {}x{}, expected {rank}x{rank}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            if g.conj_transpose() != g.neg() {
                return Err(RepError::NotSkewHermitian { index: idx });
            }
        }
        for a in 0..gens.len() {
            for b in (a + 1)..gens.len() {
                if gens[a].matmul(&gens[b]) != gens[b].matmul(&gens[a]) {
                    return Err(RepError::NotCommuting { a, b });
                }
            }
        }
        let generators = gens.iter().map(exact_to_f64).collect();
        Ok(AbelianRep {
            dim_v: gens.len(),
            rank,
            generators,
            exact: Some(gens),
        })
    }

    /// Builds a representation from floating generators, verifying skewness
    /// and commutation within tolerances scaled by the matrix norms.
    pub fn from_f64(gens: Vec<CMatF>) -> Result<Self, RepError> {
        assert!(!gens.is_empty(), "at least one generator");
        let rank = gens[0].nrows();
        if rank == 0 {
            return Err(RepError::EmptyFiber);
        }
        for (idx, g) in gens.iter().enumerate() {
            if g.nrows() != rank || g.ncols() != rank {
                return Err(RepError::DimensionMismatch(format!(
                    "generator {idx} is {}x{}, expected {rank}x{rank}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            let scale = mat_inf_norm(g).max(1.0);
            if mat_inf_norm(&(g.adjoint() + g)) > SKEW_HERMITIAN_TOL * scale {
                return Err(RepError::NotSkewHermitian { index: idx });
            }
        }
        for a in 0..gens.len() {
            for b in (a + 1)..gens.len() {
                let scale = (mat_inf_norm(&gens[a]) * mat_inf_norm(&gens[b])).max(1.0);
                let comm = &gens[a] * &gens[b] - &gens[b] * &gens[a];
                if mat_inf_norm(&comm) > COMMUTING_TOL * scale {
                    return Err(RepError::NotCommuting { a, b });
                }
            }
        }
        Ok(AbelianRep {
            dim_v: gens.len(),
            rank,
            generators: gens,
            exact: None,
        })
    }

    /// Diagonal representation with the given exact weight multiset: the
    /// generator for coordinate `g` is `diag(i * w_g)` over the listed
    /// weights with multiplicity.
    pub fn diagonal_exact(dim_v: usize, weights: &[(Vec<Rat>, usize)]) -> Result<Self, RepError> {
        let rank: usize = weights.iter().map(|(_, m)| m).sum();
        if rank == 0 {
            return Err(RepError::EmptyFiber);
        }
        let mut gens = Vec::with_capacity(dim_v);
        for g in 0..dim_v {
            let mut m = Mat::<CRat>::zeros(rank, rank);
            let mut idx = 0;
            for (w, mult) in weights {
                assert_eq!(w.len(), dim_v, "weight length mismatch");
                for _ in 0..*mult {
                    m.set(idx, idx, cimag(w[g].clone()));
                    idx += 1;
                }
            }
            gens.push(m);
        }
        Self::from_exact(gens)
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[CMatF] {
        &self.generators
    }

    pub fn exact_generators(&self) -> Option<&[Mat<CRat>]> {
        self.exact.as_deref()
    }
}

/// A weight multiset: joint imaginary parts of the family's eigenvalues, with
/// multiplicities, either exact or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSet {
    Exact {
        dim_v: usize,
        entries: Vec<(Vec<Rat>, usize)>,
    },
    Float {
        dim_v: usize,
        entries: Vec<(Vec<f64>, usize)>,
    },
}

impl WeightSet {
    pub fn dim_v(&self) -> usize {
        match self {
            WeightSet::Exact { dim_v, .. } | WeightSet::Float { dim_v, .. } => *dim_v,
        }
    }

    pub fn total_multiplicity(&self) -> usize {
        match self {
            WeightSet::Exact { entries, .. } => entries.iter().map(|(_, m)| m).sum(),
            WeightSet::Float { entries, .. } => entries.iter().map(|(_, m)| m).sum(),
        }
    }

    pub fn distinct_count(&self) -> usize {
        match self {
            WeightSet::Exact { entries, .. } => entries.len(),
            WeightSet::Float { entries, .. } => entries.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.distinct_count() == 0
    }

    pub fn float_entries(&self) -> Vec<(Vec<f64>, usize)> {
        match self {
            WeightSet::Exact { entries, .. } => entries
                .iter()
                .map(|(w, m)| (w.iter().map(rat_to_f64).collect(), *m))
                .collect(),
            WeightSet::Float { entries, .. } => entries.clone(),
        }
    }

    pub fn exact_entries(&self) -> Option<&[(Vec<Rat>, usize)]> {
        match self {
            WeightSet::Exact { entries, .. } => Some(entries),
            WeightSet::Float { .. } => None,
        }
    }

    /// Multiset intersection with product multiplicities: a weight of
    /// multiplicity `m` on one side and `m'` on the other contributes `m*m'`,
    /// the dimension of the paired block. Exact sets intersect exactly;
    /// otherwise weights closer than the merge tolerance identify.
    pub fn intersect_product(&self, other: &WeightSet) -> Result<WeightSet, RepError> {
        if self.dim_v() != other.dim_v() {
            return Err(RepError::DimensionMismatch(format!(
                "weight sets over dimensions {} and {}",
                self.dim_v(),
                other.dim_v()
            )));
        }
        match (self, other) {
            (
                WeightSet::Exact { dim_v, entries: ea },
                WeightSet::Exact { entries: eb, .. },
            ) => {
                let mut out = Vec::new();
                for (w, m) in ea {
                    if let Some((_, m2)) = eb.iter().find(|(w2, _)| w2 == w) {
                        out.push((w.clone(), m * m2));
                    }
                }
                out.sort_by(|a, b| a.0.cmp(&b.0));
                Ok(WeightSet::Exact {
                    dim_v: *dim_v,
                    entries: out,
                })
            }
            _ => {
                let ea = self.float_entries();
                let eb = other.float_entries();
                let mut out = Vec::new();
                for (w, m) in &ea {
                    if let Some((_, m2)) = eb.iter().find(|(w2, _)| {
                        w2.iter()
                            .zip(w)
                            .all(|(a, b)| (a - b).abs() <= WEIGHT_MERGE_TOL)
                    }) {
                        out.push((w.clone(), m * m2));
                    }
                }
                out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                Ok(WeightSet::Float {
                    dim_v: self.dim_v(),
                    entries: out,
                })
            }
        }
    }
}

/// One joint eigenspace: its weight, multiplicity, and bases.
#[derive(Debug, Clone)]
pub struct WeightBlock {
    pub weight_f64: Vec<f64>,
    pub weight_exact: Option<Vec<Rat>>,
    pub multiplicity: usize,
    /// Orthonormal floating basis, one column per dimension.
    pub orthonormal_basis: CMatF,
    /// Exact basis columns when the exact path succeeded.
    pub exact_basis: Option<Mat<CRat>>,
}

/// Joint eigenspace decomposition of a commuting skew-Hermitian family.
#[derive(Debug, Clone)]
pub struct WeightDecomposition {
    pub dim_v: usize,
    pub rank: usize,
    pub blocks: Vec<WeightBlock>,
    /// Whether the exact path produced the decomposition.
    pub exact: bool,
    /// Largest entry deviation when rebuilding the generators from the
    /// weights and projectors; exactly zero on the exact path.
    pub reconstruction_error: f64,
}

impl WeightDecomposition {
    pub fn weight_set(&self) -> WeightSet {
        if self.exact {
            let mut entries: Vec<(Vec<Rat>, usize)> = self
                .blocks
                .iter()
                .map(|b| (b.weight_exact.clone().expect("exact block"), b.multiplicity))
                .collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            WeightSet::Exact {
                dim_v: self.dim_v,
                entries,
            }
        } else {
            let mut entries: Vec<(Vec<f64>, usize)> = self
                .blocks
                .iter()
                .map(|b| (b.weight_f64.clone(), b.multiplicity))
                .collect();
            entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            WeightSet::Float {
                dim_v: self.dim_v,
                entries,
            }
        }
    }
}

/// Splits the fiber into joint eigenspaces of the family. Exact generators
/// are decomposed exactly when all joint eigenvalues are rational; otherwise
/// the floating path recursively eigensolves each generator restricted to the
/// current joint eigenspaces, merging eigenvalues within the weight
/// tolerance. The generators are rebuilt from the result as a consistency
/// check and the largest deviation is reported.
pub fn weight_decomposition(rep: &AbelianRep) -> WeightDecomposition {
    if let Some(exact_gens) = rep.exact_generators() {
        if let Some(blocks) = exact_decomposition(exact_gens) {
            let blocks: Vec<WeightBlock> = blocks
                .into_iter()
                .map(|(w, basis)| {
                    let wf = w.iter().map(rat_to_f64).collect();
                    let ortho = orthonormalize_f64(&exact_to_f64(&basis));
                    WeightBlock {
                        weight_f64: wf,
                        weight_exact: Some(w),
                        multiplicity: basis.ncols(),
                        orthonormal_basis: ortho,
                        exact_basis: Some(basis),
                    }
                })
                .collect();
            debug_assert!(exact_reconstruction_matches(exact_gens, &blocks));
            return WeightDecomposition {
                dim_v: rep.dim_v(),
                rank: rep.rank(),
                blocks,
                exact: true,
                reconstruction_error: 0.0,
            };
        }
    }
    float_decomposition(rep)
}

fn orthonormalize_f64(basis: &CMatF) -> CMatF {
    // Modified Gram-Schmidt over the columns.
    let mut cols: Vec<DVector<Cf64>> = (0..basis.ncols())
        .map(|j| basis.column(j).into_owned())
        .collect();
    let mut kept: Vec<DVector<Cf64>> = Vec::new();
    for mut c in cols.drain(..) {
        for k in &kept {
            let proj = k.dotc(&c);
            c -= k * proj;
        }
        let norm = c.norm();
        if norm > 1e-12 {
            kept.push(c / Complex::new(norm, 0.0));
        }
    }
    let rows = basis.nrows();
    let mut out = CMatF::zeros(rows, kept.len());
    for (j, k) in kept.iter().enumerate() {
        out.set_column(j, k);
    }
    out
}

fn exact_reconstruction_matches(gens: &[Mat<CRat>], blocks: &[WeightBlock]) -> bool {
    let rank = gens[0].nrows();
    for (g, gen) in gens.iter().enumerate() {
        let mut rebuilt = Mat::<CRat>::zeros(rank, rank);
        for b in blocks {
            let basis = b.exact_basis.as_ref().expect("exact block");
            let gram = basis.conj_transpose().matmul(basis);
            let gram_inv = gram.inverse().expect("independent basis");
            let proj = basis.matmul(&gram_inv).matmul(&basis.conj_transpose());
            let t = b.weight_exact.as_ref().expect("exact block")[g].clone();
            rebuilt = rebuilt.add(&proj.scale(&cimag(t)));
        }
        if &rebuilt != gen {
            return false;
        }
    }
    true
}

/// Exact recursive splitting: restrict each generator to the current joint
/// eigenspaces, find its rational eigenvalues, and refine. Returns `None` if
/// any characteristic polynomial fails to split over the rationals.
fn exact_decomposition(gens: &[Mat<CRat>]) -> Option<Vec<(Vec<Rat>, Mat<CRat>)>> {
    let rank = gens[0].nrows();
    let mut leaves: Vec<(Vec<Rat>, Mat<CRat>)> = vec![(Vec::new(), Mat::identity(rank))];
    for gen in gens {
        let mut next = Vec::new();
        for (prefix, basis) in leaves {
            let m = basis.ncols();
            // Restriction R with basis * R = gen * basis.
            let gb = gen.matmul(&basis);
            let gram = basis.conj_transpose().matmul(&basis);
            let gram_inv = gram.inverse()?;
            let restr = gram_inv.matmul(&basis.conj_transpose()).matmul(&gb);
            debug_assert_eq!(basis.matmul(&restr), gb, "subspace not invariant");
            let eigs = rational_imaginary_eigenvalues(&restr)?;
            let mut dims = 0;
            for t in eigs {
                let shifted = restr.sub(&Mat::identity(m).scale(&cimag(t.clone())));
                let kern = shifted.kernel();
                if kern.is_empty() {
                    return None;
                }
                dims += kern.len();
                let kern_mat = Mat::from_rows(kern).transpose();
                let sub_basis = basis.matmul(&kern_mat);
                let mut p = prefix.clone();
                p.push(t);
                next.push((p, sub_basis));
            }
            if dims != m {
                // Not diagonalizable over the rationals.
                return None;
            }
        }
        leaves = next;
    }
    leaves.sort_by(|a, b| a.0.cmp(&b.0));
    Some(leaves)
}

/// Distinct rational values `t` with `i*t` an eigenvalue of the restriction,
/// provided the characteristic polynomial splits completely over the
/// rationals; `None` otherwise.
fn rational_imaginary_eigenvalues(m: &Mat<CRat>) -> Option<Vec<Rat>> {
    let n = m.nrows();
    let char_coeffs = characteristic_polynomial(m);
    // Substitute x = i t: coefficient of t^j picks up i^j; normalize by i^n
    // so the polynomial in t is monic with (necessarily real) coefficients.
    let i_unit = CRat::new(Rat::zero(), Rat::one());
    let mut pow = CRat::one();
    let mut powers = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        powers.push(pow.clone());
        pow = pow * i_unit.clone();
    }
    let inorm = powers[n].clone();
    let mut real_coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let c = char_coeffs[j].clone() * powers[j].clone() / inorm.clone();
        if !c.im.is_zero() {
            return None;
        }
        real_coeffs.push(c.re);
    }
    let mut roots = rational_roots(&real_coeffs)?;
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Coefficients of det(xI - M), constant term first, computed by the
/// trace-of-powers recurrence.
fn characteristic_polynomial(m: &Mat<CRat>) -> Vec<CRat> {
    let n = m.nrows();
    let mut coeffs = vec![CRat::zero(); n + 1];
    coeffs[n] = CRat::one();
    let mut aux = Mat::<CRat>::identity(n);
    for k in 1..=n {
        let am = m.matmul(&aux);
        let t = am.trace();
        let c = -(t / CRat::new(Rat::from_integer(BigInt::from(k as i64)), Rat::zero()));
        coeffs[n - k] = c.clone();
        aux = am.add(&Mat::identity(n).scale(&c));
    }
    coeffs
}

/// All rational roots with multiplicity of a rational polynomial given by
/// coefficients (constant first); `None` unless the polynomial splits
/// completely into rational linear factors.
fn rational_roots(coeffs: &[Rat]) -> Option<Vec<Rat>> {
    let mut c: Vec<Rat> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        // Zero or constant polynomial: no roots to find (degree 0 splits).
        return if c.len() <= 1 { Some(Vec::new()) } else { None };
    }
    let mut roots = Vec::new();
    loop {
        let degree = c.len() - 1;
        if degree == 0 {
            break;
        }
        // Strip roots at zero.
        if c[0].is_zero() {
            roots.push(Rat::zero());
            c.remove(0);
            continue;
        }
        // Clear denominators to an integer polynomial.
        let mut denom = BigInt::one();
        for x in &c {
            denom = denom.lcm(x.denom());
        }
        let ints: Vec<BigInt> = c
            .iter()
            .map(|x| (x * Rat::from_integer(denom.clone())).to_integer())
            .collect();
        let lead = ints.last().unwrap().clone();
        let tail = ints[0].clone();
        let ps = small_divisors(&tail)?;
        let qs = small_divisors(&lead)?;
        let mut found = None;
        'search: for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let cand = Rat::new(p * BigInt::from(sign), q.clone());
                    if eval_poly(&c, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let root = found?;
        roots.push(root.clone());
        c = deflate(&c, &root);
    }
    Some(roots)
}

fn eval_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Synthetic division by (x - root); assumes the root is exact.
fn deflate(coeffs: &[Rat], root: &Rat) -> Vec<Rat> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rat::zero(); n];
    let mut carry = Rat::zero();
    for j in (0..n).rev() {
        carry = coeffs[j + 1].clone() + carry * root.clone();
        out[j] = carry.clone();
    }
    debug_assert!((coeffs[0].clone() + carry * root.clone()).is_zero());
    out
}

/// Positive divisors, or `None` if the value is too large to factor quickly.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let v = n.to_u64()?;
    if v == 0 {
        return None;
    }
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= v) {
        if v % d == 0 {
            divs.push(BigInt::from(d));
            if d != v / d {
                divs.push(BigInt::from(v / d));
            }
        }
        if divs.len() > 4096 {
            return None;
        }
        d += 1;
    }
    Some(divs)
}

/// Floating path: recursively split joint eigenspaces one generator at a
/// time with Hermitian eigensolves, clustering eigenvalues within the merge
/// tolerance.
fn float_decomposition(rep: &AbelianRep) -> WeightDecomposition {
    let rank = rep.rank();
    let mut leaves: Vec<(Vec<f64>, CMatF)> = vec![(Vec::new(), CMatF::identity(rank, rank))];
    for gen in rep.generators() {
        // H = -i * gen is Hermitian with the weight values as eigenvalues.
        let h = gen.map(|z| z * Complex::new(0.0, -1.0));
        let mut next = Vec::new();
        for (prefix, basis) in &leaves {
            let restricted = basis.adjoint() * &h * basis;
            let sym = (&restricted + restricted.adjoint()) * Complex::new(0.5, 0.0);
            let eig = nalgebra::linalg::SymmetricEigen::new(sym);
            let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
            let mut start = 0;
            while start < order.len() {
                let mut end = start + 1;
                while end < order.len()
                    && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]]
                        <= WEIGHT_MERGE_TOL
                {
                    end += 1;
                }
                let cluster: Vec<usize> = order[start..end].to_vec();
                let mean: f64 = cluster.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>()
                    / cluster.len() as f64;
                let mut cols = CMatF::zeros(restricted.nrows(), cluster.len());
                for (j, &i) in cluster.iter().enumerate() {
                    cols.set_column(j, &eig.eigenvectors.column(i));
                }
                let mut p = prefix.clone();
                p.push(mean);
                next.push((p, basis * cols));
                start = end;
            }
        }
        leaves = next;
    }
    leaves.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let blocks: Vec<WeightBlock> = leaves
        .into_iter()
        .map(|(w, basis)| WeightBlock {
            multiplicity: basis.ncols(),
            orthonormal_basis: orthonormalize_f64(&basis),
            weight_f64: w,
            weight_exact: None,
            exact_basis: None,
        })
        .collect();
    // Rebuild each generator from weights and projectors.
    let mut err = 0.0f64;
    for (g, gen) in rep.generators().iter().enumerate() {
        let mut rebuilt = CMatF::zeros(rank, rank);
        for b in &blocks {
            let proj = &b.orthonormal_basis * b.orthonormal_basis.adjoint();
            rebuilt += proj * Complex::new(0.0, b.weight_f64[g]);
        }
        err = err.max(mat_inf_norm(&(rebuilt - gen)));
    }
    WeightDecomposition {
        dim_v: rep.dim_v(),
        rank,
        blocks,
        exact: false,
        reconstruction_error: err,
    }
}

/// Faithfulness verdict with an annihilating coefficient vector on failure.
#[derive(Debug, Clone)]
pub struct Faithfulness {
    pub faithful: bool,
    /// Exact certificate, when exact generators are available.
    pub certificate_exact: Option<Vec<Rat>>,
    /// Floating certificate otherwise.
    pub certificate: Option<Vec<f64>>,
}

/// A representation is faithful exactly when no nonzero coefficient vector
/// acts as zero, equivalently when the weights span the dual space. Exact
/// generators get an exact kernel computation; floating ones use a singular
/// value threshold on the weight matrix.
pub fn is_faithful(rep: &AbelianRep) -> Faithfulness {
    if let Some(gens) = rep.exact_generators() {
        // Kernel of v -> sum_g v_g A_g over the reals: stack real and
        // imaginary parts of all entries.
        let r = rep.rank();
        let rows = 2 * r * r;
        let m = Mat::<Rat>::from_fn(rows, rep.dim_v(), |row, g| {
            let entry = gens[g].get((row / 2) / r, (row / 2) % r);
            if row % 2 == 0 {
                entry.re.clone()
            } else {
                entry.im.clone()
            }
        });
        match m.kernel().into_iter().next() {
            Some(v) => Faithfulness {
                faithful: false,
                certificate: Some(v.iter().map(rat_to_f64).collect()),
                certificate_exact: Some(v),
            },
            None => Faithfulness {
                faithful: true,
                certificate: None,
                certificate_exact: None,
            },
        }
    } else {
        let decomp = weight_decomposition(rep);
        let entries = decomp.weight_set().float_entries();
        // Pad with zero rows to a square matrix so the full right singular
        // basis is available and kernel vectors can be read off.
        let ell = rep.dim_v();
        let rows = entries.len().max(ell);
        let mut m = DMatrix::<f64>::zeros(rows, ell);
        for (i, (w, _)) in entries.iter().enumerate() {
            for (j, x) in w.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        let svd = m.svd(false, true);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let tol = 1e-9 * smax.max(1.0);
        let v_t = svd.v_t.expect("requested");
        let mut certificate = None;
        for i in 0..svd.singular_values.len() {
            if svd.singular_values[i] <= tol {
                certificate = Some(v_t.row(i).iter().cloned().collect::<Vec<f64>>());
                break;
            }
        }
        Faithfulness {
            faithful: certificate.is_none(),
            certificate,
            certificate_exact: None,
        }
    }
}

/// Rank verdict relative to the coefficient dimension.
#[derive(Debug, Clone)]
pub enum RankVerdict {
    /// Fiber rank equals the coefficient dimension; the weights then form a
    /// basis of the dual space, returned here.
    Minimal { weight_basis: WeightSet },
    AboveMinimal { rank: usize, dim_v: usize },
}

/// Compares the fiber rank with the coefficient dimension. Requires
/// faithfulness; at the minimum the weights are certified to form a basis.
pub fn rank_check(rep: &AbelianRep) -> Result<RankVerdict, RepError> {
    if !is_faithful(rep).faithful {
        return Err(RepError::NotFaithful);
    }
    if rep.rank() > rep.dim_v() {
        return Ok(RankVerdict::AboveMinimal {
            rank: rep.rank(),
            dim_v: rep.dim_v(),
        });
    }
    let decomp = weight_decomposition(rep);
    let ws = decomp.weight_set();
    assert_eq!(
        ws.distinct_count(),
        rep.dim_v(),
        "faithful minimal family must have exactly dim V distinct weights"
    );
    assert!(
        ws.float_entries().iter().all(|(_, m)| *m == 1),
        "minimal weights have multiplicity one"
    );
    Ok(RankVerdict::Minimal { weight_basis: ws })
}

/// Balanced tensor product over the coefficient action.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    /// Shared weights with product multiplicities.
    pub weights: WeightSet,
    /// The product representation; `None` when no weight is shared (the zero
    /// representation).
    pub rep: Option<AbelianRep>,
    pub prequantizable: bool,
}

/// Tensors two representations over the coefficient action: only shared
/// weights survive, with multiplicities multiplying blockwise. Disjoint
/// weight sets produce the zero representation, reported as not
/// prequantizable.
pub fn tensor_rep(a: &AbelianRep, b: &AbelianRep) -> Result<TensorProduct, RepError> {
    if a.dim_v() != b.dim_v() {
        return Err(RepError::DimensionMismatch(format!(
            "coefficient dimensions {} and {}",
            a.dim_v(),
            b.dim_v()
        )));
    }
    let wa = weight_decomposition(a).weight_set();
    let wb = weight_decomposition(b).weight_set();
    let shared = wa.intersect_product(&wb)?;
    let rep = match &shared {
        WeightSet::Exact { entries, .. } if !entries.is_empty() => {
            Some(AbelianRep::diagonal_exact(a.dim_v(), entries)?)
        }
        WeightSet::Float { entries, .. } if !entries.is_empty() => {
            let rank: usize = entries.iter().map(|(_, m)| m).sum();
            let mut gens = Vec::with_capacity(a.dim_v());
            for g in 0..a.dim_v() {
                let mut m = CMatF::zeros(rank, rank);
                let mut idx = 0;
                for (w, mult) in entries {
                    for _ in 0..*mult {
                        m[(idx, idx)] = Complex::new(0.0, w[g]);
                        idx += 1;
                    }
                }
                gens.push(m);
            }
            Some(AbelianRep::from_f64(gens)?)
        }
        _ => None,
    };
    let prequantizable = rep.is_some();
    Ok(TensorProduct {
        weights: shared,
        rep,
        prequantizable,
    })
}

/// Scalar curvature data per weight: the stored matrix `M` is the real
/// coefficient of the curvature, which equals `-i * M` on the weight block.
#[derive(Debug, Clone)]
pub enum CurvatureComponents {
    Exact(Vec<(Vec<Rat>, Mat<Rat>)>),
    Float(Vec<(Vec<f64>, DMatrix<f64>)>),
}

/// For each weight, the scalar two-form obtained by pairing the weight with
/// the form: the curvature of the corresponding block is `-i` times the
/// returned matrix. Skewness is verified. Requires faithfulness.
pub fn curvature_components(
    rep: &AbelianRep,
    space: &VSymplecticSpace,
) -> Result<CurvatureComponents, RepError> {
    if rep.dim_v() != space.dim_v() {
        return Err(RepError::DimensionMismatch(format!(
            "representation over dimension {}, space over {}",
            rep.dim_v(),
            space.dim_v()
        )));
    }
    if !is_faithful(rep).faithful {
        return Err(RepError::NotFaithful);
    }
    let decomp = weight_decomposition(rep);
    let ws = decomp.weight_set();
    match ws {
        WeightSet::Exact { entries, .. } => {
            let mut out = Vec::new();
            for (w, _) in entries {
                let n = space.dim_u();
                let mut m = Mat::<Rat>::zeros(n, n);
                for (g, coef) in w.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    m = m.add(&space.component(g).scale(coef));
                }
                assert_eq!(m.transpose(), m.neg(), "curvature component not skew");
                out.push((w, m));
            }
            Ok(CurvatureComponents::Exact(out))
        }
        WeightSet::Float { entries, .. } => {
            let mut out = Vec::new();
            for (w, _) in entries {
                let n = space.dim_u();
                let mut m = DMatrix::<f64>::zeros(n, n);
                for (g, coef) in w.iter().enumerate() {
                    for i in 0..n {
                        for j in 0..n {
                            m[(i, j)] += coef * rat_to_f64(space.component(g).get(i, j));
                        }
                    }
                }
                out.push((w, m));
            }
            Ok(CurvatureComponents::Float(out))
        }
    }
}
