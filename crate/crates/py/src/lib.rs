//! Python bindings for the main types and operations: exact checks on
//! vector-valued symplectic spaces, weight decompositions, lattice
//! classification, dimension counting, and the reduction experiment.
//!
//! Exact rationals cross the boundary as `"p/q"` strings in both directions.

use polyquant_core::lattice::{
    classify_minimal, is_prequantum_lattice, is_quantizable, principal_lattice, span_lattice,
    weights_to_lattice, PeriodData, PrincipalLattice, RationalLattice, TwoPiWeightSet,
};
use polyquant_core::linalg::Mat;
use polyquant_core::models::{
    adapted_volume, growth_check, monodromy_weight_action, rr_index, ManifoldPresentation,
    MonodromyPresentation,
};
use polyquant_core::rational::{format_rat, parse_rat, rat_to_f64, Rat};
use polyquant_core::reps::{
    is_faithful, prequantum_commutator_check, tensor_rep, weight_decomposition, AbelianRep,
    PolyObservable,
};
use polyquant_core::toric::{
    control_config, counterexample_config, holomorphic_dim, invariant_dim, qr_experiment,
    reduced_point_model, QRConfig, QRExpectation, ReducedSpec, ToricBundleModel, ToricWeight,
};
use polyquant_core::vsympl::{
    self, compatible_complex_check, definiteness_report, eigenspace_split, is_lagrangian,
    is_lagrangian_complex, poly_orthogonal, scaling_determinant, CanonicalModel,
    ComplexStructureJ, LinearObservable, Subspace, VSymplecticSpace as CoreSpace,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_vec(v: &[String]) -> PyResult<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s).map_err(value_err)).collect()
}

fn parse_matrix(rows: &[Vec<String>]) -> PyResult<Vec<Vec<Rat>>> {
    rows.iter().map(|r| parse_vec(r)).collect()
}

fn format_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn mat_from_rows(rows: &[Vec<String>]) -> PyResult<Mat<Rat>> {
    Ok(Mat::from_rows(parse_matrix(rows)?))
}

/// A vector-valued symplectic vector space with exact rational component forms.
#[pyclass(name = "VSymplecticSpace")]
struct PySpace {
    space: CoreSpace,
}

#[pymethods]
impl PySpace {
    /// Canonical model on `dim_q * (1 + dim_v)` coordinates.
    #[staticmethod]
    fn canonical(dim_q: usize, dim_v: usize) -> PyResult<Self> {
        if dim_q == 0 || dim_v == 0 {
            return Err(value_err("dimensions must be positive"));
        }
        Ok(PySpace {
            space: CoreSpace::canonical(dim_q, dim_v),
        })
    }

    /// Lie-algebra model from structure constants `c[i][j][k]`.
    #[staticmethod]
    fn lie_model(structure_constants: Vec<Vec<Vec<String>>>) -> PyResult<Self> {
        let c: Vec<Vec<Vec<Rat>>> = structure_constants
            .iter()
            .map(|plane| parse_matrix(plane))
            .collect::<PyResult<_>>()?;
        Ok(PySpace {
            space: CoreSpace::lie_model(&c).map_err(value_err)?,
        })
    }

    /// Space from explicit skew component matrices.
    #[staticmethod]
    fn from_components(components: Vec<Vec<Vec<String>>>) -> PyResult<Self> {
        let mats: Vec<Mat<Rat>> = components
            .iter()
            .map(|m| mat_from_rows(m))
            .collect::<PyResult<_>>()?;
        Ok(PySpace {
            space: CoreSpace::new(mats).map_err(value_err)?,
        })
    }

    fn dim_u(&self) -> usize {
        self.space.dim_u()
    }

    fn dim_v(&self) -> usize {
        self.space.dim_v()
    }

    fn is_nondegenerate(&self) -> bool {
        self.space.is_nondegenerate()
    }

    fn degeneracy_certificate(&self) -> Option<Vec<String>> {
        self.space.degeneracy_certificate().map(format_vec)
    }

    /// Pairing value `omega(x, y)` as a coefficient-space vector.
    fn omega(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let xv = parse_vec(&x)?;
        let yv = parse_vec(&y)?;
        if xv.len() != self.space.dim_u() || yv.len() != self.space.dim_u() {
            return Err(value_err("vector length mismatch"));
        }
        Ok(format_vec(&self.space.eval(&xv, &yv)))
    }

    /// Basis of the poly-orthogonal of the span of the given rows.
    fn poly_orthogonal(&self, basis: Vec<Vec<String>>) -> PyResult<Vec<Vec<String>>> {
        let sub = Subspace::new(self.space.dim_u(), parse_matrix(&basis)?).map_err(value_err)?;
        let orth = poly_orthogonal(&sub, &self.space);
        Ok(orth.basis_vectors().iter().map(|v| format_vec(v)).collect())
    }

    fn is_lagrangian(&self, basis: Vec<Vec<String>>) -> PyResult<bool> {
        let sub = Subspace::new(self.space.dim_u(), parse_matrix(&basis)?).map_err(value_err)?;
        Ok(is_lagrangian(&sub, &self.space))
    }

    /// Hamiltonian vector field of an affine observable, or ValueError when
    /// the differential is unreachable.
    fn hamiltonian_field(
        &self,
        value: Vec<String>,
        differential: Vec<Vec<String>>,
    ) -> PyResult<Vec<String>> {
        let f = LinearObservable::new(parse_vec(&value)?, mat_from_rows(&differential)?);
        vsympl::hamiltonian_solve(&f, &self.space)
            .map(|x| format_vec(&x))
            .map_err(value_err)
    }

    /// Bracket of two affine Hamiltonian observables.
    #[allow(clippy::too_many_arguments)]
    fn bracket(
        &self,
        f_value: Vec<String>,
        f_differential: Vec<Vec<String>>,
        h_value: Vec<String>,
        h_differential: Vec<Vec<String>>,
    ) -> PyResult<Vec<String>> {
        let f = LinearObservable::new(parse_vec(&f_value)?, mat_from_rows(&f_differential)?);
        let h = LinearObservable::new(parse_vec(&h_value)?, mat_from_rows(&h_differential)?);
        vsympl::bracket(&f, &h, &self.space)
            .map(|x| format_vec(&x))
            .map_err(value_err)
    }

    fn compatible_complex(&self, j: Vec<Vec<String>>) -> PyResult<bool> {
        let jm = ComplexStructureJ::new(mat_from_rows(&j)?);
        match jm {
            Ok(jm) => Ok(compatible_complex_check(&jm, &self.space)),
            Err(_) => Ok(false),
        }
    }

    /// Splits the complexification along a compatible complex structure;
    /// returns eigenspace dimensions and their Lagrangian verdicts.
    fn eigenspace_split<'py>(
        &self,
        py: Python<'py>,
        j: Vec<Vec<String>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let jm = ComplexStructureJ::new(mat_from_rows(&j)?).map_err(value_err)?;
        let (up, um) = eigenspace_split(&jm, &self.space).map_err(value_err)?;
        let out = PyDict::new(py);
        out.set_item("dim_plus", up.dim())?;
        out.set_item("dim_minus", um.dim())?;
        out.set_item("plus_lagrangian", is_lagrangian_complex(&up, &self.space))?;
        out.set_item("minus_lagrangian", is_lagrangian_complex(&um, &self.space))?;
        Ok(out)
    }

    /// Per-weight definiteness verdicts with the eigenspace cross-check.
    fn definiteness<'py>(
        &self,
        py: Python<'py>,
        j: Vec<Vec<String>>,
        weights: Vec<Vec<String>>,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let jm = ComplexStructureJ::new(mat_from_rows(&j)?).map_err(value_err)?;
        let report =
            definiteness_report(&jm, &self.space, &parse_matrix(&weights)?).map_err(value_err)?;
        report
            .per_weight
            .iter()
            .map(|w| {
                let d = PyDict::new(py);
                d.set_item("weight", format_vec(&w.weight))?;
                d.set_item("symmetric_form", format!("{:?}", w.symmetric_form))?;
                d.set_item("eigenspace_form", format!("{:?}", w.eigenspace_form))?;
                d.set_item("agrees", w.agrees)?;
                Ok(d)
            })
            .collect()
    }
}

/// Determinant of the canonical-model rescaling, as an exact rational string.
#[pyfunction]
fn rescaling_determinant(alpha: String, dim_q: usize, dim_v: usize) -> PyResult<String> {
    let a = parse_rat(&alpha).map_err(value_err)?;
    if a <= Rat::from_integer(1.into()) {
        return Err(value_err("rescaling factor must exceed one"));
    }
    Ok(format_rat(&scaling_determinant(&a, dim_q, dim_v)))
}

/// A commuting family of skew-Hermitian generators.
#[pyclass(name = "AbelianRep")]
struct PyRep {
    rep: AbelianRep,
}

#[pymethods]
impl PyRep {
    /// Diagonal module action with the listed weight rows and multiplicities.
    #[staticmethod]
    #[pyo3(signature = (weights, multiplicities=None))]
    fn diagonal(
        weights: Vec<Vec<String>>,
        multiplicities: Option<Vec<usize>>,
    ) -> PyResult<Self> {
        let parsed = parse_matrix(&weights)?;
        let dim_v = parsed.first().map(|w| w.len()).unwrap_or(0);
        let mults = multiplicities.unwrap_or_else(|| vec![1; parsed.len()]);
        if mults.len() != parsed.len() {
            return Err(value_err("one multiplicity per weight"));
        }
        let entries: Vec<(Vec<Rat>, usize)> = parsed.into_iter().zip(mults).collect();
        Ok(PyRep {
            rep: AbelianRep::diagonal_exact(dim_v, &entries).map_err(value_err)?,
        })
    }

    fn rank(&self) -> usize {
        self.rep.rank()
    }

    fn dim_v(&self) -> usize {
        self.rep.dim_v()
    }

    /// Weight multiset as `(vector, multiplicity)` pairs; exact entries when
    /// available, floating otherwise.
    fn weights(&self) -> Vec<(Vec<f64>, usize)> {
        weight_decomposition(&self.rep).weight_set().float_entries()
    }

    fn exact_weights(&self) -> Option<Vec<(Vec<String>, usize)>> {
        let d = weight_decomposition(&self.rep);
        d.weight_set().exact_entries().map(|entries| {
            entries
                .iter()
                .map(|(w, m)| (format_vec(w), *m))
                .collect()
        })
    }

    fn is_faithful(&self) -> (bool, Option<Vec<f64>>) {
        let f = is_faithful(&self.rep);
        let cert = f
            .certificate_exact
            .map(|c| c.iter().map(rat_to_f64).collect())
            .or(f.certificate);
        (f.faithful, cert)
    }

    /// "minimal" or "above_minimal"; ValueError when not faithful.
    fn rank_verdict(&self) -> PyResult<String> {
        match polyquant_core::reps::rank_check(&self.rep).map_err(value_err)? {
            polyquant_core::reps::RankVerdict::Minimal { .. } => Ok("minimal".into()),
            polyquant_core::reps::RankVerdict::AboveMinimal { .. } => Ok("above_minimal".into()),
        }
    }

    /// Tensor over the coefficient action: shared weights with product
    /// multiplicities, or None when the product is the zero module.
    fn tensor(&self, other: &PyRep) -> PyResult<Option<PyRep>> {
        let t = tensor_rep(&self.rep, &other.rep).map_err(value_err)?;
        Ok(t.rep.map(|rep| PyRep { rep }))
    }
}

/// Defect of the prequantum commutator identity for two affine observables
/// on the canonical model, as an exact rational string ("0" on success).
#[pyfunction]
#[pyo3(signature = (dim_q, dim_v, f_value, f_differential, h_value, h_differential, degree_cap=3))]
fn commutator_defect(
    dim_q: usize,
    dim_v: usize,
    f_value: Vec<String>,
    f_differential: Vec<Vec<String>>,
    h_value: Vec<String>,
    h_differential: Vec<Vec<String>>,
    degree_cap: usize,
) -> PyResult<String> {
    let model = CanonicalModel::new(dim_q, dim_v);
    let n = model.coord_count();
    let weights: Vec<(Vec<Rat>, usize)> = (0..dim_v)
        .map(|i| {
            (
                (0..dim_v)
                    .map(|j| {
                        if i == j {
                            Rat::from_integer(1.into())
                        } else {
                            Rat::from_integer(0.into())
                        }
                    })
                    .collect(),
                1,
            )
        })
        .collect();
    let rep = AbelianRep::diagonal_exact(dim_v, &weights).map_err(value_err)?;
    let f = PolyObservable::affine(n, &parse_vec(&f_value)?, &mat_from_rows(&f_differential)?);
    let h = PolyObservable::affine(n, &parse_vec(&h_value)?, &mat_from_rows(&h_differential)?);
    let report = prequantum_commutator_check(&f, &h, &rep, &model, degree_cap).map_err(value_err)?;
    Ok(format_rat(&report.defect_norm))
}

// ---------------------------------------------------------------------------
// lattice functions

#[pyfunction]
fn lattice_span<'py>(
    py: Python<'py>,
    dim_v: usize,
    periods: Vec<Vec<String>>,
) -> PyResult<Bound<'py, PyDict>> {
    let pd = PeriodData::new(dim_v, parse_matrix(&periods)?).map_err(value_err)?;
    let lattice = span_lattice(&pd);
    let out = PyDict::new(py);
    out.set_item("basis", lattice.basis_strings())?;
    out.set_item("rank", lattice.rank())?;
    out.set_item("full", lattice.is_full())?;
    Ok(out)
}

#[pyfunction]
fn lattice_contains_periods(
    dim_v: usize,
    basis: Vec<Vec<String>>,
    periods: Vec<Vec<String>>,
) -> PyResult<bool> {
    let lattice =
        RationalLattice::from_generators(dim_v, &parse_matrix(&basis)?).map_err(value_err)?;
    let pd = PeriodData::new(dim_v, parse_matrix(&periods)?).map_err(value_err)?;
    is_prequantum_lattice(&lattice, &pd).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (dim_v, periods, seed=0x706f6c79))]
fn lattice_principal<'py>(
    py: Python<'py>,
    dim_v: usize,
    periods: Vec<Vec<String>>,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let pd = PeriodData::new(dim_v, parse_matrix(&periods)?).map_err(value_err)?;
    let out = PyDict::new(py);
    match principal_lattice(&pd, seed) {
        PrincipalLattice::Principal { lattice, .. } => {
            out.set_item("principal", true)?;
            out.set_item("basis", lattice.basis_strings())?;
        }
        PrincipalLattice::NotFullRank { span, witness } => {
            out.set_item("principal", false)?;
            out.set_item("basis", span.basis_strings())?;
            out.set_item("witness_prequantum_basis", witness.basis_strings())?;
        }
    }
    Ok(out)
}

#[pyfunction]
fn lattice_quantizable<'py>(
    py: Python<'py>,
    dim_v: usize,
    periods: Vec<Vec<String>>,
) -> PyResult<Bound<'py, PyDict>> {
    let pd = PeriodData::new(dim_v, parse_matrix(&periods)?).map_err(value_err)?;
    let q = is_quantizable(&pd);
    let out = PyDict::new(py);
    out.set_item("quantizable", q.quantizable)?;
    out.set_item("minimal_rank_exists", q.minimal_rank_exists)?;
    out.set_item("span_is_principal", q.span_is_principal)?;
    out.set_item("span_rank", q.span_rank)?;
    Ok(out)
}

/// Weight rows (in symbolic two-pi-i units) dual to a full lattice basis.
#[pyfunction]
fn basis_to_weights(basis: Vec<Vec<String>>) -> PyResult<Vec<Vec<String>>> {
    let w = classify_minimal(&parse_matrix(&basis)?).map_err(value_err)?;
    Ok(w.weight_strings())
}

/// Canonical basis of the lattice dual to a weight basis.
#[pyfunction]
fn weights_to_basis(weights: Vec<Vec<String>>) -> PyResult<Vec<Vec<String>>> {
    let parsed = parse_matrix(&weights)?;
    let dim_v = parsed.first().map(|w| w.len()).unwrap_or(0);
    let ws = TwoPiWeightSet::new(dim_v, parsed).map_err(value_err)?;
    let lattice = weights_to_lattice(&ws).map_err(value_err)?;
    Ok(lattice.basis_strings())
}

// ---------------------------------------------------------------------------
// presentations

/// A product-of-lines presentation for dimension counting.
#[pyclass(name = "Presentation")]
struct PyPresentation {
    model: ManifoldPresentation,
}

#[pymethods]
impl PyPresentation {
    /// Product of projective lines: one degree row per weight.
    #[staticmethod]
    fn product_of_lines(degrees: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyPresentation {
            model: ManifoldPresentation::product_of_lines(degrees).map_err(value_err)?,
        })
    }

    fn adapted_volume(&self) -> String {
        format_rat(&adapted_volume(&self.model))
    }

    fn rr_index(&self, k: i64) -> i64 {
        rr_index(&self.model, k)
    }

    /// Growth table over an inclusive level range; ValueError when degrees
    /// are not strictly positive.
    fn growth<'py>(&self, py: Python<'py>, k_lo: i64, k_hi: i64) -> PyResult<Bound<'py, PyDict>> {
        let ks: Vec<i64> = (k_lo..=k_hi).collect();
        let g = growth_check(&self.model, &ks).map_err(value_err)?;
        let out = PyDict::new(py);
        out.set_item("leading_coefficient", format_rat(&g.leading_coefficient))?;
        out.set_item("volume", format_rat(&g.volume))?;
        out.set_item("matches_volume", g.matches_volume)?;
        out.set_item(
            "table",
            g.table
                .iter()
                .map(|(k, v, r)| (*k, *v, format_rat(r)))
                .collect::<Vec<_>>(),
        )?;
        Ok(out)
    }

    fn self_tensor_power(&self, k: i64) -> PyResult<Self> {
        Ok(PyPresentation {
            model: self.model.self_tensor_power(k).map_err(value_err)?,
        })
    }
}

/// Weight permutations induced by flat transitions; ValueError when the
/// multiset is not preserved.
#[pyfunction]
fn monodromy_permutations(
    weights: Vec<Vec<String>>,
    generators: Vec<Vec<Vec<String>>>,
) -> PyResult<Vec<Vec<usize>>> {
    let parsed = parse_matrix(&weights)?;
    let dim_v = parsed.first().map(|w| w.len()).unwrap_or(0);
    let ws = TwoPiWeightSet::new(dim_v, parsed).map_err(value_err)?;
    let gens: Vec<Mat<Rat>> = generators
        .iter()
        .map(|g| mat_from_rows(g))
        .collect::<PyResult<_>>()?;
    let pres = MonodromyPresentation::new(gens, ws).map_err(value_err)?;
    let perms = monodromy_weight_action(&pres).map_err(value_err)?;
    Ok(perms.into_iter().map(|p| p.0).collect())
}

// ---------------------------------------------------------------------------
// toric counting

/// Torus-action data on a product of projective lines.
#[pyclass(name = "ToricModel")]
struct PyToric {
    model: ToricBundleModel,
}

#[pymethods]
impl PyToric {
    #[new]
    fn new(
        factors: usize,
        degrees: Vec<Vec<i64>>,
        shifts: Vec<String>,
        action: Vec<i64>,
    ) -> PyResult<Self> {
        if degrees.len() != shifts.len() {
            return Err(value_err("one shift per weight"));
        }
        let weights: Vec<ToricWeight> = degrees
            .into_iter()
            .zip(shifts)
            .map(|(d, s)| Ok(ToricWeight::new(d, parse_rat(&s).map_err(value_err)?)))
            .collect::<PyResult<_>>()?;
        Ok(PyToric {
            model: ToricBundleModel::new(factors, weights, action).map_err(value_err)?,
        })
    }

    fn holomorphic_dim(&self, k: i64) -> u64 {
        holomorphic_dim(&self.model, k)
    }

    fn invariant_dim(&self, k: i64) -> u64 {
        invariant_dim(&self.model, k)
    }

    /// Runs the reduction comparison against the derived point model.
    fn qr_against_point_model<'py>(
        &self,
        py: Python<'py>,
        k_lo: i64,
        k_hi: i64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let cfg = QRConfig {
            model: self.model.clone(),
            reduced: ReducedSpec::DerivePointModel,
            expectation: QRExpectation::None,
        };
        qr_report_dict(py, &cfg, k_lo, k_hi)
    }

    /// Runs the reduction comparison against a declared line model.
    fn qr_against_line<'py>(
        &self,
        py: Python<'py>,
        degree: i64,
        k_lo: i64,
        k_hi: i64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let reduced =
            ManifoldPresentation::product_of_lines(vec![vec![degree]]).map_err(value_err)?;
        let cfg = QRConfig {
            model: self.model.clone(),
            reduced: ReducedSpec::Declared(reduced),
            expectation: QRExpectation::None,
        };
        qr_report_dict(py, &cfg, k_lo, k_hi)
    }

    /// Intersection points of the moment slices for two-factor models.
    fn reduced_points(&self) -> PyResult<Vec<(usize, usize, Vec<String>)>> {
        let red = reduced_point_model(&self.model).map_err(value_err)?;
        Ok(red
            .points
            .into_iter()
            .map(|(i, j, p)| (i, j, format_vec(&p)))
            .collect())
    }
}

fn qr_report_dict<'py>(
    py: Python<'py>,
    cfg: &QRConfig,
    k_lo: i64,
    k_hi: i64,
) -> PyResult<Bound<'py, PyDict>> {
    let ks: Vec<i64> = (k_lo..=k_hi).collect();
    let report = qr_experiment(cfg, &ks).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item(
        "rows",
        report
            .rows
            .iter()
            .map(|r| (r.k, r.dim_invariants, r.dim_reduced, r.equal))
            .collect::<Vec<_>>(),
    )?;
    out.set_item("all_equal", report.all_equal)?;
    out.set_item(
        "strict_excess_from_level_two",
        report.strict_excess_from_level_two,
    )?;
    out.set_item(
        "invariants_strictly_increasing",
        report.invariants_strictly_increasing,
    )?;
    Ok(out)
}

/// The shipped two-weight configuration with diverging invariant counts.
#[pyfunction]
fn counterexample_model() -> PyToric {
    PyToric {
        model: counterexample_config().model,
    }
}

/// The shipped single-weight control configuration.
#[pyfunction]
fn control_model() -> PyToric {
    PyToric {
        model: control_config().model,
    }
}

#[pymodule]
fn polyquant_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyRep>()?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyToric>()?;
    m.add_function(wrap_pyfunction!(rescaling_determinant, m)?)?;
    m.add_function(wrap_pyfunction!(commutator_defect, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_span, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_contains_periods, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_principal, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_quantizable, m)?)?;
    m.add_function(wrap_pyfunction!(basis_to_weights, m)?)?;
    m.add_function(wrap_pyfunction!(weights_to_basis, m)?)?;
    m.add_function(wrap_pyfunction!(monodromy_permutations, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_model, m)?)?;
    m.add_function(wrap_pyfunction!(control_model, m)?)?;
    Ok(())
}
