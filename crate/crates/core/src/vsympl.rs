//! Linear algebra for vector-valued symplectic forms.
//!
//! A `V`-symplectic vector space is a real vector space `U` together with a
//! skew form per coordinate of the coefficient space `V`. Nondegeneracy is
//! collective: the joint kernel of all components must vanish. Everything
//! here runs over exact rationals, so degeneracy certificates, Hamiltonian
//! solves, and Lagrangian checks are exact.

use crate::linalg::{hermitian_inertia, same_row_space, Mat, Scalar};
use crate::rational::{creal, CRat, Rat};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum VsymplError {
    #[error("component {component} is not skew-symmetric at entry ({row},{col})")]
    NotSkew {
        component: usize,
        row: usize,
        col: usize,
    },
    #[error("structure constants violate the Jacobi identity at indices ({i},{j},{k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("no Hamiltonian vector field: component {component} of the differential is unreachable")]
    NotHamiltonian { component: usize },
    #[error("complex structure is not compatible with the form")]
    NotCompatible,
    #[error("pairing form for weight {weight} is not symmetric; the complex structure is not compatible")]
    NotSymmetric { weight: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("J*J is not minus the identity")]
    NotAComplexStructure,
}

/// A finite-dimensional real vector space with one exact skew form per
/// coordinate of the coefficient space. Degenerate spaces are first-class;
/// the joint-kernel certificate is computed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct VSymplecticSpace {
    dim_u: usize,
    dim_v: usize,
    components: Vec<Mat<Rat>>,
    kernel_certificate: Option<Vec<Rat>>,
}

impl VSymplecticSpace {
    /// Builds a space from its component forms, verifying exact skewness and
    /// computing the joint-kernel certificate.
    pub fn new(components: Vec<Mat<Rat>>) -> Result<Self, VsymplError> {
        assert!(!components.is_empty(), "at least one component form");
        let dim_u = components[0].nrows();
        for (l, g) in components.iter().enumerate() {
            if g.nrows() != dim_u || g.ncols() != dim_u {
                return Err(VsymplError::DimensionMismatch(format!(
                    "component {l} is {}x{}, expected {dim_u}x{dim_u}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            for i in 0..dim_u {
                for j in 0..dim_u {
                    if g.get(i, j).clone() + g.get(j, i).clone() != Rat::zero() {
                        return Err(VsymplError::NotSkew {
                            component: l,
                            row: i,
                            col: j,
                        });
                    }
                }
            }
        }
        let dim_v = components.len();
        let kernel_certificate = joint_kernel_vector(&components);
        Ok(VSymplecticSpace {
            dim_u,
            dim_v,
            components,
            kernel_certificate,
        })
    }

    /// The model `U + Hom(U, V)` with the pairing sending `(u + phi, u' + phi')`
    /// to `phi'(u) - phi(u')`. Coordinates are ordered as the `dim_q` base
    /// coordinates followed by `phi(e_a)` components grouped by `a`.
    pub fn canonical(dim_q: usize, dim_v: usize) -> Self {
        assert!(dim_q >= 1 && dim_v >= 1, "dimensions must be positive");
        let n = dim_q * (1 + dim_v);
        let mut components = Vec::with_capacity(dim_v);
        for mu in 0..dim_v {
            let mut g = Mat::zeros(n, n);
            for a in 0..dim_q {
                let p = dim_q + a * dim_v + mu;
                g.set(a, p, Rat::one());
                g.set(p, a, -Rat::one());
            }
            components.push(g);
        }
        Self::new(components).expect("canonical components are skew")
    }

    /// A Lie algebra as a model over itself: `U = V = g` and the form is the
    /// bracket. Structure constants `c[i][j][k]` give the `e_k` coefficient of
    /// `[e_i, e_j]`; antisymmetry and the Jacobi identity are verified. The
    /// result is degenerate exactly when the center is nontrivial, with a
    /// central vector as certificate.
    pub fn lie_model(c: &[Vec<Vec<Rat>>]) -> Result<Self, VsymplError> {
        let n = c.len();
        for (i, ci) in c.iter().enumerate() {
            if ci.len() != n {
                return Err(VsymplError::DimensionMismatch(format!(
                    "structure constants row {i} has length {}",
                    ci.len()
                )));
            }
            for (j, cij) in ci.iter().enumerate() {
                if cij.len() != n {
                    return Err(VsymplError::DimensionMismatch(format!(
                        "structure constants entry ({i},{j}) has length {}",
                        cij.len()
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k].clone() + c[j][i][k].clone() != Rat::zero() {
                        return Err(VsymplError::NotSkew {
                            component: k,
                            row: i,
                            col: j,
                        });
                    }
                }
            }
        }
        // Jacobi: sum over cyclic permutations of [[e_i, e_j], e_k] vanishes.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = Rat::zero();
                        for m in 0..n {
                            acc = acc
                                + c[i][j][m].clone() * c[m][k][l].clone()
                                + c[j][k][m].clone() * c[m][i][l].clone()
                                + c[k][i][m].clone() * c[m][j][l].clone();
                        }
                        if !acc.is_zero() {
                            return Err(VsymplError::JacobiViolation { i, j, k });
                        }
                    }
                }
            }
        }
        let components = (0..n)
            .map(|l| Mat::from_fn(n, n, |i, j| c[i][j][l].clone()))
            .collect();
        Self::new(components)
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn components(&self) -> &[Mat<Rat>] {
        &self.components
    }

    pub fn component(&self, l: usize) -> &Mat<Rat> {
        &self.components[l]
    }

    /// Collective nondegeneracy: the joint kernel of all components is zero.
    pub fn is_nondegenerate(&self) -> bool {
        self.kernel_certificate.is_none()
    }

    /// A nonzero joint-kernel vector when the space is degenerate.
    pub fn degeneracy_certificate(&self) -> Option<&[Rat]> {
        self.kernel_certificate.as_deref()
    }

    /// Evaluates the form: returns the coefficient-space vector `omega(x, y)`.
    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.components
            .iter()
            .map(|g| dot(x, &g.matvec(y)))
            .collect()
    }

    /// All components stacked vertically; the kernel of this matrix is the
    /// joint kernel of the form.
    pub fn stacked(&self) -> Mat<Rat> {
        let mut out = self.components[0].clone();
        for g in &self.components[1..] {
            out = out.vstack(g);
        }
        out
    }

}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

fn joint_kernel_vector(components: &[Mat<Rat>]) -> Option<Vec<Rat>> {
    let mut stacked = components[0].clone();
    for g in &components[1..] {
        stacked = stacked.vstack(g);
    }
    stacked.kernel().into_iter().next()
}

/// Nondegeneracy verdict together with a kernel certificate on failure.
pub fn is_nondegenerate(space: &VSymplecticSpace) -> (bool, Option<Vec<Rat>>) {
    match space.degeneracy_certificate() {
        None => (true, None),
        Some(v) => (false, Some(v.to_vec())),
    }
}

/// A subspace presented by a basis, generic over the scalar so complexified
/// subspaces reuse the same machinery. Rows of `basis` are the basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T: Scalar = Rat> {
    ambient_dim: usize,
    basis: Mat<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<T>>) -> Result<Self, VsymplError> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(VsymplError::DimensionMismatch(format!(
                    "basis vector length {} in ambient dimension {ambient_dim}",
                    v.len()
                )));
            }
        }
        let basis = if vectors.is_empty() {
            Mat::zeros(0, ambient_dim)
        } else {
            Mat::from_rows(vectors)
        };
        if basis.rank() != basis.nrows() {
            return Err(VsymplError::DependentBasis);
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Mat<T> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        self.basis.rows_vec()
    }

    pub fn same_subspace(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && same_row_space(&self.basis, &other.basis)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.basis.transpose().solve(v).is_some()
    }
}

/// Generic orthogonal of a subspace with respect to a family of component
/// forms: all vectors pairing to zero against the subspace in every component.
fn orthogonal_generic<T: Scalar>(components: &[Mat<T>], w: &Subspace<T>) -> Subspace<T> {
    let n = w.ambient_dim();
    if w.dim() == 0 {
        return Subspace::full(n);
    }
    // Constraint rows: omega_l(u, w) = 0 for each basis vector w and each
    // component l, i.e. (G_l w) . u = 0 using skewness of G_l in the real
    // case and bilinearity in general. We use the row form w^T G_l directly
    // so no symmetry assumption is needed: omega(u, w) = u^T G w, so the
    // constraint row is (G w)^T.
    let mut rows = Vec::new();
    for wvec in w.basis_vectors() {
        for g in components {
            rows.push(g.matvec(&wvec));
        }
    }
    let constraint = Mat::from_rows(rows);
    let kern = constraint.kernel();
    Subspace::new(n, kern).expect("kernel basis is independent")
}

/// The poly-orthogonal `W^omega`: all vectors `u` with `omega(u, w) = 0` in
/// every coefficient for all `w` in `W`.
pub fn poly_orthogonal(w: &Subspace<Rat>, space: &VSymplecticSpace) -> Subspace<Rat> {
    assert_eq!(
        w.ambient_dim(),
        space.dim_u(),
        "subspace ambient dimension mismatch"
    );
    orthogonal_generic(space.components(), w)
}

/// Poly-orthogonal in the complexification, with the forms extended
/// complex-bilinearly.
pub fn poly_orthogonal_complex(w: &Subspace<CRat>, space: &VSymplecticSpace) -> Subspace<CRat> {
    assert_eq!(w.ambient_dim(), space.dim_u());
    let components: Vec<Mat<CRat>> = space
        .components()
        .iter()
        .map(|g| g.map(|x| creal(x.clone())))
        .collect();
    orthogonal_generic(&components, w)
}

/// Lagrangian test: `W` equals its own poly-orthogonal.
pub fn is_lagrangian(w: &Subspace<Rat>, space: &VSymplecticSpace) -> bool {
    poly_orthogonal(w, space).same_subspace(w)
}

/// Lagrangian test in the complexification.
pub fn is_lagrangian_complex(w: &Subspace<CRat>, space: &VSymplecticSpace) -> bool {
    poly_orthogonal_complex(w, space).same_subspace(w)
}

/// An affine observable with values in the coefficient space: a constant
/// vector plus a constant differential `U -> V` (rows indexed by the
/// coefficient coordinate).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearObservable {
    pub value_at_origin: Vec<Rat>,
    pub differential: Mat<Rat>,
}

impl LinearObservable {
    pub fn new(value_at_origin: Vec<Rat>, differential: Mat<Rat>) -> Self {
        assert_eq!(value_at_origin.len(), differential.nrows());
        LinearObservable {
            value_at_origin,
            differential,
        }
    }

    pub fn constant(value: Vec<Rat>, dim_u: usize) -> Self {
        let ell = value.len();
        LinearObservable {
            value_at_origin: value,
            differential: Mat::zeros(ell, dim_u),
        }
    }

    pub fn dim_v(&self) -> usize {
        self.value_at_origin.len()
    }

    pub fn dim_u(&self) -> usize {
        self.differential.ncols()
    }
}

/// Solves `df = -i_X omega` for the Hamiltonian field of an affine
/// observable. In matrix form the conditions read `G_l X = (df_l)^T` for each
/// component; the whole stacked system must be consistent simultaneously. On
/// failure the offending component index is the first one whose addition
/// makes the system inconsistent.
pub fn hamiltonian_solve(
    f: &LinearObservable,
    space: &VSymplecticSpace,
) -> Result<Vec<Rat>, VsymplError> {
    if f.dim_v() != space.dim_v() || f.dim_u() != space.dim_u() {
        return Err(VsymplError::DimensionMismatch(format!(
            "observable is {}x{}, space wants {}x{}",
            f.dim_v(),
            f.dim_u(),
            space.dim_v(),
            space.dim_u()
        )));
    }
    let stacked = space.stacked();
    let mut rhs = Vec::with_capacity(space.dim_u() * space.dim_v());
    for l in 0..space.dim_v() {
        rhs.extend(f.differential.row(l));
    }
    match stacked.solve(&rhs) {
        Some(x) => Ok(x),
        None => {
            // Identify the first component whose constraints break consistency.
            for upto in 1..=space.dim_v() {
                let mut m = space.component(0).clone();
                for l in 1..upto {
                    m = m.vstack(space.component(l));
                }
                let mut partial_rhs = Vec::new();
                for l in 0..upto {
                    partial_rhs.extend(f.differential.row(l));
                }
                if m.solve(&partial_rhs).is_none() {
                    return Err(VsymplError::NotHamiltonian { component: upto - 1 });
                }
            }
            Err(VsymplError::NotHamiltonian {
                component: space.dim_v() - 1,
            })
        }
    }
}

/// The bracket of two affine Hamiltonian observables: `omega(X_f, X_h)` as a
/// vector in the coefficient space. Cross-checked internally against the
/// derivative of `h` along `X_f`.
pub fn bracket(
    f: &LinearObservable,
    h: &LinearObservable,
    space: &VSymplecticSpace,
) -> Result<Vec<Rat>, VsymplError> {
    let xf = hamiltonian_solve(f, space)?;
    let xh = hamiltonian_solve(h, space)?;
    let value = space.eval(&xf, &xh);
    debug_assert_eq!(value, h.differential.matvec(&xf), "bracket = X_f h failed");
    Ok(value)
}

/// A linear complex structure candidate on the underlying space.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructureJ {
    mat: Mat<Rat>,
}

impl ComplexStructureJ {
    /// Exact constructor: requires `J*J = -I` exactly.
    pub fn new(mat: Mat<Rat>) -> Result<Self, VsymplError> {
        if mat.nrows() != mat.ncols() {
            return Err(VsymplError::DimensionMismatch(
                "complex structure must be square".into(),
            ));
        }
        let n = mat.nrows();
        if mat.matmul(&mat) != Mat::identity(n).neg() {
            return Err(VsymplError::NotAComplexStructure);
        }
        Ok(ComplexStructureJ { mat })
    }

    /// Floating constructor: entries are lifted exactly to rationals and the
    /// defining identity is accepted within `1e-12` entrywise. Downstream
    /// exact checks still see the rational lift.
    pub fn from_f64(entries: &[Vec<f64>]) -> Result<Self, VsymplError> {
        let n = entries.len();
        for row in entries {
            if row.len() != n {
                return Err(VsymplError::DimensionMismatch(
                    "complex structure must be square".into(),
                ));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += entries[i][k] * entries[k][j];
                }
                let target = if i == j { -1.0 } else { 0.0 };
                if (acc - target).abs() > 1e-12 {
                    return Err(VsymplError::NotAComplexStructure);
                }
            }
        }
        let mat = Mat::from_fn(n, n, |i, j| {
            Rat::from_float(entries[i][j]).expect("finite entry")
        });
        Ok(ComplexStructureJ { mat })
    }

    pub fn matrix(&self) -> &Mat<Rat> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn negated(&self) -> Self {
        ComplexStructureJ {
            mat: self.mat.neg(),
        }
    }
}

/// Compatibility: `J*J = -I` exactly and every component satisfies
/// `omega(Ju, Ju') = omega(u, u')`, i.e. `J^T G J = G`.
pub fn compatible_complex_check(j: &ComplexStructureJ, space: &VSymplecticSpace) -> bool {
    if j.dim() != space.dim_u() {
        return false;
    }
    let jm = j.matrix();
    let n = j.dim();
    if jm.matmul(jm) != Mat::identity(n).neg() {
        return false;
    }
    let jt = jm.transpose();
    space
        .components()
        .iter()
        .all(|g| jt.matmul(g).matmul(jm) == *g)
}

/// Splits the complexification into the `+i` and `-i` eigenspaces of a
/// compatible complex structure. Both are verified Lagrangian for the
/// complex-bilinear extension of the form and have half the dimension.
pub fn eigenspace_split(
    j: &ComplexStructureJ,
    space: &VSymplecticSpace,
) -> Result<(Subspace<CRat>, Subspace<CRat>), VsymplError> {
    if !compatible_complex_check(j, space) {
        return Err(VsymplError::NotCompatible);
    }
    let n = space.dim_u();
    let jc = j.matrix().map(|x| creal(x.clone()));
    let eye = Mat::<CRat>::identity(n);
    let i_unit = CRat::new(Rat::zero(), Rat::one());
    let plus = jc.sub(&eye.scale(&i_unit)).kernel();
    let minus = jc.add(&eye.scale(&i_unit)).kernel();
    let u_plus = Subspace::new(n, plus).expect("eigenbasis independent");
    let u_minus = Subspace::new(n, minus).expect("eigenbasis independent");
    debug_assert_eq!(u_plus.dim(), n / 2);
    debug_assert_eq!(u_minus.dim(), n / 2);
    Ok((u_plus, u_minus))
}

/// Sign classification of a symmetric or Hermitian pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Degenerate,
}

impl Definiteness {
    fn from_inertia(pos: usize, neg: usize, zero: usize) -> Self {
        if zero > 0 {
            Definiteness::Degenerate
        } else if neg == 0 {
            Definiteness::PositiveDefinite
        } else if pos == 0 {
            Definiteness::NegativeDefinite
        } else {
            Definiteness::Indefinite
        }
    }

    pub fn is_definite(&self) -> bool {
        matches!(
            self,
            Definiteness::PositiveDefinite | Definiteness::NegativeDefinite
        )
    }
}

/// Per-weight definiteness verdicts with the eigenspace cross-check.
#[derive(Debug, Clone)]
pub struct WeightDefiniteness {
    pub weight: Vec<Rat>,
    /// Verdict for the symmetric form `u, u' -> lambda(omega(u, Ju'))`.
    pub symmetric_form: Definiteness,
    pub symmetric_inertia: (usize, usize, usize),
    /// Verdict for the Hermitian form `-i * lambda(omega(u, conj(u')))` on
    /// the `+i` eigenspace of `J`.
    pub eigenspace_form: Definiteness,
    pub eigenspace_inertia: (usize, usize, usize),
    /// Whether the two verdicts agree (including sign when definite).
    pub agrees: bool,
}

/// Full definiteness report over a supplied list of dual weights.
#[derive(Debug, Clone)]
pub struct DefinitenessReport {
    pub per_weight: Vec<WeightDefiniteness>,
    /// Aggregate verdict: every supplied weight yields a definite form
    /// (signs may differ between weights; each weight must be consistent).
    pub definite: bool,
    /// All per-weight cross-checks agree.
    pub cross_check_agrees: bool,
}

/// For each dual weight, classifies the symmetric pairing built from the
/// complex structure, and cross-checks the verdict against the quadratic form
/// on the `+i` eigenspace. Both classifications use exact congruence inertia.
pub fn definiteness_report(
    j: &ComplexStructureJ,
    space: &VSymplecticSpace,
    weights: &[Vec<Rat>],
) -> Result<DefinitenessReport, VsymplError> {
    if !compatible_complex_check(j, space) {
        return Err(VsymplError::NotCompatible);
    }
    let (u_plus, _) = eigenspace_split(j, space)?;
    let n = space.dim_u();
    let jm = j.matrix();
    let mut per_weight = Vec::with_capacity(weights.len());
    for (widx, lam) in weights.iter().enumerate() {
        assert_eq!(lam.len(), space.dim_v(), "weight length mismatch");
        // M = sum_l lam_l G_l J, the matrix of (u, u') -> lambda(omega(u, Ju')).
        let mut m = Mat::<Rat>::zeros(n, n);
        for (l, coef) in lam.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            m = m.add(&space.component(l).matmul(jm).scale(coef));
        }
        if m != m.transpose() {
            return Err(VsymplError::NotSymmetric { weight: widx });
        }
        let mc = m.map(|x| creal(x.clone()));
        let sym_inertia = hermitian_inertia(&mc);
        let symmetric_form =
            Definiteness::from_inertia(sym_inertia.0, sym_inertia.1, sym_inertia.2);

        // Hermitian form on the +i eigenspace: K_jk = i * lambda(omega(b_j, conj(b_k))).
        let basis = u_plus.basis_vectors();
        let m_lam_c: Mat<CRat> = {
            let mut acc = Mat::<CRat>::zeros(n, n);
            for (l, coef) in lam.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                acc = acc.add(&space.component(l).map(|x| creal(x.clone() * coef.clone())));
            }
            acc
        };
        // Members of the +i eigenspace take the shape Ju + iu, and expanding
        // the pairing gives omega(Ju + iu, Ju - iu) = 2i omega(u, Ju), so the
        // -i multiple below matches the sign of the symmetric form exactly.
        let dim_p = basis.len();
        let minus_i = CRat::new(Rat::zero(), -Rat::one());
        let k = Mat::<CRat>::from_fn(dim_p, dim_p, |a, b| {
            let cb: Vec<CRat> = basis[b].iter().map(|z| z.conj()).collect();
            let val = dot(&basis[a], &m_lam_c.matvec(&cb));
            minus_i.clone() * val
        });
        let eig_inertia = hermitian_inertia(&k);
        let eigenspace_form =
            Definiteness::from_inertia(eig_inertia.0, eig_inertia.1, eig_inertia.2);

        // The real form on U corresponds two-to-one to the Hermitian form on
        // the eigenspace, so the full inertia must match after halving.
        let agrees = symmetric_form == eigenspace_form
            && sym_inertia == (
                2 * eig_inertia.0,
                2 * eig_inertia.1,
                2 * eig_inertia.2,
            );
        per_weight.push(WeightDefiniteness {
            weight: lam.clone(),
            symmetric_form,
            symmetric_inertia: sym_inertia,
            eigenspace_form,
            eigenspace_inertia: eig_inertia,
            agrees,
        });
    }
    let definite = !per_weight.is_empty() && per_weight.iter().all(|w| w.symmetric_form.is_definite());
    let cross_check_agrees = per_weight.iter().all(|w| w.agrees);
    Ok(DefinitenessReport {
        per_weight,
        definite,
        cross_check_agrees,
    })
}

/// Builds the rescaling `(u, phi) -> (alpha u, phi / alpha)` on the canonical
/// model, verifies it preserves every component form, and returns its exact
/// determinant. The value equals `alpha^(dim_q * (1 - dim_v))`.
pub fn scaling_determinant(alpha: &Rat, dim_q: usize, dim_v: usize) -> Rat {
    assert!(
        alpha > &Rat::one(),
        "rescaling factor must exceed one"
    );
    let space = VSymplecticSpace::canonical(dim_q, dim_v);
    let n = space.dim_u();
    let inv = alpha.clone().recip();
    let t = Mat::from_fn(n, n, |i, j| {
        if i != j {
            Rat::zero()
        } else if i < dim_q {
            alpha.clone()
        } else {
            inv.clone()
        }
    });
    let tt = t.transpose();
    for g in space.components() {
        assert_eq!(
            tt.matmul(g).matmul(&t),
            *g,
            "rescaling failed to preserve the form"
        );
    }
    t.det()
}

/// An alternating multilinear form given by coefficients on strictly
/// increasing index tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingForm {
    dim: usize,
    degree: usize,
    coeffs: std::collections::BTreeMap<Vec<usize>, Rat>,
}

impl AlternatingForm {
    pub fn new(dim: usize, degree: usize, terms: Vec<(Vec<usize>, Rat)>) -> Result<Self, String> {
        let mut coeffs = std::collections::BTreeMap::new();
        for (idx, coef) in terms {
            if idx.len() != degree {
                return Err(format!("index tuple {idx:?} has wrong length"));
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("index tuple {idx:?} is not strictly increasing"));
            }
            if idx.iter().any(|&i| i >= dim) {
                return Err(format!("index {idx:?} out of range for dimension {dim}"));
            }
            if !coef.is_zero() {
                *coeffs.entry(idx).or_insert_with(Rat::zero) += coef;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(AlternatingForm {
            dim,
            degree,
            coeffs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Evaluates on a tuple of basis indices, handling sign and repeats.
    pub fn eval_basis(&self, indices: &[usize]) -> Rat {
        assert_eq!(indices.len(), self.degree);
        let mut sorted: Vec<(usize, usize)> = indices.iter().copied().enumerate().collect();
        // Count inversions for the permutation sign while sorting by value.
        let mut sign = 1i64;
        for i in 0..sorted.len() {
            for j in (i + 1)..sorted.len() {
                if sorted[j].1 < sorted[i].1 {
                    sorted.swap(i, j);
                    sign = -sign;
                }
            }
        }
        let values: Vec<usize> = sorted.iter().map(|p| p.1).collect();
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Rat::zero();
        }
        match self.coeffs.get(&values) {
            Some(c) => c.clone() * crate::rational::rint(sign),
            None => Rat::zero(),
        }
    }
}

/// Result of lowering a higher alternating form to a two-form valued in the
/// space of lower-degree forms: `(X, Y) -> i_Y i_X Omega`.
#[derive(Debug, Clone)]
pub struct LoweredTwoForm {
    /// Basis labels for the value space: strictly increasing `(degree-2)`-tuples.
    pub value_basis: Vec<Vec<usize>>,
    /// One skew component per value-basis label.
    pub space: VSymplecticSpace,
}

/// Lowers an alternating `(k+1)`-form on `U` to a two-form valued in
/// `(k-1)`-forms by double contraction: component `T` at `(e_i, e_j)` is
/// `Omega(e_i, e_j, e_T)`. The output components are verified skew by
/// construction of the target space.
pub fn symbol_map(omega_top: &AlternatingForm) -> Result<LoweredTwoForm, String> {
    let degree = omega_top.degree();
    if degree < 2 {
        return Err("form degree must be at least 2".into());
    }
    let dim = omega_top.dim();
    let value_basis = increasing_tuples(dim, degree - 2);
    let mut components = Vec::with_capacity(value_basis.len());
    for t in &value_basis {
        let g = Mat::from_fn(dim, dim, |i, j| {
            let mut idx = Vec::with_capacity(degree);
            idx.push(i);
            idx.push(j);
            idx.extend_from_slice(t);
            omega_top.eval_basis(&idx)
        });
        components.push(g);
    }
    let space = VSymplecticSpace::new(components)
        .map_err(|e| format!("lowered components not skew: {e}"))?;
    Ok(LoweredTwoForm { value_basis, space })
}

fn increasing_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::<usize>::new())];
    while let Some((start, prefix)) = stack.pop() {
        if prefix.len() == len {
            out.push(prefix);
            continue;
        }
        // Depth-first in reverse so the output is lexicographically sorted.
        for i in (start..dim).rev() {
            let mut next = prefix.clone();
            next.push(i);
            stack.push((i + 1, next));
        }
    }
    out
}

/// Moment map of a linear action on the canonical model, evaluated at a point
/// `phi` of the `Hom` factor: sends a generator with base velocity `xi` to
/// `phi(xi)`. Returns the matrix whose column `j` is the value on the `j`-th
/// generator.
pub fn moment_map_linear(
    space: &VSymplecticSpace,
    action: &[Vec<Rat>],
    phi: &Mat<Rat>,
) -> Result<Mat<Rat>, VsymplError> {
    let ell = space.dim_v();
    let k = phi.ncols();
    if phi.nrows() != ell {
        return Err(VsymplError::DimensionMismatch(format!(
            "phi has {} rows, coefficient space has dimension {ell}",
            phi.nrows()
        )));
    }
    if space.dim_u() != k * (1 + ell) {
        return Err(VsymplError::DimensionMismatch(
            "space is not a canonical model matching phi".into(),
        ));
    }
    for xi in action {
        if xi.len() != k {
            return Err(VsymplError::DimensionMismatch(format!(
                "generator velocity has length {}, base dimension is {k}",
                xi.len()
            )));
        }
    }
    Ok(Mat::from_fn(ell, action.len(), |l, j| {
        dot(&phi.row(l), &action[j])
    }))
}

/// Canonical model together with its coordinate bookkeeping: base coordinates
/// first, then the `Hom` coordinates grouped by base index.
#[derive(Debug, Clone)]
pub struct CanonicalModel {
    pub dim_q: usize,
    pub dim_v: usize,
    pub space: VSymplecticSpace,
}

impl CanonicalModel {
    pub fn new(dim_q: usize, dim_v: usize) -> Self {
        CanonicalModel {
            dim_q,
            dim_v,
            space: VSymplecticSpace::canonical(dim_q, dim_v),
        }
    }

    pub fn coord_count(&self) -> usize {
        self.dim_q * (1 + self.dim_v)
    }

    pub fn q_index(&self, a: usize) -> usize {
        debug_assert!(a < self.dim_q);
        a
    }

    pub fn p_index(&self, a: usize, mu: usize) -> usize {
        debug_assert!(a < self.dim_q && mu < self.dim_v);
        self.dim_q + a * self.dim_v + mu
    }

    /// The compatible complex structure induced by a complex structure on the
    /// base factor: the base transforms by `J_U` and the `Hom` factor by
    /// precomposition with the inverse.
    pub fn split_complex_structure(&self, j_u: &Mat<Rat>) -> Result<ComplexStructureJ, VsymplError> {
        let k = self.dim_q;
        if j_u.nrows() != k || j_u.ncols() != k {
            return Err(VsymplError::DimensionMismatch(
                "base complex structure has wrong size".into(),
            ));
        }
        if j_u.matmul(j_u) != Mat::identity(k).neg() {
            return Err(VsymplError::NotAComplexStructure);
        }
        let j_inv = j_u.inverse().expect("complex structure invertible");
        let n = self.coord_count();
        let mut m = Mat::<Rat>::zeros(n, n);
        for a in 0..k {
            for b in 0..k {
                m.set(a, b, j_u.get(a, b).clone());
            }
        }
        // phi -> phi o J_U^{-1}: new phi(e_a) = sum_b (J^{-1})_{b a} phi(e_b).
        for a in 0..k {
            for b in 0..k {
                let c = j_inv.get(b, a).clone();
                if c.is_zero() {
                    continue;
                }
                for mu in 0..self.dim_v {
                    m.set(self.p_index(a, mu), self.p_index(b, mu), c.clone());
                }
            }
        }
        ComplexStructureJ::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    fn plane() -> VSymplecticSpace {
        VSymplecticSpace::canonical(1, 1)
    }

    fn rv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(rint).collect()
    }

    #[test]
    fn canonical_plane_pairing() {
        let s = plane();
        assert_eq!(s.dim_u(), 2);
        assert!(s.is_nondegenerate());
        assert_eq!(s.eval(&rv(vec![1, 0]), &rv(vec![0, 1])), rv(vec![1]));
    }

    #[test]
    fn canonical_1_2_component_pairings() {
        // Expected from evaluating the defining product on basis vectors:
        // omega_1(e_q, e_p1) = 1, omega_2(e_q, e_p2) = 1, everything else zero.
        let s = VSymplecticSpace::canonical(1, 2);
        assert_eq!(s.dim_u(), 3);
        let e_q = rv(vec![1, 0, 0]);
        let e_p1 = rv(vec![0, 1, 0]);
        let e_p2 = rv(vec![0, 0, 1]);
        assert_eq!(s.eval(&e_q, &e_p1), rv(vec![1, 0]));
        assert_eq!(s.eval(&e_q, &e_p2), rv(vec![0, 1]));
        assert_eq!(s.eval(&e_p1, &e_p2), rv(vec![0, 0]));
    }

    #[test]
    fn canonical_2_3_nondegenerate() {
        let s = VSymplecticSpace::canonical(2, 3);
        assert_eq!(s.dim_u(), 8);
        assert_eq!(s.dim_v(), 3);
        assert!(s.is_nondegenerate());
        // Independent certificate: for each basis vector exhibit a partner
        // with a nonzero pairing in some component.
        for i in 0..8 {
            let mut e = rv(vec![0; 8]);
            e[i] = rint(1);
            let paired = (0..8).any(|j| {
                let mut f = rv(vec![0; 8]);
                f[j] = rint(1);
                s.eval(&e, &f).iter().any(|x| !x.is_zero())
            });
            assert!(paired, "basis vector {i} pairs to zero with everything");
        }
    }

    #[test]
    fn zero_form_degenerate_with_certificate() {
        let s = VSymplecticSpace::new(vec![Mat::zeros(2, 2)]).unwrap();
        let (ok, cert) = is_nondegenerate(&s);
        assert!(!ok);
        let cert = cert.unwrap();
        assert!(cert.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn awane_style_two_forms_on_r3() {
        // omega_1 = dx ^ dy, omega_2 = dx ^ dz: individually degenerate,
        // collectively nondegenerate.
        let mut g1 = Mat::<Rat>::zeros(3, 3);
        g1.set(0, 1, rint(1));
        g1.set(1, 0, rint(-1));
        let mut g2 = Mat::<Rat>::zeros(3, 3);
        g2.set(0, 2, rint(1));
        g2.set(2, 0, rint(-1));
        let s = VSymplecticSpace::new(vec![g1, g2]).unwrap();
        assert!(s.is_nondegenerate());
    }

    #[test]
    fn non_skew_rejected_with_component() {
        let mut g = Mat::<Rat>::zeros(2, 2);
        g.set(0, 1, rint(1));
        let err = VSymplecticSpace::new(vec![g]).unwrap_err();
        assert!(matches!(err, VsymplError::NotSkew { component: 0, .. }));
    }

    fn su2_constants() -> Vec<Vec<Vec<Rat>>> {
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        let eps = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)];
        for &(i, j, k, s) in &eps {
            c[i][j][k] = rint(s);
            c[j][i][k] = rint(-s);
        }
        c
    }

    #[test]
    fn su2_lie_model_nondegenerate() {
        let s = VSymplecticSpace::lie_model(&su2_constants()).unwrap();
        assert!(s.is_nondegenerate());
    }

    #[test]
    fn abelian_lie_model_degenerate() {
        let c = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        let s = VSymplecticSpace::lie_model(&c).unwrap();
        assert!(!s.is_nondegenerate());
    }

    fn heisenberg_constants() -> Vec<Vec<Vec<Rat>>> {
        // [e1, e2] = e3, center spanned by e3.
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        c[0][1][2] = rint(1);
        c[1][0][2] = rint(-1);
        c
    }

    #[test]
    fn heisenberg_center_is_certificate() {
        let s = VSymplecticSpace::lie_model(&heisenberg_constants()).unwrap();
        assert!(!s.is_nondegenerate());
        let cert = s.degeneracy_certificate().unwrap();
        // The joint kernel is the center, spanned by e3.
        assert!(cert[2] != Rat::zero());
        assert!(cert[0].is_zero() && cert[1].is_zero());
    }

    #[test]
    fn jacobi_violation_detected() {
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        // Antisymmetric but non-Jacobi: [e1,e2]=e2, [e1,e3]=e3, [e2,e3]=e1
        // makes the cyclic sum on (e1,e2,e3) equal 2*e1.
        c[0][1][1] = rint(1);
        c[1][0][1] = rint(-1);
        c[0][2][2] = rint(1);
        c[2][0][2] = rint(-1);
        c[1][2][0] = rint(1);
        c[2][1][0] = rint(-1);
        let err = VSymplecticSpace::lie_model(&c).unwrap_err();
        assert!(matches!(err, VsymplError::JacobiViolation { .. }));
    }

    #[test]
    fn orthogonal_of_zero_and_line() {
        let s = plane();
        let zero = Subspace::zero(2);
        assert_eq!(poly_orthogonal(&zero, &s).dim(), 2);
        let line = Subspace::new(2, vec![rv(vec![1, 0])]).unwrap();
        let orth = poly_orthogonal(&line, &s);
        assert!(orth.same_subspace(&line));
        assert!(is_lagrangian(&line, &s));
        assert!(!is_lagrangian(&Subspace::full(2), &s));
    }

    #[test]
    fn canonical_1_2_base_line_is_lagrangian() {
        let s = VSymplecticSpace::canonical(1, 2);
        let line = Subspace::new(3, vec![rv(vec![1, 0, 0])]).unwrap();
        let orth = poly_orthogonal(&line, &s);
        assert!(orth.same_subspace(&line));
        assert!(is_lagrangian(&line, &s));
    }

    #[test]
    fn canonical_factors_are_lagrangian() {
        let s = VSymplecticSpace::canonical(2, 2);
        let n = s.dim_u();
        let base = Subspace::new(
            n,
            (0..2)
                .map(|i| {
                    let mut v = rv(vec![0; n]);
                    v[i] = rint(1);
                    v
                })
                .collect(),
        )
        .unwrap();
        let hom = Subspace::new(
            n,
            (2..n)
                .map(|i| {
                    let mut v = rv(vec![0; n]);
                    v[i] = rint(1);
                    v
                })
                .collect(),
        )
        .unwrap();
        assert!(is_lagrangian(&base, &s));
        assert!(is_lagrangian(&hom, &s));
    }

    #[test]
    fn hamiltonian_solve_plane() {
        let s = plane();
        // f = q: differential (1, 0); the field is e_p.
        let f = LinearObservable::new(rv(vec![0]), Mat::from_rows(vec![rv(vec![1, 0])]));
        let x = hamiltonian_solve(&f, &s).unwrap();
        assert_eq!(x, rv(vec![0, 1]));
        // Constant observables have the zero field.
        let c = LinearObservable::constant(rv(vec![5]), 2);
        assert_eq!(hamiltonian_solve(&c, &s).unwrap(), rv(vec![0, 0]));
    }

    #[test]
    fn hamiltonian_solvability_on_canonical_1_2() {
        let s = VSymplecticSpace::canonical(1, 2);
        // df = (dq, 0) is reachable: the field is e_p1.
        let f = LinearObservable::new(
            rv(vec![0, 0]),
            Mat::from_rows(vec![rv(vec![1, 0, 0]), rv(vec![0, 0, 0])]),
        );
        let x = hamiltonian_solve(&f, &s).unwrap();
        assert_eq!(x, rv(vec![0, 1, 0]));
        // df = (dp1, 0) is not: the base velocity must agree across
        // components, so a dp-coefficient present in one component and
        // absent in the other is unreachable.
        let bad = LinearObservable::new(
            rv(vec![0, 0]),
            Mat::from_rows(vec![rv(vec![0, 1, 0]), rv(vec![0, 0, 0])]),
        );
        let err = hamiltonian_solve(&bad, &s).unwrap_err();
        assert!(matches!(err, VsymplError::NotHamiltonian { component: 1 }));
        // df = (dp1, dp2) pairs the components consistently and is solvable.
        let good = LinearObservable::new(
            rv(vec![0, 0]),
            Mat::from_rows(vec![rv(vec![0, 1, 0]), rv(vec![0, 0, 1])]),
        );
        let x = hamiltonian_solve(&good, &s).unwrap();
        assert_eq!(x, rv(vec![-1, 0, 0]));
    }

    #[test]
    fn bracket_plane_and_antisymmetry() {
        let s = plane();
        let q = LinearObservable::new(rv(vec![0]), Mat::from_rows(vec![rv(vec![1, 0])]));
        let p = LinearObservable::new(rv(vec![0]), Mat::from_rows(vec![rv(vec![0, 1])]));
        assert_eq!(bracket(&q, &p, &s).unwrap(), rv(vec![1]));
        assert_eq!(bracket(&p, &q, &s).unwrap(), rv(vec![-1]));
        assert_eq!(bracket(&q, &q, &s).unwrap(), rv(vec![0]));
    }

    #[test]
    fn bracket_on_canonical_1_2() {
        let s = VSymplecticSpace::canonical(1, 2);
        let q = LinearObservable::new(
            rv(vec![0, 0]),
            Mat::from_rows(vec![rv(vec![1, 0, 0]), rv(vec![0, 0, 0])]),
        );
        // p1 as first component, paired consistently in the second slot to
        // stay Hamiltonian: differential rows (dp1, dp2).
        let p = LinearObservable::new(
            rv(vec![0, 0]),
            Mat::from_rows(vec![rv(vec![0, 1, 0]), rv(vec![0, 0, 1])]),
        );
        // {q_obs, p_obs} = omega(X_q, X_p) with X_q = -e_p1, X_p = -e_q.
        let val = bracket(&q, &p, &s).unwrap();
        assert_eq!(val, rv(vec![1, 0]));
    }

    #[test]
    fn standard_j_compatible_identity_not() {
        let s = plane();
        let j = ComplexStructureJ::new(Mat::from_rows(vec![rv(vec![0, -1]), rv(vec![1, 0])]))
            .unwrap();
        assert!(compatible_complex_check(&j, &s));
        assert!(ComplexStructureJ::new(Mat::identity(2)).is_err());
    }

    #[test]
    fn split_complex_structure_compatible() {
        let model = CanonicalModel::new(2, 2);
        let j_u = Mat::from_rows(vec![rv(vec![0, -1]), rv(vec![1, 0])]);
        let j = model.split_complex_structure(&j_u).unwrap();
        assert!(compatible_complex_check(&j, &model.space));
    }

    #[test]
    fn eigenspace_split_plane() {
        let s = plane();
        let j = ComplexStructureJ::new(Mat::from_rows(vec![rv(vec![0, -1]), rv(vec![1, 0])]))
            .unwrap();
        let (up, um) = eigenspace_split(&j, &s).unwrap();
        assert_eq!(up.dim(), 1);
        assert_eq!(um.dim(), 1);
        assert!(is_lagrangian_complex(&up, &s));
        assert!(is_lagrangian_complex(&um, &s));
        // U_+ is spanned by e_q - i e_p (the +i eigenvector of J).
        let vec = &up.basis_vectors()[0];
        let ratio = vec[1].clone() / vec[0].clone();
        assert_eq!(ratio, CRat::new(Rat::zero(), -Rat::one()));
    }

    #[test]
    fn eigenspace_split_product_j() {
        // Two planes with the product structure: U_+ is two-dimensional.
        let mut g = Mat::<Rat>::zeros(4, 4);
        g.set(0, 1, rint(1));
        g.set(1, 0, rint(-1));
        g.set(2, 3, rint(1));
        g.set(3, 2, rint(-1));
        let s = VSymplecticSpace::new(vec![g]).unwrap();
        let mut jm = Mat::<Rat>::zeros(4, 4);
        jm.set(0, 1, rint(-1));
        jm.set(1, 0, rint(1));
        jm.set(2, 3, rint(-1));
        jm.set(3, 2, rint(1));
        let j = ComplexStructureJ::new(jm).unwrap();
        let (up, _) = eigenspace_split(&j, &s).unwrap();
        assert_eq!(up.dim(), 2);
        assert!(is_lagrangian_complex(&up, &s));
    }

    #[test]
    fn definiteness_standard_plane() {
        let s = plane();
        let j = ComplexStructureJ::new(Mat::from_rows(vec![rv(vec![0, -1]), rv(vec![1, 0])]))
            .unwrap();
        let report = definiteness_report(&j, &s, &[rv(vec![1])]).unwrap();
        assert_eq!(
            report.per_weight[0].symmetric_form,
            Definiteness::PositiveDefinite
        );
        assert!(report.per_weight[0].agrees);
        assert!(report.definite);
        // Negating J flips the sign.
        let report_neg = definiteness_report(&j.negated(), &s, &[rv(vec![1])]).unwrap();
        assert_eq!(
            report_neg.per_weight[0].symmetric_form,
            Definiteness::NegativeDefinite
        );
        assert!(report_neg.per_weight[0].agrees);
    }

    #[test]
    fn definiteness_split_j_indefinite() {
        // With a one-dimensional coefficient space the split structure gives
        // an indefinite, nondegenerate pairing.
        let model = CanonicalModel::new(2, 1);
        let j_u = Mat::from_rows(vec![rv(vec![0, -1]), rv(vec![1, 0])]);
        let j = model.split_complex_structure(&j_u).unwrap();
        let report = definiteness_report(&j, &model.space, &[rv(vec![1])]).unwrap();
        assert_eq!(report.per_weight[0].symmetric_form, Definiteness::Indefinite);
        assert!(report.per_weight[0].agrees);
        assert!(!report.definite);
        // With more coefficients the pairing for a single dual weight also
        // acquires a kernel.
        let model2 = CanonicalModel::new(2, 2);
        let j2 = model2.split_complex_structure(&j_u).unwrap();
        let report2 =
            definiteness_report(&j2, &model2.space, &[rv(vec![1, 0]), rv(vec![0, 1])]).unwrap();
        for w in &report2.per_weight {
            assert_eq!(w.symmetric_form, Definiteness::Degenerate);
            assert!(w.agrees);
        }
    }

    #[test]
    fn scaling_determinant_examples() {
        assert_eq!(scaling_determinant(&rint(2), 2, 3), rat(1, 16));
        assert_eq!(scaling_determinant(&rint(2), 3, 1), rint(1));
        assert_eq!(scaling_determinant(&rint(3), 1, 2), rat(1, 3));
    }

    #[test]
    fn symbol_map_volume_form_r3() {
        // dx ^ dy ^ dz: contraction by (e_x, e_y) leaves dz.
        let omega = AlternatingForm::new(3, 3, vec![(vec![0, 1, 2], rint(1))]).unwrap();
        let lowered = symbol_map(&omega).unwrap();
        assert_eq!(lowered.value_basis, vec![vec![0], vec![1], vec![2]]);
        // Component dz (label [2]) at (e_x, e_y) equals 1.
        assert_eq!(*lowered.space.component(2).get(0, 1), rint(1));
        // Component dx (label [0]) at (e_x, e_y) vanishes.
        assert_eq!(*lowered.space.component(0).get(0, 1), rint(0));
        // Full antisymmetry of the components.
        for g in lowered.space.components() {
            assert_eq!(g.transpose(), g.neg());
        }
    }

    #[test]
    fn symbol_map_degree_two_is_identity() {
        let mut terms = Vec::new();
        terms.push((vec![0, 1], rint(2)));
        terms.push((vec![1, 2], rat(-1, 3)));
        let omega = AlternatingForm::new(3, 2, terms).unwrap();
        let lowered = symbol_map(&omega).unwrap();
        assert_eq!(lowered.value_basis, vec![Vec::<usize>::new()]);
        let g = lowered.space.component(0);
        assert_eq!(*g.get(0, 1), rint(2));
        assert_eq!(*g.get(1, 0), rint(-2));
        assert_eq!(*g.get(1, 2), rat(-1, 3));
        assert_eq!(*g.get(0, 2), rint(0));
    }

    #[test]
    fn moment_map_formula() {
        let s = VSymplecticSpace::canonical(1, 2);
        // phi = (2, 5) dq as a map from the 1-dimensional base to V.
        let phi = Mat::from_rows(vec![rv(vec![2]), rv(vec![5])]);
        let mu = moment_map_linear(&s, &[rv(vec![1])], &phi).unwrap();
        assert_eq!(mu.col(0), rv(vec![2, 5]));
        // Zero point gives the zero map; additivity in phi.
        let zero = Mat::<Rat>::zeros(2, 1);
        assert!(moment_map_linear(&s, &[rv(vec![1])], &zero)
            .unwrap()
            .is_zero());
        let phi2 = Mat::from_rows(vec![rv(vec![1]), rv(vec![-1])]);
        let sum = moment_map_linear(&s, &[rv(vec![1])], &phi.add(&phi2)).unwrap();
        let separate = moment_map_linear(&s, &[rv(vec![1])], &phi)
            .unwrap()
            .add(&moment_map_linear(&s, &[rv(vec![1])], &phi2).unwrap());
        assert_eq!(sum, separate);
    }
}
