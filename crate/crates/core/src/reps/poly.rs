//! Polynomial sections of the trivial bundle over the canonical model, and
//! the first-order operators acting on them.
//!
//! Sections are tuples of multivariate polynomials with exact Gaussian
//! rational coefficients, indexed by graded-lexicographic monomials. The
//! operators realized here are the Lie derivative along a polynomial vector
//! field plus a matrix-valued polynomial multiplication through the module
//! action; compositions and commutators are computed symbolically with no
//! truncation, so a vanishing defect is an exact identity on the stated
//! section space.

use super::scalar::{Q128, CQ128};
use crate::linalg::Mat;
use crate::rational::{CRat, Rat};
use crate::reps::{AbelianRep, RepError};
use crate::vsympl::CanonicalModel;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OperatorError {
    #[error("no Hamiltonian vector field: component {component} of the differential is unreachable")]
    NotHamiltonian { component: usize },
    #[error("commutator output of degree {found} leaves the degree-{cap} section space")]
    DegreeOverflow { found: usize, cap: usize },
    #[error("observable has {found} components, model coefficient space has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator check requires exact generators")]
    ExactGeneratorsRequired,
    #[error("representation error: {0}")]
    Rep(#[from] RepError),
}

/// Exponent vector with graded-lexicographic ordering (degree first, then
/// lexicographic), which fixes the deterministic section basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mono(pub Vec<u8>);

impl Mono {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn constant(vars: usize) -> Mono {
        Mono(vec![0; vars])
    }

    pub fn coordinate(vars: usize, j: usize) -> Mono {
        let mut e = vec![0; vars];
        e[j] = 1;
        Mono(e)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with Gaussian rational coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct CPoly {
    vars: usize,
    terms: BTreeMap<Mono, CQ128>,
}

impl CPoly {
    pub fn zero(vars: usize) -> CPoly {
        CPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: CQ128) -> CPoly {
        let mut p = CPoly::zero(vars);
        p.add_term(Mono::constant(vars), c);
        p
    }

    pub fn coordinate(vars: usize, j: usize) -> CPoly {
        let mut p = CPoly::zero(vars);
        p.add_term(Mono::coordinate(vars, j), CQ128::ONE);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CQ128)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Mono, c: CQ128) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: CQ128) -> CPoly {
        let mut out = CPoly::zero(self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = CPoly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(*cb));
            }
        }
        out
    }

    /// Partial derivative with respect to coordinate `j`.
    pub fn derivative(&self, j: usize) -> CPoly {
        let mut out = CPoly::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut lowered = m.0.clone();
            lowered[j] = e - 1;
            out.add_term(Mono(lowered), c.scale(Q128::from_int(e as i128)));
        }
        out
    }

    /// Largest coefficient magnitude bound.
    pub fn max_coeff_bound(&self) -> Q128 {
        let mut best = Q128::ZERO;
        for c in self.terms.values() {
            let b = c.abs_bound();
            if best.cmp_abs(b) == std::cmp::Ordering::Less {
                best = b;
            }
        }
        best
    }
}

/// A polynomial observable valued in the coefficient space: one rational
/// polynomial per coefficient coordinate, over the canonical model's
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyObservable {
    vars: usize,
    components: Vec<BTreeMap<Mono, Rat>>,
}

impl PolyObservable {
    pub fn zero(vars: usize, dim_v: usize) -> Self {
        PolyObservable {
            vars,
            components: vec![BTreeMap::new(); dim_v],
        }
    }

    pub fn dim_v(&self) -> usize {
        self.components.len()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn set_term(&mut self, component: usize, mono: Vec<u8>, coeff: Rat) {
        assert_eq!(mono.len(), self.vars);
        if coeff.is_zero() {
            self.components[component].remove(&Mono(mono));
        } else {
            self.components[component].insert(Mono(mono), coeff);
        }
    }

    /// Affine observable: constant value plus a constant differential with
    /// rows indexed by the coefficient coordinate.
    pub fn affine(vars: usize, value: &[Rat], differential: &Mat<Rat>) -> Self {
        assert_eq!(differential.ncols(), vars);
        assert_eq!(differential.nrows(), value.len());
        let mut out = PolyObservable::zero(vars, value.len());
        for (l, v) in value.iter().enumerate() {
            out.set_term(l, vec![0; vars], v.clone());
        }
        for l in 0..value.len() {
            for j in 0..vars {
                let c = differential.get(l, j).clone();
                if !c.is_zero() {
                    let mut m = vec![0; vars];
                    m[j] = 1;
                    out.set_term(l, m, c);
                }
            }
        }
        out
    }

    /// Constant observable with the given coefficient-space value.
    pub fn constant(vars: usize, value: &[Rat]) -> Self {
        let ell = value.len();
        Self::affine(vars, value, &Mat::zeros(ell, vars))
    }

    fn component_q(&self, l: usize) -> CPoly {
        let mut p = CPoly::zero(self.vars);
        for (m, c) in &self.components[l] {
            let q = Q128::from_rat(c).expect("observable coefficient fits in 128 bits");
            p.add_term(m.clone(), CQ128::real(q));
        }
        p
    }

    /// Differential as a matrix of polynomials: row `l`, column `j` is the
    /// `j`-th partial of component `l`.
    fn differential_q(&self) -> Vec<Vec<CPoly>> {
        (0..self.dim_v())
            .map(|l| {
                let p = self.component_q(l);
                (0..self.vars).map(|j| p.derivative(j)).collect()
            })
            .collect()
    }
}

/// A section of the trivial rank-`r` bundle with polynomial coefficients.
pub type Section = Vec<CPoly>;

/// First-order operator `L_X + sum_g m_g A_g`: a Lie derivative along a
/// polynomial vector field plus matrix multiplication by a polynomial
/// combination of the module generators.
struct FirstOrderOp {
    vars: usize,
    field: Vec<CPoly>,
    mult: Vec<CPoly>,
    gens: Vec<Vec<Vec<CQ128>>>,
}

impl FirstOrderOp {
    fn apply(&self, s: &Section) -> Section {
        let rank = s.len();
        let mut out: Section = vec![CPoly::zero(self.vars); rank];
        for (c, out_c) in out.iter_mut().enumerate() {
            // Transport term: sum_a X_a * d/dx_a.
            for (a, xa) in self.field.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                let d = s[c].derivative(a);
                if !d.is_zero() {
                    *out_c = out_c.add(&xa.mul(&d));
                }
            }
            // Multiplication term: sum_g m_g * (A_g s)_c.
            for (g, mg) in self.mult.iter().enumerate() {
                if mg.is_zero() {
                    continue;
                }
                let mut fiber = CPoly::zero(self.vars);
                for (cp, s_cp) in s.iter().enumerate() {
                    let coef = self.gens[g][c][cp];
                    if coef.is_zero() || s_cp.is_zero() {
                        continue;
                    }
                    fiber = fiber.add(&s_cp.scale(coef));
                }
                if !fiber.is_zero() {
                    *out_c = out_c.add(&mg.mul(&fiber));
                }
            }
        }
        out
    }
}

fn convert_generators(rep: &AbelianRep) -> Result<Vec<Vec<Vec<CQ128>>>, OperatorError> {
    let Some(exact) = rep.exact_generators() else {
        return Err(OperatorError::ExactGeneratorsRequired);
    };
    let mut out = Vec::with_capacity(exact.len());
    for g in exact {
        let r = g.nrows();
        let mut m = vec![vec![CQ128::ZERO; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let z: &CRat = g.get(i, j);
                *entry = CQ128::new(
                    Q128::from_rat(&z.re).expect("generator entry fits in 128 bits"),
                    Q128::from_rat(&z.im).expect("generator entry fits in 128 bits"),
                );
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Solves for the Hamiltonian vector field of a polynomial observable on the
/// canonical model, one monomial at a time: the conditions read
/// `G_l X = (df_l)^T` simultaneously over all components.
pub fn polynomial_hamiltonian_field(
    f: &PolyObservable,
    model: &CanonicalModel,
) -> Result<Vec<CPoly>, OperatorError> {
    let n = model.coord_count();
    let ell = model.dim_v;
    if f.dim_v() != ell {
        return Err(OperatorError::DimensionMismatch {
            expected: ell,
            found: f.dim_v(),
        });
    }
    assert_eq!(f.vars(), n, "observable over wrong coordinate count");
    let df = f.differential_q();
    // Collect every monomial appearing in the differential.
    let mut monos: std::collections::BTreeSet<Mono> = std::collections::BTreeSet::new();
    for row in &df {
        for p in row {
            for (m, _) in p.terms() {
                monos.insert(m.clone());
            }
        }
    }
    let stacked = {
        let mut s = model.space.component(0).clone();
        for l in 1..ell {
            s = s.vstack(model.space.component(l));
        }
        s
    };
    let mut field = vec![CPoly::zero(n); n];
    for mono in monos {
        // Real and imaginary parts solve independently over the rationals;
        // observable coefficients are real, so only the real part appears.
        let mut rhs = Vec::with_capacity(ell * n);
        for row in df.iter() {
            for p in row {
                let c = p
                    .terms()
                    .find(|(m, _)| **m == mono)
                    .map(|(_, c)| *c)
                    .unwrap_or(CQ128::ZERO);
                debug_assert!(c.im.is_zero());
                rhs.push(c.re.to_rat());
            }
        }
        match stacked.solve(&rhs) {
            Some(x) => {
                for (j, value) in x.into_iter().enumerate() {
                    if !value.is_zero() {
                        field[j].add_term(
                            mono.clone(),
                            CQ128::real(Q128::from_rat(&value).expect("solution fits")),
                        );
                    }
                }
            }
            None => {
                // Find the first component prefix that is already infeasible.
                for upto in 1..=ell {
                    let mut m = model.space.component(0).clone();
                    for l in 1..upto {
                        m = m.vstack(model.space.component(l));
                    }
                    if m.solve(&rhs[..upto * n]).is_none() {
                        return Err(OperatorError::NotHamiltonian { component: upto - 1 });
                    }
                }
                return Err(OperatorError::NotHamiltonian { component: ell - 1 });
            }
        }
    }
    Ok(field)
}

/// The bracket of two polynomial observables with known Hamiltonian fields:
/// componentwise `X_f^T G_l X_h` as a polynomial observable.
fn poly_bracket(
    xf: &[CPoly],
    xh: &[CPoly],
    model: &CanonicalModel,
) -> PolyObservable {
    let n = model.coord_count();
    let ell = model.dim_v;
    let mut out = PolyObservable::zero(n, ell);
    for l in 0..ell {
        let g = model.space.component(l);
        let mut acc = CPoly::zero(n);
        for i in 0..n {
            if xf[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let coef = g.get(i, j);
                if coef.is_zero() || xh[j].is_zero() {
                    continue;
                }
                let c = CQ128::real(Q128::from_rat(coef).expect("form entry fits"));
                acc = acc.add(&xf[i].mul(&xh[j]).scale(c));
            }
        }
        for (m, c) in acc.terms() {
            debug_assert!(c.im.is_zero());
            out.set_term(l, m.0.clone(), c.re.to_rat());
        }
    }
    out
}

/// Tautological one-form coefficients along a polynomial field: component `g`
/// is `sum_a x_{p(a,g)} X_a`, the `Hom`-coordinate pairing with the base part
/// of the field.
fn tautological_pairing(field: &[CPoly], model: &CanonicalModel) -> Vec<CPoly> {
    let n = model.coord_count();
    (0..model.dim_v)
        .map(|g| {
            let mut acc = CPoly::zero(n);
            for a in 0..model.dim_q {
                if field[a].is_zero() {
                    continue;
                }
                let coord = CPoly::coordinate(n, model.p_index(a, g));
                acc = acc.add(&coord.mul(&field[a]));
            }
            acc
        })
        .collect()
}

fn build_prequantum_op(
    f: &PolyObservable,
    model: &CanonicalModel,
    gens: &[Vec<Vec<CQ128>>],
) -> Result<FirstOrderOp, OperatorError> {
    let n = model.coord_count();
    let field = polynomial_hamiltonian_field(f, model)?;
    let theta = tautological_pairing(&field, model);
    // Multiplication coefficients: theta(X_f)_g + f_g.
    let mult: Vec<CPoly> = (0..model.dim_v)
        .map(|g| theta[g].add(&f.component_q(g)))
        .collect();
    Ok(FirstOrderOp {
        vars: n,
        field,
        mult,
        gens: gens.to_vec(),
    })
}

fn build_connection_op(
    field: &[CPoly],
    model: &CanonicalModel,
    gens: &[Vec<Vec<CQ128>>],
) -> FirstOrderOp {
    let theta = tautological_pairing(field, model);
    FirstOrderOp {
        vars: model.coord_count(),
        field: field.to_vec(),
        mult: theta,
        gens: gens.to_vec(),
    }
}

fn enumerate_monomials(vars: usize, cap: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u8; vars];
    fn rec(out: &mut Vec<Mono>, current: &mut Vec<u8>, pos: usize, remaining: usize) {
        if pos == current.len() {
            out.push(Mono(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[pos] = e as u8;
            rec(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, cap);
    out.sort();
    out
}

/// Result of the commutator verification.
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    /// Largest defect coefficient magnitude over the whole section basis.
    pub defect_norm: Rat,
    /// Number of basis sections checked.
    pub sections_checked: usize,
}

/// Realizes the prequantum operators of two polynomial observables on
/// polynomial sections up to the degree cap and measures the defect
/// `[Q_f, Q_h] - Q_{{f,h}}`, which must vanish identically for the exact
/// model. Compositions are computed without truncation; a nonzero defect that
/// leaves the capped space is reported as an overflow instead of being cut.
pub fn prequantum_commutator_check(
    f: &PolyObservable,
    h: &PolyObservable,
    rep: &AbelianRep,
    model: &CanonicalModel,
    degree_cap: usize,
) -> Result<CommutatorReport, OperatorError> {
    if rep.dim_v() != model.dim_v {
        return Err(OperatorError::DimensionMismatch {
            expected: model.dim_v,
            found: rep.dim_v(),
        });
    }
    let gens = convert_generators(rep)?;
    let op_f = build_prequantum_op(f, model, &gens)?;
    let op_h = build_prequantum_op(h, model, &gens)?;
    let bracket = poly_bracket(&op_f.field, &op_h.field, model);
    let op_bracket = build_prequantum_op(&bracket, model, &gens)?;

    let n = model.coord_count();
    let rank = rep.rank();
    let monos = enumerate_monomials(n, degree_cap);
    let mut defect_norm = Q128::ZERO;
    let mut sections = 0usize;
    for mono in &monos {
        for c in 0..rank {
            let mut s: Section = vec![CPoly::zero(n); rank];
            s[c].add_term(mono.clone(), CQ128::ONE);
            let fh = op_f.apply(&op_h.apply(&s));
            let hf = op_h.apply(&op_f.apply(&s));
            let qb = op_bracket.apply(&s);
            sections += 1;
            for comp in 0..rank {
                let defect = fh[comp].sub(&hf[comp]).sub(&qb[comp]);
                if defect.is_zero() {
                    continue;
                }
                let deg = defect.degree();
                if deg > degree_cap {
                    return Err(OperatorError::DegreeOverflow {
                        found: deg,
                        cap: degree_cap,
                    });
                }
                let bound = defect.max_coeff_bound();
                if defect_norm.cmp_abs(bound) == std::cmp::Ordering::Less {
                    defect_norm = bound;
                }
            }
        }
    }
    Ok(CommutatorReport {
        defect_norm: defect_norm.to_rat(),
        sections_checked: sections,
    })
}

/// Verifies the curvature composition identity
/// `[Q_f, Q_h] = [nabla_f, nabla_h] + 2 A_{{f,h}}` on the capped section
/// basis; returns the largest deviation (zero on the exact model).
pub fn curvature_composition_defect(
    f: &PolyObservable,
    h: &PolyObservable,
    rep: &AbelianRep,
    model: &CanonicalModel,
    degree_cap: usize,
) -> Result<Rat, OperatorError> {
    let gens = convert_generators(rep)?;
    let op_f = build_prequantum_op(f, model, &gens)?;
    let op_h = build_prequantum_op(h, model, &gens)?;
    let nab_f = build_connection_op(&op_f.field, model, &gens);
    let nab_h = build_connection_op(&op_h.field, model, &gens);
    let bracket = poly_bracket(&op_f.field, &op_h.field, model);

    let n = model.coord_count();
    let rank = rep.rank();
    // Tensorial action by the bracket value: multiplication only.
    let a_bracket = FirstOrderOp {
        vars: n,
        field: vec![CPoly::zero(n); n],
        mult: (0..model.dim_v).map(|g| bracket.component_q(g)).collect(),
        gens: gens.clone(),
    };
    let monos = enumerate_monomials(n, degree_cap);
    let mut worst = Q128::ZERO;
    for mono in &monos {
        for c in 0..rank {
            let mut s: Section = vec![CPoly::zero(n); rank];
            s[c].add_term(mono.clone(), CQ128::ONE);
            let lhs: Vec<CPoly> = {
                let fh = op_f.apply(&op_h.apply(&s));
                let hf = op_h.apply(&op_f.apply(&s));
                fh.iter().zip(&hf).map(|(a, b)| a.sub(b)).collect()
            };
            let rhs: Vec<CPoly> = {
                let nfh = nab_f.apply(&nab_h.apply(&s));
                let nhf = nab_h.apply(&nab_f.apply(&s));
                let ab = a_bracket.apply(&s);
                nfh.iter()
                    .zip(&nhf)
                    .zip(&ab)
                    .map(|((a, b), t)| a.sub(b).add(&t.scale(CQ128::real(Q128::from_int(2)))))
                    .collect()
            };
            for comp in 0..rank {
                let d = lhs[comp].sub(&rhs[comp]);
                let bound = d.max_coeff_bound();
                if worst.cmp_abs(bound) == std::cmp::Ordering::Less {
                    worst = bound;
                }
            }
        }
    }
    Ok(worst.to_rat())
}
