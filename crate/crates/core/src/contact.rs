//! Contact forms for index-one type-A seaweeds.
//!
//! An index-one seaweed has a meander made of exactly two paths or exactly
//! one cycle, and each shape has its own construction:
//!
//! * **Two paths.** The regular form `F̄` read off the directed meander has
//!   kernel spanned by the semisimple element
//!   `H = |V(P₂)|·Σ_{P₁} e_ii - |V(P₁)|·Σ_{P₂} e_jj`. Adding a diagonal dual
//!   `H_i*` for an `i` where `e_ii - e_{i+1,i+1}` never appears as a bracket
//!   keeps `B_φ = B_F̄`. The bordered determinant factors as
//!   `φ(H)²·det φ(C')`, so `i` is taken to be the first such index with
//!   `φ(H) ≠ 0`.
//! * **One cycle.** All parts are even. Splitting an end part `s ≥ 4` into
//!   `1|s-2|1` removes one meander edge and leaves a Frobenius seaweed `g'`;
//!   the removed matrix units span a Heisenberg algebra with center `e_{q,p}`.
//!   Then `F̄' + k·e_{q,p}*` is contact for all but finitely many `k`.
//!   `sl(2)` is handled directly.
//!
//! Every synthesis returns a [`ContactCertificate`] that can be re-checked
//! from scratch by [`verify_certificate`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{self, rat, RatMatrix, Rational};
use crate::liealg::{volume_matches_bhat, CoeffForm, LieAlgebra, LieError, WEDGE_MAX_DIM};
use crate::meander::{build_meander, components, index, orient, Component};
use crate::seaweed::{
    dual_matrix_to_coeffs, materialize, standard_basis, BasisLabel, Composition, SeaweedError,
    SeaweedSpec,
};

/// Default bound for the `k` search in the one-cycle case.
pub const DEFAULT_K_MAX: usize = 64;

/// Largest algebra dimension for which verification also expands the volume
/// form in the exterior algebra.
pub const VOLUME_CROSS_CHECK_MAX_DIM: usize = 11;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContactError {
    #[error("seaweed has index {index}, not 1")]
    NotIndexOne { index: usize },
    #[error("expected a meander with {expected}, found {cycles} cycle(s) and {paths} path(s)")]
    WrongCase {
        expected: &'static str,
        cycles: usize,
        paths: usize,
    },
    #[error("seaweed algebra has even dimension {0}")]
    EvenDimension(usize),
    #[error(
        "no diagonal e_ii - e_(i+1)(i+1) avoids the commutator table with a dual nonzero on H"
    )]
    NoFreeDiagonal,
    #[error("kernel of B_F is not spanned by H: {0}")]
    KernelClaim(String),
    #[error("bordered determinant vanished for {0}; the construction should never allow this")]
    TheoremViolation(String),
    #[error("single-cycle seaweed {0} with n > 2 has no end part of size >= 4")]
    NoEndPart(String),
    #[error("reduced seaweed {spec} has index {index}, expected a Frobenius seaweed")]
    ReducedNotFrobenius { spec: String, index: usize },
    #[error("no k in 1..={k_max} gives a contact form (sampled determinants: {samples:?})")]
    KSearchExhausted { k_max: usize, samples: Vec<String> },
    #[error("embedding mismatch: {0}")]
    EmbeddingMismatch(String),
    #[error("form is not Frobenius on the first summand")]
    NotFrobenius,
    #[error("form is not contact on the second summand")]
    NotContact,
    #[error(transparent)]
    Seaweed(#[from] SeaweedError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A functional on `n×n` matrices, `φ(M) = Σ W_ij M_ij`, stored as `W`.
/// Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    dual: RatMatrix,
}

impl OneForm {
    pub fn zero(n: usize) -> Self {
        Self {
            dual: RatMatrix::zeros(n, n),
        }
    }

    pub fn from_dual(dual: RatMatrix) -> Self {
        assert!(dual.is_square(), "dual matrix must be square");
        Self { dual }
    }

    pub fn n(&self) -> usize {
        self.dual.rows()
    }

    pub fn dual(&self) -> &RatMatrix {
        &self.dual
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.dual.get(i - 1, j - 1)
    }

    /// Adds `c·e_{i,j}*`.
    pub fn add_unit(&mut self, i: usize, j: usize, c: Rational) {
        let v = self.get(i, j) + c;
        self.dual.set(i - 1, j - 1, v);
    }

    /// Adds `H_i* = Σ_{k≤i} e_{k,k}*`, the dual of `e_ii - e_{i+1,i+1}` with
    /// respect to the standard diagonal basis.
    pub fn add_diagonal_dual(&mut self, i: usize) {
        for k in 1..=i {
            self.add_unit(k, k, Rational::one());
        }
    }

    /// Nonzero entries `((i, j), W_ij)` in row-major order.
    pub fn terms(&self) -> Vec<((usize, usize), Rational)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push(((i, j), v.clone()));
                }
            }
        }
        out
    }

    /// Coordinates in the dual basis of `basis`.
    pub fn coefficients(&self, basis: &[BasisLabel]) -> CoeffForm {
        dual_matrix_to_coeffs(basis, &self.dual)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            if k > 0 {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            } else if negative {
                write!(f, "-")?;
            }
            let mag = if negative { -c.clone() } else { c.clone() };
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "e_{{{i},{j}}}^*")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct OneFormJson {
    n: usize,
    entries: BTreeMap<String, String>,
}

impl Serialize for OneForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OneFormJson {
            n: self.n(),
            entries: self
                .terms()
                .into_iter()
                .map(|((i, j), v)| (format!("{i},{j}"), exact::format_rational(&v)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OneForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let json = OneFormJson::deserialize(d)?;
        let mut form = OneForm::zero(json.n);
        for (key, value) in &json.entries {
            let (i, j) = key
                .split_once(',')
                .and_then(|(i, j)| {
                    Some((
                        i.trim().parse::<usize>().ok()?,
                        j.trim().parse::<usize>().ok()?,
                    ))
                })
                .ok_or_else(|| D::Error::custom(format!("bad entry key {key:?}")))?;
            if i == 0 || j == 0 || i > json.n || j > json.n {
                return Err(D::Error::custom(format!(
                    "entry ({i},{j}) outside 1..={}",
                    json.n
                )));
            }
            let v = exact::parse_rational(value).map_err(D::Error::custom)?;
            form.add_unit(i, j, v);
        }
        Ok(form)
    }
}

/// `F̄ = Σ e_{i,j}*` over the directed meander edges `(v_i, v_j)`.
pub fn regular_form_from_meander(spec: &SeaweedSpec) -> OneForm {
    let directed = orient(&build_meander(spec));
    let mut form = OneForm::zero(spec.n());
    for &(i, j) in directed.edges() {
        form.add_unit(i, j, Rational::one());
    }
    form
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    TwoPaths,
    OneCycle,
    Sl2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Top,
    Bottom,
}

/// The end part split in the one-cycle construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndPart {
    pub side: Side,
    /// Position of the part within its composition (0-based).
    pub part_index: usize,
    /// First and last vertex of the block.
    pub start: usize,
    pub end: usize,
}

/// Case-specific witnesses recorded in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Auxiliary {
    TwoPaths {
        /// Diagonal of `H`.
        #[serde(with = "exact::rational_vec")]
        h: Vec<Rational>,
        /// Position of `H` in the basis.
        h_position: usize,
        /// `i` such that `H_i*` was added.
        diagonal_index: usize,
        paths: Vec<Vec<usize>>,
    },
    OneCycle {
        part: EndPart,
        /// The removed meander edge, in its directed orientation.
        removed_edge: (usize, usize),
        reduced_spec: SeaweedSpec,
        /// Matrix-unit generators `(i, j)` of the Heisenberg complement.
        heisenberg_generators: Vec<(usize, usize)>,
        center: (usize, usize),
    },
    Sl2,
}

/// A self-contained, re-checkable contact witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactCertificate {
    pub spec: SeaweedSpec,
    pub case: CaseTag,
    pub basis: Vec<BasisLabel>,
    #[serde(rename = "dual_matrix")]
    pub form: OneForm,
    #[serde(with = "exact::rational_opt")]
    pub k: Option<Rational>,
    #[serde(with = "exact::rational_string")]
    pub det: Rational,
    pub auxiliary: Auxiliary,
}

impl ContactCertificate {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn check_odd(spec: &SeaweedSpec) -> Result<(), ContactError> {
    let dim = spec.dimension();
    if dim.is_multiple_of(2) {
        return Err(ContactError::EvenDimension(dim));
    }
    Ok(())
}

/// Indices `i` such that `(i, i+1)` and `(i+1, i)` are not both admissible,
/// in increasing order. For such `i`, `e_ii - e_{i+1,i+1}` never shows up in
/// a bracket and `H_i*` vanishes on every commutator.
pub fn free_diagonal_indices(spec: &SeaweedSpec) -> Vec<usize> {
    (1..spec.n())
        .filter(|&i| {
            !(spec.admissible(i, i + 1).unwrap_or(false)
                && spec.admissible(i + 1, i).unwrap_or(false))
        })
        .collect()
}

/// The first free index `i` with `H_i*(H) = h_1 + ... + h_i ≠ 0`.
pub fn free_diagonal_index(spec: &SeaweedSpec, h: &[Rational]) -> Option<usize> {
    free_diagonal_indices(spec)
        .into_iter()
        .find(|&i| !h[..i].iter().sum::<Rational>().is_zero())
}

/// `H` for a two-path meander, given the two vertex sets.
pub fn two_path_element(n: usize, first: &[usize], second: &[usize]) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); n];
    for &v in first {
        h[v - 1] = rat(second.len() as i64);
    }
    for &v in second {
        h[v - 1] = rat(-(first.len() as i64));
    }
    h
}

/// The standard basis with `e_11 - e_22` replaced by `H`.
pub fn basis_with_h(spec: &SeaweedSpec, h: Vec<Rational>) -> Vec<BasisLabel> {
    let mut basis = standard_basis(spec);
    basis[0] = BasisLabel::CustomDiagonal {
        name: "H".to_string(),
        diagonal: h,
    };
    basis
}

/// Two-path construction: `φ = F̄ + H_i*` in the basis `ℬ_H`.
pub fn case1_contact(spec: &SeaweedSpec) -> Result<ContactCertificate, ContactError> {
    let report = components(&build_meander(spec));
    if !report.is_two_paths() {
        return Err(ContactError::WrongCase {
            expected: "exactly two paths",
            cycles: report.cycles,
            paths: report.paths,
        });
    }
    check_odd(spec)?;
    let n = spec.n();
    let paths: Vec<Vec<usize>> = report
        .components
        .iter()
        .map(|c| c.vertices().to_vec())
        .collect();
    let h = two_path_element(n, &paths[0], &paths[1]);
    let basis = basis_with_h(spec, h.clone());
    let algebra = materialize(spec, &basis)?;

    let f_bar = regular_form_from_meander(spec);
    let kernel = exact::kernel_basis(&algebra.kirillov_matrix(&f_bar.coefficients(&basis))?);
    let h_coords = CoeffForm::unit(algebra.dim(), 0).coefficients;
    if kernel.len() != 1 || !exact::proportional(&kernel[0], &h_coords) {
        return Err(ContactError::KernelClaim(format!(
            "{spec}: kernel has dimension {}",
            kernel.len()
        )));
    }

    let i = free_diagonal_index(spec, &h).ok_or(ContactError::NoFreeDiagonal)?;
    let mut form = f_bar;
    form.add_diagonal_dual(i);
    let det = algebra.bhat_det(&form.coefficients(&basis))?;
    if det.is_zero() {
        return Err(ContactError::TheoremViolation(spec.to_string()));
    }
    Ok(ContactCertificate {
        spec: spec.clone(),
        case: CaseTag::TwoPaths,
        basis,
        form,
        k: None,
        det,
        auxiliary: Auxiliary::TwoPaths {
            h,
            h_position: 0,
            diagonal_index: i,
            paths,
        },
    })
}

/// Data of the one-cycle split `g = g' ⊕ h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSplit {
    pub part: EndPart,
    pub removed_edge: (usize, usize),
    pub reduced_spec: SeaweedSpec,
    pub heisenberg_generators: Vec<(usize, usize)>,
    pub center: (usize, usize),
    /// Regular (Frobenius) form of `g'`, read off its directed meander.
    pub frobenius_form: OneForm,
}

fn split_part(c: &Composition, idx: usize) -> Composition {
    let mut parts = c.parts().to_vec();
    let s = parts[idx];
    parts.splice(idx..=idx, [1, s - 2, 1]);
    Composition::new(parts).expect("split parts stay positive")
}

/// Picks the first end part of size at least 4 in the order `a_1, a_m, b_1,
/// b_t` and splits it.
pub fn cycle_split(spec: &SeaweedSpec) -> Result<CycleSplit, ContactError> {
    let candidates = [
        (Side::Top, 0),
        (Side::Top, spec.top().parts().len() - 1),
        (Side::Bottom, 0),
        (Side::Bottom, spec.bottom().parts().len() - 1),
    ];
    let (side, part_index) = candidates
        .into_iter()
        .find(|&(side, idx)| {
            let c = match side {
                Side::Top => spec.top(),
                Side::Bottom => spec.bottom(),
            };
            c.parts()[idx] >= 4
        })
        .ok_or_else(|| ContactError::NoEndPart(spec.to_string()))?;
    let comp = match side {
        Side::Top => spec.top(),
        Side::Bottom => spec.bottom(),
    };
    let (p, q) = comp.blocks()[part_index];
    let reduced_spec = match side {
        Side::Top => SeaweedSpec::new(split_part(spec.top(), part_index), spec.bottom().clone())?,
        Side::Bottom => {
            SeaweedSpec::new(spec.top().clone(), split_part(spec.bottom(), part_index))?
        }
    };
    let reduced_index = index(&reduced_spec);
    if reduced_index != 0 {
        return Err(ContactError::ReducedNotFrobenius {
            spec: reduced_spec.to_string(),
            index: reduced_index,
        });
    }
    // Top parts own the lower triangle: generators e_{i,p} and e_{q,j}.
    // Bottom parts are the transpose.
    let lower: Vec<(usize, usize)> = (p + 1..=q)
        .map(|i| (i, p))
        .chain((p + 1..q).map(|j| (q, j)))
        .collect();
    let (heisenberg_generators, center, removed_edge) = match side {
        Side::Top => (lower, (q, p), (q, p)),
        Side::Bottom => (
            lower.into_iter().map(|(i, j)| (j, i)).collect(),
            (p, q),
            (p, q),
        ),
    };
    Ok(CycleSplit {
        part: EndPart {
            side,
            part_index,
            start: p,
            end: q,
        },
        removed_edge,
        frobenius_form: regular_form_from_meander(&reduced_spec),
        reduced_spec,
        heisenberg_generators,
        center,
    })
}

fn sl2_certificate(spec: &SeaweedSpec) -> Result<ContactCertificate, ContactError> {
    let basis = standard_basis(spec);
    let algebra = materialize(spec, &basis)?;
    let mut form = OneForm::zero(2);
    form.add_unit(1, 2, Rational::one());
    form.add_unit(2, 1, Rational::one());
    let det = algebra.bhat_det(&form.coefficients(&basis))?;
    if det.is_zero() {
        return Err(ContactError::TheoremViolation(spec.to_string()));
    }
    Ok(ContactCertificate {
        spec: spec.clone(),
        case: CaseTag::Sl2,
        basis,
        form,
        k: None,
        det,
        auxiliary: Auxiliary::Sl2,
    })
}

/// One-cycle construction: `φ = F̄' + k·e_{q,p}*` for the smallest
/// `k ∈ 1..=k_max` with nonzero bordered determinant.
pub fn case2_contact(spec: &SeaweedSpec, k_max: usize) -> Result<ContactCertificate, ContactError> {
    let report = components(&build_meander(spec));
    if !report.is_one_cycle() {
        return Err(ContactError::WrongCase {
            expected: "exactly one cycle",
            cycles: report.cycles,
            paths: report.paths,
        });
    }
    check_odd(spec)?;
    if spec.n() == 2 {
        return sl2_certificate(spec);
    }
    let split = cycle_split(spec)?;
    let basis = standard_basis(spec);
    let algebra = materialize(spec, &basis)?;
    let (ci, cj) = split.center;
    let mut samples = Vec::new();
    for k in 1..=k_max {
        let k = rat(k as i64);
        let mut form = split.frobenius_form.clone();
        form.add_unit(ci, cj, k.clone());
        let det = algebra.bhat_det(&form.coefficients(&basis))?;
        if !det.is_zero() {
            return Ok(ContactCertificate {
                spec: spec.clone(),
                case: CaseTag::OneCycle,
                basis,
                form,
                k: Some(k),
                det,
                auxiliary: Auxiliary::OneCycle {
                    part: split.part,
                    removed_edge: split.removed_edge,
                    reduced_spec: split.reduced_spec,
                    heisenberg_generators: split.heisenberg_generators,
                    center: split.center,
                },
            });
        }
        samples.push(exact::format_rational(&det));
    }
    Err(ContactError::KSearchExhausted { k_max, samples })
}

/// Computes the index and dispatches on the meander shape.
pub fn synthesize_contact(spec: &SeaweedSpec) -> Result<ContactCertificate, ContactError> {
    synthesize_contact_with(spec, DEFAULT_K_MAX)
}

pub fn synthesize_contact_with(
    spec: &SeaweedSpec,
    k_max: usize,
) -> Result<ContactCertificate, ContactError> {
    let report = components(&build_meander(spec));
    let index = report.index();
    if index != 1 {
        return Err(ContactError::NotIndexOne { index });
    }
    if report.is_two_paths() {
        case1_contact(spec)
    } else {
        case2_contact(spec, k_max)
    }
}

/// Outcome of re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Bordered determinant recomputed from spec, basis and form.
    pub recomputed_det: Option<Rational>,
    pub det_matches: bool,
    /// `det = φ(H)²·det φ(C')` for two-path certificates.
    pub factorization: Option<bool>,
    /// Exterior-algebra cross-check `det = (vol / k!)²` for small algebras.
    pub volume_check: Option<bool>,
    pub problems: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Re-verifies a certificate from scratch; see [`verify_report`].
pub fn verify_certificate(cert: &ContactCertificate) -> bool {
    verify_report(cert).passed()
}

pub fn verify_report(cert: &ContactCertificate) -> VerifyReport {
    let mut report = VerifyReport {
        recomputed_det: None,
        det_matches: false,
        factorization: None,
        volume_check: None,
        problems: Vec::new(),
    };
    if cert.form.n() != cert.spec.n() {
        report.problems.push(format!(
            "dual matrix is {0}x{0}, seaweed has n = {1}",
            cert.form.n(),
            cert.spec.n()
        ));
        return report;
    }
    let algebra = match materialize(&cert.spec, &cert.basis) {
        Ok(a) => a,
        Err(e) => {
            report.problems.push(format!("basis rejected: {e}"));
            return report;
        }
    };
    let phi = cert.form.coefficients(&cert.basis);
    let det = match algebra.bhat_det(&phi) {
        Ok(d) => d,
        Err(e) => {
            report
                .problems
                .push(format!("cannot evaluate determinant: {e}"));
            return report;
        }
    };
    report.det_matches = det == cert.det;
    if !report.det_matches {
        report.problems.push(format!(
            "recorded det {} differs from recomputed {}",
            cert.det, det
        ));
    }
    if det.is_zero() {
        report.problems.push("bordered determinant is zero".into());
    }

    if let Auxiliary::TwoPaths { h_position, h, .. } = &cert.auxiliary {
        let ok = match cert.basis.get(*h_position) {
            Some(BasisLabel::CustomDiagonal { diagonal, .. }) if diagonal == h => {
                let b = algebra
                    .kirillov_matrix(&phi)
                    .expect("form has algebra dimension");
                let reduced = exact::det(&b.without_row_col(*h_position)).expect("square");
                let phi_h = &phi.coefficients[*h_position];
                phi_h * phi_h * reduced == det
            }
            _ => false,
        };
        report.factorization = Some(ok);
        if !ok {
            report.problems.push("det ≠ φ(H)²·det φ(C')".into());
        }
    }

    if algebra.dim() <= VOLUME_CROSS_CHECK_MAX_DIM && algebra.dim() <= WEDGE_MAX_DIM {
        let ok = matches!(volume_matches_bhat(&algebra, &phi), Ok((_, _, true)));
        report.volume_check = Some(ok);
        if !ok {
            report
                .problems
                .push("exterior-algebra volume disagrees with det".into());
        }
    }
    report.recomputed_det = Some(det);
    report
}

/// A vector-space splitting `g = g₁ ⊕ g₂` of an ambient algebra into
/// basis-index sets, with a Frobenius form on `g₁` and a contact form on `g₂`
/// (both written in ambient coordinates).
#[derive(Debug, Clone)]
pub struct SplitForms {
    pub ambient: LieAlgebra,
    pub frobenius_indices: Vec<usize>,
    pub contact_indices: Vec<usize>,
    pub frobenius_form: CoeffForm,
    pub contact_form: CoeffForm,
}

impl SplitForms {
    /// The one-cycle split of a seaweed: `g'` and the Heisenberg complement,
    /// with `F̄'` and `e_{q,p}*`.
    pub fn from_cycle_split(spec: &SeaweedSpec) -> Result<Self, ContactError> {
        let split = cycle_split(spec)?;
        let basis = standard_basis(spec);
        let ambient = materialize(spec, &basis)?;
        let heisenberg: Vec<usize> = split
            .heisenberg_generators
            .iter()
            .map(|&(i, j)| {
                basis
                    .iter()
                    .position(|l| *l == BasisLabel::MatrixUnit { i, j })
                    .ok_or_else(|| {
                        ContactError::EmbeddingMismatch(format!("e_{{{i},{j}}} not in basis"))
                    })
            })
            .collect::<Result<_, _>>()?;
        let frobenius_indices = (0..basis.len())
            .filter(|k| !heisenberg.contains(k))
            .collect();
        let mut center = OneForm::zero(spec.n());
        center.add_unit(split.center.0, split.center.1, Rational::one());
        Ok(Self {
            frobenius_form: split.frobenius_form.coefficients(&basis),
            contact_form: center.coefficients(&basis),
            ambient,
            frobenius_indices,
            contact_indices: heisenberg,
        })
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            frobenius_form: self.frobenius_form.scaled(c),
            contact_form: self.contact_form.scaled(c),
            ..self.clone()
        }
    }
}

fn restrict_form(phi: &CoeffForm, indices: &[usize]) -> CoeffForm {
    CoeffForm::new(
        indices
            .iter()
            .map(|&i| phi.coefficients[i].clone())
            .collect(),
    )
}

/// For each sample `k`, whether `φ₁ + k·φ₂` is contact on the ambient algebra.
/// Checks first that the split is a genuine direct sum of subalgebras, that
/// `φ₁` is Frobenius on `g₁` and `φ₂` is contact on `g₂`.
pub fn frobenius_plus_contact_combine(
    split: &SplitForms,
    k_samples: &[Rational],
) -> Result<Vec<bool>, ContactError> {
    let dim = split.ambient.dim();
    if split.frobenius_form.dim() != dim || split.contact_form.dim() != dim {
        return Err(ContactError::EmbeddingMismatch(
            "form length differs from ambient dimension".into(),
        ));
    }
    let mut seen = vec![false; dim];
    for &i in split.frobenius_indices.iter().chain(&split.contact_indices) {
        if i >= dim || std::mem::replace(&mut seen[i], true) {
            return Err(ContactError::EmbeddingMismatch(format!(
                "index {i} repeated or out of range"
            )));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(ContactError::EmbeddingMismatch(
            "summands do not cover the ambient basis".into(),
        ));
    }
    let sub = |idx: &[usize]| {
        split
            .ambient
            .restrict(idx)
            .map_err(|e| ContactError::EmbeddingMismatch(e.to_string()))
    };
    let g1 = sub(&split.frobenius_indices)?;
    let g2 = sub(&split.contact_indices)?;

    let phi1 = restrict_form(&split.frobenius_form, &split.frobenius_indices);
    if g1.dim() % 2 != 0
        || exact::det(&g1.kirillov_matrix(&phi1)?)
            .map_err(LieError::from)?
            .is_zero()
    {
        return Err(ContactError::NotFrobenius);
    }
    let phi2 = restrict_form(&split.contact_form, &split.contact_indices);
    if g2.dim() % 2 == 0 || g2.bhat_det(&phi2)?.is_zero() {
        return Err(ContactError::NotContact);
    }

    k_samples
        .iter()
        .map(|k| {
            let phi = split.frobenius_form.plus_multiple(k, &split.contact_form);
            Ok(!split.ambient.bhat_det(&phi)?.is_zero())
        })
        .collect()
}

/// Vertex sets of the two paths, when the meander has that shape.
pub fn two_paths(spec: &SeaweedSpec) -> Option<(Vec<usize>, Vec<usize>)> {
    let report = components(&build_meander(spec));
    match report.components.as_slice() {
        [Component::Path(a), Component::Path(b)] => Some((a.clone(), b.clone())),
        _ => None,
    }
}
