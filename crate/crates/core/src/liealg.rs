//! Finite-dimensional Lie algebras over ℚ given by structure constants.
//!
//! Hosts the Kirillov form `B_φ(x, y) = φ([x, y])`, the randomized index
//! oracle, the bordered determinant contact test and an independent
//! exterior-algebra expansion of `φ ∧ (dφ)^k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, rat, RatMatrix, Rational};

/// Half-width of the integer range the randomized routines sample from.
pub const SAMPLE_RANGE: i64 = 1_000_000;

/// Largest dimension accepted by [`LieAlgebra::wedge_volume_coefficient`].
pub const WEDGE_MAX_DIM: usize = 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("vector has length {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operation needs an odd-dimensional algebra, got dimension {0}")]
    EvenDimension(usize),
    #[error("dimension {dim} exceeds the limit {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
    #[error("subspace is not closed under the bracket: [E_{0}, E_{1}] leaves it")]
    NotClosed(usize, usize),
    #[error(transparent)]
    Exact(#[from] exact::ExactError),
}

/// Sparse coefficient vector: `(basis index, coefficient)` with nonzero
/// coefficients and strictly increasing indices.
pub type SparseVec = Vec<(usize, Rational)>;

/// Lie algebra with a fixed ordered basis `E_1..E_dim` and exact structure
/// constants `[E_i, E_j] = Σ_k c_ij^k E_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
}

/// A linear functional given by its coordinates in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffForm {
    #[serde(with = "exact::rational_vec")]
    pub coefficients: Vec<Rational>,
}

impl CoeffForm {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        Self { coefficients }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rational::zero(); dim])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Single dual basis vector `E_k*`.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut f = Self::zero(dim);
        f.coefficients[k] = Rational::one();
        f
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    /// `self + k·other`; the lengths must agree.
    pub fn plus_multiple(&self, k: &Rational, other: &CoeffForm) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }

    pub fn evaluate(&self, v: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// Outcome of the randomized contact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContactVerdict {
    /// A form with nonzero bordered determinant.
    ContactWitness { form: CoeffForm, det: Rational },
    /// No sampled form was contact. This is a probabilistic statement only.
    ProbablyNotContact { trials: usize },
}

impl ContactVerdict {
    pub fn is_contact(&self) -> bool {
        matches!(self, ContactVerdict::ContactWitness { .. })
    }
}

fn add_into(acc: &mut BTreeMap<usize, Rational>, k: usize, v: Rational) {
    if v.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Rational::zero);
    *e += v;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn to_sparse(acc: BTreeMap<usize, Rational>) -> SparseVec {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl LieAlgebra {
    /// Builds an algebra from the brackets `[E_i, E_j]` for `i < j`, produced
    /// by `bracket(i, j)`. The remaining entries follow by antisymmetry.
    pub fn from_upper_brackets<F>(labels: Vec<String>, mut bracket: F) -> Result<Self, LieError>
    where
        F: FnMut(usize, usize) -> Result<SparseVec, LieError>,
    {
        let dim = labels.len();
        let mut table = vec![SparseVec::new(); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let mut acc = BTreeMap::new();
                for (k, c) in bracket(i, j)? {
                    if k >= dim {
                        return Err(LieError::IndexOutOfRange { index: k, dim });
                    }
                    add_into(&mut acc, k, c);
                }
                let v = to_sparse(acc);
                table[j * dim + i] = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
                table[i * dim + j] = v;
            }
        }
        Ok(Self { labels, table })
    }

    /// Builds an algebra from an explicit list of nonzero brackets. Each
    /// unordered pair may appear at most once (either orientation).
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: &[(usize, usize, SparseVec)],
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        let mut upper: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                if v.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(LieError::InvalidStructure(format!(
                        "[E_{i}, E_{i}] must vanish"
                    )));
                }
                continue;
            }
            let (key, vec) = if i < j {
                ((i, j), v.clone())
            } else {
                ((j, i), v.iter().map(|(k, c)| (*k, -c.clone())).collect())
            };
            if upper.insert(key, vec).is_some() {
                return Err(LieError::InvalidStructure(format!(
                    "bracket of E_{} and E_{} given twice",
                    key.0, key.1
                )));
            }
        }
        Self::from_upper_brackets(labels, |i, j| {
            Ok(upper.get(&(i, j)).cloned().unwrap_or_default())
        })
    }

    /// Labels `E_1..E_dim`.
    pub fn default_labels(dim: usize) -> Vec<String> {
        (1..=dim).map(|i| format!("E_{i}")).collect()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coefficients of `[E_i, E_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure table.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xi * yj;
                for (k, c) in self.structure(i, j) {
                    out[*k] += &coeff * c;
                }
            }
        }
        Ok(out)
    }

    fn bracket_sparse(&self, x: &SparseVec, j: usize) -> BTreeMap<usize, Rational> {
        let mut acc = BTreeMap::new();
        for (i, xi) in x {
            for (k, c) in self.structure(*i, j) {
                add_into(&mut acc, *k, xi * c);
            }
        }
        acc
    }

    /// Basis triples `(i, j, k)`, `i < j < k`, violating the Jacobi identity.
    pub fn jacobi_check(&self) -> Vec<(usize, usize, usize)> {
        let dim = self.dim();
        let mut bad = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    // [[Ei,Ej],Ek] + [[Ej,Ek],Ei] + [[Ek,Ei],Ej]
                    let mut total = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (idx, v) in self.bracket_sparse(self.structure(a, b), c) {
                            add_into(&mut total, idx, v);
                        }
                    }
                    if !total.is_empty() {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    fn check_form(&self, phi: &CoeffForm) -> Result<(), LieError> {
        self.check_len(&phi.coefficients)
    }

    /// The matrix of `B_φ`: entry `(i, j)` is `φ([E_i, E_j])`.
    pub fn kirillov_matrix(&self, phi: &CoeffForm) -> Result<RatMatrix, LieError> {
        self.check_form(phi)?;
        let dim = self.dim();
        let mut m = RatMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = self
                    .structure(i, j)
                    .iter()
                    .fold(Rational::zero(), |acc, (k, c)| {
                        acc + c * &phi.coefficients[*k]
                    });
                if !v.is_zero() {
                    m.set(j, i, -v.clone());
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// `dim ker B_φ`.
    pub fn kernel_dim(&self, phi: &CoeffForm) -> Result<usize, LieError> {
        Ok(self.dim() - exact::rank(&self.kirillov_matrix(phi)?))
    }

    /// Randomized index: minimum of `dim ker B_φ` over `trials` forms with
    /// integer coefficients drawn uniformly from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
    ///
    /// Always an upper bound on the index; regular forms are Zariski-dense, so
    /// it is tight with overwhelming probability. Sampling stops early once
    /// the kernel dimension reaches `dim mod 2`, which no form can beat.
    pub fn index_randomized(&self, trials: usize, seed: u64) -> usize {
        let dim = self.dim();
        let floor = dim % 2;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = dim;
        for _ in 0..trials.max(1) {
            if best == floor {
                break;
            }
            let phi = random_form(&mut rng, dim);
            let k = self
                .kernel_dim(&phi)
                .expect("sampled form has the algebra's dimension");
            best = best.min(k);
        }
        best
    }

    /// The bordered matrix `[[0, φᵀ], [-φ, B_φ]]` of size `dim + 1`.
    pub fn bhat_matrix(&self, phi: &CoeffForm) -> Result<RatMatrix, LieError> {
        let b = self.kirillov_matrix(phi)?;
        let dim = self.dim();
        let mut m = RatMatrix::zeros(dim + 1, dim + 1);
        for i in 0..dim {
            let x = &phi.coefficients[i];
            if !x.is_zero() {
                m.set(0, i + 1, x.clone());
                m.set(i + 1, 0, -x.clone());
            }
            for j in 0..dim {
                let v = b.get(i, j);
                if !v.is_zero() {
                    m.set(i + 1, j + 1, v.clone());
                }
            }
        }
        Ok(m)
    }

    /// Determinant of the bordered Kirillov matrix; nonzero exactly when `φ`
    /// is a contact form.
    pub fn bhat_det(&self, phi: &CoeffForm) -> Result<Rational, LieError> {
        if self.dim().is_multiple_of(2) {
            return Err(LieError::EvenDimension(self.dim()));
        }
        Ok(exact::det(&self.bhat_matrix(phi)?)?)
    }

    /// Coefficient of `E_1* ∧ … ∧ E_dim*` in `φ ∧ (dφ)^k`, `dim = 2k + 1`,
    /// by direct expansion in the exterior algebra with
    /// `dφ(E_i, E_j) = -φ([E_i, E_j])`.
    ///
    /// This is `k!·Pf` of the bordered matrix with `B_φ` negated, so its
    /// square divided by `(k!)^2` is `bhat_det`; see [`volume_matches_bhat`].
    pub fn wedge_volume_coefficient(&self, phi: &CoeffForm) -> Result<Rational, LieError> {
        self.check_form(phi)?;
        let dim = self.dim();
        if dim.is_multiple_of(2) {
            return Err(LieError::EvenDimension(dim));
        }
        if dim > WEDGE_MAX_DIM {
            return Err(LieError::TooLarge {
                dim,
                max: WEDGE_MAX_DIM,
            });
        }
        let b = self.kirillov_matrix(phi)?;
        // dφ = Σ_{i<j} -φ([E_i,E_j]) E_i*∧E_j*
        let mut two_form: Vec<(u32, Rational)> = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = b.get(i, j);
                if !v.is_zero() {
                    two_form.push(((1u32 << i) | (1u32 << j), -v.clone()));
                }
            }
        }
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (i, x) in phi.coefficients.iter().enumerate() {
            if !x.is_zero() {
                acc.insert(1u32 << i, x.clone());
            }
        }
        for _ in 0..dim / 2 {
            acc = wedge(&acc, &two_form);
            if acc.is_empty() {
                break;
            }
        }
        let full = (1u32 << dim) - 1;
        Ok(acc.remove(&full).unwrap_or_else(Rational::zero))
    }

    /// Samples forms until one has a nonzero bordered determinant.
    pub fn contact_search_randomized(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<ContactVerdict, LieError> {
        if self.dim().is_multiple_of(2) {
            return Err(LieError::EvenDimension(self.dim()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let phi = random_form(&mut rng, self.dim());
            let det = self.bhat_det(&phi)?;
            if !det.is_zero() {
                return Ok(ContactVerdict::ContactWitness { form: phi, det });
            }
        }
        Ok(ContactVerdict::ProbablyNotContact { trials })
    }

    /// Re-expresses the algebra in the basis whose `a`-th vector is column `a`
    /// of `p` (in the old coordinates).
    pub fn change_basis(&self, p: &RatMatrix) -> Result<LieAlgebra, LieError> {
        let dim = self.dim();
        if p.rows() != dim || p.cols() != dim {
            return Err(LieError::DimensionMismatch {
                expected: dim,
                found: p.rows(),
            });
        }
        let p_inv = exact::inverse(p)?;
        let cols: Vec<Vec<Rational>> = (0..dim)
            .map(|a| (0..dim).map(|i| p.get(i, a).clone()).collect())
            .collect();
        Self::from_upper_brackets(Self::default_labels(dim), |a, b| {
            let old = self.bracket(&cols[a], &cols[b])?;
            let new = p_inv.mul_vec(&old)?;
            Ok(new
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect())
        })
    }

    /// The subalgebra spanned by the listed basis vectors, in the listed order.
    pub fn restrict(&self, indices: &[usize]) -> Result<LieAlgebra, LieError> {
        let dim = self.dim();
        let mut position = vec![None; dim];
        for (new, &old) in indices.iter().enumerate() {
            if old >= dim {
                return Err(LieError::IndexOutOfRange { index: old, dim });
            }
            if position[old].is_some() {
                return Err(LieError::InvalidStructure(format!(
                    "index {old} listed twice"
                )));
            }
            position[old] = Some(new);
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_upper_brackets(labels, |a, b| {
            let (i, j) = (indices[a], indices[b]);
            self.structure(i, j)
                .iter()
                .map(|(k, c)| match position[*k] {
                    Some(p) => Ok((p, c.clone())),
                    None => Err(LieError::NotClosed(i, j)),
                })
                .collect()
        })
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        let dim = self.dim();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = self.structure(i, j);
                if !v.is_empty() {
                    brackets.push(BracketJson {
                        i,
                        j,
                        result: v
                            .iter()
                            .map(|(k, c)| TermJson {
                                k: *k,
                                c: c.clone(),
                            })
                            .collect(),
                    });
                }
            }
        }
        LieAlgebraJson {
            dim,
            labels: self.labels.clone(),
            brackets,
        }
    }

    pub fn from_json(json: &LieAlgebraJson) -> Result<Self, LieError> {
        if json.labels.len() != json.dim {
            return Err(LieError::DimensionMismatch {
                expected: json.dim,
                found: json.labels.len(),
            });
        }
        let brackets: Vec<(usize, usize, SparseVec)> = json
            .brackets
            .iter()
            .map(|b| {
                (
                    b.i,
                    b.j,
                    b.result.iter().map(|t| (t.k, t.c.clone())).collect(),
                )
            })
            .collect();
        Self::from_brackets(json.labels.clone(), &brackets)
    }

    /// Abelian algebra of dimension `d`.
    pub fn abelian(d: usize) -> Self {
        Self::from_brackets(Self::default_labels(d), &[]).expect("abelian algebra is valid")
    }

    /// `sl(2)` in the basis `(h, e12, e21)`.
    pub fn sl2() -> Self {
        let labels = vec![
            "h".to_string(),
            "e_{1,2}".to_string(),
            "e_{2,1}".to_string(),
        ];
        Self::from_brackets(
            labels,
            &[
                (0, 1, vec![(1, rat(2))]),
                (0, 2, vec![(2, rat(-2))]),
                (1, 2, vec![(0, rat(1))]),
            ],
        )
        .expect("sl(2) is valid")
    }

    /// Heisenberg algebra of dimension `2m + 1` with basis
    /// `x_1..x_m, y_1..y_m, z` and `[x_i, y_i] = z`.
    pub fn heisenberg(m: usize) -> Self {
        let mut labels: Vec<String> = (1..=m).map(|i| format!("x_{i}")).collect();
        labels.extend((1..=m).map(|i| format!("y_{i}")));
        labels.push("z".to_string());
        let brackets: Vec<(usize, usize, SparseVec)> =
            (0..m).map(|i| (i, m + i, vec![(2 * m, rat(1))])).collect();
        Self::from_brackets(labels, &brackets).expect("Heisenberg algebra is valid")
    }

    /// Three-dimensional algebra with `[e1, e2] = e2`, `[e1, e3] = e3`: index
    /// one but not contact (the rows of `e2` and `e3` in the bordered matrix
    /// are always proportional).
    pub fn index_one_non_contact() -> Self {
        Self::from_brackets(
            vec!["e_1".to_string(), "e_2".to_string(), "e_3".to_string()],
            &[(0, 1, vec![(1, rat(1))]), (0, 2, vec![(2, rat(1))])],
        )
        .expect("valid structure")
    }
}

/// Wedges every monomial of `form` with the 2-form given as
/// `(mask of {i, j}, coefficient of E_i*∧E_j*)`, `i < j`.
fn wedge(form: &BTreeMap<u32, Rational>, two_form: &[(u32, Rational)]) -> BTreeMap<u32, Rational> {
    let mut out = BTreeMap::new();
    for (&mask, a) in form {
        for (pair, b) in two_form {
            if mask & pair != 0 {
                continue;
            }
            let sign_flips = reorder_sign(mask, *pair);
            let v = a * b;
            add_into_mask(&mut out, mask | pair, if sign_flips { -v } else { v });
        }
    }
    out
}

fn add_into_mask(acc: &mut BTreeMap<u32, Rational>, mask: u32, v: Rational) {
    let e = acc.entry(mask).or_insert_with(Rational::zero);
    *e += v;
    if e.is_zero() {
        acc.remove(&mask);
    }
}

/// Parity of the permutation sorting the concatenation of the sorted index
/// sets `left` then `right`: the number of pairs `a ∈ left`, `b ∈ right` with
/// `a > b`.
fn reorder_sign(left: u32, right: u32) -> bool {
    let mut inversions = 0u32;
    let mut r = right;
    while r != 0 {
        let b = r.trailing_zeros();
        r &= r - 1;
        inversions += (left >> (b + 1)).count_ones();
    }
    inversions % 2 == 1
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize) -> CoeffForm {
    CoeffForm::new(
        (0..dim)
            .map(|_| {
                Rational::from_integer(BigInt::from(rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
            })
            .collect(),
    )
}

/// `count` seeded forms with coefficients uniform in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub fn sample_forms(dim: usize, count: usize, seed: u64) -> Vec<CoeffForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_form(&mut rng, dim)).collect()
}

/// `k!` for the volume normalization.
fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * rat(i as i64))
}

/// Checks `bhat_det(φ) = (c / k!)^2` where `c` is the exterior-algebra volume
/// coefficient and `dim = 2k + 1`. Returns `(det, coefficient, holds)`.
pub fn volume_matches_bhat(
    algebra: &LieAlgebra,
    phi: &CoeffForm,
) -> Result<(Rational, Rational, bool), LieError> {
    let det = algebra.bhat_det(phi)?;
    let coeff = algebra.wedge_volume_coefficient(phi)?;
    let normalized = &coeff / factorial(algebra.dim() / 2);
    let holds = &normalized * &normalized == det;
    Ok((det, coeff, holds))
}

/// JSON form of a [`LieAlgebra`]: only nonzero brackets `[E_i, E_j]`, `i < j`,
/// with 0-based basis indices and `"p/q"` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub result: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: usize,
    #[serde(with = "exact::rational_string")]
    pub c: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(dim: usize, k: usize) -> Vec<Rational> {
        CoeffForm::unit(dim, k).coefficients
    }

    #[test]
    fn bracket_examples() {
        let g = LieAlgebra::index_one_non_contact();
        assert_eq!(g.bracket(&unit(3, 0), &unit(3, 1)).unwrap(), unit(3, 1));
        let x = vec![rat(3), rat(-1), rat(2)];
        assert!(g.bracket(&x, &x).unwrap().iter().all(Zero::is_zero));

        let sl2 = LieAlgebra::sl2();
        assert_eq!(sl2.bracket(&unit(3, 1), &unit(3, 2)).unwrap(), unit(3, 0));
        assert!(matches!(
            sl2.bracket(&unit(2, 0), &unit(3, 1)),
            Err(LieError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn jacobi_passes_and_catches_corruption() {
        assert!(LieAlgebra::index_one_non_contact()
            .jacobi_check()
            .is_empty());
        assert!(LieAlgebra::sl2().jacobi_check().is_empty());
        assert!(LieAlgebra::heisenberg(2).jacobi_check().is_empty());
        // [E1,E2]=E3, [E2,E3]=E1, [E1,E3]=E1. Jacobi sum for (1,2,3):
        // [[E1,E2],E3] + [[E2,E3],E1] + [[E3,E1],E2] = 0 + 0 + [-E1,E2] = -E3.
        let bad = LieAlgebra::from_brackets(
            LieAlgebra::default_labels(3),
            &[
                (0, 1, vec![(2, rat(1))]),
                (1, 2, vec![(0, rat(1))]),
                (0, 2, vec![(0, rat(1))]),
            ],
        )
        .unwrap();
        assert_eq!(bad.jacobi_check(), vec![(0, 1, 2)]);
    }

    #[test]
    fn kirillov_examples() {
        let g = LieAlgebra::index_one_non_contact();
        assert_eq!(
            g.kirillov_matrix(&CoeffForm::zero(3)).unwrap(),
            RatMatrix::zeros(3, 3)
        );
        let b = g.kirillov_matrix(&CoeffForm::from_i64(&[0, 1, 1])).unwrap();
        assert_eq!(
            b,
            RatMatrix::from_i64_rows(&[vec![0, 1, 1], vec![-1, 0, 0], vec![-1, 0, 0]])
        );
        assert_eq!(exact::rank(&b), 2);
        let sl2 = LieAlgebra::sl2();
        let b = sl2
            .kirillov_matrix(&CoeffForm::from_i64(&[0, 1, 1]))
            .unwrap();
        assert_eq!(
            b,
            RatMatrix::from_i64_rows(&[vec![0, 2, -2], vec![-2, 0, 0], vec![2, 0, 0]])
        );
    }

    #[test]
    fn randomized_index_examples() {
        assert_eq!(LieAlgebra::abelian(4).index_randomized(25, 1), 4);
        assert_eq!(
            LieAlgebra::index_one_non_contact().index_randomized(25, 1),
            1
        );
        assert_eq!(LieAlgebra::sl2().index_randomized(25, 1), 1);
        assert_eq!(LieAlgebra::heisenberg(3).index_randomized(25, 1), 1);
    }

    #[test]
    fn bhat_det_examples() {
        let sl2 = LieAlgebra::sl2();
        assert_eq!(
            sl2.bhat_det(&CoeffForm::from_i64(&[0, 1, 1])).unwrap(),
            rat(16)
        );
        assert_eq!(
            LieAlgebra::abelian(2).bhat_det(&CoeffForm::zero(2)),
            Err(LieError::EvenDimension(2))
        );
        let h = LieAlgebra::heisenberg(2);
        assert!(!h.bhat_det(&CoeffForm::unit(5, 4)).unwrap().is_zero());
    }

    #[test]
    fn wedge_sl2_by_hand() {
        // φ = e12* + e21*, B_φ(h,e12) = 2, B_φ(h,e21) = -2, B_φ(e12,e21) = 0.
        // dφ = -2 E1*∧E2* + 2 E1*∧E3*; φ∧dφ = (E2* + E3*)∧dφ
        //    = -2 E3*∧E1*∧E2* + 2 E2*∧E1*∧E3* = -4 E1*∧E2*∧E3*.
        let sl2 = LieAlgebra::sl2();
        let phi = CoeffForm::from_i64(&[0, 1, 1]);
        assert_eq!(sl2.wedge_volume_coefficient(&phi).unwrap(), rat(-4));
        assert_eq!(
            sl2.wedge_volume_coefficient(&CoeffForm::zero(3)).unwrap(),
            rat(0)
        );
        let (det, coeff, holds) = volume_matches_bhat(&sl2, &phi).unwrap();
        assert_eq!((det, coeff, holds), (rat(16), rat(-4), true));
    }

    #[test]
    fn wedge_rejects_bad_dims() {
        assert_eq!(
            LieAlgebra::abelian(4).wedge_volume_coefficient(&CoeffForm::zero(4)),
            Err(LieError::EvenDimension(4))
        );
        assert_eq!(
            LieAlgebra::abelian(17).wedge_volume_coefficient(&CoeffForm::zero(17)),
            Err(LieError::TooLarge { dim: 17, max: 15 })
        );
    }

    #[test]
    fn contact_search_examples() {
        let v = LieAlgebra::index_one_non_contact()
            .contact_search_randomized(200, 7)
            .unwrap();
        assert_eq!(v, ContactVerdict::ProbablyNotContact { trials: 200 });
        assert!(LieAlgebra::sl2()
            .contact_search_randomized(1, 7)
            .unwrap()
            .is_contact());
        assert!(LieAlgebra::heisenberg(2)
            .contact_search_randomized(5, 7)
            .unwrap()
            .is_contact());
        assert!(LieAlgebra::abelian(2)
            .contact_search_randomized(5, 7)
            .is_err());
    }

    #[test]
    fn restrict_detects_escape() {
        let sl2 = LieAlgebra::sl2();
        let borel = sl2.restrict(&[0, 1]).unwrap();
        assert_eq!(borel.dim(), 2);
        assert_eq!(borel.structure(0, 1), &vec![(1, rat(2))]);
        assert_eq!(sl2.restrict(&[1, 2]), Err(LieError::NotClosed(1, 2)));
    }

    #[test]
    fn json_round_trip() {
        let h = LieAlgebra::heisenberg(2);
        let text = serde_json::to_string(&h.to_json()).unwrap();
        let back: LieAlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LieAlgebra::from_json(&back).unwrap(), h);
        let phi = CoeffForm::new(vec![exact::ratio(1, 3), rat(-2)]);
        let text = serde_json::to_string(&phi).unwrap();
        assert_eq!(text, r#"{"coefficients":["1/3","-2/1"]}"#);
        assert_eq!(serde_json::from_str::<CoeffForm>(&text).unwrap(), phi);
    }

    #[test]
    fn duplicate_bracket_rejected() {
        let r = LieAlgebra::from_brackets(
            LieAlgebra::default_labels(2),
            &[(0, 1, vec![(1, rat(1))]), (1, 0, vec![(1, rat(-1))])],
        );
        assert!(matches!(r, Err(LieError::InvalidStructure(_))));
    }
}
