//! Type-A seaweed algebras in standard form.
//!
//! A seaweed `p_n^A (a_1|…|a_m)/(b_1|…|b_t)` is spanned by the traceless
//! diagonal, the strictly lower-triangular entries inside the diagonal blocks
//! of the top composition `(a)`, and the strictly upper-triangular entries
//! inside the blocks of the bottom composition `(b)`. Indices are 1-based
//! throughout, matching the matrix-unit notation `e_{i,j}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, RatMatrix, Rational};
use crate::liealg::{CoeffForm, LieAlgebra, LieError, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeaweedError {
    #[error("cannot parse seaweed {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("top sums to {top}, bottom sums to {bottom}")]
    SizeMismatch { top: usize, bottom: usize },
    #[error("location ({i}, {j}) is outside 1..={n}")]
    OutOfRange { i: usize, j: usize, n: usize },
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("bracket of {0} and {1} leaves the span of the basis")]
    BracketEscapes(String, String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Ordered list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, SeaweedError> {
        if parts.contains(&0) {
            return Err(SeaweedError::ZeroPart);
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Inclusive 1-based vertex ranges of the blocks.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut start = 1;
        self.parts
            .iter()
            .map(|&p| {
                let block = (start, start + p - 1);
                start += p;
                block
            })
            .collect()
    }

    /// Block number (0-based) of every vertex `1..=n`, stored at index `v - 1`.
    fn block_ids(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, &p)| std::iter::repeat_n(b, p))
            .collect()
    }

    pub fn reversed(&self) -> Self {
        Self {
            parts: self.parts.iter().rev().copied().collect(),
        }
    }

    /// Every composition of `n`, in lexicographic order of the parts.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in 1..=rest {
                prefix.push(p);
                rec(rest - p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = SeaweedError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl FromStr for Composition {
    type Err = SeaweedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| SeaweedError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let parts = s
            .split('|')
            .map(|p| {
                let p: String = p.chars().filter(|c| !c.is_whitespace()).collect();
                p.parse::<usize>()
                    .map_err(|_| err("parts must be positive integers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts).map_err(|_| err("parts must be positive integers"))
    }
}

/// A seaweed `p_n^A top/bottom`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct SeaweedSpec {
    top: Composition,
    bottom: Composition,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    n: usize,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl TryFrom<SpecJson> for SeaweedSpec {
    type Error = SeaweedError;

    fn try_from(j: SpecJson) -> Result<Self, Self::Error> {
        let spec = SeaweedSpec::new(Composition::new(j.top)?, Composition::new(j.bottom)?)?;
        if spec.n() != j.n {
            return Err(SeaweedError::SizeMismatch {
                top: spec.n(),
                bottom: j.n,
            });
        }
        Ok(spec)
    }
}

impl From<SeaweedSpec> for SpecJson {
    fn from(s: SeaweedSpec) -> Self {
        SpecJson {
            n: s.n(),
            top: s.top.parts,
            bottom: s.bottom.parts,
        }
    }
}

impl SeaweedSpec {
    pub fn new(top: Composition, bottom: Composition) -> Result<Self, SeaweedError> {
        if top.n() != bottom.n() || top.n() == 0 {
            return Err(SeaweedError::SizeMismatch {
                top: top.n(),
                bottom: bottom.n(),
            });
        }
        Ok(Self { top, bottom })
    }

    /// Convenience constructor from part slices. Panics on invalid input.
    pub fn from_parts(top: &[usize], bottom: &[usize]) -> Self {
        Self::new(
            Composition::new(top.to_vec()).expect("positive parts"),
            Composition::new(bottom.to_vec()).expect("positive parts"),
        )
        .expect("compositions of the same n")
    }

    pub fn n(&self) -> usize {
        self.top.n()
    }

    pub fn top(&self) -> &Composition {
        &self.top
    }

    pub fn bottom(&self) -> &Composition {
        &self.bottom
    }

    /// The seaweed with top and bottom exchanged (transpose of this one).
    pub fn swapped(&self) -> Self {
        Self {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// Whether `(i, j)` may be nonzero in the seaweed.
    pub fn admissible(&self, i: usize, j: usize) -> Result<bool, SeaweedError> {
        let n = self.n();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(SeaweedError::OutOfRange { i, j, n });
        }
        Ok(self.admissible_unchecked(i, j))
    }

    fn admissible_unchecked(&self, i: usize, j: usize) -> bool {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => true,
            Greater => same_block(&self.top, i, j),
            Less => same_block(&self.bottom, i, j),
        }
    }

    /// Admissible off-diagonal locations in row-major order.
    pub fn admissible_units(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let top = self.top.block_ids();
        let bottom = self.bottom.block_ids();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => false,
                    std::cmp::Ordering::Greater => top[i - 1] == top[j - 1],
                    std::cmp::Ordering::Less => bottom[i - 1] == bottom[j - 1],
                };
                if ok {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `(n - 1) + Σ a_i(a_i - 1)/2 + Σ b_j(b_j - 1)/2`.
    pub fn dimension(&self) -> usize {
        let tri = |c: &Composition| c.parts.iter().map(|a| a * (a - 1) / 2).sum::<usize>();
        self.n() - 1 + tri(&self.top) + tri(&self.bottom)
    }

    /// Every seaweed of size `n`, ordered by top then bottom composition.
    pub fn all(n: usize) -> Vec<SeaweedSpec> {
        let comps = Composition::all(n);
        comps
            .iter()
            .flat_map(|t| {
                comps.iter().map(move |b| SeaweedSpec {
                    top: t.clone(),
                    bottom: b.clone(),
                })
            })
            .collect()
    }
}

fn same_block(c: &Composition, i: usize, j: usize) -> bool {
    let (lo, hi) = (i.min(j), i.max(j));
    c.blocks().iter().any(|&(s, e)| s <= lo && hi <= e)
}

impl fmt::Display for SeaweedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.top, self.bottom)
    }
}

impl FromStr for SeaweedSpec {
    type Err = SeaweedError;

    /// `"a1|a2|… / b1|b2|…"`, whitespace-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| SeaweedError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let (top, bottom) = s
            .split_once('/')
            .ok_or_else(|| err("expected \"top / bottom\""))?;
        if bottom.contains('/') {
            return Err(err("more than one '/'"));
        }
        let top: Composition = top.parse().map_err(|_| err("bad top composition"))?;
        let bottom: Composition = bottom.parse().map_err(|_| err("bad bottom composition"))?;
        if top.n() != bottom.n() {
            return Err(err(&format!(
                "top sums to {}, bottom sums to {}",
                top.n(),
                bottom.n()
            )));
        }
        SeaweedSpec::new(top, bottom)
    }
}

/// One element of an ordered seaweed basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisLabel {
    /// `e_{i,j}`, `i ≠ j`.
    MatrixUnit { i: usize, j: usize },
    /// `e_{i,i} - e_{i+1,i+1}`.
    DiagDiff { i: usize },
    /// A named traceless diagonal matrix.
    CustomDiagonal {
        name: String,
        #[serde(with = "exact::rational_vec")]
        diagonal: Vec<Rational>,
    },
}

impl BasisLabel {
    pub fn name(&self) -> String {
        match self {
            BasisLabel::MatrixUnit { i, j } => format!("e_{{{i},{j}}}"),
            BasisLabel::DiagDiff { i } => format!("e_{{{i},{i}}}-e_{{{},{}}}", i + 1, i + 1),
            BasisLabel::CustomDiagonal { name, .. } => name.clone(),
        }
    }

    /// Diagonal entries for diagonal labels, `None` for matrix units.
    pub fn diagonal(&self, n: usize) -> Option<Vec<Rational>> {
        match self {
            BasisLabel::MatrixUnit { .. } => None,
            BasisLabel::DiagDiff { i } => {
                let mut d = vec![Rational::zero(); n];
                d[i - 1] = Rational::one();
                d[*i] = -Rational::one();
                Some(d)
            }
            BasisLabel::CustomDiagonal { diagonal, .. } => Some(diagonal.clone()),
        }
    }
}

/// `n - 1` diagonal differences, then admissible units in row-major order.
pub fn standard_basis(spec: &SeaweedSpec) -> Vec<BasisLabel> {
    (1..spec.n())
        .map(|i| BasisLabel::DiagDiff { i })
        .chain(
            spec.admissible_units()
                .into_iter()
                .map(|(i, j)| BasisLabel::MatrixUnit { i, j }),
        )
        .collect()
}

/// Sparse `n×n` matrix: diagonal part plus off-diagonal entries.
struct MatrixElem {
    diagonal: Vec<Rational>,
    off: Vec<((usize, usize), Rational)>,
}

/// Validated basis with lookup tables for re-expressing brackets.
struct BasisIndex<'a> {
    n: usize,
    labels: &'a [BasisLabel],
    unit_pos: HashMap<(usize, usize), usize>,
    diag_pos: Vec<usize>,
    diag_values: Vec<Vec<Rational>>,
    /// Maps prefix-sum coordinates of a traceless diagonal to coordinates in
    /// the diagonal sub-basis.
    diag_solver: RatMatrix,
}

impl<'a> BasisIndex<'a> {
    fn new(spec: &SeaweedSpec, labels: &'a [BasisLabel]) -> Result<Self, SeaweedError> {
        let n = spec.n();
        let mut unit_pos = HashMap::new();
        let mut diag_pos = Vec::new();
        let mut diag_values = Vec::new();
        for (pos, label) in labels.iter().enumerate() {
            match label {
                BasisLabel::MatrixUnit { i, j } => {
                    let (i, j) = (*i, *j);
                    if i == j {
                        return Err(SeaweedError::InvalidBasis(format!(
                            "e_{{{i},{i}}} is not traceless"
                        )));
                    }
                    if !spec.admissible(i, j)? {
                        return Err(SeaweedError::InvalidBasis(format!(
                            "({i}, {j}) is not an admissible location"
                        )));
                    }
                    if unit_pos.insert((i, j), pos).is_some() {
                        return Err(SeaweedError::InvalidBasis(format!(
                            "e_{{{i},{j}}} listed twice"
                        )));
                    }
                }
                BasisLabel::DiagDiff { i } => {
                    if *i == 0 || *i >= n {
                        return Err(SeaweedError::InvalidBasis(format!(
                            "diagonal index {i} out of range"
                        )));
                    }
                    diag_pos.push(pos);
                    diag_values.push(label.diagonal(n).expect("diagonal label"));
                }
                BasisLabel::CustomDiagonal { name, diagonal } => {
                    if diagonal.len() != n {
                        return Err(SeaweedError::InvalidBasis(format!(
                            "{name} has {} diagonal entries, expected {n}",
                            diagonal.len()
                        )));
                    }
                    if !diagonal
                        .iter()
                        .fold(Rational::zero(), |a, b| a + b)
                        .is_zero()
                    {
                        return Err(SeaweedError::InvalidBasis(format!(
                            "{name} is not traceless"
                        )));
                    }
                    diag_pos.push(pos);
                    diag_values.push(diagonal.clone());
                }
            }
        }
        let expected_units = spec.admissible_units().len();
        if unit_pos.len() != expected_units {
            return Err(SeaweedError::InvalidBasis(format!(
                "{} matrix units given, the seaweed has {expected_units}",
                unit_pos.len()
            )));
        }
        if diag_pos.len() != n - 1 {
            return Err(SeaweedError::InvalidBasis(format!(
                "{} diagonal elements given, expected {}",
                diag_pos.len(),
                n - 1
            )));
        }
        // Column r holds the prefix sums of diagonal element r.
        let mut coords = RatMatrix::zeros(n - 1, n - 1);
        for (r, d) in diag_values.iter().enumerate() {
            for (k, v) in prefix_sums(d).into_iter().enumerate() {
                coords.set(k, r, v);
            }
        }
        let diag_solver = exact::inverse(&coords).map_err(|_| {
            SeaweedError::InvalidBasis("diagonal elements do not span the Cartan".into())
        })?;
        Ok(Self {
            n,
            labels,
            unit_pos,
            diag_pos,
            diag_values,
            diag_solver,
        })
    }

    fn element(&self, pos: usize) -> MatrixElem {
        match &self.labels[pos] {
            BasisLabel::MatrixUnit { i, j } => MatrixElem {
                diagonal: vec![Rational::zero(); self.n],
                off: vec![((*i, *j), Rational::one())],
            },
            _ => {
                let r = self
                    .diag_pos
                    .iter()
                    .position(|&p| p == pos)
                    .expect("diagonal");
                MatrixElem {
                    diagonal: self.diag_values[r].clone(),
                    off: Vec::new(),
                }
            }
        }
    }

    /// Coordinates of a sparse matrix in this basis, or `None` when it leaves
    /// the span.
    fn coordinates(&self, m: &MatrixElem) -> Option<SparseVec> {
        let mut out = Vec::new();
        for ((i, j), v) in &m.off {
            if v.is_zero() {
                continue;
            }
            out.push((*self.unit_pos.get(&(*i, *j))?, v.clone()));
        }
        if m.diagonal.iter().any(|d| !d.is_zero()) {
            if !m
                .diagonal
                .iter()
                .fold(Rational::zero(), |a, b| a + b)
                .is_zero()
            {
                return None;
            }
            let sol = self
                .diag_solver
                .mul_vec(&prefix_sums(&m.diagonal))
                .expect("square solver");
            for (r, v) in sol.into_iter().enumerate() {
                if !v.is_zero() {
                    out.push((self.diag_pos[r], v));
                }
            }
        }
        out.sort_by_key(|(k, _)| *k);
        Some(out)
    }
}

/// `[Σ_{l≤k} d_l]_{k=1..n-1}`: coordinates of a traceless diagonal in the
/// `e_{k,k} - e_{k+1,k+1}` basis.
fn prefix_sums(d: &[Rational]) -> Vec<Rational> {
    let mut acc = Rational::zero();
    d.iter()
        .take(d.len().saturating_sub(1))
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect()
}

/// Commutator of two sparse matrices whose products stay sparse.
fn commutator(a: &MatrixElem, b: &MatrixElem) -> MatrixElem {
    let n = a.diagonal.len();
    let mut diagonal = vec![Rational::zero(); n];
    let mut off: HashMap<(usize, usize), Rational> = HashMap::new();
    let mut push = |i: usize, j: usize, v: Rational, diagonal: &mut Vec<Rational>| {
        if v.is_zero() {
            return;
        }
        if i == j {
            diagonal[i - 1] += v;
        } else {
            *off.entry((i, j)).or_insert_with(Rational::zero) += v;
        }
    };
    // [D, e_ij] = (d_i - d_j) e_ij
    for ((i, j), v) in &b.off {
        let c = &a.diagonal[i - 1] - &a.diagonal[j - 1];
        push(*i, *j, c * v, &mut diagonal);
    }
    for ((i, j), v) in &a.off {
        let c = &b.diagonal[j - 1] - &b.diagonal[i - 1];
        push(*i, *j, c * v, &mut diagonal);
    }
    // [e_ij, e_kl] = δ_jk e_il - δ_li e_kj
    for ((i, j), u) in &a.off {
        for ((k, l), v) in &b.off {
            if j == k {
                push(*i, *l, u * v, &mut diagonal);
            }
            if l == i {
                push(*k, *j, -(u * v), &mut diagonal);
            }
        }
    }
    let mut off: Vec<_> = off.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    off.sort_by_key(|(k, _)| *k);
    MatrixElem { diagonal, off }
}

/// Structure constants of the seaweed in the given ordered basis.
pub fn materialize(spec: &SeaweedSpec, basis: &[BasisLabel]) -> Result<LieAlgebra, SeaweedError> {
    let index = BasisIndex::new(spec, basis)?;
    let elems: Vec<MatrixElem> = (0..basis.len()).map(|p| index.element(p)).collect();
    let mut escaped = None;
    let labels = basis.iter().map(BasisLabel::name).collect();
    let algebra = LieAlgebra::from_upper_brackets(labels, |a, b| {
        let c = commutator(&elems[a], &elems[b]);
        match index.coordinates(&c) {
            Some(v) => Ok(v),
            None => {
                escaped = Some((a, b));
                Ok(Vec::new())
            }
        }
    })?;
    if let Some((a, b)) = escaped {
        return Err(SeaweedError::BracketEscapes(
            basis[a].name(),
            basis[b].name(),
        ));
    }
    Ok(algebra)
}

/// `materialize(spec, standard_basis(spec))`.
pub fn materialize_standard(spec: &SeaweedSpec) -> Result<LieAlgebra, SeaweedError> {
    materialize(spec, &standard_basis(spec))
}

/// Coordinates `x_k = φ(E_k)` of the functional `φ(M) = Σ W_ij M_ij`.
pub fn dual_matrix_to_coeffs(basis: &[BasisLabel], dual: &RatMatrix) -> CoeffForm {
    let n = dual.rows();
    CoeffForm::new(
        basis
            .iter()
            .map(|label| match label {
                BasisLabel::MatrixUnit { i, j } => dual.get(i - 1, j - 1).clone(),
                other => other
                    .diagonal(n)
                    .expect("diagonal label")
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (k, d)| acc + d * dual.get(k, k)),
            })
            .collect(),
    )
}
