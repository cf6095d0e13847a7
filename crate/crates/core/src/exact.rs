//! Exact rational linear algebra.
//!
//! Everything here works over ℚ with arbitrary-precision integers. The
//! determinant and rank routines clear denominators row by row and then run a
//! fraction-free (Bareiss) elimination over ℤ, so intermediate values stay
//! integral and bounded by the size of the minors they represent.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid rational literal {0:?}")]
    Parse(String),
}

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `"p/q"`, the wire form used in every JSON schema.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let err = || ExactError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Serde adapter for a single rational stored as a `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a vector of rationals stored as `"p/q"` strings.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for an optional rational.
pub mod rational_opt {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(format_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<Rational>,
    ) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from integer rows. Panics if the rows are ragged.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, rat(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.cols).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
            })
    }

    /// Matrix with row and column `k` deleted.
    pub fn without_row_col(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|&j| j != k).collect();
        let mut m = Self::zeros(keep.len(), keep_c.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep_c.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Rows scaled to integers, dropping the scale factors (rank-preserving).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| integer_row(self.row(i)).0).collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|r| r.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scales a row by the lcm of its denominators. Returns the integer row and
/// the multiplier used.
fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    (ints, lcm)
}

/// Picks the nonzero entry of smallest magnitude in column `col` among rows
/// `from..`; small pivots keep the fraction-free growth down.
fn pick_pivot(a: &[Vec<BigInt>], col: usize, from: usize) -> Option<usize> {
    (from..a.len())
        .filter(|&r| !a[r][col].is_zero())
        .min_by_key(|&r| a[r][col].bits())
}

/// Fraction-free forward elimination. Returns the pivot columns; `a` is left
/// in echelon form with the Bareiss invariant (the last pivot is a minor).
/// `sign` tracks row swaps.
fn bareiss_echelon(a: &mut [Vec<BigInt>], sign: &mut i8) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(a, c, r) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            *sign = -*sign;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = &row[j] * pivot;
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if v.is_zero() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact determinant via fraction-free elimination.
pub fn det(m: &RatMatrix) -> Result<Rational, ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let (row, s) = integer_row(m.row(i));
            scale *= s;
            row
        })
        .collect();
    let mut sign = 1i8;
    let pivots = bareiss_echelon(&mut a, &mut sign);
    if pivots.len() < n {
        return Ok(Rational::zero());
    }
    let mut d = a[n - 1][n - 1].clone();
    if sign < 0 {
        d = -d;
    }
    Ok(Rational::new(d, scale))
}

/// Exact rank over ℚ.
pub fn rank(m: &RatMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = m.integer_rows();
    let mut sign = 1i8;
    bareiss_echelon(&mut a, &mut sign).len()
}

/// Reduced row echelon form over ℚ. Returns the reduced matrix and its pivot
/// columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                if a.get(r, j).is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(r, f).clone();
            }
            v
        })
        .collect()
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn inverse(m: &RatMatrix) -> Result<RatMatrix, ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Rational::one());
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[..n].iter().any(|&p| p >= n) {
        return Err(ExactError::Singular);
    }
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, red.get(i, n + j).clone());
        }
    }
    Ok(inv)
}

/// True when `v` is a (nonzero) rational multiple of `w`, or both are zero.
pub fn proportional(v: &[Rational], w: &[Rational]) -> bool {
    if v.len() != w.len() {
        return false;
    }
    let Some(k) = w.iter().position(|x| !x.is_zero()) else {
        return v.iter().all(Zero::is_zero);
    };
    if v[k].is_zero() {
        return false;
    }
    let c = &v[k] / &w[k];
    v.iter().zip(w).all(|(a, b)| *a == &c * b)
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
            for s in row {
                entries.push(parse_rational(s).map_err(serde::de::Error::custom)?);
            }
        }
        RatMatrix::from_entries(r, c, entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_identity_and_small_skew() {
        assert_eq!(det(&RatMatrix::identity(3)).unwrap(), rat(1));
        let m = RatMatrix::from_i64_rows(&[vec![0, 2], vec![-2, 0]]);
        assert_eq!(det(&m).unwrap(), rat(4));
        assert_eq!(det(&RatMatrix::zeros(0, 0)).unwrap(), rat(1));
    }

    #[test]
    fn det_rejects_non_square() {
        let err = det(&RatMatrix::zeros(2, 3)).unwrap_err();
        assert_eq!(err, ExactError::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn det_with_fractions_and_swaps() {
        // [[0, 1/2], [3, 1]] -> -3/2
        let mut m = RatMatrix::zeros(2, 2);
        m.set(0, 1, ratio(1, 2));
        m.set(1, 0, rat(3));
        m.set(1, 1, rat(1));
        assert_eq!(det(&m).unwrap(), ratio(-3, 2));
    }

    #[test]
    fn odd_skew_det_vanishes() {
        let m = RatMatrix::from_i64_rows(&[vec![0, 3, -1], vec![-3, 0, 7], vec![1, -7, 0]]);
        assert!(m.is_skew_symmetric());
        assert!(det(&m).unwrap().is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::zeros(4, 4)), 0);
        assert_eq!(
            rank(&RatMatrix::from_i64_rows(&[vec![0, 1], vec![-1, 0]])),
            2
        );
        let b = RatMatrix::from_i64_rows(&[vec![0, 1, 1], vec![-1, 0, 0], vec![-1, 0, 0]]);
        assert_eq!(rank(&b), 2);
        assert_eq!(rank(&RatMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
        let k = kernel_basis(&RatMatrix::zeros(2, 2));
        assert_eq!(k.len(), 2);
        assert_eq!(rank(&RatMatrix::from_entries(2, 2, k.concat()).unwrap()), 2);

        let b = RatMatrix::from_i64_rows(&[vec![0, 1, 1], vec![-1, 0, 0], vec![-1, 0, 0]]);
        let k = kernel_basis(&b);
        assert_eq!(k, vec![vec![rat(0), rat(-1), rat(1)]]);
        assert!(b.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_of_empty_matrix() {
        assert_eq!(
            inverse(&RatMatrix::zeros(0, 0)).unwrap(),
            RatMatrix::zeros(0, 0)
        );
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
        let singular = RatMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(inverse(&singular).unwrap_err(), ExactError::Singular);
    }

    #[test]
    fn rational_wire_format() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5/1");
        assert_eq!(parse_rational(" 7 / -14 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), rat(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn proportionality() {
        assert!(proportional(
            &[rat(2), rat(0), rat(-4)],
            &[rat(1), rat(0), rat(-2)]
        ));
        assert!(!proportional(&[rat(2), rat(1)], &[rat(1), rat(0)]));
        assert!(!proportional(&[rat(0), rat(0)], &[rat(1), rat(0)]));
    }
}
