//! Dense exact matrices over the integers and the rationals, plus column
//! permutations.
//!
//! Storage is row-major and 0-based. Anything that leaves the crate as a
//! user-facing index (reports, diagnostics) is converted to 1-based.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("direct sum of an empty list of blocks")]
    EmptyDirectSum,
    #[error("permutation has length {found}, expected {expected}")]
    PermutationLength { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Builds an [`IntMatrix`] from nested literals, panicking on ragged input.
///
/// ```
/// let a = hnfdecomp::imat![[1, 2], [3, 4]];
/// assert_eq!(a.rows(), 2);
/// ```
#[macro_export]
macro_rules! imat {
    ($([$($x:expr),* $(,)?]),+ $(,)?) => {
        $crate::IntMatrix::from_i64_rows(&[$(&[$(($x) as i64),*][..]),+])
            .expect("well-formed matrix literal")
    };
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(MatrixError::Empty);
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(MatrixError::Ragged {
                    row: i + 1,
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &BigInt> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<BigInt>> {
        let cols = self.cols;
        let mut it = self.data.into_iter();
        (0..self.rows)
            .map(|_| it.by_ref().take(cols).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn multiply(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "multiply",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Sylvester's identity guarantees exact division.
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    pub fn is_unimodular(&self) -> bool {
        match self.determinant() {
            Ok(d) => d.abs().is_one(),
            Err(_) => false,
        }
    }

    /// `self⊤ · self`.
    pub fn gram(&self) -> IntMatrix {
        let n = self.cols;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = BigInt::zero();
                for k in 0..self.rows {
                    s += self.get(k, i) * self.get(k, j);
                }
                out.data[j * n + i] = s.clone();
                out.data[i * n + j] = s;
            }
        }
        out
    }

    /// Block-diagonal concatenation.
    pub fn direct_sum(blocks: &[IntMatrix]) -> Result<IntMatrix, MatrixError> {
        if blocks.is_empty() {
            return Err(MatrixError::EmptyDirectSum);
        }
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Computes `self · Q`: column `j` of the result is column `q.image(j)` of `self`.
    pub fn apply_column_permutation(&self, q: &Permutation) -> Result<IntMatrix, MatrixError> {
        if q.len() != self.cols {
            return Err(MatrixError::PermutationLength {
                expected: self.cols,
                found: q.len(),
            });
        }
        Ok(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, q.image(j)).clone()
        }))
    }

    /// Rows and columns picked by index, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn stack_rows(&self, rows: &[usize]) -> IntMatrix {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &all)
    }

    /// 0-based indices of all-zero columns.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| self.column(j).all(Zero::is_zero))
            .collect()
    }

    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| self.row(i).iter().all(Zero::is_zero))
            .collect()
    }

    /// Drops all-zero rows; `None` when nothing would remain.
    pub fn without_zero_rows(&self) -> Option<IntMatrix> {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|x| !x.is_zero()))
            .collect();
        if keep.is_empty() {
            None
        } else {
            Some(self.stack_rows(&keep))
        }
    }

    /// First asymmetric position `(i, j)` (0-based), if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.asymmetry().is_none()
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(Signed::abs).max().unwrap_or_default()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = cells[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

// Serialized as nested arrays of decimal strings so no precision is lost to
// native JSON numbers. Deserialization also accepts plain JSON integers.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntToken {
    Text(String),
    Signed(i64),
    Unsigned(u64),
}

impl IntToken {
    fn into_bigint(self) -> Result<BigInt, String> {
        match self {
            IntToken::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("invalid integer {s:?}")),
            IntToken::Signed(v) => Ok(BigInt::from(v)),
            IntToken::Unsigned(v) => Ok(BigInt::from(v)),
        }
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<Vec<IntToken>> = Vec::deserialize(deserializer)?;
        let rows = raw
            .into_iter()
            .map(|r| r.into_iter().map(IntToken::into_bigint).collect())
            .collect::<Result<Vec<Vec<BigInt>>, String>>()
            .map_err(de::Error::custom)?;
        IntMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Dense matrix of exact rationals, every entry kept in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `Some` when every entry is an integer.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_integer()
        }))
    }

    pub fn is_canonical(&self) -> bool {
        self.data
            .iter()
            .all(|x| x.denom().is_positive() && x.numer().gcd(x.denom()).is_one())
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        RatMatrix::from_fn(m.rows, m.cols, |i, j| BigRational::from_integer(m.get(i, j).clone()))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{:?}", self.to_string_rows())
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_string_rows();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A column permutation `Q` with `Q·e_j = e_{image(j)}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self, MatrixError> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(MatrixError::InvalidPermutation(mapping));
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn from_one_based(mapping: &[usize]) -> Result<Self, MatrixError> {
        if mapping.contains(&0) {
            return Err(MatrixError::InvalidPermutation(mapping.to_vec()));
        }
        Self::new(mapping.iter().map(|&m| m - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn image(&self, j: usize) -> usize {
        self.mapping[j]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.mapping.iter().map(|m| m + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (j, &m) in self.mapping.iter().enumerate() {
            inv[m] = j;
        }
        Permutation { mapping: inv }
    }

    /// Permutation matrix: entry `(image(j), j)` is one.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.len();
        IntMatrix::from_fn(n, n, |i, j| {
            if self.mapping[j] == i {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }
}
