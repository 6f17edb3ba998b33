//! Dense exact matrices and the elimination determinant every other route is
//! checked against.
//!
//! Rows and columns are numbered from 1 at the public surface.

use std::fmt::Write as _;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ParseScalarError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("determinant needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("target column {column} must carry coefficient +1 or -1, got {coeff}")]
    TargetCoefficient { column: usize, coeff: Box<Scalar> },
    #[error("declared shape {rows}x{cols} does not match the entries")]
    ShapeMismatch { rows: usize, cols: usize },
    #[error(transparent)]
    Parse(#[from] ParseScalarError),
}

/// Immutable row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map(Vec::len).ok_or(LinalgError::Empty)?;
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::RaggedRow {
                    row: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Matrix::new(n, cols, entries)
    }

    /// Builds a matrix from a function of the 1-based `(row, col)` position.
    ///
    /// Panics if either dimension is zero.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
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

    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        if (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j) {
            Some(&self.entries[(i - 1) * self.cols + (j - 1)])
        } else {
            None
        }
    }

    /// Rows as slices, top to bottom.
    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.cols)
    }

    pub fn column(&self, j: usize) -> Result<Vec<Scalar>, LinalgError> {
        self.check_col(j)?;
        Ok(self.row_iter().map(|row| row[j - 1].clone()).collect())
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix, LinalgError> {
        for &j in cols {
            self.check_col(j)?;
        }
        if cols.is_empty() {
            return Err(LinalgError::Empty);
        }
        Ok(Matrix::from_fn(self.rows, cols.len(), |i, c| {
            self[(i, cols[c - 1])].clone()
        }))
    }

    /// Drops row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Result<Matrix, LinalgError> {
        self.check_row(i)?;
        self.check_col(j)?;
        if self.rows == 1 || self.cols == 1 {
            return Err(LinalgError::Empty);
        }
        Ok(Matrix::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let r = if r >= i { r + 1 } else { r };
            let c = if c >= j { c + 1 } else { c };
            self[(r, c)].clone()
        }))
    }

    pub fn swap_columns(&self, a: usize, b: usize) -> Result<Matrix, LinalgError> {
        self.check_col(a)?;
        self.check_col(b)?;
        let mut out = self.clone();
        for row in out.entries.chunks_mut(self.cols) {
            row.swap(a - 1, b - 1);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Exact determinant by fraction-free elimination. See [`det_oracle`].
    pub fn det(&self) -> Result<Scalar, LinalgError> {
        det_oracle(self)
    }

    /// One line per row, comma-separated scalars.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(Scalar::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV form written by [`Matrix::to_csv`]. Blank lines are skipped.
    pub fn from_csv(text: &str) -> Result<Matrix, LinalgError> {
        let rows = text
            .lines()
            .filter(|line| !line.trim().is_empty())
            .map(|line| {
                line.split(',')
                    .map(Scalar::parse_display)
                    .collect::<Result<Vec<Scalar>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows)
    }

    /// Right-aligned columns for terminal display.
    pub fn to_table(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(Scalar::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| cells[i * self.cols + j].len())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push_str("  ");
                }
                let _ = write!(out, "{:>w$}", cells[i * self.cols + j], w = widths[j]);
            }
            out.push('\n');
        }
        out
    }

    fn check_col(&self, j: usize) -> Result<(), LinalgError> {
        if (1..=self.cols).contains(&j) {
            Ok(())
        } else {
            Err(LinalgError::IndexOutOfRange {
                index: j,
                bound: self.cols,
            })
        }
    }

    fn check_row(&self, i: usize) -> Result<(), LinalgError> {
        if (1..=self.rows).contains(&i) {
            Ok(())
        } else {
            Err(LinalgError::IndexOutOfRange {
                index: i,
                bound: self.rows,
            })
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    /// 1-based access; panics out of range.
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j).unwrap_or_else(|| {
            panic!(
                "index ({i}, {j}) outside {}x{} matrix",
                self.rows, self.cols
            )
        })
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[Scalar]> = self.row_iter().collect();
        f.debug_list().entries(rows).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.row_iter().map(<[Scalar]>::to_vec).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let (rows, cols) = (raw.rows, raw.cols);
        let m = Matrix::from_rows(raw.entries).map_err(serde::de::Error::custom)?;
        if m.rows != rows || m.cols != cols {
            return Err(serde::de::Error::custom(LinalgError::ShapeMismatch {
                rows,
                cols,
            }));
        }
        Ok(m)
    }
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
///
/// Every intermediate entry is a minor of the input, so sizes stay
/// polynomial; the divisions by the previous pivot are exact.
pub fn det_oracle(m: &Matrix) -> Result<Scalar, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a: Vec<Vec<Scalar>> = m.row_iter().map(<[Scalar]>::to_vec).collect();
    let mut negate = false;
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(Scalar::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = num.checked_div(&prev).expect("previous pivot is nonzero");
            }
            row[k] = Scalar::zero();
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Laplace expansion along the first row. Exponential; meant as a
/// cross-check on small matrices only.
pub fn det_cofactor(m: &Matrix) -> Result<Scalar, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows == 1 {
        return Ok(m[(1, 1)].clone());
    }
    let mut acc = Scalar::zero();
    for j in 1..=m.cols {
        let entry = &m[(1, j)];
        if entry.is_zero() {
            continue;
        }
        let term = entry * &det_cofactor(&m.minor(1, j)?)?;
        acc += &term.with_sign_of_power(j - 1);
    }
    Ok(acc)
}

/// Returns a copy of `m` with column `j` replaced by `v`.
pub fn replace_column(m: &Matrix, j: usize, v: &[Scalar]) -> Result<Matrix, LinalgError> {
    m.check_col(j)?;
    if v.len() != m.rows {
        return Err(LinalgError::LengthMismatch {
            expected: m.rows,
            found: v.len(),
        });
    }
    let mut out = m.clone();
    for (row, value) in out.entries.chunks_mut(m.cols).zip(v) {
        row[j - 1] = value.clone();
    }
    Ok(out)
}

/// Sets column `target` to `Σ c · C_col` over `coeffs`.
///
/// The target must appear in `coeffs` with total coefficient ±1, so the
/// determinant is kept up to that sign. Repeated column indices are summed.
pub fn column_combination(
    m: &Matrix,
    target: usize,
    coeffs: &[(usize, Scalar)],
) -> Result<Matrix, LinalgError> {
    m.check_col(target)?;
    for (col, _) in coeffs {
        m.check_col(*col)?;
    }
    let own: Scalar = coeffs
        .iter()
        .filter(|(col, _)| *col == target)
        .map(|(_, c)| c)
        .sum();
    if !(own.is_one() || (-&own).is_one()) {
        return Err(LinalgError::TargetCoefficient {
            column: target,
            coeff: Box::new(own),
        });
    }
    let column: Vec<Scalar> = m
        .row_iter()
        .map(|row| {
            coeffs
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(col, c)| c * &row[col - 1])
                .sum()
        })
        .collect();
    replace_column(m, target, &column)
}
