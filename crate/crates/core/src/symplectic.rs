//! Exact-rational checker for the linear core of the fixed-locus fact:
//! the fixed subspace of a finite-order symplectic map is even-dimensional
//! and the restricted form on it is nondegenerate.
//!
//! Everything is over exact rationals. Kernels and determinants go through
//! fraction-free (Bareiss-style) elimination on denominator-cleared integer
//! rows, so no intermediate value is ever rounded.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("{rows}x{cols} matrix needs {expected} entries, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("map does not preserve the symplectic form")]
    NotSymplectic,
    #[error("no finite order found up to {max_order}")]
    OrderNotFound { max_order: u32 },
    #[error("symplectic form needs even positive dimension, got {0}")]
    OddDimension(usize),
    #[error("form matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("form matrix is degenerate")]
    DegenerateForm,
    #[error("shear block must be symmetric")]
    NotSymmetric,
    #[error("pair block must have determinant 1")]
    BlockNotUnimodular,
    #[error("pair index out of range")]
    BadPairIndex,
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

/// A dense matrix of exact rationals, row-major. Zero-by-zero matrices are
/// allowed (they show up as the Gram matrix of an empty fixed space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<BigRational>,
    ) -> Result<Self, SymplecticError> {
        if entries.len() != rows * cols {
            return Err(SymplecticError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_integers(
        rows: usize,
        cols: usize,
        entries: &[i64],
    ) -> Result<Self, SymplecticError> {
        Self::new(
            rows,
            cols,
            entries
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    /// `dim x k` matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<BigRational>]) -> Result<Self, SymplecticError> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(SymplecticError::DimensionMismatch {
                    left: dim,
                    right: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
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

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, SymplecticError> {
        if self.cols != rhs.rows {
            return Err(SymplecticError::DimensionMismatch {
                left: self.cols,
                right: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, SymplecticError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(SymplecticError::DimensionMismatch {
                left: self.rows,
                right: rhs.rows,
            });
        }
        let mut out = self.clone();
        for (o, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *o -= r;
        }
        Ok(out)
    }

    pub fn neg(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact determinant: fraction-free elimination on the denominator-
    /// cleared rows, divided back by the row scales. The empty matrix has
    /// determinant 1.
    pub fn determinant(&self) -> Result<BigRational, SymplecticError> {
        if !self.is_square() {
            return Err(SymplecticError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let (cleared, scales) = clear_row_denominators(self);
        let echelon = bareiss_echelon(cleared, self.cols);
        if echelon.pivot_cols.len() < n {
            return Ok(BigRational::zero());
        }
        let mut det = echelon.rows[n - 1][n - 1].clone();
        if echelon.swapped_odd {
            det = -det;
        }
        let scale = scales.into_iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(BigRational::new(det, scale))
    }

    pub fn rank(&self) -> usize {
        let (cleared, _) = clear_row_denominators(self);
        bareiss_echelon(cleared, self.cols).pivot_cols.len()
    }

    /// Exact basis of the kernel, one vector per free column of the
    /// echelon form. Empty for injective matrices.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (cleared, _) = clear_row_denominators(self);
        let echelon = bareiss_echelon(cleared, self.cols);
        let rank = echelon.pivot_cols.len();
        let mut is_pivot = vec![false; self.cols];
        for &c in &echelon.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            for k in (0..rank).rev() {
                let pivot_col = echelon.pivot_cols[k];
                let mut sum = BigRational::zero();
                for j in pivot_col + 1..self.cols {
                    let a = &echelon.rows[k][j];
                    if !a.is_zero() && !x[j].is_zero() {
                        sum += BigRational::from_integer(a.clone()) * &x[j];
                    }
                }
                if !sum.is_zero() {
                    x[pivot_col] = -sum / BigRational::from_integer(echelon.rows[k][pivot_col].clone());
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Exact inverse via Gauss-Jordan, `None` for singular input.
    pub fn inverse(&self) -> Result<Option<RationalMatrix>, SymplecticError> {
        if !self.is_square() {
            return Err(SymplecticError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| !work[(i, col)].is_zero()) else {
                return Ok(None);
            };
            if pivot != col {
                work.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let lead = work[(col, col)].clone();
            for j in 0..n {
                work[(col, j)] /= &lead;
                inv[(col, j)] /= &lead;
            }
            for i in 0..n {
                if i == col || work[(i, col)].is_zero() {
                    continue;
                }
                let factor = work[(i, col)].clone();
                for j in 0..n {
                    let w = &work[(col, j)] * &factor;
                    work[(i, j)] -= w;
                    let v = &inv[(col, j)] * &factor;
                    inv[(i, j)] -= v;
                }
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("RationalMatrix", 3)?;
        state.serialize_field("rows", &self.rows)?;
        state.serialize_field("cols", &self.cols)?;
        let rendered: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        state.serialize_field("entries", &rendered)?;
        state.end()
    }
}

/// Multiplies each row by the lcm of its denominators, returning integer
/// rows plus the scales. Row scaling changes neither kernel nor pivot
/// structure, and determinants divide back exactly.
fn clear_row_denominators(m: &RationalMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows);
    let mut scales = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut lcm = BigInt::one();
        for j in 0..m.cols {
            lcm = lcm.lcm(m[(i, j)].denom());
        }
        let row: Vec<BigInt> = (0..m.cols)
            .map(|j| m[(i, j)].numer() * (&lcm / m[(i, j)].denom()))
            .collect();
        rows.push(row);
        scales.push(lcm);
    }
    (rows, scales)
}

struct IntEchelon {
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    swapped_odd: bool,
}

/// One-step fraction-free elimination. Every division is exact; the
/// invariant is asserted rather than trusted.
fn bareiss_echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> IntEchelon {
    let row_count = rows.len();
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut swapped_odd = false;
    let mut rank = 0;
    for col in 0..cols {
        if rank == row_count {
            break;
        }
        let Some(pivot_row) = (rank..row_count).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            rows.swap(pivot_row, rank);
            swapped_odd = !swapped_odd;
        }
        for i in rank + 1..row_count {
            for j in col + 1..cols {
                let numerator = &rows[rank][col] * &rows[i][j] - &rows[i][col] * &rows[rank][j];
                let (quotient, remainder) = numerator.div_rem(&prev);
                assert!(remainder.is_zero(), "fraction-free invariant violated");
                rows[i][j] = quotient;
            }
            rows[i][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        pivot_cols.push(col);
        rank += 1;
    }
    IntEchelon {
        rows,
        pivot_cols,
        swapped_odd,
    }
}

/// An even-dimensional space with a fixed antisymmetric invertible form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    form: RationalMatrix,
}

impl SymplecticSpace {
    /// The standard block form `[[0, I_m], [-I_m, 0]]` on `2m` coordinates
    /// `(q_1, .., q_m, p_1, .., p_m)`.
    pub fn standard(dimension: usize) -> Result<Self, SymplecticError> {
        if dimension == 0 || dimension % 2 != 0 {
            return Err(SymplecticError::OddDimension(dimension));
        }
        let half = dimension / 2;
        let mut form = RationalMatrix::zeros(dimension, dimension);
        for i in 0..half {
            form[(i, half + i)] = BigRational::one();
            form[(half + i, i)] = -BigRational::one();
        }
        Ok(SymplecticSpace { form })
    }

    /// Wraps a custom form matrix, insisting on antisymmetry and
    /// invertibility.
    pub fn with_form(form: RationalMatrix) -> Result<Self, SymplecticError> {
        if !form.is_square() {
            return Err(SymplecticError::NotSquare {
                rows: form.rows(),
                cols: form.cols(),
            });
        }
        if form.rows() == 0 {
            return Err(SymplecticError::OddDimension(0));
        }
        if form.transpose() != form.neg() {
            return Err(SymplecticError::NotAntisymmetric);
        }
        if form.determinant()?.is_zero() {
            return Err(SymplecticError::DegenerateForm);
        }
        Ok(SymplecticSpace { form })
    }

    pub fn dimension(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &RationalMatrix {
        &self.form
    }
}

/// Findings about the fixed subspace of one finite-order symplectic map.
/// Both flags hold for every valid input; a false flag with satisfied
/// preconditions would expose a bug, never be absorbed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedSubspaceReport {
    pub order: u32,
    pub fixed_dimension: usize,
    pub gram: RationalMatrix,
    pub even: bool,
    pub nondegenerate: bool,
}

/// Exact check of `hᵀ J h = J`.
pub fn is_symplectic(
    h: &RationalMatrix,
    space: &SymplecticSpace,
) -> Result<bool, SymplecticError> {
    if !h.is_square() {
        return Err(SymplecticError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if h.rows() != space.dimension() {
        return Err(SymplecticError::DimensionMismatch {
            left: h.rows(),
            right: space.dimension(),
        });
    }
    let pulled = h.transpose().mul(space.form())?.mul(h)?;
    Ok(pulled == space.form)
}

/// Least `k <= max_order` with `h^k = I`, or `None`. Singular matrices
/// are rejected: they cannot have finite order.
pub fn matrix_order(
    h: &RationalMatrix,
    max_order: u32,
) -> Result<Option<u32>, SymplecticError> {
    if !h.is_square() {
        return Err(SymplecticError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if h.determinant()?.is_zero() {
        return Err(SymplecticError::Singular);
    }
    let identity = RationalMatrix::identity(h.rows());
    let mut power = h.clone();
    for k in 1..=max_order {
        if power == identity {
            return Ok(Some(k));
        }
        power = power.mul(h)?;
    }
    Ok(None)
}

/// Exact basis of the invariant subspace `ker(h - I)`.
pub fn fixed_subspace(h: &RationalMatrix) -> Result<Vec<Vec<BigRational>>, SymplecticError> {
    if !h.is_square() {
        return Err(SymplecticError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let shifted = h.sub(&RationalMatrix::identity(h.rows()))?;
    Ok(shifted.kernel_basis())
}

/// Full check: `h` must preserve the form and have finite order; the
/// report then carries the fixed dimension, the restricted Gram matrix,
/// and the evenness / nondegeneracy flags (dimension 0 is vacuously
/// nondegenerate).
pub fn check_fixed_locus_symplectic(
    h: &RationalMatrix,
    space: &SymplecticSpace,
    max_order: u32,
) -> Result<FixedSubspaceReport, SymplecticError> {
    if !is_symplectic(h, space)? {
        return Err(SymplecticError::NotSymplectic);
    }
    let order = matrix_order(h, max_order)?
        .ok_or(SymplecticError::OrderNotFound { max_order })?;
    let basis = fixed_subspace(h)?;
    let basis_matrix = RationalMatrix::from_columns(space.dimension(), &basis)?;
    let gram = basis_matrix
        .transpose()
        .mul(space.form())?
        .mul(&basis_matrix)?;
    let fixed_dimension = basis.len();
    let even = fixed_dimension % 2 == 0;
    let nondegenerate = fixed_dimension == 0 || !gram.determinant()?.is_zero();
    Ok(FixedSubspaceReport {
        order,
        fixed_dimension,
        gram,
        even,
        nondegenerate,
    })
}

/// Parses the matrix file format: a block is `rows cols` followed by
/// `rows * cols` whitespace-separated entries (`p/q` or integers). An
/// optional second block supplies a custom form matrix.
pub fn parse_matrix_text(
    text: &str,
) -> Result<(RationalMatrix, Option<RationalMatrix>), SymplecticError> {
    let mut tokens = text.split_whitespace().peekable();
    let first = parse_block(&mut tokens)?;
    let second = if tokens.peek().is_some() {
        Some(parse_block(&mut tokens)?)
    } else {
        None
    };
    if let Some(extra) = tokens.next() {
        return Err(SymplecticError::Parse(format!(
            "unexpected trailing token `{extra}`"
        )));
    }
    Ok((first, second))
}

fn parse_block<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
) -> Result<RationalMatrix, SymplecticError> {
    let rows = parse_dimension(tokens.next(), "rows")?;
    let cols = parse_dimension(tokens.next(), "cols")?;
    let mut entries = Vec::with_capacity(rows * cols);
    for k in 0..rows * cols {
        let token = tokens.next().ok_or_else(|| {
            SymplecticError::Parse(format!("expected {} entries, got {k}", rows * cols))
        })?;
        let value: BigRational = token
            .parse()
            .map_err(|_| SymplecticError::Parse(format!("bad entry `{token}`")))?;
        entries.push(value);
    }
    RationalMatrix::new(rows, cols, entries)
}

fn parse_dimension(token: Option<&str>, what: &str) -> Result<usize, SymplecticError> {
    let token = token.ok_or_else(|| SymplecticError::Parse(format!("missing {what}")))?;
    let value: usize = token
        .parse()
        .map_err(|_| SymplecticError::Parse(format!("bad {what} `{token}`")))?;
    if value == 0 {
        return Err(SymplecticError::Parse(format!("{what} must be positive")));
    }
    Ok(value)
}

/// Constructors for symplectic matrices: finite-order blocks acting on one
/// `(q_i, p_i)` plane, plane swaps, and the shear generators. Useful for
/// assembling test batteries of known order.
pub mod generators {
    use super::*;

    /// A 2x2 integer matrix in `SL_2` of exactly the requested order
    /// (orders 1, 2, 3, 4, 6 exist; everything else returns `None`).
    pub fn finite_order_block(order: u32) -> Option<[[i64; 2]; 2]> {
        match order {
            1 => Some([[1, 0], [0, 1]]),
            2 => Some([[-1, 0], [0, -1]]),
            3 => Some([[0, -1], [1, -1]]),
            4 => Some([[0, -1], [1, 0]]),
            6 => Some([[0, -1], [1, 1]]),
            _ => None,
        }
    }

    /// Embeds a determinant-1 block into the `(q_pair, p_pair)` plane of
    /// the standard `2m`-dimensional space, identity elsewhere.
    pub fn pair_block(
        half_dimension: usize,
        pair: usize,
        block: [[i64; 2]; 2],
    ) -> Result<RationalMatrix, SymplecticError> {
        if pair >= half_dimension {
            return Err(SymplecticError::BadPairIndex);
        }
        let det = block[0][0] * block[1][1] - block[0][1] * block[1][0];
        if det != 1 {
            return Err(SymplecticError::BlockNotUnimodular);
        }
        let mut m = RationalMatrix::identity(2 * half_dimension);
        let q = pair;
        let p = half_dimension + pair;
        m[(q, q)] = BigRational::from_integer(BigInt::from(block[0][0]));
        m[(q, p)] = BigRational::from_integer(BigInt::from(block[0][1]));
        m[(p, q)] = BigRational::from_integer(BigInt::from(block[1][0]));
        m[(p, p)] = BigRational::from_integer(BigInt::from(block[1][1]));
        Ok(m)
    }

    /// Swaps the `(q_i, p_i)` and `(q_j, p_j)` planes.
    pub fn pair_swap(
        half_dimension: usize,
        i: usize,
        j: usize,
    ) -> Result<RationalMatrix, SymplecticError> {
        if i >= half_dimension || j >= half_dimension || i == j {
            return Err(SymplecticError::BadPairIndex);
        }
        let mut m = RationalMatrix::identity(2 * half_dimension);
        m.swap_rows(i, j);
        m.swap_rows(half_dimension + i, half_dimension + j);
        Ok(m)
    }

    /// `[[I, B], [0, I]]` for symmetric `B`; always symplectic.
    pub fn upper_shear(b: &RationalMatrix) -> Result<RationalMatrix, SymplecticError> {
        shear(b, true)
    }

    /// `[[I, 0], [C, I]]` for symmetric `C`; always symplectic.
    pub fn lower_shear(c: &RationalMatrix) -> Result<RationalMatrix, SymplecticError> {
        shear(c, false)
    }

    fn shear(block: &RationalMatrix, upper: bool) -> Result<RationalMatrix, SymplecticError> {
        if !block.is_square() {
            return Err(SymplecticError::NotSquare {
                rows: block.rows(),
                cols: block.cols(),
            });
        }
        if block.transpose() != *block {
            return Err(SymplecticError::NotSymmetric);
        }
        let half = block.rows();
        let mut m = RationalMatrix::identity(2 * half);
        for i in 0..half {
            for j in 0..half {
                if upper {
                    m[(i, half + j)] = block[(i, j)].clone();
                } else {
                    m[(half + i, j)] = block[(i, j)].clone();
                }
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn mat(rows: usize, cols: usize, entries: &[i64]) -> RationalMatrix {
        RationalMatrix::from_integers(rows, cols, entries).unwrap()
    }

    /// Cofactor-expansion determinant, the slow oracle for small sizes.
    fn det_by_cofactors(m: &RationalMatrix) -> BigRational {
        let n = m.rows();
        if n == 0 {
            return BigRational::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut total = BigRational::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let mut minor = RationalMatrix::zeros(n - 1, n - 1);
            for i in 1..n {
                let mut jj = 0;
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    minor[(i - 1, jj)] = m[(i, k)].clone();
                    jj += 1;
                }
            }
            let term = &m[(0, j)] * det_by_cofactors(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let samples = [
            mat(2, 2, &[2, 1, 7, 4]),
            mat(3, 3, &[0, 1, 2, 3, 4, 5, 6, 7, 9]),
            mat(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]), // rank 2
            mat(4, 4, &[3, 0, 0, 1, 0, 2, 5, 0, 1, 1, 1, 1, 0, 0, 4, 2]),
        ];
        for m in &samples {
            assert_eq!(m.determinant().unwrap(), det_by_cofactors(m));
        }
        // rational entries too
        let mut q = RationalMatrix::zeros(2, 2);
        q[(0, 0)] = BigRational::new(BigInt::from(1), BigInt::from(2));
        q[(0, 1)] = rat(3);
        q[(1, 0)] = BigRational::new(BigInt::from(-2), BigInt::from(3));
        q[(1, 1)] = BigRational::new(BigInt::from(5), BigInt::from(7));
        assert_eq!(q.determinant().unwrap(), det_by_cofactors(&q));
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(3, 3, &[2, 1, 0, 1, 1, 1, 0, 3, 1]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(3));

        let singular = mat(2, 2, &[1, 2, 2, 4]);
        assert_eq!(singular.inverse().unwrap(), None);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = mat(3, 4, &[1, 2, 0, 1, 0, 0, 1, 3, 1, 2, 1, 4]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 4 - m.rank());
        for v in &kernel {
            for i in 0..m.rows() {
                let mut sum = BigRational::zero();
                for j in 0..m.cols() {
                    sum += &m[(i, j)] * &v[j];
                }
                assert!(sum.is_zero());
            }
        }
    }

    #[test]
    fn is_symplectic_examples() {
        let space = SymplecticSpace::standard(4).unwrap();
        assert!(is_symplectic(&RationalMatrix::identity(4), &space).unwrap());
        assert!(is_symplectic(&RationalMatrix::identity(4).neg(), &space).unwrap());

        let space2 = SymplecticSpace::standard(2).unwrap();
        let j = space2.form().clone();
        assert!(is_symplectic(&j, &space2).unwrap());

        // diag(2, 1) does not preserve the 2-dimensional form
        let stretch = mat(2, 2, &[2, 0, 0, 1]);
        assert!(!is_symplectic(&stretch, &space2).unwrap());

        assert!(is_symplectic(&RationalMatrix::identity(3), &space).is_err());
    }

    #[test]
    fn matrix_order_examples() {
        assert_eq!(matrix_order(&RationalMatrix::identity(4), 24).unwrap(), Some(1));
        assert_eq!(
            matrix_order(&RationalMatrix::identity(4).neg(), 24).unwrap(),
            Some(2)
        );
        let j = SymplecticSpace::standard(2).unwrap().form().clone();
        assert_eq!(matrix_order(&j, 24).unwrap(), Some(4));

        // a shear has infinite order
        let shear = mat(2, 2, &[1, 1, 0, 1]);
        assert_eq!(matrix_order(&shear, 24).unwrap(), None);

        let singular = mat(2, 2, &[1, 0, 0, 0]);
        assert_eq!(matrix_order(&singular, 24), Err(SymplecticError::Singular));
    }

    #[test]
    fn finite_order_blocks_have_their_orders() {
        for order in [1u32, 2, 3, 4, 6] {
            let b = generators::finite_order_block(order).unwrap();
            let m = mat(2, 2, &[b[0][0], b[0][1], b[1][0], b[1][1]]);
            assert_eq!(matrix_order(&m, 24).unwrap(), Some(order), "order {order}");
        }
        assert!(generators::finite_order_block(5).is_none());
    }

    #[test]
    fn fixed_subspace_examples() {
        assert_eq!(fixed_subspace(&RationalMatrix::identity(4)).unwrap().len(), 4);
        assert!(fixed_subspace(&RationalMatrix::identity(4).neg())
            .unwrap()
            .is_empty());

        // swap of (q1,p1) and (q2,p2): fixed space is the diagonal plane
        let swap = generators::pair_swap(2, 0, 1).unwrap();
        let basis = fixed_subspace(&swap).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            // hand oracle: (h - I)v = 0 means q1 = q2 and p1 = p2
            assert_eq!(v[0], v[1]);
            assert_eq!(v[2], v[3]);
        }
    }

    #[test]
    fn check_identity_and_negation() {
        let space = SymplecticSpace::standard(4).unwrap();
        let report =
            check_fixed_locus_symplectic(&RationalMatrix::identity(4), &space, 24).unwrap();
        assert_eq!(report.order, 1);
        assert_eq!(report.fixed_dimension, 4);
        assert_eq!(report.gram, *space.form());
        assert!(report.even && report.nondegenerate);

        let report =
            check_fixed_locus_symplectic(&RationalMatrix::identity(4).neg(), &space, 24).unwrap();
        assert_eq!(report.order, 2);
        assert_eq!(report.fixed_dimension, 0);
        assert!(report.even && report.nondegenerate);
        assert_eq!(report.gram.rows(), 0);
    }

    #[test]
    fn check_pair_swap_gram() {
        let space = SymplecticSpace::standard(4).unwrap();
        let swap = generators::pair_swap(2, 0, 1).unwrap();
        let report = check_fixed_locus_symplectic(&swap, &space, 24).unwrap();
        assert_eq!(report.order, 2);
        assert_eq!(report.fixed_dimension, 2);
        assert!(report.even && report.nondegenerate);
        // explicit 2x2 Gram: [[0, 2], [-2, 0]]
        assert_eq!(report.gram, mat(2, 2, &[0, 2, -2, 0]));
    }

    #[test]
    fn check_rejects_bad_inputs() {
        let space = SymplecticSpace::standard(2).unwrap();
        let stretch = mat(2, 2, &[2, 0, 0, 1]);
        assert_eq!(
            check_fixed_locus_symplectic(&stretch, &space, 24),
            Err(SymplecticError::NotSymplectic)
        );
        let shear = mat(2, 2, &[1, 1, 0, 1]);
        assert_eq!(
            check_fixed_locus_symplectic(&shear, &space, 24),
            Err(SymplecticError::OrderNotFound { max_order: 24 })
        );
    }

    #[test]
    fn orthogonality_identity_for_sample_maps() {
        // columns of J(h - I) pair to zero against the fixed basis
        let space = SymplecticSpace::standard(6).unwrap();
        let samples = [
            generators::pair_block(3, 0, generators::finite_order_block(3).unwrap()).unwrap(),
            generators::pair_block(3, 2, generators::finite_order_block(4).unwrap()).unwrap(),
            generators::pair_swap(3, 0, 2).unwrap(),
        ];
        for h in &samples {
            let basis = fixed_subspace(h).unwrap();
            let b = RationalMatrix::from_columns(6, &basis).unwrap();
            let shifted = h.sub(&RationalMatrix::identity(6)).unwrap();
            let pairing = b.transpose().mul(space.form()).unwrap().mul(&shifted).unwrap();
            assert!(pairing.is_zero_matrix());
        }
    }

    #[test]
    fn custom_form_validation() {
        let good = mat(2, 2, &[0, 1, -1, 0]);
        assert!(SymplecticSpace::with_form(good).is_ok());
        let not_antisym = mat(2, 2, &[0, 1, 1, 0]);
        assert_eq!(
            SymplecticSpace::with_form(not_antisym),
            Err(SymplecticError::NotAntisymmetric)
        );
        let degenerate = RationalMatrix::zeros(2, 2);
        assert_eq!(
            SymplecticSpace::with_form(degenerate),
            Err(SymplecticError::DegenerateForm)
        );
        assert!(SymplecticSpace::standard(3).is_err());
        assert!(SymplecticSpace::standard(0).is_err());
    }

    #[test]
    fn parse_matrix_text_formats() {
        let (m, j) = parse_matrix_text("2 2  1 0 0 1").unwrap();
        assert_eq!(m, RationalMatrix::identity(2));
        assert!(j.is_none());

        let (m, j) = parse_matrix_text("2 2\n1/2 0\n-3 1\n2 2\n0 1\n-1 0\n").unwrap();
        assert_eq!(m[(0, 0)], BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(m[(1, 0)], rat(-3));
        assert_eq!(j.unwrap(), mat(2, 2, &[0, 1, -1, 0]));

        assert!(parse_matrix_text("").is_err());
        assert!(parse_matrix_text("2 2 1 0 0").is_err());
        assert!(parse_matrix_text("2 2 1 0 0 x").is_err());
        assert!(parse_matrix_text("0 2 ").is_err());
        assert!(parse_matrix_text("2 2 1 0 0 1 extra").is_err());
    }

    #[test]
    fn shear_generators_are_symplectic() {
        let space = SymplecticSpace::standard(4).unwrap();
        let b = mat(2, 2, &[1, 2, 2, -1]);
        let upper = generators::upper_shear(&b).unwrap();
        let lower = generators::lower_shear(&b).unwrap();
        assert!(is_symplectic(&upper, &space).unwrap());
        assert!(is_symplectic(&lower, &space).unwrap());
        let asym = mat(2, 2, &[1, 2, 3, 4]);
        assert_eq!(
            generators::upper_shear(&asym),
            Err(SymplecticError::NotSymmetric)
        );
    }

    #[test]
    fn conjugation_preserves_report_shape() {
        // g h g^{-1} has the same order and fixed dimension as h
        let space = SymplecticSpace::standard(4).unwrap();
        let h = generators::pair_block(2, 0, generators::finite_order_block(6).unwrap()).unwrap();
        let b = mat(2, 2, &[1, 1, 1, 0]);
        let g = generators::upper_shear(&b).unwrap();
        let g_inv = g.inverse().unwrap().unwrap();
        let conj = g.mul(&h).unwrap().mul(&g_inv).unwrap();
        assert!(is_symplectic(&conj, &space).unwrap());
        let base = check_fixed_locus_symplectic(&h, &space, 24).unwrap();
        let moved = check_fixed_locus_symplectic(&conj, &space, 24).unwrap();
        assert_eq!(base.order, moved.order);
        assert_eq!(base.fixed_dimension, moved.fixed_dimension);
        assert!(moved.even && moved.nondegenerate);
    }
}
