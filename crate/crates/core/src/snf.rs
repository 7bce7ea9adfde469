//! Integer Smith normal form and chain-complex homology.
//!
//! This module is the numerical oracle for the rest of the crate: the
//! manifold catalog's rank formulas are cross-checked against homology of
//! explicit cell complexes computed here, via boundary-matrix reduction
//! over arbitrary-precision integers.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from machine integers, row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MatrixProductShape(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }
}

/// Result of a Smith normal form computation: the nonzero diagonal in
/// divisibility order (unit factors included) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigUint>,
    pub rank: usize,
}

/// Smith normal form by classical elementary row/column reduction,
/// pivoting on the smallest nonzero entry by absolute value.
///
/// Only the diagonal is computed; the unimodular transforms are not
/// tracked. Zero and empty matrices are fine.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let bound = rows.min(cols);
    let mut t = 0;
    while t < bound {
        let Some((pi, pj)) = min_abs_nonzero(&m, t) else {
            break;
        };
        swap_rows(&mut m, t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            // Euclidean elimination in the pivot column and row. When a
            // remainder survives it is strictly smaller than the pivot, so
            // re-pivoting terminates.
            let mut clean = true;
            for i in t + 1..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t) / m.get(t, t);
                if !q.is_zero() {
                    row_sub(&mut m, i, t, &q);
                }
                if !m.get(i, t).is_zero() {
                    swap_rows(&mut m, t, i);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            for j in t + 1..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j) / m.get(t, t);
                if !q.is_zero() {
                    col_sub(&mut m, j, t, &q);
                }
                if !m.get(t, j).is_zero() {
                    swap_cols(&mut m, t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot row and column are clear. Enforce that the pivot
            // divides the remaining submatrix; folding a bad row into the
            // pivot row strictly shrinks the pivot on the next pass.
            if let Some(i) = find_nondivisible(&m, t) {
                row_add(&mut m, t, i);
                clean = false;
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    let mut diagonal = Vec::new();
    for i in 0..bound {
        let d = m.get(i, i);
        if d.is_zero() {
            break;
        }
        diagonal.push(d.abs().to_biguint().expect("absolute value is nonnegative"));
    }
    let rank = diagonal.len();
    Snf { diagonal, rank }
}

fn min_abs_nonzero(m: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..m.rows {
        for j in from..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if v.abs() < m.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        let cols = m.cols;
        m.entries.swap(a * cols + j, b * cols + j);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        let cols = m.cols;
        m.entries.swap(i * cols + a, i * cols + b);
    }
}

/// row_i -= q * row_t
fn row_sub(m: &mut IntMatrix, i: usize, t: usize, q: &BigInt) {
    for j in 0..m.cols {
        let v = m.get(i, j) - q * m.get(t, j);
        m.set(i, j, v);
    }
}

/// col_j -= q * col_t
fn col_sub(m: &mut IntMatrix, j: usize, t: usize, q: &BigInt) {
    for i in 0..m.rows {
        let v = m.get(i, j) - q * m.get(i, t);
        m.set(i, j, v);
    }
}

/// row_t += row_i
fn row_add(m: &mut IntMatrix, t: usize, i: usize) {
    for j in 0..m.cols {
        let v = m.get(t, j) + m.get(i, j);
        m.set(t, j, v);
    }
}

fn find_nondivisible(m: &IntMatrix, t: usize) -> Option<usize> {
    let pivot = m.get(t, t).clone();
    for i in t + 1..m.rows {
        for j in t + 1..m.cols {
            if !(m.get(i, j) % &pivot).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// A bounded chain complex of free abelian groups: cell counts per degree
/// and boundary matrices, with `boundary(k)` mapping degree-`k` chains to
/// degree-`k−1` chains. Validated at construction: shapes must line up and
/// consecutive boundaries must compose to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidComplex("needs at least degree 0".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let (target, source) = (dims[k], dims[k + 1]);
            if b.rows != target || b.cols != source {
                return Err(Error::InvalidComplex(format!(
                    "boundary {} must be {}x{}, got {}x{}",
                    k + 1,
                    target,
                    source,
                    b.rows,
                    b.cols
                )));
            }
        }
        for k in 0..boundaries.len().saturating_sub(1) {
            let composite = boundaries[k].mul(&boundaries[k + 1])?;
            if !composite.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "boundary {} composed with boundary {} is nonzero",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(Self { dims, boundaries })
    }

    /// Top degree `d`.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The boundary map from degree `k` to degree `k − 1` (valid for
    /// `1 ≤ k ≤ top_degree`).
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        if k == 0 || k > self.top_degree() {
            None
        } else {
            Some(&self.boundaries[k - 1])
        }
    }

    /// Minimal cell model of the `d`-sphere: one cell in degree 0 and one
    /// in degree `d` (a single 0-cell for `d = 0`), zero boundaries.
    pub fn sphere(d: usize) -> Self {
        if d == 0 {
            return Self {
                dims: vec![1],
                boundaries: Vec::new(),
            };
        }
        let mut dims = vec![0; d + 1];
        dims[0] = 1;
        dims[d] = 1;
        let boundaries = (1..=d)
            .map(|k| IntMatrix::zeros(dims[k - 1], dims[k]))
            .collect();
        Self { dims, boundaries }
    }

    /// One-point complex.
    pub fn point() -> Self {
        Self::sphere(0)
    }
}

/// Homology of a chain complex: degree-`k` rank is
/// `dims[k] − rank ∂_k − rank ∂_{k+1}`, torsion is the nontrivial
/// invariant factors of `∂_{k+1}`.
pub fn homology_of_complex(c: &ChainComplex) -> Vec<FgAbelianGroup> {
    let d = c.top_degree();
    let snfs: Vec<Snf> = (1..=d)
        .map(|k| smith_normal_form(c.boundary(k).expect("degree in range")))
        .collect();
    (0..=d)
        .map(|k| {
            let rank_in = if k == 0 { 0 } else { snfs[k - 1].rank };
            let rank_out = if k == d { 0 } else { snfs[k].rank };
            let rank = c.dims[k] - rank_in - rank_out;
            let torsion: Vec<BigUint> = if k == d {
                Vec::new()
            } else {
                snfs[k]
                    .diagonal
                    .iter()
                    .filter(|f| **f > BigUint::from(1u32))
                    .cloned()
                    .collect()
            };
            FgAbelianGroup::new(rank, torsion).expect("invariant factors are >= 2")
        })
        .collect()
}

/// Graded tensor product of two chain complexes with the usual sign rule
/// `∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y`.
///
/// Product cells of degree `k` are grouped in blocks by the degree `i` of
/// the left factor, ascending; inside a block the index is
/// `a * dims_right[k−i] + b`.
pub fn tensor_complex(c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    let p = c.top_degree();
    let q = d.top_degree();
    let top = p + q;

    let block_range =
        |k: usize| -> std::ops::RangeInclusive<usize> { k.saturating_sub(q)..=k.min(p) };
    let dims: Vec<usize> = (0..=top)
        .map(|k| block_range(k).map(|i| c.dims[i] * d.dims[k - i]).sum())
        .collect();
    // Offset of block `i` inside degree `k`.
    let offset = |k: usize, i: usize| -> usize {
        block_range(k)
            .take_while(|&b| b < i)
            .map(|b| c.dims[b] * d.dims[k - b])
            .sum()
    };

    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let mut m = IntMatrix::zeros(dims[k - 1], dims[k]);
        for i in block_range(k) {
            let j = k - i;
            if c.dims[i] == 0 || d.dims[j] == 0 {
                continue;
            }
            let col_base = offset(k, i);
            for a in 0..c.dims[i] {
                for b in 0..d.dims[j] {
                    let col = col_base + a * d.dims[j] + b;
                    if i >= 1 && c.dims[i - 1] > 0 {
                        let bc = c.boundary(i).expect("degree in range");
                        let row_base = offset(k - 1, i - 1);
                        for a2 in 0..c.dims[i - 1] {
                            let v = bc.get(a2, a);
                            if !v.is_zero() {
                                let row = row_base + a2 * d.dims[j] + b;
                                m.set(row, col, v.clone());
                            }
                        }
                    }
                    if j >= 1 && d.dims[j - 1] > 0 {
                        let bd = d.boundary(j).expect("degree in range");
                        let row_base = offset(k - 1, i);
                        let sign = if i % 2 == 0 {
                            BigInt::from(1)
                        } else {
                            BigInt::from(-1)
                        };
                        for b2 in 0..d.dims[j - 1] {
                            let v = bd.get(b2, b);
                            if !v.is_zero() {
                                let row = row_base + a * d.dims[j - 1] + b2;
                                m.set(row, col, &sign * v);
                            }
                        }
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(dims, boundaries).expect("tensor product satisfies the boundary condition")
}
