//! Exact integer linear algebra: dense integer matrices, Smith normal form
//! with unimodular transforms, and cokernel presentations.
//!
//! Every entry operation is overflow-checked; overflow surfaces as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt;

use serde::Serialize;

use crate::error::{Checked, Error, Result};

/// Dense row-major matrix of `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row slices. All rows must have equal length;
    /// `cols` is needed to describe matrices with zero rows.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row of length {} in matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0i64;
                for l in 0..self.cols {
                    acc = acc.add_c(self[(i, l)].mul_c(rhs[(l, j)])?)?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `x * self`.
    pub fn left_apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.rows {
            return Err(Error::InvalidInput(format!(
                "vector of length {} applied to {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![0i64; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.add_c(xi.mul_c(self[(i, j)])?)?;
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[idx(k, k)] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[idx(i, k)] != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    a.swap(idx(k, j), idx(p, j));
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[idx(i, j)]
                        .checked_mul(a[idx(k, k)])
                        .and_then(|x| x.checked_sub(a[idx(i, k)].checked_mul(a[idx(k, j)])?))
                        .ok_or(Error::Overflow)?;
                    a[idx(i, j)] = num / prev;
                }
            }
            prev = a[idx(k, k)];
        }
        i64::try_from(sign * a[idx(n - 1, n - 1)]).map_err(|_| Error::Overflow)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: i64) -> Result<()> {
        for j in 0..self.cols {
            let v = self[(dst, j)].add_c(factor.mul_c(self[(src, j)])?)?;
            self[(dst, j)] = v;
        }
        Ok(())
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: i64) -> Result<()> {
        for i in 0..self.rows {
            let v = self[(i, dst)].add_c(factor.mul_c(self[(i, src)])?)?;
            self[(i, dst)] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries `d_1, d_2, ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

/// Smallest nonzero |entry| in the trailing block starting at (t, t); ties
/// go to the lowest (row, col).
fn find_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u64, usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let a = m[(i, j)].unsigned_abs();
            if a != 0 && best.map_or(true, |(b, _, _)| a < b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form with deterministic pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithDecomposition> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'diag: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                break 'diag;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = d[(i, t)] / p;
                if q != 0 {
                    let nq = q.checked_neg().ok_or(Error::Overflow)?;
                    d.add_row(i, t, nq)?;
                    u.add_row(i, t, nq)?;
                }
                dirty |= d[(i, t)] != 0;
            }
            for j in t + 1..cols {
                let q = d[(t, j)] / p;
                if q != 0 {
                    let nq = q.checked_neg().ok_or(Error::Overflow)?;
                    d.add_col(j, t, nq)?;
                    v.add_col(j, t, nq)?;
                }
                dirty |= d[(t, j)] != 0;
            }
            if dirty {
                continue;
            }

            // pivot must divide the whole trailing block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match offender {
                Some((i, _)) => {
                    d.add_row(t, i, 1)?;
                    u.add_row(t, i, 1)?;
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    Ok(SmithDecomposition { u, d, v })
}

/// Structure of a finitely generated abelian group: `Z^free_rank` times
/// `Z/d_1 x ... x Z/d_s` with `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroupStructure {
    /// Order of the torsion part, or `None` on overflow.
    pub fn torsion_order(&self) -> Option<i64> {
        self.torsion.iter().try_fold(1i64, |acc, &d| acc.checked_mul(d))
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

pub(crate) fn structure_from_snf(snf: &SmithDecomposition, generators: usize) -> AbelianGroupStructure {
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|&&x| x != 0).count();
    AbelianGroupStructure {
        free_rank: generators - rank,
        torsion: diag.into_iter().filter(|&x| x >= 2).collect(),
    }
}

/// `Z^{cols} / rowspan(relations)`.
pub fn cokernel(relations: &IntMatrix) -> Result<AbelianGroupStructure> {
    let snf = smith_normal_form(relations)?;
    Ok(structure_from_snf(&snf, relations.cols()))
}
