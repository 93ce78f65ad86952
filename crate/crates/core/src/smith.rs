//! Integer matrices, Smith normal form, and homology of integer chain
//! complexes.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::AbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmithError {
    #[error("matrix data has {len} entries, expected {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error(
        "boundary in degree {degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}"
    )]
    DimensionMismatch {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("composite boundary into degree {0} is nonzero")]
    NotAComplex(usize),
    #[error("degree {0} is outside the complex")]
    DegreeOutOfRange(usize),
}

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, SmithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<i64> = rows.iter().flatten().copied().collect();
        if data.len() != r * c || rows.iter().any(|row| row.len() != c) {
            return Err(SmithError::Shape {
                rows: r,
                cols: c,
                len: data.len(),
            });
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] += value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `self * rhs`, or `None` on a shape mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.add_to(i, j, a * rhs.get(k, j));
                }
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= factor * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, factor: i64) {
        for j in 0..self.cols {
            let v = self.get(source, j);
            self.add_to(target, j, -factor * v);
        }
    }

    fn col_axpy(&mut self, target: usize, source: usize, factor: i64) {
        for i in 0..self.rows {
            let v = self.get(i, source);
            self.add_to(i, target, -factor * v);
        }
    }

    /// Nonzero diagonal of the Smith normal form, each entry dividing the next.
    pub fn smith_diagonal(&self) -> Vec<i64> {
        let mut m = self.clone();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < m.rows.min(m.cols) {
            // pivot: smallest nonzero absolute value in the trailing block
            let pivot = (t..m.rows)
                .flat_map(|i| (t..m.cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m.get(i, j) != 0)
                .min_by_key(|&(i, j)| m.get(i, j).abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            loop {
                let p = m.get(t, t);
                let mut dirty = false;
                for i in t + 1..m.rows {
                    let q = m.get(i, t) / p;
                    if q != 0 {
                        m.row_axpy(i, t, q);
                    }
                    if m.get(i, t) != 0 {
                        dirty = true;
                    }
                }
                for j in t + 1..m.cols {
                    let q = m.get(t, j) / p;
                    if q != 0 {
                        m.col_axpy(j, t, q);
                    }
                    if m.get(t, j) != 0 {
                        dirty = true;
                    }
                }
                if !dirty {
                    // pivot must divide the whole trailing block
                    let bad = (t + 1..m.rows)
                        .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
                        .find(|&(i, j)| m.get(i, j) % p != 0);
                    match bad {
                        Some((i, _)) => {
                            m.row_axpy(t, i, -1);
                            continue;
                        }
                        None => break,
                    }
                }
                // move the smallest remaining entry of row/column t into the pivot slot
                let (bi, bj) = (t..m.rows)
                    .map(|i| (i, t))
                    .chain((t..m.cols).map(|j| (t, j)))
                    .filter(|&(i, j)| m.get(i, j) != 0)
                    .min_by_key(|&(i, j)| m.get(i, j).abs())
                    .expect("pivot is nonzero");
                m.swap_rows(t, bi);
                m.swap_cols(t, bj);
            }
            diag.push(m.get(t, t).abs());
            t += 1;
        }
        diag
    }

    pub fn rank(&self) -> usize {
        self.smith_diagonal().len()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// `C_top -> ... -> C_1 -> C_0`; `boundaries[p]` is the matrix of
/// `d_p: C_p -> C_{p-1}`, with `boundaries[0]` of shape `0 x ranks[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl IntChainComplex {
    /// `higher[i]` is the boundary out of degree `i + 1`.
    pub fn new(ranks: Vec<usize>, higher: Vec<IntMatrix>) -> Result<Self, SmithError> {
        let mut boundaries = Vec::with_capacity(ranks.len());
        if ranks.is_empty() {
            return Ok(IntChainComplex { ranks, boundaries });
        }
        boundaries.push(IntMatrix::zeros(0, ranks[0]));
        let expected = ranks.len() - 1;
        if higher.len() != expected {
            return Err(SmithError::DegreeOutOfRange(higher.len()));
        }
        for (i, m) in higher.into_iter().enumerate() {
            let degree = i + 1;
            if m.rows() != ranks[degree - 1] || m.cols() != ranks[degree] {
                return Err(SmithError::DimensionMismatch {
                    degree,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: ranks[degree - 1],
                    expected_cols: ranks[degree],
                });
            }
            boundaries.push(m);
        }
        Ok(IntChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn boundary(&self, p: usize) -> Option<&IntMatrix> {
        self.boundaries.get(p)
    }

    /// Checks `d_p d_{p+1} = 0` for every p.
    pub fn check(&self) -> Result<(), SmithError> {
        for p in 1..self.boundaries.len() {
            let composite = self.boundaries[p - 1]
                .mul(&self.boundaries[p])
                .expect("shapes validated on construction");
            if !composite.is_zero() {
                return Err(SmithError::NotAComplex(p));
            }
        }
        Ok(())
    }
}

/// `ker d_p / im d_{p+1}`.
pub fn smith_homology(c: &IntChainComplex, p: usize) -> Result<AbelianGroup, SmithError> {
    let rank_p = *c.ranks.get(p).ok_or(SmithError::DegreeOutOfRange(p))?;
    let outgoing = &c.boundaries[p];
    let kernel_rank = rank_p - outgoing.rank();
    let Some(incoming) = c.boundaries.get(p + 1) else {
        return Ok(AbelianGroup::free(kernel_rank));
    };
    let composite = outgoing.mul(incoming).expect("shapes validated");
    if !composite.is_zero() {
        return Err(SmithError::NotAComplex(p + 1));
    }
    let diag = incoming.smith_diagonal();
    let free = kernel_rank - diag.len();
    let torsion: Vec<u64> = diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    Ok(AbelianGroup::new(free, &torsion))
}
