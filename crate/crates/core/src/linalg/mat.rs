//! Dense exact matrices and Gauss-Jordan elimination.
//!
//! Elimination always takes the leftmost column with a nonzero entry at or
//! below the current pivot row, and within it the topmost such row. No other
//! pivoting strategy is used, so every derived basis (kernel, image,
//! complement) is a deterministic function of the input.

use std::fmt;

use super::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have `cols` entries.
    pub fn from_i64_rows(field: Field, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Mat {
        assert_eq!(entries.len(), rows, "row count");
        let mut m = Mat::zeros(field, rows, cols);
        for (r, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "column count in row {r}");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, field.from_i64(v));
                }
            }
        }
        m
    }

    /// Builds a matrix from row-major scalars.
    pub fn from_scalars(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols, "entry count");
        debug_assert!(data.iter().all(|s| s.field() == field));
        Mat { field, rows, cols, data }
    }

    /// A single column vector.
    pub fn column_vector(field: Field, entries: Vec<Scalar>) -> Mat {
        let n = entries.len();
        Mat::from_scalars(field, n, 1, entries)
    }

    /// The `k`-th standard basis vector of length `n`, as a column.
    pub fn unit_column(field: Field, n: usize, k: usize) -> Mat {
        let mut m = Mat::zeros(field, n, 1);
        m.set(k, 0, field.one());
        m
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        assert_eq!(v.field(), self.field, "scalar field mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.field, rhs.field, "matrix field mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Mat::from_scalars(self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Mat::from_scalars(self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, k: &Scalar) -> Mat {
        let data = self.data.iter().map(|a| a * k).collect();
        Mat::from_scalars(self.field, self.rows, self.cols, data)
    }

    /// Side-by-side concatenation. `rows` fixes the height when `blocks` is empty.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack height mismatch");
            out.paste(0, offset, b);
            offset += b.cols;
        }
        out
    }

    /// Top-to-bottom concatenation. `cols` fixes the width when `blocks` is empty.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack width mismatch");
            out.paste(offset, 0, b);
            offset += b.rows;
        }
        out
    }

    /// Block-diagonal matrix with the blocks in the given order.
    pub fn block_diag(field: Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut out = Mat::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.data[r * out.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Flattens column-major: entry `(t, s)` lands at `s * rows + t`.
    pub fn to_column_major(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c).clone());
            }
        }
        out
    }

    pub fn from_column_major(field: Field, rows: usize, cols: usize, entries: &[Scalar]) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        let mut out = Mat::zeros(field, rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                out.data[r * cols + c] = entries[c * rows + r].clone();
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(self.field, n, &[self, &Mat::identity(self.field, n)]);
        let ech = Echelon::new(&aug);
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ech.reduced.submatrix(0..n, n..2 * n))
    }

    /// Entries as display strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Mat,
    /// Pivot column of row `k` is `pivots[k]`; strictly increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &Mat) -> Echelon {
        let field = m.field;
        let (rows, cols) = m.shape();
        let mut a = m.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(found) = (pr..rows).find(|&r| !a.get(r, c).is_zero()) else {
                continue;
            };
            if found != pr {
                for k in 0..cols {
                    a.data.swap(found * cols + k, pr * cols + k);
                }
            }
            let inv = a.get(pr, c).inv();
            for k in c..cols {
                let idx = pr * cols + k;
                a.data[idx] = &a.data[idx] * &inv;
            }
            for r in 0..rows {
                if r == pr || a.get(r, c).is_zero() {
                    continue;
                }
                let factor = a.get(r, c).clone();
                for k in c..cols {
                    let p = &a.data[pr * cols + k];
                    if p.is_zero() {
                        continue;
                    }
                    let t = &factor * p;
                    let idx = r * cols + k;
                    a.data[idx] = &a.data[idx] - &t;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        debug_assert!(a.data.iter().all(|s| s.field() == field));
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row rank of `m` (equal to its column rank).
pub fn rank(m: &Mat) -> usize {
    Echelon::new(m).rank()
}

/// Columns spanning `ker m`: one per free variable in ascending index order,
/// with that variable set to 1 and the other free variables 0.
pub fn kernel_basis(m: &Mat) -> Mat {
    let field = m.field;
    let n = m.cols;
    let ech = Echelon::new(m);
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let mut out = Mat::zeros(field, n, free.len());
    for (j, &fc) in free.iter().enumerate() {
        out.set(fc, j, field.one());
        for (row, &pc) in ech.pivots.iter().enumerate() {
            let v = ech.reduced.get(row, fc);
            if !v.is_zero() {
                out.set(pc, j, -v);
            }
        }
    }
    out
}

/// The pivot columns of `m`: a basis of its column space made of columns of `m`.
pub fn column_basis(m: &Mat) -> Mat {
    let ech = Echelon::new(m);
    m.select_columns(&ech.pivots)
}

/// Indices `k` of the coordinate vectors `e_k` that the greedy ascending
/// scan adds to `im(span)` until the ambient space `k^n` is spanned.
pub fn image_complement_indices(span: &Mat, ambient_dim: usize) -> Vec<usize> {
    assert_eq!(span.rows, ambient_dim, "span must live in the ambient space");
    let field = span.field;
    let aug = Mat::hstack(field, ambient_dim, &[span, &Mat::identity(field, ambient_dim)]);
    let ech = Echelon::new(&aug);
    ech.pivots
        .iter()
        .filter(|&&c| c >= span.cols)
        .map(|&c| c - span.cols)
        .collect()
}

/// Coordinate vectors completing `im(span)` to a basis of `k^n`, as columns.
pub fn image_complement(span: &Mat, ambient_dim: usize) -> Mat {
    let field = span.field;
    let picks = image_complement_indices(span, ambient_dim);
    Mat::identity(field, ambient_dim).select_columns(&picks)
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent. The
/// particular solution has every free variable set to zero.
pub fn solve(m: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(m.rows, b.rows, "solve: right-hand side height");
    let field = m.field;
    let n = m.cols;
    let k = b.cols;
    let aug = Mat::hstack(field, m.rows, &[m, b]);
    let ech = Echelon::new(&aug);
    if ech.pivots.iter().any(|&c| c >= n) {
        return None;
    }
    let mut x = Mat::zeros(field, n, k);
    for (row, &pc) in ech.pivots.iter().enumerate() {
        for j in 0..k {
            x.set(pc, j, ech.reduced.get(row, n + j).clone());
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn m(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Mat {
        Mat::from_i64_rows(Q, rows, cols, entries)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Mat::zeros(Q, 0, 5)), 0);
        assert_eq!(rank(&Mat::identity(Q, 2)), 2);
        assert_eq!(rank(&m(1, 2, &[vec![1, 0]])), 1);
        assert_eq!(rank(&Mat::zeros(Q, 3, 0)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Mat::identity(Q, 3)).shape(), (3, 0));
        assert_eq!(kernel_basis(&Mat::zeros(Q, 2, 3)), Mat::identity(Q, 3));
        // x1 + x2 = 0 with free x2 = 1
        assert_eq!(kernel_basis(&m(1, 2, &[vec![1, 1]])), m(2, 1, &[vec![-1], vec![1]]));
    }

    #[test]
    fn image_complement_examples() {
        assert_eq!(image_complement(&Mat::identity(Q, 2), 2).shape(), (2, 0));
        assert_eq!(image_complement(&Mat::zeros(Q, 3, 0), 3), Mat::identity(Q, 3));
        let span = m(3, 1, &[vec![1], vec![1], vec![0]]);
        // e2 = (1,1,0) - e1 is skipped once e1 is taken
        assert_eq!(image_complement_indices(&span, 3), vec![0, 2]);
        let full = Mat::hstack(Q, 3, &[&span, &image_complement(&span, 3)]);
        assert_eq!(rank(&full), 3);
    }

    #[test]
    fn solve_examples() {
        let b = m(3, 1, &[vec![4], vec![-2], vec![7]]);
        assert_eq!(solve(&Mat::identity(Q, 3), &b), Some(b.clone()));
        assert_eq!(solve(&Mat::zeros(Q, 2, 2), &m(2, 1, &[vec![1], vec![0]])), None);
        assert_eq!(solve(&m(1, 2, &[vec![1, 1]]), &m(1, 1, &[vec![3]])), Some(m(2, 1, &[vec![3], vec![0]])));
    }

    #[test]
    fn prime_field_rank_differs_from_rational() {
        // det = 2 vanishes in characteristic 2
        let rows = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank(&Mat::from_i64_rows(Q, 2, 2, &rows)), 2);
        assert_eq!(rank(&Mat::from_i64_rows(Field::Prime(2), 2, 2, &rows)), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(2, 2, &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(Q, 2));
        assert!(m(2, 2, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn column_major_roundtrip() {
        let a = m(2, 3, &[vec![1, 2, 3], vec![4, 5, 6]]);
        let flat = a.to_column_major();
        assert_eq!(flat[1].to_string(), "4");
        assert_eq!(Mat::from_column_major(Q, 2, 3, &flat), a);
    }
}
