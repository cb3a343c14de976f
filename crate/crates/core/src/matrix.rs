//! Dense integer matrices with arbitrary-precision entries, Smith normal
//! form, and exact linear solving. This is the substrate for every kernel,
//! image, and quotient computation in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix::from_fn(rows, cols, |r, c| BigInt::from(data[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &BigInt) {
        self.entries[r * self.cols + c] += v;
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
        assert!(cols.iter().all(|c| c.len() == rows), "column length mismatch");
        IntMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    /// Fraction-free determinant (Bareiss). Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                // pivot by row swap
                let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        sign * a[(n - 1) * n + (n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * self.at(k, j);
            self.entries[i * self.cols + j] -= t;
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * self.at(i, k);
            self.entries[i * self.cols + j] -= t;
        }
    }

    /// row_i += q * row_k
    fn row_add(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * self.at(k, j);
            self.entries[i * self.cols + j] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.entries[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            self.entries[i * self.cols + j] = v;
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Full Smith decomposition `u * m * v = d` with tracked inverses,
/// `u * u_inv = 1`, `v * v_inv = 1`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Solve `m x = y` exactly over the integers.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(y.len(), self.d.rows(), "rhs length mismatch");
        let c = self.u.mul_vec(y);
        let mut w = vec![BigInt::zero(); self.d.cols()];
        let diag = self.d.rows().min(self.d.cols());
        for i in 0..self.d.rows() {
            if i < diag && !self.d.at(i, i).is_zero() {
                let d = self.d.at(i, i);
                if (&c[i] % d).is_zero() {
                    w[i] = &c[i] / d;
                } else {
                    return None;
                }
            } else if !c[i].is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&w))
    }

    /// Basis for the integer kernel of `m` (columns of `v` past the rank).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let rank = self.rank();
        (rank..self.d.cols()).map(|j| self.v.col(j)).collect()
    }
}

/// Smallest nonzero |entry| in the trailing submatrix, ties broken by
/// (row, col) order. Deterministic by construction.
fn find_pivot(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<BigInt> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let e = d.at(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best_abs {
                Some(b) if *b <= a => {}
                _ => {
                    best_abs = Some(a);
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// Smith normal form with full transform tracking.
pub fn smith(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // elementary ops, each mirrored on the transforms:
    //   row_i -= q*row_k  =>  u: same;        u_inv: col_k += q*col_i
    //   col_j -= q*col_k  =>  v: same;        v_inv: row_k += q*row_j
    let mut k = 0;
    let n = rows.min(cols);
    while k < n {
        let Some((pi, pj)) = find_pivot(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        u_inv.swap_cols(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);

        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if d.at(i, k).is_zero() {
                    continue;
                }
                let q = d.at(i, k) / d.at(k, k);
                d.row_sub(i, k, &q);
                u.row_sub(i, k, &q);
                u_inv.col_add(k, i, &q);
                if !d.at(i, k).is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if d.at(k, j).is_zero() {
                    continue;
                }
                let q = d.at(k, j) / d.at(k, k);
                d.col_sub(j, k, &q);
                v.col_sub(j, k, &q);
                v_inv.row_add(k, j, &q);
                if !d.at(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // remainders are strictly smaller than the old pivot
                let (pi, pj) = find_pivot(&d, k).expect("dirty submatrix has a pivot");
                d.swap_rows(k, pi);
                u.swap_rows(k, pi);
                u_inv.swap_cols(k, pi);
                d.swap_cols(k, pj);
                v.swap_cols(k, pj);
                v_inv.swap_rows(k, pj);
                continue;
            }
            // row k and column k are clear; enforce divisibility of the rest
            let mut fix: Option<usize> = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.at(i, j) % d.at(k, k)).is_zero() {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = BigInt::one();
                    d.row_add(k, i, &one);
                    u.row_add(k, i, &one);
                    u_inv.col_sub(i, k, &one);
                }
                None => break,
            }
        }
        k += 1;
    }

    for i in 0..n {
        if d.at(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
            u_inv.negate_col(i);
        }
    }

    SmithForm { u, u_inv, d, v, v_inv }
}

impl IntMatrix {
    /// col_j += q * col_k
    fn col_add(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * self.at(i, k);
            self.entries[i * self.cols + j] += t;
        }
    }
}

/// The `(U, D, V)` triple with `U*M*V = D`, `U, V` unimodular, and the
/// diagonal of `D` a divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(m);
    (s.u, s.d, s.v)
}
