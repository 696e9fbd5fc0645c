//! Dense integer matrices with arbitrary-precision entries, plus the
//! Smith and Hermite normal forms used by the lattice routines.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n_rows = rows.len();
        Some(IntMatrix { rows: n_rows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged matrix literal")
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows_iter().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.rows_iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape());
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let rows = range.clone().map(|i| self.row(i).to_vec()).collect();
        IntMatrix::from_rows(self.cols, rows).unwrap()
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let width = range.len();
        let rows = self
            .rows_iter()
            .map(|r| r[range.clone()].to_vec())
            .collect();
        IntMatrix::from_rows(width, rows).unwrap()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let rows = self
            .rows_iter()
            .zip(other.rows_iter())
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        IntMatrix::from_rows(self.cols + other.cols, rows).unwrap()
    }

    /// Reduces every entry of row `i` modulo `moduli[i]` into `[0, m)`; a zero
    /// modulus leaves the row untouched.
    pub fn reduce_rows_mod(&self, moduli: &[BigInt]) -> IntMatrix {
        let mut out = self.clone();
        for (i, m) in moduli.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let m = m.abs();
            for j in 0..self.cols {
                out[(i, j)] = out[(i, j)].mod_floor(&m);
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        snf(self).rank
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_dst += c * row_src
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let v = &self.data[src * self.cols + k] * c;
            self.data[dst * self.cols + k] += v;
        }
    }

    /// col_dst += c * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * c;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.rows_iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())).finish()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.rows_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// Matrix entries may be written either as decimal strings or as plain JSON
/// integers; strings are the canonical output form.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntLiteral {
    Str(String),
    Int(i64),
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<IntLiteral>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for lit in row {
                out.push(match lit {
                    IntLiteral::Int(v) => BigInt::from(v),
                    IntLiteral::Str(s) => s
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| D::Error::custom(format!("invalid integer literal {s:?}")))?,
                });
            }
            parsed.push(out);
        }
        IntMatrix::from_rows(cols, parsed).ok_or_else(|| D::Error::custom("ragged matrix"))
    }
}

/// `left * A * right = diag(diag)`, with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// The diagonal as a matrix of the original shape.
    pub fn diag_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.left.nrows(), self.right.nrows(), &self.diag)
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diag[..self.rank]
    }
}

fn min_abs_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form with both transforms and their inverses.
pub fn snf(a: &IntMatrix) -> Snf {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Elementary operations applied to `d` are mirrored on the transforms.
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst: usize, src: usize, c: &BigInt| {
        d.add_row_multiple(dst, src, c);
        u.add_row_multiple(dst, src, c);
        u_inv.add_col_multiple(src, dst, &-c);
    };
    let row_swap = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize| {
        d.swap_rows(i, j);
        u.swap_rows(i, j);
        u_inv.swap_cols(i, j);
    };
    let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst: usize, src: usize, c: &BigInt| {
        d.add_col_multiple(dst, src, c);
        v.add_col_multiple(dst, src, c);
        v_inv.add_row_multiple(src, dst, &-c);
    };
    let col_swap = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize| {
        d.swap_cols(i, j);
        v.swap_cols(i, j);
        v_inv.swap_rows(i, j);
    };

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_nonzero(&d, t) else { break };
        row_swap(&mut d, &mut u, &mut u_inv, t, pi);
        col_swap(&mut d, &mut v, &mut v_inv, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    row_swap(&mut d, &mut u, &mut u_inv, t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_add(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    col_swap(&mut d, &mut v, &mut v_inv, t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offending {
                Some(i) => row_add(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            // negating row t of u corresponds to negating column t of u_inv
            for r in 0..m {
                let x = -&u_inv[(r, t)];
                u_inv[(r, t)] = x;
            }
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    let rank = diag.iter().take_while(|x| !x.is_zero()).count();
    Snf { left: u, left_inv: u_inv, diag, right: v, right_inv: v_inv, rank }
}

/// Row-style Hermite normal form of the row span: echelon form with
/// positive pivots, entries above each pivot reduced into `[0, pivot)`,
/// zero rows dropped.
pub fn hnf_rows(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = h.shape();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(r, col)]);
                h.add_row_multiple(i, r, &-q);
                if !h[(i, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, col)].div_floor(&h[(r, col)]);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    h.select_rows(0..r)
}

/// Solves `a * x = b` over the integers, returning one solution if any exists.
pub fn solve_integer(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.nrows(), b.nrows(), "right-hand side height mismatch");
    let s = snf(a);
    let ub = s.left.mul(b);
    let n = a.ncols();
    let mut y = IntMatrix::zeros(n, b.ncols());
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let rhs = &ub[(i, j)];
            if i < s.rank {
                let (q, r) = rhs.div_mod_floor(&s.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !rhs.is_zero() {
                return None;
            }
        }
    }
    Some(s.right.mul(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(cols, rows)
    }

    fn check_snf(a: &IntMatrix) -> Snf {
        let s = snf(a);
        assert_eq!(s.left.mul(a).mul(&s.right), s.diag_matrix());
        assert_eq!(s.left.mul(&s.left_inv), IntMatrix::identity(a.nrows()));
        assert_eq!(s.right.mul(&s.right_inv), IntMatrix::identity(a.ncols()));
        assert_eq!(s.left_inv.mul(&s.diag_matrix()).mul(&s.right_inv), *a);
        for w in s.diag.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_two_by_two() {
        let s = check_snf(&m(2, &[&[2, 4], &[6, 8]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_identity_and_zero() {
        let s = check_snf(&IntMatrix::identity(3));
        assert!(s.diag.iter().all(|d| d.is_one()));
        let s = check_snf(&IntMatrix::zeros(2, 2));
        assert!(s.diag.iter().all(Zero::is_zero));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn snf_rectangular_and_negative() {
        check_snf(&m(3, &[&[-4, 6, 0], &[10, -14, 8]]));
        check_snf(&m(2, &[&[0, 0], &[0, -3], &[5, 0]]));
        let s = check_snf(&m(1, &[&[2], &[-3]]));
        assert_eq!(s.diag, vec![BigInt::one()]);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf_rows(&m(2, &[&[2, 4], &[0, 3]]));
        let b = hnf_rows(&m(2, &[&[2, 7], &[2, 4], &[4, 11]]));
        assert_eq!(a, b);
        assert_eq!(a, m(2, &[&[2, 1], &[0, 3]]));
    }

    #[test]
    fn det_bareiss() {
        assert_eq!(m(2, &[&[2, 4], &[6, 8]]).det(), BigInt::from(-8));
        assert_eq!(m(3, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]).det(), BigInt::from(-5));
        assert_eq!(m(2, &[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn integer_solve() {
        let a = m(1, &[&[2], &[4]]);
        assert!(solve_integer(&a, &m(1, &[&[1], &[2]])).is_none());
        let x = solve_integer(&a, &m(1, &[&[6], &[12]])).unwrap();
        assert_eq!(a.mul(&x), m(1, &[&[6], &[12]]));
    }

    #[test]
    fn json_matrix_literals() {
        let a: IntMatrix = serde_json::from_str(r#"[["2","-4"],[6, 8]]"#).unwrap();
        assert_eq!(a, m(2, &[&[2, -4], &[6, 8]]));
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"[["2","-4"],["6","8"]]"#);
    }
}
