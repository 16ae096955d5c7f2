use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Empty shapes (`0 x n`, `n x 0`) are valid and act as zero maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::from(c);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from `i64` rows. Panics on ragged input.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(v: &[BigInt]) -> Self {
        Self::from_columns(v.len(), &[v.to_vec()])
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

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        *self.get_mut(i, j) = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let r0 = rows.start;
        let c0 = cols.start;
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Adds `block` into `self` at `(r0, c0)`.
    pub fn add_at(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !b.is_zero() {
                    self.data[(r0 + i) * self.cols + c0 + j] += b;
                }
            }
        }
    }

    /// Assembles a block matrix. Row heights come from `row_sizes`, column
    /// widths from `col_sizes`; `None` blocks are zero.
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<Self>>]) -> Self {
        let total_r = row_sizes.iter().sum();
        let total_c = col_sizes.iter().sum();
        let mut out = Self::zeros(total_r, total_c);
        let mut r0 = 0;
        for (bi, &h) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &w) in col_sizes.iter().enumerate() {
                if let Some(Some(b)) = blocks.get(bi).map(|row| row.get(bj).cloned().flatten()) {
                    assert_eq!(b.shape(), (h, w), "block ({bi},{bj}) shape");
                    out.put(r0, c0, &b);
                }
                c0 += w;
            }
            r0 += h;
        }
        out
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        assert!(parts.iter().all(|p| p.rows == rows), "hstack row mismatch");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.put(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Self]) -> Self {
        let cols = parts.first().map_or(0, |p| p.cols);
        assert!(parts.iter().all(|p| p.cols == cols), "vstack col mismatch");
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            out.put(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        out.put(0, 0, a);
        out.put(a.rows, a.cols, b);
        out
    }

    /// Kronecker product; row index `(i, k)` maps to `i * b.rows + k`.
    pub fn kron(a: &Self, b: &Self) -> Self {
        Self::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
            let x = a.get(i / b.rows.max(1), j / b.cols.max(1));
            if x.is_zero() {
                BigInt::zero()
            } else {
                x * b.get(i % b.rows, j % b.cols)
            }
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        match self.try_mul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix add shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sub shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = MatrixWire::deserialize(d)?;
        let data = wire
            .data
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("bad integer {s:?} in matrix data")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        IntMatrix::from_vec(wire.rows, wire.cols, data).map_err(D::Error::custom)
    }
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// `(-1)^k` as a machine integer.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_shapes_multiply_to_zero_maps() {
        let a = IntMatrix::zeros(3, 0);
        let b = IntMatrix::zeros(0, 2);
        let c = &a * &b;
        assert_eq!(c.shape(), (3, 2));
        assert!(c.is_zero());
    }

    #[test]
    fn kron_matches_block_layout() {
        let a = IntMatrix::from_rows(&[&[1, 2]]);
        let b = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
        let k = IntMatrix::kron(&a, &b);
        assert_eq!(k, IntMatrix::from_rows(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let m = IntMatrix::from_rows(&[&[1, -2]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"data":["1","-2"]}"#);
        let big: IntMatrix =
            serde_json::from_str(r#"{"rows":1,"cols":1,"data":["123456789012345678901234567890"]}"#)
                .unwrap();
        assert_eq!(big.get(0, 0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn wrong_entry_count_is_rejected() {
        let r: std::result::Result<IntMatrix, _> =
            serde_json::from_str(r#"{"rows":2,"cols":2,"data":["1"]}"#);
        assert!(r.is_err());
    }
}
