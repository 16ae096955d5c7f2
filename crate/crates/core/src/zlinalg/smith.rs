use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `u * m * v = d` with `u`, `v` unimodular and `d` in Smith normal form.
///
/// The inverses of `u` and `v` are tracked alongside since most consumers
/// (splittings, sections of cokernels) need them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Nonzero entry of least absolute value in the trailing block, ties
    /// broken by lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                    best = Some(((i, j), ax));
                }
            }
        }
        best.map(|(p, _)| p)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.pivot(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            let p = r.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let x = r.a.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = &x / &p;
                r.add_row(i, t, &-q);
                if !r.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let x = r.a.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = &x / &p;
                r.add_col(j, t, &-q);
                if !r.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot appeared; restart on it
                let (pi, pj) = r.pivot(t).expect("pivot exists");
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !r.a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => r.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a.get(t, t).is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !r.a.get(i, i).is_zero()).count();
    SmithDecomposition {
        u: r.u,
        d: r.a,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank,
    }
}

/// Integer solution of `m * x = b`, if one exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    Ok(solve_with(&smith_normal_form(m), b))
}

pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank() {
            let di = snf.d.get(i, i);
            let (q, rem) = ci.div_rem(di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Solves `m * x = b` column by column.
pub fn solve_matrix(m: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    if b.rows() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has {} rows, matrix has {}",
            b.rows(),
            m.rows()
        )));
    }
    let snf = smith_normal_form(m);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve_with(&snf, &b.column(j)) {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(IntMatrix::from_columns(m.cols(), &cols)))
}

/// Columns form a basis of the integer kernel of `m`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    snf.v.submatrix(0..m.cols(), snf.rank()..m.cols())
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Square with all invariant factors equal to one.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let snf = smith_normal_form(m);
    snf.rank() == m.rows() && snf.invariant_factors().iter().all(|d| *d == BigInt::from(1))
}

pub fn inverse_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    if !is_unimodular(m) {
        return None;
    }
    // u m v = 1  =>  m^-1 = v u
    let snf = smith_normal_form(m);
    Some(&snf.v * &snf.u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::matrix::ints;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!((&s.u * &s.u_inv).is_identity());
        assert!((&s.v * &s.v_inv).is_identity());
        s
    }

    #[test]
    fn one_by_one_is_already_diagonal() {
        let s = check(&IntMatrix::from_rows(&[&[6]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[&[6]]));
        assert!(s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn coprime_diagonal_collapses() {
        // hand reduction: diag(2,3) ~ diag(1,6)
        let s = check(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn empty_matrix() {
        let s = check(&IntMatrix::zeros(0, 0));
        assert_eq!(s.rank(), 0);
        assert_eq!(s.d.shape(), (0, 0));
    }

    #[test]
    fn negative_pivots_become_positive() {
        let s = check(&IntMatrix::from_rows(&[&[-4, 0], &[0, -6]]));
        assert_eq!(s.invariant_factors(), ints(&[2, 12]));
    }

    #[test]
    fn solve_examples() {
        let two = IntMatrix::from_rows(&[&[2]]);
        assert_eq!(solve(&two, &ints(&[4])).unwrap(), Some(ints(&[2])));
        assert_eq!(solve(&two, &ints(&[3])).unwrap(), None);
        let m = IntMatrix::from_rows(&[&[1, 1], &[0, 2]]);
        assert_eq!(solve(&m, &ints(&[3, 4])).unwrap(), Some(ints(&[1, 2])));
        assert!(solve(&m, &ints(&[1])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[&[0]])), IntMatrix::from_rows(&[&[1]]));
        let k = kernel_basis(&IntMatrix::from_rows(&[&[1, 1]]));
        assert_eq!(k.shape(), (2, 1));
        assert!(k == IntMatrix::from_rows(&[&[1], &[-1]]) || k == IntMatrix::from_rows(&[&[-1], &[1]]));
        let k = kernel_basis(&IntMatrix::from_rows(&[&[2, 4]]));
        assert_eq!(k.cols(), 1);
        let g = k.column(0);
        assert!(g == ints(&[2, -1]) || g == ints(&[-2, 1]));
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        let inv = inverse_unimodular(&m).unwrap();
        assert!((&m * &inv).is_identity());
        assert!(inverse_unimodular(&IntMatrix::from_rows(&[&[2]])).is_none());
    }
}
