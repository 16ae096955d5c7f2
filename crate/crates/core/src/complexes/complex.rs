use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::zlinalg::{sign, IntMatrix};

/// A bounded chain complex of finitely generated free abelian groups.
///
/// `d(n)` maps degree `n` to degree `n - 1`. Zero ranks at both ends of the
/// support are trimmed, so structurally equal complexes compare equal. The
/// zero complex has `lo = 0` and no ranks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    lo: i64,
    ranks: Vec<usize>,
    // diffs[i] is d at degree lo + i + 1
    diffs: Vec<IntMatrix>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex { lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// ℤ concentrated in degree `n`.
    pub fn point(n: i64) -> Self {
        Self::graded(n, vec![1])
    }

    /// Complex with the given ranks starting at `lo` and zero differentials.
    pub fn graded(lo: i64, ranks: Vec<usize>) -> Self {
        Self::build(lo, ranks.clone(), |n| {
            let r = |k: i64| rank_at(lo, &ranks, k);
            IntMatrix::zeros(r(n - 1), r(n))
        })
        .expect("zero differentials are valid")
    }

    /// Validating constructor. `diffs` may omit degrees, which are taken
    /// to be zero.
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let rank = |k: i64| rank_at(lo, &ranks, k);
        for (&n, m) in &diffs {
            let want = (rank(n - 1), rank(n));
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Self::build(lo, ranks.clone(), |n| {
            diffs.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(rank(n - 1), rank(n)))
        })
    }

    /// Builds from a differential callback, checking shapes and d² = 0.
    pub fn build(lo: i64, ranks: Vec<usize>, mut d: impl FnMut(i64) -> IntMatrix) -> Result<Self> {
        let first = ranks.iter().position(|&r| r > 0);
        let Some(first) = first else { return Ok(Self::zero()) };
        let last = ranks.iter().rposition(|&r| r > 0).unwrap();
        let ranks: Vec<usize> = ranks[first..=last].to_vec();
        let lo = lo + first as i64;
        let mut diffs = Vec::with_capacity(ranks.len().saturating_sub(1));
        for i in 1..ranks.len() {
            let n = lo + i as i64;
            let m = d(n);
            if m.shape() != (ranks[i - 1], ranks[i]) {
                return Err(Error::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    ranks[i - 1],
                    ranks[i]
                )));
            }
            diffs.push(m);
        }
        let c = Complex { lo, ranks, diffs };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.diffs.len() {
            if !(&self.diffs[i - 1] * &self.diffs[i]).is_zero() {
                return Err(Error::SquareZeroViolated { degree: self.lo + i as i64 + 1 });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn support(&self) -> RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank_map(&self) -> BTreeMap<i64, usize> {
        self.support().map(|n| (n, self.rank(n))).collect()
    }

    pub fn rank(&self, n: i64) -> usize {
        rank_at(self.lo, &self.ranks, n)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_n : A_n -> A_{n-1}`, zero-shaped outside the support.
    pub fn d(&self, n: i64) -> IntMatrix {
        let i = n - self.lo - 1;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(n - 1), self.rank(n))
        }
    }

    pub fn diffs(&self) -> BTreeMap<i64, IntMatrix> {
        self.diffs.iter().enumerate().map(|(i, m)| (self.lo + i as i64 + 1, m.clone())).collect()
    }

    pub fn is_graded(&self) -> bool {
        self.diffs.iter().all(IntMatrix::is_zero)
    }

    /// First degree with a nonzero differential.
    pub fn nonzero_differential(&self) -> Option<i64> {
        self.diffs.iter().position(|m| !m.is_zero()).map(|i| self.lo + i as i64 + 1)
    }

    /// `S^k A`: degrees shift up by `k`, differentials pick up `(-1)^k`.
    pub fn suspend(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let s = sign(k);
        Complex {
            lo: self.lo + k,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|m| m.scale_i64(s)).collect(),
        }
    }

    /// Degreewise `A_n ⊕ B_n` with block-diagonal differential.
    pub fn direct_sum(a: &Complex, b: &Complex) -> Self {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let lo = a.lo().min(b.lo());
        let hi = a.hi().max(b.hi());
        let ranks = (lo..=hi).map(|n| a.rank(n) + b.rank(n)).collect();
        Self::build(lo, ranks, |n| IntMatrix::direct_sum(&a.d(n), &b.d(n))).expect("sum of complexes")
    }

    /// The underlying graded object `U A`.
    pub fn forget(&self) -> Self {
        Self::graded(self.lo, self.ranks.clone())
    }

    pub fn check_d_squared(&self) -> Result<()> {
        self.check_square_zero()
    }
}

fn rank_at(lo: i64, ranks: &[usize], n: i64) -> usize {
    let i = n - lo;
    if i >= 0 && (i as usize) < ranks.len() {
        ranks[i as usize]
    } else {
        0
    }
}

impl std::fmt::Debug for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "Complex(0)");
        }
        write!(f, "Complex {{ ")?;
        for n in self.support().rev() {
            write!(f, "{n}:{}", self.rank(n))?;
            if n > self.lo {
                write!(f, " --{}--> ", self.d(n))?;
            }
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> Complex {
        Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap()
    }

    #[test]
    fn point_complex() {
        let k = Complex::point(0);
        assert_eq!(k.support(), 0..=0);
        assert_eq!(k.rank(0), 1);
        assert_eq!(k.rank(1), 0);
        assert_eq!(k.d(0).shape(), (0, 1));
    }

    #[test]
    fn single_differential() {
        let c = m2();
        assert_eq!(c.d(1), IntMatrix::from_rows(&[&[2]]));
    }

    #[test]
    fn square_zero_violation_names_degree() {
        let one = IntMatrix::from_rows(&[&[1]]);
        let err = Complex::new(0, vec![1, 1, 1], BTreeMap::from([(2, one.clone()), (1, one)]));
        assert_eq!(err.unwrap_err(), Error::SquareZeroViolated { degree: 2 });
    }

    #[test]
    fn shape_mismatch() {
        let err = Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::zeros(2, 1))]));
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn zero_ranks_are_trimmed() {
        let c = Complex::graded(-3, vec![0, 0, 2, 0, 1, 0]);
        assert_eq!(c.lo(), -1);
        assert_eq!(c.hi(), 1);
        assert_eq!(c.ranks(), &[2, 0, 1]);
        assert_eq!(Complex::graded(5, vec![0, 0]), Complex::zero());
    }

    #[test]
    fn suspension() {
        assert_eq!(Complex::point(0).suspend(1), Complex::point(1));
        let s = m2().suspend(1);
        assert_eq!(s.support(), 1..=2);
        assert_eq!(s.d(2), IntMatrix::from_rows(&[&[-2]]));
        assert_eq!(s.suspend(-1), m2());
        assert_eq!(m2().suspend(2).d(3), IntMatrix::from_rows(&[&[2]]));
    }

    #[test]
    fn forget() {
        let u = m2().forget();
        assert_eq!(u.d(1), IntMatrix::from_rows(&[&[0]]));
        assert_eq!(u.forget(), u);
        assert_eq!(Complex::point(0).forget(), Complex::point(0));
    }
}
