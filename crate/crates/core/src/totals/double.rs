use std::collections::BTreeMap;

use crate::complexes::{Complex, Proto};
use crate::error::{Error, Result};
use crate::signs::{self, SignSite};
use crate::zlinalg::{sign, IntMatrix};

/// A bounded chain complex of complexes: columns `A_m` and degree-0
/// chain maps `δ_m : A_m -> A_{m-1}` with `δ_{m-1} δ_m = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    lo: i64,
    columns: Vec<Complex>,
    delta: Vec<Proto>,
}

impl DoubleComplex {
    /// `delta[m]` is `δ_m`; missing entries are zero.
    pub fn new(columns: BTreeMap<i64, Complex>, delta: BTreeMap<i64, Proto>) -> Result<Self> {
        let nonzero: Vec<i64> = columns.iter().filter(|(_, c)| !c.is_zero()).map(|(&m, _)| m).collect();
        let (Some(&lo), Some(&hi)) = (nonzero.first(), nonzero.last()) else {
            if let Some((m, _)) = delta.iter().find(|(_, d)| !d.source().is_zero() || !d.target().is_zero()) {
                return Err(Error::Shape(format!("delta_{m} between zero columns has nonzero ends")));
            }
            return Ok(Self::zero());
        };
        let cols: Vec<Complex> =
            (lo..=hi).map(|m| columns.get(&m).cloned().unwrap_or_else(Complex::zero)).collect();
        let column = |m: i64| if (lo..=hi).contains(&m) { cols[(m - lo) as usize].clone() } else { Complex::zero() };
        for (&m, d) in &delta {
            if d.source() != &column(m) || d.target() != &column(m - 1) || d.degree() != 0 {
                return Err(Error::Shape(format!("delta_{m} is not a degree-0 map A_{m} -> A_{}", m - 1)));
            }
            d.require_chain_map(&format!("delta_{m}"))?;
        }
        let mut ds = Vec::new();
        for m in lo + 1..=hi {
            ds.push(delta.get(&m).cloned().unwrap_or_else(|| Proto::zero(&column(m), &column(m - 1), 0)));
        }
        let out = DoubleComplex { lo, columns: cols, delta: ds };
        for m in lo + 2..=hi {
            if !Proto::compose(&out.delta(m - 1), &out.delta(m))?.is_zero() {
                return Err(Error::SquareZeroViolated { degree: m });
            }
        }
        Ok(out)
    }

    pub fn zero() -> Self {
        DoubleComplex { lo: 0, columns: Vec::new(), delta: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column indices `m` of the nonzero range.
    pub fn column_range(&self) -> std::ops::RangeInclusive<i64> {
        if self.is_zero() {
            #[allow(clippy::reversed_empty_ranges)]
            return 0..=-1;
        }
        self.lo..=self.lo + self.columns.len() as i64 - 1
    }

    pub fn column(&self, m: i64) -> Complex {
        if self.column_range().contains(&m) {
            self.columns[(m - self.lo) as usize].clone()
        } else {
            Complex::zero()
        }
    }

    /// `δ_m : A_m -> A_{m-1}`.
    pub fn delta(&self, m: i64) -> Proto {
        if m > self.lo && self.column_range().contains(&m) {
            self.delta[(m - self.lo - 1) as usize].clone()
        } else {
            Proto::zero(&self.column(m), &self.column(m - 1), 0)
        }
    }

    pub fn columns(&self) -> BTreeMap<i64, Complex> {
        self.column_range().map(|m| (m, self.column(m))).collect()
    }

    pub fn deltas(&self) -> BTreeMap<i64, Proto> {
        self.column_range().skip(1).map(|m| (m, self.delta(m))).collect()
    }

    /// Blocks `(m, offset, rank)` of `(Tot A)_n = ⊕_m A_{m, n-m}`.
    pub fn tot_layout(&self, n: i64) -> Vec<(i64, usize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for m in self.column_range() {
            let r = self.column(m).rank(n - m);
            if r > 0 {
                out.push((m, offset, r));
                offset += r;
            }
        }
        out
    }

    pub fn tot_rank(&self, n: i64) -> usize {
        self.column_range().map(|m| self.column(m).rank(n - m)).sum()
    }

    fn tot_support(&self) -> Option<(i64, i64)> {
        let mut lo = None;
        let mut hi = None;
        for m in self.column_range() {
            let c = self.column(m);
            if c.is_zero() {
                continue;
            }
            lo = Some(lo.map_or(m + c.lo(), |l: i64| l.min(m + c.lo())));
            hi = Some(hi.map_or(m + c.hi(), |h: i64| h.max(m + c.hi())));
        }
        lo.zip(hi)
    }
}

/// `Tot A = ⊕_m S^m A_m` with `d(a) = δ_m a + (-1)^m d a` for `a ∈ A_{m,k}`.
pub fn total_complex(a: &DoubleComplex) -> Result<Complex> {
    let Some((lo, hi)) = a.tot_support() else { return Ok(Complex::zero()) };
    let flip = signs::factor(SignSite::TotalDifferential);
    let ranks = (lo..=hi).map(|n| a.tot_rank(n)).collect();
    let tot = Complex::build(lo, ranks, |n| {
        let mut d = IntMatrix::zeros(a.tot_rank(n - 1), a.tot_rank(n));
        let below = a.tot_layout(n - 1);
        let row_of = |m: i64| below.iter().find(|b| b.0 == m).map(|b| b.1);
        for (m, col, _) in a.tot_layout(n) {
            let k = n - m;
            if let Some(row) = row_of(m - 1) {
                d.add_at(row, col, &a.delta(m).comp(k));
            }
            if let Some(row) = row_of(m) {
                d.add_at(row, col, &a.column(m).d(k).scale_i64(sign(m) * flip));
            }
        }
        d
    })?;
    tot.check_d_squared()?;
    Ok(tot)
}

/// `i X`: the double complex with `X` in column 0.
pub fn embed_i(x: &Complex) -> DoubleComplex {
    DoubleComplex::new([(0, x.clone())].into(), BTreeMap::new()).expect("single column")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::homology_h;

    fn square() -> DoubleComplex {
        // ℤ at (m, k) for m, k ∈ {0, 1}, identity maps in both directions
        let col = Complex::new(0, vec![1, 1], [(1, IntMatrix::identity(1))].into()).unwrap();
        let delta = Proto::identity(&col);
        DoubleComplex::new([(0, col.clone()), (1, col)].into(), [(1, delta)].into()).unwrap()
    }

    #[test]
    fn single_column() {
        let x = crate::complexes::l_z();
        assert_eq!(total_complex(&embed_i(&x)).unwrap(), x);
        assert!(total_complex(&embed_i(&Complex::zero())).unwrap().is_zero());
    }

    #[test]
    fn single_entry_shifts() {
        let a = DoubleComplex::new([(1, Complex::point(0))].into(), BTreeMap::new()).unwrap();
        assert_eq!(total_complex(&a).unwrap(), Complex::point(1));
    }

    #[test]
    fn anticommuting_square_is_acyclic() {
        let tot = total_complex(&square()).unwrap();
        assert_eq!(tot.rank_map(), [(0, 1), (1, 2), (2, 1)].into());
        assert!(homology_h(&tot).is_zero());
    }

    #[test]
    fn rejects_bad_delta() {
        let c = Complex::point(0);
        let twice = Proto::identity(&c).scale_i64(2);
        let bad = DoubleComplex::new([(0, c.clone()), (1, c.clone()), (2, c)].into(), [(1, twice.clone()), (2, twice)].into());
        assert_eq!(bad.unwrap_err(), Error::SquareZeroViolated { degree: 2 });
        let wrong = DoubleComplex::new([(0, Complex::point(0))].into(), [(0, Proto::identity(&Complex::point(0)))].into());
        assert!(matches!(wrong, Err(Error::Shape(_))));
    }

    #[test]
    fn rank_count() {
        let a = square();
        let tot = total_complex(&a).unwrap();
        for n in -1..=3 {
            let expected: usize = (0..=1).map(|m| a.column(m).rank(n - m)).sum();
            assert_eq!(tot.rank(n), expected);
        }
    }
}
