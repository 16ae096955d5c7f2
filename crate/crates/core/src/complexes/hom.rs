use super::complex::Complex;
use super::proto::Proto;
use crate::error::Result;
use crate::signs::{self, SignSite};
use crate::zlinalg::{kernel_basis, sign, IntMatrix};

/// One summand `Hom(B_q, C_{q+n})` of `[B, C]_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomBlock {
    pub q: i64,
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

/// Summands of `[B, C]_n` in ascending source degree.
pub fn hom_layout(b: &Complex, c: &Complex, n: i64) -> Vec<HomBlock> {
    let mut offset = 0;
    let mut out = Vec::new();
    for q in b.support() {
        let (rows, cols) = (c.rank(q + n), b.rank(q));
        if rows * cols == 0 {
            continue;
        }
        out.push(HomBlock { q, offset, rows, cols });
        offset += rows * cols;
    }
    out
}

pub fn hom_rank(b: &Complex, c: &Complex, n: i64) -> usize {
    hom_layout(b, c, n).iter().map(|x| x.rows * x.cols).sum()
}

/// Matrix of the hom differential `[B, C]_n -> [B, C]_{n-1}`, assembled
/// from Kronecker blocks on the row-major flattening.
pub fn hom_differential_matrix(b: &Complex, c: &Complex, n: i64) -> IntMatrix {
    let src = hom_layout(b, c, n);
    let dst = hom_layout(b, c, n - 1);
    let mut out = IntMatrix::zeros(hom_rank(b, c, n - 1), hom_rank(b, c, n));
    let s = -sign(n) * signs::factor(SignSite::HomDifferential);
    for t in &dst {
        // d^C f_q lands in the same source degree
        if let Some(x) = src.iter().find(|x| x.q == t.q) {
            let block = IntMatrix::kron(&c.d(t.q + n), &IntMatrix::identity(x.cols));
            out.add_at(t.offset, x.offset, &block);
        }
        // f_{q-1} d^B_q
        if let Some(x) = src.iter().find(|x| x.q == t.q - 1) {
            let block = IntMatrix::kron(&IntMatrix::identity(t.rows), &b.d(t.q).transpose());
            out.add_at(t.offset, x.offset, &block.scale_i64(s));
        }
    }
    out
}

/// Degree range on which `[B, C]` can be nonzero.
pub fn hom_support(b: &Complex, c: &Complex) -> std::ops::RangeInclusive<i64> {
    if b.is_zero() || c.is_zero() {
        return 0..=-1;
    }
    (c.lo() - b.hi())..=(c.hi() - b.lo())
}

/// The internal hom `[B, C]`.
pub fn hom_complex(b: &Complex, c: &Complex) -> Result<Complex> {
    let range = hom_support(b, c);
    if range.is_empty() {
        return Ok(Complex::zero());
    }
    let lo = *range.start();
    let ranks = range.clone().map(|n| hom_rank(b, c, n)).collect();
    Complex::build(lo, ranks, |n| hom_differential_matrix(b, c, n))
}

/// Basis of the degree-`n` cycles of `[B, C]`.
pub fn cycle_basis(b: &Complex, c: &Complex, n: i64) -> Vec<Proto> {
    let k = kernel_basis(&hom_differential_matrix(b, c, n));
    (0..k.cols())
        .map(|j| Proto::from_vector(b, c, n, &k.column(j)).expect("kernel vector fits"))
        .collect()
}

/// Basis of the group of chain maps `B -> C`.
pub fn chain_map_basis(b: &Complex, c: &Complex) -> Vec<Proto> {
    cycle_basis(b, c, 0)
}

/// Columns are the flattened protomorphisms.
pub fn as_columns(b: &Complex, c: &Complex, n: i64, ps: &[Proto]) -> IntMatrix {
    let cols: Vec<_> = ps.iter().map(Proto::to_vector).collect();
    IntMatrix::from_columns(hom_rank(b, c, n), &cols)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complexes::functors::functor_l;
    use crate::zlinalg::ints;

    #[test]
    fn hom_of_units() {
        let k = Complex::point(0);
        assert_eq!(hom_complex(&k, &k).unwrap(), k);
    }

    #[test]
    fn hom_out_of_lz() {
        // hand expansion: [Lℤ, ℤ] has rank 1 in degrees 0 and 1 and its
        // differential sends f (degree 1, on Lℤ_{-1}) to -(-1)^1 f d = f d
        let lz = functor_l(&Complex::point(0)).unwrap();
        let h = hom_complex(&lz, &Complex::point(0)).unwrap();
        assert_eq!(h.rank_map(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(h.d(1), IntMatrix::from_rows(&[&[1]]));
    }

    #[test]
    fn kron_matrix_matches_direct_differential() {
        let b = Complex::new(0, vec![2, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[1], &[-1]]))])).unwrap();
        let c = functor_l(&Complex::graded(0, vec![1, 1])).unwrap();
        for n in hom_support(&b, &c) {
            let m = hom_differential_matrix(&b, &c, n);
            for j in 0..m.cols() {
                let mut e = ints(&vec![0; m.cols()]);
                e[j] = 1.into();
                let f = Proto::from_vector(&b, &c, n, &e).unwrap();
                assert_eq!(f.differential().to_vector(), m.column(j));
            }
        }
    }

    #[test]
    fn chain_maps_into_lz() {
        let lz = functor_l(&Complex::point(0)).unwrap();
        let basis = chain_map_basis(&lz, &lz);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_chain_map());
    }
}
