use super::super::complexes::{Complex, Proto};
use crate::error::Result;
use crate::signs::{self, SignSite};
use crate::zlinalg::{sign, IntMatrix};

/// One summand `A_p ⊗ B_q` of `(A ⊗ B)_n`; basis element `(i, j)` sits at
/// `offset + i * right + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorBlock {
    pub p: i64,
    pub q: i64,
    pub offset: usize,
    pub left: usize,
    pub right: usize,
}

impl TensorBlock {
    pub fn size(&self) -> usize {
        self.left * self.right
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        self.offset + i * self.right + j
    }
}

/// Summands of `(A ⊗ B)_n` in ascending left degree.
pub fn tensor_layout(a: &Complex, b: &Complex, n: i64) -> Vec<TensorBlock> {
    let mut offset = 0;
    let mut out = Vec::new();
    for p in a.support() {
        let (left, right) = (a.rank(p), b.rank(n - p));
        if left * right == 0 {
            continue;
        }
        out.push(TensorBlock { p, q: n - p, offset, left, right });
        offset += left * right;
    }
    out
}

pub fn tensor_rank(a: &Complex, b: &Complex, n: i64) -> usize {
    tensor_layout(a, b, n).iter().map(TensorBlock::size).sum()
}

/// `d(a ⊗ b) = da ⊗ b + (-1)^p a ⊗ db`.
pub fn tensor_differential(a: &Complex, b: &Complex, n: i64) -> IntMatrix {
    let src = tensor_layout(a, b, n);
    let dst = tensor_layout(a, b, n - 1);
    let mut out = IntMatrix::zeros(tensor_rank(a, b, n - 1), tensor_rank(a, b, n));
    let flip = signs::factor(SignSite::TensorDifferential);
    for s in &src {
        if let Some(t) = dst.iter().find(|t| t.p == s.p - 1) {
            out.add_at(t.offset, s.offset, &IntMatrix::kron(&a.d(s.p), &IntMatrix::identity(s.right)));
        }
        if let Some(t) = dst.iter().find(|t| t.p == s.p) {
            let block = IntMatrix::kron(&IntMatrix::identity(s.left), &b.d(s.q));
            out.add_at(t.offset, s.offset, &block.scale_i64(sign(s.p) * flip));
        }
    }
    out
}

pub fn tensor(a: &Complex, b: &Complex) -> Result<Complex> {
    if a.is_zero() || b.is_zero() {
        return Ok(Complex::zero());
    }
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    let ranks = (lo..=hi).map(|n| tensor_rank(a, b, n)).collect();
    Complex::build(lo, ranks, |n| tensor_differential(a, b, n))
}

/// `(f ⊗ g)(a ⊗ b) = (-1)^{|g| |a|} f(a) ⊗ g(b)`.
pub fn tensor_proto(f: &Proto, g: &Proto) -> Result<Proto> {
    let (r, s) = (f.degree(), g.degree());
    let source = tensor(f.source(), g.source())?;
    let target = tensor(f.target(), g.target())?;
    Proto::build(source, target, r + s, |n, rows, cols| {
        let mut m = IntMatrix::zeros(rows, cols);
        let dst = tensor_layout(f.target(), g.target(), n + r + s);
        for blk in tensor_layout(f.source(), g.source(), n) {
            if let Some(t) = dst.iter().find(|t| t.p == blk.p + r) {
                let k = IntMatrix::kron(&f.comp(blk.p), &g.comp(blk.q));
                m.add_at(t.offset, blk.offset, &k.scale_i64(sign(s * blk.p)));
            }
        }
        m
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complexes::l_z;
    use crate::zlinalg::ints;

    #[test]
    fn unit_law_is_literal() {
        let a = Complex::new(0, vec![2, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[1], &[3]]))])).unwrap();
        assert_eq!(tensor(&Complex::point(0), &a).unwrap(), a);
        assert_eq!(tensor(&a, &Complex::point(0)).unwrap(), a);
    }

    #[test]
    fn lz_squared_ranks() {
        let t = tensor(&l_z(), &l_z()).unwrap();
        assert_eq!(t.rank_map(), BTreeMap::from([(-2, 1), (-1, 2), (0, 1)]));
    }

    #[test]
    fn identity_tensor_identity() {
        let lz = l_z();
        let one = Proto::identity(&lz);
        assert_eq!(tensor_proto(&one, &one).unwrap(), Proto::identity(&tensor(&lz, &lz).unwrap()));
    }

    #[test]
    fn interchange_sign_on_degree_one() {
        // f, g of degree 1 on K(0) ⊕ K(1); the two composites differ by -1
        let a = Complex::graded(0, vec![1, 1]);
        let f = Proto::from_vector(&a, &a, 1, &ints(&[1])).unwrap();
        let g = Proto::from_vector(&a, &a, 1, &ints(&[1])).unwrap();
        let one = Proto::identity(&a);
        let lhs = Proto::compose(&tensor_proto(&f, &one).unwrap(), &tensor_proto(&one, &g).unwrap()).unwrap();
        let rhs = Proto::compose(&tensor_proto(&one, &g).unwrap(), &tensor_proto(&f, &one).unwrap()).unwrap();
        assert!(!lhs.is_zero());
        assert_eq!(lhs, rhs.scale_i64(-1));
    }

    #[test]
    fn tensor_of_chain_maps() {
        let lz = l_z();
        let f = crate::complexes::chain_map_basis(&lz, &lz).remove(0);
        assert!(tensor_proto(&f, &f).unwrap().is_chain_map());
    }
}
