use num_bigint::BigInt;
use num_traits::Zero;

use crate::complexes::{Complex, Proto};
use crate::error::Result;
use crate::monoidal::{tensor, tensor_layout, tensor_rank};
use crate::zlinalg::IntMatrix;

pub fn unit(len: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[i] = 1.into();
    v
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sub_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Coordinates of `a ⊗ b` in `(A ⊗ B)_{p+q}` for `a ∈ A_p`, `b ∈ B_q`.
pub fn tensor_vector(left: &Complex, right: &Complex, p: i64, a: &[BigInt], q: i64, b: &[BigInt]) -> Vec<BigInt> {
    let n = p + q;
    let mut v = vec![BigInt::zero(); tensor_rank(left, right, n)];
    if let Some(block) = tensor_layout(left, right, n).into_iter().find(|t| t.p == p) {
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[block.index(i, j)] += x * y;
            }
        }
    }
    v
}

/// Applies a degree-0 map out of `A ⊗ B` to `a ⊗ b`.
pub fn apply_bilinear(map: &Proto, left: &Complex, right: &Complex, p: i64, a: &[BigInt], q: i64, b: &[BigInt]) -> Vec<BigInt> {
    let v = tensor_vector(left, right, p, a, q, b);
    map.comp(p + q).mul_vec(&v)
}

/// Builds a degree-0 map `A ⊗ B -> C` from its values `op(p, i, q, j)` on
/// pairs of basis elements `e_i ∈ A_p`, `e_j ∈ B_q`.
pub fn bilinear_map(
    left: &Complex,
    right: &Complex,
    target: &Complex,
    mut op: impl FnMut(i64, usize, i64, usize) -> Vec<BigInt>,
) -> Result<Proto> {
    let source = tensor(left, right)?;
    Proto::build(source, target.clone(), 0, |n, rows, cols| {
        let mut m = IntMatrix::zeros(rows, cols);
        for block in tensor_layout(left, right, n) {
            for i in 0..block.left {
                for j in 0..block.right {
                    let col = op(block.p, i, block.q, j);
                    debug_assert_eq!(col.len(), rows);
                    for (r, x) in col.into_iter().enumerate() {
                        m.set(r, block.index(i, j), x);
                    }
                }
            }
        }
        m
    })
}
