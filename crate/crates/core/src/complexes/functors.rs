use super::complex::Complex;
use super::proto::Proto;
use crate::error::{Error, Result};
use crate::zlinalg::IntMatrix;

/// `U`: keeps the graded object, drops the differentials.
pub fn forget_u(a: &Complex) -> Complex {
    a.forget()
}

/// `U` on maps: the same components between the underlying graded objects.
pub fn forget_u_map(f: &Proto) -> Proto {
    f.reindex(f.source().forget(), 0, f.target().forget(), f.degree())
}

fn require_graded(x: &Complex) -> Result<()> {
    match x.nonzero_differential() {
        Some(degree) => Err(Error::NotGraded { degree }),
        None => Ok(()),
    }
}

fn shift_block(top: usize, bottom: usize, next_top: usize, next_bottom: usize) -> IntMatrix {
    // [[0, 1], [0, 0]] from top ⊕ bottom to next_top ⊕ next_bottom, where
    // bottom and next_top are the same group
    debug_assert_eq!(bottom, next_top);
    IntMatrix::block(
        &[next_top, next_bottom],
        &[top, bottom],
        &[vec![None, Some(IntMatrix::identity(bottom))]],
    )
}

/// `(L X)_n = X_{n+1} ⊕ X_n` with `d = [[0, 1], [0, 0]]`.
pub fn functor_l(x: &Complex) -> Result<Complex> {
    require_graded(x)?;
    if x.is_zero() {
        return Ok(Complex::zero());
    }
    let lo = x.lo() - 1;
    let ranks = (lo..=x.hi()).map(|n| x.rank(n + 1) + x.rank(n)).collect();
    Complex::build(lo, ranks, |n| shift_block(x.rank(n + 1), x.rank(n), x.rank(n), x.rank(n - 1)))
}

/// `(R X)_n = X_n ⊕ X_{n-1}` with `d = [[0, 1], [0, 0]]`.
pub fn functor_r(x: &Complex) -> Result<Complex> {
    require_graded(x)?;
    if x.is_zero() {
        return Ok(Complex::zero());
    }
    let lo = x.lo();
    let ranks = (lo..=x.hi() + 1).map(|n| x.rank(n) + x.rank(n - 1)).collect();
    Complex::build(lo, ranks, |n| {
        shift_block(x.rank(n), x.rank(n - 1), x.rank(n - 1), x.rank(n - 2))
    })
}

/// `L` on a degree-0 map of graded objects: `diag(h_{n+1}, h_n)`.
pub fn functor_l_map(h: &Proto) -> Result<Proto> {
    if h.degree() != 0 {
        return Err(Error::Dimension(format!("L applies to degree-0 maps, got degree {}", h.degree())));
    }
    let source = functor_l(h.source())?;
    let target = functor_l(h.target())?;
    Proto::build(source, target, 0, |n, _, _| IntMatrix::direct_sum(&h.comp(n + 1), &h.comp(n)))
}

/// `Lℤ`: ranks `{0: 1, -1: 1}` with `d_0 = [[1]]`.
pub fn l_z() -> Complex {
    functor_l(&Complex::point(0)).expect("ℤ is graded")
}

/// `Rℤ`: ranks `{1: 1, 0: 1}` with `d_1 = [[1]]`.
pub fn r_z() -> Complex {
    functor_r(&Complex::point(0)).expect("ℤ is graded")
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    #[test]
    fn lz_and_rz() {
        let lz = l_z();
        assert_eq!(lz.rank_map(), BTreeMap::from([(-1, 1), (0, 1)]));
        assert_eq!(lz.d(0), IntMatrix::from_rows(&[&[1]]));
        let rz = r_z();
        assert_eq!(rz.rank_map(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(rz.d(1), IntMatrix::from_rows(&[&[1]]));
    }

    #[test]
    fn l_of_zero_is_zero() {
        assert_eq!(functor_l(&Complex::zero()).unwrap(), Complex::zero());
    }

    #[test]
    fn not_graded_is_rejected() {
        assert_eq!(functor_l(&l_z()), Err(Error::NotGraded { degree: 0 }));
        assert_eq!(functor_r(&l_z()), Err(Error::NotGraded { degree: 0 }));
    }

    #[test]
    fn r_is_l_after_suspension() {
        let x = Complex::graded(-1, vec![2, 0, 1, 3]);
        assert_eq!(functor_r(&x).unwrap(), functor_l(&x.suspend(1)).unwrap());
    }

    #[test]
    fn l_map_is_chain_map() {
        let x = Complex::graded(0, vec![1, 2]);
        let h = Proto::from_vector(&x, &x, 0, &crate::zlinalg::ints(&[3, 1, 2, 0, 5])).unwrap();
        assert!(functor_l_map(&h).unwrap().is_chain_map());
    }
}
