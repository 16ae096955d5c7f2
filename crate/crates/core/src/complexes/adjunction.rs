use num_bigint::BigInt;

use super::complex::Complex;
use super::functors::{functor_l, functor_r};
use super::hom::{as_columns, chain_map_basis, hom_rank};
use super::proto::Proto;
use crate::error::{Error, Result};
use crate::zlinalg::{solve, IntMatrix};

/// Coordinates of the two transposition maps between graded maps and
/// chain maps, each in the other side's basis.
#[derive(Clone, Debug)]
pub struct AdjunctionCheck {
    pub graded_rank: usize,
    pub chain_rank: usize,
    /// Graded maps (unit-vector basis) to chain-map basis coordinates.
    pub forward: IntMatrix,
    /// Chain-map basis to graded coordinates.
    pub backward: IntMatrix,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.graded_rank == self.chain_rank
            && (&self.forward * &self.backward).is_identity()
            && (&self.backward * &self.forward).is_identity()
    }
}

/// `L ⊣ U`: a graded map `g : X -> U A` goes to `h_n = [d^A g_{n+1}, g_n]`.
pub fn transpose_lu(g: &Proto, a: &Complex) -> Result<Proto> {
    let lx = functor_l(g.source())?;
    Proto::build(lx, a.clone(), 0, |n, _, _| {
        IntMatrix::hstack(&[&(&a.d(n + 1) * &g.comp(n + 1)), &g.comp(n)])
    })
}

/// Inverse of [`transpose_lu`]: restrict to the `X_n` summand.
pub fn untranspose_lu(h: &Proto, x: &Complex) -> Proto {
    let ua = h.target().forget();
    Proto::build(x.clone(), ua, 0, |n, r, c| {
        let m = h.comp(n);
        m.submatrix(0..r, m.cols() - c..m.cols())
    })
    .expect("restriction has the graded shape")
}

/// `U ⊣ R`: a graded map `g : U A -> X` goes to `h_n = [g_n ; g_{n-1} d^A]`.
pub fn transpose_ur(g: &Proto, a: &Complex) -> Result<Proto> {
    let rx = functor_r(g.target())?;
    Proto::build(a.clone(), rx, 0, |n, _, _| {
        IntMatrix::vstack(&[&g.comp(n), &(&g.comp(n - 1) * &a.d(n))])
    })
}

/// Inverse of [`transpose_ur`]: project onto the `X_n` summand.
pub fn untranspose_ur(h: &Proto, x: &Complex) -> Proto {
    let ua = h.source().forget();
    Proto::build(ua, x.clone(), 0, |n, r, c| h.comp(n).submatrix(0..r, 0..c))
        .expect("projection has the graded shape")
}

fn unit_vectors(n: usize) -> impl Iterator<Item = Vec<BigInt>> {
    (0..n).map(move |i| {
        let mut v = vec![BigInt::from(0); n];
        v[i] = 1.into();
        v
    })
}

fn check(
    graded: (&Complex, &Complex),
    chain: (&Complex, &Complex),
    to_chain: impl Fn(&Proto) -> Result<Proto>,
    to_graded: impl Fn(&Proto) -> Proto,
) -> Result<AdjunctionCheck> {
    let graded_rank = hom_rank(graded.0, graded.1, 0);
    let basis = chain_map_basis(chain.0, chain.1);
    let basis_m = as_columns(chain.0, chain.1, 0, &basis);
    let mut fwd = Vec::new();
    for e in unit_vectors(graded_rank) {
        let g = Proto::from_vector(graded.0, graded.1, 0, &e)?;
        let h = to_chain(&g)?;
        h.require_chain_map("transposed map")?;
        let coords = solve(&basis_m, &h.to_vector())?
            .ok_or_else(|| Error::NotAChainMap("transpose outside the chain-map lattice".into()))?;
        fwd.push(coords);
    }
    let bwd: Vec<_> = basis.iter().map(|h| to_graded(h).to_vector()).collect();
    Ok(AdjunctionCheck {
        graded_rank,
        chain_rank: basis.len(),
        forward: IntMatrix::from_columns(basis.len(), &fwd),
        backward: IntMatrix::from_columns(graded_rank, &bwd),
    })
}

/// Compares graded maps `X -> U A` with chain maps `L X -> A`.
pub fn adjunction_iso_lu(x: &Complex, a: &Complex) -> Result<AdjunctionCheck> {
    let lx = functor_l(x)?;
    let ua = a.forget();
    check((x, &ua), (&lx, a), |g| transpose_lu(g, a), |h| untranspose_lu(h, x))
}

/// Compares graded maps `U A -> X` with chain maps `A -> R X`.
pub fn adjunction_iso_ur(a: &Complex, x: &Complex) -> Result<AdjunctionCheck> {
    let rx = functor_r(x)?;
    let ua = a.forget();
    check((&ua, x), (a, &rx), |g| transpose_ur(g, a), |h| untranspose_ur(h, x))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complexes::functors::l_z;

    fn m2() -> Complex {
        Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap()
    }

    #[test]
    fn lz_represents_degree_zero() {
        let a = Complex::new(-1, vec![1, 2, 1], BTreeMap::from([
            (0, IntMatrix::from_rows(&[&[1, 1]])),
            (1, IntMatrix::from_rows(&[&[1], &[-1]])),
        ]))
        .unwrap();
        assert_eq!(chain_map_basis(&l_z(), &a).len(), a.rank(0));
        let c = adjunction_iso_lu(&Complex::point(0), &a).unwrap();
        assert!(c.holds());
        assert_eq!(c.chain_rank, 2);
    }

    #[test]
    fn zero_graded_object() {
        assert!(adjunction_iso_lu(&Complex::zero(), &m2()).unwrap().holds());
        assert!(adjunction_iso_ur(&m2(), &Complex::zero()).unwrap().holds());
    }

    #[test]
    fn right_adjoint() {
        let x = Complex::graded(0, vec![1, 1]);
        let c = adjunction_iso_ur(&m2(), &x).unwrap();
        assert!(c.holds());
    }
}
