use num_bigint::BigInt;

use super::tensor::{tensor, tensor_layout};
use crate::complexes::{hom_complex, Complex, Proto};
use crate::error::Result;
use crate::zlinalg::{sign, IntMatrix};

/// `σ(a ⊗ b) = (-1)^{pq} b ⊗ a`.
pub fn symmetry(a: &Complex, b: &Complex) -> Result<Proto> {
    let source = tensor(a, b)?;
    let target = tensor(b, a)?;
    Proto::build(source, target, 0, |n, rows, cols| {
        let mut m = IntMatrix::zeros(rows, cols);
        let dst = tensor_layout(b, a, n);
        for s in tensor_layout(a, b, n) {
            let t = dst.iter().find(|t| t.p == s.q).expect("swapped block exists");
            let e = BigInt::from(sign(s.p * s.q));
            for i in 0..s.left {
                for j in 0..s.right {
                    m.set(t.index(j, i), s.index(i, j), e.clone());
                }
            }
        }
        m
    })
}

/// Sign-free reassociation `(A ⊗ B) ⊗ C -> A ⊗ (B ⊗ C)`.
pub fn associator(a: &Complex, b: &Complex, c: &Complex) -> Result<Proto> {
    let ab = tensor(a, b)?;
    let bc = tensor(b, c)?;
    let source = tensor(&ab, c)?;
    let target = tensor(a, &bc)?;
    Proto::build(source, target, 0, |n, rows, cols| {
        let mut m = IntMatrix::zeros(rows, cols);
        let outer_dst = tensor_layout(a, &bc, n);
        for outer in tensor_layout(&ab, c, n) {
            for inner in tensor_layout(a, b, outer.p) {
                let t_outer = outer_dst.iter().find(|t| t.p == inner.p).expect("block exists");
                let t_inner = tensor_layout(b, c, t_outer.q);
                let t_inner = t_inner.iter().find(|t| t.p == inner.q).expect("block exists");
                for i in 0..inner.left {
                    for j in 0..inner.right {
                        for l in 0..outer.right {
                            let src = outer.index(inner.index(i, j), l);
                            let dst = t_outer.index(i, t_inner.index(j, l));
                            m.set(dst, src, 1.into());
                        }
                    }
                }
            }
        }
        m
    })
}

/// Degreewise transpose of a signed permutation, which is its inverse.
pub fn permutation_inverse(p: &Proto) -> Proto {
    Proto::build(p.target().clone(), p.source().clone(), 0, |n, _, _| p.comp(n).transpose())
        .expect("transpose has the inverse shape")
}

/// `ℤ ⊗ A -> A`; the matrices are identities.
pub fn left_unitor(a: &Complex) -> Result<Proto> {
    let source = tensor(&Complex::point(0), a)?;
    Proto::build(source, a.clone(), 0, |_, r, _| IntMatrix::identity(r))
}

/// `A ⊗ ℤ -> A`; the matrices are identities.
pub fn right_unitor(a: &Complex) -> Result<Proto> {
    let source = tensor(a, &Complex::point(0))?;
    Proto::build(source, a.clone(), 0, |_, r, _| IntMatrix::identity(r))
}

/// A pair of maps claimed to be mutually inverse chain isomorphisms.
#[derive(Clone, Debug)]
pub struct ChainIso {
    pub forward: Proto,
    pub backward: Proto,
}

impl ChainIso {
    pub fn holds(&self) -> bool {
        let (Ok(fb), Ok(bf)) = (
            Proto::compose(&self.forward, &self.backward),
            Proto::compose(&self.backward, &self.forward),
        ) else {
            return false;
        };
        self.forward.is_chain_map()
            && self.backward.is_chain_map()
            && fb == Proto::identity(self.forward.target())
            && bf == Proto::identity(self.forward.source())
    }
}

fn diagonal_iso(source: Complex, target: Complex, scalar: impl Fn(i64) -> i64) -> Result<ChainIso> {
    let forward = Proto::build(source.clone(), target.clone(), 0, |n, r, _| IntMatrix::scalar(r, scalar(n)))?;
    let backward = Proto::build(target, source, 0, |n, r, _| IntMatrix::scalar(r, scalar(n)))?;
    Ok(ChainIso { forward, backward })
}

/// `S(A ⊗ B) ≅ SA ⊗ B` by identity matrices.
pub fn sten_iso(a: &Complex, b: &Complex) -> Result<ChainIso> {
    diagonal_iso(tensor(a, b)?.suspend(1), tensor(&a.suspend(1), b)?, |_| 1)
}

/// `S[B, C] ≅ [B, SC]` by identity matrices.
pub fn hom_sten_iso_target(b: &Complex, c: &Complex) -> Result<ChainIso> {
    diagonal_iso(hom_complex(b, c)?.suspend(1), hom_complex(b, &c.suspend(1))?, |_| 1)
}

/// `S[B, C] ≅ [S⁻¹B, C]` by `(-1)^n` in degree `n`.
pub fn hom_sten_iso_source(b: &Complex, c: &Complex) -> Result<ChainIso> {
    diagonal_iso(hom_complex(b, c)?.suspend(1), hom_complex(&b.suspend(-1), c)?, sign)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complexes::{l_z, r_z};
    use crate::monoidal::tensor_proto;
    use crate::zlinalg::ints;

    #[test]
    fn symmetry_on_units() {
        let k = Complex::point(0);
        assert_eq!(symmetry(&k, &k).unwrap().comp(0), IntMatrix::from_rows(&[&[1]]));
        let k1 = Complex::point(1);
        assert_eq!(symmetry(&k1, &k1).unwrap().comp(2), IntMatrix::from_rows(&[&[-1]]));
    }

    #[test]
    fn symmetry_squares_to_one() {
        let (a, b) = (l_z(), r_z().suspend(2));
        let s = symmetry(&a, &b).unwrap();
        assert!(s.is_chain_map());
        let back = symmetry(&b, &a).unwrap();
        assert_eq!(Proto::compose(&back, &s).unwrap(), Proto::identity(s.source()));
    }

    #[test]
    fn symmetry_naturality_sign() {
        let a = Complex::graded(0, vec![1, 1]);
        let f = Proto::from_vector(&a, &a, 1, &ints(&[2])).unwrap();
        let g = Proto::from_vector(&a, &a, 1, &ints(&[3])).unwrap();
        let lhs = Proto::compose(&symmetry(&a, &a).unwrap(), &tensor_proto(&f, &g).unwrap()).unwrap();
        let rhs = Proto::compose(&tensor_proto(&g, &f).unwrap(), &symmetry(&a, &a).unwrap()).unwrap();
        assert!(!lhs.is_zero());
        assert_eq!(lhs, rhs.scale_i64(-1));
    }

    #[test]
    fn associator_is_chain_iso() {
        let a = Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap();
        let (b, c) = (l_z(), r_z());
        let alpha = associator(&a, &b, &c).unwrap();
        let iso = ChainIso { backward: permutation_inverse(&alpha), forward: alpha };
        assert!(iso.holds());
    }

    #[test]
    fn unitors() {
        let a = l_z();
        let l = left_unitor(&a).unwrap();
        let r = right_unitor(&a).unwrap();
        assert!(ChainIso { backward: permutation_inverse(&l), forward: l }.holds());
        assert!(ChainIso { backward: permutation_inverse(&r), forward: r }.holds());
    }

    #[test]
    fn suspension_isos() {
        let b = l_z();
        let c = Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap();
        assert!(sten_iso(&b, &c).unwrap().holds());
        assert!(sten_iso(&Complex::point(0), &c).unwrap().holds());
        assert!(sten_iso(&b, &Complex::zero()).unwrap().holds());
        assert!(hom_sten_iso_target(&b, &c).unwrap().holds());
        assert!(hom_sten_iso_source(&b, &c).unwrap().holds());
    }

    #[test]
    fn plain_identity_fails_for_desuspended_source() {
        let b = l_z();
        let c = Complex::point(0);
        let naive = diagonal_iso(
            hom_complex(&b, &c).unwrap().suspend(1),
            hom_complex(&b.suspend(-1), &c).unwrap(),
            |_| 1,
        )
        .unwrap();
        assert!(!naive.holds());
    }
}
