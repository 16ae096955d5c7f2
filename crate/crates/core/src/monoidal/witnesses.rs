use num_bigint::BigInt;

use super::symmetry::{associator, left_unitor, permutation_inverse, right_unitor, ChainIso};
use super::tensor::{tensor, tensor_proto};
use crate::complexes::{chain_map_basis, l_z, r_z, Complex, Proto};
use crate::error::{Error, Result};
use crate::zlinalg::{inverse_unimodular, is_unimodular};

/// Visits nonzero integer vectors in `[-bound, bound]^dims`, smallest
/// sup-norm first, until `accept` returns true.
pub fn search_box(dims: usize, bound: i64, mut accept: impl FnMut(&[i64]) -> bool) -> Option<Vec<i64>> {
    for radius in 1..=bound {
        let mut v = vec![-radius; dims];
        loop {
            if v.iter().any(|x| x.abs() == radius) && accept(&v) {
                return Some(v);
            }
            let mut i = 0;
            loop {
                if i == dims {
                    break;
                }
                if v[i] < radius {
                    v[i] += 1;
                    break;
                }
                v[i] = -radius;
                i += 1;
            }
            if i == dims {
                break;
            }
        }
    }
    None
}

fn combine(basis: &[Proto], coeffs: &[i64], zero: &Proto) -> Proto {
    let c: Vec<BigInt> = coeffs.iter().map(|&x| x.into()).collect();
    Proto::combination(basis, &c, zero)
}

/// Explicit mutually inverse chain maps `Lℤ ⊗ Lℤ ≅ Lℤ ⊕ S⁻¹Lℤ`, found by
/// searching small combinations of the chain-map basis.
pub fn decompose_lz_tensor() -> Result<ChainIso> {
    let lz = l_z();
    let source = tensor(&lz, &lz)?;
    let target = Complex::direct_sum(&lz, &lz.suspend(-1));
    let basis = chain_map_basis(&source, &target);
    let zero = Proto::zero(&source, &target, 0);
    let mut found = None;
    search_box(basis.len(), 2, |c| {
        let phi = combine(&basis, c, &zero);
        if !source.support().all(|n| is_unimodular(&phi.comp(n))) {
            return false;
        }
        let psi = Proto::build(target.clone(), source.clone(), 0, |n, _, _| {
            inverse_unimodular(&phi.comp(n)).expect("checked unimodular")
        })
        .expect("inverse shapes");
        let iso = ChainIso { forward: phi, backward: psi };
        let ok = iso.holds();
        if ok {
            found = Some(iso);
        }
        ok
    });
    found.ok_or_else(|| Error::SearchFailed("no invertible chain map Lℤ⊗Lℤ -> Lℤ⊕S⁻¹Lℤ".into()))
}

/// Unit `ℤ -> Rℤ ⊗ Lℤ` and counit `Lℤ ⊗ Rℤ -> ℤ` of the duality.
#[derive(Clone, Debug)]
pub struct Duality {
    pub unit: Proto,
    pub counit: Proto,
}

fn chain(maps: &[Proto]) -> Result<Proto> {
    let mut acc = maps[0].clone();
    for m in &maps[1..] {
        acc = Proto::compose(m, &acc)?;
    }
    Ok(acc)
}

impl Duality {
    /// `L -> L ⊗ ℤ -> L ⊗ (R ⊗ L) -> (L ⊗ R) ⊗ L -> ℤ ⊗ L -> L`.
    pub fn triangle_l(&self) -> Result<Proto> {
        let (l, r) = (l_z(), r_z());
        chain(&[
            permutation_inverse(&right_unitor(&l)?),
            tensor_proto(&Proto::identity(&l), &self.unit)?,
            permutation_inverse(&associator(&l, &r, &l)?),
            tensor_proto(&self.counit, &Proto::identity(&l))?,
            left_unitor(&l)?,
        ])
    }

    /// `R -> ℤ ⊗ R -> (R ⊗ L) ⊗ R -> R ⊗ (L ⊗ R) -> R ⊗ ℤ -> R`.
    pub fn triangle_r(&self) -> Result<Proto> {
        let (l, r) = (l_z(), r_z());
        chain(&[
            permutation_inverse(&left_unitor(&r)?),
            tensor_proto(&self.unit, &Proto::identity(&r))?,
            associator(&r, &l, &r)?,
            tensor_proto(&Proto::identity(&r), &self.counit)?,
            right_unitor(&r)?,
        ])
    }

    pub fn holds(&self) -> Result<bool> {
        Ok(self.unit.is_chain_map()
            && self.counit.is_chain_map()
            && self.triangle_l()? == Proto::identity(&l_z())
            && self.triangle_r()? == Proto::identity(&r_z()))
    }
}

/// Solves for a unit and counit satisfying both triangle identities.
pub fn verify_duality_lr() -> Result<Duality> {
    let (l, r, k) = (l_z(), r_z(), Complex::point(0));
    let rl = tensor(&r, &l)?;
    let lr = tensor(&l, &r)?;
    let units = chain_map_basis(&k, &rl);
    let counits = chain_map_basis(&lr, &k);
    let (uz, cz) = (Proto::zero(&k, &rl, 0), Proto::zero(&lr, &k, 0));
    let mut found = None;
    search_box(units.len() + counits.len(), 2, |c| {
        let d = Duality {
            unit: combine(&units, &c[..units.len()], &uz),
            counit: combine(&counits, &c[units.len()..], &cz),
        };
        let ok = d.holds().unwrap_or(false);
        if ok {
            found = Some(d);
        }
        ok
    });
    found.ok_or_else(|| Error::SearchFailed("no unit/counit pair satisfies the triangles".into()))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complexes::homology_h;

    #[test]
    fn box_search_order() {
        let mut seen = Vec::new();
        search_box(2, 1, |v| {
            seen.push(v.to_vec());
            false
        });
        assert_eq!(seen.len(), 8);
        assert_eq!(search_box(1, 3, |v| v[0] == 3), Some(vec![3]));
    }

    #[test]
    fn lz_square_decomposes() {
        let iso = decompose_lz_tensor().unwrap();
        assert!(iso.holds());
        let ranks = BTreeMap::from([(-2, 1), (-1, 2), (0, 1)]);
        assert_eq!(iso.forward.source().rank_map(), ranks);
        assert_eq!(iso.forward.target().rank_map(), ranks);
        assert!(homology_h(iso.forward.source()).is_zero());
        assert!(homology_h(iso.forward.target()).is_zero());
    }

    #[test]
    fn duality_triangles() {
        let d = verify_duality_lr().unwrap();
        assert!(d.holds().unwrap());
        assert!(d.unit.differential().is_zero());
    }
}
