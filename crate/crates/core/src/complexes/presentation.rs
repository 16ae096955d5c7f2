use super::complex::Complex;
use super::functors::{functor_l, functor_l_map, l_z};
use super::hom::{as_columns, chain_map_basis};
use super::proto::Proto;
use crate::error::Result;
use crate::zlinalg::{kernel_basis, rank, solve, solve_matrix, IntMatrix};

/// The fork `LULU A ⇉ LU A -> A` presenting `A` as a coequalizer.
#[derive(Clone, Debug)]
pub struct CanonicalPresentation {
    pub lulu: Complex,
    pub lu: Complex,
    /// Counit `[d 1] : LU A -> A`.
    pub alpha: Proto,
    /// Counit at `LU A`: `[[0,1,1,0],[0,0,0,1]]`.
    pub beta: Proto,
    /// `LU(alpha)`: `[[d,1,0,0],[0,0,d,1]]`.
    pub gamma: Proto,
}

/// Counit `LU A -> A` with components `[d_{n+1}, 1]`.
pub fn counit_lu(a: &Complex) -> Result<Proto> {
    let lu = functor_l(&a.forget())?;
    Proto::build(lu, a.clone(), 0, |n, r, _| IntMatrix::hstack(&[&a.d(n + 1), &IntMatrix::identity(r)]))
}

pub fn canonical_presentation(a: &Complex) -> Result<CanonicalPresentation> {
    let alpha = counit_lu(a)?;
    let lu = alpha.source().clone();
    let beta = counit_lu(&lu)?;
    let lulu = beta.source().clone();
    let gamma = functor_l_map(&alpha.reindex(lu.forget(), 0, a.forget(), 0))?;
    debug_assert_eq!(gamma.source(), &lulu);
    let gamma = gamma.reindex(lulu.clone(), 0, lu.clone(), 0);
    Ok(CanonicalPresentation { lulu, lu, alpha, beta, gamma })
}

/// Probe targets used for the coequalizer check.
pub fn presentation_probes(a: &Complex) -> Result<Vec<Complex>> {
    Ok(vec![
        a.clone(),
        a.suspend(1),
        a.suspend(-1),
        Complex::point(0),
        l_z(),
        functor_l(&a.forget())?,
    ])
}

impl CanonicalPresentation {
    pub fn fork_commutes(&self) -> Result<bool> {
        Ok(Proto::compose(&self.alpha, &self.beta)? == Proto::compose(&self.alpha, &self.gamma)?)
    }

    pub fn maps_are_chain_maps(&self) -> bool {
        self.alpha.is_chain_map() && self.beta.is_chain_map() && self.gamma.is_chain_map()
    }

    /// Chain maps `A -> T` correspond bijectively, via `- ∘ alpha`, to chain
    /// maps `LU A -> T` that equalize `beta` and `gamma`.
    pub fn coequalizes_into(&self, t: &Complex) -> Result<bool> {
        let a = self.alpha.target();
        let g = chain_map_basis(&self.lu, t);
        let gm = as_columns(&self.lu, t, 0, &g);
        let cols: Vec<_> = g
            .iter()
            .map(|g| {
                let x = Proto::compose(g, &self.beta)?;
                let y = Proto::compose(g, &self.gamma)?;
                Ok((&x - &y).to_vector())
            })
            .collect::<Result<_>>()?;
        let constraint = IntMatrix::from_columns(super::hom::hom_rank(&self.lulu, t, 0), &cols);
        let equalizing = kernel_basis(&constraint);
        let h = chain_map_basis(a, t);
        let mut image = Vec::new();
        for h in &h {
            let v = Proto::compose(h, &self.alpha)?.to_vector();
            match solve(&gm, &v)? {
                Some(c) => image.push(c),
                None => return Ok(false),
            }
        }
        let image = IntMatrix::from_columns(g.len(), &image);
        if !(&constraint * &image).is_zero() || rank(&image) != h.len() {
            return Ok(false);
        }
        Ok(solve_matrix(&image, &equalizing)?.is_some())
    }

    pub fn verify(&self, probes: &[Complex]) -> Result<bool> {
        if !self.maps_are_chain_maps() || !self.fork_commutes()? {
            return Ok(false);
        }
        for t in probes {
            if !self.coequalizes_into(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    #[test]
    fn unit_complex() {
        let k = Complex::point(0);
        let p = canonical_presentation(&k).unwrap();
        assert_eq!(p.lu, l_z());
        // [d 1] with the A_1 = 0 block empty
        assert_eq!(p.alpha.comp(0), IntMatrix::from_rows(&[&[1]]));
        assert_eq!(p.alpha.comp(-1).shape(), (0, 1));
        assert!(p.verify(&presentation_probes(&k).unwrap()).unwrap());
    }

    #[test]
    fn zero_complex() {
        let p = canonical_presentation(&Complex::zero()).unwrap();
        assert!(p.lu.is_zero() && p.lulu.is_zero());
        assert!(p.fork_commutes().unwrap());
    }

    #[test]
    fn printed_matrices() {
        let a = Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap();
        let p = canonical_presentation(&a).unwrap();
        // at degree 0, LULU A has A_2 ⊕ A_1 ⊕ A_1 ⊕ A_0 = 0 ⊕ ℤ ⊕ ℤ ⊕ ℤ
        assert_eq!(p.beta.comp(0), IntMatrix::from_rows(&[&[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(p.gamma.comp(0), IntMatrix::from_rows(&[&[1, 0, 0], &[0, 2, 1]]));
        assert!(p.verify(&presentation_probes(&a).unwrap()).unwrap());
    }
}
