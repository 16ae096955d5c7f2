use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bilinear::unit;
use super::category::{basis, FiniteDGCategory};
use super::module::{transformation_basis, DGModule, ProtonatTransform, Variance};
use crate::complexes::{Complex, Proto};
use crate::cones::split_idempotent;
use crate::error::{Error, Result};
use crate::zlinalg::{solve, sign, IntMatrix};

/// Outcome of [`verify_protosplit_quotient`]: the recovered idempotent
/// `e = σ_B γ′_B(1_B)` and the first failing equation, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCheck {
    pub idempotent: Option<Vec<BigInt>>,
    pub failure: Option<String>,
}

impl QuotientCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(idempotent: Option<Vec<BigInt>>, why: impl Into<String>) -> Self {
        QuotientCheck { idempotent, failure: Some(why.into()) }
    }
}

/// Checks that `M` is a protosplit quotient of `C(-, B)`: `γ′ ∘ σ = 1_M`,
/// `e = σ_B γ′_B(1_B)` is idempotent and `σ ∘ γ′ = C(-, e)`.
pub fn verify_protosplit_quotient(
    m: &DGModule,
    b: usize,
    gamma: &ProtonatTransform,
    sigma: &ProtonatTransform,
) -> Result<QuotientCheck> {
    let cat = m.base().clone();
    if m.variance() != Variance::Right {
        return Err(Error::InvalidModule("protosplit quotients are right modules".into()));
    }
    if b >= cat.len() || gamma.components.len() != cat.len() || sigma.components.len() != cat.len() {
        return Err(Error::InvalidModule("transformation has the wrong number of components".into()));
    }
    let rep = DGModule::representable(&cat, b);
    for (w, (g, s)) in gamma.components.iter().zip(&sigma.components).enumerate() {
        if g.source() != rep.value(w) || g.target() != m.value(w) || s.source() != m.value(w) || s.target() != rep.value(w)
        {
            return Err(Error::InvalidModule(format!("component {w} has the wrong shape")));
        }
    }
    if gamma.degree != 0 || sigma.degree != 0 {
        return Ok(QuotientCheck::fail(None, "transformations must have degree 0"));
    }
    if !gamma.is_cycle() || !sigma.is_cycle() {
        return Ok(QuotientCheck::fail(None, "transformations must be chain maps"));
    }
    if !gamma.is_protonatural(&rep, m) {
        return Ok(QuotientCheck::fail(None, "gamma' is not natural"));
    }
    if !sigma.is_protonatural(m, &rep) {
        return Ok(QuotientCheck::fail(None, "sigma is not natural"));
    }
    if ProtonatTransform::compose(gamma, sigma)? != ProtonatTransform::identity(m) {
        return Ok(QuotientCheck::fail(None, "gamma' o sigma != 1"));
    }
    let one = cat.identity(b).to_vec();
    let e = sigma.components[b].comp(0).mul_vec(&gamma.components[b].comp(0).mul_vec(&one));
    if cat.compose(b, b, b, 0, &e, 0, &e) != e {
        return Ok(QuotientCheck::fail(Some(e), "e o e != e"));
    }
    for x in 0..cat.len() {
        for (q, c) in basis(rep.value(x)) {
            let lhs = sigma.components[x].comp(q).mul_vec(&gamma.components[x].comp(q).mul_vec(&c));
            if lhs != cat.compose(x, b, b, 0, &e, q, &c) {
                return Ok(QuotientCheck::fail(Some(e), format!("sigma o gamma' != C(-, e) at {}", cat.name(x))));
            }
        }
    }
    Ok(QuotientCheck { idempotent: Some(e), failure: None })
}

/// A module with witnesses `γ′ : C(-, B) -> M` and `σ : M -> C(-, B)`.
#[derive(Clone, Debug)]
pub struct QuotientWitness {
    pub module: DGModule,
    pub object: usize,
    pub gamma: ProtonatTransform,
    pub sigma: ProtonatTransform,
}

/// The image of `C(-, e)` for an idempotent 0-cycle `e` on `B`, split
/// object by object.
pub fn image_of_idempotent(cat: &Arc<FiniteDGCategory>, b: usize, e: &[BigInt]) -> Result<QuotientWitness> {
    let hom = cat.hom(b, b);
    if e.len() != hom.rank(0) {
        return Err(Error::Dimension("idempotent is not a degree-0 endomorphism".into()));
    }
    if !Proto::from_vector(&Complex::point(0), hom, 0, e)?.is_chain_map() {
        return Err(Error::NotAChainMap("idempotent is not a cycle".into()));
    }
    if cat.compose(b, b, b, 0, e, 0, e) != e {
        return Err(Error::NotIdempotent);
    }
    let k = cat.len();
    let mut splits = Vec::with_capacity(k);
    for x in 0..k {
        let value = cat.hom(x, b);
        let post = Proto::build(value.clone(), value.clone(), 0, |q, rows, cols| {
            let columns: Vec<Vec<BigInt>> = (0..cols).map(|j| cat.compose(x, b, b, 0, e, q, &unit(cols, j))).collect();
            IntMatrix::from_columns(rows, &columns)
        })?;
        splits.push(split_idempotent(&post)?);
    }
    let values = splits.iter().map(|s| s.image.clone()).collect();
    let module = DGModule::from_action(cat.clone(), Variance::Right, values, &mut |u, v, p, f, q, y| {
        let m = splits[v].s.comp(q).mul_vec(y);
        let s = BigInt::from(sign(p * q));
        let mf: Vec<BigInt> = cat.compose(u, v, b, q, &m, p, f).into_iter().map(|z| z * &s).collect();
        splits[u].r.comp(p + q).mul_vec(&mf)
    })?;
    module.validate()?;
    let gamma = ProtonatTransform { degree: 0, components: splits.iter().map(|s| s.r.clone()).collect() };
    let sigma = ProtonatTransform { degree: 0, components: splits.iter().map(|s| s.s.clone()).collect() };
    Ok(QuotientWitness { module, object: b, gamma, sigma })
}

/// Searches the lattice of natural chain maps `M -> C(-, B)` for a
/// section of `γ′`.
pub fn find_section(m: &DGModule, b: usize, gamma: &ProtonatTransform) -> Result<Option<ProtonatTransform>> {
    let cat = m.base().clone();
    let rep = DGModule::representable(&cat, b);
    let candidates = transformation_basis(m, &rep, 0, true);
    let target = ProtonatTransform::identity(m).to_vector();
    let zero = ProtonatTransform {
        degree: 0,
        components: (0..cat.len()).map(|w| Proto::zero(m.value(w), rep.value(w), 0)).collect(),
    };
    if candidates.is_empty() {
        return Ok(target.iter().all(Zero::is_zero).then_some(zero));
    }
    let columns = candidates
        .iter()
        .map(|s| ProtonatTransform::compose(gamma, s).map(|c| c.to_vector()))
        .collect::<Result<Vec<_>>>()?;
    let system = IntMatrix::from_columns(target.len(), &columns);
    let Some(coeffs) = solve(&system, &target)? else { return Ok(None) };
    let components = (0..cat.len())
        .map(|w| {
            let parts: Vec<Proto> = candidates.iter().map(|s| s.components[w].clone()).collect();
            Proto::combination(&parts, &coeffs, &zero.components[w])
        })
        .collect();
    Ok(Some(ProtonatTransform { degree: 0, components }))
}

/// `M2 = (ℤ --2--> ℤ)` over `ℐ` with the projection `ℤ -> M2` onto degree 0;
/// the projection has no natural section.
pub fn torsion_quotient() -> QuotientWitness {
    let m2 = Complex::new(0, vec![1, 1], [(1, IntMatrix::from_rows(&[&[2]]))].into()).expect("M2");
    let module = DGModule::over_unit(Variance::Right, m2.clone());
    let gamma = Proto::new(Complex::point(0), m2.clone(), 0, [(0, IntMatrix::identity(1))].into()).expect("projection");
    let sigma = Proto::zero(&m2, &Complex::point(0), 0);
    QuotientWitness {
        module,
        object: 0,
        gamma: ProtonatTransform { degree: 0, components: vec![gamma] },
        sigma: ProtonatTransform { degree: 0, components: vec![sigma] },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::category::{fixture_categories, full_subcategory};
    use crate::zlinalg::ints;

    #[test]
    fn representable_is_its_own_quotient() {
        for (name, cat) in fixture_categories() {
            let cat = Arc::new(cat);
            for b in 0..cat.len() {
                let m = DGModule::representable(&cat, b);
                let id = ProtonatTransform::identity(&m);
                let check = verify_protosplit_quotient(&m, b, &id, &id).unwrap();
                assert!(check.holds(), "{name}: {:?}", check.failure);
                assert_eq!(check.idempotent.unwrap(), cat.identity(b));
            }
        }
    }

    #[test]
    fn split_image_recovers_idempotent() {
        let cat = Arc::new(full_subcategory(&[("Z2", Complex::graded(0, vec![2])), ("K0", Complex::point(0))]).unwrap());
        let e0 = ints(&[1, 0, 0, 0]);
        let w = image_of_idempotent(&cat, 0, &e0).unwrap();
        assert_eq!(w.module.value(1).rank_map(), [(0, 1)].into());
        let check = verify_protosplit_quotient(&w.module, 0, &w.gamma, &w.sigma).unwrap();
        assert!(check.holds(), "{:?}", check.failure);
        assert_eq!(check.idempotent.unwrap(), e0);
        let sigma = find_section(&w.module, 0, &w.gamma).unwrap().unwrap();
        assert!(verify_protosplit_quotient(&w.module, 0, &w.gamma, &sigma).unwrap().holds());
    }

    #[test]
    fn dg_image_of_idempotent() {
        let a = Complex::direct_sum(&crate::complexes::l_z(), &Complex::point(0));
        let cat = Arc::new(full_subcategory(&[("A", a.clone())]).unwrap());
        let proj = Proto::new(
            a.clone(),
            a.clone(),
            0,
            [(0, IntMatrix::from_rows(&[&[1, 0], &[0, 0]])), (-1, IntMatrix::identity(1))].into(),
        )
        .unwrap();
        assert!(proj.is_chain_map());
        let w = image_of_idempotent(&cat, 0, &proj.to_vector()).unwrap();
        let check = verify_protosplit_quotient(&w.module, 0, &w.gamma, &w.sigma).unwrap();
        assert!(check.holds(), "{:?}", check.failure);
        assert_eq!(check.idempotent.unwrap(), proj.to_vector());
    }

    #[test]
    fn torsion_quotient_is_not_a_retract() {
        let w = torsion_quotient();
        assert!(transformation_basis(&w.module, &DGModule::representable(w.module.base(), 0), 0, true).is_empty());
        assert!(find_section(&w.module, 0, &w.gamma).unwrap().is_none());
        let check = verify_protosplit_quotient(&w.module, 0, &w.gamma, &w.sigma).unwrap();
        assert_eq!(check.failure.as_deref(), Some("gamma' o sigma != 1"));
    }

    #[test]
    fn non_idempotent_rejected() {
        let cat = Arc::new(full_subcategory(&[("Z2", Complex::graded(0, vec![2]))]).unwrap());
        assert_eq!(image_of_idempotent(&cat, 0, &ints(&[2, 0, 0, 0])).unwrap_err(), Error::NotIdempotent);
    }
}
