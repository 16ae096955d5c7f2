use crate::complexes::{functor_l, functor_l_map, Complex, Proto};
use crate::error::{Error, Result};
use crate::monoidal::ChainIso;
use crate::signs::{self, SignSite};
use crate::zlinalg::IntMatrix;

use super::direct_sum::direct_sum;

/// `Mc f` with its inclusion `B -> Mc f` and projection `Mc f -> SA`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub cone: Complex,
    pub inj: Proto,
    pub proj: Proto,
}

/// `(Mc f)_n = B_n ⊕ A_{n-1}` with `d = [[d, f], [0, -d]]`.
pub fn mapping_cone(f: &Proto) -> Result<MappingCone> {
    f.require_chain_map("cone input")?;
    let (a, b) = (f.source(), f.target());
    let cone = cone_object(a, b, |n| f.comp(n))?;
    let sa = a.suspend(1);
    let inj = Proto::build(b.clone(), cone.clone(), 0, |n, _, _| {
        IntMatrix::vstack(&[&IntMatrix::identity(b.rank(n)), &IntMatrix::zeros(a.rank(n - 1), b.rank(n))])
    })?;
    let proj = Proto::build(cone.clone(), sa, 0, |n, _, _| {
        IntMatrix::hstack(&[&IntMatrix::zeros(a.rank(n - 1), b.rank(n)), &IntMatrix::identity(a.rank(n - 1))])
    })?;
    Ok(MappingCone { cone, inj, proj })
}

fn cone_object(a: &Complex, b: &Complex, f: impl Fn(i64) -> IntMatrix) -> Result<Complex> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    let lo = if b.is_zero() { a.lo() + 1 } else { b.lo().min(a.lo() + 1) };
    let hi = if b.is_zero() { a.hi() + 1 } else { b.hi().max(a.hi() + 1) };
    let ranks = (lo..=hi).map(|n| b.rank(n) + a.rank(n - 1)).collect();
    let s = -signs::factor(SignSite::ConeDifferential);
    Complex::build(lo, ranks, |n| {
        IntMatrix::block(
            &[b.rank(n - 1), a.rank(n - 2)],
            &[b.rank(n), a.rank(n - 1)],
            &[vec![Some(b.d(n)), Some(f(n - 1))], vec![None, Some(a.d(n - 1).scale_i64(s))]],
        )
    })
}

/// `Mc 1_A`, with `(Mc 1_A)_n = A_n ⊕ A_{n-1}`.
pub fn mc1(a: &Complex) -> Result<Complex> {
    Ok(mapping_cone(&Proto::identity(a))?.cone)
}

/// `Mc` on a commuting square with identical ends: `diag(g_n, g_{n-1})`
/// from `Mc 1_A` to `Mc 1_{A'}`.
pub fn mc1_map(g: &Proto) -> Result<Proto> {
    let source = mc1(g.source())?;
    let target = mc1(g.target())?;
    Proto::build(source, target, 0, |n, _, _| IntMatrix::direct_sum(&g.comp(n), &g.comp(n - 1)))
}

/// The iso `[[1, u], [0, 1]] : Mc f -> Mc f'` and its inverse, where
/// `f' = f - d(u)` read as a map `A -> B`.
#[derive(Clone, Debug)]
pub struct ConeHomotopyIso {
    pub twisted: Proto,
    pub iso: ChainIso,
}

pub fn cone_homotopy_iso(f: &Proto, u: &Proto) -> Result<ConeHomotopyIso> {
    f.require_chain_map("cone input")?;
    let (a, b) = (f.source(), f.target());
    if u.degree() != 0 || u.source() != &a.suspend(1) || u.target() != b {
        return Err(Error::Shape("u must be a degree-0 protomorphism SA -> B".into()));
    }
    let twisted = f - &u.differential().desuspend_source(a);
    let source = mapping_cone(f)?.cone;
    let target = mapping_cone(&twisted)?.cone;
    let shear = |c: i64| {
        move |n: i64| {
            IntMatrix::block(
                &[b.rank(n), a.rank(n - 1)],
                &[b.rank(n), a.rank(n - 1)],
                &[
                    vec![Some(IntMatrix::identity(b.rank(n))), Some(u.comp(n).scale_i64(c))],
                    vec![None, Some(IntMatrix::identity(a.rank(n - 1)))],
                ],
            )
        }
    };
    let (fwd, bwd) = (shear(1), shear(-1));
    let forward = Proto::build(source.clone(), target.clone(), 0, |n, _, _| fwd(n))?;
    let backward = Proto::build(target, source, 0, |n, _, _| bwd(n))?;
    Ok(ConeHomotopyIso { twisted, iso: ChainIso { forward, backward } })
}

/// Chain maps `i : B -> C`, `p : C -> SA` with degree-0 splittings
/// `j : SA -> C`, `q : C -> B`.
#[derive(Clone, Debug)]
pub struct ConeRecognitionData {
    pub a: Complex,
    pub i: Proto,
    pub p: Proto,
    pub j: Proto,
    pub q: Proto,
}

impl ConeRecognitionData {
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::WitnessEquationsFail(what.to_string()));
        self.i.require_chain_map("i")?;
        self.p.require_chain_map("p")?;
        if self.j.degree() != 0 || self.q.degree() != 0 {
            return fail("j and q must have degree 0");
        }
        if self.p.target() != &self.a.suspend(1) {
            return fail("p must land in SA");
        }
        let c = |g: &Proto, f: &Proto| Proto::compose(g, f);
        let b = self.i.source();
        let cx = self.i.target();
        if !c(&self.p, &self.i)?.is_zero() {
            return fail("p∘i != 0");
        }
        if c(&self.q, &self.i)? != Proto::identity(b) {
            return fail("q∘i != 1");
        }
        if c(&self.p, &self.j)? != Proto::identity(&self.a.suspend(1)) {
            return fail("p∘j != 1");
        }
        if &c(&self.i, &self.q)? + &c(&self.j, &self.p)? != Proto::identity(cx) {
            return fail("i∘q + j∘p != 1");
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RecognizedCone {
    /// `q∘d(j)` read as a chain map `A -> B`.
    pub g: Proto,
    /// `[i, j] : Mc g -> C` with inverse `[q; p]`.
    pub iso: ChainIso,
}

pub fn recognize_cone(data: &ConeRecognitionData) -> Result<RecognizedCone> {
    data.validate()?;
    let g = Proto::compose(&data.q, &data.j.differential())?.desuspend_source(&data.a);
    g.require_chain_map("q∘d(j)")?;
    let mc = mapping_cone(&g)?.cone;
    let c = data.i.target();
    let forward = Proto::build(mc.clone(), c.clone(), 0, |n, _, _| {
        IntMatrix::hstack(&[&data.i.comp(n), &data.j.comp(n)])
    })?;
    let backward = Proto::build(c.clone(), mc, 0, |n, _, _| IntMatrix::vstack(&[&data.q.comp(n), &data.p.comp(n)]))?;
    Ok(RecognizedCone { g, iso: ChainIso { forward, backward } })
}

/// The sequence `A -> B ⊕ Mc 1_A -> Mc f` replacing `f` by an inclusion.
#[derive(Clone, Debug)]
pub struct CylinderFactorization {
    pub middle: Complex,
    pub i: Proto,
    pub p: Proto,
    pub j: Proto,
    pub q: Proto,
}

pub fn cylinder_factorization(f: &Proto) -> Result<CylinderFactorization> {
    let cone = mapping_cone(f)?.cone;
    let (a, b) = (f.source(), f.target());
    let middle = direct_sum(b, &mc1(a)?).object;
    let (rb, ra) = (|n: i64| b.rank(n), |n: i64| a.rank(n));
    let id = IntMatrix::identity;
    let zero = IntMatrix::zeros;
    let i = Proto::build(a.clone(), middle.clone(), 0, |n, _, _| {
        IntMatrix::vstack(&[&-&f.comp(n), &id(ra(n)), &zero(ra(n - 1), ra(n))])
    })?;
    let p = Proto::build(middle.clone(), cone.clone(), 0, |n, _, _| {
        IntMatrix::block(
            &[rb(n), ra(n - 1)],
            &[rb(n), ra(n), ra(n - 1)],
            &[vec![Some(id(rb(n))), Some(f.comp(n)), None], vec![None, None, Some(id(ra(n - 1)))]],
        )
    })?;
    let j = Proto::build(cone, middle.clone(), 0, |n, _, _| {
        IntMatrix::block(
            &[rb(n), ra(n), ra(n - 1)],
            &[rb(n), ra(n - 1)],
            &[vec![Some(id(rb(n))), None], vec![None, None], vec![None, Some(id(ra(n - 1)))]],
        )
    })?;
    let q = Proto::build(middle.clone(), a.clone(), 0, |n, _, _| {
        IntMatrix::block(&[ra(n)], &[rb(n), ra(n), ra(n - 1)], &[vec![None, Some(id(ra(n))), None]])
    })?;
    Ok(CylinderFactorization { middle, i, p, j, q })
}

impl CylinderFactorization {
    /// The same maps as cone-recognition data over `S⁻¹(Mc f)`.
    pub fn recognition_data(&self) -> ConeRecognitionData {
        let cone = self.p.target().clone();
        ConeRecognitionData {
            a: cone.suspend(-1),
            i: self.i.clone(),
            p: self.p.clone(),
            j: self.j.clone(),
            q: self.q.clone(),
        }
    }
}

/// `Mc 1_{S⁻¹A} -> LU A` with components `[[1, 0], [-d, 1]]`.
pub fn mc1_iso_lu(a: &Complex) -> Result<ChainIso> {
    let source = mc1(&a.suspend(-1))?;
    let target = functor_l(&a.forget())?;
    let shear = |c: i64| {
        move |n: i64| {
            IntMatrix::block(
                &[a.rank(n + 1), a.rank(n)],
                &[a.rank(n + 1), a.rank(n)],
                &[
                    vec![Some(IntMatrix::identity(a.rank(n + 1))), None],
                    vec![Some(a.d(n + 1).scale_i64(c)), Some(IntMatrix::identity(a.rank(n)))],
                ],
            )
        }
    };
    let (fwd, bwd) = (shear(-1), shear(1));
    let forward = Proto::build(source.clone(), target.clone(), 0, |n, _, _| fwd(n))?;
    let backward = Proto::build(target, source, 0, |n, _, _| bwd(n))?;
    Ok(ChainIso { forward, backward })
}

/// `Φ' ∘ Mc1(S⁻¹g) = LU(g) ∘ Φ` for a chain map `g : A -> A'`.
pub fn mc1_iso_lu_is_natural(g: &Proto) -> Result<bool> {
    let phi = mc1_iso_lu(g.source())?.forward;
    let phi2 = mc1_iso_lu(g.target())?.forward;
    let lhs = Proto::compose(&phi2, &mc1_map(&g.suspend(-1))?)?;
    let lu_g = functor_l_map(&g.reindex(g.source().forget(), 0, g.target().forget(), 0))?;
    let rhs = Proto::compose(&lu_g, &phi)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complexes::{hom_complex, homology_h, l_z};
    use crate::zlinalg::{int, ints};

    fn m2() -> Complex {
        Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap()
    }

    fn scalar_map(a: &Complex, c: i64) -> Proto {
        Proto::build(a.clone(), a.clone(), 0, |_, r, _| IntMatrix::scalar(r, c)).unwrap()
    }

    #[test]
    fn cone_of_zero_map_from_zero() {
        let b = m2();
        let mc = mapping_cone(&Proto::zero(&Complex::zero(), &b, 0)).unwrap();
        assert_eq!(mc.cone, b);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let k = Complex::point(0);
        let mc = mapping_cone(&Proto::identity(&k)).unwrap();
        assert_eq!(mc.cone.rank_map(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(mc.cone.d(1), IntMatrix::from_rows(&[&[1]]));
        assert!(homology_h(&mc.cone).is_zero());
        assert!(mc.inj.is_chain_map() && mc.proj.is_chain_map());
        assert!(Proto::compose(&mc.proj, &mc.inj).unwrap().is_zero());
    }

    #[test]
    fn cone_of_doubling() {
        let k = Complex::point(0);
        let mc = mapping_cone(&scalar_map(&k, 2)).unwrap();
        assert_eq!(homology_h(&mc.cone).at(0).torsion, vec![int(2)]);
    }

    #[test]
    fn cone_rejects_non_chain_maps() {
        let a = m2();
        let f = Proto::from_vector(&a, &a, 0, &ints(&[1, 0])).unwrap();
        assert!(matches!(mapping_cone(&f), Err(Error::NotAChainMap(_))));
    }

    #[test]
    fn homotopy_iso_trivial_twist() {
        let a = m2();
        let f = Proto::identity(&a);
        let u = Proto::zero(&a.suspend(1), &a, 0);
        let h = cone_homotopy_iso(&f, &u).unwrap();
        assert_eq!(h.twisted, f);
        assert_eq!(h.iso.forward, Proto::identity(h.iso.forward.source()));
    }

    #[test]
    fn homotopy_iso_nontrivial() {
        // A = K(0), B = Rℤ, u_1 = [[1]] : (SA)_1 -> B_1
        let a = Complex::point(0);
        let b = crate::complexes::r_z();
        let f = Proto::zero(&a, &b, 0);
        let u = Proto::from_vector(&a.suspend(1), &b, 0, &ints(&[1])).unwrap();
        let h = cone_homotopy_iso(&f, &u).unwrap();
        // d(u) = d^B u: the twisted map hits the bottom of Rℤ with -1
        assert_eq!(h.twisted.comp(0), IntMatrix::from_rows(&[&[-1]]));
        assert!(h.iso.holds());
    }

    #[test]
    fn recognize_canonical_cone() {
        let a = m2();
        let f = scalar_map(&a, 3);
        let mc = mapping_cone(&f).unwrap();
        let j = Proto::build(a.suspend(1), mc.cone.clone(), 0, |n, _, _| {
            IntMatrix::vstack(&[&IntMatrix::zeros(a.rank(n), a.rank(n - 1)), &IntMatrix::identity(a.rank(n - 1))])
        })
        .unwrap();
        let q = Proto::build(mc.cone.clone(), a.clone(), 0, |n, _, _| {
            IntMatrix::hstack(&[&IntMatrix::identity(a.rank(n)), &IntMatrix::zeros(a.rank(n), a.rank(n - 1))])
        })
        .unwrap();
        let data = ConeRecognitionData { a: a.clone(), i: mc.inj.clone(), p: mc.proj.clone(), j, q };
        let r = recognize_cone(&data).unwrap();
        assert_eq!(r.g, f);
        assert_eq!(r.iso.forward, Proto::identity(&mc.cone));
        assert!(r.iso.holds());
    }

    #[test]
    fn split_sum_recognizes_zero_map() {
        let (a, b) = (l_z(), m2());
        let sum = direct_sum(&b, &a.suspend(1));
        let data = ConeRecognitionData { a: a.clone(), i: sum.i, p: sum.p, j: sum.j, q: sum.q };
        let r = recognize_cone(&data).unwrap();
        assert!(r.g.is_zero());
        assert!(r.iso.holds());
    }

    #[test]
    fn broken_witness_is_reported() {
        let a = m2();
        let sum = direct_sum(&a, &a.suspend(1));
        let data = ConeRecognitionData { a: a.clone(), i: sum.i.scale_i64(2), p: sum.p, j: sum.j, q: sum.q };
        assert_eq!(recognize_cone(&data).unwrap_err(), Error::WitnessEquationsFail("q∘i != 1".into()));
    }

    #[test]
    fn cylinder_of_identity() {
        let k = Complex::point(0);
        let cyl = cylinder_factorization(&Proto::identity(&k)).unwrap();
        assert_eq!(homology_h(&cyl.middle), homology_h(&k));
        assert!(Proto::compose(&cyl.p, &cyl.i).unwrap().is_zero());
        let r = recognize_cone(&cyl.recognition_data()).unwrap();
        assert!(r.iso.holds());
    }

    #[test]
    fn cylinder_of_zero() {
        let k = Complex::point(0);
        let cyl = cylinder_factorization(&Proto::zero(&k, &m2(), 0)).unwrap();
        assert_eq!(cyl.i.comp(0), IntMatrix::from_rows(&[&[0], &[1]]));
    }

    #[test]
    fn mc1_lu() {
        let k = Complex::point(0);
        let iso = mc1_iso_lu(&k).unwrap();
        assert!(iso.holds());
        assert_eq!(iso.forward, Proto::identity(iso.forward.source()));
        let iso = mc1_iso_lu(&m2()).unwrap();
        assert!(iso.holds());
        assert!(mc1_iso_lu_is_natural(&scalar_map(&m2(), 5)).unwrap());
    }

    #[test]
    fn hom_from_lz_matches_mc1_ranks() {
        let a = m2();
        assert_eq!(hom_complex(&l_z(), &a).unwrap().rank_map(), mc1(&a).unwrap().rank_map());
    }
}
