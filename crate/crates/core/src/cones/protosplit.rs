use num_bigint::BigInt;

use crate::complexes::{as_columns, chain_map_basis, hom_rank, Complex, Proto};
use crate::error::{Error, Result};
use crate::monoidal::ChainIso;
use crate::zlinalg::{kernel_basis, smith_normal_form, solve_matrix, IntMatrix};

use super::cone::{cylinder_factorization, mapping_cone};

/// A chain map `f : A -> B` with a degree-0 protomorphism `t : B -> A`
/// such that `f∘t∘f = f`.
#[derive(Clone, Debug)]
pub struct Protosplitting {
    pub f: Proto,
    pub t: Proto,
}

impl Protosplitting {
    pub fn new(f: Proto, t: Proto) -> Result<Self> {
        f.require_chain_map("f")?;
        if !is_protosplitting(&f, &t) {
            return Err(Error::NotProtosplit);
        }
        Ok(Protosplitting { f, t })
    }

    /// `1 - f∘t`.
    pub fn idempotent(&self) -> Proto {
        idempotent_of(&self.f, &self.t)
    }
}

pub fn is_protosplitting(f: &Proto, t: &Proto) -> bool {
    if t.degree() != 0 || t.source() != f.target() || t.target() != f.source() {
        return false;
    }
    let ftf = Proto::compose(f, &Proto::compose(t, f).expect("shapes checked")).expect("shapes checked");
    ftf == *f
}

pub fn idempotent_of(f: &Proto, t: &Proto) -> Proto {
    let ft = Proto::compose(f, t).expect("protosplitting shapes");
    &Proto::identity(f.target()) - &ft
}

/// Factors an idempotent integer matrix as `e = s·w` with `w·s = 1`.
///
/// With `u e v = diag(1, .., 1, 0, .., 0)` the first columns of `u⁻¹` and
/// the first rows of `v⁻¹` give the factors.
pub fn split_matrix_idempotent(e: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if !e.is_square() || &(e * e) != e {
        return Err(Error::NotIdempotent);
    }
    let n = e.rows();
    let snf = smith_normal_form(e);
    let r = snf.rank();
    if snf.invariant_factors().iter().any(|d| *d != BigInt::from(1)) {
        return Err(Error::NotIdempotent);
    }
    let s = snf.u_inv.submatrix(0..n, 0..r);
    let w = snf.v_inv.submatrix(0..r, 0..n);
    debug_assert!(&s * &w == *e && (&w * &s).is_identity());
    Ok((s, w))
}

/// Splits a degree-0 idempotent protomorphism degreewise and transports the
/// differential: `d_n = w_{n-1} d_n s_n` on the image.
fn split_degreewise(e: &Proto) -> Result<(Complex, Proto, Proto)> {
    let a = e.source();
    let mut pieces = Vec::new();
    for n in a.support() {
        pieces.push(split_matrix_idempotent(&e.comp(n))?);
    }
    let at = |n: i64| &pieces[(n - a.lo()) as usize];
    let ranks = a.support().map(|n| at(n).1.rows()).collect();
    let image = Complex::build(a.lo(), ranks, |n| &(&at(n - 1).1 * &a.d(n)) * &at(n).0)?;
    let w = Proto::build(a.clone(), image.clone(), 0, |n, _, _| at(n).1.clone())?;
    let s = Proto::build(image.clone(), a.clone(), 0, |n, _, _| at(n).0.clone())?;
    Ok((image, w, s))
}

/// A split idempotent `e = s∘r` with `r∘s = 1`.
#[derive(Clone, Debug)]
pub struct SplitIdempotent {
    pub image: Complex,
    pub r: Proto,
    pub s: Proto,
}

pub fn split_idempotent(e: &Proto) -> Result<SplitIdempotent> {
    e.require_chain_map("idempotent")?;
    if e.source() != e.target() || Proto::compose(e, e)? != *e {
        return Err(Error::NotIdempotent);
    }
    let (image, r, s) = split_degreewise(e)?;
    Ok(SplitIdempotent { image, r, s })
}

/// The cokernel `w : B -> C` of a protosplit chain map, with a degree-0
/// section `s : C -> B`.
#[derive(Clone, Debug)]
pub struct ProtosplitCokernel {
    pub object: Complex,
    pub w: Proto,
    pub s: Proto,
    pub splitting: Protosplitting,
}

pub fn cokernel_protosplit(f: &Proto, t: &Proto) -> Result<ProtosplitCokernel> {
    let splitting = Protosplitting::new(f.clone(), t.clone())?;
    let (object, w, s) = split_degreewise(&splitting.idempotent())?;
    w.require_chain_map("cokernel projection")?;
    Ok(ProtosplitCokernel { object, w, s, splitting })
}

impl ProtosplitCokernel {
    /// `w∘f = 0`, `w∘s = 1`, `s∘w = 1 - f∘t` and `w` a chain map.
    pub fn equations_hold(&self) -> bool {
        let f = &self.splitting.f;
        let (Ok(wf), Ok(ws), Ok(sw)) =
            (Proto::compose(&self.w, f), Proto::compose(&self.w, &self.s), Proto::compose(&self.s, &self.w))
        else {
            return false;
        };
        wf.is_zero()
            && ws == Proto::identity(&self.object)
            && sw == self.splitting.idempotent()
            && self.w.is_chain_map()
            && self.object.check_d_squared().is_ok()
    }

    /// Chain maps `B -> T` killing `f` factor uniquely through `w`, and every
    /// chain map `C -> T` arises this way.
    pub fn universal_into(&self, target: &Complex) -> Result<bool> {
        let f = &self.splitting.f;
        let b = f.target();
        let a = f.source();
        let g_basis = chain_map_basis(b, target);
        let cols: Vec<Vec<BigInt>> =
            g_basis.iter().map(|g| Ok(Proto::compose(g, f)?.to_vector())).collect::<Result<_>>()?;
        let constraint = IntMatrix::from_columns(hom_rank(a, target, 0), &cols);
        let killing = kernel_basis(&constraint);
        let zero = Proto::zero(b, target, 0);
        for col in killing.columns() {
            let g = Proto::combination(&g_basis, &col, &zero);
            let Some(h) = self.factor_through_w(&g, target)? else { return Ok(false) };
            if !h.is_chain_map() || h != Proto::compose(&g, &self.s)? {
                return Ok(false);
            }
        }
        let h_basis = chain_map_basis(&self.object, target);
        let hw: Vec<Proto> = h_basis.iter().map(|h| Proto::compose(h, &self.w)).collect::<Result<_>>()?;
        for p in &hw {
            if !Proto::compose(p, f)?.is_zero() {
                return Ok(false);
            }
        }
        // -∘w is injective on chain maps out of C
        let m = as_columns(b, target, 0, &hw);
        Ok(crate::zlinalg::rank(&m) == h_basis.len())
    }

    /// Solves `h_n w_n = g_n` degreewise.
    fn factor_through_w(&self, g: &Proto, target: &Complex) -> Result<Option<Proto>> {
        let mut comps = std::collections::BTreeMap::new();
        for n in self.object.support() {
            let wt = self.w.comp(n).transpose();
            match solve_matrix(&wt, &g.comp(n).transpose())? {
                Some(x) => comps.insert(n, x.transpose()),
                None => return Ok(None),
            };
        }
        for n in g.source().support() {
            if !self.object.support().contains(&n) && !g.comp(n).is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(Proto::new(self.object.clone(), target.clone(), 0, comps)?))
    }

    pub fn verify(&self, probes: &[Complex]) -> Result<bool> {
        if !self.equations_hold() {
            return Ok(false);
        }
        for t in probes {
            if !self.universal_into(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Coequalizer of `u, v : A -> B` given `u∘t = 1` and `v∘t∘u = v∘t∘v`,
/// computed as the cokernel of `u - v` protosplit by `t`.
pub fn coequalizer_protosplit_pair(u: &Proto, v: &Proto, t: &Proto) -> Result<ProtosplitCokernel> {
    u.require_chain_map("u")?;
    v.require_chain_map("v")?;
    if t.degree() != 0 || t.source() != u.target() || t.target() != u.source() || u.source() != v.source() {
        return Err(Error::PairEquationsFail("u, v, t have mismatched shapes".into()));
    }
    if u.target() != v.target() {
        return Err(Error::PairEquationsFail("u and v have different targets".into()));
    }
    if Proto::compose(u, t)? != Proto::identity(u.target()) {
        return Err(Error::PairEquationsFail("u∘t != 1".into()));
    }
    let vt = Proto::compose(v, t)?;
    if Proto::compose(&vt, u)? != Proto::compose(&vt, v)? {
        return Err(Error::PairEquationsFail("v∘t∘u != v∘t∘v".into()));
    }
    cokernel_protosplit(&(u - v), t)
}

/// The pair `u = [0 1], v = [f 1] : A⊕B -> B` with `t' = [-t; 1]`, whose
/// coequalizer is the cokernel of `f`.
#[derive(Clone, Debug)]
pub struct ReversePair {
    pub u: Proto,
    pub v: Proto,
    pub t: Proto,
}

pub fn reverse_reduction(f: &Proto, t: &Proto) -> Result<ReversePair> {
    let (a, b) = (f.source(), f.target());
    let sum = Complex::direct_sum(a, b);
    let u = Proto::build(sum.clone(), b.clone(), 0, |n, _, _| {
        IntMatrix::hstack(&[&IntMatrix::zeros(b.rank(n), a.rank(n)), &IntMatrix::identity(b.rank(n))])
    })?;
    let v = Proto::build(sum.clone(), b.clone(), 0, |n, _, _| {
        IntMatrix::hstack(&[&f.comp(n), &IntMatrix::identity(b.rank(n))])
    })?;
    let t = Proto::build(b.clone(), sum, 0, |n, _, _| {
        IntMatrix::vstack(&[&-&t.comp(n), &IntMatrix::identity(b.rank(n))])
    })?;
    Ok(ReversePair { u, v, t })
}

/// `Mc f` recovered as the cokernel of `[-f; 1; 0] : A -> B ⊕ Mc 1_A`,
/// with a comparison iso to the mapping cone.
#[derive(Clone, Debug)]
pub struct ConeAsCokernel {
    pub cokernel: ProtosplitCokernel,
    pub comparison: ChainIso,
}

pub fn cone_as_cokernel(f: &Proto) -> Result<ConeAsCokernel> {
    let cyl = cylinder_factorization(f)?;
    let cokernel = cokernel_protosplit(&cyl.i, &cyl.q)?;
    let cone = mapping_cone(f)?.cone;
    debug_assert_eq!(cyl.p.target(), &cone);
    let forward = Proto::compose(&cyl.p, &cokernel.s)?;
    let backward = Proto::compose(&cokernel.w, &cyl.j)?;
    Ok(ConeAsCokernel { cokernel, comparison: ChainIso { forward, backward } })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complexes::{functor_l, homology_h, l_z};
    use crate::cones::direct_sum;
    use crate::cones::probe_family;

    fn m2() -> Complex {
        Complex::new(0, vec![1, 1], BTreeMap::from([(1, IntMatrix::from_rows(&[&[2]]))])).unwrap()
    }

    fn scalar(a: &Complex, c: i64) -> Proto {
        Proto::build(a.clone(), a.clone(), 0, |_, r, _| IntMatrix::scalar(r, c)).unwrap()
    }

    #[test]
    fn protosplitting_examples() {
        let k = Complex::point(0);
        assert!(is_protosplitting(&Proto::identity(&k), &Proto::identity(&k)));
        assert!(is_protosplitting(&Proto::zero(&k, &k, 0), &Proto::zero(&k, &k, 0)));
        assert!(!is_protosplitting(&scalar(&k, 2), &Proto::identity(&k)));
        let ps = Protosplitting::new(Proto::identity(&m2()), Proto::identity(&m2())).unwrap();
        assert!(ps.idempotent().is_zero());
    }

    #[test]
    fn matrix_idempotents() {
        let e = IntMatrix::from_rows(&[&[1, 1], &[0, 0]]);
        let (s, w) = split_matrix_idempotent(&e).unwrap();
        assert_eq!(&s * &w, e);
        assert!((&w * &s).is_identity());
        assert!(split_matrix_idempotent(&IntMatrix::from_rows(&[&[2]])).is_err());
        let (s, w) = split_matrix_idempotent(&IntMatrix::zeros(2, 2)).unwrap();
        assert_eq!((s.shape(), w.shape()), ((2, 0), (0, 2)));
    }

    #[test]
    fn split_chain_idempotents() {
        let a = m2();
        let p = split_idempotent(&Proto::identity(&a)).unwrap();
        assert_eq!(p.image, a);
        let p = split_idempotent(&Proto::zero(&a, &a, 0)).unwrap();
        assert!(p.image.is_zero());
        let k2 = Complex::graded(0, vec![2]);
        let e = Proto::new(k2.clone(), k2, 0, BTreeMap::from([(0, IntMatrix::from_rows(&[&[1, 0], &[0, 0]]))]))
            .unwrap();
        let p = split_idempotent(&e).unwrap();
        assert_eq!(p.image, Complex::point(0));
        assert_eq!(Proto::compose(&p.s, &p.r).unwrap(), e);
        assert!(matches!(split_idempotent(&scalar(&m2(), 2)), Err(Error::NotIdempotent)));
    }

    #[test]
    fn cokernel_of_identity_is_zero() {
        let a = m2();
        let c = cokernel_protosplit(&Proto::identity(&a), &Proto::identity(&a)).unwrap();
        assert!(c.object.is_zero());
        assert!(c.equations_hold());
    }

    #[test]
    fn cokernel_of_first_summand() {
        let k = Complex::point(0);
        let sum = direct_sum(&k, &k);
        let c = cokernel_protosplit(&sum.i, &sum.q).unwrap();
        assert_eq!(c.object, k);
        assert_eq!(c.w.comp(0), IntMatrix::from_rows(&[&[0, 1]]));
        assert!(c.verify(&probe_family(&[k], 2).unwrap()).unwrap());
    }

    #[test]
    fn cokernel_of_lz_boundary() {
        // f : S⁻¹Lℤ -> Lℤ hitting the bottom generator
        let lz = l_z();
        let source = lz.suspend(-1);
        let f = Proto::new(source.clone(), lz.clone(), 0, BTreeMap::from([(-1, IntMatrix::from_rows(&[&[1]]))]))
            .unwrap();
        assert!(f.is_chain_map());
        let t = Proto::new(lz.clone(), source, 0, BTreeMap::from([(-1, IntMatrix::from_rows(&[&[1]]))])).unwrap();
        let c = cokernel_protosplit(&f, &t).unwrap();
        assert_eq!(c.object, Complex::point(0));
        assert!(c.verify(&probe_family(&[lz], 1).unwrap()).unwrap());
    }

    #[test]
    fn not_protosplit_is_rejected() {
        let k = Complex::point(0);
        assert_eq!(cokernel_protosplit(&scalar(&k, 2), &Proto::identity(&k)).unwrap_err(), Error::NotProtosplit);
    }

    #[test]
    fn coequalizer_examples() {
        let a = m2();
        let one = Proto::identity(&a);
        let c = coequalizer_protosplit_pair(&one, &one, &one).unwrap();
        assert_eq!(c.object, a);
        let err = coequalizer_protosplit_pair(&one, &one, &scalar(&a, 2)).unwrap_err();
        assert_eq!(err, Error::PairEquationsFail("u∘t != 1".into()));
    }

    #[test]
    fn idempotent_as_coequalizer() {
        let k2 = Complex::graded(0, vec![2]);
        let e = Proto::new(k2.clone(), k2.clone(), 0, BTreeMap::from([(0, IntMatrix::from_rows(&[&[1, 1], &[0, 0]]))]))
            .unwrap();
        let one = Proto::identity(&k2);
        let c = coequalizer_protosplit_pair(&one, &e, &one).unwrap();
        let split = split_idempotent(&e).unwrap();
        assert_eq!(c.object, split.image);
        assert!(c.equations_hold());
    }

    #[test]
    fn reverse_reduction_matches() {
        let k = Complex::point(0);
        let sum = direct_sum(&k, &m2());
        let direct = cokernel_protosplit(&sum.i, &sum.q).unwrap();
        let pair = reverse_reduction(&sum.i, &sum.q).unwrap();
        let via = coequalizer_protosplit_pair(&pair.u, &pair.v, &pair.t).unwrap();
        assert_eq!(direct.object, via.object);
        assert_eq!(direct.w, via.w);
    }

    #[test]
    fn cone_via_cokernel() {
        let k = Complex::point(0);
        for f in [Proto::identity(&k), Proto::zero(&k, &m2(), 0), scalar(&k, 3)] {
            let c = cone_as_cokernel(&f).unwrap();
            assert!(c.comparison.holds());
            assert_eq!(homology_h(&c.cokernel.object), homology_h(&mapping_cone(&f).unwrap().cone));
        }
        let lz = functor_l(&Complex::point(2)).unwrap();
        let c = cone_as_cokernel(&Proto::zero(&lz, &m2(), 0)).unwrap();
        assert!(c.comparison.holds());
    }
}
