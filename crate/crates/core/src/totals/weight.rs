use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::double::{total_complex, DoubleComplex};
use crate::complexes::{l_z, Complex, Proto};
use crate::dgcat::{ell_category, tensor_vector, weighted_colimit, DGModule, FiniteDGCategory, Variance, WeightedColimit};
use crate::error::{Error, Result};
use crate::monoidal::ChainIso;
use crate::zlinalg::{inverse_unimodular, sign, IntMatrix};

fn object(window: i64, m: i64) -> usize {
    (m + window) as usize
}

/// `J^m = S^m Lℤ` on the objects `-window..=window` of `ℒ`; the generator
/// `m -> m+1` sends the top of `J^m` to the bottom of `J^{m+1}`.
pub fn weight_j(window: i64) -> DGModule {
    weight_over(&Arc::new(ell_category(window)), window)
}

fn weight_over(cat: &Arc<FiniteDGCategory>, window: i64) -> DGModule {
    let values = (-window..=window).map(|m| l_z().suspend(m)).collect();
    DGModule::from_action(cat.clone(), Variance::Left, values, &mut |u, v, _, f, q, x| {
        let m = u as i64 - window;
        if u == v {
            x.iter().map(|z| z * &f[0]).collect()
        } else if q == m {
            vec![&x[0] * &f[0]]
        } else {
            vec![BigInt::zero(); l_z().suspend(m + 1).rank(q)]
        }
    })
    .expect("weight J")
}

/// `A` as a right module over `ℒ`: the generator `m -> m+1` acts by `δ_{m+1}`.
pub fn double_as_module(a: &DoubleComplex, cat: &Arc<FiniteDGCategory>, window: i64) -> Result<DGModule> {
    let values = (-window..=window).map(|m| a.column(m)).collect();
    DGModule::from_action(cat.clone(), Variance::Right, values, &mut |u, v, _, f, q, y| {
        let m = u as i64 - window;
        if u == v {
            y.iter().map(|z| z * &f[0]).collect()
        } else {
            a.delta(m + 1).comp(q).mul_vec(y).into_iter().map(|z| z * &f[0]).collect()
        }
    })
}

/// `colim(J, A)` with its chain isomorphism from `Tot A`.
#[derive(Clone, Debug)]
pub struct TotColimit {
    pub window: i64,
    pub colimit: WeightedColimit,
    pub tot: Complex,
    /// `a ∈ A_{m,k} ↦ (-1)^{mk + m(m+1)/2} [a ⊗ top_m]`.
    pub comparison: ChainIso,
}

/// The smallest window containing `[m_lo - 1, m_hi]`.
pub fn default_window(a: &DoubleComplex) -> i64 {
    let r = a.column_range();
    if r.is_empty() {
        return 1;
    }
    (r.start() - 1).abs().max(r.end().abs())
}

pub fn tot_via_weighted_colimit(a: &DoubleComplex, window: Option<i64>) -> Result<TotColimit> {
    let window = window.unwrap_or_else(|| default_window(a));
    let r = a.column_range();
    if !r.is_empty() && (r.start() - 1 < -window || *r.end() > window) {
        return Err(Error::SupportExceedsWindow { lo: *r.start(), hi: *r.end(), window });
    }
    let cat = Arc::new(ell_category(window));
    let weight = double_as_module(a, &cat, window)?;
    let diagram = weight_over(&cat, window);
    let colimit = weighted_colimit(&weight, &diagram)?;
    let tot = total_complex(a)?;
    let coend = &colimit.coend;
    let forward = Proto::build(tot.clone(), colimit.object.clone(), 0, |n, rows, cols| {
        let mut out = IntMatrix::zeros(rows, cols);
        for (m, offset, rank) in a.tot_layout(n) {
            let k = n - m;
            let u = object(window, m);
            let s = BigInt::from(sign(m * k + m * (m + 1) / 2));
            for i in 0..rank {
                let mut e = vec![BigInt::zero(); rank];
                e[i] = 1.into();
                let t = tensor_vector(weight.value(u), diagram.value(u), k, &e, m, &[BigInt::from(1)]);
                for (row, z) in coend.class_of(u, n, &t).into_iter().enumerate() {
                    out.set(row, offset + i, z * &s);
                }
            }
        }
        out
    })?;
    let backward = forward.map_comps(|q, m| {
        inverse_unimodular(m).unwrap_or_else(|| IntMatrix::zeros(colimit.object.rank(q), tot.rank(q)))
    });
    let backward = Proto::new(colimit.object.clone(), tot.clone(), 0, backward.comps().into_iter().collect())
        .map_err(|_| Error::Dimension("colimit and total complex differ in rank".into()))?;
    Ok(TotColimit { window, colimit, tot, comparison: ChainIso { forward, backward } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::homology_h;
    use crate::totals::double::embed_i;

    fn square() -> DoubleComplex {
        let col = Complex::new(0, vec![1, 1], [(1, IntMatrix::identity(1))].into()).unwrap();
        let delta = Proto::identity(&col);
        DoubleComplex::new([(0, col.clone()), (1, col)].into(), [(1, delta)].into()).unwrap()
    }

    #[test]
    fn weight_is_valid() {
        let j = weight_j(2);
        j.validate().unwrap();
        assert_eq!(j.value(2), &l_z());
    }

    #[test]
    fn window_restriction() {
        let (big, small) = (weight_j(3), weight_j(2));
        for m in -2..=2i64 {
            assert_eq!(big.value(object(3, m)), small.value(object(2, m)));
            for d in [0, 1] {
                if m + d > 2 {
                    continue;
                }
                let (bu, bv) = (object(3, m), object(3, m + d));
                let (su, sv) = (object(2, m), object(2, m + d));
                assert_eq!(big.actions()[&(bu, bv)].comps(), small.actions()[&(su, sv)].comps());
            }
        }
    }

    #[test]
    fn single_column_identity_shaped() {
        let x = l_z();
        let t = tot_via_weighted_colimit(&embed_i(&x), None).unwrap();
        assert!(t.comparison.holds());
        assert_eq!(t.colimit.object, x);
        for (_, m) in t.comparison.forward.comps() {
            assert!(m.is_identity());
        }
    }

    #[test]
    fn square_matches() {
        let t = tot_via_weighted_colimit(&square(), None).unwrap();
        assert!(t.comparison.holds());
        assert_eq!(homology_h(&t.colimit.object), homology_h(&t.tot));
    }

    #[test]
    fn window_too_small() {
        let a = DoubleComplex::new([(-2, Complex::point(0))].into(), Default::default()).unwrap();
        assert_eq!(
            tot_via_weighted_colimit(&a, Some(2)).unwrap_err(),
            Error::SupportExceedsWindow { lo: -2, hi: -2, window: 2 }
        );
        assert_eq!(default_window(&a), 3);
        assert!(tot_via_weighted_colimit(&a, None).unwrap().comparison.holds());
    }

    #[test]
    fn flipped_total_sign_breaks_comparison() {
        use crate::signs::{with_flipped, SignSite};
        let ok = with_flipped(SignSite::TotalDifferential, || tot_via_weighted_colimit(&square(), None).unwrap());
        assert!(!ok.comparison.holds());
    }
}
