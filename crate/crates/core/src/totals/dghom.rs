use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::double::{embed_i, total_complex, DoubleComplex};
use crate::complexes::{hom_rank, hom_support, Complex, Proto};
use crate::dgcat::unit;
use crate::error::{Error, Result};
use crate::zlinalg::{is_unimodular, sign, IntMatrix};

/// An element of degree `n` of the hom complex between double complexes:
/// `f_{p,q} : A_q -> B_p` of degree `n - p + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGHomElement {
    pub source: DoubleComplex,
    pub target: DoubleComplex,
    pub degree: i64,
    comps: BTreeMap<(i64, i64), Proto>,
}

impl DGHomElement {
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        degree: i64,
        comps: BTreeMap<(i64, i64), Proto>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for ((p, q), f) in comps {
            if f.source() != &source.column(q) || f.target() != &target.column(p) || f.degree() != degree - p + q {
                return Err(Error::Shape(format!("component ({p}, {q}) has the wrong shape")));
            }
            if !f.is_zero() {
                kept.insert((p, q), f);
            }
        }
        Ok(DGHomElement { source, target, degree, comps: kept })
    }

    pub fn zero(source: &DoubleComplex, target: &DoubleComplex, degree: i64) -> Self {
        DGHomElement { source: source.clone(), target: target.clone(), degree, comps: BTreeMap::new() }
    }

    /// The Kronecker delta family `1_{p,p}`.
    pub fn identity(a: &DoubleComplex) -> Self {
        let comps = a.column_range().map(|m| ((m, m), Proto::identity(&a.column(m)))).collect();
        Self::new(a.clone(), a.clone(), 0, comps).expect("identity")
    }

    pub fn comp(&self, p: i64, q: i64) -> Proto {
        self.comps.get(&(p, q)).cloned().unwrap_or_else(|| {
            Proto::zero(&self.source.column(q), &self.target.column(p), self.degree - p + q)
        })
    }

    pub fn comps(&self) -> &BTreeMap<(i64, i64), Proto> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn to_vector(&self) -> Vec<BigInt> {
        dg_hom_layout(&self.source, &self.target, self.degree)
            .into_iter()
            .flat_map(|(p, q, _)| self.comp(p, q).to_vector())
            .collect()
    }

    pub fn from_vector(source: &DoubleComplex, target: &DoubleComplex, degree: i64, v: &[BigInt]) -> Result<Self> {
        let layout = dg_hom_layout(source, target, degree);
        let total: usize = layout.iter().map(|b| b.2).sum();
        if v.len() != total {
            return Err(Error::Dimension(format!("vector of length {} for a hom group of rank {total}", v.len())));
        }
        let mut comps = BTreeMap::new();
        let mut offset = 0;
        for (p, q, r) in layout {
            let f = Proto::from_vector(&source.column(q), &target.column(p), degree - p + q, &v[offset..offset + r])?;
            comps.insert((p, q), f);
            offset += r;
        }
        Self::new(source.clone(), target.clone(), degree, comps)
    }
}

/// Blocks `(p, q, rank)` of the degree-`n` hom group, ordered by `q` then `p`.
pub fn dg_hom_layout(a: &DoubleComplex, b: &DoubleComplex, n: i64) -> Vec<(i64, i64, usize)> {
    let mut out = Vec::new();
    for q in a.column_range() {
        for p in b.column_range() {
            let r = hom_rank(&a.column(q), &b.column(p), n - p + q);
            if r > 0 {
                out.push((p, q, r));
            }
        }
    }
    out
}

pub fn dg_hom_rank(a: &DoubleComplex, b: &DoubleComplex, n: i64) -> usize {
    dg_hom_layout(a, b, n).iter().map(|t| t.2).sum()
}

/// `d(f)_{p,q} = (-1)^p d(f_{p,q}) + δ_{p+1} f_{p+1,q} - (-1)^n f_{p,q-1} δ_q`.
pub fn dg_hom_differential(f: &DGHomElement) -> DGHomElement {
    let (a, b, n) = (&f.source, &f.target, f.degree);
    let mut comps = BTreeMap::new();
    for q in a.column_range() {
        for p in b.column_range() {
            let inner = f.comp(p, q).differential().scale_i64(sign(p));
            let left = Proto::compose(&b.delta(p + 1), &f.comp(p + 1, q)).expect("composable");
            let right = Proto::compose(&f.comp(p, q - 1), &a.delta(q)).expect("composable").scale_i64(-sign(n));
            comps.insert((p, q), &(&inner + &left) + &right);
        }
    }
    DGHomElement::new(a.clone(), b.clone(), n - 1, comps).expect("differential shapes")
}

/// `(g ∘ f)_{p,q} = Σ_r g_{p,r} ∘ f_{r,q}`.
pub fn dg_compose(g: &DGHomElement, f: &DGHomElement) -> Result<DGHomElement> {
    if f.target != g.source {
        return Err(Error::NotComposable("target of f is not the source of g".into()));
    }
    let (a, c) = (&f.source, &g.target);
    let degree = g.degree + f.degree;
    let mut comps = BTreeMap::new();
    for q in a.column_range() {
        for p in c.column_range() {
            let mut total = Proto::zero(&a.column(q), &c.column(p), degree - p + q);
            for r in f.target.column_range() {
                total = &total + &Proto::compose(&g.comp(p, r), &f.comp(r, q))?;
            }
            comps.insert((p, q), total);
        }
    }
    DGHomElement::new(a.clone(), c.clone(), degree, comps)
}

/// `i χ : i X -> i X′` for a protomorphism `χ`.
pub fn embed_i_map(chi: &Proto) -> DGHomElement {
    let (x, y) = (embed_i(chi.source()), embed_i(chi.target()));
    DGHomElement::new(x, y, chi.degree(), [((0, 0), chi.clone())].into()).expect("single entry")
}

/// The transpose of `f : A -> i X` to `Tot A -> X`: on the block `S^m A_m`
/// it is `f_{0,m}`.
pub fn tot_transpose(f: &DGHomElement, x: &Complex) -> Result<Proto> {
    let a = &f.source;
    let tot = total_complex(a)?;
    Proto::build(tot, x.clone(), f.degree, |t, rows, cols| {
        let mut out = IntMatrix::zeros(rows, cols);
        for (m, offset, _) in a.tot_layout(t) {
            out.put(0, offset, &f.comp(0, m).comp(t - m));
        }
        out
    })
}

/// Checks `hom(A, i X) ≅ [Tot A, X]`: the transpose is a bijection in every
/// degree that commutes with the differentials, and `Tot(i X) = X`.
pub fn tot_adjunction_check(a: &DoubleComplex, x: &Complex) -> Result<bool> {
    if total_complex(&embed_i(x))? != *x {
        return Ok(false);
    }
    let ix = embed_i(x);
    let tot = total_complex(a)?;
    let mut degrees: Vec<i64> = hom_support(&tot, x).collect();
    for q in a.column_range() {
        degrees.extend(hom_support(&a.column(q), x).map(|n| n - q));
    }
    degrees.sort_unstable();
    degrees.dedup();
    for n in degrees {
        let rank = dg_hom_rank(a, &ix, n);
        if rank != hom_rank(&tot, x, n) {
            return Ok(false);
        }
        let mut columns = Vec::with_capacity(rank);
        for i in 0..rank {
            let f = DGHomElement::from_vector(a, &ix, n, &unit(rank, i))?;
            let h = tot_transpose(&f, x)?;
            if tot_transpose(&dg_hom_differential(&f), x)? != h.differential() {
                return Ok(false);
            }
            columns.push(h.to_vector());
        }
        if rank > 0 && !is_unimodular(&IntMatrix::from_columns(rank, &columns)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Naturality of the transpose in `X` against a chain map `χ : X -> X′`.
pub fn tot_adjunction_natural(a: &DoubleComplex, chi: &Proto) -> Result<bool> {
    let (x, y) = (chi.source(), chi.target());
    let ix = embed_i(x);
    let ichi = embed_i_map(chi);
    let tot = total_complex(a)?;
    for n in hom_support(&tot, x) {
        let rank = dg_hom_rank(a, &ix, n);
        for i in 0..rank {
            let f = DGHomElement::from_vector(a, &ix, n, &unit(rank, i))?;
            let lhs = tot_transpose(&dg_compose(&ichi, &f)?, y)?;
            let rhs = Proto::compose(chi, &tot_transpose(&f, x)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::l_z;

    fn two_column() -> DoubleComplex {
        let c = Complex::point(0);
        DoubleComplex::new([(0, c.clone()), (1, c.clone())].into(), [(1, Proto::identity(&c))].into()).unwrap()
    }

    #[test]
    fn identity_is_a_cycle() {
        let a = two_column();
        assert!(dg_hom_differential(&DGHomElement::identity(&a)).is_zero());
    }

    #[test]
    fn single_entry_collapses_to_inner() {
        let x = l_z();
        let (a, b) = (embed_i(&x), embed_i(&x));
        let h = Proto::new(x.clone(), x.clone(), 1, [(-1, IntMatrix::identity(1))].into()).unwrap();
        let f = DGHomElement::new(a, b, 1, [((0, 0), h.clone())].into()).unwrap();
        assert_eq!(dg_hom_differential(&f).comp(0, 0), h.differential());
    }

    #[test]
    fn identity_composes() {
        let a = two_column();
        let f = DGHomElement::from_vector(&a, &a, 1, &unit(dg_hom_rank(&a, &a, 1), 0)).unwrap();
        assert_eq!(dg_compose(&DGHomElement::identity(&a), &f).unwrap(), f);
        assert_eq!(dg_compose(&f, &DGHomElement::identity(&a)).unwrap(), f);
    }

    #[test]
    fn two_column_adjunction() {
        let a = two_column();
        assert!(tot_adjunction_check(&a, &Complex::point(0)).unwrap());
        assert_eq!(dg_hom_rank(&a, &embed_i(&Complex::point(0)), 0), 1);
        assert_eq!(dg_hom_rank(&a, &embed_i(&Complex::point(0)), -1), 1);
        assert!(tot_adjunction_check(&a, &l_z()).unwrap());
    }

    #[test]
    fn adjunction_natural() {
        let a = two_column();
        let x = l_z();
        let chi = crate::complexes::chain_map_basis(&x, &Complex::point(0));
        for c in chi {
            assert!(tot_adjunction_natural(&a, &c).unwrap());
        }
    }
}
