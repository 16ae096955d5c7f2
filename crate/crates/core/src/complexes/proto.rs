use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;

use super::complex::Complex;
use super::hom::hom_layout;
use crate::error::{Error, Result};
use crate::signs::{self, SignSite};
use crate::zlinalg::{sign, IntMatrix};

/// A protomorphism of degree `degree`: matrices `A_q -> B_{q+degree}` with
/// no compatibility with the differentials required.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Proto {
    source: Complex,
    target: Complex,
    degree: i64,
    // comps[i] is the component at source degree source.lo() + i
    comps: Vec<IntMatrix>,
}

impl Proto {
    pub fn new(
        source: Complex,
        target: Complex,
        degree: i64,
        comps: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        for (&q, m) in &comps {
            let want = (target.rank(q + degree), source.rank(q));
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "component at degree {q} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Self::build(source, target, degree, |q, r, c| {
            comps.get(&q).cloned().unwrap_or_else(|| IntMatrix::zeros(r, c))
        })
    }

    /// `f(q, rows, cols)` supplies the component at source degree `q`.
    pub fn build(
        source: Complex,
        target: Complex,
        degree: i64,
        mut f: impl FnMut(i64, usize, usize) -> IntMatrix,
    ) -> Result<Self> {
        let mut comps = Vec::with_capacity(source.ranks().len());
        for q in source.support() {
            let (r, c) = (target.rank(q + degree), source.rank(q));
            let m = f(q, r, c);
            if m.shape() != (r, c) {
                return Err(Error::Shape(format!(
                    "component at degree {q} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
            comps.push(m);
        }
        Ok(Proto { source, target, degree, comps })
    }

    pub fn zero(source: &Complex, target: &Complex, degree: i64) -> Self {
        Self::build(source.clone(), target.clone(), degree, |_, r, c| IntMatrix::zeros(r, c)).unwrap()
    }

    pub fn identity(a: &Complex) -> Self {
        Self::build(a.clone(), a.clone(), 0, |_, r, _| IntMatrix::identity(r)).unwrap()
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn comp(&self, q: i64) -> IntMatrix {
        let i = q - self.source.lo();
        if i >= 0 && (i as usize) < self.comps.len() {
            self.comps[i as usize].clone()
        } else {
            IntMatrix::zeros(self.target.rank(q + self.degree), self.source.rank(q))
        }
    }

    pub fn comp_ref(&self, q: i64) -> Option<&IntMatrix> {
        let i = q - self.source.lo();
        (i >= 0 && (i as usize) < self.comps.len()).then(|| &self.comps[i as usize])
    }

    pub fn comps(&self) -> BTreeMap<i64, IntMatrix> {
        self.source.support().zip(self.comps.iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(IntMatrix::is_zero)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Shape(format!(
                "protomorphisms of degree {} and {} between different complexes",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&IntMatrix, &IntMatrix) -> IntMatrix) -> Self {
        Proto {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.map_comps(|_, m| m.scale(c))
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.map_comps(|_, m| m.scale_i64(c))
    }

    /// Same source, target and degree with each component transformed.
    pub fn map_comps(&self, mut f: impl FnMut(i64, &IntMatrix) -> IntMatrix) -> Self {
        Proto {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            comps: self.source.support().zip(&self.comps).map(|(q, m)| f(q, m)).collect(),
        }
    }

    /// `g ∘ f` with `(g∘f)_q = g_{q + deg f} f_q`.
    pub fn compose(g: &Proto, f: &Proto) -> Result<Proto> {
        if f.target != g.source {
            return Err(Error::NotComposable(format!(
                "target of the inner map {:?} differs from source of the outer map {:?}",
                f.target, g.source
            )));
        }
        Proto::build(f.source.clone(), g.target.clone(), f.degree + g.degree, |q, _, _| {
            &g.comp(q + f.degree) * &f.comp(q)
        })
    }

    /// The hom-complex differential `(df)_q = d f_q - (-1)^n f_{q-1} d`.
    pub fn differential(&self) -> Proto {
        let n = self.degree;
        let s = -sign(n) * signs::factor(SignSite::HomDifferential);
        Proto::build(self.source.clone(), self.target.clone(), n - 1, |q, _, _| {
            let left = &self.target.d(q + n) * &self.comp(q);
            let right = &self.comp(q - 1) * &self.source.d(q);
            &left + &right.scale_i64(s)
        })
        .expect("differential has consistent shapes")
    }

    pub fn is_cycle(&self) -> bool {
        self.differential().is_zero()
    }

    /// A degree-0 cycle.
    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.is_cycle()
    }

    pub fn require_chain_map(&self, what: &str) -> Result<()> {
        if self.degree != 0 {
            return Err(Error::NotAChainMap(format!("{what} has degree {}", self.degree)));
        }
        let d = self.differential();
        if let Some(q) = self.source.support().find(|&q| !d.comp(q).is_zero()) {
            return Err(Error::NotAChainMap(format!("{what} fails to commute with d at degree {q}")));
        }
        Ok(())
    }

    /// `S^k f : S^k A -> S^k B` with unchanged components.
    pub fn suspend(&self, k: i64) -> Proto {
        self.reindex(self.source.suspend(k), k, self.target.suspend(k), self.degree)
    }

    /// Reinterprets the matrices over new complexes: the component at new
    /// source degree `q` is the old component at `q - shift`.
    pub fn reindex(&self, source: Complex, shift: i64, target: Complex, degree: i64) -> Proto {
        Proto::build(source, target, degree, |q, _, _| self.comp(q - shift))
            .expect("reindexing preserves shapes")
    }

    /// For `self : S A -> B` of degree `k`, the same matrices as `A -> B` of
    /// degree `k + 1`.
    pub fn desuspend_source(&self, a: &Complex) -> Proto {
        self.reindex(a.clone(), -1, self.target.clone(), self.degree + 1)
    }

    /// For `self : A -> B` of degree `k`, the same matrices as `S A -> B` of
    /// degree `k - 1`.
    pub fn suspend_source(&self) -> Proto {
        self.reindex(self.source.suspend(1), 1, self.target.clone(), self.degree - 1)
    }

    /// Flattens into the basis of `[A, B]_n`: ascending source degree, each
    /// component row-major.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let mut v = Vec::new();
        for block in hom_layout(&self.source, &self.target, self.degree) {
            v.extend(self.comp(block.q).into_entries());
        }
        v
    }

    pub fn from_vector(source: &Complex, target: &Complex, degree: i64, v: &[BigInt]) -> Result<Proto> {
        let layout = hom_layout(source, target, degree);
        let len: usize = layout.iter().map(|b| b.rows * b.cols).sum();
        if v.len() != len {
            return Err(Error::Dimension(format!(
                "vector of length {} for a hom group of rank {len}",
                v.len()
            )));
        }
        let mut comps = BTreeMap::new();
        for b in layout {
            let data = v[b.offset..b.offset + b.rows * b.cols].to_vec();
            comps.insert(b.q, IntMatrix::from_vec(b.rows, b.cols, data)?);
        }
        Proto::new(source.clone(), target.clone(), degree, comps)
    }

    /// Integer combination `Σ c_i p_i`; all terms share one shape.
    pub fn combination(terms: &[Proto], coeffs: &[BigInt], zero: &Proto) -> Proto {
        let mut acc = zero.clone();
        for (p, c) in terms.iter().zip(coeffs) {
            if c.sign() != num_bigint::Sign::NoSign {
                acc = &acc + &p.scale(c);
            }
        }
        acc
    }
}

impl Add for &Proto {
    type Output = Proto;
    fn add(self, rhs: &Proto) -> Proto {
        self.checked_add(rhs).expect("adding protomorphisms of different shape")
    }
}

impl Sub for &Proto {
    type Output = Proto;
    fn sub(self, rhs: &Proto) -> Proto {
        self.checked_sub(rhs).expect("subtracting protomorphisms of different shape")
    }
}

impl Neg for &Proto {
    type Output = Proto;
    fn neg(self) -> Proto {
        self.scale_i64(-1)
    }
}

impl std::fmt::Debug for Proto {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Proto(deg {}; ", self.degree)?;
        for (q, m) in self.comps() {
            if m.rows() > 0 && m.cols() > 0 {
                write!(f, "{q}: {m} ")?;
            }
        }
        write!(f, ")")
    }
}
