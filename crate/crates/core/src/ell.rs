//! The additive category on the integers with `ℒ(m, m) = ℒ(m, m+1) = ℤ`,
//! and chain complexes as additive presheaves on it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complexes::{as_columns, chain_map_basis, l_z, Complex, Proto};
use crate::error::{Error, Result};
use crate::zlinalg::{kernel_basis, sign, solve, solve_matrix, IntMatrix};

/// An element of `ℒ(source, target)`, a multiple of the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllHom {
    pub source: i64,
    pub target: i64,
    pub coefficient: BigInt,
}

pub fn ell_hom_rank(m: i64, n: i64) -> usize {
    usize::from(n == m || n == m + 1)
}

impl EllHom {
    pub fn new(source: i64, target: i64, coefficient: BigInt) -> Result<Self> {
        if ell_hom_rank(source, target) == 0 && !coefficient.is_zero() {
            return Err(Error::Input(format!("ℒ({source}, {target}) = 0")));
        }
        Ok(EllHom { source, target, coefficient })
    }

    pub fn identity(m: i64) -> Self {
        EllHom { source: m, target: m, coefficient: 1.into() }
    }

    /// The generator of `ℒ(m, m+1)`.
    pub fn generator(m: i64) -> Self {
        EllHom { source: m, target: m + 1, coefficient: 1.into() }
    }
}

/// `g ∘ f`; two generator steps compose to zero.
pub fn ell_compose(g: &EllHom, f: &EllHom) -> Result<EllHom> {
    if f.target != g.source {
        return Err(Error::NotComposable(format!(
            "ℒ({}, {}) after ℒ({}, {})",
            g.source, g.target, f.source, f.target
        )));
    }
    let coefficient =
        if ell_hom_rank(f.source, g.target) == 0 { BigInt::zero() } else { &g.coefficient * &f.coefficient };
    Ok(EllHom { source: f.source, target: g.target, coefficient })
}

/// A presheaf `F` on `ℒ` with free values. `action(n)` is `F` of the
/// generator `n-1 -> n`, a map `F(n) -> F(n-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct EllModule {
    lo: i64,
    values: Vec<usize>,
    // action[i] acts out of F(lo + i + 1)
    action: Vec<IntMatrix>,
}

impl EllModule {
    /// Validating constructor; missing actions are zero.
    pub fn new(lo: i64, values: Vec<usize>, action: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let first = values.iter().position(|&r| r > 0);
        let Some(first) = first else {
            if let Some((n, m)) = action.iter().find(|(_, m)| m.rows() * m.cols() > 0) {
                return Err(Error::InvalidModule(format!("action at {n} on a zero module is {}x{}", m.rows(), m.cols())));
            }
            return Ok(EllModule { lo: 0, values: Vec::new(), action: Vec::new() });
        };
        let last = values.iter().rposition(|&r| r > 0).unwrap();
        let value = |n: i64| {
            let i = n - lo;
            if i >= 0 && (i as usize) < values.len() {
                values[i as usize]
            } else {
                0
            }
        };
        for (&n, m) in &action {
            if m.shape() != (value(n - 1), value(n)) {
                return Err(Error::InvalidModule(format!(
                    "action at {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    value(n - 1),
                    value(n)
                )));
            }
        }
        let new_lo = lo + first as i64;
        let values = values[first..=last].to_vec();
        let at = |n: i64| action.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(value(n - 1), value(n)));
        let action: Vec<IntMatrix> = (1..values.len()).map(|i| at(new_lo + i as i64)).collect();
        for i in 1..action.len() {
            if !(&action[i - 1] * &action[i]).is_zero() {
                let n = new_lo + i as i64 + 1;
                return Err(Error::InvalidModule(format!(
                    "generators {} -> {} -> {n} compose to a nonzero action",
                    n - 2,
                    n - 1
                )));
            }
        }
        Ok(EllModule { lo: new_lo, values, action })
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn value(&self, n: i64) -> usize {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.values.len() {
            self.values[i as usize]
        } else {
            0
        }
    }

    pub fn values(&self) -> BTreeMap<i64, usize> {
        (self.lo..=self.hi()).map(|n| (n, self.value(n))).collect()
    }

    pub fn action(&self, n: i64) -> IntMatrix {
        let i = n - self.lo - 1;
        if i >= 0 && (i as usize) < self.action.len() {
            self.action[i as usize].clone()
        } else {
            IntMatrix::zeros(self.value(n - 1), self.value(n))
        }
    }

    pub fn actions(&self) -> BTreeMap<i64, IntMatrix> {
        self.action.iter().enumerate().map(|(i, m)| (self.lo + i as i64 + 1, m.clone())).collect()
    }

    /// `F(h)` for `h ∈ ℒ(m, n)`, a map `F(n) -> F(m)`.
    pub fn apply(&self, h: &EllHom) -> IntMatrix {
        let (m, n) = (h.source, h.target);
        if n == m {
            IntMatrix::identity(self.value(m)).scale(&h.coefficient)
        } else if n == m + 1 {
            self.action(n).scale(&h.coefficient)
        } else {
            IntMatrix::zeros(self.value(m), self.value(n))
        }
    }
}

impl std::fmt::Debug for EllModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EllModule {{ values: {:?}, action: {:?} }}", self.values(), self.actions())
    }
}

/// `n ↦ A_n` with the generator acting by `d`.
pub fn encode(a: &Complex) -> EllModule {
    EllModule::new(a.lo(), a.ranks().to_vec(), a.diffs()).expect("d² = 0 makes a module")
}

pub fn decode(m: &EllModule) -> Complex {
    Complex::new(m.lo, m.values.clone(), m.actions()).expect("two-step actions vanish")
}

/// A natural transformation between presheaves on `ℒ`, one matrix per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub source: EllModule,
    pub target: EllModule,
    pub comps: BTreeMap<i64, IntMatrix>,
}

impl ModuleMorphism {
    pub fn comp(&self, n: i64) -> IntMatrix {
        self.comps.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(self.target.value(n), self.source.value(n)))
    }

    pub fn is_natural(&self) -> bool {
        (self.source.lo..=self.source.hi() + 1)
            .all(|n| &self.target.action(n) * &self.comp(n) == &self.comp(n - 1) * &self.source.action(n))
    }

    pub fn compose(g: &ModuleMorphism, f: &ModuleMorphism) -> Result<ModuleMorphism> {
        if f.target != g.source {
            return Err(Error::NotComposable("module morphisms".into()));
        }
        let comps = (f.source.lo..=f.source.hi()).map(|n| (n, &g.comp(n) * &f.comp(n))).collect();
        Ok(ModuleMorphism { source: f.source.clone(), target: g.target.clone(), comps })
    }
}

pub fn encode_map(f: &Proto) -> Result<ModuleMorphism> {
    f.require_chain_map("encoded map")?;
    Ok(ModuleMorphism { source: encode(f.source()), target: encode(f.target()), comps: f.comps() })
}

/// Basis of the natural transformations `F -> G`, flattened by ascending
/// object and row-major within each component.
pub fn module_morphism_basis(f: &EllModule, g: &EllModule) -> IntMatrix {
    let objects: Vec<i64> = if f.is_zero() { Vec::new() } else { (f.lo..=f.hi()).collect() };
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for &n in &objects {
        offset.insert(n, total);
        total += g.value(n) * f.value(n);
    }
    // one block of equations per generator n-1 -> n: G(a) θ_n - θ_{n-1} F(a)
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for n in f.lo..=f.hi() + 1 {
        let (ga, fa) = (g.action(n), f.action(n));
        for i in 0..g.value(n - 1) {
            for j in 0..f.value(n) {
                let mut row = vec![BigInt::zero(); total];
                if let Some(&o) = offset.get(&n) {
                    for k in 0..g.value(n) {
                        row[o + k * f.value(n) + j] += ga.get(i, k);
                    }
                }
                if let Some(&o) = offset.get(&(n - 1)) {
                    for k in 0..f.value(n - 1) {
                        row[o + i * f.value(n - 1) + k] -= fa.get(k, j);
                    }
                }
                rows.push(row);
            }
        }
    }
    let constraint = IntMatrix::from_fn(rows.len(), total, |i, j| rows[i][j].clone());
    kernel_basis(&constraint)
}

/// Chain maps `A -> B` and module morphisms `encode A -> encode B` span the
/// same lattice of component matrices.
pub fn hom_bijection_check(a: &Complex, b: &Complex) -> Result<bool> {
    let chain = as_columns(a, b, 0, &chain_map_basis(a, b));
    let natural = module_morphism_basis(&encode(a), &encode(b));
    if chain.shape() != natural.shape() {
        return Ok(false);
    }
    Ok(solve_matrix(&chain, &natural)?.is_some() && solve_matrix(&natural, &chain)?.is_some())
}

/// `Sⁿ Lℤ`, which represents `A ↦ A_n` on chain maps.
pub fn representing_object(n: i64) -> Complex {
    l_z().suspend(n)
}

/// The generator `S^{n-1}Lℤ -> SⁿLℤ`: top cell to bottom cell by `(-1)^n`.
pub fn representing_generator(n: i64) -> Proto {
    let source = representing_object(n - 1);
    let target = representing_object(n);
    Proto::new(source, target, 0, BTreeMap::from([(n - 1, IntMatrix::scalar(1, sign(n)))]))
        .expect("generator shapes")
}

/// Compares `ℒ(m, n)` with degree-0 chain maps `SᵐLℤ -> SⁿLℤ` by rank.
pub fn yoneda_rank_check(m: i64, n: i64) -> bool {
    chain_map_basis(&representing_object(m), &representing_object(n)).len() == ell_hom_rank(m, n)
}

/// Rebuilds the module `n ↦ Z_0[SⁿLℤ, A]` with the action of precomposition
/// by the generators, in the coordinates given by evaluation at the top cell.
pub fn yoneda_module(a: &Complex) -> Result<EllModule> {
    if a.is_zero() {
        return Ok(EllModule::new(0, Vec::new(), BTreeMap::new())?);
    }
    let evaluate = |h: &Proto, n: i64| h.comp(n).column(0);
    let mut values = Vec::new();
    let mut action = BTreeMap::new();
    for n in a.support() {
        let basis = chain_map_basis(&representing_object(n), a);
        values.push(basis.len());
        let ev = IntMatrix::from_columns(a.rank(n), &basis.iter().map(|h| evaluate(h, n)).collect::<Vec<_>>());
        if n == a.lo() {
            continue;
        }
        let generator = representing_generator(n);
        let mut cols = Vec::new();
        for k in 0..a.rank(n) {
            let mut unit = vec![BigInt::zero(); a.rank(n)];
            unit[k] = 1.into();
            let coords = solve(&ev, &unit)?
                .ok_or_else(|| Error::SearchFailed(format!("evaluation at degree {n} is not onto")))?;
            let zero = Proto::zero(&representing_object(n), a, 0);
            let h = Proto::combination(&basis, &coords, &zero);
            cols.push(evaluate(&Proto::compose(&h, &generator)?, n - 1));
        }
        action.insert(n, IntMatrix::from_columns(a.rank(n - 1), &cols));
    }
    EllModule::new(a.lo(), values, action)
}

/// Cochain indexing `A^n = A_{-n}`.
pub fn cochain_ranks(a: &Complex) -> BTreeMap<i64, usize> {
    a.rank_map().into_iter().map(|(n, r)| (-n, r)).collect()
}
