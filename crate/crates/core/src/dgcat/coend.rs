use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bilinear::{tensor_vector, unit};
use super::category::basis;
use super::module::{transformation_basis, DGModule, ProtonatTransform, Variance};
use crate::complexes::{hom_complex, hom_rank, hom_support, Complex, Proto};
use crate::error::{Error, Result};
use crate::monoidal::{tensor, tensor_rank};
use crate::zlinalg::{cokernel, element_equal, is_unimodular, solve, solve_matrix, Cokernel, FPAbGroup, IntMatrix};

/// `M ⊗_C N`: the quotient of `Σ_U M(U) ⊗ N(U)` by
/// `M(f) y ⊗ x - (-1)^{|f||y|} y ⊗ N(f) x`, degree by degree.
#[derive(Clone, Debug)]
pub struct Coend {
    /// `Σ_U M(U) ⊗ N(U)` with objects in order.
    pub sum: Complex,
    pub parts: Vec<Complex>,
    pub relations: BTreeMap<i64, IntMatrix>,
    pub groups: BTreeMap<i64, Cokernel>,
    /// Induced differential in generator coordinates of the groups.
    pub differential: BTreeMap<i64, IntMatrix>,
}

pub fn coend_tensor(m: &DGModule, n: &DGModule) -> Result<Coend> {
    if m.variance() != Variance::Right || n.variance() != Variance::Left {
        return Err(Error::InvalidModule("coend needs a right and a left module".into()));
    }
    if m.base() != n.base() {
        return Err(Error::InvalidModule("modules over different categories".into()));
    }
    let cat = m.base().clone();
    let k = cat.len();
    let parts = (0..k).map(|u| tensor(m.value(u), n.value(u))).collect::<Result<Vec<_>>>()?;
    let sum = parts.iter().fold(Complex::zero(), |acc, p| Complex::direct_sum(&acc, p));
    let offset = |u: usize, deg: i64| parts[..u].iter().map(|p| p.rank(deg)).sum::<usize>();
    let embed = |u: usize, deg: i64, v: Vec<BigInt>, into: &mut Vec<BigInt>, sign: i64| {
        let o = offset(u, deg);
        for (i, x) in v.into_iter().enumerate() {
            if sign > 0 {
                into[o + i] += x;
            } else {
                into[o + i] -= x;
            }
        }
    };
    let range = if sum.is_zero() { 0..=-1 } else { sum.lo() - 1..=sum.hi() + 1 };
    let mut relations = BTreeMap::new();
    for deg in range.clone() {
        let mut cols = Vec::new();
        for u in 0..k {
            for v in 0..k {
                // f : u -> v, y ∈ M(v), x ∈ N(u)
                for (p, f) in cat.hom_basis(u, v) {
                    for (q, y) in basis(m.value(v)) {
                        let r = deg - p - q;
                        for i in 0..n.value(u).rank(r) {
                            let x = unit(n.value(u).rank(r), i);
                            let mut col = vec![BigInt::zero(); sum.rank(deg)];
                            let fy = m.act(u, v, p, &f, q, &y);
                            embed(u, deg, tensor_vector(m.value(u), n.value(u), p + q, &fy, r, &x), &mut col, 1);
                            let fx = n.act(u, v, p, &f, r, &x);
                            let s = if (p * q) % 2 == 0 { -1 } else { 1 };
                            embed(v, deg, tensor_vector(m.value(v), n.value(v), q, &y, p + r, &fx), &mut col, s);
                            if col.iter().any(|c| !c.is_zero()) {
                                cols.push(col);
                            }
                        }
                    }
                }
            }
        }
        relations.insert(deg, IntMatrix::from_columns(sum.rank(deg), &cols));
    }
    let groups: BTreeMap<i64, Cokernel> = range.clone().map(|deg| (deg, cokernel(&relations[&deg]))).collect();
    let mut differential = BTreeMap::new();
    for deg in range.clone() {
        if let Some(below) = groups.get(&(deg - 1)) {
            let d = &(&below.projection * &sum.d(deg)) * &groups[&deg].section;
            differential.insert(deg, d);
        }
    }
    Ok(Coend { sum, parts, relations, groups, differential })
}

impl Coend {
    pub fn group(&self, deg: i64) -> FPAbGroup {
        self.groups.get(&deg).map_or_else(FPAbGroup::trivial, |c| c.group.clone())
    }

    /// The nontrivial groups by degree.
    pub fn graded_groups(&self) -> BTreeMap<i64, FPAbGroup> {
        self.groups.iter().filter(|(_, c)| !c.group.is_trivial()).map(|(&n, c)| (n, c.group.clone())).collect()
    }

    /// Class of an element of `M(u) ⊗ N(u)` in degree `deg`.
    pub fn class_of(&self, u: usize, deg: i64, v: &[BigInt]) -> Vec<BigInt> {
        self.project(deg, &self.embed(u, deg, v))
    }

    /// An element of `M(u) ⊗ N(u)` as an element of the sum.
    pub fn embed(&self, u: usize, deg: i64, v: &[BigInt]) -> Vec<BigInt> {
        let o: usize = self.parts[..u].iter().map(|p| p.rank(deg)).sum();
        let mut full = vec![BigInt::zero(); self.sum.rank(deg)];
        for (i, x) in v.iter().enumerate() {
            full[o + i] = x.clone();
        }
        full
    }

    /// Whether an element of the sum in degree `deg` is a cycle modulo
    /// the relations.
    pub fn is_cycle_class(&self, deg: i64, full: &[BigInt]) -> Result<bool> {
        let boundary = self.sum.d(deg).mul_vec(full);
        if boundary.is_empty() {
            return Ok(true);
        }
        let class = self.project(deg - 1, &boundary);
        element_equal(&self.group(deg - 1), &class, &vec![BigInt::zero(); class.len()])
    }

    pub fn project(&self, deg: i64, v: &[BigInt]) -> Vec<BigInt> {
        match self.groups.get(&deg) {
            Some(c) => c.projection.mul_vec(v),
            None => Vec::new(),
        }
    }

    /// The relations are closed under the differential of the sum.
    pub fn relations_form_subcomplex(&self) -> Result<bool> {
        for (&deg, r) in &self.relations {
            let Some(below) = self.relations.get(&(deg - 1)) else { continue };
            let image = &self.sum.d(deg) * r;
            if image.cols() > 0 && solve_matrix(below, &image)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `d² = 0` on the presented groups.
    pub fn d_squared_vanishes(&self) -> Result<bool> {
        for (&deg, d) in &self.differential {
            let Some(below) = self.differential.get(&(deg - 1)) else { continue };
            let dd = below * d;
            let g = self.group(deg - 2);
            let zero = vec![BigInt::zero(); dd.rows()];
            for col in dd.columns() {
                if !element_equal(&g, &col, &zero)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The coend as a complex of free groups.
    pub fn to_free_complex(&self) -> Result<Complex> {
        if let Some((&degree, _)) = self.groups.iter().find(|(_, c)| !c.group.torsion.is_empty()) {
            return Err(Error::TorsionQuotient { degree });
        }
        let Some((&lo, _)) = self.groups.iter().next() else { return Ok(Complex::zero()) };
        let ranks = self.groups.values().map(|c| c.group.free_rank).collect();
        Complex::new(lo, ranks, self.differential.clone())
    }
}

/// `colim(M, F)` computed as the coend `M ⊗_C F`, with its cocone.
#[derive(Clone, Debug)]
pub struct WeightedColimit {
    pub weight: DGModule,
    pub diagram: DGModule,
    pub coend: Coend,
    pub object: Complex,
}

pub fn weighted_colimit(weight: &DGModule, diagram: &DGModule) -> Result<WeightedColimit> {
    let coend = coend_tensor(weight, diagram)?;
    let object = coend.to_free_complex()?;
    Ok(WeightedColimit { weight: weight.clone(), diagram: diagram.clone(), coend, object })
}

impl WeightedColimit {
    /// `γ_U : M(U) -> [F(U), colim]`, `y ↦ (x ↦ [y ⊗ x])`.
    pub fn cocone(&self, u: usize) -> Result<Proto> {
        let mu = self.weight.value(u);
        let fu = self.diagram.value(u);
        let target = hom_complex(fu, &self.object)?;
        Proto::build(mu.clone(), target, 0, |q, rows, cols| {
            let columns: Vec<Vec<BigInt>> = (0..cols)
                .map(|i| {
                    let y = unit(cols, i);
                    let h = Proto::build(fu.clone(), self.object.clone(), q, |r, hr, hc| {
                        let cs: Vec<Vec<BigInt>> = (0..hc)
                            .map(|j| {
                                let t = tensor_vector(mu, fu, q, &y, r, &unit(hc, j));
                                self.coend.class_of(u, q + r, &t)
                            })
                            .collect();
                        IntMatrix::from_columns(hr, &cs)
                    })
                    .expect("cocone component");
                    h.to_vector()
                })
                .collect();
            IntMatrix::from_columns(rows, &columns)
        })
    }

    /// `π(h)_U = h ∘ γ_U` is a bijection `[colim, X]_n -> Nat(M, [F-, X])_n`
    /// in each degree and commutes with the differentials.
    pub fn universal_into(&self, x: &Complex) -> Result<bool> {
        let g = DGModule::hom_into(&self.diagram, x)?;
        let k = self.weight.base().len();
        let cocones = (0..k).map(|u| self.cocone(u)).collect::<Result<Vec<_>>>()?;
        let pi = |h: &Proto| -> Result<ProtonatTransform> {
            let components = (0..k)
                .map(|u| {
                    let target = g.value(u).clone();
                    let gamma = &cocones[u];
                    Proto::build(self.weight.value(u).clone(), target, h.degree(), |q, rows, cols| {
                        let columns: Vec<Vec<BigInt>> = (0..cols)
                            .map(|i| {
                                let gy = gamma.comp(q).column(i);
                                let gy = Proto::from_vector(self.diagram.value(u), &self.object, q, &gy).expect("fits");
                                Proto::compose(h, &gy).expect("composable").to_vector()
                            })
                            .collect();
                        IntMatrix::from_columns(rows, &columns)
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ProtonatTransform { degree: h.degree(), components })
        };
        let mut degrees: Vec<i64> = hom_support(&self.object, x).collect();
        for u in 0..k {
            degrees.extend(hom_support(self.weight.value(u), g.value(u)));
        }
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            let left = hom_rank(&self.object, x, n);
            let nat = transformation_basis(&self.weight, &g, n, false);
            if nat.len() != left {
                return Ok(false);
            }
            if left == 0 {
                continue;
            }
            let nat_m = IntMatrix::from_columns(
                nat[0].to_vector().len(),
                &nat.iter().map(ProtonatTransform::to_vector).collect::<Vec<_>>(),
            );
            let mut coords = Vec::new();
            for i in 0..left {
                let h = Proto::from_vector(&self.object, x, n, &unit(left, i))?;
                let ph = pi(&h)?;
                let Some(c) = solve(&nat_m, &ph.to_vector())? else { return Ok(false) };
                coords.push(c);
                let lhs = pi(&h.differential())?;
                if lhs != ph.differential() {
                    return Ok(false);
                }
            }
            if !is_unimodular(&IntMatrix::from_columns(left, &coords)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn verify(&self, probes: &[Complex]) -> Result<bool> {
        for x in probes {
            if !self.universal_into(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Total rank of `Σ_U M(U) ⊗ N(U)` in degree `n`.
pub fn coend_sum_rank(m: &DGModule, n: &DGModule, deg: i64) -> usize {
    (0..m.base().len()).map(|u| tensor_rank(m.value(u), n.value(u), deg)).sum()
}
