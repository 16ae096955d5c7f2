use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bilinear::{bilinear_map, unit};
use super::category::{basis, FiniteDGCategory};
use super::module::{DGModule, ProtonatTransform, Variance};
use crate::complexes::{Complex, Proto};
use crate::error::{Error, Result};
use crate::zlinalg::{cokernel, kernel_basis, sign, solve, solve_matrix, IntMatrix};

/// A free cell `D ⊗ C(-, B)` attached along an element `m ∈ M(B)_k`.
/// Cycles get a sphere `D = K(k)`, other elements a disk
/// `D = (ℤ --1--> ℤ)` in degrees `k, k-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub object: usize,
    pub degree: i64,
    pub element: Vec<BigInt>,
    pub disk: bool,
}

impl Cell {
    pub fn complex(&self) -> Complex {
        if self.disk {
            Complex::new(self.degree - 1, vec![1, 1], [(self.degree, IntMatrix::identity(1))].into()).expect("disk")
        } else {
            Complex::point(self.degree)
        }
    }
}

/// `P1 --φ--> P0 --γ--> M -> 0` with `P0`, `P1` sums of cells.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub module: DGModule,
    pub generators: Vec<Cell>,
    pub relations: Vec<Cell>,
    pub free: DGModule,
    pub syzygies: DGModule,
    pub gamma: ProtonatTransform,
    pub phi: ProtonatTransform,
}

fn cells_module(cat: &Arc<FiniteDGCategory>, cells: &[Cell]) -> Result<DGModule> {
    let mut out = DGModule::zero(cat, Variance::Right);
    for (i, c) in cells.iter().enumerate() {
        let m = DGModule::tensor_complex(&c.complex(), &DGModule::representable(cat, c.object))?;
        out = if i == 0 { m } else { DGModule::direct_sum(&out, &m)? };
    }
    Ok(out)
}

/// The map out of a sum of cells sending `δ ⊗ c` to `e · c`, where `e` is
/// the attaching element on the top of the cell and its boundary below.
fn cells_map(cat: &Arc<FiniteDGCategory>, source: &DGModule, target: &DGModule, cells: &[Cell]) -> Result<ProtonatTransform> {
    let mut components = Vec::with_capacity(cat.len());
    for x in 0..cat.len() {
        let mut parts = Vec::with_capacity(cells.len());
        for c in cells {
            let d = c.complex();
            let boundary = target.value(c.object).d(c.degree).mul_vec(&c.element);
            let hom = cat.hom(x, c.object);
            parts.push(bilinear_map(&d, hom, target.value(x), |p, _, q, j| {
                let e = if p == c.degree { &c.element } else { &boundary };
                let s = BigInt::from(sign(p * q));
                target.act(x, c.object, q, &unit(hom.rank(q), j), p, e).into_iter().map(|z| z * &s).collect()
            })?);
        }
        let component = Proto::build(source.value(x).clone(), target.value(x).clone(), 0, |n, rows, cols| {
            if parts.is_empty() {
                return IntMatrix::zeros(rows, cols);
            }
            let blocks: Vec<IntMatrix> = parts.iter().map(|p| p.comp(n)).collect();
            IntMatrix::hstack(&blocks.iter().collect::<Vec<_>>())
        })?;
        components.push(component);
    }
    Ok(ProtonatTransform { degree: 0, components })
}

/// Whether `v` lies in the column lattice of `m`.
fn in_lattice(m: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    if m.cols() == 0 {
        return Ok(false);
    }
    Ok(solve(m, v)?.is_some())
}

/// Attaches cells greedily until every candidate element lies in the
/// image of the cell map into `target`.
fn attach_cells(
    cat: &Arc<FiniteDGCategory>,
    target: &DGModule,
    candidates: &[(usize, i64, Vec<BigInt>)],
) -> Result<(Vec<Cell>, DGModule, ProtonatTransform)> {
    let mut cells: Vec<Cell> = Vec::new();
    let mut source = cells_module(cat, &cells)?;
    let mut map = cells_map(cat, &source, target, &cells)?;
    for (x, n, v) in candidates {
        if in_lattice(&map.components[*x].comp(*n), v)? {
            continue;
        }
        let disk = target.value(*x).d(*n).mul_vec(v).iter().any(|z| !z.is_zero());
        cells.push(Cell { object: *x, degree: *n, element: v.clone(), disk });
        source = cells_module(cat, &cells)?;
        map = cells_map(cat, &source, target, &cells)?;
    }
    // drop cells covered by the later ones
    for i in (0..cells.len()).rev() {
        let mut fewer = cells.clone();
        fewer.remove(i);
        let s = cells_module(cat, &fewer)?;
        let f = cells_map(cat, &s, target, &fewer)?;
        let mut covered = true;
        for (x, n, v) in candidates {
            if !in_lattice(&f.components[*x].comp(*n), v)? {
                covered = false;
                break;
            }
        }
        if covered {
            cells = fewer;
            source = s;
            map = f;
        }
    }
    Ok((cells, source, map))
}

fn value_degrees(m: &DGModule) -> BTreeSet<i64> {
    m.values().iter().filter(|c| !c.is_zero()).flat_map(|c| c.support()).collect()
}

/// Presents a right module as the cokernel of a map between sums of
/// cells on representables.
pub fn module_presentation(m: &DGModule) -> Result<ModulePresentation> {
    if m.variance() != Variance::Right {
        return Err(Error::InvalidModule("presentations are built for right modules".into()));
    }
    let cat = m.base().clone();
    let mut generators = Vec::new();
    for x in 0..cat.len() {
        for (n, v) in basis(m.value(x)) {
            generators.push((x, n, v));
        }
    }
    let (gen_cells, free, gamma) = attach_cells(&cat, m, &generators)?;
    let mut kernel = Vec::new();
    for x in 0..cat.len() {
        for n in value_degrees(&free) {
            let k = kernel_basis(&gamma.components[x].comp(n));
            for v in k.columns() {
                kernel.push((x, n, v));
            }
        }
    }
    let (rel_cells, syzygies, phi) = attach_cells(&cat, &free, &kernel)?;
    Ok(ModulePresentation { module: m.clone(), generators: gen_cells, relations: rel_cells, free, syzygies, gamma, phi })
}

impl ModulePresentation {
    /// `γ` and `φ` are natural chain maps, `γ ∘ φ = 0`, `γ` is onto and
    /// `im φ = ker γ` in every degree of every value.
    pub fn verify(&self) -> Result<bool> {
        let (gamma, phi) = (&self.gamma, &self.phi);
        if !gamma.is_cycle() || !phi.is_cycle() {
            return Ok(false);
        }
        if !gamma.is_protonatural(&self.free, &self.module) || !phi.is_protonatural(&self.syzygies, &self.free) {
            return Ok(false);
        }
        let composite = ProtonatTransform::compose(gamma, phi)?;
        if composite.components.iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
        let degrees: BTreeSet<i64> = value_degrees(&self.module).union(&value_degrees(&self.free)).copied().collect();
        for x in 0..self.module.base().len() {
            for &n in &degrees {
                let g = gamma.components[x].comp(n);
                if !cokernel(&g).group.is_trivial() {
                    return Ok(false);
                }
                let k = kernel_basis(&g);
                if k.cols() == 0 {
                    continue;
                }
                let p = phi.components[x].comp(n);
                if p.cols() == 0 || solve_matrix(&p, &k)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The relation columns `φ` evaluated on the cell tops at their objects.
    pub fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relations.iter().map(|c| c.element.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::category::fixture_categories;
    use crate::zlinalg::int;

    #[test]
    fn representable_needs_one_cell() {
        for (name, cat) in fixture_categories() {
            let cat = Arc::new(cat);
            for b in 0..cat.len() {
                let pres = module_presentation(&DGModule::representable(&cat, b)).unwrap();
                assert_eq!(pres.generators.len(), 1, "{name}");
                assert!(pres.relations.is_empty(), "{name}");
                assert!(pres.verify().unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn torsion_value_has_relation_two() {
        let m2 = Complex::new(0, vec![1, 1], [(1, IntMatrix::from_rows(&[&[2]]))].into()).unwrap();
        let pres = module_presentation(&DGModule::over_unit(Variance::Right, m2)).unwrap();
        assert!(pres.verify().unwrap());
        assert_eq!(pres.generators.len(), 2);
        assert!(pres.generators[1].disk);
        let rel = pres.relation_matrix();
        assert_eq!(rel.len(), 1);
        assert!(rel[0].iter().any(|z| z.magnitude() == int(2).magnitude()));
    }

    #[test]
    fn sums_and_suspensions() {
        for (name, cat) in fixture_categories() {
            let cat = Arc::new(cat);
            let last = cat.len() - 1;
            let m = DGModule::direct_sum(
                &DGModule::representable(&cat, 0).suspend(1),
                &DGModule::representable(&cat, last),
            )
            .unwrap();
            let pres = module_presentation(&m).unwrap();
            assert!(pres.verify().unwrap(), "{name}");
        }
    }

    #[test]
    fn zero_module() {
        let cat = Arc::new(crate::dgcat::category::graded_fixture());
        let pres = module_presentation(&DGModule::zero(&cat, Variance::Right)).unwrap();
        assert!(pres.generators.is_empty() && pres.relations.is_empty());
        assert!(pres.verify().unwrap());
    }
}
