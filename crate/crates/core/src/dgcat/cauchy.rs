use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bilinear::{apply_bilinear, bilinear_map, tensor_vector, unit};
use super::category::{basis, FiniteDGCategory};
use super::coend::coend_tensor;
use super::module::{DGModule, ProtonatTransform, Variance};
use crate::complexes::Proto;
use crate::error::{Error, Result};
use crate::monoidal::tensor;
use crate::zlinalg::{sign, IntMatrix};

/// One elementary tensor `x ⊗ y` of the unit, with `x ∈ M(E)_m` and
/// `y ∈ N(E)_{-m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaTerm {
    pub object: usize,
    pub degree: i64,
    pub x: Vec<BigInt>,
    pub y: Vec<BigInt>,
}

/// A right module `M`, a left module `N`, a unit `η = Σ x_i ⊗ y_i` and a
/// counit `ε_{U,V} : N(U) ⊗ M(V) -> C(V, U)`.
#[derive(Clone, Debug)]
pub struct CauchyData {
    pub m: DGModule,
    pub n: DGModule,
    pub eta: Vec<EtaTerm>,
    pub eps: BTreeMap<(usize, usize), Proto>,
}

/// A basis element `u` of `M(X)_q` on which `Σ x_i · ε(y_i ⊗ u) ≠ u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeWitness {
    pub object: usize,
    pub degree: i64,
    pub index: usize,
    pub got: Vec<BigInt>,
    pub expected: Vec<BigInt>,
}

impl std::fmt::Display for SnakeWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "object {} degree {} basis {}: got [{}], expected [{}]",
            self.object,
            self.degree,
            self.index,
            show(&self.got),
            show(&self.expected)
        )
    }
}

impl CauchyData {
    /// Checks shapes; the structural laws are checked by
    /// [`CauchyData::check_structure`].
    pub fn new(
        m: DGModule,
        n: DGModule,
        eta: Vec<EtaTerm>,
        eps: BTreeMap<(usize, usize), Proto>,
    ) -> Result<Self> {
        let invalid = |s: String| Err(Error::CauchyDataInvalid(s));
        if m.variance() != Variance::Right || n.variance() != Variance::Left {
            return invalid("M must be a right module and N a left module".into());
        }
        if m.base() != n.base() {
            return invalid("M and N live over different categories".into());
        }
        let cat = m.base().clone();
        for (i, t) in eta.iter().enumerate() {
            if t.object >= cat.len() {
                return invalid(format!("eta term {i} names object {}", t.object));
            }
            if t.x.len() != m.value(t.object).rank(t.degree) || t.y.len() != n.value(t.object).rank(-t.degree) {
                return invalid(format!("eta term {i} has the wrong length"));
            }
        }
        for u in 0..cat.len() {
            for v in 0..cat.len() {
                let source = tensor(n.value(u), m.value(v))?;
                let target = cat.hom(v, u);
                match eps.get(&(u, v)) {
                    Some(e) if e.source() == &source && e.target() == target && e.degree() == 0 => {}
                    Some(_) => return invalid(format!("eps({u}, {v}) has the wrong shape")),
                    None if source.is_zero() || target.is_zero() => {}
                    None => return invalid(format!("eps({u}, {v}) is missing")),
                }
            }
        }
        let mut eps = eps;
        for u in 0..cat.len() {
            for v in 0..cat.len() {
                eps.entry((u, v))
                    .or_insert_with(|| Proto::zero(&tensor(n.value(u), m.value(v)).expect("shapes"), cat.hom(v, u), 0));
            }
        }
        Ok(CauchyData { m, n, eta, eps })
    }

    pub fn base(&self) -> &Arc<FiniteDGCategory> {
        self.m.base()
    }

    /// `ε(y ⊗ x)` for `y ∈ N(u)_p`, `x ∈ M(v)_q`.
    pub fn counit(&self, u: usize, v: usize, p: i64, y: &[BigInt], q: i64, x: &[BigInt]) -> Vec<BigInt> {
        apply_bilinear(&self.eps[&(u, v)], self.n.value(u), self.m.value(v), p, y, q, x)
    }

    /// `ε` is a family of chain maps, natural in both variables, and `η`
    /// is a cycle of the coend in degree 0.
    pub fn check_structure(&self) -> Result<()> {
        let invalid = |s: String| Err(Error::CauchyDataInvalid(s));
        let cat = self.base().clone();
        let k = cat.len();
        for ((u, v), e) in &self.eps {
            if !e.is_chain_map() {
                return invalid(format!("eps({u}, {v}) is not a chain map"));
            }
        }
        for u in 0..k {
            for v in 0..k {
                for (p, y) in basis(self.n.value(u)) {
                    for (q, x) in basis(self.m.value(v)) {
                        let c = self.counit(u, v, p, &y, q, &x);
                        for w in 0..k {
                            // N(g) y with g : u -> w
                            for (r, g) in cat.hom_basis(u, w) {
                                let lhs = self.counit(w, v, p + r, &self.n.act(u, w, r, &g, p, &y), q, &x);
                                let rhs = cat.compose(v, u, w, r, &g, p + q, &c);
                                if lhs != rhs {
                                    return invalid(format!("eps is not natural in N at ({u} -> {w}, {v})"));
                                }
                            }
                            // M(h) x with h : w -> v
                            for (r, h) in cat.hom_basis(w, v) {
                                let lhs = self.counit(u, w, p, &y, q + r, &self.m.act(w, v, r, &h, q, &x));
                                let s = BigInt::from(sign(r * q));
                                let rhs: Vec<BigInt> =
                                    cat.compose(w, v, u, p + q, &c, r, &h).into_iter().map(|z| z * &s).collect();
                                if lhs != rhs {
                                    return invalid(format!("eps is not natural in M at ({u}, {w} -> {v})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        let coend = coend_tensor(&self.m, &self.n)?;
        let mut total = vec![BigInt::zero(); coend.sum.rank(0)];
        for t in &self.eta {
            let (mv, nv) = (self.m.value(t.object), self.n.value(t.object));
            let v = tensor_vector(mv, nv, t.degree, &t.x, -t.degree, &t.y);
            for (a, b) in total.iter_mut().zip(coend.embed(t.object, 0, &v)) {
                *a += b;
            }
        }
        if !coend.is_cycle_class(0, &total)? {
            return invalid("eta is not a cycle of the coend".into());
        }
        Ok(())
    }

    /// `x · c = (-1)^{|x||c|} M(c) x` for `x ∈ M(e)_m`, `c ∈ C(v, e)_r`.
    fn right_act(&self, v: usize, e: usize, m: i64, x: &[BigInt], r: i64, c: &[BigInt]) -> Vec<BigInt> {
        let s = BigInt::from(sign(m * r));
        self.m.act(v, e, r, c, m, x).into_iter().map(|z| z * &s).collect()
    }

    /// `Σ_i x_i · ε(y_i ⊗ u)` for `u ∈ M(v)_q`.
    pub fn snake(&self, v: usize, q: i64, u: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.m.value(v).rank(q)];
        for t in &self.eta {
            let c = self.counit(t.object, v, -t.degree, &t.y, q, u);
            let term = self.right_act(v, t.object, t.degree, &t.x, q - t.degree, &c);
            for (a, b) in out.iter_mut().zip(term) {
                *a += b;
            }
        }
        out
    }
}

/// Outcome of [`verify_cauchy_data`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyReport {
    pub witness: Option<SnakeWitness>,
}

impl CauchyReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks the snake identity `Σ_i x_i · ε(y_i ⊗ u) = u` on every basis
/// element `u` of every value of `M`.
pub fn verify_cauchy_data(cd: &CauchyData) -> Result<CauchyReport> {
    cd.check_structure()?;
    for v in 0..cd.base().len() {
        for (q, u) in basis(cd.m.value(v)) {
            let got = cd.snake(v, q, &u);
            if got != u {
                let index = u.iter().position(|x| !x.is_zero()).unwrap_or(0);
                return Ok(CauchyReport {
                    witness: Some(SnakeWitness { object: v, degree: q, index, got, expected: u }),
                });
            }
        }
    }
    Ok(CauchyReport { witness: None })
}

/// Cauchy data for `⊕_i S^{k_i} C(-, E_i)` with dual `⊕_i S^{-k_i} C(E_i, -)`,
/// unit `Σ_i s^{k_i} 1 ⊗ s^{-k_i} 1` and counit
/// `s^{-k} n ⊗ s^k m ↦ (-1)^{k|n|} n ∘ m` on matching summands.
pub fn free_cauchy(cat: &Arc<FiniteDGCategory>, terms: &[(usize, i64)]) -> Result<CauchyData> {
    let k = cat.len();
    let mut m = DGModule::zero(cat, Variance::Right);
    let mut n = DGModule::zero(cat, Variance::Left);
    for (i, &(e, shift)) in terms.iter().enumerate() {
        let rep = DGModule::representable(cat, e).suspend(shift);
        let corep = DGModule::corepresentable(cat, e).suspend(-shift);
        if i == 0 {
            m = rep;
            n = corep;
        } else {
            m = DGModule::direct_sum(&m, &rep)?;
            n = DGModule::direct_sum(&n, &corep)?;
        }
    }
    // summand of M(v)_q (resp. N(u)_p) holding a basis index
    let locate_m = |v: usize, q: i64, idx: usize| -> (usize, usize) {
        let mut idx = idx;
        for (j, &(e, s)) in terms.iter().enumerate() {
            let r = cat.hom(v, e).rank(q - s);
            if idx < r {
                return (j, idx);
            }
            idx -= r;
        }
        unreachable!("basis index out of range")
    };
    let locate_n = |u: usize, p: i64, idx: usize| -> (usize, usize) {
        let mut idx = idx;
        for (j, &(e, s)) in terms.iter().enumerate() {
            let r = cat.hom(e, u).rank(p + s);
            if idx < r {
                return (j, idx);
            }
            idx -= r;
        }
        unreachable!("basis index out of range")
    };
    let mut eta = Vec::new();
    for (i, &(e, shift)) in terms.iter().enumerate() {
        let id = cat.identity(e);
        let mut x = vec![BigInt::zero(); m.value(e).rank(shift)];
        let ox: usize = terms[..i].iter().map(|&(f, s)| cat.hom(e, f).rank(shift - s)).sum();
        let mut y = vec![BigInt::zero(); n.value(e).rank(-shift)];
        let oy: usize = terms[..i].iter().map(|&(f, s)| cat.hom(f, e).rank(-shift + s)).sum();
        for (j, c) in id.iter().enumerate() {
            x[ox + j] = c.clone();
            y[oy + j] = c.clone();
        }
        eta.push(EtaTerm { object: e, degree: shift, x, y });
    }
    let mut eps = BTreeMap::new();
    for u in 0..k {
        for v in 0..k {
            let target = cat.hom(v, u);
            let map = bilinear_map(n.value(u), m.value(v), target, |p, i, q, j| {
                let (a, li) = locate_n(u, p, i);
                let (b, lj) = locate_m(v, q, j);
                if a != b {
                    return vec![BigInt::zero(); target.rank(p + q)];
                }
                let (e, s) = terms[a];
                let (dn, dm) = (p + s, q - s);
                let nv = unit(cat.hom(e, u).rank(dn), li);
                let mv = unit(cat.hom(v, e).rank(dm), lj);
                let z = BigInt::from(sign(s * dn));
                cat.compose(v, e, u, dn, &nv, dm, &mv).into_iter().map(|c| c * &z).collect()
            })?;
            eps.insert((u, v), map);
        }
    }
    CauchyData::new(m, n, eta, eps)
}

/// `M = C(-, K)`, `N = C(K, -)`, `η = 1_K ⊗ 1_K`, `ε` = composition.
pub fn representable_cauchy(cat: &Arc<FiniteDGCategory>, object: usize) -> CauchyData {
    free_cauchy(cat, &[(object, 0)]).expect("representable Cauchy data")
}

pub fn negate_counit(cd: &CauchyData) -> CauchyData {
    let mut out = cd.clone();
    for e in out.eps.values_mut() {
        *e = e.scale_i64(-1);
    }
    out
}

pub fn scale_unit(cd: &CauchyData, c: i64) -> CauchyData {
    let mut out = cd.clone();
    for t in &mut out.eta {
        for x in &mut t.x {
            *x *= c;
        }
    }
    out
}

pub fn drop_unit_term(cd: &CauchyData, i: usize) -> CauchyData {
    let mut out = cd.clone();
    out.eta.remove(i);
    out
}

/// Mutated data on which the snake identity must fail.
pub fn cauchy_mutations(cat: &Arc<FiniteDGCategory>) -> Vec<(String, CauchyData)> {
    let mut out = Vec::new();
    for k in 0..cat.len() {
        let rep = representable_cauchy(cat, k);
        if rep.m.values().iter().all(|c| c.is_zero()) {
            continue;
        }
        out.push((format!("negated counit at {}", cat.name(k)), negate_counit(&rep)));
        out.push((format!("doubled unit at {}", cat.name(k)), scale_unit(&rep, 2)));
        let two = free_cauchy(cat, &[(k, 0), (k, 1)]).expect("two-term data");
        out.push((format!("dropped unit term at {}", cat.name(k)), drop_unit_term(&two, 1)));
    }
    out
}

/// The retraction `M -> ⊕_i S^{m_i} C(-, E_i) -> M` built from Cauchy data
/// over a category with vanishing hom differentials.
#[derive(Clone, Debug)]
pub struct GRetraction {
    pub module: DGModule,
    /// `⊕_i S^{m_i} C(-, E_i)`.
    pub free: DGModule,
    /// `τ_i : M -> C(-, E_i)` of degree `-m_i`, `u ↦ ε(y_i ⊗ u)`.
    pub tau_parts: Vec<ProtonatTransform>,
    /// `x̂_i : C(-, E_i) -> M` of degree `m_i`, `c ↦ x_i · c`.
    pub xhat_parts: Vec<ProtonatTransform>,
    pub tau: ProtonatTransform,
    pub xhat: ProtonatTransform,
}

impl GRetraction {
    /// `x̂ ∘ τ = 1_M`.
    pub fn composite_is_identity(&self) -> Result<bool> {
        let composite = ProtonatTransform::compose(&self.xhat, &self.tau)?;
        Ok(composite == ProtonatTransform::identity(&self.module))
    }

    /// `Σ_i x̂_i ∘ τ_i = 1_M`, summed componentwise.
    pub fn parts_sum_to_identity(&self) -> Result<bool> {
        for (w, value) in self.module.values().iter().enumerate() {
            let mut total = Proto::zero(value, value, 0);
            for (t, x) in self.tau_parts.iter().zip(&self.xhat_parts) {
                total = &total + &Proto::compose(&x.components[w], &t.components[w])?;
            }
            if total != Proto::identity(value) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn g_retraction_from_cauchy(cd: &CauchyData) -> Result<GRetraction> {
    let cat = cd.base().clone();
    if !cat.is_graded() {
        return Err(Error::CauchyDataInvalid("the base category has a nonzero hom differential".into()));
    }
    if let Some(w) = verify_cauchy_data(cd)?.witness {
        return Err(Error::CauchyDataInvalid(format!("snake identity fails: {w}")));
    }
    let k = cat.len();
    let terms: Vec<(usize, i64)> = cd.eta.iter().map(|t| (t.object, t.degree)).collect();
    let mut free = DGModule::zero(&cat, Variance::Right);
    for (i, &(e, s)) in terms.iter().enumerate() {
        let rep = DGModule::representable(&cat, e).suspend(s);
        free = if i == 0 { rep } else { DGModule::direct_sum(&free, &rep)? };
    }
    let mut tau_parts = Vec::new();
    let mut xhat_parts = Vec::new();
    for t in &cd.eta {
        let e = t.object;
        let tau = (0..k)
            .map(|w| {
                Proto::build(cd.m.value(w).clone(), cat.hom(w, e).clone(), -t.degree, |q, rows, cols| {
                    let columns: Vec<Vec<BigInt>> =
                        (0..cols).map(|j| cd.counit(e, w, -t.degree, &t.y, q, &unit(cols, j))).collect();
                    IntMatrix::from_columns(rows, &columns)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let xhat = (0..k)
            .map(|w| {
                Proto::build(cat.hom(w, e).clone(), cd.m.value(w).clone(), t.degree, |r, rows, cols| {
                    let columns: Vec<Vec<BigInt>> =
                        (0..cols).map(|j| cd.right_act(w, e, t.degree, &t.x, r, &unit(cols, j))).collect();
                    IntMatrix::from_columns(rows, &columns)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let tau = ProtonatTransform { degree: -t.degree, components: tau };
        let xhat = ProtonatTransform { degree: t.degree, components: xhat };
        let rep = DGModule::representable(&cat, e);
        if let Some((u, v)) = tau.naturality_failure(&cd.m, &rep) {
            return Err(Error::CauchyDataInvalid(format!("tau is not protonatural at ({u}, {v})")));
        }
        if let Some((u, v)) = xhat.naturality_failure(&rep, &cd.m) {
            return Err(Error::CauchyDataInvalid(format!("xhat is not protonatural at ({u}, {v})")));
        }
        tau_parts.push(tau);
        xhat_parts.push(xhat);
    }
    let mut tau = Vec::with_capacity(k);
    let mut xhat = Vec::with_capacity(k);
    for w in 0..k {
        let (mw, pw) = (cd.m.value(w), free.value(w));
        tau.push(Proto::build(mw.clone(), pw.clone(), 0, |q, rows, cols| {
            let blocks: Vec<IntMatrix> = tau_parts.iter().map(|t| t.components[w].comp(q)).collect();
            stack(rows, cols, &blocks, true)
        })?);
        xhat.push(Proto::build(pw.clone(), mw.clone(), 0, |q, rows, cols| {
            let blocks: Vec<IntMatrix> =
                xhat_parts.iter().zip(&cd.eta).map(|(x, t)| x.components[w].comp(q - t.degree)).collect();
            stack(rows, cols, &blocks, false)
        })?);
    }
    let tau = ProtonatTransform { degree: 0, components: tau };
    let xhat = ProtonatTransform { degree: 0, components: xhat };
    if let Some((u, v)) = tau.naturality_failure(&cd.m, &free) {
        return Err(Error::CauchyDataInvalid(format!("tau is not protonatural at ({u}, {v})")));
    }
    if let Some((u, v)) = xhat.naturality_failure(&free, &cd.m) {
        return Err(Error::CauchyDataInvalid(format!("xhat is not protonatural at ({u}, {v})")));
    }
    Ok(GRetraction { module: cd.m.clone(), free, tau_parts, xhat_parts, tau, xhat })
}

fn stack(rows: usize, cols: usize, blocks: &[IntMatrix], vertical: bool) -> IntMatrix {
    if blocks.is_empty() {
        return IntMatrix::zeros(rows, cols);
    }
    let refs: Vec<&IntMatrix> = blocks.iter().collect();
    if vertical {
        IntMatrix::vstack(&refs)
    } else {
        IntMatrix::hstack(&refs)
    }
}
