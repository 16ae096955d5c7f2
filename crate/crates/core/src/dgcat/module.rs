use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bilinear::{apply_bilinear, bilinear_map, sub_vec, tensor_vector, unit};
use super::category::{basis, unit_category, FiniteDGCategory};
use crate::complexes::{hom_complex, hom_rank, Complex, Proto};
use crate::error::{Error, Result};
use crate::monoidal::{tensor, tensor_layout};
use crate::zlinalg::{kernel_basis, sign, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    /// A DG-functor out of the opposite category: `f : U -> V` acts
    /// `M(V) -> M(U)`.
    Right,
    /// A DG-functor out of the category: `f : U -> V` acts `N(U) -> N(V)`.
    Left,
}

/// A DG-module with complex values. `actions[(u, v)]` is the chain map
/// `C(u, v) ⊗ M(src) -> M(tgt)`, `f ⊗ y ↦ M(f) y`.
#[derive(Clone)]
pub struct DGModule {
    base: Arc<FiniteDGCategory>,
    variance: Variance,
    values: Vec<Complex>,
    actions: BTreeMap<(usize, usize), Proto>,
}

type ActionFn<'a> = dyn FnMut(usize, usize, i64, &[BigInt], i64, &[BigInt]) -> Vec<BigInt> + 'a;

impl DGModule {
    /// Checks shapes only; the module laws are checked by [`DGModule::validate`].
    pub fn new(
        base: Arc<FiniteDGCategory>,
        variance: Variance,
        values: Vec<Complex>,
        actions: BTreeMap<(usize, usize), Proto>,
    ) -> Result<Self> {
        let k = base.len();
        if values.len() != k {
            return Err(Error::InvalidModule(format!("{} values for {k} objects", values.len())));
        }
        let mut full = BTreeMap::new();
        for u in 0..k {
            for v in 0..k {
                let (src, tgt) = ends(variance, u, v);
                let source = tensor(base.hom(u, v), &values[src])?;
                let target = &values[tgt];
                let map = match actions.get(&(u, v)) {
                    Some(m) if m.source() == &source && m.target() == target && m.degree() == 0 => m.clone(),
                    Some(_) => {
                        return Err(Error::InvalidModule(format!(
                            "action of C({}, {}) has the wrong shape",
                            base.name(u),
                            base.name(v)
                        )))
                    }
                    None if source.is_zero() || target.is_zero() => Proto::zero(&source, target, 0),
                    None => {
                        return Err(Error::InvalidModule(format!(
                            "missing action of C({}, {})",
                            base.name(u),
                            base.name(v)
                        )))
                    }
                };
                full.insert((u, v), map);
            }
        }
        Ok(DGModule { base, variance, values, actions: full })
    }

    /// Builds the action from `op(u, v, p, f, q, y)`, the value of `M(f) y`
    /// for basis elements `f ∈ C(u, v)_p` and `y ∈ M(src)_q`.
    pub fn from_action(
        base: Arc<FiniteDGCategory>,
        variance: Variance,
        values: Vec<Complex>,
        op: &mut ActionFn<'_>,
    ) -> Result<Self> {
        let k = base.len();
        let mut actions = BTreeMap::new();
        for u in 0..k {
            for v in 0..k {
                let (src, tgt) = ends(variance, u, v);
                let hom = base.hom(u, v);
                let value = &values[src];
                let map = bilinear_map(hom, value, &values[tgt], |p, i, q, j| {
                    op(u, v, p, &unit(hom.rank(p), i), q, &unit(value.rank(q), j))
                })?;
                actions.insert((u, v), map);
            }
        }
        Self::new(base, variance, values, actions)
    }

    pub fn base(&self) -> &Arc<FiniteDGCategory> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn value(&self, u: usize) -> &Complex {
        &self.values[u]
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn actions(&self) -> &BTreeMap<(usize, usize), Proto> {
        &self.actions
    }

    /// `(src, tgt)` of the action of `C(u, v)`.
    pub fn ends(&self, u: usize, v: usize) -> (usize, usize) {
        ends(self.variance, u, v)
    }

    /// `M(f) y` for `f ∈ C(u, v)_p` and `y ∈ M(src)_q`.
    pub fn act(&self, u: usize, v: usize, p: i64, f: &[BigInt], q: i64, y: &[BigInt]) -> Vec<BigInt> {
        let (src, _) = self.ends(u, v);
        apply_bilinear(&self.actions[&(u, v)], self.base.hom(u, v), &self.values[src], p, f, q, y)
    }

    /// `M(f)` as a protomorphism of degree `p`.
    pub fn action_map(&self, u: usize, v: usize, p: i64, f: &[BigInt]) -> Proto {
        let (src, tgt) = self.ends(u, v);
        let value = &self.values[src];
        Proto::build(value.clone(), self.values[tgt].clone(), p, |q, rows, cols| {
            let columns: Vec<Vec<BigInt>> = (0..cols).map(|j| self.act(u, v, p, f, q, &unit(cols, j))).collect();
            IntMatrix::from_columns(rows, &columns)
        })
        .expect("action shapes")
    }

    /// Chain-map actions, unit law and the composition law
    /// `M(g∘f) = (-1)^{|f||g|} M(f) M(g)` (right) or `N(g∘f) = N(g) N(f)` (left).
    pub fn validate(&self) -> Result<()> {
        let cat = &*self.base;
        let k = cat.len();
        let name = |a: usize| cat.name(a).to_string();
        for (&(u, v), m) in &self.actions {
            if !m.is_chain_map() {
                return Err(Error::InvalidModule(format!("action of C({}, {}) is not a chain map", name(u), name(v))));
            }
        }
        for u in 0..k {
            for (q, y) in basis(&self.values[u]) {
                if self.act(u, u, 0, cat.identity(u), q, &y) != y {
                    return Err(Error::InvalidModule(format!("identity of {} acts nontrivially", name(u))));
                }
            }
        }
        for u in 0..k {
            for v in 0..k {
                let fs = cat.hom_basis(u, v);
                if fs.is_empty() {
                    continue;
                }
                for w in 0..k {
                    let gs = cat.hom_basis(v, w);
                    let start = match self.variance {
                        Variance::Right => w,
                        Variance::Left => u,
                    };
                    for (q, y) in basis(&self.values[start]) {
                        for (p, f) in &fs {
                            for (r, g) in &gs {
                                let gf = cat.compose(u, v, w, *r, g, *p, f);
                                let whole = self.act(u, w, p + r, &gf, q, &y);
                                let steps = match self.variance {
                                    Variance::Right => {
                                        let gy = self.act(v, w, *r, g, q, &y);
                                        let s = BigInt::from(sign(p * r));
                                        self.act(u, v, *p, f, q + r, &gy).into_iter().map(|x| x * &s).collect()
                                    }
                                    Variance::Left => {
                                        let fy = self.act(u, v, *p, f, q, &y);
                                        self.act(v, w, *r, g, q + p, &fy)
                                    }
                                };
                                if whole != steps {
                                    return Err(Error::InvalidModule(format!(
                                        "composition law fails on C({}, {}) x C({}, {}) in degrees ({p}, {r})",
                                        name(u),
                                        name(v),
                                        name(v),
                                        name(w)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `C(-, k)` with `M(f) m = (-1)^{|f||m|} m ∘ f`.
    pub fn representable(base: &Arc<FiniteDGCategory>, k: usize) -> Self {
        let values = (0..base.len()).map(|u| base.hom(u, k).clone()).collect();
        let cat = base.clone();
        Self::from_action(base.clone(), Variance::Right, values, &mut |u, v, p, f, q, m| {
            let s = BigInt::from(sign(p * q));
            cat.compose(u, v, k, q, m, p, f).into_iter().map(|x| x * &s).collect()
        })
        .expect("representable module")
    }

    /// `C(k, -)` with `N(f) n = f ∘ n`.
    pub fn corepresentable(base: &Arc<FiniteDGCategory>, k: usize) -> Self {
        let values = (0..base.len()).map(|u| base.hom(k, u).clone()).collect();
        let cat = base.clone();
        Self::from_action(base.clone(), Variance::Left, values, &mut |u, v, p, f, q, n| cat.compose(k, u, v, p, f, q, n))
            .expect("corepresentable module")
    }

    /// `S^k M` with `(S^k M)(f) = (-1)^{k|f|} M(f)`.
    pub fn suspend(&self, k: i64) -> Self {
        let values = self.values.iter().map(|c| c.suspend(k)).collect();
        Self::from_action(self.base.clone(), self.variance, values, &mut |u, v, p, f, q, y| {
            let s = BigInt::from(sign(k * p));
            self.act(u, v, p, f, q - k, y).into_iter().map(|x| x * &s).collect()
        })
        .expect("suspended module")
    }

    pub fn direct_sum(a: &DGModule, b: &DGModule) -> Result<Self> {
        if a.variance != b.variance || a.base != b.base {
            return Err(Error::InvalidModule("summands over different bases".into()));
        }
        let values = a.values.iter().zip(&b.values).map(|(x, y)| Complex::direct_sum(x, y)).collect();
        Self::from_action(a.base.clone(), a.variance, values, &mut |u, v, p, f, q, y| {
            let (src, _) = a.ends(u, v);
            let split = a.values[src].rank(q);
            let mut out = a.act(u, v, p, f, q, &y[..split]);
            out.extend(b.act(u, v, p, f, q, &y[split..]));
            out
        })
    }

    /// `D ⊗ M` with `(D ⊗ M)(f)(δ ⊗ y) = (-1)^{|f||δ|} δ ⊗ M(f) y`.
    pub fn tensor_complex(d: &Complex, m: &DGModule) -> Result<Self> {
        let values = m.values.iter().map(|c| tensor(d, c)).collect::<Result<Vec<_>>>()?;
        Self::from_action(m.base.clone(), m.variance, values, &mut |u, v, p, f, q, y| {
            let (src, tgt) = m.ends(u, v);
            let mut out = vec![BigInt::zero(); tensor(d, &m.values[tgt]).map(|c| c.rank(p + q)).unwrap_or(0)];
            for block in tensor_layout(d, &m.values[src], q) {
                for i in 0..block.left {
                    for j in 0..block.right {
                        let c = &y[block.index(i, j)];
                        if c.is_zero() {
                            continue;
                        }
                        let fy = m.act(u, v, p, f, block.q, &unit(block.right, j));
                        let t = tensor_vector(d, &m.values[tgt], block.p, &unit(block.left, i), p + block.q, &fy);
                        let s = BigInt::from(sign(p * block.p)) * c;
                        for (o, x) in out.iter_mut().zip(t) {
                            *o += &s * x;
                        }
                    }
                }
            }
            out
        })
    }

    pub fn zero(base: &Arc<FiniteDGCategory>, variance: Variance) -> Self {
        let values = vec![Complex::zero(); base.len()];
        Self::from_action(base.clone(), variance, values, &mut |_, _, _, _, _, _| Vec::new()).expect("zero module")
    }

    /// A complex as a module over the one-object category `ℐ`.
    pub fn over_unit(variance: Variance, value: Complex) -> Self {
        let base = Arc::new(unit_category());
        Self::from_action(base, variance, vec![value], &mut |_, _, _, f, _, y| y.iter().map(|x| x * &f[0]).collect())
            .expect("module over the unit category")
    }

    /// The inclusion of a full subcategory of complexes: `F(f) x = f(x)`.
    pub fn inclusion(base: &Arc<FiniteDGCategory>, objects: &[Complex]) -> Result<Self> {
        Self::from_action(base.clone(), Variance::Left, objects.to_vec(), &mut |u, v, p, f, q, x| {
            let f = Proto::from_vector(&objects[u], &objects[v], p, f).expect("hom element");
            f.comp(q).mul_vec(x)
        })
    }

    /// `[F-, X]` for a left module `F`, with `G(f) h = (-1)^{|f||h|} h ∘ F(f)`.
    pub fn hom_into(f: &DGModule, x: &Complex) -> Result<Self> {
        if f.variance != Variance::Left {
            return Err(Error::InvalidModule("hom_into expects a left module".into()));
        }
        let values = f.values.iter().map(|c| hom_complex(c, x)).collect::<Result<Vec<_>>>()?;
        Self::from_action(f.base.clone(), Variance::Right, values, &mut |u, v, p, g, q, h| {
            let h = Proto::from_vector(&f.values[v], x, q, h).expect("hom element");
            let fg = f.action_map(u, v, p, g);
            let s = sign(p * q);
            Proto::compose(&h, &fg).expect("composable").scale_i64(s).to_vector()
        })
    }
}

fn ends(variance: Variance, u: usize, v: usize) -> (usize, usize) {
    match variance {
        Variance::Right => (v, u),
        Variance::Left => (u, v),
    }
}

impl std::fmt::Debug for DGModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DGModule({:?}, {:?})", self.variance, self.values)
    }
}

impl PartialEq for DGModule {
    fn eq(&self, other: &Self) -> bool {
        self.variance == other.variance
            && self.values == other.values
            && self.actions == other.actions
            && self.base == other.base
    }
}

/// A family `θ_U : M(U) -> N(U)` of protomorphisms of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtonatTransform {
    pub degree: i64,
    pub components: Vec<Proto>,
}

impl ProtonatTransform {
    pub fn identity(m: &DGModule) -> Self {
        ProtonatTransform { degree: 0, components: m.values.iter().map(Proto::identity).collect() }
    }

    pub fn compose(g: &ProtonatTransform, f: &ProtonatTransform) -> Result<Self> {
        let components =
            g.components.iter().zip(&f.components).map(|(g, f)| Proto::compose(g, f)).collect::<Result<_>>()?;
        Ok(ProtonatTransform { degree: g.degree + f.degree, components })
    }

    pub fn differential(&self) -> Self {
        ProtonatTransform { degree: self.degree - 1, components: self.components.iter().map(Proto::differential).collect() }
    }

    pub fn is_cycle(&self) -> bool {
        self.components.iter().all(Proto::is_cycle)
    }

    pub fn to_vector(&self) -> Vec<BigInt> {
        self.components.iter().flat_map(Proto::to_vector).collect()
    }

    /// `θ_tgt ∘ M(f) = (-1)^{pn} N(f) ∘ θ_src` on every basis element `f`
    /// of degree `p`; returns the first failing pair of objects.
    pub fn naturality_failure(&self, m: &DGModule, n: &DGModule) -> Option<(usize, usize)> {
        let cat = m.base();
        for u in 0..cat.len() {
            for v in 0..cat.len() {
                let (src, tgt) = m.ends(u, v);
                for (p, f) in cat.hom_basis(u, v) {
                    let lhs = Proto::compose(&self.components[tgt], &m.action_map(u, v, p, &f)).expect("shapes");
                    let rhs = Proto::compose(&n.action_map(u, v, p, &f), &self.components[src]).expect("shapes");
                    if lhs != rhs.scale_i64(sign(p * self.degree)) {
                        return Some((u, v));
                    }
                }
            }
        }
        None
    }

    pub fn is_protonatural(&self, m: &DGModule, n: &DGModule) -> bool {
        self.naturality_failure(m, n).is_none()
    }
}

/// Basis of the protonatural transformations `M -> N` of degree `n`
/// (restricted to cycles when `cycles` is set), as kernel vectors of the
/// naturality constraints.
pub fn transformation_basis(m: &DGModule, n: &DGModule, degree: i64, cycles: bool) -> Vec<ProtonatTransform> {
    let cat = m.base();
    let k = cat.len();
    let sizes: Vec<usize> = (0..k).map(|u| hom_rank(m.value(u), n.value(u), degree)).collect();
    let total: usize = sizes.iter().sum();
    let mut offsets = Vec::with_capacity(k);
    let mut acc = 0;
    for s in &sizes {
        offsets.push(acc);
        acc += s;
    }
    let mut actions = Vec::new();
    for u in 0..k {
        for v in 0..k {
            for (p, f) in cat.hom_basis(u, v) {
                actions.push((u, v, p, m.action_map(u, v, p, &f), n.action_map(u, v, p, &f)));
            }
        }
    }
    let component = |w: usize, vec: &[BigInt]| Proto::from_vector(m.value(w), n.value(w), degree, vec).expect("fits");
    let mut columns = Vec::with_capacity(total);
    for w in 0..k {
        for i in 0..sizes[w] {
            let theta = component(w, &unit(sizes[w], i));
            let zero_src = |x: usize| Proto::zero(m.value(x), n.value(x), degree);
            let mut col = Vec::new();
            for (u, v, p, mf, nf) in &actions {
                let (src, tgt) = m.ends(*u, *v);
                let t_tgt = if tgt == w { theta.clone() } else { zero_src(tgt) };
                let t_src = if src == w { theta.clone() } else { zero_src(src) };
                let lhs = Proto::compose(&t_tgt, mf).expect("shapes");
                let rhs = Proto::compose(nf, &t_src).expect("shapes").scale_i64(sign(p * degree));
                col.extend(sub_vec(&lhs.to_vector(), &rhs.to_vector()));
            }
            if cycles {
                for x in 0..k {
                    let t = if x == w { theta.clone() } else { zero_src(x) };
                    col.extend(t.differential().to_vector());
                }
            }
            columns.push(col);
        }
    }
    let rows = columns.first().map_or(0, Vec::len);
    let kernel = if total == 0 {
        IntMatrix::zeros(0, 0)
    } else if rows == 0 {
        IntMatrix::identity(total)
    } else {
        kernel_basis(&IntMatrix::from_columns(rows, &columns))
    };
    kernel
        .columns()
        .into_iter()
        .map(|v| ProtonatTransform {
            degree,
            components: (0..k).map(|w| component(w, &v[offsets[w]..offsets[w] + sizes[w]])).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::l_z;
    use crate::dgcat::category::{dgab_fixture, doubling_category, fixture_categories, graded_fixture};

    #[test]
    fn representables_are_modules() {
        for (name, cat) in fixture_categories() {
            let cat = Arc::new(cat);
            for k in 0..cat.len() {
                DGModule::representable(&cat, k).validate().unwrap_or_else(|e| panic!("{name} right {k}: {e}"));
                DGModule::corepresentable(&cat, k).validate().unwrap_or_else(|e| panic!("{name} left {k}: {e}"));
            }
        }
    }

    #[test]
    fn suspensions_and_sums() {
        let cat = Arc::new(dgab_fixture());
        let m = DGModule::representable(&cat, 1);
        for k in [-1, 1, 2] {
            m.suspend(k).validate().unwrap();
            DGModule::corepresentable(&cat, 0).suspend(k).validate().unwrap();
        }
        let sum = DGModule::direct_sum(&m, &m.suspend(1)).unwrap();
        sum.validate().unwrap();
        assert_eq!(sum.value(1).total_rank(), 2 * m.value(1).total_rank());
    }

    #[test]
    fn tensor_with_complex() {
        let cat = Arc::new(dgab_fixture());
        let m = DGModule::representable(&cat, 1);
        DGModule::tensor_complex(&l_z(), &m).unwrap().validate().unwrap();
        DGModule::tensor_complex(&l_z().suspend(3), &DGModule::corepresentable(&cat, 1)).unwrap().validate().unwrap();
    }

    #[test]
    fn inclusion_and_hom_modules() {
        let cat = Arc::new(dgab_fixture());
        let f = DGModule::inclusion(&cat, &[Complex::point(0), l_z()]).unwrap();
        f.validate().unwrap();
        DGModule::hom_into(&f, &l_z()).unwrap().validate().unwrap();
    }

    #[test]
    fn doubling_modules() {
        let cat = Arc::new(doubling_category());
        let m = DGModule::from_action(cat.clone(), Variance::Right, vec![Complex::point(0)], &mut |_, _, _, f, _, y| {
            vec![(&f[0] + &f[1] * 2) * &y[0]]
        })
        .unwrap();
        m.validate().unwrap();
        let bad = DGModule::from_action(cat, Variance::Right, vec![Complex::point(0)], &mut |_, _, _, f, _, y| {
            vec![(&f[0] + &f[1] * 3) * &y[0]]
        })
        .unwrap();
        assert!(matches!(bad.validate(), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn natural_transformations() {
        let cat = Arc::new(graded_fixture());
        let m = DGModule::representable(&cat, 0);
        let id = ProtonatTransform::identity(&m);
        assert!(id.is_protonatural(&m, &m));
        // Yoneda: transformations C(-, 0) -> C(-, 1) of degree n match C(0, 1)_n
        let n = DGModule::representable(&cat, 1);
        for d in -1..=1 {
            assert_eq!(transformation_basis(&m, &n, d, true).len(), cat.hom(0, 1).rank(d));
        }
    }
}
