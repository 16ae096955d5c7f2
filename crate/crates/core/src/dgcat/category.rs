use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::bilinear::{apply_bilinear, bilinear_map, is_zero_vec, sub_vec, unit};
use crate::complexes::{hom_complex, l_z, Complex, Proto};
use crate::ell::ell_hom_rank;
use crate::error::{Error, Result};
use crate::monoidal::tensor;

/// A DG-category with finitely many objects and explicit composition tables.
///
/// `compose[(a, b, c)]` is a degree-0 map `C(b, c) ⊗ C(a, b) -> C(a, c)` on
/// the tensor basis; identities are vectors in `C(a, a)_0`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteDGCategory {
    objects: Vec<String>,
    homs: Vec<Vec<Complex>>,
    compose: BTreeMap<(usize, usize, usize), Proto>,
    identities: Vec<Vec<BigInt>>,
}

/// One failed axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FiniteDGCategory {
    /// Checks shapes only; the axioms are checked by [`validate_dg_category`].
    pub fn new(
        objects: Vec<String>,
        homs: Vec<Vec<Complex>>,
        compose: BTreeMap<(usize, usize, usize), Proto>,
        identities: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        let k = objects.len();
        if homs.len() != k || homs.iter().any(|row| row.len() != k) || identities.len() != k {
            return Err(Error::InvalidCategory(format!("expected {k}x{k} homs and {k} identities")));
        }
        for a in 0..k {
            if identities[a].len() != homs[a][a].rank(0) {
                return Err(Error::InvalidCategory(format!("identity of {} has the wrong length", objects[a])));
            }
        }
        let mut full = BTreeMap::new();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let source = tensor(&homs[b][c], &homs[a][b])?;
                    let target = &homs[a][c];
                    let map = match compose.get(&(a, b, c)) {
                        Some(m) => {
                            if m.source() != &source || m.target() != target || m.degree() != 0 {
                                return Err(Error::InvalidCategory(format!(
                                    "composition {}->{}->{} has the wrong shape",
                                    objects[a], objects[b], objects[c]
                                )));
                            }
                            m.clone()
                        }
                        None if source.is_zero() || target.is_zero() => Proto::zero(&source, target, 0),
                        None => {
                            return Err(Error::InvalidCategory(format!(
                                "missing composition {}->{}->{}",
                                objects[a], objects[b], objects[c]
                            )))
                        }
                    };
                    full.insert((a, b, c), map);
                }
            }
        }
        Ok(FiniteDGCategory { objects, homs, compose: full, identities })
    }

    /// Builds composition tables from `op(a, b, c, p, i, q, j)`, the composite
    /// of basis elements `e_i ∈ C(b, c)_p` and `e_j ∈ C(a, b)_q`.
    pub fn from_composition(
        objects: Vec<String>,
        homs: Vec<Vec<Complex>>,
        identities: Vec<Vec<BigInt>>,
        mut op: impl FnMut(usize, usize, usize, i64, usize, i64, usize) -> Vec<BigInt>,
    ) -> Result<Self> {
        let k = objects.len();
        let mut compose = BTreeMap::new();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let map = bilinear_map(&homs[b][c], &homs[a][b], &homs[a][c], |p, i, q, j| {
                        op(a, b, c, p, i, q, j)
                    })?;
                    compose.insert((a, b, c), map);
                }
            }
        }
        Self::new(objects, homs, compose, identities)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, a: usize, b: usize) -> &Complex {
        &self.homs[a][b]
    }

    pub fn composition(&self, a: usize, b: usize, c: usize) -> &Proto {
        &self.compose[&(a, b, c)]
    }

    pub fn compositions(&self) -> &BTreeMap<(usize, usize, usize), Proto> {
        &self.compose
    }

    pub fn identity(&self, a: usize) -> &[BigInt] {
        &self.identities[a]
    }

    /// `g ∘ f` for `g ∈ C(b, c)_p` and `f ∈ C(a, b)_q`.
    pub fn compose(&self, a: usize, b: usize, c: usize, p: i64, g: &[BigInt], q: i64, f: &[BigInt]) -> Vec<BigInt> {
        apply_bilinear(&self.compose[&(a, b, c)], &self.homs[b][c], &self.homs[a][b], p, g, q, f)
    }

    /// All hom complexes have zero differential.
    pub fn is_graded(&self) -> bool {
        self.homs.iter().flatten().all(Complex::is_graded)
    }

    /// Basis elements of `C(a, b)` as `(degree, vector)` pairs.
    pub fn hom_basis(&self, a: usize, b: usize) -> Vec<(i64, Vec<BigInt>)> {
        basis(&self.homs[a][b])
    }
}

pub(crate) fn basis(c: &Complex) -> Vec<(i64, Vec<BigInt>)> {
    c.support().flat_map(|n| (0..c.rank(n)).map(move |i| (n, unit(c.rank(n), i)))).collect()
}

impl fmt::Debug for FiniteDGCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteDGCategory{:?}", self.objects)
    }
}

/// Checks d² = 0 on homs, the Leibniz law (composition is a chain map),
/// associativity and the unit laws on all basis elements.
pub fn validate_dg_category(cat: &FiniteDGCategory) -> ValidationReport {
    let mut violations = Vec::new();
    let k = cat.len();
    let name = |a: usize| cat.name(a).to_string();
    for a in 0..k {
        for b in 0..k {
            if let Err(e) = cat.hom(a, b).check_d_squared() {
                violations.push(Violation { law: "d²", detail: format!("C({}, {}): {e}", name(a), name(b)) });
            }
        }
    }
    for (&(a, b, c), m) in cat.compositions() {
        let d = m.differential();
        if let Some(n) = m.source().support().find(|&n| !d.comp(n).is_zero()) {
            violations.push(Violation {
                law: "Leibniz",
                detail: format!("{}->{}->{} in total degree {n}", name(a), name(b), name(c)),
            });
        }
    }
    for a in 0..k {
        let id = cat.identity(a);
        let d = cat.hom(a, a).d(0).mul_vec(id);
        if !is_zero_vec(&d) {
            violations.push(Violation { law: "unit", detail: format!("identity of {} is not a cycle", name(a)) });
        }
        for b in 0..k {
            for (p, f) in cat.hom_basis(a, b) {
                let left = cat.compose(a, b, b, 0, cat.identity(b), p, &f);
                let right = cat.compose(a, a, b, p, &f, 0, id);
                if left != f || right != f {
                    violations.push(Violation {
                        law: "unit",
                        detail: format!("basis element of C({}, {}) in degree {p}", name(a), name(b)),
                    });
                }
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            let fs = cat.hom_basis(a, b);
            if fs.is_empty() {
                continue;
            }
            for c in 0..k {
                let gs = cat.hom_basis(b, c);
                for d in 0..k {
                    for (r, h) in cat.hom_basis(c, d) {
                        for (p, g) in &gs {
                            let hg = cat.compose(b, c, d, r, &h, *p, g);
                            for (q, f) in &fs {
                                let gf = cat.compose(a, b, c, *p, g, *q, f);
                                let x = cat.compose(a, c, d, r, &h, p + q, &gf);
                                let y = cat.compose(a, b, d, r + p, &hg, *q, f);
                                if !is_zero_vec(&sub_vec(&x, &y)) {
                                    violations.push(Violation {
                                        law: "associativity",
                                        detail: format!(
                                            "{}->{}->{}->{} in degrees ({r}, {p}, {q})",
                                            name(a),
                                            name(b),
                                            name(c),
                                            name(d)
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

/// The one-object category with endomorphisms ℤ.
pub fn unit_category() -> FiniteDGCategory {
    let homs = vec![vec![Complex::point(0)]];
    FiniteDGCategory::from_composition(vec!["*".into()], homs, vec![vec![1.into()]], |_, _, _, _, _, _, _| {
        vec![1.into()]
    })
    .expect("unit category")
}

/// The full sub-DG-category of complexes on the given objects, with
/// `C(X, Y) = [X, Y]`.
pub fn full_subcategory(objects: &[(&str, Complex)]) -> Result<FiniteDGCategory> {
    let k = objects.len();
    let cx = |a: usize| &objects[a].1;
    let mut homs = Vec::with_capacity(k);
    for a in 0..k {
        homs.push((0..k).map(|b| hom_complex(cx(a), cx(b))).collect::<Result<Vec<_>>>()?);
    }
    let identities = (0..k).map(|a| Proto::identity(cx(a)).to_vector()).collect();
    let hom_ref = homs.clone();
    FiniteDGCategory::from_composition(
        objects.iter().map(|(n, _)| n.to_string()).collect(),
        homs,
        identities,
        |a, b, c, p, i, q, j| {
            let g = Proto::from_vector(cx(b), cx(c), p, &unit(hom_ref[b][c].rank(p), i)).expect("basis element");
            let f = Proto::from_vector(cx(a), cx(b), q, &unit(hom_ref[a][b].rank(q), j)).expect("basis element");
            Proto::compose(&g, &f).expect("composable").to_vector()
        },
    )
}

/// `{K(0), Lℤ}` inside complexes.
pub fn dgab_fixture() -> FiniteDGCategory {
    full_subcategory(&[("K0", Complex::point(0)), ("LZ", l_z())]).expect("fixture category")
}

/// `{K(0), K(1)}` inside complexes; all hom differentials vanish.
pub fn graded_fixture() -> FiniteDGCategory {
    full_subcategory(&[("K0", Complex::point(0)), ("K1", Complex::point(1))]).expect("fixture category")
}

/// The objects `-window..=window` of `ℒ`, homs in degree 0.
pub fn ell_category(window: i64) -> FiniteDGCategory {
    let range: Vec<i64> = (-window..=window).collect();
    let homs = range
        .iter()
        .map(|&m| {
            range
                .iter()
                .map(|&n| if ell_hom_rank(m, n) == 1 { Complex::point(0) } else { Complex::zero() })
                .collect()
        })
        .collect();
    let identities = range.iter().map(|_| vec![1.into()]).collect();
    let names = range.iter().map(|m| m.to_string()).collect();
    FiniteDGCategory::from_composition(names, homs, identities, |a, _, c, _, _, _, _| {
        // two generator steps compose to zero
        if ell_hom_rank(range[a], range[c]) == 1 {
            vec![1.into()]
        } else {
            Vec::new()
        }
    })
    .expect("ℒ window")
}

/// One object with endomorphisms `ℤ{1, x}` in degree 0 and `x² = 2x`.
pub fn doubling_category() -> FiniteDGCategory {
    let homs = vec![vec![Complex::graded(0, vec![2])]];
    FiniteDGCategory::from_composition(vec!["*".into()], homs, vec![vec![1.into(), 0.into()]], |_, _, _, _, i, _, j| {
        match (i, j) {
            (0, 0) => vec![1.into(), 0.into()],
            (1, 1) => vec![0.into(), 2.into()],
            _ => vec![0.into(), 1.into()],
        }
    })
    .expect("doubling category")
}

/// All categories used as fixtures by the verification suite.
pub fn fixture_categories() -> Vec<(&'static str, FiniteDGCategory)> {
    vec![
        ("unit", unit_category()),
        ("dgab", dgab_fixture()),
        ("graded", graded_fixture()),
        ("ell", ell_category(2)),
        ("doubling", doubling_category()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signs::{with_flipped, SignSite};

    #[test]
    fn fixtures_are_valid() {
        for (name, cat) in fixture_categories() {
            let report = validate_dg_category(&cat);
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn dgab_homs() {
        let cat = dgab_fixture();
        assert_eq!(cat.hom(0, 1).rank_map(), BTreeMap::from([(-1, 1), (0, 1)]));
        assert!(!cat.is_graded());
        assert!(graded_fixture().is_graded());
    }

    #[test]
    fn broken_sign_is_reported() {
        let cat = dgab_fixture();
        let (a, b, c) = (1, 1, 1);
        let mut compose = cat.compositions().clone();
        let m = compose[&(a, b, c)].clone();
        let broken = m.map_comps(|n, x| if n == 0 { x.scale_i64(-1) } else { x.clone() });
        compose.insert((a, b, c), broken);
        let objects = cat.objects().to_vec();
        let homs = (0..2).map(|x| (0..2).map(|y| cat.hom(x, y).clone()).collect()).collect();
        let ids = (0..2).map(|x| cat.identity(x).to_vec()).collect();
        let bad = FiniteDGCategory::new(objects, homs, compose, ids).unwrap();
        let report = validate_dg_category(&bad);
        assert!(report.violations.iter().any(|v| v.law == "Leibniz"), "{:?}", report.violations);
    }

    #[test]
    fn hom_sign_flip_breaks_leibniz() {
        let report = with_flipped(SignSite::HomDifferential, || validate_dg_category(&dgab_fixture()));
        assert!(report.violations.iter().any(|v| v.law == "Leibniz"));
    }

    #[test]
    fn shape_errors() {
        let homs = vec![vec![Complex::point(0)]];
        let err = FiniteDGCategory::new(vec!["*".into()], homs.clone(), BTreeMap::new(), vec![vec![]]);
        assert!(matches!(err, Err(Error::InvalidCategory(_))));
        let wrong = Proto::new(Complex::point(0), Complex::point(1), 0, BTreeMap::new()).unwrap();
        let err = FiniteDGCategory::new(
            vec!["*".into()],
            homs,
            BTreeMap::from([((0, 0, 0), wrong)]),
            vec![vec![1.into()]],
        );
        assert!(matches!(err, Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn ell_composites() {
        let cat = ell_category(1);
        // indices 0, 1, 2 are the objects -1, 0, 1
        assert_eq!(cat.compose(0, 1, 2, 0, &[1.into()], 0, &[1.into()]), Vec::<BigInt>::new());
        assert_eq!(cat.compose(0, 1, 1, 0, &[1.into()], 0, &[1.into()]), vec![BigInt::from(1)]);
    }
}
