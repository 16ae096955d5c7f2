//! JSON formats. Integers are written as decimal strings and read from
//! either strings or JSON numbers.
//!
//! - matrix: `{"rows": r, "cols": c, "data": [row-major entries]}`
//! - complex: `{"lo": n, "hi": m, "ranks": [...], "diffs": {"<n>": d_n}}`, `hi` optional
//! - `ℒ`-module: `{"lo", "hi", "ranks", "action": {"<n>": F(n) -> F(n-1)}}`
//! - cochain complex: `{"lo", "ranks", "codiffs": {"<n>": d^n}}` with `A^n = A_{-n}`
//! - protomorphism: `{"source", "target", "degree", "comps": {"<q>": f_q}}`
//! - category: `{"objects": [...], "homs": {"A->B": complex},
//!   "compose": {"A->B->C": comps}, "identities": {"A": [...]}}`
//! - module: `{"category", "variance": "right" | "left",
//!   "values": {"A": complex}, "actions": {"U->V": comps}}`
//! - Cauchy data: `{"m", "n", "eta": [{"object", "degree", "x", "y"}],
//!   "eps": {"U->V": comps}}`, or the shorthand
//!   `{"category", "free": [["A", shift], ...], "mutation"}`
//! - double complex: `{"columns": {"<m>": complex}, "delta": {"<m>": comps}}`

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complexes::{Complex, GradedGroups, Proto};
use crate::dgcat::{
    drop_unit_term, free_cauchy, negate_counit, scale_unit, CauchyData, DGModule, EtaTerm, FiniteDGCategory, Variance,
};
use crate::ell::{decode, encode, EllModule};
use crate::error::{Error, Result};
use crate::monoidal::tensor;
use crate::totals::DoubleComplex;
use crate::zlinalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d).map_err(|_| serde::de::Error::custom("expected an integer or a decimal string"))? {
            Raw::Num(n) => Ok(Int(n.into())),
            Raw::Str(s) => s.trim().parse().map(Int).map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}"))),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn big(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Int>,
}

pub type CompsDoc = BTreeMap<i64, MatrixDoc>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub lo: i64,
    /// Top degree; optional, checked against `ranks` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<i64>,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub diffs: CompsDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtoDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub degree: i64,
    #[serde(default)]
    pub comps: CompsDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: BTreeMap<String, ComplexDoc>,
    #[serde(default)]
    pub compose: BTreeMap<String, CompsDoc>,
    pub identities: BTreeMap<String, Vec<Int>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub category: CategoryDoc,
    pub variance: String,
    #[serde(default)]
    pub values: BTreeMap<String, ComplexDoc>,
    #[serde(default)]
    pub actions: BTreeMap<String, CompsDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaDoc {
    pub object: String,
    pub degree: i64,
    pub x: Vec<Int>,
    pub y: Vec<Int>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CauchyDoc {
    pub m: Option<ModuleDoc>,
    pub n: Option<ModuleDoc>,
    #[serde(default)]
    pub eta: Vec<EtaDoc>,
    #[serde(default)]
    pub eps: BTreeMap<String, CompsDoc>,
    pub category: Option<CategoryDoc>,
    pub free: Option<Vec<(String, i64)>>,
    /// `negate-counit`, `double-unit` or `drop-unit-term:<i>`.
    pub mutation: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleDoc {
    pub columns: BTreeMap<i64, ComplexDoc>,
    #[serde(default)]
    pub delta: BTreeMap<i64, CompsDoc>,
}

/// An `ℒ`-module: the complex format with `action` in place of `diffs`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllDoc {
    pub lo: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<i64>,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub action: CompsDoc,
}

/// Cochain indexing `A^n = A_{-n}`, with `codiffs[n] : A^n -> A^{n+1}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub lo: i64,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub codiffs: CompsDoc,
}

fn input(path: &str, what: impl fmt::Display) -> Error {
    Error::Input(format!("{path}: {what}"))
}

fn within(path: &str, e: Error) -> Error {
    match e {
        Error::Input(s) => Error::Input(s),
        other => input(path, other),
    }
}

/// Parses `text` as `T`, naming the offending field on failure.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "document".to_string() } else { path };
        input(&path, e.into_inner())
    })
}

pub fn matrix_from_doc(doc: &MatrixDoc, path: &str) -> Result<IntMatrix> {
    IntMatrix::from_vec(doc.rows, doc.cols, big(&doc.data)).map_err(|_| {
        input(path, format!("{} entries for a {}x{} matrix", doc.data.len(), doc.rows, doc.cols))
    })
}

pub fn matrix_to_doc(m: &IntMatrix) -> MatrixDoc {
    MatrixDoc { rows: m.rows(), cols: m.cols(), data: ints(m.entries()) }
}

pub fn complex_from_doc(doc: &ComplexDoc, path: &str) -> Result<Complex> {
    if let Some(hi) = doc.hi {
        let expected = doc.lo + doc.ranks.len() as i64 - 1;
        if hi != expected && !(doc.ranks.is_empty() && hi < doc.lo) {
            return Err(input(&format!("{path}.hi"), format!("hi = {hi} but ranks cover degrees {}..={expected}", doc.lo)));
        }
    }
    let rank = |n: i64| {
        let i = n - doc.lo;
        if i >= 0 && (i as usize) < doc.ranks.len() {
            doc.ranks[i as usize]
        } else {
            0
        }
    };
    let mut diffs = BTreeMap::new();
    for (&n, m) in &doc.diffs {
        let at = format!("{path}.diffs.{n}");
        let d = matrix_from_doc(m, &at)?;
        if d.shape() != (rank(n - 1), rank(n)) {
            return Err(input(
                &at,
                format!("d_{n} must be {}x{} at degree {n}, got {}x{}", rank(n - 1), rank(n), d.rows(), d.cols()),
            ));
        }
        if !d.is_zero() {
            diffs.insert(n, d);
        }
    }
    Complex::new(doc.lo, doc.ranks.clone(), diffs).map_err(|e| match e {
        Error::SquareZeroViolated { degree } => input(path, format!("d_{} ∘ d_{degree} != 0 at degree {degree}", degree - 1)),
        other => within(path, other),
    })
}

pub fn complex_to_doc(c: &Complex) -> ComplexDoc {
    if c.is_zero() {
        return ComplexDoc { lo: 0, hi: None, ranks: Vec::new(), diffs: BTreeMap::new() };
    }
    let diffs = c.diffs().into_iter().filter(|(_, d)| !d.is_zero()).map(|(n, d)| (n, matrix_to_doc(&d))).collect();
    ComplexDoc { lo: c.lo(), hi: Some(c.lo() + c.ranks().len() as i64 - 1), ranks: c.ranks().to_vec(), diffs }
}

fn comps_from_doc(
    doc: &CompsDoc,
    source: &Complex,
    target: &Complex,
    degree: i64,
    path: &str,
) -> Result<Proto> {
    let mut comps = BTreeMap::new();
    for (&q, m) in doc {
        let at = format!("{path}.{q}");
        let f = matrix_from_doc(m, &at)?;
        let want = (target.rank(q + degree), source.rank(q));
        if f.shape() != want {
            return Err(input(&at, format!("component at degree {q} must be {}x{}, got {}x{}", want.0, want.1, f.rows(), f.cols())));
        }
        if !f.is_zero() {
            comps.insert(q, f);
        }
    }
    Proto::new(source.clone(), target.clone(), degree, comps).map_err(|e| within(path, e))
}

fn comps_to_doc(f: &Proto) -> CompsDoc {
    f.comps().into_iter().filter(|(_, m)| !m.is_zero()).map(|(q, m)| (q, matrix_to_doc(&m))).collect()
}

pub fn proto_from_doc(doc: &ProtoDoc, path: &str) -> Result<Proto> {
    let source = complex_from_doc(&doc.source, &format!("{path}source"))?;
    let target = complex_from_doc(&doc.target, &format!("{path}target"))?;
    comps_from_doc(&doc.comps, &source, &target, doc.degree, &format!("{path}comps"))
}

pub fn proto_to_doc(f: &Proto) -> ProtoDoc {
    ProtoDoc {
        source: complex_to_doc(f.source()),
        target: complex_to_doc(f.target()),
        degree: f.degree(),
        comps: comps_to_doc(f),
    }
}

fn split_key<'a>(key: &'a str, parts: usize, path: &str) -> Result<Vec<&'a str>> {
    let v: Vec<&str> = key.split("->").map(str::trim).collect();
    if v.len() != parts {
        return Err(input(path, format!("key {key:?} should name {parts} objects joined by \"->\"")));
    }
    Ok(v)
}

fn object_index(objects: &[String], name: &str, path: &str) -> Result<usize> {
    objects.iter().position(|o| o == name).ok_or_else(|| input(path, format!("unknown object {name:?}")))
}

pub fn category_from_doc(doc: &CategoryDoc, path: &str) -> Result<FiniteDGCategory> {
    let objects = doc.objects.clone();
    let k = objects.len();
    let mut homs = vec![vec![Complex::zero(); k]; k];
    for (key, c) in &doc.homs {
        let at = format!("{path}homs.{key}");
        let ab = split_key(key, 2, &at)?;
        let (a, b) = (object_index(&objects, ab[0], &at)?, object_index(&objects, ab[1], &at)?);
        homs[a][b] = complex_from_doc(c, &at)?;
    }
    let mut compose = BTreeMap::new();
    for (key, comps) in &doc.compose {
        let at = format!("{path}compose.{key}");
        let abc = split_key(key, 3, &at)?;
        let (a, b, c) = (
            object_index(&objects, abc[0], &at)?,
            object_index(&objects, abc[1], &at)?,
            object_index(&objects, abc[2], &at)?,
        );
        let source = tensor(&homs[b][c], &homs[a][b]).map_err(|e| within(&at, e))?;
        compose.insert((a, b, c), comps_from_doc(comps, &source, &homs[a][c], 0, &at)?);
    }
    let mut identities = Vec::with_capacity(k);
    for o in &objects {
        let at = format!("{path}identities.{o}");
        let v = doc.identities.get(o).ok_or_else(|| input(&at, "missing identity"))?;
        identities.push(big(v));
    }
    FiniteDGCategory::new(objects, homs, compose, identities).map_err(|e| within(path.trim_end_matches('.'), e))
}

pub fn category_to_doc(cat: &FiniteDGCategory) -> CategoryDoc {
    let name = |a: usize| cat.name(a).to_string();
    let k = cat.len();
    let mut homs = BTreeMap::new();
    let mut compose = BTreeMap::new();
    let mut identities = BTreeMap::new();
    for a in 0..k {
        identities.insert(name(a), ints(cat.identity(a)));
        for b in 0..k {
            if !cat.hom(a, b).is_zero() {
                homs.insert(format!("{}->{}", name(a), name(b)), complex_to_doc(cat.hom(a, b)));
            }
            for c in 0..k {
                let f = cat.composition(a, b, c);
                if !f.is_zero() {
                    compose.insert(format!("{}->{}->{}", name(a), name(b), name(c)), comps_to_doc(f));
                }
            }
        }
    }
    CategoryDoc { objects: cat.objects().to_vec(), homs, compose, identities }
}

fn variance_from(s: &str, path: &str) -> Result<Variance> {
    match s {
        "right" => Ok(Variance::Right),
        "left" => Ok(Variance::Left),
        _ => Err(input(path, format!("variance must be \"right\" or \"left\", got {s:?}"))),
    }
}

pub fn module_from_doc(doc: &ModuleDoc, path: &str) -> Result<DGModule> {
    let cat = Arc::new(category_from_doc(&doc.category, &format!("{path}category."))?);
    module_over(doc, cat, path)
}

fn module_over(doc: &ModuleDoc, cat: Arc<FiniteDGCategory>, path: &str) -> Result<DGModule> {
    let variance = variance_from(&doc.variance, &format!("{path}variance"))?;
    let objects = cat.objects().to_vec();
    let mut values = vec![Complex::zero(); cat.len()];
    for (key, c) in &doc.values {
        let at = format!("{path}values.{key}");
        values[object_index(&objects, key, &at)?] = complex_from_doc(c, &at)?;
    }
    let mut actions = BTreeMap::new();
    for (key, comps) in &doc.actions {
        let at = format!("{path}actions.{key}");
        let uv = split_key(key, 2, &at)?;
        let (u, v) = (object_index(&objects, uv[0], &at)?, object_index(&objects, uv[1], &at)?);
        let (src, tgt) = match variance {
            Variance::Right => (v, u),
            Variance::Left => (u, v),
        };
        let source = tensor(cat.hom(u, v), &values[src]).map_err(|e| within(&at, e))?;
        actions.insert((u, v), comps_from_doc(comps, &source, &values[tgt], 0, &at)?);
    }
    let m = DGModule::new(cat, variance, values, actions).map_err(|e| within(path.trim_end_matches('.'), e))?;
    m.validate().map_err(|e| within(path.trim_end_matches('.'), e))?;
    Ok(m)
}

pub fn module_to_doc(m: &DGModule) -> ModuleDoc {
    let cat = m.base();
    let name = |a: usize| cat.name(a).to_string();
    let values = (0..cat.len())
        .filter(|&u| !m.value(u).is_zero())
        .map(|u| (name(u), complex_to_doc(m.value(u))))
        .collect();
    let actions = m
        .actions()
        .iter()
        .filter(|(_, f)| !f.is_zero())
        .map(|(&(u, v), f)| (format!("{}->{}", name(u), name(v)), comps_to_doc(f)))
        .collect();
    let variance = match m.variance() {
        Variance::Right => "right",
        Variance::Left => "left",
    };
    ModuleDoc { category: category_to_doc(cat), variance: variance.into(), values, actions }
}

fn apply_mutation(cd: CauchyData, mutation: Option<&str>) -> Result<CauchyData> {
    let Some(m) = mutation else { return Ok(cd) };
    match m {
        "negate-counit" => Ok(negate_counit(&cd)),
        "double-unit" => Ok(scale_unit(&cd, 2)),
        _ => {
            let i = m
                .strip_prefix("drop-unit-term:")
                .and_then(|i| i.parse::<usize>().ok())
                .ok_or_else(|| input("mutation", format!("unknown mutation {m:?}")))?;
            if i >= cd.eta.len() {
                return Err(input("mutation", format!("no unit term {i}")));
            }
            Ok(drop_unit_term(&cd, i))
        }
    }
}

pub fn cauchy_from_doc(doc: &CauchyDoc) -> Result<CauchyData> {
    if let Some(free) = &doc.free {
        let cat_doc = doc.category.as_ref().ok_or_else(|| input("category", "the free shorthand needs a category"))?;
        let cat = Arc::new(category_from_doc(cat_doc, "category.")?);
        let mut terms = Vec::new();
        for (i, (name, shift)) in free.iter().enumerate() {
            terms.push((object_index(cat.objects(), name, &format!("free.{i}"))?, *shift));
        }
        let cd = free_cauchy(&cat, &terms).map_err(|e| within("free", e))?;
        return apply_mutation(cd, doc.mutation.as_deref());
    }
    let m_doc = doc.m.as_ref().ok_or_else(|| input("m", "missing module (or use the free shorthand)"))?;
    let n_doc = doc.n.as_ref().ok_or_else(|| input("n", "missing module"))?;
    let m = module_from_doc(m_doc, "m.")?;
    let cat = m.base().clone();
    let n = module_over(n_doc, cat.clone(), "n.")?;
    if category_from_doc(&n_doc.category, "n.category.")? != *cat {
        return Err(input("n.category", "M and N live over different categories"));
    }
    let objects = cat.objects().to_vec();
    let mut eta = Vec::new();
    for (i, t) in doc.eta.iter().enumerate() {
        let at = format!("eta.{i}");
        eta.push(EtaTerm {
            object: object_index(&objects, &t.object, &at)?,
            degree: t.degree,
            x: big(&t.x),
            y: big(&t.y),
        });
    }
    let mut eps = BTreeMap::new();
    for (key, comps) in &doc.eps {
        let at = format!("eps.{key}");
        let uv = split_key(key, 2, &at)?;
        let (u, v) = (object_index(&objects, uv[0], &at)?, object_index(&objects, uv[1], &at)?);
        let source = tensor(n.value(u), m.value(v)).map_err(|e| within(&at, e))?;
        eps.insert((u, v), comps_from_doc(comps, &source, cat.hom(v, u), 0, &at)?);
    }
    let cd = CauchyData::new(m, n, eta, eps).map_err(|e| within("document", e))?;
    apply_mutation(cd, doc.mutation.as_deref())
}

pub fn double_from_doc(doc: &DoubleDoc) -> Result<DoubleComplex> {
    let mut columns = BTreeMap::new();
    for (&m, c) in &doc.columns {
        columns.insert(m, complex_from_doc(c, &format!("columns.{m}"))?);
    }
    let column = |m: i64| columns.get(&m).cloned().unwrap_or_else(Complex::zero);
    let mut delta = BTreeMap::new();
    for (&m, comps) in &doc.delta {
        delta.insert(m, comps_from_doc(comps, &column(m), &column(m - 1), 0, &format!("delta.{m}"))?);
    }
    DoubleComplex::new(columns, delta).map_err(|e| match e {
        Error::SquareZeroViolated { degree } => input("delta", format!("δ_{} ∘ δ_{degree} != 0", degree - 1)),
        other => within("delta", other),
    })
}

pub fn double_to_doc(a: &DoubleComplex) -> DoubleDoc {
    DoubleDoc {
        columns: a.columns().into_iter().map(|(m, c)| (m, complex_to_doc(&c))).collect(),
        delta: a.deltas().into_iter().filter(|(_, d)| !d.is_zero()).map(|(m, d)| (m, comps_to_doc(&d))).collect(),
    }
}

pub fn ell_from_doc(doc: &EllDoc, path: &str) -> Result<EllModule> {
    let as_complex = ComplexDoc { lo: doc.lo, hi: doc.hi, ranks: doc.ranks.clone(), diffs: doc.action.clone() };
    let c = complex_from_doc(&as_complex, path)
        .map_err(|e| Error::Input(e.to_string().replace(".diffs.", ".action.").replace("d_", "action ")))?;
    Ok(encode(&c))
}

pub fn ell_to_doc(m: &EllModule) -> EllDoc {
    let c = complex_to_doc(&decode(m));
    EllDoc { lo: c.lo, hi: c.hi, ranks: c.ranks, action: c.diffs }
}

pub fn complex_from_cochain_doc(doc: &CochainDoc, path: &str) -> Result<Complex> {
    let len = doc.ranks.len() as i64;
    let chain = ComplexDoc {
        lo: -(doc.lo + len - 1),
        hi: None,
        ranks: doc.ranks.iter().rev().copied().collect(),
        diffs: doc.codiffs.iter().map(|(&n, m)| (-n, m.clone())).collect(),
    };
    complex_from_doc(&chain, path)
}

pub fn complex_to_cochain_doc(c: &Complex) -> CochainDoc {
    let doc = complex_to_doc(c);
    let len = doc.ranks.len() as i64;
    CochainDoc {
        lo: if len == 0 { 0 } else { -(doc.lo + len - 1) },
        ranks: doc.ranks.iter().rev().copied().collect(),
        codiffs: doc.diffs.into_iter().map(|(n, m)| (-n, m)).collect(),
    }
}

pub fn load_ell(text: &str) -> Result<EllModule> {
    ell_from_doc(&parse(text)?, "document")
}

pub fn load_complex(text: &str) -> Result<Complex> {
    complex_from_doc(&parse(text)?, "document")
}

pub fn load_proto(text: &str) -> Result<Proto> {
    proto_from_doc(&parse(text)?, "")
}

pub fn load_category(text: &str) -> Result<FiniteDGCategory> {
    category_from_doc(&parse(text)?, "")
}

pub fn load_module(text: &str) -> Result<DGModule> {
    module_from_doc(&parse(text)?, "")
}

pub fn load_cauchy(text: &str) -> Result<CauchyData> {
    cauchy_from_doc(&parse(text)?)
}

pub fn load_double(text: &str) -> Result<DoubleComplex> {
    double_from_doc(&parse(text)?)
}

/// `{"<n>": "Z/2"}` over the recorded degrees.
pub fn groups_to_json(h: &GradedGroups) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> =
        h.groups.iter().map(|(n, g)| (n.to_string(), g.to_string().into())).collect();
    serde_json::Value::Object(map)
}

pub fn to_json<T: Serialize>(doc: &T) -> serde_json::Value {
    serde_json::to_value(doc).expect("documents serialize")
}
