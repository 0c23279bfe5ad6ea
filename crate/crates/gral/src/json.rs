//! JSON wire formats for categories, algebras, crossed systems, subspaces
//! and morphisms.
//!
//! Scalars are context-encoded: GF(p) residues as JSON integers, rationals
//! as "a/b" strings, integers as decimal strings (arbitrary precision).
//! Omitted structure entries mean the product is zero; omitted alpha entries
//! default to the component identity.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::analysis::AlgebraMorphism;
use crate::category::{FiniteCategory, MorphismId, Quiver};
use crate::crossed::{ComponentAlgebra, CrossedSystem};
use crate::graded::{Element, GradedAlgebra, SparseVec};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{CoefficientRing, Scalar};
use crate::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}

pub fn ring_to_json(ring: CoefficientRing) -> Value {
    match ring {
        CoefficientRing::PrimeField(p) => json!({"kind": "gf", "p": p}),
        CoefficientRing::Rationals => json!({"kind": "rational"}),
        CoefficientRing::Integers => json!({"kind": "integer"}),
    }
}

pub fn ring_from_json(v: &Value) -> Result<CoefficientRing> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("ring needs a \"kind\""))?;
    match kind {
        "gf" => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("gf ring needs a prime \"p\""))?;
            CoefficientRing::prime_field(p)
        }
        "rational" => Ok(CoefficientRing::Rationals),
        "integer" => Ok(CoefficientRing::Integers),
        other => Err(bad(format!("unknown ring kind {other}"))),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Fp { val, .. } => json!(val),
        Scalar::Rational(r) => json!(r.to_string()),
        Scalar::Integer(n) => json!(n.to_string()),
    }
}

pub fn scalar_from_json(ring: CoefficientRing, v: &Value) -> Result<Scalar> {
    match ring {
        CoefficientRing::PrimeField(p) => {
            let n = v
                .as_i64()
                .or_else(|| v.as_str().and_then(|s| s.parse::<i64>().ok()))
                .ok_or_else(|| bad(format!("expected a GF({p}) residue, got {v}")))?;
            Ok(ring.from_i64(n))
        }
        CoefficientRing::Rationals => {
            if let Some(n) = v.as_i64() {
                return Ok(ring.from_i64(n));
            }
            let s = v
                .as_str()
                .ok_or_else(|| bad(format!("expected a rational string, got {v}")))?;
            let parse_int =
                |x: &str| BigInt::from_str(x.trim()).map_err(|_| bad(format!("bad integer {x}")));
            let r = match s.split_once('/') {
                Some((a, b)) => {
                    let denom = parse_int(b)?;
                    if denom == BigInt::from(0) {
                        return Err(bad("zero denominator"));
                    }
                    BigRational::new(parse_int(a)?, denom)
                }
                None => BigRational::from(parse_int(s)?),
            };
            Ok(Scalar::Rational(r))
        }
        CoefficientRing::Integers => {
            if let Some(n) = v.as_i64() {
                return Ok(ring.from_i64(n));
            }
            let s = v
                .as_str()
                .ok_or_else(|| bad(format!("expected an integer string, got {v}")))?;
            Ok(Scalar::Integer(
                BigInt::from_str(s.trim()).map_err(|_| bad(format!("bad integer {s}")))?,
            ))
        }
    }
}

pub fn category_to_json(c: &FiniteCategory) -> Value {
    let morphisms: Vec<Value> = c
        .morphism_ids()
        .map(|m| {
            json!({
                "id": c.name(m),
                "dom": c.objects()[c.dom(m)],
                "cod": c.objects()[c.cod(m)],
            })
        })
        .collect();
    let identity: Map<String, Value> = c
        .objects()
        .iter()
        .enumerate()
        .map(|(o, name)| (name.clone(), json!(c.name(c.identity_of(o)))))
        .collect();
    let mut compose = Vec::new();
    for (s, t) in c.composable_pairs() {
        if let Some(st) = c.compose(s, t) {
            compose.push(json!([c.name(s), c.name(t), c.name(st)]));
        }
    }
    json!({
        "objects": c.objects(),
        "morphisms": morphisms,
        "identity": identity,
        "compose": compose,
    })
}

pub fn category_from_json(v: &Value) -> Result<FiniteCategory> {
    if let Some(q) = v.get("quiver") {
        return quiver_from_json(q).and_then(|q| crate::category::path_category(&q));
    }
    let objects: Vec<String> = v
        .get("objects")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("category needs \"objects\""))?
        .iter()
        .map(|o| {
            o.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("object ids must be strings"))
        })
        .collect::<Result<_>>()?;
    let morphisms: Vec<(String, String, String)> = v
        .get("morphisms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("category needs \"morphisms\""))?
        .iter()
        .map(|m| {
            let get = |k: &str| {
                m.get(k)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| bad(format!("morphism needs \"{k}\"")))
            };
            Ok((get("id")?, get("dom")?, get("cod")?))
        })
        .collect::<Result<_>>()?;
    let identity: BTreeMap<String, String> = v
        .get("identity")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("category needs \"identity\""))?
        .iter()
        .map(|(k, val)| {
            val.as_str()
                .map(|s| (k.clone(), s.to_string()))
                .ok_or_else(|| bad("identity values must be morphism ids"))
        })
        .collect::<Result<_>>()?;
    let compose: Vec<(String, String, String)> = v
        .get("compose")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("category needs \"compose\""))?
        .iter()
        .map(|e| {
            let arr = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| bad("compose entries are [s, t, st] triples"))?;
            let get = |i: usize| {
                arr[i]
                    .as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad("compose entries are morphism ids"))
            };
            Ok((get(0)?, get(1)?, get(2)?))
        })
        .collect::<Result<_>>()?;
    FiniteCategory::new(objects, morphisms, &identity, &compose)
}

fn quiver_from_json(v: &Value) -> Result<Quiver> {
    let vertices: Vec<String> = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("quiver needs \"vertices\""))?
        .iter()
        .map(|o| {
            o.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("vertex ids must be strings"))
        })
        .collect::<Result<_>>()?;
    let arrows: Vec<(String, String, String)> = v
        .get("arrows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("quiver needs \"arrows\""))?
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let get = |key: &str| {
                a.get(key)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| bad(format!("arrow needs \"{key}\"")))
            };
            let name = a
                .get("name")
                .and_then(Value::as_str)
                .map(str::to_string)
                .unwrap_or_else(|| format!("a{}", k + 1));
            Ok((name, get("from")?, get("to")?))
        })
        .collect::<Result<_>>()?;
    Ok(Quiver { vertices, arrows })
}

pub fn element_to_json(alg: &GradedAlgebra, e: &Element) -> Value {
    let mut m = Map::new();
    for (&i, s) in &e.coords {
        m.insert(alg.basis_names()[i].clone(), scalar_to_json(s));
    }
    Value::Object(m)
}

fn sparse_from_json(
    ring: CoefficientRing,
    index_of: &dyn Fn(&str) -> Result<usize>,
    v: &Value,
) -> Result<SparseVec> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("expected an object of basis coefficients"))?;
    let mut out = SparseVec::new();
    for (k, val) in obj {
        let s = scalar_from_json(ring, val)?;
        if !s.is_zero() {
            out.insert(index_of(k)?, s);
        }
    }
    Ok(out)
}

pub fn element_from_json(alg: &GradedAlgebra, v: &Value) -> Result<Element> {
    let coords = sparse_from_json(
        alg.ring(),
        &|name| {
            alg.basis_index(name)
                .ok_or_else(|| bad(format!("unknown basis id {name}")))
        },
        v,
    )?;
    Ok(Element { coords })
}

pub fn algebra_to_json(alg: &GradedAlgebra) -> Value {
    let degree: Map<String, Value> = alg
        .basis_names()
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), json!(alg.category().name(alg.degree_of(i)))))
        .collect();
    let structure: Vec<Value> = alg
        .structure()
        .iter()
        .map(|(&(i, j), prod)| {
            let mut m = Map::new();
            for (&k, s) in prod {
                m.insert(alg.basis_names()[k].clone(), scalar_to_json(s));
            }
            json!([alg.basis_names()[i], alg.basis_names()[j], Value::Object(m)])
        })
        .collect();
    json!({
        "ring": ring_to_json(alg.ring()),
        "category": category_to_json(alg.category()),
        "basis": alg.basis_names(),
        "degree": degree,
        "structure": structure,
        "unit": element_to_json(alg, &alg.unit()),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<GradedAlgebra> {
    let ring = ring_from_json(v.get("ring").ok_or_else(|| bad("algebra needs \"ring\""))?)?;
    let category = category_from_json(
        v.get("category")
            .ok_or_else(|| bad("algebra needs \"category\""))?,
    )?
    .validated()?;
    let basis: Vec<String> = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("algebra needs \"basis\""))?
        .iter()
        .map(|b| {
            b.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("basis ids must be strings"))
        })
        .collect::<Result<_>>()?;
    let index_of = |name: &str| -> Result<usize> {
        basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| bad(format!("unknown basis id {name}")))
    };
    let degree_map = v
        .get("degree")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("algebra needs \"degree\""))?;
    let mut degree = Vec::with_capacity(basis.len());
    for b in &basis {
        let mor = degree_map
            .get(b)
            .and_then(Value::as_str)
            .ok_or_else(|| bad(format!("degree map missing basis id {b}")))?;
        degree.push(category.morphism_by_name(mor)?);
    }
    let mut structure: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for entry in v
        .get("structure")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("algebra needs \"structure\""))?
    {
        let arr = entry
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| bad("structure entries are [i, j, product] triples"))?;
        let i = index_of(arr[0].as_str().ok_or_else(|| bad("structure ids are strings"))?)?;
        let j = index_of(arr[1].as_str().ok_or_else(|| bad("structure ids are strings"))?)?;
        let prod = sparse_from_json(ring, &index_of, &arr[2])?;
        if !prod.is_empty() {
            structure.insert((i, j), prod);
        }
    }
    let unit = sparse_from_json(
        ring,
        &index_of,
        v.get("unit").ok_or_else(|| bad("algebra needs \"unit\""))?,
    )?;
    GradedAlgebra::new(ring, category, basis, degree, structure, unit)
}

fn component_to_json(comp: &ComponentAlgebra) -> Value {
    let structure: Vec<Value> = comp
        .structure
        .iter()
        .map(|(&(i, j), prod)| {
            let mut m = Map::new();
            for (&k, s) in prod {
                m.insert(comp.basis[k].clone(), scalar_to_json(s));
            }
            json!([comp.basis[i], comp.basis[j], Value::Object(m)])
        })
        .collect();
    let mut unit = Map::new();
    for (&k, s) in &comp.unit {
        unit.insert(comp.basis[k].clone(), scalar_to_json(s));
    }
    json!({"basis": comp.basis, "structure": structure, "unit": Value::Object(unit)})
}

fn component_from_json(ring: CoefficientRing, v: &Value) -> Result<ComponentAlgebra> {
    let basis: Vec<String> = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("component needs \"basis\""))?
        .iter()
        .map(|b| {
            b.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("basis ids must be strings"))
        })
        .collect::<Result<_>>()?;
    let index_of = |name: &str| -> Result<usize> {
        basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| bad(format!("unknown component basis id {name}")))
    };
    let mut structure: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for entry in v
        .get("structure")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("component needs \"structure\""))?
    {
        let arr = entry
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| bad("structure entries are [i, j, product] triples"))?;
        let i = index_of(arr[0].as_str().ok_or_else(|| bad("structure ids are strings"))?)?;
        let j = index_of(arr[1].as_str().ok_or_else(|| bad("structure ids are strings"))?)?;
        let prod = sparse_from_json(ring, &index_of, &arr[2])?;
        if !prod.is_empty() {
            structure.insert((i, j), prod);
        }
    }
    let unit = sparse_from_json(
        ring,
        &index_of,
        v.get("unit").ok_or_else(|| bad("component needs \"unit\""))?,
    )?;
    Ok(ComponentAlgebra {
        ring,
        basis,
        structure,
        unit,
    })
}

fn mat_to_json(m: &Mat) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| Value::Array((0..m.cols).map(|j| scalar_to_json(m.at(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

fn mat_from_json(ring: CoefficientRing, v: &Value, rows: usize, cols: usize) -> Result<Mat> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(bad(format!("matrix needs {rows} rows, got {}", arr.len())));
    }
    let mut m = Mat::zero(ring, rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == cols)
            .ok_or_else(|| bad(format!("matrix rows need {cols} entries")))?;
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, scalar_from_json(ring, s)?);
        }
    }
    Ok(m)
}

pub fn crossed_system_to_json(cs: &CrossedSystem) -> Value {
    let g = cs.category();
    let components: Map<String, Value> = g
        .objects()
        .iter()
        .enumerate()
        .map(|(o, name)| (name.clone(), component_to_json(&cs.components()[o])))
        .collect();
    let sigma: Map<String, Value> = g
        .morphism_ids()
        .map(|s| (g.name(s).to_string(), mat_to_json(&cs.sigma()[s.0])))
        .collect();
    let alpha: Vec<Value> = cs
        .alpha_entries()
        .iter()
        .map(|(&(s, t), v)| {
            let comp = &cs.components()[g.cod(MorphismId(s))];
            let mut m = Map::new();
            for (&k, x) in v {
                m.insert(comp.basis[k].clone(), scalar_to_json(x));
            }
            json!([g.name(MorphismId(s)), g.name(MorphismId(t)), Value::Object(m)])
        })
        .collect();
    json!({
        "ring": ring_to_json(cs.ring()),
        "category": category_to_json(g),
        "components": components,
        "sigma": sigma,
        "alpha": alpha,
    })
}

pub fn crossed_system_from_json(v: &Value) -> Result<CrossedSystem> {
    let ring = ring_from_json(v.get("ring").ok_or_else(|| bad("system needs \"ring\""))?)?;
    let category = category_from_json(
        v.get("category")
            .ok_or_else(|| bad("system needs \"category\""))?,
    )?
    .validated()?;
    let comp_map = v
        .get("components")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("system needs \"components\""))?;
    let mut components = Vec::new();
    for obj in category.objects() {
        let c = comp_map
            .get(obj)
            .ok_or_else(|| bad(format!("missing component ring for object {obj}")))?;
        components.push(component_from_json(ring, c)?);
    }
    let sigma_map = v
        .get("sigma")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("system needs \"sigma\""))?;
    let mut sigma = Vec::new();
    for s in category.morphism_ids() {
        let m = sigma_map
            .get(category.name(s))
            .ok_or_else(|| bad(format!("missing sigma for morphism {}", category.name(s))))?;
        let rows = components[category.cod(s)].dim();
        let cols = components[category.dom(s)].dim();
        sigma.push(mat_from_json(ring, m, rows, cols)?);
    }
    let mut alpha = BTreeMap::new();
    if let Some(entries) = v.get("alpha").and_then(Value::as_array) {
        for entry in entries {
            let arr = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| bad("alpha entries are [s, t, element] triples"))?;
            let s = category
                .morphism_by_name(arr[0].as_str().ok_or_else(|| bad("alpha ids are strings"))?)?;
            let t = category
                .morphism_by_name(arr[1].as_str().ok_or_else(|| bad("alpha ids are strings"))?)?;
            let comp = &components[category.cod(s)];
            let basis = comp.basis.clone();
            let val = sparse_from_json(
                ring,
                &|name| {
                    basis
                        .iter()
                        .position(|b| b == name)
                        .ok_or_else(|| bad(format!("unknown component basis id {name}")))
                },
                &arr[2],
            )?;
            alpha.insert((s.0, t.0), val);
        }
    }
    CrossedSystem::new(ring, category, components, sigma, alpha)
}

pub fn subspace_to_json(alg: &GradedAlgebra, s: &Subspace) -> Value {
    let span: Vec<Value> = s
        .rows()
        .iter()
        .map(|r| element_to_json(alg, &alg.element_from_dense(r)))
        .collect();
    json!({ "span": span })
}

pub fn subspace_from_json(alg: &GradedAlgebra, v: &Value) -> Result<Subspace> {
    let span = v
        .get("span")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("subspace needs \"span\""))?;
    let mut vecs = Vec::new();
    for e in span {
        vecs.push(alg.dense(&element_from_json(alg, e)?));
    }
    Ok(Subspace::from_vectors(alg.ring(), alg.dim(), &vecs))
}

pub fn morphism_to_json(source: &GradedAlgebra, phi: &AlgebraMorphism) -> Value {
    let images: Map<String, Value> = source
        .basis_names()
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let img = phi.target.element_from_dense(&phi.matrix.column(j));
            (name.clone(), element_to_json(&phi.target, &img))
        })
        .collect();
    json!({
        "target": algebra_to_json(&phi.target),
        "images": images,
    })
}

/// {"target": <algebra>, "images": {source basis id: element of target}}
pub fn morphism_from_json(source: &GradedAlgebra, v: &Value) -> Result<AlgebraMorphism> {
    let target = algebra_from_json(
        v.get("target")
            .ok_or_else(|| bad("morphism needs \"target\""))?,
    )?
    .validated()?;
    let images = v
        .get("images")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("morphism needs \"images\""))?;
    let mut matrix = Mat::zero(source.ring(), target.dim(), source.dim());
    for (j, name) in source.basis_names().iter().enumerate() {
        let img = images
            .get(name)
            .ok_or_else(|| bad(format!("missing image of {name}")))?;
        let e = element_from_json(&target, img)?;
        for (&k, s) in &e.coords {
            matrix.set(k, j, s.clone());
        }
    }
    Ok(AlgebraMorphism { target, matrix })
}
