//! Builders for the worked examples, their expected check outcomes, and the
//! verification harness run by `gral verify-all`.
//!
//! Every expected value below carries a provenance tag:
//!   [LITERATURE]  stated in the literature for the example
//!   [IMMEDIATE]   immediate from the definitions
//!   [ORACLE]      computed independently (hand computation or a brute-force
//!                 enumeration in the test suite)

use std::collections::BTreeMap;

use serde_json::json;

use crate::analysis::{self, IipOptions, Side};
use crate::category::{
    cyclic_group, pair_groupoid, path_category, thin_two_object_groupoid, MorphismId, Quiver,
};
use crate::crossed::{
    build_crossed_product, build_skew_category_algebra, cyclic_shift_matrix, ComponentAlgebra,
    CrossedProduct, CrossedSystem,
};
use crate::graded::{GradedAlgebra, SparseVec};
use crate::linalg::Mat;
use crate::report::{timed, CheckReport};
use crate::scalar::CoefficientRing;
use crate::{Error, Result};

/// Parsed `--param key=value` arguments.
#[derive(Clone, Debug, Default)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn parse(kvs: &[String]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for kv in kvs {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("expected key=value, got {kv}")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(map))
    }

    pub fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        Params(
            pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        )
    }

    fn usize_of(&self, key: &str, default: usize) -> Result<usize> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::BadParams(format!("{key} must be an integer, got {v}"))),
        }
    }

    fn i64_of(&self, key: &str, default: i64) -> Result<i64> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::BadParams(format!("{key} must be an integer, got {v}"))),
        }
    }

    fn str_of(&self, key: &str, default: &str) -> String {
        self.0.get(key).cloned().unwrap_or_else(|| default.into())
    }

    /// ring=gf<p> | q | z
    fn ring_of(&self, default: CoefficientRing) -> Result<CoefficientRing> {
        match self.0.get("ring") {
            None => Ok(default),
            Some(v) => parse_ring_name(v),
        }
    }

    fn check_known(&self, allowed: &[&str]) -> Result<()> {
        for k in self.0.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::BadParams(format!(
                    "unknown parameter {k}; expected one of {allowed:?}"
                )));
            }
        }
        Ok(())
    }
}

pub fn parse_ring_name(v: &str) -> Result<CoefficientRing> {
    match v {
        "q" | "Q" | "rational" => Ok(CoefficientRing::Rationals),
        "z" | "Z" | "integer" => Ok(CoefficientRing::Integers),
        other => {
            let p = other
                .strip_prefix("gf")
                .map(|p| p.trim_start_matches(':'))
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| Error::BadParams(format!("unknown ring {other}")))?;
            CoefficientRing::prime_field(p)
        }
    }
}

/// A built catalog instance: the algebra plus the crossed-system provenance
/// when there is one.
pub struct Built {
    pub entry: String,
    pub label: String,
    pub algebra: GradedAlgebra,
    pub product: Option<CrossedProduct>,
}

pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("twisted-group", "twisted group algebra of Z_n (params: ring, n, twist)"),
        ("pair-groupoid-matrix", "M_n(K) as the skew pair-groupoid algebra (params: ring, n)"),
        ("twisted-pair-groupoid", "twisted square matrices over K (params: ring, n, twist)"),
        ("quiver", "path algebra of the A_k chain quiver (params: ring, chain)"),
        ("dade-m3", "M_3(K) with the 5+4 Z_2-grading (params: ring)"),
        ("thin-groupoid-13dim", "13-dimensional subalgebra of M_5(K) graded by the thin two-object groupoid (params: ring)"),
        ("z2-onesided", "K[x]/(x^2) + u with ux = u^2 = 0: right but not left nondegenerate (params: ring)"),
        ("pi-twisted-m3", "Dade decomposition of M_3(Z) with products of two odd parts scaled by pi (params: pi)"),
        ("skew-group", "skew group algebra of Z_n on K^n by cyclic shift, or on K trivially (params: ring, n, action)"),
        ("skew-groupoid", "skew pair-groupoid algebra with shift homomorphisms on K^m (params: ring, n, m)"),
    ]
}

fn ground_sigmas(ring: CoefficientRing, count: usize) -> Vec<Mat> {
    vec![Mat::identity(ring, 1); count]
}

/// e_ij e_kl = delta_jk * twist(a, b) * e_il over a list of matrix units.
fn matrix_unit_structure(
    units: &[(usize, usize)],
    twist: impl Fn(usize, usize) -> crate::scalar::Scalar,
) -> BTreeMap<(usize, usize), SparseVec> {
    let pos: BTreeMap<(usize, usize), usize> = units
        .iter()
        .enumerate()
        .map(|(ix, &u)| (u, ix))
        .collect();
    let mut structure = BTreeMap::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j != k {
                continue;
            }
            if let Some(&target) = pos.get(&(i, l)) {
                let c = twist(a, b);
                if !c.is_zero() {
                    structure.insert((a, b), SparseVec::from([(target, c)]));
                }
            }
        }
    }
    structure
}

/// Dade's decomposition of M_3: R_0 spanned by e11, e22, e23, e32, e33 and
/// R_1 by e21, e31, e12, e13.
const DADE_UNITS: [(usize, usize); 9] = [
    (1, 1),
    (2, 2),
    (2, 3),
    (3, 2),
    (3, 3),
    (2, 1),
    (3, 1),
    (1, 2),
    (1, 3),
];

fn dade_degree_split(ix: usize) -> usize {
    usize::from(ix >= 5) // first five units are even, last four odd
}

fn build_dade(ring: CoefficientRing) -> Result<GradedAlgebra> {
    let g = cyclic_group(2);
    let e0 = g.morphism_by_name("0")?;
    let e1 = g.morphism_by_name("1")?;
    let basis: Vec<String> = DADE_UNITS.iter().map(|(i, j)| format!("e{i}{j}")).collect();
    let degree: Vec<MorphismId> = (0..9)
        .map(|ix| if dade_degree_split(ix) == 0 { e0 } else { e1 })
        .collect();
    let structure = matrix_unit_structure(&DADE_UNITS, |_, _| ring.one());
    let unit = SparseVec::from([(0, ring.one()), (1, ring.one()), (4, ring.one())]);
    GradedAlgebra::new(ring, g, basis, degree, structure, unit)?.validated()
}

fn build_pi_twisted_m3(pi: i64) -> Result<GradedAlgebra> {
    let ring = CoefficientRing::Integers;
    let g = cyclic_group(2);
    let e0 = g.morphism_by_name("0")?;
    let e1 = g.morphism_by_name("1")?;
    let basis: Vec<String> = DADE_UNITS.iter().map(|(i, j)| format!("e{i}{j}")).collect();
    let degree: Vec<MorphismId> = (0..9)
        .map(|ix| if dade_degree_split(ix) == 0 { e0 } else { e1 })
        .collect();
    // products of two odd units pick up the factor pi
    let structure = matrix_unit_structure(&DADE_UNITS, |a, b| {
        if dade_degree_split(a) == 1 && dade_degree_split(b) == 1 {
            ring.from_i64(pi)
        } else {
            ring.one()
        }
    });
    let unit = SparseVec::from([(0, ring.one()), (1, ring.one()), (4, ring.one())]);
    GradedAlgebra::new(ring, g, basis, degree, structure, unit)?.validated()
}

/// The 13-dimensional subalgebra of M_5 graded by the thin two-object
/// groupoid: R_e = {e11, e33}, R_f = {e22, e44, e45, e54, e55},
/// R_s = {e12, e34, e35}, R_t = {e21, e43, e53}.
const THIN13_UNITS: [(usize, usize); 13] = [
    (1, 1),
    (3, 3),
    (2, 2),
    (4, 4),
    (4, 5),
    (5, 4),
    (5, 5),
    (1, 2),
    (3, 4),
    (3, 5),
    (2, 1),
    (4, 3),
    (5, 3),
];

fn build_thin13(ring: CoefficientRing) -> Result<GradedAlgebra> {
    let g = thin_two_object_groupoid();
    let degrees = [
        "e", "e", "f", "f", "f", "f", "f", "s", "s", "s", "t", "t", "t",
    ];
    let basis: Vec<String> = THIN13_UNITS.iter().map(|(i, j)| format!("e{i}{j}")).collect();
    let degree: Vec<MorphismId> = degrees
        .iter()
        .map(|d| g.morphism_by_name(d))
        .collect::<Result<_>>()?;
    let structure = matrix_unit_structure(&THIN13_UNITS, |_, _| ring.one());
    // identity of M_5 restricted to the subalgebra: all diagonal units
    let unit = SparseVec::from([
        (0, ring.one()),
        (1, ring.one()),
        (2, ring.one()),
        (3, ring.one()),
        (6, ring.one()),
    ]);
    GradedAlgebra::new(ring, g, basis, degree, structure, unit)?.validated()
}

fn build_z2_onesided(ring: CoefficientRing) -> Result<GradedAlgebra> {
    let g = cyclic_group(2);
    let e0 = g.morphism_by_name("0")?;
    let e1 = g.morphism_by_name("1")?;
    let basis = vec!["1".into(), "x".into(), "u".into(), "xu".into()];
    let degree = vec![e0, e0, e1, e1];
    let one = ring.one();
    let mut structure: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for j in 0..4 {
        structure.insert((0, j), SparseVec::from([(j, one.clone())]));
        if j != 0 {
            structure.insert((j, 0), SparseVec::from([(j, one.clone())]));
        }
    }
    structure.insert((1, 2), SparseVec::from([(3, one.clone())])); // x*u = xu
    let unit = SparseVec::from([(0, one)]);
    GradedAlgebra::new(ring, g, basis, degree, structure, unit)?.validated()
}

/// Twisted group algebra system for Z_n: alpha(a, b) picks up one factor of
/// `twist` per carry in the mod-n addition, the standard 2-cocycle.
pub fn twisted_group_system(
    ring: CoefficientRing,
    n: usize,
    twist: i64,
) -> Result<CrossedSystem> {
    if n < 1 {
        return Err(Error::BadParams("group order must be at least 1".into()));
    }
    let g = cyclic_group(n);
    let comps = vec![ComponentAlgebra::ground_field(ring)];
    let sigma = ground_sigmas(ring, n);
    let mut alpha = BTreeMap::new();
    let c = ring.from_i64(twist);
    for a in 0..n {
        for b in 0..n {
            if a + b >= n {
                let value = if c.is_zero() {
                    SparseVec::new() // explicitly the zero element
                } else {
                    SparseVec::from([(0, c.clone())])
                };
                alpha.insert((a, b), value);
            }
        }
    }
    CrossedSystem::new(ring, g, comps, sigma, alpha)
}

pub fn twisted_pair_groupoid_system(
    ring: CoefficientRing,
    n: usize,
    twist: i64,
) -> Result<CrossedSystem> {
    let g = pair_groupoid(n);
    let c = ring.from_i64(twist);
    if !c.is_unit() {
        return Err(Error::BadParams(format!(
            "twist {twist} must be a unit in {ring}"
        )));
    }
    let comps: Vec<ComponentAlgebra> = (0..n)
        .map(|_| ComponentAlgebra::ground_field(ring))
        .collect();
    let sigma = ground_sigmas(ring, g.morphism_count());
    // coboundary of f((i,j)) = twist^[i > j]: alpha(s,t) = f(s) f(t) / f(st)
    let f = |name: &str| -> crate::scalar::Scalar {
        let (i, j) = pair_of(name);
        if i > j {
            c.clone()
        } else {
            ring.one()
        }
    };
    let mut alpha = BTreeMap::new();
    for (s, t) in g.composable_pairs() {
        let st = g.compose(s, t).expect("composable");
        // f takes unit values, so the inverse always exists
        let val = f(g.name(s)).mul(&f(g.name(t))).mul(&f(g.name(st)).inv()?);
        if !val.is_one() {
            alpha.insert((s.0, t.0), SparseVec::from([(0, val)]));
        }
    }
    CrossedSystem::new(ring, g, comps, sigma, alpha)
}

fn pair_of(name: &str) -> (usize, usize) {
    let inner = name.trim_start_matches('(').trim_end_matches(')');
    let (i, j) = inner.split_once(',').expect("pair groupoid morphism name");
    (i.parse().unwrap(), j.parse().unwrap())
}

fn build_skew_group(
    ring: CoefficientRing,
    n: usize,
    action: &str,
) -> Result<CrossedProduct> {
    if n < 1 {
        return Err(Error::BadParams("group order must be at least 1".into()));
    }
    let g = cyclic_group(n);
    match action {
        "trivial" => {
            let comps = vec![ComponentAlgebra::ground_field(ring)];
            build_skew_category_algebra(ring, g, comps, ground_sigmas(ring, n))
        }
        "shift" => {
            let comps = vec![ComponentAlgebra::product_of_fields(ring, n)];
            let sigma: Vec<Mat> = (0..n).map(|k| cyclic_shift_matrix(ring, n, k)).collect();
            build_skew_category_algebra(ring, g, comps, sigma)
        }
        other => Err(Error::BadParams(format!(
            "action must be shift or trivial, got {other}"
        ))),
    }
}

fn build_skew_groupoid(ring: CoefficientRing, n: usize, m: usize) -> Result<CrossedProduct> {
    let g = pair_groupoid(n);
    let comps: Vec<ComponentAlgebra> = (0..n)
        .map(|_| ComponentAlgebra::product_of_fields(ring, m))
        .collect();
    let sigma: Vec<Mat> = g
        .morphism_ids()
        .map(|s| {
            let (i, j) = pair_of(g.name(s));
            cyclic_shift_matrix(ring, m, (i + m - (j % m)) % m)
        })
        .collect();
    build_skew_category_algebra(ring, g, comps, sigma)
}

pub fn build(name: &str, params: &Params) -> Result<Built> {
    let gf2 = CoefficientRing::PrimeField(2);
    let gf3 = CoefficientRing::PrimeField(3);
    let built = match name {
        "twisted-group" => {
            params.check_known(&["ring", "n", "twist"])?;
            let ring = params.ring_of(gf3)?;
            let n = params.usize_of("n", 2)?;
            let default_twist = if ring.characteristic() == 2 { 1 } else { 2 };
            let twist = params.i64_of("twist", default_twist)?;
            let system = twisted_group_system(ring, n, twist)?;
            let product = build_crossed_product(&system)?;
            Built {
                entry: name.into(),
                label: format!("twisted-group(ring={ring}, n={n}, twist={twist})"),
                algebra: product.algebra.clone(),
                product: Some(product),
            }
        }
        "pair-groupoid-matrix" => {
            params.check_known(&["ring", "n"])?;
            let ring = params.ring_of(gf2)?;
            let n = params.usize_of("n", 2)?;
            let comps: Vec<ComponentAlgebra> = (0..n)
                .map(|_| ComponentAlgebra::ground_field(ring))
                .collect();
            let g = pair_groupoid(n);
            let product =
                build_skew_category_algebra(ring, g, comps, ground_sigmas(ring, n * n))?;
            Built {
                entry: name.into(),
                label: format!("pair-groupoid-matrix(ring={ring}, n={n})"),
                algebra: product.algebra.clone(),
                product: Some(product),
            }
        }
        "twisted-pair-groupoid" => {
            params.check_known(&["ring", "n", "twist"])?;
            let ring = params.ring_of(gf3)?;
            let n = params.usize_of("n", 2)?;
            let default_twist = if ring.characteristic() == 2 { 1 } else { 2 };
            let twist = params.i64_of("twist", default_twist)?;
            let system = twisted_pair_groupoid_system(ring, n, twist)?;
            let product = build_crossed_product(&system)?;
            Built {
                entry: name.into(),
                label: format!("twisted-pair-groupoid(ring={ring}, n={n}, twist={twist})"),
                algebra: product.algebra.clone(),
                product: Some(product),
            }
        }
        "quiver" => {
            params.check_known(&["ring", "chain"])?;
            let ring = params.ring_of(gf2)?;
            let k = params.usize_of("chain", 2)?;
            if k < 1 {
                return Err(Error::BadParams("chain needs at least one vertex".into()));
            }
            let quiver = Quiver {
                vertices: (1..=k).map(|v| v.to_string()).collect(),
                arrows: (1..k)
                    .map(|v| (format!("a{v}"), v.to_string(), (v + 1).to_string()))
                    .collect(),
            };
            let g = path_category(&quiver)?;
            let comps: Vec<ComponentAlgebra> = (0..k)
                .map(|_| ComponentAlgebra::ground_field(ring))
                .collect();
            let count = g.morphism_count();
            let product = build_skew_category_algebra(ring, g, comps, ground_sigmas(ring, count))?;
            Built {
                entry: name.into(),
                label: format!("quiver(ring={ring}, chain={k})"),
                algebra: product.algebra.clone(),
                product: Some(product),
            }
        }
        "dade-m3" => {
            params.check_known(&["ring"])?;
            let ring = params.ring_of(CoefficientRing::Rationals)?;
            Built {
                entry: name.into(),
                label: format!("dade-m3(ring={ring})"),
                algebra: build_dade(ring)?,
                product: None,
            }
        }
        "thin-groupoid-13dim" => {
            params.check_known(&["ring"])?;
            let ring = params.ring_of(gf2)?;
            Built {
                entry: name.into(),
                label: format!("thin-groupoid-13dim(ring={ring})"),
                algebra: build_thin13(ring)?,
                product: None,
            }
        }
        "z2-onesided" => {
            params.check_known(&["ring"])?;
            let ring = params.ring_of(gf2)?;
            Built {
                entry: name.into(),
                label: format!("z2-onesided(ring={ring})"),
                algebra: build_z2_onesided(ring)?,
                product: None,
            }
        }
        "pi-twisted-m3" => {
            params.check_known(&["pi"])?;
            let pi = params.i64_of("pi", 2)?;
            if pi == 0 {
                return Err(Error::BadParams("pi must be nonzero".into()));
            }
            Built {
                entry: name.into(),
                label: format!("pi-twisted-m3(pi={pi})"),
                algebra: build_pi_twisted_m3(pi)?,
                product: None,
            }
        }
        "skew-group" => {
            params.check_known(&["ring", "n", "action"])?;
            let ring = params.ring_of(gf3)?;
            let n = params.usize_of("n", 2)?;
            let action = params.str_of("action", "shift");
            let product = build_skew_group(ring, n, &action)?;
            Built {
                entry: name.into(),
                label: format!("skew-group(ring={ring}, n={n}, action={action})"),
                algebra: product.algebra.clone(),
                product: Some(product),
            }
        }
        "skew-groupoid" => {
            params.check_known(&["ring", "n", "m"])?;
            let ring = params.ring_of(gf3)?;
            let n = params.usize_of("n", 2)?;
            let m = params.usize_of("m", 2)?;
            let product = build_skew_groupoid(ring, n, m)?;
            Built {
                entry: name.into(),
                label: format!("skew-groupoid(ring={ring}, n={n}, m={m})"),
                algebra: product.algebra.clone(),
                product: Some(product),
            }
        }
        _ => return Err(Error::UnknownEntry(name.into())),
    };
    Ok(built)
}

pub const CHECK_NAMES: [&str; 12] = [
    "grading",
    "strong",
    "unit-in-R0",
    "nondeg-right",
    "nondeg-left",
    "commutant-R0",
    "center",
    "commutant-ZR0",
    "iip",
    "maxcomm",
    "theorem3",
    "theorem4",
];

/// Runs one named check against a built algebra, producing a timed report.
pub fn run_check(built: &Built, check: &str, opts: &IipOptions) -> Result<CheckReport> {
    let alg = &built.algebra;
    timed(|| match check {
        "grading" => {
            let violations = alg.validate_grading();
            let mut report = CheckReport::new(check, violations.is_empty())
                .with_dim("dim", alg.dim())
                .with_dim("dim_R0", alg.principal_component().dim());
            for s in alg.category().morphism_ids() {
                report = report.with_dim(
                    format!("dim_{}", alg.category().name(s)),
                    alg.component_indices(s).len(),
                );
            }
            if let Some(v) = violations.first() {
                report = report.with_witness(json!(v.to_string()));
            }
            Ok(report)
        }
        "strong" => {
            let out = alg.is_strongly_graded();
            let mut report = CheckReport::new(check, out.strong);
            if let Some((s, t, missed)) = out.witness {
                report = report.with_witness(json!({
                    "pair": [alg.category().name(s), alg.category().name(t)],
                    "missed": crate::json::element_to_json(alg, &missed),
                }));
            }
            if let Some(product) = &built.product {
                let (criterion, pair) = product.system.strong_grading_criterion();
                report = report.with_dim("cocycle_criterion", criterion);
                if criterion != out.strong {
                    report.result = false;
                    report = report.with_note(format!(
                        "cocycle left-inverse criterion disagrees with the component check at {pair:?}"
                    ));
                }
            }
            Ok(report)
        }
        "unit-in-R0" => Ok(CheckReport::new(check, alg.unit_in_principal_component())),
        "nondeg-right" | "nondeg-left" => {
            let side = if check == "nondeg-right" {
                Side::Right
            } else {
                Side::Left
            };
            let out = analysis::nondegeneracy(alg, side);
            let mut report = CheckReport::new(check, out.nondegenerate);
            if let Some((s, w)) = out.witness {
                report = report.with_witness(json!({
                    "isomorphism": alg.category().name(s),
                    "annihilated": crate::json::element_to_json(alg, &w),
                }));
            }
            if out.only_identity_isomorphisms {
                report = report.with_note("category has no non-identity isomorphisms");
            }
            Ok(report)
        }
        "commutant-R0" => {
            let c = analysis::commutant_of_principal(alg);
            let unit_in_r0 = alg.unit_in_principal_component();
            let mut ok = c.graded;
            let mut report = CheckReport::new(check, true).with_dim("dim", c.space.dim());
            for (s, part) in &c.components {
                let formula = analysis::commutant_component_formula(alg, *s);
                if &formula != part {
                    ok = false;
                    report = report.with_note(format!(
                        "componentwise formula mismatch at {}",
                        alg.category().name(*s)
                    ));
                }
                let g = alg.category();
                if unit_in_r0 && g.cod(*s) != g.dom(*s) && part.dim() != 0 {
                    ok = false;
                    report = report.with_note(format!(
                        "component {} should vanish when 1 lies in R0",
                        g.name(*s)
                    ));
                }
                report = report.with_dim(format!("dim_{}", g.name(*s)), part.dim());
            }
            report.result = ok;
            Ok(report)
        }
        "center" => {
            let z = analysis::center(alg);
            let ok = z.contains(&alg.one_dense());
            Ok(CheckReport::new(check, ok).with_dim("dim", z.dim()))
        }
        "commutant-ZR0" => {
            let c = analysis::commutant_of_center_of_principal(alg);
            let c0 = analysis::commutant_of_principal(alg).space;
            let z0 = analysis::center_of_principal(alg);
            let ok = c.contains_subspace(&c0) && c.contains_subspace(&z0);
            Ok(CheckReport::new(check, ok)
                .with_dim("dim", c.dim())
                .with_dim("dim_ZR0", z0.dim()))
        }
        "iip" => {
            let c = analysis::commutant_of_center_of_principal(alg);
            let out = analysis::ideal_intersection_property(alg, &c, opts)?;
            let mut report = CheckReport::new(check, out.holds)
                .with_dim("subring_dim", c.dim())
                .with_dim("points", out.points_checked as u64);
            if !out.exhaustive {
                report = report.with_note("sampled mode: no counterexample found is not a proof");
            }
            if let Some(w) = out.witness {
                report = report.with_witness(json!({
                    "generator": crate::json::element_to_json(alg, &w.generator),
                    "ideal_dim": w.ideal.dim(),
                    "intersection_dim": w.intersection_dim,
                }));
            }
            Ok(report)
        }
        "maxcomm" => {
            let principal = alg.principal_component();
            let out = analysis::is_maximal_commutative(alg, &principal)?;
            Ok(CheckReport::new(check, out).with_dim("dim_R0", principal.dim()))
        }
        "theorem3" => {
            let out = analysis::check_theorem_3(alg, opts)?;
            let mut report = CheckReport::new(check, out.holds)
                .with_dim("commutant_dim", out.commutant_dim)
                .with_dim("nondeg_right", out.nondeg_right.nondegenerate)
                .with_dim("nondeg_left", out.nondeg_left.nondegenerate);
            if !out.applicable {
                report = report.with_note("not groupoid-graded; the implication is not claimed");
            } else if out.iip.is_none() {
                report = report.with_note("neither side nondegenerate; hypothesis not met");
            }
            if let Some(iip) = out.iip {
                report = report.with_dim("points", iip.points_checked as u64);
                if let Some(w) = iip.witness {
                    report = report.with_witness(json!({
                        "generator": crate::json::element_to_json(alg, &w.generator),
                        "ideal_dim": w.ideal.dim(),
                    }));
                }
            }
            Ok(report)
        }
        "theorem4" => {
            let product = built.product.as_ref().ok_or_else(|| {
                Error::BadParams("theorem4 needs a crossed-product catalog entry".into())
            })?;
            let out = analysis::check_theorem_4(product, opts)?;
            let mut report = CheckReport::new(check, out.equivalent)
                .with_dim("maximal_commutative", out.maximal_commutative)
                .with_dim("iip_principal", out.iip.holds)
                .with_dim("points", out.iip.points_checked as u64);
            if let Some(w) = out.constructed_witness {
                report = report.with_witness(json!({
                    "generator": crate::json::element_to_json(alg, &w.generator),
                    "ideal_dim": w.ideal.dim(),
                    "intersection_with_principal": w.intersection_dim,
                }));
            }
            Ok(report)
        }
        other => Err(Error::BadParams(format!("unknown check {other}"))),
    })
}

/// Expected outcomes for one built instance. Booleans compare against the
/// report result; dims compare against a named entry of the report's dims.
#[derive(Default, Clone, Debug)]
pub struct Expectations {
    pub bools: Vec<(&'static str, bool, &'static str)>,
    pub dims: Vec<(&'static str, String, usize, &'static str)>,
}

impl Expectations {
    fn expect(mut self, check: &'static str, value: bool, tag: &'static str) -> Self {
        self.bools.push((check, value, tag));
        self
    }

    fn dim(
        mut self,
        check: &'static str,
        key: impl Into<String>,
        value: usize,
        tag: &'static str,
    ) -> Self {
        self.dims.push((check, key.into(), value, tag));
        self
    }

    pub fn checks(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for name in CHECK_NAMES {
            if self.bools.iter().any(|(c, _, _)| *c == name)
                || self.dims.iter().any(|(c, _, _, _)| *c == name)
            {
                out.push(name);
            }
        }
        out
    }
}

/// Exhaustive search is scheduled when the projective point count is modest;
/// the bound keeps a full verify-all run fast at any field.
fn iip_feasible(ring: CoefficientRing, dim: usize, budget: u64) -> bool {
    match ring {
        CoefficientRing::PrimeField(p) => {
            match analysis::projective_point_count(p, dim, budget as u128) {
                Some(count) => count <= budget as u128 && (p == 2 || count <= 10_000),
                None => false,
            }
        }
        _ => false,
    }
}

pub fn expectations(built: &Built, opts: &IipOptions) -> Expectations {
    let alg = &built.algebra;
    let ring = alg.ring();
    let field = ring.is_field();
    let prime = matches!(ring, CoefficientRing::PrimeField(_));
    let searchable = iip_feasible(ring, alg.dim(), opts.budget);
    let mut e = Expectations::default();
    // common to every entry: the construction is a valid graded algebra and
    // the commutant decomposition matches the componentwise formula
    e = e
        .expect("grading", true, "[IMMEDIATE: construction]")
        .expect("commutant-R0", true, "[ORACLE: componentwise commutant formula]")
        .expect("unit-in-R0", true, "[LITERATURE: units of cancellable/crossed-product gradings lie in R0]");
    if field {
        e = e.expect("commutant-ZR0", true, "[IMMEDIATE: commutant monotonicity]");
    }
    match built.entry.as_str() {
        "twisted-group" => {
            let strong = built
                .product
                .as_ref()
                .map(|p| p.system.strong_grading_criterion().0)
                .unwrap_or(true);
            // strongly graded iff the twist is a unit  [LITERATURE: cocycle left-inverse criterion]
            e = e.expect("strong", strong, "[LITERATURE: left-invertible cocycle values]");
            // crossed product with non-zero-divisor cocycle  [LITERATURE: crystalline nondegeneracy]
            e = e
                .expect("nondeg-right", true, "[LITERATURE: non-zero-divisor cocycle]")
                .expect("nondeg-left", true, "[LITERATURE: non-zero-divisor cocycle]");
            // Z_n twisted algebras here are commutative: center and the
            // commutant of R_0 are everything  [ORACLE: symmetric cocycle]
            e = e
                .dim("center", "dim", alg.dim(), "[ORACLE: commutative algebra]")
                .dim("commutant-R0", "dim", alg.dim(), "[ORACLE: commutative algebra]");
            if searchable {
                e = e
                    .expect("iip", true, "[LITERATURE: commutant-of-center theorem]")
                    .expect("theorem3", true, "[LITERATURE: commutant-of-center theorem]");
            }
        }
        "pair-groupoid-matrix" | "twisted-pair-groupoid" => {
            let n = (1..=alg.dim()).find(|k| k * k == alg.dim()).unwrap_or(1);
            e = e
                .expect("strong", true, "[LITERATURE: matrix rings are strongly graded]")
                .expect("nondeg-right", true, "[LITERATURE: strong implies nondegenerate]")
                .expect("nondeg-left", true, "[LITERATURE: strong implies nondegenerate]")
                .dim("center", "dim", 1, "[IMMEDIATE: scalar matrices]")
                .dim("commutant-R0", "dim", n, "[ORACLE: diagonal is its own commutant]");
            if field {
                e = e.expect("maxcomm", true, "[ORACLE: diagonal is maximal commutative]");
            }
            if searchable {
                e = e
                    .expect("iip", true, "[IMMEDIATE: matrix rings are simple]")
                    .expect("theorem3", true, "[LITERATURE: commutant-of-center theorem]");
                if built.entry == "pair-groupoid-matrix" {
                    e = e.expect("theorem4", true, "[LITERATURE: skew groupoid equivalence]");
                }
            }
        }
        "quiver" => {
            e = e
                .expect("strong", true, "[ORACLE: path products span every component]")
                .expect("nondeg-right", true, "[IMMEDIATE: only identity isomorphisms]")
                .expect("nondeg-left", true, "[IMMEDIATE: only identity isomorphisms]")
                .dim("center", "dim", 1, "[ORACLE: only multiples of 1 are central]")
                .expect("maxcomm", true, "[ORACLE: vertex span is its own commutant]")
                .expect("theorem3", true, "[IMMEDIATE: non-groupoid, nothing claimed]");
            if searchable {
                // the commutant of the center of R0 does NOT meet the arrow
                // ideal: the groupoid hypothesis matters
                e = e.expect("iip", false, "[ORACLE: the arrow ideal misses the vertex span]");
            }
        }
        "dade-m3" => {
            e = e
                .expect("strong", true, "[LITERATURE: the 5+4 grading of M_3 is strong]")
                .expect("nondeg-right", true, "[LITERATURE: strong implies nondegenerate]")
                .expect("nondeg-left", true, "[LITERATURE: strong implies nondegenerate]")
                .dim("grading", "dim", 9, "[IMMEDIATE: 3x3 matrix units]")
                .dim("grading", "dim_0", 5, "[LITERATURE: dim R_0 = 5]")
                .dim("grading", "dim_1", 4, "[LITERATURE: dim R_1 = 4]")
                .dim("center", "dim", 1, "[ORACLE: full matrix algebra]")
                .dim("commutant-R0", "dim", 2, "[ORACLE: scalars of the two diagonal blocks]");
            if searchable {
                e = e
                    .expect("iip", true, "[IMMEDIATE: M_3 is simple]")
                    .expect("theorem3", true, "[LITERATURE: commutant-of-center theorem]");
            }
        }
        "thin-groupoid-13dim" => {
            e = e
                .expect("strong", true, "[LITERATURE: all component products verified]")
                .expect("nondeg-right", true, "[LITERATURE: strong implies nondegenerate]")
                .expect("nondeg-left", true, "[LITERATURE: strong implies nondegenerate]")
                .dim("grading", "dim", 13, "[LITERATURE: 13-dimensional subalgebra]")
                .dim("grading", "dim_e", 2, "[LITERATURE: R_e spanned by two units]")
                .dim("grading", "dim_f", 5, "[LITERATURE: dim R_f = 5]")
                .dim("grading", "dim_s", 3, "[LITERATURE: dim R_s = 3]")
                .dim("grading", "dim_t", 3, "[LITERATURE: dim R_t = 3]")
                .dim("center", "dim", 2, "[ORACLE: block scalars e11+e22 and e33+e44+e55]")
                .dim("commutant-R0", "dim", 4, "[ORACLE: center of R0]")
                .dim("commutant-ZR0", "dim", 7, "[ORACLE: commutant of Z(R0) is R0]");
            if searchable {
                e = e.expect("iip", true, "[LITERATURE: commutant-of-center theorem]").expect(
                    "theorem3",
                    true,
                    "[LITERATURE: commutant-of-center theorem]",
                );
            }
        }
        "z2-onesided" => {
            e = e
                .expect("strong", false, "[ORACLE: R_1 R_1 = 0]")
                .expect("nondeg-right", true, "[LITERATURE: x R_1 is nonzero for nonzero x in R_0]")
                .expect("nondeg-left", false, "[LITERATURE: R_1 x = 0]")
                .dim("grading", "dim", 4, "[LITERATURE: basis 1, x, u, xu]")
                .dim("grading", "dim_0", 2, "[LITERATURE: R_0 = K[x]/(x^2)]")
                .dim("grading", "dim_1", 2, "[LITERATURE: R_1 = R_0 u]")
                .dim("center", "dim", 2, "[ORACLE: span{1, xu}]")
                .dim("commutant-R0", "dim", 3, "[ORACLE: span{1, x, xu} by brute force]")
                .dim("commutant-ZR0", "dim", 3, "[ORACLE: equals the commutant of R_0]")
                .expect("maxcomm", false, "[ORACLE: xu commutes with R_0]");
            if searchable {
                e = e
                    .expect("iip", true, "[ORACLE: every principal ideal meets span{1,x,xu}]")
                    .expect("theorem3", true, "[LITERATURE: right nondegeneracy suffices]");
            }
        }
        "pi-twisted-m3" => {
            e = e
                .expect("strong", false, "[LITERATURE: R_1 R_1 = pi R_0 is a proper sublattice]")
                .expect("nondeg-right", true, "[LITERATURE: x R_1 contains pi-scaled units]")
                .expect("nondeg-left", true, "[ORACLE: symmetric computation]")
                .dim("grading", "dim", 9, "[IMMEDIATE: 3x3 matrix units]")
                .dim("grading", "dim_0", 5, "[LITERATURE: Dade decomposition]")
                .dim("grading", "dim_1", 4, "[LITERATURE: Dade decomposition]")
                .dim("center", "dim", 1, "[ORACLE: only scalar diagonals commute]")
                .dim("commutant-R0", "dim", 2, "[ORACLE: block scalars]");
        }
        "skew-group" => {
            e = e
                .expect("strong", true, "[IMMEDIATE: trivial cocycle]")
                .expect("nondeg-right", true, "[LITERATURE: strong implies nondegenerate]")
                .expect("nondeg-left", true, "[LITERATURE: strong implies nondegenerate]");
            let trivial = built.label.contains("action=trivial");
            let n_one = built.label.contains("n=1");
            if field && prime {
                // the principal component is commutative for both actions
                let maxcomm = !trivial || n_one;
                e = e.expect(
                    "maxcomm",
                    maxcomm,
                    if maxcomm {
                        "[ORACLE: only 0 commutes with the shifted idempotents]"
                    } else {
                        "[ORACLE: u_g commutes with everything under the trivial action]"
                    },
                );
                if searchable {
                    e = e
                        .expect("theorem3", true, "[LITERATURE: commutant-of-center theorem]")
                        .expect("iip", true, "[LITERATURE: commutant-of-center theorem]")
                        .expect("theorem4", true, "[LITERATURE: skew groupoid equivalence]");
                }
            }
        }
        "skew-groupoid" => {
            e = e
                .expect("strong", true, "[IMMEDIATE: trivial cocycle]")
                .expect("nondeg-right", true, "[LITERATURE: strong implies nondegenerate]")
                .expect("nondeg-left", true, "[LITERATURE: strong implies nondegenerate]");
            if searchable {
                e = e
                    .expect("maxcomm", true, "[ORACLE: shifts fix no nonzero idempotent combination]")
                    .expect("theorem3", true, "[LITERATURE: commutant-of-center theorem]")
                    .expect("iip", true, "[LITERATURE: commutant-of-center theorem]")
                    .expect("theorem4", true, "[LITERATURE: skew groupoid equivalence]");
            }
        }
        _ => {}
    }
    e
}

/// One verified instance: reports plus expectation mismatches.
pub struct EntryOutcome {
    pub label: String,
    pub reports: Vec<CheckReport>,
    pub mismatches: Vec<String>,
    pub tags: Vec<(String, String)>,
    pub ok: bool,
}

pub struct VerifyOutcome {
    pub entries: Vec<EntryOutcome>,
    pub ok: bool,
}

/// The roster of instances checked by verify-all at a given field.
pub fn roster(p: u64) -> Vec<(&'static str, Params)> {
    let gf = format!("gf{p}");
    let gf: &str = &gf;
    vec![
        ("twisted-group", Params::from_pairs(&[("ring", gf)])),
        ("twisted-group", Params::from_pairs(&[("ring", "z"), ("twist", "2")])),
        ("pair-groupoid-matrix", Params::from_pairs(&[("ring", gf), ("n", "2")])),
        ("pair-groupoid-matrix", Params::from_pairs(&[("ring", gf), ("n", "3")])),
        ("twisted-pair-groupoid", Params::from_pairs(&[("ring", gf), ("n", "2")])),
        ("quiver", Params::from_pairs(&[("ring", gf), ("chain", "2")])),
        ("dade-m3", Params::from_pairs(&[("ring", "q")])),
        ("dade-m3", Params::from_pairs(&[("ring", gf)])),
        ("thin-groupoid-13dim", Params::from_pairs(&[("ring", gf)])),
        ("z2-onesided", Params::from_pairs(&[("ring", gf)])),
        ("pi-twisted-m3", Params::from_pairs(&[("pi", "2")])),
        ("skew-group", Params::from_pairs(&[("ring", gf), ("n", "2"), ("action", "shift")])),
        ("skew-group", Params::from_pairs(&[("ring", gf), ("n", "2"), ("action", "trivial")])),
        ("skew-group", Params::from_pairs(&[("ring", gf), ("n", "1"), ("action", "trivial")])),
        ("skew-group", Params::from_pairs(&[("ring", gf), ("n", "3"), ("action", "shift")])),
        ("skew-groupoid", Params::from_pairs(&[("ring", gf), ("n", "2"), ("m", "2")])),
    ]
}

/// Corrupts one structure constant so that grading validation must fail;
/// candidates are tried in deterministic order until one produces a
/// violation.
pub fn mutate_structure(alg: &GradedAlgebra) -> Result<GradedAlgebra> {
    let ring = alg.ring();
    let one = ring.one();
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut structure = alg.structure().clone();
                let entry = structure.entry((i, j)).or_default();
                let bumped = entry
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(|| ring.zero())
                    .add(&one);
                if bumped.is_zero() {
                    entry.remove(&k);
                } else {
                    entry.insert(k, bumped);
                }
                if entry.is_empty() {
                    structure.remove(&(i, j));
                }
                let candidate = GradedAlgebra::new(
                    ring,
                    alg.category().clone(),
                    alg.basis_names().to_vec(),
                    (0..n).map(|b| alg.degree_of(b)).collect(),
                    structure,
                    alg.unit().coords,
                )?;
                if !candidate.validate_grading().is_empty() {
                    return Ok(candidate);
                }
            }
        }
    }
    Err(Error::BadInput(
        "no single structure mutation invalidates this algebra".into(),
    ))
}

pub fn verify_entry(built: &Built, opts: &IipOptions) -> Result<EntryOutcome> {
    let exp = expectations(built, opts);
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    let mut tags = Vec::new();
    for check in exp.checks() {
        let report = run_check(built, check, opts)?;
        for (c, want, tag) in &exp.bools {
            if c == &check {
                tags.push((format!("{check} = {want}"), tag.to_string()));
                if report.result != *want {
                    mismatches.push(format!(
                        "{}: {} expected {want}, got {} {}",
                        built.label, check, report.result, tag
                    ));
                }
            }
        }
        for (c, key, want, tag) in &exp.dims {
            if c == &check {
                tags.push((format!("{check}.{key} = {want}"), tag.to_string()));
                let got = report.dims.get(key).and_then(serde_json::Value::as_u64);
                if got != Some(*want as u64) {
                    mismatches.push(format!(
                        "{}: {check}.{key} expected {want}, got {got:?} {tag}",
                        built.label
                    ));
                }
            }
        }
        reports.push(report);
    }
    Ok(EntryOutcome {
        label: built.label.clone(),
        ok: mismatches.is_empty(),
        reports,
        mismatches,
        tags,
    })
}

pub fn verify_all(p: u64, opts: &IipOptions, mutate: bool) -> Result<VerifyOutcome> {
    let mut entries = Vec::new();
    let mut ok = true;
    for (name, params) in roster(p) {
        let mut built = build(name, &params)?;
        if mutate {
            // corrupt one structure constant; the grading expectation must
            // then report a mismatch
            built.algebra = mutate_structure(&built.algebra)?;
            built.product = None;
            let report = run_check(&built, "grading", opts)?;
            let mismatches = if report.result {
                vec![format!("{}: mutated grading unexpectedly valid", built.label)]
            } else {
                vec![format!(
                    "{}: grading expected true, got false (structure constant corrupted)",
                    built.label
                )]
            };
            entries.push(EntryOutcome {
                label: built.label.clone(),
                ok: false,
                reports: vec![report],
                mismatches,
                tags: vec![("grading".into(), "[IMMEDIATE: mutation test]".into())],
            });
            ok = false;
            continue;
        }
        let outcome = verify_entry(&built, opts)?;
        ok &= outcome.ok;
        entries.push(outcome);
    }
    Ok(VerifyOutcome { entries, ok })
}
