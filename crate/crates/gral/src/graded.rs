//! Finite-dimensional algebras presented by structure constants, with a
//! degree map from the (homogeneous) basis into a finite category.
//!
//! The basis is required to be homogeneous: each basis vector carries a
//! single degree. Every graded ring admits such a basis componentwise, so
//! this is a representation choice, not a restriction; it makes component
//! extraction trivial and turns the G-filter axiom into a statement about
//! structure-constant support.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::category::{FiniteCategory, MorphismId};
use crate::linalg::{self, Subspace};
use crate::scalar::{CoefficientRing, Scalar};
use crate::{Error, Result};

/// Sparse vector over the basis; zero coordinates are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, ring: CoefficientRing, n: usize) -> Vec<Scalar> {
    let mut out = linalg::zero_vec(ring, n);
    for (&i, s) in v {
        out[i] = s.clone();
    }
    out
}

pub(crate) fn sparse_add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (&k, s) in v {
        let term = s.mul(c);
        match acc.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !term.is_zero() {
                    e.insert(term);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&term);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

/// Product of two sparse vectors under a structure-constant table.
pub fn sparse_mul(
    structure: &BTreeMap<(usize, usize), SparseVec>,
    a: &SparseVec,
    b: &SparseVec,
) -> SparseVec {
    let mut acc = SparseVec::new();
    for (&i, ai) in a {
        for (&j, bj) in b {
            if let Some(v) = structure.get(&(i, j)) {
                sparse_add_scaled(&mut acc, v, &ai.mul(bj));
            }
        }
    }
    acc
}

/// An element of a structure-constant algebra, as sparse coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub coords: SparseVec,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            coords: SparseVec::new(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut coords = SparseVec::new();
        for (i, s) in pairs {
            if !s.is_zero() {
                coords.insert(i, s);
            }
        }
        Element { coords }
    }

    pub fn basis(i: usize, ring: CoefficientRing) -> Self {
        Element::from_pairs([(i, ring.one())])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingViolation {
    ZeroUnit,
    UnitNotIdentity { basis: String },
    NotAssociative { i: String, j: String, k: String },
    /// product of composable degrees lands outside the target component
    FilterSupport { i: String, j: String, bad: String },
    /// degrees not composable but the product is nonzero
    FilterZero { i: String, j: String },
}

impl std::fmt::Display for GradingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GradingViolation::ZeroUnit => write!(f, "unit vector is zero"),
            GradingViolation::UnitNotIdentity { basis } => {
                write!(f, "unit is not an identity on {basis}")
            }
            GradingViolation::NotAssociative { i, j, k } => {
                write!(f, "({i}*{j})*{k} != {i}*({j}*{k})")
            }
            GradingViolation::FilterSupport { i, j, bad } => write!(
                f,
                "product {i}*{j} has support on {bad}, outside its degree component"
            ),
            GradingViolation::FilterZero { i, j } => write!(
                f,
                "degrees of {i} and {j} are not composable but {i}*{j} != 0"
            ),
        }
    }
}

/// Outcome of the strong-grading test.
#[derive(Clone, Debug)]
pub struct StrongGrading {
    pub strong: bool,
    /// on failure: a composable pair (s,t) and a vector of R_{st} missed by
    /// the span of R_s R_t
    pub witness: Option<(MorphismId, MorphismId, Element)>,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    ring: CoefficientRing,
    category: FiniteCategory,
    basis: Vec<String>,
    degree: Vec<MorphismId>,
    structure: BTreeMap<(usize, usize), SparseVec>,
    unit: SparseVec,
}

impl GradedAlgebra {
    /// Shape checks only (index bounds, ring of every scalar, homogeneous
    /// degree map); the grading axioms are checked by `validate_grading`.
    pub fn new(
        ring: CoefficientRing,
        category: FiniteCategory,
        basis: Vec<String>,
        degree: Vec<MorphismId>,
        structure: BTreeMap<(usize, usize), SparseVec>,
        unit: SparseVec,
    ) -> Result<Self> {
        let n = basis.len();
        if degree.len() != n {
            return Err(Error::BadInput("degree map must cover the basis".into()));
        }
        let mut names: Vec<&String> = basis.iter().collect();
        names.sort();
        names.dedup();
        if names.len() != n {
            return Err(Error::BadInput("duplicate basis id".into()));
        }
        for d in &degree {
            if d.0 >= category.morphism_count() {
                return Err(Error::UnknownMorphism(format!("degree index {}", d.0)));
            }
        }
        let mut canon_structure = BTreeMap::new();
        for (&(i, j), v) in &structure {
            if i >= n || j >= n {
                return Err(Error::BadInput(format!("structure index ({i},{j})")));
            }
            let mut cv = SparseVec::new();
            for (&k, s) in v {
                if k >= n {
                    return Err(Error::BadInput(format!("structure target index {k}")));
                }
                if s.ring() != ring {
                    return Err(Error::RingMismatch(s.ring(), ring));
                }
                if !s.is_zero() {
                    cv.insert(k, s.clone());
                }
            }
            if !cv.is_empty() {
                canon_structure.insert((i, j), cv);
            }
        }
        let mut canon_unit = SparseVec::new();
        for (&k, s) in &unit {
            if k >= n {
                return Err(Error::BadInput(format!("unit index {k}")));
            }
            if s.ring() != ring {
                return Err(Error::RingMismatch(s.ring(), ring));
            }
            if !s.is_zero() {
                canon_unit.insert(k, s.clone());
            }
        }
        Ok(GradedAlgebra {
            ring,
            category,
            basis,
            degree,
            structure: canon_structure,
            unit: canon_unit,
        })
    }

    /// Runs `validate_grading` and fails on any violation.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate_grading();
        if report.is_empty() {
            Ok(self)
        } else {
            Err(Error::BadInput(format!(
                "grading invalid: {}",
                report
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            )))
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn degree_of(&self, basis: usize) -> MorphismId {
        self.degree[basis]
    }

    pub fn unit(&self) -> Element {
        Element {
            coords: self.unit.clone(),
        }
    }

    pub fn structure(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.structure
    }

    pub fn one_dense(&self) -> Vec<Scalar> {
        sparse_to_dense(&self.unit, self.ring, self.dim())
    }

    /// Basis indices of the degree-s component.
    pub fn component_indices(&self, s: MorphismId) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree[i] == s).collect()
    }

    /// Basis indices of the principal component (identity degrees).
    pub fn principal_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.category.is_identity(self.degree[i]))
            .collect()
    }

    pub fn component_subspace(&self, s: MorphismId) -> Result<Subspace> {
        if s.0 >= self.category.morphism_count() {
            return Err(Error::UnknownMorphism(format!("index {}", s.0)));
        }
        Ok(Subspace::coordinate(
            self.ring,
            self.dim(),
            &self.component_indices(s),
        ))
    }

    pub fn principal_component(&self) -> Subspace {
        Subspace::coordinate(self.ring, self.dim(), &self.principal_indices())
    }

    pub fn element_from_dense(&self, v: &[Scalar]) -> Element {
        Element {
            coords: sparse_from_dense(v),
        }
    }

    pub fn dense(&self, e: &Element) -> Vec<Scalar> {
        sparse_to_dense(&e.coords, self.ring, self.dim())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut coords = a.coords.clone();
        sparse_add_scaled(&mut coords, &b.coords, &self.ring.one());
        Element { coords }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        let mut coords = a.coords.clone();
        sparse_add_scaled(&mut coords, &b.coords, &self.ring.one().neg());
        Element { coords }
    }

    pub fn scale(&self, a: &Element, c: &Scalar) -> Element {
        let mut coords = SparseVec::new();
        sparse_add_scaled(&mut coords, &a.coords, c);
        Element { coords }
    }

    /// Bilinear extension of the structure table.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut acc = SparseVec::new();
        for (&i, ai) in &a.coords {
            for (&j, bj) in &b.coords {
                if let Some(v) = self.structure.get(&(i, j)) {
                    sparse_add_scaled(&mut acc, v, &ai.mul(bj));
                }
            }
        }
        Element { coords: acc }
    }

    /// v * e_j on dense coordinates; the saturation workhorse.
    pub fn mul_dense_by_basis(&self, v: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = linalg::zero_vec(self.ring, self.dim());
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            if let Some(prod) = self.structure.get(&(i, j)) {
                for (&k, c) in prod {
                    out[k] = out[k].add(&c.mul(vi));
                }
            }
        }
        out
    }

    /// e_i * v on dense coordinates.
    pub fn mul_basis_by_dense(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = linalg::zero_vec(self.ring, self.dim());
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            if let Some(prod) = self.structure.get(&(i, j)) {
                for (&k, c) in prod {
                    out[k] = out[k].add(&c.mul(vj));
                }
            }
        }
        out
    }

    pub fn mul_dense(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = linalg::zero_vec(self.ring, self.dim());
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                if let Some(prod) = self.structure.get(&(i, j)) {
                    let c = ai.mul(bj);
                    for (&k, sk) in prod {
                        out[k] = out[k].add(&sk.mul(&c));
                    }
                }
            }
        }
        out
    }

    /// Splits an element into its homogeneous parts; zero parts are omitted.
    pub fn homogeneous_components(&self, a: &Element) -> BTreeMap<MorphismId, Element> {
        let mut out: BTreeMap<MorphismId, Element> = BTreeMap::new();
        for (&i, s) in &a.coords {
            out.entry(self.degree[i])
                .or_insert_with(Element::zero)
                .coords
                .insert(i, s.clone());
        }
        out
    }

    /// Matrix of left multiplication by `x` on basis coordinates.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> linalg::Mat {
        let n = self.dim();
        let mut m = linalg::Mat::zero(self.ring, n, n);
        for j in 0..n {
            let mut col = linalg::zero_vec(self.ring, n);
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                if let Some(prod) = self.structure.get(&(i, j)) {
                    for (&k, c) in prod {
                        col[k] = col[k].add(&c.mul(xi));
                    }
                }
            }
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Matrix of right multiplication by `x` on basis coordinates: column i
    /// is e_i * x.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> linalg::Mat {
        let n = self.dim();
        let mut m = linalg::Mat::zero(self.ring, n, n);
        for i in 0..n {
            let v = self.mul_basis_by_dense(i, x);
            for (k, val) in v.into_iter().enumerate() {
                m.set(k, i, val);
            }
        }
        m
    }

    /// Exhaustive grading validation: unit axioms, associativity on all
    /// basis triples, and the G-filter law on structure-constant support.
    pub fn validate_grading(&self) -> Vec<GradingViolation> {
        let mut out = Vec::new();
        let n = self.dim();
        if self.unit.is_empty() {
            out.push(GradingViolation::ZeroUnit);
        }
        let one = self.one_dense();
        for j in 0..n {
            let left = self.mul_dense_by_basis(&one, j);
            let right = self.mul_basis_by_dense(j, &one);
            let mut e = linalg::zero_vec(self.ring, n);
            e[j] = self.ring.one();
            if left != e || right != e {
                out.push(GradingViolation::UnitNotIdentity {
                    basis: self.basis[j].clone(),
                });
            }
        }
        for (&(i, j), prod) in &self.structure {
            let (s, t) = (self.degree[i], self.degree[j]);
            match self.category.compose(s, t) {
                None => out.push(GradingViolation::FilterZero {
                    i: self.basis[i].clone(),
                    j: self.basis[j].clone(),
                }),
                Some(st) => {
                    for &k in prod.keys() {
                        if self.degree[k] != st {
                            out.push(GradingViolation::FilterSupport {
                                i: self.basis[i].clone(),
                                j: self.basis[j].clone(),
                                bad: self.basis[k].clone(),
                            });
                            break;
                        }
                    }
                }
            }
        }
        let assoc: Vec<GradingViolation> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut v = Vec::new();
                for j in 0..n {
                    let ij = self.structure.get(&(i, j)).cloned().unwrap_or_default();
                    let ij_dense = sparse_to_dense(&ij, self.ring, n);
                    for k in 0..n {
                        let left = self.mul_dense_by_basis(&ij_dense, k);
                        let jk = self.structure.get(&(j, k)).cloned().unwrap_or_default();
                        let jk_dense = sparse_to_dense(&jk, self.ring, n);
                        let right = self.mul_basis_by_dense(i, &jk_dense);
                        if left != right {
                            v.push(GradingViolation::NotAssociative {
                                i: self.basis[i].clone(),
                                j: self.basis[j].clone(),
                                k: self.basis[k].clone(),
                            });
                        }
                    }
                }
                v
            })
            .collect();
        out.extend(assoc);
        out
    }

    /// Is the unit supported on identity degrees only?
    pub fn unit_in_principal_component(&self) -> bool {
        self.unit
            .keys()
            .all(|&k| self.category.is_identity(self.degree[k]))
    }

    /// Tests R_s R_t = R_{st} on every composable pair. Over a field this is
    /// a rank computation; over ℤ the product lattice is compared with the
    /// component lattice in Hermite form, which decides lattice equality
    /// exactly.
    pub fn is_strongly_graded(&self) -> StrongGrading {
        for (s, t) in self.category.composable_pairs() {
            let st = self.category.compose(s, t).expect("composable");
            let si = self.component_indices(s);
            let ti = self.component_indices(t);
            let target = self.component_indices(st);
            let mut products = Vec::new();
            for &i in &si {
                for &j in &ti {
                    if let Some(p) = self.structure.get(&(i, j)) {
                        products.push(sparse_to_dense(p, self.ring, self.dim()));
                    }
                }
            }
            let span = Subspace::from_vectors(self.ring, self.dim(), &products);
            for &k in &target {
                let mut e = linalg::zero_vec(self.ring, self.dim());
                e[k] = self.ring.one();
                if !span.contains(&e) {
                    return StrongGrading {
                        strong: false,
                        witness: Some((s, t, Element::basis(k, self.ring))),
                    };
                }
            }
        }
        StrongGrading {
            strong: true,
            witness: None,
        }
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.coords
            .iter()
            .map(|(&i, s)| {
                if s.is_one() {
                    self.basis[i].clone()
                } else {
                    format!("{s}*{}", self.basis[i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
