//! Category crossed products built from crossed systems (component rings,
//! homomorphisms sigma, cocycle alpha), with the skew and twisted
//! specializations.
//!
//! A crossed system must satisfy five axioms:
//!   (1) sigma_e = id on A_e for every object e
//!   (2) alpha(s, d(s)) = 1 in A_{c(s)}
//!   (3) alpha(c(t), t) = 1 in A_{c(t)}
//!   (4) alpha(s,t) alpha(st,r) = sigma_s(alpha(t,r)) alpha(s,tr)
//!   (5) sigma_s(sigma_t(a)) alpha(s,t) = alpha(s,t) sigma_{st}(a)
//! Axiom (5) is verified on a basis of A_{d(t)}, which suffices by
//! bilinearity. Cocycle values are not required to be units: any alpha
//! satisfying (2)-(5) is accepted and downstream analysis decides the
//! properties of the product.

use std::collections::BTreeMap;

use crate::category::FiniteCategory;
use crate::graded::{sparse_mul, sparse_to_dense, GradedAlgebra, SparseVec};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{CoefficientRing, Scalar};
use crate::{Error, Result};

/// A unital associative structure-constant algebra without grading; the
/// component data A_e of a crossed system.
#[derive(Clone, Debug)]
pub struct ComponentAlgebra {
    pub ring: CoefficientRing,
    pub basis: Vec<String>,
    pub structure: BTreeMap<(usize, usize), SparseVec>,
    pub unit: SparseVec,
}

impl ComponentAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The coefficient ring itself as a one-dimensional algebra.
    pub fn ground_field(ring: CoefficientRing) -> Self {
        let one = ring.one();
        ComponentAlgebra {
            ring,
            basis: vec!["1".into()],
            structure: BTreeMap::from([((0, 0), SparseVec::from([(0, one.clone())]))]),
            unit: SparseVec::from([(0, one)]),
        }
    }

    /// The split algebra K^m with componentwise product; basis p1..pm of
    /// orthogonal idempotents.
    pub fn product_of_fields(ring: CoefficientRing, m: usize) -> Self {
        let one = ring.one();
        let basis = (1..=m).map(|i| format!("p{i}")).collect();
        let structure = (0..m)
            .map(|i| ((i, i), SparseVec::from([(i, one.clone())])))
            .collect();
        let unit = (0..m).map(|i| (i, one.clone())).collect();
        ComponentAlgebra {
            ring,
            basis,
            structure,
            unit,
        }
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        sparse_mul(&self.structure, a, b)
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        SparseVec::from([(i, self.ring.one())])
    }

    /// Unital + associative + 1 != 0; error text names the failing triple.
    pub fn validate(&self) -> Result<()> {
        if self.unit.is_empty() {
            return Err(Error::InvalidSystem("component unit is zero".into()));
        }
        let n = self.dim();
        for j in 0..n {
            let e = self.basis_vec(j);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidSystem(format!(
                    "component unit is not an identity on {}",
                    self.basis[j]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ij = self.mul(&self.basis_vec(i), &self.basis_vec(j));
                    let jk = self.mul(&self.basis_vec(j), &self.basis_vec(k));
                    if self.mul(&ij, &self.basis_vec(k)) != self.mul(&self.basis_vec(i), &jk) {
                        return Err(Error::InvalidSystem(format!(
                            "component not associative at ({},{},{})",
                            self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One violated crossed-system axiom, tagged with its equation number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemViolation {
    SigmaNotHomomorphism { s: String, detail: String },
    Eq1 { e: String },
    Eq2 { s: String },
    Eq3 { t: String },
    Eq4 { s: String, t: String, r: String },
    Eq5 { s: String, t: String, basis: String },
}

impl SystemViolation {
    /// Equation number (1..=5) for the five crossed-system axioms; None for
    /// the sigma-homomorphism precondition.
    pub fn equation(&self) -> Option<u8> {
        match self {
            SystemViolation::SigmaNotHomomorphism { .. } => None,
            SystemViolation::Eq1 { .. } => Some(1),
            SystemViolation::Eq2 { .. } => Some(2),
            SystemViolation::Eq3 { .. } => Some(3),
            SystemViolation::Eq4 { .. } => Some(4),
            SystemViolation::Eq5 { .. } => Some(5),
        }
    }
}

impl std::fmt::Display for SystemViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SystemViolation::SigmaNotHomomorphism { s, detail } => {
                write!(f, "sigma_{s} is not a unital ring homomorphism: {detail}")
            }
            SystemViolation::Eq1 { e } => write!(f, "Eq.(1): sigma_{e} is not the identity"),
            SystemViolation::Eq2 { s } => write!(f, "Eq.(2): alpha({s}, d({s})) != 1"),
            SystemViolation::Eq3 { t } => write!(f, "Eq.(3): alpha(c({t}), {t}) != 1"),
            SystemViolation::Eq4 { s, t, r } => write!(f, "Eq.(4) fails at ({s},{t},{r})"),
            SystemViolation::Eq5 { s, t, basis } => {
                write!(f, "Eq.(5) fails at ({s},{t}) on {basis}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrossedSystem {
    ring: CoefficientRing,
    category: FiniteCategory,
    components: Vec<ComponentAlgebra>,
    sigma: Vec<Mat>,
    alpha: BTreeMap<(usize, usize), SparseVec>,
}

impl CrossedSystem {
    /// Shape checks (dimensions, ring of scalars, composability of alpha
    /// keys); the axioms are checked by `validate`.
    pub fn new(
        ring: CoefficientRing,
        category: FiniteCategory,
        components: Vec<ComponentAlgebra>,
        sigma: Vec<Mat>,
        alpha: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self> {
        let category = category.validated()?;
        if components.len() != category.object_count() {
            return Err(Error::InvalidSystem(
                "one component ring per object required".into(),
            ));
        }
        for a in &components {
            if a.ring != ring {
                return Err(Error::RingMismatch(a.ring, ring));
            }
            a.validate()?;
        }
        if sigma.len() != category.morphism_count() {
            return Err(Error::InvalidSystem("one sigma per morphism required".into()));
        }
        for s in category.morphism_ids() {
            let m = &sigma[s.0];
            let (dc, dd) = (
                components[category.cod(s)].dim(),
                components[category.dom(s)].dim(),
            );
            if m.rows != dc || m.cols != dd {
                return Err(Error::InvalidSystem(format!(
                    "sigma_{} must be a {}x{} matrix",
                    category.name(s),
                    dc,
                    dd
                )));
            }
            if m.data.iter().any(|x| x.ring() != ring) {
                return Err(Error::RingMismatch(ring, ring));
            }
        }
        for (&(si, ti), v) in &alpha {
            if si >= category.morphism_count() || ti >= category.morphism_count() {
                return Err(Error::UnknownMorphism(format!("alpha key ({si},{ti})")));
            }
            let (s, t) = (crate::category::MorphismId(si), crate::category::MorphismId(ti));
            if !category.composable(s, t) {
                return Err(Error::InvalidSystem(format!(
                    "alpha({},{}) given for a non-composable pair",
                    category.name(s),
                    category.name(t)
                )));
            }
            let dc = components[category.cod(s)].dim();
            for (&k, x) in v {
                if k >= dc {
                    return Err(Error::InvalidSystem(format!(
                        "alpha({},{}) has component index {k} out of range",
                        category.name(s),
                        category.name(t)
                    )));
                }
                if x.ring() != ring {
                    return Err(Error::RingMismatch(x.ring(), ring));
                }
            }
        }
        Ok(CrossedSystem {
            ring,
            category,
            components,
            sigma,
            alpha,
        })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn components(&self) -> &[ComponentAlgebra] {
        &self.components
    }

    pub fn sigma(&self) -> &[Mat] {
        &self.sigma
    }

    pub fn alpha_entries(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.alpha
    }

    pub fn set_alpha(&mut self, s: usize, t: usize, v: SparseVec) {
        self.alpha.insert((s, t), v);
    }

    pub fn set_sigma(&mut self, s: usize, m: Mat) {
        self.sigma[s] = m;
    }

    /// alpha(s, t); missing entries default to the identity of A_{c(s)}.
    pub fn alpha_of(&self, s: usize, t: usize) -> SparseVec {
        self.alpha.get(&(s, t)).cloned().unwrap_or_else(|| {
            self.components[self.category.cod(crate::category::MorphismId(s))]
                .unit
                .clone()
        })
    }

    pub fn sigma_apply(&self, s: usize, v: &SparseVec) -> SparseVec {
        let src = self.category.dom(crate::category::MorphismId(s));
        let dense = sparse_to_dense(v, self.ring, self.components[src].dim());
        let image = self.sigma[s].apply(&dense, self.ring);
        crate::graded::sparse_from_dense(&image)
    }

    /// Checks the homomorphism precondition for every sigma and Eqs. (1)-(5);
    /// each violation carries the equation number and location.
    pub fn validate(&self) -> Vec<SystemViolation> {
        let mut out = Vec::new();
        let g = &self.category;
        for s in g.morphism_ids() {
            let src = &self.components[g.dom(s)];
            let dst = &self.components[g.cod(s)];
            let apply = |v: &SparseVec| self.sigma_apply(s.0, v);
            if apply(&src.unit) != dst.unit {
                out.push(SystemViolation::SigmaNotHomomorphism {
                    s: g.name(s).into(),
                    detail: "does not preserve the identity".into(),
                });
            }
            'mult: for i in 0..src.dim() {
                for j in 0..src.dim() {
                    let lhs = apply(&src.mul(&src.basis_vec(i), &src.basis_vec(j)));
                    let rhs = dst.mul(&apply(&src.basis_vec(i)), &apply(&src.basis_vec(j)));
                    if lhs != rhs {
                        out.push(SystemViolation::SigmaNotHomomorphism {
                            s: g.name(s).into(),
                            detail: format!(
                                "fails on the product {}*{}",
                                src.basis[i], src.basis[j]
                            ),
                        });
                        break 'mult;
                    }
                }
            }
        }
        for (o, e) in g.identities().into_iter().enumerate() {
            let n = self.components[o].dim();
            if self.sigma[e.0] != Mat::identity(self.ring, n) {
                out.push(SystemViolation::Eq1 {
                    e: g.name(e).into(),
                });
            }
        }
        for s in g.morphism_ids() {
            let d = g.identity_of(g.dom(s));
            if self.alpha_of(s.0, d.0) != self.components[g.cod(s)].unit {
                out.push(SystemViolation::Eq2 {
                    s: g.name(s).into(),
                });
            }
            let c = g.identity_of(g.cod(s));
            if self.alpha_of(c.0, s.0) != self.components[g.cod(s)].unit {
                out.push(SystemViolation::Eq3 {
                    t: g.name(s).into(),
                });
            }
        }
        for (s, t, r) in g.composable_triples() {
            let st = g.compose(s, t).expect("composable");
            let tr = g.compose(t, r).expect("composable");
            let comp = &self.components[g.cod(s)];
            let lhs = comp.mul(&self.alpha_of(s.0, t.0), &self.alpha_of(st.0, r.0));
            let rhs = comp.mul(
                &self.sigma_apply(s.0, &self.alpha_of(t.0, r.0)),
                &self.alpha_of(s.0, tr.0),
            );
            if lhs != rhs {
                out.push(SystemViolation::Eq4 {
                    s: g.name(s).into(),
                    t: g.name(t).into(),
                    r: g.name(r).into(),
                });
            }
        }
        for (s, t) in g.composable_pairs() {
            let st = g.compose(s, t).expect("composable");
            let comp = &self.components[g.cod(s)];
            let a_dt = &self.components[g.dom(t)];
            let alpha = self.alpha_of(s.0, t.0);
            for i in 0..a_dt.dim() {
                let a = a_dt.basis_vec(i);
                let lhs = comp.mul(&self.sigma_apply(s.0, &self.sigma_apply(t.0, &a)), &alpha);
                let rhs = comp.mul(&alpha, &self.sigma_apply(st.0, &a));
                if lhs != rhs {
                    out.push(SystemViolation::Eq5 {
                        s: g.name(s).into(),
                        t: g.name(t).into(),
                        basis: a_dt.basis[i].clone(),
                    });
                }
            }
        }
        out
    }

    /// True iff every alpha(s,t) has a left inverse in A_{c(s)}; the witness
    /// is the first composable pair without one. Agrees with the strong
    /// grading of the built product.
    pub fn strong_grading_criterion(&self) -> (bool, Option<(String, String)>) {
        let g = &self.category;
        for (s, t) in g.composable_pairs() {
            let comp = &self.components[g.cod(s)];
            let alpha = self.alpha_of(s.0, t.0);
            let n = comp.dim();
            // rows of the right-multiplication-by-alpha map: e_i * alpha
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|i| sparse_to_dense(&comp.mul(&comp.basis_vec(i), &alpha), self.ring, n))
                .collect();
            let unit = sparse_to_dense(&comp.unit, self.ring, n);
            let solvable = if self.ring.is_field() {
                let mt = Mat::from_rows(rows).row_vectors();
                // solve x * alpha = 1, i.e. the row span contains the unit
                let span = Subspace::from_vectors(self.ring, n, &mt);
                span.contains(&unit)
            } else {
                let span = Subspace::from_vectors(self.ring, n, &rows);
                span.contains(&unit)
            };
            if !solvable {
                return (false, Some((g.name(s).into(), g.name(t).into())));
            }
        }
        (true, None)
    }
}

/// A crossed product A x_alpha^sigma G as a graded algebra, remembering the
/// system it came from and which morphism and component basis index each
/// product basis vector belongs to.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub algebra: GradedAlgebra,
    /// product basis index -> (morphism index, component basis index)
    pub basis_origin: Vec<(usize, usize)>,
    /// first product basis index of each morphism block
    pub offsets: Vec<usize>,
    pub skew: bool,
    pub system: CrossedSystem,
}

/// Builds the crossed product; the system is validated first and the
/// resulting grading is validated as well (guaranteed by Eq.(4), still
/// checked).
pub fn build_crossed_product(cs: &CrossedSystem) -> Result<CrossedProduct> {
    let violations = cs.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidSystem(
            violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    build_unvalidated(cs, false)
}

fn build_unvalidated(cs: &CrossedSystem, skew: bool) -> Result<CrossedProduct> {
    let g = cs.category();
    let ring = cs.ring();
    let mut basis = Vec::new();
    let mut degree = Vec::new();
    let mut basis_origin = Vec::new();
    let mut offsets = Vec::new();
    for s in g.morphism_ids() {
        offsets.push(basis.len());
        let comp = &cs.components()[g.cod(s)];
        for (i, name) in comp.basis.iter().enumerate() {
            basis.push(format!("{name}@{}", g.name(s)));
            degree.push(s);
            basis_origin.push((s.0, i));
        }
    }
    let mut structure: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (s, t) in g.composable_pairs() {
        let st = g.compose(s, t).expect("composable");
        let comp = &cs.components()[g.cod(s)];
        let ct = &cs.components()[g.cod(t)];
        let alpha = cs.alpha_of(s.0, t.0);
        for i in 0..comp.dim() {
            for j in 0..ct.dim() {
                let x = comp.mul(
                    &comp.mul(&comp.basis_vec(i), &cs.sigma_apply(s.0, &ct.basis_vec(j))),
                    &alpha,
                );
                if x.is_empty() {
                    continue;
                }
                let shifted: SparseVec =
                    x.into_iter().map(|(k, c)| (offsets[st.0] + k, c)).collect();
                structure.insert((offsets[s.0] + i, offsets[t.0] + j), shifted);
            }
        }
    }
    let mut unit = SparseVec::new();
    for (o, e) in g.identities().into_iter().enumerate() {
        for (&k, c) in &cs.components()[o].unit {
            unit.insert(offsets[e.0] + k, c.clone());
        }
    }
    let algebra = GradedAlgebra::new(ring, g.clone(), basis, degree, structure, unit)?.validated()?;
    Ok(CrossedProduct {
        algebra,
        basis_origin,
        offsets,
        skew,
        system: cs.clone(),
    })
}

/// Skew category algebra: trivial cocycle, sigma a functor.
pub fn build_skew_category_algebra(
    ring: CoefficientRing,
    category: FiniteCategory,
    components: Vec<ComponentAlgebra>,
    sigma: Vec<Mat>,
) -> Result<CrossedProduct> {
    let cs = CrossedSystem::new(ring, category, components, sigma, BTreeMap::new())?;
    let g = cs.category();
    for (o, e) in g.identities().into_iter().enumerate() {
        if cs.sigma()[e.0] != Mat::identity(ring, cs.components()[o].dim()) {
            return Err(Error::NotAFunctor(format!(
                "sigma_{} is not the identity",
                g.name(e)
            )));
        }
    }
    for (s, t) in g.composable_pairs() {
        let st = g.compose(s, t).expect("composable");
        let composed = cs.sigma()[s.0].compose(&cs.sigma()[t.0], ring);
        if composed != cs.sigma()[st.0] {
            return Err(Error::NotAFunctor(format!(
                "sigma_{} o sigma_{} != sigma_{}",
                g.name(s),
                g.name(t),
                g.name(st)
            )));
        }
    }
    let violations = cs.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidSystem(
            violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    build_unvalidated(&cs, true)
}

/// Permutation matrix sending basis k to basis (k+shift) mod m.
pub fn cyclic_shift_matrix(ring: CoefficientRing, m: usize, shift: usize) -> Mat {
    let mut mat = Mat::zero(ring, m, m);
    for k in 0..m {
        mat.set((k + shift) % m, k, ring.one());
    }
    mat
}
