//! The theorem engine: commutants, centers, nondegeneracy, two-sided ideal
//! closures, the ideal intersection property, maximal commutativity, and
//! injectivity of algebra morphisms.

use std::sync::atomic::{AtomicBool, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::category::MorphismId;
use crate::crossed::CrossedProduct;
use crate::graded::{Element, GradedAlgebra};
use crate::linalg::{self, Mat, Subspace};
use crate::scalar::{CoefficientRing, Scalar};
use crate::{Error, Result};

/// C_R(X): everything commuting with a spanning set of X, computed as the
/// kernel of the stacked commutator maps. Exact over GF(p) and ℚ; over ℤ the
/// commutant is a saturated sublattice, recovered exactly from the ℚ-kernel.
pub fn centralizer(alg: &GradedAlgebra, x: &Subspace) -> Subspace {
    let n = alg.dim();
    let mut stacked: Vec<Vec<Scalar>> = Vec::new();
    for v in x.rows() {
        let left = alg.left_mul_matrix(v);
        let right = alg.right_mul_matrix(v);
        // rows of (R_v - L_v): the kernel is {r : r*v = v*r}
        for k in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(right.at(k, j).sub(left.at(k, j)));
            }
            stacked.push(row);
        }
    }
    if stacked.is_empty() {
        return Subspace::full(alg.ring(), n);
    }
    linalg::kernel(&Mat::from_rows(stacked), alg.ring())
}

/// Z(R) = C_R(R).
pub fn center(alg: &GradedAlgebra) -> Subspace {
    centralizer(alg, &Subspace::full(alg.ring(), alg.dim()))
}

/// Z(R_0): the center of the principal component, inside R.
pub fn center_of_principal(alg: &GradedAlgebra) -> Subspace {
    let principal = alg.principal_component();
    centralizer(alg, &principal).intersect_coordinate(&alg.principal_indices())
}

/// A subspace together with its homogeneous components.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub space: Subspace,
    pub components: Vec<(MorphismId, Subspace)>,
    /// component dimensions sum to the total dimension
    pub graded: bool,
}

pub fn graded_decomposition(alg: &GradedAlgebra, space: Subspace) -> GradedSubspace {
    let mut components = Vec::new();
    let mut total = 0;
    for s in alg.category().morphism_ids() {
        let part = space.intersect_coordinate(&alg.component_indices(s));
        total += part.dim();
        components.push((s, part));
    }
    GradedSubspace {
        graded: total == space.dim(),
        space,
        components,
    }
}

/// C_R(R_0) with its graded decomposition.
pub fn commutant_of_principal(alg: &GradedAlgebra) -> GradedSubspace {
    let c = centralizer(alg, &alg.principal_component());
    graded_decomposition(alg, c)
}

fn basis_vector(ring: CoefficientRing, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = linalg::zero_vec(ring, n);
    v[k] = ring.one();
    v
}

/// The componentwise commutant formula: for c(s) = d(s) the commutant of
/// R_{d(s)} inside R_s, otherwise the two-sided annihilator
/// {r in R_s : R_{c(s)} r = r R_{d(s)} = 0}.
pub fn commutant_component_formula(alg: &GradedAlgebra, s: MorphismId) -> Subspace {
    let comp = alg.component_indices(s);
    let n = alg.dim();
    let ring = alg.ring();
    let g = alg.category();
    let (c_obj, d_obj) = (g.cod(s), g.dom(s));
    if comp.is_empty() {
        return Subspace::empty(ring, n);
    }
    // each block maps the unknown coordinates (inside the component) through
    // one linear condition with values in R
    let mut blocks: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let basis_of = |o: usize| alg.component_indices(g.identity_of(o));
    if c_obj == d_obj {
        for &b in &basis_of(d_obj) {
            let bv = basis_vector(ring, n, b);
            blocks.push(
                comp.iter()
                    .map(|&k| {
                        let e = basis_vector(ring, n, k);
                        let rb = alg.mul_dense(&e, &bv);
                        let br = alg.mul_dense(&bv, &e);
                        rb.iter().zip(&br).map(|(a, b)| a.sub(b)).collect()
                    })
                    .collect(),
            );
        }
    } else {
        for &b in &basis_of(c_obj) {
            blocks.push(
                comp.iter()
                    .map(|&k| alg.mul_basis_by_dense(b, &basis_vector(ring, n, k)))
                    .collect(),
            );
        }
        for &b in &basis_of(d_obj) {
            blocks.push(
                comp.iter()
                    .map(|&k| alg.mul_dense_by_basis(&basis_vector(ring, n, k), b))
                    .collect(),
            );
        }
    }
    let mut constraints: Vec<Vec<Scalar>> = Vec::new();
    for cols in &blocks {
        for row_ix in 0..n {
            constraints.push(cols.iter().map(|c| c[row_ix].clone()).collect());
        }
    }
    if constraints.is_empty() {
        return Subspace::coordinate(ring, n, &comp);
    }
    let ker = linalg::kernel(&Mat::from_rows(constraints), ring);
    // embed the component-coordinate kernel back into ambient coordinates
    let rows: Vec<Vec<Scalar>> = ker
        .rows()
        .iter()
        .map(|k| {
            let mut v = linalg::zero_vec(ring, n);
            for (pos, &amb) in comp.iter().enumerate() {
                v[amb] = k[pos].clone();
            }
            v
        })
        .collect();
    Subspace::from_vectors(ring, n, &rows)
}

/// C_R(Z(R_0)): the commutant of the center of the principal component.
pub fn commutant_of_center_of_principal(alg: &GradedAlgebra) -> Subspace {
    centralizer(alg, &center_of_principal(alg))
}

/// Span of all pairwise products of two subspaces.
pub fn subspace_product(alg: &GradedAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut products = Vec::new();
    for u in a.rows() {
        for v in b.rows() {
            products.push(alg.mul_dense(u, v));
        }
    }
    Subspace::from_vectors(alg.ring(), alg.dim(), &products)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Right,
    Left,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Right => write!(f, "right"),
            Side::Left => write!(f, "left"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NondegeneracyOutcome {
    pub nondegenerate: bool,
    /// on failure: the isomorphism s and a nonzero annihilated element of
    /// the relevant identity component
    pub witness: Option<(MorphismId, Element)>,
    /// all isomorphisms of the grading category are identities, so the
    /// condition is vacuous beyond identity components
    pub only_identity_isomorphisms: bool,
}

/// Right (left) nondegeneracy of the grading: for every isomorphism s there
/// is no nonzero a in R_{c(s)} (resp. R_{d(s)}) with a·R_s = 0 (resp.
/// R_s·a = 0). Over ℤ the kernels go through ℚ, which is exact for kernel
/// triviality.
pub fn nondegeneracy(alg: &GradedAlgebra, side: Side) -> NondegeneracyOutcome {
    let g = alg.category();
    let ring = alg.ring();
    let n = alg.dim();
    let only_identity_isomorphisms = g.has_only_identity_isomorphisms();
    for s in g.isomorphisms() {
        let id_obj = match side {
            Side::Right => g.cod(s),
            Side::Left => g.dom(s),
        };
        let id_comp = alg.component_indices(g.identity_of(id_obj));
        let s_comp = alg.component_indices(s);
        if id_comp.is_empty() {
            continue;
        }
        // unknowns: coordinates of a inside the identity component
        let mut constraints: Vec<Vec<Scalar>> = Vec::new();
        for &b in &s_comp {
            let images: Vec<Vec<Scalar>> = id_comp
                .iter()
                .map(|&k| {
                    let e = basis_vector(ring, n, k);
                    match side {
                        Side::Right => alg.mul_dense_by_basis(&e, b),
                        Side::Left => alg.mul_basis_by_dense(b, &e),
                    }
                })
                .collect();
            for row_ix in 0..n {
                constraints.push(images.iter().map(|im| im[row_ix].clone()).collect());
            }
        }
        let ker = if constraints.is_empty() {
            Subspace::full(ring, id_comp.len())
        } else {
            linalg::kernel(&Mat::from_rows(constraints), ring)
        };
        if ker.dim() > 0 {
            let k = &ker.rows()[0];
            let witness = Element::from_pairs(
                id_comp
                    .iter()
                    .enumerate()
                    .map(|(pos, &amb)| (amb, k[pos].clone())),
            );
            return NondegeneracyOutcome {
                nondegenerate: false,
                witness: Some((s, witness)),
                only_identity_isomorphisms,
            };
        }
    }
    NondegeneracyOutcome {
        nondegenerate: true,
        witness: None,
        only_identity_isomorphisms,
    }
}

/// Smallest subspace containing the generators and closed under left and
/// right multiplication by every basis element; saturation to a fixpoint,
/// processing vectors first-in first-out and basis elements in index order.
pub fn two_sided_ideal(alg: &GradedAlgebra, gens: &[Element]) -> Result<Subspace> {
    if !alg.ring().is_field() {
        return Err(Error::FieldRequired("two-sided ideal saturation"));
    }
    Ok(saturate_ideal(alg, gens, usize::MAX))
}

/// Saturation with an early-exit dimension bound: once the ideal dimension
/// exceeds `stop_dim` the caller's question is already answered and the
/// closure stops growing. `usize::MAX` saturates fully.
fn saturate_ideal(alg: &GradedAlgebra, gens: &[Element], stop_dim: usize) -> Subspace {
    let n = alg.dim();
    let mut sub = Subspace::empty(alg.ring(), n);
    let mut work: std::collections::VecDeque<Vec<Scalar>> = Default::default();
    for g in gens {
        let v = alg.dense(g);
        if sub.insert(v.clone()) {
            work.push_back(v);
        }
    }
    while let Some(v) = work.pop_front() {
        if sub.dim() > stop_dim {
            return sub;
        }
        for j in 0..n {
            let lv = alg.mul_dense_by_basis(&v, j);
            let rv = alg.mul_basis_by_dense(j, &v);
            for w in [lv, rv] {
                let r = sub.reduce(w);
                if !linalg::is_zero_vec(&r) {
                    sub.insert(r.clone());
                    work.push_back(r);
                    if sub.dim() > stop_dim {
                        return sub;
                    }
                }
            }
        }
    }
    sub
}

#[derive(Clone, Debug)]
pub struct IdealWitness {
    pub generator: Element,
    pub ideal: Subspace,
    pub intersection_dim: usize,
}

#[derive(Clone, Debug)]
pub struct IipOutcome {
    pub holds: bool,
    pub witness: Option<IdealWitness>,
    pub points_checked: u128,
    /// exhaustive enumeration of projective points vs random sampling
    pub exhaustive: bool,
    pub subring_contains_unit: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct IipOptions {
    /// maximum number of projective points for exhaustive search
    pub budget: u64,
    /// sample N random elements instead of enumerating
    pub sample: Option<u64>,
    pub seed: u64,
}

impl Default for IipOptions {
    fn default() -> Self {
        IipOptions {
            budget: 1 << 20,
            sample: None,
            seed: 0x5eed,
        }
    }
}

/// Number of projective points of GF(p)^n: (p^n - 1)/(p - 1), or None when
/// it exceeds `cap`.
pub fn projective_point_count(p: u64, n: usize, cap: u128) -> Option<u128> {
    let mut count: u128 = 0;
    let mut power: u128 = 1; // p^l
    for _ in 0..n {
        count = count.checked_add(power)?;
        if count > cap {
            return None;
        }
        power = power.checked_mul(p as u128)?;
    }
    Some(count)
}

/// Decodes a projective point index into a dense coordinate vector with
/// first nonzero coordinate 1.
fn decode_projective_point(mut idx: u128, p: u64, n: usize, ring: CoefficientRing) -> Vec<Scalar> {
    // block l (leading coordinate l) has p^(n-1-l) points
    let mut lead = 0usize;
    loop {
        let block: u128 = (p as u128).pow((n - 1 - lead) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut v = linalg::zero_vec(ring, n);
    v[lead] = ring.one();
    for c in (lead + 1..n).rev() {
        let digit = (idx % p as u128) as i64;
        idx /= p as u128;
        v[c] = ring.from_i64(digit);
    }
    v
}

fn check_subring_closed(alg: &GradedAlgebra, s: &Subspace) -> Result<()> {
    for u in s.rows() {
        for v in s.rows() {
            if !s.contains(&alg.mul_dense(u, v)) {
                return Err(Error::NotASubring(
                    "span is not closed under multiplication".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Does S meet every nonzero two-sided ideal of R nontrivially?
///
/// Exhaustive mode iterates representatives of all nonzero elements up to
/// scalar multiples (projective points), saturates the principal ideal of
/// each, and tests the intersection with S. This decides the property for
/// all ideals: if S ∩ I = 0 for a nonzero ideal I, any nonzero x in I gives
/// a principal ideal ⟨x⟩ ⊆ I with S ∩ ⟨x⟩ = 0, so some projective point
/// witnesses the failure; conversely every ⟨x⟩ is itself an ideal.
///
/// Two exact shortcuts keep the loop fast: saturation stops once
/// dim I + dim S > dim R (then dim(I ∩ S) ≥ dim I + dim S − dim R > 0), and
/// the point loop is data-parallel with early exit once any worker finds a
/// witness. The boolean outcome is deterministic; the reported witness is
/// the first one found by any worker.
pub fn ideal_intersection_property(
    alg: &GradedAlgebra,
    s: &Subspace,
    opts: &IipOptions,
) -> Result<IipOutcome> {
    let ring = alg.ring();
    if !ring.is_field() {
        return Err(Error::FieldRequired("ideal intersection search"));
    }
    if s.ambient() != alg.dim() || s.ring() != ring {
        return Err(Error::AlgebraMismatch(
            "subring does not live in this algebra".into(),
        ));
    }
    check_subring_closed(alg, s)?;
    let subring_contains_unit = s.contains(&alg.one_dense());
    let n = alg.dim();
    if s.dim() == 0 {
        // the zero subring meets no nonzero ideal
        let gen = Element::basis(0, ring);
        let ideal = saturate_ideal(alg, std::slice::from_ref(&gen), usize::MAX);
        return Ok(IipOutcome {
            holds: false,
            witness: Some(IdealWitness {
                generator: gen,
                ideal,
                intersection_dim: 0,
            }),
            points_checked: 0,
            exhaustive: true,
            subring_contains_unit,
        });
    }
    // once an ideal grows past this, it must meet S
    let stop_dim = n - s.dim();
    let check_point = |x: Vec<Scalar>| -> Result<Option<IdealWitness>> {
        let gen = alg.element_from_dense(&x);
        let ideal = saturate_ideal(alg, std::slice::from_ref(&gen), stop_dim);
        if ideal.dim() + s.dim() > n {
            return Ok(None);
        }
        let inter = ideal.intersect(s)?;
        if inter.dim() == 0 {
            Ok(Some(IdealWitness {
                generator: gen,
                ideal,
                intersection_dim: 0,
            }))
        } else {
            Ok(None)
        }
    };
    if let Some(count) = opts.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut checked = 0u128;
        for _ in 0..count {
            let x = random_nonzero_vector(&mut rng, ring, n);
            checked += 1;
            if let Some(w) = check_point(x)? {
                return Ok(IipOutcome {
                    holds: false,
                    witness: Some(w),
                    points_checked: checked,
                    exhaustive: false,
                    subring_contains_unit,
                });
            }
        }
        return Ok(IipOutcome {
            holds: true, // no counterexample found; sampling is not a proof
            witness: None,
            points_checked: checked,
            exhaustive: false,
            subring_contains_unit,
        });
    }
    let p = match ring {
        CoefficientRing::PrimeField(p) => p,
        _ => {
            return Err(Error::BadParams(
                "exhaustive ideal search needs a finite prime field; use sampled mode".into(),
            ))
        }
    };
    let count = projective_point_count(p, n, u128::MAX >> 1).unwrap_or(u128::MAX);
    if count > opts.budget as u128 {
        return Err(Error::TooLarge {
            points: count,
            budget: opts.budget,
        });
    }
    let found = AtomicBool::new(false);
    let witness = (0..count as u64)
        .into_par_iter()
        .find_map_any(|idx| {
            if found.load(Ordering::Relaxed) {
                return None;
            }
            let x = decode_projective_point(idx as u128, p, n, ring);
            match check_point(x) {
                Ok(Some(w)) => {
                    found.store(true, Ordering::Relaxed);
                    Some(Ok(w))
                }
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .transpose()?;
    Ok(IipOutcome {
        holds: witness.is_none(),
        witness,
        points_checked: count,
        exhaustive: true,
        subring_contains_unit,
    })
}

fn random_nonzero_vector(rng: &mut ChaCha8Rng, ring: CoefficientRing, n: usize) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..n)
            .map(|_| match ring {
                CoefficientRing::PrimeField(p) => ring.from_i64(rng.gen_range(0..p) as i64),
                _ => ring.from_i64(rng.gen_range(-9i64..=9)),
            })
            .collect();
        if !linalg::is_zero_vec(&v) {
            return v;
        }
    }
}

/// Is S equal to its own centralizer? Requires S to be a commutative
/// subalgebra containing the unit.
pub fn is_maximal_commutative(alg: &GradedAlgebra, s: &Subspace) -> Result<bool> {
    if !alg.ring().is_field() {
        return Err(Error::FieldRequired("maximal commutativity"));
    }
    check_subring_closed(alg, s)?;
    if !s.contains(&alg.one_dense()) {
        return Err(Error::NotASubring("subring does not contain 1".into()));
    }
    for u in s.rows() {
        for v in s.rows() {
            if alg.mul_dense(u, v) != alg.mul_dense(v, u) {
                let (eu, ev) = (alg.element_from_dense(u), alg.element_from_dense(v));
                return Err(Error::NotCommutative(format!(
                    "{} and {} do not commute",
                    alg.format_element(&eu),
                    alg.format_element(&ev)
                )));
            }
        }
    }
    Ok(centralizer(alg, s) == *s)
}

/// Report for the commutant-of-center theorem: groupoid grading plus a
/// right- or left-nondegenerate grading implies the ideal intersection
/// property for C_R(Z(R_0)).
#[derive(Clone, Debug)]
pub struct CommutantIipReport {
    /// the grading category is a groupoid, so the theorem applies
    pub applicable: bool,
    pub nondeg_right: NondegeneracyOutcome,
    pub nondeg_left: NondegeneracyOutcome,
    pub commutant_dim: usize,
    pub iip: Option<IipOutcome>,
    pub holds: bool,
}

pub fn check_theorem_3(alg: &GradedAlgebra, opts: &IipOptions) -> Result<CommutantIipReport> {
    let applicable = alg.category().is_groupoid();
    let nondeg_right = nondegeneracy(alg, Side::Right);
    let nondeg_left = nondegeneracy(alg, Side::Left);
    let commutant = commutant_of_center_of_principal(alg);
    let commutant_dim = commutant.dim();
    if !applicable || (!nondeg_right.nondegenerate && !nondeg_left.nondegenerate) {
        return Ok(CommutantIipReport {
            applicable,
            nondeg_right,
            nondeg_left,
            commutant_dim,
            iip: None,
            holds: true, // hypothesis not met; nothing claimed
        });
    }
    let iip = ideal_intersection_property(alg, &commutant, opts)?;
    let holds = iip.holds;
    Ok(CommutantIipReport {
        applicable,
        nondeg_right,
        nondeg_left,
        commutant_dim,
        iip: Some(iip),
        holds,
    })
}

/// Equivalence report for skew groupoid algebras with commutative principal
/// component: the principal component is maximal commutative iff it has the
/// ideal intersection property. When maximal commutativity fails, the
/// failing homogeneous commuting element a·u_s yields the explicit ideal
/// ⟨a·u_e − a·u_s⟩ (e = d(s) = c(s)) that misses the principal component.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub maximal_commutative: bool,
    pub iip: IipOutcome,
    pub equivalent: bool,
    pub constructed_witness: Option<IdealWitness>,
}

pub fn check_theorem_4(product: &CrossedProduct, opts: &IipOptions) -> Result<EquivalenceReport> {
    let alg = &product.algebra;
    if !product.skew {
        return Err(Error::BadParams(
            "the equivalence check applies to skew category algebras".into(),
        ));
    }
    if !alg.category().is_groupoid() {
        return Err(Error::BadParams(
            "the equivalence check needs a groupoid grading".into(),
        ));
    }
    let principal = alg.principal_component();
    let maximal_commutative = is_maximal_commutative(alg, &principal)?;
    let iip = ideal_intersection_property(alg, &principal, opts)?;
    let equivalent = maximal_commutative == iip.holds;
    let mut constructed_witness = None;
    if !maximal_commutative {
        let commutant = centralizer(alg, &principal);
        for s in alg.category().morphism_ids() {
            if alg.category().is_identity(s) || alg.category().dom(s) != alg.category().cod(s) {
                continue;
            }
            let part = commutant.intersect_coordinate(&alg.component_indices(s));
            if part.dim() == 0 {
                continue;
            }
            let a_us = &part.rows()[0];
            // the same component coordinates, moved to the identity block
            let e = alg.category().identity_of(alg.category().dom(s));
            let (s_off, e_off) = (product.offsets[s.0], product.offsets[e.0]);
            let mut gen = linalg::zero_vec(alg.ring(), alg.dim());
            for (k, c) in a_us.iter().enumerate() {
                if !c.is_zero() {
                    gen[e_off + (k - s_off)] = c.clone();
                    gen[k] = c.neg();
                }
            }
            let gen = alg.element_from_dense(&gen);
            let ideal = two_sided_ideal(alg, std::slice::from_ref(&gen))?;
            let intersection_dim = ideal.intersect(&principal)?.dim();
            constructed_witness = Some(IdealWitness {
                generator: gen,
                ideal,
                intersection_dim,
            });
            break;
        }
    }
    Ok(EquivalenceReport {
        maximal_commutative,
        iip,
        equivalent,
        constructed_witness,
    })
}

/// A linear map between algebras, claimed to be a unital ring homomorphism;
/// `matrix` has target.dim() rows and source.dim() columns.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub target: GradedAlgebra,
    pub matrix: Mat,
}

impl AlgebraMorphism {
    pub fn identity(alg: &GradedAlgebra) -> Self {
        AlgebraMorphism {
            target: alg.clone(),
            matrix: Mat::identity(alg.ring(), alg.dim()),
        }
    }

    pub fn apply_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v, self.target.ring())
    }

    /// Unit goes to unit and all basis products are preserved.
    pub fn validate(&self, source: &GradedAlgebra) -> Result<()> {
        if source.ring() != self.target.ring() {
            return Err(Error::RingMismatch(source.ring(), self.target.ring()));
        }
        if self.matrix.cols != source.dim() || self.matrix.rows != self.target.dim() {
            return Err(Error::NotAHomomorphism("matrix shape mismatch".into()));
        }
        if self.apply_dense(&source.one_dense()) != self.target.one_dense() {
            return Err(Error::NotAHomomorphism(
                "does not preserve the multiplicative identity".into(),
            ));
        }
        let n = source.dim();
        for i in 0..n {
            let ei = basis_vector(source.ring(), n, i);
            let phi_ei = self.apply_dense(&ei);
            for j in 0..n {
                let prod = source.mul_dense_by_basis(&ei, j);
                let lhs = self.apply_dense(&prod);
                let rhs = self.target.mul_dense(&phi_ei, &self.matrix.column(j));
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(format!(
                        "fails on the product {}*{}",
                        source.basis_names()[i],
                        source.basis_names()[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Injectivity {
    pub full: bool,
    pub restricted: bool,
    pub kernel_dim: usize,
    pub restricted_kernel_dim: usize,
}

/// Injectivity of the morphism on all of R and restricted to S. When S has
/// the ideal intersection property the two answers agree, since the kernel
/// is a two-sided ideal.
pub fn morphism_injectivity(
    source: &GradedAlgebra,
    phi: &AlgebraMorphism,
    s: &Subspace,
) -> Result<Injectivity> {
    phi.validate(source)?;
    if !source.ring().is_field() {
        return Err(Error::FieldRequired("restricted kernel intersection"));
    }
    if s.ambient() != source.dim() || s.ring() != source.ring() {
        return Err(Error::AlgebraMismatch(
            "subring does not live in the source algebra".into(),
        ));
    }
    let ker = linalg::kernel(&phi.matrix, source.ring());
    let restricted_ker = ker.intersect(s)?;
    Ok(Injectivity {
        full: ker.dim() == 0,
        restricted: restricted_ker.dim() == 0,
        kernel_dim: ker.dim(),
        restricted_kernel_dim: restricted_ker.dim(),
    })
}

/// Quotient of the algebra by a two-sided ideal, as a trivially graded
/// algebra, together with the projection morphism. Fields only (the
/// complement basis comes from the echelon pivots).
pub fn quotient_by_ideal(alg: &GradedAlgebra, ideal: &Subspace) -> Result<AlgebraMorphism> {
    let ring = alg.ring();
    if !ring.is_field() {
        return Err(Error::FieldRequired("quotient construction"));
    }
    if ideal.contains(&alg.one_dense()) {
        return Err(Error::BadInput(
            "the ideal contains 1; the quotient is the zero ring".into(),
        ));
    }
    let n = alg.dim();
    for v in ideal.rows() {
        for j in 0..n {
            if !ideal.contains(&alg.mul_dense_by_basis(v, j))
                || !ideal.contains(&alg.mul_basis_by_dense(j, v))
            {
                return Err(Error::BadInput("span is not a two-sided ideal".into()));
            }
        }
    }
    let pivot_set: std::collections::HashSet<usize> = ideal.pivots().iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let m = free.len();
    let project = |v: Vec<Scalar>| -> Vec<Scalar> {
        let r = ideal.reduce(v);
        free.iter().map(|&c| r[c].clone()).collect()
    };
    let basis: Vec<String> = free
        .iter()
        .map(|&c| format!("[{}]", alg.basis_names()[c]))
        .collect();
    let category = crate::category::trivial_category();
    let id = category.identity_of(0);
    let mut structure = std::collections::BTreeMap::new();
    for (a, &ca) in free.iter().enumerate() {
        for (b, &cb) in free.iter().enumerate() {
            let ea = basis_vector(ring, n, ca);
            let prod = project(alg.mul_dense_by_basis(&ea, cb));
            let sparse = crate::graded::sparse_from_dense(&prod);
            if !sparse.is_empty() {
                structure.insert((a, b), sparse);
            }
        }
    }
    let unit = crate::graded::sparse_from_dense(&project(alg.one_dense()));
    let quotient =
        GradedAlgebra::new(ring, category, basis, vec![id; m], structure, unit)?.validated()?;
    let mut matrix = Mat::zero(ring, m, n);
    for j in 0..n {
        let e = basis_vector(ring, n, j);
        for (i, v) in project(e).into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    Ok(AlgebraMorphism {
        target: quotient,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{cyclic_group, pair_groupoid};
    use crate::crossed::{build_skew_category_algebra, cyclic_shift_matrix, ComponentAlgebra};
    use crate::graded::test_algebras::{m2_gf2_trivially_graded, z2_onesided};
    use crate::linalg::Mat;

    fn gf(p: u64) -> CoefficientRing {
        CoefficientRing::PrimeField(p)
    }

    fn skew_group_product(ring: CoefficientRing, n: usize, trivial_action: bool) -> CrossedProduct {
        let g = cyclic_group(n);
        let m = if trivial_action { 1 } else { n };
        let comps = vec![ComponentAlgebra::product_of_fields(ring, m)];
        let sigma: Vec<Mat> = (0..n)
            .map(|k| {
                if trivial_action {
                    Mat::identity(ring, 1)
                } else {
                    cyclic_shift_matrix(ring, m, k % m)
                }
            })
            .collect();
        build_skew_category_algebra(ring, g, comps, sigma).unwrap()
    }

    #[test]
    fn center_of_m2_is_scalars() {
        // brute-force oracle over all 16 elements of M_2(GF(2)); the frozen
        // expectation dim 1 comes from this enumeration
        let alg = m2_gf2_trivially_graded();
        let ring = alg.ring();
        let mut commuting = Vec::new();
        for mask in 0..16u32 {
            let v: Vec<Scalar> = (0..4)
                .map(|i| ring.from_i64(((mask >> i) & 1) as i64))
                .collect();
            let all =
                (0..4).all(|j| alg.mul_dense_by_basis(&v, j) == alg.mul_basis_by_dense(j, &v));
            if all {
                commuting.push(v.clone());
            }
        }
        let brute = Subspace::from_vectors(ring, 4, &commuting);
        let z = center(&alg);
        assert_eq!(z, brute);
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&alg.one_dense()));
    }

    #[test]
    fn commutant_of_principal_in_onesided_example() {
        // brute-force oracle over all 16 elements of the GF(2)-algebra:
        // collect everything commuting with the principal component
        let alg = z2_onesided();
        let ring = alg.ring();
        let x = alg.dense(&Element::basis(1, ring));
        let mut commuting = Vec::new();
        for mask in 0..16u32 {
            let v: Vec<Scalar> = (0..4)
                .map(|i| ring.from_i64(((mask >> i) & 1) as i64))
                .collect();
            if alg.mul_dense(&v, &x) == alg.mul_dense(&x, &v) {
                commuting.push(v);
            }
        }
        let brute = Subspace::from_vectors(ring, 4, &commuting);
        let c = commutant_of_principal(&alg);
        assert_eq!(c.space, brute);
        assert_eq!(c.space.dim(), 3); // span{1, x, xu}
        assert!(c.graded);
        // graded parts: degree-0 part is R_0, degree-1 part is span{xu}
        let g = alg.category();
        let e0 = g.morphism_by_name("0").unwrap();
        let e1 = g.morphism_by_name("1").unwrap();
        let part = |m: MorphismId| {
            c.components
                .iter()
                .find(|(s, _)| *s == m)
                .map(|(_, sub)| sub.clone())
                .unwrap()
        };
        assert_eq!(part(e0).dim(), 2);
        let p1 = part(e1);
        assert_eq!(p1.dim(), 1);
        assert!(p1.contains(&alg.dense(&Element::basis(3, ring))));
    }

    #[test]
    fn commutant_formula_matches_direct_computation() {
        for alg in [z2_onesided(), m2_gf2_trivially_graded()] {
            let direct = commutant_of_principal(&alg);
            for (s, part) in &direct.components {
                let formula = commutant_component_formula(&alg, *s);
                assert_eq!(&formula, part, "component {}", alg.category().name(*s));
            }
        }
    }

    #[test]
    fn commutant_of_center_contains_commutant_and_center() {
        let alg = z2_onesided();
        let c0 = commutant_of_principal(&alg).space;
        let z0 = center_of_principal(&alg);
        let c = commutant_of_center_of_principal(&alg);
        assert!(c.contains_subspace(&c0));
        assert!(c.contains_subspace(&z0));
        assert!(c.contains(&alg.one_dense()));
    }

    #[test]
    fn commutant_of_center_for_trivially_graded_matrix_block() {
        // R_0 is the whole of M_2, Z(R_0) is the scalars, so the commutant
        // of the center is everything
        let alg = m2_gf2_trivially_graded();
        let z0 = center_of_principal(&alg);
        assert_eq!(z0.dim(), 1);
        let c = commutant_of_center_of_principal(&alg);
        assert_eq!(c.dim(), 4);
    }

    #[test]
    fn onesided_example_is_right_but_not_left_nondegenerate() {
        let alg = z2_onesided();
        let right = nondegeneracy(&alg, Side::Right);
        assert!(right.nondegenerate);
        let left = nondegeneracy(&alg, Side::Left);
        assert!(!left.nondegenerate);
        let (s, w) = left.witness.unwrap();
        assert_eq!(alg.category().name(s), "1");
        // the annihilated element is x: R_1 * x = 0 while x * R_1 != 0
        assert_eq!(w, Element::basis(1, alg.ring()));
    }

    #[test]
    fn ideal_saturation_examples() {
        let alg = z2_onesided();
        let ring = alg.ring();
        // <1> is everything
        let whole = two_sided_ideal(&alg, &[Element::basis(0, ring)]).unwrap();
        assert_eq!(whole.dim(), 4);
        // <u>: u*x = 0, x*u = xu, u*u = 0 gives span{u, xu}
        let u_ideal = two_sided_ideal(&alg, &[Element::basis(2, ring)]).unwrap();
        assert_eq!(u_ideal.dim(), 2);
        assert!(u_ideal.contains(&alg.dense(&Element::basis(2, ring))));
        assert!(u_ideal.contains(&alg.dense(&Element::basis(3, ring))));
        // matrix algebras are simple
        let m2 = m2_gf2_trivially_graded();
        let e11 = two_sided_ideal(&m2, &[Element::basis(0, m2.ring())]).unwrap();
        assert_eq!(e11.dim(), 4);
    }

    #[test]
    fn projective_point_enumeration_is_a_bijection() {
        let ring = gf(3);
        let count = projective_point_count(3, 3, u128::MAX).unwrap();
        assert_eq!(count, 13); // (3^3 - 1) / 2
        let mut seen = std::collections::BTreeSet::new();
        for idx in 0..count {
            let v = decode_projective_point(idx, 3, 3, ring);
            let lead = v.iter().position(|x| !x.is_zero()).unwrap();
            assert!(v[lead].is_one(), "first nonzero coordinate is 1");
            let key: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            assert!(seen.insert(key), "points are pairwise distinct");
        }
    }

    #[test]
    fn iip_for_diagonal_of_m2() {
        let alg = m2_gf2_trivially_graded();
        let diag = Subspace::coordinate(alg.ring(), 4, &[0, 3]);
        let out = ideal_intersection_property(&alg, &diag, &IipOptions::default()).unwrap();
        assert!(out.holds);
        assert!(out.exhaustive);
        assert_eq!(out.points_checked, 15);
    }

    #[test]
    fn iip_fails_for_a_direct_factor() {
        // GF(2) x GF(2), S = first factor: the second factor is an ideal
        // missing S
        let ring = gf(2);
        let g = crate::category::trivial_category();
        let id = g.identity_of(0);
        let one = ring.one();
        let structure = std::collections::BTreeMap::from([
            (
                (0usize, 0usize),
                crate::graded::SparseVec::from([(0usize, one.clone())]),
            ),
            ((1, 1), crate::graded::SparseVec::from([(1, one.clone())])),
        ]);
        let alg = GradedAlgebra::new(
            ring,
            g,
            vec!["p1".into(), "p2".into()],
            vec![id, id],
            structure,
            crate::graded::SparseVec::from([(0, one.clone()), (1, one)]),
        )
        .unwrap()
        .validated()
        .unwrap();
        let s = Subspace::coordinate(ring, 2, &[0]);
        let out = ideal_intersection_property(&alg, &s, &IipOptions::default()).unwrap();
        assert!(!out.holds);
        let w = out.witness.unwrap();
        // witness generator is the second idempotent (0,1)
        assert_eq!(w.generator, Element::basis(1, ring));
        assert_eq!(w.intersection_dim, 0);
        assert_eq!(w.ideal.dim(), 1);
    }

    #[test]
    fn subring_from_the_wrong_algebra_is_rejected() {
        let alg = z2_onesided();
        let wrong = Subspace::coordinate(alg.ring(), 7, &[0]);
        assert!(matches!(
            ideal_intersection_property(&alg, &wrong, &IipOptions::default()),
            Err(Error::AlgebraMismatch(_))
        ));
    }

    #[test]
    fn maximal_commutativity_examples() {
        let m2 = m2_gf2_trivially_graded();
        let diag = Subspace::coordinate(m2.ring(), 4, &[0, 3]);
        assert!(is_maximal_commutative(&m2, &diag).unwrap());
        // scalars are not maximal commutative: the centralizer is everything
        let scalars = Subspace::from_vectors(m2.ring(), 4, &[m2.one_dense()]);
        assert!(!is_maximal_commutative(&m2, &scalars).unwrap());
        // non-commutative input is rejected
        let whole = Subspace::full(m2.ring(), 4);
        assert!(matches!(
            is_maximal_commutative(&m2, &whole),
            Err(Error::NotCommutative(_))
        ));
    }

    #[test]
    fn theorem_4_swap_action_both_true() {
        let product = skew_group_product(gf(3), 2, false);
        let report = check_theorem_4(&product, &IipOptions::default()).unwrap();
        assert!(report.maximal_commutative);
        assert!(report.iip.holds);
        assert!(report.equivalent);
        assert_eq!(report.iip.points_checked, (81 - 1) / 2);
    }

    #[test]
    fn theorem_4_trivial_action_both_false_with_witness() {
        let product = skew_group_product(gf(2), 2, true);
        let report = check_theorem_4(&product, &IipOptions::default()).unwrap();
        assert!(!report.maximal_commutative);
        assert!(!report.iip.holds);
        assert!(report.equivalent);
        let w = report.constructed_witness.unwrap();
        // the ideal <u_e - u_g> is one-dimensional and misses A
        assert_eq!(w.ideal.dim(), 1);
        assert_eq!(w.intersection_dim, 0);
        let alg = &product.algebra;
        let dense = alg.dense(&w.generator);
        assert_eq!(dense.iter().filter(|c| !c.is_zero()).count(), 2);
    }

    #[test]
    fn theorem_4_trivial_groupoid_both_true() {
        let product = skew_group_product(gf(2), 1, true);
        let report = check_theorem_4(&product, &IipOptions::default()).unwrap();
        assert!(report.maximal_commutative);
        assert!(report.iip.holds);
        assert!(report.equivalent);
    }

    #[test]
    fn theorem_3_on_onesided_example() {
        let alg = z2_onesided();
        let report = check_theorem_3(&alg, &IipOptions::default()).unwrap();
        assert!(report.applicable);
        assert!(report.nondeg_right.nondegenerate);
        assert!(!report.nondeg_left.nondegenerate);
        assert!(report.holds);
        assert_eq!(report.commutant_dim, 3);
        assert!(report.iip.unwrap().holds);
    }

    #[test]
    fn morphism_injectivity_identity_and_quotient() {
        let alg = z2_onesided();
        let ring = alg.ring();
        let ident = AlgebraMorphism::identity(&alg);
        let c = commutant_of_center_of_principal(&alg);
        let out = morphism_injectivity(&alg, &ident, &c).unwrap();
        assert!(out.full && out.restricted);

        // quotient by <xu> with S = C_R(Z(R_0)): the kernel meets S, so both
        // answers are false, matching the ideal intersection property of S
        let xu_ideal = two_sided_ideal(&alg, &[Element::basis(3, ring)]).unwrap();
        let phi = quotient_by_ideal(&alg, &xu_ideal).unwrap();
        let out = morphism_injectivity(&alg, &phi, &c).unwrap();
        assert!(!out.full);
        assert!(!out.restricted);
        assert_eq!(phi.target.dim(), 3);
    }

    #[test]
    fn quotient_rejects_non_ideals_and_unit_ideals() {
        let alg = m2_gf2_trivially_graded();
        // span{e12} is not a two-sided ideal
        let not_ideal = Subspace::coordinate(alg.ring(), 4, &[1]);
        assert!(quotient_by_ideal(&alg, &not_ideal).is_err());
        let whole = two_sided_ideal(&alg, &[Element::basis(0, alg.ring())]).unwrap();
        assert!(quotient_by_ideal(&alg, &whole).is_err());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        // projection of M_2 onto its diagonal: e12*e21 = e11 but the images
        // multiply to 0
        let alg = m2_gf2_trivially_graded();
        let ring = alg.ring();
        let mut matrix = Mat::zero(ring, 4, 4);
        matrix.set(0, 0, ring.one());
        matrix.set(3, 3, ring.one());
        let phi = AlgebraMorphism {
            target: alg.clone(),
            matrix,
        };
        let err = phi.validate(&alg).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism(_)));
    }

    #[test]
    fn commutant_components_satisfy_filter_law() {
        // gradedness of commutants: C_s C_t inside C_{st} for composable
        // pairs, zero otherwise
        let ring = gf(2);
        let g = pair_groupoid(2);
        let comps = vec![
            ComponentAlgebra::ground_field(ring),
            ComponentAlgebra::ground_field(ring),
        ];
        let sigma = vec![Mat::identity(ring, 1); 4];
        let m2 = build_skew_category_algebra(ring, g, comps, sigma)
            .unwrap()
            .algebra;
        for alg in [z2_onesided(), m2] {
            let c = commutant_of_principal(&alg);
            for (s, cs) in &c.components {
                for (t, ct) in &c.components {
                    let prod = subspace_product(&alg, cs, ct);
                    match alg.category().compose(*s, *t) {
                        Some(st) => {
                            let cst = c
                                .components
                                .iter()
                                .find(|(m, _)| *m == st)
                                .map(|(_, sub)| sub.clone())
                                .unwrap();
                            assert!(cst.contains_subspace(&prod));
                        }
                        None => assert_eq!(prod.dim(), 0),
                    }
                }
            }
        }
    }
}
