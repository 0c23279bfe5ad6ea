//! Finite categories given by explicit composition tables.
//!
//! The composition table is partial: `(s, t)` is defined exactly when
//! `d(s) = c(t)`, and every axiom (composability, domain/codomain laws,
//! identity neutrality, associativity) is exhaustively checkable.

use std::collections::{BTreeMap, HashMap};

use crate::{Error, Result};

/// Opaque handle for a morphism, resolved through its category.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MorphismId(pub usize);

#[derive(Clone, Debug)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    /// compose(s,t) defined although d(s) != c(t)
    NotComposable { s: String, t: String },
    /// d(s) = c(t) but the table has no entry
    MissingComposite { s: String, t: String },
    /// dom(st) != dom(t) or cod(st) != cod(s)
    EndpointMismatch { s: String, t: String, st: String },
    /// identity not neutral on some morphism
    IdentityNotNeutral { e: String, t: String },
    /// (st)r != s(tr)
    NotAssociative { s: String, t: String, r: String },
    /// identity morphism of an object has wrong endpoints
    BadIdentity { object: String },
}

impl std::fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CategoryViolation::NotComposable { s, t } => {
                write!(f, "compose({s},{t}) defined but d({s}) != c({t})")
            }
            CategoryViolation::MissingComposite { s, t } => {
                write!(f, "d({s}) = c({t}) but compose({s},{t}) missing")
            }
            CategoryViolation::EndpointMismatch { s, t, st } => {
                write!(f, "compose({s},{t}) = {st} has wrong endpoints")
            }
            CategoryViolation::IdentityNotNeutral { e, t } => {
                write!(f, "identity {e} not neutral on {t}")
            }
            CategoryViolation::NotAssociative { s, t, r } => {
                write!(f, "({s}*{t})*{r} != {s}*({t}*{r})")
            }
            CategoryViolation::BadIdentity { object } => {
                write!(f, "identity of {object} is not an endomorphism of {object}")
            }
        }
    }
}

impl FiniteCategory {
    /// Builds a category from names; every reference is resolved here and
    /// dangling ids are rejected.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identity: &BTreeMap<String, String>,
        compose: &[(String, String, String)],
    ) -> Result<Self> {
        let obj_ix: HashMap<&str, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.as_str(), i))
            .collect();
        if obj_ix.len() != objects.len() {
            return Err(Error::InvalidCategory("duplicate object id".into()));
        }
        let mut mors = Vec::new();
        let mut mor_ix: HashMap<String, usize> = HashMap::new();
        for (name, dom, cod) in morphisms {
            let d = *obj_ix
                .get(dom.as_str())
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {dom}")))?;
            let c = *obj_ix
                .get(cod.as_str())
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {cod}")))?;
            if mor_ix.insert(name.clone(), mors.len()).is_some() {
                return Err(Error::InvalidCategory(format!("duplicate morphism {name}")));
            }
            mors.push(Morphism { name, dom: d, cod: c });
        }
        let mut ident = vec![usize::MAX; objects.len()];
        for (o, m) in identity {
            let oi = *obj_ix
                .get(o.as_str())
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {o}")))?;
            let mi = *mor_ix
                .get(m.as_str())
                .ok_or_else(|| Error::UnknownMorphism(m.clone()))?;
            ident[oi] = mi;
        }
        if let Some(missing) = ident.iter().position(|&m| m == usize::MAX) {
            return Err(Error::InvalidCategory(format!(
                "object {} has no identity morphism",
                objects[missing]
            )));
        }
        let mut table = HashMap::new();
        for (s, t, st) in compose {
            let si = *mor_ix
                .get(s.as_str())
                .ok_or_else(|| Error::UnknownMorphism(s.clone()))?;
            let ti = *mor_ix
                .get(t.as_str())
                .ok_or_else(|| Error::UnknownMorphism(t.clone()))?;
            let sti = *mor_ix
                .get(st.as_str())
                .ok_or_else(|| Error::UnknownMorphism(st.clone()))?;
            if table.insert((si, ti), sti).is_some() {
                return Err(Error::InvalidCategory(format!(
                    "duplicate table entry ({s},{t})"
                )));
            }
        }
        Ok(FiniteCategory {
            objects,
            morphisms: mors,
            identity: ident,
            compose: table,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorphismId> {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn name(&self, m: MorphismId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn morphism_by_name(&self, name: &str) -> Result<MorphismId> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .map(MorphismId)
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn dom(&self, m: MorphismId) -> usize {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: MorphismId) -> usize {
        self.morphisms[m.0].cod
    }

    pub fn identity_of(&self, object: usize) -> MorphismId {
        MorphismId(self.identity[object])
    }

    pub fn is_identity(&self, m: MorphismId) -> bool {
        self.identity.contains(&m.0)
    }

    /// The identity morphisms, one per object, in object order.
    pub fn identities(&self) -> Vec<MorphismId> {
        self.identity.iter().map(|&i| MorphismId(i)).collect()
    }

    pub fn composable(&self, s: MorphismId, t: MorphismId) -> bool {
        self.dom(s) == self.cod(t)
    }

    /// s after t: defined iff d(s) = c(t).
    pub fn compose(&self, s: MorphismId, t: MorphismId) -> Option<MorphismId> {
        self.compose.get(&(s.0, t.0)).copied().map(MorphismId)
    }

    pub fn composable_pairs(&self) -> Vec<(MorphismId, MorphismId)> {
        let mut out = Vec::new();
        for s in 0..self.morphisms.len() {
            for t in 0..self.morphisms.len() {
                if self.morphisms[s].dom == self.morphisms[t].cod {
                    out.push((MorphismId(s), MorphismId(t)));
                }
            }
        }
        out
    }

    pub fn composable_triples(&self) -> Vec<(MorphismId, MorphismId, MorphismId)> {
        let mut out = Vec::new();
        for (s, t) in self.composable_pairs() {
            for r in self.morphism_ids() {
                if self.composable(t, r) {
                    out.push((s, t, r));
                }
            }
        }
        out
    }

    /// Exhaustive axiom check; the report is empty iff the table presents a
    /// category.
    pub fn validate(&self) -> Vec<CategoryViolation> {
        let mut out = Vec::new();
        let name = |i: usize| self.morphisms[i].name.clone();
        for (o, &e) in self.identity.iter().enumerate() {
            if self.morphisms[e].dom != o || self.morphisms[e].cod != o {
                out.push(CategoryViolation::BadIdentity {
                    object: self.objects[o].clone(),
                });
            }
        }
        for (&(s, t), &st) in &self.compose {
            if self.morphisms[s].dom != self.morphisms[t].cod {
                out.push(CategoryViolation::NotComposable {
                    s: name(s),
                    t: name(t),
                });
                continue;
            }
            if self.morphisms[st].dom != self.morphisms[t].dom
                || self.morphisms[st].cod != self.morphisms[s].cod
            {
                out.push(CategoryViolation::EndpointMismatch {
                    s: name(s),
                    t: name(t),
                    st: name(st),
                });
            }
        }
        for s in 0..self.morphisms.len() {
            for t in 0..self.morphisms.len() {
                let composable = self.morphisms[s].dom == self.morphisms[t].cod;
                if composable && !self.compose.contains_key(&(s, t)) {
                    out.push(CategoryViolation::MissingComposite {
                        s: name(s),
                        t: name(t),
                    });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for t in 0..self.morphisms.len() {
            let e = self.identity[self.morphisms[t].cod];
            if self.compose.get(&(e, t)) != Some(&t) {
                out.push(CategoryViolation::IdentityNotNeutral {
                    e: name(e),
                    t: name(t),
                });
            }
            let e = self.identity[self.morphisms[t].dom];
            if self.compose.get(&(t, e)) != Some(&t) {
                out.push(CategoryViolation::IdentityNotNeutral {
                    e: name(e),
                    t: name(t),
                });
            }
        }
        for (s, t, r) in self.composable_triples() {
            let st = self.compose(s, t).unwrap();
            let tr = self.compose(t, r).unwrap();
            if self.compose(st, r) != self.compose(s, tr) {
                out.push(CategoryViolation::NotAssociative {
                    s: name(s.0),
                    t: name(t.0),
                    r: name(r.0),
                });
            }
        }
        out
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidCategory(
                report
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }

    fn two_sided_inverse(&self, s: MorphismId) -> Option<MorphismId> {
        let (d, c) = (self.dom(s), self.cod(s));
        (0..self.morphisms.len()).map(MorphismId).find(|&t| {
            self.dom(t) == c
                && self.cod(t) == d
                && self.compose(s, t) == Some(self.identity_of(c))
                && self.compose(t, s) == Some(self.identity_of(d))
        })
    }

    /// The morphisms possessing a two-sided inverse.
    pub fn isomorphisms(&self) -> Vec<MorphismId> {
        self.morphism_ids()
            .filter(|&s| self.two_sided_inverse(s).is_some())
            .collect()
    }

    /// When every morphism is invertible, returns the inverse map s -> s^{-1}.
    pub fn groupoid_inverses(&self) -> Option<Vec<MorphismId>> {
        self.morphism_ids()
            .map(|s| self.two_sided_inverse(s))
            .collect()
    }

    pub fn is_groupoid(&self) -> bool {
        self.groupoid_inverses().is_some()
    }

    /// All morphisms are monomorphisms and epimorphisms: st = st' forces
    /// t = t' and dually.
    pub fn is_cancellable(&self) -> bool {
        for s in self.morphism_ids() {
            for t in self.morphism_ids() {
                for t2 in self.morphism_ids() {
                    if t == t2 || !self.composable(s, t) || !self.composable(s, t2) {
                        continue;
                    }
                    if self.compose(s, t) == self.compose(s, t2) {
                        return false;
                    }
                    if self.composable(t, s)
                        && self.composable(t2, s)
                        && self.compose(t, s) == self.compose(t2, s)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when the only isomorphisms are the identities; nondegeneracy is
    /// vacuous beyond identity components for such categories and reports
    /// flag it.
    pub fn has_only_identity_isomorphisms(&self) -> bool {
        self.isomorphisms().iter().all(|&s| self.is_identity(s))
    }
}

/// The cyclic group Z_n as a one-object category; morphisms "0".."n-1".
pub fn cyclic_group(n: usize) -> FiniteCategory {
    assert!(n >= 1);
    let objects = vec!["*".to_string()];
    let morphisms: Vec<(String, String, String)> = (0..n)
        .map(|k| (k.to_string(), "*".into(), "*".into()))
        .collect();
    let identity = BTreeMap::from([("*".to_string(), "0".to_string())]);
    let compose: Vec<(String, String, String)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a.to_string(), b.to_string(), ((a + b) % n).to_string())))
        .collect();
    FiniteCategory::new(objects, morphisms, &identity, &compose)
        .and_then(FiniteCategory::validated)
        .expect("cyclic group table")
}

/// The pair groupoid on objects 1..n: arrows "(i,j)" with (i,j)(j,l) = (i,l).
pub fn pair_groupoid(n: usize) -> FiniteCategory {
    assert!(n >= 1);
    let objects: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let pair = |i: usize, j: usize| format!("({i},{j})");
    let mut morphisms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            // (i,j) : j -> i, matching the matrix-unit convention e_ij
            morphisms.push((pair(i, j), j.to_string(), i.to_string()));
        }
    }
    let identity: BTreeMap<String, String> =
        (1..=n).map(|i| (i.to_string(), pair(i, i))).collect();
    let mut compose = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=n {
                compose.push((pair(i, j), pair(j, l), pair(i, l)));
            }
        }
    }
    FiniteCategory::new(objects, morphisms, &identity, &compose)
        .and_then(FiniteCategory::validated)
        .expect("pair groupoid table")
}

/// The unique thin connected groupoid on two objects: morphisms e, f, s, t
/// with st = e and ts = f.
pub fn thin_two_object_groupoid() -> FiniteCategory {
    let objects = vec!["e".to_string(), "f".to_string()];
    let morphisms = vec![
        ("e".to_string(), "e".to_string(), "e".to_string()),
        ("f".to_string(), "f".to_string(), "f".to_string()),
        ("s".to_string(), "f".to_string(), "e".to_string()),
        ("t".to_string(), "e".to_string(), "f".to_string()),
    ];
    let identity = BTreeMap::from([
        ("e".to_string(), "e".to_string()),
        ("f".to_string(), "f".to_string()),
    ]);
    let compose = [
        ("e", "e", "e"),
        ("f", "f", "f"),
        ("e", "s", "s"),
        ("s", "f", "s"),
        ("f", "t", "t"),
        ("t", "e", "t"),
        ("s", "t", "e"),
        ("t", "s", "f"),
    ]
    .iter()
    .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
    .collect::<Vec<_>>();
    FiniteCategory::new(objects, morphisms, &identity, &compose)
        .and_then(FiniteCategory::validated)
        .expect("thin groupoid table")
}

pub fn trivial_category() -> FiniteCategory {
    cyclic_group(1)
}

/// A quiver: vertices plus named arrows. Only acyclic quivers are accepted;
/// the path category (all paths, including the trivial ones) is finite then.
#[derive(Clone, Debug)]
pub struct Quiver {
    pub vertices: Vec<String>,
    /// (name, from, to)
    pub arrows: Vec<(String, String, String)>,
}

/// Compiles an acyclic quiver to its finite path category. Paths compose by
/// concatenation; a path from u to v through arrows a then b is named "b*a"
/// (composition order, codomain side first).
pub fn path_category(quiver: &Quiver) -> Result<FiniteCategory> {
    let n = quiver.vertices.len();
    let vix: HashMap<&str, usize> = quiver
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    if vix.len() != n {
        return Err(Error::InvalidCategory("duplicate vertex".into()));
    }
    let mut arrows = Vec::new();
    for (name, from, to) in &quiver.arrows {
        let f = *vix
            .get(from.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("unknown vertex {from}")))?;
        let t = *vix
            .get(to.as_str())
            .ok_or_else(|| Error::InvalidCategory(format!("unknown vertex {to}")))?;
        arrows.push((name.clone(), f, t));
    }
    // cycle check: repeated arrow-count BFS must terminate
    let mut indeg = vec![0usize; n];
    for &(_, _, t) in &arrows {
        indeg[t] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    let mut q = 0;
    while q < queue.len() {
        let v = queue[q];
        q += 1;
        seen += 1;
        for &(_, f, t) in &arrows {
            if f == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
    }
    if seen != n {
        return Err(Error::InvalidCategory(
            "quiver has a directed cycle; its path category is infinite".into(),
        ));
    }
    // enumerate all paths: (name, from, to, arrow list)
    #[derive(Clone)]
    struct Path {
        name: String,
        from: usize,
        to: usize,
        arrows: Vec<usize>,
    }
    let mut paths: Vec<Path> = quiver
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| Path {
            name: format!("id_{v}"),
            from: i,
            to: i,
            arrows: vec![],
        })
        .collect();
    let mut frontier: Vec<Path> = arrows
        .iter()
        .enumerate()
        .map(|(k, (name, f, t))| Path {
            name: name.clone(),
            from: *f,
            to: *t,
            arrows: vec![k],
        })
        .collect();
    while !frontier.is_empty() {
        paths.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for p in &frontier {
            for (k, (name, f, t)) in arrows.iter().enumerate() {
                if *f == p.to {
                    next.push(Path {
                        name: format!("{name}*{}", p.name),
                        from: p.from,
                        to: *t,
                        arrows: {
                            let mut a = p.arrows.clone();
                            a.push(k);
                            a
                        },
                    });
                }
            }
        }
        frontier = next;
    }
    let key: HashMap<(usize, usize, Vec<usize>), String> = paths
        .iter()
        .map(|p| ((p.from, p.to, p.arrows.clone()), p.name.clone()))
        .collect();
    let mut compose = Vec::new();
    for s in &paths {
        for t in &paths {
            if s.from == t.to {
                let mut joined = t.arrows.clone();
                joined.extend(s.arrows.iter().copied());
                compose.push((
                    s.name.clone(),
                    t.name.clone(),
                    key[&(t.from, s.to, joined)].clone(),
                ));
            }
        }
    }
    let morphisms: Vec<(String, String, String)> = paths
        .iter()
        .map(|p| {
            (
                p.name.clone(),
                quiver.vertices[p.from].clone(),
                quiver.vertices[p.to].clone(),
            )
        })
        .collect();
    let identity: BTreeMap<String, String> = quiver
        .vertices
        .iter()
        .map(|v| (v.clone(), format!("id_{v}")))
        .collect();
    FiniteCategory::new(quiver.vertices.clone(), morphisms, &identity, &compose)
        .and_then(FiniteCategory::validated)
}
