//! Propositions as sets of manifold classes.
//!
//! A universe holds one symbolic manifold class per (context, outcome) pair
//! plus optional classes compatible with no measurement at all. Contexts are
//! pairwise incompatible: a class compatible with one context is compatible
//! with no other, so every context's compatibility set is a proper subset of
//! the universe as soon as a second context exists.
//!
//! Negation is *experimental*: the complement of an outcome is the union of
//! the other outcomes of the same context, never the set complement in the
//! universe. Conjunction is extent intersection. Disjunction is the least
//! upper bound inside the generated logic, which for cross-context pairs is
//! the trivial proposition even though the extent union is not the universe.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{check_distributivity, Element, FiniteOrtholattice, LatticeError, MAX_ELEMENTS};

pub const BOTTOM_LABEL: &str = "0";
pub const TOP_LABEL: &str = "I";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error("at least one context is required")]
    NoContexts,
    #[error("context `{0}` needs at least two outcomes")]
    TooFewOutcomes(String),
    #[error("context `{context}` lists outcome `{outcome}` twice")]
    DuplicateOutcome { context: String, outcome: String },
    #[error("context `{0}` is defined twice")]
    DuplicateContext(String),
    #[error("unknown context `{0}`")]
    UnknownContext(String),
    #[error("context `{context}` has no outcome `{outcome}`")]
    UnknownOutcome { context: String, outcome: String },
    #[error("proposition closure exceeds {MAX_ELEMENTS} elements")]
    ClosureTooLarge,
    #[error("generated order is not an ortholattice: {0}")]
    Lattice(#[from] LatticeError),
}

/// One measurement arrangement and its possible outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub id: String,
    pub outcomes: Vec<String>,
}

impl Context {
    pub fn new<S: Into<String>>(id: impl Into<String>, outcomes: impl IntoIterator<Item = S>) -> Self {
        Context { id: id.into(), outcomes: outcomes.into_iter().map(Into::into).collect() }
    }

    pub fn binary(id: impl Into<String>) -> Self {
        Context::new(id, ["+", "-"])
    }

    fn validate(&self) -> Result<(), UniverseError> {
        if self.outcomes.len() < 2 {
            return Err(UniverseError::TooFewOutcomes(self.id.clone()));
        }
        let mut seen = HashSet::new();
        for o in &self.outcomes {
            if !seen.insert(o) {
                return Err(UniverseError::DuplicateOutcome { context: self.id.clone(), outcome: o.clone() });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Compatibility {
    Outcome { context: usize, outcome: usize },
    Unconstrained,
}

/// An equivalence class of manifolds consistent with the state preparation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManifoldClass {
    pub id: usize,
    pub compatibility: Compatibility,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    contexts: Vec<Context>,
    classes: Vec<ManifoldClass>,
}

/// Where a proposition lives: inside one context, or trivially true/false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Home {
    Trivial,
    Context(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Proposition {
    extent: BTreeSet<usize>,
    home: Home,
}

impl Proposition {
    pub fn extent(&self) -> &BTreeSet<usize> {
        &self.extent
    }

    pub fn home(&self) -> Home {
        self.home
    }
}

/// Builds the smallest universe with one class per (context, outcome) and
/// `residual_classes` unconstrained classes. Class ids follow context order,
/// then outcome order, then the residual classes.
pub fn build_universe(contexts: Vec<Context>, residual_classes: usize) -> Result<Universe, UniverseError> {
    if contexts.is_empty() {
        return Err(UniverseError::NoContexts);
    }
    let mut ids = HashSet::new();
    for c in &contexts {
        c.validate()?;
        if !ids.insert(c.id.as_str()) {
            return Err(UniverseError::DuplicateContext(c.id.clone()));
        }
    }
    let mut classes = Vec::new();
    for (ci, c) in contexts.iter().enumerate() {
        for oi in 0..c.outcomes.len() {
            classes.push(ManifoldClass {
                id: classes.len(),
                compatibility: Compatibility::Outcome { context: ci, outcome: oi },
            });
        }
    }
    for _ in 0..residual_classes {
        classes.push(ManifoldClass { id: classes.len(), compatibility: Compatibility::Unconstrained });
    }
    Ok(Universe { contexts, classes })
}

impl Universe {
    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn classes(&self) -> &[ManifoldClass] {
        &self.classes
    }

    pub fn context_index(&self, id: &str) -> Result<usize, UniverseError> {
        self.contexts
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| UniverseError::UnknownContext(id.to_owned()))
    }

    /// The whole universe, extent of the trivial true proposition.
    pub fn all(&self) -> BTreeSet<usize> {
        self.classes.iter().map(|c| c.id).collect()
    }

    /// Classes compatible with any outcome of `context`.
    pub fn compatibility_set(&self, context: usize) -> BTreeSet<usize> {
        self.classes
            .iter()
            .filter(|c| matches!(c.compatibility, Compatibility::Outcome { context: k, .. } if k == context))
            .map(|c| c.id)
            .collect()
    }

    fn outcome_extent(&self, context: usize, outcome: usize) -> BTreeSet<usize> {
        self.classes
            .iter()
            .filter(|c| c.compatibility == Compatibility::Outcome { context, outcome })
            .map(|c| c.id)
            .collect()
    }

    pub fn bottom(&self) -> Proposition {
        Proposition { extent: BTreeSet::new(), home: Home::Trivial }
    }

    pub fn top(&self) -> Proposition {
        Proposition { extent: self.all(), home: Home::Trivial }
    }

    /// Identifies the empty extent with the false proposition and a whole
    /// compatibility set with the trivially true one.
    fn normalize(&self, extent: BTreeSet<usize>, home: Home) -> Proposition {
        if extent.is_empty() {
            return self.bottom();
        }
        match home {
            Home::Context(c) if extent == self.compatibility_set(c) => self.top(),
            _ => Proposition { extent, home },
        }
    }

    /// Conjunction: extent intersection.
    pub fn meet(&self, p: &Proposition, q: &Proposition) -> Proposition {
        let extent: BTreeSet<usize> = p.extent.intersection(&q.extent).copied().collect();
        let home = match (p.home, q.home) {
            (Home::Trivial, h) | (h, Home::Trivial) => h,
            (a, b) if a == b => a,
            _ => Home::Trivial,
        };
        self.normalize(extent, home)
    }

    /// Outcome labels of a context that the extent covers, in outcome order.
    fn outcomes_in(&self, context: usize, extent: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.contexts[context].outcomes.len())
            .filter(|&o| self.outcome_extent(context, o).is_subset(extent))
            .collect()
    }

    pub fn label(&self, p: &Proposition) -> String {
        match p.home {
            Home::Trivial if p.extent.is_empty() => BOTTOM_LABEL.to_owned(),
            Home::Trivial => TOP_LABEL.to_owned(),
            Home::Context(c) => {
                let ctx = &self.contexts[c];
                let outs: Vec<&str> =
                    self.outcomes_in(c, &p.extent).into_iter().map(|o| ctx.outcomes[o].as_str()).collect();
                if outs.len() == 1 {
                    format!("{}:{}", ctx.id, outs[0])
                } else {
                    format!("{}:{{{}}}", ctx.id, outs.join(","))
                }
            }
        }
    }
}

pub fn outcome_proposition(u: &Universe, context: &str, outcome: &str) -> Result<Proposition, UniverseError> {
    let ci = u.context_index(context)?;
    let oi = u.contexts[ci].outcomes.iter().position(|o| o == outcome).ok_or_else(|| {
        UniverseError::UnknownOutcome { context: context.to_owned(), outcome: outcome.to_owned() }
    })?;
    Ok(u.normalize(u.outcome_extent(ci, oi), Home::Context(ci)))
}

/// Negation by the sibling outcomes of the same context.
pub fn experimental_complement(u: &Universe, p: &Proposition) -> Proposition {
    match p.home {
        Home::Trivial if p.extent.is_empty() => u.top(),
        Home::Trivial => u.bottom(),
        Home::Context(c) => {
            let rest = u.compatibility_set(c).difference(&p.extent).copied().collect();
            u.normalize(rest, Home::Context(c))
        }
    }
}

/// A generated proposition lattice together with the proposition behind each element.
#[derive(Debug, Clone)]
pub struct GeneratedLogic {
    pub lattice: FiniteOrtholattice,
    pub propositions: Vec<Proposition>,
}

impl GeneratedLogic {
    pub fn element_of(&self, p: &Proposition) -> Option<Element> {
        self.propositions.iter().position(|q| q == p).map(Element::new)
    }

    pub fn proposition(&self, e: Element) -> &Proposition {
        &self.propositions[e.index()]
    }
}

fn sort_key(p: &Proposition) -> (u8, Home, usize, Vec<usize>) {
    let rank = match p.home {
        Home::Trivial if p.extent.is_empty() => 0,
        Home::Trivial => 2,
        Home::Context(_) => 1,
    };
    (rank, p.home, p.extent.len(), p.extent.iter().copied().collect())
}

fn logic_from(u: &Universe, mut props: Vec<Proposition>) -> Result<GeneratedLogic, UniverseError> {
    props.sort_by_key(sort_key);
    let index: HashMap<&Proposition, usize> = props.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let comp = props
        .iter()
        .map(|p| index[&experimental_complement(u, p)])
        .collect::<Vec<_>>();
    let labels: Vec<String> = props.iter().map(|p| u.label(p)).collect();
    let lattice =
        FiniteOrtholattice::from_order(labels, |a, b| props[a].extent.is_subset(&props[b].extent), comp)?;
    Ok(GeneratedLogic { lattice, propositions: props })
}

/// Closes the outcome propositions, bottom and top under intersection and
/// experimental complement, ordered by extent inclusion.
pub fn generate_logic(u: &Universe) -> Result<GeneratedLogic, UniverseError> {
    let mut seeds = vec![u.bottom(), u.top()];
    for (ci, c) in u.contexts.iter().enumerate() {
        for oi in 0..c.outcomes.len() {
            seeds.push(u.normalize(u.outcome_extent(ci, oi), Home::Context(ci)));
        }
    }
    let props = close(u, seeds)?;
    logic_from(u, props)
}

fn close(u: &Universe, seeds: Vec<Proposition>) -> Result<Vec<Proposition>, UniverseError> {
    let mut found: Vec<Proposition> = Vec::new();
    let mut seen: HashSet<Proposition> = HashSet::new();
    let mut queue: VecDeque<Proposition> = VecDeque::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(p) = queue.pop_front() {
        let mut fresh = vec![experimental_complement(u, &p)];
        for q in &found {
            fresh.push(u.meet(&p, q));
        }
        fresh.push(u.meet(&p, &p));
        found.push(p);
        for f in fresh {
            if seen.insert(f.clone()) {
                if seen.len() > MAX_ELEMENTS {
                    return Err(UniverseError::ClosureTooLarge);
                }
                queue.push_back(f);
            }
        }
    }
    Ok(found)
}

/// The classical sublattice generated by one context alone: the power set of
/// its outcomes.
pub fn boolean_restriction(u: &Universe, context: &str) -> Result<FiniteOrtholattice, UniverseError> {
    let ci = u.context_index(context)?;
    let k = u.contexts[ci].outcomes.len();
    let mut props = Vec::with_capacity(1 << k);
    for mask in 0usize..(1 << k) {
        let extent: BTreeSet<usize> =
            (0..k).filter(|o| mask & (1 << o) != 0).flat_map(|o| u.outcome_extent(ci, o)).collect();
        props.push(u.normalize(extent, Home::Context(ci)));
    }
    Ok(logic_from(u, props)?.lattice)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonclassicalityReport {
    pub clause: Vec<Clause>,
}

impl NonclassicalityReport {
    pub fn all_pass(&self) -> bool {
        self.clause.iter().all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Clause> {
        self.clause.iter().find(|c| c.id == id)
    }
}

/// The three-clause witness that the logic generated by `u` is not classical:
/// (i) measurements cut out proper subsets of the universe, (ii) the
/// distributive law fails on an outcome pair from two contexts, (iii) every
/// single context on its own is classical.
pub fn verify_nonclassicality(u: &Universe, logic: &GeneratedLogic) -> NonclassicalityReport {
    let l = &logic.lattice;
    let all = u.all();
    let mut clauses = Vec::new();

    let proper: Vec<String> = u
        .contexts
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let s = u.compatibility_set(ci);
            format!("{}: {}/{} classes", c.id, s.len(), all.len())
        })
        .collect();
    let multi = u.contexts.len() >= 2;
    let all_proper = (0..u.contexts.len()).all(|ci| u.compatibility_set(ci).len() < all.len());
    clauses.push(Clause {
        id: "i".into(),
        name: "measurement compatibility sets are proper subsets of the universe".into(),
        pass: multi && all_proper,
        detail: if multi {
            proper.join("; ")
        } else {
            format!("classical: a single context partitions the universe ({})", proper.join("; "))
        },
    });

    let distributive_failure = if multi {
        let c0 = &u.contexts[0];
        let c1 = &u.contexts[1];
        let a = outcome_proposition(u, &c0.id, &c0.outcomes[0]).expect("known outcome");
        let b = outcome_proposition(u, &c1.id, &c1.outcomes[0]).expect("known outcome");
        let ea = logic.element_of(&a).expect("outcome in logic");
        let eb = logic.element_of(&b).expect("outcome in logic");
        let nb = l.complement(eb);
        let na = l.complement(ea);
        let lhs = l.join(l.meet(ea, eb), l.meet(ea, nb));
        let rhs = l.join(ea, na);
        Clause {
            id: "ii".into(),
            name: "distributive law fails across contexts".into(),
            pass: lhs != rhs,
            detail: format!(
                "({a} ∧ {b}) ∨ ({a} ∧ {nb}) = {lhs}; {a} ∨ {na} = {rhs}",
                a = l.label(ea),
                b = l.label(eb),
                nb = l.label(nb),
                na = l.label(na),
                lhs = l.label(lhs),
                rhs = l.label(rhs),
            ),
        }
    } else {
        Clause {
            id: "ii".into(),
            name: "distributive law fails across contexts".into(),
            pass: false,
            detail: "classical: needs two contexts".into(),
        }
    };
    clauses.push(distributive_failure);

    let mut restrictions = Vec::new();
    let mut all_distributive = true;
    for c in &u.contexts {
        let violations = boolean_restriction(u, &c.id).map(|r| check_distributivity(&r).len());
        match violations {
            Ok(0) => restrictions.push(format!("{}: distributive", c.id)),
            Ok(n) => {
                all_distributive = false;
                restrictions.push(format!("{}: {n} violations", c.id));
            }
            Err(e) => {
                all_distributive = false;
                restrictions.push(format!("{}: {e}", c.id));
            }
        }
    }
    clauses.push(Clause {
        id: "iii".into(),
        name: "each single-context restriction is distributive".into(),
        pass: all_distributive,
        detail: restrictions.join("; "),
    });

    NonclassicalityReport { clause: clauses }
}

/// Universe definition file.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseConfig {
    pub contexts: Vec<ContextConfig>,
    #[serde(default = "default_residual")]
    pub residual_classes: usize,
    #[serde(default)]
    pub hilbert: Option<HilbertOverride>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ContextConfig {
    pub id: String,
    pub outcomes: Vec<String>,
    /// Spin axis realizing this context in Hilbert space.
    #[serde(default)]
    pub axis: Option<[f64; 3]>,
}

/// Replaces the per-context axes when building the subspace lattice.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertOverride {
    pub axes: Vec<[f64; 3]>,
}

fn default_residual() -> usize {
    1
}

impl UniverseConfig {
    pub fn parse(src: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(src)
    }

    pub fn build(&self) -> Result<Universe, UniverseError> {
        build_universe(
            self.contexts.iter().map(|c| Context::new(c.id.clone(), c.outcomes.clone())).collect(),
            self.residual_classes,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{atoms, check_orthomodularity};

    fn xy(residual: usize) -> Universe {
        build_universe(vec![Context::binary("x"), Context::binary("y")], residual).unwrap()
    }

    #[test]
    fn universe_sizes() {
        assert_eq!(xy(0).classes().len(), 4);
        assert_eq!(build_universe(vec![Context::binary("x")], 0).unwrap().classes().len(), 2);
        let three = build_universe(vec![Context::binary("x"), Context::binary("y"), Context::binary("z")], 1)
            .unwrap();
        // 3 contexts * 2 outcomes + 1 residual
        assert_eq!(three.classes().len(), 7);
        assert_eq!(three.classes()[6].compatibility, Compatibility::Unconstrained);
    }

    #[test]
    fn universe_errors() {
        assert_eq!(build_universe(vec![], 0), Err(UniverseError::NoContexts));
        assert!(matches!(
            build_universe(vec![Context::new("x", ["+"])], 0),
            Err(UniverseError::TooFewOutcomes(_))
        ));
        assert!(matches!(
            build_universe(vec![Context::new("x", ["+", "+"])], 0),
            Err(UniverseError::DuplicateOutcome { .. })
        ));
        assert!(matches!(
            build_universe(vec![Context::binary("x"), Context::binary("x")], 0),
            Err(UniverseError::DuplicateContext(_))
        ));
    }

    #[test]
    fn outcome_extents() {
        let u = xy(0);
        let xp = outcome_proposition(&u, "x", "+").unwrap();
        assert_eq!(xp.extent().iter().copied().collect::<Vec<_>>(), [0]);
        let single = build_universe(vec![Context::binary("x")], 0).unwrap();
        assert_eq!(outcome_proposition(&single, "x", "+").unwrap().extent().len(), 1);
        assert_eq!(single.all().len(), 2);
        let three = build_universe(vec![Context::binary("x"), Context::binary("y"), Context::binary("z")], 1)
            .unwrap();
        assert_eq!(outcome_proposition(&three, "y", "-").unwrap().extent().iter().copied().collect::<Vec<_>>(), [3]);
        assert!(matches!(outcome_proposition(&u, "z", "+"), Err(UniverseError::UnknownContext(_))));
        assert!(matches!(outcome_proposition(&u, "x", "0"), Err(UniverseError::UnknownOutcome { .. })));
    }

    #[test]
    fn experimental_vs_set_complement() {
        let u = xy(1);
        let xp = outcome_proposition(&u, "x", "+").unwrap();
        let xm = outcome_proposition(&u, "x", "-").unwrap();
        let yp = outcome_proposition(&u, "y", "+").unwrap();
        assert_eq!(experimental_complement(&u, &xp), xm);
        assert_eq!(experimental_complement(&u, &experimental_complement(&u, &yp)), yp);
        assert_eq!(experimental_complement(&u, &u.top()), u.bottom());
        let set_comp: BTreeSet<usize> = u.all().difference(xp.extent()).copied().collect();
        assert_ne!(&set_comp, xm.extent());
    }

    #[test]
    fn two_contexts_give_mo2() {
        let u = xy(1);
        let g = generate_logic(&u).unwrap();
        let l = &g.lattice;
        assert_eq!(l.len(), 6);
        assert_eq!(l.labels(), ["0", "x:+", "x:-", "y:+", "y:-", "I"]);
        assert_eq!(atoms(l).len(), 4);
        assert!(check_orthomodularity(l).is_empty());
        assert!(!check_distributivity(l).is_empty());
        let xp = l.element("x:+").unwrap();
        let yp = l.element("y:+").unwrap();
        // join is the least upper bound, not the extent union
        assert_eq!(l.join(xp, yp), l.top());
        let union: BTreeSet<usize> = g.proposition(xp).extent().union(g.proposition(yp).extent()).copied().collect();
        assert_ne!(union, u.all());
        for a in l.elements() {
            for b in l.elements() {
                let m = g.proposition(l.meet(a, b)).extent().clone();
                let i: BTreeSet<usize> =
                    g.proposition(a).extent().intersection(g.proposition(b).extent()).copied().collect();
                assert_eq!(m, i);
            }
        }
    }

    #[test]
    fn logic_sizes() {
        let one = build_universe(vec![Context::binary("x")], 0).unwrap();
        let g = generate_logic(&one).unwrap();
        assert_eq!(g.lattice.len(), 4);
        assert!(check_distributivity(&g.lattice).is_empty());
        let three = build_universe(vec![Context::binary("x"), Context::binary("y"), Context::binary("z")], 1)
            .unwrap();
        assert_eq!(generate_logic(&three).unwrap().lattice.len(), 8);
        let tri = build_universe(vec![Context::new("s", ["+", "0", "-"]), Context::binary("x")], 0).unwrap();
        let g = generate_logic(&tri).unwrap();
        // 2^3 - 2 nontrivial subsets of s, 2 for x, plus bounds
        assert_eq!(g.lattice.len(), 10);
        assert!(g.lattice.element("s:{+,0}").is_some());
    }

    #[test]
    fn restrictions() {
        let u = xy(1);
        let r = boolean_restriction(&u, "x").unwrap();
        assert_eq!(r.len(), 4);
        assert!(check_distributivity(&r).is_empty());
        let names: Vec<&str> = atoms(&r).iter().map(|&a| r.label(a)).collect();
        assert_eq!(names, ["x:+", "x:-"]);
        let tri = build_universe(vec![Context::new("s", ["+", "0", "-"])], 0).unwrap();
        let r = boolean_restriction(&tri, "s").unwrap();
        assert_eq!(r.len(), 8);
        assert!(check_distributivity(&r).is_empty());
        assert!(matches!(boolean_restriction(&u, "q"), Err(UniverseError::UnknownContext(_))));
    }

    #[test]
    fn nonclassicality_clauses() {
        for residual in [0, 1, 3] {
            let u = xy(residual);
            let g = generate_logic(&u).unwrap();
            let r = verify_nonclassicality(&u, &g);
            assert!(r.all_pass(), "{r:?}");
            assert!(r.get("ii").unwrap().detail.contains("= 0;"));
            assert!(r.get("ii").unwrap().detail.ends_with("= I"));
        }
        let one = build_universe(vec![Context::binary("x")], 0).unwrap();
        let r = verify_nonclassicality(&one, &generate_logic(&one).unwrap());
        assert!(!r.get("i").unwrap().pass);
        assert!(r.get("i").unwrap().detail.starts_with("classical"));
        assert!(r.get("iii").unwrap().pass);
    }

    #[test]
    fn config_defaults() {
        let cfg = UniverseConfig::parse(
            "[[contexts]]\nid = \"x\"\noutcomes = [\"+\", \"-\"]\naxis = [1.0, 0.0, 0.0]\n",
        )
        .unwrap();
        assert_eq!(cfg.residual_classes, 1);
        assert_eq!(cfg.build().unwrap().classes().len(), 3);
    }
}
