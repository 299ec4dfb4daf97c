//! Functors between finite categories and the (ramified) covering property.
//!
//! A functor `P: C̃ → C` with `C` connected is a ramified covering when, at
//! every object `x̃` over `x`, `P` maps the target star `T(x̃)` bijectively onto
//! `T(x)` and maps the reduced source star `S̄(x̃)` onto `S̄(x)` so that each
//! element has exactly `e(x̃)` preimages. The ramification number `e(x̃)` is
//! derived here, never supplied. When both reduced stars are empty, `e = 1`.
//!
//! A successful check yields a [`RamifiedCovering`], which carries the
//! verified [`RamificationProfile`] and is the entry point for fibers, chain
//! lifts, and the theorem checkers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{FiniteCategory, MorphismId, ObjectId};
use crate::nerve::{degeneracy, enumerate_chains_at, face, Chain, ChainError};

/// On-disk form of a functor. Identities are mapped implicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub object_map: BTreeMap<String, String>,
    #[serde(default)]
    pub morphism_map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorIssue {
    UnknownSourceObject(String),
    UnknownTargetObject(String),
    UnmappedObject(String),
    UnknownSourceMorphism(String),
    UnknownTargetMorphism(String),
    UnmappedMorphism(String),
    IdentityNotPreserved { object: String, image: String },
    SourceNotPreserved { morphism: String, image: String },
    TargetNotPreserved { morphism: String, image: String },
    CompositionNotPreserved { first: String, second: String },
}

impl fmt::Display for FunctorIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorIssue::UnknownSourceObject(x) => write!(f, "object map mentions unknown source object `{x}`"),
            FunctorIssue::UnknownTargetObject(x) => write!(f, "object map sends to unknown target object `{x}`"),
            FunctorIssue::UnmappedObject(x) => write!(f, "object `{x}` is not mapped"),
            FunctorIssue::UnknownSourceMorphism(m) => {
                write!(f, "morphism map mentions unknown source morphism `{m}`")
            }
            FunctorIssue::UnknownTargetMorphism(m) => {
                write!(f, "morphism map sends to unknown target morphism `{m}`")
            }
            FunctorIssue::UnmappedMorphism(m) => write!(f, "morphism `{m}` is not mapped"),
            FunctorIssue::IdentityNotPreserved { object, image } => {
                write!(f, "identity of `{object}` is sent to non-identity `{image}`")
            }
            FunctorIssue::SourceNotPreserved { morphism, image } => {
                write!(f, "source not preserved by `{morphism}` -> `{image}`")
            }
            FunctorIssue::TargetNotPreserved { morphism, image } => {
                write!(f, "target not preserved by `{morphism}` -> `{image}`")
            }
            FunctorIssue::CompositionNotPreserved { first, second } => {
                write!(f, "composition of ({first},{second}) not preserved")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorReport {
    pub issues: Vec<FunctorIssue>,
}

impl fmt::Display for FunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.issues.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for FunctorReport {}

/// A functor between two validated finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryFunctor {
    source: FiniteCategory,
    target: FiniteCategory,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl CategoryFunctor {
    /// Resolves id maps and checks functoriality on every composable pair.
    pub fn validate(
        source: FiniteCategory,
        target: FiniteCategory,
        object_map: &BTreeMap<String, String>,
        morphism_map: &BTreeMap<String, String>,
    ) -> Result<Self, FunctorReport> {
        let mut issues = Vec::new();

        let mut objects: Vec<Option<usize>> = vec![None; source.num_objects()];
        for (k, v) in object_map {
            let Some(x) = source.object_index(k) else {
                issues.push(FunctorIssue::UnknownSourceObject(k.clone()));
                continue;
            };
            let Some(y) = target.object_index(v) else {
                issues.push(FunctorIssue::UnknownTargetObject(v.clone()));
                continue;
            };
            objects[x] = Some(y);
        }
        for (x, image) in objects.iter().enumerate() {
            if image.is_none() {
                issues.push(FunctorIssue::UnmappedObject(source.object(x).to_string()));
            }
        }

        let mut morphisms: Vec<Option<usize>> = vec![None; source.num_morphisms()];
        for (x, image) in objects.iter().enumerate() {
            morphisms[source.identity(x)] = image.map(|y| target.identity(y));
        }
        for (k, v) in morphism_map {
            let Some(f) = source.morphism_index(k) else {
                issues.push(FunctorIssue::UnknownSourceMorphism(k.clone()));
                continue;
            };
            let Some(g) = target.morphism_index(v) else {
                issues.push(FunctorIssue::UnknownTargetMorphism(v.clone()));
                continue;
            };
            if source.is_identity(f) {
                if morphisms[f].is_some_and(|implied| implied != g) {
                    issues.push(FunctorIssue::IdentityNotPreserved {
                        object: source.object(f).to_string(),
                        image: v.clone(),
                    });
                }
                continue;
            }
            morphisms[f] = Some(g);
        }
        for (f, image) in morphisms.iter().enumerate() {
            if image.is_none() && !source.is_identity(f) {
                issues.push(FunctorIssue::UnmappedMorphism(source.morphism(f).id.to_string()));
            }
        }

        if !issues.is_empty() {
            return Err(FunctorReport { issues });
        }
        let object_map = objects.into_iter().map(|o| o.expect("checked")).collect();
        let morphism_map = morphisms.into_iter().map(|m| m.expect("checked")).collect();
        CategoryFunctor::from_indices(source, target, object_map, morphism_map)
    }

    /// Checks functoriality of index-level maps. Identities must already be mapped.
    pub fn from_indices(
        source: FiniteCategory,
        target: FiniteCategory,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self, FunctorReport> {
        assert_eq!(object_map.len(), source.num_objects());
        assert_eq!(morphism_map.len(), source.num_morphisms());
        let mut issues = Vec::new();
        for (f, &image) in morphism_map.iter().enumerate() {
            let m = source.morphism(f);
            let pm = target.morphism(image);
            let name = || m.id.to_string();
            if source.is_identity(f) && image != target.identity(object_map[f]) {
                issues.push(FunctorIssue::IdentityNotPreserved {
                    object: source.object(f).to_string(),
                    image: pm.id.to_string(),
                });
                continue;
            }
            if pm.source != object_map[m.source] {
                issues.push(FunctorIssue::SourceNotPreserved {
                    morphism: name(),
                    image: pm.id.to_string(),
                });
            }
            if pm.target != object_map[m.target] {
                issues.push(FunctorIssue::TargetNotPreserved {
                    morphism: name(),
                    image: pm.id.to_string(),
                });
            }
        }
        if issues.is_empty() {
            for f in 0..source.num_morphisms() {
                for &g in source.out_arrows(source.morphism(f).target) {
                    let fg = source.compose(f, g).expect("validated category");
                    if target.compose(morphism_map[f], morphism_map[g]) != Some(morphism_map[fg]) {
                        issues.push(FunctorIssue::CompositionNotPreserved {
                            first: source.morphism(f).id.to_string(),
                            second: source.morphism(g).id.to_string(),
                        });
                    }
                }
            }
        }
        if !issues.is_empty() {
            return Err(FunctorReport { issues });
        }
        Ok(CategoryFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(cat: &FiniteCategory) -> Self {
        CategoryFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.num_objects()).collect(),
            morphism_map: (0..cat.num_morphisms()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn map_object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn map_morphism(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    pub fn map_chain(&self, chain: &Chain) -> Chain {
        Chain::new(
            &self.target,
            self.object_map[chain.start()],
            chain.arrows().iter().map(|&f| self.morphism_map[f]).collect(),
        )
        .expect("functors send chains to chains")
    }

    /// The external form, with the given paths for the two category files.
    pub fn to_raw(&self, source_path: &str, target_path: &str) -> RawFunctor {
        let object_map = (0..self.source.num_objects())
            .map(|x| {
                (
                    self.source.object(x).to_string(),
                    self.target.object(self.object_map[x]).to_string(),
                )
            })
            .collect();
        let morphism_map = (self.source.num_objects()..self.source.num_morphisms())
            .map(|f| {
                (
                    self.source.morphism(f).id.to_string(),
                    self.target.morphism(self.morphism_map[f]).id.to_string(),
                )
            })
            .collect();
        RawFunctor {
            source: source_path.to_string(),
            target: target_path.to_string(),
            object_map,
            morphism_map,
        }
    }

    fn fiber_indices(&self, x: usize) -> Vec<usize> {
        (0..self.source.num_objects())
            .filter(|&xt| self.object_map[xt] == x)
            .collect()
    }

    fn check_preconditions(&self) -> Result<(), CoveringError> {
        if !self.target.is_connected() {
            return Err(CoveringError::TargetNotConnected);
        }
        if self.source.is_empty() {
            return Err(CoveringError::EmptySource);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Star {
    Source,
    Target,
    ReducedSource,
}

impl fmt::Display for Star {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Star::Source => "source star",
            Star::Target => "target star",
            Star::ReducedSource => "reduced source star",
        })
    }
}

/// How a star restriction fails to be a bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarDefect {
    /// Two or more members share this image.
    NotInjective { image: MorphismId, preimages: usize },
    /// This member of the base star has no preimage.
    NotSurjective { missed: MorphismId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFailure {
    pub object: ObjectId,
    pub star: Star,
    pub defect: StarDefect,
    /// Sizes of the star upstairs and downstairs.
    pub sizes: (usize, usize),
}

impl fmt::Display for StarFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} of `{}` ({} -> {}): ",
            self.star, self.object, self.sizes.0, self.sizes.1
        )?;
        match &self.defect {
            StarDefect::NotInjective { image, preimages } => {
                write!(f, "not injective, `{image}` has {preimages} preimages")
            }
            StarDefect::NotSurjective { missed } => write!(f, "not surjective, `{missed}` is missed"),
        }
    }
}

/// Outcome of the unramified covering test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedVerdict {
    pub witness: Option<StarFailure>,
}

impl UnramifiedVerdict {
    pub fn is_covering(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringFailure {
    TargetStar(StarFailure),
    /// A non-identity morphism out of `object` is sent to an identity.
    CollapsedMorphism {
        object: ObjectId,
        morphism: MorphismId,
    },
    /// No single `e` works: preimage counts over `S̄(x)` differ.
    UnevenFibers {
        object: ObjectId,
        counts: Vec<(MorphismId, usize)>,
    },
    /// `S̄(x̃)` is empty while `S̄(x)` is not.
    EmptyReducedStar {
        object: ObjectId,
    },
    /// `#R(x)` differs between objects of the base.
    DegreeMismatch {
        degrees: Vec<(ObjectId, u64)>,
    },
}

impl fmt::Display for CoveringFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringFailure::TargetStar(s) => write!(f, "{s}"),
            CoveringFailure::CollapsedMorphism { object, morphism } => {
                write!(f, "non-identity `{morphism}` out of `{object}` is sent to an identity")
            }
            CoveringFailure::UnevenFibers { object, counts } => {
                let parts: Vec<String> = counts.iter().map(|(m, c)| format!("{m}:{c}")).collect();
                write!(
                    f,
                    "reduced source star of `{object}` is not e-to-one, preimage counts {}",
                    parts.join(", ")
                )
            }
            CoveringFailure::EmptyReducedStar { object } => write!(
                f,
                "reduced source star of `{object}` is empty but its image has non-identity morphisms"
            ),
            CoveringFailure::DegreeMismatch { degrees } => {
                let parts: Vec<String> = degrees.iter().map(|(x, d)| format!("{x}:{d}")).collect();
                write!(f, "weighted fiber sizes differ: {}", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringRejection {
    pub failures: Vec<CoveringFailure>,
}

impl fmt::Display for CoveringRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.failures.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoveringError {
    #[error("target category is not connected")]
    TargetNotConnected,
    #[error("source category is empty")]
    EmptySource,
    #[error("not a ramified covering: {0}")]
    Rejected(CoveringRejection),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Verified covering data, indexed like the objects of the total category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    ramification: Vec<u64>,
    degree: u64,
    total_ramification: u64,
}

impl RamificationProfile {
    pub fn e(&self, x: usize) -> u64 {
        self.ramification[x]
    }

    pub fn ramification(&self) -> &[u64] {
        &self.ramification
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// `V = Σ (e(x̃) - 1)`.
    pub fn total_ramification(&self) -> u64 {
        self.total_ramification
    }
}

fn star_failure(
    p: &CategoryFunctor,
    xt: usize,
    star: Star,
    upstairs: &[usize],
    downstairs: &[usize],
) -> Option<StarFailure> {
    let mut counts: BTreeMap<usize, usize> = downstairs.iter().map(|&g| (g, 0)).collect();
    for &f in upstairs {
        *counts.entry(p.morphism_map[f]).or_insert(0) += 1;
    }
    let name = |g: usize| p.target.morphism(g).id.clone();
    let defect = match counts.iter().find(|(_, &c)| c > 1) {
        Some((&g, &preimages)) => StarDefect::NotInjective {
            image: name(g),
            preimages,
        },
        None => {
            let (&g, _) = counts.iter().find(|(_, &c)| c == 0)?;
            StarDefect::NotSurjective { missed: name(g) }
        }
    };
    Some(StarFailure {
        object: p.source.object(xt).clone(),
        star,
        defect,
        sizes: (upstairs.len(), downstairs.len()),
    })
}

/// Bijectivity of `S(x̃) → S(x)` and `T(x̃) → T(x)` at every `x̃`.
///
/// Reports the first failing object, in object order, checking the source star first.
pub fn check_unramified_covering(p: &CategoryFunctor) -> Result<UnramifiedVerdict, CoveringError> {
    p.check_preconditions()?;
    for xt in 0..p.source.num_objects() {
        let x = p.object_map[xt];
        let stars = [
            (Star::Source, p.source.out_arrows(xt), p.target.out_arrows(x)),
            (Star::Target, p.source.in_arrows(xt), p.target.in_arrows(x)),
        ];
        for (star, up, down) in stars {
            if let Some(w) = star_failure(p, xt, star, up, down) {
                return Ok(UnramifiedVerdict { witness: Some(w) });
            }
        }
    }
    Ok(UnramifiedVerdict { witness: None })
}

/// Decides the ramified covering property and computes `e`, `d` and `V`.
pub fn check_ramified_covering(p: &CategoryFunctor) -> Result<RamifiedCovering, CoveringError> {
    p.check_preconditions()?;
    let mut failures = Vec::new();
    let mut ramification = vec![0u64; p.source.num_objects()];

    for xt in 0..p.source.num_objects() {
        let x = p.object_map[xt];
        if let Some(w) = star_failure(p, xt, Star::Target, p.source.in_arrows(xt), p.target.in_arrows(x)) {
            failures.push(CoveringFailure::TargetStar(w));
        }

        let reduced_up: Vec<usize> = p.source.reduced_out_arrows(xt).collect();
        let reduced_down: Vec<usize> = p.target.reduced_out_arrows(x).collect();
        let mut counts: BTreeMap<usize, usize> = reduced_down.iter().map(|&g| (g, 0)).collect();
        let mut collapsed = false;
        for &f in &reduced_up {
            let g = p.morphism_map[f];
            if p.target.is_identity(g) {
                failures.push(CoveringFailure::CollapsedMorphism {
                    object: p.source.object(xt).clone(),
                    morphism: p.source.morphism(f).id.clone(),
                });
                collapsed = true;
            } else {
                *counts.get_mut(&g).expect("functor preserves sources") += 1;
            }
        }
        if collapsed {
            continue;
        }
        match (reduced_up.is_empty(), reduced_down.is_empty()) {
            (true, true) => ramification[xt] = 1,
            (true, false) => failures.push(CoveringFailure::EmptyReducedStar {
                object: p.source.object(xt).clone(),
            }),
            _ => {
                let distinct: BTreeSet<usize> = counts.values().copied().collect();
                match distinct.into_iter().collect::<Vec<_>>()[..] {
                    [e] if e > 0 => ramification[xt] = e as u64,
                    _ => failures.push(CoveringFailure::UnevenFibers {
                        object: p.source.object(xt).clone(),
                        counts: counts
                            .iter()
                            .map(|(&g, &c)| (p.target.morphism(g).id.clone(), c))
                            .collect(),
                    }),
                }
            }
        }
    }

    if !failures.is_empty() {
        return Err(CoveringError::Rejected(CoveringRejection { failures }));
    }

    let degrees: Vec<u64> = (0..p.target.num_objects())
        .map(|x| p.fiber_indices(x).iter().map(|&xt| ramification[xt]).sum())
        .collect();
    let degree = degrees[0];
    if degrees.iter().any(|&d| d != degree) {
        return Err(CoveringError::Rejected(CoveringRejection {
            failures: vec![CoveringFailure::DegreeMismatch {
                degrees: degrees
                    .iter()
                    .enumerate()
                    .map(|(x, &d)| (p.target.object(x).clone(), d))
                    .collect(),
            }],
        }));
    }
    let total_ramification = ramification.iter().map(|e| e - 1).sum();
    Ok(RamifiedCovering {
        functor: p.clone(),
        profile: RamificationProfile {
            ramification,
            degree,
            total_ramification,
        },
    })
}

/// A functor that passed [`check_ramified_covering`], together with its profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedCovering {
    functor: CategoryFunctor,
    profile: RamificationProfile,
}

/// All chains over one base chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSet {
    pub base_chain: Chain,
    pub lifts: Vec<Chain>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operator {
    Face,
    Degeneracy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityViolation {
    pub base_chain: Vec<String>,
    pub operator: Operator,
    pub index: usize,
    /// `{op(f̃_j)}` over the weighted lifts of the base chain, sorted.
    pub transported: Vec<Vec<String>>,
    /// Weighted lifts of `op(f)`, sorted.
    pub expected: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityViolation {
    pub base_chain: Vec<String>,
    pub lifts: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub n_max: usize,
    pub chains_checked: usize,
    pub operator_checks: usize,
    pub cardinality_violations: Vec<CardinalityViolation>,
    pub violations: Vec<CompatibilityViolation>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.cardinality_violations.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    /// Morphisms where "is an identity" differs between `f̃` and `P(f̃)`.
    pub identity_reflection: Vec<MorphismId>,
    /// Objects on a cycle of non-identity morphisms with `e > 1`.
    pub cycle: Vec<ObjectId>,
    /// Targets of non-identity morphisms with `e > 1`.
    pub target: Vec<ObjectId>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.identity_reflection.is_empty() && self.cycle.is_empty() && self.target.is_empty()
    }
}

impl RamifiedCovering {
    pub fn functor(&self) -> &CategoryFunctor {
        &self.functor
    }

    pub fn profile(&self) -> &RamificationProfile {
        &self.profile
    }

    pub fn into_functor(self) -> CategoryFunctor {
        self.functor
    }

    pub fn degree(&self) -> u64 {
        self.profile.degree
    }

    pub fn total_ramification(&self) -> u64 {
        self.profile.total_ramification
    }

    /// `e` keyed by object id of the total category.
    pub fn ramification_map(&self) -> BTreeMap<ObjectId, u64> {
        (0..self.functor.source.num_objects())
            .map(|x| (self.functor.source.object(x).clone(), self.profile.ramification[x]))
            .collect()
    }

    pub fn fiber_indices(&self, x: usize) -> Vec<usize> {
        self.functor.fiber_indices(x)
    }

    /// `P⁻¹(x)` in object order.
    pub fn fiber(&self, x: &str) -> Result<Vec<ObjectId>, CoveringError> {
        let xi = self.base_object(x)?;
        Ok(self
            .fiber_indices(xi)
            .into_iter()
            .map(|xt| self.functor.source.object(xt).clone())
            .collect())
    }

    /// `R(x)`: each `x̃ ∈ P⁻¹(x)` repeated `e(x̃)` times.
    pub fn weighted_fiber(&self, x: &str) -> Result<Vec<ObjectId>, CoveringError> {
        let xi = self.base_object(x)?;
        Ok(self
            .fiber_indices(xi)
            .into_iter()
            .flat_map(|xt| {
                std::iter::repeat_n(
                    self.functor.source.object(xt).clone(),
                    self.profile.ramification[xt] as usize,
                )
            })
            .collect())
    }

    fn base_object(&self, x: &str) -> Result<usize, CoveringError> {
        self.functor
            .target
            .object_index(x)
            .ok_or_else(|| CoveringError::UnknownObject(x.to_string()))
    }

    /// Every chain of the total category lying over `chain`, in lexicographic order of arrow ids.
    pub fn lift_chains(&self, chain: &Chain) -> Result<LiftSet, CoveringError> {
        let (src, tgt) = (&self.functor.source, &self.functor.target);
        chain.check(tgt)?;
        let mut lifts = Vec::new();
        for xt in self.fiber_indices(chain.start()) {
            let mut frontier = vec![(xt, Vec::with_capacity(chain.len()))];
            for &f in chain.arrows() {
                let mut next = Vec::new();
                for (at, arrows) in frontier {
                    for &ft in src.out_arrows(at) {
                        if self.functor.morphism_map[ft] == f {
                            let mut extended: Vec<usize> = arrows.clone();
                            extended.push(ft);
                            next.push((src.morphism(ft).target, extended));
                        }
                    }
                }
                frontier = next;
            }
            lifts.extend(
                frontier
                    .into_iter()
                    .map(|(_, arrows)| Chain::new(src, xt, arrows).expect("lifted arrows compose")),
            );
        }
        if !chain.is_empty() {
            lifts.sort_by_cached_key(|c| c.ids(src));
        }
        Ok(LiftSet {
            base_chain: chain.clone(),
            lifts,
        })
    }

    /// Lifts as a multiset of size `d`: an identity chain at `x` contributes its
    /// lift at each `x̃ ∈ P⁻¹(x)` with multiplicity `e(x̃)`.
    pub fn weighted_lifts(&self, chain: &Chain) -> Result<Vec<Chain>, CoveringError> {
        let set = self.lift_chains(chain)?;
        if !chain.is_identity_chain(&self.functor.target) {
            return Ok(set.lifts);
        }
        Ok(set
            .lifts
            .into_iter()
            .flat_map(|c| {
                let e = self.profile.ramification[c.start()] as usize;
                std::iter::repeat_n(c, e)
            })
            .collect())
    }

    /// Expected `#lifts`: `d`, or `#P⁻¹(x)` for an identity chain at `x`.
    pub fn expected_lift_count(&self, chain: &Chain) -> usize {
        if chain.is_identity_chain(&self.functor.target) {
            self.fiber_indices(chain.start()).len()
        } else {
            self.profile.degree as usize
        }
    }

    /// Lifting commutes with every face and degeneracy, as multisets, for base chains
    /// of length at most `n_max`.
    pub fn check_simplicial_compatibility(&self, n_max: usize) -> CompatibilityReport {
        let (src, tgt) = (&self.functor.source, &self.functor.target);
        let mut report = CompatibilityReport {
            n_max,
            ..Default::default()
        };
        let names =
            |cs: &[Chain], cat: &FiniteCategory| -> Vec<Vec<String>> { cs.iter().map(|c| c.ids(cat)).collect() };
        let sorted = |mut cs: Vec<Chain>| {
            cs.sort();
            cs
        };

        for n in 0..=n_max {
            for f in enumerate_chains_at(tgt, n, false, None) {
                report.chains_checked += 1;
                let lifts = self.lift_chains(&f).expect("enumerated chains are valid").lifts;
                let expected = self.expected_lift_count(&f);
                if lifts.len() != expected {
                    report.cardinality_violations.push(CardinalityViolation {
                        base_chain: f.ids(tgt),
                        lifts: lifts.len(),
                        expected,
                    });
                }
                let weighted = self.weighted_lifts(&f).expect("enumerated chains are valid");

                let mut ops: Vec<(Operator, usize)> = (0..=n).map(|i| (Operator::Degeneracy, i)).collect();
                if n > 0 {
                    ops.extend((0..=n).map(|i| (Operator::Face, i)));
                }
                for (op, i) in ops {
                    report.operator_checks += 1;
                    let apply = |cat: &FiniteCategory, c: &Chain| match op {
                        Operator::Face => face(cat, c, i),
                        Operator::Degeneracy => degeneracy(cat, c, i),
                    };
                    let image = apply(tgt, &f).expect("index in range");
                    let transported = sorted(
                        weighted
                            .iter()
                            .map(|c| apply(src, c).expect("index in range"))
                            .collect(),
                    );
                    let lifted = sorted(self.weighted_lifts(&image).expect("valid chain"));
                    if transported != lifted {
                        report.violations.push(CompatibilityViolation {
                            base_chain: f.ids(tgt),
                            operator: op,
                            index: i,
                            transported: names(&transported, src),
                            expected: names(&lifted, src),
                        });
                    }
                }
            }
        }
        report
    }

    /// Consequences every ramified covering must satisfy: identities are reflected,
    /// objects on non-identity cycles are unramified, and targets of non-identity
    /// morphisms are unramified.
    pub fn check_covering_lemmas(&self) -> LemmaReport {
        let (src, tgt) = (&self.functor.source, &self.functor.target);
        let e = &self.profile.ramification;
        let mut report = LemmaReport::default();

        for f in 0..src.num_morphisms() {
            if src.is_identity(f) != tgt.is_identity(self.functor.morphism_map[f]) {
                report.identity_reflection.push(src.morphism(f).id.clone());
            }
        }

        let n = src.num_objects();
        for x in 0..n {
            // x lies on a non-identity cycle iff it is reachable from itself in ≥ 1 step.
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = src.reduced_out_arrows(x).map(|f| src.morphism(f).target).collect();
            let mut on_cycle = false;
            while let Some(y) = stack.pop() {
                if y == x {
                    on_cycle = true;
                    break;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.extend(src.reduced_out_arrows(y).map(|f| src.morphism(f).target));
                }
            }
            if on_cycle && e[x] != 1 {
                report.cycle.push(src.object(x).clone());
            }
            let is_target = src.in_arrows(x).iter().any(|&f| !src.is_identity(f));
            if is_target && e[x] != 1 {
                report.target.push(src.object(x).clone());
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin::{arrow, diamond, p_diamond4, p_wedge2, terminal};

    fn ids(v: &[ObjectId]) -> Vec<&str> {
        v.iter().map(ObjectId::as_str).collect()
    }

    #[test]
    fn identity_functor_is_unramified() {
        let c = diamond();
        let p = CategoryFunctor::identity(&c);
        assert!(check_unramified_covering(&p).unwrap().is_covering());
        let cov = check_ramified_covering(&p).unwrap();
        assert_eq!(cov.degree(), 1);
        assert_eq!(cov.total_ramification(), 0);
        assert!(cov.profile().ramification().iter().all(|&e| e == 1));
        assert_eq!(ids(&cov.fiber("z").unwrap()), vec!["z"]);
    }

    #[test]
    fn wedge_example_profile() {
        let p = p_wedge2();
        let verdict = check_unramified_covering(&p).unwrap();
        assert!(!verdict.is_covering());
        let cov = check_ramified_covering(&p).unwrap();
        assert_eq!(cov.degree(), 2);
        assert_eq!(cov.total_ramification(), 1);
        let e = cov.ramification_map();
        assert_eq!(e[&ObjectId::from("x~")], 2);
        assert_eq!(e[&ObjectId::from("y~1")], 1);
        assert_eq!(e[&ObjectId::from("y~2")], 1);
    }

    #[test]
    fn diamond_cover_profile() {
        let p = p_diamond4();
        let verdict = check_unramified_covering(&p).unwrap();
        let w = verdict.witness.unwrap();
        assert_eq!(w.object.as_str(), "x1");
        assert_eq!(w.star, Star::Source);
        assert_eq!(w.sizes, (5, 3));
        assert!(matches!(w.defect, StarDefect::NotInjective { preimages: 2, .. }));

        let cov = check_ramified_covering(&p).unwrap();
        assert_eq!(cov.degree(), 4);
        assert_eq!(cov.total_ramification(), 4);
        let ramified: Vec<&str> = cov
            .ramification_map()
            .into_iter()
            .filter(|(_, e)| *e == 2)
            .map(|(x, _)| {
                if x.as_str().starts_with('x') || x.as_str().starts_with('y') {
                    "ok"
                } else {
                    "bad"
                }
            })
            .collect();
        assert_eq!(ramified, vec!["ok"; 4]);
        assert_eq!(ids(&cov.weighted_fiber("x").unwrap()), vec!["x1", "x1", "x2", "x2"]);
        assert_eq!(ids(&cov.weighted_fiber("z").unwrap()), vec!["z1", "z2", "z3", "z4"]);
        assert!(matches!(cov.fiber("q"), Err(CoveringError::UnknownObject(_))));
    }

    #[test]
    fn lifts_in_the_diamond_cover() {
        let cov = check_ramified_covering(&p_diamond4()).unwrap();
        let c = cov.functor().target();
        let ident = Chain::from_ids(c, "x", &["id:x", "id:x"]).unwrap();
        assert_eq!(cov.lift_chains(&ident).unwrap().lifts.len(), 2);
        let xz = Chain::from_ids(c, "x", &["xz"]).unwrap();
        let lifts = cov.lift_chains(&xz).unwrap().lifts;
        assert_eq!(lifts.len(), 4);
        let mut keys: Vec<_> = lifts.iter().map(|l| l.ids(cov.functor().source())).collect();
        let before = keys.clone();
        keys.sort();
        assert_eq!(before, keys);
        let point = Chain::from_ids(c, "w", &[]).unwrap();
        assert_eq!(cov.lift_chains(&point).unwrap().lifts.len(), 4);
    }

    #[test]
    fn compatibility_and_lemmas_on_examples() {
        for p in [p_diamond4(), p_wedge2(), CategoryFunctor::identity(&arrow())] {
            let cov = check_ramified_covering(&p).unwrap();
            let report = cov.check_simplicial_compatibility(4);
            assert!(report.passed(), "{report:?}");
            assert!(report.chains_checked > 0);
            assert!(cov.check_covering_lemmas().passed());
        }
    }

    #[test]
    fn wedge_centre_is_preinitial_and_ramified() {
        let cov = check_ramified_covering(&p_wedge2()).unwrap();
        let src = cov.functor().source();
        let x = src.object_index("x~").unwrap();
        assert!(src.is_preinitial(x));
        assert_eq!(cov.profile().e(x), 2);
    }

    #[test]
    fn functor_validation_reports() {
        let c = arrow();
        let mut objects = BTreeMap::new();
        objects.insert("x".to_string(), "x".to_string());
        objects.insert("y".to_string(), "y".to_string());
        let mut morphisms = BTreeMap::new();
        morphisms.insert("f".to_string(), "id:x".to_string());
        let err = CategoryFunctor::validate(c.clone(), c.clone(), &objects, &morphisms).unwrap_err();
        assert!(err
            .issues
            .iter()
            .any(|i| matches!(i, FunctorIssue::TargetNotPreserved { morphism, .. } if morphism == "f")));

        let err = CategoryFunctor::validate(c.clone(), c.clone(), &BTreeMap::new(), &BTreeMap::new()).unwrap_err();
        assert_eq!(err.issues.len(), 3);
    }

    #[test]
    fn composition_must_be_preserved() {
        let source = FiniteCategory::from_json(
            r#"{"objects":["a","b","c"],
                "morphisms":[{"id":"f","src":"a","tgt":"b"},{"id":"g","src":"b","tgt":"c"},
                             {"id":"h","src":"a","tgt":"c"},{"id":"k","src":"a","tgt":"c"}],
                "composition":[{"first":"f","second":"g","result":"h"}]}"#,
        )
        .unwrap();
        let map = |pairs: &[(&str, &str)]| -> BTreeMap<String, String> {
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        let objects = map(&[("a", "a"), ("b", "b"), ("c", "c")]);
        let good = map(&[("f", "f"), ("g", "g"), ("h", "h"), ("k", "k")]);
        assert!(CategoryFunctor::validate(source.clone(), source.clone(), &objects, &good).is_ok());
        let bad = map(&[("f", "f"), ("g", "g"), ("h", "k"), ("k", "k")]);
        let err = CategoryFunctor::validate(source.clone(), source, &objects, &bad).unwrap_err();
        assert_eq!(
            err.issues,
            vec![FunctorIssue::CompositionNotPreserved {
                first: "f".into(),
                second: "g".into()
            }]
        );
    }

    #[test]
    fn empty_fiber_star_is_rejected() {
        // x~ maps to x but has no outgoing arrow although x -> y exists.
        let total = FiniteCategory::from_json(r#"{"objects":["x~","y~"]}"#).unwrap();
        let base = arrow();
        let objects: BTreeMap<String, String> = [("x~", "x"), ("y~", "y")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let p = CategoryFunctor::validate(total, base, &objects, &BTreeMap::new()).unwrap();
        let err = check_ramified_covering(&p).unwrap_err();
        let CoveringError::Rejected(rejection) = err else {
            panic!("{err:?}")
        };
        assert!(rejection
            .failures
            .iter()
            .any(|f| matches!(f, CoveringFailure::EmptyReducedStar { object } if object.as_str() == "x~")));
        // y~ receives nothing, so its target star is not surjective.
        assert!(rejection
            .failures
            .iter()
            .any(|f| matches!(f, CoveringFailure::TargetStar(_))));
    }

    #[test]
    fn uneven_fibers_are_rejected() {
        // x -> y1, y2 (two arrows) and x -> y1 again over a base x -> y, y' .
        let total = FiniteCategory::from_json(
            r#"{"objects":["x~","a~","b~","c~"],
                "morphisms":[{"id":"f1","src":"x~","tgt":"a~"},{"id":"f2","src":"x~","tgt":"b~"},
                             {"id":"g1","src":"x~","tgt":"c~"}]}"#,
        )
        .unwrap();
        let base = FiniteCategory::from_json(
            r#"{"objects":["x","a","c"],
                "morphisms":[{"id":"f","src":"x","tgt":"a"},{"id":"g","src":"x","tgt":"c"}]}"#,
        )
        .unwrap();
        let m = |pairs: &[(&str, &str)]| -> BTreeMap<String, String> {
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        let p = CategoryFunctor::validate(
            total,
            base,
            &m(&[("x~", "x"), ("a~", "a"), ("b~", "a"), ("c~", "c")]),
            &m(&[("f1", "f"), ("f2", "f"), ("g1", "g")]),
        )
        .unwrap();
        let err = check_ramified_covering(&p).unwrap_err();
        assert!(matches!(
            err,
            CoveringError::Rejected(CoveringRejection { ref failures })
                if matches!(failures[..], [CoveringFailure::UnevenFibers { .. }])
        ));
    }

    #[test]
    fn disconnected_target_is_an_error() {
        let two = FiniteCategory::from_json(r#"{"objects":["a","b"]}"#).unwrap();
        let p = CategoryFunctor::identity(&two);
        assert_eq!(
            check_ramified_covering(&p).unwrap_err(),
            CoveringError::TargetNotConnected
        );
        assert_eq!(
            check_unramified_covering(&p).unwrap_err(),
            CoveringError::TargetNotConnected
        );
        let _ = terminal();
    }
}
