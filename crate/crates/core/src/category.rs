//! Finite categories given by an explicit composition table.
//!
//! Identities are never written down in the external format. Every object
//! `x` receives a synthesized identity with the reserved id `id:x`, and
//! composites with an identity factor are implied. Internally the identity
//! of object `i` is stored at morphism index `i`, so `is_identity(m)` is a
//! bound check.

use std::borrow::Borrow;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prefix reserved for synthesized identity morphisms.
pub const IDENTITY_PREFIX: &str = "id:";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(String);

impl ObjectId {
    pub fn new(name: impl Into<String>) -> Self {
        ObjectId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for ObjectId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MorphismId(String);

impl MorphismId {
    pub fn new(name: impl Into<String>) -> Self {
        MorphismId(name.into())
    }

    /// The reserved id of the identity on `object`.
    pub fn identity(object: &ObjectId) -> Self {
        MorphismId(format!("{IDENTITY_PREFIX}{object}"))
    }

    pub fn is_reserved(&self) -> bool {
        self.0.starts_with(IDENTITY_PREFIX)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MorphismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for MorphismId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for MorphismId {
    fn from(s: &str) -> Self {
        MorphismId(s.to_string())
    }
}

/// A morphism with its endpoints given as object indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: MorphismId,
    pub source: usize,
    pub target: usize,
}

/// On-disk form of a category.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<RawMorphism>,
    #[serde(default)]
    pub composition: Vec<RawComposite>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `result = second ∘ first`, written in diagrammatic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComposite {
    pub first: String,
    pub second: String,
    pub result: String,
}

/// A single violated requirement found while validating a category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    EmptyObjectName,
    DuplicateObject(String),
    EmptyMorphismId,
    DuplicateMorphism(String),
    ReservedMorphismId(String),
    DanglingObject {
        morphism: String,
        object: String,
    },
    UnknownMorphism {
        morphism: String,
    },
    NotComposable {
        first: String,
        second: String,
    },
    WrongComposite {
        first: String,
        second: String,
        result: String,
    },
    ConflictingComposite {
        first: String,
        second: String,
        results: (String, String),
    },
    UnitViolation {
        first: String,
        second: String,
        listed: String,
        expected: String,
    },
    MissingComposite {
        first: String,
        second: String,
    },
    AssociativityFailure {
        first: String,
        second: String,
        third: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EmptyObjectName => write!(f, "empty object name"),
            Issue::DuplicateObject(x) => write!(f, "duplicate object `{x}`"),
            Issue::EmptyMorphismId => write!(f, "empty morphism id"),
            Issue::DuplicateMorphism(m) => write!(f, "duplicate morphism `{m}`"),
            Issue::ReservedMorphismId(m) => {
                write!(f, "morphism id `{m}` uses the reserved prefix `{IDENTITY_PREFIX}`")
            }
            Issue::DanglingObject { morphism, object } => {
                write!(f, "morphism `{morphism}` refers to unknown object `{object}`")
            }
            Issue::UnknownMorphism { morphism } => {
                write!(f, "composition table refers to unknown morphism `{morphism}`")
            }
            Issue::NotComposable { first, second } => {
                write!(f, "composite listed for non-composable pair ({first},{second})")
            }
            Issue::WrongComposite { first, second, result } => write!(
                f,
                "composite ({first},{second}) = `{result}` has the wrong source or target"
            ),
            Issue::ConflictingComposite { first, second, results } => write!(
                f,
                "conflicting composites for ({first},{second}): `{}` and `{}`",
                results.0, results.1
            ),
            Issue::UnitViolation {
                first,
                second,
                listed,
                expected,
            } => write!(
                f,
                "unit law violated: composite ({first},{second}) listed as `{listed}`, expected `{expected}`"
            ),
            Issue::MissingComposite { first, second } => {
                write!(f, "missing composite ({first},{second})")
            }
            Issue::AssociativityFailure {
                first,
                second,
                third,
                left,
                right,
            } => write!(
                f,
                "associativity fails on ({first},{second},{third}): `{left}` vs `{right}`"
            ),
        }
    }
}

/// Every problem found in a candidate category, in detection order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("invalid category: {0}")]
    Invalid(ValidationReport),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("malformed category JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarDirection {
    SourceStar,
    TargetStar,
}

/// `S(x)` or `T(x)`: all morphisms out of or into `base`, identity included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismStar {
    pub base: ObjectId,
    pub direction: StarDirection,
    pub members: BTreeSet<MorphismId>,
}

/// A validated finite category. Immutable once constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<ObjectId>,
    object_index: HashMap<ObjectId, usize>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<MorphismId, usize>,
    // Dense table indexed by `first * morphisms.len() + second`.
    composition: Vec<Option<usize>>,
    // Both sorted by morphism id.
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl FiniteCategory {
    /// Checks every category axiom and collects all violations.
    pub fn validate(raw: &RawCategory) -> Result<Self, ValidationReport> {
        let mut issues = Vec::new();

        let mut objects: Vec<ObjectId> = Vec::new();
        let mut object_index = HashMap::new();
        for name in &raw.objects {
            if name.is_empty() {
                issues.push(Issue::EmptyObjectName);
                continue;
            }
            let id = ObjectId::new(name.as_str());
            if object_index.contains_key(&id) {
                issues.push(Issue::DuplicateObject(name.clone()));
                continue;
            }
            object_index.insert(id.clone(), objects.len());
            objects.push(id);
        }

        let mut morphisms: Vec<Morphism> = Vec::new();
        let mut morphism_index = HashMap::new();
        for (i, x) in objects.iter().enumerate() {
            let id = MorphismId::identity(x);
            morphism_index.insert(id.clone(), i);
            morphisms.push(Morphism {
                id,
                source: i,
                target: i,
            });
        }
        for raw_m in &raw.morphisms {
            if raw_m.id.is_empty() {
                issues.push(Issue::EmptyMorphismId);
                continue;
            }
            let id = MorphismId::new(raw_m.id.as_str());
            if id.is_reserved() {
                issues.push(Issue::ReservedMorphismId(raw_m.id.clone()));
                continue;
            }
            if morphism_index.contains_key(&id) {
                issues.push(Issue::DuplicateMorphism(raw_m.id.clone()));
                continue;
            }
            let mut endpoint = |name: &str| match object_index.get(name) {
                Some(&i) => Some(i),
                None => {
                    issues.push(Issue::DanglingObject {
                        morphism: raw_m.id.clone(),
                        object: name.to_string(),
                    });
                    None
                }
            };
            let (Some(source), Some(target)) = (endpoint(&raw_m.src), endpoint(&raw_m.tgt)) else {
                continue;
            };
            morphism_index.insert(id.clone(), morphisms.len());
            morphisms.push(Morphism { id, source, target });
        }

        let n_obj = objects.len();
        let m = morphisms.len();
        let mut composition: Vec<Option<usize>> = vec![None; m * m];

        for entry in &raw.composition {
            let mut lookup = |name: &str| match morphism_index.get(name) {
                Some(&i) => Some(i),
                None => {
                    issues.push(Issue::UnknownMorphism {
                        morphism: name.to_string(),
                    });
                    None
                }
            };
            let (Some(f), Some(g), Some(h)) = (lookup(&entry.first), lookup(&entry.second), lookup(&entry.result))
            else {
                continue;
            };
            if morphisms[f].target != morphisms[g].source {
                issues.push(Issue::NotComposable {
                    first: entry.first.clone(),
                    second: entry.second.clone(),
                });
                continue;
            }
            if morphisms[h].source != morphisms[f].source || morphisms[h].target != morphisms[g].target {
                issues.push(Issue::WrongComposite {
                    first: entry.first.clone(),
                    second: entry.second.clone(),
                    result: entry.result.clone(),
                });
                continue;
            }
            let implied = if f < n_obj {
                Some(g)
            } else if g < n_obj {
                Some(f)
            } else {
                None
            };
            if let Some(expected) = implied {
                if h != expected {
                    issues.push(Issue::UnitViolation {
                        first: entry.first.clone(),
                        second: entry.second.clone(),
                        listed: entry.result.clone(),
                        expected: morphisms[expected].id.to_string(),
                    });
                }
                continue;
            }
            match composition[f * m + g] {
                Some(prev) if prev != h => issues.push(Issue::ConflictingComposite {
                    first: entry.first.clone(),
                    second: entry.second.clone(),
                    results: (morphisms[prev].id.to_string(), entry.result.clone()),
                }),
                _ => composition[f * m + g] = Some(h),
            }
        }

        for (f, mor) in morphisms.iter().enumerate() {
            composition[mor.source * m + f] = Some(f);
            composition[f * m + mor.target] = Some(f);
        }

        let mut out_arrows = vec![Vec::new(); n_obj];
        let mut in_arrows = vec![Vec::new(); n_obj];
        for (f, mor) in morphisms.iter().enumerate() {
            out_arrows[mor.source].push(f);
            in_arrows[mor.target].push(f);
        }
        for list in out_arrows.iter_mut().chain(in_arrows.iter_mut()) {
            list.sort_by(|&a, &b| morphisms[a].id.cmp(&morphisms[b].id));
        }

        for f in n_obj..m {
            for &g in &out_arrows[morphisms[f].target] {
                if g >= n_obj && composition[f * m + g].is_none() {
                    issues.push(Issue::MissingComposite {
                        first: morphisms[f].id.to_string(),
                        second: morphisms[g].id.to_string(),
                    });
                }
            }
        }

        // Triples containing an identity are associative by construction.
        for f in n_obj..m {
            for &g in &out_arrows[morphisms[f].target] {
                if g < n_obj {
                    continue;
                }
                for &h in &out_arrows[morphisms[g].target] {
                    if h < n_obj {
                        continue;
                    }
                    let left = composition[f * m + g].and_then(|fg| composition[fg * m + h]);
                    let right = composition[g * m + h].and_then(|gh| composition[f * m + gh]);
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            issues.push(Issue::AssociativityFailure {
                                first: morphisms[f].id.to_string(),
                                second: morphisms[g].id.to_string(),
                                third: morphisms[h].id.to_string(),
                                left: morphisms[l].id.to_string(),
                                right: morphisms[r].id.to_string(),
                            });
                        }
                    }
                }
            }
        }

        if !issues.is_empty() {
            return Err(ValidationReport { issues });
        }
        Ok(FiniteCategory {
            objects,
            object_index,
            morphisms,
            morphism_index,
            composition,
            out_arrows,
            in_arrows,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, CategoryError> {
        let raw: RawCategory = serde_json::from_str(text)?;
        FiniteCategory::validate(&raw).map_err(CategoryError::Invalid)
    }

    /// The external form: non-identity morphisms and non-identity composable pairs only.
    pub fn to_raw(&self) -> RawCategory {
        let n = self.num_objects();
        let morphisms = self.morphisms[n..]
            .iter()
            .map(|m| RawMorphism {
                id: m.id.to_string(),
                src: self.objects[m.source].to_string(),
                tgt: self.objects[m.target].to_string(),
            })
            .collect();
        let mut composition = Vec::new();
        for f in n..self.morphisms.len() {
            for &g in &self.out_arrows[self.morphisms[f].target] {
                if g < n {
                    continue;
                }
                let h = self
                    .compose(f, g)
                    .expect("validated category is closed under composition");
                composition.push(RawComposite {
                    first: self.morphisms[f].id.to_string(),
                    second: self.morphisms[g].id.to_string(),
                    result: self.morphisms[h].id.to_string(),
                });
            }
        }
        RawCategory {
            objects: self.objects.iter().map(ToString::to_string).collect(),
            morphisms,
            composition,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("raw category serializes")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// Number of morphisms, identities included.
    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn num_non_identity_morphisms(&self) -> usize {
        self.morphisms.len() - self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn object(&self, x: usize) -> &ObjectId {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn require_object(&self, name: &str) -> Result<usize, CategoryError> {
        self.object_index(name)
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    pub fn require_morphism(&self, id: &str) -> Result<usize, CategoryError> {
        self.morphism_index(id)
            .ok_or_else(|| CategoryError::UnknownMorphism(id.to_string()))
    }

    pub fn identity(&self, x: usize) -> usize {
        debug_assert!(x < self.objects.len());
        x
    }

    pub fn is_identity(&self, f: usize) -> bool {
        f < self.objects.len()
    }

    /// `g ∘ f` for `f: a → b`, `g: b → c`; `None` when not composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition[f * self.morphisms.len() + g]
    }

    /// Morphisms with source `x`, sorted by id.
    pub fn out_arrows(&self, x: usize) -> &[usize] {
        &self.out_arrows[x]
    }

    /// Morphisms with target `x`, sorted by id.
    pub fn in_arrows(&self, x: usize) -> &[usize] {
        &self.in_arrows[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arrows[x]
            .iter()
            .copied()
            .filter(move |&f| self.morphisms[f].target == y)
    }

    fn star(&self, name: &str, direction: StarDirection) -> Result<MorphismStar, CategoryError> {
        let x = self.require_object(name)?;
        let arrows = match direction {
            StarDirection::SourceStar => &self.out_arrows[x],
            StarDirection::TargetStar => &self.in_arrows[x],
        };
        Ok(MorphismStar {
            base: self.objects[x].clone(),
            direction,
            members: arrows.iter().map(|&f| self.morphisms[f].id.clone()).collect(),
        })
    }

    /// `S(x)`.
    pub fn source_star(&self, x: &str) -> Result<MorphismStar, CategoryError> {
        self.star(x, StarDirection::SourceStar)
    }

    /// `T(x)`.
    pub fn target_star(&self, x: &str) -> Result<MorphismStar, CategoryError> {
        self.star(x, StarDirection::TargetStar)
    }

    /// `S̄(x)`, the source star without the identity.
    pub fn reduced_source_star(&self, x: &str) -> Result<BTreeSet<MorphismId>, CategoryError> {
        let x = self.require_object(x)?;
        Ok(self
            .reduced_out_arrows(x)
            .map(|f| self.morphisms[f].id.clone())
            .collect())
    }

    pub fn reduced_out_arrows(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arrows[x]
            .iter()
            .copied()
            .filter(move |&f| !self.is_identity(f))
    }

    /// Nonempty and connected by zig-zags of morphisms.
    pub fn is_connected(&self) -> bool {
        let n = self.objects.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            let neighbours = self.out_arrows[x]
                .iter()
                .map(|&f| self.morphisms[f].target)
                .chain(self.in_arrows[x].iter().map(|&f| self.morphisms[f].source));
            for y in neighbours {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_preinitial(&self, x: usize) -> bool {
        self.in_arrows[x].len() == 1
    }

    /// Objects whose target star is just the identity, in object order.
    pub fn preinitial_objects(&self) -> Vec<ObjectId> {
        (0..self.objects.len())
            .filter(|&x| self.is_preinitial(x))
            .map(|x| self.objects[x].clone())
            .collect()
    }

    /// `#Hom(x, y)` in object order, identities included.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.objects.len();
        let mut a = vec![vec![0u64; n]; n];
        for m in &self.morphisms {
            a[m.source][m.target] += 1;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn parse(v: serde_json::Value) -> Result<FiniteCategory, ValidationReport> {
        let raw: RawCategory = serde_json::from_value(v).unwrap();
        FiniteCategory::validate(&raw)
    }

    fn diamond() -> FiniteCategory {
        parse(json!({
            "objects": ["x", "y", "z", "w"],
            "morphisms": [
                {"id": "xz", "src": "x", "tgt": "z"},
                {"id": "xw", "src": "x", "tgt": "w"},
                {"id": "yz", "src": "y", "tgt": "z"},
                {"id": "yw", "src": "y", "tgt": "w"}
            ]
        }))
        .unwrap()
    }

    #[test]
    fn terminal_category_is_valid() {
        let c = parse(json!({"objects": ["*"]})).unwrap();
        assert_eq!(c.num_morphisms(), 1);
        assert!(c.is_connected());
        assert_eq!(c.preinitial_objects(), vec![ObjectId::from("*")]);
        assert_eq!(c.adjacency_matrix(), vec![vec![1]]);
        assert!(c.reduced_source_star("*").unwrap().is_empty());
    }

    #[test]
    fn diamond_queries() {
        let c = diamond();
        assert!(c.is_connected());
        assert_eq!(
            c.adjacency_matrix(),
            vec![vec![1, 0, 1, 1], vec![0, 1, 1, 1], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
        let reduced = c.reduced_source_star("x").unwrap();
        assert_eq!(
            reduced.into_iter().collect::<Vec<_>>(),
            vec![MorphismId::from("xw"), MorphismId::from("xz")]
        );
        assert_eq!(c.preinitial_objects(), vec![ObjectId::from("x"), ObjectId::from("y")]);
        let t = c.target_star("z").unwrap();
        assert_eq!(t.members.len(), 3);
        assert!(t.members.contains(&MorphismId::from("id:z")));
    }

    #[test]
    fn arrow_category() {
        let c = parse(json!({"objects": ["x", "y"], "morphisms": [{"id": "f", "src": "x", "tgt": "y"}]})).unwrap();
        assert_eq!(c.adjacency_matrix(), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(c.preinitial_objects(), vec![ObjectId::from("x")]);
    }

    #[test]
    fn missing_composite_is_reported() {
        let err = parse(json!({
            "objects": ["a", "b", "c"],
            "morphisms": [{"id": "f", "src": "a", "tgt": "b"}, {"id": "g", "src": "b", "tgt": "c"}]
        }))
        .unwrap_err();
        assert_eq!(
            err.issues,
            vec![Issue::MissingComposite {
                first: "f".into(),
                second: "g".into()
            }]
        );
        assert!(err.to_string().contains("missing composite (f,g)"));
    }

    #[test]
    fn every_failure_is_listed() {
        let err = parse(json!({
            "objects": ["a", "a", "b"],
            "morphisms": [
                {"id": "f", "src": "a", "tgt": "b"},
                {"id": "f", "src": "a", "tgt": "b"},
                {"id": "id:b", "src": "b", "tgt": "b"},
                {"id": "g", "src": "a", "tgt": "q"}
            ],
            "composition": [{"first": "f", "second": "id:b", "result": "id:a"}]
        }))
        .unwrap_err();
        assert_eq!(err.issues.len(), 5, "{err}");
        assert!(err.issues.contains(&Issue::DuplicateObject("a".into())));
        assert!(err.issues.contains(&Issue::DuplicateMorphism("f".into())));
        assert!(err.issues.contains(&Issue::ReservedMorphismId("id:b".into())));
        assert!(err
            .issues
            .iter()
            .any(|i| matches!(i, Issue::DanglingObject { object, .. } if object == "q")));
        assert!(err.issues.iter().any(|i| matches!(i, Issue::WrongComposite { .. })));
    }

    #[test]
    fn unit_conflict_rejected_but_consistent_unit_accepted() {
        let base = json!({
            "objects": ["a", "b"],
            "morphisms": [{"id": "f", "src": "a", "tgt": "b"}, {"id": "f2", "src": "a", "tgt": "b"}],
            "composition": [{"first": "id:a", "second": "f", "result": "f"}]
        });
        assert!(parse(base).is_ok());
        let err = parse(json!({
            "objects": ["a", "b"],
            "morphisms": [{"id": "f", "src": "a", "tgt": "b"}, {"id": "f2", "src": "a", "tgt": "b"}],
            "composition": [{"first": "id:a", "second": "f", "result": "f2"}]
        }))
        .unwrap_err();
        assert!(matches!(err.issues[0], Issue::UnitViolation { .. }));
    }

    #[test]
    fn associativity_failure_detected() {
        // Monoid on one object with e, a; a∘a listed twice differently through a triple.
        let err = parse(json!({
            "objects": ["o"],
            "morphisms": [
                {"id": "a", "src": "o", "tgt": "o"},
                {"id": "b", "src": "o", "tgt": "o"}
            ],
            "composition": [
                {"first": "a", "second": "a", "result": "b"},
                {"first": "a", "second": "b", "result": "a"},
                {"first": "b", "second": "a", "result": "b"},
                {"first": "b", "second": "b", "result": "b"}
            ]
        }))
        .unwrap_err();
        assert!(err
            .issues
            .iter()
            .all(|i| matches!(i, Issue::AssociativityFailure { .. })));
        assert!(!err.issues.is_empty());
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let c = parse(json!({
            "objects": ["o"],
            "morphisms": [{"id": "s", "src": "o", "tgt": "o"}],
            "composition": [{"first": "s", "second": "s", "result": "id:o"}]
        }))
        .unwrap();
        let s = c.morphism_index("s").unwrap();
        assert_eq!(c.compose(s, s), Some(c.identity(0)));
        assert!(!c.is_preinitial(0));
    }

    #[test]
    fn empty_and_disconnected() {
        let empty = parse(json!({"objects": []})).unwrap();
        assert!(!empty.is_connected());
        let two = parse(json!({"objects": ["a", "b"]})).unwrap();
        assert!(!two.is_connected());
    }

    #[test]
    fn unknown_object_in_star() {
        assert!(matches!(
            diamond().source_star("q"),
            Err(CategoryError::UnknownObject(_))
        ));
    }

    #[test]
    fn revalidation_is_a_fixed_point() {
        let c = diamond();
        let again = FiniteCategory::validate(&c.to_raw()).unwrap();
        assert_eq!(c, again);
    }
}
