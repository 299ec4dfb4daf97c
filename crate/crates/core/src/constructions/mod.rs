//! Builders for categories and coverings: wedge products at preinitial
//! objects, wedges and disjoint unions of coverings, the named examples,
//! and a seeded generator of random coverings.

pub mod builtin;
pub mod random;

use thiserror::Error;

use crate::category::{FiniteCategory, MorphismId, ObjectId, RawCategory, RawComposite, RawMorphism};
use crate::covering::{
    check_ramified_covering, check_unramified_covering, CategoryFunctor, CoveringError, RamifiedCovering, StarFailure,
};

pub use builtin::{builtin_example, Builtin, BUILTIN_NAMES};
pub use random::{random_covering, RandomCoveringParams};

/// Object id of the identified basepoint of a wedge.
pub const WEDGE_BASE: &str = "wedge:base";

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("a wedge needs at least one part")]
    EmptyWedge,
    #[error("part {part}: object `{object}` is not preinitial")]
    NotPreinitial { part: usize, object: String },
    #[error("part {part}: unknown object `{object}`")]
    UnknownObject { part: usize, object: String },
    #[error("got {coverings} coverings but {basepoints} basepoints")]
    LengthMismatch { coverings: usize, basepoints: usize },
    #[error("coverings do not share a common target category")]
    TargetsDiffer,
    #[error("basepoints lie over different objects: `{0}` and `{1}`")]
    BasepointImagesDiffer(String, String),
    #[error("part {part} is not an unramified covering: {witness}")]
    NotUnramified { part: usize, witness: StarFailure },
    #[error("wedge covering has degree {got}, expected {expected}")]
    DegreeMismatch { got: u64, expected: u64 },
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("no covering within the size bounds after {0} attempts")]
    BudgetExhausted(usize),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

/// A wedge product together with the inclusion of each part.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub category: FiniteCategory,
    pub inclusions: Vec<CategoryFunctor>,
}

/// Glues the parts at their chosen preinitial objects.
///
/// The basepoint becomes `wedge:base`; every other object and every
/// non-identity morphism of part `i` (counted from 1) is prefixed `p<i>:`.
pub fn wedge(parts: &[(FiniteCategory, &str)]) -> Result<Wedge, ConstructionError> {
    if parts.is_empty() {
        return Err(ConstructionError::EmptyWedge);
    }
    let mut chosen = Vec::with_capacity(parts.len());
    for (i, (cat, name)) in parts.iter().enumerate() {
        let part = i + 1;
        let x = cat.object_index(name).ok_or_else(|| ConstructionError::UnknownObject {
            part,
            object: name.to_string(),
        })?;
        if !cat.is_preinitial(x) {
            return Err(ConstructionError::NotPreinitial {
                part,
                object: name.to_string(),
            });
        }
        chosen.push(x);
    }

    let mut raw = RawCategory {
        objects: vec![WEDGE_BASE.to_string()],
        ..Default::default()
    };
    let mut object_names: Vec<Vec<String>> = Vec::new();
    let mut morphism_names: Vec<Vec<String>> = Vec::new();
    for (i, (cat, _)) in parts.iter().enumerate() {
        let prefix = format!("p{}:", i + 1);
        let objs: Vec<String> = (0..cat.num_objects())
            .map(|x| {
                if x == chosen[i] {
                    WEDGE_BASE.to_string()
                } else {
                    format!("{prefix}{}", cat.object(x))
                }
            })
            .collect();
        raw.objects.extend(
            objs.iter()
                .enumerate()
                .filter(|(x, _)| *x != chosen[i])
                .map(|(_, o)| o.clone()),
        );
        let mors: Vec<String> = (0..cat.num_morphisms())
            .map(|f| {
                if cat.is_identity(f) {
                    MorphismId::identity(&ObjectId::new(objs[f].as_str())).to_string()
                } else {
                    format!("{prefix}{}", cat.morphism(f).id)
                }
            })
            .collect();
        for f in cat.num_objects()..cat.num_morphisms() {
            let m = cat.morphism(f);
            raw.morphisms.push(RawMorphism {
                id: mors[f].clone(),
                src: objs[m.source].clone(),
                tgt: objs[m.target].clone(),
            });
            for &g in cat.out_arrows(m.target) {
                if cat.is_identity(g) {
                    continue;
                }
                let h = cat.compose(f, g).expect("validated category");
                raw.composition.push(RawComposite {
                    first: mors[f].clone(),
                    second: mors[g].clone(),
                    result: mors[h].clone(),
                });
            }
        }
        object_names.push(objs);
        morphism_names.push(mors);
    }

    let category = FiniteCategory::validate(&raw).expect("wedge of categories at preinitial objects is a category");
    let inclusions = parts
        .iter()
        .enumerate()
        .map(|(i, (cat, _))| {
            let objects = object_names[i]
                .iter()
                .map(|o| category.object_index(o).expect("wedge object"))
                .collect();
            let morphisms = morphism_names[i]
                .iter()
                .map(|m| category.morphism_index(m).expect("wedge morphism"))
                .collect();
            CategoryFunctor::from_indices(cat.clone(), category.clone(), objects, morphisms)
                .expect("inclusion into a wedge is a functor")
        })
        .collect();
    Ok(Wedge { category, inclusions })
}

fn common_target(functors: &[&CategoryFunctor]) -> Result<FiniteCategory, ConstructionError> {
    let first = functors.first().ok_or(ConstructionError::EmptyWedge)?.target();
    if functors.iter().any(|p| p.target() != first) {
        return Err(ConstructionError::TargetsDiffer);
    }
    Ok(first.clone())
}

/// `⋁ P_i` for functors over a common target, glued at `basepoints`.
fn wedge_functors(functors: &[&CategoryFunctor], basepoints: &[&str]) -> Result<CategoryFunctor, ConstructionError> {
    if functors.len() != basepoints.len() {
        return Err(ConstructionError::LengthMismatch {
            coverings: functors.len(),
            basepoints: basepoints.len(),
        });
    }
    let target = common_target(functors)?;
    let mut image: Option<usize> = None;
    for (i, (p, b)) in functors.iter().zip(basepoints).enumerate() {
        let xt = p
            .source()
            .object_index(b)
            .ok_or_else(|| ConstructionError::UnknownObject {
                part: i + 1,
                object: b.to_string(),
            })?;
        let x = p.map_object(xt);
        match image {
            Some(prev) if prev != x => {
                return Err(ConstructionError::BasepointImagesDiffer(
                    target.object(prev).to_string(),
                    target.object(x).to_string(),
                ))
            }
            _ => image = Some(x),
        }
    }
    let parts: Vec<(FiniteCategory, &str)> = functors
        .iter()
        .zip(basepoints)
        .map(|(p, b)| (p.source().clone(), *b))
        .collect();
    let w = wedge(&parts)?;

    let mut object_map = vec![usize::MAX; w.category.num_objects()];
    let mut morphism_map = vec![usize::MAX; w.category.num_morphisms()];
    for (p, inc) in functors.iter().zip(&w.inclusions) {
        for x in 0..p.source().num_objects() {
            object_map[inc.map_object(x)] = p.map_object(x);
        }
        for f in 0..p.source().num_morphisms() {
            morphism_map[inc.map_morphism(f)] = p.map_morphism(f);
        }
    }
    Ok(
        CategoryFunctor::from_indices(w.category, target, object_map, morphism_map)
            .expect("wedge of functors agreeing on the basepoint is a functor"),
    )
}

/// Wedges unramified coverings `P_i: C̃_i → C` at preinitial `x̃_i` over a common `x`.
///
/// The result is verified as a ramified covering of degree `Σ deg P_i`.
pub fn wedge_covering(
    coverings: &[CategoryFunctor],
    basepoints: &[&str],
) -> Result<RamifiedCovering, ConstructionError> {
    let mut expected = 0;
    for (i, p) in coverings.iter().enumerate() {
        let verdict = check_unramified_covering(p)?;
        if let Some(witness) = verdict.witness {
            return Err(ConstructionError::NotUnramified { part: i + 1, witness });
        }
        expected += check_ramified_covering(p)?.degree();
    }
    let refs: Vec<&CategoryFunctor> = coverings.iter().collect();
    let cov = check_ramified_covering(&wedge_functors(&refs, basepoints)?)?;
    if cov.degree() != expected {
        return Err(ConstructionError::DegreeMismatch {
            got: cov.degree(),
            expected,
        });
    }
    Ok(cov)
}

/// `⊔ P_i` over a common target; objects and morphisms of part `i` are prefixed `u<i>:`.
pub fn disjoint_union(functors: &[&CategoryFunctor]) -> Result<CategoryFunctor, ConstructionError> {
    let target = common_target(functors)?;
    let mut raw = RawCategory::default();
    let mut object_map = Vec::new();
    let mut morphism_names = Vec::new();
    let mut morphism_images = Vec::new();
    for (i, p) in functors.iter().enumerate() {
        let prefix = format!("u{}:", i + 1);
        let cat = p.source();
        let part = cat.to_raw();
        raw.objects.extend(part.objects.iter().map(|o| format!("{prefix}{o}")));
        object_map.extend(p.object_map());
        let rename = |id: &str| match id.strip_prefix(crate::category::IDENTITY_PREFIX) {
            Some(obj) => format!("{}{prefix}{obj}", crate::category::IDENTITY_PREFIX),
            None => format!("{prefix}{id}"),
        };
        raw.morphisms.extend(part.morphisms.iter().map(|m| RawMorphism {
            id: rename(&m.id),
            src: format!("{prefix}{}", m.src),
            tgt: format!("{prefix}{}", m.tgt),
        }));
        raw.composition.extend(part.composition.iter().map(|c| RawComposite {
            first: rename(&c.first),
            second: rename(&c.second),
            result: rename(&c.result),
        }));
        for f in 0..cat.num_morphisms() {
            morphism_names.push(rename(cat.morphism(f).id.as_str()));
            morphism_images.push(p.map_morphism(f));
        }
    }
    let source = FiniteCategory::validate(&raw).expect("disjoint union of categories is a category");
    let mut morphism_map = vec![usize::MAX; source.num_morphisms()];
    for (name, image) in morphism_names.iter().zip(morphism_images) {
        morphism_map[source.morphism_index(name).expect("renamed morphism")] = image;
    }
    Ok(CategoryFunctor::from_indices(source, target, object_map, morphism_map)
        .expect("disjoint union of functors is a functor"))
}

/// Wedge of ramified coverings; unlike [`wedge_covering`] the parts may be ramified.
pub fn wedge_ramified(
    coverings: &[&CategoryFunctor],
    basepoints: &[&str],
) -> Result<RamifiedCovering, ConstructionError> {
    Ok(check_ramified_covering(&wedge_functors(coverings, basepoints)?)?)
}

#[cfg(test)]
mod tests {
    use super::builtin::{arrow, diamond, p_wedge2, terminal, wedge2};
    use super::*;
    use crate::invariants::{check_riemann_hurwitz, series_euler_characteristic, EulerCharacteristic};
    use num_rational::BigRational;

    /// Hom-set sizes indexed by object names, for comparing categories up to renaming.
    fn hom_profile(c: &FiniteCategory) -> Vec<u64> {
        let mut v: Vec<u64> = c.adjacency_matrix().into_iter().flatten().collect();
        v.sort();
        v
    }

    #[test]
    fn single_part_wedge_is_a_copy() {
        let w = wedge(&[(diamond(), "x")]).unwrap();
        assert_eq!(w.category.num_objects(), 4);
        assert_eq!(w.category.num_morphisms(), diamond().num_morphisms());
        assert_eq!(w.category.object(0).as_str(), WEDGE_BASE);
        assert!(w.category.object_index("p1:z").is_some());
    }

    #[test]
    fn two_arrows_wedge_to_the_example() {
        let w = wedge(&[(arrow(), "x"), (arrow(), "x")]).unwrap();
        assert_eq!(w.category.num_objects(), 3);
        assert_eq!(w.category.num_non_identity_morphisms(), 2);
        assert_eq!(w.category.adjacency_matrix(), wedge2().adjacency_matrix());
        assert_eq!(w.inclusions.len(), 2);
    }

    #[test]
    fn terminal_wedge_collapses() {
        let w = wedge(&[(terminal(), "*"), (terminal(), "*")]).unwrap();
        assert_eq!(w.category.num_objects(), 1);
        assert_eq!(w.category.num_morphisms(), 1);
    }

    #[test]
    fn non_preinitial_rejected() {
        assert!(matches!(
            wedge(&[(arrow(), "y")]),
            Err(ConstructionError::NotPreinitial { part: 1, .. })
        ));
        assert!(matches!(wedge(&[]), Err(ConstructionError::EmptyWedge)));
    }

    #[test]
    fn wedge_is_associative_up_to_renaming() {
        let ab = wedge(&[(arrow(), "x"), (diamond(), "x")]).unwrap().category;
        let left = wedge(&[(ab, WEDGE_BASE), (arrow(), "x")]).unwrap().category;
        let bc = wedge(&[(diamond(), "x"), (arrow(), "x")]).unwrap().category;
        let right = wedge(&[(arrow(), "x"), (bc, WEDGE_BASE)]).unwrap().category;
        assert_eq!(left.num_objects(), right.num_objects());
        assert_eq!(left.num_morphisms(), right.num_morphisms());
        assert_eq!(hom_profile(&left), hom_profile(&right));
    }

    #[test]
    fn wedge_covering_of_identities() {
        let id = CategoryFunctor::identity(&arrow());
        let cov = wedge_covering(&[id.clone(), id.clone()], &["x", "x"]).unwrap();
        assert_eq!(cov.degree(), 2);
        assert_eq!(cov.total_ramification(), 1);
        let example = check_ramified_covering(&p_wedge2()).unwrap();
        assert_eq!(
            hom_profile(cov.functor().source()),
            hom_profile(example.functor().source())
        );

        let single = wedge_covering(std::slice::from_ref(&id), &["x"]).unwrap();
        assert_eq!(single.degree(), 1);
        assert_eq!(single.total_ramification(), 0);
    }

    #[test]
    fn d_fold_wedge_satisfies_riemann_hurwitz() {
        let c = diamond();
        let chi = series_euler_characteristic(&c);
        for d in 1..=4u64 {
            let ids = vec![CategoryFunctor::identity(&c); d as usize];
            let bases = vec!["y"; d as usize];
            let cov = wedge_covering(&ids, &bases).unwrap();
            assert_eq!(cov.degree(), d);
            assert_eq!(cov.total_ramification(), d - 1);
            let rh = check_riemann_hurwitz(&cov);
            assert!(rh.passed());
            let expected =
                chi.value().unwrap() * BigRational::from_integer(d.into()) - BigRational::from_integer((d - 1).into());
            assert_eq!(rh.chi_total, EulerCharacteristic::Defined(expected));
        }
    }

    #[test]
    fn wedge_covering_errors() {
        let id = CategoryFunctor::identity(&diamond());
        assert!(matches!(
            wedge_covering(&[id.clone(), id.clone()], &["x", "y"]),
            Err(ConstructionError::BasepointImagesDiffer(..))
        ));
        assert!(matches!(
            wedge_covering(&[p_wedge2(), p_wedge2()], &["x~", "x~"]),
            Err(ConstructionError::NotUnramified { part: 1, .. })
        ));
        let other = CategoryFunctor::identity(&arrow());
        assert!(matches!(
            wedge_covering(&[id, other], &["x", "x"]),
            Err(ConstructionError::TargetsDiffer)
        ));
    }

    #[test]
    fn disjoint_union_adds_degrees() {
        let id = CategoryFunctor::identity(&diamond());
        let u = disjoint_union(&[&id, &id, &id]).unwrap();
        let cov = check_ramified_covering(&u).unwrap();
        assert_eq!(cov.degree(), 3);
        assert_eq!(cov.total_ramification(), 0);
        assert!(check_unramified_covering(&u).unwrap().is_covering());
    }

    #[test]
    fn wedge_of_ramified_parts() {
        let p = p_wedge2();
        let cov = wedge_ramified(&[&p, &p], &["x~", "x~"]).unwrap();
        assert_eq!(cov.degree(), 4);
        assert_eq!(cov.total_ramification(), 3);
    }
}
