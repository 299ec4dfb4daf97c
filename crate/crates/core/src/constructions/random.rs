//! Seeded random ramified coverings.
//!
//! The base is a connected category on a random acyclic graph, either free
//! (morphisms are paths) or thin (the reachability order). Unramified covers
//! of a free base come from permuting sheets along each edge; a thin base is
//! covered by disjoint copies. Covers are wedged at preinitial objects and the
//! resulting groups are joined by disjoint union.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{FiniteCategory, RawCategory, RawComposite, RawMorphism};
use crate::covering::{check_ramified_covering, CategoryFunctor, RamifiedCovering};

use super::{disjoint_union, wedge_covering, ConstructionError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomCoveringParams {
    pub max_base_objects: usize,
    pub max_sheets: usize,
    /// Most covers glued into one wedge.
    pub max_parts: usize,
    /// Most wedges joined by disjoint union.
    pub max_groups: usize,
    /// Bounds on the total category.
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub max_attempts: usize,
}

impl Default for RandomCoveringParams {
    fn default() -> Self {
        RandomCoveringParams {
            max_base_objects: 4,
            max_sheets: 3,
            max_parts: 3,
            max_groups: 2,
            max_objects: 12,
            max_morphisms: 24,
            max_attempts: 1000,
        }
    }
}

struct Graph {
    vertices: Vec<String>,
    edges: Vec<(String, usize, usize)>,
}

/// Free category on an acyclic graph, with the index of each path.
struct Free {
    category: FiniteCategory,
    paths: HashMap<Vec<usize>, usize>,
}

fn free_category(g: &Graph) -> Free {
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..g.edges.len()).map(|e| vec![e]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = g.edges[*p.last().expect("nonempty path")].2;
            for (e, edge) in g.edges.iter().enumerate() {
                if edge.1 == end {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
        }
        all.append(&mut frontier);
        frontier = next;
    }
    let name = |p: &[usize]| p.iter().map(|&e| g.edges[e].0.as_str()).collect::<Vec<_>>().join(".");
    let start = |p: &[usize]| g.edges[p[0]].1;
    let end = |p: &[usize]| g.edges[*p.last().expect("nonempty path")].2;

    let mut raw = RawCategory {
        objects: g.vertices.clone(),
        ..Default::default()
    };
    for p in &all {
        raw.morphisms.push(RawMorphism {
            id: name(p),
            src: g.vertices[start(p)].clone(),
            tgt: g.vertices[end(p)].clone(),
        });
    }
    for p in &all {
        for q in all.iter().filter(|q| start(q) == end(p)) {
            raw.composition.push(RawComposite {
                first: name(p),
                second: name(q),
                result: name(&[p.as_slice(), q.as_slice()].concat()),
            });
        }
    }
    let category = FiniteCategory::validate(&raw).expect("free category on an acyclic graph");
    let paths = all
        .iter()
        .map(|p| (p.clone(), category.morphism_index(&name(p)).expect("path morphism")))
        .collect();
    Free { category, paths }
}

/// The reachability order of an acyclic graph as a thin category.
fn thin_category(g: &Graph) -> FiniteCategory {
    let n = g.vertices.len();
    let mut reach = vec![vec![false; n]; n];
    for &(_, a, b) in &g.edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let name = |i: usize, j: usize| format!("{}<{}", g.vertices[i], g.vertices[j]);
    let mut raw = RawCategory {
        objects: g.vertices.clone(),
        ..Default::default()
    };
    for i in 0..n {
        for j in 0..n {
            if !reach[i][j] {
                continue;
            }
            raw.morphisms.push(RawMorphism {
                id: name(i, j),
                src: g.vertices[i].clone(),
                tgt: g.vertices[j].clone(),
            });
            for k in (0..n).filter(|&k| reach[j][k]) {
                raw.composition.push(RawComposite {
                    first: name(i, j),
                    second: name(j, k),
                    result: name(i, k),
                });
            }
        }
    }
    FiniteCategory::validate(&raw).expect("reachability order of an acyclic graph")
}

enum Base {
    Free(Graph, Free),
    Thin(FiniteCategory),
}

impl Base {
    fn category(&self) -> &FiniteCategory {
        match self {
            Base::Free(_, free) => &free.category,
            Base::Thin(c) => c,
        }
    }

    /// An unramified covering with `sheets` sheets.
    fn cover(&self, sheets: usize, rng: &mut ChaCha8Rng) -> CategoryFunctor {
        match self {
            Base::Thin(c) => {
                let id = CategoryFunctor::identity(c);
                let copies: Vec<&CategoryFunctor> = vec![&id; sheets];
                disjoint_union(&copies).expect("copies share a target")
            }
            Base::Free(g, base) => {
                let vertex = |v: usize, s: usize| v * sheets + s;
                let mut derived = Graph {
                    vertices: g
                        .vertices
                        .iter()
                        .flat_map(|v| (0..sheets).map(move |s| format!("{v}.{s}")))
                        .collect(),
                    edges: Vec::new(),
                };
                for (name, a, b) in &g.edges {
                    let mut perm: Vec<usize> = (0..sheets).collect();
                    perm.shuffle(rng);
                    for (s, &t) in perm.iter().enumerate() {
                        derived
                            .edges
                            .push((format!("{name}.{s}"), vertex(*a, s), vertex(*b, t)));
                    }
                }
                let total = free_category(&derived);
                let cat = &total.category;
                let object_map: Vec<usize> = (0..cat.num_objects()).map(|x| x / sheets).collect();
                let mut morphism_map: Vec<usize> = object_map.clone();
                morphism_map.resize(cat.num_morphisms(), usize::MAX);
                for (path, &f) in &total.paths {
                    let downstairs: Vec<usize> = path.iter().map(|e| e / sheets).collect();
                    morphism_map[f] = base.paths[&downstairs];
                }
                CategoryFunctor::from_indices(cat.clone(), base.category.clone(), object_map, morphism_map)
                    .expect("sheet permutations give a functor")
            }
        }
    }
}

fn random_base(rng: &mut ChaCha8Rng, params: &RandomCoveringParams) -> Base {
    let n = rng.gen_range(1..=params.max_base_objects.max(1));
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for j in 1..n {
        let i = rng.gen_range(0..j);
        edges.push((format!("e{}", edges.len()), i, j));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.25) {
                edges.push((format!("e{}", edges.len()), i, j));
            }
        }
    }
    let g = Graph { vertices, edges };
    if rng.gen_bool(0.5) {
        let free = free_category(&g);
        Base::Free(g, free)
    } else {
        Base::Thin(thin_category(&g))
    }
}

/// A verified ramified covering determined by `seed`.
///
/// Fails only when no draw fits the size bounds within `max_attempts`.
pub fn random_covering(seed: u64, params: &RandomCoveringParams) -> Result<RamifiedCovering, ConstructionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..params.max_attempts {
        let base = random_base(&mut rng, params);
        let c = base.category();
        let n = c.num_objects();
        let m = c.num_non_identity_morphisms();
        let wedgeable = n > 1;

        let groups = rng.gen_range(1..=params.max_groups.max(1));
        let mut plan: Vec<Vec<usize>> = Vec::new();
        for _ in 0..groups {
            let parts = if wedgeable {
                rng.gen_range(1..=params.max_parts.max(1))
            } else {
                1
            };
            plan.push(
                (0..parts)
                    .map(|_| rng.gen_range(1..=params.max_sheets.max(1)))
                    .collect(),
            );
        }
        let sheets: usize = plan.iter().flatten().sum();
        let merged: usize = plan.iter().map(|g| g.len() - 1).sum();
        if n * sheets - merged > params.max_objects || m * sheets > params.max_morphisms {
            continue;
        }

        let basepoints: Vec<usize> = (0..n).filter(|&x| c.is_preinitial(x)).collect();
        let mut pieces = Vec::new();
        for group in &plan {
            let covers: Vec<CategoryFunctor> = group.iter().map(|&s| base.cover(s, &mut rng)).collect();
            if covers.len() == 1 {
                pieces.extend(covers);
                continue;
            }
            let x = *basepoints
                .choose(&mut rng)
                .expect("a finite acyclic category has a preinitial object");
            let names: Vec<String> = covers
                .iter()
                .map(|p| {
                    let fiber: Vec<usize> = (0..p.source().num_objects())
                        .filter(|&y| p.map_object(y) == x)
                        .collect();
                    p.source()
                        .object(*fiber.choose(&mut rng).expect("surjective on objects"))
                        .to_string()
                })
                .collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            pieces.push(wedge_covering(&covers, &refs)?.into_functor());
        }
        let total = if pieces.len() == 1 {
            pieces.pop().expect("one piece")
        } else {
            disjoint_union(&pieces.iter().collect::<Vec<_>>())?
        };
        return Ok(check_ramified_covering(&total)?);
    }
    Err(ConstructionError::BudgetExhausted(params.max_attempts))
}
