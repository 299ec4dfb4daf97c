//! Named example categories and functors. Names are part of the CLI surface.

use std::collections::BTreeMap;

use crate::category::{FiniteCategory, RawCategory, RawMorphism};
use crate::covering::CategoryFunctor;

use super::ConstructionError;

pub const BUILTIN_NAMES: [&str; 7] = [
    "terminal",
    "arrow",
    "wedge2",
    "diamond",
    "diamond-cover4",
    "P-wedge2",
    "P-diamond4",
];

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Builtin {
    Category(FiniteCategory),
    Functor(CategoryFunctor),
}

pub fn builtin_example(name: &str) -> Result<Builtin, ConstructionError> {
    Ok(match name {
        "terminal" => Builtin::Category(terminal()),
        "arrow" => Builtin::Category(arrow()),
        "wedge2" => Builtin::Category(wedge2()),
        "diamond" => Builtin::Category(diamond()),
        "diamond-cover4" => Builtin::Category(diamond_cover4()),
        "P-wedge2" => Builtin::Functor(p_wedge2()),
        "P-diamond4" => Builtin::Functor(p_diamond4()),
        _ => return Err(ConstructionError::UnknownExample(name.to_string())),
    })
}

/// A category with no composable pairs of non-identity morphisms.
fn flat(objects: &[&str], arrows: &[(&str, &str, &str)]) -> FiniteCategory {
    let raw = RawCategory {
        objects: objects.iter().map(|o| o.to_string()).collect(),
        morphisms: arrows
            .iter()
            .map(|(id, src, tgt)| RawMorphism {
                id: id.to_string(),
                src: src.to_string(),
                tgt: tgt.to_string(),
            })
            .collect(),
        composition: Vec::new(),
    };
    FiniteCategory::validate(&raw).expect("builtin category is valid")
}

pub fn terminal() -> FiniteCategory {
    flat(&["*"], &[])
}

/// `x --f--> y`.
pub fn arrow() -> FiniteCategory {
    flat(&["x", "y"], &[("f", "x", "y")])
}

/// `y~1 <--f~1-- x~ --f~2--> y~2`.
pub fn wedge2() -> FiniteCategory {
    flat(&["x~", "y~1", "y~2"], &[("f~1", "x~", "y~1"), ("f~2", "x~", "y~2")])
}

/// `x` and `y` each map once to `z` and once to `w`.
pub fn diamond() -> FiniteCategory {
    flat(
        &["x", "y", "z", "w"],
        &[("xz", "x", "z"), ("xw", "x", "w"), ("yz", "y", "z"), ("yw", "y", "w")],
    )
}

const COVER4_ARROWS: [(&str, [&str; 4]); 4] = [
    ("x1", ["z1", "z4", "w1", "w4"]),
    ("y1", ["w1", "z1", "w2", "z2"]),
    ("y3", ["z4", "w4", "w3", "z3"]),
    ("x2", ["z2", "w2", "z3", "w3"]),
];

/// Twelve objects over the diamond; each of `x1, x2, y1, y3` has four arrows out,
/// two over each arrow of its image.
pub fn diamond_cover4() -> FiniteCategory {
    let objects = ["x1", "x2", "y1", "y3", "z1", "z2", "z3", "z4", "w1", "w2", "w3", "w4"];
    let names: Vec<(String, &str, &str)> = COVER4_ARROWS
        .iter()
        .flat_map(|(src, tgts)| tgts.iter().map(move |t| (format!("{src}{t}"), *src, *t)))
        .collect();
    let arrows: Vec<(&str, &str, &str)> = names.iter().map(|(id, s, t)| (id.as_str(), *s, *t)).collect();
    flat(&objects, &arrows)
}

/// Drops the trailing sheet index from every name, e.g. `y~2 -> y`, `x1w4 -> xw`.
fn strip_indices(name: &str) -> String {
    name.chars().filter(|c| !c.is_ascii_digit() && *c != '~').collect()
}

fn projection(source: FiniteCategory, target: FiniteCategory) -> CategoryFunctor {
    let objects: BTreeMap<String, String> = source
        .objects()
        .iter()
        .map(|o| (o.to_string(), strip_indices(o.as_str())))
        .collect();
    let morphisms: BTreeMap<String, String> = source.morphisms()[source.num_objects()..]
        .iter()
        .map(|m| (m.id.to_string(), strip_indices(m.id.as_str())))
        .collect();
    CategoryFunctor::validate(source, target, &objects, &morphisms).expect("builtin functor is valid")
}

/// The two-sheeted covering of `x -> y` ramified at `x~`.
pub fn p_wedge2() -> CategoryFunctor {
    projection(wedge2(), arrow())
}

/// The four-sheeted covering of the diamond, ramified at `x1, x2, y1, y3`.
pub fn p_diamond4() -> CategoryFunctor {
    projection(diamond_cover4(), diamond())
}
