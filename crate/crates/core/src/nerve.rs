//! Chains of composable morphisms and the simplicial operators on them.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::category::FiniteCategory;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("chain breaks at position {position}: arrows do not compose")]
    NotComposable { position: usize },
    #[error("chain does not start at the source of its first arrow")]
    WrongStart,
    #[error("operator index {index} out of range for a chain of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// `x_0 --f_1--> x_1 --> ... --f_n--> x_n`, stored as category indices.
///
/// A chain of length zero carries only its start object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    start: usize,
    arrows: Vec<usize>,
}

impl Chain {
    pub fn object(start: usize) -> Self {
        Chain {
            start,
            arrows: Vec::new(),
        }
    }

    pub fn new(cat: &FiniteCategory, start: usize, arrows: Vec<usize>) -> Result<Self, ChainError> {
        let chain = Chain { start, arrows };
        chain.check(cat)?;
        Ok(chain)
    }

    /// Builds a chain from ids. The start object is implied by the first arrow when present.
    pub fn from_ids(cat: &FiniteCategory, start: &str, arrows: &[&str]) -> Result<Self, ChainError> {
        let start = cat
            .object_index(start)
            .ok_or_else(|| ChainError::UnknownObject(start.to_string()))?;
        let arrows = arrows
            .iter()
            .map(|id| {
                cat.morphism_index(id)
                    .ok_or_else(|| ChainError::UnknownMorphism(id.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Chain::new(cat, start, arrows)
    }

    /// Verifies that the chain lives in `cat`.
    pub fn check(&self, cat: &FiniteCategory) -> Result<(), ChainError> {
        if self.start >= cat.num_objects() {
            return Err(ChainError::UnknownObject(format!("#{}", self.start)));
        }
        let mut at = self.start;
        for (position, &f) in self.arrows.iter().enumerate() {
            if f >= cat.num_morphisms() {
                return Err(ChainError::UnknownMorphism(format!("#{f}")));
            }
            let m = cat.morphism(f);
            if m.source != at {
                return Err(if position == 0 {
                    ChainError::WrongStart
                } else {
                    ChainError::NotComposable { position }
                });
            }
            at = m.target;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn end(&self, cat: &FiniteCategory) -> usize {
        self.arrows.last().map_or(self.start, |&f| cat.morphism(f).target)
    }

    /// `x_0, ..., x_n`.
    pub fn vertices(&self, cat: &FiniteCategory) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.arrows.len() + 1);
        v.push(self.start);
        v.extend(self.arrows.iter().map(|&f| cat.morphism(f).target));
        v
    }

    /// True when every arrow is an identity; zero-length chains qualify.
    pub fn is_identity_chain(&self, cat: &FiniteCategory) -> bool {
        self.arrows.iter().all(|&f| cat.is_identity(f))
    }

    pub fn is_nondegenerate(&self, cat: &FiniteCategory) -> bool {
        !self.arrows.iter().any(|&f| cat.is_identity(f))
    }

    /// Sort key: arrow ids, or the start object for a zero-length chain.
    pub fn ids(&self, cat: &FiniteCategory) -> Vec<String> {
        if self.arrows.is_empty() {
            vec![cat.object(self.start).to_string()]
        } else {
            self.arrows.iter().map(|&f| cat.morphism(f).id.to_string()).collect()
        }
    }

    pub fn display(&self, cat: &FiniteCategory) -> String {
        let mut s = cat.object(self.start).to_string();
        for &f in &self.arrows {
            let m = cat.morphism(f);
            s.push_str(&format!(" -{}-> {}", m.id, cat.object(m.target)));
        }
        s
    }
}

/// `A_C`, or `A_C - I` when `nondegenerate`.
fn count_matrix(cat: &FiniteCategory, nondegenerate: bool) -> Vec<Vec<u64>> {
    let mut a = cat.adjacency_matrix();
    if nondegenerate {
        for (i, row) in a.iter_mut().enumerate() {
            row[i] -= 1;
        }
    }
    a
}

/// Per-object counts of chains of each length `0..=max_n` starting there.
///
/// Row `n` holds `A^n · 1`, so entry `x` counts the chains of length `n` based at `x`.
pub fn based_chain_counts(cat: &FiniteCategory, max_n: usize, nondegenerate: bool) -> Vec<Vec<BigUint>> {
    let a = count_matrix(cat, nondegenerate);
    let k = cat.num_objects();
    let mut rows = Vec::with_capacity(max_n + 1);
    let mut v = vec![BigUint::from(1u32); k];
    rows.push(v.clone());
    for _ in 0..max_n {
        v = a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v)
                    .filter(|(&entry, _)| entry != 0)
                    .fold(BigUint::zero(), |acc, (&entry, val)| acc + val * entry)
            })
            .collect();
        rows.push(v.clone());
    }
    rows
}

/// `#N_n(C)` (or `#N̄_n(C)`) for every `n` in `0..=max_n`.
pub fn chain_counts(cat: &FiniteCategory, max_n: usize, nondegenerate: bool) -> Vec<BigUint> {
    based_chain_counts(cat, max_n, nondegenerate)
        .into_iter()
        .map(|row| row.into_iter().sum())
        .collect()
}

pub fn count_chains(cat: &FiniteCategory, n: usize, nondegenerate: bool) -> BigUint {
    chain_counts(cat, n, nondegenerate).pop().expect("at least one row")
}

pub fn count_chains_based(
    cat: &FiniteCategory,
    n: usize,
    nondegenerate: bool,
    base: &str,
) -> Result<BigUint, ChainError> {
    let x = cat
        .object_index(base)
        .ok_or_else(|| ChainError::UnknownObject(base.to_string()))?;
    let mut rows = based_chain_counts(cat, n, nondegenerate);
    Ok(rows.pop().expect("at least one row").swap_remove(x))
}

/// Every chain of length `n`, optionally restricted to those starting at `based_at`.
///
/// Chains of positive length come out in lexicographic order of their arrow ids;
/// zero-length chains follow the category's object order.
pub fn enumerate_chains(
    cat: &FiniteCategory,
    n: usize,
    nondegenerate: bool,
    based_at: Option<&str>,
) -> Result<Vec<Chain>, ChainError> {
    let base = based_at
        .map(|name| {
            cat.object_index(name)
                .ok_or_else(|| ChainError::UnknownObject(name.to_string()))
        })
        .transpose()?;
    Ok(enumerate_chains_at(cat, n, nondegenerate, base))
}

pub fn enumerate_chains_at(cat: &FiniteCategory, n: usize, nondegenerate: bool, base: Option<usize>) -> Vec<Chain> {
    if n == 0 {
        return match base {
            Some(x) => vec![Chain::object(x)],
            None => (0..cat.num_objects()).map(Chain::object).collect(),
        };
    }
    let mut firsts: Vec<usize> = match base {
        Some(x) => cat.out_arrows(x).to_vec(),
        None => (0..cat.num_morphisms()).collect(),
    };
    firsts.retain(|&f| !(nondegenerate && cat.is_identity(f)));
    firsts.sort_by(|&a, &b| cat.morphism(a).id.cmp(&cat.morphism(b).id));

    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n);
    for f in firsts {
        path.push(f);
        extend(cat, n, nondegenerate, &mut path, &mut out);
        path.pop();
    }
    out
}

fn extend(cat: &FiniteCategory, n: usize, nondegenerate: bool, path: &mut Vec<usize>, out: &mut Vec<Chain>) {
    if path.len() == n {
        let start = cat.morphism(path[0]).source;
        out.push(Chain {
            start,
            arrows: path.clone(),
        });
        return;
    }
    let at = cat.morphism(*path.last().expect("nonempty path")).target;
    for &g in cat.out_arrows(at) {
        if nondegenerate && cat.is_identity(g) {
            continue;
        }
        path.push(g);
        extend(cat, n, nondegenerate, path, out);
        path.pop();
    }
}

/// `∂_i`: drops the first arrow (`i = 0`), the last arrow (`i = n`), or composes
/// arrows `i` and `i + 1`.
pub fn face(cat: &FiniteCategory, chain: &Chain, i: usize) -> Result<Chain, ChainError> {
    let n = chain.len();
    if n == 0 || i > n {
        return Err(ChainError::IndexOutOfRange { index: i, len: n });
    }
    let mut arrows = chain.arrows.clone();
    let start = if i == 0 {
        let f = arrows.remove(0);
        cat.morphism(f).target
    } else if i == n {
        arrows.pop();
        chain.start
    } else {
        let g = arrows.remove(i);
        let composite = cat
            .compose(arrows[i - 1], g)
            .expect("consecutive arrows of a chain compose");
        arrows[i - 1] = composite;
        chain.start
    };
    Ok(Chain { start, arrows })
}

/// `s_i`: inserts the identity on `x_i` at position `i`.
pub fn degeneracy(cat: &FiniteCategory, chain: &Chain, i: usize) -> Result<Chain, ChainError> {
    let n = chain.len();
    if i > n {
        return Err(ChainError::IndexOutOfRange { index: i, len: n });
    }
    let x = chain.vertices(cat)[i];
    let mut arrows = chain.arrows.clone();
    arrows.insert(i, cat.identity(x));
    Ok(Chain {
        start: chain.start,
        arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin::{arrow, diamond, diamond_cover4, terminal};

    #[test]
    fn terminal_counts() {
        let c = terminal();
        for n in 0..5 {
            assert_eq!(count_chains(&c, n, false), BigUint::from(1u32));
            let expected = if n == 0 { 1u32 } else { 0 };
            assert_eq!(count_chains(&c, n, true), BigUint::from(expected));
        }
    }

    #[test]
    fn diamond_counts() {
        let c = diamond();
        let nondeg: Vec<u64> = chain_counts(&c, 3, true)
            .iter()
            .map(|v| v.try_into().unwrap())
            .collect();
        assert_eq!(nondeg, vec![4, 4, 0, 0]);
        for m in 0..8u64 {
            assert_eq!(count_chains(&c, m as usize, false), BigUint::from(4 + 4 * m));
        }
        assert!(enumerate_chains(&c, 2, true, None).unwrap().is_empty());
    }

    #[test]
    fn based_enumeration() {
        let c = arrow();
        let chains = enumerate_chains(&c, 1, true, Some("x")).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].ids(&c), vec!["f".to_string()]);

        let cover = diamond_cover4();
        assert_eq!(enumerate_chains(&cover, 1, true, Some("x1")).unwrap().len(), 4);
        assert_eq!(count_chains_based(&cover, 1, true, "x1").unwrap(), BigUint::from(4u32));
        assert_eq!(
            enumerate_chains(&cover, 1, true, Some("nope")),
            Err(ChainError::UnknownObject("nope".into()))
        );
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let c = diamond();
        let ids: Vec<Vec<String>> = enumerate_chains(&c, 2, false, None)
            .unwrap()
            .iter()
            .map(|ch| ch.ids(&c))
            .collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert_eq!(ids.len(), 12);
    }

    #[test]
    fn face_and_degeneracy_examples() {
        let c = diamond();
        let f = Chain::from_ids(&c, "x", &["xz"]).unwrap();
        assert_eq!(face(&c, &f, 0).unwrap(), Chain::object(c.object_index("z").unwrap()));
        assert_eq!(face(&c, &f, 1).unwrap(), Chain::object(c.object_index("x").unwrap()));

        let x = Chain::object(c.object_index("x").unwrap());
        assert_eq!(degeneracy(&c, &x, 0).unwrap().ids(&c), vec!["id:x".to_string()]);

        let padded = Chain::from_ids(&c, "x", &["id:x", "xz"]).unwrap();
        assert_eq!(face(&c, &padded, 1).unwrap(), f);

        assert_eq!(face(&c, &x, 0), Err(ChainError::IndexOutOfRange { index: 0, len: 0 }));
        assert_eq!(face(&c, &f, 2), Err(ChainError::IndexOutOfRange { index: 2, len: 1 }));
        assert_eq!(
            degeneracy(&c, &f, 1).unwrap().ids(&c),
            vec!["xz".to_string(), "id:z".to_string()]
        );
        assert!(degeneracy(&c, &f, 2).is_err());
    }

    #[test]
    fn chain_validation() {
        let c = diamond();
        assert_eq!(Chain::from_ids(&c, "x", &["yz"]), Err(ChainError::WrongStart));
        assert_eq!(
            Chain::from_ids(&c, "x", &["xz", "xw"]),
            Err(ChainError::NotComposable { position: 1 })
        );
    }
}
