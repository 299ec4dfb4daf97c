#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigUint;
use ramified::category::{FiniteCategory, RawCategory, RawComposite, RawMorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("o{i}")).collect()
}

fn random_dag(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for j in 1..n {
        edges.push((rng.gen_range(0..j), j));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Reachability order of a random acyclic graph.
pub fn thin(rng: &mut ChaCha8Rng, n: usize) -> FiniteCategory {
    let objects = names(n);
    let r = closure(n, &random_dag(rng, n, 0.3));
    let id = |i: usize, j: usize| format!("{}<{}", objects[i], objects[j]);
    let mut raw = RawCategory {
        objects: objects.clone(),
        ..Default::default()
    };
    for i in 0..n {
        for j in 0..n {
            if r[i][j] {
                raw.morphisms.push(RawMorphism {
                    id: id(i, j),
                    src: objects[i].clone(),
                    tgt: objects[j].clone(),
                });
                for k in 0..n {
                    if r[j][k] {
                        raw.composition.push(RawComposite {
                            first: id(i, j),
                            second: id(j, k),
                            result: id(i, k),
                        });
                    }
                }
            }
        }
    }
    FiniteCategory::validate(&raw).unwrap()
}

/// Free category on a random acyclic multigraph; `None` if it has more than `max_paths` paths.
pub fn free(rng: &mut ChaCha8Rng, n: usize, max_paths: usize) -> Option<FiniteCategory> {
    let objects = names(n);
    let mut edges = random_dag(rng, n, 0.2);
    if n > 1 && rng.gen_bool(0.5) {
        let e = edges[rng.gen_range(0..edges.len())];
        edges.push(e);
    }
    let mut paths: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
    let mut i = 0;
    while i < paths.len() {
        let end = edges[*paths[i].last().unwrap()].1;
        for (e, &(a, _)) in edges.iter().enumerate() {
            if a == end {
                let mut p = paths[i].clone();
                p.push(e);
                paths.push(p);
            }
        }
        if paths.len() > max_paths {
            return None;
        }
        i += 1;
    }
    let id = |p: &[usize]| p.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join("");
    let mut raw = RawCategory {
        objects: objects.clone(),
        ..Default::default()
    };
    for p in &paths {
        raw.morphisms.push(RawMorphism {
            id: id(p),
            src: objects[edges[p[0]].0].clone(),
            tgt: objects[edges[*p.last().unwrap()].1].clone(),
        });
        for q in &paths {
            if edges[q[0]].0 == edges[*p.last().unwrap()].1 {
                raw.composition.push(RawComposite {
                    first: id(p),
                    second: id(q),
                    result: id(&[p.clone(), q.clone()].concat()),
                });
            }
        }
    }
    Some(FiniteCategory::validate(&raw).unwrap())
}

/// A finite monoid as a multiplication table on `0..k` with unit 0.
pub struct Monoid {
    pub name: &'static str,
    pub table: Vec<Vec<usize>>,
}

pub fn cyclic(k: usize) -> Monoid {
    Monoid {
        name: "c",
        table: (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect(),
    }
}

/// `{1, e}` with `e e = e`.
pub fn idempotent() -> Monoid {
    Monoid {
        name: "e",
        table: vec![vec![0, 1], vec![1, 1]],
    }
}

/// Product of a total order on `n` objects with a monoid; every object gets endomorphisms.
pub fn order_times_monoid(n: usize, m: &Monoid) -> FiniteCategory {
    let objects = names(n);
    let k = m.table.len();
    let id = |i: usize, j: usize, a: usize| -> String {
        if i == j && a == 0 {
            format!("id:{}", objects[i])
        } else {
            format!("{}{}{}{}", objects[i], objects[j], m.name, a)
        }
    };
    let mut raw = RawCategory {
        objects: objects.clone(),
        ..Default::default()
    };
    for i in 0..n {
        for j in i..n {
            for a in 0..k {
                if i == j && a == 0 {
                    continue;
                }
                raw.morphisms.push(RawMorphism {
                    id: id(i, j, a),
                    src: objects[i].clone(),
                    tgt: objects[j].clone(),
                });
                for l in j..n {
                    for b in 0..k {
                        if j == l && b == 0 {
                            continue;
                        }
                        raw.composition.push(RawComposite {
                            first: id(i, j, a),
                            second: id(j, l, b),
                            result: id(i, l, m.table[a][b]),
                        });
                    }
                }
            }
        }
    }
    FiniteCategory::validate(&raw).unwrap()
}

/// The `i`-th category of a fixed family of random finite categories with at most `max_objects` objects.
pub fn random_category(seed: u64, max_objects: usize) -> FiniteCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        match rng.gen_range(0..3) {
            0 => {
                let n = rng.gen_range(1..=max_objects);
                return thin(&mut rng, n);
            }
            1 => {
                let n = rng.gen_range(1..=max_objects);
                if let Some(c) = free(&mut rng, n, 40) {
                    return c;
                }
            }
            _ => {
                let (n, m) = match rng.gen_range(0..3) {
                    0 => (rng.gen_range(1..=3.min(max_objects)), cyclic(2)),
                    1 => (rng.gen_range(1..=3.min(max_objects)), idempotent()),
                    _ => (rng.gen_range(1..=2.min(max_objects)), cyclic(3)),
                };
                return order_times_monoid(n, &m);
            }
        }
    }
}

/// Chains by extension over the raw morphism list, independent of the library's nerve code.
pub fn brute_force_chains(c: &FiniteCategory, n: usize, nondegenerate: bool) -> Vec<Vec<usize>> {
    fn extend(
        c: &FiniteCategory,
        n: usize,
        nondeg: bool,
        at: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for (f, m) in c.morphisms().iter().enumerate() {
            if m.source == at && !(nondeg && f < c.num_objects()) {
                prefix.push(f);
                extend(c, n, nondeg, m.target, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return (0..c.num_objects()).map(|x| vec![x]).collect();
    }
    for x in 0..c.num_objects() {
        extend(c, n, nondegenerate, x, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
