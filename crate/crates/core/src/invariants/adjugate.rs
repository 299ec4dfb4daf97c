//! Determinants and adjugates of small polynomial matrices by cofactor expansion.
//!
//! Minors are memoized on the set of remaining columns. With one row removed
//! (or none) and rows consumed top to bottom, that set determines which row
//! is expanded next, so the column mask alone is a complete key. Zero entries
//! are skipped, which keeps the sparse matrices that arise from categories cheap.

use std::collections::HashMap;

use super::polynomial::Polynomial;

pub type PolyMatrix = Vec<Vec<Polynomial>>;

struct Minors<'a> {
    matrix: &'a PolyMatrix,
    rows: Vec<usize>,
    memo: HashMap<u64, Polynomial>,
}

impl Minors<'_> {
    fn det(&mut self, cols: u64) -> Polynomial {
        let k = cols.count_ones() as usize;
        if k == 0 {
            return Polynomial::one();
        }
        if let Some(p) = self.memo.get(&cols) {
            return p.clone();
        }
        let row = self.rows[self.rows.len() - k];
        let mut acc = Polynomial::zero();
        let mut position = 0;
        let mut rest = cols;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let entry = &self.matrix[row][c];
            if !entry.is_zero() {
                let minor = self.det(cols & !(1u64 << c));
                let term = entry * &minor;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        self.memo.insert(cols, acc.clone());
        acc
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn determinant(matrix: &PolyMatrix) -> Polynomial {
    let n = matrix.len();
    assert!(n <= 64, "cofactor expansion supports at most 64 rows");
    let mut minors = Minors {
        matrix,
        rows: (0..n).collect(),
        memo: HashMap::new(),
    };
    minors.det(full_mask(n))
}

/// `adj(M)_{ij} = (-1)^{i+j} det(M with row j and column i removed)`.
pub fn adjugate(matrix: &PolyMatrix) -> PolyMatrix {
    let n = matrix.len();
    assert!(n <= 64, "cofactor expansion supports at most 64 rows");
    let mut adj = vec![vec![Polynomial::zero(); n]; n];
    for j in 0..n {
        let mut minors = Minors {
            matrix,
            rows: (0..n).filter(|&r| r != j).collect(),
            memo: HashMap::new(),
        };
        for (i, adj_row) in adj.iter_mut().enumerate() {
            let minor = minors.det(full_mask(n) & !(1u64 << i));
            adj_row[j] = if (i + j) % 2 == 0 { minor } else { -&minor };
        }
    }
    adj
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .zip(b.iter())
                        .fold(Polynomial::zero(), |acc, (x, row)| &acc + &(x * &row[j]))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> PolyMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&c| Polynomial::from_ints(&[c])).collect())
            .collect()
    }

    #[test]
    fn integer_determinants() {
        assert_eq!(
            determinant(&int_matrix(&[&[2, 1], &[7, 4]])),
            Polynomial::from_ints(&[1])
        );
        assert_eq!(
            determinant(&int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            Polynomial::from_ints(&[-3])
        );
        assert_eq!(determinant(&Vec::new()), Polynomial::one());
    }

    #[test]
    fn adjugate_of_two_by_two() {
        let adj = adjugate(&int_matrix(&[&[2, 1], &[7, 4]]));
        assert_eq!(adj, int_matrix(&[&[4, -1], &[-7, 2]]));
    }

    #[test]
    fn polynomial_entries() {
        // I - N t for N = [[0,1],[0,0]]: det 1, adj = I + N t.
        let m = vec![
            vec![Polynomial::one(), Polynomial::from_ints(&[0, -1])],
            vec![Polynomial::zero(), Polynomial::one()],
        ];
        assert_eq!(determinant(&m), Polynomial::one());
        let adj = adjugate(&m);
        assert_eq!(adj[0][1], Polynomial::from_ints(&[0, 1]));
    }

    fn poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 0..3), n * n).prop_map(move |cells| {
            cells
                .chunks(n)
                .map(|row| row.iter().map(|c| Polynomial::from_ints(c)).collect())
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn adjugate_identity(m in (1usize..=5).prop_flat_map(poly_matrix)) {
            let n = m.len();
            let det = determinant(&m);
            let product = mat_mul(&m, &adjugate(&m));
            for (i, row) in product.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    let expected = if i == j { det.clone() } else { Polynomial::zero() };
                    prop_assert_eq!(entry, &expected, "entry ({}, {}) of {}x{}", i, j, n, n);
                }
            }
        }
    }
}
