//! Seeded random instances for self-tests and property suites.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::decompose::decomposable_brute_force;
use crate::graph::rank;
use crate::hermite::hermite_normal_form;
use crate::matrix::{IntMatrix, Permutation};

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Random `m×n` matrix with `1 ≤ m ≤ max_rows`, `m ≤ n ≤ max_cols`, full
/// row rank and no zero column.
pub fn random_admissible<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize, bound: i64) -> IntMatrix {
    loop {
        let m = rng.gen_range(1..=max_rows);
        if m > max_cols {
            continue;
        }
        let n = rng.gen_range(m..=max_cols);
        let a = random_matrix(rng, m, n, bound);
        if a.zero_columns().is_empty() && rank(&a) == m {
            return a;
        }
    }
}

/// Product of at most `max_ops` elementary integer row operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, max_ops: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n).into_rows();
    let ops = rng.gen_range(0..=max_ops);
    for _ in 0..ops {
        match rng.gen_range(0..4) {
            0 | 1 if n > 1 => {
                let i = rng.gen_range(0..n);
                let mut k = rng.gen_range(0..n - 1);
                if k >= i {
                    k += 1;
                }
                let c = BigInt::from(*[-2i64, -1, 1, 2].choose(rng).expect("nonempty"));
                let src = u[k].clone();
                for (d, s) in u[i].iter_mut().zip(&src) {
                    *d += &c * s;
                }
            }
            2 if n > 1 => {
                let i = rng.gen_range(0..n);
                let k = rng.gen_range(0..n);
                u.swap(i, k);
            }
            _ => {
                let i = rng.gen_range(0..n);
                for v in u[i].iter_mut() {
                    *v = -std::mem::take(v);
                }
            }
        }
    }
    IntMatrix::from_rows(u).expect("square")
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffle is a bijection")
}

/// Column permutation for `B₁ ⊕ … ⊕ B_t` (with the given column counts) that
/// interleaves the blocks' columns while keeping each block's columns in
/// their original relative order.
pub fn random_interleaving<R: Rng>(rng: &mut R, block_cols: &[usize]) -> Permutation {
    let mut labels: Vec<usize> = block_cols
        .iter()
        .enumerate()
        .flat_map(|(k, &c)| std::iter::repeat_n(k, c))
        .collect();
    labels.shuffle(rng);
    let mut offsets: Vec<usize> = block_cols
        .iter()
        .scan(0, |acc, &c| {
            let start = *acc;
            *acc += c;
            Some(start)
        })
        .collect();
    let mapping = labels
        .into_iter()
        .map(|k| {
            let src = offsets[k];
            offsets[k] += 1;
            src
        })
        .collect();
    Permutation::new(mapping).expect("interleaving is a bijection")
}

/// Random full-row-rank HNF block without zero columns that the brute-force
/// split oracle reports as indecomposable.
pub fn random_indecomposable_hnf<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize, bound: i64) -> IntMatrix {
    loop {
        let a = random_admissible(rng, max_rows, max_cols, bound);
        let h = hermite_normal_form(&a).h;
        if decomposable_brute_force(&h).expect("within limits").is_none() {
            return h;
        }
    }
}

/// `U·(H₁ ⊕ … ⊕ H_t)·Q₀` together with its ingredients.
#[derive(Debug, Clone)]
pub struct PlantedSplit {
    pub blocks: Vec<IntMatrix>,
    pub u: IntMatrix,
    pub q0: Permutation,
    pub matrix: IntMatrix,
}

pub fn planted_split<R: Rng>(rng: &mut R, blocks: Vec<IntMatrix>, q0: Permutation, max_ops: usize) -> PlantedSplit {
    let sum = IntMatrix::direct_sum(&blocks).expect("nonempty");
    let u = random_unimodular(rng, sum.rows(), max_ops);
    let matrix = u
        .multiply(&sum)
        .and_then(|m| m.apply_column_permutation(&q0))
        .expect("shapes agree");
    PlantedSplit { blocks, u, q0, matrix }
}
