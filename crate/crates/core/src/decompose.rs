//! Decomposability of full-row-rank integer matrices.
//!
//! `A` splits as `P⁻¹·A·Q = H₁ ⊕ … ⊕ H_t` (unimodular `P`, permutation `Q`)
//! exactly when the gram matrix `HNF(A)⊤·HNF(A)` is reducible. The blocks
//! follow the connected components of that gram matrix's weighted graph.

use num_traits::Zero;
use thiserror::Error;

use crate::graph::{ComponentPartition, ConnectivityCheck, WeightedGraph};
use crate::hermite::{hermite_normal_form, is_hnf, HnfResult};
use crate::matrix::{IntMatrix, Permutation};

/// Row and column limit for [`decomposable_brute_force`].
pub const SPLIT_ORACLE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    /// 1-based column index.
    #[error("zero column {0}")]
    ZeroColumn(usize),
    #[error("rank deficient: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("{rows}x{cols} exceeds the enumeration limit of {limit}")]
    TooLarge { rows: usize, cols: usize, limit: usize },
    #[error("HNF of the permuted matrix is not block diagonal at ({row}, {col})")]
    BlockStructure { row: usize, col: usize },
}

/// Result of the HNF decomposition algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Unimodular, `m×m`.
    pub p: IntMatrix,
    /// `P⁻¹`, carried along from the HNF transforms.
    pub p_inv: IntMatrix,
    pub q: Permutation,
    /// Diagonal blocks of `P⁻¹·A·Q`, each in Hermite normal form.
    pub blocks: Vec<IntMatrix>,
    /// 0-based rows of `HNF(A)` per block, grouped by pivot column.
    pub row_partition: Vec<Vec<usize>>,
    pub column_partition: ComponentPartition,
    pub decomposable: bool,
}

/// A [`Decomposition`] plus the intermediate results that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRun {
    pub decomposition: Decomposition,
    /// HNF of the input, before the column permutation.
    pub hnf: HnfResult,
    /// Zero-pattern vs. Laplacian-RREF components of the gram matrix.
    pub connectivity: ConnectivityCheck,
}

impl Decomposition {
    pub fn row_partition_one_based(&self) -> Vec<Vec<usize>> {
        self.row_partition
            .iter()
            .map(|r| r.iter().map(|i| i + 1).collect())
            .collect()
    }
}

/// Checks the input contract: no zero column (reported first), then full
/// row rank. Returns the HNF on success.
pub fn validate_input(a: &IntMatrix) -> Result<HnfResult, DecomposeError> {
    if let Some(&c) = a.zero_columns().first() {
        return Err(DecomposeError::ZeroColumn(c + 1));
    }
    let hnf = hermite_normal_form(a);
    if hnf.rank < a.rows() {
        return Err(DecomposeError::RankDeficient {
            rank: hnf.rank,
            rows: a.rows(),
        });
    }
    Ok(hnf)
}

/// Same as [`validate_input`] after dropping all-zero rows.
pub fn prepare_input(a: &IntMatrix, strip_zero_rows: bool) -> Result<IntMatrix, DecomposeError> {
    if let Some(&c) = a.zero_columns().first() {
        return Err(DecomposeError::ZeroColumn(c + 1));
    }
    let a = if strip_zero_rows {
        // No zero column means at least one nonzero row survives.
        a.without_zero_rows().expect("nonzero matrix")
    } else {
        a.clone()
    };
    validate_input(&a)?;
    Ok(a)
}

fn gram_graph(h: &IntMatrix) -> WeightedGraph {
    WeightedGraph::new(h.gram()).expect("gram matrices are symmetric")
}

pub fn is_decomposable(a: &IntMatrix) -> Result<bool, DecomposeError> {
    let hnf = validate_input(a)?;
    Ok(gram_graph(&hnf.h).components_via_zero_pattern().len() >= 2)
}

pub fn hnf_decomposition(a: &IntMatrix) -> Result<Decomposition, DecomposeError> {
    run_hnf_decomposition(a).map(|run| run.decomposition)
}

pub fn run_hnf_decomposition(a: &IntMatrix) -> Result<DecompositionRun, DecomposeError> {
    let hnf = validate_input(a)?;
    let graph = gram_graph(&hnf.h);
    let connectivity = graph.cross_check();
    let components = match &connectivity {
        ConnectivityCheck::Agree(p) => p.clone(),
        ConnectivityCheck::Disagree { zero_pattern, .. } => zero_pattern.clone(),
    };

    if components.len() == 1 {
        let decomposition = Decomposition {
            p: hnf.p.clone(),
            p_inv: hnf.p_inv.clone(),
            q: Permutation::identity(a.cols()),
            blocks: vec![hnf.h.clone()],
            row_partition: vec![(0..a.rows()).collect()],
            column_partition: components,
            decomposable: false,
        };
        return Ok(DecompositionRun {
            decomposition,
            hnf,
            connectivity,
        });
    }

    let order: Vec<usize> = components.components().iter().flatten().copied().collect();
    let q = Permutation::new(order).expect("partition yields a permutation");
    let hq = hnf.h.apply_column_permutation(&q).expect("length matches");
    let second = hermite_normal_form(&hq);

    let labels = components.labels();
    let mut row_partition = vec![Vec::new(); components.len()];
    for (row, &col) in hnf.pivot_cols.iter().enumerate() {
        row_partition[labels[col]].push(row);
    }

    let blocks = split_blocks(
        &second.h,
        &row_partition.iter().map(Vec::len).collect::<Vec<_>>(),
        &components.components().iter().map(Vec::len).collect::<Vec<_>>(),
    )?;

    let decomposition = Decomposition {
        p: hnf.p.multiply(&second.p).expect("square"),
        p_inv: second.p_inv.multiply(&hnf.p_inv).expect("square"),
        q,
        decomposable: blocks.len() >= 2,
        blocks,
        row_partition,
        column_partition: components,
    };
    Ok(DecompositionRun {
        decomposition,
        hnf,
        connectivity,
    })
}

/// Cuts a block-diagonal matrix into its diagonal blocks, failing on any
/// nonzero entry outside them.
fn split_blocks(
    m: &IntMatrix,
    row_sizes: &[usize],
    col_sizes: &[usize],
) -> Result<Vec<IntMatrix>, DecomposeError> {
    let mut row_block = Vec::with_capacity(m.rows());
    for (k, &s) in row_sizes.iter().enumerate() {
        row_block.extend(std::iter::repeat_n(k, s));
    }
    let mut col_block = Vec::with_capacity(m.cols());
    for (k, &s) in col_sizes.iter().enumerate() {
        col_block.extend(std::iter::repeat_n(k, s));
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if row_block[i] != col_block[j] && !m.get(i, j).is_zero() {
                return Err(DecomposeError::BlockStructure { row: i + 1, col: j + 1 });
            }
        }
    }
    let (mut r0, mut c0) = (0, 0);
    let mut blocks = Vec::with_capacity(row_sizes.len());
    for (&rs, &cs) in row_sizes.iter().zip(col_sizes) {
        let rows: Vec<usize> = (r0..r0 + rs).collect();
        let cols: Vec<usize> = (c0..c0 + cs).collect();
        blocks.push(m.submatrix(&rows, &cols));
        r0 += rs;
        c0 += cs;
    }
    Ok(blocks)
}

/// Outcome of [`verify_decomposition`]; `reasons` is empty iff `ok`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verification {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Checks every structural claim of `d` against `a` without trusting any of
/// the stored intermediate results.
pub fn verify_decomposition(a: &IntMatrix, d: &Decomposition) -> Verification {
    let mut reasons = Vec::new();
    let (m, n) = a.shape();

    if d.p.shape() != (m, m) || d.q.len() != n {
        reasons.push("dimension mismatch".to_string());
        return Verification { ok: false, reasons };
    }
    if !d.p.is_unimodular() {
        reasons.push("not unimodular".to_string());
    }
    if d.blocks.is_empty() {
        reasons.push("no blocks".to_string());
        return Verification { ok: false, reasons };
    }
    for (k, b) in d.blocks.iter().enumerate() {
        if !is_hnf(b) {
            reasons.push(format!("block {} not in Hermite normal form", k + 1));
        }
    }
    let rows: usize = d.blocks.iter().map(IntMatrix::rows).sum();
    let cols: usize = d.blocks.iter().map(IntMatrix::cols).sum();
    if rows != m || cols != n {
        reasons.push(format!("block sizes sum to {rows}x{cols}, expected {m}x{n}"));
    } else {
        // P⁻¹·A·Q = ⊕blocks  ⇔  A·Q = P·(⊕blocks)
        let aq = a.apply_column_permutation(&d.q).expect("length checked");
        let sum = IntMatrix::direct_sum(&d.blocks).expect("nonempty");
        if d.p.multiply(&sum).expect("shapes checked") != aq {
            reasons.push("product mismatch".to_string());
        }
    }
    if d.p.multiply(&d.p_inv).ok() != Some(IntMatrix::identity(m)) {
        reasons.push("p_inverse is not the inverse of p".to_string());
    }
    if d.decomposable != (d.blocks.len() >= 2) {
        reasons.push("decomposable flag inconsistent with block count".to_string());
    }

    let cp = &d.column_partition;
    let col_sizes_ok = cp.vertex_count() == n
        && cp.len() == d.blocks.len()
        && cp.components().iter().zip(&d.blocks).all(|(c, b)| c.len() == b.cols());
    let order: Vec<usize> = cp.components().iter().flatten().copied().collect();
    if !col_sizes_ok || order != d.q.mapping() {
        reasons.push("column partition inconsistent with blocks or Q".to_string());
    }

    let mut seen = vec![false; m];
    let rows_ok = d.row_partition.len() == d.blocks.len()
        && d.row_partition.iter().zip(&d.blocks).all(|(r, b)| r.len() == b.rows())
        && d.row_partition.iter().flatten().all(|&i| {
            let fresh = i < m && !seen[i];
            if fresh {
                seen[i] = true;
            }
            fresh
        })
        && seen.iter().all(|&s| s);
    if !rows_ok {
        reasons.push("row partition inconsistent with blocks".to_string());
    }

    Verification {
        ok: reasons.is_empty(),
        reasons,
    }
}

/// A permutation-form split: rows `rows` live only in columns `cols`, and
/// every other row lives only outside them. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Definitional oracle: searches nonempty proper column subsets `S` in
/// lexicographic order for a row set `T` with `h[T, S̄] = 0`, `h[T̄, S] = 0`
/// and both `T`, `T̄` nonempty.
pub fn decomposable_brute_force(h: &IntMatrix) -> Result<Option<SplitWitness>, DecomposeError> {
    let (m, n) = h.shape();
    if m > SPLIT_ORACLE_LIMIT || n > SPLIT_ORACLE_LIMIT {
        return Err(DecomposeError::TooLarge {
            rows: m,
            cols: n,
            limit: SPLIT_ORACLE_LIMIT,
        });
    }
    let support: Vec<u32> = (0..m)
        .map(|i| {
            (0..n)
                .filter(|&j| !h.get(i, j).is_zero())
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();
    let full = (1u32 << n) - 1;
    let mut best: Option<SplitWitness> = None;
    for s in 1..full {
        // T is forced: every row touching S must sit in T.
        let mut t = Vec::new();
        let mut ok = true;
        for (i, &sup) in support.iter().enumerate() {
            let inside = sup & s != 0;
            let outside = sup & !s & full != 0;
            if inside && outside {
                ok = false;
                break;
            }
            if inside {
                t.push(i);
            }
        }
        if !ok || t.is_empty() || t.len() == m {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&j| s & (1 << j) != 0).collect();
        if best.as_ref().is_none_or(|b| cols < b.cols) {
            best = Some(SplitWitness { rows: t, cols });
        }
    }
    Ok(best)
}

/// Runs the gram-reducibility test and the definitional oracle on the same
/// input; `true` when they agree.
pub fn decomposability_equivalence_check(a: &IntMatrix) -> Result<bool, DecomposeError> {
    let by_theorem = is_decomposable(a)?;
    let h = hermite_normal_form(a).h;
    let by_oracle = decomposable_brute_force(&h)?.is_some();
    Ok(by_theorem == by_oracle)
}
