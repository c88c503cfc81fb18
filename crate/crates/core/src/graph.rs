//! Symmetric integer matrices read as weighted graphs: degrees, Laplacian,
//! exact RREF, and two independent ways to find connected components.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{IntMatrix, RatMatrix};

/// Largest vertex count accepted by [`reducibility_witness_brute_force`].
pub const REDUCIBILITY_ORACLE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("{n} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(
        "laplacian RREF yields overlapping or incomplete vertex sets {rref_sets:?}; \
         zero-pattern components are {zero_pattern}"
    )]
    RrefNotPartition {
        rref: Box<RatMatrix>,
        /// 1-based sets read from the non-pivot columns.
        rref_sets: Vec<Vec<usize>>,
        zero_pattern: ComponentPartition,
    },
}

/// Undirected weighted graph given by a symmetric adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adjacency: IntMatrix,
}

impl WeightedGraph {
    pub fn new(adjacency: IntMatrix) -> Result<Self, GraphError> {
        let (rows, cols) = adjacency.shape();
        if rows != cols {
            return Err(GraphError::NotSquare { rows, cols });
        }
        if let Some((i, j)) = adjacency.asymmetry() {
            return Err(GraphError::NotSymmetric {
                row: i + 1,
                col: j + 1,
            });
        }
        Ok(WeightedGraph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    /// Full row sums, diagonal included.
    pub fn degrees(&self) -> Vec<BigInt> {
        (0..self.vertex_count())
            .map(|i| self.adjacency.row(i).iter().sum())
            .collect()
    }

    /// `D − B`. Diagonal weights cancel, so self-loops never show up.
    pub fn laplacian(&self) -> IntMatrix {
        let d = self.degrees();
        IntMatrix::from_fn(self.vertex_count(), self.vertex_count(), |i, j| {
            let b = self.adjacency.get(i, j);
            if i == j {
                &d[i] - b
            } else {
                -b
            }
        })
    }

    /// Components from the non-pivot columns of `rref(laplacian)`.
    pub fn components_via_rref(&self) -> Result<ComponentPartition, GraphError> {
        let n = self.vertex_count();
        let ech = rref(&RatMatrix::from(&self.laplacian()));
        let sets = ech.non_pivot_supports();
        ComponentPartition::from_sets(n, sets.clone()).ok_or_else(|| GraphError::RrefNotPartition {
            rref: Box::new(ech.matrix),
            rref_sets: sets
                .into_iter()
                .map(|s| s.into_iter().map(|v| v + 1).collect())
                .collect(),
            zero_pattern: self.components_via_zero_pattern(),
        })
    }

    /// Union-find over the nonzero off-diagonal entries.
    pub fn components_via_zero_pattern(&self) -> ComponentPartition {
        let n = self.vertex_count();
        let mut dsu = DisjointSets::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if !self.adjacency.get(i, j).is_zero() {
                    dsu.union(i, j);
                }
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            by_root[dsu.find(v)].push(v);
        }
        ComponentPartition::from_sets(n, by_root.into_iter().filter(|c| !c.is_empty()).collect())
            .expect("union-find classes partition the vertex set")
    }

    /// Zero-pattern vs. Laplacian-RREF components.
    pub fn cross_check(&self) -> ConnectivityCheck {
        let zero_pattern = self.components_via_zero_pattern();
        match self.components_via_rref() {
            Ok(p) if p == zero_pattern => ConnectivityCheck::Agree(zero_pattern),
            Ok(p) => ConnectivityCheck::Disagree {
                rref_sets: p.one_based(),
                zero_pattern,
            },
            Err(GraphError::RrefNotPartition { rref_sets, .. }) => ConnectivityCheck::Disagree {
                rref_sets,
                zero_pattern,
            },
            Err(e) => unreachable!("graph already validated: {e}"),
        }
    }
}

/// Outcome of running both connectivity methods on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectivityCheck {
    Agree(ComponentPartition),
    Disagree {
        /// 1-based vertex sets read from the Laplacian RREF.
        rref_sets: Vec<Vec<usize>>,
        zero_pattern: ComponentPartition,
    },
}

impl ConnectivityCheck {
    pub fn agrees(&self) -> bool {
        matches!(self, ConnectivityCheck::Agree(_))
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Partition of `0..n` into components, each sorted, ordered by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentPartition {
    n: usize,
    components: Vec<Vec<usize>>,
}

impl ComponentPartition {
    /// Canonicalizes `sets`; `None` unless they partition `0..n`.
    pub fn from_sets(n: usize, sets: Vec<Vec<usize>>) -> Option<Self> {
        let mut seen = vec![false; n];
        let mut components = Vec::with_capacity(sets.len());
        for mut s in sets {
            if s.is_empty() {
                return None;
            }
            s.sort_unstable();
            for &v in &s {
                if v >= n || seen[v] {
                    return None;
                }
                seen[v] = true;
            }
            components.push(s);
        }
        if !seen.iter().all(|&b| b) {
            return None;
        }
        components.sort_by_key(|c| c[0]);
        Some(ComponentPartition { n, components })
    }

    pub fn from_one_based(n: usize, sets: &[Vec<usize>]) -> Option<Self> {
        let sets = sets
            .iter()
            .map(|s| s.iter().map(|&v| v.checked_sub(1)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Self::from_sets(n, sets)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.components
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Component index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (k, c) in self.components.iter().enumerate() {
            for &v in c {
                out[v] = k;
            }
        }
        out
    }
}

impl fmt::Display for ComponentPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .one_based()
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Reduced row echelon form together with its 0-based pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: RatMatrix,
    pub pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// `{j} ∪ supp(column j)` for every non-pivot column `j`, where a
    /// nonzero in row `i` names the vertex of that row's pivot column.
    /// When pivots sit on the diagonal this is the plain row support.
    pub fn non_pivot_supports(&self) -> Vec<Vec<usize>> {
        let m = &self.matrix;
        (0..m.cols())
            .filter(|j| !self.pivot_cols.contains(j))
            .map(|j| {
                let mut set: Vec<usize> = (0..self.rank())
                    .filter(|&i| !m.get(i, j).is_zero())
                    .map(|i| self.pivot_cols[i])
                    .collect();
                if !set.contains(&j) {
                    set.push(j);
                }
                set.sort_unstable();
                set
            })
            .collect()
    }
}

/// Gauss-Jordan elimination over the rationals, leftmost nonzero pivot.
pub fn rref(input: &RatMatrix) -> Echelon {
    let mut m = input.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m.get(r, c).recip();
        if !inv.is_one() {
            for j in c..cols {
                let v = m.get(r, j) * &inv;
                *m.get_mut(r, j) = v;
            }
        }
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..cols {
                let v = m.get(i, j) - &factor * m.get(r, j);
                *m.get_mut(i, j) = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        matrix: m,
        pivot_cols: pivots,
    }
}

pub fn rref_int(m: &IntMatrix) -> Echelon {
    rref(&RatMatrix::from(m))
}

/// Exact rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    rref_int(m).rank()
}

pub fn is_reducible(b: &IntMatrix) -> Result<bool, GraphError> {
    Ok(WeightedGraph::new(b.clone())?.components_via_zero_pattern().len() >= 2)
}

/// Definitional oracle: the lexicographically smallest nonempty proper
/// vertex subset `S` (0-based, sorted) with `b[i][j] = 0` for all `i ∈ S`,
/// `j ∉ S`.
pub fn reducibility_witness_brute_force(b: &IntMatrix) -> Result<Option<Vec<usize>>, GraphError> {
    let g = WeightedGraph::new(b.clone())?;
    let n = g.vertex_count();
    if n > REDUCIBILITY_ORACLE_LIMIT {
        return Err(GraphError::TooLarge {
            n,
            limit: REDUCIBILITY_ORACLE_LIMIT,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && !b.get(i, j).is_zero())
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<Vec<usize>> = None;
    for s in 1..full {
        let closed = (0..n).all(|i| s & (1 << i) == 0 || adj[i] & !s & full == 0);
        if !closed {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&i| s & (1 << i) != 0).collect();
        if best.as_ref().is_none_or(|b| set < *b) {
            best = Some(set);
        }
    }
    Ok(best)
}
