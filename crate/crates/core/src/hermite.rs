//! Row-style Hermite normal form with a unimodular witness.
//!
//! `A = P·H` where `H` is in row echelon form with strictly positive pivots
//! and every entry above a pivot lies in `[0, pivot)`. The transform and its
//! inverse are accumulated side by side so no inversion is needed afterwards.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    /// The Hermite normal form.
    pub h: IntMatrix,
    /// Unimodular witness with `p · h = a`.
    pub p: IntMatrix,
    /// Inverse of `p`, i.e. `p_inv · a = h`.
    pub p_inv: IntMatrix,
    /// 0-based pivot columns, strictly increasing.
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl HnfResult {
    /// The top `rank` rows of `h`.
    ///
    /// Returns `None` for a zero matrix, which has no nonzero rows to keep.
    pub fn strip_zero_rows(&self) -> Option<IntMatrix> {
        if self.rank == 0 {
            return None;
        }
        let rows: Vec<usize> = (0..self.rank).collect();
        Some(self.h.stack_rows(&rows))
    }

    pub fn pivot_cols_one_based(&self) -> Vec<usize> {
        self.pivot_cols.iter().map(|c| c + 1).collect()
    }
}

/// Extended Euclid: `(g, s, t)` with `s·a + t·b = g` and `g ≥ 0`.
pub(crate) fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_mod_floor(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Working state: `h` is transformed by row operations `E`; `u` accumulates
/// `E·u` and `p` accumulates `p·E⁻¹`, so `u·a = h` and `p·h = a` throughout.
struct RowReducer {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    p: Vec<Vec<BigInt>>,
}

impl RowReducer {
    fn new(a: &IntMatrix) -> Self {
        let m = a.rows();
        RowReducer {
            h: a.to_rows(),
            u: IntMatrix::identity(m).into_rows(),
            p: IntMatrix::identity(m).into_rows(),
        }
    }

    /// Replace rows `(i, k)` by `[[x, y], [z, w]]·(row_i, row_k)` where the
    /// 2×2 matrix has determinant one.
    fn combine(&mut self, i: usize, k: usize, [x, y, z, w]: [&BigInt; 4]) {
        debug_assert!((x * w - y * z).is_one());
        for rows in [&mut self.h, &mut self.u] {
            for c in 0..rows[i].len() {
                let a = &rows[i][c];
                let b = &rows[k][c];
                let new_i = x * a + y * b;
                let new_k = z * a + w * b;
                rows[i][c] = new_i;
                rows[k][c] = new_k;
            }
        }
        // Inverse is [[w, -y], [-z, x]] applied on the right of p.
        for row in self.p.iter_mut() {
            let a = &row[i];
            let b = &row[k];
            let new_i = a * w - b * z;
            let new_k = b * x - a * y;
            row[i] = new_i;
            row[k] = new_k;
        }
    }

    fn negate(&mut self, i: usize) {
        for v in self.h[i].iter_mut().chain(self.u[i].iter_mut()) {
            *v = -std::mem::take(v);
        }
        for row in self.p.iter_mut() {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    /// `row_i -= q · row_k`.
    fn sub_multiple(&mut self, i: usize, k: usize, q: &BigInt) {
        for rows in [&mut self.h, &mut self.u] {
            let (src, dst) = if i < k {
                let (lo, hi) = rows.split_at_mut(k);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[k], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
        // Inverse op on the right of p: column k += q · column i.
        for row in self.p.iter_mut() {
            if !row[i].is_zero() {
                let add = q * &row[i];
                row[k] += add;
            }
        }
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HnfResult {
    let (m, n) = a.shape();
    let mut st = RowReducer::new(a);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if st.h[i][col].is_zero() {
                continue;
            }
            let a_val = st.h[r][col].clone();
            let b_val = st.h[i][col].clone();
            let (g, s, t) = extended_gcd(&a_val, &b_val);
            let zi = -(&b_val / &g);
            let wi = &a_val / &g;
            // (s, t; -b/g, a/g) has determinant (s·a + t·b)/g = 1.
            st.combine(r, i, [&s, &t, &zi, &wi]);
        }
        if st.h[r][col].is_zero() {
            continue;
        }
        if st.h[r][col].is_negative() {
            st.negate(r);
        }
        let pivot = st.h[r][col].clone();
        for k in 0..r {
            let q = st.h[k][col].div_floor(&pivot);
            if !q.is_zero() {
                st.sub_multiple(k, r, &q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let build = |rows: Vec<Vec<BigInt>>| IntMatrix::from_rows(rows).expect("nonempty");
    HnfResult {
        h: build(st.h),
        p: build(st.p),
        p_inv: build(st.u),
        rank: pivots.len(),
        pivot_cols: pivots,
    }
}

/// 0-based pivot columns when `h` is in Hermite normal form.
pub fn hnf_pivots(h: &IntMatrix) -> Option<Vec<usize>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        match h.row(i).iter().position(|x| !x.is_zero()) {
            None => seen_zero_row = true,
            Some(j) => {
                if seen_zero_row || pivots.last().is_some_and(|&last| j <= last) {
                    return None;
                }
                let pivot = h.get(i, j);
                if !pivot.is_positive() {
                    return None;
                }
                for k in 0..i {
                    let above = h.get(k, j);
                    if above.is_negative() || above >= pivot {
                        return None;
                    }
                }
                pivots.push(j);
            }
        }
    }
    Some(pivots)
}

pub fn is_hnf(h: &IntMatrix) -> bool {
    hnf_pivots(h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imat;

    #[test]
    fn extended_gcd_signs() {
        for (a, b) in [(12, 18), (-12, 18), (0, -5), (7, 0), (-3, -9), (0, 0)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (g, s, t) = extended_gcd(&a, &b);
            assert!(!g.is_negative());
            assert_eq!(&s * &a + &t * &b, g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn worked_example() {
        let a = imat![[2, -4, 2, 5, -6], [2, -2, 2, 5, -3], [0, -2, 1, 2, -3]];
        let res = hermite_normal_form(&a);
        assert_eq!(res.h, imat![[2, 0, 0, 1, 0], [0, 2, 0, 0, 3], [0, 0, 1, 2, 0]]);
        // Full row rank pins P down uniquely.
        assert_eq!(res.p, imat![[1, -2, 2], [1, -1, 2], [0, -1, 1]]);
        assert_eq!(res.p_inv, imat![[1, 0, -2], [-1, 1, 0], [-1, 1, 1]]);
        assert_eq!(res.pivot_cols, vec![0, 1, 2]);
        assert_eq!(res.rank, 3);
    }

    #[test]
    fn already_hnf_gives_identity_witness() {
        let h = imat![[2, 0, 0, 1, 0], [0, 2, 0, 0, 3], [0, 0, 1, 2, 0]];
        let res = hermite_normal_form(&h);
        assert_eq!(res.h, h);
        assert_eq!(res.p, IntMatrix::identity(3));
    }

    #[test]
    fn row_swap_case() {
        let res = hermite_normal_form(&imat![[0, 2], [3, 0]]);
        assert_eq!(res.h, imat![[3, 0], [0, 2]]);
        assert_eq!(res.p, imat![[0, 1], [1, 0]]);
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let res = hermite_normal_form(&z);
        assert_eq!(res.h, z);
        assert_eq!(res.rank, 0);
        assert_eq!(res.p, IntMatrix::identity(2));
        assert_eq!(res.strip_zero_rows(), None);
    }

    #[test]
    fn negative_pivot_flipped() {
        let res = hermite_normal_form(&imat![[-3, 1]]);
        assert_eq!(res.h, imat![[3, -1]]);
        assert_eq!(res.p, imat![[-1]]);
    }

    #[test]
    fn is_hnf_examples() {
        assert!(is_hnf(&imat![[2, 0, 0, 1, 0], [0, 2, 0, 0, 3], [0, 0, 1, 2, 0]]));
        assert!(is_hnf(&IntMatrix::identity(4)));
        assert!(!is_hnf(&imat![[1, 0], [1, 1]]));
        assert!(!is_hnf(&imat![[-1, 0]]));
        assert!(!is_hnf(&imat![[1, 2], [0, 2]]), "entry above pivot equals pivot");
        assert!(!is_hnf(&imat![[1, -1], [0, 2]]), "negative entry above pivot");
        assert!(!is_hnf(&imat![[0, 0], [0, 1]]), "zero row before nonzero row");
        assert!(is_hnf(&imat![[1, 1, 5], [0, 0, 7], [0, 0, 0]]));
    }

    #[test]
    fn strip_zero_rows_examples() {
        let full = hermite_normal_form(&IntMatrix::identity(3));
        assert_eq!(full.strip_zero_rows().unwrap(), IntMatrix::identity(3));
        let stacked = imat![[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]];
        assert_eq!(hermite_normal_form(&stacked).strip_zero_rows().unwrap(), IntMatrix::identity(3));
        let res = hermite_normal_form(&imat![[1, 1], [1, 1]]);
        assert_eq!(res.h, imat![[1, 1], [0, 0]]);
        assert_eq!(res.strip_zero_rows().unwrap(), imat![[1, 1]]);
    }

    #[test]
    fn large_entries() {
        let a = imat![[1_000_000_007, 998_244_353], [999_999_937, 1_000_000_009]];
        let res = hermite_normal_form(&a);
        assert!(is_hnf(&res.h));
        assert_eq!(res.p.multiply(&res.h).unwrap(), a);
        assert!(res.p.is_unimodular());
    }
}
