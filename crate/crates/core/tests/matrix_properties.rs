use hnfdecomp::{IntMatrix, Permutation};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols).prop_map(move |v| {
        IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(v[i * cols + j]))
    })
}

fn any_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| matrix(r, c, bound))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn multiply_is_associative(
        (a, b, c) in (1usize..5, 1usize..5, 1usize..5, 1usize..5)
            .prop_flat_map(|(m, n, p, q)| (matrix(m, n, 50), matrix(n, p, 50), matrix(p, q, 50)))
    ) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gram_is_symmetric_psd(
        h in any_matrix(5, 10),
        xs in prop::collection::vec(prop::collection::vec(-20i64..=20, 5), 100),
    ) {
        let g = h.gram();
        prop_assert!(g.is_symmetric());
        for i in 0..g.rows() {
            let col_sq: BigInt = h.column(i).map(|x| x * x).sum();
            prop_assert_eq!(g.get(i, i), &col_sq);
        }
        for x in xs {
            let x: Vec<BigInt> = x[..g.rows()].iter().map(|&v| BigInt::from(v)).collect();
            let mut q = BigInt::zero();
            for i in 0..g.rows() {
                for j in 0..g.cols() {
                    q += &x[i] * g.get(i, j) * &x[j];
                }
            }
            prop_assert!(!q.is_negative());
        }
    }

    #[test]
    fn determinant_is_multiplicative(
        (a, b) in (1usize..6).prop_flat_map(|n| (matrix(n, n, 9), matrix(n, n, 9)))
    ) {
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn direct_sum_blocks_extract(blocks in prop::collection::vec(any_matrix(3, 9), 1..5)) {
        let sum = IntMatrix::direct_sum(&blocks).unwrap();
        let (mut r0, mut c0) = (0, 0);
        for b in &blocks {
            let rows: Vec<usize> = (r0..r0 + b.rows()).collect();
            let cols: Vec<usize> = (c0..c0 + b.cols()).collect();
            prop_assert_eq!(&sum.submatrix(&rows, &cols), b);
            r0 += b.rows();
            c0 += b.cols();
        }
        let nonzero_outside = (0..sum.rows()).flat_map(|i| (0..sum.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| !sum.get(i, j).is_zero())
            .count();
        let nonzero_inside: usize = blocks.iter()
            .map(|b| (0..b.rows()).flat_map(|i| (0..b.cols()).map(move |j| (i, j)))
                .filter(|&(i, j)| !b.get(i, j).is_zero()).count())
            .sum();
        prop_assert_eq!(nonzero_outside, nonzero_inside);
    }

    #[test]
    fn permutation_matrices_are_orthogonal(q in (1usize..9).prop_flat_map(permutation)) {
        let m = q.matrix();
        prop_assert_eq!(m.transpose().multiply(&m).unwrap(), IntMatrix::identity(q.len()));
        prop_assert!(m.is_unimodular());
        prop_assert_eq!(q.inverse().matrix(), m.transpose());
    }

    #[test]
    fn column_permutation_matches_matrix_product(
        (a, q) in (1usize..5, 1usize..7).prop_flat_map(|(r, c)| (matrix(r, c, 20), permutation(c)))
    ) {
        prop_assert_eq!(a.apply_column_permutation(&q).unwrap(), a.multiply(&q.matrix()).unwrap());
    }
}
