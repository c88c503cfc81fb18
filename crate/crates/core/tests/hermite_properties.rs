use hnfdecomp::sampling::random_unimodular;
use hnfdecomp::{hermite_normal_form, is_hnf, rank, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols).prop_map(move |v| {
        IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(v[i * cols + j]))
    })
}

fn any_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| matrix(r, c, bound))
}

proptest! {
    #[test]
    fn witness_is_valid(a in any_matrix(5, 6, 6)) {
        let res = hermite_normal_form(&a);
        prop_assert!(is_hnf(&res.h));
        prop_assert_eq!(res.p.multiply(&res.h).unwrap(), a.clone());
        prop_assert_eq!(res.p_inv.multiply(&a).unwrap(), res.h.clone());
        prop_assert!(res.p.is_unimodular());
        prop_assert_eq!(res.pivot_cols.len(), res.rank);
        prop_assert!(res.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(res.h.zero_rows().iter().all(|&i| i >= res.rank));
    }

    #[test]
    fn idempotent(a in any_matrix(4, 6, 5)) {
        let h = hermite_normal_form(&a).h;
        let again = hermite_normal_form(&h);
        prop_assert_eq!(&again.h, &h);
    }

    #[test]
    fn invariant_under_left_unimodular(a in any_matrix(4, 5, 4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unimodular(&mut rng, a.rows(), 20);
        let ua = u.multiply(&a).unwrap();
        prop_assert_eq!(hermite_normal_form(&ua).h, hermite_normal_form(&a).h);
    }

    #[test]
    fn rank_matches_rational_elimination(a in any_matrix(5, 5, 3)) {
        prop_assert_eq!(hermite_normal_form(&a).rank, rank(&a));
    }

    #[test]
    fn block_compatible_for_full_row_rank(a1 in any_matrix(2, 3, 4), a2 in any_matrix(2, 3, 4)) {
        let h1 = hermite_normal_form(&a1).strip_zero_rows();
        let h2 = hermite_normal_form(&a2).strip_zero_rows();
        if let (Some(h1), Some(h2)) = (h1, h2) {
            let sum = IntMatrix::direct_sum(&[h1.clone(), h2.clone()]).unwrap();
            let lifted = IntMatrix::direct_sum(&[a1.clone(), a2.clone()]).unwrap();
            // Drop zero rows of the lifted input so both sides are full row rank.
            let lifted = lifted.without_zero_rows().unwrap();
            let h = hermite_normal_form(&lifted);
            prop_assert_eq!(h.strip_zero_rows().unwrap(), sum);
        }
    }
}
