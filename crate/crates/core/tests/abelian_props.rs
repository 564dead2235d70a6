//! Property tests for the abelian group calculus.

use num_bigint::BigInt;
use proptest::prelude::*;

use zetaval_core::abelian::hom::{z_value, z_value_brute_force, GroupHom};
use zetaval_core::abelian::snf::{smith_normal_form, IntMat};
use zetaval_core::abelian::AbGroup;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-20i64..20, c), r)
    })
}

fn to_mat(rows: &[Vec<i64>]) -> IntMat {
    IntMat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
}

proptest! {
    #[test]
    fn snf_transform_identity(rows in small_matrix()) {
        let m = to_mat(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        // Divisibility chain.
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn snf_invariant_under_permutations(rows in small_matrix(), seed in 0u64..1000) {
        let m = to_mat(&rows);
        let base = smith_normal_form(&m).invariant_factors();
        // Deterministic pseudo-random row/column permutation from the seed.
        let mut permuted = rows.clone();
        let r = permuted.len();
        if r > 1 {
            permuted.swap((seed as usize) % r, (seed as usize / r) % r);
        }
        let c = permuted[0].len();
        if c > 1 {
            let i = (seed as usize / 7) % c;
            let j = (seed as usize / 13) % c;
            for row in permuted.iter_mut() {
                row.swap(i, j);
            }
        }
        let shuffled = smith_normal_form(&to_mat(&permuted)).invariant_factors();
        prop_assert_eq!(base, shuffled);
    }

    #[test]
    fn snf_square_determinant(rows in (1usize..4).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(-10i64..10, n), n)
    })) {
        let m = to_mat(&rows);
        let n = rows.len();
        let det = determinant(&rows);
        let snf = smith_normal_form(&m);
        let product: BigInt = snf.invariant_factors().iter().product();
        if det != 0 {
            prop_assert_eq!(snf.rank(), n);
            prop_assert_eq!(product, BigInt::from(det.abs()));
        } else {
            prop_assert!(snf.rank() < n);
        }
    }

    #[test]
    fn z_value_matches_enumeration(
        orders_s in proptest::collection::vec(2i64..12, 1..3),
        orders_t in proptest::collection::vec(2i64..12, 1..3),
        entries in proptest::collection::vec(0i64..24, 9),
    ) {
        let source = AbGroup::finite_i64(&orders_s);
        let target = AbGroup::finite_i64(&orders_t);
        let s = source.fg_coords();
        let t = target.fg_coords();
        // Snap each entry to the nearest well-defined value.
        let mut rows = Vec::with_capacity(t);
        for i in 0..t {
            let n_i = target.coord_order(i);
            let mut row = Vec::with_capacity(s);
            for j in 0..s {
                let m_j = source.coord_order(j);
                let step = &n_i / num_integer::Integer::gcd(&n_i, &m_j);
                row.push(&step * BigInt::from(entries[(i * s + j) % entries.len()]));
            }
            rows.push(row);
        }
        let hom = GroupHom::new(source, target, IntMat::from_rows(rows)).unwrap();
        prop_assert_eq!(
            z_value(&hom).unwrap(),
            z_value_brute_force(&hom, 10_000).unwrap()
        );
    }
}

fn determinant(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    match n {
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        }
        _ => unreachable!(),
    }
}
