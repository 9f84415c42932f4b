use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use toric::exactmath::*;

fn matrix(max_rows: usize, max_cols: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-range..=range, c), r))
}

fn full_rank(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    matrix(max_rows, max_cols, 6)
        .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
        .prop_filter("full row rank", |m| m.rows() <= m.cols() && rank(m) == m.rows())
}

fn dot(v: &[i64], w: &[BigRational]) -> BigRational {
    v.iter().zip(w).map(|(&a, b)| b * BigRational::from_integer(BigInt::from(a))).fold(BigRational::zero(), |s, x| s + x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_is_a_unimodular_transform(rows in matrix(8, 8, 50)) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!(det_bareiss(&u).unwrap().abs(), BigInt::one());
        prop_assert!(is_hermite_normal_form(&h));
    }

    #[test]
    fn kernel_basis_is_canonical(m in full_rank(3, 6), mix in prop::collection::vec(-3i64..=3, 36)) {
        let basis = kernel_lattice_basis(&m).unwrap();
        prop_assert_eq!(basis.len(), m.cols() - m.rows());
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        if basis.is_empty() {
            return Ok(());
        }
        // another basis of the same lattice: a unimodular row transform of this one
        let k = basis.len();
        let mut other = basis.clone();
        for (t, pair) in mix.chunks(2).take(2 * k).enumerate() {
            let (i, j) = (t % k, (t + 1 + pair[0].unsigned_abs() as usize) % k);
            if i != j {
                let row_j = other[j].clone();
                for (x, y) in other[i].iter_mut().zip(&row_j) {
                    *x += pair[1] * y;
                }
            }
        }
        other.reverse();
        let (h1, _) = hnf(&IntMatrix::from_rows(&basis).unwrap());
        let (h2, _) = hnf(&IntMatrix::from_rows(&other).unwrap());
        prop_assert_eq!(h1, h2);
    }

    #[test]
    fn max_minor_is_positive_on_full_rank(m in full_rank(3, 6)) {
        prop_assert!(max_abs_minor(&m).unwrap() >= BigInt::one());
        prop_assert!(lattice_index(&m).unwrap() >= BigInt::one());
    }

    #[test]
    fn strict_feasible_matches_grid(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=5)) {
        let got = strict_feasible(&rows).unwrap();
        if let Some(w) = &got {
            for g in &rows {
                prop_assert!(dot(g, w).is_positive());
            }
        }
        // a grid of step 1/4 on [-4, 4]^2
        let grid_hit = (-16i64..=16).any(|x| (-16i64..=16).any(|y| rows.iter().all(|g| g[0] * x + g[1] * y > 0)));
        if grid_hit {
            prop_assert!(got.is_some());
        }
    }

    #[test]
    fn strict_feasible_matches_grid_3d(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=6)) {
        let got = strict_feasible(&rows).unwrap();
        if let Some(w) = &got {
            for g in &rows {
                prop_assert!(dot(g, w).is_positive());
            }
        }
        let r = -6i64..=6;
        let grid_hit = r.clone().any(|x| r.clone().any(|y| r.clone().any(|z| rows.iter().all(|g| g[0] * x + g[1] * y + g[2] * z > 0))));
        if grid_hit {
            prop_assert!(got.is_some());
        }
    }
}

#[test]
fn kernel_examples() {
    let m = IntMatrix::from_rows(&[[1, 1, 1, 1], [0, 1, 2, 3]]).unwrap();
    let k = kernel_lattice_basis(&m).unwrap();
    assert_eq!(k.len(), 2);
    // the lattice is saturated: each quadric is an integer combination
    let (h, _) = hnf(&IntMatrix::from_rows(&k).unwrap());
    let (h2, _) = hnf(&IntMatrix::from_rows(&[[1, -2, 1, 0], [0, 1, -2, 1]]).unwrap());
    assert_eq!(h, h2);
    assert!(matches!(kernel_lattice_basis(&IntMatrix::from_rows(&[[1, 1], [2, 2]]).unwrap()), Err(toric::Error::RankDeficient { .. })));
}

#[test]
fn minors_of_segment() {
    let m = IntMatrix::from_rows(&[[1, 1, 1], [0, 1, 2]]).unwrap();
    assert_eq!(max_abs_minor(&m).unwrap(), BigInt::from(2));
    assert_eq!(lattice_index(&m).unwrap(), BigInt::one());
    assert_eq!(nonzero_maximal_minors(&m).unwrap(), vec![BigInt::one(), BigInt::from(2)]);
}
