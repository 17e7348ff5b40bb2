use bideterminant::exactla::{rank_of, ExactMatrix, Rational, RowSpace};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| ExactMatrix::from_flat(r, c, v.into_iter().map(Rational::from_i64).collect()))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #[test]
    fn rank_of_transpose(a in small_matrix(5, 5)) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solutions_are_exact(a in small_matrix(4, 4), x in prop::collection::vec(-4i64..=4, 4)) {
        let x: Vec<Rational> = x.into_iter().take(a.cols()).map(Rational::from_i64).collect();
        prop_assume!(x.len() == a.cols());
        let b = a.mul_vec(&x).unwrap();
        let sol = a.solve(&b).unwrap().expect("b lies in the column space");
        prop_assert_eq!(a.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn nullspace_rank_nullity(a in small_matrix(4, 6)) {
        let ns = a.nullspace();
        prop_assert_eq!(ns.len() + a.rank(), a.cols());
        for v in &ns {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(rank_of(&ns), ns.len());
    }

    #[test]
    fn rowspace_nullspace_matches_matrix(a in small_matrix(4, 6)) {
        let mut space = RowSpace::new(a.cols());
        for row in a.to_rows() {
            space.insert(&row);
        }
        prop_assert_eq!(space.rank(), a.rank());
        let ns = space.nullspace();
        prop_assert_eq!(ns.len(), a.nullspace().len());
        for v in &ns {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rational::one());
        }
        prop_assert!(a.denom() > 0.into());
    }

    #[test]
    fn display_parses_back(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn inverse_is_two_sided(a in small_matrix(3, 3)) {
        prop_assume!(a.rows() == a.cols());
        match a.inverse().unwrap() {
            Some(inv) => {
                prop_assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(a.rows()));
                prop_assert!(!a.determinant().unwrap().is_zero());
            }
            None => prop_assert!(a.determinant().unwrap().is_zero()),
        }
    }
}

#[test]
fn large_values_stay_exact() {
    let big = Rational::from_i64(i64::MAX);
    let sq = &big * &big;
    assert_eq!(&sq / &big, big);
    assert_eq!(Rational::new(6, -4), Rational::new(-3, 2));
}
