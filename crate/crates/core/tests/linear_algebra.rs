use num_traits::{One, Zero};
use proptest::prelude::*;

use seaweed_core::exact::{self, rat, RatMatrix, Rational};

fn square(max: usize, range: i64) -> impl Strategy<Value = RatMatrix> {
    (1..=max).prop_flat_map(move |n| {
        prop::collection::vec(-range..=range, n * n).prop_map(move |v| {
            RatMatrix::from_entries(n, n, v.into_iter().map(rat).collect()).unwrap()
        })
    })
}

fn skew(n: usize, range: i64) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-range..=range, n * (n.saturating_sub(1)) / 2).prop_map(move |v| {
        let mut m = RatMatrix::zeros(n, n);
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = rat(it.next().unwrap());
                m.set(j, i, -x.clone());
                m.set(i, j, x);
            }
        }
        m
    })
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &RatMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor_entries: Vec<Rational> = (1..n)
            .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| m.get(r, c).clone())
            .collect();
        let minor = RatMatrix::from_entries(n - 1, n - 1, minor_entries).unwrap();
        let term = m.get(0, j) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Pfaffian by expansion along the first row.
fn pfaffian(m: &RatMatrix, idx: &[usize]) -> Rational {
    if idx.is_empty() {
        return Rational::one();
    }
    let first = idx[0];
    let mut total = Rational::zero();
    for (k, &j) in idx.iter().enumerate().skip(1) {
        let rest: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&x| x != first && x != j)
            .collect();
        let term = m.get(first, j) * pfaffian(m, &rest);
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in square(6, 9)) {
        prop_assert_eq!(exact::det(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rational_entries_agree_with_cofactor(
        (n, nums, dens) in (1usize..=5).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(-20i64..=20, n * n),
            prop::collection::vec(1i64..=7, n * n),
        ))
    ) {
        let entries = nums.iter().zip(&dens).map(|(&a, &b)| exact::ratio(a, b)).collect();
        let m = RatMatrix::from_entries(n, n, entries).unwrap();
        prop_assert_eq!(exact::det(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rank_nullity(m in square(7, 2)) {
        let kernel = exact::kernel_basis(&m);
        prop_assert_eq!(exact::rank(&m) + kernel.len(), m.rows());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn odd_skew_determinant_vanishes(m in (0usize..5).prop_flat_map(|k| skew(2 * k + 1, 50))) {
        prop_assert!(exact::det(&m).unwrap().is_zero());
    }

    #[test]
    fn even_skew_determinant_is_pfaffian_squared(m in (1usize..=5).prop_flat_map(|k| skew(2 * k, 30))) {
        let idx: Vec<usize> = (0..m.rows()).collect();
        let pf = pfaffian(&m, &idx);
        prop_assert_eq!(exact::det(&m).unwrap(), &pf * &pf);
    }

    #[test]
    fn skew_kernel_parity(m in (1usize..=9).prop_flat_map(|n| skew(n, 1))) {
        prop_assert_eq!(exact::kernel_basis(&m).len() % 2, m.rows() % 2);
    }

    #[test]
    fn inverse_is_two_sided(m in square(5, 6)) {
        match exact::inverse(&m) {
            Ok(inv) => {
                let id = RatMatrix::identity(m.rows());
                prop_assert_eq!(m.mul(&inv).unwrap(), id.clone());
                prop_assert_eq!(inv.mul(&m).unwrap(), id);
            }
            Err(_) => prop_assert!(exact::det(&m).unwrap().is_zero()),
        }
    }
}
