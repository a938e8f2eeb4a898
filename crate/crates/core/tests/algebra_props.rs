use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use ztorsion_core::intlin::{saturate, LatticeIndex, lattice_index};
use ztorsion_core::poly::{normalize_series, LaurentPoly};
use ztorsion_core::{hermite_normal_form, smith_normal_form, BivariatePoly, HilbertSeries, IntMatrix, Lattice, UnivariatePoly};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n)
            .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    (0..n)
        .map(|j| {
            let rows: Vec<Vec<BigInt>> = (1..n)
                .map(|i| (0..n).filter(|&k| k != j).map(|k| m[(i, k)].clone()).collect())
                .collect();
            let minor = IntMatrix::from_rows(n - 1, &rows).unwrap();
            let term = &m[(0, j)] * cofactor_det(&minor);
            if j % 2 == 0 { term } else { -term }
        })
        .sum()
}

fn upoly() -> impl Strategy<Value = UnivariatePoly> {
    prop::collection::vec(-4i64..=4, 0..5).prop_map(|c| UnivariatePoly::from_i64(&c))
}

fn bpoly() -> impl Strategy<Value = BivariatePoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 0..5)
        .prop_map(|t| BivariatePoly::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #[test]
    fn snf_reconstructs(m in matrix(4, 4)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        for w in s.invariants.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.invariants.iter().all(|d| d.is_positive()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_determinant(m in square(4)) {
        let s = smith_normal_form(&m);
        let det = cofactor_det(&m).abs();
        if det.is_zero() {
            prop_assert!(s.rank() < m.rows());
        } else {
            prop_assert_eq!(s.invariants.iter().product::<BigInt>(), det);
        }
    }

    #[test]
    fn hnf_is_idempotent_and_spans_same_lattice(m in matrix(4, 3)) {
        let h = hermite_normal_form(&m);
        prop_assert_eq!(hermite_normal_form(&h), h.clone());
        let a = Lattice::from_generators(m.cols(), &m).unwrap();
        let b = Lattice::from_generators(h.cols(), &h).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn saturation_properties(m in matrix(3, 3)) {
        let l = Lattice::from_generators(m.cols(), &m).unwrap();
        let s = saturate(&l);
        prop_assert_eq!(saturate(&s), s.clone());
        prop_assert!(s.contains_lattice(&l));
        prop_assert_eq!(s.rank(), l.rank());
        match lattice_index(&l, &s).unwrap() {
            LatticeIndex::Finite(k) => prop_assert!(k.is_positive()),
            LatticeIndex::Infinite => prop_assert!(false, "same rank sublattice has finite index"),
        }
    }

    #[test]
    fn univariate_ring_axioms(a in upoly(), b in upoly(), c in upoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn bivariate_ring_axioms(a in bpoly(), b in bpoly(), c in bpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(a.swap_xy().swap_xy(), a.clone());
        let t = LaurentPoly::t();
        let ti = LaurentPoly::t_inv();
        prop_assert_eq!(
            (&a * &b).substitute_xy(&t, &ti),
            &a.substitute_xy(&t, &ti) * &b.substitute_xy(&t, &ti)
        );
    }

    #[test]
    fn normalization_preserves_expansion(num in upoly(), extra in 0usize..3, pole in 0usize..4) {
        // multiply numerator and denominator by (1 - t)^extra
        let padded = &num * &UnivariatePoly::one_minus_t_pow(1).pow(extra as u32);
        let a = HilbertSeries::new(num.clone(), pole);
        let b = HilbertSeries::new(padded, pole + extra);
        prop_assert_eq!(&a, &b);
        let again = normalize_series(&LaurentPoly::from_poly(a.numerator()), a.pole_order()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(a.expand(12), b.expand(12));
    }
}
