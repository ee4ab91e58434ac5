use proptest::prelude::*;
use rfold_core::geometry::parse_geometry;
use rfold_core::jet::{Jet, Rational};
use rfold_core::operators::{d, delta};
use rfold_core::tensor::text::{read_jet_tensor, write_jet_tensor};
use rfold_core::tensor::{BlockShape, MetricAlgebra, RFoldTensor};
use rfold_core::torus::{
    decompose, fourier_d_block, fourier_delta_block, FourierTensorField, TOLERANCE,
};

const NVARS: usize = 2;
const ORDER: u32 = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d))
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

/// Jets in two variables truncated at order 3.
fn jet() -> impl Strategy<Value = Jet> {
    prop::collection::vec(rational(), 10).prop_map(|cs| {
        let exps = (0..=ORDER).flat_map(|deg| (0..=deg).map(move |i| vec![deg - i, i]));
        Jet::from_terms(NVARS, ORDER, exps.zip(cs)).unwrap()
    })
}

fn constant_tensor(n: usize, ranks: &'static [usize]) -> impl Strategy<Value = RFoldTensor<Jet>> {
    let shape = BlockShape::new(n, ranks).unwrap();
    let len = shape.keys().count();
    prop::collection::vec(rational(), len).prop_map(move |cs| {
        let mut it = cs.into_iter();
        RFoldTensor::from_fn(shape.clone(), Jet::zero(n), |_| {
            Jet::constant(n, it.next().unwrap())
        })
    })
}

/// Polynomial tensor on flat 3-space with coefficients linear and
/// quadratic in the coordinates.
fn polynomial_tensor(ranks: &'static [usize]) -> impl Strategy<Value = RFoldTensor<Jet>> {
    let n = 3;
    let shape = BlockShape::new(n, ranks).unwrap();
    let len = shape.keys().count();
    prop::collection::vec(prop::collection::vec(rational(), 4), len).prop_map(move |cs| {
        let mut it = cs.into_iter();
        RFoldTensor::from_fn(shape.clone(), Jet::zero(n), |_| {
            let c = it.next().unwrap();
            let terms = vec![
                (vec![0, 0, 0], c[0].clone()),
                (vec![1, 0, 0], c[1].clone()),
                (vec![0, 1, 1], c[2].clone()),
                (vec![0, 0, 2], c[3].clone()),
            ];
            Jet::from_terms(n, 4, terms).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_fast_path_matches_bigint(a in big_rational(), b in big_rational()) {
        prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
        prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
        prop_assert_eq!((&a - &b).to_big(), a.to_big() - b.to_big());
    }

    #[test]
    fn rational_text_round_trip(a in big_rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn jets_form_a_commutative_ring(a in jet(), b in jet(), c in jet()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn jet_inverse(a in jet(), c in rational().prop_filter("nonzero", |c| !c.is_zero())) {
        let a = &a.truncate(ORDER) - &Jet::constant(NVARS, &a.constant_term() - &c);
        let inv = a.invert().unwrap();
        prop_assert!((&a * &inv).eq_to_order(&Jet::one(NVARS)));
    }

    #[test]
    fn partial_derivative_obeys_leibniz(a in jet(), b in jet(), v in 0..NVARS) {
        let lhs = (&a * &b).partial(v).unwrap();
        let rhs = &(&a.partial(v).unwrap() * &b) + &(&a * &b.partial(v).unwrap());
        prop_assert!(lhs.eq_to_order(&rhs));
    }

    #[test]
    fn jet_text_round_trip(a in jet()) {
        let back = Jet::from_text(NVARS, ORDER, &a.to_text(), 1).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn block_antisymmetry(t in constant_tensor(4, &[2, 3])) {
        let idx = [0, 2, 1, 2, 3];
        let swapped = [2, 0, 1, 2, 3];
        let rolled = [0, 2, 2, 3, 1];
        prop_assert_eq!(t.component(&swapped).unwrap(), -&t.component(&idx).unwrap());
        prop_assert_eq!(t.component(&rolled).unwrap(), t.component(&idx).unwrap());
        prop_assert!(t.component(&[1, 1, 0, 1, 2]).unwrap().is_zero());
    }

    #[test]
    fn transpose_is_an_involution(t in constant_tensor(4, &[2, 1])) {
        let tt = t.transpose().unwrap();
        prop_assert_eq!(tt.shape().ranks(), &[1, 2][..]);
        prop_assert_eq!(tt.component(&[3, 0, 1]).unwrap(), t.component(&[0, 1, 3]).unwrap());
        let back = tt.transpose().unwrap();
        prop_assert!(back.sub(&t).unwrap().is_zero());
    }

    #[test]
    fn jet_tensor_text_round_trip(t in constant_tensor(3, &[1, 2])) {
        let (back, _) = read_jet_tensor(&write_jet_tensor(&t)).unwrap();
        prop_assert!(back.sub(&t).unwrap().is_zero());
    }

    #[test]
    fn euclidean_product_is_symmetric_and_positive(
        t in constant_tensor(3, &[2, 1]),
        s in constant_tensor(3, &[2, 1]),
    ) {
        let m = MetricAlgebra::euclidean(3, Jet::one(3));
        prop_assert_eq!(m.pointwise_product(&t, &s).unwrap(), m.pointwise_product(&s, &t).unwrap());
        let tt = m.pointwise_product(&t, &t).unwrap().constant_term();
        prop_assert_eq!(tt.signum() > 0, !t.is_zero());
    }

    #[test]
    fn flat_block_operators_are_nilpotent(t in polynomial_tensor(&[1, 1])) {
        let geom = parse_geometry("flat-euclidean", Some(3), 4).unwrap();
        for i in 0..2 {
            prop_assert!(d(&geom, &d(&geom, &t, i).unwrap(), i).unwrap().is_zero());
            prop_assert!(delta(&geom, &delta(&geom, &t, i).unwrap(), i).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn torus_nilpotency_and_reconstruction(seed in any::<u64>(), real in any::<bool>()) {
        let shape = BlockShape::new(3, &[1, 2]).unwrap();
        let f = FourierTensorField::random(shape, 1, seed, real);
        for i in 0..2 {
            prop_assert!(fourier_d_block(&fourier_d_block(&f, i).unwrap(), i).unwrap().max_norm() <= 1e-13);
            prop_assert!(fourier_delta_block(&fourier_delta_block(&f, i).unwrap(), i).unwrap().max_norm() <= 1e-13);
        }
        let res = decompose(&f).unwrap();
        prop_assert!(res.residual <= TOLERANCE);
        if real {
            prop_assert!(res.superpotential.reality_defect() <= TOLERANCE);
        }
    }
}
