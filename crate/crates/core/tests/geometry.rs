use rfold_core::geometry::parse_geometry;
use rfold_core::jet::{Jet, Rational};
use rfold_core::tensor::{kulkarni_nomizu, riemann_candidate_defects, RFoldTensor};

#[test]
fn constant_curvature_matches_closed_form() {
    for k in [Rational::ONE, Rational::new(-2, 3)] {
        let geom = parse_geometry(&format!("constcurv:{k}"), Some(4), 4).unwrap();
        let g = geom.metric().metric_tensor();
        // K (g_ac g_bd - g_ad g_bc) = K/2 (g o g)
        let expected = kulkarni_nomizu(&g, &g)
            .unwrap()
            .scale(&(&k * &Rational::new(1, 2)));
        let diff = geom.riemann().sub(&expected).unwrap();
        assert!(diff.is_zero(), "residual {}", diff.max_abs());
        assert_eq!(geom.riemann().order(), 2);
        assert!(geom.weyl().is_zero());
        let r0 = geom.scalar_curvature().constant_term();
        assert_eq!(r0, &k * &Rational::integer(12));
    }
}

#[test]
fn schwarzschild_is_ricci_flat() {
    let geom = parse_geometry("schwarzschild:1:3", None, 5).unwrap();
    assert!(geom.ricci().is_zero());
    assert_eq!(geom.ricci().order(), 3);
    assert!(!geom.riemann().is_zero());
    assert_eq!(geom.signature_sign(), -1);
    let (pair, bianchi) = riemann_candidate_defects(geom.riemann()).unwrap();
    assert!(pair.is_zero() && bianchi.is_zero());
    // Weyl equals Riemann in vacuum
    assert!(geom.weyl().sub(geom.riemann()).unwrap().is_zero());
}

#[test]
fn metricity_and_parallel_volume() {
    for name in ["schwarzschild:1:3", "flrw:1,1,1", "constcurv:1"] {
        let geom = parse_geometry(name, None, 4).unwrap();
        let g = geom.metric().metric_tensor();
        assert!(geom.nabla(&g).unwrap().is_zero(), "{name}");
        assert!(geom.nabla(&geom.eta()).unwrap().is_zero(), "{name}");
    }
}

#[test]
fn ricci_identity_on_a_one_form() {
    let geom = parse_geometry("flrw:2,1,3", None, 4).unwrap();
    let n = 4;
    let shape = rfold_core::tensor::BlockShape::new(n, &[1]).unwrap();
    let v = RFoldTensor::from_indices(shape, Jet::zero(n), |i| {
        Jet::from_terms(
            n,
            rfold_core::jet::EXACT,
            vec![
                (vec![1, 0, 0, 0], Rational::integer(i[0] as i64 + 1)),
                (vec![0, 0, 1, 1], Rational::ONE),
            ],
        )
        .unwrap()
    });
    let vv = geom.nabla(&geom.nabla(&v).unwrap()).unwrap();
    let ginv = geom.metric().ginv();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = &vv.component(&[a, b, c]).unwrap() - &vv.component(&[a, c, b]).unwrap();
                // R^d_{abc} v_d = g^{de} R_{eabc} v_d
                let mut rhs = Jet::zero(n);
                for d in 0..n {
                    for e in 0..n {
                        let r = geom.riemann().component(&[e, a, b, c]).unwrap();
                        rhs = &rhs + &(&(&ginv[d][e] * &r) * &v.component(&[d]).unwrap());
                    }
                }
                assert!((&lhs - &rhs).is_zero(), "({a},{b},{c})");
            }
        }
    }
}
