use std::f64::consts::PI;

use e8anomaly::theta::{
    e2_numeric, standard_samples, theta_numeric, theta_prime_numeric, transform_residual, LawId, NumericSample,
    ThetaKind,
};
use num_complex::Complex64;

fn sample(v: (f64, f64), tau: (f64, f64), n: usize) -> NumericSample {
    NumericSample::new(Complex64::new(v.0, v.1), Complex64::new(tau.0, tau.1), n).unwrap()
}

#[test]
fn every_law_holds_at_the_standard_samples() {
    let samples = standard_samples(200);
    for law in LawId::ALL {
        let r = transform_residual(law, &samples).unwrap();
        assert!(r.residual < law.tolerance(), "{law}: residual {:e}", r.residual);
    }
}

#[test]
fn single_point_law_examples() {
    let r = transform_residual(LawId::L2_15, &[sample((0.2, 0.1), (0.3, 1.1), 200)]).unwrap();
    assert!(r.residual < 1e-9);
    let r = transform_residual(LawId::L2_17, &[sample((0.1, 0.0), (0.0, 2.0), 200)]).unwrap();
    assert!(r.residual < 1e-9);
    let r = transform_residual(LawId::L2_26, &[sample((0.0, 0.0), (0.0, 1.5), 200)]).unwrap();
    assert!(r.residual < 1e-8);
    let s = sample((0.0, 0.0), (0.0, 1.0), 200);
    assert!(theta_numeric(ThetaKind::Theta, &s).unwrap().norm() < 1e-15);
    let r = transform_residual(LawId::L2_14, &[s]).unwrap();
    assert!(r.residual < 1e-15);
}

#[test]
fn a_wrong_partner_is_detected() {
    // θ2 pairs with θ1 under S; pairing it with θ3 must leave a visible residual.
    let s = sample((0.2, 0.1), (0.0, 1.1), 200);
    let lhs = theta_numeric(ThetaKind::Theta2, &NumericSample { tau: -1.0 / s.tau, ..s }).unwrap();
    let pre = (s.tau / Complex64::i()).sqrt() * (PI * Complex64::i() * s.tau * s.v * s.v).exp();
    let moved = NumericSample { v: s.tau * s.v, ..s };
    let right = pre * theta_numeric(ThetaKind::Theta1, &moved).unwrap();
    let wrong = pre * theta_numeric(ThetaKind::Theta3, &moved).unwrap();
    assert!((lhs - right).norm() < 1e-9);
    assert!((lhs - wrong).norm() > 1e-3);
}

#[test]
fn theta3_product_matches_sum_form() {
    // Jacobi triple product: θ3(0, τ) = Σ_{n∈Z} q^{n²/2}
    let tau = Complex64::new(0.0, 1.0);
    let s = NumericSample::new(Complex64::new(0.0, 0.0), tau, 60).unwrap();
    let prod = theta_numeric(ThetaKind::Theta3, &s).unwrap();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -30i32..=30 {
        sum += (PI * Complex64::i() * tau * (n * n) as f64).exp();
    }
    assert!((prod - sum).norm() < 1e-12);
}

#[test]
fn theta1_is_even_and_derivative_matches_difference_quotient() {
    for s in standard_samples(120) {
        let minus = NumericSample { v: -s.v, ..s };
        let a = theta_numeric(ThetaKind::Theta1, &s).unwrap();
        let b = theta_numeric(ThetaKind::Theta1, &minus).unwrap();
        assert!((a - b).norm() < 1e-12);
        for kind in ThetaKind::ALL {
            let h = 1e-6;
            let up = theta_numeric(kind, &NumericSample { v: s.v + h, ..s }).unwrap();
            let dn = theta_numeric(kind, &NumericSample { v: s.v - h, ..s }).unwrap();
            let fd = (up - dn) / (2.0 * h);
            let exact = theta_prime_numeric(kind, &s).unwrap();
            assert!((fd - exact).norm() < 1e-5 * (1.0 + exact.norm()), "{kind:?}");
        }
    }
}

#[test]
fn jacobi_identity_numerically() {
    let s = sample((0.0, 0.0), (0.0, 1.3), 200);
    let tp = theta_prime_numeric(ThetaKind::Theta, &s).unwrap();
    let prod = PI
        * theta_numeric(ThetaKind::Theta1, &s).unwrap()
        * theta_numeric(ThetaKind::Theta2, &s).unwrap()
        * theta_numeric(ThetaKind::Theta3, &s).unwrap();
    assert!((tp / prod - 1.0).norm() < 1e-10);
}

#[test]
fn e2_head_matches_divisor_sums() {
    let tau = Complex64::new(0.0, 2.0);
    let q = (2.0 * PI * Complex64::i() * tau).exp();
    let approx = 1.0 - 24.0 * q - 72.0 * q * q - 96.0 * q * q * q - 168.0 * q.powi(4);
    assert!((e2_numeric(tau, 100).unwrap() - approx).norm() < 1e-12);
}
