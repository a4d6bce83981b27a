//! q-series facts against a plain integer oracle (divisor sums and schoolbook
//! products over i128).

use e8anomaly::bundles::e8_ch_v;
use e8anomaly::ring::{int, Rational};
use e8anomaly::series::QxSeries;
use e8anomaly::theta::{eisenstein, is_zero_series, jacobi_identity_residual, phi_power, theta_const8, ThetaKind};

fn sigma(k: u32, n: i128) -> i128 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
}

fn eisenstein_oracle(k: u32, terms: usize) -> Vec<i128> {
    let c = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => unreachable!(),
    };
    (0..terms as i128).map(|n| if n == 0 { 1 } else { c * sigma(k - 1, n) }).collect()
}

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn phi_oracle(n: usize, terms: usize) -> Vec<i128> {
    let mut phi = vec![0i128; terms];
    phi[0] = 1;
    for j in 1..terms {
        let mut f = vec![0i128; terms];
        f[0] = 1;
        f[j] = -1;
        phi = mul(&phi, &f);
    }
    let mut out = vec![0i128; terms];
    out[0] = 1;
    for _ in 0..n {
        out = mul(&out, &phi);
    }
    out
}

/// `a / b` for `b[0] = 1`.
fn div(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len()];
    for n in 0..a.len() {
        out[n] = a[n] - (1..=n).map(|j| b[j] * out[n - j]).sum::<i128>();
    }
    out
}

fn q_coeffs(s: &QxSeries<Rational>, terms: usize) -> Vec<Rational> {
    (0..terms).map(|n| s.q_coeff(n)).collect()
}

fn lift(v: &[i128]) -> Vec<Rational> {
    v.iter().map(|&x| int(x as i64)).collect()
}

#[test]
fn eisenstein_series_match_divisor_sums() {
    for k in [2, 4, 6] {
        let s = eisenstein(k, 40).unwrap();
        assert_eq!(q_coeffs(&s, 20), lift(&eisenstein_oracle(k, 20)), "E{k}");
    }
    assert_eq!(q_coeffs(&eisenstein(4, 8).unwrap(), 4), lift(&[1, 240, 2160, 6720]));
}

#[test]
fn phi8_head() {
    let s = phi_power(8, 20);
    assert_eq!(q_coeffs(&s, 5), lift(&[1, -8, 20, 0, -70]));
    assert_eq!(q_coeffs(&s, 10), lift(&phi_oracle(8, 10)));
    let mut one = vec![0; 10];
    one[0] = 1;
    assert_eq!(q_coeffs(&phi_power(-24, 20), 10), lift(&div(&one, &phi_oracle(24, 10))));
}

#[test]
fn e8_character_is_e4_over_phi8() {
    let oracle = div(&eisenstein_oracle(4, 6), &phi_oracle(8, 6));
    assert_eq!(&oracle[..4], &[1, 248, 4124, 34752]);
    for i in 1..=3 {
        let v = e8_ch_v(i, 12);
        let scalar: Vec<Rational> = (0..6).map(|n| v.q_coeff(n).scalar()).collect();
        assert_eq!(scalar, lift(&oracle), "V{i}");
    }
}

#[test]
fn jacobi_identity_through_u40() {
    let r = jacobi_identity_residual(41);
    assert!(r.order() >= 41);
    assert!(is_zero_series(&r));
}

#[test]
fn theta_constants_sum_to_e4() {
    // ½ Σ θ_k(0)^8 = E4
    let order = 24;
    let mut acc: Option<QxSeries<Rational>> = None;
    for kind in ThetaKind::EVEN {
        let t = theta_const8(kind, order).unwrap();
        acc = Some(match acc {
            None => t,
            Some(a) => a.try_add(&t).unwrap(),
        });
    }
    let half = acc.unwrap().absorb_prefactor().unwrap().scale(&Rational::new(1.into(), 2.into()));
    assert_eq!(q_coeffs(&half, 12), lift(&eisenstein_oracle(4, 12)));
}
