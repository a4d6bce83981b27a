//! Jacobi theta kernels, theta constants, Eisenstein series and `φ(τ)` powers
//! as exact q-series, plus a complex evaluator for transformation laws.
//!
//! Roots use the capital normalization `X = 2π√−1·v`, so `sin(πv)` becomes
//! `−√−1·sinh(X/2)` and every kernel has rational coefficients. A kernel is an
//! even function of its root and is stored as a polynomial in `s = X²`.

mod numeric;

pub use numeric::{
    e2_numeric, standard_samples, theta_numeric, theta_prime_numeric, transform_residual, LawId, LawResidual,
    NumericError, NumericSample,
};

use num_traits::Zero;
use thiserror::Error;

use crate::ring::{factorial, int, Coefficient, Rational};
use crate::series::{sparse_one_plus, QxSeries};
use crate::symfunc::{EvenRootSeries, RootPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    /// `θ(v, τ)`, odd in `v`.
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3];
    pub const EVEN: [ThetaKind; 3] = [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3];

    pub fn name(self) -> &'static str {
        match self {
            ThetaKind::Theta => "theta",
            ThetaKind::Theta1 => "theta1",
            ThetaKind::Theta2 => "theta2",
            ThetaKind::Theta3 => "theta3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("theta(0, tau) vanishes identically")]
    VanishingConstant,
    #[error("no Eisenstein series of weight {0} is provided (use 2, 4 or 6)")]
    UnsupportedWeight(u32),
}

/// `Σ_k c_k s^k` cut at `s^3`, with `c_k = 1 / (4^k (2k + shift)!)`.
fn half_angle_series(shift: u32) -> RootPoly {
    RootPoly(std::array::from_fn(|k| {
        let four_k = int(4i64.pow(k as u32));
        (four_k * factorial(2 * k as u32 + shift)).recip()
    }))
}

/// `cosh(X/2)` in `s = X²`.
pub fn cosh_half() -> RootPoly {
    half_angle_series(0)
}

/// `sinh(X/2) / (X/2)` in `s = X²`.
pub fn sinhc_half() -> RootPoly {
    half_angle_series(1)
}

/// `cosh(X) = (e^X + e^{−X}) / 2` in `s = X²`.
pub fn cosh_full() -> RootPoly {
    RootPoly(std::array::from_fn(|k| factorial(2 * k as u32).recip()))
}

/// `1 + c·cosh(X)·u^k + d·u^{2k}`, the product of the two root factors at `u^k`.
fn root_factor(cosh_coeff: i64, k: usize, last: i64, order: usize) -> QxSeries<RootPoly> {
    let c = cosh_full().scale(&int(cosh_coeff));
    sparse_one_plus(&[(k, c), (2 * k, RootPoly::from_rational(int(last)))], order)
}

fn scalar_factor(k: usize, c: i64, order: usize) -> QxSeries<Rational> {
    sparse_one_plus(&[(k, int(c))], order)
}

/// `Π_{j: step·j − offset < order} f(step·j − offset)`.
fn product<R: Coefficient>(
    order: usize,
    step: usize,
    offset: usize,
    f: impl Fn(usize) -> QxSeries<R>,
) -> QxSeries<R> {
    let mut acc = QxSeries::one(order);
    let mut j = 1;
    while step * j - offset < order {
        acc = acc.mul_series(&f(step * j - offset));
        j += 1;
    }
    acc
}

fn lift(s: &QxSeries<Rational>) -> QxSeries<RootPoly> {
    s.map(|c| RootPoly::from_rational(c.clone()))
}

/// The normalized per-root kernel of each theta function, as an even series in
/// one root.
///
/// * `Theta`: `X·θ'(0,τ) / (2π√−1·θ(v,τ))`, i.e.
///   `(X/2)/sinh(X/2) · Π (1−q^j)² / (1 − 2cosh(X) q^j + q^{2j})`.
/// * `Theta1..3`: `θ_k(v,τ) / θ_k(0,τ)`.
///
/// `order` counts powers of `u = q^{1/2}`. All `q^{1/8}` factors cancel.
pub fn theta_ratio(kind: ThetaKind, order: usize) -> EvenRootSeries {
    let series = match kind {
        ThetaKind::Theta => {
            let num = product(order, 2, 0, |k| scalar_factor(k, -1, order)).pow(2);
            let den = product(order, 2, 0, |k| root_factor(-2, k, 1, order));
            let head = sinhc_half().inverse().expect("sinh(x)/x is a unit");
            lift(&num).mul_series(&den.inv().expect("unit")).mul_coeff(&head)
        }
        ThetaKind::Theta1 => {
            let num = product(order, 2, 0, |k| root_factor(2, k, 1, order));
            let den = product(order, 2, 0, |k| scalar_factor(k, 1, order)).pow(2);
            num.mul_series(&lift(&den.inv().expect("unit"))).mul_coeff(&cosh_half())
        }
        ThetaKind::Theta2 | ThetaKind::Theta3 => {
            let sign = if kind == ThetaKind::Theta2 { -1 } else { 1 };
            let num = product(order, 2, 1, |k| root_factor(2 * sign, k, 1, order));
            let den = product(order, 2, 1, |k| scalar_factor(k, sign, order)).pow(2);
            num.mul_series(&lift(&den.inv().expect("unit")))
        }
    };
    EvenRootSeries::new(series)
}

/// `φ(τ)^n = Π (1 − q^j)^n`, `n` possibly negative.
pub fn phi_power(n: i32, order: usize) -> QxSeries<Rational> {
    let phi = product(order, 2, 0, |k| scalar_factor(k, -1, order));
    let p = phi.pow(n.unsigned_abs());
    if n < 0 {
        p.inv().expect("phi is a unit")
    } else {
        p
    }
}

/// `θ_k(0, τ)^8`. For `Theta1` the result carries the prefactor `q = q^{8/8}`.
pub fn theta_const8(kind: ThetaKind, order: usize) -> Result<QxSeries<Rational>, ThetaError> {
    let phi8 = phi_power(8, order);
    match kind {
        ThetaKind::Theta => Err(ThetaError::VanishingConstant),
        ThetaKind::Theta1 => {
            let plus = product(order, 2, 0, |k| scalar_factor(k, 1, order)).pow(16);
            let s = phi8.mul_series(&plus).scale(&int(256));
            Ok(QxSeries::from_coeffs(8, s.coeffs().to_vec()))
        }
        ThetaKind::Theta2 | ThetaKind::Theta3 => {
            let sign = if kind == ThetaKind::Theta2 { -1 } else { 1 };
            let half = product(order, 2, 1, |k| scalar_factor(k, sign, order)).pow(16);
            Ok(phi8.mul_series(&half))
        }
    }
}

/// `θ'(0, τ) / 2π = q^{1/8} φ(τ)³`.
pub fn theta_prime_reduced(order: usize) -> QxSeries<Rational> {
    let s = phi_power(3, order);
    QxSeries::from_coeffs(1, s.coeffs().to_vec())
}

fn divisor_power_sum(n: usize, p: u32) -> Rational {
    let mut acc = 0i128;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            acc += (d as i128).pow(p);
        }
    }
    Rational::from_integer(acc.into())
}

/// `E_k(τ)` for `k ∈ {2, 4, 6}`.
pub fn eisenstein(k: u32, order: usize) -> Result<QxSeries<Rational>, ThetaError> {
    let (c, p) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(ThetaError::UnsupportedWeight(k)),
    };
    let mut q = vec![int(1)];
    let mut n = 1;
    while 2 * n < order {
        q.push(int(c) * divisor_power_sum(n, p));
        n += 1;
    }
    Ok(QxSeries::from_q_coeffs(q, order))
}

/// `Π (1 + q^n)(1 − q^{n−1/2})(1 + q^{n−1/2}) − 1`; vanishes identically by the
/// Jacobi identity `θ'(0) = π θ1(0) θ2(0) θ3(0)`.
pub fn jacobi_identity_residual(order: usize) -> QxSeries<Rational> {
    let a = product(order, 2, 0, |k| scalar_factor(k, 1, order));
    let b = product(order, 2, 1, |k| scalar_factor(k, -1, order));
    let c = product(order, 2, 1, |k| scalar_factor(k, 1, order));
    let p = a.mul_series(&b).mul_series(&c);
    p.try_sub(&QxSeries::one(order)).expect("same prefactor")
}

/// True when the series vanishes through its order.
pub fn is_zero_series(s: &QxSeries<Rational>) -> bool {
    s.coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn q_coeffs(s: &QxSeries<Rational>, n: usize) -> Vec<Rational> {
        (0..n).map(|k| s.q_coeff(k)).collect()
    }

    #[test]
    fn q0_slices() {
        let th1 = theta_ratio(ThetaKind::Theta1, 8);
        assert_eq!(th1.series().coeff(0), RootPoly([int(1), rat(1, 8), rat(1, 384), rat(1, 46080)]));
        let th = theta_ratio(ThetaKind::Theta, 8);
        assert_eq!(th.series().coeff(0), RootPoly([int(1), rat(-1, 24), rat(7, 5760), rat(-31, 967680)]));
        for kind in ThetaKind::ALL {
            let r = theta_ratio(kind, 10);
            for k in 0..10 {
                let want = if k == 0 { int(1) } else { int(0) };
                assert_eq!(r.series().coeff(k).0[0], want, "{kind:?} u^{k}");
            }
        }
    }

    #[test]
    fn eisenstein_heads() {
        let e2 = eisenstein(2, 8).unwrap();
        assert_eq!(q_coeffs(&e2, 4), vec![int(1), int(-24), int(-72), int(-96)]);
        let e4 = eisenstein(4, 8).unwrap();
        assert_eq!(q_coeffs(&e4, 4), vec![int(1), int(240), int(2160), int(6720)]);
        let e6 = eisenstein(6, 8).unwrap();
        assert_eq!(q_coeffs(&e6, 4), vec![int(1), int(-504), int(-16632), int(-122976)]);
        assert_eq!(eisenstein(8, 8), Err(ThetaError::UnsupportedWeight(8)));
    }

    #[test]
    fn theta_constant_heads() {
        let t1 = theta_const8(ThetaKind::Theta1, 8).unwrap();
        assert_eq!(t1.eighth_exponent(), 8);
        assert_eq!(t1.coeff(0), int(256));
        let t2 = theta_const8(ThetaKind::Theta2, 8).unwrap();
        assert_eq!(t2.coeffs()[..3], [int(1), int(-16), int(112)]);
        assert_eq!(theta_const8(ThetaKind::Theta, 8), Err(ThetaError::VanishingConstant));
    }

    #[test]
    fn phi_powers() {
        assert_eq!(q_coeffs(&phi_power(8, 10), 5), vec![int(1), int(-8), int(20), int(0), int(-70)]);
        assert_eq!(phi_power(0, 6), QxSeries::one(6));
        assert_eq!(phi_power(8, 12).mul_series(&phi_power(-8, 12)), QxSeries::one(12));
    }
}
