//! Floating-point evaluation of the theta product forms and of `E2`, used to
//! check the `SL2(Z)` transformation laws that q-expansions cannot see.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use super::ThetaKind;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericSample {
    pub v: Complex64,
    pub tau: Complex64,
    pub n_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("tau must lie in the upper half plane (got Im tau = {0})")]
    NotInUpperHalfPlane(f64),
    #[error("at least one product term is needed")]
    NoTerms,
    #[error("unknown transformation law '{0}'")]
    UnknownLaw(String),
}

impl NumericSample {
    pub fn new(v: Complex64, tau: Complex64, n_terms: usize) -> Result<Self, NumericError> {
        let s = NumericSample { v, tau, n_terms };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        if self.tau.im.is_nan() || self.tau.im <= 0.0 {
            return Err(NumericError::NotInUpperHalfPlane(self.tau.im));
        }
        if self.n_terms == 0 {
            return Err(NumericError::NoTerms);
        }
        Ok(())
    }

    fn at(&self, v: Complex64, tau: Complex64) -> Self {
        NumericSample { v, tau, n_terms: self.n_terms }
    }
}

/// The fixed sample points used by the law checks.
pub fn standard_samples(n_terms: usize) -> Vec<NumericSample> {
    let pts = [
        ((0.2, 0.1), (0.0, 1.1)),
        ((0.2, 0.1), (0.3, 1.1)),
        ((-0.15, 0.05), (-0.2, 0.9)),
        ((0.1, -0.2), (0.5, 1.3)),
        ((0.1, 0.0), (0.0, 2.0)),
    ];
    pts.iter()
        .map(|&((vr, vi), (tr, ti))| NumericSample {
            v: Complex64::new(vr, vi),
            tau: Complex64::new(tr, ti),
            n_terms,
        })
        .collect()
}

/// `q^a = e^{2π√−1 τ a}`.
fn qpow(tau: Complex64, a: f64) -> Complex64 {
    (2.0 * PI * I * tau * a).exp()
}

/// Value and `v`-derivative of the truncated product.
fn theta_with_derivative(kind: ThetaKind, s: &NumericSample) -> (Complex64, Complex64) {
    let z = (2.0 * PI * I * s.v).exp();
    let zi = z.inv();
    let (sigma, half) = match kind {
        ThetaKind::Theta => (-1.0, false),
        ThetaKind::Theta1 => (1.0, false),
        ThetaKind::Theta2 => (-1.0, true),
        ThetaKind::Theta3 => (1.0, true),
    };
    let mut prod = Complex64::new(1.0, 0.0);
    let mut logd = Complex64::new(0.0, 0.0);
    for j in 1..=s.n_terms {
        let j = j as f64;
        let w = qpow(s.tau, if half { j - 0.5 } else { j });
        let a = 1.0 + sigma * z * w;
        let b = 1.0 + sigma * zi * w;
        prod *= (1.0 - qpow(s.tau, j)) * a * b;
        logd += 2.0 * PI * I * sigma * (z * w / a - zi * w / b);
    }
    let dprod = prod * logd;
    match kind {
        ThetaKind::Theta | ThetaKind::Theta1 => {
            let pre = 2.0 * (PI * I * s.tau / 4.0).exp();
            let x = PI * s.v;
            let (f, df) = if kind == ThetaKind::Theta { (x.sin(), PI * x.cos()) } else { (x.cos(), -PI * x.sin()) };
            (pre * f * prod, pre * (df * prod + f * dprod))
        }
        _ => (prod, dprod),
    }
}

pub fn theta_numeric(kind: ThetaKind, s: &NumericSample) -> Result<Complex64, NumericError> {
    s.validate()?;
    Ok(theta_with_derivative(kind, s).0)
}

/// `∂θ_k/∂v`, by logarithmic differentiation of the product.
pub fn theta_prime_numeric(kind: ThetaKind, s: &NumericSample) -> Result<Complex64, NumericError> {
    s.validate()?;
    Ok(theta_with_derivative(kind, s).1)
}

/// `E2(τ) = 1 − 24 Σ n qⁿ / (1 − qⁿ)`, summed until the terms drop below 1e−18.
pub fn e2_numeric(tau: Complex64, max_terms: usize) -> Result<Complex64, NumericError> {
    if tau.im.is_nan() || tau.im <= 0.0 {
        return Err(NumericError::NotInUpperHalfPlane(tau.im));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=max_terms.max(1) {
        let qn = qpow(tau, n as f64);
        let term = n as f64 * qn / (1.0 - qn);
        acc += term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    Ok(1.0 - 24.0 * acc)
}

/// The checkable displayed transformation laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawId {
    /// `θ` under `T` and `S`.
    L2_14,
    L2_15,
    L2_16,
    L2_17,
    /// Derivative laws.
    L2_18,
    L2_19,
    L2_20,
    L2_21,
    /// `θ'(0, −1/τ)`.
    L2_22,
    /// `E2(τ + 1) = E2(τ)`.
    L2_25,
    /// `E2(−1/τ) = τ² E2(τ) − 6√−1 τ / π`.
    L2_26,
}

impl LawId {
    pub const ALL: [LawId; 11] = [
        LawId::L2_14,
        LawId::L2_15,
        LawId::L2_16,
        LawId::L2_17,
        LawId::L2_18,
        LawId::L2_19,
        LawId::L2_20,
        LawId::L2_21,
        LawId::L2_22,
        LawId::L2_25,
        LawId::L2_26,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawId::L2_14 => "2.14",
            LawId::L2_15 => "2.15",
            LawId::L2_16 => "2.16",
            LawId::L2_17 => "2.17",
            LawId::L2_18 => "2.18",
            LawId::L2_19 => "2.19",
            LawId::L2_20 => "2.20",
            LawId::L2_21 => "2.21",
            LawId::L2_22 => "2.22",
            LawId::L2_25 => "2.25",
            LawId::L2_26 => "2.26",
        }
    }

    /// Default acceptance bound for the law's residual.
    pub fn tolerance(self) -> f64 {
        if self == LawId::L2_26 {
            1e-8
        } else {
            1e-9
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawId {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        // the θ'(0) law closes the derivative block and is also cited as 2.23
        if t == "2.23" {
            return Ok(LawId::L2_22);
        }
        LawId::ALL.iter().copied().find(|l| l.name() == t).ok_or_else(|| NumericError::UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawResidual {
    pub law: LawId,
    pub residual: f64,
    pub samples: usize,
}

/// The partner of each theta function under `S` (and the derivative block).
fn s_partner(kind: ThetaKind) -> ThetaKind {
    match kind {
        ThetaKind::Theta => ThetaKind::Theta,
        ThetaKind::Theta1 => ThetaKind::Theta2,
        ThetaKind::Theta2 => ThetaKind::Theta1,
        ThetaKind::Theta3 => ThetaKind::Theta3,
    }
}

fn t_partner(kind: ThetaKind) -> ThetaKind {
    match kind {
        ThetaKind::Theta2 => ThetaKind::Theta3,
        ThetaKind::Theta3 => ThetaKind::Theta2,
        k => k,
    }
}

fn t_factor(kind: ThetaKind) -> Complex64 {
    match kind {
        ThetaKind::Theta | ThetaKind::Theta1 => (PI * I / 4.0).exp(),
        _ => Complex64::new(1.0, 0.0),
    }
}

/// `(τ/√−1)^{1/2}`, with the extra `1/√−1` for the odd function.
fn s_factor(kind: ThetaKind, tau: Complex64) -> Complex64 {
    let root = (tau / I).sqrt();
    if kind == ThetaKind::Theta {
        root / I
    } else {
        root
    }
}

fn theta_law(kind: ThetaKind, derivative: bool, s: &NumericSample) -> f64 {
    let tau = s.tau;
    let v = s.v;
    let eval = |k: ThetaKind, smp: &NumericSample| {
        let (f, df) = theta_with_derivative(k, smp);
        if derivative {
            df
        } else {
            f
        }
    };
    let t_lhs = eval(kind, &s.at(v, tau + 1.0));
    let t_rhs = t_factor(kind) * eval(t_partner(kind), s);
    let s_lhs = eval(kind, &s.at(v, -1.0 / tau));
    let pre = s_factor(kind, tau) * (PI * I * tau * v * v).exp();
    let (f, df) = theta_with_derivative(s_partner(kind), &s.at(tau * v, tau));
    let s_rhs = if derivative { pre * (2.0 * PI * I * tau * v * f + tau * df) } else { pre * f };
    (t_lhs - t_rhs).norm().max((s_lhs - s_rhs).norm())
}

fn law_residual_at(law: LawId, s: &NumericSample) -> f64 {
    let kinds = [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3];
    match law {
        LawId::L2_14 | LawId::L2_15 | LawId::L2_16 | LawId::L2_17 => {
            theta_law(kinds[law as usize - LawId::L2_14 as usize], false, s)
        }
        LawId::L2_18 | LawId::L2_19 | LawId::L2_20 | LawId::L2_21 => {
            theta_law(kinds[law as usize - LawId::L2_18 as usize], true, s)
        }
        LawId::L2_22 => {
            let tau = s.tau;
            let lhs = theta_with_derivative(ThetaKind::Theta, &s.at(0.0.into(), -1.0 / tau)).1;
            let rhs = s_factor(ThetaKind::Theta, tau) * tau * theta_with_derivative(ThetaKind::Theta, &s.at(0.0.into(), tau)).1;
            (lhs - rhs).norm()
        }
        LawId::L2_25 => {
            let a = e2_numeric(s.tau + 1.0, s.n_terms.max(2000)).expect("validated");
            let b = e2_numeric(s.tau, s.n_terms.max(2000)).expect("validated");
            (a - b).norm()
        }
        LawId::L2_26 => {
            let tau = s.tau;
            let lhs = e2_numeric(-1.0 / tau, s.n_terms.max(2000)).expect("validated");
            let rhs = tau * tau * e2_numeric(tau, s.n_terms.max(2000)).expect("validated") - 6.0 * I * tau / PI;
            (lhs - rhs).norm()
        }
    }
}

/// Largest `|LHS − RHS|` of a law over the samples (both `T` and `S` parts).
pub fn transform_residual(law: LawId, samples: &[NumericSample]) -> Result<LawResidual, NumericError> {
    let mut worst: f64 = 0.0;
    for s in samples {
        s.validate()?;
        worst = worst.max(law_residual_at(law, s));
    }
    Ok(LawResidual { law, residual: worst, samples: samples.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_theta_vanishes_at_zero() {
        let s = NumericSample::new(0.0.into(), Complex64::new(0.1, 1.2), 60).unwrap();
        assert!(theta_numeric(ThetaKind::Theta, &s).unwrap().norm() < 1e-15);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(NumericSample::new(0.0.into(), Complex64::new(0.0, -1.0), 10).is_err());
        assert!(NumericSample::new(0.0.into(), Complex64::new(0.0, 1.0), 0).is_err());
        assert!(e2_numeric(Complex64::new(1.0, 0.0), 10).is_err());
    }

    #[test]
    fn law_names() {
        assert_eq!("2.23".parse::<LawId>().unwrap(), LawId::L2_22);
        assert_eq!("2.26".parse::<LawId>().unwrap(), LawId::L2_26);
        assert!("2.24".parse::<LawId>().is_err());
    }
}
