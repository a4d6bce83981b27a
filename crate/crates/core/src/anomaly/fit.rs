use thiserror::Error;

use crate::ring::{Coefficient, Rational};
use crate::series::QxSeries;
use crate::symfunc::GradedElem;
use crate::theta::eisenstein;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("series carries half-integer powers of q")]
    HalfIntegerPowers,
    #[error("no basis stored for weight {0} (use 10, 14 or 18)")]
    UnsupportedWeight(u32),
    #[error("series too short to determine {0} coefficients")]
    TooShort(usize),
}

/// Basis coefficients and what is left after subtracting the fitted form.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularFit {
    pub coeffs: Vec<GradedElem>,
    pub residual: QxSeries<GradedElem>,
}

impl ModularFit {
    /// First q-power with a nonzero residual coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        (0..self.residual.order().div_ceil(2)).find(|&n| !self.residual.q_coeff(n).is_zero())
    }
}

/// `E4E6`, `E4²E6`, or `{E4³E6, E6³}`.
pub fn modular_basis(weight: u32, order: usize) -> Result<Vec<QxSeries<Rational>>, FitError> {
    let e4 = eisenstein(4, order).expect("weight 4");
    let e6 = eisenstein(6, order).expect("weight 6");
    Ok(match weight {
        10 => vec![e4.mul_series(&e6)],
        14 => vec![e4.pow(2).mul_series(&e6)],
        18 => vec![e4.pow(3).mul_series(&e6), e6.pow(3)],
        w => return Err(FitError::UnsupportedWeight(w)),
    })
}

/// Solves for the basis coefficients from the leading q-coefficients.
pub fn modular_fit(series: &QxSeries<GradedElem>, weight: u32) -> Result<ModularFit, FitError> {
    let series = match series.absorb_prefactor() {
        Some(s) if s.is_integral_in_q() => s,
        _ => return Err(FitError::HalfIntegerPowers),
    };
    let order = series.order();
    let basis = modular_basis(weight, order)?;
    if order < 2 * basis.len() - 1 {
        return Err(FitError::TooShort(basis.len()));
    }
    let q0 = series.q_coeff(0);
    let coeffs = match basis.as_slice() {
        [_] => vec![q0],
        [a, b] => {
            // λ1 + λ2 = Q0, a1 λ1 + b1 λ2 = Q1
            let (a1, b1) = (a.q_coeff(1), b.q_coeff(1));
            let det = &b1 - &a1;
            assert!(!det.is_zero_elem(), "weight-18 fit system is singular");
            let l2 = series.q_coeff(1).sub(&q0.scale(&a1)).scale(&det.recip());
            vec![q0.sub(&l2), l2]
        }
        _ => unreachable!("bases have one or two elements"),
    };
    let mut fitted = QxSeries::zero(order);
    for (lam, b) in coeffs.iter().zip(&basis) {
        fitted = &fitted + &b.map(|c| GradedElem::constant(c.clone())).mul_coeff(lam);
    }
    Ok(ModularFit { coeffs, residual: series.try_sub(&fitted).expect("integral series") })
}
