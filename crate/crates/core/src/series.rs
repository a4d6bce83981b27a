//! Truncated series in `u = q^{1/2}` with a tracked `q^{1/8}` prefactor.
//!
//! A [`QxSeries`] with eighth exponent `m`, coefficients `c_k` and order `N`
//! stands for `q^{m/8} · Σ_{k<N} c_k u^k + O(q^{m/8} u^N)`. Integer powers of
//! `q` live in the even slots.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::ring::{int, Coefficient, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("cannot add series with prefactors q^({a}/8) and q^({b}/8): difference is not a power of u")]
    PrefactorMismatch { a: i64, b: i64 },
    #[error("series is not a unit (needs zero prefactor and invertible u^0 coefficient)")]
    NotUnit,
    #[error("exp needs zero prefactor and a nilpotent u^0 coefficient")]
    ExpDomain,
    #[error("log needs zero prefactor and u^0 coefficient of the form 1 + nilpotent")]
    LogDomain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QxSeries<R> {
    eighth: i64,
    coeffs: Vec<R>,
}

impl<R: Coefficient> QxSeries<R> {
    /// Builds a series from `u`-coefficients; the order is `coeffs.len()`.
    pub fn from_coeffs(eighth: i64, coeffs: Vec<R>) -> Self {
        Self { eighth, coeffs }
    }

    /// Builds from `u`-coefficients, padding or truncating to `order`.
    pub fn with_order(eighth: i64, mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order, R::zero_elem());
        Self { eighth, coeffs }
    }

    /// Integer-power `q`-coefficients `[a_0, a_1, ...]` embedded at even `u` slots.
    pub fn from_q_coeffs(q_coeffs: Vec<R>, order: usize) -> Self {
        let mut coeffs = vec![R::zero_elem(); order];
        for (n, c) in q_coeffs.into_iter().enumerate() {
            if 2 * n < order {
                coeffs[2 * n] = c;
            }
        }
        Self { eighth: 0, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(0, Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one_elem(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `c · u^k`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn eighth_exponent(&self) -> i64 {
        self.eighth
    }

    /// Truncation bound in powers of `u`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero past the stored range).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero_elem)
    }

    pub fn coeff_ref(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    /// Coefficient of `q^n`, i.e. of `u^{2n}`.
    pub fn q_coeff(&self, n: usize) -> R {
        self.coeff(2 * n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_elem())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order);
        Self { eighth: self.eighth, coeffs }
    }

    /// True when only even powers of `u` occur and the prefactor is an integer power of `q`.
    pub fn is_integral_in_q(&self) -> bool {
        self.eighth % 8 == 0 && self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero_elem())
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> QxSeries<S> {
        QxSeries { eighth: self.eighth, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    /// `u → -u` on the coefficients (the prefactor is left untouched).
    pub fn flip_u(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
            .collect();
        Self { eighth: self.eighth, coeffs }
    }

    /// Moves an integral-power-of-`u` prefactor into the coefficients.
    ///
    /// Returns `None` when the prefactor is not a non-negative multiple of 4.
    pub fn absorb_prefactor(&self) -> Option<Self> {
        if self.eighth < 0 || self.eighth % 4 != 0 {
            return None;
        }
        let shift = (self.eighth / 4) as usize;
        let mut coeffs = vec![R::zero_elem(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(Self { eighth: 0, coeffs })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, |a, b| a.sub(b))
    }

    fn combine(&self, other: &Self, op: impl Fn(&R, &R) -> R) -> Result<Self, SeriesError> {
        let diff = other.eighth - self.eighth;
        if diff % 4 != 0 {
            return Err(SeriesError::PrefactorMismatch { a: self.eighth, b: other.eighth });
        }
        // Align on the smaller prefactor; the other operand is shifted in u.
        let (lo, hi, swapped) = if diff >= 0 { (self, other, false) } else { (other, self, true) };
        let shift = (diff.unsigned_abs() / 4) as usize;
        let order = lo.order().min(hi.order() + shift);
        let zero = R::zero_elem();
        let coeffs = (0..order)
            .map(|k| {
                let a = lo.coeffs.get(k).unwrap_or(&zero);
                let b = if k >= shift { hi.coeffs.get(k - shift).unwrap_or(&zero) } else { &zero };
                if swapped {
                    op(b, a)
                } else {
                    op(a, b)
                }
            })
            .collect();
        Ok(Self { eighth: lo.eighth, coeffs })
    }

    /// Cauchy product truncated at the smaller order; prefactors add.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![R::zero_elem(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if b.is_zero_elem() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self { eighth: self.eighth + other.eighth, coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order());
        acc.eighth = 0;
        for _ in 0..n {
            acc = acc.mul_series(self);
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.eighth == 0 && self.coeffs.first().is_some_and(|c| c.is_unit())
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        if !self.is_unit() {
            return Err(SeriesError::NotUnit);
        }
        let order = self.order();
        let a0_inv = self.coeffs[0].inverse().ok_or(SeriesError::NotUnit)?;
        let mut out: Vec<R> = Vec::with_capacity(order);
        out.push(a0_inv.clone());
        for n in 1..order {
            let mut acc = R::zero_elem();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero_elem() {
                    acc = acc.add(&a.mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&a0_inv).neg());
        }
        Ok(Self { eighth: 0, coeffs: out })
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.eighth != 0 {
            return Err(SeriesError::ExpDomain);
        }
        let order = self.order();
        if order == 0 {
            return Ok(self.clone());
        }
        let head = self.coeffs[0].exp_nilpotent().ok_or(SeriesError::ExpDomain)?;
        // e = exp(a - a_0): n e_n = Σ_{k=1}^n k a_k e_{n-k}
        let mut e: Vec<R> = Vec::with_capacity(order);
        e.push(R::one_elem());
        for n in 1..order {
            let mut acc = R::zero_elem();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero_elem() {
                    acc = acc.add(&a.mul(&e[n - k]).scale(&int(k as i64)));
                }
            }
            e.push(acc.scale(&int(n as i64).recip()));
        }
        Ok(Self { eighth: 0, coeffs: e }.mul_coeff(&head))
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.eighth != 0 {
            return Err(SeriesError::LogDomain);
        }
        let order = self.order();
        if order == 0 {
            return Ok(self.clone());
        }
        let head = self.coeffs[0].log_unipotent().ok_or(SeriesError::LogDomain)?;
        let a0_inv = self.coeffs[0].inverse().ok_or(SeriesError::LogDomain)?;
        let b = self.mul_coeff(&a0_inv);
        // g = log b with b_0 = 1: g_n = b_n - (1/n) Σ_{k=1}^{n-1} k g_k b_{n-k}
        let mut g: Vec<R> = Vec::with_capacity(order);
        g.push(head);
        for n in 1..order {
            let mut acc = R::zero_elem();
            for (k, gk) in g.iter().enumerate().take(n).skip(1) {
                if !gk.is_zero_elem() && !b.coeffs[n - k].is_zero_elem() {
                    acc = acc.add(&gk.mul(&b.coeffs[n - k]).scale(&int(k as i64)));
                }
            }
            g.push(b.coeffs[n].sub(&acc.scale(&int(n as i64).recip())));
        }
        Ok(Self { eighth: 0, coeffs: g })
    }
}

impl<R: Coefficient> Add for &QxSeries<R> {
    type Output = QxSeries<R>;
    /// Panics on incompatible prefactors; use [`QxSeries::try_add`] to handle that case.
    fn add(self, rhs: Self) -> QxSeries<R> {
        self.try_add(rhs).expect("series prefactors must differ by a power of u")
    }
}

impl<R: Coefficient> Sub for &QxSeries<R> {
    type Output = QxSeries<R>;
    fn sub(self, rhs: Self) -> QxSeries<R> {
        self.try_sub(rhs).expect("series prefactors must differ by a power of u")
    }
}

impl<R: Coefficient> Mul for &QxSeries<R> {
    type Output = QxSeries<R>;
    fn mul(self, rhs: Self) -> QxSeries<R> {
        self.mul_series(rhs)
    }
}

impl<R: Coefficient> Neg for &QxSeries<R> {
    type Output = QxSeries<R>;
    fn neg(self) -> QxSeries<R> {
        self.map(|c| c.neg())
    }
}

/// `Π_{n≥1} f(q^n)`-style products are built from these sparse factors.
///
/// `1 + Σ c_j u^{k_j}` for a short list of `(k_j, c_j)`.
pub fn sparse_one_plus<R: Coefficient>(terms: &[(usize, R)], order: usize) -> QxSeries<R> {
    let mut s: QxSeries<R> = QxSeries::one(order);
    for (k, c) in terms {
        if *k < order {
            s.coeffs[*k] = s.coeffs[*k].add(c);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn q(coeffs: &[i64], order: usize) -> QxSeries<Rational> {
        QxSeries::from_q_coeffs(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    #[test]
    fn difference_of_squares() {
        let a = q(&[1, 1], 12);
        let b = q(&[1, -1], 12);
        assert_eq!(&a * &b, q(&[1, 0, -1], 12));
    }

    #[test]
    fn shared_prefactor_addition() {
        let a = QxSeries::with_order(1, vec![int(1)], 8);
        let b = QxSeries::with_order(1, vec![int(0), int(0), int(1)], 8);
        let s = a.try_add(&b).unwrap();
        assert_eq!(s.eighth_exponent(), 1);
        assert_eq!(s.coeffs()[..3], [int(1), int(0), int(1)]);
    }

    #[test]
    fn prefactor_alignment_by_u_shift() {
        // q · 1 + 1 = 1 + u^2
        let a = QxSeries::with_order(8, vec![int(1)], 6);
        let b = QxSeries::<Rational>::one(6);
        let s = a.try_add(&b).unwrap();
        assert_eq!(s.eighth_exponent(), 0);
        assert_eq!(s.order(), 6);
        assert_eq!(s.coeff(0), int(1));
        assert_eq!(s.coeff(2), int(1));
        // Order bookkeeping: the shifted operand reaches further.
        let short = QxSeries::with_order(8, vec![int(1)], 2);
        assert_eq!(short.try_add(&b).unwrap().order(), 4);
        assert_eq!(b.try_sub(&a).unwrap().coeff(2), int(-1));
    }

    #[test]
    fn incompatible_prefactors_rejected() {
        let a = QxSeries::with_order(1, vec![int(1)], 4);
        let b = QxSeries::<Rational>::one(4);
        assert_eq!(a.try_add(&b), Err(SeriesError::PrefactorMismatch { a: 1, b: 0 }));
    }

    #[test]
    fn geometric_inverse() {
        let a = q(&[1, -1], 10);
        assert_eq!(a.inv().unwrap(), q(&[1, 1, 1, 1, 1], 10));
        assert_eq!(QxSeries::<Rational>::one(5).inv().unwrap(), QxSeries::one(5));
        assert_eq!(q(&[0, 1], 4).inv(), Err(SeriesError::NotUnit));
        let pref = QxSeries::with_order(1, vec![int(1)], 4);
        assert_eq!(pref.inv(), Err(SeriesError::NotUnit));
    }

    #[test]
    fn exp_log_scalar() {
        assert_eq!(QxSeries::<Rational>::zero(6).exp().unwrap(), QxSeries::one(6));
        // exp(q) = 1 + q + q^2/2 + q^3/6
        let e = q(&[0, 1], 8).exp().unwrap();
        assert_eq!(e, QxSeries::from_q_coeffs(vec![int(1), int(1), rat(1, 2), rat(1, 6)], 8));
        assert_eq!(e.log().unwrap(), q(&[0, 1], 8));
        assert_eq!(q(&[1], 4).exp(), Err(SeriesError::ExpDomain));
        assert_eq!(q(&[2], 4).log(), Err(SeriesError::LogDomain));
    }

    #[test]
    fn flip_and_integrality() {
        let s = QxSeries::with_order(0, vec![int(1), int(2), int(3)], 3);
        assert_eq!(s.flip_u().coeffs(), &[int(1), int(-2), int(3)]);
        assert!(!s.is_integral_in_q());
        assert!(q(&[1, 5], 6).is_integral_in_q());
    }
}
