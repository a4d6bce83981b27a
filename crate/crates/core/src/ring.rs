//! Coefficient rings for truncated series.
//!
//! Every ring used here is a Q-algebra whose non-scalar part is nilpotent
//! (graded rings truncated at a top degree, or plain rationals). That lets
//! inverse, exp and log of ring elements be computed as finite sums.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Commutative Q-algebra whose elements split as scalar + nilpotent.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
    /// Degree-zero part.
    fn scalar_part(&self) -> Rational;
    /// Every element with zero scalar part satisfies `x^(k+1) = 0` for this `k`.
    fn nilpotency_bound() -> usize;

    fn is_nilpotent(&self) -> bool {
        self.scalar_part().is_zero()
    }

    fn is_unit(&self) -> bool {
        !self.scalar_part().is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        let c = self.scalar_part();
        if c.is_zero() {
            return None;
        }
        let c_inv = c.recip();
        // x = c (1 + n), 1/x = c^{-1} Σ (-n)^k
        let n = self.scale(&c_inv).sub(&Self::one_elem());
        let minus_n = n.neg();
        let mut term = Self::one_elem();
        let mut acc = Self::one_elem();
        for _ in 0..Self::nilpotency_bound() {
            term = term.mul(&minus_n);
            if term.is_zero_elem() {
                break;
            }
            acc = acc.add(&term);
        }
        Some(acc.scale(&c_inv))
    }

    /// `exp(self)` for nilpotent `self`.
    fn exp_nilpotent(&self) -> Option<Self> {
        if !self.is_nilpotent() {
            return None;
        }
        let mut term = Self::one_elem();
        let mut acc = Self::one_elem();
        for k in 1..=Self::nilpotency_bound() {
            term = term.mul(self).scale(&int(k as i64).recip());
            if term.is_zero_elem() {
                break;
            }
            acc = acc.add(&term);
        }
        Some(acc)
    }

    /// `log(self)` for `self = 1 + nilpotent`.
    fn log_unipotent(&self) -> Option<Self> {
        let n = self.sub(&Self::one_elem());
        if !n.is_nilpotent() {
            return None;
        }
        let mut power = Self::one_elem();
        let mut acc = Self::zero_elem();
        for k in 1..=Self::nilpotency_bound() {
            power = power.mul(&n);
            if power.is_zero_elem() {
                break;
            }
            let c = if k % 2 == 1 { rat(1, k as i64) } else { rat(-1, k as i64) };
            acc = acc.add(&power.scale(&c));
        }
        Some(acc)
    }
}

impl Coefficient for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn scalar_part(&self) -> Rational {
        self.clone()
    }
    fn nilpotency_bound() -> usize {
        0
    }
}

/// `p/q` (or `p` for integers), the form used in text and JSON output.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Coefficient text with an explicit sign, for `a + b x - c y` style output.
pub(crate) fn signed_term(first: bool, c: &Rational, body: &str) -> String {
    let neg = c.is_negative();
    let mag = c.abs();
    let mut out = String::new();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&format_rational(&mag));
    } else if mag.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format_rational(&mag));
        out.push(' ');
        out.push_str(body);
    }
    out
}
