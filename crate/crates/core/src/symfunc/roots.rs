//! Per-root kernels and their symmetrization over a group of formal roots.

use num_traits::{One, Zero};
use thiserror::Error;

use super::graded::{GradedElem, Generator, TOP_DEGREE};
use crate::ring::{int, Coefficient, Rational};
use crate::series::{QxSeries, SeriesError};

/// A family of formal Chern roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootGroup {
    /// The six tangent roots `X_k`.
    Tangent,
    /// The eight roots `Y_l^i` of E8 bundle `i`.
    E8(u8),
    /// The explicit pair `+U, -U`.
    Xi,
}

impl RootGroup {
    pub fn count(self) -> usize {
        match self {
            RootGroup::Tangent => 6,
            RootGroup::E8(_) => 8,
            RootGroup::Xi => 2,
        }
    }

    /// `Σ r^{2j}` over the roots, `j ∈ 1..=3`.
    pub fn power_sum(self, j: usize) -> GradedElem {
        let p = (2 * j) as u8;
        match self {
            RootGroup::Tangent => GradedElem::gen(Generator::PX(p)),
            RootGroup::E8(i) => GradedElem::gen(Generator::PY(p, i)),
            RootGroup::Xi => GradedElem::gen(Generator::U).pow(2 * j as u32).scale(&int(2)),
        }
    }
}

/// Polynomial in `s = root²` of degree at most 3 with rational coefficients.
///
/// Used as coefficient ring of [`EvenRootSeries`]; `s` has weight 2 so `s^4`
/// is dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPoly(pub [Rational; 4]);

pub const ROOT_DEGREE: usize = TOP_DEGREE / 2;

impl RootPoly {
    pub fn new(c: [Rational; 4]) -> Self {
        RootPoly(c)
    }

    pub fn s() -> Self {
        RootPoly([int(0), int(1), int(0), int(0)])
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.0[j]
    }

    /// Evaluates at `s = x` in any coefficient ring.
    pub fn eval_at<R: Coefficient>(&self, x: &R) -> R {
        let mut acc = R::zero_elem();
        let mut p = R::one_elem();
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                p = p.mul(x);
            }
            if !c.is_zero() {
                acc = acc.add(&p.scale(c));
            }
        }
        acc
    }
}

impl Coefficient for RootPoly {
    fn zero_elem() -> Self {
        RootPoly([int(0), int(0), int(0), int(0)])
    }
    fn one_elem() -> Self {
        RootPoly([int(1), int(0), int(0), int(0)])
    }
    fn is_zero_elem(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        RootPoly(std::array::from_fn(|j| &self.0[j] + &other.0[j]))
    }
    fn sub(&self, other: &Self) -> Self {
        RootPoly(std::array::from_fn(|j| &self.0[j] - &other.0[j]))
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero_elem();
        for i in 0..=ROOT_DEGREE {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..=ROOT_DEGREE - i {
                out.0[i + j] += &self.0[i] * &other.0[j];
            }
        }
        out
    }
    fn neg(&self) -> Self {
        RootPoly(std::array::from_fn(|j| -&self.0[j]))
    }
    fn scale(&self, c: &Rational) -> Self {
        RootPoly(std::array::from_fn(|j| &self.0[j] * c))
    }
    fn from_rational(c: Rational) -> Self {
        RootPoly([c, int(0), int(0), int(0)])
    }
    fn scalar_part(&self) -> Rational {
        self.0[0].clone()
    }
    fn nilpotency_bound() -> usize {
        ROOT_DEGREE
    }
}

/// An even function of one root, as a q-series whose coefficients are
/// polynomials in `s = root²`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenRootSeries(pub QxSeries<RootPoly>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetrizeError {
    #[error("kernel is not a unit series: {0}")]
    NotUnit(#[from] SeriesError),
}

impl EvenRootSeries {
    pub fn new(series: QxSeries<RootPoly>) -> Self {
        EvenRootSeries(series)
    }

    /// Builds from the scalar series multiplying `s^0 .. s^3`.
    pub fn from_s_coeffs(parts: [&QxSeries<Rational>; 4]) -> Self {
        let order = parts.iter().map(|p| p.order()).min().unwrap_or(0);
        let eighth = parts[0].eighth_exponent();
        assert!(parts.iter().all(|p| p.eighth_exponent() == eighth), "s-coefficients need a common prefactor");
        let coeffs = (0..order).map(|k| RootPoly(std::array::from_fn(|j| parts[j].coeff(k)))).collect();
        EvenRootSeries(QxSeries::from_coeffs(eighth, coeffs))
    }

    /// Scalar series multiplying `s^j`.
    pub fn s_coeff(&self, j: usize) -> QxSeries<Rational> {
        self.0.map(|p| p.0[j].clone())
    }

    pub fn series(&self) -> &QxSeries<RootPoly> {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn mul(&self, other: &Self) -> Self {
        EvenRootSeries(self.0.mul_series(&other.0))
    }

    pub fn truncate(&self, order: usize) -> Self {
        EvenRootSeries(self.0.truncate(order))
    }

    /// Substitutes `s = x`, e.g. `x = U²` for a single explicit root `U`.
    pub fn at(&self, x: &GradedElem) -> QxSeries<GradedElem> {
        self.0.map(|p| p.eval_at(x))
    }

    /// The `root → -root` companion is the same series; this is the value at one root `U`.
    pub fn at_euler_root(&self) -> QxSeries<GradedElem> {
        self.at(&GradedElem::gen(Generator::U).pow(2))
    }
}

/// `Σ_r f(r)` over the roots of `g`.
pub fn symmetrize_sum(f: &EvenRootSeries, g: RootGroup) -> QxSeries<GradedElem> {
    let count = int(g.count() as i64);
    let sums: Vec<GradedElem> = (1..=ROOT_DEGREE).map(|j| g.power_sum(j)).collect();
    f.0.map(|p| {
        let mut acc = GradedElem::constant(&p.0[0] * &count);
        for j in 1..=ROOT_DEGREE {
            if !p.0[j].is_zero() {
                acc = acc.add(&sums[j - 1].scale(&p.0[j]));
            }
        }
        acc
    })
}

/// `Π_r f(r)` over the roots of `g`.
///
/// For the tangent and E8 groups this is `c^n · exp(Σ_r log(f(r)/c))` with `c`
/// the constant term; for the explicit pair it is `f(U²)²`.
pub fn symmetrize_prod(f: &EvenRootSeries, g: RootGroup) -> Result<QxSeries<GradedElem>, SymmetrizeError> {
    if !f.0.is_unit() {
        return Err(SeriesError::NotUnit.into());
    }
    if g == RootGroup::Xi {
        let v = f.at_euler_root();
        return Ok(v.mul_series(&v));
    }
    let c = f.0.coeff(0).scalar_part();
    let normalized = f.0.scale(&c.recip());
    let log = normalized.log()?;
    let sum = symmetrize_sum(&EvenRootSeries(log), g);
    let mut prod = sum.exp()?;
    let mut cn = Rational::one();
    for _ in 0..g.count() {
        cn *= &c;
    }
    if !cn.is_one() {
        prod = prod.scale(&cn);
    }
    Ok(prod)
}

/// The Adams operation `ψ^m`: every root scaled by `m`.
pub fn adams(m: i64, x: &GradedElem) -> GradedElem {
    let m = int(m);
    x.map_by_degree(|d| {
        let mut f = Rational::one();
        for _ in 0..d {
            f *= &m;
        }
        f
    })
}

/// [`adams`] applied coefficientwise.
pub fn adams_series(m: i64, x: &QxSeries<GradedElem>) -> QxSeries<GradedElem> {
    x.map(|c| adams(m, c))
}

/// Scales every root of one group by `t` (an Adams-type map on that group only).
pub fn scale_group(g: RootGroup, t: &Rational, x: &GradedElem) -> GradedElem {
    let gens: Vec<Generator> = match g {
        RootGroup::Tangent => vec![Generator::PX(2), Generator::PX(4), Generator::PX(6)],
        RootGroup::E8(i) => vec![Generator::PY(2, i), Generator::PY(4, i), Generator::PY(6, i)],
        RootGroup::Xi => vec![Generator::U],
    };
    x.map_by_monomial(|m| {
        let mut f = Rational::one();
        for g in &gens {
            for _ in 0..(m.exponent(*g) as usize * g.degree()) {
                f *= t;
            }
        }
        f
    })
}
