//! Virtual bundles and their Chern characters, the Witten-type q-series
//! bundles and the E8 generating series.

mod expr;
mod parser;

pub use expr::{BundleExpr, MAX_SYM, MAX_WEDGE};
pub use parser::{parse_bundle, ParseError};

use std::sync::OnceLock;

use num_integer::binomial;
use num_traits::Zero;
use thiserror::Error;

use crate::ring::{factorial, int, Coefficient, Rational};
use crate::series::{sparse_one_plus, QxSeries};
use crate::symfunc::{
    adams, symmetrize_prod, EvenRootSeries, Generator, GradedElem, RootGroup, RootPoly, ROOT_DEGREE,
};
use crate::theta::{cosh_full, cosh_half, phi_power, theta_const8, theta_ratio, ThetaKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("wedge exponent {0} outside 0..={MAX_WEDGE}")]
    WedgeRange(u32),
    #[error("sym exponent {0} outside 0..={MAX_SYM}")]
    SymRange(u32),
    #[error("E8 bundle index {0} outside 1..=3")]
    BundleIndex(u8),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Order (in `u`) at which the E8 series is expanded to read off `W` and `W̄`.
const E8_ATOM_ORDER: usize = 6;

fn e8_atoms() -> &'static [QxSeries<GradedElem>; 3] {
    static CACHE: OnceLock<[QxSeries<GradedElem>; 3]> = OnceLock::new();
    CACHE.get_or_init(|| std::array::from_fn(|i| e8_ch_v(i as u8 + 1, E8_ATOM_ORDER)))
}

fn check_index(i: u8) -> Result<usize, BundleError> {
    if (1..=3).contains(&i) {
        Ok(i as usize - 1)
    } else {
        Err(BundleError::BundleIndex(i))
    }
}

/// `ch(W_i)`: the q¹ coefficient of `ch(V_i)`.
pub fn ch_w(i: u8) -> Result<GradedElem, BundleError> {
    Ok(e8_atoms()[check_index(i)?].q_coeff(1))
}

/// `ch(W̄_i)`: the q² coefficient of `ch(V_i)`.
pub fn ch_wbar(i: u8) -> Result<GradedElem, BundleError> {
    Ok(e8_atoms()[check_index(i)?].q_coeff(2))
}

/// `ch(T_C Z)`.
pub fn ch_tangent() -> GradedElem {
    let mut x = GradedElem::from_int(12);
    for (p, f) in [(2u8, 2u32), (4, 4), (6, 6)] {
        x = x.add(&GradedElem::gen(Generator::PX(p)).scale(&(int(2) / factorial(f))));
    }
    x
}

/// `ch(ξ_C) = e^U + e^{−U}`.
pub fn ch_xi() -> GradedElem {
    let u2 = GradedElem::gen(Generator::U).pow(2);
    let mut x = GradedElem::from_int(2);
    for k in 1..=3u32 {
        x = x.add(&u2.pow(k).scale(&(int(2) / factorial(2 * k))));
    }
    x
}

fn constant_kernel(p: RootPoly) -> EvenRootSeries {
    EvenRootSeries::new(QxSeries::constant(p, 1))
}

fn tangent_form(p: RootPoly) -> GradedElem {
    symmetrize_prod(&constant_kernel(p), RootGroup::Tangent).expect("unit kernel").coeff(0)
}

/// `ch(Δ(Z)) = Π (e^{X/2} + e^{−X/2})`.
pub fn ch_delta() -> GradedElem {
    tangent_form(cosh_half().scale(&int(2)))
}

/// Exterior and symmetric powers of a character through Newton's identities.
fn newton_powers(x: &GradedElem, k: u32, alternating: bool) -> GradedElem {
    let psi: Vec<GradedElem> = (1..=k as i64).map(|m| adams(m, x)).collect();
    let mut e = vec![GradedElem::one()];
    for n in 1..=k as usize {
        let mut acc = GradedElem::zero();
        for m in 1..=n {
            let t = psi[m - 1].mul(&e[n - m]);
            acc = if alternating && m % 2 == 0 { acc.sub(&t) } else { acc.add(&t) };
        }
        e.push(acc.scale(&int(n as i64).recip()));
    }
    e.pop().expect("nonempty")
}

/// The Chern character of a virtual bundle.
pub fn ch(expr: &BundleExpr) -> Result<GradedElem, BundleError> {
    Ok(match expr {
        BundleExpr::TC => ch_tangent(),
        BundleExpr::XiC => ch_xi(),
        BundleExpr::W(i) => ch_w(*i)?,
        BundleExpr::Wbar(i) => ch_wbar(*i)?,
        BundleExpr::Delta => ch_delta(),
        BundleExpr::Const(n) => GradedElem::from_int(*n),
        BundleExpr::Sum(a, b) => ch(a)?.add(&ch(b)?),
        BundleExpr::Diff(a, b) => ch(a)?.sub(&ch(b)?),
        BundleExpr::Tensor(a, b) => ch(a)?.mul(&ch(b)?),
        BundleExpr::Wedge(k, e) => {
            if *k > MAX_WEDGE {
                return Err(BundleError::WedgeRange(*k));
            }
            newton_powers(&ch(e)?, *k, true)
        }
        BundleExpr::Sym(k, e) => {
            if *k > MAX_SYM {
                return Err(BundleError::SymRange(*k));
            }
            newton_powers(&ch(e)?, *k, false)
        }
        BundleExpr::Tilde(e) => {
            let x = ch(e)?;
            x.sub(&GradedElem::constant(x.scalar()))
        }
    })
}

/// Parses and evaluates in one step.
pub fn ch_str(input: &str) -> Result<GradedElem, BundleError> {
    ch(&parse_bundle(input)?)
}

/// Virtual rank: the degree-0 part of the Chern character.
pub fn rank(expr: &BundleExpr) -> Result<Rational, BundleError> {
    Ok(ch(expr)?.scalar())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharForm {
    AHat,
    LHat,
    CoshHalfC,
}

fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![int(1)];
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial((m + 1).into(), j.into())) * bj;
        }
        b.push(-acc / int(m as i64 + 1));
    }
    b
}

/// `Σ_k coeff(k) s^k` for `k ≤ 3`.
fn bernoulli_kernel(coeff: impl Fn(usize, &Rational) -> Rational) -> RootPoly {
    let b = bernoulli(2 * ROOT_DEGREE);
    RootPoly(std::array::from_fn(|k| coeff(k, &b[2 * k])))
}

/// `(X/2) / sinh(X/2)` from its Bernoulli expansion.
fn ahat_kernel() -> RootPoly {
    bernoulli_kernel(|k, b| {
        let two_k = 1i64 << (2 * k);
        int(2 - two_k) * b / (factorial(2 * k as u32) * int(two_k))
    })
}

/// `X / tanh(X/2)` from its Bernoulli expansion.
fn lhat_kernel() -> RootPoly {
    bernoulli_kernel(|k, b| int(2) * b / factorial(2 * k as u32))
}

pub fn char_form(name: CharForm) -> GradedElem {
    match name {
        CharForm::AHat => tangent_form(ahat_kernel()),
        CharForm::LHat => tangent_form(lhat_kernel()),
        CharForm::CoshHalfC => cosh_half().eval_at(&GradedElem::gen(Generator::U).pow(2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WittenKind {
    Theta1,
    Theta2,
    Theta3,
    /// Mixed tangent / ξ series.
    Theta,
    /// All four factor types on the tangent bundle.
    Phi,
}

impl WittenKind {
    pub const ALL: [WittenKind; 5] =
        [WittenKind::Theta1, WittenKind::Theta2, WittenKind::Theta3, WittenKind::Theta, WittenKind::Phi];

    pub fn name(self) -> &'static str {
        match self {
            WittenKind::Theta1 => "Theta1",
            WittenKind::Theta2 => "Theta2",
            WittenKind::Theta3 => "Theta3",
            WittenKind::Theta => "Theta",
            WittenKind::Phi => "Phi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesName {
    Witten(WittenKind),
    V(u8),
}

/// A q-series of Chern characters.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesBundle {
    pub name: SeriesName,
    pub series: QxSeries<GradedElem>,
}

/// One infinite tensor factor of a Witten-type series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    /// `⊗_n S_{q^n}(Ẽ)`.
    Sym,
    /// `⊗_n ∧_{σ q^n}(Ẽ)` (`half = false`) or `⊗_n ∧_{σ q^{n−1/2}}(Ẽ)`.
    Ext { sign: i64, half: bool },
}

impl Factor {
    /// The u-powers `k` of the factor's parameter `t = ±u^k`.
    fn powers(self, order: usize) -> impl Iterator<Item = usize> {
        let offset = matches!(self, Factor::Ext { half: true, .. }) as usize;
        (1..).map(move |j| 2 * j - offset).take_while(move |&k| k < order)
    }
}

fn layout(kind: WittenKind) -> (Vec<Factor>, Vec<Factor>) {
    let s = Factor::Sym;
    let e = Factor::Ext { sign: 1, half: false };
    let minus = Factor::Ext { sign: -1, half: true };
    let plus = Factor::Ext { sign: 1, half: true };
    match kind {
        WittenKind::Theta1 => (vec![s, e], vec![]),
        WittenKind::Theta2 => (vec![s, minus], vec![]),
        WittenKind::Theta3 => (vec![s, plus], vec![]),
        WittenKind::Theta => (vec![s], vec![e, minus, plus]),
        WittenKind::Phi => (vec![s, e, minus, plus], vec![]),
    }
}

/// Product over a root pair `±r` of one factor family, tilde-normalized by scalars:
/// `(1−t)² / (1 − 2cosh(r)t + t²)` or `(1 + 2σcosh(r)t + t²) / (1+σt)²`.
fn pair_kernel(f: Factor, order: usize) -> EvenRootSeries {
    let c = cosh_full();
    let lift = |s: QxSeries<Rational>| s.map(|x| RootPoly::from_rational(x.clone()));
    let mut acc = QxSeries::one(order);
    for k in f.powers(order) {
        let (sign, inverted) = match f {
            Factor::Sym => (-1, true),
            Factor::Ext { sign, .. } => (sign, false),
        };
        let pair = sparse_one_plus(&[(k, c.scale(&int(2 * sign))), (2 * k, RootPoly::from_rational(int(1)))], order);
        let scalar = sparse_one_plus(&[(k, int(sign))], order).pow(2);
        let factor = if inverted {
            lift(scalar).mul_series(&pair.inv().expect("unit"))
        } else {
            pair.mul_series(&lift(scalar.inv().expect("unit")))
        };
        acc = acc.mul_series(&factor);
    }
    EvenRootSeries::new(acc)
}

/// Witten-type series built per root pair and symmetrized.
pub fn witten_series(kind: WittenKind, order: usize) -> SeriesBundle {
    let (tangent, xi) = layout(kind);
    let mut t = EvenRootSeries::new(QxSeries::one(order));
    for f in tangent {
        t = t.mul(&pair_kernel(f, order));
    }
    let mut series = symmetrize_prod(&t, RootGroup::Tangent).expect("unit kernel");
    for f in xi {
        series = series.mul_series(&pair_kernel(f, order).at_euler_root());
    }
    SeriesBundle { name: SeriesName::Witten(kind), series }
}

/// The same series through the λ-ring: `log ch S_t(Ẽ) = Σ_m t^m ψ^m(ch Ẽ)/m`
/// and `log ch ∧_t(Ẽ) = Σ_m (−1)^{m−1} t^m ψ^m(ch Ẽ)/m`.
pub fn witten_series_adams(kind: WittenKind, order: usize) -> SeriesBundle {
    let (tangent, xi) = layout(kind);
    let t_red = ch_tangent().sub(&GradedElem::from_int(12));
    let x_red = ch_xi().sub(&GradedElem::from_int(2));
    let mut log = vec![GradedElem::zero(); order];
    for (factors, red) in [(tangent, &t_red), (xi, &x_red)] {
        for f in factors {
            for k in f.powers(order) {
                for m in (1..).take_while(|m| m * k < order) {
                    let mut c = int(m as i64).recip();
                    if let Factor::Ext { sign, .. } = f {
                        if m % 2 == 0 {
                            c = -c;
                        }
                        if sign < 0 && m % 2 == 1 {
                            c = -c;
                        }
                    }
                    log[m * k] = log[m * k].add(&adams(m as i64, red).scale(&c));
                }
            }
        }
    }
    let series = QxSeries::from_coeffs(0, log).exp().expect("nilpotent constant term");
    SeriesBundle { name: SeriesName::Witten(kind), series }
}

fn lift_scalar(s: &QxSeries<Rational>) -> QxSeries<GradedElem> {
    s.map(|c| GradedElem::constant(c.clone()))
}

/// `φ(τ)⁸ ch(V_i) = ½ Σ_{k=1}^{3} θ_k(0,τ)⁸ Π_l θ_k(y_l, τ)/θ_k(0, τ)`.
pub fn e8_halfsum(i: u8, order: usize) -> QxSeries<GradedElem> {
    let mut acc: Option<QxSeries<GradedElem>> = None;
    for kind in ThetaKind::EVEN {
        let c = theta_const8(kind, order).expect("even theta constant");
        let prod = symmetrize_prod(&theta_ratio(kind, order), RootGroup::E8(i)).expect("unit kernel");
        let term = lift_scalar(&c).mul_series(&prod);
        acc = Some(match acc {
            None => term,
            Some(a) => a.try_add(&term).expect("prefactors differ by whole powers of u"),
        });
    }
    acc.expect("three terms").scale(&Rational::new(1.into(), 2.into()))
}

/// `ch(V_i) = φ(τ)^{−8} · halfsum`.
pub fn e8_ch_v(i: u8, order: usize) -> QxSeries<GradedElem> {
    e8_halfsum(i, order).mul_series(&lift_scalar(&phi_power(-8, order)))
}

/// Generating series `V_i` as a [`SeriesBundle`].
pub fn e8_series(i: u8, order: usize) -> Result<SeriesBundle, BundleError> {
    check_index(i)?;
    Ok(SeriesBundle { name: SeriesName::V(i), series: e8_ch_v(i, order) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use crate::symfunc::Monomial;

    fn px2() -> Monomial {
        Monomial::of(Generator::PX(2))
    }

    #[test]
    fn atom_characters() {
        assert_eq!(ch_str("wedge(2, XiC)").unwrap(), GradedElem::one());
        assert_eq!(ch_delta().scalar(), int(64));
        assert_eq!(rank(&parse_bundle("sym(2, TC) - wedge(3, XiC)").unwrap()).unwrap(), int(78));
        assert_eq!(ch_str("wedge(0, TC)").unwrap(), GradedElem::one());
        let t = ch_tangent();
        assert_eq!(ch_str("sym(2, TC) + wedge(2, TC)").unwrap(), t.mul(&t));
    }

    #[test]
    fn characteristic_form_heads() {
        let a = char_form(CharForm::AHat);
        assert_eq!(a.scalar(), int(1));
        assert_eq!(a.coeff(&px2()), rat(-1, 24));
        let l = char_form(CharForm::LHat);
        assert_eq!(l.scalar(), int(64));
        assert_eq!(l.coeff(&px2()), rat(16, 3));
        assert_eq!(ahat_kernel(), crate::theta::theta_ratio(ThetaKind::Theta, 1).series().coeff(0));
    }

    #[test]
    fn theta1_q1_is_twice_reduced_tangent() {
        let s = witten_series(WittenKind::Theta1, 6).series;
        assert_eq!(s.coeff(0), GradedElem::one());
        assert_eq!(s.q_coeff(1), ch_str("2*tilde(TC)").unwrap());
    }

    #[test]
    fn e8_scalar_dimensions() {
        let v = e8_ch_v(1, 8);
        let dims: Vec<Rational> = (0..4).map(|n| v.q_coeff(n).scalar()).collect();
        assert_eq!(dims, vec![int(1), int(248), int(4124), int(34752)]);
        assert!(e8_series(4, 4).is_err());
    }
}
