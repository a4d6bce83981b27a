//! The five modular integrands, their fits against `E4`/`E6` bases, and the
//! theorem and lemma checks built on them.

mod cache;
mod fit;
mod report;
mod statements;
mod verify;

pub use fit::{modular_basis, modular_fit, FitError, ModularFit};
pub use report::{Check, CheckClass, ConstantCheck, Mismatch, ReportKind, Status, VerificationReport};
pub use statements::{lemma_constraint, level_bundles, restored_statement, solve_constants, statement, ConstantSolution, Sides, Statement};
pub use verify::{
    fit_report, verify_constrained_lemma, verify_kernel_identity, verify_target, verify_theorem, Target,
    TargetError, DEFAULT_Q_ORDER, MIN_Q_ORDER,
};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::bundles::{ch_delta, char_form, e8_ch_v, e8_halfsum, witten_series_adams, CharForm, WittenKind};
use crate::ring::{int, Rational};
use crate::series::QxSeries;
use crate::symfunc::{symmetrize_prod, EvenRootSeries, Generator, GradedElem, RootGroup, TOP_DEGREE};
use crate::theta::{eisenstein, phi_power, theta_ratio, ThetaKind};

use cache::Memo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QId {
    Q1,
    Q2,
    Q3,
    QP,
    QL,
}

impl QId {
    pub const ALL: [QId; 5] = [QId::Q1, QId::Q2, QId::Q3, QId::QP, QId::QL];

    pub fn name(self) -> &'static str {
        match self {
            QId::Q1 => "Q1",
            QId::Q2 => "Q2",
            QId::Q3 => "Q3",
            QId::QP => "QP",
            QId::QL => "QL",
        }
    }
}

impl fmt::Display for QId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QId::ALL.into_iter().find(|q| q.name() == s).ok_or_else(|| format!("unknown series '{s}'"))
    }
}

/// One integrand: which E8 bundles enter, its weight and the class multiplying
/// `E2(τ)/24` in the exponential prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct QSpec {
    pub id: QId,
    pub bundles: Vec<u8>,
    pub weight: u32,
    pub exponent: GradedElem,
}

/// `(1/30) Σ c2(W_i) = −Σ pY2_i`.
pub fn c2_class(bundles: &[u8]) -> GradedElem {
    bundles.iter().fold(GradedElem::zero(), |acc, &i| acc.sub(&GradedElem::gen(Generator::PY(2, i))))
}

impl QSpec {
    pub fn new(id: QId) -> Self {
        let bundles: Vec<u8> = match id {
            QId::Q1 => vec![1],
            QId::Q2 => vec![1, 2],
            _ => vec![1, 2, 3],
        };
        let a = c2_class(&bundles);
        let p1 = GradedElem::gen(Generator::PX(2));
        let exponent = match id {
            QId::QP => p1.add(&a).sub(&GradedElem::gen(Generator::U).pow(2).scale(&int(3))),
            QId::QL => a.sub(&p1.scale(&int(2))),
            _ => a,
        };
        let weight = match id {
            QId::Q1 => 10,
            QId::Q2 => 14,
            _ => 18,
        };
        QSpec { id, bundles, weight, exponent }
    }
}

fn lift(s: &QxSeries<Rational>) -> QxSeries<GradedElem> {
    s.map(|c| GradedElem::constant(c.clone()))
}

fn add(a: &QxSeries<GradedElem>, b: &QxSeries<GradedElem>) -> QxSeries<GradedElem> {
    a.try_add(b).expect("prefactors differ by whole powers of u")
}

/// `exp(E2(τ) · A / 24)`.
pub fn e2_prefactor(exponent: &GradedElem, order: usize) -> QxSeries<GradedElem> {
    let e2 = lift(&eisenstein(2, order).expect("weight 2"));
    e2.mul_coeff(&exponent.scale(&Rational::new(1.into(), 24.into())))
        .exp()
        .expect("exponent class is nilpotent")
}

static WITTEN: Memo<(WittenKind, usize), QxSeries<GradedElem>> = Memo::new();
static HALFSUM: Memo<(u8, usize), QxSeries<GradedElem>> = Memo::new();
static CH_V: Memo<(u8, usize), QxSeries<GradedElem>> = Memo::new();
static INTEGRAND: Memo<(QId, Route, usize), QxSeries<GradedElem>> = Memo::new();
static BUILD: Memo<(QId, usize), QxSeries<GradedElem>> = Memo::new();

fn witten(kind: WittenKind, order: usize) -> Arc<QxSeries<GradedElem>> {
    WITTEN.get_or((kind, order), || witten_series_adams(kind, order).series)
}

fn halfsum(i: u8, order: usize) -> Arc<QxSeries<GradedElem>> {
    HALFSUM.get_or((i, order), || e8_halfsum(i, order))
}

fn ch_v(i: u8, order: usize) -> Arc<QxSeries<GradedElem>> {
    CH_V.get_or((i, order), || e8_ch_v(i, order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Characteristic forms times Chern characters of the Witten-type series.
    Bundle,
    /// Products of theta-function kernels.
    Theta,
}

fn bundle_integrand(spec: &QSpec, order: usize) -> QxSeries<GradedElem> {
    let mut e8 = lift(&phi_power(8 * spec.bundles.len() as i32, order));
    for &i in &spec.bundles {
        e8 = e8.mul_series(&ch_v(i, order));
    }
    let body = match spec.id {
        QId::Q1 | QId::Q2 | QId::Q3 => {
            let delta = ch_delta();
            let t1 = witten(WittenKind::Theta1, order).mul_coeff(&delta);
            let t23 = add(&witten(WittenKind::Theta2, order), &witten(WittenKind::Theta3, order)).scale(&int(64));
            add(&t1, &t23).mul_coeff(&char_form(CharForm::AHat))
        }
        QId::QP => {
            let k = char_form(CharForm::AHat).mul(&char_form(CharForm::CoshHalfC));
            witten(WittenKind::Theta, order).mul_coeff(&k)
        }
        QId::QL => witten(WittenKind::Phi, order).mul_coeff(&char_form(CharForm::LHat)),
    };
    e2_prefactor(&spec.exponent, order).mul_series(&body).mul_series(&e8)
}

fn tangent_prod(f: &EvenRootSeries) -> QxSeries<GradedElem> {
    symmetrize_prod(f, RootGroup::Tangent).expect("unit kernel")
}

fn theta_integrand(spec: &QSpec, order: usize) -> QxSeries<GradedElem> {
    let th = theta_ratio(ThetaKind::Theta, order);
    let [t1, t2, t3] = ThetaKind::EVEN.map(|k| theta_ratio(k, order));
    let body = match spec.id {
        QId::Q1 | QId::Q2 | QId::Q3 => {
            let head = tangent_prod(&EvenRootSeries::new(th.series().scale(&int(2))));
            let sum = add(&add(&tangent_prod(&t1), &tangent_prod(&t2)), &tangent_prod(&t3));
            head.mul_series(&sum)
        }
        QId::QP => {
            let xi = t1.mul(&t2).mul(&t3).at_euler_root();
            tangent_prod(&th).mul_series(&xi)
        }
        QId::QL => tangent_prod(&th.mul(&t1).mul(&t2).mul(&t3)).scale(&int(64)),
    };
    let mut e8 = QxSeries::one(order);
    for &i in &spec.bundles {
        e8 = e8.mul_series(&halfsum(i, order));
    }
    e2_prefactor(&spec.exponent, order).mul_series(&body).mul_series(&e8)
}

/// The full mixed-degree integrand along one construction route.
pub fn integrand(id: QId, route: Route, order: usize) -> Arc<QxSeries<GradedElem>> {
    INTEGRAND.get_or((id, route, order), || {
        let spec = QSpec::new(id);
        match route {
            Route::Bundle => bundle_integrand(&spec, order),
            Route::Theta => theta_integrand(&spec, order),
        }
    })
}

/// Degree-12 form component of each q-coefficient of the integrand.
pub fn build_q(id: QId, order: usize) -> Arc<QxSeries<GradedElem>> {
    BUILD.get_or((id, order), || integrand(id, Route::Bundle, order).map(|c| c.degree_component(TOP_DEGREE)))
}

/// [`build_q`] for an explicit spec, without memoization.
pub fn build_q_spec(spec: &QSpec, order: usize) -> QxSeries<GradedElem> {
    bundle_integrand(spec, order).map(|c| c.degree_component(TOP_DEGREE))
}

/// [`build_q_spec`] along the theta route.
pub fn build_q_spec_theta(spec: &QSpec, order: usize) -> QxSeries<GradedElem> {
    theta_integrand(spec, order).map(|c| c.degree_component(TOP_DEGREE))
}
