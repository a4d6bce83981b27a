use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::fit::{modular_fit, ModularFit};
use super::report::{Check, CheckClass, ConstantCheck, Mismatch, ReportKind, VerificationReport};
use super::statements::{level_bundles, restored_statement, solve_constants, statement, ConstantSolution, Statement};
use super::{build_q, integrand, QId, QSpec, Route};
use crate::bundles::{ch_delta, ch_str, char_form, CharForm, WittenKind};
use crate::ring::{format_rational, rat, Coefficient};
use crate::series::QxSeries;
use crate::symfunc::{GradedElem, TOP_DEGREE};
use crate::theta::{theta_ratio, ThetaKind};

/// Default truncation in powers of `u = q^{1/2}` (through `q^7`).
pub const DEFAULT_Q_ORDER: usize = 16;
/// Smallest order that still reaches the `q²` comparison of the weight-18 fits.
pub const MIN_Q_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Kernel(QId),
    Theorem(QId),
    Lemma(QId),
    Fit(QId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error("unknown target '{0}'")]
    Unknown(String),
    #[error("q-order {0} is below the minimum {MIN_Q_ORDER}")]
    OrderTooSmall(usize),
}

fn block(id: QId) -> usize {
    QId::ALL.iter().position(|q| *q == id).expect("listed") * 3
}

impl Target {
    /// The fifteen identities in numbering order.
    pub fn all() -> Vec<Target> {
        QId::ALL.iter().flat_map(|&q| [Target::Kernel(q), Target::Theorem(q), Target::Lemma(q)]).collect()
    }

    pub fn name(self) -> String {
        match self {
            Target::Kernel(q) => format!("L3.{}", block(q) + 1),
            Target::Theorem(q) => format!("T3.{}", block(q) + 2),
            Target::Lemma(q) => format!("L3.{}", block(q) + 3),
            Target::Fit(q) => q.name().to_string(),
        }
    }

    pub fn series(self) -> QId {
        match self {
            Target::Kernel(q) | Target::Theorem(q) | Target::Lemma(q) | Target::Fit(q) => q,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Target {
    type Err = TargetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(q) = s.parse::<QId>() {
            return Ok(Target::Fit(q));
        }
        Target::all().into_iter().find(|t| t.name() == s).ok_or_else(|| TargetError::Unknown(s.to_string()))
    }
}

fn q_power(u_power: usize) -> String {
    format_rational(&rat(u_power as i64, 2))
}

fn elem_mismatch(q: String, a: &GradedElem, b: &GradedElem) -> Option<Mismatch> {
    a.first_difference(b).map(|(m, l, r)| Mismatch {
        q_power: q,
        monomial: m.name(),
        lhs: format_rational(&l),
        rhs: format_rational(&r),
    })
}

fn series_mismatch(a: &QxSeries<GradedElem>, b: &QxSeries<GradedElem>) -> Option<Mismatch> {
    let n = a.order().max(b.order());
    (0..n).find_map(|k| elem_mismatch(q_power(k), &a.coeff(k), &b.coeff(k)))
}

fn check(name: impl Into<String>, class: CheckClass, mismatch: Option<Mismatch>) -> Check {
    Check { name: name.into(), class, passed: mismatch.is_none(), mismatch }
}

fn fit_of(id: QId, order: usize) -> ModularFit {
    modular_fit(&build_q(id, order), QSpec::new(id).weight).expect("integral q-series")
}

fn fit_check(fit: &ModularFit) -> Check {
    let zero = QxSeries::zero(fit.residual.order());
    let last = (fit.residual.order() - 1) / 2;
    check(format!("modular fit residual vanishes through q^{last}"), CheckClass::Derived, series_mismatch(&fit.residual, &zero))
}

fn lambda(fit: &ModularFit) -> Option<Vec<String>> {
    Some(fit.coeffs.iter().map(|c| c.to_string()).collect())
}

fn check_order(order: usize) -> Result<(), TargetError> {
    if order < MIN_Q_ORDER {
        Err(TargetError::OrderTooSmall(order))
    } else {
        Ok(())
    }
}

/// Bundle side against theta side, the `u → −u` shadow, and the modular fit.
pub fn verify_kernel_identity(id: QId, order: usize) -> Result<VerificationReport, TargetError> {
    check_order(order)?;
    let bundle = integrand(id, Route::Bundle, order);
    let theta = integrand(id, Route::Theta, order);
    let mut checks = vec![check(
        format!("bundle side equals theta side through u^{}", order - 1),
        CheckClass::Derived,
        series_mismatch(&bundle, &theta),
    )];
    checks.push(check("integrand invariant under u -> -u", CheckClass::Derived, series_mismatch(&bundle, &bundle.flip_u())));
    let swap = if matches!(id, QId::Q1 | QId::Q2 | QId::Q3) {
        let t2 = super::witten(WittenKind::Theta2, order);
        let t3 = super::witten(WittenKind::Theta3, order);
        series_mismatch(&t2.flip_u(), &t3)
    } else {
        let t2 = theta_ratio(ThetaKind::Theta2, order);
        let t3 = theta_ratio(ThetaKind::Theta3, order);
        (t2.series().flip_u() != *t3.series()).then(|| Mismatch {
            q_power: "?".into(),
            monomial: "theta kernel".into(),
            lhs: "theta2(u -> -u)".into(),
            rhs: "theta3".into(),
        })
    };
    checks.push(check("u -> -u swaps the theta2 and theta3 blocks", CheckClass::Derived, swap));
    let fit = fit_of(id, order);
    checks.push(fit_check(&fit));
    let name = Target::Kernel(id).name();
    let mut r = VerificationReport::from_checks(&name, ReportKind::Kernel, order, TOP_DEGREE, checks);
    r.lambda = lambda(&fit);
    Ok(r)
}

/// The modular fit alone.
pub fn fit_report(id: QId, order: usize) -> Result<VerificationReport, TargetError> {
    check_order(order)?;
    let fit = fit_of(id, order);
    let mut r = VerificationReport::from_checks(id.name(), ReportKind::Fit, order, TOP_DEGREE, vec![fit_check(&fit)]);
    r.lambda = lambda(&fit);
    Ok(r)
}

/// Number of fitted basis coefficients; `q^dim` is the first compared term.
fn dim(id: QId) -> usize {
    if QSpec::new(id).weight == 18 {
        2
    } else {
        1
    }
}

fn solved(stmt: &Statement) -> Option<Vec<String>> {
    match solve_constants(stmt) {
        ConstantSolution::Unique(v) => Some(v.iter().map(format_rational).collect()),
        _ => None,
    }
}

fn statement_checks(id: QId, lemma: bool, q: usize, checks: &mut Vec<Check>) -> Vec<ConstantCheck> {
    let stmt = statement(id, lemma);
    let sides = stmt.sides(&stmt.printed());
    checks.push(check(
        "printed statement with printed constants",
        CheckClass::Statement,
        elem_mismatch(q.to_string(), &sides.lhs, &sides.rhs),
    ));
    let derived = solved(&stmt);
    let restored = restored_statement(id, lemma).map(|r| {
        let values = solved(&r);
        let mismatch = match &values {
            Some(_) => None,
            None => {
                let s = r.sides(&r.printed());
                elem_mismatch(q.to_string(), &s.lhs, &s.rhs)
            }
        };
        checks.push(check(
            "statement with the omitted q^2 terms of 2^6(Theta2 + Theta3) restored is solvable",
            CheckClass::Derived,
            mismatch,
        ));
        values
    });
    stmt.printed()
        .iter()
        .enumerate()
        .map(|(k, p)| ConstantCheck {
            printed: format_rational(p),
            derived: derived.as_ref().map(|v| v[k].clone()),
            restored: restored.as_ref().and_then(|v| v.as_ref().map(|v| v[k].clone())),
        })
        .collect()
}

fn e_factor(a: &GradedElem) -> GradedElem {
    a.scale(&rat(1, 24)).exp_nilpotent().expect("nilpotent")
}

/// The q⁰ and q¹ terms as printed in the proofs.
fn proof_display(id: QId) -> (GradedElem, GradedElem) {
    let spec = QSpec::new(id);
    let a = spec.exponent.clone();
    let e = e_factor(&a);
    let ahat = char_form(CharForm::AHat);
    let n = spec.bundles.len() as i64;
    let sw = spec.bundles.iter().map(|i| format!("W{i}")).collect::<Vec<_>>().join(" + ");
    let c = |s: String| ch_str(&s).expect("display bundles parse");
    let (k0, q1) = match id {
        QId::Q1 | QId::Q2 | QId::Q3 => {
            let delta = ch_delta();
            let k0 = ahat.mul(&delta.add(&GradedElem::from_int(128)));
            let q1 = ahat.mul(
                &delta
                    .mul(&c(format!("{} + 2*tilde(TC) + {sw}", -8 * n)))
                    .add(&c(format!("{} + 128*tilde(TC) + 128*({sw}) + 128*wedge(2, tilde(TC))", -1024 * n))),
            );
            (k0, q1)
        }
        QId::QP | QId::QL => {
            let k = match id {
                QId::QP => ahat.mul(&char_form(CharForm::CoshHalfC)),
                _ => char_form(CharForm::LHat),
            };
            let (l1, _) = level_bundles(id).expect("twisted series");
            let q1 = k.mul(&c(format!("-24 + {l1} + {sw}")));
            (k, q1)
        }
    };
    let q0 = e.mul(&k0);
    let q1 = e.mul(&q1).sub(&q0.mul(&a));
    (q0.degree_component(TOP_DEGREE), q1.degree_component(TOP_DEGREE))
}

/// Derived: coefficient comparison of the fit. Statement: the printed identity.
pub fn verify_theorem(id: QId, order: usize) -> Result<VerificationReport, TargetError> {
    check_order(order)?;
    let q = build_q(id, order);
    let fit = fit_of(id, order);
    let d = dim(id);
    let zero = GradedElem::zero();
    let mut checks = vec![check(
        format!("coefficient comparison at q^{d}"),
        CheckClass::Derived,
        elem_mismatch(d.to_string(), &fit.residual.q_coeff(d), &zero),
    )];
    checks.push(fit_check(&fit));
    let (p0, p1) = proof_display(id);
    checks.push(check("printed q^0 term", CheckClass::Statement, elem_mismatch("0".into(), &q.q_coeff(0), &p0)));
    checks.push(check("printed q^1 term", CheckClass::Statement, elem_mismatch("1".into(), &q.q_coeff(1), &p1)));
    let constants = statement_checks(id, false, d, &mut checks);
    let name = Target::Theorem(id).name();
    let mut r = VerificationReport::from_checks(&name, ReportKind::Theorem, order, TOP_DEGREE, checks);
    r.lambda = lambda(&fit);
    r.constants = constants;
    Ok(r)
}

/// The theorem restricted by the lemma's hypothesis.
pub fn verify_constrained_lemma(id: QId, order: usize) -> Result<VerificationReport, TargetError> {
    check_order(order)?;
    let stmt = statement(id, true);
    let (g, repl) = stmt.constraint().cloned().expect("lemmas carry a hypothesis");
    let elim = |x: &GradedElem| x.eliminate(g, &repl).expect("homogeneous constraint");
    let spec = QSpec::new(id);
    let zero = GradedElem::zero();
    let mut checks = vec![check(
        format!("hypothesis eliminates the E2 exponent class ({g} eliminated)"),
        CheckClass::Derived,
        elem_mismatch("0".into(), &elim(&spec.exponent), &zero),
    )];
    let q = build_q(id, order).map(elim);
    let fit = modular_fit(&q, spec.weight).expect("integral q-series");
    let d = dim(id);
    checks.push(check(
        format!("constrained coefficient comparison at q^{d}"),
        CheckClass::Derived,
        elem_mismatch(d.to_string(), &fit.residual.q_coeff(d), &zero),
    ));
    checks.push(fit_check(&fit));
    let constants = statement_checks(id, true, d, &mut checks);
    let name = Target::Lemma(id).name();
    let mut r = VerificationReport::from_checks(&name, ReportKind::Lemma, order, TOP_DEGREE, checks);
    r.constants = constants;
    Ok(r)
}

pub fn verify_target(target: Target, order: usize) -> Result<VerificationReport, TargetError> {
    match target {
        Target::Kernel(q) => verify_kernel_identity(q, order),
        Target::Theorem(q) => verify_theorem(q, order),
        Target::Lemma(q) => verify_constrained_lemma(q, order),
        Target::Fit(q) => fit_report(q, order),
    }
}
