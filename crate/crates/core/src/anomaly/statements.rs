//! The printed theorem and lemma identities, built from the bundle DSL with
//! every large integer constant left as an adjustable slot.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{c2_class, QId};
use crate::bundles::{ch_delta, ch_str, char_form, CharForm};
use crate::ring::{int, rat, Coefficient, Rational};
use crate::symfunc::{Generator, GradedElem, Monomial, TOP_DEGREE};

#[derive(Debug, Clone, PartialEq)]
pub struct Sides {
    pub lhs: GradedElem,
    pub rhs: GradedElem,
}

/// An integer constant of the printed identity. It enters linearly, as
/// `c·lhs + …` on the left and `c·rhs + …` on the right.
#[derive(Debug, Clone, PartialEq)]
struct Slot {
    printed: i64,
    lhs: GradedElem,
    rhs: GradedElem,
}

/// A printed identity, affine in its constants.
#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    base: Sides,
    slots: Vec<Slot>,
    constraint: Option<(Generator, GradedElem)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstantSolution {
    Unique(Vec<Rational>),
    /// No choice of the constants makes the two sides agree.
    Inconsistent,
    Underdetermined,
}

impl Statement {
    pub fn printed(&self) -> Vec<Rational> {
        self.slots.iter().map(|s| int(s.printed)).collect()
    }

    pub fn constraint(&self) -> Option<&(Generator, GradedElem)> {
        self.constraint.as_ref()
    }

    fn finish(&self, x: &GradedElem) -> GradedElem {
        let x = match &self.constraint {
            Some((g, r)) => x.eliminate(*g, r).expect("homogeneous constraint"),
            None => x.clone(),
        };
        x.degree_component(TOP_DEGREE)
    }

    /// Both sides at the given constants, degree-12 part, constraint applied.
    pub fn sides(&self, constants: &[Rational]) -> Sides {
        assert_eq!(constants.len(), self.slots.len(), "one value per constant");
        let mut lhs = self.base.lhs.clone();
        let mut rhs = self.base.rhs.clone();
        for (s, c) in self.slots.iter().zip(constants) {
            lhs = lhs.add(&s.lhs.scale(c));
            rhs = rhs.add(&s.rhs.scale(c));
        }
        Sides { lhs: self.finish(&lhs), rhs: self.finish(&rhs) }
    }
}

/// Constants making `lhs = rhs` exactly, by Gaussian elimination over the
/// monomial coefficients.
pub fn solve_constants(stmt: &Statement) -> ConstantSolution {
    let base = stmt.sides(&vec![Rational::zero(); stmt.slots.len()]);
    let r0 = base.lhs.sub(&base.rhs);
    let cols: Vec<GradedElem> = stmt.slots.iter().map(|s| stmt.finish(&s.lhs.sub(&s.rhs))).collect();
    let mut monos: BTreeSet<Monomial> = r0.terms().map(|(m, _)| m).collect();
    for c in &cols {
        monos.extend(c.terms().map(|(m, _)| m));
    }
    let n = cols.len();
    let mut rows: Vec<Vec<Rational>> = monos
        .iter()
        .map(|m| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c.coeff(m)).collect();
            row.push(-r0.coeff(m));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return ConstantSolution::Inconsistent;
    }
    if pivots.len() < n {
        return ConstantSolution::Underdetermined;
    }
    ConstantSolution::Unique((0..n).map(|k| rows[k][n].clone()).collect())
}

fn c(s: &str) -> GradedElem {
    ch_str(s).expect("statement bundles parse")
}

fn join(bundles: &[u8], atom: &str) -> String {
    bundles.iter().map(|i| format!("{atom}{i}")).collect::<Vec<_>>().join(" + ")
}

/// `Σ_{a<b} ch W_a ch W_b`.
fn pairs(bundles: &[u8]) -> GradedElem {
    let mut acc = GradedElem::zero();
    for (k, a) in bundles.iter().enumerate() {
        for b in &bundles[k + 1..] {
            acc = acc.add(&c(&format!("W{a}")).mul(&c(&format!("W{b}"))));
        }
    }
    acc
}

const B1: &str = "tilde(TC) + tilde(XiC) - tilde(XiC)*tilde(XiC) + 2*wedge(2, tilde(XiC))";
const B2: &str = "tilde(TC) + sym(2, tilde(TC)) + tilde(TC)*tilde(XiC) - tilde(TC)*tilde(XiC)*tilde(XiC) \
    + 2*tilde(TC)*wedge(2, tilde(XiC)) + tilde(XiC) + wedge(2, tilde(XiC)) - tilde(XiC)*tilde(XiC)*tilde(XiC) \
    + 2*tilde(XiC)*wedge(2, tilde(XiC)) - 2*tilde(XiC)*wedge(3, tilde(XiC)) \
    + wedge(2, tilde(XiC))*wedge(2, tilde(XiC)) + 2*wedge(4, tilde(XiC))";
const D1: &str = "2*tilde(TC) - tilde(TC)*tilde(TC) + 2*wedge(2, tilde(TC))";
const D2: &str = "2*tilde(TC) + sym(2, tilde(TC)) + tilde(TC)*tilde(TC) - 2*tilde(TC)*tilde(TC)*tilde(TC) \
    + 4*tilde(TC)*wedge(2, tilde(TC)) + wedge(2, tilde(TC)) + wedge(2, tilde(TC))*wedge(2, tilde(TC)) \
    - 2*tilde(TC)*wedge(3, tilde(TC)) + 2*wedge(4, tilde(TC))";

/// The first and second q-terms of the twisted series entering QP and QL.
pub fn level_bundles(id: QId) -> Option<(&'static str, &'static str)> {
    match id {
        QId::QP => Some((B1, B2)),
        QId::QL => Some((D1, D2)),
        _ => None,
    }
}

fn bundles_of(id: QId) -> Vec<u8> {
    super::QSpec::new(id).bundles
}

/// The elimination that realizes each lemma's hypothesis.
pub fn lemma_constraint(id: QId) -> (Generator, GradedElem) {
    let y = |i| GradedElem::gen(Generator::PY(2, i));
    match id {
        QId::Q1 => (Generator::PY(2, 1), GradedElem::zero()),
        QId::Q2 => (Generator::PY(2, 2), y(1).neg()),
        QId::Q3 => (Generator::PY(2, 3), y(1).add(&y(2)).neg()),
        QId::QP => {
            let u2 = GradedElem::gen(Generator::U).pow(2).scale(&int(3));
            (Generator::PX(2), u2.sub(&c2_class(&[1, 2, 3])))
        }
        QId::QL => (Generator::PX(2), c2_class(&[1, 2, 3]).scale(&rat(1, 2))),
    }
}

fn slot(printed: i64, lhs: GradedElem, rhs: GradedElem) -> Slot {
    Slot { printed, lhs, rhs }
}

/// Theorem statement (A = exponent class, E = e^{A/24}).
fn theorem(id: QId) -> Statement {
    let spec = super::QSpec::new(id);
    let bs = &spec.bundles;
    let a = spec.exponent.clone();
    let e = a.scale(&rat(1, 24)).exp_nilpotent().expect("nilpotent");
    let ahat = char_form(CharForm::AHat);
    let delta = ch_delta();
    let zero = GradedElem::zero;
    let sw = join(bs, "W");
    let swbar = join(bs, "Wbar");
    let ea = e.mul(&ahat);
    let half_term = |k: &GradedElem| a.add(&GradedElem::from_int(-6)).mul(&a).mul(k).scale(&rat(1, 2));
    match id {
        QId::Q1 | QId::Q2 => {
            let (c0, c1) = if id == QId::Q1 { (256, 32768) } else { (8, 1024) };
            let lhs = ea.mul(&a).mul(&delta.add(&GradedElem::from_int(128)));
            let rhs = ea.mul(&delta.mul(&c(&format!("2*tilde(TC) + {sw}"))).add(&c(&format!(
                "128*tilde(TC) + 128*({sw}) + 128*wedge(2, tilde(TC))"
            ))));
            Statement {
                base: Sides { lhs, rhs },
                slots: vec![slot(c0, zero(), ea.mul(&delta)), slot(c1, zero(), ea.clone())],
                constraint: None,
            }
        }
        QId::Q3 => {
            let lhs = ea.mul(
                &a.mul(&delta)
                    .mul(&c(&format!("-2*tilde(TC) - ({sw})")))
                    .add(&a.mul(&c(&format!("-128*tilde(TC) - 128*({sw}) - 128*wedge(2, tilde(TC))"))))
                    .add(&half_term(&delta.add(&GradedElem::from_int(128)))),
            );
            let rhs = ea.mul(
                &delta
                    .mul(&c(&format!(
                        "-504*({sw}) - ({swbar}) - 1058*tilde(TC) - tilde(TC)*tilde(TC) - sym(2, tilde(TC)) \
                         - wedge(2, tilde(TC))"
                    )))
                    .sub(&delta.mul(&c("2*tilde(TC)")).mul(&c(&format!("-24 + {sw}"))))
                    .sub(&delta.mul(&pairs(bs)))
                    .add(&c(&format!("-67584*tilde(TC) - 67584*({sw}) - 67584*wedge(2, tilde(TC))"))),
            );
            Statement {
                base: Sides { lhs, rhs },
                slots: vec![
                    slot(504, ea.mul(&a).mul(&delta).neg(), zero()),
                    slot(64512, ea.mul(&a).neg(), zero()),
                    slot(73764, zero(), ea.mul(&delta).neg()),
                    slot(9409536, zero(), ea.neg()),
                ],
                constraint: None,
            }
        }
        QId::QP | QId::QL => {
            let k = match id {
                QId::QP => ahat.mul(&char_form(CharForm::CoshHalfC)),
                _ => char_form(CharForm::LHat),
            };
            let (l1, l2) = level_bundles(id).expect("twisted series");
            let ek = e.mul(&k);
            let lhs = e.mul(&half_term(&k)).sub(&ek.mul(&a).mul(&c(&format!("{l1} + {sw}"))));
            let rhs = ek.mul(
                &c(&format!("-504*({l1}) - ({l2}) - 504*({sw}) - ({swbar})"))
                    .sub(&c(l1).mul(&c(&sw)))
                    .sub(&pairs(bs)),
            );
            Statement {
                base: Sides { lhs, rhs },
                slots: vec![slot(504, ek.mul(&a).neg(), zero()), slot(73764, zero(), ek.neg())],
                constraint: None,
            }
        }
    }
}

/// Lemma statement: the printed identity under its hypothesis.
fn lemma(id: QId) -> Statement {
    let bs = bundles_of(id);
    let ahat = char_form(CharForm::AHat);
    let delta = ch_delta();
    let zero = GradedElem::zero;
    let sw = join(&bs, "W");
    let swbar = join(&bs, "Wbar");
    let (base, slots) = match id {
        QId::Q1 | QId::Q2 => {
            let (c0, c1) = if id == QId::Q1 { (256, 32768) } else { (8, 1024) };
            let ad = ahat.mul(&delta);
            let lhs = ad.mul(&c(&format!("2*tilde(TC) + {sw}"))).neg();
            let rhs = ahat.mul(&c(&format!("128*tilde(TC) + 128*({sw}) + 128*wedge(2, tilde(TC))")));
            (Sides { lhs, rhs }, vec![slot(c0, ad.neg(), zero()), slot(c1, zero(), ahat.clone())])
        }
        QId::Q3 => {
            let lhs = ahat.mul(&c(&format!("67584*tilde(TC) + 67584*({sw}) + 67584*wedge(2, tilde(TC))")));
            let rhs = ahat.mul(
                &delta
                    .mul(&c(&format!(
                        "-504*({sw}) - ({swbar}) - 1058*tilde(TC) - tilde(TC)*tilde(TC) - sym(2, tilde(TC)) \
                         - wedge(2, tilde(TC))"
                    )))
                    .sub(&delta.mul(&c("2*tilde(TC)")).mul(&c(&format!("-24 + {sw}"))))
                    .sub(&delta.mul(&pairs(&bs))),
            );
            (
                Sides { lhs, rhs },
                vec![slot(73764, zero(), ahat.mul(&delta).neg()), slot(9409536, ahat.clone(), zero())],
            )
        }
        QId::QP | QId::QL => {
            let k = match id {
                QId::QP => ahat.mul(&char_form(CharForm::CoshHalfC)),
                _ => char_form(CharForm::LHat),
            };
            let (l1, l2) = level_bundles(id).expect("twisted series");
            let rhs = k.mul(
                &c(&format!("-504*({l1}) - ({l2}) - 504*({sw}) - ({swbar})"))
                    .sub(&c(l1).mul(&c(&sw)))
                    .sub(&pairs(&bs)),
            );
            (Sides { lhs: zero(), rhs }, vec![slot(73764, k, zero())])
        }
    };
    Statement { base, slots, constraint: Some(lemma_constraint(id)) }
}

/// The printed identity attached to a series: the theorem (`lemma = false`)
/// or its constrained corollary.
pub fn statement(id: QId, lemma_form: bool) -> Statement {
    if lemma_form {
        lemma(id)
    } else {
        theorem(id)
    }
}

/// `128·ch(T̃ + S²T̃ + T̃⊗T̃ + T̃⊗∧²T̃ + ∧⁴T̃ + (T̃ + ∧²T̃)⊗(ΣW − 24) + ΣW̄ − 24ΣW) + 128·Σ ch W_a ch W_b`:
/// the q² part of `2⁶ ch(Θ2 + Θ3) · φ^{24} Π ch V` without its constant `128·252`.
fn omitted_q2_terms(bundles: &[u8]) -> GradedElem {
    let sw = join(bundles, "W");
    let swbar = join(bundles, "Wbar");
    c(&format!(
        "tilde(TC) + sym(2, tilde(TC)) + tilde(TC)*tilde(TC) + tilde(TC)*wedge(2, tilde(TC)) + wedge(4, tilde(TC)) \
         + (tilde(TC) + wedge(2, tilde(TC)))*({sw} - 24) + {swbar} - 24*({sw})"
    ))
    .add(&pairs(bundles))
    .scale(&int(128))
}

/// The three-bundle identities with the terms of [`omitted_q2_terms`] put back.
/// `None` for the other series, whose printed statements are complete.
pub fn restored_statement(id: QId, lemma_form: bool) -> Option<Statement> {
    if id != QId::Q3 {
        return None;
    }
    let mut stmt = statement(id, lemma_form);
    let extra = omitted_q2_terms(&bundles_of(id)).mul(&char_form(CharForm::AHat));
    if lemma_form {
        stmt.base.lhs = stmt.base.lhs.add(&extra);
    } else {
        let a = super::QSpec::new(id).exponent;
        let e = a.scale(&rat(1, 24)).exp_nilpotent().expect("nilpotent");
        stmt.base.rhs = stmt.base.rhs.sub(&extra.mul(&e));
    }
    Some(stmt)
}
