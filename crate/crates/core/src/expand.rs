//! Named q-series and their text rendering.

use num_traits::{One, Signed, Zero};

use crate::bundles::{e8_ch_v, witten_series, WittenKind};
use crate::ring::{format_rational, rat, Rational};
use crate::series::QxSeries;
use crate::symfunc::GradedElem;
use crate::theta::{eisenstein, phi_power};

/// Names accepted by [`named_series`].
pub const SERIES_NAMES: [&str; 12] =
    ["E2", "E4", "E6", "phi8", "Theta1", "Theta2", "Theta3", "Theta", "Phi", "V1", "V2", "V3"];

fn lift(s: &QxSeries<Rational>) -> QxSeries<GradedElem> {
    s.map(|c| GradedElem::constant(c.clone()))
}

/// A named series to `order` powers of `u = q^{1/2}`.
pub fn named_series(name: &str, order: usize) -> Option<QxSeries<GradedElem>> {
    let witten = |k| Some(witten_series(k, order).series);
    match name {
        "E2" | "E4" | "E6" => Some(lift(&eisenstein(name[1..].parse().ok()?, order).ok()?)),
        "phi8" => Some(lift(&phi_power(8, order))),
        "Theta1" => witten(WittenKind::Theta1),
        "Theta2" => witten(WittenKind::Theta2),
        "Theta3" => witten(WittenKind::Theta3),
        "Theta" => witten(WittenKind::Theta),
        "Phi" => witten(WittenKind::Phi),
        "V1" | "V2" | "V3" => Some(e8_ch_v(name[1..].parse().ok()?, order)),
        _ => None,
    }
}

fn power(p: &Rational) -> String {
    if p.is_zero() {
        String::new()
    } else if p.is_one() {
        "q".into()
    } else if p.is_integer() {
        format!("q^{p}")
    } else {
        format!("q^({})", format_rational(p))
    }
}

/// `1 + 240q + 2160q^2`, with non-scalar coefficients in parentheses.
///
/// Only powers of `q` below `q_terms` are printed.
pub fn format_series(s: &QxSeries<GradedElem>, q_terms: usize) -> String {
    let shift = rat(s.eighth_exponent(), 8);
    let mut out = String::new();
    for k in 0..s.order().min(2 * q_terms) {
        let c = s.coeff(k);
        if c.is_zero() {
            continue;
        }
        let p = power(&rat(k as i64, 2));
        let first = out.is_empty();
        if c.len() == 1 && c.max_degree() == 0 {
            let v = c.scalar();
            let sign = match (first, v.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = v.abs();
            let body = if mag.is_one() && !p.is_empty() { String::new() } else { format_rational(&mag) };
            out.push_str(&format!("{sign}{body}{p}"));
        } else {
            let sep = if first { "" } else { " + " };
            let body = if p.is_empty() { c.to_string() } else { format!("({c}){p}") };
            out.push_str(&format!("{sep}{body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    if shift.is_zero() {
        out
    } else {
        format!("{} * ({out})", power(&shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use crate::symfunc::Generator;

    fn scalar(v: &[i64]) -> QxSeries<GradedElem> {
        QxSeries::from_coeffs(0, v.iter().map(|&x| GradedElem::from_int(x)).collect())
    }

    #[test]
    fn scalar_series() {
        assert_eq!(format_series(&scalar(&[1, 0, 240, 0, 2160]), 3), "1 + 240q + 2160q^2");
        assert_eq!(format_series(&scalar(&[1, -1, 1]), 2), "1 - q^(1/2) + q");
        assert_eq!(format_series(&scalar(&[0, 0, -8]), 2), "-8q");
        assert_eq!(format_series(&scalar(&[0, 0]), 2), "0");
    }

    #[test]
    fn graded_coefficients_and_prefactor() {
        let x = GradedElem::gen(Generator::PX(2)).add(&GradedElem::from_int(2));
        let s = QxSeries::from_coeffs(1, vec![GradedElem::constant(int(2)), GradedElem::zero(), x]);
        assert_eq!(format_series(&s, 2), "q^(1/8) * (2 + (2 + pX2)q)");
    }

    #[test]
    fn every_name_resolves() {
        for n in SERIES_NAMES {
            assert!(named_series(n, 4).is_some(), "{n}");
        }
        assert!(named_series("V4", 4).is_none());
    }
}
