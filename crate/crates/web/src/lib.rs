//! wasm-bindgen front end for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic can be tested natively.

use e8anomaly::bundles::{ch, parse_bundle};
use e8anomaly::expand::{format_series, named_series};
use e8anomaly::theta::{theta_numeric, transform_residual, LawId, NumericSample, ThetaKind};
use num_complex::Complex64;
use wasm_bindgen::prelude::*;

/// Largest q-order the page may request; expansions are exact and grow fast.
pub const MAX_ORDER: usize = 12;

pub fn expand_text(what: &str, order: usize) -> Result<String, String> {
    if order == 0 || order > MAX_ORDER {
        return Err(format!("order must be in 1..={MAX_ORDER}"));
    }
    let what = what.trim();
    if let Some(s) = named_series(what, 2 * order) {
        return Ok(format_series(&s, order));
    }
    let expr = parse_bundle(what).map_err(|e| e.render(what))?;
    ch(&expr).map(|c| c.to_string()).map_err(|e| e.to_string())
}

fn theta_kind(name: &str) -> Result<ThetaKind, String> {
    ThetaKind::ALL.into_iter().find(|k| k.name() == name).ok_or_else(|| format!("unknown theta function '{name}'"))
}

/// `[re, im]` of a theta function at one point.
pub fn theta_point(kind: &str, v: Complex64, tau: Complex64, n_terms: usize) -> Result<[f64; 2], String> {
    let s = NumericSample::new(v, tau, n_terms).map_err(|e| e.to_string())?;
    let z = theta_numeric(theta_kind(kind)?, &s).map_err(|e| e.to_string())?;
    Ok([z.re, z.im])
}

/// Residual of one transformation law at one point.
pub fn law_point(law: &str, v: Complex64, tau: Complex64, n_terms: usize) -> Result<f64, String> {
    let law: LawId = law.parse().map_err(|e: e8anomaly::theta::NumericError| e.to_string())?;
    let s = NumericSample::new(v, tau, n_terms).map_err(|e| e.to_string())?;
    transform_residual(law, &[s]).map(|r| r.residual).map_err(|e| e.to_string())
}

pub fn law_names() -> Vec<&'static str> {
    LawId::ALL.iter().map(|l| l.name()).collect()
}

fn js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

/// q-expansion of a named series, or `ch` of a bundle expression.
#[wasm_bindgen]
pub fn expand(what: &str, order: usize) -> Result<String, JsValue> {
    expand_text(what, order).map_err(js)
}

#[wasm_bindgen]
pub fn theta(kind: &str, v_re: f64, v_im: f64, tau_re: f64, tau_im: f64, n_terms: usize) -> Result<Vec<f64>, JsValue> {
    theta_point(kind, Complex64::new(v_re, v_im), Complex64::new(tau_re, tau_im), n_terms).map(Vec::from).map_err(js)
}

#[wasm_bindgen]
pub fn law_residual(law: &str, v_re: f64, v_im: f64, tau_re: f64, tau_im: f64, n_terms: usize) -> Result<f64, JsValue> {
    law_point(law, Complex64::new(v_re, v_im), Complex64::new(tau_re, tau_im), n_terms).map_err(js)
}

#[wasm_bindgen]
pub fn laws() -> Vec<String> {
    law_names().into_iter().map(String::from).collect()
}
