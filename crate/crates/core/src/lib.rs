//! Exact q-series and characteristic-form engine for E8 anomaly cancellation
//! identities on 12-dimensional manifolds.
//!
//! Characteristic forms are modeled as truncated polynomials in power sums of
//! formal Chern roots ([`symfunc::GradedElem`]); q-expansions are truncated
//! series in `u = q^{1/2}` ([`series::QxSeries`]). The [`anomaly`] module
//! assembles the modular-form integrands and checks each identity exactly.

pub mod anomaly;
pub mod bundles;
pub mod expand;
pub mod ring;
pub mod series;
pub mod symfunc;
pub mod theta;
