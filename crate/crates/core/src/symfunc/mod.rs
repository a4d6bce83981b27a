//! Graded characteristic-form ring and symmetrization over formal roots.

mod graded;
mod roots;

pub use graded::{basis_size, EliminateError, Generator, GradedElem, Monomial, TOP_DEGREE};
pub use roots::{
    adams, adams_series, scale_group, symmetrize_prod, symmetrize_sum, EvenRootSeries, RootGroup, RootPoly,
    SymmetrizeError, ROOT_DEGREE,
};

/// Projection onto weighted degree `d`.
pub fn degree_component(x: &GradedElem, d: usize) -> GradedElem {
    x.degree_component(d)
}

/// Substitutes `replacement` for `var`.
pub fn eliminate(x: &GradedElem, var: Generator, replacement: &GradedElem) -> Result<GradedElem, EliminateError> {
    x.eliminate(var, replacement)
}
