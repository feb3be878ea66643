//! σ-diagonal metrics and their curvature, computed exactly as Laurent
//! polynomials in the metric coefficients.

mod connection;
mod consts;
mod flatness;
mod metric;
mod ricci;
mod riemann;
mod scnice;

pub use connection::{commutator_basis, j_operator, levi_civita, Connection};
pub use flatness::{
    flat_under, flatness_analysis, nonflat_criteria, nonflat_criteria_at, CriteriaWitness,
    Criterion, Flatness,
};
pub use metric::{rational_vector, unit_vector, zero_vector, SigmaMetric, Vector};
pub use ricci::{ricci_from_riemann, ricci_tensor, RicciRecord, SymTensor2};
pub use riemann::{
    riemann_tensor, sectional_component, Component, ComponentRecord, CurvatureTensor, Route,
};
pub use scnice::{sectional_nice, sectional_nice_with};
