//! Exact arithmetic: rationals, weights, polynomials and factored linear fractions.

mod linfrac;
mod poly;
mod rational;
mod weight;

pub use linfrac::{linfrac_poly_sum, linfrac_sum_to_poly, LinFrac, PrimitiveForm};
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use weight::{pair, rho_project, Weight, XiVector};

/// Exact division `a / b` of polynomials.
pub fn poly_div_exact(a: &Poly, b: &Poly) -> crate::Result<Poly> {
    a.div_exact(b)
}
