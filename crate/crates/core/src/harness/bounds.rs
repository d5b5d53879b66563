use crate::error::{check_probability, Result};

/// Closed-form bounds at one probability `p`.
///
/// `*_lower`/`*_upper` bracket the `M → ∞` limits of the expected embedding
/// dimension, genus and Frobenius number of `S(M, p)` for constant `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundsRecord {
    pub p: f64,
    pub e_lower: f64,
    pub e_upper: f64,
    pub g_lower: f64,
    pub g_upper: f64,
    pub frobenius_lower: f64,
    pub frobenius_upper: f64,
    /// `(1/p)·ln(1/p)²`, the scale of the witness prime.
    pub f_of_p: f64,
    /// `36·f(p)·log₂(6·f(p))`. Negative once `6·f(p) < 1`, i.e. for `p`
    /// close to 1.
    pub u_of_p: f64,
    /// [`frobenius_square_bound`] at `u = u_of_p`.
    pub frobenius_square_bound: f64,
}

pub fn theoretical_bounds(p: f64) -> Result<BoundsRecord> {
    check_probability(p)?;
    let p2 = p * p;
    let p3 = p2 * p;
    let p4 = p3 * p;
    let e_lower = (6.0 - 8.0 * p + 3.0 * p2) / (2.0 - 2.0 * p2 + p3);
    let e_upper = (2.0 - p2) / p;
    let gf_lower = (6.0 - 14.0 * p + 11.0 * p2 - 3.0 * p3) / (2.0 * p - 2.0 * p3 + p4);
    let g_upper = (1.0 - p) * (2.0 - p2) / p2;
    let f_upper = 2.0 * (1.0 - p) * (2.0 - p2) / p2;
    let f_of_p = f_of_p(p);
    let u = frobenius_chain_bound(p);
    Ok(BoundsRecord {
        p,
        e_lower,
        e_upper,
        g_lower: gf_lower,
        g_upper,
        frobenius_lower: gf_lower,
        frobenius_upper: f_upper,
        f_of_p,
        u_of_p: u,
        frobenius_square_bound: frobenius_square_bound(p, u),
    })
}

pub(crate) fn f_of_p(p: f64) -> f64 {
    let l = (1.0 / p).ln();
    l * l / p
}

/// `u(p) = 36·f(p)·log₂(6·f(p))`, the Frobenius bound that holds whenever the
/// Apéry event pipeline succeeds.
pub fn frobenius_chain_bound(p: f64) -> f64 {
    let f = f_of_p(p);
    36.0 * f * (6.0 * f).log2()
}

/// `K·(1/p)·ln(1/p)³` with a caller-chosen constant.
pub fn u_with_constant(p: f64, k: f64) -> f64 {
    let l = (1.0 / p).ln();
    k * l * l * l / p
}

/// `8/p⁴ + 4u/p² + u²`.
pub fn frobenius_square_bound(p: f64, u: f64) -> f64 {
    let p2 = p * p;
    8.0 / (p2 * p2) + 4.0 * u / p2 + u * u
}
