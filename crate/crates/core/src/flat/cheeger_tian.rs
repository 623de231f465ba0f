//! The quotient ℂ²/Γ example: g = Re(z₁³) is harmonic and h = r^{−4}∇²g is a
//! componentwise harmonic tensor of homogeneity −3 whose trace-free part is
//! not divergence free.

use super::expr::{FieldExpr, RadialPoly};
use super::harmonic::complex_power;
use super::ops::{divergence, hessian, laplacian, trace, trace_free};
use crate::numeric::{q, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct CheegerTianReport {
    pub g: String,
    pub g_harmonic: bool,
    /// The variant x₁³ − 4x₁y₁², kept because it is not harmonic.
    pub printed_g_harmonic: bool,
    pub h_harmonic: bool,
    pub homogeneity: Option<Q>,
    pub trace_free: bool,
    pub tf_divergence_nonzero: bool,
    pub tf_divergence: String,
}

impl CheegerTianReport {
    pub fn passed(&self) -> bool {
        self.g_harmonic && self.h_harmonic && self.homogeneity == Some(q(-3)) && self.tf_divergence_nonzero
    }
}

/// Coordinates (x₁, y₁, x₂, y₂) on ℂ² = ℝ⁴.
pub fn cheeger_tian_example() -> CheegerTianReport {
    let n = 4;
    let g = complex_power(n, 3, 0, 1, false);
    let x = RadialPoly::x(n, 0);
    let y = RadialPoly::x(n, 1);
    let printed = &(&(&x * &x) * &x) - &(&(&x * &y) * &y).scale(&q(4));
    let g_field = FieldExpr::scalar(g.clone());
    let h = hessian(&g_field).mul_r(&q(-4));
    let tf = trace_free(&h);
    let div = divergence(&tf).reduced();
    CheegerTianReport {
        g: g.to_string(),
        g_harmonic: laplacian(&g_field).is_zero(),
        printed_g_harmonic: laplacian(&FieldExpr::scalar(printed)).is_zero(),
        h_harmonic: laplacian(&h).is_zero(),
        homogeneity: h.homogeneity(),
        trace_free: trace(&h).is_zero(),
        tf_divergence_nonzero: !div.is_zero(),
        tf_divergence: div.to_string(),
    }
}
