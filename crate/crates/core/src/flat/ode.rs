//! The radial model ODE −u'' − (n−1)/r·u' + ν/r²·u = 0 and its solutions
//! r^{ξ±(ν)} (and r^{−(n−2)/2}·log r at the resonance), checked by exact
//! differentiation of log-monomials and by central differences.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::Result;
use crate::numeric::{q, Complex, Real, Scalar, Q};
use crate::spectral::{is_resonant, resonance_pair, xi_pair, Dimension, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdeBranch {
    Plus,
    Minus,
    /// r^{ξ₊(ν)}·log r; a solution only at the resonance.
    Log,
}

impl OdeBranch {
    pub fn label(self) -> &'static str {
        match self {
            OdeBranch::Plus => "plus",
            OdeBranch::Minus => "minus",
            OdeBranch::Log => "log",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OdeCase {
    pub n: u32,
    pub nu: Q,
    pub branch: OdeBranch,
}

/// Σ c_{j,k}·r^{a+j}·(log r)^k over a fixed, possibly complex, base exponent a.
#[derive(Clone, Debug)]
struct LogSeries {
    base: Complex,
    terms: BTreeMap<(i64, u32), Complex>,
}

impl LogSeries {
    fn monomial(base: Complex, log_power: u32) -> Self {
        LogSeries { base, terms: BTreeMap::from([((0, log_power), Complex::real(Real::int(1)))]) }
    }

    fn push(&mut self, key: (i64, u32), c: Complex) {
        let e = self.terms.entry(key).or_insert_with(|| Complex::real(Real::zero()));
        *e = e.add(&c);
    }

    fn derivative(&self) -> Self {
        let mut out = LogSeries { base: self.base.clone(), terms: BTreeMap::new() };
        for (&(j, k), c) in &self.terms {
            out.push((j - 1, k), c.mul(&self.base.add_q(&q(j))));
            if k > 0 {
                out.push((j - 1, k - 1), c.scale(&q(k as i64)));
            }
        }
        out
    }

    fn shift(&self, by: i64) -> Self {
        LogSeries { base: self.base.clone(), terms: self.terms.iter().map(|(&(j, k), c)| ((j + by, k), c.clone())).collect() }
    }

    fn scale(&self, x: &Q) -> Self {
        LogSeries { base: self.base.clone(), terms: self.terms.iter().map(|(k, c)| (*k, c.scale(x))).collect() }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(*k, c.clone());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OdeReport {
    pub case: OdeCase,
    pub exponent: Weight,
    /// Every coefficient of the residual is exactly zero.
    pub exact_zero: bool,
    /// The nonzero residual coefficients, rendered.
    pub residual_terms: Vec<String>,
}

fn solution_exponent(n: Dimension, nu: &Q, branch: OdeBranch) -> Weight {
    let nu_s = Scalar::Exact(nu.clone());
    match branch {
        OdeBranch::Plus => xi_pair(n, &nu_s).0,
        OdeBranch::Minus => xi_pair(n, &nu_s).1,
        OdeBranch::Log if is_resonant(n, &nu_s, 0.0) => resonance_pair(n).1,
        OdeBranch::Log => xi_pair(n, &nu_s).0.with_log(),
    }
}

/// Exact residual of the radial ODE on the chosen solution.
pub fn ode_residual(n: u32, nu: &Q, branch: OdeBranch) -> Result<OdeReport> {
    let dim = Dimension::new(n)?;
    let w = solution_exponent(dim, nu, branch);
    let u = LogSeries::monomial(w.value(), w.log_factor as u32);
    let du = u.derivative();
    let ddu = du.derivative();
    // −u'' − (n−1) r^{−1} u' + ν r^{−2} u
    let residual = ddu
        .scale(&-q(1))
        .add(&du.shift(-1).scale(&-q(dim.as_i64() - 1)))
        .add(&u.shift(-2).scale(nu));
    let mut exact_zero = true;
    let mut residual_terms = Vec::new();
    for (&(j, k), c) in &residual.terms {
        if !c.is_exact() {
            exact_zero = false;
        }
        if !c.is_zero() {
            exact_zero = false;
            residual_terms.push(format!("({c})·r^(ξ{j:+})·log^{k} r"));
        }
    }
    Ok(OdeReport { case: OdeCase { n, nu: nu.clone(), branch }, exponent: w, exact_zero, residual_terms })
}

fn eval_solution(w: &Weight, r: f64) -> Complex64 {
    let a = Complex64::new(w.re.to_f64(), w.im.to_f64());
    let lr = r.ln();
    let base = (a * lr).exp();
    if w.log_factor {
        base * lr
    } else {
        base
    }
}

/// |−u'' − (n−1)/r·u' + ν/r²·u| with second-order central differences.
pub fn ode_residual_fd(n: u32, nu: &Q, branch: OdeBranch, r: f64, h: f64) -> Result<f64> {
    let dim = Dimension::new(n)?;
    let w = solution_exponent(dim, nu, branch);
    let u = |x: f64| eval_solution(&w, x);
    let d1 = (u(r + h) - u(r - h)) / (2.0 * h);
    let d2 = (u(r + h) - u(r) * 2.0 + u(r - h)) / (h * h);
    let nu = crate::numeric::q_to_f64(nu);
    let res = -d2 - d1 * ((n as f64 - 1.0) / r) + u(r) * (nu / (r * r));
    Ok(res.norm())
}

/// 50 cases: n ∈ {3,4,5,6,10}, ν at the resonance (plain and log branch),
/// below it (complex roots), at 0, at 7/3 (irrational roots) and at 2n.
pub fn ode_grid() -> Vec<OdeCase> {
    let mut out = Vec::new();
    for n in [3u32, 4, 5, 6, 10] {
        let res = Dimension::new(n).unwrap().resonance_value();
        let values = [res.clone(), res - q(1), q(0), Q::new(7.into(), 3.into()), q(2 * n as i64)];
        for (i, nu) in values.into_iter().enumerate() {
            let branches = if i == 0 { [OdeBranch::Plus, OdeBranch::Log] } else { [OdeBranch::Plus, OdeBranch::Minus] };
            for branch in branches {
                out.push(OdeCase { n, nu: nu.clone(), branch });
            }
        }
    }
    out
}
