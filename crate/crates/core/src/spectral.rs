//! Indicial roots ξ±(ν) of the conical operator, their inverse η, duality and
//! the resonance.
//!
//! With h = (n−2)/2 and D = h² + ν:
//!   ξ±(ν) = −h ± √D,  √D = i√|D| when D < 0,
//!   η(x)  = x(x + n − 2),
//! so η(ξ±(ν)) = ν, ξ₊ + ξ₋ = 2 − n, ξ₊ξ₋ = −ν, and x ↦ 2 − n − x preserves η.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{q, qf, Complex, Real, Scalar, Surd, DEFAULT_EPSILON, Q};

/// Cone dimension n; the link has dimension n − 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { n, min: 3 });
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }

    /// (n−2)/2
    pub fn half_gap(self) -> Q {
        qf(self.as_i64() - 2, 2)
    }

    /// −(n−2)²/4, the bottom of the real-root range.
    pub fn resonance_value(self) -> Q {
        let h = self.half_gap();
        -(&h * &h)
    }

    /// The tangential □_L machinery needs a link of dimension ≥ 3.
    pub fn require_tangential(self) -> Result<()> {
        if self.0 < 4 {
            return Err(Error::DimensionTooSmall { n: self.0, min: 4 });
        }
        Ok(())
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An indicial exponent, possibly complex, with the resonance log flag.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    pub re: Real,
    pub im: Real,
    pub log_factor: bool,
}

impl Weight {
    pub fn real(re: Real) -> Self {
        Weight { re, im: Real::zero(), log_factor: false }
    }

    pub fn int(n: i64) -> Self {
        Self::real(Real::int(n))
    }

    pub fn rational(x: Q) -> Self {
        Self::real(Real::rational(x))
    }

    pub fn value(&self) -> Complex {
        Complex { re: self.re.clone(), im: self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    /// `self + k`; a shifted weight is never the resonance log solution.
    pub fn shift(&self, k: i64) -> Weight {
        Weight { re: self.re.add_q(&q(k)), im: self.im.clone(), log_factor: false }
    }

    pub fn with_log(mut self) -> Weight {
        self.log_factor = true;
        self
    }

    /// Same exponent (ignoring the log flag).
    pub fn same_exponent(&self, other: &Weight, eps: f64) -> bool {
        self.re.cmp_tol(&other.re, eps) == Ordering::Equal
            && self.im.cmp_tol(&other.im, eps) == Ordering::Equal
    }

    /// Lexicographic order on (re, im, log) used for sorting root tables.
    pub fn cmp_lex(&self, other: &Weight) -> Ordering {
        self.re
            .cmp_tol(&other.re, 0.0)
            .then_with(|| self.im.cmp_tol(&other.im, 0.0))
            .then(self.log_factor.cmp(&other.log_factor))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())?;
        if self.log_factor {
            f.write_str(" (log)")?;
        }
        Ok(())
    }
}

/// (n−2)²/4 + ν
pub fn discriminant(n: Dimension, nu: &Scalar) -> Scalar {
    let h = n.half_gap();
    nu.add_q(&(&h * &h))
}

/// Whether ν sits at the resonance −(n−2)²/4; on the float path within `eps`.
pub fn is_resonant(n: Dimension, nu: &Scalar, eps: f64) -> bool {
    match discriminant(n, nu) {
        Scalar::Exact(d) => d.is_zero(),
        Scalar::Float(d) => d.abs() <= eps,
    }
}

/// The two roots of η(x) = ν, plus a flag telling whether a float discriminant
/// was snapped to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct XiPair {
    pub plus: Weight,
    pub minus: Weight,
    pub coerced: bool,
}

pub fn xi_pair(n: Dimension, nu: &Scalar) -> (Weight, Weight) {
    let p = xi_pair_eps(n, nu, DEFAULT_EPSILON);
    (p.plus, p.minus)
}

pub fn xi_plus(n: Dimension, nu: &Scalar) -> Weight {
    xi_pair(n, nu).0
}

pub fn xi_minus(n: Dimension, nu: &Scalar) -> Weight {
    xi_pair(n, nu).1
}

pub fn xi_pair_eps(n: Dimension, nu: &Scalar, eps: f64) -> XiPair {
    let h = n.half_gap();
    match discriminant(n, nu) {
        Scalar::Exact(d) => {
            let centre = Real::rational(-h);
            if d.is_negative() {
                let im = Real::Exact(Surd::sqrt(&-d));
                XiPair {
                    plus: Weight { re: centre.clone(), im: im.clone(), log_factor: false },
                    minus: Weight { re: centre, im: -&im, log_factor: false },
                    coerced: false,
                }
            } else {
                let root = Real::Exact(Surd::sqrt(&d));
                XiPair {
                    plus: Weight::real(&centre + &root),
                    minus: Weight::real(&centre - &root),
                    coerced: false,
                }
            }
        }
        Scalar::Float(d) => {
            let c = -crate::numeric::q_to_f64(&h);
            let coerced = d != 0.0 && d.abs() <= eps;
            let d = if coerced { 0.0 } else { d };
            if d < 0.0 {
                let s = (-d).sqrt();
                XiPair {
                    plus: Weight { re: Real::Float(c), im: Real::Float(s), log_factor: false },
                    minus: Weight { re: Real::Float(c), im: Real::Float(-s), log_factor: false },
                    coerced,
                }
            } else {
                let s = d.sqrt();
                XiPair {
                    plus: Weight::real(Real::Float(c + s)),
                    minus: Weight::real(Real::Float(c - s)),
                    coerced,
                }
            }
        }
    }
}

/// η(x) = x(x + n − 2) on ℂ.
pub fn eta(n: Dimension, x: &Complex) -> Complex {
    x.mul(&x.add_q(&q(n.as_i64() - 2)))
}

pub fn eta_weight(n: Dimension, w: &Weight) -> Complex {
    eta(n, &w.value())
}

/// η on a real rational argument.
pub fn eta_q(n: Dimension, x: &Q) -> Q {
    x * (x + q(n.as_i64() - 2))
}

/// x ↦ 2 − n − x; fixes −(n−2)/2 and swaps ξ₊ ↔ ξ₋.
pub fn dual_weight(n: Dimension, x: &Weight) -> Weight {
    Weight {
        re: (-&x.re).add_q(&q(2 - n.as_i64())),
        im: -&x.im,
        log_factor: x.log_factor,
    }
}

/// The double root at ν = −(n−2)²/4: r^{−(n−2)/2} and r^{−(n−2)/2}·log r.
pub fn resonance_pair(n: Dimension) -> (Weight, Weight) {
    let w = Weight::rational(-n.half_gap());
    (w.clone(), w.with_log())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(dim(4), &Scalar::int(8)), Scalar::int(9));
        assert_eq!(discriminant(dim(10), &Scalar::int(-16)), Scalar::int(0));
        assert_eq!(discriminant(dim(3), &Scalar::int(0)), Scalar::ratio(1, 4));
    }

    #[test]
    fn xi_examples() {
        let (p, m) = xi_pair(dim(4), &Scalar::int(0));
        assert_eq!((p, m), (Weight::int(0), Weight::int(-2)));
        let (p, m) = xi_pair(dim(4), &Scalar::int(8));
        assert_eq!((p, m), (Weight::int(2), Weight::int(-4)));
        let (p, m) = xi_pair(dim(10), &Scalar::int(-20));
        assert_eq!(p.re, Real::int(-4));
        assert_eq!(p.im, Real::int(2));
        assert_eq!(m.im, Real::int(-2));
    }

    #[test]
    fn eta_examples() {
        let n = dim(4);
        assert_eq!(eta(n, &Complex::real(Real::int(2))), Complex::real(Real::int(8)));
        assert_eq!(eta(n, &Complex::real(Real::int(-4))), Complex::real(Real::int(8)));
        assert_eq!(eta(dim(7), &Complex::real(Real::int(0))), Complex::real(Real::int(0)));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_weight(dim(4), &Weight::int(0)), Weight::int(-2));
        assert_eq!(dual_weight(dim(10), &Weight::int(-4)), Weight::int(-4));
        assert_eq!(dual_weight(dim(4), &Weight::int(2)), Weight::int(-4));
    }

    #[test]
    fn resonance_examples() {
        for (n, c) in [(4, -1), (10, -4), (6, -2)] {
            let (a, b) = resonance_pair(dim(n));
            assert_eq!(a, Weight::int(c));
            assert_eq!(b, Weight::int(c).with_log());
        }
    }

    #[test]
    fn irrational_roots_stay_exact() {
        let n = dim(5);
        let (p, m) = xi_pair(n, &Scalar::int(1));
        assert!(p.is_exact() && m.is_exact());
        assert_eq!(eta_weight(n, &p), Complex::real(Real::int(1)));
        assert_eq!(eta_weight(n, &m), Complex::real(Real::int(1)));
    }

    #[test]
    fn float_path_snaps_near_resonance() {
        let n = dim(4);
        let p = xi_pair_eps(n, &Scalar::Float(-1.0 + 1e-14), 1e-12);
        assert!(p.coerced);
        assert_eq!(p.plus.re, Real::Float(-1.0));
        assert!(is_resonant(n, &Scalar::Float(-1.0 - 1e-13), 1e-12));
        assert!(!is_resonant(n, &Scalar::Float(-1.0 - 1e-6), 1e-12));
    }

    #[test]
    fn too_small_dimension() {
        assert!(matches!(Dimension::new(2), Err(Error::DimensionTooSmall { .. })));
        assert!(dim(3).require_tangential().is_err());
    }
}
