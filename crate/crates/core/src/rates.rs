//! Decay rates E±, ξ±, resonance-dominance, linear stability, end orders,
//! the decay bootstrap and the ADM-mass verdict.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::indicial::{box_l_spectrum, indicial_set_essential, Branch, Family, IndicialRoot};
use crate::link::{EndKind, LinkSpectrum, ListKind, Mode};
use crate::numeric::{fmt_q, q, Complex, Real, Scalar, Q};
use crate::spectral::{eta, is_resonant, Dimension};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Which part of the definition put a value into E±.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RatePart {
    /// ξ₊(κ) for κ > 0 or ξ₊(λ) for λ > 0.
    PositiveXiPlus,
    /// −ξ₋(κ) or −ξ₋(λ).
    NegatedXiMinus,
    /// −ξ₊(κ) for −(n−2)²/4 ≤ κ < 0.
    WindowXiPlus,
    /// (n−2)/2 for κ < −(n−2)²/4.
    BelowWindow,
}

impl RatePart {
    pub fn label(self) -> &'static str {
        match self {
            RatePart::PositiveXiPlus => "xi+(nu), nu > 0",
            RatePart::NegatedXiMinus => "-xi-(nu)",
            RatePart::WindowXiPlus => "-xi+(kappa), kappa in [-(n-2)^2/4, 0)",
            RatePart::BelowWindow => "(n-2)/2, kappa < -(n-2)^2/4",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateElement {
    pub value: Real,
    pub part: RatePart,
    pub root: IndicialRoot,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateSet {
    pub side: Side,
    /// Strictly positive, ascending.
    pub elements: Vec<RateElement>,
}

impl RateSet {
    pub fn min(&self) -> Option<&RateElement> {
        self.elements.first()
    }
}

fn sort(elements: &mut [RateElement]) {
    elements.sort_by(|a, b| a.value.cmp_tol(&b.value, 0.0));
}

fn bound_only(link: &LinkSpectrum) -> bool {
    link.scalar.mode == Mode::UpperBoundSet || link.tt_einstein.mode == Mode::UpperBoundSet
}

fn eta_real(n: Dimension, x: &Real) -> Real {
    eta(n, &Complex::real(x.clone())).re
}

/// Classify κ against the window [−(n−2)²/4, 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaClass {
    BelowWindow,
    Resonant,
    InWindow,
    NonNegative,
}

pub fn classify_kappa(link: &LinkSpectrum, kappa: &Scalar) -> KappaClass {
    let res = Real::rational(link.n.resonance_value());
    if is_resonant(link.n, kappa, link.epsilon) {
        return KappaClass::Resonant;
    }
    let k = kappa.to_real();
    if k.cmp_tol(&res, link.epsilon) == Ordering::Less {
        KappaClass::BelowWindow
    } else if k.cmp_tol(&Real::zero(), link.epsilon) == Ordering::Less {
        KappaClass::InWindow
    } else {
        KappaClass::NonNegative
    }
}

/// E₊ = Re(E) ∩ (0, ∞), certified against the completeness thresholds.
pub fn e_plus_set(link: &LinkSpectrum) -> Result<RateSet> {
    let mut elements: Vec<RateElement> = indicial_set_essential(link)?
        .into_iter()
        .filter(|r| r.weight.re.cmp_tol(&Real::zero(), link.epsilon) == Ordering::Greater)
        .map(|r| RateElement { value: r.weight.re.clone(), part: RatePart::PositiveXiPlus, root: r })
        .collect();
    sort(&mut elements);
    if let Some(min) = elements.first() {
        // Any unlisted ν ≥ η(min) has ξ₊(ν) ≥ min.
        let threshold = eta_real(link.n, &min.value);
        link.require(ListKind::TtEinstein, &threshold)?;
        link.require(ListKind::Scalar, &threshold)?;
    }
    Ok(RateSet { side: Side::Plus, elements })
}

/// E₋ = Re(−E) ∩ (0, ∞) as the three-part union.
pub fn e_minus_set(link: &LinkSpectrum) -> Result<RateSet> {
    let half = Real::rational(link.n.half_gap());
    let mut elements = Vec::new();
    for r in indicial_set_essential(link)? {
        let neg = -&r.weight.re;
        let part = match (r.family, r.branch) {
            (Family::TtKappa, _) if !r.weight.is_real() => {
                // Both complex roots share the real part; record it once.
                if r.branch == Branch::Plus {
                    continue;
                }
                RatePart::BelowWindow
            }
            (_, Branch::Minus) => RatePart::NegatedXiMinus,
            (Family::TtKappa, Branch::Plus) => match classify_kappa(link, &r.source_value) {
                KappaClass::InWindow | KappaClass::Resonant => RatePart::WindowXiPlus,
                _ => continue,
            },
            _ => continue,
        };
        let value = if part == RatePart::BelowWindow { half.clone() } else { neg };
        if value.cmp_tol(&Real::zero(), link.epsilon) == Ordering::Greater {
            elements.push(RateElement { value, part, root: r });
        }
    }
    sort(&mut elements);
    // All negative κ must be listed; beyond that, unlisted ν ≥ η(−min) give −ξ₋(ν) ≥ min.
    let threshold = match elements.first() {
        Some(min) => {
            let t = eta_real(link.n, &-&min.value);
            if t.cmp_tol(&Real::zero(), 0.0) == Ordering::Less {
                Real::zero()
            } else {
                t
            }
        }
        None => Real::zero(),
    };
    link.require(ListKind::TtEinstein, &threshold)?;
    link.require(ListKind::Scalar, &threshold)?;
    Ok(RateSet { side: Side::Minus, elements })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rates {
    pub xi_plus: RateElement,
    pub xi_minus: RateElement,
}

/// ξ₊ = min E₊, ξ₋ = min E₋.
pub fn xi_rates(link: &LinkSpectrum) -> Result<Rates> {
    let plus = e_plus_set(link)?;
    let minus = e_minus_set(link)?;
    Ok(Rates {
        xi_plus: plus.min().cloned().ok_or(Error::EmptyRateSet { side: "+" })?,
        xi_minus: minus.min().cloned().ok_or(Error::EmptyRateSet { side: "-" })?,
    })
}

/// The only κ in [−(n−2)²/4, 0) is the resonance value itself.
pub fn is_resonance_dominated(link: &LinkSpectrum) -> Result<bool> {
    link.require(ListKind::TtEinstein, &Real::zero())?;
    let mut resonant = false;
    for k in link.tt_einstein.values() {
        match classify_kappa(link, k) {
            KappaClass::Resonant => resonant = true,
            KappaClass::InWindow => return Ok(false),
            _ => {}
        }
    }
    Ok(resonant)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stability {
    Stable {
        /// Some κ sits exactly on −(n−2)²/4.
        boundary: bool,
        warnings: Vec<String>,
    },
    Unstable {
        witness_index: usize,
        witness: Scalar,
        warnings: Vec<String>,
    },
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable { .. })
    }

    pub fn warnings(&self) -> &[String] {
        match self {
            Stability::Stable { warnings, .. } | Stability::Unstable { warnings, .. } => warnings,
        }
    }
}

/// Stable iff every κ ≥ −(n−2)²/4.
pub fn linear_stability(link: &LinkSpectrum) -> Result<Stability> {
    link.require(ListKind::TtEinstein, &Real::zero())?;
    let mut warnings = Vec::new();
    let res = Real::rational(link.n.resonance_value());
    if link.n.require_tangential().is_ok() {
        for t in box_l_spectrum(link)? {
            if t.dropped.is_some() || t.family == Family::TtKappa {
                continue;
            }
            let below = t.value.cmp_tol(&res, link.epsilon) == Ordering::Less;
            let negative = t.value.cmp_tol(&Real::zero(), link.epsilon) == Ordering::Less;
            if below || negative {
                warnings.push(format!(
                    "tangential value {} from {} #{} lies {}",
                    t.value,
                    t.family,
                    t.source_index,
                    if below { "below -(n-2)^2/4" } else { "in [-(n-2)^2/4, 0)" }
                ));
            }
        }
    }
    let mut boundary = false;
    for (i, k) in link.tt_einstein.values().enumerate() {
        match classify_kappa(link, k) {
            KappaClass::BelowWindow => {
                return Ok(Stability::Unstable { witness_index: i + 1, witness: k.clone(), warnings })
            }
            KappaClass::Resonant => boundary = true,
            _ => {}
        }
    }
    Ok(Stability::Stable { boundary, warnings })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndOrderReport {
    pub end_kind: EndKind,
    pub order: Real,
    /// Logarithmic (weak) order; AC ends only.
    pub weak: bool,
    pub witness: IndicialRoot,
    /// Computed from upper-bound-set data: a lower bound on the order.
    pub bound_only: bool,
}

impl fmt::Display for EndOrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weak {
            write!(f, "{}: weakly of order {} (log)", self.end_kind, self.order)?;
            if self.bound_only {
                f.write_str(" [lower bound]")?;
            }
            Ok(())
        } else {
            let op = if self.bound_only { "≥" } else { "=" };
            write!(f, "{} order {} {}", self.end_kind, op, self.order)
        }
    }
}

/// Order of an AC end (ξ₋, or weakly (n−2)/2 when resonance-dominated) or a CS end (ξ₊).
pub fn end_order(link: &LinkSpectrum, kind: EndKind) -> Result<EndOrderReport> {
    match kind {
        EndKind::CS => {
            let set = e_plus_set(link)?;
            let min = set.min().ok_or(Error::EmptyRateSet { side: "+" })?;
            Ok(EndOrderReport {
                end_kind: kind,
                order: min.value.clone(),
                weak: false,
                witness: min.root.clone(),
                bound_only: bound_only(link),
            })
        }
        EndKind::AC => {
            if is_resonance_dominated(link)? {
                let set = e_minus_set(link)?;
                let witness = set
                    .elements
                    .iter()
                    .find(|e| e.root.weight.log_factor)
                    .or_else(|| set.min())
                    .ok_or(Error::EmptyRateSet { side: "-" })?;
                return Ok(EndOrderReport {
                    end_kind: kind,
                    order: Real::rational(link.n.half_gap()),
                    weak: true,
                    witness: witness.root.clone(),
                    bound_only: link.tt_einstein.mode == Mode::UpperBoundSet,
                });
            }
            let set = e_minus_set(link)?;
            let min = set.min().ok_or(Error::EmptyRateSet { side: "-" })?;
            Ok(EndOrderReport {
                end_kind: kind,
                order: min.value.clone(),
                weak: false,
                witness: min.root.clone(),
                bound_only: bound_only(link),
            })
        }
    }
}

/// α_{k+1} = 2α_k − 2ε until an iterate reaches `target`.
pub fn bootstrap_decay(alpha0: &Q, epsilon: &Q, target: &Q) -> Result<Vec<Q>> {
    if !alpha0.is_positive() || !epsilon.is_positive() {
        return Err(Error::InvariantViolation("bootstrap needs alpha0 > 0 and epsilon > 0".into()));
    }
    let two_eps = q(2) * epsilon;
    if alpha0 >= target {
        return Ok(vec![alpha0.clone()]);
    }
    if *alpha0 <= two_eps {
        return Err(Error::NonTerminating { alpha0: fmt_q(alpha0), two_eps: fmt_q(&two_eps) });
    }
    let mut out = vec![alpha0.clone()];
    let mut a = alpha0.clone();
    while a < *target {
        a = q(2) * &a - &two_eps;
        out.push(a.clone());
    }
    Ok(out)
}

/// ⌈log₂((target − 2ε)/(α₀ − 2ε))⌉ + 2, computed exactly.
pub fn bootstrap_length_bound(alpha0: &Q, epsilon: &Q, target: &Q) -> usize {
    let two_eps = q(2) * epsilon;
    let ratio = (target - &two_eps) / (alpha0 - &two_eps);
    let mut k = 0usize;
    let mut p = Q::one();
    while p < ratio {
        p *= q(2);
        k += 1;
    }
    k + 2
}

#[derive(Clone, Debug, PartialEq)]
pub enum AdmMass {
    Vanishes { reason: String },
    Unknown { reason: String },
}

pub fn adm_mass_verdict(link: &LinkSpectrum) -> Result<AdmMass> {
    link.require(ListKind::TtEinstein, &Real::zero())?;
    let eps = link.epsilon;
    let zero = Real::zero();
    let kappas: Vec<Real> = link.tt_einstein.values().map(Scalar::to_real).collect();
    if let Some(neg) = kappas.iter().find(|k| k.cmp_tol(&zero, eps) == Ordering::Less) {
        return Ok(AdmMass::Unknown {
            reason: format!("kappa = {neg} < 0 permits decay slower than r^(2-n)"),
        });
    }
    let reason = if kappas.first().is_some_and(|k| k.cmp_tol(&zero, eps) == Ordering::Equal) {
        "kappa_1 = 0: xi_- = n-2 but the leading term is transverse-traceless".to_string()
    } else {
        "all kappa > 0: xi_- > n-2".to_string()
    };
    Ok(AdmMass::Vanishes { reason })
}

/// Exact check that `Real` is a rational equal to `x`; for tests and reports.
pub fn is_rational(r: &Real, x: &Q) -> bool {
    r.as_rational().is_some_and(|v| v == x)
}
