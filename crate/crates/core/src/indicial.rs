//! Tangential spectra of □₁ and □_L on the link and the indicial sets
//! E_L ⊇ E_B ⊇ E of the Lichnerowicz Laplacian on the cone.
//!
//! Every tangential family is parametrised by an *argument* a (κ, μ+1 or λ)
//! and produces its two indicial roots as ξ_b(a) + s for a branch b and a
//! shift s. The two roots of one family are always dual to each other.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::link::{LinkSpectrum, ListKind, Mode};
use crate::numeric::{q, Real, Scalar};
use crate::spectral::{eta_weight, is_resonant, xi_pair_eps, Dimension, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    // □_L
    TtKappa,
    OneFormMuPlus,
    OneFormMuMinus,
    ScalarLambdaDirect,
    ScalarLambda2Plus,
    ScalarLambda2Minus,
    SpecialZero,
    Special2n,
    // □₁
    OneFormMuShift,
    ScalarLambda1Plus,
    ScalarLambda1Minus,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::TtKappa => "tt-kappa",
            Family::OneFormMuPlus => "one-form-mu-plus",
            Family::OneFormMuMinus => "one-form-mu-minus",
            Family::ScalarLambdaDirect => "scalar-lambda-direct",
            Family::ScalarLambda2Plus => "scalar-lambda2-plus",
            Family::ScalarLambda2Minus => "scalar-lambda2-minus",
            Family::SpecialZero => "special-zero",
            Family::Special2n => "special-2n",
            Family::OneFormMuShift => "one-form-mu-shift",
            Family::ScalarLambda1Plus => "scalar-lambda1-plus",
            Family::ScalarLambda1Minus => "scalar-lambda1-minus",
        }
    }

    pub fn source(self) -> ListKind {
        match self {
            Family::TtKappa => ListKind::TtEinstein,
            Family::OneFormMuPlus | Family::OneFormMuMinus | Family::OneFormMuShift => ListKind::OneForm,
            _ => ListKind::Scalar,
        }
    }

    /// What ξ± is applied to: μ + 1 for the 1-form families, the eigenvalue otherwise.
    fn argument_offset(self) -> i64 {
        match self {
            Family::OneFormMuPlus | Family::OneFormMuMinus | Family::OneFormMuShift => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DropReason {
    KillingPlusBranch,
    ObataPlusBranch,
    ConstantFunction,
}

impl DropReason {
    pub fn label(self) -> &'static str {
        match self {
            DropReason::KillingPlusBranch => "killing-plus-branch",
            DropReason::ObataPlusBranch => "obata-plus-branch",
            DropReason::ConstantFunction => "constant-function",
        }
    }
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The eight cases of the Bianchi-gauge analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BianchiCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl BianchiCase {
    pub const ALL: [BianchiCase; 8] = [
        BianchiCase::I,
        BianchiCase::II,
        BianchiCase::III,
        BianchiCase::IV,
        BianchiCase::V,
        BianchiCase::VI,
        BianchiCase::VII,
        BianchiCase::VIII,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BianchiCase::I => "i",
            BianchiCase::II => "ii",
            BianchiCase::III => "iii",
            BianchiCase::IV => "iv",
            BianchiCase::V => "v",
            BianchiCase::VI => "vi",
            BianchiCase::VII => "vii",
            BianchiCase::VIII => "viii",
        }
    }

    pub fn parse(s: &str) -> Option<BianchiCase> {
        BianchiCase::ALL.into_iter().find(|c| c.label() == s.trim().to_ascii_lowercase())
    }
}

impl fmt::Display for BianchiCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentialEigenvalue {
    pub value: Real,
    pub family: Family,
    pub source_index: usize,
    pub source_value: Scalar,
    pub dropped: Option<DropReason>,
    /// Kept but flagged, e.g. a plus branch at λ = n − 1 on a link not known to be round.
    pub caution: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndicialRoot {
    pub weight: Weight,
    pub family: Family,
    pub source_index: usize,
    pub source_value: Scalar,
    pub branch: Branch,
    /// The root is ξ_branch(argument) + shift.
    pub shift: i64,
    pub bianchi_compatible: bool,
    pub lie_derivative: bool,
    /// Which Bianchi case certifies compatibility.
    pub case: Option<BianchiCase>,
}

impl IndicialRoot {
    /// The value ξ± was applied to.
    pub fn argument(&self) -> Scalar {
        self.source_value.add_q(&q(self.family.argument_offset()))
    }
}

struct Rule {
    branch: Branch,
    shift: i64,
    case: Option<BianchiCase>,
    lie: bool,
}

const fn rule(branch: Branch, shift: i64, case: Option<BianchiCase>, lie: bool) -> Rule {
    Rule { branch, shift, case, lie }
}

/// The two roots of each □_L family; the first one defines the tangential value.
fn rules(f: Family) -> [Rule; 2] {
    use Branch::*;
    use BianchiCase as C;
    match f {
        Family::TtKappa => [rule(Plus, 0, Some(C::I), false), rule(Minus, 0, Some(C::I), false)],
        Family::OneFormMuPlus => [rule(Plus, -1, Some(C::II), true), rule(Minus, 1, None, false)],
        Family::OneFormMuMinus => [rule(Minus, -1, Some(C::III), true), rule(Plus, 1, None, false)],
        Family::ScalarLambdaDirect => [rule(Plus, 0, Some(C::VI), false), rule(Minus, 0, Some(C::VI), false)],
        Family::ScalarLambda2Plus => [rule(Plus, -2, Some(C::IV), true), rule(Minus, 2, None, false)],
        Family::ScalarLambda2Minus => [rule(Minus, -2, Some(C::V), true), rule(Plus, 2, None, false)],
        Family::SpecialZero => [rule(Plus, 0, Some(C::VII), true), rule(Minus, 0, None, false)],
        Family::Special2n => [rule(Minus, -2, Some(C::VIII), true), rule(Plus, 2, None, false)],
        Family::OneFormMuShift | Family::ScalarLambda1Plus | Family::ScalarLambda1Minus => {
            unreachable!("□₁ families carry no indicial roots of their own")
        }
    }
}

fn pick(pair: &(Weight, Weight), b: Branch) -> &Weight {
    match b {
        Branch::Plus => &pair.0,
        Branch::Minus => &pair.1,
    }
}

fn xi(link: &LinkSpectrum, arg: &Scalar) -> (Weight, Weight) {
    let p = xi_pair_eps(link.n, arg, link.epsilon);
    (p.plus, p.minus)
}

fn eq_int(link: &LinkSpectrum, v: &Scalar, k: i64) -> bool {
    v.to_real().cmp_tol(&Real::int(k), link.epsilon) == Ordering::Equal
}

/// Source entries of a list with the catalog index convention:
/// λ from 0, κ from 1, μ from 0 iff the link has Killing fields.
fn indexed(link: &LinkSpectrum, kind: ListKind) -> Vec<(usize, Scalar)> {
    let start = match kind {
        ListKind::Scalar => 0,
        ListKind::TtEinstein => 1,
        ListKind::OneForm => usize::from(!link.has_killing_fields),
    };
    link.list(kind).values().cloned().enumerate().map(|(i, v)| (i + start, v)).collect()
}

fn tangential_value(link: &LinkSpectrum, family: Family, source: &Scalar) -> Real {
    let n = link.n;
    match family {
        Family::TtKappa | Family::ScalarLambdaDirect => source.to_real(),
        Family::SpecialZero => Real::int(0),
        Family::OneFormMuShift => source.to_real().add_q(&q(1)),
        Family::ScalarLambda1Plus | Family::ScalarLambda1Minus => {
            let b = if family == Family::ScalarLambda1Plus { Branch::Plus } else { Branch::Minus };
            eta_weight(n, &pick(&xi(link, source), b).shift(-1)).re
        }
        _ => {
            let r = &rules(family)[0];
            let arg = source.add_q(&q(family.argument_offset()));
            eta_weight(n, &pick(&xi(link, &arg), r.branch).shift(r.shift)).re
        }
    }
}

fn entry(
    link: &LinkSpectrum,
    family: Family,
    index: usize,
    source: &Scalar,
    dropped: Option<DropReason>,
) -> TangentialEigenvalue {
    TangentialEigenvalue {
        value: tangential_value(link, family, source),
        family,
        source_index: index,
        source_value: source.clone(),
        dropped,
        caution: None,
    }
}

/// spec(□₁): μ_i + 1, η(ξ±(λ_i) − 1) for λ_i > 0, and n − 1 from λ₀.
pub fn box1_spectrum(link: &LinkSpectrum) -> Result<Vec<TangentialEigenvalue>> {
    let mut out = Vec::new();
    for (i, mu) in indexed(link, ListKind::OneForm) {
        out.push(entry(link, Family::OneFormMuShift, i, &mu, None));
    }
    for (i, lambda) in indexed(link, ListKind::Scalar) {
        if i == 0 {
            // ξ₊(0) = 0: the would-be eigenform is d of a constant.
            out.push(entry(link, Family::ScalarLambda1Plus, 0, &lambda, Some(DropReason::ConstantFunction)));
            out.push(entry(link, Family::ScalarLambda1Minus, 0, &lambda, None));
        } else {
            out.push(entry(link, Family::ScalarLambda1Plus, i, &lambda, None));
            out.push(entry(link, Family::ScalarLambda1Minus, i, &lambda, None));
        }
    }
    Ok(out)
}

/// spec(□_L) with the Killing, Obata and constant-function drops marked.
pub fn box_l_spectrum(link: &LinkSpectrum) -> Result<Vec<TangentialEigenvalue>> {
    link.n.require_tangential()?;
    let n = link.n.as_i64();
    let mut out = Vec::new();
    for (i, kappa) in indexed(link, ListKind::TtEinstein) {
        out.push(entry(link, Family::TtKappa, i, &kappa, None));
    }
    for (i, mu) in indexed(link, ListKind::OneForm) {
        let killing = eq_int(link, &mu, n - 2);
        let drop = killing.then_some(DropReason::KillingPlusBranch);
        out.push(entry(link, Family::OneFormMuPlus, i, &mu, drop));
        out.push(entry(link, Family::OneFormMuMinus, i, &mu, None));
    }
    let lambdas = indexed(link, ListKind::Scalar);
    for (i, lambda) in lambdas.iter().filter(|(i, _)| *i > 0) {
        out.push(entry(link, Family::ScalarLambdaDirect, *i, lambda, None));
    }
    for (i, lambda) in lambdas.iter().filter(|(i, _)| *i > 0) {
        let mut plus = entry(link, Family::ScalarLambda2Plus, *i, lambda, None);
        if eq_int(link, lambda, n - 1) {
            if link.round_sphere {
                plus.dropped = Some(DropReason::ObataPlusBranch);
            } else {
                plus.caution = Some("lambda = n-1 on a link not flagged as the round sphere: possibly vanishing eigentensor".into());
            }
        }
        out.push(plus);
        out.push(entry(link, Family::ScalarLambda2Minus, *i, lambda, None));
    }
    if let Some((_, zero)) = lambdas.first() {
        // λ₀: ḡ itself, the trace-free radial tensor, and a dropped Hessian of a constant.
        out.push(entry(link, Family::SpecialZero, 0, zero, None));
        out.push(entry(link, Family::Special2n, 0, zero, None));
        out.push(entry(link, Family::ScalarLambda2Plus, 0, zero, Some(DropReason::ConstantFunction)));
    }
    Ok(out)
}

fn family_for_roots(t: &TangentialEigenvalue) -> bool {
    t.dropped.is_none()
        && !matches!(t.family, Family::OneFormMuShift | Family::ScalarLambda1Plus | Family::ScalarLambda1Minus)
}

fn roots_of(link: &LinkSpectrum, t: &TangentialEigenvalue) -> Vec<IndicialRoot> {
    let arg = t.source_value.add_q(&q(t.family.argument_offset()));
    let pair = xi(link, &arg);
    let resonant = t.family == Family::TtKappa && is_resonant(link.n, &arg, link.epsilon);
    rules(t.family)
        .into_iter()
        .map(|r| {
            let mut weight = pick(&pair, r.branch).shift(r.shift);
            if resonant && r.branch == Branch::Plus {
                weight = weight.with_log();
            }
            IndicialRoot {
                weight,
                family: t.family,
                source_index: t.source_index,
                source_value: t.source_value.clone(),
                branch: r.branch,
                shift: r.shift,
                bianchi_compatible: r.case.is_some(),
                lie_derivative: r.lie,
                case: r.case,
            }
        })
        .collect()
}

/// E_L: all indicial roots of the Lichnerowicz Laplacian on the cone.
pub fn indicial_set_full(link: &LinkSpectrum) -> Result<Vec<IndicialRoot>> {
    let spec = box_l_spectrum(link)?;
    Ok(spec.iter().filter(|t| family_for_roots(t)).flat_map(|t| roots_of(link, t)).collect())
}

/// E_B: the roots realised by Bianchi-gauged solutions.
pub fn indicial_set_bianchi(link: &LinkSpectrum) -> Result<Vec<IndicialRoot>> {
    Ok(indicial_set_full(link)?.into_iter().filter(|r| r.bianchi_compatible).collect())
}

/// E: roots from κ and from λ > 0 directly — the ones not generated by
/// diffeomorphisms. λ₀ is excluded.
pub fn indicial_set_essential(link: &LinkSpectrum) -> Result<Vec<IndicialRoot>> {
    let mut out = Vec::new();
    for (i, kappa) in indexed(link, ListKind::TtEinstein) {
        out.extend(roots_of(link, &entry(link, Family::TtKappa, i, &kappa, None)));
    }
    for (i, lambda) in indexed(link, ListKind::Scalar).into_iter().filter(|(i, _)| *i > 0) {
        out.extend(roots_of(link, &entry(link, Family::ScalarLambdaDirect, i, &lambda, None)));
    }
    Ok(out)
}

/// Distinct weights (log flag included), sorted by real then imaginary part.
pub fn weight_set(roots: &[IndicialRoot]) -> Vec<Weight> {
    let mut ws: Vec<Weight> = roots.iter().map(|r| r.weight.clone()).collect();
    ws.sort_by(|a, b| a.cmp_lex(b));
    ws.dedup_by(|a, b| a.cmp_lex(b) == Ordering::Equal);
    ws
}

/// Dimension of the eigenspace behind one tangential value.
pub fn eigenspace_dimension(entry: &TangentialEigenvalue, link: &LinkSpectrum) -> Result<u64> {
    if entry.dropped.is_some() {
        return Ok(0);
    }
    let factor = match entry.family {
        Family::SpecialZero | Family::Special2n => return Ok(1),
        Family::ScalarLambdaDirect => 2,
        _ => 1,
    };
    let list = link.list(entry.family.source());
    let what = || format!("{} at {}", entry.family, entry.source_value);
    if list.mode == Mode::UpperBoundSet {
        return Err(Error::UnknownMultiplicity(format!("{} (upper-bound-set list)", what())));
    }
    list.multiplicity_of(&entry.source_value)
        .map(|m| factor * m)
        .ok_or_else(|| Error::UnknownMultiplicity(what()))
}

/// η(weight − shift) recovers the argument, η(weight) the tangential value.
pub fn reconstructs(n: Dimension, root: &IndicialRoot) -> bool {
    let back = eta_weight(n, &root.weight.shift(-root.shift));
    back.is_real() && back.re == root.argument().to_real()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::{sphere_link, sphere_quotient_link};

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn find(spec: &[TangentialEigenvalue], f: Family, i: usize) -> &TangentialEigenvalue {
        spec.iter().find(|t| t.family == f && t.source_index == i).unwrap()
    }

    fn has(roots: &[IndicialRoot], w: i64) -> bool {
        roots.iter().any(|r| r.weight == Weight::int(w))
    }

    #[test]
    fn box1_examples() {
        let s = sphere_link(dim(4), true).unwrap();
        let spec = box1_spectrum(&s).unwrap();
        assert_eq!(find(&spec, Family::ScalarLambda1Plus, 1).value, Real::int(0));
        assert_eq!(find(&spec, Family::ScalarLambda1Minus, 1).value, Real::int(8));
        assert_eq!(find(&spec, Family::OneFormMuShift, 0).value, Real::int(3));
        assert_eq!(find(&spec, Family::ScalarLambda1Minus, 0).value, Real::int(3));
        let c = find(&spec, Family::ScalarLambda1Plus, 0);
        assert_eq!(c.dropped, Some(DropReason::ConstantFunction));
        assert_eq!(c.value, Real::int(-1));
    }

    #[test]
    fn box_l_examples() {
        let s = sphere_link(dim(4), true).unwrap();
        let spec = box_l_spectrum(&s).unwrap();
        assert_eq!(find(&spec, Family::TtKappa, 1).value, Real::int(8));
        let killing = find(&spec, Family::OneFormMuPlus, 0);
        assert_eq!(killing.dropped, Some(DropReason::KillingPlusBranch));
        assert_eq!(find(&spec, Family::OneFormMuMinus, 0).value, Real::int(8));
        assert_eq!(find(&spec, Family::ScalarLambda2Plus, 1).dropped, Some(DropReason::ObataPlusBranch));
        assert_eq!(find(&spec, Family::SpecialZero, 0).value, Real::int(0));
        assert_eq!(find(&spec, Family::Special2n, 0).value, Real::int(8));
        assert!(box_l_spectrum(&sphere_link(dim(4), false).map(|mut l| {
            l.n = dim(3);
            l
        }).unwrap())
        .is_err());
    }

    #[test]
    fn obata_caution_without_sphere_flag() {
        let mut s = sphere_link(dim(5), false).unwrap();
        s.round_sphere = false;
        let spec = box_l_spectrum(&s).unwrap();
        let t = find(&spec, Family::ScalarLambda2Plus, 1);
        assert!(t.dropped.is_none());
        assert!(t.caution.is_some());
    }

    #[test]
    fn full_set_examples() {
        let s = sphere_link(dim(4), true).unwrap();
        let el = indicial_set_full(&s).unwrap();
        for w in [-4, -2, 0, 2, 3, -5] {
            assert!(has(&el, w), "missing {w}");
        }
        let eb = indicial_set_bianchi(&s).unwrap();
        assert!(has(&eb, -4) && has(&eb, 0));
        let specials: Vec<_> = eb
            .iter()
            .filter(|r| matches!(r.family, Family::SpecialZero | Family::Special2n))
            .map(|r| r.weight.clone())
            .collect();
        assert_eq!(specials, vec![Weight::int(0), Weight::int(-4)]);
        assert!(eb.iter().all(|r| !(r.family == Family::OneFormMuPlus && r.shift == 1)));
        assert!(eb.iter().all(|r| r.shift != 1));
    }

    #[test]
    fn essential_examples() {
        let q = sphere_quotient_link(dim(4), true).unwrap();
        let e = indicial_set_essential(&q).unwrap();
        assert!(e.iter().all(|r| !r.lie_derivative));
        assert!(has(&e, 2) && has(&e, -4));
        let s = sphere_link(dim(4), true).unwrap();
        let e = indicial_set_essential(&s).unwrap();
        assert!(has(&e, -3) && has(&e, 1));
        assert!(!has(&e, 0));
    }

    #[test]
    fn roots_reconstruct_arguments() {
        let s = sphere_link(dim(6), true).unwrap();
        for r in indicial_set_full(&s).unwrap() {
            assert!(reconstructs(s.n, &r), "{r:?}");
        }
    }

    #[test]
    fn eigenspace_dimensions() {
        let s = sphere_link(dim(4), true).unwrap();
        let spec = box_l_spectrum(&s).unwrap();
        assert_eq!(eigenspace_dimension(find(&spec, Family::ScalarLambdaDirect, 1), &s), Ok(8));
        assert_eq!(eigenspace_dimension(find(&spec, Family::ScalarLambda2Minus, 2), &s), Ok(9));
        assert_eq!(eigenspace_dimension(find(&spec, Family::Special2n, 0), &s), Ok(1));
        assert!(matches!(
            eigenspace_dimension(find(&spec, Family::TtKappa, 1), &s),
            Err(Error::UnknownMultiplicity(_))
        ));
        let q = sphere_quotient_link(dim(4), true).unwrap();
        let spec = box_l_spectrum(&q).unwrap();
        assert!(eigenspace_dimension(find(&spec, Family::ScalarLambdaDirect, 2), &q).is_err());
    }
}
