//! Link spectral data: the scalar Laplacian (λ), the connection Laplacian on
//! coclosed 1-forms (μ) and the Einstein operator on TT tensors (κ), together
//! with built-in catalogs and the JSON interchange format.

use std::cmp::Ordering;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numeric::{fmt_q, Real, Scalar, DEFAULT_EPSILON, Q};
use crate::spectral::Dimension;

/// How many harmonic degrees the sphere catalogs generate by default.
pub const SPHERE_DEGREES: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every listed value is an eigenvalue and nothing below `complete_below` is missing.
    Exact,
    /// The true spectrum is a subset of the listed values.
    UpperBoundSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueEntry {
    pub value: Scalar,
    /// `None` when unknown.
    pub multiplicity: Option<u64>,
}

impl EigenvalueEntry {
    pub fn new(value: impl Into<Scalar>, multiplicity: Option<u64>) -> Self {
        EigenvalueEntry { value: value.into(), multiplicity }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumList {
    pub entries: Vec<EigenvalueEntry>,
    /// Every eigenvalue strictly below this is listed.
    pub complete_below: Scalar,
    pub mode: Mode,
}

impl SpectrumList {
    pub fn new(entries: Vec<EigenvalueEntry>, complete_below: impl Into<Scalar>, mode: Mode) -> Self {
        SpectrumList { entries, complete_below: complete_below.into(), mode }
    }

    pub fn values(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter().map(|e| &e.value)
    }

    pub fn contains(&self, v: &Scalar) -> bool {
        self.values().any(|x| x.cmp_exact(v) == Ordering::Equal)
    }

    pub fn multiplicity_of(&self, v: &Scalar) -> Option<u64> {
        if self.mode == Mode::UpperBoundSet {
            return None;
        }
        self.entries
            .iter()
            .find(|e| e.value.cmp_exact(v) == Ordering::Equal)
            .and_then(|e| e.multiplicity)
    }

    fn is_strictly_sorted(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[0].value.cmp_exact(&w[1].value) == Ordering::Less)
    }
}

/// Fails unless the list is certified complete up to `threshold`.
pub fn require_complete(list: &SpectrumList, threshold: &Real) -> Result<()> {
    require_complete_eps(list, threshold, DEFAULT_EPSILON)
}

fn require_complete_eps(list: &SpectrumList, threshold: &Real, eps: f64) -> Result<()> {
    let cb = list.complete_below.to_real();
    if cb.cmp_tol(threshold, eps) == Ordering::Less {
        return Err(Error::InsufficientSpectrum {
            list: String::new(),
            required: threshold.to_string(),
            available: list.complete_below.to_string(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EndKind {
    AC,
    CS,
}

impl fmt::Display for EndKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndKind::AC => "AC",
            EndKind::CS => "CS",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListKind {
    Scalar,
    OneForm,
    TtEinstein,
}

impl fmt::Display for ListKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ListKind::Scalar => "scalar (lambda)",
            ListKind::OneForm => "coclosed one-form (mu)",
            ListKind::TtEinstein => "tt-einstein (kappa)",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkSpectrum {
    pub n: Dimension,
    pub name: String,
    /// λ, starting with λ₀ = 0.
    pub scalar: SpectrumList,
    /// μ, all ≥ n − 2.
    pub coclosed_one_form: SpectrumList,
    /// κ.
    pub tt_einstein: SpectrumList,
    pub has_killing_fields: bool,
    /// Set only by the sphere catalog; enables the Obata drop.
    pub round_sphere: bool,
    pub ends: Vec<EndKind>,
    /// Tie tolerance for float-path comparisons.
    pub epsilon: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct Validation {
    pub obata: bool,
}

impl Default for Validation {
    fn default() -> Self {
        Validation { obata: true }
    }
}

impl LinkSpectrum {
    pub fn list(&self, kind: ListKind) -> &SpectrumList {
        match kind {
            ListKind::Scalar => &self.scalar,
            ListKind::OneForm => &self.coclosed_one_form,
            ListKind::TtEinstein => &self.tt_einstein,
        }
    }

    pub fn require(&self, kind: ListKind, threshold: &Real) -> Result<()> {
        require_complete_eps(self.list(kind), threshold, self.epsilon).map_err(|e| match e {
            Error::InsufficientSpectrum { required, available, .. } => {
                Error::InsufficientSpectrum { list: kind.to_string(), required, available }
            }
            other => other,
        })
    }

    pub fn killing_value(&self) -> Scalar {
        Scalar::int(self.n.as_i64() - 2)
    }

    pub fn validate(&self, opts: Validation) -> Result<()> {
        let n = self.n.as_i64();
        let bad = |msg: String| Err(Error::InvariantViolation(msg));
        for kind in [ListKind::Scalar, ListKind::OneForm, ListKind::TtEinstein] {
            let list = self.list(kind);
            if let Some(e) = list.entries.iter().find(|e| !e.value.is_finite()) {
                return bad(format!("{kind}: non-finite value {}", e.value));
            }
            if !list.complete_below.is_finite() {
                return bad(format!("{kind}: non-finite complete_below"));
            }
            if !list.is_strictly_sorted() {
                return bad(format!("{kind}: entries must be strictly increasing"));
            }
            if list.entries.iter().any(|e| e.multiplicity == Some(0)) {
                return bad(format!("{kind}: multiplicities must be positive"));
            }
        }
        let zero = Scalar::int(0);
        match self.scalar.entries.first() {
            Some(e) if e.value == zero => {
                if !matches!(e.multiplicity, None | Some(1)) {
                    return bad("lambda_0 = 0 must have multiplicity 1".into());
                }
            }
            _ => return bad("lambda_0 = 0 missing from the scalar list".into()),
        }
        if opts.obata {
            let floor = Scalar::int(n - 1);
            if let Some(e) = self.scalar.entries[1..].iter().find(|e| e.value < floor) {
                return bad(format!("lambda = {} violates lambda >= n-1 = {}", e.value, n - 1));
            }
        }
        let killing = self.killing_value();
        if let Some(e) = self.coclosed_one_form.entries.iter().find(|e| e.value < killing) {
            return bad(format!("mu = {} violates mu >= n-2 = {}", e.value, n - 2));
        }
        let listed = self.coclosed_one_form.contains(&killing);
        if self.has_killing_fields && !listed {
            return bad("has_killing_fields set but mu = n-2 is not listed".into());
        }
        if !self.has_killing_fields && listed && self.coclosed_one_form.mode == Mode::Exact {
            return bad("mu = n-2 listed exactly, which forces Killing fields".into());
        }
        if self.ends.is_empty() {
            return bad("no ends requested".into());
        }
        Ok(())
    }
}

fn sphere_lambda(n: i64, i: i64) -> i64 {
    i * (i + n - 2)
}

fn sphere_kappa(n: i64, i: i64) -> i64 {
    (i + 1) * (i + n - 1)
}

fn sphere_mu(n: i64, k: i64) -> i64 {
    (k + 1) * (k + n - 3) - (n - 2)
}

fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128) as u64
}

/// Dimension of degree-i harmonic polynomials on ℝⁿ.
pub fn sphere_lambda_multiplicity(n: i64, i: i64) -> u64 {
    binomial(i + n - 1, n - 1) - binomial(i + n - 3, n - 1)
}

/// The round S^{n−1} as link of flat ℝⁿ.
pub fn sphere_link(n: Dimension, include_muspec: bool) -> Result<LinkSpectrum> {
    sphere_link_to_degree(n, include_muspec, SPHERE_DEGREES)
}

pub fn sphere_link_to_degree(n: Dimension, include_muspec: bool, degree: u32) -> Result<LinkSpectrum> {
    n.require_tangential()?;
    let nn = n.as_i64();
    let top = degree.max(2) as i64;
    let lambda: Vec<_> = (0..=top)
        .map(|i| EigenvalueEntry::new(sphere_lambda(nn, i), Some(sphere_lambda_multiplicity(nn, i))))
        .collect();
    let kappa: Vec<_> = (1..=top).map(|i| EigenvalueEntry::new(sphere_kappa(nn, i), None)).collect();
    let mu_top = if include_muspec { top } else { 1 };
    let mu: Vec<_> = (1..=mu_top).map(|k| EigenvalueEntry::new(sphere_mu(nn, k), None)).collect();
    Ok(LinkSpectrum {
        n,
        name: format!("round S^{}", nn - 1),
        scalar: SpectrumList::new(lambda, sphere_lambda(nn, top), Mode::Exact),
        coclosed_one_form: SpectrumList::new(mu, sphere_mu(nn, mu_top), Mode::Exact),
        tt_einstein: SpectrumList::new(kappa, sphere_kappa(nn, top), Mode::Exact),
        has_killing_fields: true,
        round_sphere: true,
        ends: vec![EndKind::AC, EndKind::CS],
        epsilon: DEFAULT_EPSILON,
    })
}

/// S^{n−1}/Γ: only subset constraints survive; a nontrivial Γ kills λ₁ = n − 1.
pub fn sphere_quotient_link(n: Dimension, gamma_nontrivial: bool) -> Result<LinkSpectrum> {
    let mut link = sphere_link(n, true)?;
    for list in [&mut link.scalar, &mut link.coclosed_one_form, &mut link.tt_einstein] {
        list.mode = Mode::UpperBoundSet;
    }
    if gamma_nontrivial {
        let l1 = Scalar::int(n.as_i64() - 1);
        link.scalar.entries.retain(|e| e.value != l1);
        for list in [&mut link.scalar, &mut link.coclosed_one_form, &mut link.tt_einstein] {
            for e in &mut list.entries {
                e.multiplicity = None;
            }
        }
        link.scalar.entries[0].multiplicity = Some(1);
        link.round_sphere = false;
        link.name = format!("S^{}/Gamma (Gamma nontrivial)", n.as_i64() - 1);
    } else {
        link.name = format!("S^{}/Gamma (Gamma trivial)", n.as_i64() - 1);
    }
    Ok(link)
}

/// Resonance regression fixture: an Einstein product link in cone dimension 10
/// whose smallest TT eigenvalue is κ₁ = −16 = −(n−2)²/4.
pub fn product_einstein_example(n: Dimension) -> Result<LinkSpectrum> {
    if n.get() != 10 {
        return Err(Error::UnsupportedDimension {
            n: n.get(),
            detail: "the product-Einstein fixture exists only for n = 10".into(),
        });
    }
    Ok(LinkSpectrum {
        n,
        name: "Einstein product link, kappa_1 = -16 (placeholder lambda/mu data)".into(),
        scalar: SpectrumList::new(
            vec![EigenvalueEntry::new(0, Some(1)), EigenvalueEntry::new(9, None)],
            9,
            Mode::UpperBoundSet,
        ),
        coclosed_one_form: SpectrumList::new(vec![EigenvalueEntry::new(8, None)], 8, Mode::UpperBoundSet),
        tt_einstein: SpectrumList::new(vec![EigenvalueEntry::new(-16, None)], 0, Mode::Exact),
        has_killing_fields: true,
        round_sphere: false,
        ends: vec![EndKind::AC],
        epsilon: DEFAULT_EPSILON,
    })
}

/// Cone over the Stenzel link in dimension n = 2m, reduced to the single TT
/// eigenvalue κ = η(−2m/(m−1)) that the optimal Stenzel decay rate points at.
/// The λ and μ lists are placeholders that do not affect E₋.
pub fn stenzel_fixture(m: u32) -> Result<LinkSpectrum> {
    if m < 3 {
        return Err(Error::UnsupportedDimension { n: 2 * m, detail: "the Stenzel fixture needs m >= 3".into() });
    }
    let n = Dimension::new(2 * m)?;
    let x = -Q::new((2 * m as i64).into(), (m as i64 - 1).into());
    let kappa = crate::spectral::eta_q(n, &x);
    Ok(LinkSpectrum {
        n,
        name: format!("Stenzel link T^1 S^{m} (kappa = {})", fmt_q(&kappa)),
        scalar: SpectrumList::new(vec![EigenvalueEntry::new(0, Some(1))], 0, Mode::UpperBoundSet),
        coclosed_one_form: SpectrumList::new(
            vec![EigenvalueEntry::new(n.as_i64() - 2, None)],
            n.as_i64() - 2,
            Mode::UpperBoundSet,
        ),
        tt_einstein: SpectrumList::new(vec![EigenvalueEntry::new(kappa, None)], 0, Mode::Exact),
        has_killing_fields: true,
        round_sphere: false,
        ends: vec![EndKind::AC],
        epsilon: DEFAULT_EPSILON,
    })
}

// ---------------------------------------------------------------------------
// JSON interchange

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    value: Value,
    multiplicity: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ListDoc {
    entries: Vec<EntryDoc>,
    complete_below: Value,
    mode: Mode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndDoc {
    kind: EndKind,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkDoc {
    dim_cone: u32,
    name: String,
    scalar: ListDoc,
    coclosed_one_form: ListDoc,
    tt_einstein: ListDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    has_killing_fields: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ends: Option<Vec<EndDoc>>,
}

fn scalar_from_json(v: &Value, what: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => {
            Scalar::parse(s).ok_or_else(|| Error::Schema(format!("{what}: cannot parse {s:?} as a rational")))
        }
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Scalar::int(i))
            } else if let Some(u) = num.as_u64() {
                Ok(Scalar::Exact(Q::from_integer(u.into())))
            } else {
                Ok(Scalar::Float(num.as_f64().expect("JSON number")))
            }
        }
        other => Err(Error::Schema(format!("{what}: expected a number or a \"p/q\" string, got {other}"))),
    }
}

fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(x) if x.is_integer() => match x.numer().to_i64() {
            Some(i) => Value::from(i),
            None => Value::String(fmt_q(x)),
        },
        Scalar::Exact(x) => Value::String(fmt_q(x)),
        Scalar::Float(f) => serde_json::Number::from_f64(*f).map(Value::Number).unwrap_or(Value::Null),
    }
}

fn list_from_doc(doc: ListDoc, what: &str) -> Result<SpectrumList> {
    let entries = doc
        .entries
        .into_iter()
        .map(|e| Ok(EigenvalueEntry { value: scalar_from_json(&e.value, what)?, multiplicity: e.multiplicity }))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumList {
        entries,
        complete_below: scalar_from_json(&doc.complete_below, what)?,
        mode: doc.mode,
    })
}

fn list_to_doc(list: &SpectrumList) -> ListDoc {
    ListDoc {
        entries: list
            .entries
            .iter()
            .map(|e| EntryDoc { value: scalar_to_json(&e.value), multiplicity: e.multiplicity })
            .collect(),
        complete_below: scalar_to_json(&list.complete_below),
        mode: list.mode,
    }
}

/// Parse and validate a spectrum document.
pub fn load_spectrum(document: &str) -> Result<LinkSpectrum> {
    load_spectrum_with(document, Validation::default())
}

pub fn load_spectrum_with(document: &str, opts: Validation) -> Result<LinkSpectrum> {
    let doc: LinkDoc = serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
    let n = Dimension::new(doc.dim_cone)?;
    let coclosed = list_from_doc(doc.coclosed_one_form, "coclosed_one_form")?;
    let killing = Scalar::int(n.as_i64() - 2);
    let has_killing_fields = doc.has_killing_fields.unwrap_or_else(|| coclosed.contains(&killing));
    let link = LinkSpectrum {
        n,
        name: doc.name,
        scalar: list_from_doc(doc.scalar, "scalar")?,
        coclosed_one_form: coclosed,
        tt_einstein: list_from_doc(doc.tt_einstein, "tt_einstein")?,
        has_killing_fields,
        round_sphere: false,
        ends: doc
            .ends
            .map(|v| v.into_iter().map(|e| e.kind).collect())
            .unwrap_or_else(|| vec![EndKind::AC, EndKind::CS]),
        epsilon: DEFAULT_EPSILON,
    };
    link.validate(opts)?;
    Ok(link)
}

/// Serialize to the interchange format (exact values as integers or `"p/q"`).
pub fn to_document(link: &LinkSpectrum) -> String {
    let doc = LinkDoc {
        dim_cone: link.n.get(),
        name: link.name.clone(),
        scalar: list_to_doc(&link.scalar),
        coclosed_one_form: list_to_doc(&link.coclosed_one_form),
        tt_einstein: list_to_doc(&link.tt_einstein),
        has_killing_fields: Some(link.has_killing_fields),
        ends: Some(link.ends.iter().map(|&kind| EndDoc { kind }).collect()),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Smallest listed value, if any.
pub fn min_value(list: &SpectrumList) -> Option<&Scalar> {
    list.entries.first().map(|e| &e.value)
}
