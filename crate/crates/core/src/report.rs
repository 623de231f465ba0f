//! Report assembly and rendering for the command-line tool: the link summary,
//! tangential spectra, indicial tables, rates, verdicts and end orders, plus
//! the verification tables and the ξ± plot data.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat::cases::{verify_case, CaseInput, Role};
use crate::flat::{check_sym_gradient_family, cheeger_tian_example, ode_grid, ode_residual, ode_residual_fd, standard_identities};
use crate::indicial::{box_l_spectrum, indicial_set_bianchi, indicial_set_essential, indicial_set_full, BianchiCase, IndicialRoot};
use crate::link::{LinkSpectrum, ListKind, Mode};
use crate::numeric::{fmt_g17, fmt_q, Real, Scalar, Q};
use crate::rates::{
    adm_mass_verdict, e_minus_set, e_plus_set, end_order, is_resonance_dominated, linear_stability, AdmMass, Side,
    Stability,
};
use crate::spectral::{xi_pair, xi_pair_eps, Dimension, Weight};

/// A number together with the arithmetic path that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Num {
    pub value: String,
    pub path: Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    Exact,
    Float,
}

impl Path {
    fn label(self) -> &'static str {
        match self {
            Path::Exact => "exact",
            Path::Float => "float",
        }
    }
}

impl Num {
    pub fn real(x: &Real) -> Self {
        Num { value: x.to_string(), path: if x.is_exact() { Path::Exact } else { Path::Float } }
    }

    pub fn scalar(x: &Scalar) -> Self {
        Num { value: x.to_string(), path: if x.is_exact() { Path::Exact } else { Path::Float } }
    }

    pub fn weight(w: &Weight) -> Self {
        Num { value: w.value().to_string(), path: if w.is_exact() { Path::Exact } else { Path::Float } }
    }

    fn cell(&self) -> String {
        match self.path {
            Path::Exact => self.value.clone(),
            Path::Float => format!("{}~", self.value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkSummary {
    pub name: String,
    pub n: u32,
    pub ends: Vec<String>,
    pub has_killing_fields: bool,
    pub round_sphere: bool,
    pub epsilon: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ListSummary {
    pub list: String,
    pub mode: String,
    pub complete_below: Num,
    pub entries: Vec<EntryRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryRow {
    pub value: Num,
    pub multiplicity: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentialRow {
    pub family: String,
    pub source_index: usize,
    pub source_value: Num,
    pub value: Num,
    pub dropped: Option<String>,
    pub caution: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRow {
    pub weight: Num,
    pub log: bool,
    pub family: String,
    pub source_index: usize,
    pub branch: String,
    pub shift: i64,
    pub in_bianchi: bool,
    pub in_essential: bool,
    pub case: Option<String>,
    pub lie_derivative: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub name: String,
    pub value: Num,
    pub part: String,
    pub witness_family: String,
    pub witness_index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub stable: bool,
    pub boundary: bool,
    pub witness_index: Option<usize>,
    pub witness: Option<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndRow {
    pub end: String,
    pub order: Num,
    pub weak: bool,
    pub bound_only: bool,
    pub display: String,
    pub witness_family: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub link: LinkSummary,
    pub spectra: Vec<ListSummary>,
    pub tangential: Vec<TangentialRow>,
    pub roots_total: usize,
    pub roots: Vec<RootRow>,
    pub rates: Vec<RateRow>,
    pub resonance_dominated: bool,
    pub stability: StabilityRow,
    pub ends: Vec<EndRow>,
    pub adm_mass: Option<String>,
    pub warnings: Vec<String>,
}

type RootKey = (String, usize, String, i64);

fn key(r: &IndicialRoot) -> RootKey {
    (r.family.label().to_string(), r.source_index, r.branch.to_string(), r.shift)
}

fn list_summary(kind: ListKind, list: &crate::link::SpectrumList) -> ListSummary {
    ListSummary {
        list: kind.to_string(),
        mode: match list.mode {
            Mode::Exact => "exact".into(),
            Mode::UpperBoundSet => "upper-bound-set".into(),
        },
        complete_below: Num::scalar(&list.complete_below),
        entries: list
            .entries
            .iter()
            .map(|e| EntryRow { value: Num::scalar(&e.value), multiplicity: e.multiplicity })
            .collect(),
    }
}

/// Assemble the full report. `max_roots` truncates the root table only.
pub fn build_report(link: &LinkSpectrum, max_roots: Option<usize>) -> Result<Report> {
    let n = link.n;
    let mut warnings = Vec::new();
    for (kind, list) in [
        (ListKind::Scalar, &link.scalar),
        (ListKind::OneForm, &link.coclosed_one_form),
        (ListKind::TtEinstein, &link.tt_einstein),
    ] {
        if list.mode == Mode::UpperBoundSet {
            warnings.push(format!("{kind} list is an upper-bound set: orders are lower bounds"));
        }
    }

    let tangential = if n.require_tangential().is_ok() { box_l_spectrum(link)? } else { Vec::new() };
    for t in &tangential {
        if let Some(c) = &t.caution {
            warnings.push(format!("{} #{}: {c}", t.family, t.source_index));
        }
    }

    let full = indicial_set_full(link)?;
    let bianchi: BTreeSet<RootKey> = indicial_set_bianchi(link)?.iter().map(key).collect();
    let essential: BTreeSet<RootKey> = indicial_set_essential(link)?.iter().map(key).collect();
    let mut coerced = BTreeSet::new();
    for r in &full {
        let arg = r.argument();
        if xi_pair_eps(n, &arg, link.epsilon).coerced && coerced.insert(arg.to_string()) {
            warnings.push(format!("argument {arg} is within epsilon of -(n-2)^2/4 and was treated as resonant"));
        }
    }
    let roots_total = full.len();
    let roots = full
        .iter()
        .take(max_roots.unwrap_or(usize::MAX))
        .map(|r| RootRow {
            weight: Num::weight(&r.weight),
            log: r.weight.log_factor,
            family: r.family.label().into(),
            source_index: r.source_index,
            branch: r.branch.to_string(),
            shift: r.shift,
            in_bianchi: bianchi.contains(&key(r)),
            in_essential: essential.contains(&key(r)),
            case: r.case.map(|c| c.label().to_string()),
            lie_derivative: r.lie_derivative,
        })
        .collect();

    let mut rate_rows = Vec::new();
    for (name, side) in [("xi_plus", Side::Plus), ("xi_minus", Side::Minus)] {
        let set = match side {
            Side::Plus => e_plus_set(link),
            Side::Minus => e_minus_set(link),
        };
        // a missing side is only fatal when an end needs it
        let set = match set {
            Err(e @ Error::InsufficientSpectrum { .. }) => {
                warnings.push(format!("{name} not computed: {e}"));
                continue;
            }
            other => other?,
        };
        if let Some(e) = set.min() {
            rate_rows.push(RateRow {
                name: name.into(),
                value: Num::real(&e.value),
                part: e.part.label().into(),
                witness_family: e.root.family.label().into(),
                witness_index: e.root.source_index,
            });
        }
    }

    let stability = linear_stability(link)?;
    warnings.extend(stability.warnings().iter().cloned());
    let stability = match &stability {
        Stability::Stable { boundary, .. } => {
            StabilityRow { stable: true, boundary: *boundary, witness_index: None, witness: None }
        }
        Stability::Unstable { witness_index, witness, .. } => StabilityRow {
            stable: false,
            boundary: false,
            witness_index: Some(*witness_index),
            witness: Some(Num::scalar(witness)),
        },
    };

    let mut ends = Vec::new();
    for kind in &link.ends {
        let e = end_order(link, *kind)?;
        ends.push(EndRow {
            end: kind.to_string(),
            order: Num::real(&e.order),
            weak: e.weak,
            bound_only: e.bound_only,
            display: e.to_string(),
            witness_family: e.witness.family.label().into(),
        });
    }
    let adm_mass = if link.ends.contains(&crate::link::EndKind::AC) {
        Some(match adm_mass_verdict(link)? {
            AdmMass::Vanishes { reason } => format!("vanishes ({reason})"),
            AdmMass::Unknown { reason } => format!("undetermined ({reason})"),
        })
    } else {
        None
    };

    Ok(Report {
        link: LinkSummary {
            name: link.name.clone(),
            n: n.get(),
            ends: link.ends.iter().map(ToString::to_string).collect(),
            has_killing_fields: link.has_killing_fields,
            round_sphere: link.round_sphere,
            epsilon: fmt_g17(link.epsilon),
        },
        spectra: vec![
            list_summary(ListKind::Scalar, &link.scalar),
            list_summary(ListKind::OneForm, &link.coclosed_one_form),
            list_summary(ListKind::TtEinstein, &link.tt_einstein),
        ],
        tangential: tangential
            .iter()
            .map(|t| TangentialRow {
                family: t.family.label().into(),
                source_index: t.source_index,
                source_value: Num::scalar(&t.source_value),
                value: Num::real(&t.value),
                dropped: t.dropped.map(|d| d.label().to_string()),
                caution: t.caution.clone(),
            })
            .collect(),
        roots_total,
        roots,
        rates: rate_rows,
        resonance_dominated: is_resonance_dominated(link)?,
        stability,
        ends,
        adm_mass,
        warnings,
    })
}

/// Left-aligned text columns.
fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::from("  ");
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            s.push_str(c);
            if i + 1 < widths.len() {
                s.push_str(&" ".repeat(w - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

impl Report {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let l = &self.link;
        let _ = writeln!(out, "link: {} (n = {})", l.name, l.n);
        let _ = writeln!(
            out,
            "  ends: {}; Killing fields: {}; round sphere: {}; epsilon: {}",
            l.ends.join(", "),
            yes(l.has_killing_fields),
            yes(l.round_sphere),
            l.epsilon
        );
        out.push_str("\nspectra (values marked ~ are floats)\n");
        let rows: Vec<Vec<String>> = self
            .spectra
            .iter()
            .map(|s| {
                let vals: Vec<String> = s
                    .entries
                    .iter()
                    .map(|e| match e.multiplicity {
                        Some(m) => format!("{} (x{m})", e.value.cell()),
                        None => e.value.cell(),
                    })
                    .collect();
                vec![s.list.clone(), s.mode.clone(), s.complete_below.cell(), vals.join(", ")]
            })
            .collect();
        out.push_str(&text_table(&["list", "mode", "complete below", "values"], &rows));

        if !self.tangential.is_empty() {
            out.push_str("\ntangential Lichnerowicz spectrum\n");
            let rows: Vec<Vec<String>> = self
                .tangential
                .iter()
                .map(|t| {
                    vec![
                        t.family.clone(),
                        t.source_index.to_string(),
                        t.source_value.cell(),
                        t.value.cell(),
                        t.dropped.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            out.push_str(&text_table(&["family", "index", "source", "value", "dropped"], &rows));
        }

        let _ = writeln!(out, "\nindicial roots ({} of {} shown; E_B, E = Bianchi and essential subsets)", self.roots.len(), self.roots_total);
        let rows: Vec<Vec<String>> = self
            .roots
            .iter()
            .map(|r| {
                vec![
                    format!("{}{}", r.weight.cell(), if r.log { " log" } else { "" }),
                    r.family.clone(),
                    r.source_index.to_string(),
                    r.branch.clone(),
                    format!("{:+}", r.shift),
                    yes(r.in_bianchi),
                    yes(r.in_essential),
                    r.case.clone().unwrap_or_else(|| "-".into()),
                    yes(r.lie_derivative),
                ]
            })
            .collect();
        out.push_str(&text_table(&["weight", "family", "index", "branch", "shift", "E_B", "E", "case", "Lie"], &rows));

        out.push_str("\nrates\n");
        for r in &self.rates {
            let _ = writeln!(out, "  {} = {}  [{}] from {} #{} ({})", r.name, r.value.value, r.value.path.label(), r.witness_family, r.witness_index, r.part);
        }
        let _ = writeln!(out, "\nresonance-dominated: {}", yes(self.resonance_dominated));
        let s = &self.stability;
        let verdict = if s.stable {
            format!("stable{}", if s.boundary { " (boundary: some kappa = -(n-2)^2/4)" } else { "" })
        } else {
            format!(
                "unstable (kappa_{} = {})",
                s.witness_index.unwrap_or_default(),
                s.witness.as_ref().map(|w| w.value.clone()).unwrap_or_default()
            )
        };
        let _ = writeln!(out, "linear stability: {verdict}");
        out.push_str("\nends\n");
        for e in &self.ends {
            let _ = writeln!(out, "  {}  [{}; witness {}]", e.display, e.order.path.label(), e.witness_family);
        }
        if let Some(m) = &self.adm_mass {
            let _ = writeln!(out, "\nADM mass: {m}");
        }
        if !self.warnings.is_empty() {
            out.push_str("\nwarnings\n");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Long format: section,key,value,path.
    pub fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |a: &str, b: &str, c: &str, d: &str| w.write_record([a, b, c, d]).expect("in-memory csv");
        row("section", "key", "value", "path");
        row("link", "name", &self.link.name, "");
        row("link", "n", &self.link.n.to_string(), "exact");
        row("link", "ends", &self.link.ends.join(" "), "");
        for s in &self.spectra {
            row("spectrum", &format!("{}.mode", s.list), &s.mode, "");
            row("spectrum", &format!("{}.complete_below", s.list), &s.complete_below.value, s.complete_below.path.label());
            for (i, e) in s.entries.iter().enumerate() {
                row("spectrum", &format!("{}[{i}]", s.list), &e.value.value, e.value.path.label());
            }
        }
        for r in &self.roots {
            let k = format!(
                "{}#{}{}{:+}{}{}",
                r.family,
                r.source_index,
                r.branch,
                r.shift,
                if r.in_bianchi { ",B" } else { "" },
                if r.in_essential { ",E" } else { "" }
            );
            let v = format!("{}{}", r.weight.value, if r.log { " log" } else { "" });
            row("root", &k, &v, r.weight.path.label());
        }
        for r in &self.rates {
            row("rate", &r.name, &r.value.value, r.value.path.label());
        }
        row("verdict", "resonance_dominated", &self.resonance_dominated.to_string(), "");
        row("verdict", "stable", &self.stability.stable.to_string(), "");
        for e in &self.ends {
            row("end", &e.end, &e.order.value, e.order.path.label());
            row("end", &format!("{}.display", e.end), &e.display, "");
        }
        if let Some(m) = &self.adm_mass {
            row("verdict", "adm_mass", m, "");
        }
        for (i, m) in self.warnings.iter().enumerate() {
            row("warning", &i.to_string(), m, "");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

/// CSV of (ν, Re ξ₊, Re ξ₋, Im ξ₊) for ν = min, min+step, … ≤ max.
pub fn plot_data(n: Dimension, nu_min: &Q, nu_max: &Q, step: &Q) -> Result<String> {
    if !step.is_positive() {
        return Err(Error::InvariantViolation("plot step must be positive".into()));
    }
    let mut out = String::from("nu,re_xi_plus,re_xi_minus,im_xi_plus\n");
    let mut nu = nu_min.clone();
    while nu <= *nu_max {
        let (p, m) = xi_pair(n, &Scalar::Exact(nu.clone()));
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_g17(crate::numeric::q_to_f64(&nu)),
            fmt_g17(p.re.to_f64()),
            fmt_g17(m.re.to_f64()),
            fmt_g17(p.im.to_f64())
        );
        nu += step;
    }
    Ok(out)
}

/// A pass/fail table produced by one `verify` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckTable {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl CheckTable {
    pub fn render_table(&self) -> String {
        let header: Vec<&str> = self.header.iter().map(String::as_str).collect();
        let mut out = format!("{}\n", self.title);
        out.push_str(&text_table(&header, &self.rows));
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }

    pub fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory csv");
        for r in &self.rows {
            w.write_record(r).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

fn mark(b: bool) -> String {
    if b { "pass" } else { "FAIL" }.to_string()
}

/// Exact residuals over the 50-case grid, and central differences (h = 1e−4)
/// at r = 2 and r = 3.
pub fn verify_ode() -> Result<CheckTable> {
    let mut rows = Vec::new();
    let mut passed = true;
    for c in ode_grid() {
        let exact = ode_residual(c.n, &c.nu, c.branch)?;
        let fd = [2.0, 3.0]
            .iter()
            .map(|r| ode_residual_fd(c.n, &c.nu, c.branch, *r, 1e-4))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let ok = exact.exact_zero && fd <= 1e-6;
        passed &= ok;
        rows.push(vec![
            c.n.to_string(),
            fmt_q(&c.nu),
            c.branch.label().into(),
            exact.exponent.to_string(),
            if exact.exact_zero { "0".into() } else { exact.residual_terms.join(" + ") },
            format!("{fd:.3e}"),
            mark(ok),
        ]);
    }
    Ok(CheckTable {
        title: "radial ODE: exact residual and central-difference cross-check (h = 1e-4, r in {2, 3})".into(),
        header: ["n", "nu", "branch", "exponent", "exact residual", "fd residual", "status"].map(String::from).to_vec(),
        rows,
        passed,
        notes: Vec::new(),
    })
}

/// Flat-model case checks. With `stated`, the incompatible branch must also be
/// proportional to the profile written in the source argument.
pub fn verify_flat(n: u32, max_degree: u32, cases: &[BianchiCase], stated: bool) -> Result<CheckTable> {
    let mut rows = Vec::new();
    let mut notes = BTreeSet::new();
    let mut passed = true;
    for &case in cases {
        let degrees: Vec<u32> = match case {
            BianchiCase::I => vec![2],
            BianchiCase::VII | BianchiCase::VIII => vec![0],
            _ => (1..=max_degree).collect(),
        };
        for d in degrees {
            let r = verify_case(case, n, CaseInput::degree(d))?;
            let stated_ok = r.stated_profiles_hold();
            let ok = r.passed() && (!stated || stated_ok != Some(false));
            passed &= ok;
            for note in &r.notes {
                notes.insert(format!("({}) d={d}: {note}", case.label()));
            }
            for b in &r.branches {
                let profile = match (&b.profile, b.role) {
                    (Some(p), _) => format!(
                        "{} x {}",
                        p.observed_factor.as_ref().map(fmt_q).unwrap_or_else(|| "?".into()),
                        p.description
                    ),
                    (None, Role::Compatible) => "-".into(),
                    (None, Role::Incompatible) => "?".into(),
                };
                rows.push(vec![
                    case.label().into(),
                    r.degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                    b.branch.to_string(),
                    b.role.label().into(),
                    fmt_q(&b.expected_exponent),
                    yes(b.exponent_ok()),
                    yes(b.harmonic),
                    if b.bianchi_zero { "0".into() } else { "nonzero".into() },
                    profile,
                    match &b.stated_profile {
                        Some(p) => yes(p.proportional),
                        None => "-".into(),
                    },
                    mark(if r.degenerate { r.passed() } else { b.passed() }),
                ]);
            }
        }
    }
    Ok(CheckTable {
        title: format!("flat cone R^{n}: Bianchi-gauge cases (exact)"),
        header: ["case", "d", "branch", "role", "root", "homogeneity", "harmonic", "B h", "B h profile", "stated form", "status"]
            .map(String::from)
            .to_vec(),
        rows,
        passed,
        notes: notes.into_iter().collect(),
    })
}

/// B∘δ* against Δ₁ on 20 generated 1-forms, and the standard identities.
pub fn verify_identities(n: u32) -> Result<CheckTable> {
    let mut rows = Vec::new();
    let fam = check_sym_gradient_family(n as usize, 20);
    let literal = fam.iter().filter(|c| c.literal).count();
    let half = fam.iter().filter(|c| c.half).count();
    rows.push(vec!["B δ* = Δ₁".into(), format!("{literal}/20"), mark(literal == 20)]);
    rows.push(vec!["B δ* = ½ Δ₁".into(), format!("{half}/20"), mark(half == 20)]);
    let mut passed = literal == 20 && half == 20;
    for c in standard_identities(n, 3)? {
        passed &= c.passed;
        rows.push(vec![c.name, c.detail, mark(c.passed)]);
    }
    Ok(CheckTable {
        title: format!("flat identities on R^{n} (exact)"),
        header: ["identity", "detail", "status"].map(String::from).to_vec(),
        rows,
        passed,
        notes: vec!["δ*ω = ½(∂_iω_j + ∂_jω_i), B = δ + ½ d tr, Δ = −Σ∂²".into()],
    })
}

pub fn verify_cheeger_tian() -> CheckTable {
    let r = cheeger_tian_example();
    let rows = vec![
        vec!["g".into(), r.g.clone(), "-".into()],
        vec!["Δg = 0".into(), String::new(), mark(r.g_harmonic)],
        vec!["Δ(r^-4 ∇²g) = 0".into(), String::new(), mark(r.h_harmonic)],
        vec![
            "homogeneity".into(),
            r.homogeneity.as_ref().map(fmt_q).unwrap_or_else(|| "none".into()),
            mark(r.homogeneity.as_ref().is_some_and(|h| *h == Q::from_integer((-3).into()))),
        ],
        vec!["δ(trace-free part) ≠ 0".into(), r.tf_divergence.clone(), mark(r.tf_divergence_nonzero)],
    ];
    let mut notes = Vec::new();
    if !r.printed_g_harmonic {
        notes.push("x1^3 - 4 x1 y1^2 is not harmonic; Re(z1^3) = x1^3 - 3 x1 y1^2 is used".into());
    }
    if r.trace_free {
        notes.push("r^-4 ∇²g is already trace free".into());
    }
    CheckTable {
        title: "quotient example on C^2 (exact)".into(),
        header: ["check", "value", "status"].map(String::from).to_vec(),
        rows,
        passed: r.passed(),
        notes,
    }
}
