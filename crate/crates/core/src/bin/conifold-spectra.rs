use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conifold_spectra::indicial::BianchiCase;
use conifold_spectra::link::{load_spectrum, product_einstein_example, sphere_link, sphere_quotient_link, LinkSpectrum};
use conifold_spectra::numeric::{parse_q, Q};
use conifold_spectra::report::{
    build_report, plot_data, verify_cheeger_tian, verify_flat, verify_identities, verify_ode, CheckTable,
};
use conifold_spectra::spectral::Dimension;
use conifold_spectra::{Error, Result};

#[derive(Parser)]
#[command(name = "conifold-spectra", version, about = "Indicial roots, end orders and stability of Ricci-flat cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Indicial tables, rates, verdicts and end orders for a link.
    Report(ReportArgs),
    /// Exact checks on the flat model.
    Verify(VerifyArgs),
    /// CSV of ν, Re ξ₊, Re ξ₋, Im ξ₊ over a range of ν.
    PlotData(PlotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Sphere,
    SphereQuotient,
    #[value(name = "product-einstein-10")]
    ProductEinstein10,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quotient {
    Trivial,
    Nontrivial,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct ReportArgs {
    /// Link spectrum document (JSON).
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
    /// Cone dimension for the sphere builtins.
    #[arg(long, default_value_t = 4)]
    n: u32,
    #[arg(long, value_enum)]
    quotient: Option<Quotient>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Tolerance for float-path comparisons.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Truncate the root table (minima are always computed in full).
    #[arg(long)]
    max_roots: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    what: VerifyWhat,
    #[arg(long, value_enum, default_value_t, global = true)]
    format: Format,
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Radial ODE solutions over the 50-case grid.
    Ode,
    /// The eight Bianchi-gauge cases on flat ℝⁿ.
    Flat {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Restrict to one case (i … viii).
        #[arg(long)]
        case: Option<String>,
        /// Also require proportionality to the profiles as written in the source argument.
        #[arg(long)]
        stated: bool,
    },
    /// B∘δ* versus Δ₁ and the standard flat identities.
    Identities {
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// The harmonic example on ℂ² with homogeneity −3.
    CheegerTian,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    n: u32,
    /// Defaults to −(n−2)²/4 − 4.
    #[arg(long, allow_hyphen_values = true)]
    nu_min: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "10")]
    nu_max: String,
    #[arg(long, default_value = "1/4")]
    step: String,
}

fn parse_number(flag: &str, s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| Error::Schema(format!("--{flag}: cannot parse {s:?} as a rational")))
}

fn load_link(args: &ReportArgs) -> Result<LinkSpectrum> {
    let mut link = match (&args.input, args.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvariantViolation(format!("cannot read {}: {e}", path.display())))?;
            load_spectrum(&text)?
        }
        (None, Some(b)) => {
            let n = Dimension::new(args.n)?;
            match (b, args.quotient) {
                (Builtin::Sphere, None) => sphere_link(n, true)?,
                (Builtin::Sphere | Builtin::SphereQuotient, Some(q)) => sphere_quotient_link(n, q == Quotient::Nontrivial)?,
                (Builtin::SphereQuotient, None) => sphere_quotient_link(n, true)?,
                (Builtin::ProductEinstein10, _) => product_einstein_example(n_or_ten(args.n)?)?,
            }
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    if let Some(eps) = args.epsilon {
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(Error::Schema("--epsilon must be a finite non-negative number".into()));
        }
        link.epsilon = eps;
    }
    Ok(link)
}

/// The product fixture only exists in dimension 10; an unset `--n` means 10.
fn n_or_ten(n: u32) -> Result<Dimension> {
    Dimension::new(if n == 4 { 10 } else { n })
}

fn render_checks(t: &CheckTable, f: Format) -> String {
    match f {
        Format::Table => t.render_table(),
        Format::Json => t.render_json(),
        Format::Csv => t.render_csv(),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Report(args) => {
            let link = load_link(&args)?;
            let report = build_report(&link, args.max_roots)?;
            print!(
                "{}",
                match args.format {
                    Format::Table => report.render_table(),
                    Format::Json => report.render_json(),
                    Format::Csv => report.render_csv(),
                }
            );
            Ok(true)
        }
        Command::Verify(v) => {
            let table = match v.what {
                VerifyWhat::Ode => verify_ode()?,
                VerifyWhat::Flat { n, max_degree, case, stated } => {
                    let cases = match case {
                        Some(c) => vec![BianchiCase::parse(&c)
                            .ok_or_else(|| Error::Schema(format!("--case: unknown case {c:?}")))?],
                        None => BianchiCase::ALL.to_vec(),
                    };
                    verify_flat(n, max_degree, &cases, stated)?
                }
                VerifyWhat::Identities { n } => verify_identities(n)?,
                VerifyWhat::CheegerTian => verify_cheeger_tian(),
            };
            print!("{}", render_checks(&table, v.format));
            Ok(table.passed)
        }
        Command::PlotData(p) => {
            let n = Dimension::new(p.n)?;
            let min = match &p.nu_min {
                Some(s) => parse_number("nu-min", s)?,
                None => n.resonance_value() - Q::from_integer(4.into()),
            };
            let max = parse_number("nu-max", &p.nu_max)?;
            let step = parse_number("step", &p.step)?;
            print!("{}", plot_data(n, &min, &max, &step)?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InsufficientSpectrum { .. } => 2,
                Error::Schema(_) => 3,
                _ => 1,
            })
        }
    }
}
