//! `enriques`: tables of invariants, series dumps and verification suites.
//!
//! Exit codes: 0 success, 1 a verification check failed or a computation was
//! inconsistent, 2 bad flags, 3 a truncation bound was too small.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use enriques::invariants::{
    a_coeffs, dt_total, f_km, f_km_series, hilb_euler, km_n, n_small, omega_table, vw,
    ClosedFormDt, InvariantKind, InvariantRecord, OmegaTable, RecordArgs, RecordValue, CSV_HEADER,
};
use enriques::lattice::{mukai_invariants, CurveClass, MukaiVector};
use enriques::modular::eta_quotient;
use enriques::rational::fmt_rational;
use enriques::series::{JQSeries, QSeries};
use enriques::theta::{inv_theta_sq, km_kernel, theta, theta_e8_bounded};
use enriques::verify::{run_target, Report, VerifyOptions, TARGETS};
use enriques::{Error, Rational};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "enriques", version, about = "Exact invariants of the Enriques surface and Enriques Calabi-Yau threefold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a table of invariants.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[command(flatten)]
        bounds: Bounds,
        /// Print the p-form ω(r, n) instead of the genus form (omega only).
        #[arg(long)]
        pform: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print a generating series.
    Series {
        #[arg(value_enum)]
        name: SeriesName,
        #[command(flatten)]
        bounds: Bounds,
        /// Write JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite and print one PASS/FAIL line per check.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[command(flatten)]
        bounds: Bounds,
        /// Write JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default)]
struct Bounds {
    /// q-order or size bound.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    qmax: Option<i64>,
    /// Largest genus.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    gmax: Option<i64>,
    /// E8 norm bound.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    norm: Option<i64>,
    /// Hecke level.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    ell: Option<i64>,
    /// Largest rank.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    rank: Option<i64>,
    /// Bound on |n| in Mukai vector tables.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    nmax: Option<i64>,
    /// Number of random samples.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    count: Option<i64>,
}

#[derive(Args, Debug)]
struct Output {
    /// Write JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Write CSV.
    #[arg(long)]
    csv: bool,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    /// ω_g(n), or ω(r, n) with --pform.
    Omega,
    /// a(n).
    A,
    /// e(Hilb^n).
    Hilb,
    /// N_{g,β} on slice classes.
    Kn,
    /// n_{g,β} on slice classes.
    Bps,
    /// dt(r, β, n).
    Dt,
    /// DT(r, β, n).
    DtTotal,
    /// VW(r, β, n).
    Vw,
    /// f_β^KM for β² = 2j.
    Fkm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesName {
    /// Θ(z,2τ)²/Θ(z,τ)² · η(2τ)⁸/η(τ)^16.
    KmKernel,
    /// The triple-product part of Θ.
    Theta,
    /// The regular part of 1/Θ².
    InvThetaSq,
    /// η(τ)^{-12}.
    EtaInv12,
    /// Σ a(n) q^n.
    A,
    /// Σ e(Hilb^n) q^n.
    Hilb,
    /// Σ ω_g(n) q^n at g = --gmax.
    Omega,
    /// Θ_E8 with vector refinement.
    ThetaE8,
    /// F^KM_{g,ℓ} with g = --gmax, ℓ = --ell.
    FkmE8,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    All,
    ThetaIdentity,
    Genus1Borcherds,
    KmPtBridge,
    GwPtExpansion,
    FiberClass,
    Recursion,
    VwModularity,
    DtDependence,
    Reflections,
    HeckeDependence,
    VanishingLemma,
    EtaRing,
}

impl VerifyTarget {
    fn names(self) -> Vec<&'static str> {
        let name = match self {
            VerifyTarget::All => return TARGETS.to_vec(),
            VerifyTarget::ThetaIdentity => "theta-identity",
            VerifyTarget::Genus1Borcherds => "genus1-borcherds",
            VerifyTarget::KmPtBridge => "km-pt-bridge",
            VerifyTarget::GwPtExpansion => "gw-pt-expansion",
            VerifyTarget::FiberClass => "fiber-class",
            VerifyTarget::Recursion => "recursion",
            VerifyTarget::VwModularity => "vw-modularity",
            VerifyTarget::DtDependence => "dt-dependence",
            VerifyTarget::Reflections => "reflections",
            VerifyTarget::HeckeDependence => "hecke-dependence",
            VerifyTarget::VanishingLemma => "vanishing-lemma",
            VerifyTarget::EtaRing => "eta-ring",
        };
        vec![name]
    }
}

/// Tabular output: a header and rows of string cells.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<String, Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io_err = |e: csv::Error| Error::InvalidArgument(e.to_string());
        w.write_record(&self.header).map_err(io_err)?;
        for r in &self.rows {
            w.write_record(r).map_err(io_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = serde_json::Map::new();
                for (h, c) in self.header.iter().zip(r) {
                    m.insert(h.clone(), json!(c));
                }
                serde_json::Value::Object(m)
            })
            .collect();
        json!(rows)
    }

    fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        for r in &self.rows {
            out += &line(r);
        }
        out
    }
}

fn cached_omega_table(max_g: i64, max_n: i64) -> Result<OmegaTable, Error> {
    let Some(dir) = std::env::var_os("ENRIQUES_CACHE_DIR") else {
        return omega_table(max_g, max_n);
    };
    let path = PathBuf::from(dir).join(format!("omega_table-g{max_g}-n{max_n}.json"));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
            if let Ok(t) = OmegaTable::from_json(&v) {
                return Ok(t);
            }
        }
    }
    let t = omega_table(max_g, max_n)?;
    if let Some(parent) = path.parent() {
        let _ = fs::create_dir_all(parent);
    }
    let _ = fs::write(&path, t.to_json().to_string());
    Ok(t)
}

fn rational_cells(x: &Rational) -> [String; 2] {
    [x.numer().to_string(), x.denom().to_string()]
}

fn series_table(s: &QSeries, max_n: i64) -> Table {
    let mut t = Table::new(&["n", "value_num", "value_den"]);
    for n in 0..=max_n {
        let [a, b] = rational_cells(&s.coeff(n));
        t.push(vec![n.to_string(), a, b]);
    }
    t
}

fn slice_classes(bound: i64) -> Vec<CurveClass> {
    let mut out = Vec::new();
    for k in 0..=bound {
        for d in 0..=bound {
            if (k, d) != (0, 0) {
                out.push(CurveClass::slice(k, d));
            }
        }
    }
    out
}

fn build_table(kind: TableKind, b: &Bounds, pform: bool) -> Result<(Table, Vec<InvariantRecord>), Error> {
    let qmax = b.qmax.unwrap_or(10);
    let gmax = b.gmax.unwrap_or(4);
    let mut records = Vec::new();
    let table = match kind {
        TableKind::Omega => {
            let om = cached_omega_table(gmax, qmax)?;
            if pform {
                let mut t = Table::new(&["r", "n", "value_num", "value_den"]);
                for (&(r, n), v) in om.p_form() {
                    let [a, c] = rational_cells(v);
                    t.push(vec![r.to_string(), n.to_string(), a, c]);
                }
                t
            } else {
                let mut t = Table::new(&["g", "n", "value_num", "value_den"]);
                for g in 1..=gmax {
                    for n in 0..=qmax {
                        let [a, c] = rational_cells(&om.omega(g, n)?);
                        t.push(vec![g.to_string(), n.to_string(), a, c]);
                    }
                }
                t
            }
        }
        TableKind::A => series_table(&a_coeffs(qmax), qmax),
        TableKind::Hilb => series_table(&hilb_euler(qmax), qmax),
        TableKind::Kn | TableKind::Bps => {
            let classes = slice_classes(b.rank.unwrap_or(4));
            let max_sq = classes.iter().map(|c| c.square()).max().unwrap_or(0);
            let om = cached_omega_table(gmax, (max_sq / 2).max(1))?;
            let mut t = Table::new(&CSV_HEADER);
            for g in 1..=gmax {
                for beta in &classes {
                    let (kind, value) = match kind {
                        TableKind::Kn => (InvariantKind::GwN, km_n(&om, g, beta)?),
                        _ => (InvariantKind::GwSmallN, n_small(&om, g, beta)?),
                    };
                    let rec = InvariantRecord {
                        kind,
                        args: RecordArgs::Curve { g: Some(g), beta: *beta },
                        value: RecordValue::Number(value),
                    };
                    t.push(rec.csv_fields().expect("numeric record").to_vec());
                    records.push(rec);
                }
            }
            t
        }
        TableKind::Dt | TableKind::DtTotal | TableKind::Vw => {
            let rank = b.rank.unwrap_or(1);
            let nmax = b.nmax.unwrap_or(10);
            let kd = b.qmax.unwrap_or(0);
            let max_sq = 2 * kd * kd + rank * rank + 2 * rank * nmax;
            let src = ClosedFormDt::new(max_sq / 2 + 2);
            let mut t = Table::new(&[
                "r", "beta_k", "beta_d", "alpha_norm", "n", "square", "divisibility", "type", "value_num",
                "value_den",
            ]);
            for r in 1..=rank {
                for k in 0..=kd {
                    for d in 0..=kd {
                        for n in -nmax..=nmax {
                            let v = MukaiVector::new(r, CurveClass::slice(k, d), n);
                            let inv = mukai_invariants(&v)?;
                            let (kind, value) = match kind {
                                TableKind::Dt => (InvariantKind::DtPrimitive, enriques::invariants::DtSource::dt(&src, &v)?),
                                TableKind::DtTotal => (InvariantKind::Dt, dt_total(&v, &src)?),
                                _ => (InvariantKind::Vw, vw(&v, &src)?),
                            };
                            let [a, c] = rational_cells(&value);
                            t.push(vec![
                                r.to_string(),
                                k.to_string(),
                                d.to_string(),
                                "0".into(),
                                n.to_string(),
                                inv.square.to_string(),
                                inv.divisibility.to_string(),
                                inv.kind.to_string(),
                                a,
                                c,
                            ]);
                            records.push(InvariantRecord {
                                kind,
                                args: RecordArgs::Mukai(v),
                                value: RecordValue::Number(value),
                            });
                        }
                    }
                }
            }
            t
        }
        TableKind::Fkm => {
            let mut t = Table::new(&["beta_square", "p_exponent", "value_num", "value_den"]);
            for j in -1..=qmax {
                let beta = CurveClass::slice(1, j);
                let f = f_km(&beta)?;
                for (e, v) in f.iter() {
                    let [a, c] = rational_cells(v);
                    t.push(vec![beta.square().to_string(), e.to_string(), a, c]);
                }
                records.push(InvariantRecord {
                    kind: InvariantKind::PtF,
                    args: RecordArgs::Curve { g: None, beta },
                    value: RecordValue::Laurent(f),
                });
            }
            t
        }
    };
    Ok((table, records))
}

fn jq_text(s: &JQSeries) -> String {
    let mut out = String::new();
    for (n, c) in s.iter() {
        out += &format!("q^({}/{}): {}\n", n, s.exp_denom(), c);
    }
    out + &format!("known below q^({}/{})\n", s.trunc(), s.exp_denom())
}

fn build_series(name: SeriesName, b: &Bounds, as_json: bool) -> Result<String, Error> {
    let qmax = b.qmax.unwrap_or(10);
    let t = qmax + 1;
    let (text, value) = match name {
        SeriesName::KmKernel => {
            let s = km_kernel(t)?;
            (jq_text(&s), s.to_json())
        }
        SeriesName::Theta => {
            let s = theta(t)?.regular;
            (jq_text(&s), s.to_json())
        }
        SeriesName::InvThetaSq => {
            let s = inv_theta_sq(t)?;
            (format!("polar: {}\n{}", s.polar, jq_text(&s.regular)), s.regular.to_json())
        }
        SeriesName::EtaInv12 => {
            let s = eta_quotient(&[(1, -12)], t);
            (format!("{s}\n"), s.to_json())
        }
        SeriesName::A => {
            let s = a_coeffs(qmax);
            (format!("{s}\n"), s.to_json())
        }
        SeriesName::Hilb => {
            let s = hilb_euler(qmax);
            (format!("{s}\n"), s.to_json())
        }
        SeriesName::Omega => {
            let g = b.gmax.unwrap_or(1);
            let s = cached_omega_table(g, qmax)?.genus_series(g)?;
            (format!("{s}\n"), s.to_json())
        }
        SeriesName::ThetaE8 | SeriesName::FkmE8 => {
            let norm = b.norm.unwrap_or(2);
            let s = match name {
                SeriesName::ThetaE8 => theta_e8_bounded(t, norm),
                _ => {
                    let g = b.gmax.unwrap_or(1);
                    let ell = b.ell.unwrap_or(1);
                    let om = cached_omega_table(g, ell * t)?;
                    f_km_series(&om, g, ell, t, norm)?
                }
            };
            let mut text = String::new();
            for ((n, a), c) in s.coeffs() {
                text += &format!("q^{n} zeta^{a}: {}\n", fmt_rational(c));
            }
            text += &format!("known below q^{} for |alpha|^2 <= {}\n", s.trunc(), s.norm_bound());
            (text, s.to_json())
        }
    };
    Ok(if as_json { format!("{value}\n") } else { text })
}

fn emit(text: &str, path: &Option<PathBuf>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn report_json(reports: &[Report]) -> String {
    let items: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            let checks: Vec<_> = r
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            json!({"target": r.target, "passed": r.passed(), "checks": checks})
        })
        .collect();
    format!("{}\n", serde_json::to_string_pretty(&items).expect("JSON serialization"))
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Table { kind, bounds, pform, output } => {
            let (table, records) = build_table(kind, &bounds, pform)?;
            let text = if output.csv {
                table.to_csv()?
            } else if output.json {
                let value = if matches!(kind, TableKind::Fkm) {
                    json!(records.iter().map(InvariantRecord::to_json).collect::<Vec<_>>())
                } else {
                    table.to_json()
                };
                format!("{}\n", serde_json::to_string_pretty(&value).expect("JSON serialization"))
            } else {
                table.to_text()
            };
            emit(&text, &output.output).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(true)
        }
        Command::Series { name, bounds, json, output } => {
            let text = build_series(name, &bounds, json)?;
            emit(&text, &output).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(true)
        }
        Command::Verify { target, bounds, json, output } => {
            let opts = VerifyOptions {
                qmax: bounds.qmax,
                gmax: bounds.gmax,
                norm: bounds.norm,
                ell: bounds.ell,
                rank: bounds.rank,
                count: bounds.count,
            };
            let mut reports = Vec::new();
            for name in target.names() {
                reports.push(run_target(name, &opts)?);
            }
            let text = if json {
                report_json(&reports)
            } else {
                let mut s = String::new();
                for r in &reports {
                    s += &r.to_string();
                    let n = r.checks.len();
                    let verdict = if r.passed() { "PASS" } else { "FAIL" };
                    s += &format!("{}: {verdict} ({n} checks)\n", r.target);
                }
                s
            };
            emit(&text, &output).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(reports.iter().all(Report::passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::TruncationShortfall { .. }) => {
            eprintln!("error: {e}; raise the corresponding bound flag");
            ExitCode::from(3)
        }
        Err(e @ Error::InvalidArgument(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
